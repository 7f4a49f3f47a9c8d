//! Wolfe's minimum-norm-point method in exact arithmetic.
//!
//! The active set ("corral") is kept affinely independent. A major cycle adds
//! the point most violating the optimality condition `⟨p, x⟩ ≥ ⟨x, x⟩`; minor
//! cycles move toward the affine minimizer of the corral and drop points whose
//! weight reaches zero. With exact arithmetic the objective strictly decreases
//! across major cycles, so no corral repeats and the loop terminates.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::linalg::solve;
use super::{dedup, validate_points, GeometryError, MetricForm, MinNormResult, Rational, Vector};

pub fn min_norm_point(points: &[Vector], m: &MetricForm) -> Result<MinNormResult, GeometryError> {
    validate_points(points, m)?;
    let (unique, origin) = dedup(points);
    let (point, weights) = run(&unique, m)?;
    let norm_squared = m.pair(&point, &point);
    let coefficients: BTreeMap<usize, Rational> = weights
        .into_iter()
        .map(|(i, w)| (origin[i], w))
        .collect();
    let active_indices: BTreeSet<usize> = coefficients.keys().copied().collect();
    Ok(MinNormResult {
        point,
        norm_squared,
        coefficients,
        active_indices,
    })
}

fn combine(points: &[Vector], corral: &[usize], weights: &[Rational]) -> Vector {
    let dim = points[corral[0]].len();
    let mut x = vec![Rational::zero(); dim];
    for (&i, w) in corral.iter().zip(weights) {
        for (xk, pk) in x.iter_mut().zip(&points[i]) {
            if !pk.is_zero() {
                *xk += w * pk;
            }
        }
    }
    x
}

/// Coefficients (summing to one) of the point of the corral's affine hull
/// closest to the origin.
fn affine_minimizer(
    points: &[Vector],
    corral: &[usize],
    m: &MetricForm,
) -> Result<Vec<Rational>, GeometryError> {
    let k = corral.len();
    // [ G  -1 ] [v]   [0]
    // [ 1ᵀ  0 ] [λ] = [1]
    let mut a = vec![vec![Rational::zero(); k + 1]; k + 1];
    for (r, &i) in corral.iter().enumerate() {
        for (c, &j) in corral.iter().enumerate().skip(r) {
            let g = m.pair(&points[i], &points[j]);
            a[r][c] = g.clone();
            a[c][r] = g;
        }
        a[r][k] = -Rational::one();
        a[k][r] = Rational::one();
    }
    let mut b = vec![Rational::zero(); k + 1];
    b[k] = Rational::one();
    let mut sol = solve(a, b).ok_or(GeometryError::Internal("corral lost affine independence"))?;
    sol.truncate(k);
    Ok(sol)
}

fn run(points: &[Vector], m: &MetricForm) -> Result<(Vector, Vec<(usize, Rational)>), GeometryError> {
    let norms: Vec<Rational> = points.iter().map(|p| m.pair(p, p)).collect();
    let start = (0..points.len())
        .min_by(|&a, &b| norms[a].cmp(&norms[b]).then(a.cmp(&b)))
        .expect("nonempty");
    let mut corral = vec![start];
    let mut weights = vec![Rational::one()];
    let mut x = points[start].clone();
    let mut xx = norms[start].clone();

    // Each major cycle strictly lowers ‖x‖², and there are finitely many
    // corrals; the bound only guards against a broken invariant.
    let max_major = 1usize << points.len().min(30);
    for _ in 0..max_major {
        if xx.is_zero() {
            break;
        }
        let (entering, value) = points
            .iter()
            .enumerate()
            .map(|(j, p)| (j, m.pair(p, &x)))
            .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
            .expect("nonempty");
        if value >= xx {
            break;
        }
        if corral.contains(&entering) {
            return Err(GeometryError::Internal("entering point already in corral"));
        }
        corral.push(entering);
        weights.push(Rational::zero());

        loop {
            let v = affine_minimizer(points, &corral, m)?;
            if v.iter().all(Signed::is_positive) {
                weights = v;
                break;
            }
            // Largest step toward v that keeps every weight nonnegative.
            let theta = weights
                .iter()
                .zip(&v)
                .filter(|(_, vi)| !vi.is_positive())
                .map(|(w, vi)| w / (w - vi))
                .min()
                .expect("some coefficient is nonpositive");
            let one_minus = Rational::one() - &theta;
            let next: Vec<Rational> = weights
                .iter()
                .zip(&v)
                .map(|(w, vi)| w * &one_minus + &theta * vi)
                .collect();
            let keep: Vec<bool> = next.iter().map(Signed::is_positive).collect();
            if keep.iter().all(|&k| k) {
                return Err(GeometryError::Internal("minor cycle removed no point"));
            }
            corral = corral.iter().zip(&keep).filter(|(_, &k)| k).map(|(&i, _)| i).collect();
            weights = next.into_iter().zip(&keep).filter(|(_, &k)| k).map(|(w, _)| w).collect();
            if corral.is_empty() {
                return Err(GeometryError::Internal("corral emptied"));
            }
        }
        x = combine(points, &corral, &weights);
        let next_xx = m.pair(&x, &x);
        if next_xx >= xx {
            return Err(GeometryError::Internal("objective failed to decrease"));
        }
        xx = next_xx;
    }
    Ok((x, corral.into_iter().zip(weights).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, vector};

    #[test]
    fn singleton_and_antipodal() {
        let m = MetricForm::identity(2);
        let r = min_norm_point(&[vector(&[(2, 1), (-2, 1)])], &m).unwrap();
        assert_eq!(r.point, vector(&[(2, 1), (-2, 1)]));
        assert_eq!(r.coefficients, BTreeMap::from([(0, int(1))]));

        let r = min_norm_point(&[vector(&[(1, 1), (0, 1)]), vector(&[(-1, 1), (0, 1)])], &m).unwrap();
        assert_eq!(r.point, vector(&[(0, 1), (0, 1)]));
        assert_eq!(r.coefficients, BTreeMap::from([(0, rat(1, 2)), (1, rat(1, 2))]));
        assert!(r.norm_squared.is_zero());
    }

    #[test]
    fn segment_endpoint() {
        let m = MetricForm::identity(2);
        let pts = [vector(&[(1, 1), (1, 1)]), vector(&[(2, 1), (0, 1)])];
        let r = min_norm_point(&pts, &m).unwrap();
        assert_eq!(r.point, vector(&[(1, 1), (1, 1)]));
        assert_eq!(r.norm_squared, int(2));
        r.verify(&pts, &m).unwrap();
    }

    #[test]
    fn three_table_weights() {
        let m = MetricForm::identity(5);
        let pts = [
            vector(&[(-2, 3), (4, 3), (-2, 3), (-1, 2), (1, 2)]),
            vector(&[(-2, 3), (1, 3), (1, 3), (-1, 2), (1, 2)]),
            vector(&[(-2, 3), (-2, 3), (4, 3), (-1, 2), (1, 2)]),
        ];
        let r = min_norm_point(&pts, &m).unwrap();
        assert_eq!(r.point, vector(&[(-2, 3), (1, 3), (1, 3), (-1, 2), (1, 2)]));
        assert_eq!(r.norm_squared, rat(7, 6));
        r.verify(&pts, &m).unwrap();
    }

    #[test]
    fn duplicates_map_to_lowest_index() {
        let m = MetricForm::identity(1);
        let pts = [vector(&[(3, 1)]), vector(&[(1, 1)]), vector(&[(1, 1)])];
        let r = min_norm_point(&pts, &m).unwrap();
        assert_eq!(r.coefficients, BTreeMap::from([(1, int(1))]));
    }

    #[test]
    fn errors() {
        let m = MetricForm::identity(2);
        assert_eq!(min_norm_point(&[], &m), Err(GeometryError::EmptyInput));
        assert!(matches!(
            min_norm_point(&[vector(&[(1, 1)])], &m),
            Err(GeometryError::DimensionMismatch { .. })
        ));
    }
}
