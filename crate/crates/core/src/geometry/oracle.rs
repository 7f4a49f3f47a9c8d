//! Exhaustive minimum-norm oracle.
//!
//! Every affinely independent subset of at most `dim + 1` distinct points is
//! tried as an active set: the bordered KKT system is solved by fraction-free
//! (Bareiss) elimination over the integers, and the first candidate with
//! nonnegative coefficients that satisfies the optimality condition against
//! all points is returned. This shares no code path with the Wolfe solver
//! beyond point deduplication.

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{dedup, validate_points, GeometryError, MetricForm, MinNormResult, Rational, Vector};

const MAX_POINTS: usize = 24;

pub fn min_norm_oracle(points: &[Vector], m: &MetricForm) -> Result<MinNormResult, GeometryError> {
    validate_points(points, m)?;
    let (unique, origin) = dedup(points);
    if unique.len() > MAX_POINTS {
        return Err(GeometryError::OracleTooLarge {
            points: unique.len(),
            limit: MAX_POINTS,
        });
    }
    let gram = m.gram();
    let dim = m.dimension();
    let pairing = |u: &Vector, v: &Vector| -> Rational {
        let mut acc = Rational::zero();
        for i in 0..dim {
            for j in 0..dim {
                acc += &u[i] * &gram[i][j] * &v[j];
            }
        }
        acc
    };
    let cross: Vec<Vec<Rational>> = unique
        .iter()
        .map(|u| unique.iter().map(|v| pairing(u, v)).collect())
        .collect();

    for size in 1..=unique.len().min(dim + 1) {
        for subset in (0..unique.len()).combinations(size) {
            let Some(coef) = kkt_coefficients(&cross, &subset) else {
                continue;
            };
            if coef.iter().any(Signed::is_negative) {
                continue;
            }
            // ⟨p_j, x⟩ = Σ_i c_i ⟨p_j, p_i⟩
            let pair_with_x = |j: usize| -> Rational {
                subset.iter().zip(&coef).map(|(&i, c)| c * &cross[j][i]).sum()
            };
            let norm_squared: Rational = subset.iter().zip(&coef).map(|(&i, c)| c * pair_with_x(i)).sum();
            if (0..unique.len()).all(|j| pair_with_x(j) >= norm_squared) {
                let mut point = vec![Rational::zero(); dim];
                for (&i, c) in subset.iter().zip(&coef) {
                    for (x, p) in point.iter_mut().zip(&unique[i]) {
                        *x += c * p;
                    }
                }
                let coefficients: BTreeMap<usize, Rational> = subset
                    .iter()
                    .zip(coef)
                    .filter(|(_, c)| c.is_positive())
                    .map(|(&i, c)| (origin[i], c))
                    .collect();
                let active_indices: BTreeSet<usize> = coefficients.keys().copied().collect();
                return Ok(MinNormResult {
                    point,
                    norm_squared,
                    coefficients,
                    active_indices,
                });
            }
        }
    }
    Err(GeometryError::Internal("oracle found no KKT point"))
}

/// Coefficients of the affine projection of the origin onto the subset's
/// affine hull, or `None` when the subset is affinely dependent.
fn kkt_coefficients(cross: &[Vec<Rational>], subset: &[usize]) -> Option<Vec<Rational>> {
    let k = subset.len();
    if k == 1 {
        return Some(vec![Rational::one()]);
    }
    // Rows j = 1..k: ⟨p_j − p_0, Σ c_i p_i⟩ = 0; last row: Σ c_i = 1.
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(k);
    let p0 = subset[0];
    for &pj in &subset[1..] {
        let mut row: Vec<Rational> = subset.iter().map(|&pi| &cross[pj][pi] - &cross[p0][pi]).collect();
        row.push(Rational::zero());
        rows.push(row);
    }
    let mut last = vec![Rational::one(); k];
    last.push(Rational::one());
    rows.push(last);
    bareiss_solve(rows)
}

/// Solves an augmented `k × (k+1)` rational system by clearing denominators
/// row-wise and running Bareiss elimination over the integers.
fn bareiss_solve(rows: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let k = rows.len();
    let mut a: Vec<Vec<BigInt>> = rows
        .into_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.into_iter()
                .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
                .collect()
        })
        .collect();
    let mut prev = BigInt::one();
    for p in 0..k {
        if a[p][p].is_zero() {
            let swap = (p + 1..k).find(|&r| !a[r][p].is_zero())?;
            a.swap(p, swap);
        }
        for i in (p + 1)..k {
            for j in (p + 1)..=k {
                let v = &a[i][j] * &a[p][p] - &a[i][p] * &a[p][j];
                a[i][j] = v / &prev;
            }
            a[i][p] = BigInt::zero();
        }
        prev = a[p][p].clone();
    }
    let mut x = vec![Rational::zero(); k];
    for i in (0..k).rev() {
        let mut acc = Rational::from_integer(a[i][k].clone());
        for j in (i + 1)..k {
            acc -= Rational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = acc / Rational::from_integer(a[i][i].clone());
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, vector};

    #[test]
    fn oracle_examples() {
        let m = MetricForm::identity(2);
        let r = min_norm_oracle(&[vector(&[(1, 1), (1, 1)]), vector(&[(2, 1), (0, 1)])], &m).unwrap();
        assert_eq!(r.point, vector(&[(1, 1), (1, 1)]));
        assert_eq!(r.norm_squared, int(2));

        let r = min_norm_oracle(&[vector(&[(0, 1), (0, 1)])], &m).unwrap();
        assert!(r.norm_squared.is_zero());

        let r = min_norm_oracle(&[vector(&[(1, 1), (0, 1)]), vector(&[(-1, 1), (0, 1)])], &m).unwrap();
        assert_eq!(r.coefficients, BTreeMap::from([(0, rat(1, 2)), (1, rat(1, 2))]));
    }

    #[test]
    fn bareiss_matches_hand_solution() {
        let rows = vec![
            vec![int(2), int(1), int(3)],
            vec![int(1), int(3), int(5)],
        ];
        assert_eq!(bareiss_solve(rows).unwrap(), vec![rat(4, 5), rat(7, 5)]);
        let singular = vec![vec![int(1), int(2), int(0)], vec![int(2), int(4), int(1)]];
        assert!(bareiss_solve(singular).is_none());
    }
}
