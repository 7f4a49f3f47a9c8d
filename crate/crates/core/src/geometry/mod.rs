//! Exact rational convex geometry under a positive-definite Gram metric.
//!
//! Everything here works over [`Rational`] (arbitrary precision, always in
//! lowest terms). There are no tolerances: every comparison is exact.

mod linalg;
mod oracle;
mod simplex;
mod wolfe;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub(crate) use linalg::rank;
pub use oracle::min_norm_oracle;
pub use wolfe::min_norm_point;

/// Exact rational scalar.
pub type Rational = BigRational;

/// Coordinates of a point in the ambient space.
pub type Vector = Vec<Rational>;

/// Builds `num/den` in lowest terms. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Converts a slice of `(num, den)` pairs into a vector.
pub fn vector(entries: &[(i64, i64)]) -> Vector {
    entries.iter().map(|&(n, d)| rat(n, d)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad rational literal {literal:?}: {reason}")]
pub struct ParseRationalError {
    pub literal: String,
    pub reason: &'static str,
}

/// Parses `"p/q"` or `"p"`; the sign goes on the numerator.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let fail = |reason| ParseRationalError {
        literal: text.to_string(),
        reason,
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let digits_ok = |s: &str, signed: bool| {
        let body = if signed {
            s.strip_prefix('-').unwrap_or(s)
        } else {
            s
        };
        !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
    };
    if !digits_ok(num, true) {
        return Err(fail("numerator must be an optionally negative integer"));
    }
    let num = BigInt::from_str(num).map_err(|_| fail("numerator out of range"))?;
    let den = match den {
        None => BigInt::one(),
        Some(d) => {
            if !digits_ok(d, false) {
                return Err(fail("denominator must be a positive integer"));
            }
            BigInt::from_str(d).map_err(|_| fail("denominator out of range"))?
        }
    };
    if den.is_zero() {
        return Err(fail("zero denominator"));
    }
    Ok(Rational::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty point set")]
    EmptyInput,
    #[error("zero normal vector")]
    ZeroNormal,
    #[error("metric must have positive dimension")]
    ZeroDimension,
    #[error("gram matrix is not square")]
    NotSquare,
    #[error("gram matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("gram matrix is not positive definite: leading minor {order} equals {value}")]
    NotPositiveDefinite { order: usize, value: String },
    #[error("oracle enumeration over {points} distinct points exceeds the limit of {limit}")]
    OracleTooLarge { points: usize, limit: usize },
    #[error("internal invariant violated: {0}")]
    Internal(&'static str),
}

/// Positive-definite symmetric bilinear form on the ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricForm {
    gram: Vec<Vec<Rational>>,
    // Some(diag) when gram is diagonal; lets the hot pairing loop skip the
    // off-diagonal zeros.
    diagonal: Option<Vec<Rational>>,
}

impl MetricForm {
    pub fn new(gram: Vec<Vec<Rational>>) -> Result<Self, GeometryError> {
        let n = gram.len();
        if n == 0 {
            return Err(GeometryError::ZeroDimension);
        }
        if gram.iter().any(|row| row.len() != n) {
            return Err(GeometryError::NotSquare);
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if gram[i][j] != gram[j][i] {
                    return Err(GeometryError::NotSymmetric { row: i, col: j });
                }
            }
        }
        for (order, minor) in linalg::leading_minors(&gram).into_iter().enumerate() {
            if !minor.is_positive() {
                return Err(GeometryError::NotPositiveDefinite {
                    order: order + 1,
                    value: minor.to_string(),
                });
            }
        }
        let is_diagonal = (0..n).all(|i| (0..n).all(|j| i == j || gram[i][j].is_zero()));
        let diagonal = is_diagonal.then(|| (0..n).map(|i| gram[i][i].clone()).collect());
        Ok(MetricForm { gram, diagonal })
    }

    pub fn identity(dimension: usize) -> Self {
        Self::diagonal(vec![Rational::one(); dimension]).expect("identity is positive definite")
    }

    pub fn diagonal(scales: Vec<Rational>) -> Result<Self, GeometryError> {
        let n = scales.len();
        let gram = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { scales[i].clone() } else { Rational::zero() })
                    .collect()
            })
            .collect();
        Self::new(gram)
    }

    pub fn dimension(&self) -> usize {
        self.gram.len()
    }

    pub fn gram(&self) -> &[Vec<Rational>] {
        &self.gram
    }

    /// Diagonal entries when the form is diagonal.
    pub fn diagonal_scales(&self) -> Option<&[Rational]> {
        self.diagonal.as_deref()
    }

    /// The form `c * gram`; `c` must be positive.
    pub fn scaled(&self, c: &Rational) -> Result<Self, GeometryError> {
        Self::new(
            self.gram
                .iter()
                .map(|row| row.iter().map(|g| g * c).collect())
                .collect(),
        )
    }

    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Result<Rational, GeometryError> {
        self.check_dim(u)?;
        self.check_dim(v)?;
        Ok(self.pair(u, v))
    }

    pub fn norm_squared(&self, u: &[Rational]) -> Result<Rational, GeometryError> {
        self.inner(u, u)
    }

    pub(crate) fn check_dim(&self, u: &[Rational]) -> Result<(), GeometryError> {
        if u.len() != self.dimension() {
            return Err(GeometryError::DimensionMismatch {
                expected: self.dimension(),
                found: u.len(),
            });
        }
        Ok(())
    }

    /// Unchecked pairing; callers guarantee matching dimensions.
    pub(crate) fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        match &self.diagonal {
            Some(diag) => {
                let mut acc = Rational::zero();
                for ((a, b), g) in u.iter().zip(v).zip(diag) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b * g;
                    }
                }
                acc
            }
            None => {
                let mut acc = Rational::zero();
                for (i, a) in u.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, b) in v.iter().enumerate() {
                        if !b.is_zero() {
                            acc += a * &self.gram[i][j] * b;
                        }
                    }
                }
                acc
            }
        }
    }
}

/// `uᵀ · gram · v`.
pub fn inner(u: &[Rational], v: &[Rational], m: &MetricForm) -> Result<Rational, GeometryError> {
    m.inner(u, v)
}

/// Closest point of a convex hull to the origin, with an exact certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinNormResult {
    pub point: Vector,
    pub norm_squared: Rational,
    /// Barycentric coefficients keyed by input index; only positive entries are stored.
    pub coefficients: BTreeMap<usize, Rational>,
    pub active_indices: BTreeSet<usize>,
}

impl MinNormResult {
    /// Re-checks reconstruction, feasibility and KKT optimality against `points`.
    pub fn verify(&self, points: &[Vector], m: &MetricForm) -> Result<(), String> {
        let dim = m.dimension();
        if self.point.len() != dim {
            return Err("point has wrong dimension".into());
        }
        let mut total = Rational::zero();
        let mut rebuilt = vec![Rational::zero(); dim];
        for (&i, c) in &self.coefficients {
            if !c.is_positive() {
                return Err(format!("coefficient {i} is not positive: {c}"));
            }
            let p = points.get(i).ok_or_else(|| format!("index {i} out of range"))?;
            total += c;
            for (r, x) in rebuilt.iter_mut().zip(p) {
                *r += c * x;
            }
        }
        if !total.is_one() {
            return Err(format!("coefficients sum to {total}"));
        }
        if rebuilt != self.point {
            return Err("point is not the stated combination".into());
        }
        let keys: BTreeSet<usize> = self.coefficients.keys().copied().collect();
        if keys != self.active_indices {
            return Err("active set does not match coefficient support".into());
        }
        if self.active_indices.len() > dim + 1 {
            return Err("active set larger than dimension + 1".into());
        }
        if m.pair(&self.point, &self.point) != self.norm_squared {
            return Err("norm_squared does not match point".into());
        }
        for (i, p) in points.iter().enumerate() {
            if m.pair(p, &self.point) < self.norm_squared {
                return Err(format!("KKT violated at input {i}"));
            }
        }
        Ok(())
    }
}

/// Drops repeated points. Returns the distinct points and, for each, its
/// lowest original index.
pub(crate) fn dedup(points: &[Vector]) -> (Vec<Vector>, Vec<usize>) {
    let mut seen: BTreeMap<&Vector, usize> = BTreeMap::new();
    let mut unique = Vec::new();
    let mut origin = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if !seen.contains_key(p) {
            seen.insert(p, unique.len());
            unique.push(p.clone());
            origin.push(i);
        }
    }
    (unique, origin)
}

pub(crate) fn validate_points(points: &[Vector], m: &MetricForm) -> Result<(), GeometryError> {
    if points.is_empty() {
        return Err(GeometryError::EmptyInput);
    }
    points.iter().try_for_each(|p| m.check_dim(p))
}

/// Outcome of [`contains_origin`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OriginMembership {
    /// Barycentric coefficients (by input index) combining to the zero vector.
    Inside { coefficients: BTreeMap<usize, Rational> },
    /// Every input pairs strictly positively with `separator`.
    Outside { separator: Vector },
}

impl OriginMembership {
    pub fn is_inside(&self) -> bool {
        matches!(self, OriginMembership::Inside { .. })
    }
}

pub fn contains_origin(
    points: &[Vector],
    m: &MetricForm,
) -> Result<OriginMembership, GeometryError> {
    let result = min_norm_point(points, m)?;
    if result.norm_squared.is_zero() {
        Ok(OriginMembership::Inside {
            coefficients: result.coefficients,
        })
    } else {
        Ok(OriginMembership::Outside {
            separator: result.point,
        })
    }
}

/// `v − (⟨v,n⟩/⟨n,n⟩)·n`.
pub fn project_to_complement(
    v: &[Rational],
    normal: &[Rational],
    m: &MetricForm,
) -> Result<Vector, GeometryError> {
    m.check_dim(v)?;
    m.check_dim(normal)?;
    let nn = m.pair(normal, normal);
    if nn.is_zero() {
        return Err(GeometryError::ZeroNormal);
    }
    let coef = m.pair(v, normal) / nn;
    Ok(v.iter().zip(normal).map(|(a, b)| a - &coef * b).collect())
}

/// Decides whether the origin is an interior point of the hull of `points`
/// relative to a linear subspace of dimension `subspace_dim` that contains
/// every point.
///
/// The origin is interior iff the points span the subspace and some convex
/// combination with all coefficients strictly positive vanishes; the latter
/// is a small exact linear program.
pub fn origin_in_interior(
    points: &[Vector],
    m: &MetricForm,
    subspace_dim: usize,
) -> Result<bool, GeometryError> {
    validate_points(points, m)?;
    if rank(points) < subspace_dim {
        return Ok(false);
    }
    simplex::origin_in_relative_interior(points)
}

/// Pretty-prints a vector as `(a, b, c)`.
pub struct DisplayVector<'a>(pub &'a [Rational]);

impl fmt::Display for DisplayVector<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn id(n: usize) -> MetricForm {
        MetricForm::identity(n)
    }

    #[test]
    fn inner_examples() {
        assert_eq!(inner(&vector(&[(1, 1), (0, 1)]), &vector(&[(0, 1), (1, 1)]), &id(2)).unwrap(), int(0));
        let beta = vector(&[(-2, 3), (1, 3), (1, 3), (-1, 2), (1, 2)]);
        assert_eq!(inner(&beta, &beta, &id(5)).unwrap(), rat(7, 6));
        let m = MetricForm::diagonal(vec![int(2), rat(1, 14)]).unwrap();
        assert_eq!(
            inner(&vector(&[(1, 1), (1, 1)]), &vector(&[(1, 1), (-1, 1)]), &m).unwrap(),
            rat(27, 14)
        );
    }

    #[test]
    fn inner_rejects_mismatch() {
        let err = inner(&[int(1)], &[int(1), int(2)], &id(2)).unwrap_err();
        assert_eq!(err, GeometryError::DimensionMismatch { expected: 2, found: 1 });
    }

    #[test]
    fn metric_construction_checks() {
        assert!(matches!(
            MetricForm::new(vec![vec![int(1), int(2)], vec![int(2), int(1)]]),
            Err(GeometryError::NotPositiveDefinite { order: 2, .. })
        ));
        assert!(matches!(
            MetricForm::new(vec![vec![int(1), int(0)], vec![int(1), int(1)]]),
            Err(GeometryError::NotSymmetric { .. })
        ));
        assert!(MetricForm::diagonal(vec![int(1), int(0)]).is_err());
        let m = MetricForm::new(vec![vec![int(2), int(1)], vec![int(1), int(2)]]).unwrap();
        assert!(m.diagonal_scales().is_none());
        assert_eq!(m.inner(&[int(1), int(0)], &[int(0), int(1)]).unwrap(), int(1));
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("-3/6").unwrap(), rat(-1, 2));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("1/-2").is_err());
        assert!(parse_rational("0.5").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational(" 1").is_err());
    }

    #[test]
    fn contains_origin_examples() {
        let cross = vec![
            vector(&[(1, 1), (0, 1)]),
            vector(&[(-1, 1), (0, 1)]),
            vector(&[(0, 1), (1, 1)]),
            vector(&[(0, 1), (-1, 1)]),
        ];
        assert!(contains_origin(&cross, &id(2)).unwrap().is_inside());

        let pts = vec![vector(&[(1, 1), (1, 1)]), vector(&[(2, 1), (0, 1)])];
        match contains_origin(&pts, &id(2)).unwrap() {
            OriginMembership::Outside { separator } => {
                assert_eq!(separator, vector(&[(1, 1), (1, 1)]));
                for p in &pts {
                    assert!(id(2).inner(p, &separator).unwrap().is_positive());
                }
            }
            other => panic!("expected outside, got {other:?}"),
        }

        let cubic = vec![
            vector(&[(3, 1), (-3, 1)]),
            vector(&[(1, 1), (-1, 1)]),
            vector(&[(-1, 1), (1, 1)]),
            vector(&[(-3, 1), (3, 1)]),
        ];
        match contains_origin(&cubic, &id(2)).unwrap() {
            OriginMembership::Inside { coefficients } => {
                let total: Rational = coefficients.values().sum();
                assert!(total.is_one());
            }
            other => panic!("expected inside, got {other:?}"),
        }
        assert_eq!(contains_origin(&[], &id(2)), Err(GeometryError::EmptyInput));
    }

    #[test]
    fn projection_examples() {
        let m = id(5);
        let n = vector(&[(-2, 3), (-2, 3), (4, 3), (-1, 2), (1, 2)]);
        assert!(project_to_complement(&n, &n, &m).unwrap().iter().all(Zero::is_zero));
        let v = vector(&[(1, 1), (-1, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(project_to_complement(&v, &n, &m).unwrap(), v);
        let w = vector(&[(1, 1), (0, 1), (-1, 1), (1, 1), (0, 1)]);
        let p = project_to_complement(&w, &n, &m).unwrap();
        assert!(m.inner(&p, &n).unwrap().is_zero());
        assert_eq!(
            project_to_complement(&v, &vec![int(0); 5], &m),
            Err(GeometryError::ZeroNormal)
        );
    }

    #[test]
    fn interior_test() {
        let seg = vec![vector(&[(3, 1), (-3, 1)]), vector(&[(-3, 1), (3, 1)])];
        let m = id(2);
        assert!(origin_in_interior(&seg, &m, 1).unwrap());
        assert!(!origin_in_interior(&seg[..1], &m, 1).unwrap());
        let one_side = vec![vector(&[(3, 1), (-3, 1)]), vector(&[(1, 1), (-1, 1)])];
        assert!(!origin_in_interior(&one_side, &m, 1).unwrap());
        // origin on an edge of a triangle
        let tri = vec![
            vector(&[(1, 1), (0, 1)]),
            vector(&[(-1, 1), (0, 1)]),
            vector(&[(0, 1), (1, 1)]),
        ];
        assert!(!origin_in_interior(&tri, &m, 2).unwrap());
        let tri2 = vec![
            vector(&[(1, 1), (-1, 1)]),
            vector(&[(-1, 1), (-1, 1)]),
            vector(&[(0, 1), (1, 1)]),
        ];
        assert!(origin_in_interior(&tri2, &m, 2).unwrap());
        // full 2d hull but ambient is 3d
        let flat: Vec<Vector> = tri2.iter().map(|p| [p.clone(), vec![int(0)]].concat()).collect();
        assert!(!origin_in_interior(&flat, &id(3), 3).unwrap());
    }
}
