//! Hilbert–Mumford data for explicit points over the fixed maximal torus.
//!
//! All answers here are torus-level: a point is classified by its own support
//! weights, without searching its group orbit.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{min_norm_point, origin_in_interior, parse_rational, GeometryError, Rational, Vector};
use crate::rep::{dominant_representative, RepError, WeightSystem, WeightVector};
use crate::strata::indivisible;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstabilityError {
    #[error("point has no nonzero coordinate")]
    ZeroPoint,
    #[error("one-parameter subgroup is zero")]
    ZeroLambda,
    #[error("unknown coordinate label {0:?}")]
    UnknownLabel(String),
    #[error("malformed point specification at byte {offset}: {message}")]
    BadPoint { offset: usize, message: String },
    #[error("malformed one-parameter subgroup: {0}")]
    BadLambda(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A point of `V` with rational coordinates, keyed by weight label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoint {
    coords: BTreeMap<String, Rational>,
}

impl RationalPoint {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets a coordinate; zero removes it.
    pub fn set(&mut self, label: impl Into<String>, value: Rational) {
        let label = label.into();
        if value.is_zero() {
            self.coords.remove(&label);
        } else {
            self.coords.insert(label, value);
        }
    }

    pub fn with(mut self, label: impl Into<String>, value: Rational) -> Self {
        self.set(label, value);
        self
    }

    pub fn get(&self, label: &str) -> Option<&Rational> {
        self.coords.get(label)
    }

    /// Parses `label=p/q,label=p/q,...`. Labels may contain commas; each
    /// value ends at the next comma.
    pub fn parse(spec: &str) -> Result<Self, InstabilityError> {
        let mut point = RationalPoint::new();
        let mut pos = 0;
        let bytes = spec.as_bytes();
        while pos < bytes.len() {
            let eq = spec[pos..].find('=').map(|k| pos + k).ok_or(InstabilityError::BadPoint {
                offset: pos,
                message: "expected label=value".into(),
            })?;
            let label = spec[pos..eq].trim();
            if label.is_empty() {
                return Err(InstabilityError::BadPoint {
                    offset: pos,
                    message: "empty label".into(),
                });
            }
            let end = spec[eq + 1..].find(',').map_or(bytes.len(), |k| eq + 1 + k);
            let value = parse_rational(spec[eq + 1..end].trim()).map_err(|e| InstabilityError::BadPoint {
                offset: eq + 1,
                message: e.to_string(),
            })?;
            if point.coords.contains_key(label) {
                return Err(InstabilityError::BadPoint {
                    offset: pos,
                    message: format!("label {label:?} given twice"),
                });
            }
            point.set(label, value);
            pos = end + 1;
        }
        Ok(point)
    }

    /// `(weight index, coordinate)` over the support, in weight order.
    pub fn support(&self, ws: &WeightSystem) -> Result<Vec<(usize, Rational)>, InstabilityError> {
        let mut out = Vec::with_capacity(self.coords.len());
        for (label, value) in &self.coords {
            let i = ws
                .index_of(label)
                .ok_or_else(|| InstabilityError::UnknownLabel(label.clone()))?;
            out.push((i, value.clone()));
        }
        if out.is_empty() {
            return Err(InstabilityError::ZeroPoint);
        }
        out.sort_by_key(|(i, _)| *i);
        Ok(out)
    }

    fn support_weights(&self, ws: &WeightSystem) -> Result<Vec<Vector>, InstabilityError> {
        Ok(self
            .support(ws)?
            .into_iter()
            .map(|(i, _)| ws.weight(i).coords().to_vec())
            .collect())
    }
}

/// A cocharacter of the torus in ambient coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OnePS {
    direction: Vec<BigInt>,
}

impl OnePS {
    /// Checks trace-zero per `GL` block and nonvanishing.
    pub fn new(direction: Vec<BigInt>, ws: &WeightSystem) -> Result<Self, InstabilityError> {
        let as_rational: Vector = direction.iter().cloned().map(Rational::from_integer).collect();
        ws.blocks().check_weight(&as_rational)?;
        if direction.iter().all(Zero::is_zero) {
            return Err(InstabilityError::ZeroLambda);
        }
        Ok(OnePS { direction })
    }

    /// Parses `c1,c2,...` (integers).
    pub fn parse(spec: &str, ws: &WeightSystem) -> Result<Self, InstabilityError> {
        let direction = spec
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<BigInt>()
                    .map_err(|_| InstabilityError::BadLambda(format!("{:?} is not an integer", t.trim())))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(direction, ws)
    }

    pub fn direction(&self) -> &[BigInt] {
        &self.direction
    }

    fn as_vector(&self) -> Vector {
        self.direction.iter().cloned().map(Rational::from_integer).collect()
    }
}

/// Minimal exponent of `λ` on the support of `x`.
pub fn mu(x: &RationalPoint, lambda: &OnePS, ws: &WeightSystem) -> Result<Rational, InstabilityError> {
    let l = lambda.as_vector();
    let m = ws.metric();
    x.support_weights(ws)?
        .iter()
        .map(|g| m.inner(g, &l))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .min()
        .ok_or(InstabilityError::ZeroPoint)
}

/// `sign(μ)·μ² / ‖λ‖²`, the signed square of `ν(x, λ)`.
pub fn nu_squared(x: &RationalPoint, lambda: &OnePS, ws: &WeightSystem) -> Result<Rational, InstabilityError> {
    let mu = mu(x, lambda, ws)?;
    let l = lambda.as_vector();
    let ll = ws.metric().inner(&l, &l)?;
    let sq = &mu * &mu / ll;
    Ok(if mu.is_negative() { -sq } else { sq })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PointClass {
    Semistable,
    Unstable(Destabilization),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Destabilization {
    /// Dominant representative, the stratum index `β_x`.
    pub beta: WeightVector,
    pub norm_squared: Rational,
    /// Closest point to 0 of the support hull itself (before moving to the
    /// dominant chamber).
    pub torus_beta: WeightVector,
    /// Indivisible 1PS along `torus_beta`; it maximizes `ν(x, ·)`.
    pub lambda: OnePS,
}

pub fn beta_of_point(x: &RationalPoint, ws: &WeightSystem) -> Result<PointClass, InstabilityError> {
    let support = x.support_weights(ws)?;
    let r = min_norm_point(&support, ws.metric())?;
    if r.norm_squared.is_zero() {
        return Ok(PointClass::Semistable);
    }
    let torus_beta = WeightVector::new(r.point, ws.blocks())?;
    let (beta, _) = dominant_representative(&torus_beta, ws.blocks());
    let lambda = OnePS::new(indivisible(torus_beta.coords()), ws)?;
    Ok(PointClass::Unstable(Destabilization {
        beta,
        norm_squared: r.norm_squared,
        torus_beta,
        lambda,
    }))
}

/// Torus moment map `Σ x_i² γ_i / Σ x_i²`.
pub fn moment(x: &RationalPoint, ws: &WeightSystem) -> Result<WeightVector, InstabilityError> {
    let support = x.support(ws)?;
    let total: Rational = support.iter().map(|(_, c)| c * c).sum();
    let mut acc = vec![Rational::zero(); ws.blocks().ambient_dim()];
    for (i, c) in &support {
        let w = c * c / &total;
        for (a, g) in acc.iter_mut().zip(ws.weight(*i).coords()) {
            *a += &w * g;
        }
    }
    Ok(WeightVector::new(acc, ws.blocks())?)
}

/// Does the support hull contain a neighborhood of 0 in the full trace-zero
/// space? Torus-level only.
pub fn is_k_stable_torus(x: &RationalPoint, ws: &WeightSystem) -> Result<bool, InstabilityError> {
    let support = x.support_weights(ws)?;
    Ok(origin_in_interior(&support, ws.metric(), ws.blocks().trace_zero_dim())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{int, rat, vector};
    use crate::rep::{parse_rep, weights_of, BlockStructure};

    fn cubic() -> WeightSystem {
        let blocks = BlockStructure::gl(&[2]).unwrap();
        WeightSystem::new(
            blocks,
            vec![
                ("x_111".into(), vector(&[(3, 1), (-3, 1)])),
                ("x_112".into(), vector(&[(1, 1), (-1, 1)])),
                ("x_122".into(), vector(&[(-1, 1), (1, 1)])),
                ("x_222".into(), vector(&[(-3, 1), (3, 1)])),
            ],
        )
        .unwrap()
    }

    fn full(ws: &WeightSystem) -> RationalPoint {
        ws.entries()
            .iter()
            .fold(RationalPoint::new(), |p, (l, _)| p.with(l.clone(), int(1)))
    }

    fn lam(v: &[i64], ws: &WeightSystem) -> OnePS {
        OnePS::new(v.iter().map(|&c| BigInt::from(c)).collect(), ws).unwrap()
    }

    #[test]
    fn mu_and_nu() {
        let ws = cubic();
        let one = RationalPoint::new().with("x_122", int(1));
        assert_eq!(mu(&one, &lam(&[-1, 1], &ws), &ws).unwrap(), int(2));
        let two = one.clone().with("x_222", int(5));
        assert_eq!(mu(&two, &lam(&[-1, 1], &ws), &ws).unwrap(), int(2));
        assert_eq!(mu(&full(&ws), &lam(&[-1, 1], &ws), &ws).unwrap(), int(-6));
        assert_eq!(nu_squared(&two, &lam(&[-1, 1], &ws), &ws).unwrap(), int(2));
        assert_eq!(nu_squared(&two, &lam(&[-2, 2], &ws), &ws).unwrap(), int(2));
        assert_eq!(nu_squared(&full(&ws), &lam(&[-1, 1], &ws), &ws).unwrap(), int(-18));
    }

    #[test]
    fn lambda_validation() {
        let ws = cubic();
        assert!(matches!(OnePS::parse("1,1", &ws), Err(InstabilityError::Rep(_))));
        assert_eq!(OnePS::parse("0,0", &ws), Err(InstabilityError::ZeroLambda));
        assert!(matches!(OnePS::parse("1,x", &ws), Err(InstabilityError::BadLambda(_))));
        assert_eq!(OnePS::parse(" -2, 2", &ws).unwrap().direction(), [BigInt::from(-2), BigInt::from(2)]);
    }

    #[test]
    fn classify_cubics() {
        let ws = cubic();
        match beta_of_point(&RationalPoint::new().with("x_222", int(1)), &ws).unwrap() {
            PointClass::Unstable(d) => {
                assert_eq!(d.beta.coords(), &vector(&[(-3, 1), (3, 1)])[..]);
                assert_eq!(d.norm_squared, int(18));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(beta_of_point(&full(&ws), &ws).unwrap(), PointClass::Semistable);
        // x_111 alone: torus beta (3,-3), dominant (-3,3)
        match beta_of_point(&RationalPoint::new().with("x_111", int(2)), &ws).unwrap() {
            PointClass::Unstable(d) => {
                assert_eq!(d.torus_beta.coords(), &vector(&[(3, 1), (-3, 1)])[..]);
                assert_eq!(d.beta.coords(), &vector(&[(-3, 1), (3, 1)])[..]);
                assert_eq!(d.lambda.direction(), [BigInt::from(1), BigInt::from(-1)]);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(beta_of_point(&RationalPoint::new(), &ws), Err(InstabilityError::ZeroPoint));
        assert_eq!(
            beta_of_point(&RationalPoint::new().with("nope", int(1)), &ws),
            Err(InstabilityError::UnknownLabel("nope".into()))
        );
    }

    #[test]
    fn moment_examples() {
        let ws = cubic();
        assert_eq!(
            moment(&RationalPoint::new().with("x_112", int(7)), &ws).unwrap().coords(),
            &vector(&[(1, 1), (-1, 1)])[..]
        );
        let sym = RationalPoint::new().with("x_112", int(2)).with("x_122", int(-2));
        assert!(moment(&sym, &ws).unwrap().is_zero());

        let pencils = weights_of(
            &parse_rep("sym(2,std(1))*std(2)").unwrap(),
            &BlockStructure::gl(&[3, 2]).unwrap(),
        )
        .unwrap();
        let x = RationalPoint::new().with("x_2,22", int(1)).with("x_2,33", int(1));
        assert_eq!(
            moment(&x, &pencils).unwrap().coords(),
            &vector(&[(-2, 3), (1, 3), (1, 3), (-1, 2), (1, 2)])[..]
        );
    }

    #[test]
    fn k_stability() {
        let ws = cubic();
        assert!(is_k_stable_torus(&full(&ws), &ws).unwrap());
        assert!(!is_k_stable_torus(&RationalPoint::new().with("x_111", int(1)), &ws).unwrap());
        let half = RationalPoint::new().with("x_111", int(1)).with("x_112", int(1));
        assert!(!is_k_stable_torus(&half, &ws).unwrap());
    }

    #[test]
    fn point_parsing() {
        let p = RationalPoint::parse("x_2,33=1, x_1,11=-3/4").unwrap();
        assert_eq!(p.get("x_2,33"), Some(&int(1)));
        assert_eq!(p.get("x_1,11"), Some(&rat(-3, 4)));
        assert!(RationalPoint::parse("x_1").is_err());
        assert!(RationalPoint::parse("a=1/0").is_err());
        assert!(RationalPoint::parse("a=1,a=2").is_err());
        assert_eq!(RationalPoint::parse("a=0").unwrap(), RationalPoint::new());
    }
}
