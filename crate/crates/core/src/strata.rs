//! The Kirwan–Ness stratification of a weight system.
//!
//! Candidates β are the nonzero minimum-norm points of convex hulls of
//! subsets of weights, moved into the dominant chamber. Each candidate is
//! described by how the weights pair with it (levels, `Z`, `W`, `Y`), and a
//! candidate indexes a genuine stratum iff the Levi subgroup `G_β` has
//! semistable points on `P(Z_β)`. That last question is answered by
//! stratifying `Z_β` (weights shifted by `−β`) under `G_β` and asking whether
//! some nonempty unstable stratum fills the whole projective space.

use std::collections::BTreeSet;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use thiserror::Error;

use itertools::Itertools;

use crate::geometry::{dedup, min_norm_point, rank, GeometryError, MetricForm, Rational, Vector};
use crate::rep::{sort_within, RepError, WeightSystem, WeightVector};

/// Default bound on the number of weights for subset enumeration.
pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrataError {
    #[error("{count} weights exceed the enumeration cap of {cap}; raise the cap explicitly (subset enumeration grows exponentially)")]
    CapExceeded { count: usize, cap: usize },
    #[error("beta is the zero vector")]
    ZeroBeta,
    #[error("beta {0} is not in the dominant chamber")]
    NotDominant(String),
    #[error("beta {0} is not a minimal combination of weights")]
    NotMinimalCombination(String),
    #[error("nonemptiness recursion exceeded depth {0}")]
    RecursionTooDeep(usize),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Pairings `⟨γ_i, β⟩` written as `m_b / m0` with coprime integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub m0: BigInt,
    /// Strictly ascending.
    pub levels: Vec<BigInt>,
    pub multiplicities: Vec<usize>,
    /// 1-based index `s` with `levels[s-1] / m0 = ‖β‖²`.
    pub critical_index: usize,
}

impl LevelDecomposition {
    pub fn critical_value(&self) -> Rational {
        Rational::new(self.levels[self.critical_index - 1].clone(), self.m0.clone())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub beta: WeightVector,
    pub norm_squared: Rational,
    pub decomposition: LevelDecomposition,
    pub z_indices: BTreeSet<usize>,
    pub w_indices: BTreeSet<usize>,
    pub y_indices: BTreeSet<usize>,
    /// Indivisible integral 1PS proportional to β.
    pub lambda_beta: Vec<BigInt>,
    /// Per `GL` block, run lengths of equal β coordinates.
    pub levi_partition: Vec<Vec<usize>>,
    pub dim_unipotent: usize,
    /// `dim_unipotent + |Y| − 1` for nonempty strata.
    pub dim_stratum_projective: Option<usize>,
    /// `None` until decided by [`is_nonempty`] or [`stratify`].
    pub nonempty: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratificationResult {
    pub system: WeightSystem,
    /// Nonempty unstable strata, by `‖β‖²` then β.
    pub strata: Vec<Stratum>,
    /// Minimal combinations whose stratum turned out empty, same order.
    pub empty_candidates: Vec<Stratum>,
    pub semistable_nonempty: bool,
}

impl StratificationResult {
    /// Every dominant candidate, nonempty or not, in canonical order.
    pub fn candidates(&self) -> Vec<&Stratum> {
        let mut all: Vec<&Stratum> = self.strata.iter().chain(&self.empty_candidates).collect();
        all.sort_by(|a, b| order_key(a).cmp(&order_key(b)));
        all
    }
}

fn order_key(s: &Stratum) -> (&Rational, &WeightVector) {
    (&s.norm_squared, &s.beta)
}

/// One level of the recursion: weights, metric, and the coordinate runs the
/// current Weyl group permutes.
struct Level<'a> {
    weights: &'a [Vector],
    metric: &'a MetricForm,
    runs: Vec<Range<usize>>,
}

/// Pairing data of a candidate at one level.
struct Description {
    norm_squared: Rational,
    decomposition: LevelDecomposition,
    z: BTreeSet<usize>,
    w: BTreeSet<usize>,
    partition: Vec<Vec<usize>>,
    dim_unipotent: usize,
}

impl Level<'_> {
    fn candidates(&self) -> Result<Vec<Vector>, StrataError> {
        let (unique, _) = dedup(self.weights);
        // A min-norm point is already the min-norm point of its active set,
        // which has at most rank + 1 members, so larger subsets add nothing.
        let largest = (rank(&unique) + 1).min(unique.len());
        let subsets: Vec<Vec<usize>> = (1..=largest)
            .flat_map(|k| (0..unique.len()).combinations(k))
            .collect();
        let found = subsets
            .into_par_iter()
            .map(|subset| {
                let points: Vec<Vector> = subset.iter().map(|&i| unique[i].clone()).collect();
                let r = min_norm_point(&points, self.metric)?;
                Ok((!r.norm_squared.is_zero()).then(|| sort_within(&r.point, &self.runs).0))
            })
            .collect::<Result<Vec<Option<Vector>>, GeometryError>>()?;
        let distinct: BTreeSet<Vector> = found.into_iter().flatten().collect();
        let mut out: Vec<(Rational, Vector)> = distinct
            .into_iter()
            .map(|b| (self.metric.pair(&b, &b), b))
            .collect();
        out.sort();
        Ok(out.into_iter().map(|(_, b)| b).collect())
    }

    fn describe(&self, beta: &[Rational]) -> Result<Description, StrataError> {
        let norm_squared = self.metric.pair(beta, beta);
        let pairings: Vec<Rational> = self.weights.iter().map(|g| self.metric.pair(g, beta)).collect();
        let decomposition = level_decomposition(&pairings, &norm_squared)
            .ok_or_else(|| StrataError::NotMinimalCombination(crate::geometry::DisplayVector(beta).to_string()))?;
        let z: BTreeSet<usize> = (0..pairings.len()).filter(|&i| pairings[i] == norm_squared).collect();
        let w: BTreeSet<usize> = (0..pairings.len()).filter(|&i| pairings[i] > norm_squared).collect();
        let z_points: Vec<Vector> = z.iter().map(|&i| self.weights[i].clone()).collect();
        if min_norm_point(&z_points, self.metric)?.point != beta {
            return Err(StrataError::NotMinimalCombination(
                crate::geometry::DisplayVector(beta).to_string(),
            ));
        }
        let partition: Vec<Vec<usize>> = self.runs.iter().map(|r| run_lengths(&beta[r.clone()])).collect();
        let dim_unipotent = self
            .runs
            .iter()
            .map(|r| {
                let seg = &beta[r.clone()];
                (0..seg.len())
                    .flat_map(|i| ((i + 1)..seg.len()).map(move |j| (i, j)))
                    .filter(|&(i, j)| seg[i] != seg[j])
                    .count()
            })
            .sum();
        Ok(Description {
            norm_squared,
            decomposition,
            z,
            w,
            partition,
            dim_unipotent,
        })
    }

    /// Does `G_β` have semistable points on `P(Z_β)`?
    fn z_has_semistable(&self, beta: &[Rational], z: &BTreeSet<usize>, depth: usize, max_depth: usize) -> Result<bool, StrataError> {
        if depth > max_depth {
            return Err(StrataError::RecursionTooDeep(max_depth));
        }
        // ⟨γ, β⟩ = ‖β‖² on Z, so γ − β is the projection onto β's complement.
        let shifted: Vec<Vector> = z
            .iter()
            .map(|&i| self.weights[i].iter().zip(beta).map(|(g, b)| g - b).collect())
            .collect();
        let runs = refine(&self.runs, beta);
        let sub = Level {
            weights: &shifted,
            metric: self.metric,
            runs,
        };
        sub.has_semistable(depth + 1, max_depth)
    }

    /// False iff some nonempty unstable stratum is dense in `P(V)`.
    fn has_semistable(&self, depth: usize, max_depth: usize) -> Result<bool, StrataError> {
        let full = self.weights.len() - 1;
        for beta in self.candidates()? {
            let d = self.describe(&beta)?;
            let dim = d.dim_unipotent + d.z.len() + d.w.len() - 1;
            if dim == full && self.z_has_semistable(&beta, &d.z, depth, max_depth)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn run_lengths(seg: &[Rational]) -> Vec<usize> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < seg.len() {
        let j = (i..seg.len()).find(|&j| seg[j] != seg[i]).unwrap_or(seg.len());
        out.push(j - i);
        i = j;
    }
    out
}

/// Splits each run into maximal stretches of equal `beta` coordinates.
fn refine(runs: &[Range<usize>], beta: &[Rational]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    for r in runs {
        let mut start = r.start;
        for len in run_lengths(&beta[r.clone()]) {
            out.push(start..start + len);
            start += len;
        }
    }
    out
}

fn level_decomposition(pairings: &[Rational], norm_squared: &Rational) -> Option<LevelDecomposition> {
    let mut values: Vec<Rational> = pairings.to_vec();
    values.sort();
    let mut distinct: Vec<Rational> = Vec::new();
    let mut multiplicities = Vec::new();
    for v in values {
        if distinct.last() == Some(&v) {
            *multiplicities.last_mut().expect("paired with distinct") += 1;
        } else {
            distinct.push(v);
            multiplicities.push(1);
        }
    }
    let mut m0 = distinct.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let mut levels: Vec<BigInt> = distinct
        .iter()
        .map(|v| (v * Rational::from_integer(m0.clone())).to_integer())
        .collect();
    let g = levels.iter().fold(m0.clone(), |acc, m| acc.gcd(m));
    if !g.is_one() {
        m0 /= &g;
        levels.iter_mut().for_each(|m| *m /= &g);
    }
    let critical_index = distinct.iter().position(|v| v == norm_squared)? + 1;
    Some(LevelDecomposition {
        m0,
        levels,
        multiplicities,
        critical_index,
    })
}

/// Clears denominators and divides by the gcd.
pub(crate) fn indivisible(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

fn check_cap(ws: &WeightSystem, cap: usize) -> Result<(), StrataError> {
    if ws.len() > cap {
        return Err(StrataError::CapExceeded { count: ws.len(), cap });
    }
    Ok(())
}

/// Dominant minimal combinations of weights (nonzero), by `‖β‖²` then β.
pub fn enumerate_candidates(ws: &WeightSystem) -> Result<Vec<WeightVector>, StrataError> {
    enumerate_candidates_with_cap(ws, DEFAULT_CAP)
}

pub fn enumerate_candidates_with_cap(ws: &WeightSystem, cap: usize) -> Result<Vec<WeightVector>, StrataError> {
    check_cap(ws, cap)?;
    if ws.is_empty() {
        return Ok(Vec::new());
    }
    let weights = ws.weight_vectors();
    let level = Level {
        runs: ws.blocks().block_ranges(),
        weights: &weights,
        metric: ws.metric(),
    };
    Ok(level.candidates()?.into_iter().map(WeightVector::from_trusted).collect())
}

/// Pairing data, index sets, Levi data and `λ_β` for a dominant candidate.
/// Nonemptiness is left undecided.
pub fn describe_stratum(beta: &WeightVector, ws: &WeightSystem) -> Result<Stratum, StrataError> {
    ws.blocks().check_weight(beta.coords())?;
    if beta.is_zero() {
        return Err(StrataError::ZeroBeta);
    }
    let runs = ws.blocks().block_ranges();
    if sort_within(beta.coords(), &runs).0 != beta.coords() {
        return Err(StrataError::NotDominant(beta.to_string()));
    }
    let weights = ws.weight_vectors();
    let level = Level {
        weights: &weights,
        metric: ws.metric(),
        runs,
    };
    let d = level.describe(beta.coords())?;
    let y_indices = d.z.union(&d.w).copied().collect();
    Ok(Stratum {
        beta: beta.clone(),
        norm_squared: d.norm_squared,
        decomposition: d.decomposition,
        z_indices: d.z,
        w_indices: d.w,
        y_indices,
        lambda_beta: indivisible(beta.coords()),
        levi_partition: d.partition,
        dim_unipotent: d.dim_unipotent,
        dim_stratum_projective: None,
        nonempty: None,
    })
}

/// Whether `S_β` is nonempty, i.e. `Z_β` has `G_β`-semistable points.
pub fn is_nonempty(stratum: &Stratum, ws: &WeightSystem) -> Result<bool, StrataError> {
    let weights = ws.weight_vectors();
    let level = Level {
        weights: &weights,
        metric: ws.metric(),
        runs: ws.blocks().block_ranges(),
    };
    level.z_has_semistable(stratum.beta.coords(), &stratum.z_indices, 0, ws.len())
}

pub fn stratify(ws: &WeightSystem) -> Result<StratificationResult, StrataError> {
    stratify_with_cap(ws, DEFAULT_CAP)
}

pub fn stratify_with_cap(ws: &WeightSystem, cap: usize) -> Result<StratificationResult, StrataError> {
    let mut strata = Vec::new();
    let mut empty_candidates = Vec::new();
    let mut semistable_nonempty = true;
    let full = ws.len().saturating_sub(1);
    for beta in enumerate_candidates_with_cap(ws, cap)? {
        let mut s = describe_stratum(&beta, ws)?;
        let nonempty = is_nonempty(&s, ws)?;
        s.nonempty = Some(nonempty);
        if nonempty {
            let dim = s.dim_unipotent + s.y_indices.len() - 1;
            s.dim_stratum_projective = Some(dim);
            if dim == full {
                semistable_nonempty = false;
            }
            strata.push(s);
        } else {
            empty_candidates.push(s);
        }
    }
    Ok(StratificationResult {
        system: ws.clone(),
        strata,
        empty_candidates,
        semistable_nonempty,
    })
}
