//! Weight systems of representations of products of `GL(n)`.
//!
//! Weights live in the trace-zero part of each `GL` block, optionally followed
//! by extra one-dimensional torus coordinates with their own metric scale.

mod document;
mod parse;

use std::collections::BTreeSet;
use std::fmt;
use std::ops::Range;

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::geometry::{GeometryError, MetricForm, Rational, Vector};

pub use document::{load_weight_system, BlockSpec, WeightDocument, WeightEntry};
pub use parse::parse_rep;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("block index {index} out of range (have {count} GL blocks)")]
    BlockOutOfRange { index: usize, count: usize },
    #[error("GL blocks must have size at least 1")]
    EmptyBlock,
    #[error("extra torus scale {0} is not positive")]
    NonPositiveScale(String),
    #[error("block {block} coordinates sum to {sum}, expected 0")]
    TraceNonZero { block: usize, sum: String },
    #[error("weight has {found} coordinates, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("weights are not invariant under permuting coordinates {first} and {second} (block {block}); no weight maps to {missing}")]
    NotWeylInvariant {
        block: usize,
        first: usize,
        second: usize,
        missing: String,
    },
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("{0}")]
    Schema(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// Group layout: `GL(n)` factors followed by extra torus coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    gl_blocks: Vec<usize>,
    extra_torus: Vec<Rational>,
}

impl BlockStructure {
    pub fn new(gl_blocks: Vec<usize>, extra_torus: Vec<Rational>) -> Result<Self, RepError> {
        if gl_blocks.contains(&0) {
            return Err(RepError::EmptyBlock);
        }
        if let Some(s) = extra_torus.iter().find(|s| !s.is_positive()) {
            return Err(RepError::NonPositiveScale(s.to_string()));
        }
        Ok(BlockStructure { gl_blocks, extra_torus })
    }

    pub fn gl(gl_blocks: &[usize]) -> Result<Self, RepError> {
        Self::new(gl_blocks.to_vec(), Vec::new())
    }

    pub fn gl_blocks(&self) -> &[usize] {
        &self.gl_blocks
    }

    pub fn extra_torus(&self) -> &[Rational] {
        &self.extra_torus
    }

    /// Number of coordinates covered by `GL` blocks.
    pub fn gl_dim(&self) -> usize {
        self.gl_blocks.iter().sum()
    }

    pub fn ambient_dim(&self) -> usize {
        self.gl_dim() + self.extra_torus.len()
    }

    /// Dimension of the subspace where weights live.
    pub fn trace_zero_dim(&self) -> usize {
        self.gl_blocks.iter().map(|n| n - 1).sum::<usize>() + self.extra_torus.len()
    }

    /// Coordinate ranges of the `GL` blocks.
    pub fn block_ranges(&self) -> Vec<Range<usize>> {
        let mut start = 0;
        self.gl_blocks
            .iter()
            .map(|&n| {
                let r = start..start + n;
                start += n;
                r
            })
            .collect()
    }

    /// Identity on each `GL` block (times `gl_scales`, one per block) and the
    /// torus scales on the extra coordinates.
    pub fn metric(&self, gl_scales: &[Rational]) -> Result<MetricForm, RepError> {
        let mut diag = Vec::with_capacity(self.ambient_dim());
        for (n, s) in self.gl_blocks.iter().zip(gl_scales) {
            diag.extend(std::iter::repeat_n(s.clone(), *n));
        }
        diag.extend(self.extra_torus.iter().cloned());
        Ok(MetricForm::diagonal(diag)?)
    }

    pub fn check_weight(&self, coords: &[Rational]) -> Result<(), RepError> {
        if coords.len() != self.ambient_dim() {
            return Err(RepError::WrongLength {
                expected: self.ambient_dim(),
                found: coords.len(),
            });
        }
        for (b, range) in self.block_ranges().into_iter().enumerate() {
            let sum: Rational = coords[range].iter().sum();
            if !sum.is_zero() {
                return Err(RepError::TraceNonZero {
                    block: b + 1,
                    sum: sum.to_string(),
                });
            }
        }
        Ok(())
    }
}

/// A character of the maximal torus, trace-zero on every `GL` block.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(Vector);

impl WeightVector {
    pub fn new(coords: Vector, blocks: &BlockStructure) -> Result<Self, RepError> {
        blocks.check_weight(&coords)?;
        Ok(WeightVector(coords))
    }

    /// Wraps coordinates already known to satisfy the block invariants.
    pub(crate) fn from_trusted(coords: Vector) -> Self {
        WeightVector(coords)
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vector {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::geometry::DisplayVector(&self.0))
    }
}

/// The weight multiset must be stable under each adjacent transposition of
/// coordinates inside a `GL` block (these generate the Weyl group).
fn check_weyl_invariant(blocks: &BlockStructure, entries: &[(String, WeightVector)]) -> Result<(), RepError> {
    let mut original: Vec<&[Rational]> = entries.iter().map(|(_, w)| w.coords()).collect();
    original.sort();
    for (b, range) in blocks.block_ranges().into_iter().enumerate() {
        for i in range.start..range.end.saturating_sub(1) {
            let mut swapped: Vec<Vector> = entries
                .iter()
                .map(|(_, w)| {
                    let mut v = w.coords().to_vec();
                    v.swap(i, i + 1);
                    v
                })
                .collect();
            swapped.sort();
            if let Some(k) = swapped.iter().zip(&original).position(|(a, b)| a.as_slice() != *b) {
                return Err(RepError::NotWeylInvariant {
                    block: b + 1,
                    first: i - range.start + 1,
                    second: i - range.start + 2,
                    missing: crate::geometry::DisplayVector(&swapped[k]).to_string(),
                });
            }
        }
    }
    Ok(())
}

/// Labeled weights of a representation together with the metric on `t*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightSystem {
    blocks: BlockStructure,
    gl_scales: Vec<Rational>,
    metric: MetricForm,
    entries: Vec<(String, WeightVector)>,
}

impl WeightSystem {
    pub fn new(blocks: BlockStructure, entries: Vec<(String, Vector)>) -> Result<Self, RepError> {
        let gl_scales = vec![Rational::one(); blocks.gl_blocks().len()];
        Self::with_scales(blocks, gl_scales, entries)
    }

    /// Like [`WeightSystem::new`] but with a metric scale per `GL` block.
    pub fn with_scales(
        blocks: BlockStructure,
        gl_scales: Vec<Rational>,
        entries: Vec<(String, Vector)>,
    ) -> Result<Self, RepError> {
        if gl_scales.len() != blocks.gl_blocks().len() {
            return Err(RepError::Schema(format!(
                "expected {} GL metric scales, got {}",
                blocks.gl_blocks().len(),
                gl_scales.len()
            )));
        }
        if let Some(s) = gl_scales.iter().find(|s| !s.is_positive()) {
            return Err(RepError::NonPositiveScale(s.to_string()));
        }
        let metric = blocks.metric(&gl_scales)?;
        let mut seen = BTreeSet::new();
        let mut checked = Vec::with_capacity(entries.len());
        for (label, coords) in entries {
            if !seen.insert(label.clone()) {
                return Err(RepError::DuplicateLabel(label));
            }
            checked.push((label, WeightVector::new(coords, &blocks)?));
        }
        check_weyl_invariant(&blocks, &checked)?;
        Ok(WeightSystem {
            blocks,
            gl_scales,
            metric,
            entries: checked,
        })
    }

    /// Same weights, every metric scale multiplied by `c > 0`.
    pub fn scaled_metric(&self, c: &Rational) -> Result<Self, RepError> {
        let blocks = BlockStructure::new(
            self.blocks.gl_blocks.clone(),
            self.blocks.extra_torus.iter().map(|s| s * c).collect(),
        )?;
        let gl_scales = self.gl_scales.iter().map(|s| s * c).collect();
        Self::with_scales(blocks, gl_scales, self.raw_entries())
    }

    /// Multiplies each block's metric scale (GL blocks, then torus
    /// coordinates) by the matching entry of `scales`.
    pub fn with_block_scales(&self, scales: &[Rational]) -> Result<Self, RepError> {
        let gl = self.blocks.gl_blocks.len();
        if scales.len() != gl + self.blocks.extra_torus.len() {
            return Err(RepError::Schema(format!(
                "expected {} block scales, got {}",
                gl + self.blocks.extra_torus.len(),
                scales.len()
            )));
        }
        let blocks = BlockStructure::new(
            self.blocks.gl_blocks.clone(),
            self.blocks.extra_torus.iter().zip(&scales[gl..]).map(|(t, s)| t * s).collect(),
        )?;
        let gl_scales = self.gl_scales.iter().zip(scales).map(|(a, s)| a * s).collect();
        Self::with_scales(blocks, gl_scales, self.raw_entries())
    }

    /// Applies `f` to every weight (e.g. a Weyl permutation); labels kept.
    pub fn map_weights(&self, f: impl Fn(&[Rational]) -> Vector) -> Result<Self, RepError> {
        let entries = self
            .entries
            .iter()
            .map(|(l, w)| (l.clone(), f(w.coords())))
            .collect();
        Self::with_scales(self.blocks.clone(), self.gl_scales.clone(), entries)
    }

    fn raw_entries(&self) -> Vec<(String, Vector)> {
        self.entries
            .iter()
            .map(|(l, w)| (l.clone(), w.coords().to_vec()))
            .collect()
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn gl_scales(&self) -> &[Rational] {
        &self.gl_scales
    }

    pub fn metric(&self) -> &MetricForm {
        &self.metric
    }

    pub fn entries(&self) -> &[(String, WeightVector)] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn label(&self, index: usize) -> &str {
        &self.entries[index].0
    }

    pub fn weight(&self, index: usize) -> &WeightVector {
        &self.entries[index].1
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.entries.iter().position(|(l, _)| l == label)
    }

    pub fn weight_vectors(&self) -> Vec<Vector> {
        self.entries.iter().map(|(_, w)| w.coords().to_vec()).collect()
    }
}

/// Parsed representation expression. Block indices are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RepExpr {
    Std(usize),
    /// Dual of `std(i)`.
    Dual(usize),
    /// `Sym^d` of `std(i)`: `(degree, block)`.
    Sym(usize, usize),
    Tensor(Vec<RepExpr>),
    DirectSum(Vec<RepExpr>),
}

impl RepExpr {
    /// Blocks referenced anywhere in the expression.
    pub fn blocks(&self) -> BTreeSet<usize> {
        match self {
            RepExpr::Std(i) | RepExpr::Dual(i) | RepExpr::Sym(_, i) => BTreeSet::from([*i]),
            RepExpr::Tensor(fs) | RepExpr::DirectSum(fs) => fs.iter().flat_map(RepExpr::blocks).collect(),
        }
    }

    // Tensor factors are labeled and enumerated in this order: linear factors
    // first, then symmetric powers by degree, so "sym(2,std(1))*std(2)" gives
    // labels x_i,j1j2 with the std(2) index leading.
    fn label_rank(&self) -> usize {
        match self {
            RepExpr::Std(_) | RepExpr::Dual(_) => 1,
            RepExpr::Sym(d, _) => *d,
            _ => usize::MAX,
        }
    }
}

/// Weights of `expr` on `blocks`, labeled `x_<indices>`.
///
/// A top-level direct sum prefixes the 1-based summand index. Extra torus
/// coordinates are zero.
pub fn weights_of(expr: &RepExpr, blocks: &BlockStructure) -> Result<WeightSystem, RepError> {
    let count = blocks.gl_blocks().len();
    if let Some(&bad) = expr.blocks().iter().find(|&&i| i == 0 || i > count) {
        return Err(RepError::BlockOutOfRange { index: bad, count });
    }
    let gen = Generator { blocks, ranges: blocks.block_ranges() };
    let raw = match expr {
        RepExpr::DirectSum(terms) => terms
            .iter()
            .enumerate()
            .flat_map(|(f, t)| {
                gen.expand(t)
                    .into_iter()
                    .map(move |(idx, w)| (prefixed(f + 1, &idx), w))
            })
            .collect(),
        other => gen.expand(other),
    };
    let entries = raw.into_iter().map(|(idx, w)| (format!("x_{idx}"), w)).collect();
    WeightSystem::new(blocks.clone(), entries)
}

fn prefixed(f: usize, idx: &str) -> String {
    if idx.is_empty() {
        f.to_string()
    } else {
        format!("{f},{idx}")
    }
}

struct Generator<'a> {
    blocks: &'a BlockStructure,
    ranges: Vec<Range<usize>>,
}

impl Generator<'_> {
    fn zero(&self) -> Vector {
        vec![Rational::zero(); self.blocks.ambient_dim()]
    }

    fn index_digits(n: usize, idx: impl IntoIterator<Item = usize>) -> String {
        let sep = if n >= 10 { "." } else { "" };
        idx.into_iter().map(|i| (i + 1).to_string()).join(sep)
    }

    /// `(index string, weight)` pairs in enumeration order.
    fn expand(&self, expr: &RepExpr) -> Vec<(String, Vector)> {
        match expr {
            RepExpr::Std(b) | RepExpr::Dual(b) => {
                let sign = if matches!(expr, RepExpr::Dual(_)) { -1 } else { 1 };
                let range = self.ranges[b - 1].clone();
                let n = range.len();
                (0..n)
                    .map(|j| {
                        let mut w = self.zero();
                        for (k, x) in w[range.clone()].iter_mut().enumerate() {
                            let e = if k == j { Rational::one() } else { Rational::zero() };
                            *x = (e - Rational::new(1.into(), (n as i64).into())) * Rational::from_integer(sign.into());
                        }
                        (Self::index_digits(n, [j]), w)
                    })
                    .collect()
            }
            RepExpr::Sym(d, b) => {
                let range = self.ranges[b - 1].clone();
                let n = range.len();
                let shift = Rational::new((*d as i64).into(), (n as i64).into());
                (0..n)
                    .combinations_with_replacement(*d)
                    .map(|mono| {
                        let mut w = self.zero();
                        for &j in &mono {
                            w[range.start + j] += Rational::one();
                        }
                        for x in &mut w[range.clone()] {
                            *x -= &shift;
                        }
                        (Self::index_digits(n, mono), w)
                    })
                    .collect()
            }
            RepExpr::Tensor(factors) => {
                let mut ordered: Vec<&RepExpr> = factors.iter().collect();
                ordered.sort_by_key(|f| f.label_rank());
                ordered
                    .into_iter()
                    .map(|f| self.expand(f))
                    .multi_cartesian_product()
                    .map(|parts| {
                        let label = parts.iter().map(|(l, _)| l.as_str()).join(",");
                        let mut w = self.zero();
                        for (_, part) in &parts {
                            for (x, p) in w.iter_mut().zip(part) {
                                *x += p;
                            }
                        }
                        (label, w)
                    })
                    .collect()
            }
            RepExpr::DirectSum(terms) => terms
                .iter()
                .enumerate()
                .flat_map(|(f, t)| {
                    self.expand(t)
                        .into_iter()
                        .map(move |(idx, w)| (format!("{}.{idx}", f + 1), w))
                })
                .collect(),
        }
    }
}

/// Sorts coordinates ascending inside each range. Returns the sorted vector
/// and the permutation `perm` with `sorted[k] = v[perm[k]]`.
pub(crate) fn sort_within(v: &[Rational], runs: &[Range<usize>]) -> (Vector, Vec<usize>) {
    let mut perm: Vec<usize> = (0..v.len()).collect();
    for r in runs {
        perm[r.clone()].sort_by(|&a, &b| v[a].cmp(&v[b]).then(a.cmp(&b)));
    }
    (perm.iter().map(|&i| v[i].clone()).collect(), perm)
}

/// Dominant-chamber representative: ascending coordinates in each `GL` block.
pub fn dominant_representative(v: &WeightVector, blocks: &BlockStructure) -> (WeightVector, Vec<usize>) {
    let (sorted, perm) = sort_within(v.coords(), &blocks.block_ranges());
    (WeightVector(sorted), perm)
}
