//! Dense two-phase simplex over exact rationals, Bland's rule.
//!
//! Only used to decide relative-interior membership of the origin, so the
//! problems are tiny (a few dozen variables).

use num_traits::{One, Signed, Zero};

use super::{GeometryError, Rational, Vector};

/// Is there a convex combination of `points` with every coefficient strictly
/// positive that equals the zero vector?
pub(crate) fn origin_in_relative_interior(points: &[Vector]) -> Result<bool, GeometryError> {
    // c_i = t + s_i with s_i, t ≥ 0; maximize t subject to
    //   Σ_i (t + s_i) p_i = 0,  N t + Σ_i s_i = 1.
    let n = points.len();
    let dim = points[0].len();
    let mut a = Vec::with_capacity(dim + 1);
    let mut b = Vec::with_capacity(dim + 1);
    for d in 0..dim {
        let mut row: Vec<Rational> = points.iter().map(|p| p[d].clone()).collect();
        row.push(points.iter().map(|p| &p[d]).sum());
        a.push(row);
        b.push(Rational::zero());
    }
    let mut row = vec![Rational::one(); n];
    row.push(Rational::from_integer(n.into()));
    a.push(row);
    b.push(Rational::one());
    let mut c = vec![Rational::zero(); n];
    c.push(Rational::one());
    match maximize(a, b, c) {
        Outcome::Optimal(value) => Ok(value.is_positive()),
        Outcome::Infeasible => Ok(false),
        Outcome::Unbounded => Err(GeometryError::Internal("bounded program reported unbounded")),
    }
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum Outcome {
    Optimal(Rational),
    Infeasible,
    Unbounded,
}

struct Tableau {
    // rows × (cols + 1); last column is the right-hand side.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let inv = self.t[row][col].recip();
        for x in self.t[row].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = self.t[row].clone();
        for (r, line) in self.t.iter_mut().enumerate() {
            if r == row || line[col].is_zero() {
                continue;
            }
            let f = line[col].clone();
            for (x, p) in line.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[row] = col;
    }

    /// Maximizes `obj · x` over the columns allowed by `allowed`.
    fn optimize(&mut self, obj: &[Rational], allowed: &dyn Fn(usize) -> bool) -> Option<Rational> {
        let rhs = self.t[0].len() - 1;
        loop {
            // reduced cost r_j = obj_j − Σ_basis obj_b · t[row][j]
            let reduced = |j: usize| -> Rational {
                let mut r = obj[j].clone();
                for (row, &bj) in self.basis.iter().enumerate() {
                    if !obj[bj].is_zero() && !self.t[row][j].is_zero() {
                        r -= &obj[bj] * &self.t[row][j];
                    }
                }
                r
            };
            let entering = (0..rhs)
                .filter(|&j| allowed(j) && !self.basis.contains(&j))
                .find(|&j| reduced(j).is_positive());
            let Some(col) = entering else {
                let value = self
                    .basis
                    .iter()
                    .enumerate()
                    .map(|(row, &bj)| &obj[bj] * &self.t[row][rhs])
                    .sum();
                return Some(value);
            };
            let mut best: Option<(Rational, usize, usize)> = None;
            for (row, line) in self.t.iter().enumerate() {
                if !line[col].is_positive() {
                    continue;
                }
                let ratio = &line[rhs] / &line[col];
                let key = (ratio, self.basis[row], row);
                if best.as_ref().is_none_or(|b| (&key.0, key.1) < (&b.0, b.1)) {
                    best = Some(key);
                }
            }
            let (_, _, row) = best?;
            self.pivot(row, col);
        }
    }
}

/// Maximize `c·x` subject to `a x = b`, `x ≥ 0`.
pub(crate) fn maximize(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>, c: Vec<Rational>) -> Outcome {
    let m = a.len();
    let n = c.len();
    for (row, rhs) in a.iter_mut().zip(b.iter_mut()) {
        if rhs.is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
            *rhs = -&*rhs;
        }
    }
    // Columns: n structural, m artificial, then rhs.
    let t = a
        .into_iter()
        .zip(b)
        .enumerate()
        .map(|(i, (mut row, rhs))| {
            row.extend((0..m).map(|k| if k == i { Rational::one() } else { Rational::zero() }));
            row.push(rhs);
            row
        })
        .collect();
    let mut tab = Tableau {
        t,
        basis: (n..n + m).collect(),
    };

    let phase1: Vec<Rational> = (0..n + m)
        .map(|j| if j < n { Rational::zero() } else { -Rational::one() })
        .collect();
    let value = tab.optimize(&phase1, &|_| true).expect("phase one is bounded");
    if !value.is_zero() {
        return Outcome::Infeasible;
    }
    // Drive zero-level artificials out of the basis; rows with no structural
    // pivot are redundant and get dropped.
    let mut row = 0;
    while row < tab.basis.len() {
        if tab.basis[row] >= n {
            match (0..n).find(|&j| !tab.t[row][j].is_zero()) {
                Some(col) => tab.pivot(row, col),
                None => {
                    tab.t.remove(row);
                    tab.basis.remove(row);
                    continue;
                }
            }
        }
        row += 1;
    }
    let mut obj = c;
    obj.extend((0..m).map(|_| Rational::zero()));
    match tab.optimize(&obj, &|j| j < n) {
        Some(v) => Outcome::Optimal(v),
        None => Outcome::Unbounded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::int;

    #[test]
    fn small_programs() {
        // max x + y s.t. x + 2y + s = 4, 3x + y + u = 6
        let a = vec![
            vec![int(1), int(2), int(1), int(0)],
            vec![int(3), int(1), int(0), int(1)],
        ];
        let out = maximize(a, vec![int(4), int(6)], vec![int(1), int(1), int(0), int(0)]);
        assert_eq!(out, Outcome::Optimal(crate::geometry::rat(14, 5)));

        let out = maximize(vec![vec![int(1), int(1)]], vec![int(-1)], vec![int(1), int(0)]);
        assert_eq!(out, Outcome::Infeasible);

        let out = maximize(vec![vec![int(1), int(-1)]], vec![int(1)], vec![int(1), int(0)]);
        assert_eq!(out, Outcome::Unbounded);
    }
}
