//! Randomized self-checks behind the `check` subcommand.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::{min_norm_oracle, min_norm_point, MetricForm, Rational, Vector};
use crate::instability::{beta_of_point, nu_squared, OnePS, PointClass, RationalPoint};
use crate::rep::WeightSystem;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn small_rational(rng: &mut impl Rng) -> Rational {
    Rational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=9).into())
}

/// Random positive-definite metric: identity, diagonal, or `L Lᵀ` with a
/// unit-free lower-triangular `L` whose diagonal is nonzero.
pub fn random_metric(rng: &mut impl Rng, dim: usize) -> MetricForm {
    match rng.gen_range(0..3) {
        0 => MetricForm::identity(dim),
        1 => MetricForm::diagonal(
            (0..dim)
                .map(|_| Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into()))
                .collect(),
        )
        .expect("positive diagonal"),
        _ => {
            let l: Vec<Vec<Rational>> = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| match j.cmp(&i) {
                            std::cmp::Ordering::Less => small_rational(rng),
                            std::cmp::Ordering::Equal => {
                                Rational::new(rng.gen_range(1..=9).into(), rng.gen_range(1..=9).into())
                            }
                            std::cmp::Ordering::Greater => Rational::zero(),
                        })
                        .collect()
                })
                .collect();
            let gram = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| (0..dim).map(|k| &l[i][k] * &l[j][k]).sum())
                        .collect()
                })
                .collect();
            MetricForm::new(gram).expect("L Lᵀ is positive definite")
        }
    }
}

/// Random instance: dimension ≤ 5, at most 10 points, entries `p/q` with
/// `|p| ≤ 9`, `1 ≤ q ≤ 9`.
pub fn random_instance(rng: &mut impl Rng) -> (Vec<Vector>, MetricForm) {
    let dim = rng.gen_range(1..=5);
    let count = rng.gen_range(1..=10);
    let points = (0..count)
        .map(|_| (0..dim).map(|_| small_rational(rng)).collect())
        .collect();
    (points, random_metric(rng, dim))
}

/// Wolfe solver versus exhaustive oracle on random instances.
pub fn oracle_equivalence(seed: u64, instances: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        name: "oracle-equivalence",
        ..Default::default()
    };
    for k in 0..instances {
        let (points, m) = random_instance(&mut rng);
        report.checks += 1;
        let fast = min_norm_point(&points, &m);
        let slow = min_norm_oracle(&points, &m);
        match (fast, slow) {
            (Ok(a), Ok(b)) => {
                if a.point != b.point || a.norm_squared != b.norm_squared {
                    report.failures.push(format!("instance {k}: solver and oracle disagree"));
                } else if let Err(e) = a.verify(&points, &m).and_then(|_| b.verify(&points, &m)) {
                    report.failures.push(format!("instance {k}: certificate rejected: {e}"));
                }
            }
            (a, b) => report.failures.push(format!("instance {k}: error {a:?} / {b:?}")),
        }
    }
    report
}

/// Random 1PS with entries in `[-5, 5]`, trace-zero on each `GL` block.
pub fn random_one_ps(rng: &mut impl Rng, ws: &WeightSystem) -> OnePS {
    loop {
        let mut dir: Vec<i64> = Vec::with_capacity(ws.blocks().ambient_dim());
        let mut ok = true;
        for &n in ws.blocks().gl_blocks() {
            let head: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-5..=5)).collect();
            let last = -head.iter().sum::<i64>();
            ok &= (-5..=5).contains(&last);
            dir.extend(head);
            dir.push(last);
        }
        dir.extend(ws.blocks().extra_torus().iter().map(|_| rng.gen_range(-5..=5)));
        if !ok || dir.iter().all(|&c| c == 0) {
            continue;
        }
        return OnePS::new(dir.into_iter().map(BigInt::from).collect(), ws).expect("trace-zero by construction");
    }
}

/// Random point with nonempty support and nonzero coordinates.
pub fn random_point(rng: &mut impl Rng, ws: &WeightSystem) -> RationalPoint {
    let mut labels: Vec<&str> = ws.entries().iter().map(|(l, _)| l.as_str()).collect();
    labels.shuffle(rng);
    let size = rng.gen_range(1..=labels.len());
    labels[..size].iter().fold(RationalPoint::new(), |p, l| {
        let mut v = small_rational(rng);
        if v.is_zero() {
            v = Rational::from_integer(1.into());
        }
        p.with(*l, v)
    })
}

/// Torus-level Kempf duality: `ν²(x, λ_x) = ‖β_x‖²` and `ν²(x, λ) ≤ ‖β_x‖²`
/// for random λ (with `ν² ≤ 0` for semistable `x`).
pub fn kempf_duality(ws: &WeightSystem, seed: u64, supports: usize, lambdas_per_support: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SuiteReport {
        name: "kempf-duality",
        ..Default::default()
    };
    for k in 0..supports {
        let x = random_point(&mut rng, ws);
        let bound = match beta_of_point(&x, ws) {
            Ok(PointClass::Unstable(d)) => {
                report.checks += 1;
                match nu_squared(&x, &d.lambda, ws) {
                    Ok(v) if v == d.norm_squared => {}
                    other => report
                        .failures
                        .push(format!("support {k}: nu² at optimal 1PS is {other:?}, expected {}", d.norm_squared)),
                }
                d.norm_squared
            }
            Ok(PointClass::Semistable) => Rational::zero(),
            Err(e) => {
                report.failures.push(format!("support {k}: {e}"));
                continue;
            }
        };
        for _ in 0..lambdas_per_support {
            let l = random_one_ps(&mut rng, ws);
            report.checks += 1;
            match nu_squared(&x, &l, ws) {
                Ok(v) if v <= bound => {}
                Ok(v) => report.failures.push(format!(
                    "support {k}: nu²={v} exceeds bound {bound} at {:?}",
                    l.direction()
                )),
                Err(e) => report.failures.push(format!("support {k}: {e}")),
            }
        }
        let _ = bound.is_positive();
    }
    report
}
