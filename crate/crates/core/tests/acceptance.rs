//! Acceptance gate: one line per criterion, nonzero exit if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use kirwan::builtin;
use kirwan::geometry::{min_norm_oracle, rat, Rational};
use kirwan::instability::{beta_of_point, moment, nu_squared, PointClass};
use kirwan::rep::{parse_rep, weights_of, BlockStructure, WeightSystem};
use kirwan::selfcheck::{oracle_equivalence, random_one_ps, random_point};
use kirwan::strata::{stratify, StratificationResult, Stratum};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn label_set(ws: &WeightSystem, idx: &BTreeSet<usize>) -> BTreeSet<String> {
    idx.iter().map(|&i| ws.label(i).to_string()).collect()
}

fn names(list: &str) -> BTreeSet<String> {
    list.split_whitespace().map(|s| format!("x_{s}")).collect()
}

/// The ten rows of the quadric-pencil table: `‖β‖²` (`None` for the row the
/// oracle decides), `Z`, `W`.
fn pencil_rows() -> Vec<(Option<Rational>, BTreeSet<String>, BTreeSet<String>)> {
    vec![
        (Some(rat(1, 2)), names("2,11 2,12 2,13 2,22 2,23 2,33"), names("")),
        (Some(rat(7, 6)), names("2,22 2,23 2,33"), names("")),
        (None, names("2,33"), names("")),
        (Some(rat(1, 6)), names("1,13 1,23 2,13 2,23"), names("1,33 2,33")),
        (Some(rat(11, 12)), names("1,33 2,23"), names("2,33")),
        (Some(rat(1, 24)), names("1,33 2,11 2,12 2,22"), names("2,13 2,23 2,33")),
        (Some(rat(1, 4)), names("1,33 2,13 2,22"), names("2,23 2,33")),
        (Some(rat(1, 42)), names("1,22 1,23 1,33 2,12 2,13"), names("2,22 2,23 2,33")),
        (Some(rat(1, 10)), names("1,23 2,13 2,22"), names("1,33 2,23 2,33")),
        (Some(rat(2, 3)), names("1,22 1,23 1,33 2,22 2,23 2,33"), names("")),
    ]
}

fn pencils() -> (WeightSystem, StratificationResult, Duration) {
    let ws = builtin::load("sym2k3-x-k2").expect("built-in loads");
    let start = Instant::now();
    let result = stratify(&ws).expect("stratifies");
    (ws, result, start.elapsed())
}

fn criterion_1() -> Outcome {
    let (ws, result, elapsed) = pencils();
    ensure(result.strata.len() == 10, || format!("{} strata, expected 10", result.strata.len()))?;
    let single = ws.index_of("x_2,33").ok_or("missing x_2,33")?;
    let certified = min_norm_oracle(&[ws.weight(single).coords().to_vec()], ws.metric())
        .map_err(|e| e.to_string())?
        .norm_squared;
    for (norm, z, w) in pencil_rows() {
        let expected = norm.unwrap_or_else(|| certified.clone());
        let hit = result
            .strata
            .iter()
            .find(|s| label_set(&ws, &s.z_indices) == z)
            .ok_or_else(|| format!("no stratum with Z = {z:?}"))?;
        ensure(label_set(&ws, &hit.w_indices) == w, || format!("W mismatch for Z = {z:?}"))?;
        ensure(hit.norm_squared == expected, || {
            format!("norm {} for Z = {z:?}, expected {expected}", hit.norm_squared)
        })?;
    }
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "10 strata, Z/W/norms match; singleton row certified at {certified}; {:.0?}",
        elapsed
    ))
}

fn criterion_2() -> Outcome {
    let (_, result, _) = pencils();
    ensure(result.strata.len() == 10, || "expected 10 strata".into())?;
    ensure(result.strata.iter().all(|s| s.nonempty == Some(true)), || {
        "some stratum not flagged nonempty".into()
    })?;
    Ok(format!(
        "all 10 nonempty ({} further candidates empty)",
        result.empty_candidates.len()
    ))
}

fn criterion_3() -> Outcome {
    let ws = builtin::load("binary-cubic").map_err(|e| e.to_string())?;
    let result = stratify(&ws).map_err(|e| e.to_string())?;
    let norms: Vec<Rational> = result.strata.iter().map(|s| s.norm_squared.clone()).collect();
    ensure(norms == vec![rat(2, 1), rat(18, 1)], || format!("norms {norms:?}"))?;
    ensure(result.strata.iter().all(|s| s.nonempty == Some(true)), || "empty stratum".into())?;
    ensure(result.semistable_nonempty, || "semistable locus empty".into())?;
    Ok("norms 2 and 18, both nonempty, semistable locus nonempty".into())
}

fn criterion_4() -> Outcome {
    let ws = builtin::load("quad-plus-vector(3,4,1/25)").map_err(|e| e.to_string())?;
    let result = stratify(&ws).map_err(|e| e.to_string())?;
    let vector_summand = names("2,1 2,2");
    let found: Vec<&Stratum> = result
        .candidates()
        .into_iter()
        .filter(|s| label_set(&ws, &s.z_indices) == vector_summand)
        .collect();
    ensure(found.len() == 1, || format!("{} candidates with Z = vector summand", found.len()))?;
    ensure(found[0].nonempty == Some(false), || "vector-summand candidate not flagged empty".into())?;
    ensure(result.strata.len() == 6, || format!("{} nonempty strata, expected 6", result.strata.len()))?;
    Ok(format!(
        "vector-summand candidate (norm {}) empty; 6 nonempty",
        found[0].norm_squared
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let report = oracle_equivalence(5, 250);
    let elapsed = start.elapsed();
    ensure(report.checks >= 200, || "too few instances".into())?;
    ensure(report.passed(), || report.failures.join("; "))?;
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{} instances agree exactly, certificates valid; {:.0?}", report.checks, elapsed))
}

fn criterion_6() -> Outcome {
    let ws = builtin::load("sym2k3-x-k2").map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut supports, mut lambdas) = (0, 0);
    while supports < 100 || lambdas < 1000 {
        let x = random_point(&mut rng, &ws);
        let PointClass::Unstable(d) = beta_of_point(&x, &ws).map_err(|e| e.to_string())? else {
            continue;
        };
        let at_optimum = nu_squared(&x, &d.lambda, &ws).map_err(|e| e.to_string())?;
        ensure(at_optimum == d.norm_squared, || {
            format!("nu² = {at_optimum} at optimal 1PS, norm {}", d.norm_squared)
        })?;
        supports += 1;
        for _ in 0..12 {
            let l = random_one_ps(&mut rng, &ws);
            let v = nu_squared(&x, &l, &ws).map_err(|e| e.to_string())?;
            ensure(v <= d.norm_squared, || format!("nu² = {v} exceeds {}", d.norm_squared))?;
            lambdas += 1;
        }
    }
    Ok(format!("{supports} unstable supports attain the bound; {lambdas} random 1PS stay below"))
}

fn shape(result: &StratificationResult) -> Vec<(Rational, usize, usize, Vec<Vec<usize>>)> {
    let mut v: Vec<_> = result
        .strata
        .iter()
        .map(|s| (s.norm_squared.clone(), s.z_indices.len(), s.w_indices.len(), s.levi_partition.clone()))
        .collect();
    v.sort();
    v
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let systems = ["sym2k3-x-k2", "binary-cubic", "quad-plus-vector(3,4)"];
    let mut weyl = 0;
    let mut scaled = 0;
    let mut moments = 0;
    for name in systems {
        let ws = builtin::load(name).map_err(|e| e.to_string())?;
        let base = stratify(&ws).map_err(|e| e.to_string())?;
        for _ in 0..3 {
            let perm: Vec<usize> = ws
                .blocks()
                .block_ranges()
                .into_iter()
                .flat_map(|r| {
                    let mut p: Vec<usize> = r.collect();
                    p.shuffle(&mut rng);
                    p
                })
                .chain(ws.blocks().gl_dim()..ws.blocks().ambient_dim())
                .collect();
            let moved = ws
                .map_weights(|w| perm.iter().map(|&k| w[k].clone()).collect())
                .map_err(|e| e.to_string())?;
            let other = stratify(&moved).map_err(|e| e.to_string())?;
            ensure(shape(&base) == shape(&other), || format!("{name}: Weyl permutation changed strata"))?;
            weyl += 1;
        }
        for c in [rat(2, 1), rat(3, 1), rat(1, 5)] {
            let other = stratify(&ws.scaled_metric(&c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let (a, b) = (base.candidates(), other.candidates());
            ensure(a.len() == b.len(), || format!("{name}: candidate count changed under scale {c}"))?;
            for (s, t) in a.iter().zip(&b) {
                ensure(
                    s.beta == t.beta
                        && s.z_indices == t.z_indices
                        && s.w_indices == t.w_indices
                        && s.nonempty == t.nonempty
                        && &s.norm_squared * &c == t.norm_squared,
                    || format!("{name}: stratum {} changed under scale {c}", s.beta),
                )?;
            }
            scaled += 1;
        }
        for _ in 0..200 {
            let x = random_point(&mut rng, &ws);
            if let PointClass::Unstable(d) = beta_of_point(&x, &ws).map_err(|e| e.to_string())? {
                let m = moment(&x, &ws).map_err(|e| e.to_string())?;
                let mm = ws.metric().norm_squared(m.coords()).map_err(|e| e.to_string())?;
                ensure(mm >= d.norm_squared, || format!("{name}: moment {mm} below {}", d.norm_squared))?;
                moments += 1;
            }
        }
    }
    Ok(format!(
        "{weyl} Weyl permutations, {scaled} metric scalings, {moments} moment bounds hold"
    ))
}

fn criterion_8() -> Outcome {
    let built = weights_of(
        &parse_rep("sym(2,std(1))*std(2)").map_err(|e| e.to_string())?,
        &BlockStructure::gl(&[3, 2]).map_err(|e| e.to_string())?,
    )
    .map_err(|e| e.to_string())?;
    let table = builtin::load("sym2k3-x-k2").map_err(|e| e.to_string())?;
    ensure(built.len() == 12, || format!("{} weights", built.len()))?;
    ensure(built.entries() == table.entries(), || "builder and table differ".into())?;
    Ok("12 rows identical (labels and weights)".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("quadric pencil table", criterion_1),
        ("pencil strata nonempty", criterion_2),
        ("binary cubics", criterion_3),
        ("empty stratum detection", criterion_4),
        ("oracle equivalence", criterion_5),
        ("Kempf duality", criterion_6),
        ("invariance", criterion_7),
        ("builder fidelity", criterion_8),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} [{name}]: PASS ({detail})", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {} [{name}]: FAIL ({why})", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
