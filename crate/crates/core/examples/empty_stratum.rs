//! Quadratic forms plus vectors in the plane, with an extra GL(1) acting
//! through two exponents. One minimal combination of weights indexes an empty
//! stratum; the recursion finds it.
//!
//! cargo run --example empty_stratum -- 3 4

use kirwan::builtin::quad_plus_vector;
use kirwan::strata::stratify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<i64> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    let (b1, b2) = match args[..] {
        [b1, b2] => (b1, b2),
        [] => (3, 4),
        _ => return Err("usage: empty_stratum [B1 B2]".into()),
    };
    let ws = quad_plus_vector(b1, b2, None)?;
    let result = stratify(&ws)?;
    let label = |i: &usize| ws.label(*i).to_string();
    for s in result.candidates() {
        println!(
            "{:<28} |beta|^2 = {:<8} Z = {:<22} {}",
            s.beta.to_string(),
            s.norm_squared.to_string(),
            s.z_indices.iter().map(label).collect::<Vec<_>>().join(" "),
            if s.nonempty == Some(true) { "stratum" } else { "EMPTY" },
        );
    }
    println!("{} nonempty strata, {} empty candidates", result.strata.len(), result.empty_candidates.len());
    Ok(())
}
