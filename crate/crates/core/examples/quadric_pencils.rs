//! Stratifies pairs of ternary quadratic forms under GL(3) x GL(2) and prints
//! the strata, the empty candidates, and the dimension of each stratum.
//!
//! cargo run --example quadric_pencils

use kirwan::builtin;
use kirwan::cli::render_table;
use kirwan::strata::stratify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = builtin::load("sym2k3-x-k2")?;
    let result = stratify(&ws)?;
    print!("{}", render_table(&result));

    println!();
    for s in &result.strata {
        let labels: Vec<&str> = s.z_indices.iter().map(|&i| ws.label(i)).collect();
        println!(
            "|beta|^2 = {:>5}  dim S_beta (projective) = {:>2}  lambda_beta = {:?}  Z = {}",
            s.norm_squared.to_string(),
            s.dim_stratum_projective.expect("nonempty strata carry a dimension"),
            s.lambda_beta.iter().map(ToString::to_string).collect::<Vec<_>>(),
            labels.join(" "),
        );
    }
    Ok(())
}
