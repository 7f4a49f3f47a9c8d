//! Binary cubic forms under SL(2): two unstable strata, one for forms with a
//! double root and one for forms with a triple root.
//!
//! cargo run --example binary_cubics

use kirwan::builtin;
use kirwan::geometry::rat;
use kirwan::instability::{beta_of_point, PointClass, RationalPoint};
use kirwan::strata::stratify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ws = builtin::load("binary-cubic")?;
    let result = stratify(&ws)?;
    for s in &result.strata {
        println!("beta = {}  |beta|^2 = {}  |Z| = {}", s.beta, s.norm_squared, s.z_indices.len());
    }
    println!("semistable forms exist: {}", result.semistable_nonempty);

    // x^2 y has a double root, y^3 a triple root, x^2 y + x y^2 three distinct roots.
    let samples = [
        ("x^2 y", RationalPoint::new().with("x_112", rat(1, 1))),
        ("y^3", RationalPoint::new().with("x_222", rat(1, 1))),
        ("x^2 y + x y^2", RationalPoint::new().with("x_112", rat(1, 1)).with("x_122", rat(1, 1))),
    ];
    for (name, x) in samples {
        match beta_of_point(&x, &ws)? {
            PointClass::Semistable => println!("{name:>14}: semistable"),
            PointClass::Unstable(d) => println!("{name:>14}: beta = {}, |beta|^2 = {}", d.beta, d.norm_squared),
        }
    }
    Ok(())
}
