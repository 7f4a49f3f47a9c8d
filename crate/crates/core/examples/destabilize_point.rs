//! Hilbert-Mumford data for one point: the optimal destabilizing
//! one-parameter subgroup, its ν², and random subgroups that do worse.
//!
//! cargo run --example destabilize_point -- "x_1,33=1,x_2,23=-2"

use kirwan::builtin;
use kirwan::instability::{beta_of_point, moment, nu_squared, PointClass, RationalPoint};
use kirwan::selfcheck::random_one_ps;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "x_1,33=1,x_2,23=-2".into());
    let ws = builtin::load("sym2k3-x-k2")?;
    let x = RationalPoint::parse(&spec)?;
    let m = moment(&x, &ws)?;
    println!("moment = {m}  |moment|^2 = {}", ws.metric().norm_squared(m.coords())?);

    let PointClass::Unstable(d) = beta_of_point(&x, &ws)? else {
        println!("{spec} is semistable");
        return Ok(());
    };
    println!("beta = {}  |beta|^2 = {}", d.beta, d.norm_squared);
    println!("optimal lambda = {:?}", d.lambda.direction());
    println!("nu^2 at optimum = {}", nu_squared(&x, &d.lambda, &ws)?);

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5 {
        let l = random_one_ps(&mut rng, &ws);
        println!("lambda = {:?}  nu^2 = {}", l.direction(), nu_squared(&x, &l, &ws)?);
    }
    Ok(())
}
