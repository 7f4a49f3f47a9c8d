//! Weights of a representation from an expression, and the explicit-weight
//! document that stores them.
//!
//! cargo run --example rep_builder -- "sym(2,std(1))*std(2)" 3,2

use kirwan::rep::{load_weight_system, parse_rep, weights_of, BlockStructure};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let expr = args.next().unwrap_or_else(|| "sym(2,std(1))*std(2)".into());
    let sizes: Vec<usize> = args
        .next()
        .unwrap_or_else(|| "3,2".into())
        .split(',')
        .map(str::parse)
        .collect::<Result<_, _>>()?;

    let rep = parse_rep(&expr)?;
    let ws = weights_of(&rep, &BlockStructure::gl(&sizes)?)?;
    println!("{expr} over GL{sizes:?}: {} weights", ws.len());
    for (label, w) in ws.entries() {
        println!("  {label:<10} {w}");
    }

    let doc = ws.to_document();
    let text = serde_json::to_string(&doc)?;
    println!("\n{text}");
    assert_eq!(load_weight_system(&serde_json::from_str(&text)?)?, ws);
    Ok(())
}
