//! Built-in weight systems.
//!
//! - `binary-cubic`: `Sym³ k²` under `SL(2)` with weights `±(3,−3)`, `±(1,−1)`.
//! - `binary-quadratic`: `Sym² k²` under `SL(2)`, trace-zero convention.
//! - `sym2k3-x-k2`: pairs of ternary quadratic forms, `Sym² k³ ⊗ k²` under
//!   `GL(3) × GL(2)`, the 12 weights transcribed as a table.
//! - `quad-plus-vector(b1,b2)` or `quad-plus-vector(b1,b2,scale)`:
//!   `Sym² k² ⊕ k²` under `SL(2) × GL(1)`, where the `GL(1)` factor acts with
//!   exponent `b2` on the quadratic summand and `−b1` on the vector summand.
//!   The torus coordinate carries metric scale `scale`, default
//!   `1/(b1² + b2²)`.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::geometry::{parse_rational, rat, Rational};
use crate::rep::{load_weight_system, parse_rep, weights_of, BlockStructure, RepError, WeightDocument, WeightSystem};

const SYM2K3_X_K2: &str = include_str!("../data/sym2k3_x_k2.json");
const BINARY_CUBIC: &str = include_str!("../data/binary_cubic.json");

pub const NAMES: &[&str] = &["binary-cubic", "binary-quadratic", "sym2k3-x-k2", "quad-plus-vector(b1,b2)"];

fn from_json(text: &str) -> Result<WeightSystem, RepError> {
    let doc: WeightDocument = serde_json::from_str(text).map_err(|e| RepError::Schema(e.to_string()))?;
    load_weight_system(&doc)
}

pub fn load(name: &str) -> Result<WeightSystem, RepError> {
    match name {
        "binary-cubic" => from_json(BINARY_CUBIC),
        "binary-quadratic" => weights_of(&parse_rep("sym(2,std(1))")?, &BlockStructure::gl(&[2])?),
        "sym2k3-x-k2" => from_json(SYM2K3_X_K2),
        _ => match name.strip_prefix("quad-plus-vector(").and_then(|r| r.strip_suffix(')')) {
            Some(args) => {
                let parts: Vec<&str> = args.split(',').map(str::trim).collect();
                let bad = || RepError::Schema(format!("bad arguments in {name:?}; expected quad-plus-vector(b1,b2[,scale])"));
                if parts.len() != 2 && parts.len() != 3 {
                    return Err(bad());
                }
                let b1: i64 = parts[0].parse().map_err(|_| bad())?;
                let b2: i64 = parts[1].parse().map_err(|_| bad())?;
                let scale = match parts.get(2) {
                    Some(s) => Some(parse_rational(s).map_err(|e| RepError::Schema(e.to_string()))?),
                    None => None,
                };
                quad_plus_vector(b1, b2, scale)
            }
            None => Err(RepError::Schema(format!(
                "unknown example {name:?}; known: {}",
                NAMES.join(", ")
            ))),
        },
    }
}

/// `Sym² k² ⊕ k²` with the `GL(1)` exponents `b2` and `−b1` on an extra
/// torus coordinate. Requires `b1, b2 > 0` and `2·b1 > b2`.
pub fn quad_plus_vector(b1: i64, b2: i64, scale: Option<Rational>) -> Result<WeightSystem, RepError> {
    if b1 <= 0 || b2 <= 0 || 2 * b1 <= b2 {
        return Err(RepError::Schema(format!(
            "quad-plus-vector needs b1, b2 > 0 and 2*b1 > b2 (got {b1}, {b2})"
        )));
    }
    let scale = scale.unwrap_or_else(|| rat(1, b1 * b1 + b2 * b2));
    if !scale.is_positive() {
        return Err(RepError::NonPositiveScale(scale.to_string()));
    }
    let base = weights_of(&parse_rep("sym(2,std(1))+std(1)")?, &BlockStructure::gl(&[2])?)?;
    let blocks = BlockStructure::new(vec![2], vec![scale])?;
    let entries = base
        .entries()
        .iter()
        .map(|(label, w)| {
            let exponent = if label.starts_with("x_1,") { b2 } else { -b1 };
            let mut coords = w.coords().to_vec();
            coords.push(Rational::from_integer(BigInt::from(exponent)));
            (label.clone(), coords)
        })
        .collect();
    WeightSystem::new(blocks, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vector;

    #[test]
    fn all_names_load() {
        for name in ["binary-cubic", "binary-quadratic", "sym2k3-x-k2", "quad-plus-vector(3,4)", "quad-plus-vector(3, 4, 1/14)"] {
            load(name).unwrap();
        }
        assert!(load("nope").is_err());
        assert!(load("quad-plus-vector(1,4)").is_err());
        assert!(load("quad-plus-vector(3)").is_err());
    }

    #[test]
    fn quad_plus_vector_weights() {
        let ws = load("quad-plus-vector(3,4)").unwrap();
        assert_eq!(ws.blocks().extra_torus(), &[rat(1, 25)]);
        assert_eq!(ws.weight(0).coords(), &vector(&[(1, 1), (-1, 1), (4, 1)])[..]);
        assert_eq!(ws.weight(4).coords(), &vector(&[(-1, 2), (1, 2), (-3, 1)])[..]);
        assert_eq!(ws.label(3), "x_2,1");
    }
}
