//! Closest point of a convex hull to the origin under a non-diagonal metric,
//! solved by Wolfe's method and by exhaustive enumeration, with the exact
//! optimality certificate checked for both.
//!
//! cargo run --example min_norm

use kirwan::geometry::{min_norm_oracle, min_norm_point, origin_in_interior, vector, MetricForm, Rational};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let points = vec![
        vector(&[(2, 1), (1, 1), (0, 1)]),
        vector(&[(1, 1), (3, 1), (-1, 2)]),
        vector(&[(3, 2), (-1, 1), (1, 1)]),
        vector(&[(4, 1), (2, 1), (2, 1)]),
    ];
    let gram = vec![
        vec![Rational::from_integer(2.into()), Rational::new(1.into(), 2.into()), Rational::from_integer(0.into())],
        vec![Rational::new(1.into(), 2.into()), Rational::from_integer(1.into()), Rational::from_integer(0.into())],
        vec![Rational::from_integer(0.into()), Rational::from_integer(0.into()), Rational::from_integer(3.into())],
    ];
    let m = MetricForm::new(gram)?;

    let fast = min_norm_point(&points, &m)?;
    let slow = min_norm_oracle(&points, &m)?;
    println!("wolfe : point {:?}  |p|^2 = {}", fast.point.iter().map(ToString::to_string).collect::<Vec<_>>(), fast.norm_squared);
    println!("oracle: point {:?}  |p|^2 = {}", slow.point.iter().map(ToString::to_string).collect::<Vec<_>>(), slow.norm_squared);
    for (i, c) in &fast.coefficients {
        println!("  coefficient of point {i}: {c}");
    }
    fast.verify(&points, &m)?;
    slow.verify(&points, &m)?;
    println!("certificates verified; agree = {}", fast.point == slow.point);

    let square = vec![vector(&[(1, 1), (1, 1)]), vector(&[(-1, 1), (1, 1)]), vector(&[(1, 1), (-1, 1)]), vector(&[(-1, 1), (-1, 1)])];
    println!("origin interior to the square: {}", origin_in_interior(&square, &MetricForm::identity(2), 2)?);
    println!("origin interior to one edge  : {}", origin_in_interior(&square[..2], &MetricForm::identity(2), 2)?);
    Ok(())
}
