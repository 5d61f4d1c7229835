//! Outward-rounded real and complex interval arithmetic.
//!
//!     cargo run --example interval_arithmetic

use radiipol::interval::{ArithOp, ComplexInterval, RealInterval};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let one = RealInterval::point(1.0);
    let three = RealInterval::point(3.0);
    let third = one.checked_div(&three)?;
    println!("1/3            = {third}");
    println!("  contains 1/3 as f64: {}", third.contains(1.0 / 3.0));
    println!("  width: {:e}", third.width_up());

    // exact results stay points
    let sum = RealInterval::point(0.5) + RealInterval::point(0.25);
    println!("0.5 + 0.25     = {sum}  (point: {})", sum.is_point());

    let x = RealInterval::from_midrad(2.0, 0.1)?;
    let y = RealInterval::new(-1.0, 3.0)?;
    for op in ArithOp::ALL {
        match x.apply(op, &y) {
            Ok(z) => println!("{x} {op:?} {y} = {z}"),
            Err(e) => println!("{x} {op:?} {y}: {e}"),
        }
    }

    let big = RealInterval::point(f64::MAX);
    println!("MAX + MAX      = {}  (finite: {})", big + big, (big + big).is_finite());

    let a = ComplexInterval::from_midrad(1.0, 1.0, 0.0, 0.0)?;
    let b = ComplexInterval::from_midrad(1.0, -1.0, 0.0, 0.0)?;
    println!();
    println!("(1+i)(1-i)     = {}", a * b);
    println!("(1+i)/(1-i)    = {}", a.checked_div(&b)?);
    let c = ComplexInterval::from_midrad(0.0, 0.0, 1.0, 1.0)?;
    println!("sup |[-1,1]+i[-1,1]| = {} (sqrt 2 = {})", c.mag_sup(), 2f64.sqrt());
    println!("conj(1+i)      = {}", a.conj());
    Ok(())
}
