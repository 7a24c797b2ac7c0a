//! Point counts and smoothness verdicts over small prime fields.

use doublecover::field::Field;
use doublecover::gen::{enumerate_points, smoothness_sample, smoothness_sample_system};
use doublecover::poly::{Poly, RingCtx};

fn main() -> doublecover::Result<()> {
    let r = RingCtx::projective(2, Field::Rational)?;
    let x = |i| Poly::var(&r, i);

    let conic = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
    let lines = &x(0) * &x(1);
    let cusp = &(&x(1).pow(2) * &x(2)) - &x(0).pow(3);

    for p in [5u64, 7, 13] {
        println!("p = {p}");
        for (name, f) in [("conic", &conic), ("two lines", &lines), ("cusp", &cusp)] {
            let pts = enumerate_points(std::slice::from_ref(f), &r, p)?;
            println!("  {name:<10} {:>3} points  {:?}", pts.len(), smoothness_sample(f, p, 32, 0)?);
        }
    }

    // a plane cubic meeting a line: three points, transversal or not
    let cubic = &(&x(0).pow(3) + &x(1).pow(3)) + &x(2).pow(3);
    for line in [x(2), &x(0) + &x(1)] {
        let v = smoothness_sample_system(&[line.clone(), cubic.clone()], 13, 32, 0)?;
        println!("V({line}, x0^3 + x1^3 + x2^3) over F_13: {v:?}");
    }
    Ok(())
}
