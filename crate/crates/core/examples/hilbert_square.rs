//! Graded dimensions of `I_Z^2` for a complete intersection, from the
//! resolution and from a rank computation, plus one explicit decomposition.
//!
//! ```bash
//! cargo run --example hilbert_square -- 2 1 4
//! ```

use doublecover::ci::{decompose_in_i2, decomposition_kernel_dim, i2_dim_formula, i2_dim_oracle};
use doublecover::field::Field;
use doublecover::gen::{GenConfig, Generator};

fn main() -> doublecover::Result<()> {
    let args: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, a, b) = match args[..] {
        [n, a, b, ..] => (n as usize, a, b),
        _ => (2, 1, 4),
    };
    let field = Field::prime(32003)?;
    let mut g = Generator::new(GenConfig::with_seed(1, field))?;
    let sample = g.random_smooth_ci(n, a, b)?;
    let ci = &sample.ci;
    println!("Z = V({}, {})", ci.f_a(), ci.f_b());
    println!("smoothness over F_13: {:?}\n", sample.verdict);

    println!("{:>3} {:>8} {:>8} {:>8}", "m", "formula", "rank", "kernel");
    for m in 0..=2 * b as i64 + 2 {
        println!(
            "{m:>3} {:>8} {:>8} {:>8}",
            i2_dim_formula(n, a, b, m),
            i2_dim_oracle(ci, m),
            decomposition_kernel_dim(ci, m)
        );
    }

    // an element of I_Z^2 in degree 2b, written back in terms of f_a, f_b
    let ring = ci.ring().clone();
    let big_a = g.random_poly(&ring, 2 * (b - a))?;
    let target = &(&big_a * &ci.f_a().pow(2)) + &ci.f_b().pow(2);
    let dec = decompose_in_i2(&target, ci)?;
    println!("\nC = {}, reconstructs: {}", dec.c, dec.reconstruct(ci) == target);
    Ok(())
}
