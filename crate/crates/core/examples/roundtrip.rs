//! Random cover and divisor: push forward to the image hypersurface, lift it
//! back, and find the original branch locus in the family.
//!
//! ```bash
//! cargo run --release --example roundtrip -- 2 3 6 0
//! ```

use doublecover::census::dim_report;
use doublecover::ci::decomposition_kernel_dim;
use doublecover::cover::divisor_image;
use doublecover::field::Field;
use doublecover::gen::{GenConfig, Generator};
use doublecover::lift::{family_injectivity_check, lift_branch, recover_branch};

fn main() -> doublecover::Result<()> {
    let args: Vec<u64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (n, d, k, seed) = match args[..] {
        [n, d, k, seed, ..] => (n as usize, d as u32, k as u32, seed),
        [n, d, k] => (n as usize, d as u32, k as u32, 0),
        _ => (2, 3, 6, 0),
    };
    let field = Field::prime(101)?;
    let mut g = Generator::new(GenConfig::with_seed(seed, field))?;
    let s = g.random_cover_divisor(n, d, k)?;
    println!("branch g_2d      = {}", s.cover.branch());
    println!("branch sampled   : {:?}", s.branch_verdict);

    let (img, ci) = divisor_image(&s.divisor)?;
    println!("image degree     = {}", img.degree().unwrap_or(0));
    let fam = lift_branch(&img, &ci)?;
    let report = dim_report(n, k, d)?;
    println!("family dimension = {} (census fibre {})", fam.dimension(), report.fiber_dim);
    println!("kernel in degree {} = {}", 2 * k, decomposition_kernel_dim(&ci, 2 * k as i64));
    println!("injective on 20 samples: {}", family_injectivity_check(&fam, 20, seed)?);
    match recover_branch(&fam, s.cover.branch())? {
        Some(r) => println!("branch recovered: {} (a = {})", r.matches, r.member.a),
        None => println!("no member has contact form f_k"),
    }
    Ok(())
}
