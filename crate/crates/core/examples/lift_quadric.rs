//! The smallest lift: a quadric surface as a double plane branched over a
//! conic, and the plane quartic cut out by one of its divisors.

use doublecover::cover::{divisor_image, CoverDivisor, DoubleCover};
use doublecover::field::Field;
use doublecover::lift::{family_member, lift_branch, recover_branch, verify_lift};
use doublecover::poly::{Poly, RingCtx};

fn main() -> doublecover::Result<()> {
    let r = RingCtx::projective(2, Field::Rational)?;
    let x = |i| Poly::var(&r, i);
    let conic = &(&x(0).pow(2) + &x(1).pow(2)) + &x(2).pow(2);
    let cover = DoubleCover::new(2, 1, conic.clone())?;
    let w = CoverDivisor::new(&cover, &x(0) * &x(1), x(2))?;

    let (g, ci) = divisor_image(&w)?;
    println!("image quartic  g = {g}");
    println!("double along   Z = V({}, {})", ci.f_a(), ci.f_b());

    let fam = lift_branch(&g, &ci)?;
    println!("\nf~ = {}\ng~ = {}", fam.f_tilde, fam.g_tilde);
    println!("family dimension {}", fam.dimension());

    for t in [-2i64, -1, 0, 1, 2] {
        let a = Poly::constant(&r, Field::Rational.from_i64(t));
        let m = family_member(&fam, &a)?;
        println!(
            "a = {t:>2}: branch {}  (identity {})",
            m.g_hat,
            verify_lift(&g, &ci, &m, &fam.scalar)
        );
    }

    let rec = recover_branch(&fam, &conic)?.expect("f_k is a contact form");
    println!("\noriginal conic recovered at a = {}: {}", rec.member.a, rec.matches);
    Ok(())
}
