//! The cover `y^2 = g_{2d}` in weighted projective space: sections split by
//! the involution, and the pull-back of an image splits as `W + i(W)`.

use doublecover::cover::{isotypic_basis, involution_conjugate, pullback_splits, CoverDivisor, DoubleCover};
use doublecover::field::Field;
use doublecover::poly::{Poly, RingCtx};

fn main() -> doublecover::Result<()> {
    let r = RingCtx::projective(2, Field::Rational)?;
    let x = |i| Poly::var(&r, i);
    let sextic = &(&x(0).pow(6) + &x(1).pow(6)) + &x(2).pow(6);
    let cover = DoubleCover::new(2, 3, sextic)?;
    println!("V: {} = 0 in weights {:?}", cover.equation(), cover.weighted_ring().weights());

    for k in 1..=7 {
        let (plus, minus) = isotypic_basis(&cover, k);
        println!("k={k}: {} invariant + {} anti-invariant sections", plus.len(), minus.len());
    }

    let fk = &(&x(0).pow(4) * &x(1)) + &x(2).pow(5);
    let fkd = &x(0).pow(2) - &(&x(1) * &x(2));
    let w = CoverDivisor::new(&cover, fk, fkd)?;
    println!("\nW  = V({})", w.section());
    println!("iW = V({})", involution_conjugate(&w).section());
    println!("pull-back of the image is W + iW: {}", pullback_splits(&w)?);
    Ok(())
}
