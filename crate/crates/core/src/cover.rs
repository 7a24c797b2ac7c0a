//! Double covers `V: y^2 = g_{2d}(x)` of `P^n` and divisors `W` in `|kL|`.
//!
//! Sections of `kL` split under the involution `y -> -y` into forms `f_k(x)`
//! and `y f_{k-d}(x)`. A divisor is the pair `(f_k, f_{k-d})`, cutting
//! `W = V(y f_{k-d} - f_k)` on `V`. Its image in `P^n` is the degree `2k`
//! hypersurface `f_k^2 - g_{2d} f_{k-d}^2 = 0`, doubled along
//! `Z = V(f_{k-d}, f_k)`.
//!
//! `V` itself is never built; the weighted ring `P(1^{n+1}, d)` only shows
//! up in the identity checks at the bottom of this module.

use std::sync::Arc;

use crate::ci::CompleteIntersection;
use crate::error::{Error, Result};
use crate::poly::{monomial_basis, Poly, RingCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleCover {
    n: usize,
    d: u32,
    g2d: Poly,
}

impl DoubleCover {
    pub fn new(n: usize, d: u32, g2d: Poly) -> Result<DoubleCover> {
        if d == 0 {
            return Err(Error::InvalidArgument("half-degree d must be positive".into()));
        }
        let ring = g2d.ring();
        if !ring.is_unit_weight() || ring.num_vars() != n + 1 {
            return Err(Error::InvalidRing(format!(
                "branch equation must live in the coordinate ring of P^{n}"
            )));
        }
        match g2d.degree() {
            Some(deg) if deg == 2 * d => {}
            Some(deg) => {
                return Err(Error::DegreeMismatch {
                    left: deg as i64,
                    right: 2 * d as i64,
                })
            }
            None => return Err(Error::ZeroBranch),
        }
        Ok(DoubleCover { n, d, g2d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn branch(&self) -> &Poly {
        &self.g2d
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        self.g2d.ring()
    }

    /// `P(1^{n+1}, d)`, with `y` as the last variable.
    pub fn weighted_ring(&self) -> Arc<RingCtx> {
        RingCtx::weighted_double(self.n, self.d, self.ring().field()).expect("valid ring")
    }

    /// `y^2 - g_{2d}` in the weighted ring.
    pub fn equation(&self) -> Poly {
        let wr = self.weighted_ring();
        let y = Poly::var(&wr, self.n + 1);
        &y.pow(2) - &self.g2d.embed(&wr).expect("embeds")
    }

    /// Rewrites a weighted-ring polynomial modulo `y^2 - g_{2d}`, so that `y`
    /// appears with exponent at most 1.
    pub fn reduce(&self, p: &Poly) -> Result<Poly> {
        let wr = self.weighted_ring();
        if p.ring() != &wr {
            return Err(Error::RingMismatch);
        }
        let yi = self.n + 1;
        let g = self.g2d.embed(&wr)?;
        let mut acc = Poly::zero(&wr);
        for (e, c) in p.terms() {
            let mut rest = e.to_vec();
            let ey = rest[yi];
            rest[yi] = ey % 2;
            let t = &Poly::monomial(&wr, rest, c.clone()) * &g.pow(ey / 2);
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverDivisor {
    cover: DoubleCover,
    fk: Poly,
    fkd: Poly,
    k: u32,
}

impl CoverDivisor {
    /// `W = V(y f_{k-d} - f_k)`; `k` is read off whichever part is nonzero.
    pub fn new(cover: &DoubleCover, fk: Poly, fkd: Poly) -> Result<CoverDivisor> {
        if fk.ring() != cover.ring() || fkd.ring() != cover.ring() {
            return Err(Error::RingMismatch);
        }
        let d = cover.d;
        let k = match (fk.degree(), fkd.degree()) {
            (None, None) => {
                return Err(Error::InvalidArgument(
                    "divisor needs f_k or f_{k-d} nonzero".into(),
                ))
            }
            (Some(k), None) => k,
            (None, Some(e)) => e + d,
            (Some(k), Some(e)) if k == e + d => k,
            (Some(k), Some(e)) => {
                return Err(Error::DegreeMismatch {
                    left: k as i64,
                    right: (e + d) as i64,
                })
            }
        };
        if k < d {
            return Err(Error::InvalidArgument(format!("need k >= d, got k={k}, d={d}")));
        }
        Ok(CoverDivisor {
            cover: cover.clone(),
            fk,
            fkd,
            k,
        })
    }

    pub fn cover(&self) -> &DoubleCover {
        &self.cover
    }

    pub fn fk(&self) -> &Poly {
        &self.fk
    }

    pub fn fkd(&self) -> &Poly {
        &self.fkd
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// `y f_{k-d} - f_k` in the weighted ring.
    pub fn section(&self) -> Poly {
        let wr = self.cover.weighted_ring();
        let y = Poly::var(&wr, self.cover.n + 1);
        &(&y * &self.fkd.embed(&wr).expect("embeds")) - &self.fk.embed(&wr).expect("embeds")
    }
}

/// Bases of the two eigenspaces of `H^0(V, kL)`: forms of degree `k`
/// (invariant part) and forms of degree `k - d` (the part multiplied by `y`).
pub fn isotypic_basis(cover: &DoubleCover, k: i64) -> (Vec<Poly>, Vec<Poly>) {
    let ring = cover.ring();
    (
        monomial_basis(ring, k),
        monomial_basis(ring, k - cover.d as i64),
    )
}

/// Image `W^b` of the divisor in `P^n`: returns `g = f_k^2 - g_{2d} f_{k-d}^2`
/// together with its double locus `Z = (f_{k-d}, f_k)`.
pub fn divisor_image(w: &CoverDivisor) -> Result<(Poly, CompleteIntersection)> {
    if w.fkd.is_zero() {
        return Err(Error::ComponentDivisor("f_{k-d} = 0: W is a pull-back"));
    }
    if w.fk.is_zero() {
        return Err(Error::ComponentDivisor(
            "f_k = 0: W contains the ramification divisor",
        ));
    }
    let g = &w.fk.pow(2) - &(w.cover.branch() * &w.fkd.pow(2));
    let ci = CompleteIntersection::new(w.fkd.clone(), w.fk.clone())?;
    Ok((g, ci))
}

/// Image of `W` under `(x, y) -> (x, -y)`.
pub fn involution_conjugate(w: &CoverDivisor) -> CoverDivisor {
    CoverDivisor {
        cover: w.cover.clone(),
        fk: w.fk.clone(),
        fkd: -&w.fkd,
        k: w.k,
    }
}

/// Checks `(f_k - y f_{k-d})(f_k + y f_{k-d}) = g` modulo `y^2 - g_{2d}`,
/// i.e. that the pull-back of `W^b` is `W + i(W)`.
pub fn pullback_splits(w: &CoverDivisor) -> Result<bool> {
    let (g, _) = divisor_image(w)?;
    let wr = w.cover.weighted_ring();
    let section = w.section();
    let conj = involution_conjugate(w).section();
    let prod = &section * &conj;
    Ok(w.cover.reduce(&prod)? == g.embed(&wr)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::poly::{exponents_of_degree, num_forms};

    fn conic_cover() -> DoubleCover {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        let g = &(&Poly::var(&r, 0).pow(2) + &Poly::var(&r, 1).pow(2)) + &Poly::var(&r, 2).pow(2);
        DoubleCover::new(2, 1, g).unwrap()
    }

    fn sextic_cover() -> DoubleCover {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        let g = &(&Poly::var(&r, 0).pow(6) + &Poly::var(&r, 1).pow(6)) + &Poly::var(&r, 2).pow(6);
        DoubleCover::new(2, 3, g).unwrap()
    }

    #[test]
    fn isotypic_sizes() {
        let v = sextic_cover();
        let (plus, minus) = isotypic_basis(&v, 3);
        assert_eq!((plus.len(), minus.len()), (10, 1));
        let (plus, minus) = isotypic_basis(&v, 6);
        assert_eq!((plus.len(), minus.len()), (28, 10));
        assert_eq!(plus.len() + minus.len() - 1, 37);
        let (_, minus) = isotypic_basis(&v, 2);
        assert!(minus.is_empty());
    }

    #[test]
    fn isotypic_matches_weighted_monomials() {
        // weighted k-ics reduced mod y^2 - g keep y-exponent 0 or 1
        for d in 1..=3u32 {
            for k in 0..=9i64 {
                let w = vec![1, 1, 1, d];
                let count = exponents_of_degree(&w, k).iter().filter(|e| e[3] <= 1).count();
                assert_eq!(count, num_forms(2, k) + num_forms(2, k - d as i64));
            }
        }
    }

    #[test]
    fn worked_image() {
        let v = conic_cover();
        let r = v.ring().clone();
        let fk = &Poly::var(&r, 0) * &Poly::var(&r, 1);
        let fkd = Poly::var(&r, 2);
        let w = CoverDivisor::new(&v, fk.clone(), fkd.clone()).unwrap();
        let (g, ci) = divisor_image(&w).unwrap();
        assert_eq!(g, &fk.pow(2) - &(v.branch() * &fkd.pow(2)));
        assert_eq!(g.degree(), Some(4));
        assert_eq!(ci.degrees(), (1, 2));
        assert!(pullback_splits(&w).unwrap());
    }

    #[test]
    fn empty_locus_image() {
        let v = sextic_cover();
        let r = v.ring().clone();
        let fd = &Poly::var(&r, 0).pow(3) - &Poly::var(&r, 1).pow(3);
        let w = CoverDivisor::new(&v, fd.clone(), Poly::one(&r)).unwrap();
        let (g, ci) = divisor_image(&w).unwrap();
        assert_eq!(g, &fd.pow(2) - v.branch());
        assert!(ci.is_empty_locus());
        assert_eq!(g.degree(), Some(6));
    }

    #[test]
    fn component_divisors_rejected() {
        let v = conic_cover();
        let r = v.ring().clone();
        let w = CoverDivisor::new(&v, Poly::var(&r, 0).pow(2), Poly::zero(&r)).unwrap();
        assert!(matches!(divisor_image(&w), Err(Error::ComponentDivisor(_))));
        let w = CoverDivisor::new(&v, Poly::zero(&r), Poly::var(&r, 0)).unwrap();
        assert!(matches!(divisor_image(&w), Err(Error::ComponentDivisor(_))));
        assert!(CoverDivisor::new(&v, Poly::zero(&r), Poly::zero(&r)).is_err());
    }

    #[test]
    fn involution() {
        let v = conic_cover();
        let r = v.ring().clone();
        let w = CoverDivisor::new(&v, &Poly::var(&r, 0) * &Poly::var(&r, 1), Poly::var(&r, 2)).unwrap();
        let c = involution_conjugate(&w);
        assert_eq!(involution_conjugate(&c), w);
        assert_eq!(divisor_image(&c).unwrap().0, divisor_image(&w).unwrap().0);
        let fixed = CoverDivisor::new(&v, Poly::var(&r, 0).pow(2), Poly::zero(&r)).unwrap();
        assert_eq!(involution_conjugate(&fixed), fixed);
    }

    #[test]
    fn reduce_keeps_y_linear() {
        let v = sextic_cover();
        let wr = v.weighted_ring();
        let y = Poly::var(&wr, 3);
        assert_eq!(v.reduce(&y.pow(2)).unwrap(), v.branch().embed(&wr).unwrap());
        assert_eq!(v.reduce(&y.pow(3)).unwrap(), &y * &v.branch().embed(&wr).unwrap());
        assert!(v.reduce(&v.equation()).unwrap().is_zero());
    }

    #[test]
    fn rejects_wrong_branch_degree() {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        assert!(DoubleCover::new(2, 2, Poly::var(&r, 0).pow(2)).is_err());
        assert!(DoubleCover::new(2, 1, Poly::zero(&r)).is_err());
    }
}
