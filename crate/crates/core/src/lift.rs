//! Lifting a hypersurface `W^b` that is double along `Z = (f_{k-d}, f_k)` to
//! a double cover: complete the square, then walk the family of branch loci.
//!
//! Writing `g = A f_{k-d}^2 + 2 B f_{k-d} f_k + f_k^2` (after scaling so the
//! `f_k^2` coefficient is 1), put `f~ = f_k + B f_{k-d}` and `g~ = A - B^2`.
//! Then `g = f~^2 + f_{k-d}^2 g~`, and for every form `a` of degree `2d - k`
//!
//! ```text
//! f^ = f~ - a f_{k-d}^2,    g^ = g~ + a (2 f~ - a f_{k-d}^2)
//! ```
//!
//! satisfies the same identity, so `W^b` lifts to the double cover branched
//! along `V(g^)`.

use crate::ci::{decompose_in_i2, shifted_columns, CompleteIntersection};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::gen::{GenConfig, Generator};
use crate::linalg::{self, Matrix};
use crate::poly::{basis_index, monomial_basis, Poly};

pub use crate::gen::{smoothness_sample, SmoothnessVerdict};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftFamily {
    pub ci: CompleteIntersection,
    pub f_tilde: Poly,
    pub g_tilde: Poly,
    /// The `B` part of the decomposition, of degree `d`.
    pub g_d: Poly,
    pub param_basis: Vec<Poly>,
    pub source: Poly,
    pub scalar: FieldElem,
    pub k: u32,
    pub d: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyMember {
    pub f_hat: Poly,
    pub g_hat: Poly,
    pub a: Poly,
}

impl LiftFamily {
    /// Degree `2d - k` of the family parameter; negative when the family is a
    /// single point.
    pub fn param_degree(&self) -> i64 {
        2 * self.d as i64 - self.k as i64
    }

    /// Affine dimension of the parameter space, `h(2d - k)`.
    pub fn dimension(&self) -> usize {
        self.param_basis.len()
    }

    pub fn base_member(&self) -> FamilyMember {
        FamilyMember {
            f_hat: self.f_tilde.clone(),
            g_hat: self.g_tilde.clone(),
            a: Poly::zero(self.f_tilde.ring()),
        }
    }

    /// Parameter with the given coordinates in `param_basis`.
    pub fn param(&self, coords: &[FieldElem]) -> Result<Poly> {
        if coords.len() != self.param_basis.len() {
            return Err(Error::DimensionMismatch {
                expected: self.param_basis.len(),
                got: coords.len(),
            });
        }
        let ring = self.f_tilde.ring();
        if coords.is_empty() {
            return Ok(Poly::zero(ring));
        }
        Ok(Poly::from_coeffs(ring, self.param_degree(), coords))
    }

    /// Random parameter drawn from `rng`.
    pub fn random_param(&self, rng: &mut Generator) -> Poly {
        let field = self.f_tilde.field();
        let coords: Vec<FieldElem> = (0..self.param_basis.len())
            .map(|_| rng.random_elem(field))
            .collect();
        self.param(&coords).expect("sized to basis")
    }
}

/// Completes the square: decomposes `g` in `I_Z^2` and returns the family of
/// lifts. `ci` must have degrees `(k - d, k)` with `k >= d >= 1`.
pub fn lift_branch(g: &Poly, ci: &CompleteIntersection) -> Result<LiftFamily> {
    let (a, k) = ci.degrees();
    if a >= k {
        return Err(Error::InvalidCompleteIntersection(format!(
            "need deg f_(k-d) < deg f_k, got ({a}, {k})"
        )));
    }
    let d = k - a;
    let dec = decompose_in_i2(g, ci)?;
    let (scalar, big_a, big_b) = dec.normalized()?;
    let f_tilde = ci.f_b() + &(&big_b * ci.f_a());
    let g_tilde = &big_a - &big_b.pow(2);
    if g_tilde.is_zero() {
        return Err(Error::ZeroBranch);
    }
    let param_basis = monomial_basis(ci.ring(), 2 * d as i64 - k as i64);
    Ok(LiftFamily {
        ci: ci.clone(),
        f_tilde,
        g_tilde,
        g_d: big_b,
        param_basis,
        source: g.clone(),
        scalar,
        k,
        d,
    })
}

/// The member with parameter `a`.
pub fn family_member(fam: &LiftFamily, a: &Poly) -> Result<FamilyMember> {
    if a.ring() != fam.f_tilde.ring() {
        return Err(Error::RingMismatch);
    }
    if let Some(deg) = a.degree() {
        if deg as i64 != fam.param_degree() {
            return Err(Error::DegreeMismatch {
                left: deg as i64,
                right: fam.param_degree(),
            });
        }
    }
    let fkd2 = fam.ci.f_a().pow(2);
    let afkd2 = a.checked_mul(&fkd2)?;
    let f_hat = fam.f_tilde.checked_sub(&afkd2)?;
    let two = fam.f_tilde.field().from_i64(2);
    let inner = fam.f_tilde.scale(&two).checked_sub(&afkd2)?;
    let g_hat = fam.g_tilde.checked_add(&a.checked_mul(&inner)?)?;
    Ok(FamilyMember {
        f_hat,
        g_hat,
        a: a.clone(),
    })
}

/// `scalar g == f^^2 + f_{k-d}^2 g^`. A true result also shows that
/// `V(g^)` is tangent to `W^b` along `V(g, f^)`, since `g = f^^2 mod g^`.
pub fn verify_lift(g: &Poly, ci: &CompleteIntersection, member: &FamilyMember, scalar: &FieldElem) -> bool {
    let rhs = member
        .f_hat
        .checked_mul(&member.f_hat)
        .and_then(|sq| sq.checked_add(&ci.f_a().pow(2).checked_mul(&member.g_hat)?));
    match rhs {
        Ok(rhs) => g.scale(scalar) == rhs,
        Err(_) => false,
    }
}

/// Whether `f` lies in the degree-`k` piece of `I_Z`.
pub fn contact_in_ideal(ci: &CompleteIntersection, member: &FamilyMember) -> Result<bool> {
    ci.contains(&member.f_hat)
}

/// Draws `samples` pairs of distinct parameters and checks that their branch
/// loci are never proportional. Vacuous for an empty parameter space.
pub fn family_injectivity_check(fam: &LiftFamily, samples: usize, seed: u64) -> Result<bool> {
    if fam.param_basis.is_empty() {
        return Ok(true);
    }
    let mut rng = Generator::new(GenConfig::with_seed(seed, fam.f_tilde.field()))?;
    let mut done = 0;
    while done < samples {
        let a = fam.random_param(&mut rng);
        let b = fam.random_param(&mut rng);
        if a == b {
            continue;
        }
        let ga = family_member(fam, &a)?.g_hat;
        let gb = family_member(fam, &b)?.g_hat;
        if ga.is_proportional_to(&gb) {
            return Ok(false);
        }
        done += 1;
    }
    Ok(true)
}

/// Outcome of searching the family for a given branch class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recovery {
    /// The member with contact form `f^ = f_k`.
    pub member: FamilyMember,
    /// Whether `g^` is proportional to the target branch equation.
    pub matches: bool,
}

/// Finds the member whose contact form is `f_k` itself, by solving the
/// linear system `a f_{k-d}^2 = f~ - f_k`, and compares its branch locus
/// with `g2d` projectively. `None` when no member has that contact form.
///
/// When `k > d` the contact form of any member proportional to `f_k` is
/// already `f_k`, since `f_{k-d}` does not divide `f_k`.
pub fn recover_branch(fam: &LiftFamily, g2d: &Poly) -> Result<Option<Recovery>> {
    let ring = fam.f_tilde.ring();
    if g2d.ring() != ring {
        return Err(Error::RingMismatch);
    }
    let field = ring.field();
    let k = fam.k as i64;
    let idx = basis_index(ring.weights(), k);
    let fkd2 = fam.ci.f_a().pow(2);
    let cols = shifted_columns(&fkd2, fam.param_degree(), &idx, field, None);
    let rhs = fam.f_tilde.checked_sub(fam.ci.f_b())?.coeffs_in_degree(k)?;
    let a = if cols.is_empty() {
        if rhs.iter().any(|c| !c.is_zero()) {
            return Ok(None);
        }
        Poly::zero(ring)
    } else {
        let mat = Matrix::from_columns(field, idx.len(), &cols);
        let Some(x) = linalg::solve(&mat, &rhs)? else {
            return Ok(None);
        };
        fam.param(&x)?
    };
    let member = family_member(fam, &a)?;
    let matches = member.g_hat.is_proportional_to(g2d);
    Ok(Some(Recovery { member, matches }))
}

/// Brings a family to another field (used to reduce rational data mod p).
pub fn change_field(fam: &LiftFamily, field: Field) -> Result<LiftFamily> {
    Ok(LiftFamily {
        ci: fam.ci.change_field(field)?,
        f_tilde: fam.f_tilde.change_field(field)?,
        g_tilde: fam.g_tilde.change_field(field)?,
        g_d: fam.g_d.change_field(field)?,
        param_basis: fam
            .param_basis
            .iter()
            .map(|p| p.change_field(field))
            .collect::<Result<_>>()?,
        source: fam.source.change_field(field)?,
        scalar: field.coerce(&fam.scalar)?,
        k: fam.k,
        d: fam.d,
    })
}
