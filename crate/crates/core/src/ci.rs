//! Complete intersections `Z = V(f_a, f_b)` and the graded pieces of the
//! square `I_Z^2 = (f_a^2, f_a f_b, f_b^2)`.
//!
//! For a complete intersection the square has the two-step resolution
//!
//! ```text
//! 0 -> R(-2a-b) + R(-a-2b) -> R(-2a) + R(-a-b) + R(-2b) -> I_Z^2 -> 0
//! ```
//!
//! so its Hilbert function is an alternating sum of binomials
//! ([`i2_dim_formula`]). [`i2_dim_oracle`] recomputes the same number by
//! brute-force rank, and [`decompose_in_i2`] writes a member `g` as
//! `A f_a^2 + 2 B f_a f_b + C f_b^2`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::{self, Matrix};
use crate::poly::{basis_index, exponents_of_degree, num_forms, Poly, RingCtx};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompleteIntersection {
    f_a: Poly,
    f_b: Poly,
    a: u32,
    b: u32,
}

impl CompleteIntersection {
    /// Validates the pair: same unit-weight ring, both nonzero, `a <= b`,
    /// and `f_a` does not divide `f_b` unless `f_a` is a constant (the
    /// `Z = ∅` convention).
    pub fn new(f_a: Poly, f_b: Poly) -> Result<CompleteIntersection> {
        if f_a.ring() != f_b.ring() {
            return Err(Error::RingMismatch);
        }
        if !f_a.ring().is_unit_weight() {
            return Err(Error::InvalidCompleteIntersection(
                "generators must live in a unit-weight ring".into(),
            ));
        }
        let (Some(a), Some(b)) = (f_a.degree(), f_b.degree()) else {
            return Err(Error::InvalidCompleteIntersection("zero generator".into()));
        };
        if a > b {
            return Err(Error::InvalidCompleteIntersection(format!(
                "generator degrees must satisfy a <= b, got ({a}, {b})"
            )));
        }
        if b == 0 {
            return Err(Error::InvalidCompleteIntersection(
                "both generators are constants".into(),
            ));
        }
        if a > 0 && divides(&f_a, &f_b)? {
            return Err(Error::InvalidCompleteIntersection(
                "f_a divides f_b".into(),
            ));
        }
        Ok(CompleteIntersection { f_a, f_b, a, b })
    }

    pub fn f_a(&self) -> &Poly {
        &self.f_a
    }

    pub fn f_b(&self) -> &Poly {
        &self.f_b
    }

    pub fn degrees(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        self.f_a.ring()
    }

    pub fn n(&self) -> usize {
        self.ring().n()
    }

    /// True when `f_a` is a nonzero constant, i.e. `Z` is empty.
    pub fn is_empty_locus(&self) -> bool {
        self.a == 0
    }

    /// Whether `f` lies in `I_Z = (f_a, f_b)`, by solving
    /// `f = alpha f_a + beta f_b` in the degree of `f`.
    pub fn contains(&self, f: &Poly) -> Result<bool> {
        let Some(m) = f.degree() else {
            return Ok(true);
        };
        let m = m as i64;
        let field = self.ring().field();
        let idx = basis_index(self.ring().weights(), m);
        let mut cols = shifted_columns(&self.f_a, m - self.a as i64, &idx, field, None);
        cols.extend(shifted_columns(&self.f_b, m - self.b as i64, &idx, field, None));
        let mat = Matrix::from_columns(field, idx.len(), &cols);
        Ok(linalg::solve(&mat, &f.coeffs_in_degree(m)?)?.is_some())
    }

    pub fn change_field(&self, field: Field) -> Result<CompleteIntersection> {
        CompleteIntersection::new(self.f_a.change_field(field)?, self.f_b.change_field(field)?)
    }
}

/// Whether `d` divides `f` (both homogeneous, `deg d <= deg f`).
fn divides(d: &Poly, f: &Poly) -> Result<bool> {
    let (Some(dd), Some(df)) = (d.degree(), f.degree()) else {
        return Ok(false);
    };
    if dd > df {
        return Ok(false);
    }
    let field = f.field();
    let idx = basis_index(f.ring().weights(), df as i64);
    let cols = shifted_columns(d, (df - dd) as i64, &idx, field, None);
    let mat = Matrix::from_columns(field, idx.len(), &cols);
    Ok(linalg::solve(&mat, &f.coeffs_in_degree(df as i64)?)?.is_some())
}

/// Coefficient columns of `scale * f * mu` for every monomial `mu` of degree
/// `shift`, written against the basis indexed by `idx`.
pub(crate) fn shifted_columns(
    f: &Poly,
    shift: i64,
    idx: &HashMap<Vec<u32>, usize>,
    field: Field,
    scale: Option<&FieldElem>,
) -> Vec<Vec<FieldElem>> {
    let terms: Vec<(Vec<u32>, FieldElem)> = f
        .terms()
        .map(|(e, c)| {
            let c = match scale {
                Some(s) => c * s,
                None => c.clone(),
            };
            (e.to_vec(), c)
        })
        .collect();
    exponents_of_degree(f.ring().weights(), shift)
        .into_iter()
        .map(|mu| {
            let mut col = vec![field.zero(); idx.len()];
            for (e, c) in &terms {
                let key: Vec<u32> = e.iter().zip(&mu).map(|(x, y)| x + y).collect();
                col[idx[&key]] = c.clone();
            }
            col
        })
        .collect()
}

/// `h(t) = binomial(n + t, n)`, zero for negative `t`.
pub fn h(n: usize, t: i64) -> i64 {
    num_forms(n, t) as i64
}

/// Dimension of the degree-`m` piece of `I_Z^2` for `Z` a complete
/// intersection of type `(a, b)` in `P^n`, read off the resolution.
pub fn i2_dim_formula(n: usize, a: u32, b: u32, m: i64) -> i64 {
    let (a, b) = (a as i64, b as i64);
    h(n, m - 2 * a) + h(n, m - a - b) + h(n, m - 2 * b) - h(n, m - 2 * a - b) - h(n, m - a - 2 * b)
}

/// The coefficient matrix of `(A, B, C) -> A f_a^2 + 2 B f_a f_b + C f_b^2`
/// in degree `m`, with unknown blocks ordered `A`, `B`, `C`.
pub fn decomposition_matrix(ci: &CompleteIntersection, m: i64) -> Matrix {
    let field = ci.ring().field();
    let idx = basis_index(ci.ring().weights(), m);
    let (a, b) = (ci.a as i64, ci.b as i64);
    let two = field.from_i64(2);
    let fa2 = ci.f_a.pow(2);
    let fab = &ci.f_a * &ci.f_b;
    let fb2 = ci.f_b.pow(2);
    let mut cols = shifted_columns(&fa2, m - 2 * a, &idx, field, None);
    cols.extend(shifted_columns(&fab, m - a - b, &idx, field, Some(&two)));
    cols.extend(shifted_columns(&fb2, m - 2 * b, &idx, field, None));
    Matrix::from_columns(field, idx.len(), &cols)
}

/// Brute-force dimension of `(I_Z^2)_m`: the rank of the products
/// `f_a^2 mu`, `f_a f_b mu`, `f_b^2 mu` in the monomial basis of degree `m`.
pub fn i2_dim_oracle(ci: &CompleteIntersection, m: i64) -> usize {
    linalg::rank(&decomposition_matrix(ci, m))
}

/// Number of unknown coefficients in the decomposition system of degree `m`.
pub fn decomposition_unknowns(ci: &CompleteIntersection, m: i64) -> usize {
    let n = ci.n();
    let (a, b) = (ci.a as i64, ci.b as i64);
    num_forms(n, m - 2 * a) + num_forms(n, m - a - b) + num_forms(n, m - 2 * b)
}

/// Nullity of the decomposition system in degree `m`.
pub fn decomposition_kernel_dim(ci: &CompleteIntersection, m: i64) -> usize {
    linalg::nullspace(&decomposition_matrix(ci, m)).len()
}

/// `g = A f_a^2 + 2 B f_a f_b + C f_b^2` with `deg g = 2b`, so `C` is a scalar.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct I2Decomposition {
    pub a_part: Poly,
    pub b_part: Poly,
    pub c: FieldElem,
    pub degree: u32,
}

impl I2Decomposition {
    pub fn reconstruct(&self, ci: &CompleteIntersection) -> Poly {
        let two = ci.ring().field().from_i64(2);
        let fa = ci.f_a();
        let fb = ci.f_b();
        let t1 = &self.a_part * &fa.pow(2);
        let t2 = (&(&self.b_part * fa) * fb).scale(&two);
        let t3 = fb.pow(2).scale(&self.c);
        &(&t1 + &t2) + &t3
    }

    /// Divides through by `C`: returns `(s, A/C, B/C)` with
    /// `s g = (A/C) f_a^2 + 2 (B/C) f_a f_b + f_b^2` and `s = 1/C`.
    pub fn normalized(&self) -> Result<(FieldElem, Poly, Poly)> {
        let s = self.c.inv().map_err(|_| Error::DegenerateDecomposition)?;
        Ok((s.clone(), self.a_part.scale(&s), self.b_part.scale(&s)))
    }
}

fn split_solution(
    ci: &CompleteIntersection,
    m: i64,
    x: &[FieldElem],
) -> (Poly, Poly, Vec<FieldElem>) {
    let ring = ci.ring();
    let (a, b) = (ci.a as i64, ci.b as i64);
    let na = num_forms(ci.n(), m - 2 * a);
    let nb = num_forms(ci.n(), m - a - b);
    let a_part = Poly::from_coeffs(ring, m - 2 * a, &x[..na]);
    let b_part = Poly::from_coeffs(ring, m - a - b, &x[na..na + nb]);
    (a_part, b_part, x[na + nb..].to_vec())
}

/// Writes `g` (of degree `2b`) as `A f_a^2 + 2 B f_a f_b + C f_b^2`.
///
/// The system is first solved with `C = 1` imposed; when `C` is pinned by
/// `g` to some other value the unconstrained system is solved instead.
/// `C = 0` is reported as [`Error::DegenerateDecomposition`].
pub fn decompose_in_i2(g: &Poly, ci: &CompleteIntersection) -> Result<I2Decomposition> {
    if g.ring() != ci.ring() {
        return Err(Error::RingMismatch);
    }
    let m = 2 * ci.b;
    match g.degree() {
        None => return Err(Error::DegenerateDecomposition),
        Some(d) if d != m => {
            return Err(Error::DegreeMismatch {
                left: d as i64,
                right: m as i64,
            })
        }
        _ => {}
    }
    let m = m as i64;
    let field = ci.ring().field();
    let full = decomposition_matrix(ci, m);
    let gc = g.coeffs_in_degree(m)?;

    // C = 1: drop the last column and move f_b^2 to the right-hand side.
    let c_col = full.cols() - 1;
    let reduced = Matrix::from_columns(
        field,
        full.rows(),
        &(0..c_col)
            .map(|j| (0..full.rows()).map(|i| full.get(i, j).clone()).collect())
            .collect::<Vec<_>>(),
    );
    let rhs: Vec<FieldElem> = gc
        .iter()
        .enumerate()
        .map(|(i, x)| x - full.get(i, c_col))
        .collect();
    if let Some(x) = linalg::solve(&reduced, &rhs)? {
        let (a_part, b_part, _) = split_solution(ci, m, &x);
        return Ok(I2Decomposition {
            a_part,
            b_part,
            c: field.one(),
            degree: m as u32,
        });
    }

    let x = linalg::solve(&full, &gc)?.ok_or(Error::NotInIdealSquare)?;
    let (a_part, b_part, c) = split_solution(ci, m, &x);
    let c = c.into_iter().next().expect("one scalar unknown");
    if c.is_zero() {
        return Err(Error::DegenerateDecomposition);
    }
    Ok(I2Decomposition {
        a_part,
        b_part,
        c,
        degree: m as u32,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(n: usize) -> Arc<RingCtx> {
        RingCtx::projective(n, Field::Rational).unwrap()
    }

    fn x(r: &Arc<RingCtx>, i: usize) -> Poly {
        Poly::var(r, i)
    }

    #[test]
    fn formula_examples() {
        assert_eq!(i2_dim_formula(2, 1, 4, 8), 33);
        assert_eq!(i2_dim_formula(2, 1, 2, 1), 0);
        // m = 2k, a = k - d, b = k: h(0) + h(d) + h(2d) - h(2d-k) - h(d-k)
        for (k, d) in [(4i64, 3i64), (6, 3), (2, 1), (5, 2)] {
            let expect = h(2, 0) + h(2, d) + h(2, 2 * d) - h(2, 2 * d - k) - h(2, d - k);
            assert_eq!(i2_dim_formula(2, (k - d) as u32, k as u32, 2 * k), expect);
        }
    }

    #[test]
    fn coordinate_ci_oracle() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 0), x(&r, 1)).unwrap();
        assert_eq!(i2_dim_oracle(&ci, 2), 3);
        assert_eq!(i2_dim_formula(2, 1, 1, 2), 3);
    }

    #[test]
    fn rejects_dividing_generators() {
        let r = ring(2);
        let err = CompleteIntersection::new(x(&r, 0), &x(&r, 0) * &x(&r, 1));
        assert!(matches!(err, Err(Error::InvalidCompleteIntersection(_))));
        let err = CompleteIntersection::new(x(&r, 0), x(&r, 0));
        assert!(err.is_err());
        let err = CompleteIntersection::new(x(&r, 0).pow(2), x(&r, 1));
        assert!(err.is_err());
    }

    #[test]
    fn worked_decomposition() {
        let r = ring(2);
        let (x0, x1, x2) = (x(&r, 0), x(&r, 1), x(&r, 2));
        let fb = &x1 * &x2;
        let ci = CompleteIntersection::new(x0.clone(), fb.clone()).unwrap();
        let quad = &(&x0.pow(2) + &x1.pow(2)) + &x2.pow(2);
        let g = &(&x0.pow(2) * &quad) + &fb.pow(2);
        let dec = decompose_in_i2(&g, &ci).unwrap();
        assert_eq!(dec.reconstruct(&ci), g);
        assert!(dec.c.is_one());
        // kernel in degree 4 is h(0) + h(-1) = 1: the solutions with C = 1
        // are (quad + 2t f_b, -t x0); the expansion gives t = 0
        assert_eq!(decomposition_kernel_dim(&ci, 4), 1);
        let t = -dec.b_part.coeff(&[1, 0, 0]);
        assert_eq!(dec.b_part, x0.scale(&-&t));
        assert_eq!(dec.a_part, &quad + &fb.scale(&(&t + &t)));
    }

    #[test]
    fn square_of_fb() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 0), &x(&r, 1) * &x(&r, 2)).unwrap();
        let g = ci.f_b().pow(2);
        let dec = decompose_in_i2(&g, &ci).unwrap();
        assert!(dec.a_part.is_zero() && dec.b_part.is_zero() && dec.c.is_one());
    }

    #[test]
    fn not_in_square() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 1), &x(&r, 2) * &x(&r, 0)).unwrap();
        let g = x(&r, 0).pow(4);
        assert_eq!(decompose_in_i2(&g, &ci), Err(Error::NotInIdealSquare));
        // the oracle agrees: adding g to the spanning set raises the rank
        let with_g = {
            let mut cols: Vec<Vec<FieldElem>> = Vec::new();
            let full = decomposition_matrix(&ci, 4);
            for j in 0..full.cols() {
                cols.push((0..full.rows()).map(|i| full.get(i, j).clone()).collect());
            }
            cols.push(g.coeffs_in_degree(4).unwrap());
            Matrix::from_columns(Field::Rational, full.rows(), &cols)
        };
        assert_eq!(linalg::rank(&with_g), i2_dim_oracle(&ci, 4) + 1);
    }

    #[test]
    fn degenerate_when_c_vanishes() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 0), &x(&r, 1) * &x(&r, 2)).unwrap();
        let g = &x(&r, 0).pow(2) * &x(&r, 1).pow(2);
        assert_eq!(decompose_in_i2(&g, &ci), Err(Error::DegenerateDecomposition));
    }

    #[test]
    fn scaled_c_is_recorded() {
        let r = ring(2);
        let q = Field::Rational;
        let ci = CompleteIntersection::new(x(&r, 0), &x(&r, 1) * &x(&r, 2)).unwrap();
        let g = &ci.f_b().pow(2).scale(&q.from_i64(3)) + &x(&r, 0).pow(4);
        let dec = decompose_in_i2(&g, &ci).unwrap();
        assert_eq!(dec.c, q.from_i64(3));
        assert_eq!(dec.reconstruct(&ci), g);
        let (s, _, _) = dec.normalized().unwrap();
        assert_eq!(s, q.parse("1/3").unwrap());
    }

    #[test]
    fn kernel_matches_syzygies_plane_example() {
        // n = 2, a = 1, b = 4, m = 8: 39 unknowns, image 33, kernel 6
        let r = RingCtx::projective(2, Field::Prime(101)).unwrap();
        let f = r.field();
        let fa = &x(&r, 0) + &x(&r, 1).scale(&f.from_i64(3));
        let fb = &(&x(&r, 1).pow(4) + &x(&r, 2).pow(4)) + &(&x(&r, 0).pow(2) * &x(&r, 2).pow(2));
        let ci = CompleteIntersection::new(fa, fb).unwrap();
        assert_eq!(decomposition_unknowns(&ci, 8), 39);
        assert_eq!(i2_dim_oracle(&ci, 8), 33);
        assert_eq!(decomposition_kernel_dim(&ci, 8), 6);
        assert_eq!(h(2, 2) + h(2, -1), 6);
    }

    #[test]
    fn low_degree_kernel_vanishes() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 0), x(&r, 1).pow(2)).unwrap();
        // m = 2a + b - 1 = 3: no syzygy lives this low
        assert_eq!(decomposition_kernel_dim(&ci, 3), 0);
    }

    #[test]
    fn ideal_membership() {
        let r = ring(2);
        let ci = CompleteIntersection::new(x(&r, 0), x(&r, 1).pow(2)).unwrap();
        assert!(ci.contains(&(&x(&r, 0) * &x(&r, 2))).unwrap());
        assert!(ci.contains(&x(&r, 1).pow(2)).unwrap());
        assert!(!ci.contains(&(&x(&r, 1) * &x(&r, 2))).unwrap());
    }
}
