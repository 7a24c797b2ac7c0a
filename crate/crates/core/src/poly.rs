//! Sparse homogeneous polynomials over a weighted graded ring.
//!
//! Every [`Poly`] is homogeneous: all of its terms share one weighted
//! degree, stored alongside the terms. The zero polynomial has no degree and
//! is compatible with every degree. Terms are kept in a `BTreeMap` under the
//! graded lexicographic order (`x0` largest), so two equal polynomials always
//! serialize to the same bytes.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};

/// Coordinate ring `k[x_0, ..., x_n]` with positive integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingCtx {
    weights: Vec<u32>,
    field: Field,
}

impl RingCtx {
    pub fn new(weights: Vec<u32>, field: Field) -> Result<Arc<RingCtx>> {
        if weights.len() < 2 {
            return Err(Error::InvalidRing("need at least two variables".into()));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        if let Field::Prime(p) = field {
            Field::prime(p)?;
        }
        Ok(Arc::new(RingCtx { weights, field }))
    }

    /// Homogeneous coordinate ring of `P^n`.
    pub fn projective(n: usize, field: Field) -> Result<Arc<RingCtx>> {
        RingCtx::new(vec![1; n + 1], field)
    }

    /// Coordinate ring of `P(1^{n+1}, d)`; the weight-`d` variable is last.
    pub fn weighted_double(n: usize, d: u32, field: Field) -> Result<Arc<RingCtx>> {
        let mut w = vec![1; n + 1];
        w.push(d);
        RingCtx::new(w, field)
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    /// Projective dimension for unit weights (`num_vars - 1`).
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_unit_weight(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn weighted_degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    pub fn with_field(&self, field: Field) -> Result<Arc<RingCtx>> {
        RingCtx::new(self.weights.clone(), field)
    }
}

/// Exponent vector. Ordered so that `BTreeMap` iteration runs from the
/// lexicographically largest monomial (`x0^m`) downwards.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other.0.cmp(&self.0)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: Arc<RingCtx>,
    terms: BTreeMap<Monomial, FieldElem>,
    degree: Option<u32>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.terms == other.terms
    }
}

impl Eq for Poly {}

/// All exponent vectors of weighted degree `m`, largest first.
pub fn exponents_of_degree(weights: &[u32], m: i64) -> Vec<Vec<u32>> {
    fn rec(weights: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if weights.len() == 1 {
            if left % weights[0] == 0 {
                prefix.push(left / weights[0]);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let w = weights[0];
        for e in (0..=left / w).rev() {
            prefix.push(e);
            rec(&weights[1..], left - e * w, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m < 0 {
        return out;
    }
    rec(weights, m as u32, &mut Vec::with_capacity(weights.len()), &mut out);
    out
}

/// Monomials of weighted degree `m` in canonical order; empty for `m < 0`.
pub fn monomial_basis(ring: &Arc<RingCtx>, m: i64) -> Vec<Poly> {
    exponents_of_degree(ring.weights(), m)
        .into_iter()
        .map(|e| Poly::monomial(ring, e, ring.field().one()))
        .collect()
}

/// Column index of each exponent in [`exponents_of_degree`] order.
pub fn basis_index(weights: &[u32], m: i64) -> HashMap<Vec<u32>, usize> {
    exponents_of_degree(weights, m)
        .into_iter()
        .enumerate()
        .map(|(i, e)| (e, i))
        .collect()
}

impl Poly {
    pub fn zero(ring: &Arc<RingCtx>) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
            degree: None,
        }
    }

    pub fn constant(ring: &Arc<RingCtx>, c: FieldElem) -> Poly {
        Poly::monomial(ring, vec![0; ring.num_vars()], c)
    }

    pub fn one(ring: &Arc<RingCtx>) -> Poly {
        Poly::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<RingCtx>, i: usize) -> Poly {
        let mut e = vec![0; ring.num_vars()];
        e[i] = 1;
        Poly::monomial(ring, e, ring.field().one())
    }

    pub fn monomial(ring: &Arc<RingCtx>, exps: Vec<u32>, c: FieldElem) -> Poly {
        assert_eq!(exps.len(), ring.num_vars(), "exponent vector length");
        assert_eq!(c.field(), ring.field(), "coefficient field");
        if c.is_zero() {
            return Poly::zero(ring);
        }
        let degree = Some(ring.weighted_degree(&exps));
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), c);
        Poly {
            ring: ring.clone(),
            terms,
            degree,
        }
    }

    /// Sums the given terms, merging repeated exponents. Fails if the nonzero
    /// result is not homogeneous.
    pub fn from_terms<I>(ring: &Arc<RingCtx>, terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElem)>,
    {
        let mut map: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != ring.num_vars() {
                return Err(Error::DimensionMismatch {
                    expected: ring.num_vars(),
                    got: e.len(),
                });
            }
            let c = ring.field().coerce(&c)?;
            let slot = map.entry(Monomial(e)).or_insert_with(|| ring.field().zero());
            *slot = &*slot + &c;
        }
        map.retain(|_, c| !c.is_zero());
        let mut degree = None;
        for m in map.keys() {
            let d = ring.weighted_degree(&m.0);
            match degree {
                None => degree = Some(d),
                Some(d0) if d0 != d => {
                    return Err(Error::DegreeMismatch {
                        left: d0 as i64,
                        right: d as i64,
                    })
                }
                _ => {}
            }
        }
        Ok(Poly {
            ring: ring.clone(),
            terms: map,
            degree,
        })
    }

    /// Linear combination `sum c_i * basis_i` of the degree-`m` monomials.
    pub fn from_coeffs(ring: &Arc<RingCtx>, m: i64, coeffs: &[FieldElem]) -> Poly {
        let exps = exponents_of_degree(ring.weights(), m);
        assert_eq!(exps.len(), coeffs.len(), "coefficient vector length");
        Poly::from_terms(ring, exps.into_iter().zip(coeffs.iter().cloned()))
            .expect("basis combination is homogeneous")
    }

    /// Coefficients against the degree-`m` monomial basis. The zero
    /// polynomial gives the zero vector; a nonzero polynomial of another
    /// degree is an error.
    pub fn coeffs_in_degree(&self, m: i64) -> Result<Vec<FieldElem>> {
        if let Some(d) = self.degree {
            if d as i64 != m {
                return Err(Error::DegreeMismatch {
                    left: d as i64,
                    right: m,
                });
            }
        }
        let idx = basis_index(self.ring.weights(), m);
        let mut out = vec![self.ring.field().zero(); idx.len()];
        for (e, c) in &self.terms {
            out[idx[&e.0]] = c.clone();
        }
        Ok(out)
    }

    pub fn ring(&self) -> &Arc<RingCtx> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &FieldElem)> {
        self.terms.iter().map(|(m, c)| (m.0.as_slice(), c))
    }

    pub fn coeff(&self, exps: &[u32]) -> FieldElem {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_else(|| self.field().zero())
    }

    /// Leading coefficient in the canonical order, if nonzero.
    pub fn leading_coeff(&self) -> Option<&FieldElem> {
        self.terms.values().next()
    }

    fn check_ring(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    fn check_degree(&self, other: &Poly) -> Result<()> {
        match (self.degree, other.degree) {
            (Some(a), Some(b)) if a != b => Err(Error::DegreeMismatch {
                left: a as i64,
                right: b as i64,
            }),
            _ => Ok(()),
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        self.check_degree(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.get_mut(m) {
                Some(slot) => {
                    *slot = &*slot + c;
                    if slot.is_zero() {
                        terms.remove(m);
                    }
                }
                None => {
                    terms.insert(m.clone(), c.clone());
                }
            }
        }
        let degree = if terms.is_empty() {
            None
        } else {
            self.degree.or(other.degree)
        };
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
            degree,
        })
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(&self.ring));
        }
        let mut terms: BTreeMap<Monomial, FieldElem> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e: Vec<u32> = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                let c = ca * cb;
                match terms.get_mut(&Monomial(e.clone())) {
                    Some(slot) => *slot = &*slot + &c,
                    None => {
                        terms.insert(Monomial(e), c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        let degree = if terms.is_empty() {
            None
        } else {
            Some(self.degree.unwrap() + other.degree.unwrap())
        };
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
            degree,
        })
    }

    pub fn scale(&self, c: &FieldElem) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
            degree: self.degree,
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[FieldElem]) -> Result<FieldElem> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::DimensionMismatch {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        let field = self.field();
        let point = point
            .iter()
            .map(|x| field.coerce(x))
            .collect::<Result<Vec<_>>>()?;
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `i`.
    pub fn derivative(&self, i: usize) -> Poly {
        let field = self.field();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let c = c * &field.from_i64(e as i64);
            if c.is_zero() {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            terms.insert(Monomial(exps), c);
        }
        let degree = if terms.is_empty() {
            None
        } else {
            Some(self.degree.unwrap() - self.ring.weights()[i])
        };
        Poly {
            ring: self.ring.clone(),
            terms,
            degree,
        }
    }

    pub fn jacobian(&self) -> Vec<Poly> {
        (0..self.ring.num_vars()).map(|i| self.derivative(i)).collect()
    }

    /// Same exponents, coefficients coerced into `field`.
    pub fn change_field(&self, field: Field) -> Result<Poly> {
        let ring = self.ring.with_field(field)?;
        Poly::from_terms(
            &ring,
            self.terms
                .iter()
                .map(|(m, c)| Ok((m.0.clone(), field.coerce(c)?)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    /// Views this polynomial in a ring whose leading variables (with equal
    /// weights) are this ring's variables; extra variables get exponent 0.
    pub fn embed(&self, target: &Arc<RingCtx>) -> Result<Poly> {
        let k = self.ring.num_vars();
        if target.num_vars() < k
            || target.weights()[..k] != *self.ring.weights()
            || target.field() != self.field()
        {
            return Err(Error::RingMismatch);
        }
        let pad = target.num_vars() - k;
        Ok(Poly {
            ring: target.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat(0).take(pad));
                    (Monomial(e), c.clone())
                })
                .collect(),
            degree: self.degree,
        })
    }

    /// Rescales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }

    /// `self == lambda * other` for some nonzero scalar `lambda`.
    pub fn is_proportional_to(&self, other: &Poly) -> bool {
        if self.ring != other.ring {
            return false;
        }
        match (self.is_zero(), other.is_zero()) {
            (true, true) => true,
            (false, false) => self.monic() == other.monic(),
            _ => false,
        }
    }

    pub fn to_json(&self) -> PolyJson {
        PolyJson {
            ring: RingJson::from_ctx(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermJson {
                    e: m.0.clone(),
                    c: CoeffJson::from_elem(c),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &PolyJson) -> Result<Poly> {
        let ring = j.ring.to_ctx()?;
        Poly::from_json_in(&ring, &j.terms)
    }

    fn from_json_in(ring: &Arc<RingCtx>, terms: &[TermJson]) -> Result<Poly> {
        let field = ring.field();
        let terms = terms
            .iter()
            .map(|t| Ok((t.e.clone(), t.c.to_elem(field)?)))
            .collect::<Result<Vec<_>>>()?;
        Poly::from_terms(ring, terms)
    }

    /// Canonical JSON text; equal polynomials give identical bytes.
    pub fn canonical_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("serializable")
    }

    pub fn parse_json(s: &str) -> Result<Poly> {
        let j: PolyJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Poly::from_json(&j)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: RingJson,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RingJson {
    pub vars: usize,
    pub weights: Vec<u32>,
    pub field: FieldJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Named(String),
    Prime { p: u64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermJson {
    pub e: Vec<u32>,
    pub c: CoeffJson,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffJson {
    Int(i64),
    Text(String),
}

impl RingJson {
    pub fn from_ctx(ring: &RingCtx) -> RingJson {
        RingJson {
            vars: ring.num_vars(),
            weights: ring.weights().to_vec(),
            field: match ring.field() {
                Field::Rational => FieldJson::Named("Q".into()),
                Field::Prime(p) => FieldJson::Prime { p },
            },
        }
    }

    pub fn to_ctx(&self) -> Result<Arc<RingCtx>> {
        if self.weights.len() != self.vars {
            return Err(Error::Parse(format!(
                "ring has {} variables but {} weights",
                self.vars,
                self.weights.len()
            )));
        }
        let field = match &self.field {
            FieldJson::Named(s) if s == "Q" => Field::Rational,
            FieldJson::Named(s) => return Err(Error::Parse(format!("unknown field {s:?}"))),
            FieldJson::Prime { p } => Field::prime(*p)?,
        };
        RingCtx::new(self.weights.clone(), field)
    }
}

impl CoeffJson {
    pub fn from_elem(c: &FieldElem) -> CoeffJson {
        match c {
            FieldElem::Modular { value, .. } => CoeffJson::Int(*value as i64),
            FieldElem::Rational(q) => {
                if q.denom() == &BigInt::from(1) {
                    if let Some(v) = q.numer().to_i64() {
                        return CoeffJson::Int(v);
                    }
                }
                CoeffJson::Text(c.to_string())
            }
        }
    }

    pub fn to_elem(&self, field: Field) -> Result<FieldElem> {
        match self {
            CoeffJson::Int(v) => Ok(field.from_i64(*v)),
            CoeffJson::Text(s) => field.parse(s),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{i}")
                    } else {
                        format!("x{i}^{e}")
                    }
                })
                .collect();
            let mut coeff = c.to_string();
            let negative = coeff.starts_with('-');
            if negative {
                coeff.remove(0);
            }
            if !first {
                write!(f, " {} ", if negative { "-" } else { "+" })?;
            } else if negative {
                write!(f, "-")?;
            }
            first = false;
            match (mono.is_empty(), coeff == "1") {
                (true, _) => write!(f, "{coeff}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{coeff}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    /// Panics on ring or degree mismatch; use [`Poly::checked_add`] otherwise.
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("poly addition")
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("poly subtraction")
    }
}

impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("poly multiplication")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            degree: self.degree,
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `binomial(n + m, n)` for `m >= 0`, else 0.
pub fn num_forms(n: usize, m: i64) -> usize {
    if m < 0 {
        return 0;
    }
    let mut acc = BigInt::from(1);
    for i in 1..=n as u64 {
        acc = acc * BigInt::from(m as u64 + i) / BigInt::from(i);
    }
    acc.to_usize().expect("binomial fits")
}
