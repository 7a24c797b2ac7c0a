//! Coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`FieldElem`] knows which field it belongs to, so arithmetic needs no
//! external context. Mixing elements of different fields is a programming
//! error and panics; the ring layer checks contexts before it gets here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest supported prime modulus. Residues are multiplied in `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldElem {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    /// Prime field, rejecting composites and moduli above [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Field> {
        if p > MAX_PRIME || !is_prime(p) {
            return Err(Error::BadPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> FieldElem {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldElem::Modular {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> FieldElem {
        match *self {
            Field::Rational => FieldElem::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                FieldElem::Modular {
                    value: r.to_u64().expect("residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// `num/den` in this field. Fails only when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElem> {
        let n = self.from_bigint(num);
        let d = self.from_bigint(den);
        Ok(n * d.inv()?)
    }

    /// Maps an element of any field into this one. Rationals reduce modulo
    /// `p`; residues only map into their own field.
    pub fn coerce(&self, x: &FieldElem) -> Result<FieldElem> {
        match (self, x) {
            (Field::Rational, FieldElem::Rational(_)) => Ok(x.clone()),
            (Field::Prime(p), FieldElem::Rational(q)) => self
                .from_ratio(q.numer(), q.denom())
                .map_err(|_| Error::BadPrime(*p)),
            (Field::Prime(p), FieldElem::Modular { modulus, .. }) if p == modulus => Ok(x.clone()),
            (Field::Prime(p), FieldElem::Modular { .. }) => Err(Error::BadPrime(*p)),
            (Field::Rational, FieldElem::Modular { .. }) => {
                Err(Error::InvalidArgument("cannot lift a residue to Q".into()))
            }
        }
    }

    /// Parses `"n"`, `"-n"` or `"n/d"`. Non-reduced fractions are reduced.
    pub fn parse(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad coefficient {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        self.from_ratio(&num, &den)
    }

    /// Number of elements for prime fields.
    pub fn order(&self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(*p),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `Fp:<p>`, `F_<p>` or a bare prime.
    fn from_str(s: &str) -> Result<Field> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("Fp:")
            .or_else(|| s.strip_prefix("F_"))
            .or_else(|| s.strip_prefix("GF"))
            .unwrap_or(s);
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = Error;

    fn try_from(s: String) -> Result<Field> {
        s.parse()
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

impl FieldElem {
    pub fn field(&self) -> Field {
        match self {
            FieldElem::Rational(_) => Field::Rational,
            FieldElem::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_zero(),
            FieldElem::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldElem::Rational(q) => q.is_one(),
            FieldElem::Modular { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            FieldElem::Rational(q) => FieldElem::Rational(q.recip()),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, exp: u32) -> FieldElem {
        match self {
            FieldElem::Rational(q) => FieldElem::Rational(num_traits::pow(q.clone(), exp as usize)),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: mod_pow(*value, exp as u64, *modulus),
                modulus: *modulus,
            },
        }
    }

    /// Residue value, for prime-field elements.
    pub fn residue(&self) -> Option<u64> {
        match self {
            FieldElem::Modular { value, .. } => Some(*value),
            FieldElem::Rational(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            FieldElem::Rational(q) => Some(q),
            FieldElem::Modular { .. } => None,
        }
    }

    /// Euler criterion / rational square test.
    pub fn is_square(&self) -> bool {
        match self {
            FieldElem::Rational(q) => {
                !q.is_negative() && is_square_int(q.numer()) && is_square_int(q.denom())
            }
            FieldElem::Modular { value, modulus } => {
                *value == 0 || *modulus == 2 || mod_pow(*value, (modulus - 1) / 2, *modulus) == 1
            }
        }
    }

    fn same_field(&self, other: &FieldElem) {
        assert_eq!(
            self.field(),
            other.field(),
            "field element arithmetic across fields"
        );
    }
}

fn is_square_int(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let r = n.sqrt();
    &(&r * &r) == n
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElem::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            FieldElem::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Add<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        self.same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a + b),
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: (a + b) % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Sub<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        self + &(-rhs)
    }
}

impl Mul<&FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        self.same_field(rhs);
        match (self, rhs) {
            (FieldElem::Rational(a), FieldElem::Rational(b)) => FieldElem::Rational(a * b),
            (FieldElem::Modular { value: a, modulus }, FieldElem::Modular { value: b, .. }) => {
                FieldElem::Modular {
                    value: a * b % modulus,
                    modulus: *modulus,
                }
            }
            _ => unreachable!(),
        }
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        match self {
            FieldElem::Rational(a) => FieldElem::Rational(-a),
            FieldElem::Modular { value, modulus } => FieldElem::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: FieldElem) -> FieldElem {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $m(self, rhs: &FieldElem) -> FieldElem {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}
