//! Seeded instance generation, finite-field point enumeration and the
//! smoothness sampler.
//!
//! Random polynomials are always drawn with integer coefficients and then
//! mapped into the working field. Over `Q` the integers are uniform in
//! `[-bound, bound]`; over `F_p` they are uniform in `[0, p)`. Keeping the
//! integer lift around lets the smoothness sampler reduce the very same
//! polynomial modulo a small prime and enumerate its points exhaustively.
//!
//! The PRNG is [`PRNG_NAME`], seeded with `seed_from_u64`. Identical configs
//! give identical outputs on every platform.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::ci::CompleteIntersection;
use crate::cover::{CoverDivisor, DoubleCover};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElem};
use crate::linalg::{self, Matrix};
use crate::poly::{exponents_of_degree, Poly, PolyJson, RingCtx};

pub const PRNG_NAME: &str = "ChaCha8Rng/rand_chacha-0.3/seed_from_u64";

/// Largest `|P^n(F_p)|` that [`enumerate_points`] will walk.
pub const MAX_ENUMERATION: u64 = 1_000_000;

/// Above this many points the smoothness sampler switches to random lines.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenConfig {
    pub seed: u64,
    pub field: Field,
    /// Coefficient range `[-bound, bound]` for rational generation.
    pub bound: u64,
    pub smooth_prime: u64,
    pub trials: usize,
    pub max_attempts: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            field: Field::Prime(101),
            bound: 9,
            smooth_prime: 13,
            trials: 64,
            max_attempts: 200,
        }
    }
}

impl GenConfig {
    pub fn with_seed(seed: u64, field: Field) -> GenConfig {
        GenConfig {
            seed,
            field,
            ..GenConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if self.bound < 1 {
            return Err(Error::InvalidArgument("coefficient bound must be >= 1".into()));
        }
        if self.smooth_prime < 3 {
            return Err(Error::BadPrime(self.smooth_prime));
        }
        Field::prime(self.smooth_prime)?;
        Ok(())
    }
}

/// Outcome of sampling points of a variety over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum SmoothnessVerdict {
    NoSingularPointFound { points_checked: usize, exhaustive: bool },
    SingularPointFound { point: Vec<u64> },
    NoRationalPointFound { exhaustive: bool },
}

impl SmoothnessVerdict {
    pub fn is_smooth_evidence(&self) -> bool {
        matches!(self, SmoothnessVerdict::NoSingularPointFound { .. })
    }

    pub fn is_singular(&self) -> bool {
        matches!(self, SmoothnessVerdict::SingularPointFound { .. })
    }
}

/// A polynomial reduced to `u64` residues for fast evaluation.
struct ModPoly {
    terms: Vec<(Vec<u32>, u64)>,
    max_exp: u32,
}

impl ModPoly {
    fn new(p: &Poly, field: Field) -> Result<ModPoly> {
        let terms = p
            .terms()
            .map(|(e, c)| Ok((e.to_vec(), field.coerce(c)?.residue().expect("prime"))))
            .collect::<Result<Vec<_>>>()?;
        let max_exp = terms
            .iter()
            .flat_map(|(e, _)| e.iter().copied())
            .max()
            .unwrap_or(0);
        Ok(ModPoly { terms, max_exp })
    }

    fn eval(&self, powers: &[Vec<u64>], q: u64) -> u64 {
        let mut acc = 0u64;
        for (e, c) in &self.terms {
            let mut t = *c;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    t = t * powers[i][k as usize] % q;
                }
            }
            acc = (acc + t) % q;
        }
        acc
    }
}

fn power_table(point: &[u64], max_exp: u32, q: u64) -> Vec<Vec<u64>> {
    point
        .iter()
        .map(|&x| {
            let mut row = Vec::with_capacity(max_exp as usize + 1);
            let mut acc = 1 % q;
            for _ in 0..=max_exp {
                row.push(acc);
                acc = acc * x % q;
            }
            row
        })
        .collect()
}

fn check_point_enumerable(ring: &RingCtx, prime: u64) -> Result<u64> {
    if !ring.is_unit_weight() {
        return Err(Error::InvalidArgument(
            "point enumeration needs a unit-weight ring".into(),
        ));
    }
    Field::prime(prime)?;
    let n = ring.n() as u32;
    let count = (0..=n).try_fold(0u64, |acc, i| {
        (prime as u128)
            .checked_pow(i)
            .and_then(|v| u64::try_from(v).ok())
            .and_then(|v| acc.checked_add(v))
    });
    count.ok_or_else(|| Error::CapExceeded("projective space too large".into()))
}

/// Number of points of `P^n(F_p)`.
pub fn projective_point_count(n: usize, p: u64) -> u64 {
    (0..=n as u32).map(|i| p.pow(i)).sum()
}

fn for_each_projective_point(n: usize, p: u64, mut f: impl FnMut(&[u64]) -> bool) {
    let mut pt = vec![0u64; n + 1];
    for lead in 0..=n {
        for v in pt.iter_mut() {
            *v = 0;
        }
        pt[lead] = 1;
        let free = n - lead;
        let total = p.pow(free as u32);
        for idx in 0..total {
            let mut r = idx;
            for j in (lead + 1..=n).rev() {
                pt[j] = r % p;
                r /= p;
            }
            if !f(&pt) {
                return;
            }
        }
    }
}

/// All points of `P^n(F_p)` where every polynomial vanishes, as residues
/// with first nonzero coordinate 1.
pub fn enumerate_points(polys: &[Poly], ring: &Arc<RingCtx>, prime: u64) -> Result<Vec<Vec<u64>>> {
    let count = check_point_enumerable(ring, prime)?;
    if count > MAX_ENUMERATION {
        return Err(Error::CapExceeded(format!(
            "|P^{}(F_{prime})| = {count} exceeds {MAX_ENUMERATION}",
            ring.n()
        )));
    }
    let field = Field::Prime(prime);
    let mods = polys
        .iter()
        .map(|p| ModPoly::new(p, field))
        .collect::<Result<Vec<_>>>()?;
    let max_exp = mods.iter().map(|m| m.max_exp).max().unwrap_or(0);
    let mut out = Vec::new();
    for_each_projective_point(ring.n(), prime, |pt| {
        let pw = power_table(pt, max_exp, prime);
        if mods.iter().all(|m| m.eval(&pw, prime) == 0) {
            out.push(pt.to_vec());
        }
        true
    });
    Ok(out)
}

/// Rank of the Jacobian of `polys` at `pt`, over `F_prime`.
fn jacobian_rank(jac: &[Vec<ModPoly>], pt: &[u64], prime: u64, max_exp: u32) -> usize {
    let pw = power_table(pt, max_exp, prime);
    let field = Field::Prime(prime);
    let rows = jac.len();
    let cols = pt.len();
    let entries = jac
        .iter()
        .flat_map(|row| {
            row.iter().map(|d| FieldElem::Modular {
                value: d.eval(&pw, prime),
                modulus: prime,
            })
        })
        .collect();
    linalg::rank(&Matrix::from_entries(field, rows, cols, entries))
}

/// Looks for singular points of `V(polys)` over `F_prime`.
///
/// A point is singular when the Jacobian of the system has rank below the
/// number of equations there. Small spaces are enumerated exhaustively; large
/// ones are probed along `trials` random lines, restricting the first
/// equation to each line and testing every parameter value. The verdict is
/// evidence only.
pub fn smoothness_sample_system(
    polys: &[Poly],
    prime: u64,
    trials: usize,
    seed: u64,
) -> Result<SmoothnessVerdict> {
    let Some(first) = polys.first() else {
        return Err(Error::InvalidArgument("empty system".into()));
    };
    if polys.iter().any(Poly::is_zero) {
        return Err(Error::InvalidArgument("zero polynomial".into()));
    }
    let ring = first.ring().clone();
    let count = check_point_enumerable(&ring, prime)?;
    let field = Field::Prime(prime);
    let jac = polys
        .iter()
        .map(|p| {
            p.jacobian()
                .iter()
                .map(|d| ModPoly::new(d, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mods = polys
        .iter()
        .map(|p| ModPoly::new(p, field))
        .collect::<Result<Vec<_>>>()?;
    let max_exp = mods.iter().map(|m| m.max_exp).max().unwrap_or(0);
    let need = polys.len();

    let mut checked = 0usize;
    let mut singular = None;
    let mut visit = |pt: &[u64]| -> bool {
        let pw = power_table(pt, max_exp, prime);
        if mods.iter().all(|m| m.eval(&pw, prime) == 0) {
            checked += 1;
            if jacobian_rank(&jac, pt, prime, max_exp) < need {
                singular = Some(pt.to_vec());
                return false;
            }
        }
        true
    };

    let exhaustive = count <= EXHAUSTIVE_LIMIT;
    if exhaustive {
        for_each_projective_point(ring.n(), prime, &mut visit);
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lead = &mods[0];
        let deg = first.degree().unwrap_or(0) as u64;
        'lines: for _ in 0..trials {
            let p0: Vec<u64> = (0..=ring.n()).map(|_| rng.gen_range(0..prime)).collect();
            let p1: Vec<u64> = (0..=ring.n()).map(|_| rng.gen_range(0..prime)).collect();
            // restriction of the first equation to t -> p0 + t p1, by
            // interpolation through deg + 1 parameter values
            let samples: Vec<u64> = (0..=deg)
                .map(|t| {
                    let pt: Vec<u64> = p0.iter().zip(&p1).map(|(a, b)| (a + t * b) % prime).collect();
                    lead.eval(&power_table(&pt, max_exp, prime), prime)
                })
                .collect();
            let uni = interpolate(&samples, prime);
            let roots: Box<dyn Iterator<Item = u64>> = if prime <= 1 << 17 {
                Box::new(0..prime)
            } else {
                let ts: Vec<u64> = (0..4096).map(|_| rng.gen_range(0..prime)).collect();
                Box::new(ts.into_iter())
            };
            for t in roots {
                if horner(&uni, t, prime) != 0 {
                    continue;
                }
                let pt: Vec<u64> = p0.iter().zip(&p1).map(|(a, b)| (a + t * b) % prime).collect();
                if pt.iter().all(|&v| v == 0) {
                    continue;
                }
                if !visit(&normalize(&pt, prime)) {
                    break 'lines;
                }
            }
            if p1.iter().any(|&v| v != 0) && !visit(&normalize(&p1, prime)) {
                break;
            }
        }
    }
    Ok(match singular {
        Some(point) => SmoothnessVerdict::SingularPointFound { point },
        None if checked == 0 => SmoothnessVerdict::NoRationalPointFound { exhaustive },
        None => SmoothnessVerdict::NoSingularPointFound {
            points_checked: checked,
            exhaustive,
        },
    })
}

/// Single-equation form of [`smoothness_sample_system`].
pub fn smoothness_sample(p: &Poly, prime: u64, trials: usize, seed: u64) -> Result<SmoothnessVerdict> {
    smoothness_sample_system(std::slice::from_ref(p), prime, trials, seed)
}

fn normalize(pt: &[u64], p: u64) -> Vec<u64> {
    let lead = *pt.iter().find(|&&v| v != 0).expect("nonzero point");
    let inv = FieldElem::Modular { value: lead, modulus: p }
        .inv()
        .unwrap()
        .residue()
        .unwrap();
    pt.iter().map(|v| v * inv % p).collect()
}

fn horner(coeffs: &[u64], t: u64, p: u64) -> u64 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * t + c) % p)
}

/// Coefficients (low to high) of the polynomial through `(i, values[i])`.
fn interpolate(values: &[u64], p: u64) -> Vec<u64> {
    let n = values.len();
    let field = Field::Prime(p);
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n as u64 {
        let mut acc = 1 % p;
        for _ in 0..n {
            rows.push(FieldElem::Modular { value: acc, modulus: p });
            acc = acc * i % p;
        }
    }
    let m = Matrix::from_entries(field, n, n, rows);
    let b: Vec<FieldElem> = values
        .iter()
        .map(|&v| FieldElem::Modular { value: v, modulus: p })
        .collect();
    linalg::solve(&m, &b)
        .expect("square system")
        .expect("Vandermonde is invertible")
        .into_iter()
        .map(|x| x.residue().unwrap())
        .collect()
}

/// Stateful generator; every draw advances one seeded stream.
pub struct Generator {
    cfg: GenConfig,
    rng: ChaCha8Rng,
}

/// A generated complete intersection with its integer-coefficient lift.
#[derive(Clone, Debug)]
pub struct SampledCi {
    pub ci: CompleteIntersection,
    pub lift: CompleteIntersection,
    pub verdict: SmoothnessVerdict,
    pub attempts: usize,
}

/// A generated cover and divisor, with sampled verdicts.
#[derive(Clone, Debug)]
pub struct SampledCover {
    pub cover: DoubleCover,
    pub divisor: CoverDivisor,
    pub branch_verdict: SmoothnessVerdict,
    pub locus_verdict: Option<SmoothnessVerdict>,
}

impl Generator {
    pub fn new(cfg: GenConfig) -> Result<Generator> {
        cfg.validate()?;
        let rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        Ok(Generator { cfg, rng })
    }

    pub fn config(&self) -> &GenConfig {
        &self.cfg
    }

    fn draw_integer(&mut self) -> i64 {
        match self.cfg.field {
            Field::Rational => {
                let b = self.cfg.bound as i64;
                self.rng.gen_range(-b..=b)
            }
            Field::Prime(p) => self.rng.gen_range(0..p) as i64,
        }
    }

    /// Dense random form of the given degree with integer coefficients,
    /// living in `Q[x_0..x_n]`. Degree 0 gives a nonzero constant.
    pub fn random_integer_poly(&mut self, n: usize, degree: u32) -> Poly {
        let ring = RingCtx::projective(n, Field::Rational).expect("valid ring");
        self.random_integer_poly_in(&ring, degree)
    }

    fn random_integer_poly_in(&mut self, ring: &Arc<RingCtx>, degree: u32) -> Poly {
        loop {
            let terms: Vec<(Vec<u32>, FieldElem)> = exponents_of_degree(ring.weights(), degree as i64)
                .into_iter()
                .map(|e| {
                    let c = self.draw_integer();
                    (e, Field::Rational.from_bigint(&BigInt::from(c)))
                })
                .collect();
            let p = Poly::from_terms(ring, terms).expect("homogeneous");
            let nonzero_mod = match self.cfg.field {
                Field::Prime(_) => !p.change_field(self.cfg.field).map(|q| q.is_zero()).unwrap_or(true),
                Field::Rational => !p.is_zero(),
            };
            if nonzero_mod {
                return p;
            }
        }
    }

    /// Random form in `ring` (any weights), coefficients in the configured
    /// field.
    pub fn random_poly(&mut self, ring: &Arc<RingCtx>, degree: u32) -> Result<Poly> {
        let q_ring = ring.with_field(Field::Rational)?;
        self.random_integer_poly_in(&q_ring, degree)
            .change_field(ring.field())
    }

    /// Draws `(f_a, f_b)` of degrees `(a, b)` until the pair is a complete
    /// intersection whose reduction modulo the smoothness prime shows a
    /// rank-2 Jacobian at every rational point of `Z`. With `a = 0` the first
    /// generator is the constant 1 and no smoothness check applies; on `P^1`
    /// a complete intersection is empty and the sampled verdict is only
    /// reported.
    pub fn random_smooth_ci(&mut self, n: usize, a: u32, b: u32) -> Result<SampledCi> {
        if a > b || b == 0 {
            return Err(Error::InvalidArgument(format!("need a <= b and b >= 1, got ({a}, {b})")));
        }
        let q_ring = RingCtx::projective(n, Field::Rational)?;
        for attempt in 1..=self.cfg.max_attempts {
            let fa = if a == 0 {
                Poly::one(&q_ring)
            } else {
                self.random_integer_poly(n, a)
            };
            let fb = self.random_integer_poly(n, b);
            let Ok(lift) = CompleteIntersection::new(fa.clone(), fb.clone()) else {
                continue;
            };
            let verdict = if a == 0 {
                SmoothnessVerdict::NoRationalPointFound { exhaustive: true }
            } else {
                let seed = self.rng.gen();
                smoothness_sample_system(&[fa.clone(), fb.clone()], self.cfg.smooth_prime, self.cfg.trials, seed)?
            };
            if a > 0 && n >= 2 && !verdict.is_smooth_evidence() {
                continue;
            }
            let Ok(ci) = lift.change_field(self.cfg.field) else {
                continue;
            };
            return Ok(SampledCi {
                ci,
                lift,
                verdict,
                attempts: attempt,
            });
        }
        Err(Error::RetryCapExceeded {
            attempts: self.cfg.max_attempts,
        })
    }

    /// Random double cover `y^2 = g_{2d}` of `P^n` and a divisor in `|kL|`
    /// whose double locus `(f_{k-d}, f_k)` is smooth-sampled. Branch loci with
    /// a sampled singular point are redrawn.
    pub fn random_cover_divisor(&mut self, n: usize, d: u32, k: u32) -> Result<SampledCover> {
        if d == 0 || k < d {
            return Err(Error::InvalidArgument(format!("need k >= d >= 1, got k={k}, d={d}")));
        }
        let mut branch = None;
        for _ in 0..self.cfg.max_attempts {
            let g = self.random_integer_poly(n, 2 * d);
            let seed = self.rng.gen();
            let v = smoothness_sample(&g, self.cfg.smooth_prime, self.cfg.trials, seed)?;
            if !v.is_singular() {
                branch = Some((g, v));
                break;
            }
        }
        let (g2d, branch_verdict) = branch.ok_or(Error::RetryCapExceeded {
            attempts: self.cfg.max_attempts,
        })?;
        let sampled = self.random_smooth_ci(n, k - d, k)?;
        let cover = DoubleCover::new(n, d, g2d.change_field(self.cfg.field)?)?;
        let divisor = CoverDivisor::new(
            &cover,
            sampled.ci.f_b().clone(),
            sampled.ci.f_a().clone(),
        )?;
        Ok(SampledCover {
            cover,
            divisor,
            branch_verdict,
            locus_verdict: (k > d).then_some(sampled.verdict),
        })
    }

    /// Uniform random field element (for family parameters).
    pub fn random_elem(&mut self, field: Field) -> FieldElem {
        match field {
            Field::Prime(p) => FieldElem::Modular {
                value: self.rng.gen_range(0..p),
                modulus: p,
            },
            Field::Rational => {
                let b = self.cfg.bound as i64;
                field.from_i64(self.rng.gen_range(-b..=b))
            }
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}

/// Seeded random form, reproducible from `cfg.seed`.
pub fn random_poly(ring: &Arc<RingCtx>, degree: u32, cfg: &GenConfig) -> Result<Poly> {
    Generator::new(cfg.clone())?.random_poly(ring, degree)
}

/// Seeded smooth-sampled complete intersection of type `(a, b)` in `P^n`.
pub fn random_smooth_ci(n: usize, a: u32, b: u32, cfg: &GenConfig) -> Result<CompleteIntersection> {
    Ok(Generator::new(cfg.clone())?.random_smooth_ci(n, a, b)?.ci)
}

/// Named example data, serialized as a manifest plus role-keyed polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Bundle {
    pub name: String,
    pub n: usize,
    pub d: Option<u32>,
    pub k: Option<u32>,
    pub description: String,
    pub polys: Vec<(String, Poly)>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleManifest {
    pub name: String,
    pub n: usize,
    #[serde(default)]
    pub d: Option<u32>,
    #[serde(default)]
    pub k: Option<u32>,
    #[serde(default)]
    pub description: String,
    pub roles: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BundleJson {
    pub manifest: BundleManifest,
    pub polys: std::collections::BTreeMap<String, PolyJson>,
}

impl Bundle {
    pub fn get(&self, role: &str) -> Option<&Poly> {
        self.polys.iter().find(|(r, _)| r == role).map(|(_, p)| p)
    }

    pub fn to_json(&self) -> BundleJson {
        BundleJson {
            manifest: BundleManifest {
                name: self.name.clone(),
                n: self.n,
                d: self.d,
                k: self.k,
                description: self.description.clone(),
                roles: self.polys.iter().map(|(r, _)| r.clone()).collect(),
            },
            polys: self
                .polys
                .iter()
                .map(|(r, p)| (r.clone(), p.to_json()))
                .collect(),
        }
    }

    pub fn from_json(j: &BundleJson) -> Result<Bundle> {
        let polys = j
            .manifest
            .roles
            .iter()
            .map(|r| {
                let pj = j
                    .polys
                    .get(r)
                    .ok_or_else(|| Error::Parse(format!("manifest role {r:?} has no polynomial")))?;
                Ok((r.clone(), Poly::from_json(pj)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Bundle {
            name: j.manifest.name.clone(),
            n: j.manifest.n,
            d: j.manifest.d,
            k: j.manifest.k,
            description: j.manifest.description.clone(),
            polys,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("serializable")
    }

    pub fn parse(s: &str) -> Result<Bundle> {
        let j: BundleJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Bundle::from_json(&j)
    }

    /// Re-expresses every polynomial over `field`.
    pub fn change_field(&self, field: Field) -> Result<Bundle> {
        Ok(Bundle {
            polys: self
                .polys
                .iter()
                .map(|(r, p)| Ok((r.clone(), p.change_field(field)?)))
                .collect::<Result<Vec<_>>>()?,
            ..self.clone()
        })
    }
}

pub const CANNED_NAMES: [&str; 6] = [
    "quadric-surface",
    "del-pezzo-2",
    "sextic-double-plane",
    "quartic-double-solid",
    "totaro-k4",
    "totaro-k5",
];

/// Builds a polynomial from `(coefficient, exponents)` pairs over `Q`.
fn q_poly(ring: &Arc<RingCtx>, terms: &[(i64, &[u32])]) -> Poly {
    Poly::from_terms(
        ring,
        terms
            .iter()
            .map(|(c, e)| (e.to_vec(), Field::Rational.from_i64(*c))),
    )
    .expect("canned data is homogeneous")
}

fn cover_bundle(name: &str, description: &str, n: usize, d: u32, k: u32, g2d: Poly, fk: Poly, fkd: Poly) -> Bundle {
    let cover = DoubleCover::new(n, d, g2d.clone()).expect("canned cover");
    let w = CoverDivisor::new(&cover, fk.clone(), fkd.clone()).expect("canned divisor");
    let (g, _) = crate::cover::divisor_image(&w).expect("canned image");
    Bundle {
        name: name.into(),
        n,
        d: Some(d),
        k: Some(k),
        description: description.into(),
        polys: vec![
            ("g2d".into(), g2d),
            ("fk".into(), fk),
            ("fkd".into(), fkd),
            ("g".into(), g),
        ],
    }
}

/// Fixed example data over `Q`.
///
/// * `quadric-surface`: conic branch `x0^2+x1^2+x2^2`, `W = V(y x2 - x0 x1)`
///   (`n=2, d=1, k=2`).
/// * `del-pezzo-2`: Fermat quartic branch, `k = 3` (`n=2, d=2`).
/// * `sextic-double-plane`: Fermat sextic branch, `k = 6` (`n=2, d=3`).
/// * `quartic-double-solid`: Fermat quartic surface branch in `P^3`,
///   `k = d = 2`, `f_{k-d} = 1`.
/// * `totaro-k4`, `totaro-k5`: the two weighted sextic hypersurfaces, in
///   variable order `x0 x1 x2 y z0 ...`.
pub fn canned(name: &str) -> Result<Bundle> {
    let q2 = RingCtx::projective(2, Field::Rational)?;
    let q3 = RingCtx::projective(3, Field::Rational)?;
    Ok(match name {
        "quadric-surface" => cover_bundle(
            name,
            "quadric surface as a double plane branched over a conic; W cut by y*x2 - x0*x1",
            2,
            1,
            2,
            q_poly(&q2, &[(1, &[2, 0, 0]), (1, &[0, 2, 0]), (1, &[0, 0, 2])]),
            q_poly(&q2, &[(1, &[1, 1, 0])]),
            q_poly(&q2, &[(1, &[0, 0, 1])]),
        ),
        "del-pezzo-2" => cover_bundle(
            name,
            "degree 2 del Pezzo surface: double plane branched over the Fermat quartic; k = 3",
            2,
            2,
            3,
            q_poly(&q2, &[(1, &[4, 0, 0]), (1, &[0, 4, 0]), (1, &[0, 0, 4])]),
            q_poly(&q2, &[(1, &[2, 1, 0]), (1, &[0, 2, 1]), (1, &[1, 0, 2])]),
            q_poly(&q2, &[(1, &[1, 0, 0]), (2, &[0, 1, 0]), (3, &[0, 0, 1])]),
        ),
        "sextic-double-plane" => cover_bundle(
            name,
            "genus 2 K3 surface: double plane branched over the Fermat sextic; k = 6",
            2,
            3,
            6,
            q_poly(&q2, &[(1, &[6, 0, 0]), (1, &[0, 6, 0]), (1, &[0, 0, 6])]),
            q_poly(
                &q2,
                &[(1, &[6, 0, 0]), (1, &[0, 6, 0]), (1, &[0, 0, 6]), (3, &[2, 2, 2]), (1, &[4, 1, 1])],
            ),
            q_poly(
                &q2,
                &[(1, &[3, 0, 0]), (2, &[0, 3, 0]), (3, &[0, 0, 3]), (1, &[1, 1, 1])],
            ),
        ),
        "quartic-double-solid" => cover_bundle(
            name,
            "quartic double solid branched over the Fermat quartic surface; k = d = 2, Z empty",
            3,
            2,
            2,
            q_poly(
                &q3,
                &[(1, &[4, 0, 0, 0]), (1, &[0, 4, 0, 0]), (1, &[0, 0, 4, 0]), (1, &[0, 0, 0, 4])],
            ),
            q_poly(&q3, &[(1, &[1, 1, 0, 0]), (1, &[0, 0, 1, 1]), (1, &[2, 0, 0, 0])]),
            q_poly(&q3, &[(1, &[0, 0, 0, 0])]),
        ),
        "totaro-k4" => {
            let ring = RingCtx::new(vec![1, 1, 1, 3, 4, 4, 4, 4, 4, 4], Field::Rational)?;
            let e = |x: [u32; 3], z: usize, y: u32| {
                let mut v = vec![x[0], x[1], x[2], y, 0, 0, 0, 0, 0, 0];
                if z < 6 {
                    v[4 + z] = 1;
                }
                v
            };
            let terms = vec![
                e([0, 0, 0], 6, 2),
                e([2, 0, 0], 0, 0),
                e([1, 1, 0], 1, 0),
                e([1, 0, 1], 2, 0),
                e([0, 2, 0], 3, 0),
                e([0, 1, 1], 4, 0),
                e([0, 0, 2], 5, 0),
            ];
            Bundle {
                name: name.into(),
                n: 9,
                d: None,
                k: Some(4),
                description: "sextic in P(1^3, 3, 4^6): y^2 + sum of x_i x_j z_ij".into(),
                polys: vec![(
                    "totaro".into(),
                    Poly::from_terms(&ring, terms.into_iter().map(|e| (e, Field::Rational.one())))?,
                )],
            }
        }
        "totaro-k5" => {
            let ring = RingCtx::new(vec![1, 1, 1, 3, 5, 5, 5], Field::Rational)?;
            let terms = vec![
                vec![0, 0, 0, 2, 0, 0, 0],
                vec![1, 0, 0, 0, 1, 0, 0],
                vec![0, 1, 0, 0, 0, 1, 0],
                vec![0, 0, 1, 0, 0, 0, 1],
            ];
            Bundle {
                name: name.into(),
                n: 6,
                d: None,
                k: Some(5),
                description: "sextic in P(1^3, 3, 5^3): y^2 + x0 z0 + x1 z1 + x2 z2".into(),
                polys: vec![(
                    "totaro".into(),
                    Poly::from_terms(&ring, terms.into_iter().map(|e| (e, Field::Rational.one())))?,
                )],
            }
        }
        other => return Err(Error::UnknownBundle(other.into())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_poly() {
        let r = RingCtx::projective(2, Field::Prime(101)).unwrap();
        let cfg = GenConfig::with_seed(7, Field::Prime(101));
        assert_eq!(random_poly(&r, 3, &cfg).unwrap(), random_poly(&r, 3, &cfg).unwrap());
        let other = GenConfig::with_seed(8, Field::Prime(101));
        assert_ne!(random_poly(&r, 3, &cfg).unwrap(), random_poly(&r, 3, &other).unwrap());
    }

    #[test]
    fn degree_zero_is_nonzero_constant() {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        for seed in 0..50 {
            let p = random_poly(&r, 0, &GenConfig::with_seed(seed, Field::Rational)).unwrap();
            assert_eq!(p.degree(), Some(0));
        }
    }

    #[test]
    fn quadratic_term_count() {
        let r = RingCtx::projective(2, Field::Prime(101)).unwrap();
        let p = random_poly(&r, 2, &GenConfig::default()).unwrap();
        assert!(p.num_terms() <= 6);
    }

    #[test]
    fn line_points() {
        let r = RingCtx::projective(2, Field::Prime(3)).unwrap();
        let x0 = Poly::var(&r, 0);
        assert_eq!(enumerate_points(&[x0.clone()], &r, 3).unwrap().len(), 4);
        let both = enumerate_points(&[x0, Poly::var(&r, 1)], &r, 3).unwrap();
        assert_eq!(both, vec![vec![0, 0, 1]]);
        assert!(enumerate_points(&[Poly::one(&r)], &r, 3).unwrap().is_empty());
    }

    #[test]
    fn empty_system_gives_all_points() {
        for (n, p) in [(2usize, 5u64), (3, 3), (1, 7)] {
            let r = RingCtx::projective(n, Field::Prime(p)).unwrap();
            let pts = enumerate_points(&[], &r, p).unwrap();
            assert_eq!(pts.len() as u64, (p.pow(n as u32 + 1) - 1) / (p - 1));
        }
    }

    #[test]
    fn enumeration_cap() {
        let r = RingCtx::projective(4, Field::Prime(101)).unwrap();
        assert!(matches!(enumerate_points(&[], &r, 101), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn smooth_conic() {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        let c = &(&Poly::var(&r, 0).pow(2) + &Poly::var(&r, 1).pow(2)) + &Poly::var(&r, 2).pow(2);
        let v = smoothness_sample(&c, 5, 10, 0).unwrap();
        assert_eq!(
            v,
            SmoothnessVerdict::NoSingularPointFound {
                points_checked: 6,
                exhaustive: true
            }
        );
    }

    #[test]
    fn node_of_two_lines() {
        let r = RingCtx::projective(2, Field::Prime(5)).unwrap();
        let p = &Poly::var(&r, 0) * &Poly::var(&r, 1);
        assert_eq!(
            smoothness_sample(&p, 5, 10, 0).unwrap(),
            SmoothnessVerdict::SingularPointFound { point: vec![0, 0, 1] }
        );
    }

    #[test]
    fn pointless_conic() {
        // -1 is not a square mod 3, so x0^2 + x1^2 has no zeros on P^1(F_3)
        let r = RingCtx::projective(1, Field::Prime(3)).unwrap();
        let p = &Poly::var(&r, 0).pow(2) + &Poly::var(&r, 1).pow(2);
        assert_eq!(
            smoothness_sample(&p, 3, 10, 0).unwrap(),
            SmoothnessVerdict::NoRationalPointFound { exhaustive: true }
        );
    }

    #[test]
    fn bad_prime() {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        assert_eq!(
            smoothness_sample(&Poly::var(&r, 0), 9, 1, 0),
            Err(Error::BadPrime(9))
        );
        let half = Poly::var(&r, 0).scale(&Field::Rational.parse("1/3").unwrap());
        assert_eq!(smoothness_sample(&half, 3, 1, 0), Err(Error::BadPrime(3)));
    }

    #[test]
    fn random_line_sampling_mode() {
        // P^2(F_1009) has over a million points: the sampler goes random
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        let c = &(&Poly::var(&r, 0).pow(2) + &Poly::var(&r, 1).pow(2)) - &Poly::var(&r, 2).pow(2);
        match smoothness_sample(&c, 1009, 8, 3).unwrap() {
            SmoothnessVerdict::NoSingularPointFound { exhaustive, points_checked } => {
                assert!(!exhaustive);
                assert!(points_checked > 0);
            }
            v => panic!("unexpected verdict {v:?}"),
        }
        // every sampled line meets a pair of lines
        let cone = &Poly::var(&r, 0).pow(2) - &Poly::var(&r, 1).pow(2);
        let v = smoothness_sample(&cone, 1009, 64, 3).unwrap();
        assert!(!matches!(v, SmoothnessVerdict::NoRationalPointFound { .. }));
    }

    #[test]
    fn small_smooth_ci() {
        let mut cfg = GenConfig::with_seed(1, Field::Prime(5));
        cfg.smooth_prime = 5;
        let ci = random_smooth_ci(2, 1, 2, &cfg).unwrap();
        assert_eq!(ci.degrees(), (1, 2));
        assert_eq!(ci.ring().field(), Field::Prime(5));
    }

    #[test]
    fn forced_singular_pair_rejected() {
        let r = RingCtx::projective(2, Field::Rational).unwrap();
        let x0 = Poly::var(&r, 0);
        let x0x1 = &x0 * &Poly::var(&r, 1);
        assert!(CompleteIntersection::new(x0.clone(), x0x1.clone()).is_err());
        let v = smoothness_sample_system(&[x0, x0x1], 5, 1, 0).unwrap();
        assert!(v.is_singular());
    }

    #[test]
    fn empty_locus_convention() {
        let cfg = GenConfig::with_seed(3, Field::Prime(101));
        let ci = random_smooth_ci(2, 0, 3, &cfg).unwrap();
        assert!(ci.f_a().degree() == Some(0) && ci.f_a().coeff(&[0, 0, 0]).is_one());
        assert!(ci.is_empty_locus());
    }

    #[test]
    fn totaro_equations_are_weighted_sextics() {
        let k4 = canned("totaro-k4").unwrap();
        let p = k4.get("totaro").unwrap();
        assert_eq!(p.degree(), Some(6));
        assert_eq!(p.ring().weights(), &[1, 1, 1, 3, 4, 4, 4, 4, 4, 4]);
        assert_eq!(p.num_terms(), 7);
        let k5 = canned("totaro-k5").unwrap();
        let p = k5.get("totaro").unwrap();
        assert_eq!(p.degree(), Some(6));
        assert_eq!(p.ring().weights(), &[1, 1, 1, 3, 5, 5, 5]);
    }

    #[test]
    fn unknown_bundle() {
        assert_eq!(canned("k3"), Err(Error::UnknownBundle("k3".into())));
    }

    #[test]
    fn bundles_round_trip_through_json() {
        for name in CANNED_NAMES {
            let b = canned(name).unwrap();
            assert_eq!(Bundle::parse(&b.to_json_string()).unwrap(), b);
        }
    }
}
