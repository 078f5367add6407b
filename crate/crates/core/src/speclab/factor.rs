//! Factorization over `Q` with certificates: modular irreducibility,
//! incompatible degree patterns, or exhaustive Hensel recombination.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modp::{Field, Fp};
use super::poly::RatPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FactorStatus {
    IrreducibleCertified,
    Factored,
    Unknown,
}

/// Why a factor is known to be irreducible.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    Linear,
    /// Irreducible modulo this prime.
    ModP { prime: u64 },
    /// No proper factor degree is compatible with the factorization
    /// patterns modulo these primes.
    DegreePattern { primes: Vec<u64> },
    /// No proper subset of the lifted modular factors gives a factor over
    /// `Z`, or this is the factor of a minimal such subset.
    Recombination {
        prime: u64,
        modular_factors: usize,
        precision: u32,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct Factor {
    #[serde(serialize_with = "serialize_display")]
    pub poly: RatPoly,
    pub multiplicity: usize,
    /// `None` when irreducibility is not established.
    pub certificate: Option<Certificate>,
}

fn serialize_display<S: serde::Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

fn serialize_rational<S: serde::Serializer>(c: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&c.to_string())
}

/// `input = content · Π factor^multiplicity`, factors primitive integer
/// polynomials with positive leading coefficient.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationResult {
    pub status: FactorStatus,
    #[serde(serialize_with = "serialize_rational")]
    pub content: BigRational,
    pub factors: Vec<Factor>,
}

impl FactorizationResult {
    /// Degrees of the factors with multiplicity, descending.
    pub fn factor_degrees(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.poly.degree(), f.multiplicity))
            .collect();
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn product(&self) -> RatPoly {
        self.factors.iter().fold(RatPoly::constant(self.content.clone()), |acc, f| {
            &acc * &f.poly.pow(f.multiplicity as u32)
        })
    }
}

/// Knobs of the factorization engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    /// Number of primes tried for certificates.
    pub primes: usize,
    /// Primes skipped before the first one tried.
    pub prime_offset: usize,
    /// Largest number of modular factors recombined.
    pub recombination_cap: usize,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            primes: 25,
            prime_offset: 0,
            recombination_cap: 12,
        }
    }
}

fn primes_from_5() -> impl Iterator<Item = u64> {
    (5u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn mod_p(f: &[BigInt], field: &Field) -> Fp {
    let p = BigInt::from(field.p);
    field.from_coeffs(f.iter().map(|c| c.mod_floor(&p).to_u64().unwrap()))
}

fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn lift_fp(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lifts `f ≡ g·h (mod p)` with `g` monic to `f ≡ g·h (mod p^k)`,
/// returning the lifted `g`.
fn hensel_lift(f: &[BigInt], g: &Fp, h: &Fp, field: &Field, k: u32) -> Vec<BigInt> {
    let (one, s, t) = field.ext_gcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let p = BigInt::from(field.p);
    let mut gz = lift_fp(g);
    let mut hz = lift_fp(h);
    let mut pk = p.clone();
    for _ in 1..k {
        let prod = int_mul(&gz, &hz);
        let diff: Vec<BigInt> = (0..f.len())
            .map(|i| &f[i] - prod.get(i).cloned().unwrap_or_default())
            .collect();
        let e = field.from_coeffs(diff.iter().map(|c| (c / &pk).mod_floor(&p).to_u64().unwrap()));
        // σ g + τ h ≡ e with deg τ < deg g
        let te = field.mul(&t, &e);
        let (q, tau) = field.div_rem(&te, g);
        let sigma = field.add(&field.mul(&s, &e), &field.mul(&q, h));
        for (i, c) in tau.iter().enumerate() {
            gz[i] += &pk * c;
        }
        for (i, c) in sigma.iter().enumerate() {
            if i < hz.len() {
                hz[i] += &pk * c;
            } else {
                hz.push(&pk * c);
            }
        }
        pk *= &p;
    }
    let modulus = pk;
    gz.iter().map(|c| c.mod_floor(&modulus)).collect()
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v;
    }
    let g = if v.last().unwrap().is_negative() { -g } else { g };
    v.iter().map(|c| c / &g).collect()
}

/// Exact quotient `a / b` over `Z` if `b` divides `a`.
fn int_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let (q, r) = RatPoly::from_integers(a).div_rem(&RatPoly::from_integers(b));
    if !r.is_zero() || q.coeffs().iter().any(|c| !c.is_integer()) {
        return None;
    }
    Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// Per-prime data for a squarefree primitive polynomial.
struct PrimeSurvey {
    /// Subset sums of the modular factor degrees, intersected over primes.
    degrees: Vec<bool>,
    primes: Vec<u64>,
    /// Good prime with the fewest modular factors, and that count.
    best: Option<(u64, usize)>,
    irreducible_mod: Option<u64>,
}

fn survey(f: &[BigInt], opts: &FactorOptions) -> PrimeSurvey {
    let n = f.len() - 1;
    let mut degrees = vec![true; n + 1];
    let mut s = PrimeSurvey {
        degrees: Vec::new(),
        primes: Vec::new(),
        best: None,
        irreducible_mod: None,
    };
    let lc = f.last().unwrap();
    for p in primes_from_5().skip(opts.prime_offset).take(opts.primes) {
        if (lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let field = Field::new(p);
        let fp = field.monic(&mod_p(f, &field));
        if !field.is_squarefree(&fp) {
            continue;
        }
        let dd = field.distinct_degree(&fp);
        let count: usize = dd.iter().map(|(d, g)| (g.len() - 1) / d).sum();
        let mut sums = vec![false; n + 1];
        sums[0] = true;
        for (d, g) in &dd {
            for _ in 0..(g.len() - 1) / d {
                for i in (*d..=n).rev() {
                    sums[i] |= sums[i - d];
                }
            }
        }
        for i in 0..=n {
            degrees[i] &= sums[i];
        }
        s.primes.push(p);
        if count == 1 {
            s.irreducible_mod = Some(p);
            break;
        }
        if s.best.is_none_or(|(_, c)| count < c) {
            s.best = Some((p, count));
        }
        if degrees[1..n].iter().all(|&d| !d) {
            break;
        }
    }
    s.degrees = degrees;
    s
}

/// Factors a squarefree primitive integer polynomial of degree ≥ 2.
fn factor_squarefree(f: &[BigInt], opts: &FactorOptions) -> Vec<(Vec<BigInt>, Option<Certificate>)> {
    let n = f.len() - 1;
    let s = survey(f, opts);
    if let Some(p) = s.irreducible_mod {
        return vec![(f.to_vec(), Some(Certificate::ModP { prime: p }))];
    }
    if !s.primes.is_empty() && s.degrees[1..n].iter().all(|&d| !d) {
        return vec![(f.to_vec(), Some(Certificate::DegreePattern { primes: s.primes }))];
    }
    let Some((p, count)) = s.best else {
        return vec![(f.to_vec(), None)];
    };
    let field = Field::new(p);
    let fp = field.monic(&mod_p(f, &field));
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    let modular = field.factor_squarefree(&fp, &mut rng);
    let (lifted, modulus, k) = lift_factors(f, &field, &fp, &modular);
    if count > opts.recombination_cap {
        return single_factor_pass(f, &lifted, &modulus, p, opts);
    }

    let certificate = Certificate::Recombination {
        prime: p,
        modular_factors: modular.len(),
        precision: k,
    };
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'outer: while 2 * size <= remaining.len() {
        for subset in subsets(remaining.len(), size) {
            let idx: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
            let deg: usize = idx.iter().map(|&i| lifted[i].len() - 1).sum();
            if !s.degrees[deg] || !s.degrees[n - deg] {
                continue;
            }
            let factors: Vec<&[BigInt]> = idx.iter().map(|&i| lifted[i].as_slice()).collect();
            let cand = candidate(&current, &factors, &modulus);
            if let Some(q) = int_div_exact(&current, &cand) {
                out.push((cand, Some(certificate.clone())));
                current = q;
                remaining.retain(|i| !idx.contains(i));
                continue 'outer;
            }
        }
        size += 1;
    }
    out.push((primitive(current), Some(certificate)));
    out
}

/// Hensel-lifts each monic modular factor `g` of `f` against
/// `lc(f)·(f/g)` to a precision exceeding twice the coefficient bound
/// `|lc|·2^n·(‖f‖₂ + 1)` for factors of `f`.
fn lift_factors(f: &[BigInt], field: &Field, fp: &Fp, modular: &[Fp]) -> (Vec<Vec<BigInt>>, BigInt, u32) {
    let n = f.len() - 1;
    let lc = f.last().unwrap();
    let lc_p = mod_p(std::slice::from_ref(lc), field)[0];
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm_sq.sqrt() + 1u32);
    let pb = BigInt::from(field.p);
    let mut k = 1u32;
    let mut modulus = pb.clone();
    while modulus <= &bound * 2 {
        modulus *= &pb;
        k += 1;
    }
    let lifted = modular
        .iter()
        .map(|g| {
            let rest = field.scale(&field.div_rem(fp, g).0, lc_p);
            hensel_lift(f, g, &rest, field, k)
        })
        .collect();
    (lifted, modulus, k)
}

/// Primitive part of `lc(current)·Π factors`, reduced symmetrically.
fn candidate(current: &[BigInt], factors: &[&[BigInt]], modulus: &BigInt) -> Vec<BigInt> {
    let lc = current.last().unwrap().clone();
    let prod = factors.iter().fold(vec![lc], |acc, g| int_mul(&acc, g));
    primitive(prod.iter().map(|c| symmetric(c, modulus)).collect())
}

/// With too many modular factors for subset recombination, tries each
/// lifted factor on its own (true factors irreducible mod p, linear ones
/// included) and factors the cofactor afresh.
fn single_factor_pass(
    f: &[BigInt],
    lifted: &[Vec<BigInt>],
    modulus: &BigInt,
    p: u64,
    opts: &FactorOptions,
) -> Vec<(Vec<BigInt>, Option<Certificate>)> {
    let mut current = f.to_vec();
    let mut out = Vec::new();
    for g in lifted {
        if current.len() <= g.len() {
            continue;
        }
        let cand = candidate(&current, &[g], modulus);
        if let Some(q) = int_div_exact(&current, &cand) {
            let certificate = if cand.len() == 2 {
                Certificate::Linear
            } else {
                Certificate::ModP { prime: p }
            };
            out.push((cand, Some(certificate)));
            current = q;
        }
    }
    if out.is_empty() {
        return vec![(f.to_vec(), None)];
    }
    match current.len() {
        0 | 1 => {}
        2 => out.push((primitive(current), Some(Certificate::Linear))),
        _ => out.extend(factor_squarefree(&current, opts)),
    }
    out
}

/// All `size`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..size).rev().find(|&i| cur[i] < n - size + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..size {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Square-free decomposition over `Q` (Yun): monic parts with their
/// multiplicities.
fn squarefree_parts(f: &RatPoly) -> Vec<(RatPoly, usize)> {
    let df = f.derivative();
    let a0 = RatPoly::gcd(f, &df);
    let mut b = f.div_rem(&a0).0;
    let mut d = &df.div_rem(&a0).0 - &b.derivative();
    let mut out = Vec::new();
    let mut i = 1;
    while b.degree() > 0 {
        let a = RatPoly::gcd(&b, &d);
        b = b.div_rem(&a).0;
        let c = d.div_rem(&a).0;
        d = &c - &b.derivative();
        if a.degree() > 0 {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

/// Factorization over `Q` with default options.
pub fn factor_q(f: &RatPoly) -> Result<FactorizationResult> {
    factor_q_with(f, &FactorOptions::default())
}

/// Factorization over `Q`; the product of the result is checked against
/// the input before returning.
pub fn factor_q_with(f: &RatPoly, opts: &FactorOptions) -> Result<FactorizationResult> {
    if f.is_zero() {
        return Err(Error::input("cannot factor the zero polynomial"));
    }
    if f.degree() == 0 {
        return Err(Error::input("cannot factor a constant polynomial"));
    }
    let mut factors = Vec::new();
    let mut unknown = false;
    for (part, mult) in squarefree_parts(f) {
        let (_, prim) = part.primitive_part();
        let pieces = if prim.len() == 2 {
            vec![(prim, Some(Certificate::Linear))]
        } else {
            factor_squarefree(&prim, opts)
        };
        for (poly, certificate) in pieces {
            unknown |= certificate.is_none();
            factors.push(Factor {
                poly: RatPoly::from_integers(&poly),
                multiplicity: mult,
                certificate,
            });
        }
    }
    factors.sort_by(|a, b| {
        a.poly
            .degree()
            .cmp(&b.poly.degree())
            .then_with(|| a.poly.coeffs().iter().rev().cmp(b.poly.coeffs().iter().rev()))
    });
    let without_content = factors
        .iter()
        .fold(RatPoly::one(), |acc, x| &acc * &x.poly.pow(x.multiplicity as u32));
    let content = f.leading() / without_content.leading();
    let result = FactorizationResult {
        status: if factors.len() > 1 || factors[0].multiplicity > 1 {
            FactorStatus::Factored
        } else if unknown {
            FactorStatus::Unknown
        } else {
            FactorStatus::IrreducibleCertified
        },
        content,
        factors,
    };
    if result.product() != *f {
        return Err(Error::inconsistent(format!("factorization of {f} does not multiply back")));
    }
    Ok(result)
}

/// Rational roots, from linear factors modulo a good prime lifted far
/// enough to recognise every root `a/b` with `a | a_0`, `b | a_n`.
pub(crate) fn rational_roots(f: &RatPoly) -> Result<Vec<BigRational>> {
    let (_, ints) = f.primitive_part();
    let mut roots = BTreeSet::new();
    let mut start = 0;
    while ints.get(start).is_some_and(Zero::is_zero) {
        start += 1;
    }
    if start > 0 {
        roots.insert(BigRational::zero());
    }
    let ints = &ints[start..];
    if ints.len() < 2 {
        return Ok(roots.into_iter().collect());
    }
    roots.extend(lifted_roots(ints));
    Ok(roots.into_iter().collect())
}

/// Rational roots from lifted linear factors modulo a good prime; needs
/// no divisor enumeration, so coefficient size does not matter.
fn lifted_roots(ints: &[BigInt]) -> Vec<BigRational> {
    let f = RatPoly::from_integers(ints);
    let sq = f.div_rem(&RatPoly::gcd(&f, &f.derivative())).0;
    let (_, sq) = sq.primitive_part();
    if sq.len() == 2 {
        return vec![BigRational::new(-sq[0].clone(), sq[1].clone())];
    }
    let lc = sq.last().unwrap();
    let (field, fp) = primes_from_5()
        .filter(|&p| !(lc % BigInt::from(p)).is_zero())
        .map(|p| {
            let field = Field::new(p);
            let fp = field.monic(&mod_p(&sq, &field));
            (field, fp)
        })
        .find(|(field, fp)| field.is_squarefree(fp))
        .expect("a squarefree integer polynomial is squarefree modulo almost every prime");
    let Some((_, linear)) = field.distinct_degree(&fp).into_iter().find(|(d, _)| *d == 1) else {
        return Vec::new();
    };
    let mut rng = ChaCha8Rng::seed_from_u64(field.p);
    let modular = field.equal_degree(&linear, 1, &mut rng);
    let (lifted, modulus, _) = lift_factors(&sq, &field, &fp, &modular);
    lifted
        .iter()
        .filter_map(|g| {
            let cand = candidate(&sq, &[g], &modulus);
            int_div_exact(&sq, &cand).map(|_| BigRational::new(-cand[0].clone(), cand[1].clone()))
        })
        .collect()
}

/// Rational root sieve over divisors of the end coefficients; the
/// brute-force oracle for [`rational_roots`].
#[cfg(test)]
fn sieve_roots(f: &RatPoly) -> Vec<BigRational> {
    let (_, ints) = f.primitive_part();
    let start = ints.iter().position(|c| !c.is_zero()).unwrap();
    let mut roots = BTreeSet::new();
    if start > 0 {
        roots.insert(BigRational::zero());
    }
    let ints = &ints[start..];
    let poly = RatPoly::from_integers(ints);
    let (a0, an) = (ints[0].abs(), ints.last().unwrap().abs());
    for num in divisors(a0.to_u64().unwrap()) {
        for den in divisors(an.to_u64().unwrap()) {
            if num.gcd(&den) != 1 {
                continue;
            }
            for sign in [num_bigint::Sign::Plus, num_bigint::Sign::Minus] {
                let r = BigRational::new(BigInt::from_biguint(sign, num.into()), den.into());
                if poly.eval(&r).is_zero() {
                    roots.insert(r);
                }
            }
        }
    }
    roots.into_iter().collect()
}

#[cfg(test)]
fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}
