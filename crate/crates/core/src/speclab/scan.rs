//! Windowed scans of the reducible specializations `f(x) − t_0`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::factor::{factor_q_with, rational_roots, FactorOptions, FactorStatus};
use super::poly::RatPoly;
use crate::error::{Error, Result};

/// Whether `t0` lies in `f1(Q)`, with a witness `q` such that
/// `f1(q) = t0`.
pub fn value_set_member(f1: &RatPoly, t0: &BigRational) -> Result<Option<BigRational>> {
    if f1.degree() == 0 {
        return Err(Error::input("value sets need a nonconstant polynomial"));
    }
    let shifted = f1 - &RatPoly::constant(t0.clone());
    Ok(rational_roots(&shifted)?.into_iter().next())
}

/// Points `t_0` to scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Window {
    /// `lo..=hi`.
    Integers { lo: i64, hi: i64 },
    /// `{a/b : |a| ≤ height, 1 ≤ b ≤ denominator}` in lowest terms,
    /// ordered by height `max(|a|, b)`, then `b`, then `a`.
    Grid { height: u64, denominator: u64 },
}

impl Window {
    pub fn points(&self) -> Vec<BigRational> {
        match *self {
            Window::Integers { lo, hi } => (lo..=hi).map(|t| BigRational::from_integer(t.into())).collect(),
            Window::Grid { height, denominator } => {
                let h = height as i64;
                let mut seen = BTreeSet::new();
                for b in 1..=denominator as i64 {
                    for a in -h..=h {
                        if a.gcd(&b) == 1 || a == 0 && b == 1 {
                            seen.insert((a.abs().max(b), b, a));
                        }
                    }
                }
                seen.into_iter()
                    .map(|(_, b, a)| BigRational::new(a.into(), b.into()))
                    .collect()
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reducibility {
    Reducible,
    Irreducible,
    Unknown,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub t0: String,
    pub reducible: Reducibility,
    pub in_value_set: bool,
    /// Reducibility of `f1(x) − t0`; `f − t0` inherits any factorization
    /// of it.
    pub f1_reducible: Reducibility,
    /// `q` with `f1(q) = t0`.
    pub witness: Option<String>,
    /// `f(x) − t0` has a repeated root.
    pub discriminant_point: bool,
    /// Reducibility follows from `f1(rest(x)) − f1(q)` being divisible by
    /// `rest(x) − q`, the factorization engine having returned unknown.
    pub by_identity: bool,
    pub factor_degrees: Vec<usize>,
    pub factors: Vec<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ScanSummary {
    pub points: usize,
    pub reducible: usize,
    pub hits: usize,
    pub unknown: usize,
    pub discriminant_points: Vec<String>,
    /// Reducible points, other than discriminant points, where `f1 − t0`
    /// is not known to be reducible. When `f1` is all of `f` this is
    /// measured against `f1(Q)` instead.
    pub exceptions: Vec<String>,
    /// Reducible points outside `f1(Q)` at which `f1 − t0` itself
    /// factors, discriminant points excluded.
    pub value_set_misses: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ScanReport {
    pub window: Window,
    #[serde(serialize_with = "serialize_display")]
    pub f: RatPoly,
    #[serde(serialize_with = "serialize_display")]
    pub f1: RatPoly,
    pub records: Vec<ScanRecord>,
    pub summary: ScanSummary,
    pub notes: Vec<String>,
}

fn serialize_display<S: serde::Serializer>(p: &RatPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl ScanReport {
    pub fn reducible_points(&self) -> Vec<String> {
        self.records
            .iter()
            .filter(|r| r.reducible == Reducibility::Reducible)
            .map(|r| r.t0.clone())
            .collect()
    }
}

/// Parses a chain file: one polynomial per line, `#` comments, composed
/// left to right as `f_1 ∘ … ∘ f_r`.
pub fn parse_chain(text: &str) -> Result<Vec<RatPoly>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap();
        if line.trim().is_empty() {
            continue;
        }
        let poly = RatPoly::parse_at(line, i + 1)?;
        if poly.degree() == 0 {
            return Err(Error::parse(i + 1, 1, "chain members must be nonconstant"));
        }
        out.push(poly);
    }
    if out.is_empty() {
        return Err(Error::parse(1, 1, "empty chain"));
    }
    Ok(out)
}

fn compose_all(chain: &[RatPoly]) -> RatPoly {
    chain
        .iter()
        .rev()
        .fold(RatPoly::x(), |acc, g| g.compose(&acc))
}

/// Scans `f = f_1 ∘ … ∘ f_r − t_0` over `window`, comparing reducibility
/// with membership of `t_0` in the value set of `f_1 ∘ … ∘ f_{split}`.
///
/// Points are processed on `threads` threads (0 for the rayon default);
/// records follow window order regardless.
pub fn scan_window(
    chain: &[RatPoly],
    split: usize,
    window: &Window,
    opts: &FactorOptions,
    threads: usize,
) -> Result<ScanReport> {
    if split == 0 || split > chain.len() {
        return Err(Error::input(format!(
            "f1 index {split} outside the chain of length {}",
            chain.len()
        )));
    }
    let f = compose_all(chain);
    let f1 = compose_all(&chain[..split]);
    let rest = compose_all(&chain[split..]);
    let identity_applies = f1.degree() >= 2 && rest.degree() >= 1;
    let proper = rest.degree() >= 2;
    let df = f.derivative();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::input(format!("thread pool: {e}")))?;
    let points = window.points();
    let records: Vec<ScanRecord> = pool.install(|| {
        points
            .par_iter()
            .map(|t0| scan_point(&f, &df, &f1, identity_applies, t0, opts))
            .collect::<Result<_>>()
    })?;
    let mut summary = ScanSummary {
        points: records.len(),
        ..ScanSummary::default()
    };
    for r in &records {
        match r.reducible {
            Reducibility::Reducible => summary.reducible += 1,
            Reducibility::Unknown => summary.unknown += 1,
            Reducibility::Irreducible => {}
        }
        if r.reducible == Reducibility::Reducible && r.in_value_set {
            summary.hits += 1;
        }
        if r.discriminant_point {
            summary.discriminant_points.push(r.t0.clone());
        } else if r.reducible == Reducibility::Reducible && !r.in_value_set {
            if proper && r.f1_reducible == Reducibility::Reducible {
                summary.value_set_misses.push(r.t0.clone());
            } else {
                summary.exceptions.push(r.t0.clone());
            }
        }
    }
    let mut notes = Vec::new();
    if f.degree() == 5 {
        notes.push("degree 5: outside the theorem hypotheses".to_string());
    }
    if !identity_applies {
        notes.push("f1 is linear or the whole chain: value-set membership forces nothing".to_string());
    }
    Ok(ScanReport {
        window: window.clone(),
        f,
        f1,
        records,
        summary,
        notes,
    })
}

fn scan_point(
    f: &RatPoly,
    df: &RatPoly,
    f1: &RatPoly,
    identity_applies: bool,
    t0: &BigRational,
    opts: &FactorOptions,
) -> Result<ScanRecord> {
    let g = f - &RatPoly::constant(t0.clone());
    let discriminant_point = RatPoly::gcd(&g, df).degree() > 0;
    let witness = value_set_member(f1, t0)?;
    let f1_reducible = if witness.is_some() {
        if f1.degree() >= 2 {
            Reducibility::Reducible
        } else {
            Reducibility::Irreducible
        }
    } else {
        match factor_q_with(&(f1 - &RatPoly::constant(t0.clone())), opts)?.status {
            FactorStatus::Factored => Reducibility::Reducible,
            FactorStatus::IrreducibleCertified => Reducibility::Irreducible,
            FactorStatus::Unknown => Reducibility::Unknown,
        }
    };
    let factored = factor_q_with(&g, opts)?;
    let forced = identity_applies && witness.is_some();
    let (reducible, by_identity) = match factored.status {
        FactorStatus::Factored => (Reducibility::Reducible, false),
        FactorStatus::IrreducibleCertified if forced => {
            return Err(Error::inconsistent(format!(
                "f − {t0} is certified irreducible but t0 is a value of f1"
            )));
        }
        FactorStatus::IrreducibleCertified => (Reducibility::Irreducible, false),
        FactorStatus::Unknown if forced => (Reducibility::Reducible, true),
        FactorStatus::Unknown => (Reducibility::Unknown, false),
    };
    let factors = if factored.status == FactorStatus::Factored {
        factored
            .factors
            .iter()
            .map(|x| match x.multiplicity {
                1 => format!("({})", x.poly),
                m => format!("({})^{m}", x.poly),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(ScanRecord {
        t0: t0.to_string(),
        reducible,
        in_value_set: witness.is_some(),
        f1_reducible,
        witness: witness.map(|q| q.to_string()),
        discriminant_point,
        by_identity,
        factor_degrees: if factored.status == FactorStatus::Factored {
            factored.factor_degrees()
        } else {
            vec![g.degree()]
        },
        factors,
    })
}

/// Integer parse helper shared with the command line.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| Error::input(format!("bad rational {text:?}")))?;
    let den: BigInt = den.parse().map_err(|_| Error::input(format!("bad rational {text:?}")))?;
    if den.is_zero() || den.is_negative() {
        return Err(Error::input(format!("bad denominator in {text:?}")));
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speclab::poly::chebyshev;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn value_set_examples() {
        let t2 = chebyshev(2);
        assert_eq!(value_set_member(&t2, &q(7)).unwrap(), Some(q(-3)));
        assert_eq!(value_set_member(&t2, &q(3)).unwrap(), None);
        let lin = RatPoly::parse("3x - 1/2").unwrap();
        assert_eq!(value_set_member(&lin, &q(5)).unwrap(), Some(BigRational::new(11.into(), 6.into())));
    }

    #[test]
    fn chebyshev_window() {
        let chain = vec![chebyshev(2), chebyshev(2)];
        let report = scan_window(&chain, 1, &Window::Integers { lo: -40, hi: 40 }, &FactorOptions::default(), 1).unwrap();
        let mut reducible: Vec<i64> = report.reducible_points().iter().map(|t| t.parse().unwrap()).collect();
        reducible.sort_unstable();
        assert_eq!(reducible, vec![-34, -2, -1, 2, 7, 14, 23, 34]);
        assert_eq!(report.summary.exceptions, vec!["-34"]);
        assert!(report.summary.value_set_misses.is_empty());
        assert_eq!(report.summary.discriminant_points, vec!["-2", "2"]);
        let r34 = report.records.iter().find(|r| r.t0 == "-34").unwrap();
        assert_eq!(r34.factors, vec!["(x^2 - 4*x + 6)", "(x^2 + 4*x + 6)"]);
        assert_eq!(report.summary.unknown, 0);
    }

    #[test]
    fn misses_explained_by_f1() {
        // f1 − t0 = (y^2 − y + 2)(y^5 + …) at t0 = −7 has no rational root
        let chain = parse_chain("x^7 - 7x + 3\nx^5 - 5x + 1\n").unwrap();
        let report = scan_window(&chain, 1, &Window::Integers { lo: -8, hi: -6 }, &FactorOptions::default(), 1).unwrap();
        assert_eq!(report.summary.value_set_misses, vec!["-7"]);
        assert!(report.summary.exceptions.is_empty());
        let r = &report.records[1];
        assert_eq!((r.reducible, r.f1_reducible, r.in_value_set), (Reducibility::Reducible, Reducibility::Reducible, false));
        assert_eq!(r.factor_degrees, vec![25, 10]);
    }

    #[test]
    fn trivial_windows() {
        let chain = vec![RatPoly::parse("x^3 + x + 1").unwrap()];
        let empty = scan_window(&chain, 1, &Window::Integers { lo: 1, hi: 0 }, &FactorOptions::default(), 1).unwrap();
        assert!(empty.records.is_empty());
        let whole = scan_window(&chain, 1, &Window::Integers { lo: -10, hi: 10 }, &FactorOptions::default(), 2).unwrap();
        assert!(whole.summary.exceptions.is_empty());
        assert!(scan_window(&chain, 2, &Window::Integers { lo: 0, hi: 0 }, &FactorOptions::default(), 1).is_err());
    }

    #[test]
    fn grid_points() {
        let pts: Vec<String> = Window::Grid { height: 2, denominator: 2 }
            .points()
            .iter()
            .map(|r| r.to_string())
            .collect();
        assert_eq!(pts, vec!["-1", "0", "1", "-2", "2", "-1/2", "1/2"]);
    }

    #[test]
    fn chain_files() {
        let chain = parse_chain("# T4\nx^2 - 2\n\nx^2 - 2 # inner\n").unwrap();
        assert_eq!(compose_all(&chain), chebyshev(4));
        match parse_chain("x^2\nx^ + 1\n").unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 4)),
            e => panic!("{e}"),
        }
    }
}
