//! Functional decomposition `f = g ∘ h` over `Q`.

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::poly::RatPoly;
use crate::error::{Error, Result};

/// Outcome for one degree split `deg f = outer · inner`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecompositionSplit {
    pub outer_degree: usize,
    pub inner_degree: usize,
    /// `(g, h)` with `f = g ∘ h`, `h` monic with `h(0) = 0`.
    #[serde(serialize_with = "serialize_pair")]
    pub components: Option<(RatPoly, RatPoly)>,
}

fn serialize_pair<S: serde::Serializer>(
    pair: &Option<(RatPoly, RatPoly)>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    match pair {
        None => s.serialize_none(),
        Some((g, h)) => {
            let mut seq = s.serialize_seq(Some(2))?;
            seq.serialize_element(&g.to_string())?;
            seq.serialize_element(&h.to_string())?;
            seq.end()
        }
    }
}

/// Tries `f = g ∘ h` with `deg h = inner`. A decomposition with `h`
/// monic and `h(0) = 0` exists iff any does, since linear maps can be
/// moved into `g`; such an `h` is determined by the top coefficients of
/// `f`, which agree with those of `lc(f)·h^r`.
fn split(f: &RatPoly, inner: usize) -> Option<(RatPoly, RatPoly)> {
    let n = f.degree();
    let r = n / inner;
    let monic = f.monic();
    let mut h = RatPoly::monomial(inner);
    for k in 1..inner {
        let target = monic.coeff(n - k);
        let current = h.pow(r as u32).coeff(n - k);
        let c = (target - current) / BigRational::from_integer((r as i64).into());
        h = &h + &RatPoly::monomial(inner - k).scale(&c);
    }
    // base-h expansion of f; every digit must be constant
    let mut digits = Vec::with_capacity(r + 1);
    let mut rest = f.clone();
    for _ in 0..=r {
        let (q, d) = rest.div_rem(&h);
        if d.degree() > 0 {
            return None;
        }
        digits.push(d.coeff(0));
        rest = q;
    }
    if !rest.is_zero() {
        return None;
    }
    let g = RatPoly::new(digits);
    debug_assert_eq!(g.compose(&h), *f);
    Some((g, h))
}

/// Decompositions of `f` at every nontrivial degree split, ordered by
/// inner degree.
pub fn decompose(f: &RatPoly) -> Result<Vec<DecompositionSplit>> {
    let n = f.degree();
    if f.is_zero() || n < 2 {
        return Err(Error::input("decomposition needs degree at least 2"));
    }
    Ok((2..n)
        .filter(|d| n % d == 0)
        .map(|inner| DecompositionSplit {
            outer_degree: n / inner,
            inner_degree: inner,
            components: split(f, inner),
        })
        .collect())
}

/// Whether `f` admits no decomposition into factors of degree ≥ 2.
pub fn is_indecomposable(f: &RatPoly) -> Result<bool> {
    Ok(decompose(f)?.iter().all(|s| s.components.is_none()))
}

impl RatPoly {
    /// `x^d`.
    pub fn monomial(d: usize) -> RatPoly {
        let mut c = vec![BigRational::zero(); d + 1];
        c[d] = BigRational::from_integer(1.into());
        RatPoly::new(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::speclab::poly::chebyshev;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn examples() {
        let t4 = chebyshev(4);
        let splits = decompose(&t4).unwrap();
        assert_eq!(splits.len(), 1);
        let (g, h) = splits[0].components.clone().unwrap();
        assert_eq!(h, p("x^2"));
        assert_eq!(g, p("x^2 - 4x + 2"));
        // up to the linear change y ↦ y - 2 both components are T_2
        assert_eq!(g, chebyshev(2).compose(&p("x - 2")));
        assert_eq!(&h - &p("2"), chebyshev(2));
        assert!(is_indecomposable(&p("x^5 - x")).unwrap());
        let f = p("x^6 + 2x^3");
        let splits = decompose(&f).unwrap();
        let by_inner: Vec<(usize, bool)> = splits.iter().map(|s| (s.inner_degree, s.components.is_some())).collect();
        assert_eq!(by_inner, vec![(2, false), (3, true)]);
        assert_eq!(splits[1].components, Some((p("x^2 + 2x"), p("x^3"))));
    }

    #[test]
    fn composites_of_linear_changes() {
        let g = p("1/3*x^3 - x + 7");
        let h = p("2x^2 - 3x + 1/2");
        let f = g.compose(&h);
        let splits = decompose(&f).unwrap();
        let (g2, h2) = splits.iter().find(|s| s.inner_degree == 2).unwrap().components.clone().unwrap();
        assert_eq!(g2.compose(&h2), f);
        assert!(splits.iter().find(|s| s.inner_degree == 3).unwrap().components.is_none());
    }
}
