//! Univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients in ascending degree; the leading coefficient is nonzero
/// unless the polynomial is zero, which has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn from_integers(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RatPoly) -> Self {
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * inner) + &Self::constant(c.clone()))
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &RatPoly) -> (RatPoly, RatPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dd = d.degree();
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.leading().recip();
        let mut quot = vec![BigRational::zero(); self.coeffs.len() - dd];
        for i in (0..quot.len()).rev() {
            let q = &rem[i + dd] * &inv;
            if q.is_zero() {
                continue;
            }
            for (j, c) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn divides(&self, other: &RatPoly) -> bool {
        other.div_rem(self).1.is_zero()
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &RatPoly, b: &RatPoly) -> RatPoly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// `(c, p)` with `self = c · p`, `p` a primitive integer polynomial with
    /// positive leading coefficient.
    pub fn primitive_part(&self) -> (BigRational, Vec<BigInt>) {
        if self.is_zero() {
            return (BigRational::zero(), Vec::new());
        }
        let lcm = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim = ints.iter().map(|c| c / &g).collect();
        (BigRational::new(g, lcm), prim)
    }

    /// Parses `x^4 - 4*x^2 + 2`; coefficients are integers or fractions
    /// `a/b`, and the `*` before `x` is optional.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 1)
    }

    pub(crate) fn parse_at(text: &str, line: usize) -> Result<Self> {
        Parser { chars: text.char_indices().collect(), pos: 0, line }.poly()
    }
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn err(&self, msg: impl fmt::Display) -> Error {
        Error::parse(self.line, self.column(), msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].1.is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().map(|c| c.1).collect();
        Ok(s.parse().expect("ascii digits"))
    }

    fn poly(&mut self) -> Result<RatPoly> {
        let mut coeffs: Vec<BigRational> = Vec::new();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => break,
                Some('+') => {
                    self.pos += 1;
                    1
                }
                Some('-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(c) => return Err(self.err(format!("expected `+` or `-`, found `{c}`"))),
            };
            first = false;
            let (c, e) = self.term()?;
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigRational::zero());
            }
            coeffs[e] += c * rat(sign);
        }
        Ok(RatPoly::new(coeffs))
    }

    fn term(&mut self) -> Result<(BigRational, usize)> {
        let mut coeff = BigRational::one();
        let mut has_coeff = false;
        if self.peek().is_some_and(|c| c.is_ascii_digit()) {
            let num = self.integer()?;
            let den = if self.peek() == Some('/') {
                self.pos += 1;
                let d = self.integer()?;
                if d.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                d
            } else {
                BigInt::one()
            };
            coeff = BigRational::new(num, den);
            has_coeff = true;
            if self.peek() == Some('*') {
                self.pos += 1;
                if self.peek() != Some('x') {
                    return Err(self.err("expected `x` after `*`"));
                }
            }
        }
        if self.peek() != Some('x') {
            if has_coeff {
                return Ok((coeff, 0));
            }
            return Err(match self.peek() {
                Some(c) => self.err(format!("unexpected `{c}`")),
                None => self.err("expected a term"),
            });
        }
        self.pos += 1;
        let mut exp = 1usize;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            exp = e
                .try_into()
                .ok()
                .filter(|&e: &usize| e <= 1 << 16)
                .ok_or_else(|| self.err("exponent too large"))?;
        }
        Ok((coeff, exp))
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatPoly {
            type Output = RatPoly;
            fn $m(self, o: RatPoly) -> RatPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// `g ∘ h`.
pub fn compose(g: &RatPoly, h: &RatPoly) -> RatPoly {
    g.compose(h)
}

/// Normalized Chebyshev polynomials: `T_0 = 2`, `T_1 = x`,
/// `T_{n+1} = x·T_n − T_{n−1}`, so that `T_n(x + 1/x) = x^n + x^{-n}`.
pub fn chebyshev(n: usize) -> RatPoly {
    let mut prev = RatPoly::from_ints(&[2]);
    if n == 0 {
        return prev;
    }
    let mut cur = RatPoly::x();
    for _ in 1..n {
        let next = &(&RatPoly::x() * &cur) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> RatPoly {
        RatPoly::parse(s).unwrap()
    }

    #[test]
    fn parse_and_print() {
        let f = p("x^4 - 4*x^2 + 2");
        assert_eq!(f, RatPoly::from_ints(&[2, 0, -4, 0, 1]));
        assert_eq!(f.to_string(), "x^4 - 4*x^2 + 2");
        let g = p("-1/2*x^3 + x - 3/4");
        assert_eq!(g.to_string(), "-1/2*x^3 + x - 3/4");
        assert_eq!(p("2x + 3x"), RatPoly::from_ints(&[0, 5]));
        assert_eq!(p("x - x"), RatPoly::zero());
        assert_eq!(RatPoly::zero().to_string(), "0");
        assert_eq!(p("-x").to_string(), "-x");
    }

    #[test]
    fn parse_errors_have_columns() {
        assert_eq!(p_err("x^2 + "), (1, 7));
        assert_eq!(p_err("x^2 ++ 1"), (1, 6));
        assert_eq!(p_err("3/0*x"), (1, 4));
        assert_eq!(p_err("x y"), (1, 3));
    }

    fn p_err(s: &str) -> (usize, usize) {
        match RatPoly::parse(s).unwrap_err() {
            Error::Parse { line, column, .. } => (line, column),
            e => panic!("{e}"),
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(compose(&chebyshev(2), &chebyshev(2)), p("x^4 - 4*x^2 + 2"));
        let h = p("3x^2 - 1/5");
        assert_eq!(compose(&RatPoly::x(), &h), h);
        assert_eq!(compose(&p("x^2"), &p("x^3")), p("x^6"));
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev(2), p("x^2 - 2"));
        assert_eq!(chebyshev(4), p("x^4 - 4x^2 + 2"));
        assert_eq!(chebyshev(1), RatPoly::x());
    }

    #[test]
    fn chebyshev_semigroup() {
        for m in 0..=8 {
            for n in 0..=8 {
                if m == 0 || n == 0 {
                    continue;
                }
                assert_eq!(compose(&chebyshev(m), &chebyshev(n)), chebyshev(m * n), "{m} {n}");
            }
        }
    }

    #[test]
    fn defining_identity() {
        // T_n(y + 1/y) = y^n + y^-n at several rational y
        for n in 0..=9 {
            for y in [2i64, 3, -5] {
                for d in [1i64, 7] {
                    let y = BigRational::new(y.into(), d.into());
                    let lhs = chebyshev(n).eval(&(&y + y.recip()));
                    let yn = num_traits::pow(y.clone(), n);
                    let rhs = &yn + yn.recip();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn division_and_gcd() {
        let f = p("x^4 - 4x^2 - 5");
        let (q, r) = f.div_rem(&p("x^2 + 1"));
        assert_eq!(q, p("x^2 - 5"));
        assert!(r.is_zero());
        let g = RatPoly::gcd(&f, &p("2x^2 - 10"));
        assert_eq!(g, p("x^2 - 5"));
        let (c, prim) = p("-3/2*x^2 + 3").primitive_part();
        assert_eq!(c, BigRational::new((-3).into(), 2.into()));
        assert_eq!(prim, vec![BigInt::from(-2), 0.into(), 1.into()]);
    }
}
