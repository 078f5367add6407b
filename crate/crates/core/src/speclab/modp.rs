//! Polynomials over `F_p` for word-sized primes, ascending coefficients.

use num_bigint::BigUint;
use rand::Rng;

pub(crate) type Fp = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < 1 << 32);
        Field { p }
    }

    fn trim(mut a: Fp) -> Fp {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }


    pub fn from_coeffs(&self, c: impl IntoIterator<Item = u64>) -> Fp {
        Self::trim(c.into_iter().map(|x| x % self.p).collect())
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow_scalar(a, self.p - 2)
    }

    fn pow_scalar(&self, mut a: u64, mut e: u64) -> u64 {
        let mut out = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                out = out * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        out
    }

    pub fn add(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    pub fn sub(&self, a: &Fp, b: &Fp) -> Fp {
        let n = a.len().max(b.len());
        Self::trim(
            (0..n)
                .map(|i| (a.get(i).unwrap_or(&0) + self.p - b.get(i).unwrap_or(&0)) % self.p)
                .collect(),
        )
    }

    pub fn mul(&self, a: &Fp, b: &Fp) -> Fp {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % self.p;
            }
        }
        Self::trim(out)
    }

    pub fn scale(&self, a: &Fp, c: u64) -> Fp {
        Self::trim(a.iter().map(|&x| x * c % self.p).collect())
    }

    pub fn monic(&self, a: &Fp) -> Fp {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    pub fn div_rem(&self, a: &Fp, b: &Fp) -> (Fp, Fp) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut rem = a.clone();
        let db = b.len() - 1;
        let mut quot = vec![0u64; a.len() - db];
        for i in (0..quot.len()).rev() {
            let q = rem[i + db] * inv % self.p;
            if q == 0 {
                continue;
            }
            for (j, &c) in b.iter().enumerate() {
                rem[i + j] = (rem[i + j] + self.p - q * c % self.p) % self.p;
            }
            quot[i] = q;
        }
        rem.truncate(db);
        (Self::trim(quot), Self::trim(rem))
    }

    pub fn rem(&self, a: &Fp, b: &Fp) -> Fp {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &Fp, b: &Fp) -> Fp {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_empty() {
            let r = self.rem(&a, &b);
            a = b;
            b = r;
        }
        self.monic(&a)
    }

    /// `(g, s, t)` with `s·a + t·b = g` monic.
    pub fn ext_gcd(&self, a: &Fp, b: &Fp) -> (Fp, Fp, Fp) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let c = self.inv(*r0.last().expect("gcd of nonzero inputs"));
        (self.scale(&r0, c), self.scale(&s0, c), self.scale(&t0, c))
    }

    pub fn derivative(&self, a: &Fp) -> Fp {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| (i as u64 % self.p) * c % self.p)
                .collect(),
        )
    }

    /// `base^e mod m`.
    pub fn pow_mod(&self, base: &Fp, e: &BigUint, m: &Fp) -> Fp {
        let mut out: Fp = self.rem(&vec![1], m);
        let base = self.rem(base, m);
        for i in (0..e.bits()).rev() {
            out = self.rem(&self.mul(&out, &out), m);
            if e.bit(i) {
                out = self.rem(&self.mul(&out, &base), m);
            }
        }
        out
    }

    pub fn is_squarefree(&self, a: &Fp) -> bool {
        self.gcd(a, &self.derivative(a)).len() == 1
    }

    /// Distinct-degree factorization of a monic squarefree polynomial:
    /// pairs `(d, product of all irreducible factors of degree d)`.
    pub fn distinct_degree(&self, f: &Fp) -> Vec<(usize, Fp)> {
        let mut out = Vec::new();
        let mut f = f.clone();
        let x: Fp = vec![0, 1];
        let p = BigUint::from(self.p);
        let mut h = self.rem(&x, &f);
        let mut d = 0;
        while f.len() > 1 {
            d += 1;
            if 2 * d > f.len() - 1 {
                out.push((f.len() - 1, f.clone()));
                break;
            }
            h = self.pow_mod(&h, &p, &f);
            let g = self.gcd(&self.sub(&h, &x), &f);
            if g.len() > 1 {
                f = self.div_rem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((d, g));
            }
        }
        out
    }

    /// Splits a monic product of distinct irreducibles of degree `d`
    /// (Cantor–Zassenhaus, odd `p`).
    pub fn equal_degree<R: Rng>(&self, f: &Fp, d: usize, rng: &mut R) -> Vec<Fp> {
        let n = f.len() - 1;
        if n == d {
            return vec![f.clone()];
        }
        let e = (BigUint::from(self.p).pow(d as u32) - 1u32) / 2u32;
        loop {
            let a: Fp = Self::trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = self.sub(&self.pow_mod(&a, &e, f), &vec![1]);
            let g = self.gcd(&b, f);
            if g.len() > 1 && g.len() < f.len() {
                let rest = self.div_rem(f, &g).0;
                let mut out = self.equal_degree(&g, d, rng);
                out.extend(self.equal_degree(&rest, d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic squarefree polynomial into monic
    /// irreducibles, sorted.
    pub fn factor_squarefree<R: Rng>(&self, f: &Fp, rng: &mut R) -> Vec<Fp> {
        let mut out = Vec::new();
        for (d, g) in self.distinct_degree(f) {
            out.extend(self.equal_degree(&g, d, rng));
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn factors_multiply_back() {
        let f = Field::new(7);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        // x^7 - x is the product of the 7 monic linear polynomials
        let poly: Fp = f.from_coeffs([0, 6, 0, 0, 0, 0, 0, 1]);
        let factors = f.factor_squarefree(&poly, &mut rng);
        assert_eq!(factors.len(), 7);
        let product = factors.iter().fold(vec![1], |acc, g| f.mul(&acc, g));
        assert_eq!(product, poly);
    }

    #[test]
    fn distinct_degree_counts() {
        let f = Field::new(5);
        // (x^2 + 2)(x + 1): x^2 + 2 is irreducible mod 5
        let a = f.from_coeffs([2, 0, 1]);
        let b = f.from_coeffs([1, 1]);
        let poly = f.mul(&a, &b);
        let dd = f.distinct_degree(&poly);
        assert_eq!(dd.iter().map(|(d, g)| (*d, g.len() - 1)).collect::<Vec<_>>(), vec![(1, 1), (2, 2)]);
        let (g, s, t) = f.ext_gcd(&a, &b);
        assert_eq!(g, vec![1]);
        assert_eq!(f.add(&f.mul(&s, &a), &f.mul(&t, &b)), vec![1]);
    }
}
