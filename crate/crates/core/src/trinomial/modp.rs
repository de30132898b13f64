//! Dense polynomials over `F_p` for small primes. Coefficients are stored
//! lowest degree first and kept trimmed, so the zero polynomial is empty.

use rand::Rng;

pub(crate) type Poly = Vec<u64>;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
}

impl Field {
    pub fn new(p: u64) -> Self {
        debug_assert!(p >= 2 && p < (1 << 31));
        Field { p }
    }

    pub fn reduce(&self, c: i64) -> u64 {
        c.rem_euclid(self.p as i64) as u64
    }

    fn mul_s(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    fn pow_s(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul_s(r, a);
            }
            a = self.mul_s(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow_s(a, self.p - 2)
    }

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &Poly) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn from_ints(&self, c: &[i64]) -> Poly {
        Self::trim(c.iter().map(|&x| self.reduce(x)).collect())
    }

    pub fn add(&self, a: &Poly, b: &Poly) -> Poly {
        let mut r = vec![0; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            r[i] = x;
        }
        for (i, &y) in b.iter().enumerate() {
            r[i] = (r[i] + y) % self.p;
        }
        Self::trim(r)
    }

    pub fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        let mut r = vec![0; a.len().max(b.len())];
        for (i, &x) in a.iter().enumerate() {
            r[i] = x;
        }
        for (i, &y) in b.iter().enumerate() {
            r[i] = (r[i] + self.p - y) % self.p;
        }
        Self::trim(r)
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + x * y) % self.p;
            }
        }
        Self::trim(r)
    }

    pub fn scale(&self, a: &Poly, c: u64) -> Poly {
        Self::trim(a.iter().map(|&x| self.mul_s(x, c)).collect())
    }

    pub fn monic(&self, a: &Poly) -> Poly {
        match a.last() {
            Some(&lc) => self.scale(a, self.inv(lc)),
            None => Vec::new(),
        }
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - b.len() + 1];
        for i in (0..q.len()).rev() {
            let c = self.mul_s(r[i + b.len() - 1], inv);
            q[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + self.p - self.mul_s(c, y)) % self.p;
            }
        }
        (Self::trim(q), Self::trim(r))
    }

    pub fn rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.divrem(a, b).1
    }

    /// Monic gcd.
    pub fn gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g` and `g` monic.
    pub fn xgcd(&self, a: &Poly, b: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1): (Poly, Poly) = (vec![1], Vec::new());
        let (mut t0, mut t1): (Poly, Poly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("nonzero inputs"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &Poly) -> Poly {
        Self::trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul_s(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn mulmod(&self, a: &Poly, b: &Poly, m: &Poly) -> Poly {
        self.rem(&self.mul(a, b), m)
    }

    pub fn powmod(&self, a: &Poly, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(a, m);
        let mut r = self.rem(&vec![1], m);
        while e > 0 {
            if e & 1 == 1 {
                r = self.mulmod(&r, &base, m);
            }
            base = self.mulmod(&base, &base, m);
            e >>= 1;
        }
        r
    }

    pub fn is_squarefree(&self, a: &Poly) -> bool {
        let d = self.derivative(a);
        !d.is_empty() && self.gcd(a, &d).len() == 1
    }

    /// Distinct-degree factorisation of a monic squarefree polynomial:
    /// pairs `(d, g)` where `g` is the product of all irreducible factors of degree `d`.
    pub fn ddf(&self, f: &Poly) -> Vec<(usize, Poly)> {
        let x: Poly = vec![0, 1];
        let mut out = Vec::new();
        let mut f = f.clone();
        let mut h = self.rem(&x, &f);
        let mut d = 1;
        while 2 * d <= Self::deg(&f) {
            h = self.powmod(&h, self.p, &f);
            let g = self.gcd(&f, &self.sub(&h, &x));
            if g.len() > 1 {
                f = self.divrem(&f, &g).0;
                h = self.rem(&h, &f);
                out.push((d, g));
            }
            d += 1;
        }
        if f.len() > 1 {
            out.push((Self::deg(&f), f));
        }
        out
    }

    /// Splits a product of distinct monic irreducibles of degree `d` into its
    /// factors (Cantor and Zassenhaus). `p` must be odd.
    pub fn edf<R: Rng>(&self, g: &Poly, d: usize, rng: &mut R) -> Vec<Poly> {
        let deg = Self::deg(g);
        if deg == d {
            return vec![g.clone()];
        }
        loop {
            let a: Poly = Self::trim((0..deg).map(|_| rng.gen_range(0..self.p)).collect());
            if a.len() <= 1 {
                continue;
            }
            // a^((p^d - 1)/2) = (a a^p ... a^(p^(d-1)))^((p - 1)/2)
            let mut t = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                t = self.powmod(&t, self.p, g);
                norm = self.mulmod(&norm, &t, g);
            }
            let b = self.powmod(&norm, (self.p - 1) / 2, g);
            let u = self.gcd(g, &self.sub(&b, &vec![1]));
            if u.len() > 1 && u.len() < g.len() {
                let v = self.divrem(g, &u).0;
                let mut out = self.edf(&u, d, rng);
                out.extend(self.edf(&self.monic(&v), d, rng));
                return out;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn xgcd_identity() {
        let f = Field::new(7);
        let a = f.from_ints(&[1, 2, 0, 1]);
        let b = f.from_ints(&[3, 0, 1]);
        let (g, s, t) = f.xgcd(&a, &b);
        let lhs = f.sub(&f.mul(&s, &a), &f.scale(&f.mul(&t, &b), 6));
        assert_eq!(g, vec![1]);
        assert_eq!(lhs, vec![1]);
    }

    #[test]
    fn ddf_and_edf_split_x_to_the_p_minus_x() {
        // x^5 - x over F_5 is the product of the five linear factors.
        let f = Field::new(5);
        let poly = f.from_ints(&[0, -1, 0, 0, 0, 1]);
        let parts = f.ddf(&poly);
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0, 1);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut lin = f.edf(&parts[0].1, 1, &mut rng);
        lin.sort();
        assert_eq!(lin, vec![vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![4, 1]]);
    }

    #[test]
    fn ddf_degrees_of_cyclotomic() {
        // x^4 + x^3 + x^2 + x + 1 over F_2 is irreducible; over F_11 it splits.
        let f2 = Field::new(2);
        let phi5 = f2.from_ints(&[1, 1, 1, 1, 1]);
        assert_eq!(f2.ddf(&phi5).iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![4]);
        let f11 = Field::new(11);
        let phi5 = f11.from_ints(&[1, 1, 1, 1, 1]);
        assert_eq!(f11.ddf(&phi5)[0].0, 1);
        assert_eq!(Field::deg(&f11.ddf(&phi5)[0].1), 4);
    }
}
