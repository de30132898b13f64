//! Irreducibility over `Z` of `f(X) = F(X, 1)`.
//!
//! The screen is a rational-root test followed by factor-degree patterns
//! modulo the first primes not dividing `h_n`: a degree `d` factor over `Z`
//! must be a subset sum of the modular factor degrees at every prime. When the
//! screen is inconclusive (every prime splits the form, as for `x^8 - x^4 + 1`)
//! the full method lifts one modular factorisation with Hensel's lemma and
//! tries every recombination, which settles the question either way.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::modp::{Field, Poly};
use super::TrinomialForm;

pub const PATTERN_PRIMES: usize = 8;
/// Recombination is skipped above this many modular factors.
const MAX_RECOMBINE: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Irreducibility {
    Irreducible,
    Reducible,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Rational roots and degree patterns only.
    Screen,
    /// Screen, then Hensel lifting and recombination when it is inconclusive.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    RationalRoot { p: i64, q: i64 },
    /// The pattern intersection over these primes leaves no proper degree.
    DegreePatterns { primes: Vec<u64> },
    /// An integer factor, lowest degree first.
    Factor { prime: u64, factor: Vec<String> },
    /// `gcd(f, f')` over `Q`, a repeated factor.
    RepeatedFactor { factor: Vec<String> },
    /// No product of lifted modular factors divides the form.
    Recombination { prime: u64, factors: usize },
    Inconclusive { allowed_degrees: Vec<usize> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IrreducibilityReport {
    pub verdict: Irreducibility,
    pub certificate: Certificate,
    /// Modular factor degrees for each prime used, ascending.
    pub patterns: Vec<(u64, Vec<usize>)>,
}

pub fn is_irreducible(form: &TrinomialForm) -> Irreducibility {
    irreducibility(form, Method::Full).verdict
}

pub fn irreducibility(form: &TrinomialForm, method: Method) -> IrreducibilityReport {
    let coeffs = form.coefficients();
    let n = form.n as usize;
    if let Some((p, q)) = rational_root(form) {
        return IrreducibilityReport {
            verdict: Irreducibility::Reducible,
            certificate: Certificate::RationalRoot { p, q },
            patterns: Vec::new(),
        };
    }

    let zf: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let g = zgcd(&zf, &zderivative(&zf));
    if g.len() > 1 {
        return IrreducibilityReport {
            verdict: Irreducibility::Reducible,
            certificate: Certificate::RepeatedFactor {
                factor: g.iter().map(|c| c.to_string()).collect(),
            },
            patterns: Vec::new(),
        };
    }

    let mut patterns = Vec::new();
    let mut allowed = vec![true; n + 1];
    let mut best: Option<(usize, u64)> = None;
    for p in usable_primes(&coeffs, PATTERN_PRIMES) {
        let fp = Field::new(p);
        let monic = fp.monic(&fp.from_ints(&coeffs));
        let mut degs: Vec<usize> = fp
            .ddf(&monic)
            .iter()
            .flat_map(|(d, g)| std::iter::repeat(*d).take(Field::deg(g) / d))
            .collect();
        degs.sort_unstable();
        let sums = subset_sums(&degs, n);
        for (a, s) in allowed.iter_mut().zip(&sums) {
            *a &= *s;
        }
        if p != 2 && best.map_or(true, |(r, _)| degs.len() < r) {
            best = Some((degs.len(), p));
        }
        patterns.push((p, degs));
        if !allowed[1..n].iter().any(|a| *a) {
            let primes = patterns.iter().map(|(p, _)| *p).collect();
            return IrreducibilityReport {
                verdict: Irreducibility::Irreducible,
                certificate: Certificate::DegreePatterns { primes },
                patterns,
            };
        }
    }

    let inconclusive = |patterns| IrreducibilityReport {
        verdict: Irreducibility::Unknown,
        certificate: Certificate::Inconclusive {
            allowed_degrees: (1..n).filter(|&d| allowed[d]).collect(),
        },
        patterns,
    };
    let Some((count, prime)) = best else {
        return inconclusive(patterns);
    };
    if method == Method::Screen || count > MAX_RECOMBINE {
        return inconclusive(patterns);
    }
    let certificate = match zassenhaus(&coeffs, prime, &allowed) {
        Some(factor) => Certificate::Factor {
            prime,
            factor: factor.iter().map(|c| c.to_string()).collect(),
        },
        None => Certificate::Recombination { prime, factors: count },
    };
    let verdict = match certificate {
        Certificate::Factor { .. } => Irreducibility::Reducible,
        _ => Irreducibility::Irreducible,
    };
    IrreducibilityReport {
        verdict,
        certificate,
        patterns,
    }
}

fn divisors(m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            out.push(d);
            if d * d != m {
                out.push(m / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    out
}

/// A root `p/q` in lowest terms, if any.
fn rational_root(form: &TrinomialForm) -> Option<(i64, i64)> {
    for q in divisors(form.h_n.unsigned_abs()) {
        for p in divisors(form.h_0.unsigned_abs()) {
            if p.gcd(&q) != 1 {
                continue;
            }
            for s in [1i64, -1] {
                let (p, q) = (s * p as i64, q as i64);
                if form.eval(p, q).is_zero() {
                    return Some((p, q));
                }
            }
        }
    }
    None
}

fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

/// The first `count` primes not dividing the leading coefficient at which
/// the image stays squarefree (the degree argument needs distinct factors).
fn usable_primes(coeffs: &[i64], count: usize) -> Vec<u64> {
    let lc = *coeffs.last().unwrap();
    (2u64..)
        .filter(|&p| is_prime(p))
        .take_while(|&p| p < 1 << 20)
        .filter(|&p| lc.rem_euclid(p as i64) != 0)
        .filter(|&p| {
            let fp = Field::new(p);
            fp.is_squarefree(&fp.from_ints(coeffs))
        })
        .take(count)
        .collect()
}

fn subset_sums(degs: &[usize], n: usize) -> Vec<bool> {
    let mut s = vec![false; n + 1];
    s[0] = true;
    for &d in degs {
        for i in (d..=n).rev() {
            if s[i - d] {
                s[i] = true;
            }
        }
    }
    s
}

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    ztrim(r)
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

fn lift_poly(a: &Poly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn to_field(fp: &Field, a: &ZPoly) -> Poly {
    let p = BigInt::from(fp.p);
    Field::trim(
        a.iter()
            .map(|c| {
                let r: u64 = c.mod_floor(&p).try_into().expect("reduced below p");
                r
            })
            .collect(),
    )
}

/// Exact quotient `a / b` over `Z`, if `b` divides `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let lb = b.last()?;
    let mut r = a.clone();
    if r.len() < b.len() {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = &r[i + b.len() - 1];
        let (c, rem) = top.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] -= &c * y;
        }
        q[i] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    let sign = if a.last().is_some_and(|x| x.is_negative()) { -1 } else { 1 };
    a.iter().map(|x| x / &c * sign).collect()
}

fn zderivative(a: &ZPoly) -> ZPoly {
    ztrim(a.iter().enumerate().skip(1).map(|(i, c)| c * i).collect())
}

/// Primitive gcd over `Z[x]` by primitive pseudo-remainders.
fn zgcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let (mut a, mut b) = (primitive(a), primitive(b));
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let mut r = a.clone();
        let lb = b.last().unwrap().clone();
        while r.len() >= b.len() {
            let lr = r.last().unwrap().clone();
            let shift = r.len() - b.len();
            r = r.iter().map(|c| c * &lb).collect();
            for (j, y) in b.iter().enumerate() {
                r[j + shift] -= &lr * y;
            }
            r = ztrim(r);
            if r.is_empty() {
                break;
            }
            r = primitive(&r);
        }
        a = b;
        b = r;
    }
    primitive(&a)
}

/// Lifts `g h = target (mod p)` to `mod p^e` with `g` monic.
fn hensel_pair(fp: &Field, target: &ZPoly, g: &Poly, h: &Poly, e: u32) -> (ZPoly, ZPoly) {
    let p = BigInt::from(fp.p);
    let (one, s, t) = fp.xgcd(g, h);
    debug_assert_eq!(one, vec![1]);
    let (mut gz, mut hz) = (lift_poly(g), lift_poly(h));
    let mut pj = p.clone();
    for _ in 1..e {
        let next = &pj * &p;
        let diff = zmod(&sub_z(target, &zmul(&gz, &hz)), &next);
        let err: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let ep = to_field(fp, &err);
        let (q, r) = fp.divrem(&fp.mul(&t, &ep), g);
        let dh = fp.add(&fp.mul(&s, &ep), &fp.mul(&q, h));
        gz = zmod(&add_scaled(&gz, &r, &pj), &next);
        hz = zmod(&add_scaled(&hz, &dh, &pj), &next);
        pj = next;
    }
    (gz, hz)
}

fn sub_z(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut r = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        r[i] -= y;
    }
    ztrim(r)
}

fn add_scaled(a: &ZPoly, d: &Poly, s: &BigInt) -> ZPoly {
    let mut r = a.clone();
    if r.len() < d.len() {
        r.resize(d.len(), BigInt::zero());
    }
    for (i, &c) in d.iter().enumerate() {
        r[i] += s * c;
    }
    ztrim(r)
}

/// Finds a proper factor over `Z` from the factorisation modulo `prime`, or
/// returns `None` when no recombination divides (so the form is irreducible).
fn zassenhaus(coeffs: &[i64], prime: u64, allowed: &[bool]) -> Option<ZPoly> {
    let fp = Field::new(prime);
    let f: ZPoly = coeffs.iter().map(|&c| BigInt::from(c)).collect();
    let n = f.len() - 1;
    let lc = f[n].clone();
    let monic = fp.monic(&fp.from_ints(coeffs));
    let mut rng = ChaCha8Rng::seed_from_u64(prime);
    let mut factors: Vec<Poly> = Vec::new();
    for (d, g) in fp.ddf(&monic) {
        factors.extend(fp.edf(&g, d, &mut rng));
    }
    factors.sort();

    // Coefficients of (lc / lc(g)) g for any g | f stay below |lc| 2^n |f|_2.
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = lc.abs() * (BigInt::one() << n) * (norm2.sqrt() + 1u32);
    let p = BigInt::from(prime);
    let mut e = 1u32;
    let mut m = p.clone();
    while m <= &bound * 2u32 {
        m *= &p;
        e += 1;
    }

    // Peel off one monic factor at a time.
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut target = zmod(&f, &m);
    let lc_p = fp.reduce((&lc % &p).try_into().expect("small"));
    for i in 0..factors.len() - 1 {
        let rest = factors[i + 1..].iter().fold(vec![lc_p], |acc, u| fp.mul(&acc, u));
        let (g, h) = hensel_pair(&fp, &target, &factors[i], &rest, e);
        lifted.push(g);
        target = h;
    }
    let inv = lc.modinv(&m).expect("lc coprime to p");
    lifted.push(zmod(&target.iter().map(|c| c * &inv).collect(), &m));

    let r = lifted.len();
    for size in 1..=r / 2 {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let deg: usize = idx.iter().map(|&i| lifted[i].len() - 1).sum();
            if allowed[deg] {
                let prod = idx.iter().fold(vec![lc.clone()], |acc, &i| zmod(&zmul(&acc, &lifted[i]), &m));
                let g = symmetric(&prod, &m);
                let c = content(&g);
                let g: ZPoly = g.iter().map(|x| x / &c).collect();
                if zdiv_exact(&f, &g).is_some() {
                    return Some(g);
                }
            }
            // next combination
            let mut j = size;
            while j > 0 && idx[j - 1] == r - size + j - 1 {
                j -= 1;
            }
            if j == 0 {
                break;
            }
            idx[j - 1] += 1;
            for t in j..size {
                idx[t] = idx[t - 1] + 1;
            }
        }
    }
    None
}
