//! Factorization of square-free rational polynomials: modular factorization
//! (distinct-degree plus Cantor–Zassenhaus), quadratic Hensel lifting and
//! subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{common_denominator, Rational};

type ZPoly = Vec<BigInt>;
type FpPoly = Vec<u64>;

fn trim_z(p: &mut ZPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn trim_p(p: &mut FpPoly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn content(p: &[BigInt]) -> BigInt { p.iter().fold(BigInt::zero(), |g, c| g.gcd(c)) }

// ---------- arithmetic over F_p ----------

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 { pow_mod(a, p - 2, p) }

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = (0..a.len().max(b.len())).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect();
    trim_p(&mut out);
    out
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim_p(&mut out);
    out
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.to_vec());
    }
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut r = a.to_vec();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        q[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * y % p) % p;
        }
    }
    r.truncate(db);
    trim_p(&mut r);
    trim_p(&mut q);
    (q, r)
}

fn fp_monic(a: &[u64], p: u64) -> FpPoly {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = inv_mod(l, p);
            a.iter().map(|&x| x * inv % p).collect()
        },
    }
}

fn fp_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = fp_divrem(&a, &b, p).1;
        a = b;
        b = r;
    }
    fp_monic(&a, p)
}

/// Returns (s, t) with s·a + t·b = 1 for coprime a, b.
fn fp_xgcd(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1): (FpPoly, FpPoly) = (vec![1], Vec::new());
    let (mut t0, mut t1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(r0[0], p);
    let scale = |v: FpPoly| -> FpPoly { v.into_iter().map(|x| x * inv % p).collect() };
    (scale(s0), scale(t0))
}

fn fp_powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let b = fp_divrem(base, m, p).1;
    for i in (0..e.bits()).rev() {
        acc = fp_divrem(&fp_mul(&acc, &acc, p), m, p).1;
        if e.bit(i) {
            acc = fp_divrem(&fp_mul(&acc, &b, p), m, p).1;
        }
    }
    acc
}

fn fp_derivative(a: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect();
    trim_p(&mut out);
    out
}

fn distinct_degree(f: &[u64], p: u64) -> Vec<(FpPoly, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x: FpPoly = vec![0, 1];
    let mut h = x.clone();
    let pe = BigUint::from(p);
    let mut d = 0;
    while f.len() - 1 >= 2 * (d + 1) {
        d += 1;
        h = fp_powmod(&h, &pe, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            f = fp_divrem(&f, &g, p).0;
            h = fp_divrem(&h, &f, p).1;
            out.push((g, d));
        }
    }
    if f.len() > 1 {
        let deg = f.len() - 1;
        out.push((f, deg));
    }
    out
}

fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<FpPoly>) {
    let n = f.len() - 1;
    if n == d {
        out.push(fp_monic(f, p));
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: FpPoly = (0..n).map(|_| rng.gen_range(0..p)).collect();
        trim_p(&mut a);
        if a.len() < 2 {
            continue;
        }
        let mut g = fp_gcd(&a, f, p);
        if g.len() == 1 {
            let b = fp_powmod(&a, &e, f, p);
            g = fp_gcd(&fp_sub(&b, &[1], p), f, p);
        }
        if g.len() > 1 && g.len() < f.len() {
            let q = fp_divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&q, d, p, rng, out);
            return;
        }
    }
}

fn factor_mod_p(f: &[u64], p: u64) -> Vec<FpPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(p ^ ((f.len() as u64) << 32));
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

// ---------- arithmetic over Z/m ----------

fn zm_norm(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim_z(&mut out);
    out
}

fn zm_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zm_norm(&out, m)
}

fn zm_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let z = BigInt::zero();
    let out: ZPoly = (0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    zm_norm(&out, m)
}

fn zm_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> ZPoly {
    let z = BigInt::zero();
    let out: ZPoly = (0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    zm_norm(&out, m)
}

/// Division by a monic polynomial modulo m.
fn zm_divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), zm_norm(a, m));
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].mod_floor(m);
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (zm_norm(&q, m), zm_norm(&r, m))
}

fn to_z(a: &[u64]) -> ZPoly { a.iter().map(|&x| BigInt::from(x)).collect() }

fn to_fp(a: &[BigInt], p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut out: FpPoly = a.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect();
    trim_p(&mut out);
    out
}

struct Lifter {
    p: u64,
    target: BigInt,
}

impl Lifter {
    /// Lifts f ≡ g·h (mod p), all monic, to a factorization modulo the final modulus.
    fn lift_pair(&self, f: &[BigInt], g: &FpPoly, h: &FpPoly) -> (ZPoly, ZPoly, BigInt) {
        let (s, t) = fp_xgcd(g, h, self.p);
        let (mut g, mut h, mut s, mut t) = (to_z(g), to_z(h), to_z(&s), to_z(&t));
        let mut m = BigInt::from(self.p);
        while m < self.target {
            let m2 = &m * &m;
            let e = zm_sub(f, &zm_mul(&g, &h, &m2), &m2);
            let (q, r) = zm_divrem_monic(&zm_mul(&s, &e, &m2), &h, &m2);
            let g2 = zm_add(&zm_add(&g, &zm_mul(&t, &e, &m2), &m2), &zm_mul(&q, &g, &m2), &m2);
            let h2 = zm_add(&h, &r, &m2);
            let b = zm_sub(&zm_add(&zm_mul(&s, &g2, &m2), &zm_mul(&t, &h2, &m2), &m2), &[BigInt::one()], &m2);
            let (c, d) = zm_divrem_monic(&zm_mul(&s, &b, &m2), &h2, &m2);
            s = zm_sub(&s, &d, &m2);
            t = zm_sub(&zm_sub(&t, &zm_mul(&t, &b, &m2), &m2), &zm_mul(&c, &g2, &m2), &m2);
            g = g2;
            h = h2;
            m = m2;
        }
        (g, h, m)
    }

    fn lift_all(&self, f: &[BigInt], factors: &[FpPoly], out: &mut Vec<ZPoly>, modulus: &mut BigInt) {
        if factors.len() == 1 {
            out.push(f.to_vec());
            return;
        }
        let mid = factors.len() / 2;
        let prod = |fs: &[FpPoly]| fs.iter().fold(vec![1u64], |acc, x| fp_mul(&acc, x, self.p));
        let g = prod(&factors[..mid]);
        let h = prod(&factors[mid..]);
        let (gl, hl, m) = self.lift_pair(f, &g, &h);
        *modulus = m;
        self.lift_all(&gl, &factors[..mid], out, modulus);
        self.lift_all(&hl, &factors[mid..], out, modulus);
    }
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

/// Exact division over Z by a monic divisor.
fn z_div_monic(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if !c.is_zero() {
            for (j, y) in b.iter().enumerate() {
                r[i + j] -= &c * y;
            }
        }
        q[i] = c;
    }
    r[..db].iter().all(Zero::is_zero).then_some(q)
}

fn primes_from(start: u64) -> impl Iterator<Item = u64> {
    (start..).filter(|&n| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn next_subset(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Irreducible monic factors over Z of a monic square-free integer polynomial.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut tried = 0;
    for p in primes_from(3) {
        let fp = to_fp(f, p);
        if fp.len() != f.len() || fp_gcd(&fp, &fp_derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp, p);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, modular) = best.expect("some prime keeps the polynomial square-free");
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + BigInt::one());
    let lifter = Lifter { p, target: &bound * 2 + 1 };
    let mut lifted = Vec::new();
    let mut m = BigInt::from(p);
    lifter.lift_all(f, &modular, &mut lifted, &mut m);

    let mut rest: ZPoly = f.to_vec();
    let mut pool = lifted;
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= pool.len() {
        let mut idx: Vec<usize> = (0..s).collect();
        let mut hit = false;
        loop {
            let cand = idx.iter().fold(vec![BigInt::one()], |acc, &i| zm_mul(&acc, &pool[i], &m));
            let cand = symmetric(&cand, &m);
            if let Some(q) = z_div_monic(&rest, &cand) {
                found.push(cand);
                rest = q;
                for &i in idx.iter().rev() {
                    pool.remove(i);
                }
                hit = true;
                break;
            }
            if !next_subset(&mut idx, pool.len()) {
                break;
            }
        }
        if !hit {
            s += 1;
        }
    }
    if rest.len() > 1 {
        found.push(rest);
    }
    found
}

/// Monic irreducible factors over Q of a monic square-free rational polynomial
/// (coefficients lowest degree first).
pub fn factor_squarefree_rational(p: &[Rational]) -> Vec<Vec<Rational>> {
    let n = p.len() - 1;
    if n <= 1 {
        return vec![p.to_vec()];
    }
    let den = common_denominator(p.iter());
    let mut f: ZPoly = p.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    trim_z(&mut f);
    let g = content(&f);
    for c in f.iter_mut() {
        *c /= &g;
    }
    if f.last().unwrap().is_negative() {
        for c in f.iter_mut() {
            *c = -&*c;
        }
    }
    // x ↦ x / a makes the polynomial monic: F(x) = a^(n-1) f(x / a)
    let a = f[n].clone();
    let monic: ZPoly = (0..=n).map(|k| if k == n { BigInt::one() } else { &f[k] * a.pow((n - 1 - k) as u32) }).collect();
    let mut out: Vec<Vec<Rational>> = zassenhaus_monic(&monic)
        .into_iter()
        .map(|gz| {
            let mut back: ZPoly = gz.iter().enumerate().map(|(k, c)| c * a.pow(k as u32)).collect();
            let cg = content(&back);
            for c in back.iter_mut() {
                *c /= &cg;
            }
            let lead = Rational::from(back.last().unwrap().clone());
            back.iter().map(|c| &Rational::from(c.clone()) / &lead).collect()
        })
        .collect();
    out.sort_by(|x, y| x.len().cmp(&y.len()).then_with(|| x.cmp(y)));
    out
}
