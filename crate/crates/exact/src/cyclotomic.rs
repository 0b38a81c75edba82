//! Elements of the cyclotomic field Q(ζ_N), stored as reduced residues
//! modulo the N-th cyclotomic polynomial Φ_N.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_integer::Integer;
use smallvec::{smallvec, SmallVec};

use crate::error::{ExactError, Result};
use crate::rational::Rational;

/// Per-conductor tables, built once and shared for the life of the process.
#[derive(Debug)]
pub struct FieldData {
    pub n: u32,
    pub phi: usize,
    /// Integer coefficients of Φ_N, lowest degree first (monic).
    pub cyclotomic_poly: Vec<i64>,
    /// `powers[k]` holds x^k mod Φ_N for every k < max(N, 2φ - 1).
    powers: Vec<Vec<i64>>,
    /// Units of Z/N in increasing order.
    pub units: Vec<u32>,
}

fn int_poly_divexact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let lead = *den.last().unwrap();
    let mut q = vec![0i64; rem.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn] / lead;
        q[i] = c;
        for (j, d) in den.iter().enumerate() {
            rem[i + j] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut p = vec![0i64; n as usize + 1];
    p[0] = -1;
    p[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            p = int_poly_divexact(&p, &cyclotomic_poly(d));
        }
    }
    p
}

impl FieldData {
    fn build(n: u32) -> FieldData {
        assert!(n >= 1, "conductor must be positive");
        let cyc = cyclotomic_poly(n);
        let phi = cyc.len() - 1;
        let len = (n as usize).max(2 * phi - 1).max(1);
        let mut powers = Vec::with_capacity(len);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..len {
            powers.push(cur.clone());
            // multiply by x and fold the overflow term through Φ_N
            let top = cur[phi - 1];
            for j in (1..phi).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..phi {
                    cur[j] -= top * cyc[j];
                }
            }
        }
        let units = (1..=n.max(1)).filter(|a| (*a as u64).gcd(&(n as u64)) == 1).map(|a| a % n.max(1)).collect::<Vec<_>>();
        let mut units = units;
        units.sort_unstable();
        FieldData { n, phi, cyclotomic_poly: cyc, powers, units }
    }

    /// x^k mod Φ_N for any k ≥ 0 (reduced through ζ^N = 1).
    pub fn power(&self, k: u64) -> &[i64] {
        &self.powers[(k % self.n as u64) as usize]
    }
}

/// Shared tables for conductor `n`.
pub fn field(n: u32) -> &'static FieldData {
    static REGISTRY: OnceLock<Mutex<HashMap<u32, &'static FieldData>>> = OnceLock::new();
    let reg = REGISTRY.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = reg.lock().expect("field registry poisoned");
    guard.entry(n).or_insert_with(|| Box::leak(Box::new(FieldData::build(n))))
}

/// An element of Q(ζ_N).
#[derive(Clone)]
pub struct Cyclotomic {
    field: &'static FieldData,
    c: SmallVec<[Rational; 4]>,
}

impl Cyclotomic {
    pub fn zero(n: u32) -> Self {
        let f = field(n);
        Cyclotomic { field: f, c: smallvec![Rational::zero(); f.phi] }
    }

    pub fn one(n: u32) -> Self { Self::from_rational(n, Rational::one()) }

    pub fn from_rational(n: u32, r: Rational) -> Self {
        let mut z = Self::zero(n);
        z.c[0] = r;
        z
    }

    pub fn from_int(n: u32, k: i64) -> Self { Self::from_rational(n, Rational::from_integer(k)) }

    /// Builds an element from its residue coefficients (length φ(N)).
    pub fn from_coeffs(n: u32, coeffs: Vec<Rational>) -> Result<Self> {
        let f = field(n);
        if coeffs.len() != f.phi {
            return Err(ExactError::Shape(format!("expected {} coefficients for conductor {n}, got {}", f.phi, coeffs.len())));
        }
        Ok(Cyclotomic { field: f, c: coeffs.into_iter().collect() })
    }

    /// ζ_N^k reduced modulo Φ_N.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        let f = field(n);
        let e = k.rem_euclid(n as i64) as u64;
        let c = f.power(e).iter().map(|&v| Rational::from_integer(v)).collect();
        Cyclotomic { field: f, c }
    }

    pub fn conductor(&self) -> u32 { self.field.n }

    pub fn field_data(&self) -> &'static FieldData { self.field }

    pub fn coeffs(&self) -> &[Rational] { &self.c }

    pub fn is_zero(&self) -> bool { self.c.iter().all(Rational::is_zero) }

    pub fn is_one(&self) -> bool { self.c[0].is_one() && self.c[1..].iter().all(Rational::is_zero) }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.c[1..].iter().all(Rational::is_zero) {
            Some(&self.c[0])
        } else {
            None
        }
    }

    /// Re-expresses the same number at conductor `m`, a multiple of the current one.
    pub fn embed(&self, m: u32) -> Result<Self> {
        let n = self.field.n;
        if m % n != 0 {
            return Err(ExactError::NotAMultiple { from: n, to: m });
        }
        if m == n {
            return Ok(self.clone());
        }
        let step = (m / n) as u64;
        let target = field(m);
        let mut out = Self::zero(m);
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let row = target.power(k as u64 * step);
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.c[j] += &ck.mul_int(v);
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`embed`](Self::embed): expresses the value at conductor `m`,
    /// failing when it does not lie in Q(ζ_m).
    pub fn restrict(&self, m: u32) -> Result<Self> {
        let n = self.field.n;
        if n % m != 0 {
            return Err(ExactError::NotAMultiple { from: m, to: n });
        }
        let sub = field(m);
        // Solve Σ_k a_k embed(ζ_m^k) = self for rational a_k.
        let images: Vec<Cyclotomic> = (0..sub.phi).map(|k| Self::root_of_unity(m, k as i64).embed(n).unwrap()).collect();
        let phi = self.field.phi;
        let width = sub.phi + 1;
        let mut rows: Vec<Vec<Rational>> = (0..phi)
            .map(|j| {
                let mut r: Vec<Rational> = images.iter().map(|im| im.c[j].clone()).collect();
                r.push(self.c[j].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r0 = 0;
        for col in 0..sub.phi {
            let Some(p) = (r0..phi).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r0, p);
            let inv = rows[r0][col].recip().unwrap();
            for x in rows[r0].iter_mut() {
                *x = &*x * &inv;
            }
            for i in 0..phi {
                if i != r0 && !rows[i][col].is_zero() {
                    let f = rows[i][col].clone();
                    for k in 0..width {
                        let t = &f * &rows[r0][k];
                        rows[i][k] -= &t;
                    }
                }
            }
            pivots.push(col);
            r0 += 1;
        }
        if rows[r0..].iter().any(|r| !r[sub.phi].is_zero()) {
            return Err(ExactError::NotInSubfield(m));
        }
        let mut out = Self::zero(m);
        for (i, &col) in pivots.iter().enumerate() {
            out.c[col] = rows[i][sub.phi].clone();
        }
        Ok(out)
    }

    /// Smallest conductor dividing the current one whose field contains the value.
    pub fn minimal_conductor(&self) -> u32 {
        let n = self.field.n;
        (1..=n).filter(|d| n % d == 0).find(|&d| self.restrict(d).is_ok()).unwrap_or(n)
    }

    fn promote(a: &Self, b: &Self) -> (Self, Self) {
        let m = (a.field.n as u64).lcm(&(b.field.n as u64)) as u32;
        (a.embed(m).unwrap(), b.embed(m).unwrap())
    }

    /// The Galois automorphism ζ ↦ ζ^a (a coprime to N).
    pub fn galois(&self, a: u32) -> Self {
        let f = self.field;
        let mut out = Self::zero(f.n);
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            for (j, &v) in f.power(k as u64 * a as u64).iter().enumerate() {
                if v != 0 {
                    out.c[j] += &ck.mul_int(v);
                }
            }
        }
        out
    }

    /// Complex conjugation.
    pub fn conj(&self) -> Self { self.galois(self.field.n.max(1) - 1) }

    fn conjugate_product(&self) -> Self {
        let mut acc = Self::one(self.field.n);
        for &a in &self.field.units {
            if a != 1 % self.field.n.max(1) {
                acc = &acc * &self.galois(a);
            }
        }
        acc
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> Rational {
        let p = self * &self.conjugate_product();
        p.as_rational().expect("norm is rational").clone()
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(self.field.n, r.recip()?));
        }
        let rest = self.conjugate_product();
        let nrm = (self * &rest).as_rational().expect("norm is rational").clone();
        Some(rest.scale(&nrm.recip()?))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Cyclotomic { field: self.field, c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn pow(&self, e: i64) -> Self {
        if e < 0 {
            return self.inv().expect("zero to a negative power").pow(-e);
        }
        let mut base = self.clone();
        let mut acc = Self::one(self.field.n);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Numerical value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.field.n as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, ck) in self.c.iter().enumerate() {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            let v = ck.to_f64();
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    fn add_same(&self, rhs: &Self, sign: bool) -> Self {
        let c = self.c.iter().zip(rhs.c.iter()).map(|(a, b)| if sign { a + b } else { a - b }).collect();
        Cyclotomic { field: self.field, c }
    }

    fn mul_same(&self, rhs: &Self) -> Self {
        let f = self.field;
        let phi = f.phi;
        if phi == 1 {
            return Cyclotomic { field: f, c: smallvec![&self.c[0] * &rhs.c[0]] };
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(r);
        }
        let mut prod: SmallVec<[Rational; 8]> = smallvec![Rational::zero(); 2 * phi - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += &(a * b);
                }
            }
        }
        let mut out: SmallVec<[Rational; 4]> = prod[..phi].iter().cloned().collect();
        for k in phi..2 * phi - 1 {
            if prod[k].is_zero() {
                continue;
            }
            for (j, &v) in f.powers[k].iter().enumerate() {
                if v != 0 {
                    out[j] += &prod[k].mul_int(v);
                }
            }
        }
        Cyclotomic { field: f, c: out }
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if std::ptr::eq(self.field, other.field) {
            self.c == other.c
        } else {
            let (a, b) = Self::promote(self, other);
            a.c == b.c
        }
    }
}

impl Eq for Cyclotomic {}

impl Ord for Cyclotomic {
    /// Lexicographic on residue coefficients after moving to a common conductor.
    fn cmp(&self, other: &Self) -> Ordering {
        if std::ptr::eq(self.field, other.field) {
            self.c.iter().cmp(other.c.iter())
        } else {
            let (a, b) = Self::promote(self, other);
            a.c.iter().cmp(b.c.iter())
        }
    }
}

impl PartialOrd for Cyclotomic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn add(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if std::ptr::eq(self.field, rhs.field) {
            self.add_same(rhs, true)
        } else {
            let (a, b) = Cyclotomic::promote(self, rhs);
            a.add_same(&b, true)
        }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn sub(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if std::ptr::eq(self.field, rhs.field) {
            self.add_same(rhs, false)
        } else {
            let (a, b) = Cyclotomic::promote(self, rhs);
            a.add_same(&b, false)
        }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn mul(self, rhs: &'a Cyclotomic) -> Cyclotomic {
        if std::ptr::eq(self.field, rhs.field) {
            self.mul_same(rhs)
        } else {
            let (a, b) = Cyclotomic::promote(self, rhs);
            a.mul_same(&b)
        }
    }
}

impl<'a> Div<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;

    fn div(self, rhs: &'a Cyclotomic) -> Cyclotomic { self * &rhs.inv().expect("division by zero") }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic { Cyclotomic { field: self.field, c: self.c.iter().map(|x| -x).collect() } }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;

    fn neg(self) -> Cyclotomic { -&self }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;

            fn $m(self, rhs: Cyclotomic) -> Cyclotomic { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;

            fn $m(self, rhs: &'a Cyclotomic) -> Cyclotomic { (&self).$m(rhs) }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        if std::ptr::eq(self.field, rhs.field) {
            for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
                if !b.is_zero() {
                    *a += b;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        if std::ptr::eq(self.field, rhs.field) {
            for (a, b) in self.c.iter_mut().zip(rhs.c.iter()) {
                if !b.is_zero() {
                    *a -= b;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

impl MulAssign<&Cyclotomic> for Cyclotomic {
    fn mul_assign(&mut self, rhs: &Cyclotomic) { *self = &*self * rhs; }
}

impl fmt::Display for Cyclotomic {
    /// Renders as e.g. `1 - 2*z6 + z6^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.field.n;
        let mut first = true;
        for (k, ck) in self.c.iter().enumerate() {
            if ck.is_zero() {
                continue;
            }
            let neg = ck.is_negative();
            let mag = ck.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let zeta = match k {
                0 => String::new(),
                1 => format!("z{n}"),
                _ => format!("z{n}^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{zeta}")?;
            } else {
                write!(f, "{mag}*{zeta}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { fmt::Display::fmt(self, f) }
}
