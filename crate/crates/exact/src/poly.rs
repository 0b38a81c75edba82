//! Dense univariate polynomials over a cyclotomic field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cyclotomic::Cyclotomic;
use crate::rational::Rational;

/// Coefficients are stored lowest degree first; the zero polynomial has none.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    n: u32,
    coeffs: Vec<Cyclotomic>,
}

impl Polynomial {
    pub fn new(n: u32, coeffs: Vec<Cyclotomic>) -> Self {
        let coeffs = coeffs.into_iter().map(|c| if c.conductor() == n { c } else { c.embed(n).expect("coefficient conductor must divide the polynomial's") }).collect();
        let mut p = Polynomial { n, coeffs };
        p.trim();
        p
    }

    pub fn from_rationals(n: u32, coeffs: &[Rational]) -> Self {
        Self::new(n, coeffs.iter().map(|r| Cyclotomic::from_rational(n, r.clone())).collect())
    }

    pub fn from_ints(n: u32, coeffs: &[i64]) -> Self {
        Self::new(n, coeffs.iter().map(|&k| Cyclotomic::from_int(n, k)).collect())
    }

    pub fn zero(n: u32) -> Self { Polynomial { n, coeffs: Vec::new() } }

    pub fn one(n: u32) -> Self { Self::constant(Cyclotomic::one(n)) }

    pub fn constant(c: Cyclotomic) -> Self { Self::new(c.conductor(), vec![c]) }

    /// The polynomial x.
    pub fn x(n: u32) -> Self { Self::new(n, vec![Cyclotomic::zero(n), Cyclotomic::one(n)]) }

    /// x - a.
    pub fn linear(a: &Cyclotomic) -> Self {
        let n = a.conductor();
        Self::new(n, vec![-a, Cyclotomic::one(n)])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Cyclotomic::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn conductor(&self) -> u32 { self.n }

    pub fn coeffs(&self) -> &[Cyclotomic] { &self.coeffs }

    pub fn coeff(&self, k: usize) -> Cyclotomic { self.coeffs.get(k).cloned().unwrap_or_else(|| Cyclotomic::zero(self.n)) }

    pub fn is_zero(&self) -> bool { self.coeffs.is_empty() }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> { self.coeffs.len().checked_sub(1) }

    pub fn leading(&self) -> Option<&Cyclotomic> { self.coeffs.last() }

    pub fn is_monic(&self) -> bool { self.leading().is_some_and(Cyclotomic::is_one) }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inv().unwrap();
                self.scale(&inv)
            },
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self { Self::new(self.n, self.coeffs.iter().map(|a| a * c).collect()) }

    pub fn embed(&self, m: u32) -> Self { Self::new(m, self.coeffs.iter().map(|c| c.embed(m).expect("conductor must divide target")).collect()) }

    /// True when every coefficient is rational.
    pub fn is_rational(&self) -> bool { self.coeffs.iter().all(|c| c.as_rational().is_some()) }

    pub fn rational_coeffs(&self) -> Option<Vec<Rational>> { self.coeffs.iter().map(|c| c.as_rational().cloned()).collect() }

    pub fn derivative(&self) -> Self {
        Self::new(self.n, self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Rational::from_integer(k as i64))).collect())
    }

    pub fn eval(&self, x: &Cyclotomic) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// p(x + a).
    pub fn shift(&self, a: &Cyclotomic) -> Self {
        let lin = Self::new(self.n, vec![a.clone(), Cyclotomic::one(self.n)]);
        let mut acc = Self::zero(self.n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone()).embed(self.n);
        }
        acc
    }

    /// Quotient and remainder; panics when dividing by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by the zero polynomial");
        let Some(sd) = self.degree() else { return (Self::zero(self.n), Self::zero(self.n)) };
        if sd < dd {
            return (Self::zero(self.n), self.clone());
        }
        let lead_inv = d.leading().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        let mut q = vec![Cyclotomic::zero(self.n); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                if !dc.is_zero() {
                    let t = &c * dc;
                    rem[i + j] -= &t;
                }
            }
            q[i] = c;
        }
        rem.truncate(dd);
        (Self::new(self.n, q), Self::new(self.n, rem))
    }

    pub fn rem(&self, d: &Self) -> Self { self.divrem(d).1 }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both inputs vanish).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn lcm(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.n);
        }
        let g = self.gcd(other);
        (self * &other.div_exact(&g).unwrap()).monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one(self.n);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square-free decomposition (Yun): monic `a_i` with `self ~ Π a_i^i`.
    pub fn squarefree_decomposition(&self) -> Vec<(Polynomial, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).unwrap();
        let mut c = fp.div_exact(&a0).unwrap();
        let mut d = &c - &b.derivative();
        let mut i = 1;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).unwrap();
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_exact(&a).unwrap();
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &'a Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(self.n, (0..len).map(|k| &self.coeff(k) + &rhs.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &'a Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new(self.n, (0..len).map(|k| &self.coeff(k) - &rhs.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &'a Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.n);
        }
        let mut out = vec![Cyclotomic::zero(self.n); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += &(a * b);
                }
            }
        }
        Polynomial::new(self.n, out)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial { Polynomial::new(self.n, self.coeffs.iter().map(|c| -c).collect()) }
}

impl fmt::Display for Polynomial {
    /// Highest degree first, e.g. `x^2 + (1 - z6)*x - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let (neg, body) = match c.as_rational() {
                Some(r) => {
                    let mag = r.abs();
                    let body = if k > 0 && mag.is_one() {
                        mono.clone()
                    } else if k > 0 {
                        format!("{mag}*{mono}")
                    } else {
                        mag.to_string()
                    };
                    (r.is_negative(), body)
                },
                None => (false, if k > 0 { format!("({c})*{mono}") } else { format!("({c})") }),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            write!(f, "{body}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { fmt::Display::fmt(self, f) }
}
