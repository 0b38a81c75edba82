//! Arbitrary-precision rationals with an inline machine-word fast path.
//!
//! Values whose numerator and denominator both fit in an `i64` are stored
//! inline; everything else spills to a boxed [`BigRational`]. The
//! representation is canonical (lowest terms, positive denominator, and
//! inline whenever it fits), so structural equality is value equality.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone)]
enum Repr {
  Small(i64, i64),
  Big(Box<BigRational>),
}

/// An exact rational number in lowest terms.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
  if a == 0 {
    return b;
  }
  if b == 0 {
    return a;
  }
  if a <= u64::MAX as u128 && b <= u64::MAX as u128 {
    return gcd_u64(a as u64, b as u64) as u128;
  }
  let shift = (a | b).trailing_zeros();
  a >>= a.trailing_zeros();
  loop {
    b >>= b.trailing_zeros();
    if a > b {
      std::mem::swap(&mut a, &mut b);
    }
    b -= a;
    if b == 0 {
      return a << shift;
    }
  }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
  if a == 0 {
    return b;
  }
  if b == 0 {
    return a;
  }
  let shift = (a | b).trailing_zeros();
  a >>= a.trailing_zeros();
  loop {
    b >>= b.trailing_zeros();
    if a > b {
      std::mem::swap(&mut a, &mut b);
    }
    b -= a;
    if b == 0 {
      return a << shift;
    }
  }
}

fn fits(x: i128) -> bool { x >= -(i64::MAX as i128) && x <= i64::MAX as i128 }

impl Rational {
  pub fn zero() -> Self { Rational(Repr::Small(0, 1)) }

  pub fn one() -> Self { Rational(Repr::Small(1, 1)) }

  pub fn from_integer(n: i64) -> Self {
    if n == i64::MIN {
      return Self::from_big(BigRational::from_integer(BigInt::from(n)));
    }
    Rational(Repr::Small(n, 1))
  }

  /// `num / den`; panics when `den == 0`.
  pub fn new(num: i64, den: i64) -> Self {
    assert!(den != 0, "zero denominator");
    Self::from_i128(num as i128, den as i128)
  }

  pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
    assert!(!den.is_zero(), "zero denominator");
    Self::from_big(BigRational::new(num, den))
  }

  fn from_i128(num: i128, den: i128) -> Self {
    debug_assert!(den != 0);
    if num == 0 {
      return Self::zero();
    }
    let (mut num, mut den) = if den < 0 { (-num, -den) } else { (num, den) };
    let g = gcd_u128(num.unsigned_abs(), den as u128);
    if g > 1 {
      num /= g as i128;
      den /= g as i128;
    }
    if fits(num) && fits(den) {
      Rational(Repr::Small(num as i64, den as i64))
    } else {
      Rational(Repr::Big(Box::new(BigRational::new_raw(BigInt::from(num), BigInt::from(den)))))
    }
  }

  fn from_big(r: BigRational) -> Self {
    // BigRational::new already reduces; demote when it fits.
    if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
      if n != i64::MIN && d != i64::MIN {
        return Rational(Repr::Small(n, d));
      }
    }
    Rational(Repr::Big(Box::new(r)))
  }

  pub fn to_big(&self) -> BigRational {
    match &self.0 {
      Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
      Repr::Big(b) => (**b).clone(),
    }
  }

  pub fn numer(&self) -> BigInt {
    match &self.0 {
      Repr::Small(n, _) => BigInt::from(*n),
      Repr::Big(b) => b.numer().clone(),
    }
  }

  pub fn denom(&self) -> BigInt {
    match &self.0 {
      Repr::Small(_, d) => BigInt::from(*d),
      Repr::Big(b) => b.denom().clone(),
    }
  }

  pub fn is_zero(&self) -> bool { matches!(self.0, Repr::Small(0, _)) }

  pub fn is_one(&self) -> bool { matches!(self.0, Repr::Small(1, 1)) }

  pub fn is_integer(&self) -> bool {
    match &self.0 {
      Repr::Small(_, d) => *d == 1,
      Repr::Big(b) => b.is_integer(),
    }
  }

  pub fn is_negative(&self) -> bool {
    match &self.0 {
      Repr::Small(n, _) => *n < 0,
      Repr::Big(b) => b.is_negative(),
    }
  }

  /// Small-integer value, when this is an integer fitting an `i64`.
  pub fn to_i64(&self) -> Option<i64> {
    match &self.0 {
      Repr::Small(n, 1) => Some(*n),
      _ => None,
    }
  }

  pub fn to_f64(&self) -> f64 {
    match &self.0 {
      Repr::Small(n, d) => *n as f64 / *d as f64,
      Repr::Big(b) => b.to_f64().unwrap_or(f64::NAN),
    }
  }

  pub fn abs(&self) -> Rational { if self.is_negative() { -self } else { self.clone() } }

  /// Multiplicative inverse; `None` for zero.
  pub fn recip(&self) -> Option<Rational> {
    if self.is_zero() {
      return None;
    }
    Some(match &self.0 {
      Repr::Small(n, d) => {
        if *n < 0 {
          Rational(Repr::Small(-*d, -*n))
        } else {
          Rational(Repr::Small(*d, *n))
        }
      },
      Repr::Big(b) => Self::from_big(b.recip()),
    })
  }

  pub fn mul_int(&self, k: i64) -> Rational {
    if k == 0 {
      return Rational::zero();
    }
    if k == 1 {
      return self.clone();
    }
    match &self.0 {
      Repr::Small(n, d) => Self::from_i128(*n as i128 * k as i128, *d as i128),
      Repr::Big(b) => Self::from_big(&**b * BigRational::from_integer(BigInt::from(k))),
    }
  }

  pub fn pow(&self, e: i32) -> Rational {
    if e < 0 {
      return self.recip().expect("zero to a negative power").pow(-e);
    }
    let mut acc = Rational::one();
    for _ in 0..e {
      acc = &acc * self;
    }
    acc
  }
}

impl Default for Rational {
  fn default() -> Self { Rational::zero() }
}

impl PartialEq for Rational {
  fn eq(&self, other: &Self) -> bool {
    match (&self.0, &other.0) {
      (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
      (Repr::Big(x), Repr::Big(y)) => x == y,
      _ => false,
    }
  }
}

impl Eq for Rational {}

impl Hash for Rational {
  fn hash<H: Hasher>(&self, state: &mut H) {
    match &self.0 {
      Repr::Small(n, d) => {
        0u8.hash(state);
        n.hash(state);
        d.hash(state);
      },
      Repr::Big(b) => {
        1u8.hash(state);
        b.hash(state);
      },
    }
  }
}

impl Ord for Rational {
  fn cmp(&self, other: &Self) -> Ordering {
    match (&self.0, &other.0) {
      (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
      _ => self.to_big().cmp(&other.to_big()),
    }
  }
}

impl PartialOrd for Rational {
  fn partial_cmp(&self, other: &Self) -> Option<Ordering> { Some(self.cmp(other)) }
}

impl<'a> Add<&'a Rational> for &'a Rational {
  type Output = Rational;

  fn add(self, rhs: &'a Rational) -> Rational {
    match (&self.0, &rhs.0) {
      (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_add(*c) {
        Some(s) if s != i64::MIN => Rational(Repr::Small(s, 1)),
        _ => Rational::from_i128(*a as i128 + *c as i128, 1),
      },
      (Repr::Small(0, _), _) => rhs.clone(),
      (_, Repr::Small(0, _)) => self.clone(),
      (Repr::Small(a, b), Repr::Small(c, d)) => {
        if b == d {
          Rational::from_i128(*a as i128 + *c as i128, *b as i128)
        } else {
          Rational::from_i128(*a as i128 * *d as i128 + *c as i128 * *b as i128, *b as i128 * *d as i128)
        }
      },
      _ => Rational::from_big(self.to_big() + rhs.to_big()),
    }
  }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
  type Output = Rational;

  fn sub(self, rhs: &'a Rational) -> Rational {
    match (&self.0, &rhs.0) {
      (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_sub(*c) {
        Some(s) if s != i64::MIN => Rational(Repr::Small(s, 1)),
        _ => Rational::from_i128(*a as i128 - *c as i128, 1),
      },
      (_, Repr::Small(0, _)) => self.clone(),
      (Repr::Small(a, b), Repr::Small(c, d)) => {
        if b == d {
          Rational::from_i128(*a as i128 - *c as i128, *b as i128)
        } else {
          Rational::from_i128(*a as i128 * *d as i128 - *c as i128 * *b as i128, *b as i128 * *d as i128)
        }
      },
      _ => Rational::from_big(self.to_big() - rhs.to_big()),
    }
  }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
  type Output = Rational;

  fn mul(self, rhs: &'a Rational) -> Rational {
    match (&self.0, &rhs.0) {
      (Repr::Small(0, _), _) | (_, Repr::Small(0, _)) => Rational::zero(),
      (Repr::Small(a, 1), Repr::Small(c, 1)) => match a.checked_mul(*c) {
        Some(p) if p != i64::MIN => Rational(Repr::Small(p, 1)),
        _ => Rational::from_i128(*a as i128 * *c as i128, 1),
      },
      (Repr::Small(1, 1), _) => rhs.clone(),
      (_, Repr::Small(1, 1)) => self.clone(),
      (Repr::Small(a, b), Repr::Small(c, d)) => Rational::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128),
      _ => Rational::from_big(self.to_big() * rhs.to_big()),
    }
  }
}

impl<'a> Div<&'a Rational> for &'a Rational {
  type Output = Rational;

  fn div(self, rhs: &'a Rational) -> Rational { self * &rhs.recip().expect("division by zero") }
}

impl Neg for &Rational {
  type Output = Rational;

  fn neg(self) -> Rational {
    match &self.0 {
      Repr::Small(n, d) => Rational(Repr::Small(-*n, *d)),
      Repr::Big(b) => Rational::from_big(-(**b).clone()),
    }
  }
}

impl Neg for Rational {
  type Output = Rational;

  fn neg(self) -> Rational { -&self }
}

macro_rules! forward_owned {
  ($tr:ident, $m:ident) => {
    impl $tr<Rational> for Rational {
      type Output = Rational;

      fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
    }
    impl<'a> $tr<&'a Rational> for Rational {
      type Output = Rational;

      fn $m(self, rhs: &'a Rational) -> Rational { (&self).$m(rhs) }
    }
  };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Rational> for Rational {
  fn add_assign(&mut self, rhs: &Rational) { *self = &*self + rhs; }
}

impl SubAssign<&Rational> for Rational {
  fn sub_assign(&mut self, rhs: &Rational) { *self = &*self - rhs; }
}

impl MulAssign<&Rational> for Rational {
  fn mul_assign(&mut self, rhs: &Rational) { *self = &*self * rhs; }
}

impl From<i64> for Rational {
  fn from(n: i64) -> Self { Rational::from_integer(n) }
}

impl From<i32> for Rational {
  fn from(n: i32) -> Self { Rational::from_integer(n as i64) }
}

impl From<BigInt> for Rational {
  fn from(n: BigInt) -> Self { Rational::from_big(BigRational::from_integer(n)) }
}

impl From<BigRational> for Rational {
  fn from(r: BigRational) -> Self { Rational::from_big(r) }
}

impl Zero for Rational {
  fn zero() -> Self { Rational::zero() }

  fn is_zero(&self) -> bool { Rational::is_zero(self) }
}

impl One for Rational {
  fn one() -> Self { Rational::one() }
}

impl fmt::Display for Rational {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match &self.0 {
      Repr::Small(n, 1) => write!(f, "{n}"),
      Repr::Small(n, d) => write!(f, "{n}/{d}"),
      Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
      Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
    }
  }
}

impl fmt::Debug for Rational {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result { fmt::Display::fmt(self, f) }
}

impl FromStr for Rational {
  type Err = String;

  fn from_str(s: &str) -> Result<Self, Self::Err> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
      Some((n, d)) => (n.trim(), d.trim()),
      None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("bad rational numerator in {s:?}"))?;
    let d: BigInt = d.parse().map_err(|_| format!("bad rational denominator in {s:?}"))?;
    if d.is_zero() {
      return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::from_bigints(n, d))
  }
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
  values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(&r.denom()))
}
