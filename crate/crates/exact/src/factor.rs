//! Factorization of polynomials over Q(ζ_N) by the norm method: square-free
//! decomposition, a shift making the norm square-free, factorization of the
//! norm over Q and gcds back in the extension.

use crate::cyclotomic::Cyclotomic;
use crate::error::{ExactError, Result};
use crate::intpoly::factor_squarefree_rational;
use crate::poly::Polynomial;
use crate::rational::Rational;

pub const DEFAULT_DEGREE_BOUND: usize = 24;

/// `unit · Π factor^multiplicity`, factors monic irreducible and sorted by
/// degree then coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factored {
    pub unit: Cyclotomic,
    pub factors: Vec<(Polynomial, usize)>,
}

impl Factored {
    pub fn expand(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn factor_poly(p: &Polynomial) -> Result<Factored> { factor_poly_bounded(p, DEFAULT_DEGREE_BOUND) }

pub fn factor_poly_bounded(p: &Polynomial, bound: usize) -> Result<Factored> {
    let deg = p.degree().ok_or(ExactError::ZeroPolynomial)?;
    if deg > bound {
        return Err(ExactError::UnsupportedDegree { degree: deg, bound });
    }
    let unit = p.leading().unwrap().clone();
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        for f in factor_squarefree(&part) {
            factors.push((f, mult));
        }
    }
    factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| a.coeffs().cmp(b.coeffs())));
    Ok(Factored { unit, factors })
}

fn rational_factors(q: &Polynomial) -> Vec<Polynomial> {
    let n = q.conductor();
    let coeffs = q.rational_coeffs().expect("rational polynomial");
    factor_squarefree_rational(&coeffs).into_iter().map(|c| Polynomial::from_rationals(n, &c)).collect()
}

/// Monic irreducible factors of a monic square-free polynomial.
fn factor_squarefree(q: &Polynomial) -> Vec<Polynomial> {
    let n = q.conductor();
    let deg = q.degree().unwrap();
    if deg == 1 {
        return vec![q.clone()];
    }
    if crate::cyclotomic::field(n).phi == 1 {
        return rational_factors(q);
    }
    if q.is_rational() {
        // factor over Q first; each rational factor is then split in the extension
        let parts = rational_factors(q);
        if parts.len() > 1 {
            return parts.iter().flat_map(factor_squarefree_extension).collect();
        }
    }
    factor_squarefree_extension(q)
}

fn factor_squarefree_extension(q: &Polynomial) -> Vec<Polynomial> {
    let n = q.conductor();
    if q.degree() == Some(1) {
        return vec![q.clone()];
    }
    let zeta = Cyclotomic::root_of_unity(n, 1);
    for s in 0i64.. {
        let shift = zeta.scale(&Rational::from_integer(s));
        let g = q.shift(&-&shift);
        let norm = norm_poly(&g);
        let nd = norm.derivative();
        if norm.gcd(&nd).degree() != Some(0) {
            continue;
        }
        let pieces = rational_factors(&norm);
        if pieces.len() == 1 {
            return vec![q.clone()];
        }
        return pieces
            .iter()
            .map(|piece| {
                let h = g.gcd(&piece.embed(n));
                h.shift(&shift).monic()
            })
            .filter(|h| h.degree().unwrap_or(0) > 0)
            .collect();
    }
    unreachable!()
}

/// Norm from Q(ζ_N)[x] down to Q[x], as a polynomial over conductor 1.
fn norm_poly(g: &Polynomial) -> Polynomial {
    let n = g.conductor();
    let phi = crate::cyclotomic::field(n).phi;
    let d = g.degree().unwrap() * phi;
    let xs: Vec<Rational> = (0..=d as i64).map(Rational::from_integer).collect();
    let ys: Vec<Rational> = xs.iter().map(|x| g.eval(&Cyclotomic::from_rational(n, x.clone())).norm()).collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation over Q.
fn interpolate(xs: &[Rational], ys: &[Rational]) -> Polynomial {
    let m = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..m {
        for i in (j..m).rev() {
            dd[i] = &(&dd[i] - &dd[i - 1]) / &(&xs[i] - &xs[i - j]);
        }
    }
    let mut acc = Polynomial::zero(1);
    for i in (0..m).rev() {
        let lin = Polynomial::linear(&Cyclotomic::from_rational(1, xs[i].clone()));
        acc = &(&acc * &lin) + &Polynomial::constant(Cyclotomic::from_rational(1, dd[i].clone()));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolation_recovers_cubic() {
        let xs: Vec<Rational> = (0..4).map(Rational::from_integer).collect();
        let ys: Vec<Rational> = xs.iter().map(|x| &(&(x * x) * x) - &Rational::one()).collect();
        assert_eq!(interpolate(&xs, &ys), Polynomial::from_ints(1, &[-1, 0, 0, 1]));
    }
}
