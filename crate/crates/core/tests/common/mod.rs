#![allow(dead_code)]

use std::sync::Arc;

use bicrossx_core::cartan::{Form, FirstOrderCalculus};
use bicrossx_core::tangent::{CrossedModule, TangentDatum};
use bicrossx_core::{catalog, Factorization};
use bicrossx_exact::{root_of_unity, Cyclotomic};

pub struct Setup {
    pub f: Arc<Factorization>,
    pub cm: CrossedModule,
    pub n: u32,
}

pub fn setup(name: &str) -> Setup {
    let f = Arc::new(catalog(name).unwrap());
    let n = f.conductor();
    let cm = CrossedModule::new(f.clone()).unwrap();
    Setup { f, cm, n }
}

/// ζ_n^k in the session field.
pub fn q(s: &Setup, k: i64) -> Cyclotomic { root_of_unity(s.n, k) }

pub fn int(s: &Setup, k: i64) -> Cyclotomic { Cyclotomic::from_int(s.n, k) }

pub fn el(s: &Setup, name: &str) -> usize { s.f.element(name).unwrap_or_else(|| panic!("no element {name}")) }

/// Σ c·x in kX.
pub fn kx(s: &Setup, terms: &[(&str, Cyclotomic)]) -> Vec<Cyclotomic> {
    let mut v = vec![Cyclotomic::zero(s.n); s.f.x.order()];
    for (name, c) in terms {
        v[el(s, name)] += c;
    }
    v
}

pub fn datum(s: &Setup, basis: Vec<Vec<Cyclotomic>>) -> TangentDatum { TangentDatum::from_f_basis(&s.cm, basis).unwrap() }

pub fn calc(s: &Setup, basis: Vec<Vec<Cyclotomic>>) -> FirstOrderCalculus { FirstOrderCalculus::new(&s.cm, datum(s, basis)).unwrap() }

/// The group element u ∈ G as an element of A.
pub fn g(c: &FirstOrderCalculus, name: &str) -> Vec<Cyclotomic> {
    let x = c.fact.element(name).unwrap();
    c.alg.group(c.fact.g_index(x).unwrap())
}

/// δ_s ∈ A.
pub fn delta(c: &FirstOrderCalculus, name: &str) -> Vec<Cyclotomic> {
    let x = c.fact.element(name).unwrap();
    c.alg.delta(c.fact.m_index(x).unwrap())
}

pub fn e(c: &FirstOrderCalculus, a: usize) -> Form {
    let mut l = vec![Cyclotomic::zero(c.n); c.dim];
    l[a] = Cyclotomic::one(c.n);
    c.invariant_form(&l)
}

/// Σ coeff·u·e_a over the given terms.
pub fn gform(c: &FirstOrderCalculus, terms: &[(&str, usize, Cyclotomic)]) -> Form {
    let mut out = c.zero_form();
    for (u, a, k) in terms {
        let w = c.left_mul(&g(c, u), &e(c, *a));
        for (o, x) in out.iter_mut().zip(w) {
            *o += &(&x * k);
        }
    }
    out
}

/// a·ω for a ∈ A.
pub fn times(c: &FirstOrderCalculus, a: &[Cyclotomic], w: &Form) -> Form { c.left_mul(a, w) }

pub fn add(x: &Form, y: &Form) -> Form { x.iter().zip(y).map(|(a, b)| a + b).collect() }

pub fn sub(x: &Form, y: &Form) -> Form { x.iter().zip(y).map(|(a, b)| a - b).collect() }

pub fn scale(x: &Form, k: &Cyclotomic) -> Form { x.iter().map(|a| a * k).collect() }

/// The 2-dim calculus on the Z₃ side: f = 1 + q²u + qu², 1 + qu + q²u².
pub fn z3_two(s: &Setup) -> FirstOrderCalculus {
    let (q1, q2) = (q(s, 2), q(s, 4));
    let one = int(s, 1);
    calc(s, vec![kx(s, &[("e", one.clone()), ("u", q2.clone()), ("u^2", q1.clone())]), kx(s, &[("e", one.clone()), ("u", q1), ("u^2", q2)])])
}

/// The 3-dim calculus on the Z₃ side: f = s, us, u²s.
pub fn z3_side() -> (Setup, FirstOrderCalculus) {
    let s = setup("s3_as_z2z3");
    let one = int(&s, 1);
    let c = calc(&s, vec![kx(&s, &[("s", one.clone())]), kx(&s, &[("us", one.clone())]), kx(&s, &[("u^2s", one)])]);
    (s, c)
}

/// The t-class calculi of the Z₆ side with q replaced by q^qk.
pub fn t_class(s: &Setup, qk: i64) -> FirstOrderCalculus {
    let (one, q1, q2) = (int(s, 1), q(s, 2 * qk), q(s, 4 * qk));
    calc(
        s,
        vec![
            kx(s, &[("t^2", one.clone()), ("u^2t^2", q1.clone()), ("u^4t^2", q2.clone())]),
            kx(s, &[("t", one.clone()), ("u^2t", q2.clone()), ("u^4t", q1.clone())]),
            kx(s, &[("ut^2", one.clone()), ("u^3t^2", q1.clone()), ("u^5t^2", q2.clone())]),
            kx(s, &[("u^5t", one), ("ut", q2), ("u^3t", q1)]),
        ],
    )
}

/// The 9-dim calculi of the Z₆ side.
pub fn s_class(s: &Setup, sign: i64) -> FirstOrderCalculus {
    let (one, q) = (int(s, 1), int(s, sign));
    let pairs = [
        ("s", "u^3s"),
        ("u^2s", "u^5s"),
        ("us", "u^4s"),
        ("st", "u^5st^2"),
        ("u^2st", "ust^2"),
        ("u^4st", "u^3st^2"),
        ("st^2", "ust"),
        ("u^3st", "u^2st^2"),
        ("u^5st", "u^4st^2"),
    ];
    calc(s, pairs.iter().map(|(x, y)| kx(s, &[(x, one.clone()), (y, q.clone())])).collect())
}

/// The 6-dim calculus on the double, in its standard basis.
pub fn viii(s: &Setup) -> FirstOrderCalculus {
    let (one, q1, q2) = (int(s, 1), q(s, 2), q(s, 4));
    let t = |a: &'static str, b: &'static str, c: &'static str, ka: &Cyclotomic, kb: &Cyclotomic, kc: &Cyclotomic| kx(s, &[(a, ka.clone()), (b, kb.clone()), (c, kc.clone())]);
    calc(
        s,
        vec![
            t("e.s", "U.u^2s", "U^2.us", &one, &q2, &q1),
            t("U.s", "U^2.u^2s", "e.us", &one, &q2, &q1),
            t("U^2.s", "e.u^2s", "U.us", &one, &q2, &q1),
            t("S.s", "U^2S.us", "US.u^2s", &one, &q1, &q2),
            t("U^2S.s", "US.us", "S.u^2s", &one, &q1, &q2),
            t("US.s", "S.us", "U^2S.u^2s", &one, &q1, &q2),
        ],
    )
}
