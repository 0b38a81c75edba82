mod common;

use bicrossx_core::cartan::{canonical_crossproduct, canonical_semidirect, Braiding, FirstOrderCalculus};
use bicrossx_exact::Cyclotomic;
use common::*;

fn psi(b: &Braiding, a: usize, c: usize) -> Vec<((usize, usize), Cyclotomic)> { b.entry(a, c) }

fn one_term(x: usize, y: usize, k: Cyclotomic) -> Vec<((usize, usize), Cyclotomic)> { vec![((x, y), k)] }

/// e_a·u == coeff·u'·e_b.
fn commutes_as(c: &FirstOrderCalculus, a: usize, u: &str, k: Cyclotomic, v: &str, b: usize) -> bool { c.right_mul(&e(c, a), &g(c, u)) == gform(c, &[(v, b, k)]) }

#[test]
fn two_dim_calculus_on_z3_side() {
    let s = setup("s3_as_z2z3");
    let (q1, q2) = (q(&s, 2), q(&s, 4));
    let one = int(&s, 1);
    let c = z3_two(&s);
    assert!(commutes_as(&c, 0, "u", q2.clone(), "u", 0));
    assert!(commutes_as(&c, 0, "u^2", q1.clone(), "u^2", 0));
    assert!(commutes_as(&c, 1, "u", q1.clone(), "u", 1));
    assert!(commutes_as(&c, 1, "u^2", q2.clone(), "u^2", 1));
    for a in 0..2 {
        let d = delta(&c, "s");
        assert_eq!(c.right_mul(&e(&c, a), &d), c.left_mul(&d, &e(&c, a)));
    }
    assert_eq!(c.theta, vec![one.clone(), one.clone()]);
    assert!(c.d(&delta(&c, "s")).iter().all(Cyclotomic::is_zero));
    assert_eq!(c.d(&g(&c, "u")), gform(&c, &[("u", 0, &q2 - &one), ("u", 1, &q1 - &one)]));
    let b = c.braiding();
    for x in 0..2 {
        for y in 0..2 {
            assert_eq!(psi(&b, x, y), one_term(y, x, one.clone()));
        }
    }
}

#[test]
fn three_dim_calculus_on_z3_side() {
    let (s, c) = z3_side();
    let one = int(&s, 1);
    let sv = el(&s, "s");
    assert!(c.datum.bra.iter().all(|&b| b == sv));
    let table = [(0, "u", "u^2", 1), (0, "u^2", "u", 2), (1, "u", "u^2", 2), (1, "u^2", "u", 0), (2, "u", "u^2", 0), (2, "u^2", "u", 1)];
    for (a, u, v, b) in table {
        assert!(commutes_as(&c, a, u, one.clone(), v, b), "e{} {u}", a + 1);
    }
    assert_eq!(c.theta, vec![one.clone(), int(&s, 0), int(&s, 0)]);
    let m1 = int(&s, -1);
    assert_eq!(c.d(&g(&c, "u")), gform(&c, &[("u^2", 1, one.clone()), ("u", 0, m1.clone())]));
    assert_eq!(c.d(&g(&c, "u^2")), gform(&c, &[("u", 2, one.clone()), ("u^2", 0, m1)]));
    let b = c.braiding();
    for a in 0..3 {
        assert_eq!(psi(&b, a, 0), one_term(0, a, one.clone()));
    }
    let rest = [(0, 1, (2, 2)), (1, 1, (2, 0)), (2, 1, (2, 1)), (0, 2, (1, 1)), (1, 2, (1, 2)), (2, 2, (1, 0))];
    for (a, x, (p, r)) in rest {
        assert_eq!(psi(&b, a, x), one_term(p, r, one.clone()), "Ψ(e{}⊗e{})", a + 1, x + 1);
    }
    assert_eq!(b, c.braiding_oracle());
}

#[test]
fn sign_calculus_on_z6_side() {
    let s = setup("z6_s3");
    let names = ["e", "u", "u^2", "u^3", "u^4", "u^5"];
    let terms: Vec<(&str, Cyclotomic)> = names.iter().enumerate().map(|(i, &n)| (n, int(&s, if i % 2 == 0 { 1 } else { -1 }))).collect();
    let c = calc(&s, vec![kx(&s, &terms)]);
    for (i, &u) in names.iter().enumerate() {
        let sign = int(&s, if i % 2 == 0 { 1 } else { -1 });
        assert!(commutes_as(&c, 0, u, sign.clone(), u, 0));
        assert_eq!(c.d(&g(&c, u)), gform(&c, &[(u, 0, &sign - &int(&s, 1))]));
    }
    assert_eq!(c.braiding().entry(0, 0), one_term(0, 0, int(&s, 1)));
}

#[test]
fn four_dim_character_calculus_on_z6_side() {
    let s = setup("z6_s3");
    let names = ["e", "u", "u^2", "u^3", "u^4", "u^5"];
    // f_k = Σ_j q^{kj} u^j with q = e^{-2πi/6}
    let ks = [1i64, 2, 4, 5];
    let basis = ks.iter().map(|&k| kx(&s, &names.iter().enumerate().map(|(j, &n)| (n, q(&s, -k * j as i64))).collect::<Vec<_>>())).collect();
    let c = calc(&s, basis);
    let f1 = kx(&s, &[("e", int(&s, 1)), ("u", q(&s, -1)), ("u^2", q(&s, -2)), ("u^3", int(&s, -1)), ("u^4", q(&s, -4)), ("u^5", q(&s, -5))]);
    assert_eq!(c.datum.f[0], f1);
    for (a, &k) in ks.iter().enumerate() {
        for (j, &u) in names.iter().enumerate() {
            assert!(commutes_as(&c, a, u, q(&s, -k * j as i64), u, a));
        }
    }
    assert!(c.theta.iter().all(Cyclotomic::is_one));
    let b = c.braiding();
    for x in 0..4 {
        for y in 0..4 {
            assert_eq!(psi(&b, x, y), one_term(y, x, int(&s, 1)));
        }
    }
}

fn upow(j: i64) -> String {
    match j.rem_euclid(6) {
        0 => "e".into(),
        1 => "u".into(),
        k => format!("u^{k}"),
    }
}

#[test]
fn t_class_calculi_on_z6_side() {
    let s = setup("z6_s3");
    for qk in [0i64, 1, -1] {
        let c = t_class(&s, qk);
        let qq = |k: i64| q(&s, 2 * qk * k);
        let (t, t2) = (el(&s, "t"), el(&s, "t^2"));
        assert_eq!(c.datum.bra, vec![t2, t, t, t2]);
        for j in 0..3i64 {
            let rows = [
                (0, 2 * j, qq(-2 * j), 2 * j, 0),
                (0, 2 * j + 1, qq(-2 * j), 2 * j + 3, 2),
                (1, 2 * j, qq(-j), 2 * j, 1),
                (1, 2 * j + 1, qq(2 - j), 2 * j + 5, 3),
                (2, 2 * j, qq(-2 * j), 2 * j, 2),
                (2, 2 * j + 1, qq(1 - 2 * j), 2 * j + 5, 0),
                (3, 2 * j, qq(-j), 2 * j, 3),
                (3, 2 * j + 1, qq(-j), 2 * j + 3, 1),
            ];
            for (a, p, k, r, b) in rows {
                assert!(commutes_as(&c, a, &upow(p), k, &upow(r), b), "q^{qk}: e{} u^{p}", a + 1);
            }
        }
        let (one, zero) = (int(&s, 1), int(&s, 0));
        assert_eq!(c.theta, vec![one.clone(), one.clone(), zero.clone(), zero]);
        let b = c.braiding();
        for a in 0..4 {
            assert_eq!(psi(&b, a, 0), one_term(0, a, one.clone()));
            assert_eq!(psi(&b, a, 1), one_term(1, a, one.clone()));
        }
        let rest = [(0, 2, qq(1)), (0, 3, qq(2)), (1, 2, qq(2)), (1, 3, qq(1)), (2, 2, one.clone()), (2, 3, one.clone()), (3, 2, one.clone()), (3, 3, one.clone())];
        for (a, x, k) in rest {
            assert_eq!(psi(&b, a, x), one_term(x, a, k), "q^{qk}: Ψ(e{}⊗e{})", a + 1, x + 1);
        }
    }
}

#[test]
fn s_class_calculus_on_z6_side() {
    let s = setup("z6_s3");
    let c = s_class(&s, 1);
    let idx = |a: usize, i: i64| 3 * a + i.rem_euclid(3) as usize;
    let one = int(&s, 1);
    for i in 0..3i64 {
        for j in 0..6i64 {
            assert!(commutes_as(&c, idx(0, i), &upow(j), one.clone(), &upow(-j), idx(0, i - j)), "e1{i} u^{j}");
        }
        for k in 0..3i64 {
            assert!(commutes_as(&c, idx(1, i), &upow(2 * k), one.clone(), &upow(4 * k), idx(1, i + k)));
            assert!(commutes_as(&c, idx(1, i), &upow(2 * k + 1), one.clone(), &upow(4 * k + 1), idx(2, i + k)));
            assert!(commutes_as(&c, idx(2, i), &upow(2 * k), one.clone(), &upow(4 * k), idx(2, i + k)));
            assert!(commutes_as(&c, idx(2, i), &upow(2 * k + 1), one.clone(), &upow(4 * k + 3), idx(1, i + k + 1)));
        }
    }
    let theta: Vec<Cyclotomic> = (0..9).map(|a| int(&s, (a % 3 == 0) as i64)).collect();
    assert_eq!(c.theta, theta);
    let b = c.braiding();
    let swaps = [[0, 2, 1], [2, 1, 0], [1, 0, 2]];
    for x in 0..3 {
        for i in 0..3i64 {
            for a in 0..3 {
                for j in 0..3i64 {
                    let want = one_term(idx(swaps[x][a], -j), idx(x, i - j), one.clone());
                    assert_eq!(psi(&b, idx(x, i), idx(a, j)), want);
                }
            }
        }
    }
    assert_eq!(s_class(&s, -1).dim, 9);
}

#[test]
fn six_dim_calculus_on_the_double() {
    let s = setup("double_s3");
    let c = viii(&s);
    let one = int(&s, 1);
    let m = |w: &str| el(&s, w);
    let bras = ["s", "us", "u^2s", "s", "us", "u^2s"];
    assert_eq!(c.datum.bra, bras.iter().map(|w| m(w)).collect::<Vec<_>>());
    for i in 0..6usize {
        let after_s = match i {
            0 => 3,
            3 => 0,
            _ => (6 - i) % 6,
        };
        assert!(commutes_as(&c, i, "S", one.clone(), "S", after_s), "e{i} s");
        let after_u = match i {
            2 => 0,
            5 => 3,
            _ => i + 1,
        };
        assert!(commutes_as(&c, i, "U", one.clone(), "U", after_u), "e{i} u");
    }
    let (q1, q2) = (q(&s, 2), q(&s, 4));
    let zero = int(&s, 0);
    assert_eq!(c.theta, vec![one.clone(), q1.clone(), q2.clone(), zero.clone(), zero.clone(), zero]);
    let theta = c.theta_form();
    for (i, u) in ["e", "U", "U^2"].iter().enumerate() {
        let k = &q(&s, 4 * i as i64) - &one;
        assert_eq!(c.d(&g(&c, u)), scale(&times(&c, &g(&c, u), &theta), &k));
    }
    let b = c.braiding();
    // Ψ(e_i⊗e_j) = q^k e_{π(j)}⊗e_i, by residue of i mod 3
    let tables: [[(usize, i64); 6]; 3] = [
        [(0, 0), (2, 1), (1, 2), (3, 0), (5, 2), (4, 1)],
        [(2, 2), (1, 0), (0, 1), (5, 1), (4, 0), (3, 2)],
        [(1, 1), (0, 2), (2, 0), (4, 2), (3, 1), (5, 0)],
    ];
    for i in 0..6 {
        for j in 0..6 {
            let (p, k) = tables[i % 3][j];
            assert_eq!(psi(&b, i, j), one_term(p, i, q(&s, 2 * k)), "Ψ(e{i}⊗e{j})");
        }
    }
    assert_eq!(b, c.braiding_oracle());
}

#[test]
fn six_dim_calculus_differential_of_mixed_elements() {
    let s = setup("double_s3");
    let c = viii(&s);
    let theta = c.theta_form();
    let sg = g(&c, "S");
    for (i, u) in ["e", "U", "U^2"].iter().enumerate() {
        let i = i as i64;
        let us = c.alg.mul(&g(&c, u), &sg);
        let k = &q(&s, 4 * i) - &int(&s, 1);
        let mut want = scale(&times(&c, &us, &theta), &k);
        for (p, (x, y)) in [(0, (3, 0)), (1, (5, 1)), (2, (4, 2))] {
            let diff = sub(&e(&c, x), &e(&c, y));
            want = add(&want, &scale(&times(&c, &us, &diff), &q(&s, 2 * (2 * i + p))));
        }
        assert_eq!(c.d(&us), want, "d(u^{i}s)");
    }
}

#[test]
fn leibniz_on_generators() {
    let s = setup("double_s3");
    let c = viii(&s);
    let basis: Vec<usize> = (0..c.alg.dim()).step_by(5).collect();
    for &i in &basis {
        for &j in &basis {
            let (a, b) = (c.alg.basis(i), c.alg.basis(j));
            let lhs = c.d(&c.alg.mul(&a, &b));
            let rhs = add(&c.right_mul(&c.d(&a), &b), &c.left_mul(&a, &c.d(&b)));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn canonical_semidirect_on_the_codouble() {
    let s = setup("codouble_s3");
    let t = el(&s, "U");
    let d = canonical_semidirect(&s.cm, t).unwrap();
    assert_eq!(d.dim(), 4);
    let tr = canonical_semidirect(&s.cm, el(&s, "S")).unwrap();
    assert_eq!(tr.dim(), 9);
    assert!(canonical_semidirect(&s.cm, el(&s, "e")).is_err());
    assert!(canonical_semidirect(&setup("double_s3").cm, el(&setup("double_s3"), "u")).is_err());
}

#[test]
fn canonical_crossproduct_on_the_double() {
    let s = setup("double_s3");
    let class = [el(&s, "u"), el(&s, "u^2")];
    let d = canonical_crossproduct(&s.cm, &class).unwrap();
    let c = FirstOrderCalculus::new(&s.cm, d).unwrap();
    let one = int(&s, 1);
    for (a, &x) in class.iter().enumerate() {
        assert_eq!(c.datum.bra[a], s.f.x.inv(x));
        assert_eq!(c.datum.modg[a], s.f.x.identity());
        assert_eq!(c.theta[a], one);
    }
    for u in ["U", "S", "US"] {
        let ux = el(&s, u);
        for (a, &x) in class.iter().enumerate() {
            let conj = s.f.x.conj(x, ux);
            let b = class.iter().position(|&y| y == conj).unwrap();
            assert!(commutes_as(&c, a, u, one.clone(), u, b));
        }
    }
    assert!(canonical_crossproduct(&s.cm, &[el(&s, "u")]).is_err());
}

#[test]
fn codouble_closed_form_matches_engine() {
    use bicrossx_core::cartan::canonical_codouble_check;
    let s = setup("codouble_s3");
    for (t0, k) in [("U", 2), ("S", 3), ("US", 3)] {
        let rep = canonical_codouble_check(&s.cm, el(&s, t0)).unwrap();
        assert_eq!((rep.class_size, rep.dim), (k, k * k));
        assert!(rep.passed(), "{t0}: {:#?}", rep.diffs);
        assert!(rep.checked > 100);
    }
    let d = setup("double_s3");
    assert!(canonical_codouble_check(&d.cm, el(&d, "u")).is_err());
}

#[test]
fn function_algebra_recovers_class_calculus() {
    // G = {e}: e_a δ_s = δ_{sa⁻¹} e_a, dδ_s = Σ_a (δ_{sa⁻¹} − δ_s) e_a
    let s = setup("functions:(1 2),(1 2 3)");
    let r = s.cm.classify().unwrap();
    for d in &r.items {
        let c = FirstOrderCalculus::new(&s.cm, d.clone()).unwrap();
        let x = &s.f.x;
        for a in 0..c.dim {
            let class_elem = x.inv(c.datum.norm[a]);
            assert_eq!(c.datum.bra[a], class_elem);
            assert!(c.theta[a].is_one());
            for m in 0..x.order() {
                let star = c.star(m);
                let b = c.datum.norm.iter().position(|&z| z == x.conj(c.datum.norm[a], m)).unwrap();
                assert!(star[(a, b)].is_one());
            }
        }
        for (si, &sx) in s.f.m_elems().iter().enumerate() {
            let mut want = c.zero_form();
            for a in 0..c.dim {
                let t = s.f.m_index(x.mul(sx, x.inv(c.datum.bra[a]))).unwrap();
                want[c.alg.index(t, 0) * c.dim + a] += &int(&s, 1);
                want[c.alg.index(si, 0) * c.dim + a] -= &int(&s, 1);
            }
            assert_eq!(c.d(&c.alg.delta(si)), want);
        }
    }
}

#[test]
fn group_algebra_recovers_flip_braiding() {
    // M = {e}: Ψ is the flip and du = u(θ∗u − θ)
    let s = setup("group:(1 2),(1 2 3)");
    let r = s.cm.classify().unwrap();
    assert!(!r.items.is_empty());
    for d in &r.items {
        let c = FirstOrderCalculus::new(&s.cm, d.clone()).unwrap();
        let b = c.braiding();
        for x in 0..c.dim {
            for y in 0..c.dim {
                assert_eq!(b.entry(x, y), one_term(y, x, int(&s, 1)));
            }
        }
        for (ui, _) in s.f.g_elems().iter().enumerate() {
            let u = c.alg.group(ui);
            let ux = s.f.g_elems()[ui];
            let theta_u: Vec<Cyclotomic> = c.star(ux).vec_mul(&c.theta);
            let want = c.left_mul(&u, &sub(&c.invariant_form(&theta_u), &c.theta_form()));
            assert_eq!(c.d(&u), want);
        }
    }
}

#[test]
fn braiding_agrees_with_oracle_on_all_classified_calculi() {
    for name in ["s3_as_z2z3", "z6_s3", "double_s3", "codouble_s3"] {
        let s = setup(name);
        for d in s.cm.classify().unwrap().items {
            let c = FirstOrderCalculus::new(&s.cm, d).unwrap();
            assert_eq!(c.braiding(), c.braiding_oracle(), "{name}");
        }
    }
}

#[test]
fn braid_relation_and_theta_invariance() {
    let s = setup("double_s3");
    let c = viii(&s);
    let b = c.braiding();
    let n = c.dim;
    let p = b.to_matrix();
    let id = bicrossx_exact::ExactMatrix::identity(c.n, n);
    let p12 = p.kron(&id);
    let p23 = id.kron(&p);
    let lhs = p12.mul(&p23).unwrap().mul(&p12).unwrap();
    let rhs = p23.mul(&p12).unwrap().mul(&p23).unwrap();
    assert_eq!(lhs, rhs);
    assert!(p.rank() == n * n);
    for x in 0..n {
        let mut v = vec![Cyclotomic::zero(c.n); n * n];
        for (a, t) in c.theta.iter().enumerate() {
            v[x * n + a] = t.clone();
        }
        let mut w = vec![Cyclotomic::zero(c.n); n * n];
        for (a, t) in c.theta.iter().enumerate() {
            w[a * n + x] = t.clone();
        }
        assert_eq!(b.apply(&v), w);
    }
}

