//! Structure-constant models of A = k(M)▶◁kG, H = kM▷◀k(G) and the quantum
//! double D(X), with axiom checks, the duality pairing, the isomorphism Θ
//! from D(H) and the equivariance of Π: kX → H⁺.
//!
//! All three algebras are monomial: a product of basis elements is a basis
//! element or zero, and coproducts, unit and antipode have 0/1 coefficients.
//! Structure constants are therefore stored as index tables, and every
//! identity reduces to an equality of multisets of basis indices.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use bicrossx_exact::{Cyclotomic, ExactMatrix};

use crate::error::{CoreError, Result};
use crate::groups::Factorization;
use crate::tangent::CrossedModule;

const ZERO: u32 = u32::MAX;

/// Basis sizes up to this bound get fully exhaustive triple checks.
const EXHAUSTIVE_DIM: usize = 256;

#[derive(Clone, Debug)]
pub struct StructureHopf {
    pub name: String,
    pub labels: Vec<String>,
    mul: Vec<u32>,
    unit: Vec<u32>,
    delta: Vec<Vec<(u32, u32)>>,
    counit: Vec<bool>,
    antipode: Vec<u32>,
    generators: Vec<usize>,
}

/// What [`StructureHopf::verify`] checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub name: String,
    pub dim: usize,
    pub identities: usize,
    /// Associativity and multiplicativity of Δ were checked against a
    /// generating set of basis elements in the last slot.
    pub generator_reduced: bool,
}

impl StructureHopf {
    pub fn dim(&self) -> usize { self.labels.len() }

    #[inline]
    pub fn mul_basis(&self, i: usize, j: usize) -> Option<usize> {
        let k = self.mul[i * self.dim() + j];
        (k != ZERO).then_some(k as usize)
    }

    /// 1 as a sum of basis elements.
    pub fn unit(&self) -> Vec<usize> { self.unit.iter().map(|&u| u as usize).collect() }

    pub fn coproduct(&self, i: usize) -> Vec<(usize, usize)> { self.delta[i].iter().map(|&(a, b)| (a as usize, b as usize)).collect() }

    pub fn counit(&self, i: usize) -> i64 { self.counit[i] as i64 }

    pub fn antipode(&self, i: usize) -> usize { self.antipode[i] as usize }

    /// μ(e_i⊗e_j) coefficient on e_k.
    pub fn product_coefficient(&self, i: usize, j: usize, k: usize) -> i64 { (self.mul_basis(i, j) == Some(k)) as i64 }

    /// Δ(e_i) coefficient on e_j⊗e_k.
    pub fn coproduct_coefficient(&self, i: usize, j: usize, k: usize) -> i64 { self.delta[i].iter().filter(|&&(a, b)| a as usize == j && b as usize == k).count() as i64 }

    pub fn unit_vec(&self) -> Vec<i64> {
        let mut v = vec![0; self.dim()];
        for &u in &self.unit {
            v[u as usize] += 1;
        }
        v
    }

    pub fn mul_vec(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in b.iter().enumerate().filter(|(_, y)| **y != 0) {
                if let Some(k) = self.mul_basis(i, j) {
                    out[k] += x * y;
                }
            }
        }
        out
    }

    pub fn antipode_vec(&self, a: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (i, &x) in a.iter().enumerate() {
            out[self.antipode(i)] += x;
        }
        out
    }

    /// k◁h = Σ S(h₍₁₎) k h₍₂₎.
    pub fn adjoint(&self, k: &[i64], h: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.dim()];
        for (i, &c) in h.iter().enumerate().filter(|(_, c)| **c != 0) {
            for &(a, b) in &self.delta[i] {
                let left = self.mul_vec(&basis_vec(self.dim(), self.antipode(a as usize)), k);
                let term = self.mul_vec(&left, &basis_vec(self.dim(), b as usize));
                for (o, t) in out.iter_mut().zip(term) {
                    *o += c * t;
                }
            }
        }
        out
    }

    fn last_slot(&self) -> (Vec<usize>, bool) {
        if self.dim() <= EXHAUSTIVE_DIM {
            ((0..self.dim()).collect(), false)
        } else {
            (self.generators.clone(), true)
        }
    }

    /// Every basis element is a product of the generating set.
    fn generators_span(&self) -> bool {
        let mut seen = vec![false; self.dim()];
        let mut queue: Vec<usize> = self.generators.clone();
        for &g in &queue {
            seen[g] = true;
        }
        while let Some(b) = queue.pop() {
            for &g in &self.generators {
                if let Some(k) = self.mul_basis(b, g) {
                    if !seen[k] {
                        seen[k] = true;
                        queue.push(k);
                    }
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// Associativity, unit, coassociativity, counit, Δ and ε algebra maps and
    /// both antipode identities on basis elements.
    pub fn verify(&self) -> Result<AxiomReport> {
        let n = self.dim();
        let fail = |what: &str, at: String| Err(CoreError::Invariant(format!("{}: {what} fails at {at}", self.name)));
        let mut identities = 0;
        let unit = self.unit();
        let (last, reduced) = self.last_slot();
        if reduced && !self.generators_span() {
            return fail("generating set", "closure".into());
        }

        for i in 0..n {
            let left: Vec<usize> = unit.iter().filter_map(|&u| self.mul_basis(u, i)).collect();
            let right: Vec<usize> = unit.iter().filter_map(|&u| self.mul_basis(i, u)).collect();
            if left != [i] || right != [i] {
                return fail("unit", self.labels[i].clone());
            }
            identities += 2;
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.mul_basis(i, j);
                for &k in &last {
                    let a = ij.and_then(|ij| self.mul_basis(ij, k));
                    let b = self.mul_basis(j, k).and_then(|jk| self.mul_basis(i, jk));
                    if a != b {
                        return fail("associativity", format!("{}, {}, {}", self.labels[i], self.labels[j], self.labels[k]));
                    }
                }
                identities += last.len();
                if (self.counit[i] && self.counit[j]) != ij.is_some_and(|k| self.counit[k]) {
                    return fail("ε multiplicative", format!("{}, {}", self.labels[i], self.labels[j]));
                }
                identities += 1;
            }
        }
        if unit.iter().filter(|&&u| self.counit[u]).count() != 1 {
            return fail("ε(1) = 1", String::new());
        }

        let mut d1: Vec<(u32, u32)> = unit.iter().flat_map(|&u| self.delta[u].iter().copied()).collect();
        let mut one_one: Vec<(u32, u32)> = self.unit.iter().flat_map(|&a| self.unit.iter().map(move |&b| (a, b))).collect();
        d1.sort_unstable();
        one_one.sort_unstable();
        if d1 != one_one {
            return fail("Δ(1) = 1⊗1", String::new());
        }
        identities += 2;

        for i in 0..n {
            let mut left: Vec<(u32, u32, u32)> = Vec::new();
            let mut right: Vec<(u32, u32, u32)> = Vec::new();
            let (mut eps_left, mut eps_right) = (Vec::new(), Vec::new());
            for &(a, b) in &self.delta[i] {
                right.extend(self.delta[b as usize].iter().map(|&(b1, b2)| (a, b1, b2)));
                left.extend(self.delta[a as usize].iter().map(|&(a1, a2)| (a1, a2, b)));
                if self.counit[a as usize] {
                    eps_left.push(b);
                }
                if self.counit[b as usize] {
                    eps_right.push(a);
                }
            }
            left.sort_unstable();
            right.sort_unstable();
            if left != right {
                return fail("coassociativity", self.labels[i].clone());
            }
            if eps_left != [i as u32] || eps_right != [i as u32] {
                return fail("counit", self.labels[i].clone());
            }
            let mut s_left: Vec<u32> = self.delta[i].iter().filter_map(|&(a, b)| self.mul_basis(self.antipode(a as usize), b as usize)).map(|k| k as u32).collect();
            let mut s_right: Vec<u32> = self.delta[i].iter().filter_map(|&(a, b)| self.mul_basis(a as usize, self.antipode(b as usize))).map(|k| k as u32).collect();
            let mut expected = if self.counit[i] { self.unit.clone() } else { Vec::new() };
            s_left.sort_unstable();
            s_right.sort_unstable();
            expected.sort_unstable();
            if s_left != expected || s_right != expected {
                return fail("antipode", self.labels[i].clone());
            }
            identities += 5;
        }

        for i in 0..n {
            for &j in &last {
                let mut lhs: Vec<(u32, u32)> = match self.mul_basis(i, j) {
                    Some(k) => self.delta[k].clone(),
                    None => Vec::new(),
                };
                let mut rhs: Vec<(u32, u32)> = Vec::new();
                for &(a1, a2) in &self.delta[i] {
                    for &(b1, b2) in &self.delta[j] {
                        if let (Some(c1), Some(c2)) = (self.mul_basis(a1 as usize, b1 as usize), self.mul_basis(a2 as usize, b2 as usize)) {
                            rhs.push((c1 as u32, c2 as u32));
                        }
                    }
                }
                lhs.sort_unstable();
                rhs.sort_unstable();
                if lhs != rhs {
                    return fail("Δ multiplicative", format!("{}, {}", self.labels[i], self.labels[j]));
                }
            }
            identities += last.len();
        }
        Ok(AxiomReport { name: self.name.clone(), dim: n, identities, generator_reduced: reduced })
    }
}

fn basis_vec(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

struct Tables {
    ng: usize,
    nm: usize,
    g: Vec<usize>,
    m: Vec<usize>,
}

impl Tables {
    fn new(f: &Factorization) -> Self { Tables { ng: f.g_elems().len(), nm: f.m_elems().len(), g: f.g_elems().to_vec(), m: f.m_elems().to_vec() } }

    fn idx(&self, f: &Factorization, s: usize, u: usize) -> u32 { (f.m_index(s).unwrap() * self.ng + f.g_index(u).unwrap()) as u32 }

    fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ { self.m.iter().flat_map(move |&s| self.g.iter().map(move |&u| (s, u))) }
}

/// A = k(M)▶◁kG on δ_s⊗u, indexed pos(s)·|G| + pos(u).
pub fn build_a(f: &Factorization) -> StructureHopf {
    let t = Tables::new(f);
    let x = &f.x;
    let dim = t.ng * t.nm;
    let mut mul = vec![ZERO; dim * dim];
    let mut delta = vec![Vec::new(); dim];
    let mut counit = vec![false; dim];
    let mut antipode = vec![0; dim];
    let labels = t.pairs().map(|(s, u)| format!("δ_{}⊗{}", f.m_name(f.m_index(s).unwrap()), f.g_name(f.g_index(u).unwrap()))).collect();
    for (s, u) in t.pairs() {
        let i = t.idx(f, s, u) as usize;
        for (r, v) in t.pairs() {
            if f.tle(s, u) == r {
                mul[i * dim + t.idx(f, r, v) as usize] = t.idx(f, s, x.mul(u, v));
            }
        }
        for &a in &t.m {
            let b = x.mul(x.inv(a), s);
            delta[i].push((t.idx(f, a, f.tri(b, u)), t.idx(f, b, u)));
        }
        counit[i] = s == 0;
        antipode[i] = t.idx(f, x.inv(f.tle(s, u)), x.inv(f.tri(s, u)));
    }
    let unit = t.m.iter().map(|&s| t.idx(f, s, 0)).collect();
    let generators = (0..dim).collect();
    StructureHopf { name: format!("A({})", f.name), labels, mul, unit, delta, counit, antipode, generators }
}

/// H = kM▷◀k(G) on t⊗δ_v, indexed pos(t)·|G| + pos(v).
pub fn build_h(f: &Factorization) -> StructureHopf {
    let t = Tables::new(f);
    let x = &f.x;
    let dim = t.ng * t.nm;
    let mut mul = vec![ZERO; dim * dim];
    let mut delta = vec![Vec::new(); dim];
    let mut counit = vec![false; dim];
    let mut antipode = vec![0; dim];
    let labels = t.pairs().map(|(s, u)| format!("{}⊗δ_{}", f.m_name(f.m_index(s).unwrap()), f.g_name(f.g_index(u).unwrap()))).collect();
    for (s, u) in t.pairs() {
        let i = t.idx(f, s, u) as usize;
        for (r, v) in t.pairs() {
            if u == f.tri(r, v) {
                mul[i * dim + t.idx(f, r, v) as usize] = t.idx(f, x.mul(s, r), v);
            }
        }
        for &a in &t.g {
            let b = x.mul(x.inv(a), u);
            delta[i].push((t.idx(f, s, a), t.idx(f, f.tle(s, a), b)));
        }
        counit[i] = u == 0;
        antipode[i] = t.idx(f, x.inv(f.tle(s, u)), x.inv(f.tri(s, u)));
    }
    let unit = t.g.iter().map(|&u| t.idx(f, 0, u)).collect();
    let generators = (0..dim).collect();
    StructureHopf { name: format!("H({})", f.name), labels, mul, unit, delta, counit, antipode, generators }
}

/// D(X) = k(X)⋊kX on δ_x⊗y, indexed x·|X| + y.
pub fn build_dx(f: &Factorization) -> StructureHopf {
    let x = &f.x;
    let n = x.order();
    let dim = n * n;
    let mut mul = vec![ZERO; dim * dim];
    let mut delta = vec![Vec::new(); dim];
    let mut counit = vec![false; dim];
    let mut antipode = vec![0; dim];
    let mut labels = Vec::with_capacity(dim);
    for a in 0..n {
        for y in 0..n {
            let i = a * n + y;
            labels.push(format!("δ_{}⊗{}", f.label(a), f.label(y)));
            let c = x.conj(a, y);
            for b in 0..n {
                mul[i * dim + c * n + b] = (a * n + x.mul(y, b)) as u32;
            }
            for p in 0..n {
                let q = x.mul(x.inv(p), a);
                delta[i].push(((p * n + y) as u32, (q * n + y) as u32));
            }
            counit[i] = a == 0;
            antipode[i] = (x.conj(x.inv(a), y) * n + x.inv(y)) as u32;
        }
    }
    let unit = (0..n).map(|a| (a * n) as u32).collect();
    let mut gens: Vec<usize> = x.generators().to_vec();
    gens.push(0);
    let generators = (0..n).flat_map(|a| gens.iter().map(move |&g| a * n + g)).collect();
    StructureHopf { name: format!("D({})", f.name), labels, mul, unit, delta, counit, antipode, generators }
}

/// ⟨a, h⟩ as an integer matrix, rows indexed by A and columns by H.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualityPairing {
    pub rows: usize,
    pub cols: usize,
    pub matrix: Vec<i64>,
}

impl DualityPairing {
    pub fn get(&self, a: usize, h: usize) -> i64 { self.matrix[a * self.cols + h] }

    pub fn rank(&self, conductor: u32) -> usize { ExactMatrix::from_fn(conductor, self.rows, self.cols, |i, j| Cyclotomic::from_int(conductor, self.get(i, j))).rank() }

    fn eval(&self, a: &[i64], h: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| **x != 0) {
            for (j, &y) in h.iter().enumerate().filter(|(_, y)| **y != 0) {
                s += x * y * self.get(i, j);
            }
        }
        s
    }

    /// ⟨ab, h⟩ = ⟨a⊗b, Δh⟩, ⟨Δa, h⊗g⟩ = ⟨a, hg⟩, units against counits and
    /// ⟨Sa, h⟩ = ⟨a, Sh⟩ on all basis elements.
    pub fn verify(&self, a: &StructureHopf, h: &StructureHopf) -> Result<usize> {
        let fail = |what: &str| Err(CoreError::Invariant(format!("pairing of {} with {}: {what}", a.name, h.name)));
        let (na, nh) = (a.dim(), h.dim());
        let mut checks = 0;
        for x in 0..na {
            for y in 0..na {
                let xy = a.mul_basis(x, y);
                for k in 0..nh {
                    let lhs = xy.map_or(0, |p| self.get(p, k));
                    let rhs: i64 = h.delta[k].iter().map(|&(k1, k2)| self.get(x, k1 as usize) * self.get(y, k2 as usize)).sum();
                    if lhs != rhs {
                        return fail(&format!("⟨ab,h⟩ at {}, {}, {}", a.labels[x], a.labels[y], h.labels[k]));
                    }
                }
                checks += nh;
            }
        }
        for k in 0..nh {
            for l in 0..nh {
                let kl = h.mul_basis(k, l);
                for x in 0..na {
                    let lhs: i64 = a.delta[x].iter().map(|&(x1, x2)| self.get(x1 as usize, k) * self.get(x2 as usize, l)).sum();
                    let rhs = kl.map_or(0, |p| self.get(x, p));
                    if lhs != rhs {
                        return fail(&format!("⟨Δa,h⊗g⟩ at {}, {}, {}", a.labels[x], h.labels[k], h.labels[l]));
                    }
                }
                checks += na;
            }
        }
        let (ua, uh) = (a.unit_vec(), h.unit_vec());
        for k in 0..nh {
            if self.eval(&ua, &basis_vec(nh, k)) != h.counit(k) {
                return fail("⟨1,h⟩ = ε(h)");
            }
        }
        for x in 0..na {
            if self.eval(&basis_vec(na, x), &uh) != a.counit(x) {
                return fail("⟨a,1⟩ = ε(a)");
            }
            for k in 0..nh {
                if self.get(a.antipode(x), k) != self.get(x, h.antipode(k)) {
                    return fail("⟨Sa,h⟩ = ⟨a,Sh⟩");
                }
            }
        }
        Ok(checks + nh + na * (nh + 1))
    }
}

/// ⟨δ_s⊗u, t⊗δ_v⟩ = δ_{s,t}δ_{u,v}.
pub fn pairing(f: &Factorization) -> DualityPairing {
    let dim = f.g_elems().len() * f.m_elems().len();
    let mut matrix = vec![0; dim * dim];
    for i in 0..dim {
        matrix[i * dim + i] = 1;
    }
    DualityPairing { rows: dim, cols: dim, matrix }
}

/// A basis element δ_s⊗u⊗t⊗δ_v of D(H) = H*ᵒᵖ⋈H, as elements of X.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DhBasis {
    pub s: usize,
    pub u: usize,
    pub t: usize,
    pub v: usize,
}

/// Θ(δ_s⊗u⊗t⊗δ_v) = δ_{u⁻¹s⁻¹(t▷v)u} ⊗ u⁻¹(t◁v), as (x, y) for δ_x⊗y.
pub fn theta(f: &Factorization, b: DhBasis) -> (usize, usize) {
    let x = &f.x;
    let DhBasis { s, u, t, v } = b;
    let point = x.mul_all(&[x.inv(u), x.inv(s), f.tri(t, v), u]);
    (point, x.mul(x.inv(u), f.tle(t, v)))
}

/// Θ⁻¹(δ_{su}⊗tv) = δ_{s⁻¹◁(t▷v)} ⊗ (t▷v)⁻¹ ⊗ (t◁α) ⊗ δ_{α⁻¹v} with
/// α = t⁻¹▷u⁻¹(s⁻¹t▷v), where su and tv are MG-factorizations.
pub fn theta_inverse(f: &Factorization, point: usize, y: usize) -> DhBasis {
    let x = &f.x;
    let (s, u) = f.mg_factor(point);
    let (t, v) = f.mg_factor(y);
    let tv = f.tri(t, v);
    let alpha = f.tri(x.inv(t), x.mul(x.inv(u), f.tri(x.mul(x.inv(s), t), v)));
    DhBasis { s: f.tle(x.inv(s), tv), u: x.inv(tv), t: f.tle(t, alpha), v: x.mul(x.inv(alpha), v) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaReport {
    pub basis_checked: usize,
    /// Θ is a bijection of basis labels.
    pub bijective: bool,
    /// Labels where the closed-form inverse disagrees with the inverse of Θ.
    pub inverse_mismatches: Vec<(DhBasis, (usize, usize))>,
    pub unit_preserved: bool,
}

impl ThetaReport {
    pub fn passed(&self) -> bool { self.bijective && self.inverse_mismatches.is_empty() && self.unit_preserved }
}

fn dh_basis(f: &Factorization) -> Vec<DhBasis> {
    let mut out = Vec::new();
    for &s in f.m_elems() {
        for &u in f.g_elems() {
            for &t in f.m_elems() {
                for &v in f.g_elems() {
                    out.push(DhBasis { s, u, t, v });
                }
            }
        }
    }
    out
}

/// Θ against its closed-form inverse on every basis label, and Θ(1) = 1 where
/// 1 = Σ δ_s⊗e⊗e⊗δ_v.
pub fn verify_theta_iso(f: &Factorization) -> ThetaReport {
    let n = f.x.order();
    let basis = dh_basis(f);
    let mut hit = vec![false; n * n];
    let mut inverse_mismatches = Vec::new();
    for &b in &basis {
        let (p, y) = theta(f, b);
        hit[p * n + y] = true;
        if theta_inverse(f, p, y) != b {
            inverse_mismatches.push((b, (p, y)));
        }
    }
    let mut image: Vec<(usize, usize)> = f.m_elems().iter().flat_map(|&s| f.g_elems().iter().map(move |&v| (s, v))).map(|(s, v)| theta(f, DhBasis { s, u: 0, t: 0, v })).collect();
    image.sort_unstable();
    let unit_preserved = image == (0..n).map(|p| (p, 0)).collect::<Vec<_>>();
    ThetaReport { basis_checked: basis.len(), bijective: hit.iter().all(|&h| h), inverse_mismatches, unit_preserved }
}

/// Π(w) as an integer vector in H.
pub fn pi_vec(cm: &CrossedModule, h: &StructureHopf, w: usize) -> Vec<i64> {
    let f = &*cm.fact;
    let ng = f.g_elems().len();
    let (v, t) = f.gm_factor(w);
    let mut out = basis_vec(h.dim(), f.m_index(t).unwrap() * ng + f.g_index(v).unwrap());
    if v == 0 {
        for (o, u) in out.iter_mut().zip(h.unit_vec()) {
            *o -= u;
        }
    }
    out
}

/// Checks Π(w⊴̃Θ(φ)) = Π(w)◁φ for the listed (w, φ), where φ = δ_s⊗u⊗t⊗δ_v
/// acts on H⁺ first by the coregular action of δ_s⊗u, k ↦ k₍₁₎⟨k₍₂₎,a⟩ − ⟨a,k⟩1,
/// then by the right quantum adjoint action of t⊗δ_v. Returns the failures.
pub fn pi_equivariance_failures(cm: &CrossedModule, samples: &[(usize, DhBasis)]) -> Vec<(usize, DhBasis)> {
    let f = &*cm.fact;
    let h = build_h(f);
    let a = build_a(f);
    let pair = pairing(f);
    let t = Tables::new(f);
    let dim = h.dim();
    let mut failures = Vec::new();
    for &(w, phi) in samples {
        let (point, y) = theta(f, phi);
        let lhs = if cm.grading(w) == point { pi_vec(cm, &h, cm.act(w, y)) } else { vec![0; dim] };
        let k = pi_vec(cm, &h, w);
        let ai = t.idx(f, phi.s, phi.u) as usize;
        let mut co = vec![0; dim];
        for (i, &c) in k.iter().enumerate().filter(|(_, c)| **c != 0) {
            for &(k1, k2) in &h.delta[i] {
                co[k1 as usize] += c * pair.get(ai, k2 as usize);
            }
        }
        let pk = pair.eval(&basis_vec(a.dim(), ai), &k);
        for (o, u) in co.iter_mut().zip(h.unit_vec()) {
            *o -= pk * u;
        }
        let rhs = h.adjoint(&co, &basis_vec(dim, t.idx(f, phi.t, phi.v) as usize));
        if lhs != rhs {
            failures.push((w, phi));
        }
    }
    failures
}

/// Deterministic sample of (w, φ) pairs, every pair when |X|³ is small.
pub fn equivariance_samples(f: &Factorization, count: usize) -> Vec<(usize, DhBasis)> {
    let basis = dh_basis(f);
    let n = f.x.order();
    let total = n * basis.len();
    if total <= count {
        return (0..n).flat_map(|w| basis.iter().map(move |&b| (w, b))).collect();
    }
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15 ^ total as u64;
    (0..count)
        .map(|_| {
            state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
            let r = (state >> 17) as usize % total;
            (r / basis.len(), basis[r % basis.len()])
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfVerification {
    pub reports: Vec<AxiomReport>,
    pub pairing_rank: usize,
    pub pairing_checks: usize,
    pub theta: ThetaReport,
    pub equivariance_checked: usize,
}

fn digest(f: &Factorization) -> u64 {
    let mut hasher = std::hash::DefaultHasher::new();
    let n = f.x.order();
    n.hash(&mut hasher);
    for a in 0..n {
        for b in 0..n {
            f.x.mul(a, b).hash(&mut hasher);
        }
    }
    f.g_elems().hash(&mut hasher);
    f.m_elems().hash(&mut hasher);
    hasher.finish()
}

/// Hopf axioms for A, H, D(X), the pairing, Θ and Π equivariance, cached by a
/// digest of the Cayley table and the two subgroups.
pub fn verify_all(f: &Factorization, cm: &CrossedModule, samples: usize) -> Result<HopfVerification> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), HopfVerification>>> = OnceLock::new();
    let key = (digest(f), samples);
    if let Some(hit) = CACHE.get_or_init(Default::default).lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let (a, h, d) = (build_a(f), build_h(f), build_dx(f));
    let reports = vec![a.verify()?, h.verify()?, d.verify()?];
    let pair = pairing(f);
    let pairing_checks = pair.verify(&a, &h)?;
    let pairing_rank = pair.rank(f.conductor());
    if pairing_rank != a.dim() {
        return Err(CoreError::Invariant(format!("pairing is degenerate: rank {pairing_rank} < {}", a.dim())));
    }
    let theta = verify_theta_iso(f);
    let chosen = equivariance_samples(f, samples);
    let failures = pi_equivariance_failures(cm, &chosen);
    if let Some((w, phi)) = failures.first() {
        return Err(CoreError::Invariant(format!("Π is not equivariant at w = {}, φ = {phi:?} ({} failures)", f.label(*w), failures.len())));
    }
    let out = HopfVerification { reports, pairing_rank, pairing_checks, theta, equivariance_checked: chosen.len() };
    CACHE.get_or_init(Default::default).lock().unwrap().insert(key, out.clone());
    Ok(out)
}
