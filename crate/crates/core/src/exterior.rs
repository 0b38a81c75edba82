//! The braided exterior algebra Λ from the antisymmetrizers A_n, the complex
//! Ω = A⊗Λ with the inner differential, and de Rham cohomology.

use std::collections::HashMap;

use bicrossx_exact::{Cyclotomic, SparseEchelon, SparseRref, SparseVec};

use crate::cartan::{Braiding, FirstOrderCalculus};

pub const DEFAULT_MAX_DEGREE: usize = 4;
pub const DEFAULT_TENSOR_BOUND: usize = 10_000;

/// Λⁿ as the quotient of (Λ¹)^⊗n by ker A_n. Representatives are the pivot
/// tensors of RREF(A_n); the coordinates of a tensor e_T are column T.
#[derive(Clone, Debug)]
pub struct LambdaDegree {
    pub degree: usize,
    pub rref: SparseRref,
    cols: Vec<SparseVec>,
}

impl LambdaDegree {
    fn new(degree: usize, rref: SparseRref) -> Self {
        let cols = rref.columns();
        LambdaDegree { degree, rref, cols }
    }

    pub fn dim(&self) -> usize { self.rref.rank() }

    /// Tensor multi-index (base dim Λ¹, most significant first) of each basis element.
    pub fn pivots(&self) -> &[usize] { &self.rref.pivots }

    pub fn width(&self) -> usize { self.rref.width }

    /// Λⁿ coordinates of the basis tensor e_T.
    pub fn reduce_basis(&self, t: usize) -> &SparseVec { &self.cols[t] }

    /// Λⁿ coordinates of a tensor.
    pub fn reduce(&self, v: &[(usize, Cyclotomic)]) -> SparseVec {
        let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
        for (t, x) in v {
            for (i, c) in &self.cols[*t] {
                *acc.entry(*i).or_insert_with(|| Cyclotomic::zero(self.rref.n)) += &(x * c);
            }
        }
        sorted(acc)
    }

    /// Basis of ker A_n read off the RREF: e_T − Σ_i R_{iT} e_{p_i} for each
    /// non-pivot T.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let n = self.rref.n;
        let mut is_pivot = vec![false; self.width()];
        for &p in self.pivots() {
            is_pivot[p] = true;
        }
        (0..self.width())
            .filter(|&t| !is_pivot[t])
            .map(|t| {
                let mut v: SparseVec = self.cols[t].iter().map(|(i, c)| (self.pivots()[*i], -c)).collect();
                v.push((t, Cyclotomic::one(n)));
                v.sort_by_key(|e| e.0);
                v
            })
            .collect()
    }
}

fn sorted(acc: HashMap<usize, Cyclotomic>) -> SparseVec {
    let mut v: SparseVec = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
    v.sort_by_key(|e| e.0);
    v
}

/// Why the degree sequence stopped.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stop {
    /// Reached the requested maximum degree.
    MaxDegree,
    /// Λⁿ = 0 at the given degree, so Λ is finite.
    Vanished(usize),
    /// The tensor space at this degree exceeds the bound.
    Truncated(usize),
}

#[derive(Clone, Debug)]
pub struct Exterior {
    pub n: u32,
    pub rank1: usize,
    psi_rows: Vec<SparseVec>,
    pub degrees: Vec<LambdaDegree>,
    pub stop: Stop,
}

impl Exterior {
    /// Λ⁰ … Λ^max_degree, stopping early when Λⁿ = 0 or dⁿ > tensor_bound.
    pub fn new(psi: &Braiding, max_degree: usize, tensor_bound: usize) -> Self {
        let (n, d) = (psi.n, psi.dim);
        let mut psi_rows = vec![Vec::new(); d * d];
        for (j, col) in psi.cols.iter().enumerate() {
            for (i, c) in col {
                psi_rows[*i].push((j, c.clone()));
            }
        }
        let one = Cyclotomic::one(n);
        let mut ext = Exterior { n, rank1: d, psi_rows, degrees: Vec::new(), stop: Stop::MaxDegree };
        ext.degrees.push(LambdaDegree::new(0, SparseRref { n, width: 1, pivots: vec![0], rows: vec![vec![(0, one.clone())]] }));
        if max_degree == 0 {
            return ext;
        }
        if d == 0 {
            ext.stop = Stop::Vanished(1);
            return ext;
        }
        ext.degrees.push(LambdaDegree::new(1, SparseRref { n, width: d, pivots: (0..d).collect(), rows: (0..d).map(|a| vec![(a, one.clone())]).collect() }));
        for deg in 2..=max_degree {
            let width = match d.checked_pow(deg as u32) {
                Some(w) if w <= tensor_bound => w,
                _ => {
                    ext.stop = Stop::Truncated(deg);
                    return ext;
                },
            };
            let prev = &ext.degrees[deg - 1];
            let block = prev.width();
            let mut ech = SparseEchelon::new(n, width);
            for i in 0..d {
                for r in &prev.rref.rows {
                    let w: SparseVec = r.iter().map(|(t, c)| (i * block + t, c.clone())).collect();
                    ech.insert(&ext.antisymmetrize(deg, &w));
                }
            }
            let level = LambdaDegree::new(deg, ech.into_rref());
            let vanished = level.dim() == 0;
            ext.degrees.push(level);
            if vanished {
                ext.stop = Stop::Vanished(deg);
                return ext;
            }
        }
        ext
    }

    /// w·[n,−Ψ] = Σ_k (−1)^k w Ψ₁₂Ψ₂₃⋯Ψ_{k,k+1} for a row vector w.
    fn antisymmetrize(&self, deg: usize, w: &SparseVec) -> SparseVec {
        let d = self.rank1;
        let mut total: HashMap<usize, Cyclotomic> = HashMap::new();
        let mut cur: SparseVec = w.clone();
        for (t, c) in &cur {
            *total.entry(*t).or_insert_with(|| Cyclotomic::zero(self.n)) += c;
        }
        for k in 1..deg {
            // Ψ acting at tensor positions k−1, k (0-based from the left)
            let stride = d.pow((deg - k - 1) as u32);
            let mut next: HashMap<usize, Cyclotomic> = HashMap::new();
            for (t, c) in &cur {
                let pair = (t / stride) % (d * d);
                let base = t - pair * stride;
                for (j, p) in &self.psi_rows[pair] {
                    *next.entry(base + j * stride).or_insert_with(|| Cyclotomic::zero(self.n)) += &(c * p);
                }
            }
            cur = sorted(next);
            let odd = k % 2 == 1;
            for (t, c) in &cur {
                let e = total.entry(*t).or_insert_with(|| Cyclotomic::zero(self.n));
                if odd {
                    *e -= c;
                } else {
                    *e += c;
                }
            }
        }
        sorted(total)
    }

    /// [1, dim Λ¹, dim Λ², …] over the computed degrees.
    pub fn dims(&self) -> Vec<usize> { self.degrees.iter().map(LambdaDegree::dim).collect() }

    pub fn degree(&self, k: usize) -> Option<&LambdaDegree> { self.degrees.get(k) }

    /// Whether dim Λᵏ is known (computed, or zero past a vanishing degree).
    pub fn known(&self, k: usize) -> bool { k < self.degrees.len() || matches!(self.stop, Stop::Vanished(v) if k > v) }

    pub fn dim(&self, k: usize) -> Option<usize> {
        match self.degrees.get(k) {
            Some(l) => Some(l.dim()),
            None if self.known(k) => Some(0),
            None => None,
        }
    }

    /// λ_i ∧ μ_j for basis elements of Λᵖ and Λ^q.
    pub fn wedge_basis(&self, p: usize, i: usize, q: usize, j: usize) -> Option<SparseVec> {
        let (lp, lq) = (self.degrees.get(p)?, self.degrees.get(q)?);
        let Some(lr) = self.degrees.get(p + q) else {
            return self.known(p + q).then(Vec::new);
        };
        Some(lr.reduce_basis(lp.pivots()[i] * lq.width() + lq.pivots()[j]).clone())
    }

    /// λ ∧ μ in coordinates.
    pub fn wedge(&self, p: usize, lambda: &[(usize, Cyclotomic)], q: usize, mu: &[(usize, Cyclotomic)]) -> Option<SparseVec> {
        let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
        for (i, x) in lambda {
            for (j, y) in mu {
                for (k, c) in self.wedge_basis(p, *i, q, *j)? {
                    *acc.entry(k).or_insert_with(|| Cyclotomic::zero(self.n)) += &(&(x * y) * &c);
                }
            }
        }
        Some(sorted(acc))
    }

    /// A basis of the degree-two relations ker A₂ in e_a⊗e_b coordinates.
    pub fn quadratic_relations(&self) -> Vec<SparseVec> { self.degrees.get(2).map(LambdaDegree::kernel).unwrap_or_default() }
}

/// Ωⁿ = A⊗Λⁿ indexed (A index)·dim Λⁿ + k, with dω = θ∧ω − (−1)ⁿ ω∧θ.
pub struct DeRham<'a> {
    pub calc: &'a FirstOrderCalculus,
    pub ext: &'a Exterior,
    theta: SparseVec,
    /// θ·(δ_s⊗u) = Σ (A index, e_b, coefficient).
    theta_left: Vec<Vec<(usize, usize, Cyclotomic)>>,
}

impl<'a> DeRham<'a> {
    pub fn new(calc: &'a FirstOrderCalculus, ext: &'a Exterior) -> Self {
        let theta: SparseVec = calc.theta.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(a, c)| (a, c.clone())).collect();
        let theta_left = (0..calc.alg.dim())
            .map(|i| {
                let mut acc: HashMap<(usize, usize), Cyclotomic> = HashMap::new();
                for (a, c) in &theta {
                    let (p, row) = calc.commute(*a, i);
                    for (b, x) in row {
                        *acc.entry((*p, *b)).or_insert_with(|| Cyclotomic::zero(calc.n)) += &(c * x);
                    }
                }
                let mut v: Vec<(usize, usize, Cyclotomic)> = acc.into_iter().filter(|(_, x)| !x.is_zero()).map(|((p, b), x)| (p, b, x)).collect();
                v.sort_by_key(|e| (e.0, e.1));
                v
            })
            .collect();
        DeRham { calc, ext, theta, theta_left }
    }

    pub fn dim(&self, n: usize) -> Option<usize> { self.ext.dim(n).map(|k| k * self.calc.alg.dim()) }

    /// Rows of d: Ωⁿ → Ωⁿ⁺¹ (row r is the image of basis element r), when
    /// both degrees are known.
    pub fn d_rows(&self, n: usize) -> Option<Vec<SparseVec>> {
        let ln = self.ext.dim(n)?;
        let ln1 = self.ext.dim(n + 1)?;
        let da = self.calc.alg.dim();
        if ln1 == 0 {
            return Some(vec![Vec::new(); da * ln]);
        }
        let d1 = self.calc.dim;
        let left: Vec<Vec<SparseVec>> = (0..d1).map(|b| (0..ln).map(|k| self.ext.wedge_basis(1, b, n, k).unwrap()).collect()).collect();
        let right: Vec<SparseVec> = (0..ln).map(|k| self.ext.wedge(n, &[(k, Cyclotomic::one(self.calc.n))], 1, &self.theta).unwrap()).collect();
        let sign = if n % 2 == 0 { Cyclotomic::one(self.calc.n) } else { -Cyclotomic::one(self.calc.n) };
        let mut rows = Vec::with_capacity(da * ln);
        for i in 0..da {
            for k in 0..ln {
                let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
                for (p, b, c) in &self.theta_left[i] {
                    for (m, x) in &left[*b][k] {
                        *acc.entry(p * ln1 + m).or_insert_with(|| Cyclotomic::zero(self.calc.n)) += &(c * x);
                    }
                }
                for (m, x) in &right[k] {
                    *acc.entry(i * ln1 + m).or_insert_with(|| Cyclotomic::zero(self.calc.n)) -= &(&sign * x);
                }
                rows.push(sorted(acc));
            }
        }
        Some(rows)
    }

    /// d applied to a vector of Ωⁿ.
    pub fn apply_d(&self, n: usize, v: &[(usize, Cyclotomic)]) -> Option<SparseVec> {
        let rows = self.d_rows(n)?;
        Some(combine(self.calc.n, &rows, v))
    }

    /// (p⊗e_b)·(i⊗λ) for ω₁ ∈ Ω¹, ω ∈ Ωⁿ, commuting e_b past i.
    pub fn wedge_one(&self, n: usize, w1: &[(usize, Cyclotomic)], w: &[(usize, Cyclotomic)]) -> Option<SparseVec> {
        let (ln, ln1) = (self.ext.dim(n)?, self.ext.dim(n + 1)?);
        let d1 = self.calc.dim;
        let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
        for (x, cx) in w1 {
            let (p, b) = (x / d1, x % d1);
            for (y, cy) in w {
                let (i, k) = (y / ln, y % ln);
                let (q, row) = self.calc.commute(b, i);
                let Some(pq) = self.calc.alg.mul_basis(p, *q) else { continue };
                let cc = cx * cy;
                for (c, r) in row {
                    for (m, z) in self.ext.wedge_basis(1, *c, n, k)? {
                        *acc.entry(pq * ln1 + m).or_insert_with(|| Cyclotomic::zero(self.calc.n)) += &(&(&cc * r) * &z);
                    }
                }
            }
        }
        Some(sorted(acc))
    }

    /// a·ω for a ∈ A and ω ∈ Ωⁿ.
    pub fn left_mul(&self, n: usize, a: &[Cyclotomic], w: &[(usize, Cyclotomic)]) -> Option<SparseVec> {
        let ln = self.ext.dim(n)?;
        let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (y, c) in w {
                if let Some(p) = self.calc.alg.mul_basis(i, y / ln) {
                    *acc.entry(p * ln + y % ln).or_insert_with(|| Cyclotomic::zero(self.calc.n)) += &(x * c);
                }
            }
        }
        Some(sorted(acc))
    }

    pub fn rank_d(&self, n: usize) -> Option<usize> {
        let rows = self.d_rows(n)?;
        let width = self.dim(n + 1)?;
        let mut ech = SparseEchelon::new(self.calc.n, width.max(1));
        for r in &rows {
            ech.insert(r);
        }
        Some(ech.rank())
    }

    /// Whether d_{n+1}∘d_n vanishes.
    pub fn d_squared_vanishes(&self, n: usize) -> Option<bool> {
        let first = self.d_rows(n)?;
        let second = self.d_rows(n + 1)?;
        Some(first.iter().all(|r| combine(self.calc.n, &second, r).is_empty()))
    }

    /// The invariant form θ ∈ Ω¹.
    pub fn theta_form(&self) -> SparseVec { bicrossx_exact::sparse::to_sparse(&self.calc.theta_form()) }

    /// Whether an n-form lies in d(Ωⁿ⁻¹).
    pub fn is_exact(&self, n: usize, form: &[(usize, Cyclotomic)]) -> Option<bool> {
        if n == 0 {
            return Some(form.is_empty());
        }
        let mut ech = SparseEchelon::new(self.calc.n, self.dim(n)?.max(1));
        for r in self.d_rows(n - 1)? {
            ech.insert(&r);
        }
        Some(ech.contains(form))
    }

    /// Whether the given n-forms are closed and independent modulo exact forms.
    pub fn independent_classes(&self, n: usize, forms: &[SparseVec]) -> Option<bool> {
        if n > 0 && forms.iter().any(|f| self.apply_d(n, f).map(|v| !v.is_empty()).unwrap_or(true)) {
            return Some(false);
        }
        let width = self.dim(n)?;
        let mut ech = SparseEchelon::new(self.calc.n, width.max(1));
        if n > 0 {
            for r in self.d_rows(n - 1)? {
                ech.insert(&r);
            }
        }
        let base = ech.rank();
        for f in forms {
            ech.insert(f);
        }
        Some(ech.rank() == base + forms.len())
    }
}

fn combine(n: u32, rows: &[SparseVec], v: &[(usize, Cyclotomic)]) -> SparseVec {
    let mut acc: HashMap<usize, Cyclotomic> = HashMap::new();
    for (r, x) in v {
        for (j, y) in &rows[*r] {
            *acc.entry(*j).or_insert_with(|| Cyclotomic::zero(n)) += &(x * y);
        }
    }
    sorted(acc)
}

/// Betti numbers and the connectedness flags of one calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cohomology {
    pub lambda_dims: Vec<usize>,
    pub stop: Stop,
    /// rank d_n for each degree where it is determined.
    pub ranks: Vec<usize>,
    /// b_n for each fully determined degree.
    pub betti: Vec<usize>,
    pub h0_is_scalars: bool,
    pub theta_closed: bool,
    pub theta_exact: bool,
}

impl Cohomology {
    /// θ represents a nonzero class in H¹.
    pub fn theta_in_h1(&self) -> bool { self.theta_closed && !self.theta_exact }
}

/// Ranks of d and Betti numbers through `max_degree` (Λ is taken one degree
/// further when the bound allows, so b_max is determined).
pub fn cohomology(calc: &FirstOrderCalculus, max_degree: usize, tensor_bound: usize) -> Cohomology {
    let ext = Exterior::new(&calc.braiding(), max_degree + 1, tensor_bound);
    let dr = DeRham::new(calc, &ext);
    let mut ranks = Vec::new();
    let mut n = 0;
    while n <= max_degree {
        let Some(r) = dr.rank_d(n) else { break };
        ranks.push(r);
        if dr.ext.dim(n + 1) == Some(0) {
            break;
        }
        n += 1;
    }
    let mut betti = Vec::new();
    for (k, &r) in ranks.iter().enumerate() {
        let prev = if k == 0 { 0 } else { ranks[k - 1] };
        betti.push(dr.dim(k).unwrap() - r - prev);
    }
    let theta = dr.theta_form();
    let theta_closed = dr.apply_d(1, &theta).map(|v| v.is_empty()).unwrap_or(false);
    let theta_exact = dr.is_exact(1, &theta).unwrap_or(false);
    let mut lambda_dims = ext.dims();
    if max_degree + 1 < lambda_dims.len() {
        lambda_dims.truncate(max_degree + 1);
    }
    let stop = match ext.stop {
        Stop::Vanished(v) if v > max_degree => Stop::MaxDegree,
        Stop::Truncated(v) if v > max_degree => Stop::MaxDegree,
        s => s,
    };
    Cohomology { lambda_dims, stop, ranks, h0_is_scalars: betti.first() == Some(&1), betti, theta_closed, theta_exact }
}
