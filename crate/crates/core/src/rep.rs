//! Representations of subgroups of X over Q(ζ_N): spinning, Maschke
//! complements, commutants, isotypic splitting and decomposition.

use std::cmp::Ordering;

use bicrossx_exact::{factor_poly, Cyclotomic, ExactMatrix, Insert, Polynomial, Rational, RowEchelon};

use crate::error::{CoreError, Result};
use crate::groups::FiniteGroup;

/// Cap on commutant elements tried while splitting an isotypic component.
pub const SPLIT_CANDIDATES: usize = 200;

/// A right representation on row vectors: v ↦ v·ρ(g), with ρ(g)ρ(h) = ρ(gh).
#[derive(Clone, Debug)]
pub struct GroupRep {
    n: u32,
    dim: usize,
    /// X indices of the acting subgroup, sorted.
    elements: Vec<usize>,
    /// Positions (into `elements`) of a generating set.
    gens: Vec<usize>,
    /// Position of each element's inverse.
    inv: Vec<usize>,
    mats: Vec<ExactMatrix>,
}

/// Positions of a greedy generating set for a subgroup listed by X indices.
fn generating_positions(x: &FiniteGroup, elements: &[usize]) -> Vec<usize> {
    let mut gens = Vec::new();
    let mut span: Vec<usize> = vec![0];
    for (i, &g) in elements.iter().enumerate() {
        if span.contains(&g) {
            continue;
        }
        gens.push(i);
        let ids: Vec<usize> = gens.iter().map(|&p| elements[p]).collect();
        span = x.subgroup_bfs(&ids);
    }
    gens
}

impl GroupRep {
    /// Representation from one matrix per listed subgroup element.
    /// `elements` must be sorted X indices of a subgroup.
    pub fn new(x: &FiniteGroup, elements: Vec<usize>, mats: Vec<ExactMatrix>) -> Result<Self> {
        let dim = mats.first().map_or(0, ExactMatrix::rows);
        let n = mats.first().map_or(1, ExactMatrix::conductor);
        if mats.len() != elements.len() {
            return Err(CoreError::Invalid("one matrix per group element is required".into()));
        }
        let gens = generating_positions(x, &elements);
        let inv = elements.iter().map(|&g| elements.binary_search(&x.inv(g)).expect("acting set closed under inverses")).collect();
        Ok(GroupRep { n, dim, elements, gens, inv, mats })
    }

    /// Permutation representation from a right action on `points` indices.
    pub fn permutation(x: &FiniteGroup, n: u32, elements: Vec<usize>, dim: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let mats = elements
            .iter()
            .map(|&g| {
                let mut m = ExactMatrix::zeros(n, dim, dim);
                for i in 0..dim {
                    m[(i, act(i, g))] = Cyclotomic::one(n);
                }
                m
            })
            .collect();
        Self::new(x, elements, mats)
    }

    /// Right regular representation of a whole group.
    pub fn regular(x: &FiniteGroup, n: u32) -> Self {
        let all: Vec<usize> = (0..x.order()).collect();
        Self::permutation(x, n, all, x.order(), |i, g| x.mul(i, g)).expect("regular representation")
    }

    pub fn dim(&self) -> usize { self.dim }

    pub fn conductor(&self) -> u32 { self.n }

    pub fn elements(&self) -> &[usize] { &self.elements }

    pub fn matrix(&self, pos: usize) -> &ExactMatrix { &self.mats[pos] }

    pub fn matrix_of(&self, g: usize) -> Option<&ExactMatrix> { self.elements.binary_search(&g).ok().map(|p| &self.mats[p]) }

    pub fn generator_matrices(&self) -> impl Iterator<Item = &ExactMatrix> { self.gens.iter().map(|&p| &self.mats[p]) }

    /// Exhaustive homomorphism check.
    pub fn verify(&self, x: &FiniteGroup) -> Result<()> {
        for (i, &g) in self.elements.iter().enumerate() {
            if g == 0 && !self.mats[i].is_identity() {
                return Err(CoreError::Invariant("ρ(e) is not the identity".into()));
            }
            for (j, &h) in self.elements.iter().enumerate() {
                let gh = self.matrix_of(x.mul(g, h)).ok_or_else(|| CoreError::Invariant("acting set is not closed".into()))?;
                if &self.mats[i].mul(&self.mats[j])? != gh {
                    return Err(CoreError::Invariant("ρ(g)ρ(h) ≠ ρ(gh)".into()));
                }
            }
        }
        Ok(())
    }

    /// The representation restricted to an invariant subspace, in the
    /// coordinates of its RREF basis.
    pub fn restrict(&self, sub: &Submodule) -> Result<GroupRep> {
        let b = &sub.basis;
        let k = b.rows();
        let mut mats = Vec::with_capacity(self.mats.len());
        for m in &self.mats {
            let img = b.mul(m)?;
            let mut r = ExactMatrix::zeros(self.n, k, k);
            for i in 0..k {
                let coords = sub.coordinates(img.row(i)).ok_or_else(|| CoreError::Invariant("subspace is not invariant".into()))?;
                for (j, c) in coords.into_iter().enumerate() {
                    r[(i, j)] = c;
                }
            }
            mats.push(r);
        }
        Ok(GroupRep { n: self.n, dim: k, elements: self.elements.clone(), gens: self.gens.clone(), inv: self.inv.clone(), mats })
    }

    /// Character values, one per listed element.
    pub fn character(&self) -> Vec<Cyclotomic> {
        self.mats
            .iter()
            .map(|m| {
                let mut t = Cyclotomic::zero(self.n);
                for i in 0..m.rows() {
                    t += &m[(i, i)];
                }
                t
            })
            .collect()
    }

    /// Smallest invariant subspace containing `v`.
    pub fn spin(&self, v: &[Cyclotomic]) -> Result<Submodule> {
        if v.iter().all(Cyclotomic::is_zero) {
            return Err(CoreError::Invalid("cannot spin the zero vector".into()));
        }
        let mut ech = RowEchelon::new(self.n, self.dim);
        let mut queue = vec![v.to_vec()];
        ech.insert(v);
        while let Some(w) = queue.pop() {
            for m in self.generator_matrices() {
                let img = m.vec_mul(&w);
                if let Insert::Added(_) = ech.insert(&img) {
                    queue.push(img);
                }
            }
        }
        Ok(Submodule::from_rows(self.n, self.dim, ech.rows().to_vec()))
    }

    /// Invariant complement of an invariant subspace by averaging a projection.
    pub fn invariant_complement(&self, u: &Submodule) -> Result<Submodule> {
        let k = u.dim();
        if k == self.dim {
            return Ok(Submodule::zero(self.n, self.dim));
        }
        if k == 0 {
            return Ok(Submodule::whole(self.n, self.dim));
        }
        // v·P = Σ_k v[pivot_k]·B_k projects onto U along the non-pivot coordinates.
        let mut p = ExactMatrix::zeros(self.n, self.dim, self.dim);
        for (r, &piv) in u.pivots.iter().enumerate() {
            for j in 0..self.dim {
                p[(piv, j)] = u.basis[(r, j)].clone();
            }
        }
        let mut avg = ExactMatrix::zeros(self.n, self.dim, self.dim);
        for (i, m) in self.mats.iter().enumerate() {
            let term = self.mats[self.inv[i]].mul(&p)?.mul(m)?;
            avg = avg.add(&term)?;
        }
        let avg = avg.scale(&Cyclotomic::from_rational(self.n, Rational::new(1, self.mats.len() as i64)));
        let kernel = avg.transpose().kernel_basis();
        Ok(Submodule::from_rows(self.n, self.dim, kernel.row_vecs()))
    }

    /// Basis of the commutant {C : ρ(g)C = Cρ(g)}.
    pub fn commutant_basis(&self) -> Vec<ExactMatrix> {
        let d = self.dim;
        let n = self.n;
        let mut ech = RowEchelon::new(n, d * d);
        for m in self.generator_matrices() {
            for i in 0..d {
                for j in 0..d {
                    // (ρC − Cρ)_{ij} = Σ_k ρ_{ik} C_{kj} − C_{ik} ρ_{kj}
                    let mut row = vec![Cyclotomic::zero(n); d * d];
                    for k in 0..d {
                        if !m[(i, k)].is_zero() {
                            row[k * d + j] += &m[(i, k)];
                        }
                        if !m[(k, j)].is_zero() {
                            row[i * d + k] -= &m[(k, j)];
                        }
                    }
                    if row.iter().any(|c| !c.is_zero()) {
                        ech.insert(&row);
                    }
                }
            }
        }
        let kernel = ech.to_matrix().kernel_basis();
        kernel.row_vecs().into_iter().map(|r| ExactMatrix::from_rows(n, d, r.chunks(d).map(<[_]>::to_vec).collect())).collect()
    }

    /// Decomposition into irreducibles grouped by isomorphism class.
    pub fn decompose(&self, x: &FiniteGroup) -> Result<Vec<IsoClass>> {
        let pieces = self.isotypic_components(x)?;
        let mut classes = Vec::new();
        for piece in pieces {
            let local = self.restrict(&piece)?;
            let mut parts = Vec::new();
            local.split_irreducible(&Submodule::whole(self.n, piece.dim()), &mut parts, &mut 0)?;
            let copies: Vec<Submodule> = parts.into_iter().map(|p| piece.lift(&p)).collect();
            let irr_dim = copies[0].dim();
            classes.push(IsoClass { isotypic: piece, copies, dim: irr_dim });
        }
        classes.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| compare_bases(&b.isotypic, &a.isotypic)));
        Ok(classes)
    }

    /// Joint refinement by kernels of irreducible factors of central class-sum operators.
    pub fn isotypic_components(&self, x: &FiniteGroup) -> Result<Vec<Submodule>> {
        let mut pieces = vec![Submodule::whole(self.n, self.dim)];
        if self.dim == 0 {
            return Ok(Vec::new());
        }
        for class in self.classes(x) {
            let mut sum = ExactMatrix::zeros(self.n, self.dim, self.dim);
            for &p in &class {
                sum = sum.add(&self.mats[p])?;
            }
            let mut next = Vec::new();
            for piece in pieces {
                if piece.dim() == 1 {
                    next.push(piece);
                    continue;
                }
                let op = restrict_operator(&sum, &piece)?;
                let mp = op.minimal_polynomial();
                let factored = factor_poly(&mp)?;
                if factored.factors.len() == 1 {
                    next.push(piece);
                    continue;
                }
                for (f, _) in &factored.factors {
                    let k = op.eval_poly(f).transpose().kernel_basis();
                    let sub = Submodule::from_rows(self.n, piece.dim(), k.row_vecs());
                    next.push(piece.lift(&sub));
                }
            }
            pieces = next;
        }
        Ok(pieces)
    }

    /// Position lists of the conjugacy classes of the acting subgroup.
    fn classes(&self, x: &FiniteGroup) -> Vec<Vec<usize>> {
        let mut done = vec![false; self.elements.len()];
        let mut out = Vec::new();
        for i in 0..self.elements.len() {
            if done[i] {
                continue;
            }
            let mut class = Vec::new();
            for &h in &self.elements {
                let c = x.conj(self.elements[i], h);
                let p = self.elements.binary_search(&c).expect("subgroup closed under conjugation");
                if !done[p] {
                    done[p] = true;
                    class.push(p);
                }
            }
            out.push(class);
        }
        out
    }

    /// Split an invariant subspace (local coordinates) into irreducibles.
    fn split_irreducible(&self, space: &Submodule, out: &mut Vec<Submodule>, tried: &mut usize) -> Result<()> {
        let local = self.restrict(space)?;
        let comm = local.commutant_basis();
        if comm.len() <= 1 {
            out.push(space.clone());
            return Ok(());
        }
        let kernel = local.splitting_kernel(&comm, tried).ok_or_else(|| CoreError::SplittingExhausted { component: space.basis.clone() })?;
        let first = kernel.row(0).to_vec();
        let s = local.spin(&first)?;
        let w = local.invariant_complement(&s)?;
        self.split_irreducible(&space.lift(&s), out, tried)?;
        self.split_irreducible(&space.lift(&w), out, tried)
    }

    /// Kernel of a polynomial in some commutant element that is a proper nonzero subspace.
    fn splitting_kernel(&self, comm: &[ExactMatrix], tried: &mut usize) -> Option<ExactMatrix> {
        let d = self.dim;
        for cand in commutant_candidates(comm, self.n) {
            if *tried >= SPLIT_CANDIDATES {
                return None;
            }
            *tried += 1;
            let mp = cand.minimal_polynomial();
            let Ok(fac) = factor_poly(&mp) else { continue };
            let poly: Polynomial = match fac.factors.as_slice() {
                [] => continue,
                [(_, 1)] => continue,
                [(p, _)] => p.clone(),
                [(p, m), ..] => p.pow(*m),
            };
            let k = cand.eval_poly(&poly).transpose().kernel_basis();
            if k.rows() > 0 && k.rows() < d {
                return Some(k);
            }
        }
        None
    }
}

/// Commutant basis elements, then small integer combinations of pairs.
fn commutant_candidates(comm: &[ExactMatrix], n: u32) -> Vec<ExactMatrix> {
    let mut out: Vec<ExactMatrix> = comm.iter().skip(1).cloned().collect();
    out.extend(comm.iter().take(1).cloned());
    for k in 1..=3i64 {
        for i in 0..comm.len() {
            for j in i + 1..comm.len() {
                let c = Cyclotomic::from_int(n, k);
                out.push(comm[i].add(&comm[j].scale(&c)).unwrap());
                out.push(comm[i].sub(&comm[j].scale(&c)).unwrap());
            }
        }
    }
    out.truncate(SPLIT_CANDIDATES);
    out
}

/// The operator v ↦ v·T restricted to an invariant subspace, in its coordinates.
fn restrict_operator(t: &ExactMatrix, sub: &Submodule) -> Result<ExactMatrix> {
    let img = sub.basis.mul(t)?;
    let k = sub.dim();
    let mut r = ExactMatrix::zeros(t.conductor(), k, k);
    for i in 0..k {
        let c = sub.coordinates(img.row(i)).ok_or_else(|| CoreError::Invariant("operator does not preserve the subspace".into()))?;
        for (j, v) in c.into_iter().enumerate() {
            r[(i, j)] = v;
        }
    }
    Ok(r)
}

fn compare_bases(a: &Submodule, b: &Submodule) -> Ordering { a.basis.row_vecs().cmp(&b.basis.row_vecs()) }

/// An invariant subspace given by an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    pub basis: ExactMatrix,
    pub pivots: Vec<usize>,
}

impl Submodule {
    /// RREF of the span of the given rows.
    pub fn from_rows(n: u32, width: usize, rows: Vec<Vec<Cyclotomic>>) -> Self {
        let m = ExactMatrix::from_rows(n, width, rows);
        let (r, pivots) = m.rref();
        let rows: Vec<Vec<Cyclotomic>> = r.row_vecs().into_iter().take(pivots.len()).collect();
        Submodule { basis: ExactMatrix::from_rows(n, width, rows), pivots }
    }

    pub fn zero(n: u32, width: usize) -> Self { Submodule { basis: ExactMatrix::zeros(n, 0, width), pivots: Vec::new() } }

    pub fn whole(n: u32, width: usize) -> Self { Submodule { basis: ExactMatrix::identity(n, width), pivots: (0..width).collect() } }

    pub fn dim(&self) -> usize { self.basis.rows() }

    pub fn width(&self) -> usize { self.basis.cols() }

    /// Coordinates of `v` in the RREF basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Cyclotomic]) -> Option<Vec<Cyclotomic>> {
        let c: Vec<Cyclotomic> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.vec_mul(&c);
        (back.as_slice() == v).then_some(c)
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool { self.coordinates(v).is_some() }

    pub fn contains_module(&self, other: &Submodule) -> bool { other.basis.row_vecs().iter().all(|r| self.contains(r)) }

    /// Map a subspace given in this module's coordinates to ambient coordinates.
    pub fn lift(&self, local: &Submodule) -> Submodule {
        let rows = local.basis.row_vecs().iter().map(|c| self.basis.vec_mul(c)).collect();
        Submodule::from_rows(self.basis.conductor(), self.width(), rows)
    }
}

/// One isomorphism class inside a decomposition.
#[derive(Clone, Debug)]
pub struct IsoClass {
    /// The full isotypic component.
    pub isotypic: Submodule,
    /// Irreducible summands in the order the splitting produced them.
    pub copies: Vec<Submodule>,
    pub dim: usize,
}

impl IsoClass {
    pub fn multiplicity(&self) -> usize { self.copies.len() }

    /// The canonical representative: the first summand produced.
    pub fn representative(&self) -> &Submodule { &self.copies[0] }
}

/// Isomorphism of two submodules of representations of one group, by characters.
pub fn modules_isomorphic(r1: &GroupRep, w1: &Submodule, r2: &GroupRep, w2: &Submodule) -> Result<bool> {
    if w1.dim() != w2.dim() {
        return Ok(false);
    }
    Ok(r1.restrict(w1)?.character() == r2.restrict(w2)?.character())
}
