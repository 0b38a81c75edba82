//! The canonical X-crossed module on kX, the set Z with its classes, and the
//! classification of irreducible quantum tangent spaces.

use std::sync::Arc;

use bicrossx_exact::{Cyclotomic, ExactMatrix};

use crate::error::{CoreError, Result};
use crate::groups::{ConjugacyClass, Factorization};
use crate::rep::{GroupRep, IsoClass, Submodule};

/// kX as an X-graded right X-module: ‖vt‖ = v⁻¹t⁻¹v and
/// vt⊴us = (s̃▷vu)(s̃ts̃⁻¹) with s̃ = s⁻¹◁(vu)⁻¹.
#[derive(Clone, Debug)]
pub struct CrossedModule {
    pub fact: Arc<Factorization>,
    grading: Vec<usize>,
    action: Vec<usize>,
}

impl CrossedModule {
    pub fn new(fact: Arc<Factorization>) -> Result<Self> {
        let x = &fact.x;
        let n = x.order();
        let mut grading = vec![0; n];
        let mut action = vec![0; n * n];
        for w in 0..n {
            let (v, t) = fact.gm_factor(w);
            grading[w] = x.mul_all(&[x.inv(v), x.inv(t), v]);
            for y in 0..n {
                let (u, s) = fact.gm_factor(y);
                let vu = x.mul(v, u);
                let st = fact.tle(x.inv(s), x.inv(vu));
                let left = fact.tri(st, vu);
                let right = x.mul_all(&[st, t, x.inv(st)]);
                action[w * n + y] = x.mul(left, right);
            }
        }
        let cm = CrossedModule { fact, grading, action };
        cm.verify()?;
        Ok(cm)
    }

    pub fn order(&self) -> usize { self.grading.len() }

    /// ‖w‖ for a basis element w ∈ X.
    pub fn grading(&self, w: usize) -> usize { self.grading[w] }

    /// w⊴y on basis elements.
    pub fn act(&self, w: usize, y: usize) -> usize { self.action[w * self.order() + y] }

    /// v⊴y for a vector in kX.
    pub fn act_vec(&self, v: &[Cyclotomic], y: usize) -> Vec<Cyclotomic> {
        let mut out = vec![Cyclotomic::zero(v[0].conductor()); v.len()];
        for (w, c) in v.iter().enumerate() {
            if !c.is_zero() {
                out[self.act(w, y)] = c.clone();
            }
        }
        out
    }

    /// Right action law and ‖w⊴x‖ = x⁻¹‖w‖x, exhaustively.
    pub fn verify(&self) -> Result<()> {
        let x = &self.fact.x;
        let n = self.order();
        for w in 0..n {
            if self.act(w, 0) != w {
                return Err(CoreError::Invariant(format!("{}⊴e ≠ {}", self.fact.label(w), self.fact.label(w))));
            }
            for y in 0..n {
                let wy = self.act(w, y);
                if self.grading(wy) != x.conj(self.grading(w), y) {
                    return Err(CoreError::Invariant(format!("grading is not equivariant at w={}, x={}", self.fact.label(w), self.fact.label(y))));
                }
                for z in 0..n {
                    if self.act(wy, z) != self.act(w, x.mul(y, z)) {
                        return Err(CoreError::Invariant("⊴ is not a right action".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// Z = image of the grading, and its X-classes ordered by (size, smallest member).
    pub fn compute_z(&self) -> (Vec<usize>, Vec<ConjugacyClass>) {
        let mut z: Vec<usize> = self.grading.clone();
        z.sort_unstable();
        z.dedup();
        let mut classes: Vec<ConjugacyClass> = self.fact.x.conjugacy_classes().into_iter().filter(|c| z.contains(&c.representative)).collect();
        classes.sort_by_key(|c| (c.len(), c.representative));
        (z, classes)
    }

    /// 𝓝⁻¹(z), sorted.
    pub fn fiber(&self, z: usize) -> Vec<usize> { (0..self.order()).filter(|&w| self.grading[w] == z).collect() }

    /// For each member z of the class of z₀, the first x with x⁻¹z₀x = z.
    pub fn zbar_map(&self, class: &ConjugacyClass, z0: usize) -> Vec<(usize, usize)> {
        let x = &self.fact.x;
        class.members.iter().map(|&z| (z, (0..x.order()).find(|&y| x.conj(z0, y) == z).expect("z lies in the class of z0"))).collect()
    }

    /// The right action of the centralizer of z₀ on J_{z₀} = k𝓝⁻¹(z₀).
    pub fn fiber_rep(&self, z0: usize) -> Result<(Vec<usize>, GroupRep)> {
        let fiber = self.fiber(z0);
        let x0 = self.fact.x.centralizer(z0);
        let pos = |w: usize| fiber.binary_search(&w).expect("centralizer preserves the fiber");
        let rep = GroupRep::permutation(&self.fact.x, self.fact.conductor(), x0, fiber.len(), |i, g| pos(self.act(fiber[i], g)))?;
        Ok((fiber, rep))
    }

    /// Π(vt) = t⊗δ_v − δ_{v,e}·1 in H coordinates (index pos(t)·|G| + pos(v)).
    pub fn pi_project(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let f = &*self.fact;
        let ng = f.g_elems().len();
        let n = v.first().map_or(1, Cyclotomic::conductor);
        let mut out = vec![Cyclotomic::zero(n); ng * f.m_elems().len()];
        for (w, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (g, t) = f.gm_factor(w);
            out[f.m_index(t).unwrap() * ng + f.g_index(g).unwrap()] += c;
            if g == 0 {
                for u in 0..ng {
                    out[u] -= c;
                }
            }
        }
        out
    }

    /// Irreducible quantum tangent spaces, one per (class, isomorphism class).
    pub fn classify(&self) -> Result<ClassificationReport> {
        let (z, classes) = self.compute_z();
        let n = self.fact.conductor();
        let mut items = Vec::new();
        let mut fibers = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            let z0 = class.representative;
            let (fiber, rep) = self.fiber_rep(z0)?;
            fibers.push(fiber.len());
            let iso = rep.decompose(&self.fact.x)?;
            let mut j = 0;
            for ic in &iso {
                // the component spanned by Σ_{u∈G} u has zero Π-image and is not a calculus
                let Some(k) = ic.copies.iter().position(|c| !self.pi_kills(&fiber, c)) else { continue };
                j += 1;
                let m0 = embed_rows(n, self.order(), &fiber, &ic.copies[k]);
                let mut datum = TangentDatum::from_orbit(self, format!("C{}R{}", ci + 1, j), class.clone(), z0, m0, ic.multiplicity())?;
                if ic.multiplicity() > 1 {
                    let family = self.copy_family(&rep, &iso, ic, k)?;
                    datum.copy_family = family.iter().filter(|c| !self.pi_kills(&fiber, c)).map(|c| embed_rows(n, self.order(), &fiber, c)).collect();
                }
                items.push(datum);
            }
        }
        Ok(ClassificationReport { z, classes, fiber_dims: fibers, items })
    }

    /// Irreducible copies spun from w + c·φ(w), c = 0, 1, −1, 2, −2, 3, −3, where w is
    /// the first basis vector of copy `k` and φ sums nonzero module maps into
    /// the other copies of the class.
    fn copy_family(&self, rep: &GroupRep, iso: &[IsoClass], ic: &IsoClass, k: usize) -> Result<Vec<Submodule>> {
        let n = rep.conductor();
        let all: Vec<&Submodule> = iso.iter().flat_map(|c| c.copies.iter()).collect();
        let basis = ExactMatrix::from_rows(n, rep.dim(), all.iter().flat_map(|c| c.basis.row_vecs()).collect());
        let bt = basis.transpose();
        let w = ic.copies[k].basis.row(0).to_vec();
        let comm = rep.commutant_basis();
        let mut phi = vec![Cyclotomic::zero(n); rep.dim()];
        for (i, other) in ic.copies.iter().enumerate() {
            if i == k {
                continue;
            }
            let offset: usize = all.iter().take_while(|c| !std::ptr::eq(**c, other)).map(|c| c.dim()).sum();
            for c in &comm {
                let y = c.vec_mul(&w);
                let coords = bt.solve(&y)?.ok_or_else(|| CoreError::Invalid("copies do not span the fiber".into()))?;
                let part = ExactMatrix::from_rows(n, rep.dim(), other.basis.row_vecs()).vec_mul(&coords[offset..offset + other.dim()]);
                if part.iter().any(|x| !x.is_zero()) {
                    for (p, x) in phi.iter_mut().zip(&part) {
                        *p += x;
                    }
                    break;
                }
            }
        }
        let mut out = Vec::new();
        for c in [0, 1, -1, 2, -2, 3, -3] {
            let c = Cyclotomic::from_int(n, c);
            let v: Vec<Cyclotomic> = w.iter().zip(&phi).map(|(a, b)| a + &(b * &c)).collect();
            let sub = rep.spin(&v)?;
            if sub.dim() != ic.dim {
                return Err(CoreError::Invalid("copy family left the isomorphism class".into()));
            }
            out.push(sub);
        }
        Ok(out)
    }

    fn pi_kills(&self, fiber: &[usize], sub: &Submodule) -> bool {
        let n = sub.basis.conductor();
        embed_rows(n, self.order(), fiber, sub).row_vecs().iter().all(|r| self.pi_project(r).iter().all(Cyclotomic::is_zero))
    }
}

/// Rows of a submodule of k𝓝⁻¹(z) as vectors in kX.
fn embed_rows(n: u32, order: usize, fiber: &[usize], sub: &Submodule) -> ExactMatrix {
    let rows = sub
        .basis
        .row_vecs()
        .into_iter()
        .map(|r| {
            let mut v = vec![Cyclotomic::zero(n); order];
            for (i, c) in r.into_iter().enumerate() {
                v[fiber[i]] = c;
            }
            v
        })
        .collect();
    ExactMatrix::from_rows(n, order, rows)
}

/// MG factorization of a grading: z = s·u gives (⟨·⟩, |·|) = (s⁻¹, u).
pub fn mg_factor_grading(f: &Factorization, z: usize) -> (usize, usize) {
    let (s, u) = f.mg_factor(z);
    (f.x.inv(s), u)
}

/// One irreducible quantum tangent space with its f-basis and bigradings.
#[derive(Clone, Debug)]
pub struct TangentDatum {
    pub id: String,
    pub class: ConjugacyClass,
    pub z0: usize,
    /// (z, z̄) pairs with z = z̄⁻¹z₀z̄.
    pub zbar: Vec<(usize, usize)>,
    pub x0: Vec<usize>,
    /// Basis of 𝓜₀ ⊂ kX.
    pub m0: ExactMatrix,
    /// Multiplicity of 𝓜₀'s isomorphism class inside J_{z₀}.
    pub multiplicity: usize,
    /// For multiplicity > 1: candidate copies of 𝓜₀ in kX, the canonical one first.
    pub copy_family: Vec<ExactMatrix>,
    /// Index into `copy_family` of the copy in use.
    pub copy: usize,
    /// f_a as vectors in kX, ordered z-major.
    pub f: Vec<Vec<Cyclotomic>>,
    pub norm: Vec<usize>,
    pub bra: Vec<usize>,
    pub modg: Vec<usize>,
    pub c: Vec<Cyclotomic>,
    pub conductor: u32,
}

impl TangentDatum {
    /// 𝓜 = ⊕_z 𝓜₀⊴z̄ with f_{iz} = f_i⊴z̄.
    pub fn from_orbit(cm: &CrossedModule, id: String, class: ConjugacyClass, z0: usize, m0: ExactMatrix, multiplicity: usize) -> Result<Self> {
        let zbar = cm.zbar_map(&class, z0);
        let mut f = Vec::new();
        for &(_, zb) in &zbar {
            for r in m0.row_vecs() {
                f.push(cm.act_vec(&r, zb));
            }
        }
        let mut d = Self::from_f_basis(cm, f)?;
        d.id = id;
        d.class = class;
        d.z0 = z0;
        d.zbar = zbar;
        d.m0 = m0;
        d.multiplicity = multiplicity;
        Ok(d)
    }

    /// A datum from an explicit homogeneous basis of a ⊴-stable subspace of kX.
    pub fn from_f_basis(cm: &CrossedModule, f: Vec<Vec<Cyclotomic>>) -> Result<Self> {
        let fact = &*cm.fact;
        let n = fact.conductor();
        let f: Vec<Vec<Cyclotomic>> = f.into_iter().map(|v| v.into_iter().map(|c| if c.conductor() == n { Ok(c) } else { c.embed(n) }).collect::<std::result::Result<Vec<_>, _>>()).collect::<std::result::Result<_, _>>()?;
        if f.is_empty() {
            return Err(CoreError::Invalid("empty f-basis".into()));
        }
        let mut norm = Vec::new();
        for v in &f {
            let degs: Vec<usize> = (0..v.len()).filter(|&w| !v[w].is_zero()).map(|w| cm.grading(w)).collect();
            if degs.is_empty() || degs.iter().any(|&d| d != degs[0]) {
                return Err(CoreError::Invalid("f-basis vectors must be nonzero and homogeneous".into()));
            }
            norm.push(degs[0]);
        }
        let mut bra = Vec::new();
        let mut modg = Vec::new();
        let mut c = Vec::new();
        for (a, &z) in norm.iter().enumerate() {
            let (b, m) = mg_factor_grading(fact, z);
            bra.push(b);
            modg.push(m);
            c.push(f[a][b].clone());
        }
        let z0 = norm[0];
        let class = ConjugacyClass { representative: *fact.x.conjugacy_class(z0).first().unwrap(), members: fact.x.conjugacy_class(z0) };
        let x0 = fact.x.centralizer(z0);
        let m0 = ExactMatrix::from_rows(n, fact.x.order(), f.iter().zip(&norm).filter(|(_, &z)| z == z0).map(|(v, _)| v.clone()).collect());
        Ok(TangentDatum { id: String::new(), class, z0, zbar: Vec::new(), x0, m0, multiplicity: 1, copy_family: Vec::new(), copy: 0, f, norm, bra, modg, c, conductor: n })
    }

    pub fn dim(&self) -> usize { self.f.len() }

    /// Dimension of 𝓜₀.
    pub fn m0_dim(&self) -> usize { self.m0.rows() }
}

#[derive(Clone, Debug)]
pub struct ClassificationReport {
    pub z: Vec<usize>,
    pub classes: Vec<ConjugacyClass>,
    /// |𝓝⁻¹(z₀)| per class.
    pub fiber_dims: Vec<usize>,
    pub items: Vec<TangentDatum>,
}

impl ClassificationReport {
    pub fn dims(&self) -> Vec<usize> { self.items.iter().map(TangentDatum::dim).collect() }

    pub fn item(&self, id: &str) -> Option<&TangentDatum> { self.items.iter().find(|d| d.id == id) }
}
