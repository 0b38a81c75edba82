//! Dense matrices over Q(ζ_N) with exact Gauss–Jordan elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::cyclotomic::Cyclotomic;
use crate::error::{ExactError, Result};
use crate::poly::Polynomial;

/// Row-major dense matrix; every entry shares the conductor `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    n: u32,
    rows: usize,
    cols: usize,
    data: Vec<Cyclotomic>,
}

/// Subtracts `f · src` from `dst` at the listed support positions.
fn axpy(dst: &mut [Cyclotomic], f: &Cyclotomic, src: &[Cyclotomic], support: &[usize]) {
    for &j in support {
        let t = f * &src[j];
        dst[j] -= &t;
    }
}

fn support(v: &[Cyclotomic]) -> Vec<usize> { v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, _)| j).collect() }

fn scale_row(v: &mut [Cyclotomic], s: &Cyclotomic) {
    for x in v.iter_mut() {
        if !x.is_zero() {
            *x = &*x * s;
        }
    }
}

/// Incrementally maintained reduced row-echelon basis of a row space.
///
/// With tracking enabled each stored row remembers the combination of
/// inserted vectors that produced it, so a vector that reduces to zero
/// yields an explicit linear dependence.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    n: u32,
    width: usize,
    rows: Vec<Vec<Cyclotomic>>,
    pivots: Vec<usize>,
    combos: Option<Vec<Vec<Cyclotomic>>>,
    inserted: usize,
}

/// Outcome of inserting a vector into a [`RowEchelon`].
#[derive(Clone, Debug)]
pub enum Insert {
    /// The vector was independent; the new pivot column is returned.
    Added(usize),
    /// The vector was dependent. With tracking, holds coefficients c with
    /// Σ c_i v_i = 0 over all inserted vectors, the last coefficient being 1.
    Dependent(Option<Vec<Cyclotomic>>),
}

impl RowEchelon {
    pub fn new(n: u32, width: usize) -> Self { RowEchelon { n, width, rows: Vec::new(), pivots: Vec::new(), combos: None, inserted: 0 } }

    pub fn with_tracking(n: u32, width: usize) -> Self { RowEchelon { combos: Some(Vec::new()), ..Self::new(n, width) } }

    pub fn rank(&self) -> usize { self.rows.len() }

    pub fn width(&self) -> usize { self.width }

    pub fn pivots(&self) -> &[usize] { &self.pivots }

    /// Reduces `v` against the stored rows, returning the residue.
    pub fn reduce(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy(&mut v, &f, row, &support(row));
            }
        }
        v
    }

    pub fn contains(&self, v: &[Cyclotomic]) -> bool { self.reduce(v).iter().all(Cyclotomic::is_zero) }

    pub fn insert(&mut self, v: &[Cyclotomic]) -> Insert {
        assert_eq!(v.len(), self.width, "vector length mismatch");
        let idx = self.inserted;
        self.inserted += 1;
        let mut v = v.to_vec();
        let mut combo = self.combos.as_ref().map(|_| {
            let mut c = vec![Cyclotomic::zero(self.n); idx + 1];
            c[idx] = Cyclotomic::one(self.n);
            c
        });
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if !v[p].is_zero() {
                let f = v[p].clone();
                axpy(&mut v, &f, row, &support(row));
                if let (Some(c), Some(cs)) = (combo.as_mut(), self.combos.as_ref()) {
                    let src = &cs[k];
                    for (j, s) in src.iter().enumerate() {
                        if !s.is_zero() {
                            let t = &f * s;
                            c[j] -= &t;
                        }
                    }
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Insert::Dependent(combo);
        };
        let inv = v[p].inv().unwrap();
        scale_row(&mut v, &inv);
        if let Some(c) = combo.as_mut() {
            scale_row(c, &inv);
        }
        let sup = support(&v);
        for k in 0..self.rows.len() {
            if !self.rows[k][p].is_zero() {
                let f = self.rows[k][p].clone();
                axpy(&mut self.rows[k], &f, &v, &sup);
                if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo.as_ref()) {
                    cs[k].resize(idx + 1, Cyclotomic::zero(self.n));
                    for (j, s) in c.iter().enumerate() {
                        if !s.is_zero() {
                            let t = &f * s;
                            cs[k][j] -= &t;
                        }
                    }
                }
            }
        }
        // keep rows ordered by pivot column
        let pos = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        if let (Some(cs), Some(c)) = (self.combos.as_mut(), combo) {
            cs.insert(pos, c);
        }
        Insert::Added(p)
    }

    /// The stored basis as an RREF matrix.
    pub fn to_matrix(&self) -> ExactMatrix { ExactMatrix::from_rows(self.n, self.width, self.rows.clone()) }

    pub fn rows(&self) -> &[Vec<Cyclotomic>] { &self.rows }
}

impl ExactMatrix {
    pub fn zeros(n: u32, rows: usize, cols: usize) -> Self { ExactMatrix { n, rows, cols, data: vec![Cyclotomic::zero(n); rows * cols] } }

    pub fn identity(n: u32, k: usize) -> Self {
        let mut m = Self::zeros(n, k, k);
        for i in 0..k {
            m[(i, i)] = Cyclotomic::one(n);
        }
        m
    }

    /// Builds a matrix from row vectors of length `cols`.
    pub fn from_rows(n: u32, cols: usize, rows: Vec<Vec<Cyclotomic>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row.into_iter().map(|c| if c.conductor() == n { c } else { c.embed(n).expect("entry conductor must divide the matrix conductor") }));
        }
        ExactMatrix { n, rows: r, cols, data }
    }

    pub fn from_fn(n: u32, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Cyclotomic) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { n, rows, cols, data }
    }

    pub fn conductor(&self) -> u32 { self.n }

    pub fn rows(&self) -> usize { self.rows }

    pub fn cols(&self) -> usize { self.cols }

    pub fn is_square(&self) -> bool { self.rows == self.cols }

    pub fn row(&self, i: usize) -> &[Cyclotomic] { &self.data[i * self.cols..(i + 1) * self.cols] }

    pub fn row_vecs(&self) -> Vec<Vec<Cyclotomic>> { (0..self.rows).map(|i| self.row(i).to_vec()).collect() }

    pub fn column(&self, j: usize) -> Vec<Cyclotomic> { (0..self.rows).map(|i| self[(i, j)].clone()).collect() }

    pub fn is_zero(&self) -> bool { self.data.iter().all(Cyclotomic::is_zero) }

    pub fn is_identity(&self) -> bool { self.is_square() && *self == Self::identity(self.n, self.rows) }

    pub fn nonzero_count(&self) -> usize { self.data.iter().filter(|x| !x.is_zero()).count() }

    fn check_conductor(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(ExactError::Shape(format!("conductor mismatch: {} vs {}", self.n, other.n)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        if self.cols != other.rows {
            return Err(ExactError::Shape(format!("cannot multiply {}x{} by {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        let mut out = Self::zeros(self.n, self.rows, other.cols);
        let other_support: Vec<Vec<usize>> = (0..other.rows).map(|k| support(other.row(k))).collect();
        for i in 0..self.rows {
            let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let src = &other.data[k * other.cols..(k + 1) * other.cols];
                for &j in &other_support[k] {
                    let t = a * &src[j];
                    dst[j] += &t;
                }
            }
        }
        Ok(out)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Cyclotomic, &Cyclotomic) -> Cyclotomic) -> Result<Self> {
        self.check_conductor(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(ExactError::Shape(format!("shape {}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(ExactMatrix { n: self.n, rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect() })
    }

    pub fn add(&self, other: &Self) -> Result<Self> { self.zip_with(other, |a, b| a + b) }

    pub fn sub(&self, other: &Self) -> Result<Self> { self.zip_with(other, |a, b| a - b) }

    pub fn scale(&self, s: &Cyclotomic) -> Self { ExactMatrix { data: self.data.iter().map(|x| x * s).collect(), ..self.clone() } }

    pub fn neg(&self) -> Self { ExactMatrix { data: self.data.iter().map(|x| -x).collect(), ..self.clone() } }

    pub fn transpose(&self) -> Self { Self::from_fn(self.n, self.cols, self.rows, |i, j| self[(j, i)].clone()) }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        let (r2, c2) = (other.rows, other.cols);
        Self::from_fn(self.n, self.rows * r2, self.cols * c2, |i, j| &self[(i / r2, j / c2)] * &other[(i % r2, j % c2)])
    }

    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        if self.cols != other.cols {
            return Err(ExactError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ExactMatrix { n: self.n, rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        self.check_conductor(other)?;
        if self.rows != other.rows {
            return Err(ExactError::Shape("hstack row mismatch".into()));
        }
        Ok(Self::from_fn(self.n, self.rows, self.cols + other.cols, |i, j| if j < self.cols { self[(i, j)].clone() } else { other[(i, j - self.cols)].clone() }))
    }

    /// Matrix times column vector.
    pub fn mul_vec(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Cyclotomic::zero(self.n);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn vec_mul(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        assert_eq!(v.len(), self.rows);
        let mut out = vec![Cyclotomic::zero(self.n); self.cols];
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in self.row(i).iter().enumerate() {
                if !b.is_zero() {
                    out[j] += &(a * b);
                }
            }
        }
        out
    }

    /// Reduced row-echelon form and its pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut rows = self.row_vecs();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..self.cols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][col].inv().unwrap();
            scale_row(&mut rows[r], &inv);
            let sup = support(&rows[r]);
            let (before, rest) = rows.split_at_mut(r);
            let (prow, after) = rest.split_first_mut().unwrap();
            for other in before.iter_mut().chain(after.iter_mut()) {
                if !other[col].is_zero() {
                    let f = other[col].clone();
                    axpy(other, &f, prow, &sup);
                }
            }
            pivots.push(col);
            r += 1;
        }
        (ExactMatrix::from_rows(self.n, self.cols, rows), pivots)
    }

    /// Rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<Cyclotomic>> = self.row_vecs().into_iter().filter(|r| r.iter().any(|x| !x.is_zero())).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == rows.len() {
                break;
            }
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
            rows.swap(rank, p);
            let inv = rows[rank][col].inv().unwrap();
            scale_row(&mut rows[rank], &inv);
            let sup: Vec<usize> = support(&rows[rank]);
            let (head, tail) = rows.split_at_mut(rank + 1);
            let prow = &head[rank];
            for other in tail.iter_mut() {
                if !other[col].is_zero() {
                    let f = other[col].clone();
                    axpy(other, &f, prow, &sup);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Basis of the right kernel {v : A v = 0}, as rows of an RREF matrix.
    pub fn kernel_basis(&self) -> ExactMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Cyclotomic::zero(self.n); self.cols];
            v[f] = Cyclotomic::one(self.n);
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(i, f)];
            }
            out.push(v);
        }
        let k = ExactMatrix::from_rows(self.n, self.cols, out);
        k.rref().0
    }

    /// Nonzero rows of the RREF.
    pub fn row_space(&self) -> ExactMatrix {
        let (r, p) = self.rref();
        ExactMatrix::from_rows(self.n, self.cols, r.row_vecs().into_iter().take(p.len()).collect())
    }

    /// Some x with A x = b, or `None` when inconsistent.
    pub fn solve(&self, b: &[Cyclotomic]) -> Result<Option<Vec<Cyclotomic>>> {
        if b.len() != self.rows {
            return Err(ExactError::Shape(format!("right-hand side has length {}, expected {}", b.len(), self.rows)));
        }
        let aug = self.hstack(&ExactMatrix::from_rows(self.n, 1, b.iter().map(|x| vec![x.clone()]).collect()))?;
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Cyclotomic::zero(self.n); self.cols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r[(i, self.cols)].clone();
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(ExactError::Shape("inverse of a non-square matrix".into()));
        }
        let k = self.rows;
        let aug = self.hstack(&Self::identity(self.n, k))?;
        let (r, pivots) = aug.rref();
        if pivots.len() < k || pivots[k - 1] != k - 1 {
            return Err(ExactError::Singular);
        }
        Ok(Self::from_fn(self.n, k, k, |i, j| r[(i, j + k)].clone()))
    }

    /// p(A) for a square matrix.
    pub fn eval_poly(&self, p: &Polynomial) -> Self {
        let mut acc = Self::zeros(self.n, self.rows, self.cols);
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(self).unwrap();
            for i in 0..self.rows {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Monic polynomial of least degree annihilating the matrix.
    pub fn minimal_polynomial(&self) -> Polynomial {
        assert!(self.is_square(), "minimal polynomial of a non-square matrix");
        let k = self.rows;
        let mut acc = Polynomial::one(self.n);
        let mut span = RowEchelon::new(self.n, k);
        for i in 0..k {
            let mut e = vec![Cyclotomic::zero(self.n); k];
            e[i] = Cyclotomic::one(self.n);
            if span.contains(&e) {
                continue;
            }
            // Krylov sequence e, eA, eA^2, ... until the first dependence
            let mut kry = RowEchelon::with_tracking(self.n, k);
            let mut v = e;
            loop {
                span.insert(&v);
                match kry.insert(&v) {
                    Insert::Added(_) => v = self.vec_mul(&v),
                    Insert::Dependent(c) => {
                        let rel = Polynomial::new(self.n, c.unwrap());
                        acc = acc.lcm(&rel);
                        break;
                    },
                }
            }
        }
        acc.monic()
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::identity(self.n, self.rows);
        for _ in 0..e {
            acc = acc.mul(self).unwrap();
        }
        acc
    }

    /// Re-expresses all entries at a larger conductor.
    pub fn embed(&self, m: u32) -> Result<Self> {
        Ok(ExactMatrix { n: m, rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.embed(m)).collect::<Result<_>>()? })
    }

    pub fn entries(&self) -> &[Cyclotomic] { &self.data }
}

impl Index<(usize, usize)> for ExactMatrix {
    type Output = Cyclotomic;

    fn index(&self, (i, j): (usize, usize)) -> &Cyclotomic { &self.data[i * self.cols + j] }
}

impl IndexMut<(usize, usize)> for ExactMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Cyclotomic { &mut self.data[i * self.cols + j] }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{} over Q(z{})]", self.rows, self.cols, self.n)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> ExactMatrix {
        ExactMatrix::from_rows(1, rows[0].len(), rows.iter().map(|r| r.iter().map(|&k| Cyclotomic::from_int(1, k)).collect()).collect())
    }

    #[test]
    fn tracked_dependence() {
        let mut e = RowEchelon::with_tracking(1, 2);
        let a = int_matrix(&[&[1, 2], &[3, 4], &[5, 6]]);
        assert!(matches!(e.insert(a.row(0)), Insert::Added(0)));
        assert!(matches!(e.insert(a.row(1)), Insert::Added(1)));
        let Insert::Dependent(Some(c)) = e.insert(a.row(2)) else { panic!("expected dependence") };
        let mut acc = vec![Cyclotomic::zero(1); 2];
        for (i, ci) in c.iter().enumerate() {
            for j in 0..2 {
                acc[j] += &(ci * &a[(i, j)]);
            }
        }
        assert!(acc.iter().all(Cyclotomic::is_zero));
        assert!(c[2].is_one());
    }

    #[test]
    fn inverse_roundtrip() {
        let a = int_matrix(&[&[2, 1], &[7, 4]]);
        assert!(a.mul(&a.inverse().unwrap()).unwrap().is_identity());
        assert_eq!(int_matrix(&[&[1, 2], &[2, 4]]).inverse(), Err(ExactError::Singular));
    }

    #[test]
    fn jordan_block_minimal_polynomial() {
        let a = int_matrix(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 3]]);
        let expect = &Polynomial::from_ints(1, &[-2, 1]).pow(2) * &Polynomial::from_ints(1, &[-3, 1]);
        assert_eq!(a.minimal_polynomial(), expect);
    }
}
