//! Sparse row echelon forms for wide, sparse systems over Q(ζ_N).

use crate::cyclotomic::Cyclotomic;

/// A sparse vector as (column, nonzero value) pairs in increasing column order.
pub type SparseVec = Vec<(usize, Cyclotomic)>;

const NONE: u32 = u32::MAX;

/// Row echelon basis built by leading-term reduction: each stored row is
/// monic at its pivot and has no entries left of it.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    n: u32,
    width: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<u32>,
    acc: Vec<Cyclotomic>,
}

impl SparseEchelon {
    pub fn new(n: u32, width: usize) -> Self { SparseEchelon { n, width, rows: Vec::new(), pivot_row: vec![NONE; width], acc: vec![Cyclotomic::zero(n); width] } }

    pub fn rank(&self) -> usize { self.rows.len() }

    pub fn width(&self) -> usize { self.width }

    /// Reduce `v` into the accumulator; returns the residue, leaving the
    /// accumulator zeroed.
    fn residue(&mut self, v: &[(usize, Cyclotomic)]) -> SparseVec {
        let Some(start) = v.iter().map(|(j, _)| *j).min() else { return Vec::new() };
        let mut touched: Vec<usize> = Vec::with_capacity(v.len());
        for (j, x) in v {
            assert!(*j < self.width, "column {j} out of range");
            self.acc[*j] += x;
            touched.push(*j);
        }
        let mut out = Vec::new();
        let mut hi = v.iter().map(|(j, _)| *j).max().unwrap();
        let mut c = start;
        while c <= hi {
            if !self.acc[c].is_zero() {
                let r = self.pivot_row[c];
                if r == NONE {
                    out.push((c, std::mem::replace(&mut self.acc[c], Cyclotomic::zero(self.n))));
                } else {
                    let f = std::mem::replace(&mut self.acc[c], Cyclotomic::zero(self.n));
                    for (j, y) in self.rows[r as usize].iter().skip(1) {
                        let t = &f * y;
                        self.acc[*j] -= &t;
                        touched.push(*j);
                        hi = hi.max(*j);
                    }
                }
            }
            c += 1;
        }
        for j in touched {
            if !self.acc[j].is_zero() {
                self.acc[j] = Cyclotomic::zero(self.n);
            }
        }
        out
    }

    /// Insert a sparse vector; returns whether it was independent.
    pub fn insert(&mut self, v: &[(usize, Cyclotomic)]) -> bool {
        let mut r = self.residue(v);
        if r.is_empty() {
            return false;
        }
        let inv = r[0].1.inv().expect("nonzero leading entry");
        for (_, x) in r.iter_mut() {
            *x = &*x * &inv;
        }
        self.pivot_row[r[0].0] = self.rows.len() as u32;
        self.rows.push(r);
        true
    }

    pub fn insert_dense(&mut self, v: &[Cyclotomic]) -> bool { self.insert(&to_sparse(v)) }

    /// Whether `v` lies in the span of the stored rows.
    pub fn contains(&mut self, v: &[(usize, Cyclotomic)]) -> bool { self.residue(v).is_empty() }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        p.sort_unstable();
        p
    }

    /// Back-substitute into the reduced row echelon form.
    pub fn into_rref(mut self) -> SparseRref {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut done = vec![false; self.rows.len()];
        for &i in &order {
            let row = std::mem::take(&mut self.rows[i]);
            let p = row[0].0;
            let mut acc: std::collections::BTreeMap<usize, Cyclotomic> = row.into_iter().collect();
            let mut c = p + 1;
            while let Some((&j, _)) = acc.range(c..).next() {
                c = j + 1;
                let r = self.pivot_row[j];
                if r == NONE || !done[r as usize] {
                    continue;
                }
                let f = acc.remove(&j).unwrap();
                for (k, y) in self.rows[r as usize].iter().skip(1) {
                    let t = &f * y;
                    let e = acc.entry(*k).or_insert_with(|| Cyclotomic::zero(self.n));
                    *e -= &t;
                    if e.is_zero() {
                        acc.remove(k);
                    }
                }
            }
            self.rows[i] = acc.into_iter().collect();
            done[i] = true;
        }
        order.reverse();
        let rows: Vec<SparseVec> = order.into_iter().map(|i| std::mem::take(&mut self.rows[i])).collect();
        SparseRref { n: self.n, width: self.width, pivots: rows.iter().map(|r| r[0].0).collect(), rows }
    }
}

/// A reduced row echelon basis: rows monic at their pivots, zero at every
/// other pivot column, ordered by pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseRref {
    pub n: u32,
    pub width: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<SparseVec>,
}

impl SparseRref {
    pub fn rank(&self) -> usize { self.rows.len() }

    /// Column-major view: entry T lists (row, value) for column T.
    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.width];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, x) in r {
                cols[*j].push((i, x.clone()));
            }
        }
        cols
    }
}

pub fn to_sparse(v: &[Cyclotomic]) -> SparseVec { v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(j, x)| (j, x.clone())).collect() }

pub fn to_dense(n: u32, width: usize, v: &[(usize, Cyclotomic)]) -> Vec<Cyclotomic> {
    let mut out = vec![Cyclotomic::zero(n); width];
    for (j, x) in v {
        out[*j] += x;
    }
    out
}
