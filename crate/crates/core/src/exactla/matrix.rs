use std::fmt;

use super::scalar::{FieldSpec, Scalar};

/// Sparse vector: strictly increasing indices, no stored zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn zero() -> Self {
        SparseVec {
            entries: Vec::new(),
        }
    }

    pub fn unit(i: usize, field: FieldSpec) -> Self {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    /// Builds from arbitrary (index, value) pairs, merging repeats and dropping zeros.
    pub fn from_entries(mut entries: Vec<(usize, Scalar)>) -> Self {
        entries.sort_by_key(|e| e.0);
        let mut out: Vec<(usize, Scalar)> = Vec::with_capacity(entries.len());
        for (i, v) in entries {
            match out.last_mut() {
                Some((j, w)) if *j == i => *w = &*w + &v,
                _ => out.push((i, v)),
            }
        }
        out.retain(|e| !e.1.is_zero());
        SparseVec { entries: out }
    }

    /// Entries must already be sorted and nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, Scalar)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| !e.1.is_zero()));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[Scalar]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, v.clone()))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize, field: FieldSpec) -> Vec<Scalar> {
        let mut out = vec![field.zero(); len];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&i, |e| e.0)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn leading(&self) -> Option<(usize, &Scalar)> {
        self.entries.first().map(|(i, v)| (*i, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, Scalar)> {
        self.entries.iter()
    }

    pub fn entries(&self) -> &[(usize, Scalar)] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<(usize, Scalar)> {
        self.entries
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// self + c * other
    pub fn add_scaled(&self, c: &Scalar, other: &SparseVec) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() || b < other.entries.len() {
            let ia = self.entries.get(a).map(|e| e.0).unwrap_or(usize::MAX);
            let ib = other.entries.get(b).map(|e| e.0).unwrap_or(usize::MAX);
            if ia < ib {
                out.push(self.entries[a].clone());
                a += 1;
            } else if ib < ia {
                out.push((ib, c * &other.entries[b].1));
                b += 1;
            } else {
                let v = &self.entries[a].1 + &(c * &other.entries[b].1);
                if !v.is_zero() {
                    out.push((ia, v));
                }
                a += 1;
                b += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &SparseVec) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(&v.field().one(), other),
        }
    }

    pub fn sub(&self, other: &SparseVec) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.add_scaled(&v.field().from_i64(-1), other),
        }
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, -v)).collect(),
        }
    }

    pub fn dot(&self, other: &SparseVec, field: FieldSpec) -> Scalar {
        let mut acc = field.zero();
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, ib) = (self.entries[a].0, other.entries[b].0);
            if ia < ib {
                a += 1;
            } else if ib < ia {
                b += 1;
            } else {
                acc = &acc + &(&self.entries[a].1 * &other.entries[b].1);
                a += 1;
                b += 1;
            }
        }
        acc
    }

    /// Adds `offset` to every index.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .map(|(i, v)| (i + offset, v.clone()))
                .collect(),
        }
    }

    /// Keeps indices in `start..start+len`, reindexed from 0.
    pub fn slice(&self, start: usize, len: usize) -> Self {
        SparseVec {
            entries: self
                .entries
                .iter()
                .filter(|(i, _)| *i >= start && *i < start + len)
                .map(|(i, v)| (i - start, v.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for SparseVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.entries.iter().map(|(i, v)| (i, v)))
            .finish()
    }
}

/// Sparse row-major matrix over a single field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    nrows: usize,
    ncols: usize,
    rows: Vec<SparseVec>,
}

impl Matrix {
    pub fn zero(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        Matrix {
            field,
            nrows,
            ncols,
            rows: vec![SparseVec::zero(); nrows],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        Matrix {
            field,
            nrows: n,
            ncols: n,
            rows: (0..n).map(|i| SparseVec::unit(i, field)).collect(),
        }
    }

    pub fn from_rows(field: FieldSpec, ncols: usize, rows: Vec<SparseVec>) -> Self {
        debug_assert!(rows.iter().all(|r| r.max_index().map_or(true, |m| m < ncols)));
        Matrix {
            field,
            nrows: rows.len(),
            ncols,
            rows,
        }
    }

    /// Matrix whose j-th column is `cols[j]`.
    pub fn from_columns(field: FieldSpec, nrows: usize, cols: &[SparseVec]) -> Self {
        let mut rows: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); nrows];
        for (j, c) in cols.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[*i].push((j, v.clone()));
            }
        }
        Matrix {
            field,
            nrows,
            ncols: cols.len(),
            rows: rows.into_iter().map(SparseVec::from_sorted).collect(),
        }
    }

    pub fn from_dense(field: FieldSpec, ncols: usize, rows: &[Vec<Scalar>]) -> Self {
        Matrix {
            field,
            nrows: rows.len(),
            ncols,
            rows: rows.iter().map(|r| SparseVec::from_dense(r)).collect(),
        }
    }

    pub fn from_i64(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Scalar>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Matrix::from_dense(field, ncols, &dense)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(j).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        let mut e: Vec<(usize, Scalar)> = self.rows[i]
            .iter()
            .filter(|x| x.0 != j)
            .cloned()
            .collect();
        e.push((j, v));
        self.rows[i] = SparseVec::from_entries(e);
    }

    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for (j, v) in r.iter() {
                cols[*j].push((i, v.clone()));
            }
        }
        cols.into_iter().map(SparseVec::from_sorted).collect()
    }

    pub fn column(&self, j: usize) -> SparseVec {
        SparseVec::from_sorted(
            self.rows
                .iter()
                .enumerate()
                .filter_map(|(i, r)| r.get(j).map(|v| (i, v.clone())))
                .collect(),
        )
    }

    pub fn transpose(&self) -> Matrix {
        Matrix {
            field: self.field,
            nrows: self.ncols,
            ncols: self.nrows,
            rows: self.columns(),
        }
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut out = Vec::new();
        if v.is_zero() {
            return SparseVec::zero();
        }
        for (i, r) in self.rows.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let d = r.dot(v, self.field);
            if !d.is_zero() {
                out.push((i, d));
            }
        }
        SparseVec::from_sorted(out)
    }

    /// self * other
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.ncols, other.nrows, "matrix product shape");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = SparseVec::zero();
                for (k, v) in r.iter() {
                    acc = acc.add_scaled(v, &other.rows[*k]);
                }
                acc
            })
            .collect();
        Matrix {
            field: self.field,
            nrows: self.nrows,
            ncols: other.ncols,
            rows,
        }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows, self.ncols), (other.nrows, other.ncols));
        Matrix {
            field: self.field,
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .zip(&other.rows)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            field: self.field,
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self.rows.iter().map(|r| r.scale(c)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_zero())
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.rows
            .iter()
            .map(|r| r.to_dense(self.ncols, self.field))
            .collect()
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r.shifted(self.ncols)));
        Matrix {
            field: self.field,
            nrows: self.nrows + other.nrows,
            ncols: self.ncols + other.ncols,
            rows,
        }
    }

    /// Kronecker product; row (i,k) -> i*other.nrows + k.
    pub fn kronecker(&self, other: &Matrix) -> Matrix {
        let mut rows = Vec::with_capacity(self.nrows * other.nrows);
        for a in &self.rows {
            for b in &other.rows {
                let mut e = Vec::new();
                for (j, x) in a.iter() {
                    for (l, y) in b.iter() {
                        e.push((j * other.ncols + l, x * y));
                    }
                }
                rows.push(SparseVec::from_sorted(e));
            }
        }
        Matrix {
            field: self.field,
            nrows: self.nrows * other.nrows,
            ncols: self.ncols * other.ncols,
            rows,
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.nrows, self.ncols, self.field)?;
        for r in self.to_dense() {
            let cells: Vec<String> = r.iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_entries_merges_and_drops_zeros() {
        let q = FieldSpec::RATIONALS;
        let v = SparseVec::from_entries(vec![
            (3, q.from_i64(1)),
            (1, q.from_i64(2)),
            (3, q.from_i64(-1)),
        ]);
        assert_eq!(v.nnz(), 1);
        assert_eq!(v.get(1), Some(&q.from_i64(2)));
    }

    #[test]
    fn product_and_transpose() {
        let q = FieldSpec::RATIONALS;
        let a = Matrix::from_i64(q, &[vec![1, 2], vec![0, 1], vec![3, 0]]);
        let b = Matrix::from_i64(q, &[vec![1, 0, 1], vec![2, 1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(
            ab,
            Matrix::from_i64(q, &[vec![5, 2, 1], vec![2, 1, 0], vec![3, 0, 3]])
        );
        assert_eq!(ab.transpose().transpose(), ab);
        let v = SparseVec::from_dense(&[q.from_i64(1), q.from_i64(1)]);
        assert_eq!(
            a.apply(&v),
            SparseVec::from_dense(&[q.from_i64(3), q.from_i64(1), q.from_i64(3)])
        );
    }
}
