use std::collections::BTreeMap;

use super::matrix::{Matrix, SparseVec};
use super::scalar::{FieldSpec, Scalar};

/// Incremental row echelon form. Every stored row is monic at its leading
/// (smallest) column, and no stored row has a nonzero entry at another row's pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ncols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl Echelon {
    pub fn new(field: FieldSpec, ncols: usize) -> Self {
        Echelon {
            field,
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
        }
    }

    pub fn from_vectors<'a>(
        field: FieldSpec,
        ncols: usize,
        vs: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        let mut e = Echelon::new(field, ncols);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col].is_some()
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.ncols).filter(|&c| self.is_pivot(c)).collect()
    }

    /// Reduces `v` to have zero entries at every pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        if self.rows.is_empty() || v.is_zero() {
            return v.clone();
        }
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut out = Vec::new();
        while let Some((c, coef)) = work.pop_first() {
            match self.pivot_row[c] {
                Some(r) => {
                    for (j, a) in self.rows[r].iter().skip(1) {
                        let prod = &coef * a;
                        match work.get_mut(j) {
                            Some(e) => {
                                *e = &*e - &prod;
                                if e.is_zero() {
                                    work.remove(j);
                                }
                            }
                            None => {
                                work.insert(*j, -prod);
                            }
                        }
                    }
                }
                None => out.push((c, coef)),
            }
        }
        SparseVec::from_sorted(out)
    }

    /// Adds `v` to the row space; returns true when it was independent.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let r = self.reduce(v);
        match r.leading() {
            None => false,
            Some((c, lead)) => {
                let inv = lead.inv().expect("nonzero leading entry");
                let row = r.scale(&inv);
                self.pivot_row[c] = Some(self.rows.len());
                self.rows.push(row);
                true
            }
        }
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Reduced row echelon rows, sorted by pivot column.
    pub fn rref_rows(&self) -> Vec<SparseVec> {
        let mut out = Vec::with_capacity(self.rows.len());
        for c in 0..self.ncols {
            if let Some(r) = self.pivot_row[c] {
                let row = &self.rows[r];
                let (lead_col, lead) = row.leading().expect("nonzero row");
                let tail = SparseVec::from_sorted(row.iter().skip(1).cloned().collect());
                let mut e = vec![(lead_col, lead.clone())];
                e.extend(self.reduce(&tail).into_entries());
                out.push(SparseVec::from_sorted(e));
            }
        }
        out
    }

    /// Row space as a subspace in echelon-coordinate form.
    pub fn row_space(&self) -> Subspace {
        Subspace {
            field: self.field,
            ambient_dim: self.ncols,
            basis: self.rref_rows(),
            pivots: self.pivots(),
        }
    }
}

/// A subspace of k^n with basis b_i and distinguished columns p_j such that
/// b_i[p_j] = delta_ij. Coordinates of a member are its entries at those columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            basis: (0..ambient_dim).map(|i| SparseVec::unit(i, field)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn spanned_by<'a>(
        field: FieldSpec,
        ambient_dim: usize,
        vs: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        Echelon::from_vectors(field, ambient_dim, vs).row_space()
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn coordinate_columns(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` read off the distinguished columns; `v` must be a member.
    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(k, p)| v.get(*p).map(|x| (k, x.clone())))
                .collect(),
        )
    }

    pub fn combine(&self, coords: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (k, c) in coords.iter() {
            acc = acc.add_scaled(c, &self.basis[*k]);
        }
        acc
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.combine(&self.coords(v)) == *v
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_vectors(self.field, self.ambient_dim, &self.basis)
    }
}

pub fn rank(m: &Matrix) -> usize {
    Echelon::from_vectors(m.field(), m.ncols(), m.rows()).rank()
}

/// Kernel basis: one vector per free column f, equal to e_f minus the
/// RREF column entries placed at pivot positions. Coordinates are the free-column entries.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let ech = Echelon::from_vectors(field, m.ncols(), m.rows());
    let rref = ech.rref_rows();
    let pivots: Vec<usize> = rref.iter().map(|r| r.leading().unwrap().0).collect();
    let free: Vec<usize> = (0..m.ncols()).filter(|&c| !ech.is_pivot(c)).collect();
    let mut cols: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
    for (r, row) in rref.iter().enumerate() {
        for (c, v) in row.iter().skip(1) {
            cols.entry(*c).or_default().push((pivots[r], -v));
        }
    }
    let basis = free
        .iter()
        .map(|&f| {
            let mut e = cols.remove(&f).unwrap_or_default();
            e.push((f, field.one()));
            SparseVec::from_entries(e)
        })
        .collect();
    Subspace {
        field,
        ambient_dim: m.ncols(),
        basis,
        pivots: free,
    }
}

/// Some x with m x = rhs, or None when inconsistent.
pub fn solve(m: &Matrix, rhs: &SparseVec) -> Option<SparseVec> {
    let n = m.ncols();
    let mut ech = Echelon::new(m.field(), n + 1);
    for (i, row) in m.rows().iter().enumerate() {
        let mut e: Vec<(usize, Scalar)> = row.entries().to_vec();
        if let Some(b) = rhs.get(i) {
            e.push((n, b.clone()));
        }
        ech.insert(&SparseVec::from_sorted(e));
    }
    if let Some(r) = rhs.max_index() {
        assert!(r < m.nrows(), "right-hand side longer than matrix");
    }
    let mut x = Vec::new();
    for row in ech.rref_rows() {
        let (p, _) = row.leading().unwrap();
        if p == n {
            return None;
        }
        if let Some(b) = row.get(n) {
            x.push((p, b.clone()));
        }
    }
    Some(SparseVec::from_sorted(x))
}

/// Quotient k^n / U with basis the images of the unit vectors at non-pivot columns of U.
#[derive(Clone, Debug)]
pub struct Quotient {
    sub: Echelon,
    complement: Vec<usize>,
    position: Vec<Option<usize>>,
}

impl Quotient {
    pub fn new<'a>(
        field: FieldSpec,
        ambient_dim: usize,
        generators: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        Quotient::from_echelon(Echelon::from_vectors(field, ambient_dim, generators))
    }

    pub fn from_echelon(sub: Echelon) -> Self {
        let mut position = vec![None; sub.ncols()];
        let mut complement = Vec::new();
        for c in 0..sub.ncols() {
            if !sub.is_pivot(c) {
                position[c] = Some(complement.len());
                complement.push(c);
            }
        }
        Quotient {
            sub,
            complement,
            position,
        }
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.sub.ncols()
    }

    pub fn subspace_dim(&self) -> usize {
        self.sub.rank()
    }

    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn coords(&self, v: &SparseVec) -> SparseVec {
        SparseVec::from_sorted(
            self.sub
                .reduce(v)
                .into_entries()
                .into_iter()
                .map(|(c, x)| (self.position[c].expect("reduced off pivots"), x))
                .collect(),
        )
    }

    pub fn lift(&self, i: usize) -> SparseVec {
        SparseVec::unit(self.complement[i], self.sub.field())
    }

    pub fn is_zero_class(&self, v: &SparseVec) -> bool {
        self.sub.contains(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::RATIONALS
    }

    #[test]
    fn kernel_of_small_matrix() {
        let m = Matrix::from_i64(q(), &[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 2);
        for b in k.basis() {
            assert!(m.apply(b).is_zero());
        }
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Matrix::from_i64(q(), &[vec![1, 1], vec![1, 1]]);
        let ok = SparseVec::from_dense(&[q().from_i64(2), q().from_i64(2)]);
        let bad = SparseVec::from_dense(&[q().from_i64(2), q().from_i64(3)]);
        let x = solve(&m, &ok).unwrap();
        assert_eq!(m.apply(&x), ok);
        assert!(solve(&m, &bad).is_none());
    }

    #[test]
    fn quotient_coordinates() {
        let u = SparseVec::from_dense(&[q().one(), q().one(), q().zero()]);
        let qt = Quotient::new(q(), 3, [&u]);
        assert_eq!(qt.dim(), 2);
        let e0 = SparseVec::unit(0, q());
        let e1 = SparseVec::unit(1, q());
        assert_eq!(qt.coords(&e0), qt.coords(&e1).neg());
        assert!(qt.is_zero_class(&u));
    }

    #[test]
    fn subspace_coords_roundtrip() {
        let a = SparseVec::from_dense(&[q().from_i64(2), q().from_i64(4), q().from_i64(1)]);
        let b = SparseVec::from_dense(&[q().from_i64(1), q().from_i64(1), q().from_i64(1)]);
        let s = Subspace::spanned_by(q(), 3, [&a, &b]);
        let v = a.add_scaled(&q().from_i64(3), &b);
        assert!(s.contains(&v));
        assert_eq!(s.combine(&s.coords(&v)), v);
        assert!(!s.contains(&SparseVec::unit(2, q())));
    }
}
