use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, sign, FieldSpec, Matrix, Quotient, SparseVec, Subspace};

/// Bounded cochain complex of finite-dimensional spaces; d^n : C^n -> C^{n+1}.
/// Degrees with zero dimension at either end are trimmed, so equal complexes compare equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: FieldSpec,
    lo: i64,
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `diffs[k]` is d^{lo+k}; there must be `dims.len() - 1` of them.
    pub fn new(field: FieldSpec, lo: i64, dims: Vec<usize>, diffs: Vec<Matrix>) -> Result<Self> {
        if diffs.len() + 1 != dims.len().max(1) {
            return Err(Error::Mismatch(format!(
                "{} degrees need {} differentials, got {}",
                dims.len(),
                dims.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.nrows() != dims[k + 1] || d.ncols() != dims[k] {
                return Err(Error::Mismatch(format!("differential d^{} has the wrong shape", lo + k as i64)));
            }
        }
        for k in 1..diffs.len() {
            if !diffs[k].mul(&diffs[k - 1]).is_zero() {
                return Err(Error::Hypothesis(format!("d∘d ≠ 0 at degree {}", lo + k as i64 - 1)));
            }
        }
        let mut c = ChainComplex { field, lo, dims, diffs };
        c.trim();
        Ok(c)
    }

    pub fn from_fn(
        field: FieldSpec,
        lo: i64,
        hi: i64,
        dim: impl Fn(i64) -> usize,
        diff: impl Fn(i64) -> Matrix,
    ) -> Result<Self> {
        if hi < lo {
            return Ok(ChainComplex::zero(field));
        }
        let dims = (lo..=hi).map(&dim).collect();
        let diffs = (lo..hi).map(diff).collect();
        ChainComplex::new(field, lo, dims, diffs)
    }

    fn trim(&mut self) {
        while self.dims.last() == Some(&0) {
            self.dims.pop();
            self.diffs.pop();
        }
        while self.dims.first() == Some(&0) {
            self.dims.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.dims.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn zero(field: FieldSpec) -> Self {
        ChainComplex { field, lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// k^dim placed in degree n with zero differential.
    pub fn concentrated(field: FieldSpec, n: i64, dim: usize) -> Self {
        let mut c = ChainComplex { field, lo: n, dims: vec![dim], diffs: Vec::new() };
        c.trim();
        c
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// (lo, hi) of the nonzero range, or None for the zero complex.
    pub fn support(&self) -> Option<(i64, i64)> {
        (!self.dims.is_empty()).then(|| (self.lo, self.lo + self.dims.len() as i64 - 1))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        match self.support() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        if n < self.lo {
            return 0;
        }
        self.dims.get((n - self.lo) as usize).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// d^n as a dim(n+1) x dim(n) matrix (zero outside the support).
    pub fn d(&self, n: i64) -> Matrix {
        if n >= self.lo {
            if let Some(m) = self.diffs.get((n - self.lo) as usize) {
                return m.clone();
            }
        }
        Matrix::zero(self.field, self.dim(n + 1), self.dim(n))
    }

    pub fn apply_d(&self, n: i64, v: &SparseVec) -> SparseVec {
        if n >= self.lo {
            if let Some(m) = self.diffs.get((n - self.lo) as usize) {
                return m.apply(v);
            }
        }
        SparseVec::zero()
    }

    pub fn homology(&self, n: i64) -> Homology {
        let field = self.field;
        let cycles = kernel_basis(&self.d(n));
        let bounds: Vec<SparseVec> = self.d(n - 1).columns().iter().map(|c| cycles.coords(c)).collect();
        let quotient = Quotient::new(field, cycles.dim(), &bounds);
        let reps = (0..quotient.dim()).map(|i| cycles.combine(&quotient.lift(i))).collect();
        Homology { degree: n, cycles, quotient, reps }
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.homology(n).dim() == 0)
    }

    /// Total complex of C ⊗ D with d(x⊗y) = dx⊗y + (-1)^{|x|} x⊗dy. Degree n is the direct
    /// sum over p (ascending) of C^p ⊗ D^{n-p}, each block indexed i * dim D^{n-p} + j.
    pub fn tensor(&self, other: &ChainComplex) -> ChainComplex {
        let field = self.field;
        let (Some((a0, a1)), Some((b0, b1))) = (self.support(), other.support()) else {
            return ChainComplex::zero(field);
        };
        let lo = a0 + b0;
        let hi = a1 + b1;
        let dim = |n: i64| (a0..=a1).map(|p| self.dim(p) * other.dim(n - p)).sum::<usize>();
        ChainComplex::from_fn(field, lo, hi, dim, |n| {
            let mut cols = Vec::new();
            for p in a0..=a1 {
                let q = n - p;
                let (dc, dd) = (self.dim(p), other.dim(q));
                for i in 0..dc {
                    for j in 0..dd {
                        let mut acc = Vec::new();
                        // dx ⊗ y lands in block (p+1, q)
                        let dx = self.apply_d(p, &SparseVec::unit(i, field));
                        let off = tensor_offset(self, other, p + 1, q);
                        for (r, c) in dx.iter() {
                            acc.push((off + r * dd + j, c.clone()));
                        }
                        let dy = other.apply_d(q, &SparseVec::unit(j, field));
                        let s = sign(field, p);
                        let off = tensor_offset(self, other, p, q + 1);
                        let dq1 = other.dim(q + 1);
                        for (r, c) in dy.iter() {
                            acc.push((off + i * dq1 + r, &s * c));
                        }
                        cols.push(SparseVec::from_entries(acc));
                    }
                }
            }
            Matrix::from_columns(field, dim(n + 1), &cols)
        })
        .expect("tensor differential squares to zero")
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let lo = self.support().map(|s| s.0).into_iter().chain(other.support().map(|s| s.0)).min();
        let hi = self.support().map(|s| s.1).into_iter().chain(other.support().map(|s| s.1)).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return ChainComplex::zero(self.field);
        };
        ChainComplex::from_fn(
            self.field,
            lo,
            hi,
            |n| self.dim(n) + other.dim(n),
            |n| self.d(n).direct_sum(&other.d(n)),
        )
        .expect("direct sum of complexes")
    }

    /// C[k]: (C[k])^n = C^{n+k}, differential multiplied by (-1)^k.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let s = sign(self.field, k);
        ChainComplex {
            field: self.field,
            lo: self.lo - k,
            dims: self.dims.clone(),
            diffs: self.diffs.iter().map(|d| d.scale(&s)).collect(),
        }
    }
}

/// Offset of the block C^p ⊗ D^q inside degree p + q of C ⊗ D.
pub fn tensor_offset(c: &ChainComplex, d: &ChainComplex, p: i64, q: i64) -> usize {
    let n = p + q;
    c.degrees().filter(|&p2| p2 < p).map(|p2| c.dim(p2) * d.dim(n - p2)).sum()
}

/// Index of x_i ⊗ y_j (x in C^p, y in D^q) in degree p + q of C ⊗ D.
pub fn tensor_index(c: &ChainComplex, d: &ChainComplex, p: i64, i: usize, q: i64, j: usize) -> usize {
    tensor_offset(c, d, p, q) + i * d.dim(q) + j
}

/// Inverse of `tensor_index`: (p, i, q, j) for index k in degree n of C ⊗ D.
pub fn tensor_locate(c: &ChainComplex, d: &ChainComplex, n: i64, k: usize) -> (i64, usize, i64, usize) {
    let mut rest = k;
    for p in c.degrees() {
        let q = n - p;
        let block = c.dim(p) * d.dim(q);
        if rest < block {
            return (p, rest / d.dim(q), q, rest % d.dim(q));
        }
        rest -= block;
    }
    panic!("index {} out of range in degree {} of a tensor product", k, n)
}

/// Kronecker vector x ⊗ y with index i * ydim + j.
pub fn kron_vec(x: &SparseVec, y: &SparseVec, ydim: usize) -> SparseVec {
    let mut e = Vec::new();
    for (i, a) in x.iter() {
        for (j, b) in y.iter() {
            e.push((i * ydim + j, a * b));
        }
    }
    SparseVec::from_sorted(e)
}

/// H^n with cycle space, quotient by boundaries and representatives of a basis.
#[derive(Clone, Debug)]
pub struct Homology {
    pub degree: i64,
    pub cycles: Subspace,
    quotient: Quotient,
    pub reps: Vec<SparseVec>,
}

impl Homology {
    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Class of a cycle in the representative basis; None if v is not a cycle.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.cycles.contains(v).then(|| self.quotient.coords(&self.cycles.coords(v)))
    }
}

/// Hom complex with degree-n component ⊕_m Hom(C^m, D^{m+n}) and
/// d(f) = d_D ∘ f + (-1)^{n+1} f ∘ d_C. Blocks are ordered by m ascending,
/// each a row-major dim D^{m+n} x dim C^m matrix.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub source: ChainComplex,
    pub target: ChainComplex,
    pub complex: ChainComplex,
}

impl HomComplex {
    fn block_offset(source: &ChainComplex, target: &ChainComplex, n: i64, m: i64) -> usize {
        source
            .degrees()
            .filter(|&m2| m2 < m)
            .map(|m2| source.dim(m2) * target.dim(m2 + n))
            .sum()
    }

    fn raw_dim(source: &ChainComplex, target: &ChainComplex, n: i64) -> usize {
        source.degrees().map(|m| source.dim(m) * target.dim(m + n)).sum()
    }

    /// Index of entry (r, s) of the block Hom(C^m, D^{m+n}) in degree n.
    pub fn entry_index(&self, n: i64, m: i64, r: usize, s: usize) -> usize {
        Self::block_offset(&self.source, &self.target, n, m) + r * self.source.dim(m) + s
    }

    /// The degree-n element as matrices per source degree m.
    pub fn maps_of(&self, n: i64, v: &SparseVec) -> BTreeMap<i64, Matrix> {
        let mut out = BTreeMap::new();
        for m in self.source.degrees() {
            let (r, c) = (self.target.dim(m + n), self.source.dim(m));
            let off = Self::block_offset(&self.source, &self.target, n, m);
            let block = v.slice(off, r * c);
            let rows = (0..r).map(|i| block.slice(i * c, c)).collect();
            out.insert(m, Matrix::from_rows(self.source.field(), c, rows));
        }
        out
    }

    /// Vector of a degree-n family given one matrix per source degree.
    pub fn vector_of(&self, n: i64, maps: impl Fn(i64) -> Matrix) -> SparseVec {
        let mut e = Vec::new();
        for m in self.source.degrees() {
            let f = maps(m);
            let c = self.source.dim(m);
            let off = Self::block_offset(&self.source, &self.target, n, m);
            for (i, row) in f.rows().iter().enumerate() {
                for (j, x) in row.iter() {
                    e.push((off + i * c + j, x.clone()));
                }
            }
        }
        SparseVec::from_entries(e)
    }

    /// g ∘ f in this complex Hom(X, Z), for g ∈ Hom(Y, Z)^p (in `gh`) and f ∈ Hom(X, Y)^q (in `fh`).
    pub fn compose_from(&self, gh: &HomComplex, p: i64, g: &SparseVec, fh: &HomComplex, q: i64, f: &SparseVec) -> SparseVec {
        let (gm, fm) = (gh.maps_of(p, g), fh.maps_of(q, f));
        self.vector_of(p + q, |m| match (gm.get(&(m + q)), fm.get(&m)) {
            (Some(a), Some(b)) => a.mul(b),
            _ => Matrix::zero(self.source.field(), self.target.dim(m + p + q), self.source.dim(m)),
        })
    }

    /// Z^0: the chain maps C -> D.
    pub fn chain_maps(&self) -> Subspace {
        kernel_basis(&self.complex.d(0))
    }
}

pub fn hom_complex(c: &ChainComplex, d: &ChainComplex) -> HomComplex {
    let field = c.field();
    let shell = HomComplex { source: c.clone(), target: d.clone(), complex: ChainComplex::zero(field) };
    let (Some((c0, c1)), Some((d0, d1))) = (c.support(), d.support()) else {
        return shell;
    };
    let lo = d0 - c1;
    let hi = d1 - c0;
    let complex = ChainComplex::from_fn(
        field,
        lo,
        hi,
        |n| HomComplex::raw_dim(c, d, n),
        |n| {
            let s = sign(field, n + 1);
            let dim_n = HomComplex::raw_dim(c, d, n);
            let cols: Vec<SparseVec> = (0..dim_n)
                .map(|k| {
                    let f = shell.maps_of(n, &SparseVec::unit(k, field));
                    shell.vector_of(n + 1, |m| {
                        let rows = d.dim(m + n + 1);
                        let cols = c.dim(m);
                        let mut out = Matrix::zero(field, rows, cols);
                        if let Some(fm) = f.get(&m) {
                            out = out.add(&d.d(m + n).mul(fm));
                        }
                        if let Some(fm1) = f.get(&(m + 1)) {
                            out = out.add(&fm1.mul(&c.d(m)).scale(&s));
                        }
                        out
                    })
                })
                .collect();
            Matrix::from_columns(field, HomComplex::raw_dim(c, d, n + 1), &cols)
        },
    )
    .expect("hom complex squares to zero");
    HomComplex { source: c.clone(), target: d.clone(), complex }
}

/// Whether per-degree maps f^n : C^n -> D^{n+k} commute with the differentials
/// up to the sign (-1)^k, i.e. d_D f = (-1)^k f d_C.
pub fn is_chain_map(c: &ChainComplex, d: &ChainComplex, k: i64, f: impl Fn(i64) -> Matrix) -> bool {
    let s = sign(c.field(), k);
    let lo = c.support().map_or(0, |x| x.0) - 1;
    let hi = c.support().map_or(-1, |x| x.1);
    (lo..=hi).all(|n| d.d(n + k).mul(&f(n)) == f(n + 1).mul(&c.d(n)).scale(&s))
}

/// Whether degree-0 per-degree maps form a chain isomorphism.
pub fn is_chain_iso(c: &ChainComplex, d: &ChainComplex, f: impl Fn(i64) -> Matrix) -> bool {
    if !is_chain_map(c, d, 0, &f) {
        return false;
    }
    let lo = c.support().map_or(0, |x| x.0).min(d.support().map_or(0, |x| x.0));
    let hi = c.support().map_or(0, |x| x.1).max(d.support().map_or(0, |x| x.1));
    (lo..=hi).all(|n| {
        let m = f(n);
        m.nrows() == m.ncols() && rank(&m) == m.nrows()
    })
}
