use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Echelon, Matrix, SparseVec, Subspace};
use crate::freealg::{Algebra, Word};

/// dims[p][d] = dim Ext^p_A(k, k) in internal weight d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtTable {
    pub p_max: usize,
    pub d_max: u32,
    pub dims: Vec<Vec<usize>>,
}

impl ExtTable {
    pub fn total(&self, p: usize) -> usize {
        self.dims[p].iter().sum()
    }
}

/// One term of the resolution: a free module on generators of the given weights, with
/// the images of its generators in the previous term.
struct Term {
    weights: Vec<u32>,
    images: Vec<SparseVec>,
}

impl Term {
    fn offsets(&self, alg: &Algebra, d: u32) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = 0;
        for &e in &self.weights {
            out.push(acc);
            if e <= d {
                acc += alg.dim((d - e) as i64);
            }
        }
        out.push(acc);
        out
    }

    fn dim(&self, alg: &Algebra, d: u32) -> usize {
        *self.offsets(alg, d).last().unwrap()
    }

    /// u · v for v in degree d and a word u of weight k.
    fn left_mul(&self, alg: &Algebra, u: &Word, d: u32, v: &SparseVec) -> SparseVec {
        let k = u.weight(&alg.weights());
        let src = self.offsets(alg, d);
        let dst = self.offsets(alg, d + k);
        let mut entries = Vec::new();
        for (i, &e) in self.weights.iter().enumerate() {
            if e > d {
                continue;
            }
            let block = v.slice(src[i], src[i + 1] - src[i]);
            if block.is_zero() {
                continue;
            }
            let img = alg.left_word_apply(u, (d - e) as i64, &block);
            entries.extend(img.shifted(dst[i]).into_entries());
        }
        SparseVec::from_entries(entries)
    }
}

/// Columns of the differential out of `term` at degree d, restricted to generators of weight < `below`.
fn differential_columns(alg: &Algebra, term: &Term, prev: &Term, d: u32, below: u32) -> Vec<SparseVec> {
    let mut cols = Vec::new();
    for (i, &e) in term.weights.iter().enumerate() {
        if e > d || e >= below {
            continue;
        }
        for u in alg.basis((d - e) as i64) {
            cols.push(prev.left_mul(alg, u, e, &term.images[i]));
        }
    }
    cols
}

/// Dimensions of Ext^p(k,k) for p ≤ p_max in weights ≤ d_max, read off a minimal graded
/// free resolution of the trivial module built weight by weight.
pub fn ext_kk_bounded(alg: &Algebra, p_max: usize, d_max: u32) -> Result<ExtTable> {
    if alg.cutoff() < d_max {
        return Err(Error::CutoffTooSmall {
            cutoff: alg.cutoff(),
            needed: d_max,
        });
    }
    let field = alg.field();
    let mut terms: Vec<Term> = vec![Term {
        weights: vec![0],
        images: vec![SparseVec::zero()],
    }];
    for _ in 0..p_max {
        terms.push(Term {
            weights: Vec::new(),
            images: Vec::new(),
        });
    }
    for d in 0..=d_max {
        for p in 0..=p_max {
            // kernel of F_p -> F_{p-1} (the augmentation when p = 0) in degree d
            let dim_p = terms[p].dim(alg, d);
            let kernel = if p == 0 {
                if d == 0 {
                    Subspace::zero(field, dim_p)
                } else {
                    Subspace::full(field, dim_p)
                }
            } else {
                let cols = differential_columns(alg, &terms[p], &terms[p - 1], d, d + 1);
                kernel_basis(&Matrix::from_columns(field, terms[p - 1].dim(alg, d), &cols))
            };
            if p == p_max {
                continue;
            }
            // image of the generators of F_{p+1} already found
            let old = differential_columns(alg, &terms[p + 1], &terms[p], d, d);
            let mut ech = Echelon::new(field, dim_p);
            for c in &old {
                ech.insert(c);
            }
            for v in kernel.basis() {
                if ech.insert(v) {
                    terms[p + 1].weights.push(d);
                    terms[p + 1].images.push(v.clone());
                }
            }
        }
    }
    let dims = terms
        .iter()
        .map(|t| {
            let mut row = vec![0; d_max as usize + 1];
            for &e in &t.weights {
                row[e as usize] += 1;
            }
            row
        })
        .collect();
    Ok(ExtTable { p_max, d_max, dims })
}
