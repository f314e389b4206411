#![allow(dead_code)]

use std::collections::HashMap;

use ncproj::dgcore::ChainComplex;
use ncproj::exactla::{rank, Echelon, FieldSpec, Matrix, SparseVec};
use ncproj::freealg::{FreePoly, Presentation, Word};

/// All words of the given weight in the free algebra.
pub fn all_words(weights: &[u32], d: u32) -> Vec<Word> {
    if d == 0 {
        return vec![Word::empty()];
    }
    let mut out = Vec::new();
    for (g, &w) in weights.iter().enumerate() {
        if w <= d {
            for mut tail in all_words(weights, d - w) {
                tail.0.insert(0, g as u32);
                out.push(tail);
            }
        }
    }
    out
}

/// The weight-d part of the two-sided ideal, spanned by all u r v, in word coordinates.
pub struct IdealSpan {
    pub index: HashMap<Word, usize>,
    pub span: Echelon,
}

impl IdealSpan {
    pub fn new(p: &Presentation, d: u32) -> Self {
        let weights = p.weights();
        let words = all_words(&weights, d);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let rows = ideal_rows(p, d, &index);
        let span = Echelon::from_vectors(p.field(), words.len(), &rows);
        IdealSpan { index, span }
    }

    pub fn vector(&self, f: &FreePoly) -> SparseVec {
        SparseVec::from_entries(f.terms().iter().map(|(w, c)| (self.index[w], c.clone())).collect())
    }

    pub fn contains(&self, f: &FreePoly) -> bool {
        self.span.contains(&self.vector(f))
    }
}

fn ideal_rows(p: &Presentation, d: u32, index: &HashMap<Word, usize>) -> Vec<SparseVec> {
    let weights = p.weights();
    let mut rows = Vec::new();
    for (i, r) in p.relations().iter().enumerate() {
        let rw = p.relation_weight(i);
        if rw > d {
            continue;
        }
        for lw in 0..=(d - rw) {
            for u in all_words(&weights, lw) {
                for v in all_words(&weights, d - rw - lw) {
                    let t = r.sandwich(&u, &v);
                    rows.push(SparseVec::from_entries(
                        t.terms().iter().map(|(w, c)| (index[w], c.clone())).collect(),
                    ));
                }
            }
        }
    }
    rows
}

/// Dimension of the space of degree-0 chain maps C -> D, solved entry by entry.
pub fn chain_map_dim(c: &ChainComplex, d: &ChainComplex) -> usize {
    let field = c.field();
    let degrees: Vec<i64> = c.degrees().collect();
    let mut offsets = HashMap::new();
    let mut unknowns = 0;
    for &m in &degrees {
        offsets.insert(m, unknowns);
        unknowns += d.dim(m) * c.dim(m);
    }
    // entry (r, s) of f_m sits at offsets[m] + r * dim C^m + s
    let var = |m: i64, r: usize, s: usize| offsets[&m] + r * c.dim(m) + s;
    let mut rows = Vec::new();
    for &m in &degrees {
        let (dd, dc) = (d.d(m), c.d(m));
        // (d_D f_m - f_{m+1} d_C)[r][s] over r < dim D^{m+1}, s < dim C^m
        for r in 0..d.dim(m + 1) {
            for s in 0..c.dim(m) {
                let mut e = Vec::new();
                for k in 0..d.dim(m) {
                    let x = dd.get(r, k);
                    if !x.is_zero() {
                        e.push((var(m, k, s), x));
                    }
                }
                if c.dim(m + 1) > 0 && offsets.contains_key(&(m + 1)) {
                    for k in 0..c.dim(m + 1) {
                        let x = dc.get(k, s);
                        if !x.is_zero() {
                            e.push((var(m + 1, r, k), -x));
                        }
                    }
                }
                rows.push(SparseVec::from_entries(e));
            }
        }
    }
    unknowns - rank(&Matrix::from_rows(field, unknowns, rows))
}

/// dim F_d - dim span{u r v : weight d}: graded dimension without Gröbner bases.
pub fn ideal_span_dim(p: &Presentation, d: u32) -> usize {
    let weights = p.weights();
    let words = all_words(&weights, d);
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let field = p.field();
    let mut rows = Vec::new();
    for (i, r) in p.relations().iter().enumerate() {
        let rw = p.relation_weight(i);
        if rw > d {
            continue;
        }
        for lw in 0..=(d - rw) {
            for u in all_words(&weights, lw) {
                for v in all_words(&weights, d - rw - lw) {
                    let t = r.sandwich(&u, &v);
                    rows.push(SparseVec::from_entries(
                        t.terms().iter().map(|(w, c)| (index[w], c.clone())).collect(),
                    ));
                }
            }
        }
    }
    let m = Matrix::from_rows(field, words.len(), rows);
    words.len() - rank(&m)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    let mut r = 1u64;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

pub fn poly_from(field: FieldSpec, terms: &[(&[u32], i64)]) -> FreePoly {
    FreePoly::from_terms(
        field,
        terms.iter().map(|(w, c)| (Word(w.to_vec()), field.from_i64(*c))),
    )
}
