use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{kron_vec, tensor_index, tensor_locate, ChainComplex};
use crate::error::{Error, Result};
use crate::exactla::{sign, FieldSpec, Matrix, Quotient, Scalar, SparseVec};

use super::module::{DgModule, Variance};

/// M ⊗_𝒜 N as the cokernel of Ξ₁ − Ξ₂ : ⊕_{a,b} M(b) ⊗ 𝒜(a,b) ⊗ N(a) -> ⊕_c M(c) ⊗ N(c),
/// with Ξ₁(m ⊗ f ⊗ n) = m·f ⊗ n and Ξ₂(m ⊗ f ⊗ n) = m ⊗ f·n.
#[derive(Clone, Debug)]
pub struct TensorOverCat {
    pub complex: ChainComplex,
    field: FieldSpec,
    /// Per object, M(c) ⊗ N(c) as a complex; degree n of the ambient is their direct sum.
    blocks: Vec<ChainComplex>,
    m_values: Vec<ChainComplex>,
    n_values: Vec<ChainComplex>,
    quotients: BTreeMap<i64, Quotient>,
}

/// One elementary tensor m_i ⊗ n_j in M(c)^p ⊗ N(c)^q with a coefficient.
#[derive(Clone, Debug)]
pub struct TensorTerm {
    pub object: usize,
    pub p: i64,
    pub i: usize,
    pub q: i64,
    pub j: usize,
    pub coeff: Scalar,
}

impl TensorOverCat {
    fn offset(&self, c: usize, n: i64) -> usize {
        self.blocks[..c].iter().map(|b| b.dim(n)).sum()
    }

    fn ambient_dim(&self, n: i64) -> usize {
        self.blocks.iter().map(|b| b.dim(n)).sum()
    }

    /// Ambient coordinates of m ⊗ n with m ∈ M(c)^p, n ∈ N(c)^q.
    fn ambient(&self, c: usize, p: i64, m: &SparseVec, q: i64, n: &SparseVec) -> SparseVec {
        let (mc, nc) = (&self.m_values[c], &self.n_values[c]);
        let off = self.offset(c, p + q) + tensor_index(mc, nc, p, 0, q, 0);
        kron_vec(m, n, nc.dim(q)).shifted(off)
    }

    /// Class of m ⊗ n in degree p + q of the tensor product.
    pub fn class_of(&self, c: usize, p: i64, m: &SparseVec, q: i64, n: &SparseVec) -> SparseVec {
        match self.quotients.get(&(p + q)) {
            Some(quo) => quo.coords(&self.ambient(c, p, m, q, n)),
            None => SparseVec::zero(),
        }
    }

    /// Elementary tensors of a representative of basis class k in degree n.
    pub fn lift_terms(&self, n: i64, k: usize) -> Vec<TensorTerm> {
        let v = self.quotients[&n].lift(k);
        let mut out = Vec::new();
        for (idx, coeff) in v.iter() {
            let mut rest = *idx;
            let mut c = 0;
            while rest >= self.blocks[c].dim(n) {
                rest -= self.blocks[c].dim(n);
                c += 1;
            }
            let (p, i, q, j) = tensor_locate(&self.m_values[c], &self.n_values[c], n, rest);
            out.push(TensorTerm { object: c, p, i, q, j, coeff: coeff.clone() });
        }
        out
    }

    /// Matrix from degree n of this tensor product to a target space of dimension `rows`,
    /// sending each elementary tensor through `term`.
    pub fn induced(&self, n: i64, rows: usize, term: impl Fn(&TensorTerm) -> SparseVec) -> Matrix {
        let dim = self.quotients.get(&n).map_or(0, |q| q.dim());
        let cols: Vec<SparseVec> = (0..dim)
            .map(|k| {
                let mut acc = SparseVec::zero();
                for t in self.lift_terms(n, k) {
                    acc = acc.add_scaled(&t.coeff, &term(&t));
                }
                acc
            })
            .collect();
        Matrix::from_columns(self.field, rows, &cols)
    }

    pub fn m_value(&self, c: usize) -> &ChainComplex {
        &self.m_values[c]
    }

    pub fn n_value(&self, c: usize) -> &ChainComplex {
        &self.n_values[c]
    }
}

/// Tensor product of a right module M and a left module N over the same category.
pub fn tensor_over_cat(m: &DgModule, n: &DgModule) -> Result<TensorOverCat> {
    if !Arc::ptr_eq(m.cat(), n.cat()) {
        return Err(Error::Mismatch("modules live over different categories".into()));
    }
    if m.variance() != Variance::Right || n.variance() != Variance::Left {
        return Err(Error::Mismatch("tensor product needs a right and a left module".into()));
    }
    let cat = m.cat();
    let field = cat.field();
    let count = cat.num_objects();
    let blocks: Vec<ChainComplex> = (0..count).map(|c| m.value(c).tensor(n.value(c))).collect();
    let mut t = TensorOverCat {
        complex: ChainComplex::zero(field),
        field,
        blocks,
        m_values: m.values().to_vec(),
        n_values: n.values().to_vec(),
        quotients: BTreeMap::new(),
    };
    let supports: Vec<(i64, i64)> = t.blocks.iter().filter_map(|b| b.support()).collect();
    let (Some(lo), Some(hi)) = (supports.iter().map(|s| s.0).min(), supports.iter().map(|s| s.1).max()) else {
        return Ok(t);
    };
    let e = |k| SparseVec::unit(k, field);
    let mut relations: BTreeMap<i64, Vec<SparseVec>> = BTreeMap::new();
    for a in 0..count {
        for b in 0..count {
            let h = cat.hom(a, b);
            for p in m.value(b).degrees() {
                for q in h.degrees() {
                    for r in n.value(a).degrees() {
                        for i in 0..m.value(b).dim(p) {
                            for j in 0..h.dim(q) {
                                let mf = m.act_right(a, b, p, &e(i), q, &e(j));
                                for k in 0..n.value(a).dim(r) {
                                    let fnv = n.act_left(a, b, q, &e(j), r, &e(k));
                                    let x1 = t.ambient(a, p + q, &mf, r, &e(k));
                                    let x2 = t.ambient(b, p, &e(i), q + r, &fnv);
                                    let rel = x1.sub(&x2);
                                    if !rel.is_zero() {
                                        relations.entry(p + q + r).or_default().push(rel);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    for d in lo..=hi {
        let rels = relations.remove(&d).unwrap_or_default();
        t.quotients.insert(d, Quotient::new(field, t.ambient_dim(d), &rels));
    }
    let complex = ChainComplex::from_fn(
        field,
        lo,
        hi,
        |d| t.quotients[&d].dim(),
        |d| {
            let rows = t.quotients.get(&(d + 1)).map_or(0, |q| q.dim());
            t.induced(d, rows, |term| {
                // d(m ⊗ n) = dm ⊗ n + (-1)^{|m|} m ⊗ dn
                let (mc, nc) = (&t.m_values[term.object], &t.n_values[term.object]);
                let (mi, nj) = (e(term.i), e(term.j));
                let x = t.class_of(term.object, term.p + 1, &mc.apply_d(term.p, &mi), term.q, &nj);
                let y = t.class_of(term.object, term.p, &mi, term.q + 1, &nc.apply_d(term.q, &nj));
                x.add_scaled(&sign(field, term.p), &y)
            })
        },
    )?;
    t.complex = complex;
    Ok(t)
}

/// h_X ⊗_𝒜 N -> N(X), [u ⊗ n] ↦ u·n, per degree.
pub fn yoneda_witness(t: &TensorOverCat, n: &DgModule, x: usize) -> BTreeMap<i64, Matrix> {
    let field = n.cat().field();
    let e = |k| SparseVec::unit(k, field);
    let target = n.value(x);
    let mut out = BTreeMap::new();
    let lo = t.complex.support().map(|s| s.0).into_iter().chain(target.support().map(|s| s.0)).min();
    let hi = t.complex.support().map(|s| s.1).into_iter().chain(target.support().map(|s| s.1)).max();
    if let (Some(lo), Some(hi)) = (lo, hi) {
        for d in lo - 1..=hi + 1 {
            let m = t.induced(d, target.dim(d), |term| n.act_left(term.object, x, term.p, &e(term.i), term.q, &e(term.j)));
            out.insert(d, m);
        }
    }
    out
}
