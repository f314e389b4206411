use std::collections::HashMap;
use std::sync::Arc;

use crate::dgcore::{kron_vec, tensor_index, tensor_locate, ChainComplex, SmallDgCategory};
use crate::error::{Error, Result};
use crate::exactla::{sign, Matrix, SparseVec};

use super::module::DgModule;
use super::tensor::{tensor_over_cat, TensorOverCat};

/// 𝒜-ℬ bimodule: values E(a, b) with a left 𝒜-action 𝒜(a,a')^q ⊗ E(a,b)^p -> E(a',b) and a
/// right ℬ-action E(a,b)^p ⊗ ℬ(b',b)^q -> E(a,b'). With the actions written on opposite sides
/// the two commute on the nose: (g·e)·f = g·(e·f).
///
/// So E(a, −) is a right ℬ-module and E(−, b) is a left 𝒜-module.
#[derive(Clone, Debug)]
pub struct DgBimodule {
    left_cat: Arc<SmallDgCategory>,
    right_cat: Arc<SmallDgCategory>,
    values: Vec<Vec<ChainComplex>>,
    /// (a, a', b, q, p), column g_i * dim E(a,b)^p + e_j
    left_actions: HashMap<(usize, usize, usize, i64, i64), Matrix>,
    /// (a, b, b', p, q), column e_i * dim ℬ(b',b)^q + f_j
    right_actions: HashMap<(usize, usize, usize, i64, i64), Matrix>,
}

type LeftFn<'a> = dyn Fn(usize, usize, usize, i64, usize, i64, usize) -> SparseVec + 'a;
type RightFn<'a> = dyn Fn(usize, usize, usize, i64, usize, i64, usize) -> SparseVec + 'a;

impl DgBimodule {
    /// `left(a, a2, b, q, gi, p, ej)` is g_i · e_j; `right(a, b, b2, p, ei, q, fj)` is e_i · f_j.
    pub fn from_fn(
        left_cat: Arc<SmallDgCategory>,
        right_cat: Arc<SmallDgCategory>,
        values: Vec<Vec<ChainComplex>>,
        left: &LeftFn<'_>,
        right: &RightFn<'_>,
    ) -> Result<Self> {
        let (na, nb) = (left_cat.num_objects(), right_cat.num_objects());
        if values.len() != na || values.iter().any(|r| r.len() != nb) {
            return Err(Error::Mismatch("bimodule values do not match the categories".into()));
        }
        left_cat.field().check_same(&right_cat.field())?;
        let field = left_cat.field();
        let mut left_actions = HashMap::new();
        for a in 0..na {
            for a2 in 0..na {
                let h = left_cat.hom(a, a2);
                for b in 0..nb {
                    for q in h.degrees() {
                        for p in values[a][b].degrees() {
                            let cols: Vec<SparseVec> = (0..h.dim(q))
                                .flat_map(|gi| (0..values[a][b].dim(p)).map(move |ej| (gi, ej)))
                                .map(|(gi, ej)| left(a, a2, b, q, gi, p, ej))
                                .collect();
                            let m = Matrix::from_columns(field, values[a2][b].dim(p + q), &cols);
                            if !m.is_zero() {
                                left_actions.insert((a, a2, b, q, p), m);
                            }
                        }
                    }
                }
            }
        }
        let mut right_actions = HashMap::new();
        for a in 0..na {
            for b in 0..nb {
                for b2 in 0..nb {
                    let h = right_cat.hom(b2, b);
                    for p in values[a][b].degrees() {
                        for q in h.degrees() {
                            let cols: Vec<SparseVec> = (0..values[a][b].dim(p))
                                .flat_map(|ei| (0..h.dim(q)).map(move |fj| (ei, fj)))
                                .map(|(ei, fj)| right(a, b, b2, p, ei, q, fj))
                                .collect();
                            let m = Matrix::from_columns(field, values[a][b2].dim(p + q), &cols);
                            if !m.is_zero() {
                                right_actions.insert((a, b, b2, p, q), m);
                            }
                        }
                    }
                }
            }
        }
        let e = DgBimodule { left_cat, right_cat, values, left_actions, right_actions };
        e.validate()?;
        Ok(e)
    }

    pub fn zero(left_cat: Arc<SmallDgCategory>, right_cat: Arc<SmallDgCategory>) -> Self {
        let field = left_cat.field();
        let values = vec![vec![ChainComplex::zero(field); right_cat.num_objects()]; left_cat.num_objects()];
        DgBimodule { left_cat, right_cat, values, left_actions: HashMap::new(), right_actions: HashMap::new() }
    }

    pub fn left_cat(&self) -> &Arc<SmallDgCategory> {
        &self.left_cat
    }

    pub fn right_cat(&self) -> &Arc<SmallDgCategory> {
        &self.right_cat
    }

    pub fn value(&self, a: usize, b: usize) -> &ChainComplex {
        &self.values[a][b]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().flatten().all(|v| v.is_zero())
    }

    /// g · e for g ∈ 𝒜(a,a2)^q, e ∈ E(a,b)^p.
    pub fn act_left(&self, a: usize, a2: usize, b: usize, q: i64, g: &SparseVec, p: i64, e: &SparseVec) -> SparseVec {
        match self.left_actions.get(&(a, a2, b, q, p)) {
            Some(m) => m.apply(&kron_vec(g, e, self.values[a][b].dim(p))),
            None => SparseVec::zero(),
        }
    }

    /// e · f for e ∈ E(a,b)^p, f ∈ ℬ(b2,b)^q.
    pub fn act_right(&self, a: usize, b: usize, b2: usize, p: i64, e: &SparseVec, q: i64, f: &SparseVec) -> SparseVec {
        match self.right_actions.get(&(a, b, b2, p, q)) {
            Some(m) => m.apply(&kron_vec(e, f, self.right_cat.hom(b2, b).dim(q))),
            None => SparseVec::zero(),
        }
    }

    /// Φ_E(a) = E(a, −) as a right ℬ-module.
    pub fn right_module_at(&self, a: usize) -> Result<DgModule> {
        let field = self.left_cat.field();
        let e = |k| SparseVec::unit(k, field);
        DgModule::right_from_fn(self.right_cat.clone(), self.values[a].clone(), &|b2, b, p, mi, q, fj| {
            self.act_right(a, b, b2, p, &e(mi), q, &e(fj))
        })
    }

    /// E(−, b) as a left 𝒜-module.
    pub fn left_module_at(&self, b: usize) -> Result<DgModule> {
        let field = self.left_cat.field();
        let e = |k| SparseVec::unit(k, field);
        let values = self.values.iter().map(|row| row[b].clone()).collect();
        DgModule::left_from_fn(self.left_cat.clone(), values, &|a, a2, q, gi, p, nj| {
            self.act_left(a, a2, b, q, &e(gi), p, &e(nj))
        })
    }

    /// Both one-sided module structures, and (g·e)·f = g·(e·f) on basis elements.
    pub fn validate(&self) -> Result<()> {
        let (na, nb) = (self.left_cat.num_objects(), self.right_cat.num_objects());
        for a in 0..na {
            self.right_module_at(a)?;
        }
        for b in 0..nb {
            self.left_module_at(b)?;
        }
        let field = self.left_cat.field();
        let e = |k| SparseVec::unit(k, field);
        for a in 0..na {
            for a2 in 0..na {
                let g_h = self.left_cat.hom(a, a2);
                for b in 0..nb {
                    for b2 in 0..nb {
                        let f_h = self.right_cat.hom(b2, b);
                        let v = &self.values[a][b];
                        for q in g_h.degrees() {
                            for p in v.degrees() {
                                for r in f_h.degrees() {
                                    for gi in 0..g_h.dim(q) {
                                        for ej in 0..v.dim(p) {
                                            let ge = self.act_left(a, a2, b, q, &e(gi), p, &e(ej));
                                            for fk in 0..f_h.dim(r) {
                                                let l = self.act_right(a2, b, b2, p + q, &ge, r, &e(fk));
                                                let ef = self.act_right(a, b, b2, p, &e(ej), r, &e(fk));
                                                if l != self.act_left(a, a2, b2, q, &e(gi), p + r, &ef) {
                                                    return Err(Error::Hypothesis(
                                                        "bimodule actions do not commute".into(),
                                                    ));
                                                }
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// E[k]: values shifted, left action twisted by (-1)^{k|g|}.
    pub fn shift(&self, k: i64) -> DgBimodule {
        let field = self.left_cat.field();
        DgBimodule {
            left_cat: self.left_cat.clone(),
            right_cat: self.right_cat.clone(),
            values: self.values.iter().map(|r| r.iter().map(|v| v.shift(k)).collect()).collect(),
            left_actions: self
                .left_actions
                .iter()
                .map(|(&(a, a2, b, q, p), m)| ((a, a2, b, q, p - k), m.scale(&sign(field, k * q))))
                .collect(),
            right_actions: self
                .right_actions
                .iter()
                .map(|(&(a, b, b2, p, q), m)| ((a, b, b2, p - k, q), m.clone()))
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &DgBimodule) -> Result<DgBimodule> {
        if !Arc::ptr_eq(&self.left_cat, &other.left_cat) || !Arc::ptr_eq(&self.right_cat, &other.right_cat) {
            return Err(Error::Mismatch("direct sum of bimodules over different categories".into()));
        }
        let values: Vec<Vec<ChainComplex>> = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x.direct_sum(y)).collect())
            .collect();
        let field = self.left_cat.field();
        let e = |k| SparseVec::unit(k, field);
        let (s, o) = (self, other);
        let pick = |a: usize, b: usize, p: i64, i: usize| {
            let d = s.values[a][b].dim(p);
            if i < d {
                (s, i, 0)
            } else {
                (o, i - d, 1)
            }
        };
        let place = |a: usize, b: usize, p: i64, which: usize, v: SparseVec| {
            if which == 0 {
                v
            } else {
                v.shifted(s.values[a][b].dim(p))
            }
        };
        DgBimodule::from_fn(
            self.left_cat.clone(),
            self.right_cat.clone(),
            values,
            &|a, a2, b, q, gi, p, ej| {
                let (src, j, w) = pick(a, b, p, ej);
                place(a2, b, p + q, w, src.act_left(a, a2, b, q, &e(gi), p, &e(j)))
            },
            &|a, b, b2, p, ei, q, fj| {
                let (src, i, w) = pick(a, b, p, ei);
                place(a, b2, p + q, w, src.act_right(a, b, b2, p, &e(i), q, &e(fj)))
            },
        )
    }
}

/// Δ_𝒜(a, b) = 𝒜(b, a); both actions are composition, so Φ_Δ(a) = h_a.
pub fn delta(cat: &Arc<SmallDgCategory>) -> DgBimodule {
    let field = cat.field();
    let e = |k| SparseVec::unit(k, field);
    let n = cat.num_objects();
    let values = (0..n).map(|a| (0..n).map(|b| cat.hom(b, a).clone()).collect()).collect();
    DgBimodule::from_fn(
        cat.clone(),
        cat.clone(),
        values,
        &|a, a2, b, q, gi, p, ej| cat.compose(b, a, a2, q, &e(gi), p, &e(ej)),
        &|a, b, b2, p, ei, q, fj| cat.compose(b2, b, a, p, &e(ei), q, &e(fj)),
    )
    .expect("diagonal bimodule")
}

/// E(a, b) = 𝒜(x, a) ⊗ ℬ(b, y) with g·(u⊗v) = (g∘u)⊗v and (u⊗v)·f = u⊗(v∘f).
pub fn representable_pair(
    left_cat: &Arc<SmallDgCategory>,
    x: usize,
    right_cat: &Arc<SmallDgCategory>,
    y: usize,
) -> Result<DgBimodule> {
    let field = left_cat.field();
    let e = |k| SparseVec::unit(k, field);
    let (na, nb) = (left_cat.num_objects(), right_cat.num_objects());
    let values: Vec<Vec<ChainComplex>> = (0..na)
        .map(|a| (0..nb).map(|b| left_cat.hom(x, a).tensor(right_cat.hom(b, y))).collect())
        .collect();
    let (l, r) = (left_cat, right_cat);
    DgBimodule::from_fn(
        left_cat.clone(),
        right_cat.clone(),
        values,
        &|a, a2, b, q, gi, p, ej| {
            let (p1, i, p2, j) = tensor_locate(l.hom(x, a), r.hom(b, y), p, ej);
            let gu = l.compose(x, a, a2, q, &e(gi), p1, &e(i));
            let (ha, hb) = (l.hom(x, a2), r.hom(b, y));
            kron_vec(&gu, &e(j), hb.dim(p2)).shifted(tensor_index(ha, hb, p1 + q, 0, p2, 0))
        },
        &|a, b, b2, p, ei, q, fj| {
            let (p1, i, p2, j) = tensor_locate(l.hom(x, a), r.hom(b, y), p, ei);
            let vf = r.compose(b2, b, y, p2, &e(j), q, &e(fj));
            let (ha, hb) = (l.hom(x, a), r.hom(b2, y));
            kron_vec(&e(i), &vf, hb.dim(p2 + q)).shifted(tensor_index(ha, hb, p1, 0, p2 + q, 0))
        },
    )
}

/// E ⊗_ℬ F with (E ⊗_ℬ F)(a, c) = E(a, −) ⊗_ℬ F(−, c), actions induced on representatives.
pub struct BimoduleTensor {
    pub bimodule: DgBimodule,
    pub components: Vec<Vec<TensorOverCat>>,
}

pub fn bimodule_tensor(e: &DgBimodule, f: &DgBimodule) -> Result<BimoduleTensor> {
    if !Arc::ptr_eq(e.right_cat(), f.left_cat()) {
        return Err(Error::Mismatch("bimodules do not share the middle category".into()));
    }
    let field = e.left_cat.field();
    let ev = |k| SparseVec::unit(k, field);
    let (na, nc) = (e.left_cat.num_objects(), f.right_cat.num_objects());
    let rights: Vec<DgModule> = (0..na).map(|a| e.right_module_at(a)).collect::<Result<_>>()?;
    let lefts: Vec<DgModule> = (0..nc).map(|c| f.left_module_at(c)).collect::<Result<_>>()?;
    let mut comps = Vec::new();
    for r in &rights {
        let mut row = Vec::new();
        for l in &lefts {
            row.push(tensor_over_cat(r, l)?);
        }
        comps.push(row);
    }
    let values = comps.iter().map(|r| r.iter().map(|t| t.complex.clone()).collect()).collect();
    let cs = &comps;
    let bimodule = DgBimodule::from_fn(
        e.left_cat.clone(),
        f.right_cat.clone(),
        values,
        &|a, a2, c, q, gi, p, k| {
            // g·[x ⊗ y] = [(g·x) ⊗ y]
            let (src, tgt) = (&cs[a][c], &cs[a2][c]);
            let mut acc = SparseVec::zero();
            for t in src.lift_terms(p, k) {
                let gx = e.act_left(a, a2, t.object, q, &ev(gi), t.p, &ev(t.i));
                acc = acc.add_scaled(&t.coeff, &tgt.class_of(t.object, t.p + q, &gx, t.q, &ev(t.j)));
            }
            acc
        },
        &|a, c, c2, p, k, q, hj| {
            // [x ⊗ y]·h = [x ⊗ (y·h)]
            let (src, tgt) = (&cs[a][c], &cs[a][c2]);
            let mut acc = SparseVec::zero();
            for t in src.lift_terms(p, k) {
                let yh = f.act_right(t.object, c, c2, t.q, &ev(t.j), q, &ev(hj));
                acc = acc.add_scaled(&t.coeff, &tgt.class_of(t.object, t.p, &ev(t.i), t.q + q, &yh));
            }
            acc
        },
    )?;
    Ok(BimoduleTensor { bimodule, components: comps })
}

/// Φ̂_E(M) = M ⊗_𝒜 E: value at b is M ⊗_𝒜 E(−, b), right ℬ-action through E.
pub struct PhiHat {
    pub module: DgModule,
    pub components: Vec<TensorOverCat>,
}

pub fn phi_hat(e: &DgBimodule, m: &DgModule) -> Result<PhiHat> {
    if !Arc::ptr_eq(m.cat(), e.left_cat()) {
        return Err(Error::Mismatch("module does not live on the left category of the bimodule".into()));
    }
    let field = m.cat().field();
    let ev = |k| SparseVec::unit(k, field);
    let nb = e.right_cat.num_objects();
    let comps: Vec<TensorOverCat> =
        (0..nb).map(|b| tensor_over_cat(m, &e.left_module_at(b)?)).collect::<Result<_>>()?;
    let values = comps.iter().map(|t| t.complex.clone()).collect();
    let cs = &comps;
    let module = DgModule::right_from_fn(e.right_cat.clone(), values, &|b2, b, p, k, q, fj| {
        // [m ⊗ x]·f = [m ⊗ (x·f)]
        let mut acc = SparseVec::zero();
        for t in cs[b].lift_terms(p, k) {
            let xf = e.act_right(t.object, b, b2, t.q, &ev(t.j), q, &ev(fj));
            acc = acc.add_scaled(&t.coeff, &cs[b2].class_of(t.object, t.p, &ev(t.i), t.q + q, &xf));
        }
        acc
    })?;
    Ok(PhiHat { module, components: comps })
}

/// Witness (Δ ⊗ E)(a, c) -> E(a, c), [u ⊗ x] ↦ u·x, per degree; u ∈ Δ(a,b) = 𝒜(b,a).
pub fn delta_witness(t: &TensorOverCat, e: &DgBimodule, a: usize, c: usize, n: i64) -> Matrix {
    let field = e.left_cat.field();
    let ev = |k| SparseVec::unit(k, field);
    t.induced(n, e.value(a, c).dim(n), |term| {
        e.act_left(term.object, a, c, term.p, &ev(term.i), term.q, &ev(term.j))
    })
}
