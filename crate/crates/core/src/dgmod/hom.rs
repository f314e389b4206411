use std::collections::BTreeMap;
use std::sync::Arc;

use crate::dgcore::{hom_complex, is_chain_iso, ChainComplex, HomComplex};
use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, sign, Matrix, SparseVec, Subspace};

use super::bimodule::{phi_hat, DgBimodule};
use super::module::{DgModule, Variance};
use super::tensor::TensorOverCat;

/// Morphism complex Hom(M, N) of dg modules: degree-n families φ_x : M(x) -> N(x) of degree n
/// with φ(m·f) = φ(m)·f (right modules) or φ(f·n) = (-1)^{|φ||f|} f·φ(n) (left modules).
/// Each degree is a subspace of ⊕_x Hom(M(x), N(x))^n cut out by naturality.
#[derive(Clone, Debug)]
pub struct ModuleHom {
    pub complex: ChainComplex,
    parts: Vec<HomComplex>,
    spaces: BTreeMap<i64, Subspace>,
}

impl ModuleHom {
    fn offset(&self, x: usize, n: i64) -> usize {
        self.parts[..x].iter().map(|p| p.complex.dim(n)).sum()
    }

    fn ambient_dim(&self, n: i64) -> usize {
        self.parts.iter().map(|p| p.complex.dim(n)).sum()
    }

    /// Components φ_x as maps per source degree, for the element with coordinates `c` in degree n.
    pub fn components(&self, n: i64, c: &SparseVec) -> Vec<BTreeMap<i64, Matrix>> {
        let v = match self.spaces.get(&n) {
            Some(s) => s.combine(c),
            None => SparseVec::zero(),
        };
        (0..self.parts.len())
            .map(|x| {
                let block = v.slice(self.offset(x, n), self.parts[x].complex.dim(n));
                self.parts[x].maps_of(n, &block)
            })
            .collect()
    }

    /// Coordinates of the family with component `comp(x, m)` : M(x)^m -> N(x)^{m+n}, or None
    /// if it is not natural.
    pub fn coords_of(&self, n: i64, comp: impl Fn(usize, i64) -> Matrix) -> Option<SparseVec> {
        let mut entries = Vec::new();
        for (x, part) in self.parts.iter().enumerate() {
            let off = self.offset(x, n);
            let v = part.vector_of(n, |m| comp(x, m));
            entries.extend(v.shifted(off).into_entries());
        }
        let v = SparseVec::from_entries(entries);
        match self.spaces.get(&n) {
            Some(s) => s.contains(&v).then(|| s.coords(&v)),
            None => v.is_zero().then(SparseVec::zero),
        }
    }

    /// The degree-0 cycles: closed natural transformations.
    pub fn closed_maps(&self) -> Subspace {
        kernel_basis(&self.complex.d(0))
    }
}

pub fn module_hom(m: &DgModule, n: &DgModule) -> Result<ModuleHom> {
    if !Arc::ptr_eq(m.cat(), n.cat()) || m.variance() != n.variance() {
        return Err(Error::Mismatch("morphisms between modules of different kinds".into()));
    }
    let cat = m.cat();
    let field = cat.field();
    let count = cat.num_objects();
    let parts: Vec<HomComplex> = (0..count).map(|x| hom_complex(m.value(x), n.value(x))).collect();
    let mut h = ModuleHom { complex: ChainComplex::zero(field), parts, spaces: BTreeMap::new() };
    let sup: Vec<(i64, i64)> = h.parts.iter().filter_map(|p| p.complex.support()).collect();
    let (Some(lo), Some(hi)) = (sup.iter().map(|s| s.0).min(), sup.iter().map(|s| s.1).max()) else {
        return Ok(h);
    };
    let e = |k| SparseVec::unit(k, field);
    for deg in lo..=hi {
        let amb = h.ambient_dim(deg);
        let idx = |x: usize, src: i64, r: usize, s: usize| h.offset(x, deg) + h.parts[x].entry_index(deg, src, r, s);
        let mut rows: Vec<SparseVec> = Vec::new();
        for a in 0..count {
            for b in 0..count {
                let hom = cat.hom(a, b);
                match m.variance() {
                    Variance::Right => {
                        // φ_a(m·f) - φ_b(m)·f = 0 for m ∈ M(b)^p, f ∈ 𝒜(a,b)^q
                        for p in m.value(b).degrees() {
                            for q in hom.degrees() {
                                let out = n.value(a).dim(p + q + deg);
                                if out == 0 {
                                    continue;
                                }
                                let nb = n.value(b).dim(p + deg);
                                for i in 0..m.value(b).dim(p) {
                                    for j in 0..hom.dim(q) {
                                        let w = m.act_right(a, b, p, &e(i), q, &e(j));
                                        let rf: Vec<SparseVec> =
                                            (0..nb).map(|r| n.act_right(a, b, p + deg, &e(r), q, &e(j))).collect();
                                        for t in 0..out {
                                            let mut row = Vec::new();
                                            for (s, c) in w.iter() {
                                                row.push((idx(a, p + q, t, *s), c.clone()));
                                            }
                                            for (r, v) in rf.iter().enumerate() {
                                                if let Some(c) = v.get(t) {
                                                    row.push((idx(b, p, r, i), -c));
                                                }
                                            }
                                            let row = SparseVec::from_entries(row);
                                            if !row.is_zero() {
                                                rows.push(row);
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                    Variance::Left => {
                        // φ_b(f·x) - (-1)^{n q} f·φ_a(x) = 0 for x ∈ M(a)^p, f ∈ 𝒜(a,b)^q
                        for p in m.value(a).degrees() {
                            for q in hom.degrees() {
                                let out = n.value(b).dim(p + q + deg);
                                if out == 0 {
                                    continue;
                                }
                                let s_nq = sign(field, deg * q);
                                let na = n.value(a).dim(p + deg);
                                for i in 0..m.value(a).dim(p) {
                                    for j in 0..hom.dim(q) {
                                        let w = m.act_left(a, b, q, &e(j), p, &e(i));
                                        let fr: Vec<SparseVec> =
                                            (0..na).map(|r| n.act_left(a, b, q, &e(j), p + deg, &e(r))).collect();
                                        for t in 0..out {
                                            let mut row = Vec::new();
                                            for (s, c) in w.iter() {
                                                row.push((idx(b, p + q, t, *s), c.clone()));
                                            }
                                            for (r, v) in fr.iter().enumerate() {
                                                if let Some(c) = v.get(t) {
                                                    row.push((idx(a, p, r, i), -(&s_nq * c)));
                                                }
                                            }
                                            let row = SparseVec::from_entries(row);
                                            if !row.is_zero() {
                                                rows.push(row);
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
        let space = kernel_basis(&Matrix::from_rows(field, amb, rows));
        h.spaces.insert(deg, space);
    }
    let complex = ChainComplex::from_fn(
        field,
        lo,
        hi,
        |d| h.spaces[&d].dim(),
        |d| {
            let src = &h.spaces[&d];
            let cols: Vec<SparseVec> = src
                .basis()
                .iter()
                .map(|v| {
                    let mut entries = Vec::new();
                    for (x, part) in h.parts.iter().enumerate() {
                        let block = v.slice(h.offset(x, d), part.complex.dim(d));
                        let dv = part.complex.apply_d(d, &block);
                        entries.extend(dv.shifted(h.offset(x, d + 1)).into_entries());
                    }
                    let dv = SparseVec::from_entries(entries);
                    match h.spaces.get(&(d + 1)) {
                        Some(s) => s.coords(&dv),
                        None => SparseVec::zero(),
                    }
                })
                .collect();
            Matrix::from_columns(field, h.spaces.get(&(d + 1)).map_or(0, |s| s.dim()), &cols)
        },
    )?;
    h.complex = complex;
    Ok(h)
}

/// Φ̃_E(N)(a) = Hom(E(a, −), N), with (φ·f)(e) = φ(f·e).
pub struct PhiTilde {
    pub module: DgModule,
    pub components: Vec<ModuleHom>,
}

pub fn phi_tilde(e: &DgBimodule, n: &DgModule) -> Result<PhiTilde> {
    if !Arc::ptr_eq(n.cat(), e.right_cat()) || n.variance() != Variance::Right {
        return Err(Error::Mismatch("module is not a right module over the right category".into()));
    }
    let a_cat = e.left_cat();
    let field = a_cat.field();
    let ev = |k| SparseVec::unit(k, field);
    let na = a_cat.num_objects();
    let comps: Vec<ModuleHom> =
        (0..na).map(|a| module_hom(&e.right_module_at(a)?, n)).collect::<Result<_>>()?;
    let values = comps.iter().map(|h| h.complex.clone()).collect();
    let cs = &comps;
    let module = DgModule::right_from_fn(a_cat.clone(), values, &|a2, a, p, k, q, fj| {
        // φ ∈ Hom(E(a,−), N)^p, f ∈ 𝒜(a2,a)^q; (φ·f)_b = φ_b ∘ (f·−) on E(a2,b)
        let phi = cs[a].components(p, &ev(k));
        cs[a2]
            .coords_of(p + q, |b, r| {
                let src = e.value(a2, b);
                let tgt = n.value(b);
                let cols: Vec<SparseVec> = (0..src.dim(r))
                    .map(|i| {
                        let fe = e.act_left(a2, a, b, q, &ev(fj), r, &ev(i));
                        match phi[b].get(&(r + q)) {
                            Some(mat) => mat.apply(&fe),
                            None => SparseVec::zero(),
                        }
                    })
                    .collect();
                Matrix::from_columns(field, tgt.dim(r + p + q), &cols)
            })
            .expect("precomposition with f·− is natural")
    });
    Ok(PhiTilde { module: module?, components: comps })
}

/// Both sides of the Φ̂ ⊣ Φ̃ adjunction and the verdict on θ ↦ θ♭, θ♭(m)(e) = θ([m ⊗ e]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    /// (degree, dim Hom(Φ̂_E M, N), dim Hom(M, Φ̃_E N))
    pub dims: Vec<(i64, usize, usize)>,
    pub iso: bool,
}

pub fn adjunction_check(e: &DgBimodule, m: &DgModule, n: &DgModule) -> Result<AdjunctionReport> {
    let field = m.cat().field();
    let ev = |k| SparseVec::unit(k, field);
    let ph = phi_hat(e, m)?;
    let pt = phi_tilde(e, n)?;
    let left = module_hom(&ph.module, n)?;
    let right = module_hom(m, &pt.module)?;
    let (lc, rc) = (&left.complex, &right.complex);
    let lo = lc.support().map(|s| s.0).into_iter().chain(rc.support().map(|s| s.0)).min().unwrap_or(0);
    let hi = lc.support().map(|s| s.1).into_iter().chain(rc.support().map(|s| s.1)).max().unwrap_or(-1);
    let mut maps: BTreeMap<i64, Matrix> = BTreeMap::new();
    let ok = std::cell::Cell::new(true);
    for deg in lo - 1..=hi + 1 {
        let mut cols = Vec::new();
        for k in 0..lc.dim(deg) {
            let theta = left.components(deg, &ev(k));
            let flat = right.coords_of(deg, |a, p| {
                let hom_a = &pt.components[a];
                let col: Vec<SparseVec> = (0..m.value(a).dim(p))
                    .map(|i| {
                        hom_a
                            .coords_of(p + deg, |b, r| flat_component(&ph.components[b], &theta[b], e, n, a, b, p, i, r, deg))
                            .unwrap_or_else(|| {
                                ok.set(false);
                                SparseVec::zero()
                            })
                    })
                    .collect();
                Matrix::from_columns(field, pt.module.value(a).dim(p + deg), &col)
            });
            match flat {
                Some(v) => cols.push(v),
                None => {
                    ok.set(false);
                    cols.push(SparseVec::zero());
                }
            }
        }
        maps.insert(deg, Matrix::from_columns(field, rc.dim(deg), &cols));
    }
    let dims = (lo..=hi).map(|d| (d, lc.dim(d), rc.dim(d))).collect();
    let iso = ok.get()
        && is_chain_iso(lc, rc, |d| maps.get(&d).cloned().unwrap_or_else(|| Matrix::zero(field, rc.dim(d), lc.dim(d))));
    Ok(AdjunctionReport { dims, iso })
}

/// Component at b of θ♭(m_i): E(a,b)^r -> N(b)^{r+p+deg}, e ↦ θ_b([m_i ⊗ e]).
#[allow(clippy::too_many_arguments)]
fn flat_component(
    t: &TensorOverCat,
    theta_b: &BTreeMap<i64, Matrix>,
    e: &DgBimodule,
    n: &DgModule,
    a: usize,
    b: usize,
    p: i64,
    i: usize,
    r: i64,
    deg: i64,
) -> Matrix {
    let field = n.cat().field();
    let ev = |k| SparseVec::unit(k, field);
    let cols: Vec<SparseVec> = (0..e.value(a, b).dim(r))
        .map(|j| {
            let class = t.class_of(a, p, &ev(i), r, &ev(j));
            match theta_b.get(&(p + r)) {
                Some(mat) => mat.apply(&class),
                None => SparseVec::zero(),
            }
        })
        .collect();
    Matrix::from_columns(field, n.value(b).dim(r + p + deg), &cols)
}

/// Enriched Yoneda: Hom(h_X, M) -> M(X), φ ↦ φ_X(1_X), checked to be a chain isomorphism.
/// Returns (dim H^0 Hom(h_X, M), dim H^0 M(X), iso).
pub fn yoneda_hom_check(m: &DgModule, x: usize) -> Result<(usize, usize, bool)> {
    let cat = m.cat();
    let field = cat.field();
    let hx = super::module::yoneda(cat, x);
    let h = module_hom(&hx, m)?;
    let target = m.value(x);
    let eval = |d: i64| {
        let cols: Vec<SparseVec> = (0..h.complex.dim(d))
            .map(|k| {
                let comps = h.components(d, &SparseVec::unit(k, field));
                match comps[x].get(&0) {
                    Some(mat) => mat.apply(cat.unit(x)),
                    None => SparseVec::zero(),
                }
            })
            .collect();
        Matrix::from_columns(field, target.dim(d), &cols)
    };
    let iso = is_chain_iso(&h.complex, target, eval);
    Ok((h.complex.homology(0).dim(), target.homology(0).dim(), iso))
}
