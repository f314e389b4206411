//! Seeded random categories, modules and bimodules within a small size envelope.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::dgcore::random::{random_complex, random_scalar};
use crate::dgcore::{complexes_category, hom_complex, ringoid_truncated, ChainComplex, HomComplex, SmallDgCategory};
use crate::exactla::{FieldSpec, SparseVec};
use crate::freealg::{polynomial_ring, quantum_plane, Algebra};
use crate::grmod::{free_module, DegreeWindow};

use super::bimodule::{delta, representable_pair, DgBimodule};
use super::module::{ringoid_left_module, ringoid_right_module, yoneda, yoneda_left, DgModule};

/// A random category together with the data it was built from.
#[derive(Clone, Debug)]
pub struct TestCategory {
    pub cat: Arc<SmallDgCategory>,
    pub kind: CategoryKind,
}

#[derive(Clone, Debug)]
pub enum CategoryKind {
    /// Full subcategory of complexes on these objects.
    Complexes(Vec<ChainComplex>),
    /// Truncated ringoid on `weights`, with the algebra and its opposite.
    Ringoid { alg: Arc<Algebra>, opposite: Arc<Algebra>, weights: Vec<i64> },
}

const CUTOFF: u32 = 6;

pub fn complexes(field: FieldSpec, objects: Vec<ChainComplex>) -> TestCategory {
    let named: Vec<(String, ChainComplex)> =
        objects.iter().enumerate().map(|(i, c)| (format!("C{}", i), c.clone())).collect();
    let cat = Arc::new(complexes_category(field, &named).expect("complexes form a dg category"));
    TestCategory { cat, kind: CategoryKind::Complexes(objects) }
}

pub fn ringoid(presentation: &crate::freealg::Presentation, weights: Vec<i64>) -> TestCategory {
    let (cat, alg) = ringoid_truncated(presentation, &weights, CUTOFF).expect("weights within the cutoff");
    let opposite = Algebra::new(presentation.opposite(), CUTOFF);
    TestCategory {
        cat: Arc::new(cat),
        kind: CategoryKind::Ringoid { alg: Arc::new(alg), opposite: Arc::new(opposite), weights },
    }
}

pub fn random_test_category(rng: &mut ChaCha8Rng, field: FieldSpec, max_objects: usize) -> TestCategory {
    if rng.gen_bool(0.7) {
        let n = rng.gen_range(1..=max_objects);
        complexes(field, (0..n).map(|_| random_complex(rng, field, 2)).collect())
    } else {
        let pres = if rng.gen_bool(0.5) {
            polynomial_ring(field, 1).expect("polynomial ring")
        } else {
            let q = loop {
                let q = random_scalar(rng, field);
                if !q.is_zero() {
                    break q;
                }
            };
            quantum_plane(field, q).expect("quantum plane")
        };
        let n = rng.gen_range(1..=max_objects) as i64;
        let start = rng.gen_range(-1..=1);
        ringoid(&pres, (start..start + n).collect())
    }
}

/// Hom(C_−, V) as a right module, m·f = m ∘ f.
pub fn hom_into(tc: &TestCategory, objects: &[ChainComplex], v: &ChainComplex) -> DgModule {
    let cat = &tc.cat;
    let field = cat.field();
    let e = |k| SparseVec::unit(k, field);
    let parts: Vec<HomComplex> = objects.iter().map(|c| hom_complex(c, v)).collect();
    let homs: Vec<Vec<HomComplex>> =
        objects.iter().map(|x| objects.iter().map(|y| hom_complex(x, y)).collect()).collect();
    let values = parts.iter().map(|h| h.complex.clone()).collect();
    DgModule::right_from_fn(cat.clone(), values, &|a, b, p, mi, q, fj| {
        parts[a].compose_from(&parts[b], p, &e(mi), &homs[a][b], q, &e(fj))
    })
    .expect("hom into a complex is a right module")
}

/// Hom(V, C_−) as a left module, f·n = f ∘ n.
pub fn hom_from(tc: &TestCategory, objects: &[ChainComplex], v: &ChainComplex) -> DgModule {
    let cat = &tc.cat;
    let field = cat.field();
    let e = |k| SparseVec::unit(k, field);
    let parts: Vec<HomComplex> = objects.iter().map(|c| hom_complex(v, c)).collect();
    let homs: Vec<Vec<HomComplex>> =
        objects.iter().map(|x| objects.iter().map(|y| hom_complex(x, y)).collect()).collect();
    let values = parts.iter().map(|h| h.complex.clone()).collect();
    DgModule::left_from_fn(cat.clone(), values, &|b, c, q, fi, p, nj| {
        parts[c].compose_from(&homs[b][c], q, &e(fi), &parts[b], p, &e(nj))
    })
    .expect("hom from a complex is a left module")
}

/// E(a, b) = Hom(D_b, C_a) with g·e = g ∘ e and e·f = e ∘ f.
pub fn hom_bimodule(left: &TestCategory, cs: &[ChainComplex], right: &TestCategory, ds: &[ChainComplex]) -> DgBimodule {
    let field = left.cat.field();
    let e = |k| SparseVec::unit(k, field);
    let parts: Vec<Vec<HomComplex>> = cs.iter().map(|c| ds.iter().map(|d| hom_complex(d, c)).collect()).collect();
    let ch: Vec<Vec<HomComplex>> = cs.iter().map(|x| cs.iter().map(|y| hom_complex(x, y)).collect()).collect();
    let dh: Vec<Vec<HomComplex>> = ds.iter().map(|x| ds.iter().map(|y| hom_complex(x, y)).collect()).collect();
    let values = parts.iter().map(|r| r.iter().map(|h| h.complex.clone()).collect()).collect();
    DgBimodule::from_fn(
        left.cat.clone(),
        right.cat.clone(),
        values,
        &|a, a2, b, q, gi, p, ej| parts[a2][b].compose_from(&ch[a][a2], q, &e(gi), &parts[a][b], p, &e(ej)),
        &|a, b, b2, p, ei, q, fj| parts[a][b2].compose_from(&parts[a][b], p, &e(ei), &dh[b2][b], q, &e(fj)),
    )
    .expect("hom bimodule")
}

fn graded_window() -> DegreeWindow {
    DegreeWindow::new(-4, 4).expect("window")
}

fn one_right_summand(rng: &mut ChaCha8Rng, tc: &TestCategory) -> DgModule {
    let field = tc.cat.field();
    let n = tc.cat.num_objects();
    match (&tc.kind, rng.gen_range(0..3)) {
        (CategoryKind::Complexes(objs), 0) => hom_into(tc, objs, &random_complex(rng, field, 2)),
        (CategoryKind::Ringoid { alg, weights, .. }, 0) => {
            let w = free_module(alg.clone(), &[rng.gen_range(0..=2)], graded_window()).expect("free module");
            ringoid_right_module(&tc.cat, alg, weights, &w).expect("graded module")
        }
        _ => yoneda(&tc.cat, rng.gen_range(0..n)).shift(rng.gen_range(-1..=1)),
    }
}

fn one_left_summand(rng: &mut ChaCha8Rng, tc: &TestCategory) -> DgModule {
    let field = tc.cat.field();
    let n = tc.cat.num_objects();
    match (&tc.kind, rng.gen_range(0..3)) {
        (CategoryKind::Complexes(objs), 0) => hom_from(tc, objs, &random_complex(rng, field, 2)),
        (CategoryKind::Ringoid { alg, opposite, weights }, 0) => {
            let w = free_module(opposite.clone(), &[rng.gen_range(-2..=0)], graded_window()).expect("free module");
            ringoid_left_module(&tc.cat, alg, weights, &w).expect("graded module")
        }
        _ => yoneda_left(&tc.cat, rng.gen_range(0..n)).shift(rng.gen_range(-1..=1)),
    }
}

pub fn random_right_module(rng: &mut ChaCha8Rng, tc: &TestCategory) -> DgModule {
    let m = one_right_summand(rng, tc);
    if rng.gen_bool(0.3) {
        m.direct_sum(&one_right_summand(rng, tc)).expect("same category")
    } else {
        m
    }
}

pub fn random_left_module(rng: &mut ChaCha8Rng, tc: &TestCategory) -> DgModule {
    let m = one_left_summand(rng, tc);
    if rng.gen_bool(0.3) {
        m.direct_sum(&one_left_summand(rng, tc)).expect("same category")
    } else {
        m
    }
}

/// A representable pair, a hom bimodule between complexes categories, or the diagonal when
/// both sides are the same category; shifted by -1, 0 or 1.
pub fn random_bimodule(rng: &mut ChaCha8Rng, left: &TestCategory, right: &TestCategory) -> DgBimodule {
    let same = Arc::ptr_eq(&left.cat, &right.cat);
    let e = match (&left.kind, &right.kind, rng.gen_range(0..3)) {
        (_, _, 0) if same => delta(&left.cat),
        (CategoryKind::Complexes(cs), CategoryKind::Complexes(ds), 1) => hom_bimodule(left, cs, right, ds),
        _ => {
            let x = rng.gen_range(0..left.cat.num_objects());
            let y = rng.gen_range(0..right.cat.num_objects());
            representable_pair(&left.cat, x, &right.cat, y).expect("representable pair")
        }
    };
    e.shift(rng.gen_range(-1..=1))
}
