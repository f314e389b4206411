//! Seeded instances behind `dg-check`. Instance i of a run with seed s uses seed s + i, so a
//! failing instance is reproduced by `--seed <its seed> --count 1`.

use rand::Rng;

use crate::dgcore::random::rng;
use crate::dgmod::random::{
    random_bimodule, random_left_module, random_right_module, random_test_category, ringoid, CategoryKind,
};
use crate::dgmod::{adjunction_check, delta_tensor_check, ringoid_left_module, yoneda_tensor_check};
use crate::error::Result;
use crate::exactla::{FieldSpec, SparseVec};
use crate::freealg::{quantum_plane, FreePoly};
use crate::grmod::{free_module, DegreeWindow};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Yoneda,
    Delta,
    Adjunction,
    Ringoid,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub seed: u64,
    pub passed: bool,
    pub detail: String,
}

pub fn run_instance(suite: Suite, field: FieldSpec, seed: u64) -> Outcome {
    let res = match suite {
        Suite::Yoneda => yoneda_instance(field, seed),
        Suite::Delta => delta_instance(field, seed),
        Suite::Adjunction => adjunction_instance(field, seed),
        Suite::Ringoid => ringoid_instance(field, seed),
    };
    match res {
        Ok((passed, detail)) => Outcome { seed, passed, detail },
        Err(e) => Outcome { seed, passed: false, detail: format!("error: {}", e) },
    }
}

fn yoneda_instance(field: FieldSpec, seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed);
    let tc = random_test_category(&mut r, field, 3);
    let n = random_left_module(&mut r, &tc);
    let objects = tc.cat.num_objects();
    for x in 0..objects {
        if !yoneda_tensor_check(&n, x)? {
            return Ok((false, format!("h_{} ⊗ N is not N({})", x, x)));
        }
    }
    Ok((true, format!("{} objects", objects)))
}

fn delta_instance(field: FieldSpec, seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed);
    let a = random_test_category(&mut r, field, 3);
    let b = random_test_category(&mut r, field, 2);
    let e = random_bimodule(&mut r, &a, &b);
    let ok = delta_tensor_check(&e)?;
    Ok((ok, format!("{}x{} objects", a.cat.num_objects(), b.cat.num_objects())))
}

fn adjunction_instance(field: FieldSpec, seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed);
    let a = random_test_category(&mut r, field, 2);
    let b = random_test_category(&mut r, field, 2);
    let e = random_bimodule(&mut r, &a, &b);
    let m = random_right_module(&mut r, &a);
    let n = random_right_module(&mut r, &b);
    let rep = adjunction_check(&e, &m, &n)?;
    let dims: Vec<String> = rep.dims.iter().map(|(d, x, y)| format!("{}:{}/{}", d, x, y)).collect();
    Ok((rep.iso, dims.join(" ")))
}

/// Quantum plane ringoid on a random run of weights: composition against normal-form
/// products, then h_u ⊗ N against the graded module N evaluated at u.
fn ringoid_instance(field: FieldSpec, seed: u64) -> Result<(bool, String)> {
    let mut r = rng(seed);
    let q = loop {
        let q = field.from_i64(r.gen_range(-3..=3));
        if !q.is_zero() {
            break q;
        }
    };
    let start = r.gen_range(-2..=0);
    let len = r.gen_range(1..=4);
    let weights: Vec<i64> = (start..start + len).collect();
    let tc = ringoid(&quantum_plane(field, q.clone())?, weights.clone());
    let CategoryKind::Ringoid { alg, opposite, .. } = &tc.kind else { unreachable!() };
    let e = |k| SparseVec::unit(k, field);
    for (x, &wx) in weights.iter().enumerate() {
        for (y, &wy) in weights.iter().enumerate().skip(x) {
            for (z, &wz) in weights.iter().enumerate().skip(y) {
                for (fi, f) in alg.basis(wy - wx).iter().enumerate() {
                    for (gi, g) in alg.basis(wz - wy).iter().enumerate() {
                        let prod = FreePoly::monomial(field, f.clone(), field.one())
                            .mul(&FreePoly::monomial(field, g.clone(), field.one()));
                        let expected = alg.to_vector(&alg.normal_form(&prod), wz - wx)?;
                        if tc.cat.compose(x, y, z, 0, &e(gi), 0, &e(fi)) != expected {
                            return Ok((false, format!("composition {}->{}->{} differs", wx, wy, wz)));
                        }
                    }
                }
            }
        }
    }
    let shift = r.gen_range(-1..=1);
    let w = free_module(opposite.clone(), &[shift], DegreeWindow::new(-4, 4)?)?;
    let n = ringoid_left_module(&tc.cat, alg, &weights, &w)?;
    for (u, &wu) in weights.iter().enumerate() {
        let t = crate::dgmod::tensor_over_cat(&crate::dgmod::yoneda(&tc.cat, u), &n)?;
        if t.complex.dim(0) != w.dim(wu).unwrap_or(0) || !yoneda_tensor_check(&n, u)? {
            return Ok((false, format!("h_{} ⊗ N disagrees with N({})", wu, wu)));
        }
    }
    Ok((true, format!("q={} weights {:?}", q, weights)))
}
