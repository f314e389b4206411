//! End-to-end acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::Instant;

use common::{binomial, chain_map_dim, ideal_span_dim, IdealSpan};
use ncproj::bigr::{
    beta_window, delta_bimodule, free_bimodule, input_window, q_compose_check, saturation_margin, segre,
    segre_generation_check, BetaSide, BiWindow, Exhaust,
};
use ncproj::dgcore::random::{random_complex, rng};
use ncproj::dgcore::{hom_complex, is_chain_map, tensor_dgcat, unit_category, SmallDgCategory};
use ncproj::dgmod::random::{
    random_bimodule, random_left_module, random_right_module, random_test_category, ringoid, CategoryKind,
};
use ncproj::dgmod::{
    adjunction_check, delta_tensor_check, ringoid_left_module, tensor_over_cat, yoneda, yoneda_tensor_check,
};
use ncproj::exactla::{rank, FieldSpec, Matrix, Scalar, SparseVec, Subspace};
use ncproj::freealg::{
    fermat_cubic, free_algebra, graded_dim, kanazawa, polynomial_ring, quantum_plane, quantum_space, Algebra,
    FreePoly, Generator, Presentation, QParams, Word,
};
use ncproj::grmod::{
    ext_kk_bounded, free_module, q_windowed, torsion_submodule, truncated_quotient, DegreeWindow, WindowedModule,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

const Q: FieldSpec = FieldSpec::RATIONALS;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn nonzero_scalar(r: &mut ChaCha8Rng) -> Scalar {
    loop {
        let num: i64 = r.gen_range(-5..=5);
        let den: i64 = r.gen_range(1..=4);
        if num != 0 {
            return Q.parse_scalar(&format!("{}/{}", num, den)).unwrap();
        }
    }
}

fn random_q(r: &mut ChaCha8Rng, n: usize) -> QParams {
    let mut q = QParams::new();
    for i in 0..=n {
        for j in i + 1..=n {
            q.insert((i, j), nonzero_scalar(r));
        }
    }
    q
}

fn criterion_1() -> Outcome {
    let mut r = rng(101);
    let mut cases: Vec<(String, Presentation)> = Vec::new();
    for q in ["2", "-1", "1/3"] {
        cases.push((format!("quantum plane q={}", q), quantum_plane(Q, Q.parse_scalar(q).unwrap()).map_err(err)?));
    }
    cases.push(("quantum P^2".into(), quantum_space(Q, 2, &random_q(&mut r, 2)).map_err(err)?));
    cases.push(("k[x,y]".into(), polynomial_ring(Q, 2).map_err(err)?));
    cases.push(("Fermat cubic".into(), fermat_cubic(Q).map_err(err)?));
    cases.push(("Kanazawa n=2 phi=1".into(), kanazawa(Q, 2, &Q.one(), &QParams::new()).map_err(err)?));
    for (name, p) in &cases {
        for d in 0..=6 {
            let got = graded_dim(p, d, 6).map_err(err)?.0;
            let want = ideal_span_dim(p, d);
            ensure(got == want, || format!("{} degree {}: {} vs oracle {}", name, d, got, want))?;
        }
    }
    Ok(format!("{} algebras, d <= 6", cases.len()))
}

fn criterion_2() -> Outcome {
    let mut r = rng(202);
    for n in [1usize, 2] {
        for _ in 0..3 {
            let p = quantum_space(Q, n, &random_q(&mut r, n)).map_err(err)?;
            for d in 0..=6u32 {
                let got = graded_dim(&p, d, 6).map_err(err)?.0 as u64;
                let want = binomial(d as u64 + n as u64, n as u64);
                ensure(got == want, || format!("n={} d={}: {} vs {}", n, d, got, want))?;
            }
        }
    }
    Ok("n in {1,2}, 3 q-matrices each".into())
}

fn saturated_free(p: &Presentation, out: DegreeWindow, n_max: u32) -> Result<(WindowedModule, ncproj::grmod::QResult), String> {
    let probe = Arc::new(Algebra::new(p.clone(), 1));
    let margin = saturation_margin(&probe, n_max) as i64;
    let input = DegreeWindow::new(0, out.hi + margin).map_err(err)?;
    let alg = Arc::new(Algebra::new(p.clone(), input.hi as u32));
    let m = free_module(alg, &[0], input).map_err(err)?;
    let q = q_windowed(&m, n_max, Some(out)).map_err(err)?;
    Ok((m, q))
}

fn criterion_3() -> Outcome {
    let out = DegreeWindow::new(-3, 3).map_err(err)?;
    let (_, q) = saturated_free(&polynomial_ring(Q, 1).map_err(err)?, out, 6)?;
    for d in out.degrees() {
        let rep = q.degree(d).ok_or("missing degree")?;
        ensure(q.module.dim(d) == Some(1), || format!("degree {} has dim {:?}", d, q.module.dim(d)))?;
        ensure(rep.certified, || format!("degree {} not certified", d))?;
        // Hom(A_{>=n}, A)_d = A_{n+d} jumps from 0 to k exactly at n = -d
        let expected = (-d).max(0) as u32;
        ensure(rep.stabilized_at == Some(expected), || {
            format!("degree {} stabilized at {:?}, expected {}", d, rep.stabilized_at, expected)
        })?;
    }
    Ok("dims 1 on [-3,3], all certified".into())
}

fn criterion_4() -> Outcome {
    let out = DegreeWindow::new(-2, 4).map_err(err)?;
    let (m, q) = saturated_free(&polynomial_ring(Q, 2).map_err(err)?, out, 4)?;
    let dims = q.module.dims();
    ensure(dims == vec![0, 0, 1, 2, 3, 4, 5], || format!("dims {:?}", dims))?;
    ensure(q.fully_certified(), || "not all degrees certified".into())?;
    for d in 0..=4 {
        let u = q.unit_map(&m, d).ok_or("no unit map")?;
        ensure(u.nrows() == u.ncols() && rank(&u) == u.nrows(), || format!("unit map not iso in degree {}", d))?;
    }
    Ok("Q(k[x0,x1]) = k[x0,x1] on [0,4], 0 on [-2,-1]".into())
}

/// Stepwise word action inside the window; None if the word leaves the window on a nonzero vector.
fn act(m: &WindowedModule, w: &Word, d: i64, v: &SparseVec) -> Option<(i64, SparseVec)> {
    let mut cur = v.clone();
    let mut deg = d;
    for &g in w.0.iter().rev() {
        if cur.is_zero() {
            return Some((deg + 1, cur));
        }
        cur = m.action(g as usize, deg)?.apply(&cur);
        deg += 1;
    }
    Some((deg, cur))
}

fn words(k: u32, len: u32) -> Vec<Word> {
    common::all_words(&vec![1; k as usize], len)
}

/// Least n with every length-n word killing v (checked through `killed`), up to a bound.
fn annihilator_level(
    m: &WindowedModule,
    d: i64,
    v: &SparseVec,
    killed: &dyn Fn(i64, &SparseVec) -> bool,
) -> Result<u32, String> {
    for n in 0..=8 {
        let mut all = true;
        for w in words(2, n) {
            let (deg, img) = act(m, &w, d, v).ok_or("word left the window")?;
            if !killed(deg, &img) {
                all = false;
                break;
            }
        }
        if all {
            return Ok(n);
        }
    }
    Err("no annihilation level below 9".into())
}

fn random_vector(r: &mut ChaCha8Rng, dim: usize) -> SparseVec {
    SparseVec::from_entries((0..dim).map(|i| (i, Q.from_i64(r.gen_range(-2..=2)))).collect())
}

/// M, a submodule M' generated by random elements, and M'' = M / M'.
struct Extension {
    m: WindowedModule,
    sub: Vec<Subspace>,
    quotient: WindowedModule,
    proj: Vec<Matrix>,
    submodule: WindowedModule,
}

fn random_extension(r: &mut ChaCha8Rng, alg: &Arc<Algebra>, window: DegreeWindow, finite: bool) -> Result<Extension, String> {
    let mut m = WindowedModule::zero(alg.clone(), window);
    let summands = r.gen_range(1..=2);
    for _ in 0..summands {
        let s = truncated_quotient(alg.clone(), r.gen_range(1..=3), window).map_err(err)?;
        m = m.direct_sum(&s).map_err(err)?;
    }
    if !finite {
        m = m.direct_sum(&free_module(alg.clone(), &[0], window).map_err(err)?).map_err(err)?;
    }
    let gens: Vec<(i64, SparseVec)> = (0..r.gen_range(1..=2))
        .filter_map(|_| {
            let d = r.gen_range(0..=2);
            let dim = m.dim(d).unwrap_or(0);
            (dim > 0).then(|| (d, random_vector(r, dim)))
        })
        .collect();
    let sub = m.generated(&gens);
    let (submodule, _) = m.submodule(&sub).map_err(err)?;
    let (quotient, proj) = m.quotient(&sub).map_err(err)?;
    Ok(Extension { m, sub, quotient, proj, submodule })
}

fn is_torsion(m: &WindowedModule) -> Result<(bool, bool), String> {
    let t = torsion_submodule(m).map_err(err)?;
    Ok((t.is_everything(), t.fully_certified()))
}

fn criterion_5() -> Outcome {
    let alg = Arc::new(Algebra::new(polynomial_ring(Q, 2).map_err(err)?, 8));
    let window = DegreeWindow::new(0, 6).map_err(err)?;
    let mut r = rng(505);
    let mut checked_elements = 0;
    let mut non_torsion_seen = 0;
    for i in 0..30 {
        let finite = i < 20;
        let ext = random_extension(&mut r, &alg, window, finite)?;
        let (tm, cm) = is_torsion(&ext.m)?;
        let (ts, cs) = is_torsion(&ext.submodule)?;
        let (tq, cq) = is_torsion(&ext.quotient)?;
        ensure(tm == (ts && tq), || format!("instance {}: τM = M is {}, ends {} and {}", i, tm, ts, tq))?;
        if !tm {
            non_torsion_seen += 1;
        }
        if !finite {
            continue;
        }
        ensure(tm && cm && cs && cq, || format!("finite instance {} not certified torsion", i))?;
        let zero = |_: i64, v: &SparseVec| v.is_zero();
        // p(v) = 0 in M'' exactly when v lies in M'
        let proj_zero = |deg: i64, v: &SparseVec| -> bool {
            let i = window.index(deg).unwrap();
            let killed = v.is_zero() || ext.proj[i].apply(v).is_zero();
            assert_eq!(killed, v.is_zero() || ext.sub[i].contains(v), "projection kernel is not M'");
            killed
        };
        for d in window.degrees() {
            for k in 0..ext.m.dim(d).unwrap_or(0) {
                let v = SparseVec::unit(k, Q);
                // n: A_{>=n} p(m) = 0 in M''
                let n = annihilator_level(&ext.m, d, &v, &proj_zero)?;
                let mut levels = vec![n];
                for t in words(2, n) {
                    let (deg, atm) = act(&ext.m, &t, d, &v).ok_or("word left the window")?;
                    levels.push(annihilator_level(&ext.m, deg, &atm, &zero)?);
                }
                let big_n = 2 * levels.iter().max().unwrap() + 1;
                for w in words(2, big_n) {
                    let (_, img) = act(&ext.m, &w, d, &v).ok_or("word left the window")?;
                    ensure(img.is_zero(), || format!("instance {}: weight-{} word does not kill m", i, big_n))?;
                }
                checked_elements += 1;
            }
        }
    }
    Ok(format!(
        "20 finite-length extensions ({} elements annihilated at the bound), 10 mixed ({} non-torsion)",
        checked_elements, non_torsion_seen
    ))
}

fn criterion_6() -> Outcome {
    let out = BiWindow::square(-2, 3).map_err(err)?;
    let cases = [
        ("k[x]⊗k[y]", polynomial_ring(Q, 1).map_err(err)?, polynomial_ring(Q, 1).map_err(err)?, 6),
        (
            "quantum plane⊗quantum plane",
            quantum_plane(Q, Q.from_i64(2)).map_err(err)?,
            quantum_plane(Q, Q.parse_scalar("-1/3").unwrap()).map_err(err)?,
            4,
        ),
    ];
    let mut summary = Vec::new();
    for (name, pa, pb, n_max) in cases {
        let probe_a = Arc::new(Algebra::new(pa.clone(), 1));
        let probe_b = Arc::new(Algebra::new(pb.clone(), 1));
        let input = input_window(&probe_a, &probe_b, out, Exhaust::Both, n_max).map_err(err)?;
        let a = Arc::new(Algebra::new(pa, input.hi1 as u32));
        let b = Arc::new(Algebra::new(pb, input.hi2 as u32));
        let m = free_bimodule(a, b, input).map_err(err)?;
        let rep = q_compose_check(&m, out, n_max).map_err(err)?;
        ensure(rep.certified_count() > 0, || format!("{}: nothing certified", name))?;
        ensure(rep.passes(), || format!("{}: composites disagree", name))?;
        summary.push(format!("{} {}/{}", name, rep.certified_count(), rep.cells.len()));
    }
    Ok(summary.join(", "))
}

fn criterion_7() -> Outcome {
    let out = BiWindow::square(-1, 3).map_err(err)?;
    let p = polynomial_ring(Q, 2).map_err(err)?;
    let n_max = 3;
    let probe = Arc::new(Algebra::new(p.clone(), 1));
    let input = input_window(&probe, &probe, out, Exhaust::Both, n_max).map_err(err)?;
    let a = Arc::new(Algebra::new(p, (input.hi1 + input.hi2) as u32));
    let delta = delta_bimodule(a, input).map_err(err)?;
    let mut certified = 0;
    for side in [BetaSide::Left, BetaSide::Right] {
        let rep = beta_window(&delta, side, out, n_max).map_err(err)?;
        ensure(rep.certified_count() > 0, || "nothing certified".into())?;
        ensure(rep.iso_on_certified(), || format!("{:?}: not an isomorphism on a certified cell", side))?;
        for c in rep.cells.iter().filter(|c| c.certified) {
            // k[x0,x1] has dim A_d = d + 1
            let want = (c.bidegree.0 + c.bidegree.1 + 1).max(0) as usize;
            ensure(c.target_dim == want, || format!("cell {:?}: dim {} vs {}", c.bidegree, c.target_dim, want))?;
        }
        certified += rep.certified_count();
    }
    Ok(format!("{} certified cells over both sides", certified))
}

fn criterion_8() -> Outcome {
    let p = polynomial_ring(Q, 2).map_err(err)?;
    let s = segre(&p, &p, 4).map_err(err)?;
    let want: Vec<usize> = (0..=4).map(|d| (d + 1) * (d + 1)).collect();
    ensure(s.dims == want, || format!("dims {:?}", s.dims))?;
    // 4 generators give 16 words of weight 2 against dim S_2 = 9
    ensure(s.relation_counts[2] == 16 - 9, || format!("weight-2 relations {}", s.relation_counts[2]))?;
    let steps = segre_generation_check(&p, &p, 4).map_err(err)?;
    ensure(steps.len() >= 3 && steps.iter().all(|st| st.surjective), || format!("{:?}", steps))?;
    Ok("dims [1,4,9,16,25], 7 relations, S_1·S_d onto".into())
}

fn criterion_9() -> Outcome {
    let plane = Algebra::new(quantum_plane(Q, Q.from_i64(3)).map_err(err)?, 6);
    let t = ext_kk_bounded(&plane, 3, 6).map_err(err)?;
    let expect: [(usize, Option<usize>); 4] = [(1, Some(0)), (2, Some(1)), (1, Some(2)), (0, None)];
    for (p, (dim, weight)) in expect.iter().enumerate() {
        ensure(t.total(p) == *dim, || format!("Ext^{} total {}", p, t.total(p)))?;
        if let Some(w) = weight {
            ensure(t.dims[p][*w] == *dim, || format!("Ext^{} not concentrated in weight {}", p, w))?;
        }
    }
    let free = Algebra::new(free_algebra(Q, vec![Generator::new("a", 1), Generator::new("b", 1)]).map_err(err)?, 6);
    let f = ext_kk_bounded(&free, 2, 6).map_err(err)?;
    ensure(f.total(2) == 0, || format!("free algebra Ext^2 = {}", f.total(2)))?;
    Ok("quantum plane (1,2,1,0), free algebra Ext^2 = 0".into())
}

fn same_category(a: &SmallDgCategory, b: &SmallDgCategory) -> bool {
    let n = a.num_objects();
    if n != b.num_objects() {
        return false;
    }
    for x in 0..n {
        for y in 0..n {
            let (ha, hb) = (a.hom(x, y), b.hom(x, y));
            if ha.support() != hb.support() || ha.degrees().any(|d| ha.dim(d) != hb.dim(d) || ha.d(d) != hb.d(d)) {
                return false;
            }
            if a.unit(x) != b.unit(x) {
                return false;
            }
            for z in 0..n {
                for p in a.hom(y, z).degrees() {
                    for q in ha.degrees() {
                        if a.composition_matrix(x, y, z, p, q) != b.composition_matrix(x, y, z, p, q) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn dg_instance(seed: u64) -> Result<(), String> {
    let mut r = rng(seed);
    let c = random_complex(&mut r, Q, 4);
    let d = random_complex(&mut r, Q, 4);
    let h = hom_complex(&c, &d);
    for n in h.complex.degrees() {
        ensure(h.complex.d(n + 1).mul(&h.complex.d(n)).is_zero(), || format!("d^2 != 0 in degree {}", n))?;
    }
    let z0 = h.chain_maps();
    ensure(z0.dim() == chain_map_dim(&c, &d), || format!("Z^0 has dim {} vs {}", z0.dim(), chain_map_dim(&c, &d)))?;
    for v in z0.basis() {
        let maps = h.maps_of(0, v);
        let f = |m: i64| maps.get(&m).cloned().unwrap_or_else(|| Matrix::zero(Q, d.dim(m), c.dim(m)));
        ensure(is_chain_map(&c, &d, 0, f), || "cycle is not a chain map".into())?;
    }

    let tc = random_test_category(&mut r, Q, 3);
    let n = random_left_module(&mut r, &tc);
    for x in 0..tc.cat.num_objects() {
        ensure(yoneda_tensor_check(&n, x).map_err(err)?, || format!("h_{} ⊗ N vs N({})", x, x))?;
    }

    let other = random_test_category(&mut r, Q, 2);
    let e = random_bimodule(&mut r, &tc, &other);
    ensure(delta_tensor_check(&e).map_err(err)?, || "Δ ⊗ E vs E".into())?;

    let a = random_test_category(&mut r, Q, 2);
    let b = random_test_category(&mut r, Q, 2);
    let e = random_bimodule(&mut r, &a, &b);
    let m = random_right_module(&mut r, &a);
    let nb = random_right_module(&mut r, &b);
    let rep = adjunction_check(&e, &m, &nb).map_err(err)?;
    ensure(rep.iso, || format!("adjunction dims {:?}", rep.dims))?;

    let k = unit_category(Q);
    let left = tensor_dgcat(&k, &tc.cat).map_err(err)?;
    let right = tensor_dgcat(&tc.cat, &k).map_err(err)?;
    ensure(same_category(&left, &tc.cat) && same_category(&right, &tc.cat), || "K ⊗ A differs from A".into())?;
    Ok(())
}

fn criterion_10() -> Outcome {
    for i in 0..200u64 {
        let seed = 10_000 + i;
        dg_instance(seed).map_err(|e| format!("seed {}: {}", seed, e))?;
    }
    Ok("200 seeded instances, zero failures".into())
}

fn criterion_11() -> Outcome {
    let weights = vec![0i64, 1, 2, 3];
    let mut pairs = 0;
    for q in ["2", "-1/2"] {
        let pres = quantum_plane(Q, Q.parse_scalar(q).unwrap()).map_err(err)?;
        let tc = ringoid(&pres, weights.clone());
        let CategoryKind::Ringoid { alg, opposite, .. } = &tc.kind else { return Err("not a ringoid".into()) };
        let e = |k| SparseVec::unit(k, Q);
        for (x, &wx) in weights.iter().enumerate() {
            for (y, &wy) in weights.iter().enumerate() {
                let want = if wy >= wx { ideal_span_dim(&pres, (wy - wx) as u32) } else { 0 };
                ensure(tc.cat.hom(x, y).total_dim() == want, || format!("hom({},{}) dim", wx, wy))?;
            }
        }
        for (x, &wx) in weights.iter().enumerate() {
            for (y, &wy) in weights.iter().enumerate().skip(x) {
                for (z, &wz) in weights.iter().enumerate().skip(y) {
                    let ideal = IdealSpan::new(&pres, (wz - wx) as u32);
                    let target = alg.basis(wz - wx);
                    for (fi, f) in alg.basis(wy - wx).iter().enumerate() {
                        for (gi, g) in alg.basis(wz - wy).iter().enumerate() {
                            let comp = tc.cat.compose(x, y, z, 0, &e(gi), 0, &e(fi));
                            // f·g minus the claimed normal form must lie in the ideal
                            let mut diff = FreePoly::monomial(Q, f.concat(g), Q.one());
                            for (k, c) in comp.iter() {
                                diff = diff.sub(&FreePoly::monomial(Q, target[*k].clone(), c.clone()));
                            }
                            ensure(ideal.contains(&diff), || format!("{}·{} at weights {},{},{}", wx, wy, wz, fi, gi))?;
                            ensure(!target.is_empty() || comp.is_zero(), || "nonzero product in zero space".into())?;
                            pairs += 1;
                        }
                    }
                }
            }
        }
        let window = DegreeWindow::new(-4, 4).map_err(err)?;
        let modules = [
            free_module(opposite.clone(), &[0], window).map_err(err)?,
            free_module(opposite.clone(), &[1], window).map_err(err)?,
            truncated_quotient(opposite.clone(), 2, window)
                .map_err(err)?
                .direct_sum(&free_module(opposite.clone(), &[-1], window).map_err(err)?)
                .map_err(err)?,
        ];
        for w in &modules {
            let n = ringoid_left_module(&tc.cat, alg, &weights, w).map_err(err)?;
            for (u, &wu) in weights.iter().enumerate() {
                let t = tensor_over_cat(&yoneda(&tc.cat, u), &n).map_err(err)?;
                let want = w.dim(wu).unwrap_or(0);
                ensure(t.complex.dim(0) == want && t.complex.total_dim() == want, || {
                    format!("h_{} ⊗ N has dims {:?}, N({}) = {}", wu, t.complex.support(), wu, want)
                })?;
                ensure(yoneda_tensor_check(&n, u).map_err(err)?, || format!("witness at {} not an iso", wu))?;
            }
        }
    }
    Ok(format!("{} composition pairs checked, tensor evaluation on 3 modules x 2 algebras", pairs))
}

fn spec_path(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("../../specs");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn run_cli(args: &[String], json: &PathBuf) -> Result<(i32, Vec<u8>, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ncproj"))
        .args(args)
        .arg("--json")
        .arg(json)
        .output()
        .map_err(err)?;
    let bytes = std::fs::read(json).map_err(err)?;
    Ok((out.status.code().unwrap_or(-1), bytes, out.stdout))
}

fn criterion_12() -> Outcome {
    let dir = std::env::temp_dir().join(format!("ncproj-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let commands: Vec<Vec<String>> = vec![
        vec!["hilbert".into(), spec_path("kanazawa.spec"), "--max-degree".into(), "5".into()],
        vec!["gb".into(), spec_path("quantum_plane.spec")],
        vec!["saturate".into(), spec_path("plane.spec"), "--window=-2:4".into()],
        vec!["torsion".into(), spec_path("plane.spec"), "--module".into(), "quot(2)+A(1)".into()],
        vec!["segre".into(), spec_path("plane.spec"), spec_path("plane.spec"), "--check-generation".into()],
        vec!["delta".into(), spec_path("line.spec")],
        vec!["beta".into(), spec_path("line.spec")],
        vec!["qcompose".into(), spec_path("line.spec"), spec_path("line.spec")],
        vec!["ext".into(), spec_path("quantum_plane.spec")],
        vec!["dg-check".into(), "--suite".into(), "yoneda".into(), "--seed".into(), "42".into(), "--count".into(), "10".into()],
        vec!["dg-check".into(), "--suite".into(), "ringoid".into(), "--seed".into(), "9".into(), "--count".into(), "10".into()],
        vec!["dg-check".into(), "--suite".into(), "adjunction".into(), "--seed".into(), "3".into(), "--count".into(), "5".into()],
    ];
    for (i, args) in commands.iter().enumerate() {
        let (first, second) = (dir.join(format!("{}-a.json", i)), dir.join(format!("{}-b.json", i)));
        let (c1, j1, o1) = run_cli(args, &first)?;
        let (c2, j2, o2) = run_cli(args, &second)?;
        ensure(c1 == 0 && c2 == 0, || format!("{:?} exited with {} / {}", args, c1, c2))?;
        ensure(j1 == j2, || format!("{:?}: JSON differs between runs", args))?;
        ensure(o1 == o2, || format!("{:?}: table differs between runs", args))?;
        let doc: serde_json::Value = serde_json::from_slice(&j1).map_err(err)?;
        ensure(doc["ncproj_report"] == 1, || "missing schema version".into())?;
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands byte-identical across reruns", commands.len()))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("Gröbner/Hilbert oracle equivalence", criterion_1),
        ("quantum-space PBW dimensions", criterion_2),
        ("saturation of a point", criterion_3),
        ("saturation of the projective line", criterion_4),
        ("torsion extensions and annihilation bound", criterion_5),
        ("Q composition on tensor products", criterion_6),
        ("beta on the diagonal", criterion_7),
        ("Segre product", criterion_8),
        ("Ext table", criterion_9),
        ("dg identities on random instances", criterion_10),
        ("ringoid bridge", criterion_11),
        ("CLI determinism", criterion_12),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let res = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match res {
            Ok(detail) => println!("criterion {:>2} PASS  {} ({}; {:.1}s)", i + 1, name, detail, secs),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {} ({:.1}s)", i + 1, name, why, secs);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
