use std::sync::Arc;

use ncproj::exactla::{rank, FieldSpec, Matrix, SparseVec, Subspace};
use ncproj::freealg::{polynomial_ring, quantum_plane, Algebra};
use ncproj::grmod::{
    free_module, hom_graded, q_windowed, torsion_submodule, truncated_free, truncated_quotient, DegreeWindow,
    WindowedModule,
};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::RATIONALS;

fn plane(cutoff: u32) -> Arc<Algebra> {
    Arc::new(Algebra::new(polynomial_ring(Q, 2).unwrap(), cutoff))
}

fn window(lo: i64, hi: i64) -> DegreeWindow {
    DegreeWindow::new(lo, hi).unwrap()
}

fn mixed(alg: &Arc<Algebra>, w: DegreeWindow, n: i64) -> WindowedModule {
    free_module(alg.clone(), &[0], w)
        .unwrap()
        .direct_sum(&truncated_quotient(alg.clone(), n, w).unwrap())
        .unwrap()
}

#[test]
fn maps_out_of_a_free_module_are_elements() {
    let alg = plane(6);
    let w = window(0, 6);
    let a = free_module(alg.clone(), &[0], w).unwrap();
    let n = mixed(&alg, w, 3);
    for weight in 0..=3 {
        let h = hom_graded(&a, &n, weight, w).unwrap();
        assert_eq!(h.dim(), n.dim(weight).unwrap(), "weight {}", weight);
        assert!(h.basis.iter().all(|f| f.commutes(&a, &n)));
    }
}

#[test]
fn torsion_is_idempotent_and_leaves_no_torsion_behind() {
    let alg = plane(8);
    let w = window(0, 6);
    let m = mixed(&alg, w, 3);
    let t = torsion_submodule(&m).unwrap();
    assert_eq!(t.degrees.iter().map(|d| d.torsion_dim).collect::<Vec<_>>(), vec![1, 2, 3, 0, 0, 0, 0]);
    let tt = torsion_submodule(&t.module).unwrap();
    assert!(tt.is_everything());
    let (rest, _) = m.quotient(&t.subspaces).unwrap();
    let t_rest = torsion_submodule(&rest).unwrap();
    assert!(t_rest.is_zero_on_certified());
}

#[test]
fn torsion_of_a_submodule_is_the_intersection() {
    let alg = plane(8);
    let w = window(0, 6);
    let m = mixed(&alg, w, 3);
    // generated by (x0, x1) inside the sum: mixes the free and the torsion part
    let v = SparseVec::from_entries(vec![(0, Q.one()), (3, Q.one())]);
    let sub = m.generated(&[(1, v)]);
    let (sm, _) = m.submodule(&sub).unwrap();
    let t_sub = torsion_submodule(&sm).unwrap();
    let t = torsion_submodule(&m).unwrap();
    for d in w.degrees() {
        let i = w.index(d).unwrap();
        let (a, b) = (&sub[i], &t.subspaces[i]);
        let sum = Subspace::spanned_by(Q, a.ambient_dim(), a.basis().iter().chain(b.basis()));
        let meet = a.dim() + b.dim() - sum.dim();
        assert_eq!(t_sub.degrees[i].torsion_dim, meet, "degree {}", d);
    }
}

fn input_for(alg_p: ncproj::freealg::Presentation, hi: i64) -> Arc<Algebra> {
    Arc::new(Algebra::new(alg_p, hi as u32))
}

#[test]
fn unit_map_kernel_is_torsion() {
    let alg = input_for(polynomial_ring(Q, 2).unwrap(), 10);
    let w = window(0, 10);
    let m = mixed(&alg, w, 2);
    let q = q_windowed(&m, 4, Some(window(0, 4))).unwrap();
    let t = torsion_submodule(&m).unwrap();
    for d in 0..=4 {
        assert!(q.certified(d));
        let u = q.unit_map(&m, d).unwrap();
        let kernel = u.ncols() - rank(&u);
        assert_eq!(kernel, t.degrees[d as usize].torsion_dim, "degree {}", d);
        // and Q kills the torsion summand: QM = QA
        assert_eq!(q.module.dim(d), Some(d as usize + 1));
    }
}

#[test]
fn saturation_ignores_truncation() {
    let alg = Arc::new(Algebra::new(quantum_plane(Q, Q.from_i64(-2)).unwrap(), 10));
    let w = window(0, 10);
    let (ideal, _) = truncated_free(alg.clone(), 2, w).unwrap();
    let free = free_module(alg, &[0], w).unwrap();
    let out = window(0, 4);
    let qa = q_windowed(&free, 4, Some(out)).unwrap();
    let qi = q_windowed(&ideal, 4, Some(out)).unwrap();
    assert!(qa.fully_certified() && qi.fully_certified());
    assert_eq!(qa.module.dims(), qi.module.dims());
}

fn random_sub(m: &WindowedModule, seed: &[i64]) -> Vec<Subspace> {
    let gens: Vec<(i64, SparseVec)> = seed
        .chunks_exact(3)
        .filter_map(|c| {
            let d = c[0].rem_euclid(3);
            let dim = m.dim(d)?;
            (dim > 0).then(|| {
                let v = (0..dim).map(|i| (i, Q.from_i64(c[(i % 2) + 1]))).collect();
                (d, SparseVec::from_entries(v))
            })
        })
        .collect();
    m.generated(&gens)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // 0 -> τM' -> τM -> τM'' is exact at τM: the kernel of τM -> M'' is τM ∩ M' = τM'
    #[test]
    fn torsion_is_left_exact(coeffs in prop::collection::vec(-2i64..=2, 3..=6), n in 1i64..=3) {
        let alg = plane(8);
        let w = window(0, 6);
        let m = mixed(&alg, w, n);
        let sub = random_sub(&m, &coeffs);
        let (sm, _) = m.submodule(&sub).unwrap();
        let (_, proj) = m.quotient(&sub).unwrap();
        let t_sub = torsion_submodule(&sm).unwrap();
        let t = torsion_submodule(&m).unwrap();
        for d in w.degrees() {
            let i = w.index(d).unwrap();
            let basis: Vec<SparseVec> = t.subspaces[i].basis().to_vec();
            let images: Vec<SparseVec> = basis.iter().map(|v| proj[i].apply(v)).collect();
            let img_rank = rank(&Matrix::from_columns(Q, proj[i].nrows(), &images));
            let kernel = basis.len() - img_rank;
            prop_assert_eq!(kernel, t_sub.degrees[i].torsion_dim);
        }
    }
}
