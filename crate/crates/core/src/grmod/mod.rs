//! Graded modules over a presented algebra, known on a finite window of degrees:
//! graded Hom, the torsion functor, windowed saturation and bounded Ext(k, k).

mod ext;
mod functors;
mod hom;
mod module;

pub use ext::{ext_kk_bounded, ExtTable};
pub use functors::{q_output_window, q_windowed, torsion_submodule, QDegree, QResult, Torsion, TorsionDegree};
pub use hom::{hom_graded, HomSpace};
pub use module::{
    free_module, present_module, right_limited_check, truncated_free, truncated_quotient, DegreeWindow, GradedMap,
    WindowedModule,
};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::freealg::{free_algebra, polynomial_ring, quantum_plane, Algebra, FreePoly, Generator, Word};
    use std::sync::Arc;

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn qplane(cutoff: u32) -> Arc<Algebra> {
        Arc::new(Algebra::new(quantum_plane(Q, Q.from_i64(3)).unwrap(), cutoff))
    }

    fn poly(n: usize, cutoff: u32) -> Arc<Algebra> {
        Arc::new(Algebra::new(polynomial_ring(Q, n).unwrap(), cutoff))
    }

    fn win(lo: i64, hi: i64) -> DegreeWindow {
        DegreeWindow::new(lo, hi).unwrap()
    }

    #[test]
    fn free_module_dims() {
        let a = qplane(8);
        assert_eq!(free_module(a.clone(), &[0], win(0, 3)).unwrap().dims(), vec![1, 2, 3, 4]);
        assert_eq!(free_module(a.clone(), &[1], win(-1, 2)).unwrap().dims(), vec![1, 2, 3, 4]);
        assert!(free_module(a, &[], win(0, 3)).unwrap().is_zero());
    }

    #[test]
    fn presented_modules() {
        let a = qplane(8);
        let k = truncated_quotient(a.clone(), 1, win(0, 3)).unwrap();
        assert_eq!(k.dims(), vec![1, 0, 0, 0]);
        let m = truncated_quotient(a, 2, win(0, 3)).unwrap();
        assert_eq!(m.dims(), vec![1, 2, 0, 0]);
        let b = poly(2, 8);
        let x0 = FreePoly::monomial(Q, Word::letter(0), Q.one());
        let m = present_module(b, &[0], &[vec![x0]], win(0, 3)).unwrap();
        assert_eq!(m.dims(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn inhomogeneous_row_rejected() {
        let b = poly(2, 8);
        let f = FreePoly::from_terms(Q, [(Word::letter(0), Q.one()), (Word(vec![0, 1]), Q.one())]);
        assert!(present_module(b, &[0], &[vec![f]], win(0, 3)).is_err());
    }

    #[test]
    fn hom_examples() {
        let a = poly(1, 10);
        let (m, _) = truncated_free(a.clone(), 1, win(0, 4)).unwrap();
        let n = free_module(a.clone(), &[0], win(0, 4)).unwrap();
        let h = hom_graded(&m, &n, 0, win(0, 4)).unwrap();
        assert_eq!(h.dim(), 1);
        assert!(h.basis[0].commutes(&m, &n));
        let k = truncated_quotient(a, 1, win(0, 4)).unwrap();
        assert_eq!(hom_graded(&k, &k, 0, win(0, 4)).unwrap().dim(), 1);
    }

    #[test]
    fn torsion_examples() {
        let a = qplane(12);
        let free = free_module(a.clone(), &[0], win(0, 6)).unwrap();
        let t = torsion_submodule(&free).unwrap();
        assert!(t.is_zero_on_certified());
        assert!(t.degrees.iter().any(|d| d.certified));
        let m = truncated_quotient(a.clone(), 2, win(0, 6)).unwrap();
        let t = torsion_submodule(&m).unwrap();
        assert!(t.is_everything());
        let k = truncated_quotient(a, 1, win(0, 6)).unwrap();
        let t = torsion_submodule(&free.direct_sum(&k).unwrap()).unwrap();
        for d in &t.degrees {
            if d.certified {
                assert_eq!(d.torsion_dim, usize::from(d.degree == 0));
            }
        }
    }

    #[test]
    fn saturation_of_line() {
        let a = poly(1, 20);
        let m = free_module(a, &[0], win(0, 9)).unwrap();
        let q = q_windowed(&m, 6, Some(win(-3, 3))).unwrap();
        for d in -3..=3 {
            assert_eq!(q.module.dim(d), Some(1));
            assert!(q.certified(d), "degree {}", d);
        }
    }

    #[test]
    fn saturation_of_plane() {
        let a = poly(2, 20);
        let m = free_module(a, &[0], win(0, 10)).unwrap();
        let q = q_windowed(&m, 4, Some(win(-2, 4))).unwrap();
        assert_eq!(q.module.dims(), vec![0, 0, 1, 2, 3, 4, 5]);
        assert!(q.fully_certified());
        for d in 0..=4 {
            let u = q.unit_map(&m, d).unwrap();
            assert_eq!(crate::exactla::rank(&u), d as usize + 1);
        }
    }

    #[test]
    fn saturation_of_torsion_is_zero() {
        let a = poly(2, 20);
        let m = truncated_quotient(a, 2, win(0, 10)).unwrap();
        let q = q_windowed(&m, 4, Some(win(0, 4))).unwrap();
        assert!(q.module.is_zero());
    }

    #[test]
    fn right_limited() {
        let a = qplane(8);
        assert_eq!(right_limited_check(&truncated_quotient(a.clone(), 1, win(0, 4)).unwrap()), Some(1));
        assert_eq!(right_limited_check(&truncated_quotient(a.clone(), 3, win(0, 4)).unwrap()), Some(3));
        assert_eq!(right_limited_check(&free_module(a, &[0], win(0, 4)).unwrap()), None);
    }

    #[test]
    fn ext_tables() {
        let e = ext_kk_bounded(&qplane(6), 3, 6).unwrap();
        assert_eq!(e.dims[0], vec![1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(e.dims[1], vec![0, 2, 0, 0, 0, 0, 0]);
        assert_eq!(e.dims[2], vec![0, 0, 1, 0, 0, 0, 0]);
        assert_eq!(e.total(3), 0);
        let e = ext_kk_bounded(&poly(1, 6), 2, 6).unwrap();
        assert_eq!((e.total(1), e.total(2)), (1, 0));
        let free = Algebra::new(
            free_algebra(Q, vec![Generator::new("x", 1), Generator::new("y", 1)]).unwrap(),
            6,
        );
        let e = ext_kk_bounded(&free, 2, 6).unwrap();
        assert_eq!((e.total(1), e.total(2)), (2, 0));
    }
}
