//! Bigraded bimodules over A ⊗ B: the diagonal bimodule, bigraded torsion and
//! saturation, composition of saturations, comparison maps and Segre products.

mod bimodule;
mod ideal;
mod saturation;
mod segre;
mod torsion;

pub use bimodule::{
    delta_bimodule, free_bimodule, trivial_algebra, truncated_free_bimodule, BiBiModule, BiWindow, Cell,
};
pub use saturation::{saturate, saturation_margin, CellReport, Exhaust, Saturation};
pub use segre::{segre, segre_generation_check, GenerationStep, SegreProduct};
pub use torsion::{bibi_torsion, TorsionCell, TorsionResult};

use crate::error::Result;
use crate::exactla::{rank, Matrix};

/// Saturation with respect to A_{≥n} ⊗ B_{≥n}, n = 0..=n_max.
pub fn q_bibi(m: &BiBiModule, out: BiWindow, n_max: u32) -> Result<Saturation> {
    saturate(m, out, Exhaust::Both, n_max)
}

/// Smallest input window on which `q_bibi`-style saturation to level n_max can fill `out`.
pub fn input_window(m_left: &std::sync::Arc<crate::freealg::Algebra>, m_right: &std::sync::Arc<crate::freealg::Algebra>, out: BiWindow, mode: Exhaust, n_max: u32) -> Result<BiWindow> {
    let (nl, nr) = match mode {
        Exhaust::Left => (n_max, 0),
        Exhaust::Right => (0, n_max),
        Exhaust::Both => (n_max, n_max),
    };
    BiWindow::new(
        out.lo1,
        out.hi1 + saturation_margin(m_left, nl) as i64,
        out.lo2,
        out.hi2 + saturation_margin(m_right, nr) as i64,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComposeCell {
    pub bidegree: Cell,
    pub dim_both: usize,
    pub dim_a_then_b: usize,
    pub dim_b_then_a: usize,
    pub certified: bool,
    /// Both currying maps are isomorphisms (only meaningful when certified).
    pub maps_iso: bool,
}

#[derive(Clone, Debug)]
pub struct ComposeReport {
    pub cells: Vec<ComposeCell>,
    pub n_max: u32,
}

impl ComposeReport {
    /// Agreement of dimensions and comparison maps on every mutually certified bidegree.
    pub fn passes(&self) -> bool {
        self.cells
            .iter()
            .filter(|c| c.certified)
            .all(|c| c.maps_iso && c.dim_both == c.dim_a_then_b && c.dim_both == c.dim_b_then_a)
    }

    pub fn certified_count(&self) -> usize {
        self.cells.iter().filter(|c| c.certified).count()
    }
}

fn column_certified(inner: &Saturation, c: Cell, vertical: bool) -> bool {
    inner
        .report
        .iter()
        .filter(|r| {
            if vertical {
                r.bidegree.1 == c.1 && r.bidegree.0 >= c.0
            } else {
                r.bidegree.0 == c.0 && r.bidegree.1 >= c.1
            }
        })
        .all(|r| r.certified)
}

/// Compares Q_{A⊗B} M with Q_A(Q_B M) and Q_B(Q_A M) on `out`.
pub fn q_compose_check(m: &BiBiModule, out: BiWindow, n_max: u32) -> Result<ComposeReport> {
    let w = m.window();
    let both = saturate(m, out, Exhaust::Both, n_max)?;
    // Q_A first: keep the whole B-range for the outer saturation
    let mid_a = BiWindow::new(out.lo1, out.hi1, w.lo2, w.hi2)?;
    let inner_a = saturate(m, mid_a, Exhaust::Left, n_max)?;
    let a_then_b = saturate(&inner_a.module, out, Exhaust::Right, n_max)?;
    let mid_b = BiWindow::new(w.lo1, w.hi1, out.lo2, out.hi2)?;
    let inner_b = saturate(m, mid_b, Exhaust::Right, n_max)?;
    let b_then_a = saturate(&inner_b.module, out, Exhaust::Left, n_max)?;
    let mut cells = Vec::new();
    for c in out.cells() {
        let dim = |s: &Saturation| s.module.dim(c).unwrap_or(0);
        let certified = both.certified(c)
            && a_then_b.certified(c)
            && b_then_a.certified(c)
            && column_certified(&inner_a, c, false)
            && column_certified(&inner_b, c, true);
        let mut maps_iso = false;
        if certified {
            let f1 = saturation::curry_map(&both, &inner_a, &a_then_b, c)?;
            let f2 = saturation::curry_map(&both, &inner_b, &b_then_a, c)?;
            maps_iso = matches!((f1, f2), (Some(x), Some(y)) if saturation::iso(&x) && saturation::iso(&y));
        }
        cells.push(ComposeCell {
            bidegree: c,
            dim_both: dim(&both),
            dim_a_then_b: dim(&a_then_b),
            dim_b_then_a: dim(&b_then_a),
            certified,
            maps_iso,
        });
    }
    Ok(ComposeReport { cells, n_max })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BetaSide {
    Left,
    Right,
}

#[derive(Clone, Debug)]
pub struct BetaCell {
    pub bidegree: Cell,
    pub map: Option<Matrix>,
    pub source_dim: usize,
    pub target_dim: usize,
    pub certified: bool,
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct BetaReport {
    pub side: BetaSide,
    pub cells: Vec<BetaCell>,
}

impl BetaReport {
    /// Isomorphism on every certified bidegree.
    pub fn iso_on_certified(&self) -> bool {
        self.cells.iter().filter(|c| c.certified).all(|c| c.iso)
    }

    pub fn certified_count(&self) -> usize {
        self.cells.iter().filter(|c| c.certified).count()
    }
}

/// Comparison Q_A M -> Q_{A⊗B} M (side Left) or Q_B M -> Q_{A⊗B} M (side Right),
/// induced by restricting along A_{≥n} ⊗ B_{≥n} ⊆ A_{≥n} ⊗ B.
pub fn beta_window(m: &BiBiModule, side: BetaSide, out: BiWindow, n_max: u32) -> Result<BetaReport> {
    let mode = match side {
        BetaSide::Left => Exhaust::Left,
        BetaSide::Right => Exhaust::Right,
    };
    let from = saturate(m, out, mode, n_max)?;
    let to = saturate(m, out, Exhaust::Both, n_max)?;
    let mut cells = Vec::new();
    for c in out.cells() {
        let map = saturation::restriction_map(m, &from, &to, c)?;
        let certified = from.certified(c) && to.certified(c);
        let iso = map.as_ref().map_or(false, |f| f.nrows() == f.ncols() && rank(f) == f.nrows());
        cells.push(BetaCell {
            bidegree: c,
            source_dim: from.module.dim(c).unwrap_or(0),
            target_dim: to.module.dim(c).unwrap_or(0),
            map,
            certified,
            iso,
        });
    }
    Ok(BetaReport { side, cells })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::freealg::{polynomial_ring, Algebra};
    use std::sync::Arc;

    fn alg(n: usize, cutoff: u32) -> Arc<Algebra> {
        Arc::new(Algebra::new(polynomial_ring(FieldSpec::RATIONALS, n).unwrap(), cutoff))
    }

    #[test]
    fn diagonal_of_line_saturates_to_one_everywhere() {
        let out = BiWindow::square(-2, 2).unwrap();
        let a = alg(1, 20);
        let win = input_window(&a, &a, out, Exhaust::Both, 5).unwrap();
        let delta = delta_bimodule(a, win).unwrap();
        let q = q_bibi(&delta, out, 5).unwrap();
        for c in out.cells() {
            assert_eq!(q.module.dim(c), Some(1), "cell {:?}", c);
            assert!(q.certified(c), "cell {:?}", c);
        }
    }

    #[test]
    fn beta_on_plane_diagonal() {
        let out = BiWindow::square(-1, 2).unwrap();
        let a = alg(2, 14);
        let win = input_window(&a, &a, out, Exhaust::Both, 3).unwrap();
        let delta = delta_bimodule(a.clone(), win).unwrap();
        let r = beta_window(&delta, BetaSide::Left, out, 3).unwrap();
        assert!(r.certified_count() > 0);
        assert!(r.iso_on_certified());
        for c in &r.cells {
            if c.certified && c.bidegree.0 + c.bidegree.1 >= 0 {
                assert_eq!(c.target_dim, a.dim(c.bidegree.0 + c.bidegree.1));
            }
        }
    }

    #[test]
    fn torsion_of_diagonal_is_zero() {
        let a = alg(2, 10);
        let delta = delta_bimodule(a, BiWindow::square(0, 4).unwrap()).unwrap();
        let t = bibi_torsion(&delta).unwrap();
        for c in &t.cells {
            if c.certified {
                assert_eq!(c.torsion_dim, 0);
            }
        }
        assert!(t.cells.iter().any(|c| c.certified && c.dim > 0));
    }

    #[test]
    fn compose_on_free_line_bimodule() {
        let out = BiWindow::square(-2, 3).unwrap();
        let a = alg(1, 20);
        let win = input_window(&a, &a, out, Exhaust::Both, 6).unwrap();
        let m = free_bimodule(a.clone(), a, win).unwrap();
        let r = q_compose_check(&m, out, 6).unwrap();
        assert!(r.certified_count() > 0);
        assert!(r.passes(), "{:?}", r.cells);
    }
}
