use crate::bigr::{bibi_torsion, saturate, saturation_margin, CellReport, Exhaust, Saturation};
use crate::error::{Error, Result};
use crate::exactla::{Matrix, Subspace};

use super::module::{DegreeWindow, GradedMap, WindowedModule};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionDegree {
    pub degree: i64,
    pub dim: usize,
    pub torsion_dim: usize,
    /// Largest n for which A_{≥n} could be tested against this degree.
    pub max_tested: Option<u32>,
    pub stabilized_at: Option<u32>,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct Torsion {
    pub module: WindowedModule,
    pub subspaces: Vec<Subspace>,
    pub inclusions: Vec<Matrix>,
    pub degrees: Vec<TorsionDegree>,
    /// Largest stabilization index over all nonzero degrees.
    pub bound: u32,
}

impl Torsion {
    pub fn fully_certified(&self) -> bool {
        self.degrees.iter().all(|d| d.certified)
    }

    /// τM = M on every degree of the window.
    pub fn is_everything(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion_dim == d.dim)
    }

    pub fn is_zero_on_certified(&self) -> bool {
        self.degrees.iter().filter(|d| d.certified).all(|d| d.torsion_dim == 0)
    }
}

/// Elements m with A_{≥n} m = 0 inside the window, for the largest testable n per degree.
pub fn torsion_submodule(m: &WindowedModule) -> Result<Torsion> {
    let t = bibi_torsion(m.as_bimodule())?;
    let degrees = t
        .cells
        .iter()
        .map(|c| TorsionDegree {
            degree: c.bidegree.0,
            dim: c.dim,
            torsion_dim: c.torsion_dim,
            max_tested: c.max_tested,
            stabilized_at: c.stabilized_at,
            certified: c.certified,
        })
        .collect();
    Ok(Torsion {
        module: WindowedModule::from_bimodule(t.module)?,
        subspaces: t.subspaces,
        inclusions: t.inclusions,
        degrees,
        bound: t.bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QDegree {
    pub degree: i64,
    /// (n, dim Hom(A_{≥n}, M)_d) for every computable n
    pub dims: Vec<(u32, usize)>,
    /// (n, whether the transition n -> n+1 is an isomorphism)
    pub transitions: Vec<(u32, bool)>,
    pub stabilized_at: Option<u32>,
    pub certified: bool,
}

impl From<&CellReport> for QDegree {
    fn from(r: &CellReport) -> Self {
        QDegree {
            degree: r.bidegree.0,
            dims: r.dims.clone(),
            transitions: r.transitions.clone(),
            stabilized_at: r.stabilized_at,
            certified: r.certified,
        }
    }
}

/// Windowed saturation QM with its per-degree stabilization report.
#[derive(Clone, Debug)]
pub struct QResult {
    pub module: WindowedModule,
    pub report: Vec<QDegree>,
    pub n_max: u32,
    sat: Saturation,
}

impl QResult {
    pub fn degree(&self, d: i64) -> Option<&QDegree> {
        self.module.window().index(d).map(|k| &self.report[k])
    }

    pub fn certified(&self, d: i64) -> bool {
        self.degree(d).map_or(false, |r| r.certified)
    }

    pub fn fully_certified(&self) -> bool {
        self.report.iter().all(|r| r.certified)
    }

    /// Evaluation-at-unit map M_d -> (QM)_d.
    pub fn unit_map(&self, m: &WindowedModule, d: i64) -> Option<Matrix> {
        self.sat.unit_map(m.as_bimodule(), (d, 0))
    }

    /// (QM')_d -> (QM)_d induced by a weight-zero map f: M' -> M given on all of M'.
    pub fn induced_map(&self, source: &QResult, f: &GradedMap, d: i64) -> Result<Option<Matrix>> {
        if f.weight != 0 {
            return Err(Error::Mismatch("induced map needs a weight-zero morphism".into()));
        }
        self.sat.induced_map(&source.sat, &f.blocks, f.window.as_bi(), (d, 0))
    }
}

/// Default output window for q_windowed: degrees that reach level n_max - 1 inside
/// the input window and leave room for the ideal generators and syzygies on top.
pub fn q_output_window(m: &WindowedModule, n_max: u32) -> Result<DegreeWindow> {
    let w = m.window();
    let margin = saturation_margin(m.algebra(), n_max) as i64;
    DegreeWindow::new(w.lo - n_max as i64 + 1, w.hi - margin).map_err(|_| Error::WindowTooSmall {
        window: w.describe(),
        what: format!("saturation to level {}", n_max),
        needed: format!("width at least {}", margin + 1),
    })
}

/// Hom(A_{≥n}, M) for n = 0..=n_max on `out` (or the default output window).
pub fn q_windowed(m: &WindowedModule, n_max: u32, out: Option<DegreeWindow>) -> Result<QResult> {
    if n_max == 0 {
        return Err(Error::Usage("n_max must be positive".into()));
    }
    let out = match out {
        Some(o) => o,
        None => q_output_window(m, n_max)?,
    };
    let sat = saturate(m.as_bimodule(), out.as_bi(), Exhaust::Left, n_max)?;
    let report = sat.report.iter().map(QDegree::from).collect();
    Ok(QResult {
        module: WindowedModule::from_bimodule(sat.module.clone())?,
        report,
        n_max,
        sat,
    })
}
