use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, Matrix, Scalar, SparseVec};

use super::module::{DegreeWindow, GradedMap, WindowedModule};

/// Degree-w module maps M -> N restricted to a window where every block is defined.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub weight: i64,
    /// Source degrees on which the maps are defined and the constraints imposed.
    pub window: DegreeWindow,
    pub basis: Vec<GradedMap>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Basis of the degree-w maps M -> N over the largest sub-window of `effective` on which
/// M_d and N_{d+w} are both defined. Commutation with generator g is imposed at d whenever
/// d and d + weight(g) both lie in that sub-window.
pub fn hom_graded(m: &WindowedModule, n: &WindowedModule, w: i64, effective: DegreeWindow) -> Result<HomSpace> {
    m.field().check_same(&n.field())?;
    let nw = n.window();
    let shifted = DegreeWindow { lo: nw.lo - w, hi: nw.hi - w };
    let sound = effective
        .intersect(&m.window())
        .and_then(|x| x.intersect(&shifted))
        .ok_or_else(|| {
            Error::EmptyWindow(format!(
                "no degree of {} has both source and target defined",
                effective.describe()
            ))
        })?;
    let field = m.field();
    let alg = m.algebra();
    // unknown layout: block d stored column-major, entries (r, c) of an N_{d+w} x M_d matrix
    let mut offsets = Vec::new();
    let mut total = 0;
    for d in sound.degrees() {
        offsets.push(total);
        total += n.dim(d + w).unwrap() * m.dim(d).unwrap();
    }
    let var = |d: i64, r: usize, c: usize| -> usize {
        let k = sound.index(d).unwrap();
        offsets[k] + c * n.dim(d + w).unwrap() + r
    };
    let mut rows: Vec<SparseVec> = Vec::new();
    for d in sound.degrees() {
        for g in 0..alg.num_generators() {
            let e = d + alg.generator_weight(g) as i64;
            if !sound.contains(e) {
                continue;
            }
            let am = m.action(g, d).unwrap();
            let an = n.action(g, d + w).unwrap();
            let (rows_out, cols_in) = (n.dim(e + w).unwrap(), m.dim(d).unwrap());
            // (f_e · am)[r][c] - (an · f_d)[r][c] = 0
            let am_cols = am.columns();
            let an_rows = an.rows();
            for r in 0..rows_out {
                for c in 0..cols_in {
                    let mut entries: Vec<(usize, Scalar)> = Vec::new();
                    for (k, x) in am_cols[c].iter() {
                        entries.push((var(e, r, *k), x.clone()));
                    }
                    for (k, x) in an_rows[r].iter() {
                        entries.push((var(d, *k, c), -x));
                    }
                    let v = SparseVec::from_entries(entries);
                    if !v.is_zero() {
                        rows.push(v);
                    }
                }
            }
        }
    }
    let kernel = kernel_basis(&Matrix::from_rows(field, total, rows));
    let basis = kernel
        .basis()
        .iter()
        .map(|v| {
            let blocks = sound
                .degrees()
                .map(|d| {
                    let (nr, nc) = (n.dim(d + w).unwrap(), m.dim(d).unwrap());
                    let cols: Vec<SparseVec> = (0..nc)
                        .map(|c| v.slice(var_base(&offsets, &sound, d) + c * nr, nr))
                        .collect();
                    Matrix::from_columns(field, nr, &cols)
                })
                .collect();
            GradedMap {
                weight: w,
                window: sound,
                blocks,
            }
        })
        .collect();
    Ok(HomSpace {
        weight: w,
        window: sound,
        basis,
    })
}

fn var_base(offsets: &[usize], sound: &DegreeWindow, d: i64) -> usize {
    offsets[sound.index(d).unwrap()]
}
