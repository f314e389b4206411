use std::collections::HashMap;

use crate::error::Result;
use crate::exactla::{kernel_basis, Echelon, Matrix, SparseVec, Subspace};

use super::bimodule::{BiBiModule, Cell};

/// Per-bidegree torsion certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionCell {
    pub bidegree: Cell,
    pub dim: usize,
    pub torsion_dim: usize,
    /// Largest exhaustion step testable inside the window, if any.
    pub max_tested: Option<u32>,
    pub stabilized_at: Option<u32>,
    pub certified: bool,
}

#[derive(Clone, Debug)]
pub struct TorsionResult {
    pub module: BiBiModule,
    pub subspaces: Vec<Subspace>,
    pub inclusions: Vec<Matrix>,
    pub cells: Vec<TorsionCell>,
    /// Largest stabilization step over all nonzero testable cells.
    pub bound: u32,
}

impl TorsionResult {
    pub fn fully_certified(&self) -> bool {
        self.cells.iter().all(|c| c.certified)
    }

    pub fn is_everything(&self) -> bool {
        self.cells.iter().all(|c| c.torsion_dim == c.dim)
    }
}

/// Row bases of the maps m -> (u m v) over words u of A-weight a and v of B-weight b.
struct Annihilators<'a> {
    m: &'a BiBiModule,
    memo: HashMap<(u32, u32, Cell), Vec<SparseVec>>,
}

impl<'a> Annihilators<'a> {
    fn rows(&mut self, a: u32, b: u32, c: Cell) -> Vec<SparseVec> {
        if let Some(r) = self.memo.get(&(a, b, c)) {
            return r.clone();
        }
        let field = self.m.field();
        let d = self.m.dim(c).expect("cell in window");
        let mut ech = Echelon::new(field, d);
        if a == 0 && b == 0 {
            for i in 0..d {
                ech.insert(&SparseVec::unit(i, field));
            }
        } else if a > 0 {
            let alg = self.m.left_algebra().clone();
            for g in 0..alg.num_generators() {
                let w = alg.generator_weight(g);
                if w > a {
                    continue;
                }
                let next = (c.0 + w as i64, c.1);
                let sub = self.rows(a - w, b, next);
                let lt = self.m.left_action(g, c).expect("inside window").transpose();
                for r in &sub {
                    ech.insert(&lt.apply(r));
                }
            }
        } else {
            let alg = self.m.right_algebra().clone();
            for h in 0..alg.num_generators() {
                let w = alg.generator_weight(h);
                if w > b {
                    continue;
                }
                let next = (c.0, c.1 + w as i64);
                let sub = self.rows(0, b - w, next);
                let rt = self.m.right_action(h, c).expect("inside window").transpose();
                for r in &sub {
                    ech.insert(&rt.apply(r));
                }
            }
        }
        let rows = ech.rref_rows();
        self.memo.insert((a, b, c), rows.clone());
        rows
    }
}

/// Elements killed by all products of A-weight ≥ n1 and B-weight ≥ n2 visible in the window,
/// exhausted along the diagonal with each side capped at its testable maximum.
pub fn bibi_torsion(m: &BiBiModule) -> Result<TorsionResult> {
    let field = m.field();
    let w = m.window();
    let wa = m.left_algebra().max_generator_weight() as i64;
    let wb = m.right_algebra().max_generator_weight() as i64;
    let mut ann = Annihilators {
        m,
        memo: HashMap::new(),
    };
    struct Chain {
        dims: Vec<usize>,
        last: Subspace,
        t: Option<u32>,
    }
    let mut chains = Vec::new();
    for c in w.cells() {
        let d = m.dim(c).unwrap();
        let t1 = w.hi1 - c.0 - (wa - 1);
        let t2 = w.hi2 - c.1 - (wb - 1);
        if t1 < 0 || t2 < 0 {
            chains.push(Chain {
                dims: Vec::new(),
                last: Subspace::full(field, d),
                t: None,
            });
            continue;
        }
        let top = t1.max(t2) as u32;
        let mut dims = Vec::new();
        let mut last = Subspace::zero(field, d);
        for n in 0..=top {
            let a = (n as i64).min(t1) as u32;
            let b = (n as i64).min(t2) as u32;
            let mut rows = Vec::new();
            for x in a..a + wa as u32 {
                for y in b..b + wb as u32 {
                    rows.extend(ann.rows(x, y, c));
                }
            }
            let k = kernel_basis(&Matrix::from_rows(field, d, rows));
            dims.push(k.dim());
            last = k;
        }
        chains.push(Chain {
            dims,
            last,
            t: Some(top),
        });
    }
    let stab: Vec<Option<u32>> = chains
        .iter()
        .map(|ch| {
            let fin = *ch.dims.last()?;
            ch.dims.iter().position(|&x| x == fin).map(|p| p as u32)
        })
        .collect();
    let bound = chains
        .iter()
        .zip(&stab)
        .filter(|(ch, _)| ch.last.ambient_dim() > 0)
        .filter_map(|(_, s)| *s)
        .max()
        .unwrap_or(0);
    let mut cells = Vec::new();
    for ((c, ch), s) in w.cells().into_iter().zip(&chains).zip(&stab) {
        let d = ch.last.ambient_dim();
        let certified = d == 0
            || match (ch.t, s) {
                (Some(t), Some(s)) => t >= (s + 1).max(bound),
                _ => false,
            };
        cells.push(TorsionCell {
            bidegree: c,
            dim: d,
            torsion_dim: ch.last.dim(),
            max_tested: ch.t,
            stabilized_at: *s,
            certified,
        });
    }
    let subspaces: Vec<Subspace> = chains.into_iter().map(|ch| ch.last).collect();
    let (module, inclusions) = m.submodule(&subspaces)?;
    Ok(TorsionResult {
        module,
        subspaces,
        inclusions,
        cells,
        bound,
    })
}
