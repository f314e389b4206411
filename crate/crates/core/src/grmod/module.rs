use std::sync::Arc;

use crate::bigr::{trivial_algebra, BiBiModule, BiWindow};
use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, SparseVec, Subspace};
use crate::freealg::{Algebra, FreePoly, Word};

/// Closed range of degrees [lo, hi].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DegreeWindow {
    pub lo: i64,
    pub hi: i64,
}

impl DegreeWindow {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::EmptyWindow(format!("[{},{}]", lo, hi)));
        }
        Ok(DegreeWindow { lo, hi })
    }

    pub fn contains(&self, d: i64) -> bool {
        d >= self.lo && d <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }

    pub fn index(&self, d: i64) -> Option<usize> {
        self.contains(d).then(|| (d - self.lo) as usize)
    }

    pub fn intersect(&self, other: &DegreeWindow) -> Option<DegreeWindow> {
        let (lo, hi) = (self.lo.max(other.lo), self.hi.min(other.hi));
        (lo <= hi).then_some(DegreeWindow { lo, hi })
    }

    pub fn describe(&self) -> String {
        format!("[{},{}]", self.lo, self.hi)
    }

    pub(crate) fn as_bi(&self) -> BiWindow {
        BiWindow { lo1: self.lo, hi1: self.hi, lo2: 0, hi2: 0 }
    }
}

/// Graded left module known on a window of degrees. Components outside the window
/// are undefined; an action matrix exists whenever source and target degree both lie inside.
///
/// Stored as a bigraded module over (A, k) concentrated in second degree 0.
#[derive(Clone, Debug)]
pub struct WindowedModule {
    inner: BiBiModule,
}

impl WindowedModule {
    pub fn from_fn(
        algebra: Arc<Algebra>,
        window: DegreeWindow,
        dim: impl Fn(i64) -> usize,
        action: impl Fn(usize, i64) -> Matrix,
    ) -> Result<Self> {
        let field = algebra.field();
        let inner = BiBiModule::from_fn(
            algebra,
            trivial_algebra(field),
            window.as_bi(),
            |c| dim(c.0),
            |g, c| action(g, c.0),
            |_, _| unreachable!("k has no generators"),
        )?;
        Ok(WindowedModule { inner })
    }

    pub fn from_bimodule(inner: BiBiModule) -> Result<Self> {
        let w = inner.window();
        if inner.right_algebra().num_generators() != 0 || w.lo2 != 0 || w.hi2 != 0 {
            return Err(Error::Mismatch("not a one-sided graded module".into()));
        }
        Ok(WindowedModule { inner })
    }

    pub fn as_bimodule(&self) -> &BiBiModule {
        &self.inner
    }

    pub fn zero(algebra: Arc<Algebra>, window: DegreeWindow) -> Self {
        let f = algebra.field();
        WindowedModule::from_fn(algebra, window, |_| 0, |_, _| Matrix::zero(f, 0, 0)).expect("zero module")
    }

    pub fn algebra(&self) -> &Arc<Algebra> {
        self.inner.left_algebra()
    }

    pub fn field(&self) -> FieldSpec {
        self.inner.field()
    }

    pub fn window(&self) -> DegreeWindow {
        let w = self.inner.window();
        DegreeWindow { lo: w.lo1, hi: w.hi1 }
    }

    /// Dimension at d, or None outside the window.
    pub fn dim(&self, d: i64) -> Option<usize> {
        self.inner.dim((d, 0))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.window().degrees().map(|d| self.dim(d).unwrap()).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    pub fn action(&self, g: usize, d: i64) -> Option<&Matrix> {
        self.inner.left_action(g, (d, 0))
    }

    pub fn apply_word(&self, w: &Word, d: i64, v: &SparseVec) -> SparseVec {
        self.inner.apply_left_word(w, (d, 0), v)
    }

    /// Applies a homogeneous algebra element given as a polynomial.
    pub fn apply_poly(&self, p: &FreePoly, d: i64, v: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (w, c) in p.terms() {
            acc = acc.add_scaled(c, &self.apply_word(w, d, v));
        }
        acc
    }

    pub fn submodule(&self, subs: &[Subspace]) -> Result<(WindowedModule, Vec<Matrix>)> {
        let (m, inc) = self.inner.submodule(subs)?;
        Ok((WindowedModule { inner: m }, inc))
    }

    pub fn quotient(&self, subs: &[Subspace]) -> Result<(WindowedModule, Vec<Matrix>)> {
        let (m, proj) = self.inner.quotient(subs)?;
        Ok((WindowedModule { inner: m }, proj))
    }

    /// Per-degree subspaces of the submodule generated by the given elements.
    pub fn generated(&self, elements: &[(i64, SparseVec)]) -> Vec<Subspace> {
        let e: Vec<_> = elements.iter().map(|(d, v)| ((*d, 0), v.clone())).collect();
        self.inner.generated(&e)
    }

    pub fn direct_sum(&self, other: &WindowedModule) -> Result<WindowedModule> {
        Ok(WindowedModule {
            inner: self.inner.direct_sum(&other.inner)?,
        })
    }

    pub fn restrict(&self, window: DegreeWindow) -> Result<WindowedModule> {
        Ok(WindowedModule {
            inner: self.inner.restrict(window.as_bi())?,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// Degree-w map given by one block per source degree: M_d -> N_{d+w}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMap {
    pub weight: i64,
    pub window: DegreeWindow,
    pub blocks: Vec<Matrix>,
}

impl GradedMap {
    pub fn block(&self, d: i64) -> Option<&Matrix> {
        self.window.index(d).map(|k| &self.blocks[k])
    }

    pub fn apply(&self, d: i64, v: &SparseVec) -> Option<SparseVec> {
        self.block(d).map(|m| m.apply(v))
    }

    /// Checks g·f = f·g wherever both sides are defined.
    pub fn commutes(&self, source: &WindowedModule, target: &WindowedModule) -> bool {
        let alg = source.algebra();
        for d in self.window.degrees() {
            for g in 0..alg.num_generators() {
                let wg = alg.generator_weight(g) as i64;
                let (Some(f_hi), Some(act_s), Some(act_t)) = (
                    self.block(d + wg),
                    source.action(g, d),
                    target.action(g, d + self.weight),
                ) else {
                    continue;
                };
                if f_hi.mul(act_s) != act_t.mul(&self.blocks[self.window.index(d).unwrap()]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|m| crate::exactla::rank(m) == m.ncols())
    }
}

fn check_cutoff(alg: &Algebra, needed: i64) -> Result<()> {
    if needed > alg.cutoff() as i64 {
        return Err(Error::CutoffTooSmall {
            cutoff: alg.cutoff(),
            needed: needed as u32,
        });
    }
    Ok(())
}

/// Offsets of the summands A(u_i)_d inside (⊕ A(u_i))_d.
fn block_offsets(alg: &Algebra, shifts: &[i64], d: i64) -> Vec<usize> {
    let mut out = Vec::with_capacity(shifts.len() + 1);
    let mut acc = 0;
    for u in shifts {
        out.push(acc);
        acc += alg.dim(d + u);
    }
    out.push(acc);
    out
}

/// ⊕ A(u_i): degree d has basis {(i, w) : w normal of weight d + u_i}.
pub fn free_module(algebra: Arc<Algebra>, shifts: &[i64], window: DegreeWindow) -> Result<WindowedModule> {
    if let Some(m) = shifts.iter().max() {
        check_cutoff(&algebra, window.hi + m)?;
    }
    let field = algebra.field();
    let a = algebra.clone();
    WindowedModule::from_fn(
        algebra.clone(),
        window,
        |d| *block_offsets(&a, shifts, d).last().unwrap(),
        |g, d| {
            let wg = a.generator_weight(g) as i64;
            let mut m = Matrix::zero(field, 0, 0);
            for u in shifts {
                let e = d + u;
                let block = if e < 0 {
                    Matrix::zero(field, a.dim(e + wg), 0)
                } else {
                    a.left_gen_matrix(g, e).clone()
                };
                m = m.direct_sum(&block);
            }
            m
        },
    )
}

/// Element of the free module ⊕ A(u_i) at degree d from a row of polynomials.
fn row_vector(alg: &Algebra, shifts: &[i64], d: i64, row: &[FreePoly]) -> Result<SparseVec> {
    let offs = block_offsets(alg, shifts, d);
    let mut entries = Vec::new();
    for (i, f) in row.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        let v = alg.to_vector(f, d + shifts[i])?;
        entries.extend(v.shifted(offs[i]).into_entries());
    }
    Ok(SparseVec::from_entries(entries))
}

/// Cokernel of a map of free modules: generators A(u_i), relations given as rows
/// (f_1, ..., f_k) with each nonzero f_i homogeneous of weight δ + u_i for a common δ.
pub fn present_module(
    algebra: Arc<Algebra>,
    gen_shifts: &[i64],
    relation_rows: &[Vec<FreePoly>],
    window: DegreeWindow,
) -> Result<WindowedModule> {
    let free = free_module(algebra.clone(), gen_shifts, window)?;
    let field = algebra.field();
    let weights = algebra.weights();
    let mut elements = Vec::new();
    for (index, row) in relation_rows.iter().enumerate() {
        if row.len() != gen_shifts.len() {
            return Err(Error::Mismatch(format!(
                "relation row {} has {} entries for {} generators",
                index,
                row.len(),
                gen_shifts.len()
            )));
        }
        let mut degs = Vec::new();
        for (i, f) in row.iter().enumerate() {
            for w in f.weights(&weights) {
                degs.push(w as i64 - gen_shifts[i]);
            }
        }
        degs.sort();
        degs.dedup();
        if degs.len() > 1 {
            return Err(Error::InhomogeneousRelation {
                index,
                weights: degs.iter().map(|d| *d as u32).collect(),
            });
        }
        let Some(&delta) = degs.first() else { continue };
        if window.contains(delta) {
            elements.push((delta, row_vector(&algebra, gen_shifts, delta, row)?));
        } else if delta < window.lo {
            // relation below the window: its multiples landing in degree lo generate the rest
            let d = window.lo;
            for u in algebra.basis(d - delta) {
                let r: Vec<FreePoly> = row
                    .iter()
                    .map(|f| algebra.normal_form(&FreePoly::monomial(field, u.clone(), field.one()).mul(f)))
                    .collect();
                elements.push((d, row_vector(&algebra, gen_shifts, d, &r)?));
            }
        }
    }
    let subs = free.generated(&elements);
    Ok(free.quotient(&subs)?.0)
}

/// Least d in the window with M_{d'} = 0 for all d' ≥ d; None if M_hi ≠ 0.
pub fn right_limited_check(m: &WindowedModule) -> Option<i64> {
    let w = m.window();
    let mut d = w.hi + 1;
    while d > w.lo && m.dim(d - 1) == Some(0) {
        d -= 1;
    }
    (d <= w.hi).then_some(d)
}

/// A_{≥n} as a submodule of the free module A, with inclusions.
pub fn truncated_free(algebra: Arc<Algebra>, n: i64, window: DegreeWindow) -> Result<(WindowedModule, Vec<Matrix>)> {
    let free = free_module(algebra, &[0], window)?;
    let field = free.field();
    let subs: Vec<Subspace> = window
        .degrees()
        .map(|d| {
            let k = free.dim(d).unwrap();
            if d >= n {
                Subspace::full(field, k)
            } else {
                Subspace::zero(field, k)
            }
        })
        .collect();
    free.submodule(&subs)
}

/// A / A_{≥n}.
pub fn truncated_quotient(algebra: Arc<Algebra>, n: i64, window: DegreeWindow) -> Result<WindowedModule> {
    let free = free_module(algebra, &[0], window)?;
    let field = free.field();
    let subs: Vec<Subspace> = window
        .degrees()
        .map(|d| {
            let k = free.dim(d).unwrap();
            if d >= n {
                Subspace::full(field, k)
            } else {
                Subspace::zero(field, k)
            }
        })
        .collect();
    Ok(free.quotient(&subs)?.0)
}
