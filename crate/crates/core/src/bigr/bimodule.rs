use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Echelon, FieldSpec, Matrix, SparseVec, Subspace};
use crate::freealg::{Algebra, Presentation, Word};

/// Rectangular window of bidegrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BiWindow {
    pub lo1: i64,
    pub hi1: i64,
    pub lo2: i64,
    pub hi2: i64,
}

pub type Cell = (i64, i64);

impl BiWindow {
    pub fn new(lo1: i64, hi1: i64, lo2: i64, hi2: i64) -> Result<Self> {
        if lo1 > hi1 || lo2 > hi2 {
            return Err(Error::EmptyWindow(format!(
                "[{},{}]x[{},{}]",
                lo1, hi1, lo2, hi2
            )));
        }
        Ok(BiWindow { lo1, hi1, lo2, hi2 })
    }

    pub fn square(lo: i64, hi: i64) -> Result<Self> {
        BiWindow::new(lo, hi, lo, hi)
    }

    pub fn width2(&self) -> usize {
        (self.hi2 - self.lo2 + 1) as usize
    }

    pub fn len(&self) -> usize {
        (self.hi1 - self.lo1 + 1) as usize * self.width2()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.0 >= self.lo1 && c.0 <= self.hi1 && c.1 >= self.lo2 && c.1 <= self.hi2
    }

    pub fn index(&self, c: Cell) -> Option<usize> {
        if !self.contains(c) {
            return None;
        }
        Some((c.0 - self.lo1) as usize * self.width2() + (c.1 - self.lo2) as usize)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> Vec<Cell> {
        let mut out = Vec::with_capacity(self.len());
        for i in self.lo1..=self.hi1 {
            for j in self.lo2..=self.hi2 {
                out.push((i, j));
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        format!("[{},{}]x[{},{}]", self.lo1, self.hi1, self.lo2, self.hi2)
    }
}

/// The algebra k: no generators.
pub fn trivial_algebra(field: FieldSpec) -> Arc<Algebra> {
    Arc::new(Algebra::new(
        Presentation::new(field, Vec::new(), Vec::new()).expect("empty presentation"),
        0,
    ))
}

/// Bigraded module with a left A-action and a right B-action, windowed.
/// Action matrices exist exactly where the target bidegree lies in the window.
#[derive(Clone, Debug)]
pub struct BiBiModule {
    left: Arc<Algebra>,
    right: Arc<Algebra>,
    window: BiWindow,
    dims: Vec<usize>,
    left_actions: Vec<Vec<Option<Matrix>>>,
    right_actions: Vec<Vec<Option<Matrix>>>,
}

impl BiBiModule {
    /// Builds and validates: matrix shapes, the relations of both algebras,
    /// and commutation of left with right actions.
    pub fn from_fn(
        left: Arc<Algebra>,
        right: Arc<Algebra>,
        window: BiWindow,
        dim: impl Fn(Cell) -> usize,
        left_fn: impl Fn(usize, Cell) -> Matrix,
        right_fn: impl Fn(usize, Cell) -> Matrix,
    ) -> Result<Self> {
        left.field().check_same(&right.field())?;
        let cells = window.cells();
        let dims: Vec<usize> = cells.iter().map(|&c| dim(c)).collect();
        let mut left_actions = Vec::new();
        for g in 0..left.num_generators() {
            let w = left.generator_weight(g) as i64;
            left_actions.push(
                cells
                    .iter()
                    .map(|&c| {
                        let t = (c.0 + w, c.1);
                        window.contains(t).then(|| left_fn(g, c))
                    })
                    .collect(),
            );
        }
        let mut right_actions = Vec::new();
        for h in 0..right.num_generators() {
            let w = right.generator_weight(h) as i64;
            right_actions.push(
                cells
                    .iter()
                    .map(|&c| {
                        let t = (c.0, c.1 + w);
                        window.contains(t).then(|| right_fn(h, c))
                    })
                    .collect(),
            );
        }
        let m = BiBiModule {
            left,
            right,
            window,
            dims,
            left_actions,
            right_actions,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(left: Arc<Algebra>, right: Arc<Algebra>, window: BiWindow) -> Self {
        let f = left.field();
        BiBiModule::from_fn(
            left,
            right,
            window,
            |_| 0,
            |_, _| Matrix::zero(f, 0, 0),
            |_, _| Matrix::zero(f, 0, 0),
        )
        .expect("zero module is valid")
    }

    pub fn validate(&self) -> Result<()> {
        for (side, alg, acts) in [
            (0, &self.left, &self.left_actions),
            (1, &self.right, &self.right_actions),
        ] {
            for (g, per) in acts.iter().enumerate() {
                let w = alg.generator_weight(g) as i64;
                for (k, c) in self.window.cells().into_iter().enumerate() {
                    if let Some(m) = &per[k] {
                        let t = if side == 0 { (c.0 + w, c.1) } else { (c.0, c.1 + w) };
                        let want = (self.dim(t).unwrap(), self.dims[k]);
                        if (m.nrows(), m.ncols()) != want {
                            return Err(Error::Mismatch(format!(
                                "action of generator {} at {:?} has shape {}x{}, expected {}x{}",
                                g,
                                c,
                                m.nrows(),
                                m.ncols(),
                                want.0,
                                want.1
                            )));
                        }
                    }
                }
            }
        }
        self.check_relations()?;
        self.check_commutation()
    }

    fn check_relations(&self) -> Result<()> {
        let field = self.field();
        for (side, alg) in [(0, &self.left), (1, &self.right)] {
            let weights = alg.weights();
            for r in alg.presentation().relations() {
                let rw = r.terms().keys().next().unwrap().weight(&weights) as i64;
                for c in self.window.cells() {
                    let t = if side == 0 { (c.0 + rw, c.1) } else { (c.0, c.1 + rw) };
                    if !self.window.contains(t) {
                        continue;
                    }
                    for col in 0..self.dim(c).unwrap() {
                        let e = SparseVec::unit(col, field);
                        let mut acc = SparseVec::zero();
                        for (w, s) in r.terms() {
                            let img = if side == 0 {
                                self.apply_left_word(w, c, &e)
                            } else {
                                self.apply_right_word(c, &e, w)
                            };
                            acc = acc.add_scaled(s, &img);
                        }
                        if !acc.is_zero() {
                            return Err(Error::Hypothesis(format!(
                                "{} action violates a relation at {:?}",
                                if side == 0 { "left" } else { "right" },
                                c
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn check_commutation(&self) -> Result<()> {
        for (g, lper) in self.left_actions.iter().enumerate() {
            let wg = self.left.generator_weight(g) as i64;
            for (h, rper) in self.right_actions.iter().enumerate() {
                let wh = self.right.generator_weight(h) as i64;
                for (k, c) in self.window.cells().into_iter().enumerate() {
                    let corner = (c.0 + wg, c.1 + wh);
                    if !self.window.contains(corner) {
                        continue;
                    }
                    let (l, r) = (lper[k].as_ref().unwrap(), rper[k].as_ref().unwrap());
                    let l2 = self.left_action(g, (c.0, c.1 + wh)).unwrap();
                    let r2 = self.right_action(h, (c.0 + wg, c.1)).unwrap();
                    if l2.mul(r) != r2.mul(l) {
                        return Err(Error::Hypothesis(format!(
                            "left and right actions do not commute at {:?}",
                            c
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldSpec {
        self.left.field()
    }

    pub fn left_algebra(&self) -> &Arc<Algebra> {
        &self.left
    }

    pub fn right_algebra(&self) -> &Arc<Algebra> {
        &self.right
    }

    pub fn window(&self) -> BiWindow {
        self.window
    }

    /// Dimension at c, or None outside the window (undefined, not zero).
    pub fn dim(&self, c: Cell) -> Option<usize> {
        self.window.index(c).map(|k| self.dims[k])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn left_action(&self, g: usize, c: Cell) -> Option<&Matrix> {
        self.window.index(c).and_then(|k| self.left_actions[g][k].as_ref())
    }

    pub fn right_action(&self, h: usize, c: Cell) -> Option<&Matrix> {
        self.window.index(c).and_then(|k| self.right_actions[h][k].as_ref())
    }

    /// w . v for v at cell c; the target must lie in the window.
    pub fn apply_left_word(&self, w: &Word, c: Cell, v: &SparseVec) -> SparseVec {
        let mut cur = v.clone();
        let mut cell = c;
        for &g in w.0.iter().rev() {
            cur = self
                .left_action(g as usize, cell)
                .expect("left word leaves window")
                .apply(&cur);
            cell.0 += self.left.generator_weight(g as usize) as i64;
        }
        cur
    }

    /// v . w for v at cell c.
    pub fn apply_right_word(&self, c: Cell, v: &SparseVec, w: &Word) -> SparseVec {
        let mut cur = v.clone();
        let mut cell = c;
        for &h in w.0.iter() {
            cur = self
                .right_action(h as usize, cell)
                .expect("right word leaves window")
                .apply(&cur);
            cell.1 += self.right.generator_weight(h as usize) as i64;
        }
        cur
    }

    /// Sub-bimodule from per-cell subspaces (row-major cell order), with inclusion matrices.
    pub fn submodule(&self, subs: &[Subspace]) -> Result<(BiBiModule, Vec<Matrix>)> {
        let field = self.field();
        let w = self.window;
        for (k, c) in w.cells().into_iter().enumerate() {
            for g in 0..self.left.num_generators() {
                if let Some(m) = self.left_action(g, c) {
                    let t = w.index((c.0 + self.left.generator_weight(g) as i64, c.1)).unwrap();
                    if subs[k].basis().iter().any(|b| !subs[t].contains(&m.apply(b))) {
                        return Err(Error::Hypothesis("subspaces are not action-stable".into()));
                    }
                }
            }
            for h in 0..self.right.num_generators() {
                if let Some(m) = self.right_action(h, c) {
                    let t = w.index((c.0, c.1 + self.right.generator_weight(h) as i64)).unwrap();
                    if subs[k].basis().iter().any(|b| !subs[t].contains(&m.apply(b))) {
                        return Err(Error::Hypothesis("subspaces are not action-stable".into()));
                    }
                }
            }
        }
        let restrict = |m: &Matrix, src: &Subspace, dst: &Subspace| -> Matrix {
            let cols: Vec<SparseVec> = src.basis().iter().map(|b| dst.coords(&m.apply(b))).collect();
            Matrix::from_columns(field, dst.dim(), &cols)
        };
        let sub = BiBiModule::from_fn(
            self.left.clone(),
            self.right.clone(),
            w,
            |c| subs[w.index(c).unwrap()].dim(),
            |g, c| {
                let t = (c.0 + self.left.generator_weight(g) as i64, c.1);
                restrict(
                    self.left_action(g, c).unwrap(),
                    &subs[w.index(c).unwrap()],
                    &subs[w.index(t).unwrap()],
                )
            },
            |h, c| {
                let t = (c.0, c.1 + self.right.generator_weight(h) as i64);
                restrict(
                    self.right_action(h, c).unwrap(),
                    &subs[w.index(c).unwrap()],
                    &subs[w.index(t).unwrap()],
                )
            },
        )?;
        let inclusions = subs
            .iter()
            .map(|s| Matrix::from_columns(field, s.ambient_dim(), s.basis()))
            .collect();
        Ok((sub, inclusions))
    }

    /// Quotient by per-cell action-stable subspaces, with projection matrices.
    pub fn quotient(&self, subs: &[Subspace]) -> Result<(BiBiModule, Vec<Matrix>)> {
        use crate::exactla::Quotient;
        let field = self.field();
        let w = self.window;
        let quots: Vec<Quotient> = subs
            .iter()
            .map(|s| Quotient::new(field, s.ambient_dim(), s.basis()))
            .collect();
        let induced = |m: &Matrix, src: &Quotient, dst: &Quotient| -> Matrix {
            let cols: Vec<SparseVec> = (0..src.dim())
                .map(|i| dst.coords(&m.apply(&src.lift(i))))
                .collect();
            Matrix::from_columns(field, dst.dim(), &cols)
        };
        // stability check: images of subspace vectors stay inside
        for (k, c) in w.cells().into_iter().enumerate() {
            for g in 0..self.left.num_generators() {
                if let Some(m) = self.left_action(g, c) {
                    let t = w.index((c.0 + self.left.generator_weight(g) as i64, c.1)).unwrap();
                    for b in subs[k].basis() {
                        if !quots[t].is_zero_class(&m.apply(b)) {
                            return Err(Error::Hypothesis("subspaces are not action-stable".into()));
                        }
                    }
                }
            }
            for h in 0..self.right.num_generators() {
                if let Some(m) = self.right_action(h, c) {
                    let t = w.index((c.0, c.1 + self.right.generator_weight(h) as i64)).unwrap();
                    for b in subs[k].basis() {
                        if !quots[t].is_zero_class(&m.apply(b)) {
                            return Err(Error::Hypothesis("subspaces are not action-stable".into()));
                        }
                    }
                }
            }
        }
        let q = BiBiModule::from_fn(
            self.left.clone(),
            self.right.clone(),
            w,
            |c| quots[w.index(c).unwrap()].dim(),
            |g, c| {
                let t = (c.0 + self.left.generator_weight(g) as i64, c.1);
                induced(
                    self.left_action(g, c).unwrap(),
                    &quots[w.index(c).unwrap()],
                    &quots[w.index(t).unwrap()],
                )
            },
            |h, c| {
                let t = (c.0, c.1 + self.right.generator_weight(h) as i64);
                induced(
                    self.right_action(h, c).unwrap(),
                    &quots[w.index(c).unwrap()],
                    &quots[w.index(t).unwrap()],
                )
            },
        )?;
        let projections = quots
            .iter()
            .map(|qt| {
                let cols: Vec<SparseVec> = (0..qt.ambient_dim())
                    .map(|i| qt.coords(&SparseVec::unit(i, field)))
                    .collect();
                Matrix::from_columns(field, qt.dim(), &cols)
            })
            .collect();
        Ok((q, projections))
    }

    /// Smallest action-stable family of subspaces containing the given elements.
    pub fn generated(&self, elements: &[(Cell, SparseVec)]) -> Vec<Subspace> {
        let field = self.field();
        let w = self.window;
        let cells = w.cells();
        let mut echs: Vec<Echelon> = cells
            .iter()
            .map(|&c| Echelon::new(field, self.dim(c).unwrap()))
            .collect();
        for (c, v) in elements {
            if let Some(k) = w.index(*c) {
                echs[k].insert(v);
            }
        }
        // row-major order visits (i - wg, j) and (i, j - wh) before (i, j)
        for (k, &c) in cells.iter().enumerate() {
            for g in 0..self.left.num_generators() {
                let src = (c.0 - self.left.generator_weight(g) as i64, c.1);
                if let Some(s) = w.index(src) {
                    let m = self.left_action(g, src).unwrap();
                    let rows = echs[s].row_space();
                    for b in rows.basis() {
                        echs[k].insert(&m.apply(b));
                    }
                }
            }
            for h in 0..self.right.num_generators() {
                let src = (c.0, c.1 - self.right.generator_weight(h) as i64);
                if let Some(s) = w.index(src) {
                    let m = self.right_action(h, src).unwrap();
                    let rows = echs[s].row_space();
                    for b in rows.basis() {
                        echs[k].insert(&m.apply(b));
                    }
                }
            }
        }
        echs.iter().map(|e| e.row_space()).collect()
    }

    /// Direct sum on a common window.
    pub fn direct_sum(&self, other: &BiBiModule) -> Result<BiBiModule> {
        if self.window != other.window {
            return Err(Error::Mismatch("direct sum needs equal windows".into()));
        }
        BiBiModule::from_fn(
            self.left.clone(),
            self.right.clone(),
            self.window,
            |c| self.dim(c).unwrap() + other.dim(c).unwrap(),
            |g, c| self.left_action(g, c).unwrap().direct_sum(other.left_action(g, c).unwrap()),
            |h, c| {
                self.right_action(h, c)
                    .unwrap()
                    .direct_sum(other.right_action(h, c).unwrap())
            },
        )
    }

    /// Restriction to a smaller window.
    pub fn restrict(&self, window: BiWindow) -> Result<BiBiModule> {
        if !self.window.contains((window.lo1, window.lo2)) || !self.window.contains((window.hi1, window.hi2)) {
            return Err(Error::WindowTooSmall {
                window: self.window.describe(),
                what: "restriction".into(),
                needed: window.describe(),
            });
        }
        BiBiModule::from_fn(
            self.left.clone(),
            self.right.clone(),
            window,
            |c| self.dim(c).unwrap(),
            |g, c| self.left_action(g, c).unwrap().clone(),
            |h, c| self.right_action(h, c).unwrap().clone(),
        )
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

/// A ⊗ B as a bimodule over itself: cell (i,j) has basis pairs (a, b), index a * dim B_j + b.
pub fn free_bimodule(a: Arc<Algebra>, b: Arc<Algebra>, window: BiWindow) -> Result<BiBiModule> {
    check_cutoff(&a, window.hi1)?;
    check_cutoff(&b, window.hi2)?;
    let field = a.field();
    let ident = |n: usize| Matrix::identity(field, n);
    let (a2, b2) = (a.clone(), b.clone());
    BiBiModule::from_fn(
        a.clone(),
        b.clone(),
        window,
        |c| a.dim(c.0) * b.dim(c.1),
        |g, c| {
            if c.0 < 0 {
                let t = c.0 + a2.generator_weight(g) as i64;
                return Matrix::zero(field, a2.dim(t) * b2.dim(c.1), 0);
            }
            a2.left_gen_matrix(g, c.0).kronecker(&ident(b2.dim(c.1)))
        },
        |h, c| {
            if c.1 < 0 {
                let t = c.1 + b.generator_weight(h) as i64;
                return Matrix::zero(field, a.dim(c.0) * b.dim(t), 0);
            }
            ident(a.dim(c.0)).kronecker(b.right_gen_matrix(h, c.1))
        },
    )
}

/// Δ: cell (i,j) is A_{i+j}; left and right multiplication.
pub fn delta_bimodule(a: Arc<Algebra>, window: BiWindow) -> Result<BiBiModule> {
    check_cutoff(&a, window.hi1 + window.hi2)?;
    let field = a.field();
    let a2 = a.clone();
    let a3 = a.clone();
    BiBiModule::from_fn(
        a.clone(),
        a.clone(),
        window,
        |c| a.dim(c.0 + c.1),
        |g, c| {
            let d = c.0 + c.1;
            if d < 0 {
                return Matrix::zero(field, a2.dim(d + a2.generator_weight(g) as i64), 0);
            }
            a2.left_gen_matrix(g, d).clone()
        },
        |h, c| {
            let d = c.0 + c.1;
            if d < 0 {
                return Matrix::zero(field, a3.dim(d + a3.generator_weight(h) as i64), 0);
            }
            a3.right_gen_matrix(h, d).clone()
        },
    )
}

/// (A ⊗ B) / (A ⊗ B)_{≥n,≥n}.
pub fn truncated_free_bimodule(a: Arc<Algebra>, b: Arc<Algebra>, window: BiWindow, n: i64) -> Result<BiBiModule> {
    let free = free_bimodule(a, b, window)?;
    let field = free.field();
    let subs: Vec<Subspace> = window
        .cells()
        .into_iter()
        .map(|c| {
            let d = free.dim(c).unwrap();
            if c.0 >= n && c.1 >= n {
                Subspace::full(field, d)
            } else {
                Subspace::zero(field, d)
            }
        })
        .collect();
    Ok(free.quotient(&subs)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{polynomial_ring, quantum_plane};

    #[test]
    fn delta_dims() {
        let q = FieldSpec::RATIONALS;
        let a = Arc::new(Algebra::new(quantum_plane(q, q.from_i64(2)).unwrap(), 6));
        let d = delta_bimodule(a, BiWindow::square(-1, 3).unwrap()).unwrap();
        assert_eq!(d.dim((1, 1)), Some(3));
        assert_eq!(d.dim((-1, 0)), Some(0));
        assert_eq!(d.dim((5, 0)), None);
    }

    #[test]
    fn free_bimodule_dims_and_truncation() {
        let q = FieldSpec::RATIONALS;
        let a = Arc::new(Algebra::new(polynomial_ring(q, 2).unwrap(), 4));
        let w = BiWindow::square(0, 2).unwrap();
        let f = free_bimodule(a.clone(), a.clone(), w).unwrap();
        assert_eq!(f.dim((1, 2)), Some(6));
        let t = truncated_free_bimodule(a.clone(), a, w, 1).unwrap();
        assert_eq!(t.dim((1, 1)), Some(0));
        assert_eq!(t.dim((2, 0)), Some(3));
    }

    #[test]
    fn generated_submodule_of_monomial() {
        let q = FieldSpec::RATIONALS;
        let kx = Arc::new(Algebra::new(polynomial_ring(q, 1).unwrap(), 4));
        let w = BiWindow::square(0, 3).unwrap();
        let f = free_bimodule(kx.clone(), kx, w).unwrap();
        let subs = f.generated(&[((1, 1), SparseVec::unit(0, q))]);
        assert_eq!(subs[w.index((2, 3)).unwrap()].dim(), 1);
        assert_eq!(subs[w.index((0, 3)).unwrap()].dim(), 0);
        let (quot, _) = f.quotient(&subs).unwrap();
        assert_eq!(quot.dim((2, 2)), Some(0));
        assert_eq!(quot.dim((0, 2)), Some(1));
    }
}
