use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, FieldSpec, Matrix, SparseVec, Subspace};
use crate::freealg::{Algebra, Word};

use super::bimodule::{BiBiModule, BiWindow, Cell};
use super::ideal::{IdealGens, Side};

/// Which side the exhausting ideal lives on: level L means A_{≥L} ⊗ B,
/// A ⊗ B_{≥L}, or A_{≥L} ⊗ B_{≥L}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exhaust {
    Left,
    Right,
    Both,
}

impl Exhaust {
    fn levels(self, l: u32) -> (u32, u32) {
        match self {
            Exhaust::Left => (l, 0),
            Exhaust::Right => (0, l),
            Exhaust::Both => (l, l),
        }
    }
}

/// Per-bidegree record of the Hom chain H_L = Hom(I_L, M)_c.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellReport {
    pub bidegree: Cell,
    /// (level, dimension) for each computable level
    pub dims: Vec<(u32, usize)>,
    /// (level L, whether the transition L -> L+1 is an isomorphism)
    pub transitions: Vec<(u32, bool)>,
    pub stabilized_at: Option<u32>,
    pub certified: bool,
}

#[derive(Clone, Debug)]
struct Slot {
    a: usize,
    b: usize,
    cell: Cell,
    offset: usize,
    dim: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct LevelCell {
    slots: Vec<Slot>,
    slot_index: HashMap<(usize, usize), usize>,
    space: Subspace,
}

impl LevelCell {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn slot_value(&self, v: &SparseVec, a: usize, b: usize) -> (Cell, SparseVec) {
        let s = &self.slots[self.slot_index[&(a, b)]];
        (s.cell, v.slice(s.offset, s.dim))
    }
}

struct Level {
    nl: u32,
    nr: u32,
    ga: Arc<IdealGens>,
    gb: Arc<IdealGens>,
}

/// Result of a windowed saturation: the module on the output window,
/// whose cell bases are the top-level Hom spaces, plus the stabilization report.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub module: BiBiModule,
    pub report: Vec<CellReport>,
    pub mode: Exhaust,
    pub n_max: u32,
    pub(crate) top: Vec<Option<LevelCell>>,
    left_ext: Arc<Algebra>,
    right_ext: Arc<Algebra>,
    top_ga: Arc<IdealGens>,
    top_gb: Arc<IdealGens>,
}

impl Saturation {
    pub fn cell_report(&self, c: Cell) -> Option<&CellReport> {
        self.module.window().index(c).map(|k| &self.report[k])
    }

    pub fn certified(&self, c: Cell) -> bool {
        self.cell_report(c).map_or(false, |r| r.certified)
    }
}

fn extend(alg: &Arc<Algebra>, needed: u32) -> Arc<Algebra> {
    if alg.cutoff() >= needed {
        alg.clone()
    } else {
        Arc::new(Algebra::new(alg.presentation().clone(), needed))
    }
}

fn needed_cutoff(alg: &Algebra, n: u32) -> u32 {
    IdealGens::syzygy_bound(alg, n).max(n + 2 * IdealGens::span(alg))
}

struct Engine<'a> {
    m: &'a BiBiModule,
    a: Arc<Algebra>,
    b: Arc<Algebra>,
    field: FieldSpec,
}

impl<'a> Engine<'a> {
    fn computable(&self, lv: &Level, c: Cell) -> bool {
        let w = self.m.window();
        c.0 + lv.nl as i64 >= w.lo1 && c.1 + lv.nr as i64 >= w.lo2
    }

    fn level_cell(&self, lv: &Level, c: Cell) -> LevelCell {
        let mut slots = Vec::new();
        let mut slot_index = HashMap::new();
        let mut offset = 0;
        for (a, (ta, _)) in lv.ga.gens.iter().enumerate() {
            for (b, (tb, _)) in lv.gb.gens.iter().enumerate() {
                let cell = (c.0 + *ta as i64, c.1 + *tb as i64);
                let dim = self.m.dim(cell).expect("slot inside window");
                slot_index.insert((a, b), slots.len());
                slots.push(Slot {
                    a,
                    b,
                    cell,
                    offset,
                    dim,
                });
                offset += dim;
            }
        }
        let total = offset;
        let mut rows: Vec<SparseVec> = Vec::new();
        // left syzygies paired with every right generator
        for (t, terms) in &lv.ga.syzygies {
            for (b, (tb, _)) in lv.gb.gens.iter().enumerate() {
                let target = (c.0 + *t as i64, c.1 + *tb as i64);
                let out_dim = self.m.dim(target).expect("syzygy target inside window");
                let mut acc: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); out_dim];
                for (k, u, s) in terms {
                    let slot = &slots[slot_index[&(*k, b)]];
                    for col in 0..slot.dim {
                        let img = self.m.apply_left_word(u, slot.cell, &SparseVec::unit(col, self.field));
                        for (r, x) in img.iter() {
                            acc[*r].push((slot.offset + col, s * x));
                        }
                    }
                }
                rows.extend(acc.into_iter().map(SparseVec::from_entries));
            }
        }
        for (t, terms) in &lv.gb.syzygies {
            for (a, (ta, _)) in lv.ga.gens.iter().enumerate() {
                let target = (c.0 + *ta as i64, c.1 + *t as i64);
                let out_dim = self.m.dim(target).expect("syzygy target inside window");
                let mut acc: Vec<Vec<(usize, crate::exactla::Scalar)>> = vec![Vec::new(); out_dim];
                for (k, u, s) in terms {
                    let slot = &slots[slot_index[&(a, *k)]];
                    for col in 0..slot.dim {
                        let img = self.m.apply_right_word(slot.cell, &SparseVec::unit(col, self.field), u);
                        for (r, x) in img.iter() {
                            acc[*r].push((slot.offset + col, s * x));
                        }
                    }
                }
                rows.extend(acc.into_iter().map(SparseVec::from_entries));
            }
        }
        let space = if rows.iter().all(|r| r.is_zero()) {
            Subspace::full(self.field, total)
        } else {
            kernel_basis(&Matrix::from_rows(self.field, total, rows))
        };
        LevelCell {
            slots,
            slot_index,
            space,
        }
    }

    /// Value of phi (a family at level lv, cell c) on the element wa ⊗ wb,
    /// where wa, wb are normal words of weights at least the level.
    fn eval_words(&self, lv: &Level, lc: &LevelCell, phi: &SparseVec, wa: &Word, wb: &Word) -> SparseVec {
        let (outer_a, ka) = lv.ga.split(&self.a, Side::Left, wa);
        let (outer_b, kb) = lv.gb.split(&self.b, Side::Right, wb);
        let (cell, v) = lc.slot_value(phi, ka, kb);
        let v = self.m.apply_right_word(cell, &v, &outer_b);
        let cell2 = (cell.0, cell.1 + outer_b.weight(&self.b.weights()) as i64);
        self.m.apply_left_word(&outer_a, cell2, &v)
    }

    /// Value of phi on (vector in A_ta) ⊗ (vector in B_tb).
    fn eval_vectors(&self, lv: &Level, lc: &LevelCell, phi: &SparseVec, ta: u32, va: &SparseVec, tb: u32, vb: &SparseVec) -> SparseVec {
        let mut acc = SparseVec::zero();
        for (i, x) in va.iter() {
            let wa = &self.a.basis(ta as i64)[*i];
            for (j, y) in vb.iter() {
                let wb = &self.b.basis(tb as i64)[*j];
                let val = self.eval_words(lv, lc, phi, wa, wb);
                acc = acc.add_scaled(&(x * y), &val);
            }
        }
        acc
    }

    /// Assembles a family on the slots of `dst` from a per-slot value function, then
    /// returns its coordinates in dst's solution space.
    fn family_coords(
        &self,
        dst: &LevelCell,
        value: impl Fn(&Slot) -> SparseVec,
    ) -> Result<SparseVec> {
        let mut entries = Vec::new();
        for s in &dst.slots {
            let v = value(s);
            entries.extend(v.shifted(s.offset).into_entries());
        }
        let fam = SparseVec::from_sorted(entries);
        if !dst.space.contains(&fam) {
            return Err(Error::Hypothesis(
                "induced family violates a syzygy; the syzygy search bound was too small".into(),
            ));
        }
        Ok(dst.space.coords(&fam))
    }

    fn transition(&self, lv: &Level, lc: &LevelCell, lv2: &Level, lc2: &LevelCell) -> Result<Matrix> {
        let mut cols = Vec::new();
        for phi in lc.space.basis() {
            let col = self.family_coords(lc2, |s| {
                let wa = &lv2.ga.gens[s.a].1;
                let wb = &lv2.gb.gens[s.b].1;
                self.eval_words(lv, lc, phi, wa, wb)
            })?;
            cols.push(col);
        }
        Ok(Matrix::from_columns(self.field, lc2.dim(), &cols))
    }
}

fn is_iso(m: &Matrix) -> bool {
    m.nrows() == m.ncols() && rank(m) == m.nrows()
}

/// Cells holding elements killed by every generator on one side, among the cells where
/// all those generators still land inside the window.
fn socle_cells(m: &BiBiModule, left: bool) -> Vec<Cell> {
    let w = m.window();
    let count = if left { m.left_algebra().num_generators() } else { m.right_algebra().num_generators() };
    let mut out = Vec::new();
    for c in w.cells() {
        let dim = m.dim(c).unwrap_or(0);
        if dim == 0 {
            continue;
        }
        let mut rows = Vec::new();
        let mut testable = true;
        for g in 0..count {
            let act = if left { m.left_action(g, c) } else { m.right_action(g, c) };
            match act {
                Some(a) => rows.extend(a.rows().iter().cloned()),
                None => {
                    testable = false;
                    break;
                }
            }
        }
        if testable && rank(&Matrix::from_rows(m.field(), dim, rows)) < dim {
            out.push(c);
        }
    }
    out
}

/// Hom(I_L, M) on the output window for L = 0..=n_max, where I_L is the exhausting
/// ideal selected by `mode`. Cell bases of the result are the level-n_max Hom spaces.
pub fn saturate(m: &BiBiModule, out: BiWindow, mode: Exhaust, n_max: u32) -> Result<Saturation> {
    let field = m.field();
    let (tl, tr) = mode.levels(n_max);
    let a = extend(m.left_algebra(), needed_cutoff(m.left_algebra(), tl));
    let b = extend(m.right_algebra(), needed_cutoff(m.right_algebra(), tr));
    let mut cache_a: HashMap<u32, Arc<IdealGens>> = HashMap::new();
    let mut cache_b: HashMap<u32, Arc<IdealGens>> = HashMap::new();
    let mut levels = Vec::new();
    for l in 0..=n_max {
        let (nl, nr) = mode.levels(l);
        let ga = cache_a
            .entry(nl)
            .or_insert_with(|| Arc::new(IdealGens::build(&a, Side::Left, nl)))
            .clone();
        let gb = cache_b
            .entry(nr)
            .or_insert_with(|| Arc::new(IdealGens::build(&b, Side::Right, nr)))
            .clone();
        levels.push(Level { nl, nr, ga, gb });
    }
    let w = m.window();
    let need1 = levels.iter().map(|l| l.ga.top_weight).max().unwrap() as i64 + out.hi1;
    let need2 = levels.iter().map(|l| l.gb.top_weight).max().unwrap() as i64 + out.hi2;
    if need1 > w.hi1 || need2 > w.hi2 {
        return Err(Error::WindowTooSmall {
            window: w.describe(),
            what: format!("saturation to level {} on output {}", n_max, out.describe()),
            needed: format!("hi1 >= {}, hi2 >= {}", need1, need2),
        });
    }
    let engine = Engine {
        m,
        a: a.clone(),
        b: b.clone(),
        field,
    };
    // A socle element in degree s makes the transition n -> n+1 non-injective at cells with
    // n + d = s, so a run of isomorphisms only certifies once no socle lies above it.
    let left_socle = if mode == Exhaust::Right { Vec::new() } else { socle_cells(m, true) };
    let right_socle = if mode == Exhaust::Left { Vec::new() } else { socle_cells(m, false) };
    let socle_above = |c: Cell, n0: i64| -> bool {
        match mode {
            Exhaust::Left => left_socle.iter().any(|s| s.1 == c.1 && s.0 >= n0 + c.0),
            Exhaust::Right => right_socle.iter().any(|s| s.0 == c.0 && s.1 >= n0 + c.1),
            Exhaust::Both => left_socle
                .iter()
                .chain(&right_socle)
                .any(|s| s.0 >= n0 + c.0 && s.1 >= n0 + c.1),
        }
    };
    let mut report = Vec::new();
    let mut top = Vec::new();
    for c in out.cells() {
        let mut dims = Vec::new();
        let mut transitions = Vec::new();
        let mut prev: Option<(usize, LevelCell)> = None;
        for (l, lv) in levels.iter().enumerate() {
            if !engine.computable(lv, c) {
                prev = None;
                continue;
            }
            let lc = engine.level_cell(lv, c);
            dims.push((l as u32, lc.dim()));
            if let Some((pl, plc)) = &prev {
                let t = engine.transition(&levels[*pl], plc, lv, &lc)?;
                transitions.push((*pl as u32, is_iso(&t)));
            }
            prev = Some((l, lc));
        }
        let top_cell = prev.and_then(|(l, lc)| (l as u32 == n_max).then_some(lc));
        let mut stabilized_at = None;
        if transitions.last().map_or(false, |t| t.0 + 1 == n_max) {
            for t in transitions.iter().rev() {
                if !t.1 {
                    break;
                }
                stabilized_at = Some(t.0);
            }
        }
        report.push(CellReport {
            bidegree: c,
            dims,
            transitions,
            stabilized_at,
            certified: stabilized_at.map_or(false, |n0| !socle_above(c, n0 as i64)),
        });
        top.push(top_cell);
    }
    let top_level = &levels[n_max as usize];
    let cell_of = |c: Cell| top[out.index(c).unwrap()].as_ref();
    let mut left_mats: HashMap<(usize, Cell), Matrix> = HashMap::new();
    let mut right_mats: HashMap<(usize, Cell), Matrix> = HashMap::new();
    for c in out.cells() {
        for g in 0..a.num_generators() {
            let wg = a.generator_weight(g);
            let t = (c.0 + wg as i64, c.1);
            if !out.contains(t) {
                continue;
            }
            let mat = act_matrix(field, cell_of(c), cell_of(t), |dst, lc, phi| {
                engine.family_coords(dst, |s| {
                    let (ta, wa) = &top_level.ga.gens[s.a];
                    let (tb, wb) = &top_level.gb.gens[s.b];
                    // (g.phi)(wa ⊗ wb) = phi(wa g ⊗ wb)
                    let va = a
                        .right_gen_matrix(g, *ta as i64)
                        .apply(&SparseVec::unit(a.word_index(wa).unwrap(), field));
                    let vb = SparseVec::unit(b.word_index(wb).unwrap(), field);
                    engine.eval_vectors(top_level, lc, phi, *ta + wg, &va, *tb, &vb)
                })
            })?;
            left_mats.insert((g, c), mat);
        }
        for h in 0..b.num_generators() {
            let wh = b.generator_weight(h);
            let t = (c.0, c.1 + wh as i64);
            if !out.contains(t) {
                continue;
            }
            let mat = act_matrix(field, cell_of(c), cell_of(t), |dst, lc, phi| {
                engine.family_coords(dst, |s| {
                    let (ta, wa) = &top_level.ga.gens[s.a];
                    let (tb, wb) = &top_level.gb.gens[s.b];
                    // (phi.h)(wa ⊗ wb) = phi(wa ⊗ h wb)
                    let va = SparseVec::unit(a.word_index(wa).unwrap(), field);
                    let vb = b
                        .left_gen_matrix(h, *tb as i64)
                        .apply(&SparseVec::unit(b.word_index(wb).unwrap(), field));
                    engine.eval_vectors(top_level, lc, phi, *ta, &va, *tb + wh, &vb)
                })
            })?;
            right_mats.insert((h, c), mat);
        }
    }
    let module = BiBiModule::from_fn(
        m.left_algebra().clone(),
        m.right_algebra().clone(),
        out,
        |c| cell_of(c).map_or(0, |lc| lc.dim()),
        |g, c| left_mats[&(g, c)].clone(),
        |h, c| right_mats[&(h, c)].clone(),
    )?;
    Ok(Saturation {
        module,
        report,
        mode,
        n_max,
        top,
        left_ext: a.clone(),
        right_ext: b.clone(),
        top_ga: top_level.ga.clone(),
        top_gb: top_level.gb.clone(),
    })
}

fn act_matrix(
    field: FieldSpec,
    src: Option<&LevelCell>,
    dst: Option<&LevelCell>,
    coords: impl Fn(&LevelCell, &LevelCell, &SparseVec) -> Result<SparseVec>,
) -> Result<Matrix> {
    Ok(match (src, dst) {
        (Some(s), Some(d)) => {
            let mut cols = Vec::new();
            for phi in s.space.basis() {
                cols.push(coords(d, s, phi)?);
            }
            Matrix::from_columns(field, d.dim(), &cols)
        }
        (Some(s), None) => Matrix::zero(field, 0, s.dim()),
        (None, Some(d)) => Matrix::zero(field, d.dim(), 0),
        (None, None) => Matrix::zero(field, 0, 0),
    })
}

impl Saturation {
    fn level(&self) -> Level {
        let (nl, nr) = self.mode.levels(self.n_max);
        Level {
            nl,
            nr,
            ga: self.top_ga.clone(),
            gb: self.top_gb.clone(),
        }
    }

    /// Matrix of the evaluation-at-unit map M_c -> (QM)_c, when both sides are defined.
    pub fn unit_map(&self, m: &BiBiModule, c: Cell) -> Option<Matrix> {
        let lc = self.top.get(self.module.window().index(c)?)?.as_ref()?;
        let d = m.dim(c)?;
        let field = m.field();
        let lv = self.level();
        let cols: Vec<SparseVec> = (0..d)
            .map(|col| {
                let e = SparseVec::unit(col, field);
                let mut entries = Vec::new();
                for s in &lc.slots {
                    let wa = &lv.ga.gens[s.a].1;
                    let wb = &lv.gb.gens[s.b].1;
                    let v = m.apply_right_word(c, &e, wb);
                    let v = m.apply_left_word(wa, (c.0, s.cell.1), &v);
                    entries.extend(v.shifted(s.offset).into_entries());
                }
                lc.space.coords(&SparseVec::from_sorted(entries))
            })
            .collect();
        Some(Matrix::from_columns(field, lc.dim(), &cols))
    }

    /// Map (QM')_c -> (QM)_c induced by a cellwise morphism f: M' -> M (row-major blocks
    /// on M's window). Both saturations must use the same mode and level.
    pub fn induced_map(&self, source: &Saturation, f: &[Matrix], f_window: BiWindow, c: Cell) -> Result<Option<Matrix>> {
        let field = self.module.field();
        let (Some(ks), Some(kt)) = (source.module.window().index(c), self.module.window().index(c)) else {
            return Ok(None);
        };
        let (Some(src), Some(dst)) = (source.top[ks].as_ref(), self.top[kt].as_ref()) else {
            return Ok(None);
        };
        let mut cols = Vec::new();
        for phi in src.space.basis() {
            let mut entries = Vec::new();
            for s in &dst.slots {
                let (cell, v) = src.slot_value(phi, s.a, s.b);
                let fm = &f[f_window.index(cell).ok_or_else(|| Error::Mismatch("morphism window".into()))?];
                entries.extend(fm.apply(&v).shifted(s.offset).into_entries());
            }
            let fam = SparseVec::from_sorted(entries);
            if !dst.space.contains(&fam) {
                return Err(Error::Hypothesis("induced family is not a module map".into()));
            }
            cols.push(dst.space.coords(&fam));
        }
        Ok(Some(Matrix::from_columns(field, dst.dim(), &cols)))
    }
}

/// β comparison (QM)_c -> (Q'M)_c where `from` exhausts one side and `to` both,
/// obtained by restricting along A_{≥n} ⊗ B_{≥n} ⊆ A_{≥n} ⊗ B (or the mirror).
pub(crate) fn restriction_map(m: &BiBiModule, from: &Saturation, to: &Saturation, c: Cell) -> Result<Option<Matrix>> {
    let field = m.field();
    let (Some(kf), Some(kt)) = (from.module.window().index(c), to.module.window().index(c)) else {
        return Ok(None);
    };
    let (Some(src), Some(dst)) = (from.top[kf].as_ref(), to.top[kt].as_ref()) else {
        return Ok(None);
    };
    let engine = Engine {
        m,
        a: from.left_ext.clone(),
        b: from.right_ext.clone(),
        field,
    };
    let lv_from = from.level();
    let lv_to = to.level();
    let mut cols = Vec::new();
    for phi in src.space.basis() {
        cols.push(engine.family_coords(dst, |s| {
            let wa = &lv_to.ga.gens[s.a].1;
            let wb = &lv_to.gb.gens[s.b].1;
            engine.eval_words(&lv_from, src, phi, wa, wb)
        })?);
    }
    Ok(Some(Matrix::from_columns(field, dst.dim(), &cols)))
}

/// Comparison (Q_{A⊗B} M)_c -> (Q_outer(Q_inner M))_c given by currying. `both` exhausts
/// both sides, `inner` one side at the same level, `outer` the other side applied to
/// inner.module.
pub(crate) fn curry_map(both: &Saturation, inner: &Saturation, outer: &Saturation, c: Cell) -> Result<Option<Matrix>> {
    let field = both.module.field();
    let (Some(kb), Some(ko)) = (both.module.window().index(c), outer.module.window().index(c)) else {
        return Ok(None);
    };
    let (Some(src), Some(dst)) = (both.top[kb].as_ref(), outer.top[ko].as_ref()) else {
        return Ok(None);
    };
    let inner_w = inner.module.window();
    let left_inner = inner.mode == Exhaust::Right;
    let mut cols = Vec::new();
    for phi in src.space.basis() {
        let mut entries = Vec::new();
        for s in &dst.slots {
            // outer slot: (a, 0) when the outer exhausts A, else (0, b)
            let Some(ilc) = inner.top[inner_w.index(s.cell).ok_or_else(|| Error::Mismatch("inner window".into()))?].as_ref() else {
                return Ok(None);
            };
            let mut fam = Vec::new();
            for is in &ilc.slots {
                let (a, b) = if left_inner { (s.a, is.b) } else { (is.a, s.b) };
                let (_, v) = src.slot_value(phi, a, b);
                fam.extend(v.shifted(is.offset).into_entries());
            }
            let fam = SparseVec::from_sorted(fam);
            if !ilc.space.contains(&fam) {
                return Err(Error::Hypothesis("curried family leaves the inner Hom space".into()));
            }
            entries.extend(ilc.space.coords(&fam).shifted(s.offset).into_entries());
        }
        let fam = SparseVec::from_sorted(entries);
        if !dst.space.contains(&fam) {
            return Err(Error::Hypothesis("curried family leaves the outer Hom space".into()));
        }
        cols.push(dst.space.coords(&fam));
    }
    Ok(Some(Matrix::from_columns(field, dst.dim(), &cols)))
}

pub(crate) fn iso(m: &Matrix) -> bool {
    is_iso(m)
}

/// Extra width (beyond the output window's upper corner) an input window needs on the
/// side of `alg` for exhaustion level n.
pub fn saturation_margin(alg: &Arc<Algebra>, n: u32) -> u32 {
    let ext = extend(alg, needed_cutoff(alg, n));
    IdealGens::build(&ext, Side::Left, n)
        .top_weight
        .max(IdealGens::build(&ext, Side::Right, n).top_weight)
}
