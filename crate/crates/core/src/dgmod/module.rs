use std::collections::HashMap;
use std::sync::Arc;

use crate::dgcore::{kron_vec, ChainComplex, DgFunctor, SmallDgCategory};
use crate::error::{Error, Result};
use crate::exactla::{sign, Matrix, SparseVec};
use crate::freealg::{Algebra, Word};
use crate::grmod::WindowedModule;

/// Right modules are contravariant: m·f ∈ M(a) for m ∈ M(b), f ∈ 𝒜(a,b).
/// Left modules are covariant: f·n ∈ N(c) for f ∈ 𝒜(b,c), n ∈ N(b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variance {
    Right,
    Left,
}

/// Dg module over a small dg category.
///
/// Right action blocks are keyed (a, b, p, q): M(b)^p ⊗ 𝒜(a,b)^q -> M(a)^{p+q}, column
/// m_i * dim 𝒜(a,b)^q + f_j. Left action blocks are keyed (b, c, q, p):
/// 𝒜(b,c)^q ⊗ N(b)^p -> N(c)^{p+q}, column f_i * dim N(b)^p + n_j.
#[derive(Clone, Debug)]
pub struct DgModule {
    cat: Arc<SmallDgCategory>,
    variance: Variance,
    values: Vec<ChainComplex>,
    actions: HashMap<(usize, usize, i64, i64), Matrix>,
}

type ActFn<'a> = dyn Fn(usize, usize, i64, usize, i64, usize) -> SparseVec + 'a;

impl DgModule {
    /// `act(a, b, p, mi, q, fj)` is m_i · f_j with m_i ∈ M(b)^p, f_j ∈ 𝒜(a,b)^q.
    pub fn right_from_fn(cat: Arc<SmallDgCategory>, values: Vec<ChainComplex>, act: &ActFn<'_>) -> Result<Self> {
        let n = cat.num_objects();
        if values.len() != n {
            return Err(Error::Mismatch("one value per object is required".into()));
        }
        let mut actions = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                let h = cat.hom(a, b);
                for p in values[b].degrees() {
                    for q in h.degrees() {
                        let mut cols = Vec::new();
                        for mi in 0..values[b].dim(p) {
                            for fj in 0..h.dim(q) {
                                cols.push(act(a, b, p, mi, q, fj));
                            }
                        }
                        let m = Matrix::from_columns(cat.field(), values[a].dim(p + q), &cols);
                        if !m.is_zero() {
                            actions.insert((a, b, p, q), m);
                        }
                    }
                }
            }
        }
        let m = DgModule { cat, variance: Variance::Right, values, actions };
        m.validate()?;
        Ok(m)
    }

    /// `act(b, c, q, fi, p, nj)` is f_i · n_j with f_i ∈ 𝒜(b,c)^q, n_j ∈ N(b)^p.
    pub fn left_from_fn(cat: Arc<SmallDgCategory>, values: Vec<ChainComplex>, act: &ActFn<'_>) -> Result<Self> {
        let n = cat.num_objects();
        if values.len() != n {
            return Err(Error::Mismatch("one value per object is required".into()));
        }
        let mut actions = HashMap::new();
        for b in 0..n {
            for c in 0..n {
                let h = cat.hom(b, c);
                for q in h.degrees() {
                    for p in values[b].degrees() {
                        let mut cols = Vec::new();
                        for fi in 0..h.dim(q) {
                            for nj in 0..values[b].dim(p) {
                                cols.push(act(b, c, q, fi, p, nj));
                            }
                        }
                        let m = Matrix::from_columns(cat.field(), values[c].dim(p + q), &cols);
                        if !m.is_zero() {
                            actions.insert((b, c, q, p), m);
                        }
                    }
                }
            }
        }
        let m = DgModule { cat, variance: Variance::Left, values, actions };
        m.validate()?;
        Ok(m)
    }

    pub fn zero(cat: Arc<SmallDgCategory>, variance: Variance) -> Self {
        let values = vec![ChainComplex::zero(cat.field()); cat.num_objects()];
        DgModule { cat, variance, values, actions: HashMap::new() }
    }

    pub fn cat(&self) -> &Arc<SmallDgCategory> {
        &self.cat
    }

    pub fn variance(&self) -> Variance {
        self.variance
    }

    pub fn value(&self, x: usize) -> &ChainComplex {
        &self.values[x]
    }

    pub fn values(&self) -> &[ChainComplex] {
        &self.values
    }

    pub fn total_dim(&self) -> usize {
        self.values.iter().map(|v| v.total_dim()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// m · f for m ∈ M(b)^p, f ∈ 𝒜(a,b)^q (right modules).
    pub fn act_right(&self, a: usize, b: usize, p: i64, m: &SparseVec, q: i64, f: &SparseVec) -> SparseVec {
        debug_assert_eq!(self.variance, Variance::Right);
        match self.actions.get(&(a, b, p, q)) {
            Some(mat) => mat.apply(&kron_vec(m, f, self.cat.hom(a, b).dim(q))),
            None => SparseVec::zero(),
        }
    }

    /// f · n for f ∈ 𝒜(b,c)^q, n ∈ N(b)^p (left modules).
    pub fn act_left(&self, b: usize, c: usize, q: i64, f: &SparseVec, p: i64, n: &SparseVec) -> SparseVec {
        debug_assert_eq!(self.variance, Variance::Left);
        match self.actions.get(&(b, c, q, p)) {
            Some(mat) => mat.apply(&kron_vec(f, n, self.values[b].dim(p))),
            None => SparseVec::zero(),
        }
    }

    /// Unit law, Leibniz rule and compatibility with composition on all basis elements.
    pub fn validate(&self) -> Result<()> {
        let cat = &self.cat;
        let field = cat.field();
        let e = |k| SparseVec::unit(k, field);
        let n = cat.num_objects();
        let fail = |what: &str| Err(Error::Hypothesis(format!("dg module {}", what)));
        for x in 0..n {
            for p in self.values[x].degrees() {
                for i in 0..self.values[x].dim(p) {
                    let u = match self.variance {
                        Variance::Right => self.act_right(x, x, p, &e(i), 0, cat.unit(x)),
                        Variance::Left => self.act_left(x, x, 0, cat.unit(x), p, &e(i)),
                    };
                    if u != e(i) {
                        return fail("violates the unit law");
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let h = cat.hom(a, b);
                let (src, dst) = match self.variance {
                    Variance::Right => (b, a),
                    Variance::Left => (a, b),
                };
                let (vs, vt) = (&self.values[src], &self.values[dst]);
                for p in vs.degrees() {
                    for q in h.degrees() {
                        for i in 0..vs.dim(p) {
                            for j in 0..h.dim(q) {
                                let (m, f) = (e(i), e(j));
                                let (lhs, rhs) = match self.variance {
                                    Variance::Right => {
                                        // d(m·f) = dm·f + (-1)^{|m|} m·df
                                        let lhs = vt.apply_d(p + q, &self.act_right(a, b, p, &m, q, &f));
                                        let x = self.act_right(a, b, p + 1, &vs.apply_d(p, &m), q, &f);
                                        let y = self.act_right(a, b, p, &m, q + 1, &h.apply_d(q, &f));
                                        (lhs, x.add_scaled(&sign(field, p), &y))
                                    }
                                    Variance::Left => {
                                        // d(f·n) = df·n + (-1)^{|f|} f·dn
                                        let lhs = vt.apply_d(p + q, &self.act_left(a, b, q, &f, p, &m));
                                        let x = self.act_left(a, b, q + 1, &h.apply_d(q, &f), p, &m);
                                        let y = self.act_left(a, b, q, &f, p + 1, &vs.apply_d(p, &m));
                                        (lhs, x.add_scaled(&sign(field, q), &y))
                                    }
                                };
                                if lhs != rhs {
                                    return fail("action is not a chain map");
                                }
                            }
                        }
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.associative_on(a, b, c) {
                        return fail("action is not compatible with composition");
                    }
                }
            }
        }
        Ok(())
    }

    fn associative_on(&self, a: usize, b: usize, c: usize) -> bool {
        let cat = &self.cat;
        let field = cat.field();
        let e = |k| SparseVec::unit(k, field);
        match self.variance {
            // (m·f)·g = m·(f∘g) for m ∈ M(c), f ∈ 𝒜(b,c), g ∈ 𝒜(a,b)
            Variance::Right => {
                let (mc, f_h, g_h) = (&self.values[c], cat.hom(b, c), cat.hom(a, b));
                for p in mc.degrees() {
                    for q in f_h.degrees() {
                        for r in g_h.degrees() {
                            for i in 0..mc.dim(p) {
                                for j in 0..f_h.dim(q) {
                                    let mf = self.act_right(b, c, p, &e(i), q, &e(j));
                                    for k in 0..g_h.dim(r) {
                                        let l = self.act_right(a, b, p + q, &mf, r, &e(k));
                                        let fg = cat.compose(a, b, c, q, &e(j), r, &e(k));
                                        if l != self.act_right(a, c, p, &e(i), q + r, &fg) {
                                            return false;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                true
            }
            // g·(f·n) = (g∘f)·n for n ∈ N(a), f ∈ 𝒜(a,b), g ∈ 𝒜(b,c)
            Variance::Left => {
                let (na, f_h, g_h) = (&self.values[a], cat.hom(a, b), cat.hom(b, c));
                for p in na.degrees() {
                    for q in f_h.degrees() {
                        for r in g_h.degrees() {
                            for i in 0..na.dim(p) {
                                for j in 0..f_h.dim(q) {
                                    let fnv = self.act_left(a, b, q, &e(j), p, &e(i));
                                    for k in 0..g_h.dim(r) {
                                        let l = self.act_left(b, c, r, &e(k), p + q, &fnv);
                                        let gf = cat.compose(a, b, c, r, &e(k), q, &e(j));
                                        if l != self.act_left(a, c, q + r, &gf, p, &e(i)) {
                                            return false;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
                true
            }
        }
    }

    /// M[k]: values shifted; a left module's action picks up (-1)^{k|f|}.
    pub fn shift(&self, k: i64) -> DgModule {
        let field = self.cat.field();
        let actions = self
            .actions
            .iter()
            .map(|(&(x, y, s, t), m)| match self.variance {
                Variance::Right => ((x, y, s - k, t), m.clone()),
                Variance::Left => ((x, y, s, t - k), m.scale(&sign(field, k * s))),
            })
            .collect();
        DgModule {
            cat: self.cat.clone(),
            variance: self.variance,
            values: self.values.iter().map(|v| v.shift(k)).collect(),
            actions,
        }
    }

    pub fn direct_sum(&self, other: &DgModule) -> Result<DgModule> {
        if !Arc::ptr_eq(&self.cat, &other.cat) || self.variance != other.variance {
            return Err(Error::Mismatch("direct sum of modules over different categories".into()));
        }
        let values: Vec<ChainComplex> =
            self.values.iter().zip(&other.values).map(|(a, b)| a.direct_sum(b)).collect();
        let (s, o) = (self, other);
        // split a basis vector of (S ⊕ O)(x)^p into its summands
        let split = |x: usize, p: i64, i: usize| -> (bool, usize) {
            let d = s.values[x].dim(p);
            if i < d {
                (true, i)
            } else {
                (false, i - d)
            }
        };
        let embed = |x: usize, p: i64, first: bool, v: SparseVec| {
            if first {
                v
            } else {
                v.shifted(s.values[x].dim(p))
            }
        };
        let field = self.cat.field();
        let e = |k| SparseVec::unit(k, field);
        match self.variance {
            Variance::Right => DgModule::right_from_fn(self.cat.clone(), values, &|a, b, p, mi, q, fj| {
                let (first, i) = split(b, p, mi);
                let src = if first { s } else { o };
                embed(a, p + q, first, src.act_right(a, b, p, &e(i), q, &e(fj)))
            }),
            Variance::Left => DgModule::left_from_fn(self.cat.clone(), values, &|b, c, q, fi, p, nj| {
                let (first, j) = split(b, p, nj);
                let src = if first { s } else { o };
                embed(c, p + q, first, src.act_left(b, c, q, &e(fi), p, &e(j)))
            }),
        }
    }
}

/// h_X = 𝒜(−, X) with m·f = m ∘ f.
pub fn yoneda(cat: &Arc<SmallDgCategory>, x: usize) -> DgModule {
    let field = cat.field();
    let values = (0..cat.num_objects()).map(|y| cat.hom(y, x).clone()).collect();
    let c = cat.clone();
    DgModule::right_from_fn(cat.clone(), values, &|a, b, p, mi, q, fj| {
        c.compose(a, b, x, p, &SparseVec::unit(mi, field), q, &SparseVec::unit(fj, field))
    })
    .expect("representable module")
}

/// h^X = 𝒜(X, −) with f·n = f ∘ n.
pub fn yoneda_left(cat: &Arc<SmallDgCategory>, x: usize) -> DgModule {
    let field = cat.field();
    let values = (0..cat.num_objects()).map(|y| cat.hom(x, y).clone()).collect();
    let c = cat.clone();
    DgModule::left_from_fn(cat.clone(), values, &|b, cc, q, fi, p, nj| {
        c.compose(x, b, cc, q, &SparseVec::unit(fi, field), p, &SparseVec::unit(nj, field))
    })
    .expect("corepresentable module")
}

/// Res_G(N): value N(G a), action through the hom maps of G.
pub fn res_along(g: &DgFunctor, n: &DgModule) -> Result<DgModule> {
    if !Arc::ptr_eq(g.target(), n.cat()) {
        return Err(Error::Mismatch("module does not live on the target of the functor".into()));
    }
    let src = g.source();
    let field = src.field();
    let e = |k| SparseVec::unit(k, field);
    let values = (0..src.num_objects()).map(|a| n.value(g.object(a)).clone()).collect();
    match n.variance() {
        Variance::Right => DgModule::right_from_fn(src.clone(), values, &|a, b, p, mi, q, fj| {
            n.act_right(g.object(a), g.object(b), p, &e(mi), q, &g.apply(a, b, q, &e(fj)))
        }),
        Variance::Left => DgModule::left_from_fn(src.clone(), values, &|b, c, q, fi, p, nj| {
            n.act_left(g.object(b), g.object(c), q, &g.apply(b, c, q, &e(fi)), p, &e(nj))
        }),
    }
}

fn ringoid_word<'a>(alg: &'a Algebra, weights: &[i64], a: usize, b: usize, j: usize) -> &'a Word {
    &alg.basis(weights[b] - weights[a])[j]
}

/// Right module over the truncated ringoid from a left graded A-module W: M(g) = W_{-g},
/// m·f = f m.
pub fn ringoid_right_module(
    cat: &Arc<SmallDgCategory>,
    alg: &Algebra,
    weights: &[i64],
    w: &WindowedModule,
) -> Result<DgModule> {
    check_ringoid_window(cat, weights, w, -1)?;
    let field = cat.field();
    let values = weights
        .iter()
        .map(|&g| ChainComplex::concentrated(field, 0, w.dim(-g).unwrap_or(0)))
        .collect();
    DgModule::right_from_fn(cat.clone(), values, &|a, b, _, mi, _, fj| {
        let f = ringoid_word(alg, weights, a, b, fj);
        w.apply_word(f, -weights[b], &SparseVec::unit(mi, field))
    })
}

/// Left module over the truncated ringoid from a right graded A-module, given as a left
/// module W over the opposite algebra: N(g) = W_g, f·n = n f (the reversed word acting on W).
pub fn ringoid_left_module(
    cat: &Arc<SmallDgCategory>,
    alg: &Algebra,
    weights: &[i64],
    w: &WindowedModule,
) -> Result<DgModule> {
    check_ringoid_window(cat, weights, w, 1)?;
    let field = cat.field();
    let values = weights
        .iter()
        .map(|&g| ChainComplex::concentrated(field, 0, w.dim(g).unwrap_or(0)))
        .collect();
    DgModule::left_from_fn(cat.clone(), values, &|b, c, _, fi, _, nj| {
        let f = ringoid_word(alg, weights, b, c, fi);
        let rev = Word(f.0.iter().rev().copied().collect());
        w.apply_word(&rev, weights[b], &SparseVec::unit(nj, field))
    })
}

fn check_ringoid_window(cat: &SmallDgCategory, weights: &[i64], w: &WindowedModule, s: i64) -> Result<()> {
    if weights.len() != cat.num_objects() {
        return Err(Error::Mismatch("weights do not match the ringoid objects".into()));
    }
    let win = w.window();
    if let Some(&g) = weights.iter().find(|&&g| !win.contains(s * g)) {
        return Err(Error::WindowTooSmall {
            window: win.describe(),
            what: "ringoid module".into(),
            needed: format!("degree {}", s * g),
        });
    }
    Ok(())
}
