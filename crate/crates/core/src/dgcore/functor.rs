use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactla::{rank, solve, Matrix, SparseVec, Subspace};

use super::category::{LinearCategory, SmallDgCategory};
use super::complex::ChainComplex;

/// Dg functor between small dg categories, given on objects and on every hom complex.
#[derive(Clone, Debug)]
pub struct DgFunctor {
    source: Arc<SmallDgCategory>,
    target: Arc<SmallDgCategory>,
    objects: Vec<usize>,
    maps: HashMap<(usize, usize, i64), Matrix>,
}

impl DgFunctor {
    /// `map(x, y, n)` is the degree-n block hom(x,y)^n -> hom(Fx,Fy)^n.
    pub fn new(
        source: Arc<SmallDgCategory>,
        target: Arc<SmallDgCategory>,
        objects: Vec<usize>,
        map: impl Fn(usize, usize, i64) -> Matrix,
    ) -> Result<Self> {
        if objects.len() != source.num_objects() || objects.iter().any(|&o| o >= target.num_objects()) {
            return Err(Error::Mismatch("object map does not match the categories".into()));
        }
        source.field().check_same(&target.field())?;
        let mut maps = HashMap::new();
        let n = source.num_objects();
        for x in 0..n {
            for y in 0..n {
                for d in source.hom(x, y).degrees() {
                    let m = map(x, y, d);
                    let (fx, fy) = (objects[x], objects[y]);
                    if m.nrows() != target.hom(fx, fy).dim(d) || m.ncols() != source.hom(x, y).dim(d) {
                        return Err(Error::Mismatch(format!("functor block ({}, {}, {}) has the wrong shape", x, y, d)));
                    }
                    maps.insert((x, y, d), m);
                }
            }
        }
        let f = DgFunctor { source, target, objects, maps };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(cat: Arc<SmallDgCategory>) -> Self {
        let field = cat.field();
        let c = cat.clone();
        DgFunctor::new(cat.clone(), cat, (0..c.num_objects()).collect(), |x, y, d| {
            Matrix::identity(field, c.hom(x, y).dim(d))
        })
        .expect("identity functor")
    }

    /// Inclusion of the full subcategory on `objects` (as built by `full_subcategory`).
    pub fn inclusion(cat: Arc<SmallDgCategory>, objects: &[usize]) -> Result<Self> {
        let sub = Arc::new(cat.full_subcategory(objects)?);
        let field = cat.field();
        let s = sub.clone();
        DgFunctor::new(sub, cat, objects.to_vec(), |x, y, d| Matrix::identity(field, s.hom(x, y).dim(d)))
    }

    pub fn source(&self) -> &Arc<SmallDgCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SmallDgCategory> {
        &self.target
    }

    pub fn object(&self, x: usize) -> usize {
        self.objects[x]
    }

    pub fn apply(&self, x: usize, y: usize, n: i64, v: &SparseVec) -> SparseVec {
        match self.maps.get(&(x, y, n)) {
            Some(m) => m.apply(v),
            None => SparseVec::zero(),
        }
    }

    pub fn block(&self, x: usize, y: usize, n: i64) -> Matrix {
        self.maps.get(&(x, y, n)).cloned().unwrap_or_else(|| {
            Matrix::zero(
                self.source.field(),
                self.target.hom(self.objects[x], self.objects[y]).dim(n),
                self.source.hom(x, y).dim(n),
            )
        })
    }

    /// Chain maps on homs, units to units, composition of basis pairs preserved.
    pub fn validate(&self) -> Result<()> {
        let (a, b) = (&self.source, &self.target);
        let field = a.field();
        let n = a.num_objects();
        for x in 0..n {
            for y in 0..n {
                let (h, fh) = (a.hom(x, y), b.hom(self.objects[x], self.objects[y]));
                let ok = super::complex::is_chain_map(h, fh, 0, |d| self.block(x, y, d));
                if !ok {
                    return Err(Error::Hypothesis(format!("functor does not commute with d on hom({}, {})", x, y)));
                }
            }
            if &self.apply(x, x, 0, a.unit(x)) != b.unit(self.objects[x]) {
                return Err(Error::Hypothesis(format!("functor does not preserve the unit of {}", x)));
            }
        }
        let e = |k| SparseVec::unit(k, field);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (fx, fy, fz) = (self.objects[x], self.objects[y], self.objects[z]);
                    for p in a.hom(y, z).degrees() {
                        for q in a.hom(x, y).degrees() {
                            for gi in 0..a.hom(y, z).dim(p) {
                                for fj in 0..a.hom(x, y).dim(q) {
                                    let lhs = self.apply(x, z, p + q, &a.compose(x, y, z, p, &e(gi), q, &e(fj)));
                                    let rhs = b.compose(
                                        fx,
                                        fy,
                                        fz,
                                        p,
                                        &self.apply(y, z, p, &e(gi)),
                                        q,
                                        &self.apply(x, y, q, &e(fj)),
                                    );
                                    if lhs != rhs {
                                        return Err(Error::Hypothesis("functor does not preserve composition".into()));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Whether each hom map induces isomorphisms on all cohomology groups.
    pub fn is_quasi_fully_faithful(&self) -> QuasiFullyFaithful {
        let n = self.source.num_objects();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                let (h, fh) = (self.source.hom(x, y), self.target.hom(self.objects[x], self.objects[y]));
                let failing = degree_span(h, fh)
                    .filter(|&d| !induces_iso(h, fh, d, &self.block(x, y, d)))
                    .collect();
                pairs.push(PairVerdict { source: x, target: y, failing_degrees: failing });
            }
        }
        QuasiFullyFaithful { pairs }
    }

    /// Quasi fully faithful and essentially surjective on H^0.
    pub fn is_quasi_equivalence(&self, seed: u64) -> QuasiEquivalence {
        let qff = self.is_quasi_fully_faithful();
        let h0 = self.target.h0_category();
        let mut missed = Vec::new();
        let mut undecided = Vec::new();
        for y in 0..self.target.num_objects() {
            let mut found = false;
            let mut open = false;
            for &fx in &self.objects {
                match homotopy_equivalent_h0(&h0, fx, y, seed) {
                    HomotopyVerdict::Equivalent { .. } => {
                        found = true;
                        break;
                    }
                    HomotopyVerdict::Undecided => open = true,
                    HomotopyVerdict::NotEquivalent => {}
                }
            }
            if !found {
                if open {
                    undecided.push(y);
                } else {
                    missed.push(y);
                }
            }
        }
        QuasiEquivalence { fully_faithful: qff, missed, undecided }
    }
}

fn degree_span(a: &ChainComplex, b: &ChainComplex) -> std::ops::RangeInclusive<i64> {
    let lo = a.support().map(|s| s.0).into_iter().chain(b.support().map(|s| s.0)).min();
    let hi = a.support().map(|s| s.1).into_iter().chain(b.support().map(|s| s.1)).max();
    match (lo, hi) {
        (Some(l), Some(h)) => l..=h,
        #[allow(clippy::reversed_empty_ranges)]
        _ => 1..=0,
    }
}

/// Matrix of H^n(f) in the representative bases.
pub fn induced_on_homology(a: &ChainComplex, b: &ChainComplex, n: i64, f: &Matrix) -> Matrix {
    let (ha, hb) = (a.homology(n), b.homology(n));
    let cols: Vec<SparseVec> = ha
        .reps
        .iter()
        .map(|r| hb.class_of(&f.apply(r)).expect("chain map sends cycles to cycles"))
        .collect();
    Matrix::from_columns(a.field(), hb.dim(), &cols)
}

fn induces_iso(a: &ChainComplex, b: &ChainComplex, n: i64, f: &Matrix) -> bool {
    let m = induced_on_homology(a, b, n, f);
    m.nrows() == m.ncols() && rank(&m) == m.nrows()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairVerdict {
    pub source: usize,
    pub target: usize,
    /// Degrees where the induced map on cohomology is not an isomorphism.
    pub failing_degrees: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiFullyFaithful {
    pub pairs: Vec<PairVerdict>,
}

impl QuasiFullyFaithful {
    pub fn holds(&self) -> bool {
        self.pairs.iter().all(|p| p.failing_degrees.is_empty())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiEquivalence {
    pub fully_faithful: QuasiFullyFaithful,
    /// Target objects proven not isomorphic in H^0 to any image object.
    pub missed: Vec<usize>,
    /// Target objects for which the search found no inverse pair and no obstruction.
    pub undecided: Vec<usize>,
}

impl QuasiEquivalence {
    pub fn holds(&self) -> bool {
        self.fully_faithful.holds() && self.missed.is_empty() && self.undecided.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomotopyVerdict {
    /// Closed degree-0 morphisms f: X -> Y and g: Y -> X inverse to each other in H^0.
    Equivalent { f: SparseVec, g: SparseVec },
    NotEquivalent,
    Undecided,
}

const TRIALS: usize = 64;

/// Searches H^0(X, Y) x H^0(Y, X) for mutually inverse classes.
///
/// Non-equivalence is reported only with an obstruction: a mismatch of H^0 hom dimensions
/// against some object, or the unit of X lying outside the span of all composites through Y.
pub fn homotopy_equivalent(cat: &SmallDgCategory, x: usize, y: usize, seed: u64) -> HomotopyVerdict {
    homotopy_equivalent_h0(&cat.h0_category(), x, y, seed)
}

fn homotopy_equivalent_h0(h0: &LinearCategory, x: usize, y: usize, seed: u64) -> HomotopyVerdict {
    let field = h0.field;
    let chain = |a: usize, b: usize, c: &SparseVec| -> SparseVec {
        let mut acc = SparseVec::zero();
        for (i, s) in c.iter() {
            acc = acc.add_scaled(s, &h0.reps[a][b][*i]);
        }
        acc
    };
    if x == y {
        let u = chain(x, x, &h0.units[x]);
        return HomotopyVerdict::Equivalent { f: u.clone(), g: u };
    }
    let n = h0.names.len();
    let dims_match = (0..n).all(|z| h0.dims[x][z] == h0.dims[y][z] && h0.dims[z][x] == h0.dims[z][y]);
    if !dims_match {
        return HomotopyVerdict::NotEquivalent;
    }
    if h0.units[x].is_zero() && h0.units[y].is_zero() {
        return HomotopyVerdict::Equivalent { f: SparseVec::zero(), g: SparseVec::zero() };
    }
    let (dxy, dyx) = (h0.dims[x][y], h0.dims[y][x]);
    let e = |k| SparseVec::unit(k, field);
    let products: Vec<SparseVec> = (0..dyx)
        .flat_map(|gi| (0..dxy).map(move |fj| (gi, fj)))
        .map(|(gi, fj)| h0.compose(x, y, x, &e(gi), &e(fj)))
        .collect();
    if !Subspace::spanned_by(field, h0.dims[x][x], &products).contains(&h0.units[x]) {
        return HomotopyVerdict::NotEquivalent;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = (0..dxy).map(e).chain((0..TRIALS).map(|_| {
        SparseVec::from_entries((0..dxy).map(|k| (k, field.from_i64(rng.gen_range(-3..=3)))).collect())
    }));
    for f in candidates {
        if f.is_zero() {
            continue;
        }
        // g ↦ g ∘ f is linear; solve g ∘ f = 1_x, then test f ∘ g = 1_y
        let cols: Vec<SparseVec> = (0..dyx).map(|gi| h0.compose(x, y, x, &e(gi), &f)).collect();
        let m = Matrix::from_columns(field, h0.dims[x][x], &cols);
        if let Some(g) = solve(&m, &h0.units[x]) {
            if h0.compose(y, x, y, &f, &g) == h0.units[y] {
                return HomotopyVerdict::Equivalent { f: chain(x, y, &f), g: chain(y, x, &g) };
            }
        }
    }
    HomotopyVerdict::Undecided
}
