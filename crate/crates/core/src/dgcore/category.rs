use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{sign, FieldSpec, Matrix, SparseVec, Subspace};
use crate::freealg::{Algebra, Presentation};

use super::complex::{hom_complex, kron_vec, tensor_index, tensor_locate, ChainComplex, HomComplex, Homology};

/// Dg category with finitely many objects and bounded, finite-dimensional hom complexes.
///
/// Composition hom(y,z)^p ⊗ hom(x,y)^q -> hom(x,z)^{p+q} is stored per (x,y,z,p,q) as a
/// matrix whose column g_i * dim hom(x,y)^q + f_j holds g_i ∘ f_j.
#[derive(Clone, Debug)]
pub struct SmallDgCategory {
    field: FieldSpec,
    names: Vec<String>,
    homs: Vec<Vec<ChainComplex>>,
    comp: HashMap<(usize, usize, usize, i64, i64), Matrix>,
    units: Vec<SparseVec>,
}

type CompFn<'a> = dyn Fn(usize, usize, usize, i64, usize, i64, usize) -> SparseVec + 'a;

impl SmallDgCategory {
    /// Builds from composition of basis elements, then checks the dg category axioms.
    pub fn from_basis_fn(
        field: FieldSpec,
        names: Vec<String>,
        homs: Vec<Vec<ChainComplex>>,
        units: Vec<SparseVec>,
        compose: &CompFn<'_>,
    ) -> Result<Self> {
        let n = names.len();
        if homs.len() != n || homs.iter().any(|r| r.len() != n) || units.len() != n {
            return Err(Error::Mismatch("hom table does not match the object list".into()));
        }
        let mut comp = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hyz, hxy, hxz) = (&homs[y][z], &homs[x][y], &homs[x][z]);
                    for p in hyz.degrees() {
                        for q in hxy.degrees() {
                            let (dg, df) = (hyz.dim(p), hxy.dim(q));
                            let mut cols = Vec::with_capacity(dg * df);
                            for gi in 0..dg {
                                for fj in 0..df {
                                    cols.push(compose(x, y, z, p, gi, q, fj));
                                }
                            }
                            let m = Matrix::from_columns(field, hxz.dim(p + q), &cols);
                            if !m.is_zero() {
                                comp.insert((x, y, z, p, q), m);
                            }
                        }
                    }
                }
            }
        }
        let cat = SmallDgCategory { field, names, homs, comp, units };
        cat.validate()?;
        Ok(cat)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_objects(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn object(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &ChainComplex {
        &self.homs[x][y]
    }

    pub fn unit(&self, x: usize) -> &SparseVec {
        &self.units[x]
    }

    /// g ∘ f for g in hom(y,z)^p and f in hom(x,y)^q.
    pub fn compose(&self, x: usize, y: usize, z: usize, p: i64, g: &SparseVec, q: i64, f: &SparseVec) -> SparseVec {
        match self.comp.get(&(x, y, z, p, q)) {
            Some(m) => m.apply(&kron_vec(g, f, self.homs[x][y].dim(q))),
            None => SparseVec::zero(),
        }
    }

    /// Composition block for (x,y,z,p,q), zero if absent.
    pub fn composition_matrix(&self, x: usize, y: usize, z: usize, p: i64, q: i64) -> Matrix {
        self.comp.get(&(x, y, z, p, q)).cloned().unwrap_or_else(|| {
            Matrix::zero(
                self.field,
                self.homs[x][z].dim(p + q),
                self.homs[y][z].dim(p) * self.homs[x][y].dim(q),
            )
        })
    }

    /// Units are closed of degree 0, unit laws, Leibniz rule and associativity on basis elements.
    pub fn validate(&self) -> Result<()> {
        let f = self.field;
        let n = self.num_objects();
        let e = |k: usize| SparseVec::unit(k, f);
        for x in 0..n {
            let h = &self.homs[x][x];
            if self.units[x].max_index().map_or(false, |i| i >= h.dim(0)) {
                return Err(Error::Hypothesis(format!("unit of {} is not in degree 0", self.names[x])));
            }
            if !h.apply_d(0, &self.units[x]).is_zero() {
                return Err(Error::Hypothesis(format!("unit of {} is not closed", self.names[x])));
            }
        }
        for x in 0..n {
            for y in 0..n {
                let h = &self.homs[x][y];
                for q in h.degrees() {
                    for k in 0..h.dim(q) {
                        let left = self.compose(x, y, y, 0, &self.units[y], q, &e(k));
                        let right = self.compose(x, x, y, q, &e(k), 0, &self.units[x]);
                        if left != e(k) || right != e(k) {
                            return Err(Error::Hypothesis(format!(
                                "unit law fails on hom({}, {})",
                                self.names[x], self.names[y]
                            )));
                        }
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hyz, hxy, hxz) = (&self.homs[y][z], &self.homs[x][y], &self.homs[x][z]);
                    for p in hyz.degrees() {
                        for q in hxy.degrees() {
                            for gi in 0..hyz.dim(p) {
                                for fj in 0..hxy.dim(q) {
                                    let (g, fv) = (e(gi), e(fj));
                                    let lhs = hxz.apply_d(p + q, &self.compose(x, y, z, p, &g, q, &fv));
                                    let a = self.compose(x, y, z, p + 1, &hyz.apply_d(p, &g), q, &fv);
                                    let b = self.compose(x, y, z, p, &g, q + 1, &hxy.apply_d(q, &fv));
                                    let rhs = a.add_scaled(&sign(f, p), &b);
                                    if lhs != rhs {
                                        return Err(Error::Hypothesis(format!(
                                            "composition {} -> {} -> {} violates the Leibniz rule",
                                            self.names[x], self.names[y], self.names[z]
                                        )));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        let (hyz, hxy, hwx) = (&self.homs[y][z], &self.homs[x][y], &self.homs[w][x]);
                        for p in hyz.degrees() {
                            for q in hxy.degrees() {
                                for r in hwx.degrees() {
                                    for a in 0..hyz.dim(p) {
                                        for b in 0..hxy.dim(q) {
                                            let ab = self.compose(x, y, z, p, &e(a), q, &e(b));
                                            for c in 0..hwx.dim(r) {
                                                let bc = self.compose(w, x, y, q, &e(b), r, &e(c));
                                                let l = self.compose(w, x, z, p + q, &ab, r, &e(c));
                                                let rr = self.compose(w, y, z, p, &e(a), q + r, &bc);
                                                if l != rr {
                                                    return Err(Error::Hypothesis(format!(
                                                        "composition is not associative on {} -> {} -> {} -> {}",
                                                        self.names[w], self.names[x], self.names[y], self.names[z]
                                                    )));
                                                }
                                            }
                                        }
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

    /// Full subcategory on the listed objects, in the given order.
    pub fn full_subcategory(&self, objects: &[usize]) -> Result<SmallDgCategory> {
        if objects.iter().any(|&o| o >= self.num_objects()) {
            return Err(Error::Mismatch("object index out of range".into()));
        }
        let f = self.field;
        SmallDgCategory::from_basis_fn(
            f,
            objects.iter().map(|&o| self.names[o].clone()).collect(),
            objects
                .iter()
                .map(|&x| objects.iter().map(|&y| self.homs[x][y].clone()).collect())
                .collect(),
            objects.iter().map(|&o| self.units[o].clone()).collect(),
            &|x, y, z, p, gi, q, fj| {
                let (x, y, z) = (objects[x], objects[y], objects[z]);
                self.compose(x, y, z, p, &SparseVec::unit(gi, f), q, &SparseVec::unit(fj, f))
            },
        )
    }

    /// 𝒜^op(x,y) = 𝒜(y,x), with g ∘_op f = (-1)^{|f||g|} f ∘ g.
    pub fn opposite(&self) -> SmallDgCategory {
        let n = self.num_objects();
        let homs = (0..n).map(|x| (0..n).map(|y| self.homs[y][x].clone()).collect()).collect();
        let f = self.field;
        SmallDgCategory::from_basis_fn(
            f,
            self.names.clone(),
            homs,
            self.units.clone(),
            &|x, y, z, p, gi, q, fj| {
                // g in A(z,y), f in A(y,x): f ∘ g in A(z,x)
                self.compose(z, y, x, q, &SparseVec::unit(fj, f), p, &SparseVec::unit(gi, f))
                    .scale(&sign(f, p * q))
            },
        )
        .expect("opposite of a dg category")
    }

    fn linear_category(&self, pick: impl Fn(&ChainComplex) -> (Vec<SparseVec>, Box<dyn Fn(&SparseVec) -> SparseVec + '_>)) -> LinearCategory {
        let n = self.num_objects();
        let f = self.field;
        let mut bases = vec![vec![Vec::new(); n]; n];
        let mut coords: Vec<Vec<Box<dyn Fn(&SparseVec) -> SparseVec + '_>>> = Vec::new();
        for x in 0..n {
            let mut row = Vec::new();
            for y in 0..n {
                let (b, c) = pick(&self.homs[x][y]);
                bases[x][y] = b;
                row.push(c);
            }
            coords.push(row);
        }
        let mut comp = HashMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut cols = Vec::new();
                    for g in &bases[y][z] {
                        for fv in &bases[x][y] {
                            cols.push(coords[x][z](&self.compose(x, y, z, 0, g, 0, fv)));
                        }
                    }
                    comp.insert((x, y, z), Matrix::from_columns(f, bases[x][z].len(), &cols));
                }
            }
        }
        let units = (0..n).map(|x| coords[x][x](&self.units[x])).collect();
        LinearCategory {
            field: f,
            names: self.names.clone(),
            dims: bases.iter().map(|r| r.iter().map(|b| b.len()).collect()).collect(),
            comp,
            units,
            reps: bases,
        }
    }

    /// H^0 of every hom complex with the induced composition.
    pub fn h0_category(&self) -> LinearCategory {
        self.linear_category(|h| {
            let hom: Homology = h.homology(0);
            let reps = hom.reps.clone();
            (reps, Box::new(move |v| hom.class_of(v).expect("composite of cycles is a cycle")))
        })
    }

    /// Z^0 of every hom complex (closed degree-0 morphisms).
    pub fn z0_category(&self) -> LinearCategory {
        self.linear_category(|h| {
            let z: Subspace = crate::exactla::kernel_basis(&h.d(0));
            let basis = z.basis().to_vec();
            (basis, Box::new(move |v| z.coords(v)))
        })
    }
}

/// Ordinary k-linear category with finite-dimensional homs, as produced by H^0 and Z^0.
#[derive(Clone, Debug)]
pub struct LinearCategory {
    pub field: FieldSpec,
    pub names: Vec<String>,
    pub dims: Vec<Vec<usize>>,
    /// (x,y,z) -> matrix with column g_i * dim(x,y) + f_j = coordinates of g_i ∘ f_j
    pub comp: HashMap<(usize, usize, usize), Matrix>,
    pub units: Vec<SparseVec>,
    /// Chain-level representatives of the basis of each hom space.
    pub reps: Vec<Vec<Vec<SparseVec>>>,
}

impl LinearCategory {
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &SparseVec, f: &SparseVec) -> SparseVec {
        self.comp[&(x, y, z)].apply(&kron_vec(g, f, self.dims[x][y]))
    }
}

/// The unit dg category 𝒦: one object with endomorphisms k in degree 0.
pub fn unit_category(field: FieldSpec) -> SmallDgCategory {
    SmallDgCategory::from_basis_fn(
        field,
        vec!["*".into()],
        vec![vec![ChainComplex::concentrated(field, 0, 1)]],
        vec![SparseVec::unit(0, field)],
        &|_, _, _, _, _, _, _| SparseVec::unit(0, field),
    )
    .expect("unit category")
}

/// 𝒜 ⊗ ℬ: objects (x, y) numbered x * |ℬ| + y, homs 𝒜(x,x') ⊗ ℬ(y,y'), composition
/// (g ⊗ g') ∘ (f ⊗ f') = (-1)^{|g'||f|} (g ∘ f) ⊗ (g' ∘ f').
pub fn tensor_dgcat(a: &SmallDgCategory, b: &SmallDgCategory) -> Result<SmallDgCategory> {
    a.field.check_same(&b.field)?;
    let field = a.field;
    let (na, nb) = (a.num_objects(), b.num_objects());
    let split = |o: usize| (o / nb, o % nb);
    let mut names = Vec::new();
    for x in 0..na {
        for y in 0..nb {
            names.push(format!("({},{})", a.names[x], b.names[y]));
        }
    }
    let n = na * nb;
    let homs: Vec<Vec<ChainComplex>> = (0..n)
        .map(|s| {
            (0..n)
                .map(|t| {
                    let ((x, y), (x2, y2)) = (split(s), split(t));
                    a.homs[x][x2].tensor(&b.homs[y][y2])
                })
                .collect()
        })
        .collect();
    let units = (0..n)
        .map(|s| {
            let (x, y) = split(s);
            let (ha, hb) = (&a.homs[x][x], &b.homs[y][y]);
            let off = tensor_index(ha, hb, 0, 0, 0, 0);
            kron_vec(&a.units[x], &b.units[y], hb.dim(0)).shifted(off)
        })
        .collect();
    let locate = |s: usize, t: usize, n: i64, k: usize| {
        let ((x, y), (x2, y2)) = (split(s), split(t));
        tensor_locate(&a.homs[x][x2], &b.homs[y][y2], n, k)
    };
    SmallDgCategory::from_basis_fn(field, names, homs.clone(), units, &|s, t, u, pn, gi, qn, fj| {
        let ((x, y), (x2, y2), (x3, y3)) = (split(s), split(t), split(u));
        let (p1, g1, p2, g2) = locate(t, u, pn, gi);
        let (q1, f1, q2, f2) = locate(s, t, qn, fj);
        let e = |k| SparseVec::unit(k, field);
        let left = a.compose(x, x2, x3, p1, &e(g1), q1, &e(f1));
        let right = b.compose(y, y2, y3, p2, &e(g2), q2, &e(f2));
        let (ha, hb) = (&a.homs[x][x3], &b.homs[y][y3]);
        let off = tensor_index(ha, hb, p1 + q1, 0, p2 + q2, 0);
        kron_vec(&left, &right, hb.dim(p2 + q2))
            .shifted(off)
            .scale(&sign(field, p2 * q1))
    })
}

/// Objects are the given weights g; hom(g1, g2) = A_{g2-g1} in degree 0 with zero
/// differential; for f in hom(g1,g2) and h in hom(g2,g3), h ∘ f is the product f·h.
pub fn ringoid_truncated(presentation: &Presentation, weights: &[i64], cutoff: u32) -> Result<(SmallDgCategory, Algebra)> {
    let gap = weights
        .iter()
        .flat_map(|a| weights.iter().map(move |b| b - a))
        .max()
        .unwrap_or(0);
    if gap > cutoff as i64 {
        return Err(Error::CutoffTooSmall { cutoff, needed: gap as u32 });
    }
    let alg = Algebra::new(presentation.clone(), cutoff);
    let field = alg.field();
    let n = weights.len();
    let homs = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| ChainComplex::concentrated(field, 0, alg.dim(weights[y] - weights[x])))
                .collect()
        })
        .collect();
    let units = (0..n).map(|_| SparseVec::unit(0, field)).collect();
    let cat = SmallDgCategory::from_basis_fn(
        field,
        weights.iter().map(|w| w.to_string()).collect(),
        homs,
        units,
        &|x, y, z, _, gi, _, fj| {
            let f = &alg.basis(weights[y] - weights[x])[fj];
            let g = &alg.basis(weights[z] - weights[y])[gi];
            alg.multiply_words(f, g)
        },
    )?;
    Ok((cat, alg))
}

/// Full dg subcategory of complexes on the given objects: hom(x,y) is the hom complex
/// and composition is composition of graded maps.
pub fn complexes_category(field: FieldSpec, objects: &[(String, ChainComplex)]) -> Result<SmallDgCategory> {
    let n = objects.len();
    let hc: Vec<Vec<HomComplex>> = (0..n)
        .map(|x| (0..n).map(|y| hom_complex(&objects[x].1, &objects[y].1)).collect())
        .collect();
    let homs = hc.iter().map(|r| r.iter().map(|h| h.complex.clone()).collect()).collect();
    let units = (0..n)
        .map(|x| {
            let c = &objects[x].1;
            hc[x][x].vector_of(0, |m| Matrix::identity(field, c.dim(m)))
        })
        .collect();
    SmallDgCategory::from_basis_fn(
        field,
        objects.iter().map(|o| o.0.clone()).collect(),
        homs,
        units,
        &|x, y, z, p, gi, q, fj| {
            let e = |k| SparseVec::unit(k, field);
            hc[x][z].compose_from(&hc[y][z], p, &e(gi), &hc[x][y], q, &e(fj))
        },
    )
}
