use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Matrix, Scalar, SparseVec};

use super::groebner::GroebnerBasis;
use super::poly::{FreePoly, Word};
use super::presentation::Presentation;

/// A connected graded algebra truncated at `cutoff`, with normal-word bases
/// and generator multiplication matrices in every weight.
#[derive(Clone, Debug)]
pub struct Algebra {
    presentation: Presentation,
    gb: GroebnerBasis,
    cutoff: u32,
    bases: Vec<Vec<Word>>,
    index: Vec<HashMap<Word, usize>>,
    // [generator][d]: A_d -> A_{d + w}, for d + w <= cutoff
    left_mult: Vec<Vec<Matrix>>,
    right_mult: Vec<Vec<Matrix>>,
}

impl Algebra {
    pub fn new(presentation: Presentation, cutoff: u32) -> Self {
        let gb = GroebnerBasis::compute(&presentation, cutoff);
        let bases = gb.normal_words();
        let index: Vec<HashMap<Word, usize>> = bases
            .iter()
            .map(|b| b.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect())
            .collect();
        let mut alg = Algebra {
            presentation,
            gb,
            cutoff,
            bases,
            index,
            left_mult: Vec::new(),
            right_mult: Vec::new(),
        };
        let field = alg.field();
        let weights = alg.presentation.weights();
        for (g, &wg) in weights.iter().enumerate() {
            let mut lm = Vec::new();
            let mut rm = Vec::new();
            for d in 0..=cutoff {
                if d + wg > cutoff {
                    break;
                }
                let src = alg.dim(d as i64);
                let dst = alg.dim((d + wg) as i64);
                let mut lcols = Vec::with_capacity(src);
                let mut rcols = Vec::with_capacity(src);
                for w in &alg.bases[d as usize] {
                    let lw = Word::letter(g as u32).concat(w);
                    let rw = w.concat(&Word::letter(g as u32));
                    lcols.push(alg.word_vector(&lw));
                    rcols.push(alg.word_vector(&rw));
                }
                lm.push(Matrix::from_columns(field, dst, &lcols));
                rm.push(Matrix::from_columns(field, dst, &rcols));
            }
            alg.left_mult.push(lm);
            alg.right_mult.push(rm);
        }
        alg
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn field(&self) -> FieldSpec {
        self.presentation.field()
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.num_generators()
    }

    pub fn generator_weight(&self, g: usize) -> u32 {
        self.presentation.generators()[g].weight
    }

    pub fn max_generator_weight(&self) -> u32 {
        self.presentation.max_generator_weight()
    }

    /// Dimension of A_d; zero for negative d. Panics beyond the cutoff.
    pub fn dim(&self, d: i64) -> usize {
        if d < 0 {
            return 0;
        }
        assert!(
            d <= self.cutoff as i64,
            "weight {} beyond algebra cutoff {}",
            d,
            self.cutoff
        );
        self.bases[d as usize].len()
    }

    pub fn check_weight(&self, d: i64) -> Result<()> {
        if d > self.cutoff as i64 {
            return Err(Error::CutoffTooSmall {
                cutoff: self.cutoff,
                needed: d as u32,
            });
        }
        Ok(())
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }

    pub fn basis(&self, d: i64) -> &[Word] {
        &self.bases[d as usize]
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        let d = self.presentation.word_weight(w) as usize;
        self.index.get(d).and_then(|m| m.get(w).copied())
    }

    pub fn normal_form(&self, p: &FreePoly) -> FreePoly {
        self.gb.normal_form(p)
    }

    /// Coordinates of an arbitrary word (weight <= cutoff) in the normal basis.
    pub fn word_vector(&self, w: &Word) -> SparseVec {
        let nf = self
            .gb
            .normal_form(&FreePoly::monomial(self.field(), w.clone(), self.field().one()));
        self.poly_vector_unchecked(&nf)
    }

    fn poly_vector_unchecked(&self, nf: &FreePoly) -> SparseVec {
        SparseVec::from_entries(
            nf.terms()
                .iter()
                .map(|(w, c)| (self.word_index(w).expect("normal word"), c.clone()))
                .collect(),
        )
    }

    /// Coordinates of a homogeneous polynomial of weight d.
    pub fn to_vector(&self, p: &FreePoly, d: i64) -> Result<SparseVec> {
        self.check_weight(d)?;
        let ws = p.weights(&self.presentation.weights());
        if ws.iter().any(|&w| w as i64 != d) {
            return Err(Error::Mismatch(format!(
                "polynomial is not homogeneous of weight {}",
                d
            )));
        }
        Ok(self.poly_vector_unchecked(&self.normal_form(p)))
    }

    pub fn from_vector(&self, d: i64, v: &SparseVec) -> FreePoly {
        FreePoly::from_terms(
            self.field(),
            v.iter()
                .map(|(i, c)| (self.bases[d as usize][*i].clone(), c.clone())),
        )
    }

    /// Matrix of left multiplication by generator g on A_d.
    pub fn left_gen_matrix(&self, g: usize, d: i64) -> &Matrix {
        &self.left_mult[g][d as usize]
    }

    pub fn right_gen_matrix(&self, g: usize, d: i64) -> &Matrix {
        &self.right_mult[g][d as usize]
    }

    /// Product of x in A_d1 and y in A_d2.
    pub fn multiply(&self, d1: i64, x: &SparseVec, d2: i64, y: &SparseVec) -> Result<SparseVec> {
        self.check_weight(d1 + d2)?;
        let mut acc = SparseVec::zero();
        for (i, c) in x.iter() {
            let w = &self.bases[d1 as usize][*i];
            let prod = self.left_word_apply(w, d2, y);
            acc = acc.add_scaled(c, &prod);
        }
        Ok(acc)
    }

    /// w * y for a word w and y in A_d.
    pub fn left_word_apply(&self, w: &Word, d: i64, y: &SparseVec) -> SparseVec {
        let mut cur = y.clone();
        let mut deg = d;
        for &g in w.0.iter().rev() {
            cur = self.left_gen_matrix(g as usize, deg).apply(&cur);
            deg += self.generator_weight(g as usize) as i64;
        }
        cur
    }

    /// y * w for y in A_d and a word w.
    pub fn right_word_apply(&self, d: i64, y: &SparseVec, w: &Word) -> SparseVec {
        let mut cur = y.clone();
        let mut deg = d;
        for &g in w.0.iter() {
            cur = self.right_gen_matrix(g as usize, deg).apply(&cur);
            deg += self.generator_weight(g as usize) as i64;
        }
        cur
    }

    /// Product of basis words as a vector.
    pub fn multiply_words(&self, a: &Word, b: &Word) -> SparseVec {
        self.word_vector(&a.concat(b))
    }

    pub fn unit(&self) -> SparseVec {
        SparseVec::unit(0, self.field())
    }

    pub fn scalar_one(&self) -> Scalar {
        self.field().one()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.presentation.weights()
    }

    pub fn names(&self) -> Vec<String> {
        self.presentation.names()
    }
}
