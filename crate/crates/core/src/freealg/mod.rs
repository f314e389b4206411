//! Free algebras, homogeneous presentations, truncated Gröbner bases.

mod algebra;
mod constructors;
mod groebner;
mod poly;
mod presentation;

pub use algebra::Algebra;
pub use constructors::{
    fermat_cubic, free_algebra, kanazawa, kanazawa_product_condition, polynomial_ring,
    quantum_plane, quantum_space, tensor_presentation, BigradedPresentation, QParams,
};
pub use groebner::{GroebnerBasis, MonomialOrder};
pub use poly::{FreePoly, Word};
pub use presentation::{Generator, Presentation};

use crate::error::{Error, Result};

pub fn multiply(p: &FreePoly, q: &FreePoly) -> Result<FreePoly> {
    p.field().check_same(&q.field())?;
    Ok(p.mul(q))
}

pub fn groebner_truncated(p: &Presentation, cutoff: u32) -> Result<GroebnerBasis> {
    let need = p.max_relation_weight();
    if cutoff < need {
        return Err(Error::CutoffTooSmall { cutoff, needed: need });
    }
    Ok(GroebnerBasis::compute(p, cutoff))
}

/// Normal form of f; every term must have weight at most the cutoff.
pub fn normal_form(f: &FreePoly, gb: &GroebnerBasis, p: &Presentation) -> Result<FreePoly> {
    gb.field().check_same(&f.field())?;
    if let Some(&w) = f.weights(&p.weights()).last() {
        if w > gb.cutoff() {
            return Err(Error::CutoffTooSmall {
                cutoff: gb.cutoff(),
                needed: w,
            });
        }
    }
    Ok(gb.normal_form(f))
}

/// Dimension of A_d and its normal words, computed with cutoff D.
pub fn graded_dim(p: &Presentation, d: u32, cutoff: u32) -> Result<(usize, Vec<Word>)> {
    if d > cutoff {
        return Err(Error::CutoffTooSmall { cutoff, needed: d });
    }
    let gb = GroebnerBasis::compute(p, cutoff);
    let words = gb.normal_words().swap_remove(d as usize);
    Ok((words.len(), words))
}
