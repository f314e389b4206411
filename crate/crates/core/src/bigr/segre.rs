use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactla::{kernel_basis, rank, Echelon, Matrix, SparseVec};
use crate::freealg::{Algebra, FreePoly, Generator, Presentation, Word};

#[derive(Clone, Debug)]
pub struct SegreProduct {
    pub presentation: Presentation,
    /// dim S_d for d = 0..=D, from the rank of the evaluation map.
    pub dims: Vec<usize>,
    /// dim A_d * dim B_d for d = 0..=D.
    pub expected: Vec<usize>,
    /// Number of minimal relations found in each weight.
    pub relation_counts: Vec<usize>,
    /// Full kernel dimension in each weight.
    pub kernel_dims: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenerationStep {
    pub degree: u32,
    pub rank: usize,
    pub target_dim: usize,
    pub surjective: bool,
}

fn check_degree_one(p: &Presentation, label: &str) -> Result<()> {
    if let Some(g) = p.generators().iter().find(|g| g.weight != 1) {
        return Err(Error::Hypothesis(format!(
            "{} is not generated in weight 1: generator {} has weight {}",
            label, g.name, g.weight
        )));
    }
    Ok(())
}

fn words_of_length(k: u32, d: u32) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..d {
        let mut next = Vec::with_capacity(out.len() * k as usize);
        for w in &out {
            for g in 0..k {
                let mut v = w.0.clone();
                v.push(g);
                next.push(Word(v));
            }
        }
        out = next;
    }
    out
}

/// Image of a z-word in A_d ⊗ B_d, indexed a * dim B_d + b.
fn evaluate(a: &Algebra, b: &Algebra, q: u32, w: &Word) -> SparseVec {
    let xa = Word(w.0.iter().map(|z| z / q).collect());
    let yb = Word(w.0.iter().map(|z| z % q).collect());
    let va = a.word_vector(&xa);
    let vb = b.word_vector(&yb);
    let db = b.dim(w.len() as i64);
    let mut e = Vec::new();
    for (i, x) in va.iter() {
        for (j, y) in vb.iter() {
            e.push((i * db + j, x * y));
        }
    }
    SparseVec::from_entries(e)
}

/// Segre product of two algebras generated in weight 1, presented on z_ij = x_i ⊗ y_j
/// with all minimal relations of weight ≤ D.
pub fn segre(pa: &Presentation, pb: &Presentation, cutoff: u32) -> Result<SegreProduct> {
    pa.field().check_same(&pb.field())?;
    check_degree_one(pa, "first factor")?;
    check_degree_one(pb, "second factor")?;
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall { cutoff, needed: 2 });
    }
    let field = pa.field();
    let a = Algebra::new(pa.clone(), cutoff);
    let b = Algebra::new(pb.clone(), cutoff);
    let (p, q) = (pa.num_generators() as u32, pb.num_generators() as u32);
    let k = p * q;
    let names_a = pa.names();
    let names_b = pb.names();
    let gens: Vec<Generator> = (0..k)
        .map(|z| {
            Generator::new(
                format!("z_{}_{}", names_a[(z / q) as usize], names_b[(z % q) as usize]),
                1,
            )
        })
        .collect();
    let mut dims = vec![1];
    let mut expected = vec![1];
    let mut relation_counts = vec![0];
    let mut kernel_dims = vec![0];
    let mut relations = Vec::new();
    let mut prev_kernel: Vec<SparseVec> = Vec::new();
    let mut prev_index: HashMap<Word, usize> = HashMap::new();
    let mut prev_words: Vec<Word> = Vec::new();
    for d in 1..=cutoff {
        let words = words_of_length(k, d);
        let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let target = a.dim(d as i64) * b.dim(d as i64);
        let cols: Vec<SparseVec> = words.iter().map(|w| evaluate(&a, &b, q, w)).collect();
        let eval = Matrix::from_columns(field, target, &cols);
        let kernel = kernel_basis(&eval);
        dims.push(words.len() - kernel.dim());
        expected.push(target);
        kernel_dims.push(kernel.dim());
        // relations already implied: z * K_{d-1} + K_{d-1} * z
        let mut low = Echelon::new(field, words.len());
        for r in &prev_kernel {
            for z in 0..k {
                for side in 0..2 {
                    let e: Vec<_> = r
                        .iter()
                        .map(|(i, c)| {
                            let w = &prev_words[*i];
                            let nw = if side == 0 {
                                Word::letter(z).concat(w)
                            } else {
                                w.concat(&Word::letter(z))
                            };
                            (index[&nw], c.clone())
                        })
                        .collect();
                    low.insert(&SparseVec::from_entries(e));
                }
            }
        }
        let mut count = 0;
        for v in kernel.basis() {
            if low.insert(v) {
                count += 1;
                relations.push(FreePoly::from_terms(
                    field,
                    v.iter().map(|(i, c)| (words[*i].clone(), c.clone())),
                ));
            }
        }
        relation_counts.push(count);
        prev_kernel = kernel.basis().to_vec();
        prev_words = words;
        prev_index = index;
    }
    let _ = prev_index;
    Ok(SegreProduct {
        presentation: Presentation::new(field, gens, relations)?,
        dims,
        expected,
        relation_counts,
        kernel_dims,
    })
}

/// Rank of S_1 ⊗ S_d -> S_{d+1} for d = 1..D-1.
pub fn segre_generation_check(pa: &Presentation, pb: &Presentation, cutoff: u32) -> Result<Vec<GenerationStep>> {
    pa.field().check_same(&pb.field())?;
    check_degree_one(pa, "first factor")?;
    check_degree_one(pb, "second factor")?;
    let field = pa.field();
    let a = Algebra::new(pa.clone(), cutoff);
    let b = Algebra::new(pb.clone(), cutoff);
    let mut out = Vec::new();
    for d in 1..cutoff {
        let (da, db) = (a.dim(d as i64), b.dim(d as i64));
        let db1 = b.dim(d as i64 + 1);
        let target = a.dim(d as i64 + 1) * db1;
        let mut cols = Vec::new();
        for i in 0..a.num_generators() {
            for j in 0..b.num_generators() {
                for x in 0..da {
                    let ax = a.left_gen_matrix(i, d as i64).apply(&SparseVec::unit(x, field));
                    for y in 0..db {
                        let by = b.left_gen_matrix(j, d as i64).apply(&SparseVec::unit(y, field));
                        let mut e = Vec::new();
                        for (r, s) in ax.iter() {
                            for (t, u) in by.iter() {
                                e.push((r * db1 + t, s * u));
                            }
                        }
                        cols.push(SparseVec::from_entries(e));
                    }
                }
            }
        }
        let r = rank(&Matrix::from_columns(field, target, &cols));
        out.push(GenerationStep {
            degree: d,
            rank: r,
            target_dim: target,
            surjective: r == target,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::freealg::polynomial_ring;

    #[test]
    fn segre_of_planes() {
        let q = FieldSpec::RATIONALS;
        let p = polynomial_ring(q, 2).unwrap();
        let s = segre(&p, &p, 3).unwrap();
        assert_eq!(s.presentation.num_generators(), 4);
        assert_eq!(s.relation_counts[2], 7);
        assert_eq!(s.dims, vec![1, 4, 9, 16]);
        assert_eq!(s.dims, s.expected);
        let gen = segre_generation_check(&p, &p, 3).unwrap();
        assert!(gen.iter().all(|g| g.surjective));
        assert_eq!(gen[0].rank, 9);
    }
}
