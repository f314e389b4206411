use std::collections::HashMap;

use crate::exactla::{kernel_basis, Echelon, Matrix, Scalar, SparseVec};
use crate::freealg::{Algebra, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Left,
    Right,
}

/// One term of a syzygy: generator slot, coefficient word, scalar.
pub(crate) type SyzTerm = (usize, Word, Scalar);

/// Generators of the one-sided ideal A_{≥n} (all normal words of weights
/// n..n+w_max-1, or the unit when n = 0) with its minimal syzygies up to a weight bound.
#[derive(Clone, Debug)]
pub(crate) struct IdealGens {
    pub n: u32,
    pub gens: Vec<(u32, Word)>,
    pub slot_of: HashMap<Word, usize>,
    pub syzygies: Vec<(u32, Vec<SyzTerm>)>,
    pub top_weight: u32,
}

impl IdealGens {
    /// Number of weights covered by the generators.
    pub fn span(alg: &Algebra) -> u32 {
        alg.max_generator_weight()
    }

    /// Largest weight at which a minimal syzygy is searched for.
    pub fn syzygy_bound(alg: &Algebra, n: u32) -> u32 {
        if n == 0 || alg.num_generators() == 0 {
            return 0;
        }
        let slack = alg.presentation().max_relation_weight().max(1);
        n + Self::span(alg) - 1 + slack
    }

    pub fn build(alg: &Algebra, side: Side, n: u32) -> IdealGens {
        let field = alg.field();
        if n == 0 || alg.num_generators() == 0 {
            let mut slot_of = HashMap::new();
            slot_of.insert(Word::empty(), 0);
            return IdealGens {
                n,
                gens: vec![(0, Word::empty())],
                slot_of,
                syzygies: Vec::new(),
                top_weight: 0,
            };
        }
        let span = Self::span(alg);
        let mut gens = Vec::new();
        for t in n..n + span {
            for w in alg.basis(t as i64) {
                gens.push((t, w.clone()));
            }
        }
        let slot_of: HashMap<Word, usize> =
            gens.iter().enumerate().map(|(i, (_, w))| (w.clone(), i)).collect();
        let bound = Self::syzygy_bound(alg, n);
        let mut syzygies: Vec<(u32, Vec<SyzTerm>)> = Vec::new();
        for t in n + 1..=bound {
            // source basis: (generator, coefficient word of weight t - t0)
            let mut source: Vec<(usize, Word)> = Vec::new();
            for (k, (t0, _)) in gens.iter().enumerate() {
                if *t0 <= t {
                    for u in alg.basis((t - t0) as i64) {
                        source.push((k, u.clone()));
                    }
                }
            }
            let index: HashMap<(usize, Word), usize> =
                source.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
            let product = |k: usize, u: &Word| -> SparseVec {
                let g = &gens[k].1;
                match side {
                    Side::Left => alg.word_vector(&u.concat(g)),
                    Side::Right => alg.word_vector(&g.concat(u)),
                }
            };
            let cols: Vec<SparseVec> = source.iter().map(|(k, u)| product(*k, u)).collect();
            let map = Matrix::from_columns(field, alg.dim(t as i64), &cols);
            let kernel = kernel_basis(&map);
            if kernel.dim() == 0 {
                continue;
            }
            // syzygies generated by lower ones: multiply by normal words on the outer side
            let mut lower = Echelon::new(field, source.len());
            for (s, terms) in &syzygies {
                for c in alg.basis((t - s) as i64) {
                    let mut acc = Vec::new();
                    for (k, u, a) in terms {
                        let prod = match side {
                            Side::Left => alg.word_vector(&c.concat(u)),
                            Side::Right => alg.word_vector(&u.concat(c)),
                        };
                        let wt = t - gens[*k].0;
                        for (i, b) in prod.iter() {
                            let word = alg.basis(wt as i64)[*i].clone();
                            acc.push((index[&(*k, word)], a * b));
                        }
                    }
                    lower.insert(&SparseVec::from_entries(acc));
                }
            }
            for v in kernel.basis() {
                if lower.insert(v) {
                    let terms = v
                        .iter()
                        .map(|(i, a)| (source[*i].0, source[*i].1.clone(), a.clone()))
                        .collect();
                    syzygies.push((t, terms));
                }
            }
        }
        let top_weight = syzygies
            .iter()
            .map(|s| s.0)
            .max()
            .unwrap_or(0)
            .max(n + span - 1);
        IdealGens {
            n,
            gens,
            slot_of,
            syzygies,
            top_weight,
        }
    }

    /// Splits a normal word into (outer part, generator slot). For a left ideal the
    /// generator is a suffix and the outer part a prefix; for a right ideal, the reverse.
    pub fn split(&self, alg: &Algebra, side: Side, w: &Word) -> (Word, usize) {
        if self.n == 0 || alg.num_generators() == 0 {
            return (w.clone(), 0);
        }
        let top = self.n + Self::span(alg) - 1;
        let weights = alg.weights();
        let letters = &w.0;
        let mut total: u32 = w.weight(&weights);
        assert!(total >= self.n, "word below ideal weight");
        let mut cut = 0;
        match side {
            Side::Left => {
                while total > top {
                    total -= weights[letters[cut] as usize];
                    cut += 1;
                }
                let outer = Word(letters[..cut].to_vec());
                let g = Word(letters[cut..].to_vec());
                (outer, self.slot_of[&g])
            }
            Side::Right => {
                let mut end = letters.len();
                while total > top {
                    end -= 1;
                    total -= weights[letters[end] as usize];
                }
                cut = end;
                let outer = Word(letters[cut..].to_vec());
                let g = Word(letters[..cut].to_vec());
                (outer, self.slot_of[&g])
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldSpec;
    use crate::freealg::{polynomial_ring, quantum_plane};

    #[test]
    fn syzygies_of_polynomial_ideal() {
        let q = FieldSpec::RATIONALS;
        let a = Algebra::new(polynomial_ring(q, 2).unwrap(), 8);
        let ig = IdealGens::build(&a, Side::Left, 2);
        assert_eq!(ig.gens.len(), 3);
        // (x0, x1) acting on x0^2, x0x1, x1^2: 6 -> 4, kernel 2, all linear
        assert_eq!(ig.syzygies.len(), 2);
        assert!(ig.syzygies.iter().all(|s| s.0 == 3));
        let (outer, slot) = ig.split(&a, Side::Left, &Word(vec![0, 0, 1, 1]));
        assert_eq!(outer, Word(vec![0, 0]));
        assert_eq!(ig.gens[slot].1, Word(vec![1, 1]));
    }

    #[test]
    fn right_ideal_split() {
        let q = FieldSpec::RATIONALS;
        let a = Algebra::new(quantum_plane(q, q.from_i64(2)).unwrap(), 8);
        let ig = IdealGens::build(&a, Side::Right, 1);
        let (outer, slot) = ig.split(&a, Side::Right, &Word(vec![0, 1, 1]));
        assert_eq!(outer, Word(vec![1, 1]));
        assert_eq!(ig.gens[slot].1, Word(vec![0]));
        assert_eq!(ig.syzygies.len(), 1);
    }
}
