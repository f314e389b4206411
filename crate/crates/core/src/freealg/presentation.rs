use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exactla::FieldSpec;

use super::poly::{FreePoly, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        Generator {
            name: name.into(),
            weight,
        }
    }
}

/// Generators with positive weights and homogeneous relations, each stored monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: FieldSpec,
    generators: Vec<Generator>,
    relations: Vec<FreePoly>,
}

impl Presentation {
    pub fn new(field: FieldSpec, generators: Vec<Generator>, relations: Vec<FreePoly>) -> Result<Self> {
        let mut seen = HashSet::new();
        for g in &generators {
            if g.weight == 0 {
                return Err(Error::Presentation(format!(
                    "generator {} has weight 0",
                    g.name
                )));
            }
            if !seen.insert(g.name.clone()) {
                return Err(Error::Presentation(format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.weight).collect();
        let mut normalized = Vec::with_capacity(relations.len());
        for (index, r) in relations.into_iter().enumerate() {
            field.check_same(&r.field())?;
            if r.is_zero() {
                return Err(Error::Presentation(format!("relation {} is zero", index)));
            }
            for w in r.terms().keys() {
                if w.0.iter().any(|&g| g as usize >= generators.len()) {
                    return Err(Error::Presentation(format!(
                        "relation {} uses an unknown generator",
                        index
                    )));
                }
            }
            let ws = r.weights(&weights);
            if ws.len() > 1 {
                return Err(Error::InhomogeneousRelation { index, weights: ws });
            }
            if ws[0] == 0 {
                return Err(Error::Presentation(format!(
                    "relation {} is a nonzero constant",
                    index
                )));
            }
            normalized.push(r.make_monic(&weights));
        }
        Ok(Presentation {
            field,
            generators,
            relations: normalized,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[FreePoly] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn weights(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.weight).collect()
    }

    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn relation_weight(&self, i: usize) -> u32 {
        self.relations[i]
            .terms()
            .keys()
            .next()
            .map(|w| w.weight(&self.weights()))
            .unwrap_or(0)
    }

    pub fn max_generator_weight(&self) -> u32 {
        self.generators.iter().map(|g| g.weight).max().unwrap_or(1)
    }

    pub fn max_relation_weight(&self) -> u32 {
        (0..self.relations.len())
            .map(|i| self.relation_weight(i))
            .max()
            .unwrap_or(0)
    }

    pub fn generator_index(&self, name: &str) -> Option<u32> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u32)
    }

    /// Presentation of the opposite algebra: every word reversed.
    pub fn opposite(&self) -> Presentation {
        let rels = self.relations.iter().map(|r| r.reversed()).collect();
        Presentation::new(self.field, self.generators.clone(), rels)
            .expect("reversal preserves homogeneity")
    }

    pub fn word_weight(&self, w: &Word) -> u32 {
        w.0.iter().map(|&g| self.generators[g as usize].weight).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy(field: FieldSpec, terms: &[(&[u32], i64)]) -> FreePoly {
        FreePoly::from_terms(
            field,
            terms
                .iter()
                .map(|(w, c)| (Word(w.to_vec()), field.from_i64(*c))),
        )
    }

    #[test]
    fn rejects_inhomogeneous() {
        let q = FieldSpec::RATIONALS;
        let gens = vec![Generator::new("x", 1), Generator::new("y", 1)];
        let r = xy(q, &[(&[0, 1], 1), (&[0], 1)]);
        match Presentation::new(q, gens, vec![r]) {
            Err(Error::InhomogeneousRelation { index, weights }) => {
                assert_eq!(index, 0);
                assert_eq!(weights, vec![1, 2]);
            }
            other => panic!("unexpected {:?}", other),
        }
    }

    #[test]
    fn relations_become_monic() {
        let q = FieldSpec::RATIONALS;
        let gens = vec![Generator::new("x", 1), Generator::new("y", 1)];
        let r = xy(q, &[(&[0, 1], 1), (&[1, 0], -2)]);
        let p = Presentation::new(q, gens, vec![r]).unwrap();
        assert_eq!(p.relations()[0].coefficient(&Word(vec![1, 0])), q.one());
        assert_eq!(
            p.relations()[0].coefficient(&Word(vec![0, 1])).to_string(),
            "-1/2"
        );
    }
}
