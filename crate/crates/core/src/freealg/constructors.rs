use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};

use super::algebra::Algebra;
use super::poly::{FreePoly, Word};
use super::presentation::{Generator, Presentation};

/// q-parameters indexed by pairs i < j; missing entries mean 1.
pub type QParams = BTreeMap<(usize, usize), Scalar>;

fn var_names(count: usize) -> Vec<Generator> {
    (0..count).map(|i| Generator::new(format!("x{}", i), 1)).collect()
}

fn word(letters: &[u32]) -> Word {
    Word(letters.to_vec())
}

pub fn free_algebra(field: FieldSpec, generators: Vec<Generator>) -> Result<Presentation> {
    Presentation::new(field, generators, Vec::new())
}

/// k[x_0, ..., x_{count-1}] with all generators of weight 1.
pub fn polynomial_ring(field: FieldSpec, count: usize) -> Result<Presentation> {
    let mut rels = Vec::new();
    for i in 0..count as u32 {
        for j in i + 1..count as u32 {
            rels.push(FreePoly::from_terms(
                field,
                [(word(&[i, j]), field.one()), (word(&[j, i]), field.from_i64(-1))],
            ));
        }
    }
    Presentation::new(field, var_names(count), rels)
}

fn q_entry(field: FieldSpec, q: &QParams, i: usize, j: usize) -> Result<Scalar> {
    let v = q.get(&(i, j)).cloned().unwrap_or_else(|| field.one());
    field.check_same(&v.field())?;
    if v.is_zero() {
        return Err(Error::ZeroParameter {
            name: format!("q{}_{}", i, j),
        });
    }
    Ok(v)
}

fn check_q_keys(q: &QParams, count: usize) -> Result<()> {
    for &(i, j) in q.keys() {
        if i >= j || j >= count {
            return Err(Error::Presentation(format!(
                "q index ({}, {}) must satisfy i < j <= {}",
                i,
                j,
                count - 1
            )));
        }
    }
    Ok(())
}

fn quantum_relations(field: FieldSpec, q: &QParams, count: usize) -> Result<Vec<FreePoly>> {
    check_q_keys(q, count)?;
    let mut rels = Vec::new();
    for i in 0..count {
        for j in i + 1..count {
            let qij = q_entry(field, q, i, j)?;
            rels.push(FreePoly::from_terms(
                field,
                [
                    (word(&[i as u32, j as u32]), field.one()),
                    (word(&[j as u32, i as u32]), -qij),
                ],
            ));
        }
    }
    Ok(rels)
}

/// Quantum projective space: generators x_0..x_n, relations x_i x_j - q_ij x_j x_i for i < j.
pub fn quantum_space(field: FieldSpec, n: usize, q: &QParams) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Presentation("quantum space needs n >= 1".into()));
    }
    let rels = quantum_relations(field, q, n + 1)?;
    Presentation::new(field, var_names(n + 1), rels)
}

/// Quantum plane with a single parameter.
pub fn quantum_plane(field: FieldSpec, q: Scalar) -> Result<Presentation> {
    let mut params = QParams::new();
    params.insert((0, 1), q);
    quantum_space(field, 1, &params)
}

/// Quantum space plus the relation sum_i x_i^{n+1} - phi (n+1) x_0 x_1 ... x_n.
pub fn kanazawa(field: FieldSpec, n: usize, phi: &Scalar, q: &QParams) -> Result<Presentation> {
    if n == 0 {
        return Err(Error::Presentation("kanazawa algebra needs n >= 1".into()));
    }
    field.check_same(&phi.field())?;
    let mut rels = quantum_relations(field, q, n + 1)?;
    let mut extra = FreePoly::zero(field);
    for i in 0..=n as u32 {
        extra.add_term(Word(vec![i; n + 1]), field.one());
    }
    let mixed: Vec<u32> = (0..=n as u32).collect();
    extra.add_term(Word(mixed), -(phi * &field.from_i64(n as i64 + 1)));
    rels.push(extra);
    Presentation::new(field, var_names(n + 1), rels)
}

/// Checks prod_i q_ij = 1 for every j, with q_jj = 1 and q_ji = q_ij^{-1}.
/// Returns a warning for each column that fails.
pub fn kanazawa_product_condition(field: FieldSpec, n: usize, q: &QParams) -> Result<Vec<String>> {
    check_q_keys(q, n + 1)?;
    let mut warnings = Vec::new();
    for j in 0..=n {
        let mut prod = field.one();
        for i in 0..=n {
            let f = match i.cmp(&j) {
                std::cmp::Ordering::Equal => field.one(),
                std::cmp::Ordering::Less => q_entry(field, q, i, j)?,
                std::cmp::Ordering::Greater => q_entry(field, q, j, i)?.inv().expect("nonzero"),
            };
            prod = &prod * &f;
        }
        if !prod.is_one() {
            warnings.push(format!(
                "product of q_i{} over i is {}, expected 1",
                j, prod
            ));
        }
    }
    Ok(warnings)
}

/// k[x, y, z] / (x^3 + y^3 + z^3).
pub fn fermat_cubic(field: FieldSpec) -> Result<Presentation> {
    kanazawa(field, 2, &field.zero(), &QParams::new())
}

/// Presentation of A ⊗ B with bidegrees for each generator.
#[derive(Clone, Debug)]
pub struct BigradedPresentation {
    pub presentation: Presentation,
    pub bidegrees: Vec<(u32, u32)>,
    pub left_generators: usize,
}

impl BigradedPresentation {
    pub fn word_bidegree(&self, w: &Word) -> (u32, u32) {
        w.0.iter().fold((0, 0), |acc, &g| {
            let b = self.bidegrees[g as usize];
            (acc.0 + b.0, acc.1 + b.1)
        })
    }

    /// dim (A ⊗ B)_{i,j}, counted on normal words of the total-weight algebra.
    pub fn bigraded_dim(&self, alg: &Algebra, i: u32, j: u32) -> Result<usize> {
        alg.check_weight((i + j) as i64)?;
        Ok(alg
            .basis((i + j) as i64)
            .iter()
            .filter(|w| self.word_bidegree(w) == (i, j))
            .count())
    }
}

pub fn tensor_presentation(a: &Presentation, b: &Presentation) -> Result<BigradedPresentation> {
    let field = a.field();
    field.check_same(&b.field())?;
    let na = a.num_generators() as u32;
    let mut gens: Vec<Generator> = a.generators().to_vec();
    let mut bidegrees: Vec<(u32, u32)> = a.generators().iter().map(|g| (g.weight, 0)).collect();
    for g in b.generators() {
        let mut name = g.name.clone();
        while gens.iter().any(|h| h.name == name) {
            name.push('\'');
        }
        gens.push(Generator::new(name, g.weight));
        bidegrees.push((0, g.weight));
    }
    let mut rels: Vec<FreePoly> = a.relations().to_vec();
    for r in b.relations() {
        rels.push(FreePoly::from_terms(
            field,
            r.terms()
                .iter()
                .map(|(w, c)| (Word(w.0.iter().map(|&g| g + na).collect()), c.clone())),
        ));
    }
    for i in 0..na {
        for j in 0..b.num_generators() as u32 {
            rels.push(FreePoly::from_terms(
                field,
                [
                    (word(&[i, na + j]), field.one()),
                    (word(&[na + j, i]), field.from_i64(-1)),
                ],
            ));
        }
    }
    Ok(BigradedPresentation {
        presentation: Presentation::new(field, gens, rels)?,
        bidegrees,
        left_generators: na as usize,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantum_space_relation_count() {
        let q = FieldSpec::RATIONALS;
        let p = quantum_space(q, 2, &QParams::new()).unwrap();
        assert_eq!(p.relations().len(), 3);
        assert_eq!(p.num_generators(), 3);
        let mut bad = QParams::new();
        bad.insert((0, 1), q.zero());
        assert!(matches!(
            quantum_space(q, 1, &bad),
            Err(Error::ZeroParameter { .. })
        ));
    }

    #[test]
    fn kanazawa_extra_relation() {
        let q = FieldSpec::RATIONALS;
        let p = kanazawa(q, 2, &q.one(), &QParams::new()).unwrap();
        assert_eq!(p.relations().len(), 4);
        let extra = &p.relations()[3];
        assert_eq!(extra.coefficient(&Word(vec![0, 1, 2])), q.from_i64(-3));
        assert_eq!(p.relation_weight(3), 3);
        assert!(kanazawa_product_condition(q, 2, &QParams::new()).unwrap().is_empty());
        let mut skew = QParams::new();
        skew.insert((0, 1), q.from_i64(2));
        assert_eq!(kanazawa_product_condition(q, 2, &skew).unwrap().len(), 2);
    }

    #[test]
    fn quantum_plane_opposite_inverts_q() {
        let q = FieldSpec::RATIONALS;
        let p = quantum_plane(q, q.from_i64(2)).unwrap();
        let op = p.opposite();
        let expected = quantum_plane(q, q.parse_scalar("1/2").unwrap()).unwrap();
        assert_eq!(op, expected);
        assert_eq!(op.opposite(), p);
    }

    #[test]
    fn tensor_bidegree_dims() {
        let q = FieldSpec::RATIONALS;
        let a = quantum_plane(q, q.from_i64(3)).unwrap();
        let t = tensor_presentation(&a, &a).unwrap();
        assert_eq!(t.presentation.relations().len(), 2 + 4);
        let alg = Algebra::new(t.presentation.clone(), 4);
        assert_eq!(t.bigraded_dim(&alg, 1, 1).unwrap(), 4);
        assert_eq!(t.bigraded_dim(&alg, 2, 1).unwrap(), 6);
    }
}
