use std::collections::{BTreeMap, HashMap};

use crate::exactla::{Echelon, FieldSpec, Scalar, SparseVec};

use super::poly::{FreePoly, Word};
use super::presentation::Presentation;

/// Monomial order used throughout: total weight first, then lexicographic on
/// generator indices with larger indices bigger.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    DegLex,
}

/// Reduced Gröbner basis of the two-sided ideal, complete through weight `cutoff`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    field: FieldSpec,
    weights: Vec<u32>,
    cutoff: u32,
    elements: Vec<FreePoly>,
    leads: Vec<Word>,
    lead_index: HashMap<Vec<u32>, usize>,
    max_lead_len: usize,
}

/// Overlap S-polynomials between a and b: a suffix of lead(a) equal to a prefix of lead(b).
fn overlaps(a: &FreePoly, la: &Word, b: &FreePoly, lb: &Word, weights: &[u32], cutoff: u32, out: &mut BTreeMap<u32, Vec<FreePoly>>) {
    let (na, nb) = (la.len(), lb.len());
    for k in 1..na.min(nb) {
        if la.0[na - k..] != lb.0[..k] {
            continue;
        }
        let right = Word(lb.0[k..].to_vec());
        let left = Word(la.0[..na - k].to_vec());
        let w = la.weight(weights) + right.weight(weights);
        if w > cutoff {
            continue;
        }
        let s = a.sandwich(&Word::empty(), &right).sub(&b.sandwich(&left, &Word::empty()));
        out.entry(w).or_default().push(s);
    }
}

impl GroebnerBasis {
    pub fn compute(p: &Presentation, cutoff: u32) -> Self {
        let weights = p.weights();
        let field = p.field();
        let mut gb = GroebnerBasis {
            field,
            weights: weights.clone(),
            cutoff,
            elements: Vec::new(),
            leads: Vec::new(),
            lead_index: HashMap::new(),
            max_lead_len: 0,
        };
        let mut pending: BTreeMap<u32, Vec<FreePoly>> = BTreeMap::new();
        for (i, r) in p.relations().iter().enumerate() {
            let w = p.relation_weight(i);
            if w <= cutoff {
                pending.entry(w).or_default().push(r.clone());
            }
        }
        while let Some((d, cands)) = pending.pop_first() {
            let reduced: Vec<FreePoly> = cands
                .iter()
                .map(|c| gb.normal_form(c))
                .filter(|c| !c.is_zero())
                .collect();
            if reduced.is_empty() {
                continue;
            }
            // columns: words sorted descending, so the echelon pivot is the leading word
            let mut words: Vec<Word> = reduced
                .iter()
                .flat_map(|c| c.terms().keys().cloned())
                .collect();
            words.sort_unstable_by(|a, b| b.cmp(a));
            words.dedup();
            let col: HashMap<&Word, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let mut ech = Echelon::new(field, words.len());
            for c in &reduced {
                let v = SparseVec::from_entries(
                    c.terms().iter().map(|(w, s)| (col[w], s.clone())).collect(),
                );
                ech.insert(&v);
            }
            let start = gb.elements.len();
            for row in ech.rref_rows() {
                let poly = FreePoly::from_terms(
                    field,
                    row.iter().map(|(i, s)| (words[*i].clone(), s.clone())),
                );
                let lead = words[row.leading().unwrap().0].clone();
                gb.push(poly, lead);
            }
            for i in start..gb.elements.len() {
                for j in 0..=i {
                    let (a, la) = (&gb.elements[i], &gb.leads[i]);
                    let (b, lb) = (&gb.elements[j], &gb.leads[j]);
                    overlaps(a, la, b, lb, &weights, cutoff, &mut pending);
                    if i != j {
                        overlaps(b, lb, a, la, &weights, cutoff, &mut pending);
                    }
                }
            }
            debug_assert!(pending.keys().all(|&w| w > d));
        }
        gb
    }

    fn push(&mut self, poly: FreePoly, lead: Word) {
        self.lead_index.insert(lead.0.clone(), self.elements.len());
        self.max_lead_len = self.max_lead_len.max(lead.len());
        self.leads.push(lead);
        self.elements.push(poly);
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::DegLex
    }

    pub fn elements(&self) -> &[FreePoly] {
        &self.elements
    }

    pub fn leading_words(&self) -> &[Word] {
        &self.leads
    }

    /// Position and element index of some leading word occurring inside `w`.
    pub fn find_divisor(&self, w: &[u32]) -> Option<(usize, usize, usize)> {
        for s in 0..w.len() {
            let top = (s + self.max_lead_len).min(w.len());
            for e in s + 1..=top {
                if let Some(&i) = self.lead_index.get(&w[s..e]) {
                    return Some((s, e, i));
                }
            }
        }
        None
    }

    /// True when some leading word is a suffix of `w`.
    pub fn has_lead_suffix(&self, w: &[u32]) -> bool {
        let n = w.len();
        (1..=n.min(self.max_lead_len)).any(|k| self.lead_index.contains_key(&w[n - k..]))
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.find_divisor(&w.0).is_none()
    }

    /// Normal form modulo the ideal. Exact for terms of weight at most the cutoff.
    pub fn normal_form(&self, p: &FreePoly) -> FreePoly {
        let mut work: BTreeMap<(u32, Word), Scalar> = p
            .terms()
            .iter()
            .map(|(w, c)| ((w.weight(&self.weights), w.clone()), c.clone()))
            .collect();
        let mut out = FreePoly::zero(self.field);
        while let Some(((wt, word), c)) = work.pop_last() {
            match self.find_divisor(&word.0) {
                None => out.add_term(word, c),
                Some((s, e, i)) => {
                    let left = &word.0[..s];
                    let right = &word.0[e..];
                    for (t, a) in self.elements[i].terms() {
                        if t == &self.leads[i] {
                            continue;
                        }
                        let mut nw = Vec::with_capacity(left.len() + t.len() + right.len());
                        nw.extend_from_slice(left);
                        nw.extend_from_slice(&t.0);
                        nw.extend_from_slice(right);
                        let key = (wt, Word(nw));
                        let delta = -(&c * a);
                        match work.get_mut(&key) {
                            Some(x) => {
                                *x = &*x + &delta;
                                if x.is_zero() {
                                    work.remove(&key);
                                }
                            }
                            None => {
                                work.insert(key, delta);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal words of each weight 0..=cutoff, each list in increasing order.
    pub fn normal_words(&self) -> Vec<Vec<Word>> {
        let cutoff = self.cutoff as usize;
        let mut by_weight: Vec<Vec<Word>> = vec![Vec::new(); cutoff + 1];
        by_weight[0].push(Word::empty());
        for d in 1..=cutoff {
            let mut cur = Vec::new();
            for (g, &wg) in self.weights.iter().enumerate() {
                let wg = wg as usize;
                if wg > d {
                    continue;
                }
                for u in &by_weight[d - wg] {
                    let mut v = u.0.clone();
                    v.push(g as u32);
                    if !self.has_lead_suffix(&v) {
                        cur.push(Word(v));
                    }
                }
            }
            cur.sort_unstable();
            by_weight[d] = cur;
        }
        by_weight
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::presentation::Generator;

    #[test]
    fn commutative_plane_has_one_element() {
        let q = FieldSpec::RATIONALS;
        let gens = vec![Generator::new("x", 1), Generator::new("y", 1)];
        let r = FreePoly::from_terms(
            q,
            [(Word(vec![1, 0]), q.one()), (Word(vec![0, 1]), q.from_i64(-1))],
        );
        let p = Presentation::new(q, gens, vec![r]).unwrap();
        let gb = GroebnerBasis::compute(&p, 6);
        assert_eq!(gb.elements().len(), 1);
        let nw = gb.normal_words();
        for d in 0..=6 {
            assert_eq!(nw[d].len(), d + 1);
        }
    }

    #[test]
    fn jordan_plane_normal_form() {
        // yx - xy - x^2: lead y x
        let q = FieldSpec::RATIONALS;
        let gens = vec![Generator::new("x", 1), Generator::new("y", 1)];
        let r = FreePoly::from_terms(
            q,
            [
                (Word(vec![1, 0]), q.one()),
                (Word(vec![0, 1]), q.from_i64(-1)),
                (Word(vec![0, 0]), q.from_i64(-1)),
            ],
        );
        let p = Presentation::new(q, gens, vec![r]).unwrap();
        let gb = GroebnerBasis::compute(&p, 5);
        let yx = FreePoly::monomial(q, Word(vec![1, 0]), q.one());
        let nf = gb.normal_form(&yx);
        assert_eq!(nf.coefficient(&Word(vec![0, 1])), q.one());
        assert_eq!(nf.coefficient(&Word(vec![0, 0])), q.one());
        assert_eq!(gb.normal_words()[4].len(), 5);
    }
}
