use std::collections::BTreeMap;
use std::fmt;

use crate::exactla::{FieldSpec, Scalar};

/// A word in the generators, stored as generator indices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letter(g: u32) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0.iter().map(|&g| weights[g as usize]).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        // run-length encode into powers
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let g = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == g {
                j += 1;
            }
            let name = &names[g as usize];
            if j - i > 1 {
                parts.push(format!("{}^{}", name, j - i));
            } else {
                parts.push(name.clone());
            }
            i = j;
        }
        parts.join("*")
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|g| format!("x{}", g)).collect();
        write!(f, "{}", parts.join(""))
    }
}

/// Noncommutative polynomial: a finite map from words to nonzero scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct FreePoly {
    field: FieldSpec,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(field: FieldSpec) -> Self {
        FreePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(field: FieldSpec, word: Word, c: Scalar) -> Self {
        let mut p = FreePoly::zero(field);
        p.add_term(word, c);
        p
    }

    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = FreePoly::zero(field);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, Scalar> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(e) => {
                *e = &*e + &c;
                if e.is_zero() {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c);
            }
        }
    }

    pub fn add(&self, other: &FreePoly) -> FreePoly {
        let mut p = self.clone();
        for (w, c) in &other.terms {
            p.add_term(w.clone(), c.clone());
        }
        p
    }

    pub fn sub(&self, other: &FreePoly) -> FreePoly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return FreePoly::zero(self.field);
        }
        FreePoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &FreePoly) -> FreePoly {
        let mut p = FreePoly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                p.add_term(u.concat(v), a * b);
            }
        }
        p
    }

    /// left * self * right for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> FreePoly {
        FreePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (left.concat(w).concat(right), c.clone()))
                .collect(),
        }
    }

    /// Distinct weights of the terms.
    pub fn weights(&self, weights: &[u32]) -> Vec<u32> {
        let mut ws: Vec<u32> = self.terms.keys().map(|w| w.weight(weights)).collect();
        ws.sort_unstable();
        ws.dedup();
        ws
    }

    /// Largest term in the weight-then-lex order.
    pub fn leading(&self, weights: &[u32]) -> Option<(&Word, &Scalar)> {
        self.terms.iter().max_by(|a, b| {
            (a.0.weight(weights), a.0).cmp(&(b.0.weight(weights), b.0))
        })
    }

    pub fn make_monic(&self, weights: &[u32]) -> FreePoly {
        match self.leading(weights) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    pub fn reversed(&self) -> FreePoly {
        FreePoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.reversed(), c.clone()))
                .collect(),
        }
    }

    pub fn display(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = crate::exactla::rational_is_negative(c);
            let abs = if neg { -c } else { c.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let wd = w.display(names);
            if abs.is_one() {
                out.push_str(&wd);
            } else if w.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                out.push_str(&format!("{}*{}", abs, wd));
            }
        }
        out
    }
}

impl fmt::Debug for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| format!("{}*{:?}", c, w))
            .collect();
        write!(f, "{}", if parts.is_empty() { "0".to_string() } else { parts.join(" + ") })
    }
}
