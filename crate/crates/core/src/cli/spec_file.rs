//! Plain-text algebra specifications.
//!
//! ```text
//! # quantum plane with q = 2
//! [field]
//! 0
//! [generators]
//! x y            # weight 1 unless written name:weight
//! [relations]
//! x*y - 2*y*x    # one relation per line; `lhs = rhs` means lhs - rhs
//! ```
//!
//! Instead of `[generators]`, a `[construct]` section may name a built-in family:
//! `quantum_space n=2 q0_1=2 q1_2=1/3`, `quantum_plane q=2`, `kanazawa n=2 phi=1`,
//! `polynomial n=3`, `fermat_cubic`, `free n=2`. Relations listed alongside a constructor are
//! added to its relations and may use its generator names x0, x1, ...

use std::cell::RefCell;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactla::{FieldSpec, Scalar};
use crate::freealg::{
    fermat_cubic, free_algebra, kanazawa, kanazawa_product_condition, polynomial_ring, quantum_space, FreePoly, Generator, Presentation, QParams,
    Word,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Section {
    Field,
    Generators,
    Relations,
    Construct,
}

struct Located<T> {
    line: usize,
    col: usize,
    value: T,
}

struct Parser<'a> {
    file: &'a str,
    warnings: RefCell<Vec<String>>,
}

impl Parser<'_> {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { file: self.file.to_string(), line, col, msg: msg.into() }
    }
}

/// Parses a specification. `field` overrides the `[field]` section when given.
pub fn parse_spec(text: &str, file: &str, field: Option<FieldSpec>) -> Result<Presentation> {
    parse_spec_with_warnings(text, file, field).map(|(p, _)| p)
}

/// As `parse_spec`, also returning non-fatal findings such as a failed Kanazawa product condition.
pub fn parse_spec_with_warnings(
    text: &str,
    file: &str,
    field: Option<FieldSpec>,
) -> Result<(Presentation, Vec<String>)> {
    let p = Parser { file, warnings: RefCell::new(Vec::new()) };
    let mut section = None;
    let mut seen = Vec::new();
    let mut field_line: Option<Located<String>> = None;
    let mut generators: Vec<Located<String>> = Vec::new();
    let mut relations: Vec<Located<String>> = Vec::new();
    let mut construct: Option<Located<String>> = None;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            continue;
        }
        let col = body.find(trimmed).unwrap_or(0) + 1;
        if let Some(rest) = trimmed.strip_prefix('[') {
            let Some(name) = rest.strip_suffix(']') else {
                return Err(p.err(line, col, "unterminated section header"));
            };
            let s = match name.trim() {
                "field" => Section::Field,
                "generators" => Section::Generators,
                "relations" => Section::Relations,
                "construct" => Section::Construct,
                other => return Err(p.err(line, col + 1, format!("unknown section '{}'", other))),
            };
            if seen.contains(&s) {
                return Err(p.err(line, col, format!("section '{}' appears twice", name.trim())));
            }
            seen.push(s);
            section = Some(s);
            continue;
        }
        let entry = Located { line, col, value: trimmed.to_string() };
        match section {
            None => return Err(p.err(line, col, "content before the first section header")),
            Some(Section::Field) => {
                if field_line.is_some() {
                    return Err(p.err(line, col, "the field section takes a single line"));
                }
                field_line = Some(entry);
            }
            Some(Section::Generators) => generators.push(entry),
            Some(Section::Relations) => relations.push(entry),
            Some(Section::Construct) => {
                if construct.is_some() {
                    return Err(p.err(line, col, "only one constructor per file"));
                }
                construct = Some(entry);
            }
        }
    }

    let field = match (field, &field_line) {
        (Some(f), _) => f,
        (None, Some(l)) => parse_field(&l.value).map_err(|m| p.err(l.line, l.col, m))?,
        (None, None) => FieldSpec::RATIONALS,
    };

    let base = match &construct {
        Some(c) => {
            if let Some(g) = generators.first() {
                return Err(p.err(g.line, g.col, "generators cannot be declared together with a constructor"));
            }
            p.construct(c, field)?
        }
        None => {
            let mut gens: Vec<Generator> = Vec::new();
            for l in &generators {
                for (off, tok) in tokens_with_offsets(&l.value) {
                    let g = parse_generator(tok).map_err(|m| p.err(l.line, l.col + off, m))?;
                    if gens.iter().any(|h| h.name == g.name) {
                        return Err(p.err(l.line, l.col + off, format!("generator '{}' declared twice", g.name)));
                    }
                    gens.push(g);
                }
            }
            if gens.is_empty() {
                return Err(p.err(1, 1, "no generators declared"));
            }
            free_algebra(field, gens)?
        }
    };

    let names = base.names();
    let weights = base.weights();
    let mut rels: Vec<FreePoly> = base.relations().to_vec();
    for l in &relations {
        let poly = parse_relation(&l.value, &names, field).map_err(|(off, m)| p.err(l.line, l.col + off, m))?;
        if poly.is_zero() {
            return Err(p.err(l.line, l.col, "relation is identically zero"));
        }
        let ws = poly.weights(&weights);
        if ws.len() > 1 {
            return Err(p.err(
                l.line,
                l.col,
                format!("relation '{}' is not homogeneous: terms of weights {:?}", l.value, ws),
            ));
        }
        if ws[0] == 0 {
            return Err(p.err(l.line, l.col, format!("relation '{}' is a nonzero constant", l.value)));
        }
        rels.push(poly);
    }
    let pres = Presentation::new(field, base.generators().to_vec(), rels)?;
    Ok((pres, p.warnings.into_inner()))
}

/// Prints a specification that parses back to the same presentation.
pub fn print_spec(p: &Presentation) -> String {
    let names = p.names();
    let mut out = String::new();
    out.push_str("[field]\n");
    out.push_str(&format!("{}\n", p.field().characteristic()));
    out.push_str("[generators]\n");
    let gens: Vec<String> = p
        .generators()
        .iter()
        .map(|g| if g.weight == 1 { g.name.clone() } else { format!("{}:{}", g.name, g.weight) })
        .collect();
    out.push_str(&gens.join(" "));
    out.push('\n');
    if !p.relations().is_empty() {
        out.push_str("[relations]\n");
        for r in p.relations() {
            out.push_str(&r.display(&names));
            out.push('\n');
        }
    }
    out
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    let t = s.trim();
    let inner = t
        .strip_prefix("GF(")
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(t);
    if t == "QQ" {
        return Ok(FieldSpec::RATIONALS);
    }
    let c: u64 = inner.parse().map_err(|_| format!("expected 0, a prime, QQ or GF(p), found '{}'", t))?;
    FieldSpec::new(c).map_err(|e| e.to_string())
}

/// Field names accepted by `--field`.
pub fn parse_field_flag(s: &str) -> Result<FieldSpec> {
    parse_field(s).map_err(Error::Usage)
}

fn tokens_with_offsets(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        let sep = ch.is_whitespace() || ch == ',';
        match (sep, start) {
            (true, Some(st)) => {
                out.push((st, &s[st..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(st) = start {
        out.push((st, &s[st..]));
    }
    out
}

fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_generator(tok: &str) -> std::result::Result<Generator, String> {
    let (name, weight) = match tok.split_once(':') {
        Some((n, w)) => (n, w.parse::<u32>().map_err(|_| format!("bad weight '{}'", w))?),
        None => (tok, 1),
    };
    if !is_ident(name) {
        return Err(format!("'{}' is not a valid generator name", name));
    }
    if weight == 0 {
        return Err(format!("generator '{}' must have positive weight", name));
    }
    Ok(Generator::new(name, weight))
}

impl Parser<'_> {
    fn construct(&self, c: &Located<String>, field: FieldSpec) -> Result<Presentation> {
        let toks = tokens_with_offsets(&c.value);
        let (_, name) = toks[0];
        let mut params: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for &(off, tok) in &toks[1..] {
            let Some((k, v)) = tok.split_once('=') else {
                return Err(self.err(c.line, c.col + off, format!("expected key=value, found '{}'", tok)));
            };
            if params.insert(k.to_string(), (off, v.to_string())).is_some() {
                return Err(self.err(c.line, c.col + off, format!("parameter '{}' given twice", k)));
            }
        }
        let at = |off: usize| (c.line, c.col + off);
        let scalar = |key: &str| -> Result<Option<Scalar>> {
            match params.get(key) {
                None => Ok(None),
                Some((off, v)) => {
                    let (l, col) = at(*off);
                    field.parse_scalar(v).map(Some).map_err(|e| self.err(l, col, e.to_string()))
                }
            }
        };
        let count = |key: &str| -> Result<Option<usize>> {
            match params.get(key) {
                None => Ok(None),
                Some((off, v)) => {
                    let (l, col) = at(*off);
                    v.parse().map(Some).map_err(|_| self.err(l, col, format!("'{}' is not a count", v)))
                }
            }
        };
        let need_n = || -> Result<usize> {
            count("n")?.ok_or_else(|| self.err(c.line, c.col, format!("constructor '{}' needs n=...", name)))
        };
        let q_params = |n: usize| -> Result<QParams> {
            let mut q = QParams::new();
            for (k, (off, _)) in &params {
                let Some(idx) = k.strip_prefix('q').filter(|r| !r.is_empty()) else { continue };
                let (l, col) = at(*off);
                let (i, j) = parse_q_index(idx).ok_or_else(|| self.err(l, col, format!("bad q index '{}'", k)))?;
                if i >= j || j > n {
                    return Err(self.err(l, col, format!("q index ({}, {}) needs i < j <= {}", i, j, n)));
                }
                q.insert((i, j), scalar(k)?.expect("present"));
            }
            Ok(q)
        };
        let allowed: &[&str] = match name {
            "quantum_space" => &["n"],
            "kanazawa" => &["n", "phi"],
            "quantum_plane" => &["q"],
            "polynomial" | "free" => &["n"],
            "fermat_cubic" => &[],
            other => return Err(self.err(c.line, c.col, format!("unknown constructor '{}'", other))),
        };
        for (k, (off, _)) in &params {
            let q_like = k.starts_with('q') && k.len() > 1 && matches!(name, "quantum_space" | "kanazawa");
            if !allowed.contains(&k.as_str()) && !q_like {
                let (l, col) = at(*off);
                return Err(self.err(l, col, format!("constructor '{}' takes no parameter '{}'", name, k)));
            }
        }
        match name {
            "quantum_space" => {
                let n = need_n()?;
                quantum_space(field, n, &q_params(n)?)
            }
            "kanazawa" => {
                let n = need_n()?;
                let phi = scalar("phi")?.unwrap_or_else(|| field.zero());
                let q = q_params(n)?;
                for w in kanazawa_product_condition(field, n, &q)? {
                    self.warnings.borrow_mut().push(format!("{}:{}: {}", self.file, c.line, w));
                }
                kanazawa(field, n, &phi, &q)
            }
            "quantum_plane" => {
                let q = scalar("q")?.ok_or_else(|| self.err(c.line, c.col, "quantum_plane needs q=..."))?;
                crate::freealg::quantum_plane(field, q)
            }
            "polynomial" => polynomial_ring(field, need_n()?),
            "free" => {
                let n = need_n()?;
                free_algebra(field, (0..n).map(|i| Generator::new(format!("x{}", i), 1)).collect())
            }
            _ => fermat_cubic(field),
        }
    }
}

/// "0_1" or, for single digits, "01".
fn parse_q_index(s: &str) -> Option<(usize, usize)> {
    if let Some((a, b)) = s.split_once('_') {
        return Some((a.parse().ok()?, b.parse().ok()?));
    }
    let d: Vec<char> = s.chars().collect();
    if d.len() == 2 {
        return Some((d[0].to_digit(10)? as usize, d[1].to_digit(10)? as usize));
    }
    None
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> std::result::Result<Vec<(usize, Tok)>, (usize, String)> {
    let bytes: Vec<(usize, char)> = s.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let (off, ch) = bytes[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && (bytes[j].1.is_ascii_digit() || bytes[j].1 == '/') {
                j += 1;
            }
            let end = bytes.get(j).map_or(s.len(), |b| b.0);
            out.push((off, Tok::Num(s[off..end].to_string())));
            i = j;
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].1.is_ascii_alphanumeric() || bytes[j].1 == '_') {
                j += 1;
            }
            let end = bytes.get(j).map_or(s.len(), |b| b.0);
            out.push((off, Tok::Ident(s[off..end].to_string())));
            i = j;
        } else if "+-*^()=".contains(ch) {
            out.push((off, Tok::Op(ch)));
            i += 1;
        } else {
            return Err((off, format!("unexpected character '{}'", ch)));
        }
    }
    Ok(out)
}

struct PolyParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a [String],
    field: FieldSpec,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl PolyParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> PResult<FreePoly> {
        let mut acc = FreePoly::zero(self.field);
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            if self.eat('+') {
                negate = false;
            } else if self.eat('-') {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> PResult<FreePoly> {
        let mut acc = self.power()?;
        while self.eat('*') {
            let f = self.power()?;
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<FreePoly> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let off = self.offset();
        let Some(Tok::Num(n)) = self.peek().cloned() else {
            return Err((off, "expected an exponent".into()));
        };
        self.pos += 1;
        let e: u32 = n.parse().map_err(|_| (off, format!("bad exponent '{}'", n)))?;
        let mut acc = FreePoly::monomial(self.field, Word::empty(), self.field.one());
        for _ in 0..e {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> PResult<FreePoly> {
        let off = self.offset();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                let c = self.field.parse_scalar(&n).map_err(|e| (off, e.to_string()))?;
                Ok(FreePoly::monomial(self.field, Word::empty(), c))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self
                    .names
                    .iter()
                    .position(|n| *n == name)
                    .ok_or_else(|| (off, format!("unknown generator '{}'", name)))?;
                Ok(FreePoly::monomial(self.field, Word::letter(g as u32), self.field.one()))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err((self.offset(), "expected ')'".into()));
                }
                Ok(inner)
            }
            Some(t) => Err((off, format!("unexpected {:?}", t))),
            None => Err((off, "unexpected end of relation".into())),
        }
    }
}

/// Parses `expr` or `expr = expr`; the offset in an error is a byte offset into `s`.
pub fn parse_relation(s: &str, names: &[String], field: FieldSpec) -> PResult<FreePoly> {
    let toks = lex(s)?;
    let mut p = PolyParser { toks, pos: 0, end: s.len(), names, field };
    let lhs = p.expr()?;
    let poly = if p.eat('=') { lhs.sub(&p.expr()?) } else { lhs };
    if p.pos < p.toks.len() {
        return Err((p.offset(), "unexpected trailing input".into()));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{kanazawa, quantum_plane, QParams};

    const Q: FieldSpec = FieldSpec::RATIONALS;

    fn parse(text: &str) -> Result<Presentation> {
        parse_spec(text, "t.spec", None)
    }

    #[test]
    fn plain_quantum_plane() {
        let p = parse("# plane\n[field]\n0\n[generators]\nx0 x1\n[relations]\nx0*x1 - 2*x1*x0 # q = 2\n").unwrap();
        assert_eq!(p, quantum_plane(Q, Q.from_i64(2)).unwrap());
    }

    #[test]
    fn constructors_match_library() {
        let mut q = QParams::new();
        q.insert((0, 1), Q.parse_scalar("1/2").unwrap());
        q.insert((1, 2), Q.from_i64(-3));
        let p = parse("[construct]\nkanazawa n=2 phi=1 q01=1/2 q1_2=-3\n").unwrap();
        assert_eq!(p, kanazawa(Q, 2, &Q.one(), &q).unwrap());
        let f = parse("[field]\nGF(7)\n[construct]\nfermat_cubic\n").unwrap();
        assert_eq!(f.field().characteristic(), 7);
    }

    #[test]
    fn powers_parentheses_and_equations() {
        let p = parse("[generators]\nx y:2\n[relations]\n(x^2 - y)*x = x*(x^2 - y)\n").unwrap();
        assert_eq!(p.relations().len(), 1);
        assert_eq!(p.relation_weight(0), 3);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("[generators]\nx y\n[relations]\nx*y - z\n").unwrap_err();
        assert_eq!(e, Error::Parse { file: "t.spec".into(), line: 4, col: 7, msg: "unknown generator 'z'".into() });
        let e = parse("[generators]\nx y\n[relations]\n  x*y - x\n").unwrap_err();
        match e {
            Error::Parse { line: 4, col: 3, msg, .. } => assert!(msg.contains("not homogeneous"), "{}", msg),
            other => panic!("{:?}", other),
        }
        assert!(matches!(parse("x y\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("[bogus]\n"), Err(Error::Parse { line: 1, col: 2, .. })));
        assert!(matches!(parse("[construct]\nquantum_space q01=2\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn round_trip_examples() {
        let texts = [
            "[construct]\nkanazawa n=2 phi=1/3 q01=2 q02=1/2\n",
            "[field]\n5\n[construct]\nquantum_space n=2 q01=2 q12=3\n",
            "[generators]\na b:2\n[relations]\na*b - b*a\na^4 - 1/2*b^2\n",
        ];
        for t in texts {
            let p = parse(t).unwrap();
            let again = parse(&print_spec(&p)).unwrap();
            assert_eq!(p, again, "{}", print_spec(&p));
        }
    }

    #[test]
    fn field_override() {
        let p = parse_spec("[field]\n0\n[construct]\nquantum_plane q=3\n", "t", Some(FieldSpec::new(5).unwrap())).unwrap();
        assert_eq!(p.field().characteristic(), 5);
    }
}
