//! Module descriptions for `--module`.
//!
//! Graded modules are sums of `A` (the free module on a generator of degree 0), `A(k)` (on a
//! generator of degree -k), `quot(n)` (A / A_{>=n}) and `ideal(n)` (A_{>=n}), joined by `+`.
//! Bigraded modules over A ⊗ B are `free`, `trunc(n)` ((A⊗B) / (A⊗B)_{>=n,>=n}) or
//! `fin(n)` ((A⊗B) / (A_{>=n}⊗B + A⊗B_{>=n}), of finite length).

use std::sync::Arc;

use crate::bigr::{free_bimodule, truncated_free_bimodule, BiBiModule, BiWindow};
use crate::error::{Error, Result};
use crate::exactla::Subspace;
use crate::freealg::Algebra;
use crate::grmod::{free_module, truncated_free, truncated_quotient, DegreeWindow, WindowedModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Summand {
    Free(i64),
    Quotient(i64),
    Ideal(i64),
}

impl Summand {
    /// Lowest degree in which the summand can be nonzero.
    pub fn lowest_degree(self) -> i64 {
        match self {
            Summand::Free(k) => -k,
            Summand::Quotient(_) => 0,
            Summand::Ideal(n) => n.max(0),
        }
    }
}

fn call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)?.trim().strip_prefix('(')?.strip_suffix(')').map(str::trim)
}

fn int(s: &str, whole: &str) -> Result<i64> {
    s.parse().map_err(|_| Error::Usage(format!("bad integer in module term '{}'", whole)))
}

pub fn parse_graded(s: &str) -> Result<Vec<Summand>> {
    let mut out = Vec::new();
    for raw in s.split('+') {
        let t = raw.trim();
        let summand = if t == "A" {
            Summand::Free(0)
        } else if let Some(k) = call(t, "A") {
            Summand::Free(int(k, t)?)
        } else if let Some(n) = call(t, "quot") {
            Summand::Quotient(int(n, t)?)
        } else if let Some(n) = call(t, "ideal") {
            Summand::Ideal(int(n, t)?)
        } else {
            return Err(Error::Usage(format!(
                "unknown module term '{}': expected A, A(k), quot(n) or ideal(n)",
                t
            )));
        };
        out.push(summand);
    }
    Ok(out)
}

pub fn build_graded(alg: &Arc<Algebra>, summands: &[Summand], window: DegreeWindow) -> Result<WindowedModule> {
    let mut acc = WindowedModule::zero(alg.clone(), window);
    for &s in summands {
        let m = match s {
            Summand::Free(k) => free_module(alg.clone(), &[k], window)?,
            Summand::Quotient(n) => truncated_quotient(alg.clone(), n, window)?,
            Summand::Ideal(n) => truncated_free(alg.clone(), n, window)?.0,
        };
        acc = acc.direct_sum(&m)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiSummand {
    Free,
    Truncated(i64),
    Finite(i64),
}

pub fn parse_bigraded(s: &str) -> Result<BiSummand> {
    let t = s.trim();
    if t == "free" {
        Ok(BiSummand::Free)
    } else if let Some(n) = call(t, "trunc") {
        Ok(BiSummand::Truncated(int(n, t)?))
    } else if let Some(n) = call(t, "fin") {
        Ok(BiSummand::Finite(int(n, t)?))
    } else {
        Err(Error::Usage(format!("unknown bimodule '{}': expected free, trunc(n) or fin(n)", t)))
    }
}

pub fn build_bigraded(a: &Arc<Algebra>, b: &Arc<Algebra>, m: BiSummand, window: BiWindow) -> Result<BiBiModule> {
    match m {
        BiSummand::Free => free_bimodule(a.clone(), b.clone(), window),
        BiSummand::Truncated(n) => truncated_free_bimodule(a.clone(), b.clone(), window, n),
        BiSummand::Finite(n) => {
            let free = free_bimodule(a.clone(), b.clone(), window)?;
            let field = free.field();
            let subs: Vec<Subspace> = window
                .cells()
                .into_iter()
                .map(|c| {
                    let d = free.dim(c).unwrap_or(0);
                    if c.0 >= n || c.1 >= n {
                        Subspace::full(field, d)
                    } else {
                        Subspace::zero(field, d)
                    }
                })
                .collect();
            Ok(free.quotient(&subs)?.0)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_sums() {
        assert_eq!(
            parse_graded("A + A(2) + quot(3) + ideal(1)").unwrap(),
            vec![Summand::Free(0), Summand::Free(2), Summand::Quotient(3), Summand::Ideal(1)]
        );
        assert_eq!(parse_graded("A(-1)").unwrap(), vec![Summand::Free(-1)]);
        assert!(parse_graded("B").is_err());
        assert_eq!(parse_bigraded("fin(2)").unwrap(), BiSummand::Finite(2));
        assert!(parse_bigraded("trunc(x)").is_err());
    }
}
