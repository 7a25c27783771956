//! The line-oriented structure file format.
//!
//! ```text
//! structure demo chain=luk:3
//! elements a b
//! default 0
//! < a a = 2
//! < a b = 1
//! < b b = 2
//! ```
//!
//! Signatures other than the single binary `<` are declared with
//! `predicate <name> <arity>` and `function <name> <arity>` lines before
//! `elements`; function tables are given in full as `f a b -> c`.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::path::Path;
use std::sync::Arc;

use super::{decode_tuple, tuple_count, GradedStructure, StructureError};
use crate::algebra::{Chain, ChainRef, Rank};
use crate::logic::Signature;

/// A parsed structure file.
#[derive(Debug, Clone)]
pub struct StructureFile {
    pub name: String,
    pub chain_ref: ChainRef,
    pub structure: GradedStructure,
}

fn perr(line: usize, msg: impl Into<String>) -> StructureError {
    StructureError::Parse(format!("line {line}: {}", msg.into()))
}

/// Parses a structure file. A relative chain file path in the header is
/// resolved against `base`.
pub fn parse_structure(text: &str, base: Option<&Path>) -> Result<StructureFile, StructureError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (hl, header) = lines
        .next()
        .ok_or_else(|| perr(1, "empty structure file"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let chain_tok = toks.get(2).and_then(|t| t.strip_prefix("chain="));
    let (name, chain_ref) = match (toks.as_slice(), chain_tok) {
        (["structure", name, _], Some(r)) => (
            name.to_string(),
            r.parse::<ChainRef>()
                .map_err(|e| perr(hl, e.to_string()))?,
        ),
        _ => return Err(perr(hl, "expected `structure <name> chain=<ref>`")),
    };
    let chain = Arc::new(
        chain_ref
            .resolve(base)
            .map_err(|e| perr(hl, e.to_string()))?,
    );

    let mut preds: Vec<(String, usize)> = vec![];
    let mut funcs: Vec<(String, usize)> = vec![];
    let mut elements: Option<Vec<String>> = None;
    let mut rest: Vec<(usize, &str)> = vec![];
    for (ln, line) in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [kw @ ("predicate" | "function"), name, arity] if elements.is_none() => {
                let arity: usize = arity
                    .parse()
                    .map_err(|_| perr(ln, format!("bad arity `{arity}`")))?;
                let list = if *kw == "predicate" {
                    &mut preds
                } else {
                    &mut funcs
                };
                list.push((name.to_string(), arity));
            }
            ["elements", names @ ..] if elements.is_none() => {
                elements = Some(names.iter().map(|s| s.to_string()).collect());
            }
            _ if elements.is_some() => rest.push((ln, line)),
            _ => return Err(perr(ln, format!("unexpected line `{line}`"))),
        }
    }
    let elements = elements.ok_or_else(|| perr(hl, "missing `elements` line"))?;
    let signature = if preds.is_empty() && funcs.is_empty() {
        Signature::order()
    } else {
        Signature::new(preds, funcs).map_err(|e| perr(hl, e.to_string()))?
    };
    let signature = Arc::new(signature);

    let mut default: Option<Rank> = None;
    let mut pred_lines = vec![];
    let mut func_lines = vec![];
    for (ln, line) in rest {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["default", r] if default.is_none() && pred_lines.is_empty() => {
                let r: usize = r.parse().map_err(|_| perr(ln, format!("bad rank `{r}`")))?;
                default = Some(chain.check_rank(r).map_err(|e| perr(ln, e.to_string()))?);
            }
            [sym, args @ .., "=", r] if signature.predicate(sym).is_some() => {
                pred_lines.push((ln, *sym, args.to_vec(), *r));
            }
            [sym, args @ .., "->", v] if signature.function(sym).is_some() => {
                func_lines.push((ln, *sym, args.to_vec(), *v));
            }
            _ => return Err(perr(ln, format!("unexpected line `{line}`"))),
        }
    }
    let n = elements.len();
    let default = match default {
        Some(d) => d,
        None if signature.predicates().is_empty() || n == 0 => 0,
        None => return Err(perr(hl, "missing `default <rank>` line")),
    };
    let index: BTreeMap<&str, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, e)| (e.as_str(), i))
        .collect();
    let lookup = |ln: usize, names: &[&str]| -> Result<Vec<usize>, StructureError> {
        names
            .iter()
            .map(|a| {
                index
                    .get(a)
                    .copied()
                    .ok_or_else(|| perr(ln, format!("unknown element `{a}`")))
            })
            .collect()
    };

    let mut pred_tables: Vec<Vec<Rank>> = signature
        .predicates()
        .iter()
        .map(|s| vec![default; tuple_count(n, s.arity)])
        .collect();
    for (ln, sym, args, r) in pred_lines {
        let (p, ar) = signature.predicate(sym).expect("matched above");
        if args.len() != ar {
            return Err(perr(ln, format!("`{sym}` expects {ar} arguments")));
        }
        let idx = lookup(ln, &args)?;
        let r: usize = r.parse().map_err(|_| perr(ln, format!("bad rank `{r}`")))?;
        let r = chain.check_rank(r).map_err(|e| perr(ln, e.to_string()))?;
        pred_tables[p][super::tuple_index(n, &idx)] = r;
    }

    let mut func_tables: Vec<Vec<Option<usize>>> = signature
        .functions()
        .iter()
        .map(|s| vec![None; tuple_count(n, s.arity)])
        .collect();
    for (ln, sym, args, v) in func_lines {
        let (f, ar) = signature.function(sym).expect("matched above");
        if args.len() != ar {
            return Err(perr(ln, format!("`{sym}` expects {ar} arguments")));
        }
        let idx = lookup(ln, &args)?;
        let v = lookup(ln, &[v])?[0];
        func_tables[f][super::tuple_index(n, &idx)] = Some(v);
    }
    let funcs = func_tables
        .into_iter()
        .zip(signature.functions())
        .map(|(table, sym)| {
            table
                .into_iter()
                .collect::<Option<Vec<usize>>>()
                .ok_or_else(|| perr(hl, format!("function `{}` is not total", sym.name)))
        })
        .collect::<Result<Vec<_>, _>>()?;

    let structure = GradedStructure::from_parts(chain, signature, elements, pred_tables, funcs)?;
    Ok(StructureFile {
        name,
        chain_ref,
        structure,
    })
}

/// Deterministic rendering: the default is the most frequent predicate value
/// (smallest on ties) and the remaining entries follow in table order.
pub fn write_structure(name: &str, chain_ref: &str, m: &GradedStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "structure {name} chain={chain_ref}");
    if *m.signature() != Signature::order() {
        for s in m.signature().predicates() {
            let _ = writeln!(out, "predicate {} {}", s.name, s.arity);
        }
        for s in m.signature().functions() {
            let _ = writeln!(out, "function {} {}", s.name, s.arity);
        }
    }
    out.push_str("elements");
    for e in m.elements() {
        out.push(' ');
        out.push_str(e);
    }
    out.push('\n');
    let default = most_frequent(m.chain(), m);
    if !m.signature().predicates().is_empty() {
        let _ = writeln!(out, "default {default}");
    }
    let n = m.len();
    for (p, sym) in m.signature().predicates().iter().enumerate() {
        for (t, &v) in m.pred_table(p).iter().enumerate() {
            if v != default {
                let args: Vec<&str> = decode_tuple(n, sym.arity, t)
                    .into_iter()
                    .map(|i| m.element(i))
                    .collect();
                let _ = writeln!(out, "{} {} = {v}", sym.name, args.join(" "));
            }
        }
    }
    for (f, sym) in m.signature().functions().iter().enumerate() {
        for (t, &v) in m.func_table(f).iter().enumerate() {
            let args: Vec<&str> = decode_tuple(n, sym.arity, t)
                .into_iter()
                .map(|i| m.element(i))
                .collect();
            let mut line = sym.name.clone();
            for a in args {
                line.push(' ');
                line.push_str(a);
            }
            let _ = writeln!(out, "{line} -> {}", m.element(v));
        }
    }
    out
}

fn most_frequent(chain: &Chain, m: &GradedStructure) -> Rank {
    let mut counts = vec![0usize; chain.size()];
    for p in 0..m.signature().predicates().len() {
        for &v in m.pred_table(p) {
            counts[v as usize] += 1;
        }
    }
    let best = counts.iter().copied().max().unwrap_or(0);
    counts.iter().position(|&c| c == best).unwrap_or(0) as Rank
}
