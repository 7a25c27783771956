//! The random weighted graph built round by round from witness vertices.

use std::sync::Arc;

use crate::algebra::{Chain, Rank};
use crate::classes::k1_member;
use crate::logic::Signature;
use crate::structure::{subsets_up_to, GradedStructure};

use super::FraisseError;

/// Largest witness set `X` the builder and the checker will enumerate.
pub const MAX_WITNESS_SET: usize = 4;
/// Largest graph the builder will produce.
pub const MAX_WITNESS_VERTICES: usize = 100_000;

#[derive(Debug, Clone)]
pub struct RandomGraph {
    pub graph: GradedStructure,
    /// The round that added each vertex; the starting vertex has round 0.
    pub round_of: Vec<usize>,
}

impl RandomGraph {
    /// Indices of the vertices added in rounds `0..=round`.
    pub fn up_to_round(&self, round: usize) -> Vec<usize> {
        (0..self.round_of.len())
            .filter(|&v| self.round_of[v] <= round)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomGraphDefect {
    pub x: Vec<String>,
    pub f: Vec<Rank>,
}

impl RandomGraphDefect {
    pub fn render(&self) -> String {
        let pairs: Vec<String> = self
            .x
            .iter()
            .zip(&self.f)
            .map(|(a, r)| format!("{a}:{r}"))
            .collect();
        format!("no witness for f={{{}}}", pairs.join(","))
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn witness_count(current: usize, max_x: usize, values: usize) -> u128 {
    (1..=max_x.min(current))
        .map(|s| binomial(current, s).saturating_mul((values as u128).saturating_pow(s as u32)))
        .fold(0u128, u128::saturating_add)
}

// every map from a set of size `len` into the ranks of `chain`, in
// lexicographic order
fn all_maps(len: usize, size: usize) -> impl Iterator<Item = Vec<Rank>> {
    let total = size.pow(len as u32);
    (0..total).map(move |mut code| {
        let mut f = vec![0; len];
        for slot in f.iter_mut().rev() {
            *slot = (code % size) as Rank;
            code /= size;
        }
        f
    })
}

/// Starts from one vertex `w0`; round `r` adds, for every set `X` of
/// previously existing vertices with `1 <= |X| <= r` and every `f: X -> A`,
/// a fresh vertex joined to each `a` in `X` with weight `f(a)` and to every
/// other vertex and itself with weight bottom.
pub fn random_weighted_graph(chain: &Arc<Chain>, rounds: usize) -> Result<RandomGraph, FraisseError> {
    if rounds > MAX_WITNESS_SET {
        return Err(FraisseError::Cap(format!(
            "{rounds} rounds need witness sets larger than {MAX_WITNESS_SET}"
        )));
    }
    let size = chain.size();
    let bot = chain.bot();
    let mut round_of = vec![0usize];
    let mut edges: Vec<Vec<(usize, Rank)>> = vec![vec![]];
    for r in 1..=rounds {
        let current = round_of.len();
        let added = witness_count(current, r, size);
        if added.saturating_add(current as u128) > MAX_WITNESS_VERTICES as u128 {
            return Err(FraisseError::Cap(format!(
                "round {r} would exceed {MAX_WITNESS_VERTICES} vertices"
            )));
        }
        for x in subsets_up_to(current, r) {
            if x.is_empty() {
                continue;
            }
            for f in all_maps(x.len(), size) {
                let w = round_of.len();
                round_of.push(r);
                edges.push(vec![]);
                for (&a, &v) in x.iter().zip(&f) {
                    if v != bot {
                        edges[w].push((a, v));
                    }
                }
            }
        }
    }
    let n = round_of.len();
    let mut graph = GradedStructure::relational(
        chain.clone(),
        Arc::new(Signature::order()),
        (0..n).map(|i| format!("w{i}")).collect(),
        bot,
    )?;
    for (w, list) in edges.iter().enumerate() {
        for &(a, v) in list {
            graph.set_pred(0, &[w, a], v);
            graph.set_pred(0, &[a, w], v);
        }
    }
    Ok(RandomGraph { graph, round_of })
}

/// Every pair `(X, f)` with `X` drawn from `within` (all vertices when
/// `None`), `1 <= |X| <= max_x` and `f: X -> A` that has no witness
/// `w` outside `X` with `w < a` and `a < w` both valued `f(a)` on `X`.
pub fn check_random_graph_property(
    m: &GradedStructure,
    max_x: usize,
    within: Option<&[usize]>,
) -> Result<Vec<RandomGraphDefect>, FraisseError> {
    if !k1_member(m) {
        return Err(FraisseError::NotMember("not a weighted graph".into()));
    }
    if max_x > MAX_WITNESS_SET {
        return Err(FraisseError::Cap(format!(
            "witness sets above {MAX_WITNESS_SET} are not enumerated"
        )));
    }
    let pool: Vec<usize> = match within {
        Some(p) => p.to_vec(),
        None => (0..m.len()).collect(),
    };
    let size = m.chain().size();
    if witness_count(pool.len(), max_x, size) > MAX_WITNESS_VERTICES as u128 * 100 {
        return Err(FraisseError::Cap("too many witness requests".into()));
    }
    let mut defects = vec![];
    for xs in subsets_up_to(pool.len(), max_x) {
        if xs.is_empty() {
            continue;
        }
        let x: Vec<usize> = xs.iter().map(|&i| pool[i]).collect();
        for f in all_maps(x.len(), size) {
            let found = (0..m.len()).any(|w| {
                !x.contains(&w)
                    && x
                        .iter()
                        .zip(&f)
                        .all(|(&a, &v)| m.rel(w, a) == v && m.rel(a, w) == v)
            });
            if !found {
                defects.push(RandomGraphDefect {
                    x: x.iter().map(|&a| m.element(a).to_string()).collect(),
                    f,
                });
            }
        }
    }
    Ok(defects)
}
