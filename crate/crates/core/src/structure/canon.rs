//! Canonical forms by permutation minimization.
//!
//! Elements are first sorted by an isomorphism-invariant profile; only
//! permutations that respect that order are tried, and a branch is cut as
//! soon as its serialized prefix exceeds the best one found so far.

use std::fmt;

use super::{decode_tuple, tuple_count, GradedStructure};
use crate::algebra::Rank;

/// A byte string that is equal for two structures (over the same chain and
/// signature) exactly when they are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(pub Vec<u8>);

impl CanonicalForm {
    /// Number of elements of the structure this form describes.
    pub fn size(&self) -> usize {
        self.0.first().copied().unwrap_or(0) as usize
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// All `k`-tuples over `0..=p` that contain `p`, in lexicographic order.
pub(crate) fn tuples_with_max(p: usize, k: usize) -> Vec<Vec<usize>> {
    (0..tuple_count(p + 1, k))
        .map(|t| decode_tuple(p + 1, k, t))
        .filter(|t| t.contains(&p))
        .collect()
}

fn element_profile(m: &GradedStructure, e: usize) -> Vec<u32> {
    let n = m.len();
    let q = m.chain().size();
    let mut out = Vec::new();
    for (p, sym) in m.signature().predicates().iter().enumerate() {
        let diag = vec![e; sym.arity];
        out.push(m.pred_value(p, &diag) as u32);
        for pos in 0..sym.arity {
            let mut hist = vec![0u32; q];
            for t in 0..tuple_count(n, sym.arity) {
                let args = decode_tuple(n, sym.arity, t);
                if args[pos] == e {
                    hist[m.pred_table(p)[t] as usize] += 1;
                }
            }
            out.extend(hist);
        }
    }
    for f in 0..m.signature().functions().len() {
        let ar = m.signature().functions()[f].arity;
        let fixed = ar > 0 && m.func_value(f, &vec![e; ar]) == e;
        out.push(fixed as u32);
        let preimages = m.func_table(f).iter().filter(|&&v| v == e).count();
        out.push(preimages as u32);
    }
    out
}

struct Search<'a> {
    m: &'a GradedStructure,
    // candidate elements for each position
    slots: Vec<Vec<usize>>,
    // per position, per predicate: tuples over positions whose max is that position
    chunks: Vec<Vec<(usize, Vec<Vec<usize>>)>>,
    perm: Vec<usize>,
    used: Vec<bool>,
    buf: Vec<u8>,
    best: Option<(Vec<u8>, Vec<usize>)>,
}

impl Search<'_> {
    fn chunk(&self, pos: usize, out: &mut Vec<u8>) {
        for (p, tuples) in &self.chunks[pos] {
            for t in tuples {
                let args: Vec<usize> = t.iter().map(|&i| self.perm[i]).collect();
                out.push(self.m.pred_value(*p, &args) as Rank);
            }
        }
    }

    fn leaf_tail(&self) -> Vec<u8> {
        let n = self.m.len();
        let mut pos_of = vec![0usize; n];
        for (pos, &e) in self.perm.iter().enumerate() {
            pos_of[e] = pos;
        }
        let mut out = Vec::new();
        for (f, sym) in self.m.signature().functions().iter().enumerate() {
            for t in 0..tuple_count(n, sym.arity) {
                let args: Vec<usize> = decode_tuple(n, sym.arity, t)
                    .into_iter()
                    .map(|i| self.perm[i])
                    .collect();
                out.push(pos_of[self.m.func_value(f, &args)] as u8);
            }
        }
        out
    }

    fn dfs(&mut self, pos: usize) {
        let n = self.m.len();
        if pos == n {
            let mut full = self.buf.clone();
            full.extend(self.leaf_tail());
            let better = match &self.best {
                None => true,
                Some((b, _)) => full < *b,
            };
            if better {
                self.best = Some((full, self.perm.clone()));
            }
            return;
        }
        let candidates = self.slots[pos].clone();
        for e in candidates {
            if self.used[e] {
                continue;
            }
            self.used[e] = true;
            self.perm.push(e);
            let start = self.buf.len();
            let mut chunk = Vec::new();
            self.chunk(pos, &mut chunk);
            self.buf.extend_from_slice(&chunk);
            let pruned = match &self.best {
                Some((b, _)) => self.buf.as_slice() > &b[..self.buf.len()],
                None => false,
            };
            if !pruned {
                self.dfs(pos + 1);
            }
            self.buf.truncate(start);
            self.perm.pop();
            self.used[e] = false;
        }
    }
}

fn minimize(m: &GradedStructure) -> (CanonicalForm, Vec<usize>) {
    let n = m.len();
    let mut profiles: Vec<(Vec<u32>, usize)> =
        (0..n).map(|e| (element_profile(m, e), e)).collect();
    profiles.sort();
    let mut slots = Vec::with_capacity(n);
    for i in 0..n {
        let key = &profiles[i].0;
        slots.push(
            profiles
                .iter()
                .filter(|(p, _)| p == key)
                .map(|&(_, e)| e)
                .collect(),
        );
    }
    let chunks = (0..n)
        .map(|pos| {
            m.signature()
                .predicates()
                .iter()
                .enumerate()
                .map(|(p, sym)| (p, tuples_with_max(pos, sym.arity)))
                .collect()
        })
        .collect();
    let mut header = vec![n as u8];
    for (profile, _) in &profiles {
        header.push(profile.len() as u8);
        for v in profile {
            header.extend_from_slice(&v.to_le_bytes());
        }
    }
    let mut search = Search {
        m,
        slots,
        chunks,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        buf: Vec::new(),
        best: None,
    };
    search.dfs(0);
    let (body, perm) = search.best.expect("at least one permutation");
    let mut bytes = header;
    bytes.extend(body);
    (CanonicalForm(bytes), perm)
}

/// Canonical form of `m`.
pub fn canonical_form(m: &GradedStructure) -> CanonicalForm {
    minimize(m).0
}

/// The canonical form together with an isomorphic copy of `m` whose universe
/// is listed in canonical order and named `e0, e1, ...`.
pub fn canonical_relabeling(m: &GradedStructure) -> (CanonicalForm, GradedStructure) {
    let (form, perm) = minimize(m);
    let copy = m
        .permuted(&perm)
        .renamed((0..m.len()).map(|i| format!("e{i}")).collect())
        .expect("generated names are valid");
    (form, copy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chain;
    use crate::logic::Signature;
    use std::sync::Arc;

    fn graph(chain: Chain, vals: &[Rank]) -> GradedStructure {
        let n = (vals.len() as f64).sqrt() as usize;
        GradedStructure::from_parts(
            Arc::new(chain),
            Arc::new(Signature::order()),
            (0..n).map(|i| format!("v{i}")).collect(),
            vec![vals.to_vec()],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn relabeled_copies_agree() {
        let m = graph(Chain::lukasiewicz(3).unwrap(), &[2, 1, 0, 0, 2, 1, 1, 0, 0]);
        let p = m.permuted(&[2, 0, 1]);
        assert_eq!(canonical_form(&m), canonical_form(&p));
        let (_, c1) = canonical_relabeling(&m);
        let (_, c2) = canonical_relabeling(&p);
        assert_eq!(c1, c2);
    }

    #[test]
    fn path_and_triangle_differ() {
        let path = graph(Chain::boolean(), &[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let tri = graph(Chain::boolean(), &[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert_ne!(canonical_form(&path), canonical_form(&tri));
    }

    #[test]
    fn changed_edge_value_differs() {
        let a = graph(Chain::lukasiewicz(3).unwrap(), &[0, 1, 1, 0]);
        let b = graph(Chain::lukasiewicz(3).unwrap(), &[0, 2, 1, 0]);
        assert_ne!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn tuples_by_maximum() {
        assert_eq!(tuples_with_max(0, 2), vec![vec![0, 0]]);
        assert_eq!(
            tuples_with_max(1, 2),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
    }
}
