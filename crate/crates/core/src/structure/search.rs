//! Backtracking search for embeddings.

use super::canon::tuples_with_max;
use super::{is_embedding, GradedStructure, Morphism};

struct Backtrack<'a> {
    src: &'a GradedStructure,
    tgt: &'a GradedStructure,
    // per source element, per predicate: tuples over source indices whose max is that element
    checks: Vec<Vec<(usize, Vec<Vec<usize>>)>>,
    fixed: &'a [Option<usize>],
    map: Vec<usize>,
    used: Vec<bool>,
    limit: usize,
    found: Vec<Morphism>,
}

impl Backtrack<'_> {
    fn consistent(&self, i: usize) -> bool {
        self.checks[i].iter().all(|(p, tuples)| {
            tuples.iter().all(|t| {
                let image: Vec<usize> = t.iter().map(|&a| self.map[a]).collect();
                self.src.pred_value(*p, t) == self.tgt.pred_value(*p, &image)
            })
        })
    }

    fn run(&mut self, i: usize) {
        if self.found.len() >= self.limit {
            return;
        }
        if i == self.src.len() {
            let m = Morphism::new(self.map.clone());
            // functions are only checked on complete maps
            if self.src.signature().is_relational()
                || is_embedding(self.src, self.tgt, &m).unwrap_or(false)
            {
                self.found.push(m);
            }
            return;
        }
        let candidates: Vec<usize> = match self.fixed.get(i).copied().flatten() {
            Some(j) => vec![j],
            None => (0..self.tgt.len()).collect(),
        };
        for j in candidates {
            if j >= self.tgt.len() || self.used[j] {
                continue;
            }
            self.used[j] = true;
            self.map.push(j);
            if self.consistent(i) {
                self.run(i + 1);
            }
            self.map.pop();
            self.used[j] = false;
            if self.found.len() >= self.limit {
                return;
            }
        }
    }
}

fn search(
    src: &GradedStructure,
    tgt: &GradedStructure,
    fixed: &[Option<usize>],
    limit: usize,
) -> Vec<Morphism> {
    if src.same_setting(tgt).is_err() || src.len() > tgt.len() || limit == 0 {
        return vec![];
    }
    let checks = (0..src.len())
        .map(|i| {
            src.signature()
                .predicates()
                .iter()
                .enumerate()
                .map(|(p, sym)| (p, tuples_with_max(i, sym.arity)))
                .collect()
        })
        .collect();
    let mut bt = Backtrack {
        src,
        tgt,
        checks,
        fixed,
        map: Vec::with_capacity(src.len()),
        used: vec![false; tgt.len()],
        limit,
        found: vec![],
    };
    bt.run(0);
    bt.found
}

/// Embeddings of `src` into `tgt`, in lexicographic order of their maps, at
/// most `limit` of them.
pub fn find_embeddings(src: &GradedStructure, tgt: &GradedStructure, limit: usize) -> Vec<Morphism> {
    search(src, tgt, &[], limit)
}

/// First embedding of `src` into `tgt` that agrees with `fixed` wherever it is
/// `Some`.
pub fn extend_embedding(
    src: &GradedStructure,
    tgt: &GradedStructure,
    fixed: &[Option<usize>],
) -> Option<Morphism> {
    search(src, tgt, fixed, 1).into_iter().next()
}

/// An isomorphism from `a` onto `b`, if one exists.
pub fn is_isomorphic(a: &GradedStructure, b: &GradedStructure) -> Option<Morphism> {
    if a.len() != b.len() {
        return None;
    }
    find_embeddings(a, b, 1).into_iter().next()
}
