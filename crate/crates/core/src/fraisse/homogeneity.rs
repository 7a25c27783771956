//! Homogeneity defects and back-and-forth isomorphism search.

use std::collections::{BTreeMap, BTreeSet};

use crate::structure::{extend_embedding, find_embeddings, subsets_up_to, GradedStructure, Morphism};

/// A partial isomorphism as sorted `(source, target)` index pairs.
pub type PartialIso = Vec<(usize, usize)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomogeneityReport {
    /// Partial isomorphisms between generated substructures that extend to
    /// no automorphism.
    pub defects: Vec<PartialIso>,
    /// One representative per orbit of defects under automorphisms on either
    /// side and inversion, with the orbit's defect count.
    pub classes: Vec<(PartialIso, usize)>,
}

impl HomogeneityReport {
    pub fn is_homogeneous(&self) -> bool {
        self.defects.is_empty()
    }
}

pub fn render_partial_iso(m: &GradedStructure, p: &PartialIso) -> String {
    let pairs: Vec<String> = p
        .iter()
        .map(|&(a, b)| format!("{}->{}", m.element(a), m.element(b)))
        .collect();
    format!("{{{}}}", pairs.join(","))
}

/// All automorphisms of `m`.
pub fn automorphisms(m: &GradedStructure) -> Vec<Morphism> {
    find_embeddings(m, m, usize::MAX)
}

fn orbit_key(p: &PartialIso, auts: &[Morphism]) -> PartialIso {
    let mut best: Option<PartialIso> = None;
    for s in auts {
        for t in auts {
            for inverted in [false, true] {
                let mut img: PartialIso = p
                    .iter()
                    .map(|&(a, b)| {
                        if inverted {
                            (s.map[b], t.map[a])
                        } else {
                            (s.map[a], t.map[b])
                        }
                    })
                    .collect();
                img.sort_unstable();
                if best.as_ref().is_none_or(|b| img < *b) {
                    best = Some(img);
                }
            }
        }
    }
    best.unwrap_or_default()
}

/// Every isomorphism between substructures generated by at most `k`
/// elements that does not extend to an automorphism of `m`.
pub fn check_homogeneity(m: &GradedStructure, k: usize) -> HomogeneityReport {
    let mut universes = BTreeSet::new();
    for s in subsets_up_to(m.len(), k) {
        if !s.is_empty() {
            universes.insert(m.closure(&s));
        }
    }
    let universes: Vec<Vec<usize>> = universes.into_iter().collect();
    let mut defects = vec![];
    for a in &universes {
        let sa = m.induced(a);
        for b in universes.iter().filter(|b| b.len() == a.len()) {
            let sb = m.induced(b);
            for iso in find_embeddings(&sa, &sb, usize::MAX) {
                let mut fixed = vec![None; m.len()];
                let mut pairs = PartialIso::new();
                for (i, &j) in iso.map.iter().enumerate() {
                    fixed[a[i]] = Some(b[j]);
                    pairs.push((a[i], b[j]));
                }
                if extend_embedding(m, m, &fixed).is_none() {
                    pairs.sort_unstable();
                    defects.push(pairs);
                }
            }
        }
    }
    defects.sort();
    let auts = automorphisms(m);
    let mut classes: BTreeMap<PartialIso, usize> = BTreeMap::new();
    for d in &defects {
        *classes.entry(orbit_key(d, &auts)).or_default() += 1;
    }
    HomogeneityReport {
        defects,
        classes: classes.into_iter().collect(),
    }
}

struct BackAndForth<'a> {
    m: &'a GradedStructure,
    n: &'a GradedStructure,
    fwd: Vec<Option<usize>>,
    back: Vec<Option<usize>>,
}

impl BackAndForth<'_> {
    // the pair (a, b) is compatible with every pair already chosen
    fn compatible(&self, a: usize, b: usize) -> bool {
        let (m, n) = (self.m, self.n);
        if m.rel(a, a) != n.rel(b, b) {
            return false;
        }
        self.fwd.iter().enumerate().all(|(x, y)| match y {
            Some(y) => m.rel(a, x) == n.rel(b, *y) && m.rel(x, a) == n.rel(*y, b),
            None => true,
        })
    }

    fn step(&mut self, forth: bool) -> bool {
        let next_m = self.fwd.iter().position(Option::is_none);
        let next_n = self.back.iter().position(Option::is_none);
        let (a_free, b_free) = match (next_m, next_n) {
            (None, None) => return true,
            (Some(a), None) => (Some(a), None),
            (Some(a), Some(_)) if forth => (Some(a), None),
            (_, Some(b)) => (None, Some(b)),
        };
        let pairs: Vec<(usize, usize)> = match (a_free, b_free) {
            (Some(a), _) => (0..self.n.len())
                .filter(|&b| self.back[b].is_none())
                .map(|b| (a, b))
                .collect(),
            (_, Some(b)) => (0..self.m.len())
                .filter(|&a| self.fwd[a].is_none())
                .map(|a| (a, b))
                .collect(),
            _ => unreachable!(),
        };
        for (a, b) in pairs {
            if self.compatible(a, b) {
                self.fwd[a] = Some(b);
                self.back[b] = Some(a);
                if self.step(!forth) {
                    return true;
                }
                self.fwd[a] = None;
                self.back[b] = None;
            }
        }
        false
    }
}

/// Builds an isomorphism by alternately extending a partial isomorphism to
/// the next unmatched element of `m` (forth) and of `n` (back), with
/// backtracking. Binary relational structures only.
pub fn back_and_forth_isomorphism(m: &GradedStructure, n: &GradedStructure) -> Option<Morphism> {
    if m.len() != n.len() || m.chain() != n.chain() || m.signature() != n.signature() {
        return None;
    }
    if !m.signature().is_relational() || m.signature().predicates().iter().any(|s| s.arity != 2) {
        return crate::structure::is_isomorphic(m, n);
    }
    if m.signature().predicates().len() != 1 {
        return crate::structure::is_isomorphic(m, n);
    }
    let mut bf = BackAndForth {
        m,
        n,
        fwd: vec![None; m.len()],
        back: vec![None; n.len()],
    };
    if bf.step(true) {
        Some(Morphism::new(bf.fwd.into_iter().map(|b| b.expect("total")).collect()))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Chain, Rank};
    use crate::logic::Signature;
    use std::sync::Arc;

    fn graph(vals: &[Rank]) -> GradedStructure {
        let n = (vals.len() as f64).sqrt() as usize;
        GradedStructure::from_parts(
            Arc::new(Chain::boolean()),
            Arc::new(Signature::order()),
            (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
            vec![vals.to_vec()],
            vec![],
        )
        .unwrap()
    }

    #[test]
    fn triangle_is_homogeneous() {
        let k3 = graph(&[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert!(check_homogeneity(&k3, 2).is_homogeneous());
    }

    #[test]
    fn path_has_one_defect_class() {
        let p = graph(&[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let rep = check_homogeneity(&p, 1);
        assert_eq!(rep.defects.len(), 4);
        assert_eq!(rep.classes.len(), 1);
        assert!(rep.defects.contains(&vec![(0, 1)]));
        assert!(check_homogeneity(&p, 0).is_homogeneous());
    }

    #[test]
    fn back_and_forth_matches_search() {
        let p = graph(&[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        let t = graph(&[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        assert!(back_and_forth_isomorphism(&p, &t).is_none());
        let q = p.permuted(&[1, 2, 0]);
        let iso = back_and_forth_isomorphism(&p, &q).unwrap();
        assert!(crate::structure::is_embedding(&p, &q, &iso).unwrap());
    }
}
