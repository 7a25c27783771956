//! Finite graded structures over a fixed chain, with substructures,
//! embeddings, isomorphism, ages and unions of chains.

mod canon;
mod io;
mod search;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::algebra::{Chain, Rank};
use crate::logic::Signature;

pub use canon::{canonical_form, canonical_relabeling, CanonicalForm};
pub use io::{parse_structure, write_structure, StructureFile};
pub use search::{extend_embedding, find_embeddings, is_isomorphic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("structures are valued in different chains")]
    ChainMismatch,
    #[error("structures have different signatures")]
    SignatureMismatch,
    #[error("invalid element name `{0}`")]
    BadName(String),
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("no element named `{0}`")]
    UnknownElement(String),
    #[error("rank {0} is not in the chain")]
    BadRank(usize),
    #[error("interpretation table for `{symbol}` has the wrong size")]
    BadTable { symbol: String },
    #[error("function `{0}` needs a non-empty universe")]
    EmptyFunction(String),
    /// Index `i` such that entry `i` is not a substructure of entry `i + 1`.
    #[error("chain premise fails at index {0}: not a substructure of its successor")]
    NotAChain(usize),
    #[error("the list of structures is empty")]
    EmptyList,
    #[error("free union needs a purely relational signature")]
    NotRelational,
    #[error("{0}")]
    Parse(String),
}

/// An injective-or-not map between universes, by element index.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Morphism {
    pub map: Vec<usize>,
}

impl Morphism {
    pub fn new(map: Vec<usize>) -> Morphism {
        Morphism { map }
    }

    pub fn identity(n: usize) -> Morphism {
        Morphism {
            map: (0..n).collect(),
        }
    }

    /// The inclusion of `sub` into `sup` by element names, if every name of
    /// `sub` occurs in `sup`.
    pub fn inclusion(sub: &GradedStructure, sup: &GradedStructure) -> Option<Morphism> {
        sub.elements()
            .iter()
            .map(|e| sup.index_of(e))
            .collect::<Option<Vec<_>>>()
            .map(Morphism::new)
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.map.iter().collect();
        set.len() == self.map.len()
    }

    /// `a -> b` pairs using element names.
    pub fn render(&self, src: &GradedStructure, tgt: &GradedStructure) -> String {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &j)| format!("{}->{}", src.element(i), tgt.element(j)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Number of `k`-tuples over `n` elements.
pub(crate) fn tuple_count(n: usize, k: usize) -> usize {
    n.pow(k as u32)
}

/// Row-major position of a tuple.
#[inline]
pub(crate) fn tuple_index(n: usize, args: &[usize]) -> usize {
    args.iter().fold(0, |acc, &a| acc * n + a)
}

pub(crate) fn decode_tuple(n: usize, k: usize, mut idx: usize) -> Vec<usize> {
    let mut out = vec![0; k];
    for slot in out.iter_mut().rev() {
        *slot = idx % n;
        idx /= n;
    }
    out
}

pub(crate) fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_alphanumeric() || matches!(c, '_' | '\'' | '.' | '-' | ':'))
}

/// A finite structure whose predicates take values in a chain and whose
/// functions are crisp.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedStructure {
    chain: Arc<Chain>,
    signature: Arc<Signature>,
    elements: Vec<String>,
    index: HashMap<String, usize>,
    preds: Vec<Vec<Rank>>,
    funcs: Vec<Vec<usize>>,
}

impl fmt::Debug for GradedStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedStructure[{}]{{", self.chain.name())?;
        write!(f, "{}", self.elements.join(" "))?;
        for (p, sym) in self.signature.predicates().iter().enumerate() {
            write!(f, "; {}:", sym.name)?;
            for v in &self.preds[p] {
                write!(f, "{v}")?;
            }
        }
        f.write_str("}")
    }
}

impl GradedStructure {
    /// A structure over a relational signature with every atomic value set
    /// to `default`.
    pub fn relational(
        chain: Arc<Chain>,
        signature: Arc<Signature>,
        elements: Vec<String>,
        default: Rank,
    ) -> Result<GradedStructure, StructureError> {
        if !signature.is_relational() {
            return Err(StructureError::NotRelational);
        }
        let n = elements.len();
        let preds = signature
            .predicates()
            .iter()
            .map(|s| vec![default; tuple_count(n, s.arity)])
            .collect();
        GradedStructure::from_parts(chain, signature, elements, preds, vec![])
    }

    /// Builds a structure from dense row-major tables, validating everything.
    pub fn from_parts(
        chain: Arc<Chain>,
        signature: Arc<Signature>,
        elements: Vec<String>,
        preds: Vec<Vec<Rank>>,
        funcs: Vec<Vec<usize>>,
    ) -> Result<GradedStructure, StructureError> {
        let n = elements.len();
        let mut index = HashMap::with_capacity(n);
        for (i, e) in elements.iter().enumerate() {
            if !valid_name(e) {
                return Err(StructureError::BadName(e.clone()));
            }
            if index.insert(e.clone(), i).is_some() {
                return Err(StructureError::DuplicateElement(e.clone()));
            }
        }
        if preds.len() != signature.predicates().len() || funcs.len() != signature.functions().len()
        {
            return Err(StructureError::SignatureMismatch);
        }
        for (table, sym) in preds.iter().zip(signature.predicates()) {
            if table.len() != tuple_count(n, sym.arity) {
                return Err(StructureError::BadTable {
                    symbol: sym.name.clone(),
                });
            }
            if let Some(&r) = table.iter().find(|&&r| !chain.contains(r)) {
                return Err(StructureError::BadRank(r as usize));
            }
        }
        for (table, sym) in funcs.iter().zip(signature.functions()) {
            if n == 0 && sym.arity == 0 {
                return Err(StructureError::EmptyFunction(sym.name.clone()));
            }
            if table.len() != tuple_count(n, sym.arity) || table.iter().any(|&e| e >= n) {
                return Err(StructureError::BadTable {
                    symbol: sym.name.clone(),
                });
            }
        }
        Ok(GradedStructure {
            chain,
            signature,
            elements,
            index,
            preds,
            funcs,
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn chain_arc(&self) -> &Arc<Chain> {
        &self.chain
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn signature_arc(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    #[inline]
    pub fn pred_value(&self, p: usize, args: &[usize]) -> Rank {
        self.preds[p][tuple_index(self.len(), args)]
    }

    /// Value of the binary predicate `p` at `(a, b)`.
    #[inline]
    pub fn binary(&self, p: usize, a: usize, b: usize) -> Rank {
        self.preds[p][a * self.len() + b]
    }

    /// Value of the first predicate at `(a, b)`; the classes use `<` here.
    #[inline]
    pub fn rel(&self, a: usize, b: usize) -> Rank {
        self.binary(0, a, b)
    }

    pub fn pred_table(&self, p: usize) -> &[Rank] {
        &self.preds[p]
    }

    pub fn func_table(&self, f: usize) -> &[usize] {
        &self.funcs[f]
    }

    #[inline]
    pub fn func_value(&self, f: usize, args: &[usize]) -> usize {
        self.funcs[f][tuple_index(self.len(), args)]
    }

    /// Panics on an out-of-range rank; use [`GradedStructure::try_set_pred`] for
    /// untrusted input.
    pub fn set_pred(&mut self, p: usize, args: &[usize], r: Rank) {
        assert!(self.chain.contains(r), "rank {r} not in chain");
        let n = self.len();
        self.preds[p][tuple_index(n, args)] = r;
    }

    pub fn try_set_pred(&mut self, p: usize, args: &[usize], r: usize) -> Result<(), StructureError> {
        let r = self
            .chain
            .check_rank(r)
            .map_err(|_| StructureError::BadRank(r))?;
        self.set_pred(p, args, r);
        Ok(())
    }

    pub fn set_func(&mut self, f: usize, args: &[usize], value: usize) {
        assert!(value < self.len());
        let n = self.len();
        self.funcs[f][tuple_index(n, args)] = value;
    }

    fn same_setting(&self, other: &GradedStructure) -> Result<(), StructureError> {
        if !(Arc::ptr_eq(&self.chain, &other.chain) || self.chain == other.chain) {
            return Err(StructureError::ChainMismatch);
        }
        if !(Arc::ptr_eq(&self.signature, &other.signature) || self.signature == other.signature)
        {
            return Err(StructureError::SignatureMismatch);
        }
        Ok(())
    }

    /// The substructure on `subset` (indices, kept in the given order). The
    /// subset must be closed under the functions.
    pub fn induced(&self, subset: &[usize]) -> GradedStructure {
        let n = self.len();
        let m = subset.len();
        let mut pos = vec![usize::MAX; n];
        for (new, &old) in subset.iter().enumerate() {
            pos[old] = new;
        }
        let preds = self
            .signature
            .predicates()
            .iter()
            .enumerate()
            .map(|(p, sym)| {
                (0..tuple_count(m, sym.arity))
                    .map(|t| {
                        let args: Vec<usize> = decode_tuple(m, sym.arity, t)
                            .into_iter()
                            .map(|i| subset[i])
                            .collect();
                        self.pred_value(p, &args)
                    })
                    .collect()
            })
            .collect();
        let funcs = self
            .signature
            .functions()
            .iter()
            .enumerate()
            .map(|(f, sym)| {
                (0..tuple_count(m, sym.arity))
                    .map(|t| {
                        let args: Vec<usize> = decode_tuple(m, sym.arity, t)
                            .into_iter()
                            .map(|i| subset[i])
                            .collect();
                        let v = self.func_value(f, &args);
                        assert!(pos[v] != usize::MAX, "subset not closed under functions");
                        pos[v]
                    })
                    .collect()
            })
            .collect();
        let elements = subset.iter().map(|&i| self.elements[i].clone()).collect();
        GradedStructure {
            chain: self.chain.clone(),
            signature: self.signature.clone(),
            index: HashMap::new(),
            elements,
            preds,
            funcs,
        }
        .reindexed()
    }

    /// Induced substructure on the named elements, in the given order.
    pub fn induced_by_names<S: AsRef<str>>(
        &self,
        names: &[S],
    ) -> Result<GradedStructure, StructureError> {
        let idx = names
            .iter()
            .map(|n| {
                self.index_of(n.as_ref())
                    .ok_or_else(|| StructureError::UnknownElement(n.as_ref().to_string()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.induced(&idx))
    }

    fn reindexed(mut self) -> GradedStructure {
        self.index = self
            .elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        self
    }

    /// Same structure with new element names (same order).
    pub fn renamed(&self, names: Vec<String>) -> Result<GradedStructure, StructureError> {
        assert_eq!(names.len(), self.len());
        GradedStructure::from_parts(
            self.chain.clone(),
            self.signature.clone(),
            names,
            self.preds.clone(),
            self.funcs.clone(),
        )
    }

    /// Reorders the universe: position `i` of the result is element `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> GradedStructure {
        assert_eq!(perm.len(), self.len());
        self.induced(perm)
    }

    /// Closure of `generators` under the function interpretations, as a set of
    /// indices in universe order.
    pub fn closure(&self, generators: &[usize]) -> Vec<usize> {
        let n = self.len();
        let mut inside = vec![false; n];
        for &g in generators {
            inside[g] = true;
        }
        if self.signature.is_relational() {
            return (0..n).filter(|&i| inside[i]).collect();
        }
        loop {
            let members: Vec<usize> = (0..n).filter(|&i| inside[i]).collect();
            let mut grew = false;
            for (f, sym) in self.signature.functions().iter().enumerate() {
                let m = members.len();
                for t in 0..tuple_count(m, sym.arity) {
                    let args: Vec<usize> = decode_tuple(m, sym.arity, t)
                        .into_iter()
                        .map(|i| members[i])
                        .collect();
                    let v = self.func_value(f, &args);
                    if !inside[v] {
                        inside[v] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                return members;
            }
        }
    }

    /// Whether the indices of `self` and the ordering of every table agree with
    /// `other` up to element naming.
    pub fn same_tables(&self, other: &GradedStructure) -> bool {
        self.preds == other.preds && self.funcs == other.funcs
    }
}

/// The smallest substructure containing `generators`.
pub fn generated_substructure<S: AsRef<str>>(
    m: &GradedStructure,
    generators: &[S],
) -> Result<GradedStructure, StructureError> {
    let idx = generators
        .iter()
        .map(|g| {
            m.index_of(g.as_ref())
                .ok_or_else(|| StructureError::UnknownElement(g.as_ref().to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.induced(&m.closure(&idx)))
}

/// Whether `map` is injective, commutes with the functions, and preserves
/// every atomic value exactly. By compositionality this is the same as
/// preserving every quantifier-free formula.
pub fn is_embedding(
    src: &GradedStructure,
    tgt: &GradedStructure,
    map: &Morphism,
) -> Result<bool, StructureError> {
    src.same_setting(tgt)?;
    if map.map.len() != src.len() || map.map.iter().any(|&j| j >= tgt.len()) {
        return Ok(false);
    }
    if !map.is_injective() {
        return Ok(false);
    }
    let n = src.len();
    for (p, sym) in src.signature.predicates().iter().enumerate() {
        for t in 0..tuple_count(n, sym.arity) {
            let args = decode_tuple(n, sym.arity, t);
            let image: Vec<usize> = args.iter().map(|&a| map.map[a]).collect();
            if src.preds[p][t] != tgt.pred_value(p, &image) {
                return Ok(false);
            }
        }
    }
    for (f, sym) in src.signature.functions().iter().enumerate() {
        for t in 0..tuple_count(n, sym.arity) {
            let args = decode_tuple(n, sym.arity, t);
            let image: Vec<usize> = args.iter().map(|&a| map.map[a]).collect();
            if map.map[src.funcs[f][t]] != tgt.func_value(f, &image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `m` is a substructure of `n`: its universe is a subset (by name) and the
/// inclusion is an embedding.
pub fn is_substructure(m: &GradedStructure, n: &GradedStructure) -> Result<bool, StructureError> {
    m.same_setting(n)?;
    match Morphism::inclusion(m, n) {
        Some(inc) => is_embedding(m, n, &inc),
        None => Ok(false),
    }
}

/// Canonical forms of all substructures generated by at most `k` elements.
pub fn age(m: &GradedStructure, k: usize) -> BTreeSet<CanonicalForm> {
    let mut seen_universes = BTreeSet::new();
    let mut out = BTreeSet::new();
    for subset in subsets_up_to(m.len(), k) {
        if subset.is_empty() {
            continue;
        }
        let universe = m.closure(&subset);
        if seen_universes.insert(universe.clone()) {
            out.insert(canonical_form(&m.induced(&universe)));
        }
    }
    out
}

/// All subsets of `0..n` with at most `k` elements, by size then
/// lexicographically.
pub fn subsets_up_to(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for size in 1..=k.min(n) {
        let mut cur: Vec<usize> = (0..size).collect();
        loop {
            out.push(cur.clone());
            // advance to the next combination
            let mut i = size;
            while i > 0 && cur[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            cur[i - 1] += 1;
            for j in i..size {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    out
}

/// Union of a chain `M_0 ⊆ M_1 ⊆ ...`, each a substructure of the next.
pub fn union_of_chain(list: &[GradedStructure]) -> Result<GradedStructure, StructureError> {
    let first = list.first().ok_or(StructureError::EmptyList)?;
    for (i, pair) in list.windows(2).enumerate() {
        if !is_substructure(&pair[0], &pair[1])? {
            return Err(StructureError::NotAChain(i));
        }
    }
    // Universes are nested, so the union's universe is the last one, listed
    // in order of first appearance along the chain.
    let mut names: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    for m in list {
        for e in m.elements() {
            if seen.insert(e.clone()) {
                names.push(e.clone());
            }
        }
    }
    let last = list.last().unwrap_or(first);
    let union = last.induced_by_names(&names)?;
    debug_assert!(list
        .iter()
        .all(|m| is_substructure(m, &union).unwrap_or(false)));
    Ok(union)
}

/// Disjoint union where every tuple mixing the two parts gets `cross`.
/// Elements of `b` whose names clash with `a` are renamed with a `'` suffix.
pub fn free_union(
    a: &GradedStructure,
    b: &GradedStructure,
    cross: Rank,
) -> Result<GradedStructure, StructureError> {
    a.same_setting(b)?;
    if !a.signature.is_relational() {
        return Err(StructureError::NotRelational);
    }
    if !a.chain.contains(cross) {
        return Err(StructureError::BadRank(cross as usize));
    }
    let mut taken: BTreeSet<String> = a.elements.iter().cloned().collect();
    let mut names = a.elements.clone();
    for e in &b.elements {
        let mut name = e.clone();
        while taken.contains(&name) {
            name.push('\'');
        }
        taken.insert(name.clone());
        names.push(name);
    }
    let na = a.len();
    let n = names.len();
    let mut u = GradedStructure::relational(a.chain.clone(), a.signature.clone(), names, cross)?;
    for (p, sym) in a.signature.predicates().iter().enumerate() {
        for t in 0..tuple_count(n, sym.arity) {
            let args = decode_tuple(n, sym.arity, t);
            if args.iter().all(|&x| x < na) {
                u.preds[p][t] = a.pred_value(p, &args);
            } else if args.iter().all(|&x| x >= na) {
                let inner: Vec<usize> = args.iter().map(|&x| x - na).collect();
                u.preds[p][t] = b.pred_value(p, &inner);
            }
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn luk3() -> Arc<Chain> {
        Arc::new(Chain::lukasiewicz(3).unwrap())
    }

    fn order_sig() -> Arc<Signature> {
        Arc::new(Signature::order())
    }

    pub(crate) fn graph(chain: Arc<Chain>, names: &[&str], vals: &[Rank]) -> GradedStructure {
        let n = names.len();
        assert_eq!(vals.len(), n * n);
        GradedStructure::from_parts(
            chain,
            order_sig(),
            names.iter().map(|s| s.to_string()).collect(),
            vec![vals.to_vec()],
            vec![],
        )
        .unwrap()
    }

    fn unary_fn_structure() -> GradedStructure {
        // f(a)=b, f(b)=b, f(c)=c
        let sig = Arc::new(Signature::new(vec![("P".into(), 1)], vec![("f".into(), 1)]).unwrap());
        GradedStructure::from_parts(
            luk3(),
            sig,
            vec!["a".into(), "b".into(), "c".into()],
            vec![vec![0, 1, 2]],
            vec![vec![1, 1, 2]],
        )
        .unwrap()
    }

    #[test]
    fn induced_and_perturbed_substructures() {
        let n = graph(luk3(), &["a", "b"], &[2, 1, 0, 2]);
        let m = n.induced_by_names(&["a"]).unwrap();
        assert!(is_substructure(&m, &n).unwrap());
        let mut bad = m.clone();
        bad.set_pred(0, &[0, 0], 1);
        assert!(!is_substructure(&bad, &n).unwrap());
        let other_chain = graph(Arc::new(Chain::godel(3).unwrap()), &["a"], &[2]);
        assert_eq!(
            is_substructure(&other_chain, &n),
            Err(StructureError::ChainMismatch)
        );
    }

    #[test]
    fn substructure_with_functions() {
        let n = unary_fn_structure();
        let m = generated_substructure(&n, &["a"]).unwrap();
        assert_eq!(m.elements(), &["a".to_string(), "b".to_string()]);
        assert!(is_substructure(&m, &n).unwrap());
        assert_eq!(generated_substructure(&n, &["c"]).unwrap().len(), 1);
        let all = generated_substructure(&n, &["a", "b", "c"]).unwrap();
        assert_eq!(all, n);
    }

    #[test]
    fn relational_generation_is_induced() {
        let n = graph(luk3(), &["a", "b"], &[2, 1, 0, 2]);
        let g = generated_substructure(&n, &["b"]).unwrap();
        assert_eq!(g.elements(), &["b".to_string()]);
        assert_eq!(g.rel(0, 0), 2);
    }

    #[test]
    fn embedding_checks() {
        let m = graph(luk3(), &["a", "b"], &[2, 1, 1, 2]);
        assert!(is_embedding(&m, &m, &Morphism::identity(2)).unwrap());
        assert!(!is_embedding(&m, &m, &Morphism::new(vec![0, 0])).unwrap());
        let src = graph(luk3(), &["a"], &[2]);
        let tgt = graph(luk3(), &["b"], &[1]);
        assert!(!is_embedding(&src, &tgt, &Morphism::new(vec![0])).unwrap());
    }

    #[test]
    fn chain_unions() {
        let g1 = graph(luk3(), &["a"], &[0]);
        let g2 = graph(luk3(), &["a", "b"], &[0, 1, 1, 0]);
        let g3 = graph(luk3(), &["a", "b", "c"], &[0, 1, 2, 1, 0, 0, 2, 0, 1]);
        assert_eq!(union_of_chain(std::slice::from_ref(&g1)).unwrap(), g1);
        assert_eq!(union_of_chain(&[g1.clone(), g2.clone()]).unwrap(), g2);
        let u = union_of_chain(&[g1.clone(), g2.clone(), g3.clone()]).unwrap();
        assert_eq!(u, g3);
        for m in [&g1, &g2, &g3] {
            assert!(is_substructure(m, &u).unwrap());
        }
        let broken = graph(luk3(), &["a", "b"], &[0, 2, 1, 0]);
        assert_eq!(
            union_of_chain(&[g1, broken, g3]),
            Err(StructureError::NotAChain(1))
        );
        assert_eq!(union_of_chain(&[]), Err(StructureError::EmptyList));
    }

    #[test]
    fn free_unions() {
        let a = graph(luk3(), &["a"], &[2]);
        let b = graph(luk3(), &["b"], &[2]);
        let u = free_union(&a, &b, 0).unwrap();
        assert_eq!(u.len(), 2);
        assert_eq!((u.rel(0, 1), u.rel(1, 0), u.rel(0, 0), u.rel(1, 1)), (0, 0, 2, 2));
        let empty = graph(luk3(), &[], &[]);
        assert_eq!(free_union(&a, &empty, 0).unwrap(), a);
        let top = free_union(&a, &b, 2).unwrap();
        assert_eq!((top.rel(0, 1), top.rel(1, 0)), (2, 2));
        // clashing names are renamed
        let clash = free_union(&a, &a, 1).unwrap();
        assert_eq!(clash.elements(), &["a".to_string(), "a'".to_string()]);
        assert_eq!(
            free_union(&unary_fn_structure(), &unary_fn_structure(), 0),
            Err(StructureError::NotRelational)
        );
    }

    #[test]
    fn ages() {
        let b = Arc::new(Chain::boolean());
        let triangle = graph(b.clone(), &["a", "b", "c"], &[0, 1, 1, 1, 0, 1, 1, 1, 0]);
        let ag = age(&triangle, 2);
        assert_eq!(ag.len(), 2);
        assert!(ag.contains(&canonical_form(&graph(b.clone(), &["x"], &[0]))));
        assert!(ag.contains(&canonical_form(&graph(b.clone(), &["x", "y"], &[0, 1, 1, 0]))));
        let empty_rel = graph(b.clone(), &["a", "b"], &[0, 0, 0, 0]);
        assert_eq!(age(&empty_rel, 1).len(), 1);
        // k beyond the size: all induced substructures
        let path = graph(b, &["a", "b", "c"], &[0, 1, 0, 1, 0, 1, 0, 1, 0]);
        assert_eq!(age(&path, 5).len(), 4); // vertex, edge, non-edge, path
    }

    #[test]
    fn subset_enumeration() {
        let s = subsets_up_to(4, 2);
        assert_eq!(s.len(), 1 + 4 + 6);
        assert_eq!(s[5], vec![0, 1]);
        assert_eq!(subsets_up_to(2, 5).len(), 4);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            GradedStructure::relational(luk3(), order_sig(), vec!["a b".into()], 0),
            Err(StructureError::BadName(_))
        ));
        assert!(matches!(
            GradedStructure::relational(luk3(), order_sig(), vec!["a".into(), "a".into()], 0),
            Err(StructureError::DuplicateElement(_))
        ));
        assert!(matches!(
            GradedStructure::relational(luk3(), order_sig(), vec!["a".into()], 7),
            Err(StructureError::BadRank(7))
        ));
    }
}
