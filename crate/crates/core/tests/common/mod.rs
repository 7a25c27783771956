//! Shared fixtures and brute-force oracles for the integration tests. The
//! oracles deliberately avoid the library's search and canonical-form code.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use graded_core::algebra::{Chain, Rank};
use graded_core::logic::{Connective, Formula, Signature, Term, TruthConstant, ORDER_PREDICATE};
use graded_core::structure::GradedStructure;
use rand::Rng;

pub fn luk(n: usize) -> Arc<Chain> {
    Arc::new(Chain::lukasiewicz(n).unwrap())
}

pub fn godel(n: usize) -> Arc<Chain> {
    Arc::new(Chain::godel(n).unwrap())
}

pub fn boolean() -> Arc<Chain> {
    Arc::new(Chain::boolean())
}

/// The three-element uninorm chain with `1̄` in the middle.
pub fn u3() -> Arc<Chain> {
    Arc::new(Chain::from_table("u3", 3, &[vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]], 1, 0).unwrap())
}

/// A structure over `<` named `a, b, c, ...` from a row-major table.
pub fn order_structure(chain: &Arc<Chain>, table: &[Rank]) -> GradedStructure {
    let n = (table.len() as f64).sqrt().round() as usize;
    assert_eq!(n * n, table.len());
    GradedStructure::from_parts(
        chain.clone(),
        Arc::new(Signature::order()),
        (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect(),
        vec![table.to_vec()],
        vec![],
    )
    .unwrap()
}

pub fn random_structure<R: Rng>(rng: &mut R, chain: &Arc<Chain>, n: usize) -> GradedStructure {
    let table: Vec<Rank> = (0..n * n).map(|_| rng.gen_range(0..chain.size()) as Rank).collect();
    order_structure(chain, &table)
}

/// All permutations of `0..n`, by Heap's algorithm.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![];
    heap(n, &mut p, &mut out);
    out
}

/// The least relabelled table over all permutations.
fn brute_canonical(n: usize, table: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut t = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[p[a] * n + p[b]] = table[a * n + b];
                }
            }
            t
        })
        .min()
        .unwrap()
}

/// Number of isomorphism types of `n`-element structures over one binary
/// relation with values `0..values` that satisfy `keep`, counted by listing
/// every table and every relabelling.
pub fn brute_type_count(n: usize, values: usize, keep: impl Fn(usize, &[usize]) -> bool) -> usize {
    let perms = permutations(n);
    let cells = n * n;
    let mut seen = BTreeSet::new();
    let mut table = vec![0usize; cells];
    let total = values.pow(cells as u32);
    for code in 0..total {
        let mut c = code;
        for slot in table.iter_mut() {
            *slot = c % values;
            c /= values;
        }
        if keep(n, &table) {
            seen.insert(brute_canonical(n, &table, &perms));
        }
    }
    seen.len()
}

/// Crisp relation predicates on `n x n` 0/1 tables.
pub mod crisp {
    fn r(n: usize, t: &[usize], a: usize, b: usize) -> bool {
        t[a * n + b] == 1
    }

    pub fn reflexive(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| r(n, t, a, a))
    }

    pub fn irreflexive(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| !r(n, t, a, a))
    }

    pub fn symmetric(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| (0..n).all(|b| r(n, t, a, b) == r(n, t, b, a)))
    }

    pub fn transitive(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(r(n, t, a, b) && r(n, t, b, c)) || r(n, t, a, c)))
        })
    }

    pub fn antisymmetric(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| (0..n).all(|b| a == b || !(r(n, t, a, b) && r(n, t, b, a))))
    }

    pub fn total(n: usize, t: &[usize]) -> bool {
        (0..n).all(|a| (0..n).all(|b| r(n, t, a, b) || r(n, t, b, a)))
    }

    pub fn simple_graph(n: usize, t: &[usize]) -> bool {
        irreflexive(n, t) && symmetric(n, t)
    }

    pub fn preorder(n: usize, t: &[usize]) -> bool {
        reflexive(n, t) && transitive(n, t)
    }

    pub fn partial_order(n: usize, t: &[usize]) -> bool {
        preorder(n, t) && antisymmetric(n, t)
    }

    pub fn total_preorder(n: usize, t: &[usize]) -> bool {
        preorder(n, t) && total(n, t)
    }
}

/// Cumulative count of crisp types on `1..=max` elements.
pub fn crisp_count(max: usize, keep: impl Fn(usize, &[usize]) -> bool + Copy) -> usize {
    (1..=max).map(|n| brute_type_count(n, 2, keep)).sum()
}

pub const VARS: [&str; 3] = ["x", "y", "z"];

/// A random quantifier-free formula over `<` and the variables `x, y, z`.
pub fn random_qf_formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        if rng.gen_bool(0.15) {
            let c = [TruthConstant::Zero, TruthConstant::One, TruthConstant::Bot, TruthConstant::Top]
                [rng.gen_range(0..4)];
            return Formula::Const(c);
        }
        let x = VARS[rng.gen_range(0..3)];
        let y = VARS[rng.gen_range(0..3)];
        return Formula::atom(ORDER_PREDICATE, vec![Term::var(x), Term::var(y)]);
    }
    let op = [Connective::Meet, Connective::Join, Connective::Conj, Connective::Impl]
        [rng.gen_range(0..4)];
    Formula::binary(op, random_qf_formula(rng, depth - 1), random_qf_formula(rng, depth - 1))
}

/// Evaluates a quantifier-free formula by looking up atoms and folding the
/// connectives through the chain tables. `val` maps variables to elements.
pub fn fold_qf(m: &GradedStructure, phi: &Formula, val: &dyn Fn(&str) -> usize) -> Rank {
    let ch = m.chain();
    match phi {
        Formula::Atom { args, .. } => {
            let idx = |t: &Term| match t {
                Term::Var(v) => val(v),
                Term::App(..) => panic!("relational formulas only"),
            };
            m.rel(idx(&args[0]), idx(&args[1]))
        }
        Formula::Const(TruthConstant::Zero) => ch.zero(),
        Formula::Const(TruthConstant::One) => ch.one(),
        Formula::Const(TruthConstant::Bot) => ch.bot(),
        Formula::Const(TruthConstant::Top) => ch.top(),
        Formula::Binary(op, l, r) => {
            let (a, b) = (fold_qf(m, l, val), fold_qf(m, r, val));
            match op {
                Connective::Meet => a.min(b),
                Connective::Join => a.max(b),
                Connective::Conj => ch.conj(a, b),
                Connective::Impl => ch.res(a, b),
            }
        }
        Formula::Quant(..) => panic!("quantifier-free formulas only"),
    }
}

/// `m` restricted to the elements `image`, keeping their names, built
/// without the library's substructure code.
pub fn pull_back(m: &GradedStructure, image: &[usize]) -> GradedStructure {
    let k = image.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in image {
        for &b in image {
            table.push(m.rel(a, b));
        }
    }
    GradedStructure::from_parts(
        m.chain_arc().clone(),
        m.signature_arc().clone(),
        image.iter().map(|&i| format!("p{i}")).collect(),
        vec![table],
        vec![],
    )
    .unwrap()
}
