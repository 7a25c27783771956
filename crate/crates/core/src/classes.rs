//! The example classes over a single binary relation `<`, bounded-exhaustive
//! enumeration of their isomorphism types, and HP/JEP/AP checkers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{Chain, Rank};
use crate::fraisse::{
    amalgamate_k0_jep, amalgamate_k1, amalgamate_k2_recipe, amalgamate_k3, search_amalgam,
    FraisseError, SearchOutcome, VFormation,
};
use crate::logic::{evaluate, parse_formula, Assignment, Signature};
use crate::structure::{
    canonical_form, canonical_relabeling, find_embeddings, CanonicalForm, GradedStructure,
};

/// Largest number of candidate tables an enumeration may visit.
pub const ENUMERATION_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassError {
    #[error("enumeration needs {needed} candidates, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error("unknown class `{0}` (expected k0, k1, k2 or k3)")]
    UnknownClass(String),
    #[error(transparent)]
    Fraisse(#[from] FraisseError),
}

pub type Membership = Arc<dyn Fn(&GradedStructure) -> bool + Send + Sync>;
pub type Amalgamator = fn(&VFormation) -> Result<GradedStructure, FraisseError>;
pub type JointEmbedder =
    fn(&GradedStructure, &GradedStructure) -> Result<GradedStructure, FraisseError>;

/// A class of finite structures over one binary relation `<`, with optional
/// dedicated constructions for joint embedding and amalgamation.
#[derive(Clone)]
pub struct ClassSpec {
    pub name: String,
    pub signature: Arc<Signature>,
    pub membership: Membership,
    pub amalgamator: Option<Amalgamator>,
    pub joint_embedder: Option<JointEmbedder>,
}

impl fmt::Debug for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClassSpec")
            .field("name", &self.name)
            .field("amalgamator", &self.amalgamator.is_some())
            .field("joint_embedder", &self.joint_embedder.is_some())
            .finish()
    }
}

fn jep_from_amalgamator(amalgamate: Amalgamator) -> impl Fn(&GradedStructure, &GradedStructure) -> Result<GradedStructure, FraisseError> {
    move |a, b| amalgamate(&VFormation::disjoint(a, b)?)
}

impl ClassSpec {
    /// Graded pre-orders.
    pub fn k0() -> ClassSpec {
        ClassSpec {
            name: "k0".into(),
            signature: Arc::new(Signature::order()),
            membership: Arc::new(k0_member),
            amalgamator: None,
            joint_embedder: Some(amalgamate_k0_jep),
        }
    }

    /// Weighted graphs.
    pub fn k1() -> ClassSpec {
        ClassSpec {
            name: "k1".into(),
            signature: Arc::new(Signature::order()),
            membership: Arc::new(k1_member),
            amalgamator: Some(amalgamate_k1),
            joint_embedder: Some(|a, b| jep_from_amalgamator(amalgamate_k1)(a, b)),
        }
    }

    /// Graded total pre-orders.
    pub fn k2() -> ClassSpec {
        ClassSpec {
            name: "k2".into(),
            signature: Arc::new(Signature::order()),
            membership: Arc::new(k2_member),
            amalgamator: Some(amalgamate_k2_recipe),
            joint_embedder: Some(|a, b| jep_from_amalgamator(amalgamate_k2_recipe)(a, b)),
        }
    }

    /// Structures whose filter relation is a partial order.
    pub fn k3() -> ClassSpec {
        ClassSpec {
            name: "k3".into(),
            signature: Arc::new(Signature::order()),
            membership: Arc::new(k3_member),
            amalgamator: Some(amalgamate_k3),
            joint_embedder: Some(|a, b| jep_from_amalgamator(amalgamate_k3)(a, b)),
        }
    }

    pub fn by_name(name: &str) -> Result<ClassSpec, ClassError> {
        match name {
            "k0" => Ok(ClassSpec::k0()),
            "k1" => Ok(ClassSpec::k1()),
            "k2" => Ok(ClassSpec::k2()),
            "k3" => Ok(ClassSpec::k3()),
            other => Err(ClassError::UnknownClass(other.to_string())),
        }
    }

    /// A class given only by a membership predicate.
    pub fn custom(
        name: &str,
        membership: impl Fn(&GradedStructure) -> bool + Send + Sync + 'static,
    ) -> ClassSpec {
        ClassSpec {
            name: name.to_string(),
            signature: Arc::new(Signature::order()),
            membership: Arc::new(membership),
            amalgamator: None,
            joint_embedder: None,
        }
    }

    /// This class with one isomorphism type removed. Dedicated constructions
    /// are dropped since they may produce the removed type.
    pub fn without_type(&self, removed: &GradedStructure) -> ClassSpec {
        let form = canonical_form(removed);
        let base = self.membership.clone();
        ClassSpec::custom(&format!("{}-minus-type", self.name), move |m| {
            base(m) && canonical_form(m) != form
        })
    }

    pub fn contains(&self, m: &GradedStructure) -> bool {
        !m.is_empty() && *m.signature() == *self.signature && (self.membership)(m)
    }
}

fn is_order_structure(m: &GradedStructure) -> bool {
    *m.signature() == Signature::order()
}

fn reflexive(m: &GradedStructure) -> bool {
    let ch = m.chain();
    (0..m.len()).all(|a| ch.in_filter(m.rel(a, a)))
}

fn min_transitive(m: &GradedStructure) -> bool {
    let ch = m.chain();
    let n = m.len();
    (0..n).all(|a| {
        (0..n).all(|b| {
            (0..n).all(|c| ch.in_filter(ch.res(ch.meet(m.rel(a, b), m.rel(b, c)), m.rel(a, c))))
        })
    })
}

/// Loops in the filter, and `(a<b ∧ b<c) → a<c` in the filter.
pub fn k0_member(m: &GradedStructure) -> bool {
    is_order_structure(m) && reflexive(m) && min_transitive(m)
}

/// Loops strictly below `1̄`, and `a<b → b<a` in the filter.
pub fn k1_member(m: &GradedStructure) -> bool {
    if !is_order_structure(m) {
        return false;
    }
    let ch = m.chain();
    let n = m.len();
    (0..n).all(|a| m.rel(a, a) < ch.one())
        && (0..n).all(|a| (0..n).all(|b| ch.in_filter(ch.res(m.rel(a, b), m.rel(b, a)))))
}

/// Pre-order conditions plus totality: `a<b ∨ b<a` in the filter.
pub fn k2_member(m: &GradedStructure) -> bool {
    if !k0_member(m) {
        return false;
    }
    let ch = m.chain();
    let n = m.len();
    (0..n).all(|a| (0..n).all(|b| ch.in_filter(ch.join(m.rel(a, b), m.rel(b, a)))))
}

/// Threshold conditions on the filter relation: reflexive, transitive and
/// antisymmetric.
pub fn k3_member(m: &GradedStructure) -> bool {
    if !is_order_structure(m) {
        return false;
    }
    let ch = m.chain();
    let n = m.len();
    let f = |a: usize, b: usize| ch.in_filter(m.rel(a, b));
    reflexive(m)
        && (0..n).all(|a| {
            (0..n).all(|b| !f(a, b) || (0..n).all(|c| !f(b, c) || f(a, c)))
        })
        && (0..n).all(|a| (0..n).all(|b| a == b || !(f(a, b) && f(b, a))))
}

/// Graded sentences that characterise a class over a finite chain, as
/// `(label, formula text)`. The threshold class has none.
pub fn class_sentences(class: &str) -> Vec<(&'static str, &'static str)> {
    const REFLEXIVE: (&str, &str) = ("reflexive", "forall x (x < x)");
    const TRANSITIVE: (&str, &str) = (
        "transitive",
        "forall x forall y forall z ((x < y & y < z) -> x < z)",
    );
    const SYMMETRIC: (&str, &str) = ("symmetric", "forall x forall y (x < y -> y < x)");
    const TOTAL: (&str, &str) = ("total", "forall x forall y (x < y | y < x)");
    match class {
        "k0" => vec![REFLEXIVE, TRANSITIVE],
        "k1" => vec![SYMMETRIC],
        "k2" => vec![REFLEXIVE, TRANSITIVE, TOTAL],
        _ => vec![],
    }
}

/// Evaluates the class sentences on `m`; each must land in the filter. For
/// `k1` the loop condition is checked as `(exists x (x < x)) -> d`, where `d`
/// is the predecessor of `1̄`.
pub fn sentences_hold(class: &str, m: &GradedStructure) -> bool {
    let ch = m.chain();
    let empty = Assignment::new();
    let sentences_ok = class_sentences(class).into_iter().all(|(_, text)| {
        let phi = parse_formula(text, m.signature()).expect("built-in sentence parses");
        evaluate(m, &phi, &empty).map(|v| ch.in_filter(v)).unwrap_or(false)
    });
    if class != "k1" {
        return sentences_ok;
    }
    let loops = parse_formula("exists x (x < x)", m.signature()).expect("parses");
    let worst = evaluate(m, &loops, &empty).unwrap_or(ch.top());
    let loops_ok = match ch.one().checked_sub(1) {
        Some(d) => ch.in_filter(ch.res(worst, d)),
        None => m.is_empty(),
    };
    sentences_ok && loops_ok
}

/// A member of a class up to isomorphism: its canonical form and a
/// representative whose elements are named `e0, e1, ...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassType {
    pub form: CanonicalForm,
    pub structure: GradedStructure,
}

/// Candidates visited by an enumeration up to `max_size`.
pub fn enumeration_cost(chain: &Chain, max_size: usize) -> u128 {
    (1..=max_size)
        .map(|s| (chain.size() as u128).saturating_pow((s * s) as u32))
        .fold(0u128, u128::saturating_add)
}

/// All isomorphism types of members with `1..=max_size` elements, ordered by
/// size and then canonical form.
pub fn enumerate_class(
    spec: &ClassSpec,
    chain: &Arc<Chain>,
    max_size: usize,
) -> Result<Vec<ClassType>, ClassError> {
    let needed = enumeration_cost(chain, max_size);
    if needed > ENUMERATION_BUDGET {
        return Err(ClassError::Budget {
            needed,
            budget: ENUMERATION_BUDGET,
        });
    }
    let q = chain.size() as u64;
    let mut out = Vec::new();
    for s in 1..=max_size {
        let cells = s * s;
        let total = q.pow(cells as u32);
        let names: Vec<String> = (0..s).map(|i| format!("e{i}")).collect();
        let found: BTreeMap<CanonicalForm, GradedStructure> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut table = vec![0 as Rank; cells];
                let mut c = code;
                for cell in table.iter_mut() {
                    *cell = (c % q) as Rank;
                    c /= q;
                }
                let m = GradedStructure::from_parts(
                    chain.clone(),
                    spec.signature.clone(),
                    names.clone(),
                    vec![table],
                    vec![],
                )
                .expect("ranks are in range");
                if spec.contains(&m) {
                    let (form, rep) = canonical_relabeling(&m);
                    Some((form, rep))
                } else {
                    None
                }
            })
            .collect();
        out.extend(
            found
                .into_iter()
                .map(|(form, structure)| ClassType { form, structure }),
        );
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Hp,
    Jep,
    Ap,
}

impl Property {
    pub fn name(self) -> &'static str {
        match self {
            Property::Hp => "HP",
            Property::Jep => "JEP",
            Property::Ap => "AP",
        }
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "hp" => Ok(Property::Hp),
            "jep" => Ok(Property::Jep),
            "ap" => Ok(Property::Ap),
            _ => Err(format!("unknown property `{s}` (expected hp, jep or ap)")),
        }
    }
}

/// A failed instance, rendered for display, with the structures involved.
#[derive(Debug, Clone)]
pub struct Counterexample {
    pub detail: String,
    pub structures: Vec<GradedStructure>,
}

#[derive(Debug, Clone)]
pub struct PropertyReport {
    pub property: Property,
    pub class: String,
    pub chain: String,
    pub k: usize,
    pub types: usize,
    pub instances: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Instances settled by the class's own construction.
    pub constructor_witnesses: usize,
    /// Instances that needed the exhaustive search.
    pub fallback_witnesses: usize,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    /// Share of witnessed instances that needed the search, in `[0, 1]`.
    pub fn fallback_rate(&self) -> f64 {
        let total = self.constructor_witnesses + self.fallback_witnesses;
        if total == 0 {
            0.0
        } else {
            self.fallback_witnesses as f64 / total as f64
        }
    }

    pub fn render(&self) -> String {
        let mut out = format!(
            "{} {} chain={} k={}: types={} instances={} constructor={} fallback={}\n",
            self.property.name(),
            self.class,
            self.chain,
            self.k,
            self.types,
            self.instances,
            self.constructor_witnesses,
            self.fallback_witnesses
        );
        if self.counterexamples.is_empty() {
            out.push_str("no counterexamples\n");
        } else {
            for c in &self.counterexamples {
                out.push_str("counterexample: ");
                out.push_str(&c.detail);
                out.push('\n');
            }
        }
        out
    }
}

fn describe(m: &GradedStructure) -> String {
    let n = m.len();
    let rows: Vec<String> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| m.rel(a, b).to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    format!("[{}]", rows.join(";"))
}

fn report(spec: &ClassSpec, chain: &Chain, property: Property, k: usize, types: usize) -> PropertyReport {
    PropertyReport {
        property,
        class: spec.name.clone(),
        chain: chain.name().to_string(),
        k,
        types,
        instances: 0,
        counterexamples: vec![],
        constructor_witnesses: 0,
        fallback_witnesses: 0,
    }
}

/// Every proper nonempty induced substructure of every enumerated member is a
/// member.
pub fn check_hp(spec: &ClassSpec, chain: &Arc<Chain>, k: usize) -> Result<PropertyReport, ClassError> {
    let types = enumerate_class(spec, chain, k)?;
    let mut rep = report(spec, chain, Property::Hp, k, types.len());
    for t in &types {
        let n = t.structure.len();
        for mask in 1u32..(1 << n) - 1 {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let sub = t.structure.induced(&subset);
            rep.instances += 1;
            if !spec.contains(&sub) {
                rep.counterexamples.push(Counterexample {
                    detail: format!(
                        "{} has non-member substructure {} on {{{}}}",
                        describe(&t.structure),
                        describe(&sub),
                        sub.elements().join(",")
                    ),
                    structures: vec![t.structure.clone(), sub],
                });
            }
        }
    }
    Ok(rep)
}

/// Checks that an amalgam candidate is a member containing both arms.
fn verified(spec: &ClassSpec, vf: &VFormation, m: &GradedStructure) -> bool {
    spec.contains(m) && vf.is_amalgam(m)
}

/// Amalgamates with the class construction, falling back to exhaustive search.
/// Returns the amalgam and whether the search was needed.
pub fn amalgamate(
    spec: &ClassSpec,
    vf: &VFormation,
) -> Result<(GradedStructure, bool), FraisseError> {
    let dedicated = if vf.base().is_empty() {
        spec.joint_embedder
            .map(|j| j(vf.left(), vf.right()))
            .or_else(|| spec.amalgamator.map(|a| a(vf)))
    } else {
        spec.amalgamator.map(|a| a(vf))
    };
    if let Some(Ok(m)) = dedicated {
        if verified(spec, vf, &m) {
            return Ok((m, false));
        }
    }
    match search_amalgam(vf, |m| spec.contains(m)) {
        SearchOutcome::Found(m) => Ok((m, true)),
        SearchOutcome::None => Err(FraisseError::NoAmalgam),
        SearchOutcome::Budget => Err(FraisseError::SearchBudget),
    }
}

fn witness_instance(
    spec: &ClassSpec,
    vf: &VFormation,
    rep: &mut PropertyReport,
    what: String,
    structures: Vec<GradedStructure>,
) {
    rep.instances += 1;
    match amalgamate(spec, vf) {
        Ok((_, false)) => rep.constructor_witnesses += 1,
        Ok((_, true)) => rep.fallback_witnesses += 1,
        Err(e) => rep.counterexamples.push(Counterexample {
            detail: format!("{what}: {e}"),
            structures,
        }),
    }
}

/// Every pair of enumerated members has a common extension in the class.
pub fn check_jep(spec: &ClassSpec, chain: &Arc<Chain>, k: usize) -> Result<PropertyReport, ClassError> {
    let types = enumerate_class(spec, chain, k)?;
    let mut rep = report(spec, chain, Property::Jep, k, types.len());
    for (i, a) in types.iter().enumerate() {
        for b in &types[i..] {
            let vf = VFormation::disjoint(&a.structure, &b.structure)?;
            let what = format!(
                "no joint extension of {} and {}",
                describe(&a.structure),
                describe(&b.structure)
            );
            witness_instance(
                spec,
                &vf,
                &mut rep,
                what,
                vec![a.structure.clone(), b.structure.clone()],
            );
        }
    }
    Ok(rep)
}

/// Every v-formation of enumerated members, over every pair of embeddings of
/// the base, has an amalgam in the class.
pub fn check_ap(spec: &ClassSpec, chain: &Arc<Chain>, k: usize) -> Result<PropertyReport, ClassError> {
    let types = enumerate_class(spec, chain, k)?;
    let mut rep = report(spec, chain, Property::Ap, k, types.len());
    for base in &types {
        let arms: Vec<(&ClassType, Vec<_>)> = types
            .iter()
            .filter(|t| t.structure.len() >= base.structure.len())
            .map(|t| (t, find_embeddings(&base.structure, &t.structure, usize::MAX)))
            .filter(|(_, e)| !e.is_empty())
            .collect();
        for (i, (m1, embs1)) in arms.iter().enumerate() {
            for (m2, embs2) in &arms[i..] {
                for e1 in embs1 {
                    for e2 in embs2 {
                        let vf = VFormation::from_embeddings(
                            &base.structure,
                            &m1.structure,
                            e1,
                            &m2.structure,
                            e2,
                        )?;
                        let what = format!(
                            "no amalgam of {} <- {} -> {} via {} and {}",
                            describe(&m1.structure),
                            describe(&base.structure),
                            describe(&m2.structure),
                            e1.render(&base.structure, &m1.structure),
                            e2.render(&base.structure, &m2.structure)
                        );
                        witness_instance(
                            spec,
                            &vf,
                            &mut rep,
                            what,
                            vec![
                                base.structure.clone(),
                                m1.structure.clone(),
                                m2.structure.clone(),
                            ],
                        );
                    }
                }
            }
        }
    }
    Ok(rep)
}

pub fn check_property(
    spec: &ClassSpec,
    chain: &Arc<Chain>,
    k: usize,
    property: Property,
) -> Result<PropertyReport, ClassError> {
    match property {
        Property::Hp => check_hp(spec, chain, k),
        Property::Jep => check_jep(spec, chain, k),
        Property::Ap => check_ap(spec, chain, k),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(chain: &Arc<Chain>, vals: [Rank; 4]) -> GradedStructure {
        GradedStructure::from_parts(
            chain.clone(),
            Arc::new(Signature::order()),
            vec!["a".into(), "b".into()],
            vec![vals.to_vec()],
            vec![],
        )
        .unwrap()
    }

    fn single(chain: &Arc<Chain>, loop_value: Rank) -> GradedStructure {
        GradedStructure::from_parts(
            chain.clone(),
            Arc::new(Signature::order()),
            vec!["a".into()],
            vec![vec![loop_value]],
            vec![],
        )
        .unwrap()
    }

    fn luk3() -> Arc<Chain> {
        Arc::new(Chain::lukasiewicz(3).unwrap())
    }

    #[test]
    fn preorder_membership() {
        let l = luk3();
        assert!(k0_member(&single(&l, 2)));
        assert!(!k0_member(&single(&l, 1)));
        // a<b = 2, b<a = 1: the triple (a, b, a) gives res(min(2, 1), 2) = 2
        let m = pair(&l, [2, 2, 1, 2]);
        let ch = m.chain();
        assert_eq!(ch.res(ch.meet(2, 1), 2), 2);
        // full scan: (b, a, b) needs res(min(1, 2), 2) = 2 as well
        assert!(k0_member(&m));
    }

    #[test]
    fn weighted_graph_membership() {
        let l = luk3();
        assert!(!k1_member(&pair(&l, [0, 1, 2, 0])));
        assert!(k1_member(&pair(&l, [0, 1, 1, 1])));
        assert!(!k1_member(&single(&l, 2)));
        let b = Arc::new(Chain::boolean());
        assert!(k1_member(&pair(&b, [0, 1, 1, 0])));
        assert!(!k1_member(&pair(&b, [0, 1, 0, 0])));
    }

    #[test]
    fn total_preorder_membership() {
        let l = luk3();
        assert!(k2_member(&single(&l, 2)));
        assert!(!k2_member(&pair(&l, [2, 0, 0, 2])));
        assert!(k2_member(&pair(&l, [2, 2, 0, 2])));
    }

    #[test]
    fn threshold_order_membership() {
        let l = luk3();
        assert!(k3_member(&pair(&l, [2, 2, 0, 2])));
        assert!(!k3_member(&pair(&l, [2, 2, 2, 2])));
        assert!(k3_member(&pair(&l, [2, 1, 0, 2])));
    }

    #[test]
    fn enumeration_boundaries() {
        let b = Arc::new(Chain::boolean());
        assert!(enumerate_class(&ClassSpec::k1(), &b, 0).unwrap().is_empty());
        let k1 = enumerate_class(&ClassSpec::k1(), &b, 3).unwrap();
        assert_eq!(k1.len(), 7);
        let too_big = enumerate_class(&ClassSpec::k1(), &Arc::new(Chain::lukasiewicz(5).unwrap()), 4);
        assert!(matches!(too_big, Err(ClassError::Budget { .. })));
    }

    #[test]
    fn broken_class_fails_hp() {
        let b = Arc::new(Chain::boolean());
        let spec = ClassSpec::k1().without_type(&single(&b, 0));
        let rep = check_hp(&spec, &b, 2).unwrap();
        assert!(!rep.passed());
    }

    #[test]
    fn sentences_agree_with_conditions() {
        let l = luk3();
        for name in ["k0", "k1", "k2"] {
            let spec = ClassSpec::by_name(name).unwrap();
            for t in enumerate_class(&ClassSpec::custom("all", |_| true), &l, 2).unwrap() {
                assert_eq!(
                    sentences_hold(name, &t.structure),
                    spec.contains(&t.structure),
                    "{name} on {:?}",
                    t.structure
                );
            }
        }
    }
}
