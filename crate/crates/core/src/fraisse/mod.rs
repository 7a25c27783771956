//! Amalgamation, the chain-union construction, limit stages, homogeneity
//! checks and the random weighted graph.

mod amalgam;
mod homogeneity;
mod limit;
mod random_graph;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::Rank;
use crate::classes::ClassError;
use crate::structure::{is_substructure, GradedStructure, Morphism, StructureError};

pub use amalgam::{
    amalgamate_k0_jep, amalgamate_k1, amalgamate_k2, amalgamate_k2_recipe, amalgamate_k3,
    search_amalgam, thm1_union, SearchOutcome, SEARCH_BUDGET,
};
pub use homogeneity::{
    automorphisms, back_and_forth_isomorphism, check_homogeneity, render_partial_iso, HomogeneityReport,
    PartialIso,
};
pub use limit::{
    build_limit, check_extension_property, replay, ExtensionDefect, LimitRun, TaskOrder,
    Transcript,
};
pub use random_graph::{
    check_random_graph_property, random_weighted_graph, RandomGraph, RandomGraphDefect,
    MAX_WITNESS_SET, MAX_WITNESS_VERTICES,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FraisseError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("invalid v-formation: {0}")]
    BadFormation(String),
    #[error("constructed {class} amalgam fails verification")]
    Verification { class: String },
    #[error("no amalgam exists on the searched universes")]
    NoAmalgam,
    #[error("amalgam search budget exhausted")]
    SearchBudget,
    #[error("structure is not in the class: {0}")]
    NotMember(String),
    #[error("limit stage {stage}: task {task} still unsatisfied")]
    Unsatisfied { stage: usize, task: usize },
    #[error("age check failed: {0}")]
    AgeMismatch(String),
    #[error("transcript: {0}")]
    Transcript(String),
    #[error("size cap exceeded: {0}")]
    Cap(String),
    #[error(transparent)]
    Class(Box<ClassError>),
}

impl From<ClassError> for FraisseError {
    fn from(e: ClassError) -> Self {
        match e {
            ClassError::Fraisse(inner) => inner,
            other => FraisseError::Class(Box::new(other)),
        }
    }
}

/// Names for the elements of `b` that avoid every name of `a`: clashing
/// names get `'` appended until free.
pub(crate) fn fresh_names(a: &GradedStructure, b: &GradedStructure) -> Vec<String> {
    let mut taken: BTreeSet<String> = a.elements().iter().cloned().collect();
    b.elements()
        .iter()
        .map(|e| {
            let mut name = e.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            name
        })
        .collect()
}

/// A base structure included by name in two arms whose other elements are
/// disjoint.
#[derive(Debug, Clone)]
pub struct VFormation {
    base: GradedStructure,
    left: GradedStructure,
    right: GradedStructure,
}

impl VFormation {
    pub fn new(
        base: GradedStructure,
        left: GradedStructure,
        right: GradedStructure,
    ) -> Result<VFormation, FraisseError> {
        if !is_substructure(&base, &left)? {
            return Err(FraisseError::BadFormation(
                "base is not a substructure of the left arm".into(),
            ));
        }
        if !is_substructure(&base, &right)? {
            return Err(FraisseError::BadFormation(
                "base is not a substructure of the right arm".into(),
            ));
        }
        let shared = left
            .elements()
            .iter()
            .filter(|e| right.index_of(e).is_some())
            .count();
        if shared != base.len() {
            return Err(FraisseError::BadFormation(
                "arms share elements outside the base".into(),
            ));
        }
        Ok(VFormation { base, left, right })
    }

    /// The v-formation over the empty base; clashing names in `b` are primed.
    pub fn disjoint(a: &GradedStructure, b: &GradedStructure) -> Result<VFormation, FraisseError> {
        let right = b.renamed(fresh_names(a, b))?;
        let base = a.induced(&[]);
        VFormation::new(base, a.clone(), right)
    }

    /// Turns embeddings `e1: base -> m1`, `e2: base -> m2` into inclusions by
    /// renaming: base elements become `m0, m1, ...`, the rest of the left arm
    /// `x<i>` and the rest of the right arm `y<i>`.
    pub fn from_embeddings(
        base: &GradedStructure,
        m1: &GradedStructure,
        e1: &Morphism,
        m2: &GradedStructure,
        e2: &Morphism,
    ) -> Result<VFormation, FraisseError> {
        let rename = |m: &GradedStructure, e: &Morphism, prefix: &str| {
            let mut names: Vec<String> = (0..m.len()).map(|j| format!("{prefix}{j}")).collect();
            for (i, &j) in e.map.iter().enumerate() {
                names[j] = format!("m{i}");
            }
            m.renamed(names)
        };
        let base = base.renamed((0..base.len()).map(|i| format!("m{i}")).collect())?;
        VFormation::new(base, rename(m1, e1, "x")?, rename(m2, e2, "y")?)
    }

    pub fn base(&self) -> &GradedStructure {
        &self.base
    }

    pub fn left(&self) -> &GradedStructure {
        &self.left
    }

    pub fn right(&self) -> &GradedStructure {
        &self.right
    }

    /// Left-arm indices outside the base.
    pub fn left_only(&self) -> Vec<usize> {
        (0..self.left.len())
            .filter(|&i| self.base.index_of(self.left.element(i)).is_none())
            .collect()
    }

    /// Right-arm indices outside the base.
    pub fn right_only(&self) -> Vec<usize> {
        (0..self.right.len())
            .filter(|&i| self.base.index_of(self.right.element(i)).is_none())
            .collect()
    }

    /// Whether both arms are substructures of `m` by name.
    pub fn is_amalgam(&self, m: &GradedStructure) -> bool {
        is_substructure(&self.left, m).unwrap_or(false)
            && is_substructure(&self.right, m).unwrap_or(false)
    }

    /// The union of the arms: left arm elements first, then the rest of the
    /// right arm. Pairs inside one arm keep their values; mixed pairs get
    /// `fill`. Also returns the first index of the right-only block.
    pub fn pushout(&self, fill: Rank) -> Result<(GradedStructure, usize), FraisseError> {
        let right_only = self.right_only();
        let split = self.left.len();
        let mut names: Vec<String> = self.left.elements().to_vec();
        names.extend(right_only.iter().map(|&i| self.right.element(i).to_string()));
        let mut m = GradedStructure::relational(
            self.left.chain_arc().clone(),
            self.left.signature_arc().clone(),
            names,
            fill,
        )?;
        // position in the union of each right arm element
        let rpos: Vec<usize> = (0..self.right.len())
            .map(|i| m.index_of(self.right.element(i)).expect("present"))
            .collect();
        for (p, sym) in self.left.signature().predicates().iter().enumerate() {
            if sym.arity != 2 {
                return Err(FraisseError::BadFormation(
                    "only binary relations are amalgamated".into(),
                ));
            }
            for a in 0..self.left.len() {
                for b in 0..self.left.len() {
                    m.set_pred(p, &[a, b], self.left.binary(p, a, b));
                }
            }
            for a in 0..self.right.len() {
                for b in 0..self.right.len() {
                    m.set_pred(p, &[rpos[a], rpos[b]], self.right.binary(p, a, b));
                }
            }
        }
        Ok((m, split))
    }
}
