//! Stage-wise construction of approximations to a class limit.
//!
//! Stage `i + 1` is obtained from stage `i` by listing every triple
//! `(f, N, N')` with `N ⊆ N'` members of size at most the budget and
//! `f: N -> M_i` an embedding, then amalgamating each triple that does not
//! already extend, in FIFO order.

use std::sync::Arc;

use super::{FraisseError, VFormation};
use crate::algebra::{Chain, ChainRef, Rank};
use crate::classes::{amalgamate, enumerate_class, ClassSpec, ClassType};
use crate::logic::Signature;
use crate::structure::{
    extend_embedding, find_embeddings, is_substructure, subsets_up_to, GradedStructure,
};

/// Order in which the enumerated types are visited.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskOrder {
    Forward,
    Reverse,
}

impl TaskOrder {
    fn name(self) -> &'static str {
        match self {
            TaskOrder::Forward => "forward",
            TaskOrder::Reverse => "reverse",
        }
    }
}

/// Text log of a limit run; [`replay`] rebuilds the stages from it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transcript {
    pub lines: Vec<String>,
}

impl Transcript {
    pub fn render(&self) -> String {
        let mut out = self.lines.join("\n");
        out.push('\n');
        out
    }
}

#[derive(Debug, Clone)]
pub struct LimitRun {
    pub stages: Vec<GradedStructure>,
    pub transcript: Transcript,
    /// Tasks listed at each stage, and how many needed an amalgamation.
    pub tasks: Vec<(usize, usize)>,
}

/// One pending extension task.
#[derive(Debug, Clone)]
struct Task {
    // index into the enumerated types
    ty: usize,
    // indices of N inside N'
    sub: Vec<usize>,
    // images of those elements in the current structure
    image: Vec<String>,
}

fn inline(m: &GradedStructure) -> String {
    let vals: Vec<String> = m.pred_table(0).iter().map(|v| v.to_string()).collect();
    format!("elements={} rel={}", m.elements().join(","), vals.join(","))
}

fn parse_inline(
    chain: &Arc<Chain>,
    elements: &str,
    rel: &str,
) -> Result<GradedStructure, FraisseError> {
    let bad = |m: &str| FraisseError::Transcript(m.to_string());
    let names: Vec<String> = elements
        .strip_prefix("elements=")
        .ok_or_else(|| bad("expected elements="))?
        .split(',')
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect();
    let vals = rel
        .strip_prefix("rel=")
        .ok_or_else(|| bad("expected rel="))?
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|v| v.parse::<Rank>().map_err(|_| bad("bad rank")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GradedStructure::from_parts(
        chain.clone(),
        Arc::new(Signature::order()),
        names,
        vec![vals],
        vec![],
    )?)
}

fn list_tasks(types: &[ClassType], current: &GradedStructure) -> Vec<Task> {
    let mut tasks = vec![];
    for (ty, t) in types.iter().enumerate() {
        let np = &t.structure;
        for sub in subsets_up_to(np.len(), np.len() - 1) {
            if sub.is_empty() {
                continue;
            }
            let n = np.induced(&sub);
            for f in find_embeddings(&n, current, usize::MAX) {
                tasks.push(Task {
                    ty,
                    sub: sub.clone(),
                    image: f.map.iter().map(|&j| current.element(j).to_string()).collect(),
                });
            }
        }
    }
    tasks
}

fn task_extends(types: &[ClassType], task: &Task, m: &GradedStructure) -> bool {
    let np = &types[task.ty].structure;
    let mut fixed = vec![None; np.len()];
    for (&i, name) in task.sub.iter().zip(&task.image) {
        match m.index_of(name) {
            Some(j) => fixed[i] = Some(j),
            None => return false,
        }
    }
    extend_embedding(np, m, &fixed).is_some()
}

/// The right arm for a task: `N'` with `N` renamed onto its image and the
/// other elements given fresh names.
fn task_arm(
    types: &[ClassType],
    task: &Task,
    counter: &mut usize,
) -> Result<GradedStructure, FraisseError> {
    let np = &types[task.ty].structure;
    let mut names = vec![String::new(); np.len()];
    for (&i, name) in task.sub.iter().zip(&task.image) {
        names[i] = name.clone();
    }
    for name in names.iter_mut().filter(|n| n.is_empty()) {
        *name = format!("v{counter}");
        *counter += 1;
    }
    Ok(np.renamed(names)?)
}

fn amalgamate_into(
    spec: &ClassSpec,
    current: &GradedStructure,
    arm: &GradedStructure,
    image: &[String],
) -> Result<GradedStructure, FraisseError> {
    let base = current.induced_by_names(image)?;
    let vf = VFormation::new(base, current.clone(), arm.clone())?;
    let (m, _) = amalgamate(spec, &vf)?;
    if !is_substructure(current, &m)? {
        return Err(FraisseError::Verification {
            class: spec.name.clone(),
        });
    }
    Ok(m)
}

fn ordered_types(
    spec: &ClassSpec,
    chain: &Arc<Chain>,
    budget: usize,
    order: TaskOrder,
) -> Result<Vec<ClassType>, FraisseError> {
    let mut types = enumerate_class(spec, chain, budget)?;
    if order == TaskOrder::Reverse {
        types.reverse();
    }
    if types.is_empty() {
        return Err(FraisseError::NotMember("class has no members within the budget".into()));
    }
    Ok(types)
}

/// Builds stages `M_0 ⊆ ... ⊆ M_stages`. `M_0` is the first enumerated type;
/// new elements are named `v0, v1, ...`. Every task listed at stage `i` is
/// satisfied in stage `i + 1`, which is checked before returning.
pub fn build_limit(
    spec: &ClassSpec,
    chain: &Arc<Chain>,
    chain_ref: &ChainRef,
    stages: usize,
    budget: usize,
    order: TaskOrder,
) -> Result<LimitRun, FraisseError> {
    let types = ordered_types(spec, chain, budget, order)?;
    let mut counter = 0usize;
    let first = &types[0].structure;
    let names = (0..first.len())
        .map(|_| {
            counter += 1;
            format!("v{}", counter - 1)
        })
        .collect();
    let m0 = first.renamed(names)?;
    let mut lines = vec![
        "transcript 1".to_string(),
        format!("class {}", spec.name),
        format!("chain {chain_ref}"),
        format!("budget {budget}"),
        format!("order {}", order.name()),
        format!("init {}", inline(&m0)),
    ];
    let mut stages_out = vec![m0];
    let mut tasks_log = vec![];
    for stage in 0..stages {
        let mut current = stages_out[stage].clone();
        let tasks = list_tasks(&types, &current);
        let mut applied = 0;
        for (t, task) in tasks.iter().enumerate() {
            if task_extends(&types, task, &current) {
                continue;
            }
            let arm = task_arm(&types, task, &mut counter)?;
            current = amalgamate_into(spec, &current, &arm, &task.image)?;
            applied += 1;
            lines.push(format!(
                "amalgamate stage={} task={t} base={} arm {}",
                stage + 1,
                task.image.join(","),
                inline(&arm)
            ));
        }
        for (t, task) in tasks.iter().enumerate() {
            if !task_extends(&types, task, &current) {
                return Err(FraisseError::Unsatisfied {
                    stage: stage + 1,
                    task: t,
                });
            }
        }
        lines.push(format!(
            "stage {} tasks={} amalgamations={applied} size={}",
            stage + 1,
            tasks.len(),
            current.len()
        ));
        tasks_log.push((tasks.len(), applied));
        stages_out.push(current);
    }
    Ok(LimitRun {
        stages: stages_out,
        transcript: Transcript { lines },
        tasks: tasks_log,
    })
}

/// Rebuilds the stages recorded in a transcript by re-running each logged
/// amalgamation.
pub fn replay(text: &str) -> Result<Vec<GradedStructure>, FraisseError> {
    let bad = |m: String| FraisseError::Transcript(m);
    let mut spec = None;
    let mut chain: Option<Arc<Chain>> = None;
    let mut stages: Vec<GradedStructure> = vec![];
    let mut current: Option<GradedStructure> = None;
    for (ln, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())) {
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            [] => {}
            ["transcript", "1"] | ["budget", _] | ["order", _] => {}
            ["class", name] => spec = Some(ClassSpec::by_name(name)?),
            ["chain", r] => {
                let r: ChainRef = r.parse().map_err(|e| bad(format!("line {ln}: {e}")))?;
                chain = Some(Arc::new(
                    r.resolve(None).map_err(|e| bad(format!("line {ln}: {e}")))?,
                ));
            }
            ["init", els, rel] => {
                let ch = chain.as_ref().ok_or_else(|| bad(format!("line {ln}: no chain")))?;
                let m = parse_inline(ch, els, rel)?;
                stages.push(m.clone());
                current = Some(m);
            }
            ["amalgamate", _, _, base, "arm", els, rel] => {
                let ch = chain.as_ref().ok_or_else(|| bad(format!("line {ln}: no chain")))?;
                let spec = spec.as_ref().ok_or_else(|| bad(format!("line {ln}: no class")))?;
                let image: Vec<String> = base
                    .strip_prefix("base=")
                    .ok_or_else(|| bad(format!("line {ln}: expected base=")))?
                    .split(',')
                    .map(str::to_string)
                    .collect();
                let arm = parse_inline(ch, els, rel)?;
                let cur = current
                    .take()
                    .ok_or_else(|| bad(format!("line {ln}: no init")))?;
                current = Some(amalgamate_into(spec, &cur, &arm, &image)?);
            }
            ["stage", _, ..] => {
                let cur = current
                    .clone()
                    .ok_or_else(|| bad(format!("line {ln}: no init")))?;
                stages.push(cur);
            }
            _ => return Err(bad(format!("line {ln}: unexpected `{line}`"))),
        }
    }
    Ok(stages)
}

/// An unsatisfied triple: the type `N'` (index into the enumeration), the
/// elements of `N` inside it, and where `f` sends them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionDefect {
    pub extension: GradedStructure,
    pub sub: Vec<usize>,
    pub image: Vec<String>,
}

impl ExtensionDefect {
    pub fn render(&self) -> String {
        let pairs: Vec<String> = self
            .sub
            .iter()
            .zip(&self.image)
            .map(|(&i, img)| format!("{}->{img}", self.extension.element(i)))
            .collect();
        let n = self.extension.len();
        let rows: Vec<String> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.extension.rel(a, b).to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        format!("extension [{}] of {{{}}}", rows.join(";"), pairs.join(","))
    }
}

/// For every `N ⊆ N'` in the class with `|N'| <= k` and every embedding
/// `f: N -> m` (with image inside `restrict`, when given), checks that `f`
/// extends to an embedding of `N'`.
pub fn check_extension_property(
    m: &GradedStructure,
    spec: &ClassSpec,
    k: usize,
    restrict: Option<&[String]>,
) -> Result<Vec<ExtensionDefect>, FraisseError> {
    let types = enumerate_class(spec, m.chain_arc(), k)?;
    let allowed: Option<Vec<bool>> = restrict.map(|names| {
        let mut mask = vec![false; m.len()];
        for name in names {
            if let Some(i) = m.index_of(name) {
                mask[i] = true;
            }
        }
        mask
    });
    let mut defects = vec![];
    for task in list_tasks(&types, m) {
        if let Some(mask) = &allowed {
            if !task
                .image
                .iter()
                .all(|e| m.index_of(e).map(|i| mask[i]).unwrap_or(false))
            {
                continue;
            }
        }
        if !task_extends(&types, &task, m) {
            defects.push(ExtensionDefect {
                extension: types[task.ty].structure.clone(),
                sub: task.sub,
                image: task.image,
            });
        }
    }
    Ok(defects)
}
