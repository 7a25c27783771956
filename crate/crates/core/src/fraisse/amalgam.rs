use super::{FraisseError, VFormation};
use crate::algebra::Rank;
use crate::classes::{amalgamate, k0_member, k1_member, k2_member, k3_member, ClassSpec};
use crate::structure::{age, canonical_form, is_embedding, union_of_chain, GradedStructure, Morphism};

/// Most candidate completions [`search_amalgam`] will test.
pub const SEARCH_BUDGET: u64 = 4_000_000;

fn checked(
    vf: &VFormation,
    m: GradedStructure,
    class: &str,
    member: fn(&GradedStructure) -> bool,
) -> Result<GradedStructure, FraisseError> {
    if member(&m) && vf.is_amalgam(&m) {
        Ok(m)
    } else {
        Err(FraisseError::Verification {
            class: class.to_string(),
        })
    }
}

/// Union of two weighted graphs over their common base; mixed pairs get `⊥`.
pub fn amalgamate_k1(vf: &VFormation) -> Result<GradedStructure, FraisseError> {
    let (m, _) = vf.pushout(vf.left().chain().bot())?;
    checked(vf, m, "k1", k1_member)
}

/// Joint embedding of two pre-orders: disjoint union with every mixed pair
/// valued `0̄`.
pub fn amalgamate_k0_jep(
    a: &GradedStructure,
    b: &GradedStructure,
) -> Result<GradedStructure, FraisseError> {
    let vf = VFormation::disjoint(a, b)?;
    let (m, _) = vf.pushout(a.chain().zero())?;
    checked(&vf, m, "k0", k0_member)
}

/// Cross rule for filter orders: `a < b` gets `1̄` exactly when some base
/// element sits between them in the filter order of the arms, and `0̄`
/// otherwise.
pub fn amalgamate_k3(vf: &VFormation) -> Result<GradedStructure, FraisseError> {
    let ch = vf.left().chain();
    let (mut m, split) = vf.pushout(ch.zero())?;
    let (left, right) = (vf.left(), vf.right());
    let base: Vec<(usize, usize)> = vf
        .base()
        .elements()
        .iter()
        .map(|e| (left.index_of(e).unwrap(), right.index_of(e).unwrap()))
        .collect();
    let lf = |a: usize, b: usize| ch.in_filter(left.rel(a, b));
    let rf = |a: usize, b: usize| ch.in_filter(right.rel(a, b));
    for &l in &vf.left_only() {
        for r in vf.right_only() {
            let u = m.index_of(right.element(r)).expect("present");
            debug_assert!(u >= split);
            let up = base.iter().any(|&(xl, xr)| lf(l, xl) && rf(xr, r));
            let down = base.iter().any(|&(xl, xr)| rf(r, xr) && lf(xl, l));
            m.set_pred(0, &[l, u], if up { ch.one() } else { ch.zero() });
            m.set_pred(0, &[u, l], if down { ch.one() } else { ch.zero() });
        }
    }
    checked(vf, m, "k3", k3_member)
}

/// Block recipe for graded total pre-orders, without the search fallback.
///
/// Mixed pairs start at the least values that min-transitivity through the
/// base forces. Where neither direction of a mixed pair is then in the
/// filter, the earlier element gets `1̄` towards the later one. Elements are
/// placed by the summed ranks of the base elements below them (ascending),
/// then of those above them (descending), left arm first on ties. Finally
/// mixed values are raised to the least values min-transitivity forces and
/// the result is verified.
pub fn amalgamate_k2_recipe(vf: &VFormation) -> Result<GradedStructure, FraisseError> {
    let ch = vf.left().chain();
    let (mut m, split) = vf.pushout(ch.bot())?;
    let (left, right) = (vf.left(), vf.right());
    let base: Vec<usize> = vf
        .base()
        .elements()
        .iter()
        .map(|e| m.index_of(e).unwrap())
        .collect();
    let place = |m: &GradedStructure, x: usize, is_left: bool| {
        let below: usize = base.iter().map(|&b| m.rel(b, x) as usize).sum();
        let above: usize = base.iter().map(|&b| m.rel(x, b) as usize).sum();
        (below, std::cmp::Reverse(above), !is_left)
    };
    let left_only = vf.left_only();
    let right_only: Vec<usize> = vf
        .right_only()
        .into_iter()
        .map(|r| m.index_of(right.element(r)).unwrap())
        .collect();
    debug_assert!(left_only.iter().all(|&l| l < split) && left.len() == split);
    let through_base = |m: &GradedStructure, u: usize, v: usize| {
        base.iter()
            .map(|&b| m.rel(u, b).min(m.rel(b, v)))
            .max()
            .unwrap_or(ch.bot())
    };
    let mut cross = vec![];
    for &l in &left_only {
        for &u in &right_only {
            let lu = through_base(&m, l, u);
            let ul = through_base(&m, u, l);
            m.set_pred(0, &[l, u], lu);
            m.set_pred(0, &[u, l], ul);
            cross.push((l, u));
            cross.push((u, l));
        }
    }
    for &l in &left_only {
        for &u in &right_only {
            if ch.in_filter(ch.join(m.rel(l, u), m.rel(u, l))) {
                continue;
            }
            if place(&m, l, true) <= place(&m, u, false) {
                m.set_pred(0, &[l, u], ch.one().max(m.rel(l, u)));
            } else {
                m.set_pred(0, &[u, l], ch.one().max(m.rel(u, l)));
            }
        }
    }
    raise_to_closure(&mut m, &cross);
    checked(vf, m, "k2", k2_member)
}

/// Raises the listed entries until `R(u, v) >= min(R(u, w), R(w, v))` holds
/// for each of them and every `w`.
fn raise_to_closure(m: &mut GradedStructure, cells: &[(usize, usize)]) {
    let n = m.len();
    loop {
        let mut changed = false;
        for &(u, v) in cells {
            let current = m.rel(u, v);
            let forced: Rank = (0..n)
                .map(|w| m.rel(u, w).min(m.rel(w, v)))
                .max()
                .unwrap_or(current);
            if forced > current {
                m.set_pred(0, &[u, v], forced);
                changed = true;
            }
        }
        if !changed {
            return;
        }
    }
}

/// The block recipe, falling back to [`search_amalgam`] when its output is
/// not a member.
pub fn amalgamate_k2(vf: &VFormation) -> Result<GradedStructure, FraisseError> {
    amalgamate(&ClassSpec::k2(), vf).map(|(m, _)| m)
}

/// Result of an exhaustive amalgam search.
#[derive(Debug, Clone)]
pub enum SearchOutcome {
    Found(GradedStructure),
    None,
    Budget,
}

/// All injective partial matchings between `0..a` and `0..b`, by size.
fn matchings(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(
        i: usize,
        a: usize,
        b: usize,
        used: &mut Vec<bool>,
        cur: &mut Vec<(usize, usize)>,
        out: &mut Vec<Vec<(usize, usize)>>,
    ) {
        if i == a {
            out.push(cur.clone());
            return;
        }
        go(i + 1, a, b, used, cur, out);
        for j in 0..b {
            if !used[j] {
                used[j] = true;
                cur.push((i, j));
                go(i + 1, a, b, used, cur, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = vec![];
    go(0, a, b, &mut vec![false; b], &mut vec![], &mut out);
    out.sort_by_key(|m| m.len());
    out
}

/// Searches every completion of the mixed pairs on the union of the arms,
/// and then on the universes that also identify some left-only element with
/// a right-only one. The left arm keeps its names; identified right elements
/// take the name of their partner.
pub fn search_amalgam(
    vf: &VFormation,
    member: impl Fn(&GradedStructure) -> bool,
) -> SearchOutcome {
    let (left, right) = (vf.left(), vf.right());
    let ch = left.chain();
    let q = ch.size() as u64;
    let lo = vf.left_only();
    let ro = vf.right_only();
    let mut spent: u64 = 0;
    let mut budget_hit = false;
    for matching in matchings(lo.len(), ro.len()) {
        // where each right element lands in the candidate universe
        let mut names: Vec<String> = left.elements().to_vec();
        let mut rpos = vec![usize::MAX; right.len()];
        for (i, e) in right.elements().iter().enumerate() {
            if let Some(j) = left.index_of(e) {
                rpos[i] = j;
            }
        }
        for &(li, ri) in &matching {
            rpos[ro[ri]] = lo[li];
        }
        for &r in &ro {
            if rpos[r] == usize::MAX {
                rpos[r] = names.len();
                names.push(right.element(r).to_string());
            }
        }
        let n = names.len();
        let mut in_left = vec![false; n];
        (0..left.len()).for_each(|i| in_left[i] = true);
        let mut in_right = vec![false; n];
        rpos.iter().for_each(|&p| in_right[p] = true);
        let mut fixed: Vec<Option<Rank>> = vec![None; n * n];
        let mut consistent = true;
        for a in 0..left.len() {
            for b in 0..left.len() {
                fixed[a * n + b] = Some(left.rel(a, b));
            }
        }
        for a in 0..right.len() {
            for b in 0..right.len() {
                let cell = rpos[a] * n + rpos[b];
                let v = right.rel(a, b);
                match fixed[cell] {
                    Some(w) if w != v => consistent = false,
                    _ => fixed[cell] = Some(v),
                }
            }
        }
        if !consistent {
            continue;
        }
        let free: Vec<usize> = (0..n * n).filter(|&c| fixed[c].is_none()).collect();
        let count = q.checked_pow(free.len() as u32).unwrap_or(u64::MAX);
        if spent.saturating_add(count) > SEARCH_BUDGET {
            budget_hit = true;
            continue;
        }
        spent += count;
        let base_table: Vec<Rank> = fixed.iter().map(|v| v.unwrap_or(0)).collect();
        let mut m = match GradedStructure::from_parts(
            left.chain_arc().clone(),
            left.signature_arc().clone(),
            names,
            vec![base_table],
            vec![],
        ) {
            Ok(m) => m,
            Err(_) => return SearchOutcome::None,
        };
        let right_map = Morphism::new(rpos.clone());
        for code in 0..count {
            let mut c = code;
            for &cell in &free {
                m.set_pred(0, &[cell / n, cell % n], (c % q) as Rank);
                c /= q;
            }
            if member(&m)
                && is_embedding(left, &m, &Morphism::identity(left.len())).unwrap_or(false)
                && is_embedding(right, &m, &right_map).unwrap_or(false)
            {
                return SearchOutcome::Found(m);
            }
        }
    }
    if budget_hit {
        SearchOutcome::Budget
    } else {
        SearchOutcome::None
    }
}

/// Joint-embeds the members one after another into a growing structure and
/// returns the union of the resulting chain. Every member must then occur in
/// the age of the result.
pub fn thm1_union(
    spec: &ClassSpec,
    members: &[GradedStructure],
) -> Result<GradedStructure, FraisseError> {
    let first = members
        .first()
        .ok_or_else(|| FraisseError::NotMember("empty member list".into()))?;
    let rename = |m: &GradedStructure, start: usize| {
        m.renamed((start..start + m.len()).map(|i| format!("n{i}")).collect())
    };
    for m in members {
        if !spec.contains(m) {
            return Err(FraisseError::NotMember(format!("{m:?}")));
        }
    }
    let mut next = first.len();
    let mut chain = vec![rename(first, 0)?];
    for m in &members[1..] {
        let fresh = rename(m, next)?;
        next += m.len();
        let current = chain.last().expect("nonempty");
        let vf = VFormation::disjoint(current, &fresh)?;
        let (joint, _) = amalgamate(spec, &vf)?;
        chain.push(joint);
    }
    let union = union_of_chain(&chain)?;
    let k = members.iter().map(GradedStructure::len).max().unwrap_or(0);
    let types = age(&union, k);
    for m in members {
        if !types.contains(&canonical_form(m)) {
            return Err(FraisseError::AgeMismatch(format!(
                "{m:?} does not occur in the age of the union"
            )));
        }
    }
    Ok(union)
}
