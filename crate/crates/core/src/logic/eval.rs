use std::collections::BTreeMap;

use super::syntax::{Connective, Formula, Quantifier, Term, TruthConstant};
use super::LogicError;
use crate::algebra::Rank;
use crate::structure::GradedStructure;

/// A partial map from variables to universe elements (by index).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Assignment(BTreeMap<String, usize>);

impl Assignment {
    pub fn new() -> Assignment {
        Assignment::default()
    }

    pub fn get(&self, var: &str) -> Option<usize> {
        self.0.get(var).copied()
    }

    pub fn set(&mut self, var: &str, elem: usize) {
        self.0.insert(var.to_string(), elem);
    }

    /// `v[x -> a]`
    pub fn with(&self, var: &str, elem: usize) -> Assignment {
        let mut next = self.clone();
        next.set(var, elem);
        next
    }

    /// Builds an assignment from `x=a` pairs naming elements of `m`.
    pub fn from_names<'a>(
        m: &GradedStructure,
        pairs: impl IntoIterator<Item = (&'a str, &'a str)>,
    ) -> Result<Assignment, LogicError> {
        let mut v = Assignment::new();
        for (var, name) in pairs {
            let idx = m
                .index_of(name)
                .ok_or_else(|| LogicError::UnknownElement(name.to_string()))?;
            v.set(var, idx);
        }
        Ok(v)
    }
}

/// Checks that every symbol of `phi` exists in the structure's signature with
/// the same arity.
pub fn check_signature(m: &GradedStructure, phi: &Formula) -> Result<(), LogicError> {
    fn term(m: &GradedStructure, t: &Term) -> Result<(), LogicError> {
        if let Term::App(name, args) = t {
            match m.signature().function(name) {
                Some((_, ar)) if ar == args.len() => {}
                _ => return Err(LogicError::SignatureMismatch(name.clone())),
            }
            args.iter().try_for_each(|a| term(m, a))?;
        }
        Ok(())
    }
    match phi {
        Formula::Atom { pred, args } => {
            match m.signature().predicate(pred) {
                Some((_, ar)) if ar == args.len() => {}
                _ => return Err(LogicError::SignatureMismatch(pred.clone())),
            }
            args.iter().try_for_each(|a| term(m, a))
        }
        Formula::Const(_) => Ok(()),
        Formula::Binary(_, l, r) => {
            check_signature(m, l)?;
            check_signature(m, r)
        }
        Formula::Quant(_, _, body) => check_signature(m, body),
    }
}

/// Truth value of `phi` in `m` under `v`. Quantifiers range over the whole
/// (finite) universe, so the value always exists.
pub fn evaluate(m: &GradedStructure, phi: &Formula, v: &Assignment) -> Result<Rank, LogicError> {
    check_signature(m, phi)?;
    let mut scratch = v.clone();
    eval(m, phi, &mut scratch)
}

fn eval_term(m: &GradedStructure, t: &Term, v: &Assignment) -> Result<usize, LogicError> {
    match t {
        Term::Var(x) => v.get(x).ok_or_else(|| LogicError::Unbound(x.clone())),
        Term::App(name, args) => {
            let (f, _) = m.signature().function(name).expect("signature checked");
            let vals = args
                .iter()
                .map(|a| eval_term(m, a, v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(m.func_value(f, &vals))
        }
    }
}

fn eval(m: &GradedStructure, phi: &Formula, v: &mut Assignment) -> Result<Rank, LogicError> {
    let ch = m.chain();
    match phi {
        Formula::Atom { pred, args } => {
            let (p, _) = m.signature().predicate(pred).expect("signature checked");
            let vals = args
                .iter()
                .map(|a| eval_term(m, a, v))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(m.pred_value(p, &vals))
        }
        Formula::Const(c) => Ok(match c {
            TruthConstant::Zero => ch.zero(),
            TruthConstant::One => ch.one(),
            TruthConstant::Bot => ch.bot(),
            TruthConstant::Top => ch.top(),
        }),
        Formula::Binary(op, l, r) => {
            let a = eval(m, l, v)?;
            let b = eval(m, r, v)?;
            Ok(match op {
                Connective::Meet => ch.meet(a, b),
                Connective::Join => ch.join(a, b),
                Connective::Conj => ch.conj(a, b),
                Connective::Impl => ch.res(a, b),
            })
        }
        Formula::Quant(q, x, body) => {
            let saved = v.get(x);
            let mut acc = match q {
                Quantifier::Forall => ch.top(),
                Quantifier::Exists => ch.bot(),
            };
            for e in 0..m.len() {
                v.set(x, e);
                let val = eval(m, body, v);
                let val = match val {
                    Ok(val) => val,
                    Err(err) => {
                        restore(v, x, saved);
                        return Err(err);
                    }
                };
                acc = match q {
                    Quantifier::Forall => ch.meet(acc, val),
                    Quantifier::Exists => ch.join(acc, val),
                };
            }
            restore(v, x, saved);
            Ok(acc)
        }
    }
}

fn restore(v: &mut Assignment, x: &str, saved: Option<usize>) {
    match saved {
        Some(e) => v.set(x, e),
        None => {
            v.0.remove(x);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Chain;
    use crate::logic::{parse_formula, Signature};
    use std::sync::Arc;

    // universe {a, b} over Ł3: a<a=2, a<b=1, b<a=0, b<b=2
    fn sample() -> GradedStructure {
        let mut m = GradedStructure::relational(
            Arc::new(Chain::lukasiewicz(3).unwrap()),
            Arc::new(Signature::order()),
            vec!["a".into(), "b".into()],
            0,
        )
        .unwrap();
        m.set_pred(0, &[0, 0], 2);
        m.set_pred(0, &[0, 1], 1);
        m.set_pred(0, &[1, 0], 0);
        m.set_pred(0, &[1, 1], 2);
        m
    }

    #[test]
    fn implication_of_meet() {
        let m = sample();
        let phi = parse_formula("((x<y) & (y<x)) -> (x<x)", m.signature()).unwrap();
        let v = Assignment::from_names(&m, [("x", "a"), ("y", "b")]).unwrap();
        assert_eq!(evaluate(&m, &phi, &v).unwrap(), 2);
    }

    #[test]
    fn universal_reflexivity() {
        let m = sample();
        let phi = parse_formula("forall x (x < x)", m.signature()).unwrap();
        assert_eq!(evaluate(&m, &phi, &Assignment::new()).unwrap(), 2);
        let psi = parse_formula("exists x forall y (x < y)", m.signature()).unwrap();
        // a: min(2,1)=1, b: min(0,2)=0
        assert_eq!(evaluate(&m, &psi, &Assignment::new()).unwrap(), 1);
    }

    #[test]
    fn constants() {
        let m = sample();
        for (text, want) in [("1", 2), ("0", 0), ("bot", 0), ("top", 2)] {
            let phi = parse_formula(text, m.signature()).unwrap();
            assert_eq!(evaluate(&m, &phi, &Assignment::new()).unwrap(), want);
        }
    }

    #[test]
    fn unbound_and_mismatch() {
        let m = sample();
        let phi = parse_formula("x < y", m.signature()).unwrap();
        let v = Assignment::from_names(&m, [("x", "a")]).unwrap();
        assert_eq!(evaluate(&m, &phi, &v), Err(LogicError::Unbound("y".into())));
        let other = Signature::new(vec![("Q".into(), 1)], vec![]).unwrap();
        let q = parse_formula("Q(x)", &other).unwrap();
        assert!(matches!(
            evaluate(&m, &q, &v),
            Err(LogicError::SignatureMismatch(_))
        ));
        assert!(Assignment::from_names(&m, [("x", "zz")]).is_err());
    }

    #[test]
    fn quantifier_does_not_leak_binding() {
        let m = sample();
        let phi = parse_formula("(forall x (x < y)) * (x < y)", m.signature()).unwrap();
        let v = Assignment::from_names(&m, [("x", "b"), ("y", "a")]).unwrap();
        // forall: min(a<a=2, b<a=0)=0 ; 0 ⊗ 0 = 0
        assert_eq!(evaluate(&m, &phi, &v).unwrap(), 0);
        let v2 = Assignment::from_names(&m, [("x", "a"), ("y", "a")]).unwrap();
        let phi2 = parse_formula("(exists x (x < y)) * (x < y)", m.signature()).unwrap();
        // exists: max(2,0)=2 ; 2 ⊗ (a<a=2) = 2
        assert_eq!(evaluate(&m, &phi2, &v2).unwrap(), 2);
    }
}
