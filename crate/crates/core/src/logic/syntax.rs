use std::collections::BTreeSet;
use std::fmt;

use super::LogicError;

/// A predicate or function symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

/// Predicate and function symbols; names are unique across both lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    predicates: Vec<Symbol>,
    functions: Vec<Symbol>,
}

/// Name of the binary predicate written infix as `x < y`.
pub const ORDER_PREDICATE: &str = "<";

impl Signature {
    pub fn new(
        predicates: Vec<(String, usize)>,
        functions: Vec<(String, usize)>,
    ) -> Result<Signature, LogicError> {
        let mut seen = BTreeSet::new();
        for (name, arity) in &predicates {
            if *arity == 0 {
                return Err(LogicError::BadSignature(format!(
                    "predicate `{name}` must have arity >= 1"
                )));
            }
            if !seen.insert(name.clone()) {
                return Err(LogicError::BadSignature(format!("duplicate symbol `{name}`")));
            }
        }
        for (name, _) in &functions {
            if !seen.insert(name.clone()) {
                return Err(LogicError::BadSignature(format!("duplicate symbol `{name}`")));
            }
        }
        let sym = |(name, arity)| Symbol { name, arity };
        Ok(Signature {
            predicates: predicates.into_iter().map(sym).collect(),
            functions: functions.into_iter().map(sym).collect(),
        })
    }

    /// The signature of every example class: one binary predicate `<`.
    pub fn order() -> Signature {
        Signature::new(vec![(ORDER_PREDICATE.to_string(), 2)], vec![]).unwrap()
    }

    pub fn predicates(&self) -> &[Symbol] {
        &self.predicates
    }

    pub fn functions(&self) -> &[Symbol] {
        &self.functions
    }

    pub fn is_relational(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn predicate(&self, name: &str) -> Option<(usize, usize)> {
        self.predicates
            .iter()
            .position(|s| s.name == name)
            .map(|i| (i, self.predicates[i].arity))
    }

    pub fn function(&self, name: &str) -> Option<(usize, usize)> {
        self.functions
            .iter()
            .position(|s| s.name == name)
            .map(|i| (i, self.functions[i].arity))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TruthConstant {
    /// 0̄
    Zero,
    /// 1̄
    One,
    Bot,
    Top,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Connective {
    /// lattice meet `&`
    Meet,
    /// lattice join `|`
    Join,
    /// monoidal conjunction `*`
    Conj,
    /// residuum `->`
    Impl,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Meet => "&",
            Connective::Join => "|",
            Connective::Conj => "*",
            Connective::Impl => "->",
        }
    }

    // binding strength in the concrete grammar
    fn level(self) -> u8 {
        match self {
            Connective::Impl => 1,
            Connective::Join => 2,
            Connective::Meet => 3,
            Connective::Conj => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Forall,
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { pred: String, args: Vec<Term> },
    Const(TruthConstant),
    Binary(Connective, Box<Formula>, Box<Formula>),
    Quant(Quantifier, String, Box<Formula>),
}

impl Formula {
    pub fn atom(pred: &str, args: Vec<Term>) -> Formula {
        Formula::Atom {
            pred: pred.to_string(),
            args,
        }
    }

    /// `x < y` over two variables.
    pub fn lt(x: &str, y: &str) -> Formula {
        Formula::atom(ORDER_PREDICATE, vec![Term::var(x), Term::var(y)])
    }

    pub fn binary(op: Connective, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn meet(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(Connective::Meet, lhs, rhs)
    }

    pub fn join(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(Connective::Join, lhs, rhs)
    }

    pub fn conj(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(Connective::Conj, lhs, rhs)
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Formula {
        Formula::binary(Connective::Impl, lhs, rhs)
    }

    pub fn forall(var: &str, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Forall, var.to_string(), Box::new(body))
    }

    pub fn exists(var: &str, body: Formula) -> Formula {
        Formula::Quant(Quantifier::Exists, var.to_string(), Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Const(_) => true,
            Formula::Binary(_, l, r) => l.is_quantifier_free() && r.is_quantifier_free(),
            Formula::Quant(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom { args, .. } => args.iter().for_each(|t| t.collect_vars(out)),
            Formula::Const(_) => {}
            Formula::Binary(_, l, r) => {
                l.collect_free(out);
                r.collect_free(out);
            }
            Formula::Quant(_, v, body) => {
                let mut inner = BTreeSet::new();
                body.collect_free(&mut inner);
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    // Prints `self` so that it re-parses to the same tree when it occurs as
    // an operand that needs at least binding strength `min_level`.
    fn write_at(&self, f: &mut fmt::Formatter<'_>, min_level: u8) -> fmt::Result {
        match self {
            Formula::Atom { pred, args } if pred == ORDER_PREDICATE && args.len() == 2 => {
                write!(f, "{} < {}", args[0], args[1])
            }
            Formula::Atom { pred, args } => {
                write!(f, "{pred}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Formula::Const(c) => f.write_str(match c {
                TruthConstant::Zero => "0",
                TruthConstant::One => "1",
                TruthConstant::Bot => "bot",
                TruthConstant::Top => "top",
            }),
            Formula::Binary(op, l, r) => {
                let level = op.level();
                let paren = level < min_level;
                if paren {
                    f.write_str("(")?;
                }
                // `->` nests to the right, the others to the left
                let (ll, rl) = if *op == Connective::Impl {
                    (level + 1, level)
                } else {
                    (level, level + 1)
                };
                l.write_at(f, ll)?;
                write!(f, " {} ", op.symbol())?;
                r.write_at(f, rl)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
            Formula::Quant(q, v, body) => {
                let paren = min_level > 0;
                if paren {
                    f.write_str("(")?;
                }
                let kw = match q {
                    Quantifier::Forall => "forall",
                    Quantifier::Exists => "exists",
                };
                write!(f, "{kw} {v} ")?;
                body.write_at(f, 0)?;
                if paren {
                    f.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signature_rejects_duplicates() {
        assert!(Signature::new(vec![("P".into(), 1)], vec![("P".into(), 0)]).is_err());
        assert!(Signature::new(vec![("P".into(), 0)], vec![]).is_err());
        let sig = Signature::new(vec![("P".into(), 2)], vec![("f".into(), 1)]).unwrap();
        assert_eq!(sig.predicate("P"), Some((0, 2)));
        assert_eq!(sig.function("f"), Some((0, 1)));
        assert!(!sig.is_relational());
    }

    #[test]
    fn free_variables() {
        let phi = Formula::forall("x", Formula::meet(Formula::lt("x", "y"), Formula::lt("z", "x")));
        let fv: Vec<_> = phi.free_vars().into_iter().collect();
        assert_eq!(fv, vec!["y".to_string(), "z".to_string()]);
        assert!(!phi.is_quantifier_free());
    }

    #[test]
    fn printing_minimal_parentheses() {
        let phi = Formula::implies(
            Formula::meet(Formula::lt("x", "y"), Formula::lt("y", "z")),
            Formula::lt("x", "z"),
        );
        assert_eq!(phi.to_string(), "x < y & y < z -> x < z");
        let left_impl = Formula::implies(
            Formula::implies(Formula::lt("a", "b"), Formula::Const(TruthConstant::Zero)),
            Formula::Const(TruthConstant::Top),
        );
        assert_eq!(left_impl.to_string(), "(a < b -> 0) -> top");
        let nested_q = Formula::meet(
            Formula::forall("x", Formula::lt("x", "x")),
            Formula::Const(TruthConstant::One),
        );
        assert_eq!(nested_q.to_string(), "(forall x x < x) & 1");
    }
}
