//! Signatures, terms and formulas, the concrete-syntax parser, and the
//! graded Tarskian evaluator.

mod eval;
mod parser;
mod syntax;

use thiserror::Error;

pub use eval::{check_signature, evaluate, Assignment};
pub use parser::parse_formula;
pub use syntax::{
    Connective, Formula, Quantifier, Signature, Symbol, Term, TruthConstant, ORDER_PREDICATE,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lex(String),
    Arity {
        symbol: String,
        expected: usize,
        found: usize,
    },
    UnknownSymbol(String),
    Unbalanced,
    Unexpected(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LogicError {
    #[error("parse error at column {col}: {}", describe(.kind))]
    Parse { col: usize, kind: ParseErrorKind },
    #[error("invalid signature: {0}")]
    BadSignature(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("symbol `{0}` is not in the structure's signature")]
    SignatureMismatch(String),
    #[error("no element named `{0}`")]
    UnknownElement(String),
}

fn describe(kind: &ParseErrorKind) -> String {
    match kind {
        ParseErrorKind::Lex(m) | ParseErrorKind::Unexpected(m) => m.clone(),
        ParseErrorKind::Arity {
            symbol,
            expected,
            found,
        } => format!("`{symbol}` expects {expected} arguments, got {found}"),
        ParseErrorKind::UnknownSymbol(s) => format!("unknown symbol `{s}`"),
        ParseErrorKind::Unbalanced => "unbalanced parentheses".into(),
    }
}
