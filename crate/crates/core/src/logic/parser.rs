//! Recursive-descent parser for the concrete formula syntax.
//!
//! ```text
//! formula := quant | impl
//! quant   := ("forall" | "exists") var formula
//! impl    := disj ["->" impl]
//! disj    := conj {"|" conj}
//! conj    := strong {"&" strong}
//! strong  := atomf {"*" atomf}
//! atomf   := "(" formula ")" | "0" | "1" | "bot" | "top"
//!          | pred "(" terms ")" | term "<" term
//! ```

use super::syntax::{Connective, Formula, Quantifier, Signature, Term, TruthConstant, ORDER_PREDICATE};
use super::{LogicError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    One,
    LParen,
    RParen,
    Comma,
    Amp,
    Bar,
    Star,
    Arrow,
    Lt,
}

const KEYWORDS: [&str; 4] = ["forall", "exists", "bot", "top"];

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, LogicError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = match c {
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '*' => Tok::Star,
            '<' => Tok::Lt,
            '-' if chars.get(i + 1) == Some(&'>') => {
                i += 1;
                Tok::Arrow
            }
            '0' | '1' if !chars.get(i + 1).is_some_and(|d| d.is_ascii_alphanumeric()) => {
                if c == '0' {
                    Tok::Zero
                } else {
                    Tok::One
                }
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i + 1 < chars.len()
                    && (chars[i + 1].is_ascii_alphanumeric() || matches!(chars[i + 1], '_' | '\''))
                {
                    i += 1;
                }
                Tok::Ident(chars[start..=i].iter().collect())
            }
            other => {
                return Err(LogicError::Parse {
                    col,
                    kind: ParseErrorKind::Lex(format!("unexpected character `{other}`")),
                })
            }
        };
        out.push((tok, col));
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, LogicError> {
        Err(LogicError::Parse {
            col: self.col(),
            kind,
        })
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn close_paren(&mut self) -> Result<(), LogicError> {
        match self.peek() {
            Some(Tok::RParen) => {
                self.pos += 1;
                Ok(())
            }
            None => self.err(ParseErrorKind::Unbalanced),
            Some(t) => {
                let msg = format!("expected `)`, found {}", describe(t));
                self.err(ParseErrorKind::Unexpected(msg))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula, LogicError> {
        if let Some(Tok::Ident(kw)) = self.peek() {
            let q = match kw.as_str() {
                "forall" => Some(Quantifier::Forall),
                "exists" => Some(Quantifier::Exists),
                _ => None,
            };
            if let Some(q) = q {
                self.pos += 1;
                let var = match self.bump() {
                    Some(Tok::Ident(v)) if !KEYWORDS.contains(&v.as_str()) => v,
                    _ => {
                        self.pos -= 1;
                        return self.err(ParseErrorKind::Unexpected(
                            "expected a variable after quantifier".into(),
                        ));
                    }
                };
                let body = self.formula()?;
                return Ok(Formula::Quant(q, var, Box::new(body)));
            }
        }
        self.implication()
    }

    fn implication(&mut self) -> Result<Formula, LogicError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn left_assoc(
        &mut self,
        tok: Tok,
        op: Connective,
        next: fn(&mut Self) -> Result<Formula, LogicError>,
    ) -> Result<Formula, LogicError> {
        let mut acc = next(self)?;
        while self.eat(&tok) {
            let rhs = next(self)?;
            acc = Formula::binary(op, acc, rhs);
        }
        Ok(acc)
    }

    fn disjunction(&mut self) -> Result<Formula, LogicError> {
        self.left_assoc(Tok::Bar, Connective::Join, Self::conjunction)
    }

    fn conjunction(&mut self) -> Result<Formula, LogicError> {
        self.left_assoc(Tok::Amp, Connective::Meet, Self::strong)
    }

    fn strong(&mut self) -> Result<Formula, LogicError> {
        self.left_assoc(Tok::Star, Connective::Conj, Self::atomic)
    }

    fn atomic(&mut self) -> Result<Formula, LogicError> {
        match self.peek().cloned() {
            None => self.err(ParseErrorKind::Unexpected("unexpected end of input".into())),
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.close_paren()?;
                Ok(inner)
            }
            Some(Tok::Zero) => {
                self.pos += 1;
                Ok(Formula::Const(TruthConstant::Zero))
            }
            Some(Tok::One) => {
                self.pos += 1;
                Ok(Formula::Const(TruthConstant::One))
            }
            Some(Tok::Ident(name)) if name == "bot" || name == "top" => {
                self.pos += 1;
                Ok(Formula::Const(if name == "bot" {
                    TruthConstant::Bot
                } else {
                    TruthConstant::Top
                }))
            }
            Some(Tok::Ident(name)) if name == "forall" || name == "exists" => self.err(
                ParseErrorKind::Unexpected("a quantified operand must be parenthesized".into()),
            ),
            Some(Tok::Ident(name))
                if self.sig.predicate(&name).is_some()
                    && self.toks.get(self.pos + 1).map(|t| &t.0) == Some(&Tok::LParen) =>
            {
                let (_, arity) = self.sig.predicate(&name).unwrap();
                let col = self.col();
                self.pos += 2;
                let args = self.term_list()?;
                if args.len() != arity {
                    return Err(LogicError::Parse {
                        col,
                        kind: ParseErrorKind::Arity {
                            symbol: name,
                            expected: arity,
                            found: args.len(),
                        },
                    });
                }
                Ok(Formula::Atom { pred: name, args })
            }
            Some(Tok::Ident(_)) => {
                let lhs = self.term()?;
                if !self.eat(&Tok::Lt) {
                    let msg = match self.peek() {
                        Some(t) => format!("expected `<`, found {}", describe(t)),
                        None => "expected `<`, found end of input".into(),
                    };
                    return self.err(ParseErrorKind::Unexpected(msg));
                }
                if self.sig.predicate(ORDER_PREDICATE).map(|p| p.1) != Some(2) {
                    self.pos -= 1;
                    return self.err(ParseErrorKind::UnknownSymbol(ORDER_PREDICATE.into()));
                }
                let rhs = self.term()?;
                Ok(Formula::atom(ORDER_PREDICATE, vec![lhs, rhs]))
            }
            Some(t) => {
                let msg = format!("unexpected {}", describe(&t));
                self.err(ParseErrorKind::Unexpected(msg))
            }
        }
    }

    // after the opening parenthesis
    fn term_list(&mut self) -> Result<Vec<Term>, LogicError> {
        let mut args = Vec::new();
        if self.eat(&Tok::RParen) {
            return Ok(args);
        }
        loop {
            args.push(self.term()?);
            if self.eat(&Tok::Comma) {
                continue;
            }
            self.close_paren()?;
            return Ok(args);
        }
    }

    fn term(&mut self) -> Result<Term, LogicError> {
        let col = self.col();
        let name = match self.peek() {
            Some(Tok::Ident(n)) if !KEYWORDS.contains(&n.as_str()) => n.clone(),
            Some(t) => {
                let msg = format!("expected a term, found {}", describe(t));
                return self.err(ParseErrorKind::Unexpected(msg));
            }
            None => return self.err(ParseErrorKind::Unexpected("expected a term".into())),
        };
        self.pos += 1;
        let called = self.peek() == Some(&Tok::LParen);
        if let Some((_, arity)) = self.sig.function(&name) {
            let args = if called {
                self.pos += 1;
                self.term_list()?
            } else {
                Vec::new()
            };
            if args.len() != arity {
                return Err(LogicError::Parse {
                    col,
                    kind: ParseErrorKind::Arity {
                        symbol: name,
                        expected: arity,
                        found: args.len(),
                    },
                });
            }
            return Ok(Term::App(name, args));
        }
        if called || self.sig.predicate(&name).is_some() {
            return Err(LogicError::Parse {
                col,
                kind: ParseErrorKind::UnknownSymbol(name),
            });
        }
        Ok(Term::Var(name))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(n) => format!("`{n}`"),
        Tok::Zero => "`0`".into(),
        Tok::One => "`1`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Amp => "`&`".into(),
        Tok::Bar => "`|`".into(),
        Tok::Star => "`*`".into(),
        Tok::Arrow => "`->`".into(),
        Tok::Lt => "`<`".into(),
    }
}

/// Parses `text` against `sig`, checking arities as it goes.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, LogicError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: text.chars().count() + 1,
        sig,
    };
    let phi = p.formula()?;
    match p.peek() {
        None => Ok(phi),
        Some(Tok::RParen) => p.err(ParseErrorKind::Unbalanced),
        Some(t) => {
            let msg = format!("trailing {}", describe(t));
            p.err(ParseErrorKind::Unexpected(msg))
        }
    }
}
