//! Finite UL-chains: the fixed truth-value algebra every structure is valued in.
//!
//! Elements are dense ranks `0..n`, ordered by rank, so meet and join are
//! `min` and `max`. The monoid operation is stored as a full table and the
//! residuum is materialized once at construction time.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use thiserror::Error;

/// A truth value, identified by its position in the chain.
pub type Rank = u8;

/// Largest supported chain size (ranks must fit in a [`Rank`]).
pub const MAX_CHAIN_SIZE: usize = Rank::MAX as usize + 1;

/// The axioms checked when validating a conjunction table, in checking order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axiom {
    Monotonicity,
    Neutrality,
    Commutativity,
    Associativity,
    Residuation,
    Linearity,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Monotonicity => "monotonicity",
            Axiom::Neutrality => "neutrality",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Residuation => "residuation",
            Axiom::Linearity => "linearity",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid chain size {0}")]
    InvalidSize(usize),
    #[error("rank {rank} out of range for a chain of size {size}")]
    RankOutOfRange { rank: usize, size: usize },
    #[error("{axiom} fails at witness ({}, {}, {})", .witness.0, .witness.1, .witness.2)]
    Axiom {
        axiom: Axiom,
        witness: (Rank, Rank, Rank),
    },
    #[error("malformed table: {0}")]
    Malformed(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("unknown chain reference `{0}`")]
    UnknownRef(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

/// A validated finite UL-chain.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain {
    name: String,
    size: usize,
    conj: Vec<Rank>,
    res: Vec<Rank>,
    one: Rank,
    zero: Rank,
}

impl fmt::Debug for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Chain({}, n={}, one={}, zero={})",
            self.name, self.size, self.one, self.zero
        )
    }
}

impl Chain {
    /// Łukasiewicz chain on `n` ranks: `a ⊗ b = max(0, a + b - (n - 1))`.
    pub fn lukasiewicz(n: usize) -> Result<Chain, AlgebraError> {
        if !(2..=MAX_CHAIN_SIZE).contains(&n) {
            return Err(AlgebraError::InvalidSize(n));
        }
        let top = n - 1;
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a + b).saturating_sub(top) as Rank))
            .collect();
        let name = if n == 2 { "bool".to_string() } else { format!("luk:{n}") };
        Chain::from_flat(name, n, table, top as Rank, 0)
    }

    /// Gödel chain on `n` ranks: `a ⊗ b = min(a, b)`.
    pub fn godel(n: usize) -> Result<Chain, AlgebraError> {
        if !(2..=MAX_CHAIN_SIZE).contains(&n) {
            return Err(AlgebraError::InvalidSize(n));
        }
        let table = (0..n)
            .flat_map(|a| (0..n).map(move |b| a.min(b) as Rank))
            .collect();
        Chain::from_flat(format!("godel:{n}"), n, table, (n - 1) as Rank, 0)
    }

    /// The two-element Boolean chain.
    pub fn boolean() -> Chain {
        Chain::lukasiewicz(2).expect("two-element chain is valid")
    }

    /// Validates a conjunction table given row by row.
    pub fn from_table(
        name: impl Into<String>,
        size: usize,
        rows: &[Vec<Rank>],
        one: Rank,
        zero: Rank,
    ) -> Result<Chain, AlgebraError> {
        if rows.len() != size {
            return Err(AlgebraError::Malformed(format!(
                "expected {size} rows, found {}",
                rows.len()
            )));
        }
        let mut flat = Vec::with_capacity(size * size);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != size {
                return Err(AlgebraError::Malformed(format!(
                    "row {i} has {} entries, expected {size}",
                    row.len()
                )));
            }
            flat.extend_from_slice(row);
        }
        Chain::from_flat(name.into(), size, flat, one, zero)
    }

    fn from_flat(
        name: String,
        size: usize,
        conj: Vec<Rank>,
        one: Rank,
        zero: Rank,
    ) -> Result<Chain, AlgebraError> {
        if size == 0 || size > MAX_CHAIN_SIZE {
            return Err(AlgebraError::InvalidSize(size));
        }
        for r in conj.iter().copied().chain([one, zero]) {
            if r as usize >= size {
                return Err(AlgebraError::RankOutOfRange {
                    rank: r as usize,
                    size,
                });
            }
        }
        let at = |a: usize, b: usize| conj[a * size + b];
        let fail = |axiom, a: usize, b: usize, c: usize| AlgebraError::Axiom {
            axiom,
            witness: (a as Rank, b as Rank, c as Rank),
        };

        for a in 0..size {
            for b in 0..size.saturating_sub(1) {
                if at(a, b) > at(a, b + 1) {
                    return Err(fail(Axiom::Monotonicity, a, b, b + 1));
                }
                if at(b, a) > at(b + 1, a) {
                    return Err(fail(Axiom::Monotonicity, b, b + 1, a));
                }
            }
        }
        let e = one as usize;
        for b in 0..size {
            if at(e, b) != b as Rank {
                return Err(fail(Axiom::Neutrality, e, b, at(e, b) as usize));
            }
            if at(b, e) != b as Rank {
                return Err(fail(Axiom::Neutrality, b, e, at(b, e) as usize));
            }
        }
        for a in 0..size {
            for b in a + 1..size {
                if at(a, b) != at(b, a) {
                    return Err(fail(Axiom::Commutativity, a, b, 0));
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                let ab = at(a, b) as usize;
                for c in 0..size {
                    if at(ab, c) != at(a, at(b, c) as usize) {
                        return Err(fail(Axiom::Associativity, a, b, c));
                    }
                }
            }
        }

        // res(a, c) = max { b : a ⊗ b <= c }
        let mut res = vec![0; size * size];
        for a in 0..size {
            for c in 0..size {
                match (0..size).rev().find(|&b| at(a, b) as usize <= c) {
                    Some(b) => res[a * size + c] = b as Rank,
                    None => return Err(fail(Axiom::Residuation, a, 0, c)),
                }
            }
        }
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    let lhs = at(a, b) as usize <= c;
                    let rhs = b <= res[a * size + c] as usize;
                    if lhs != rhs {
                        return Err(fail(Axiom::Residuation, a, b, c));
                    }
                }
            }
        }
        // (lin) holds on every chain; checked anyway.
        for a in 0..size {
            for b in 0..size {
                let l = (res[a * size + b].min(one)).max(res[b * size + a].min(one));
                if l != one {
                    return Err(fail(Axiom::Linearity, a, b, 0));
                }
            }
        }

        Ok(Chain {
            name,
            size,
            conj,
            res,
            one,
            zero,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// The monoid neutral element 1̄, also the threshold of the filter.
    pub fn one(&self) -> Rank {
        self.one
    }

    /// The falsum constant 0̄; no order constraint relative to 1̄.
    pub fn zero(&self) -> Rank {
        self.zero
    }

    pub fn bot(&self) -> Rank {
        0
    }

    pub fn top(&self) -> Rank {
        (self.size - 1) as Rank
    }

    pub fn ranks(&self) -> impl Iterator<Item = Rank> + Clone {
        (0..self.size).map(|r| r as Rank)
    }

    pub fn contains(&self, r: Rank) -> bool {
        (r as usize) < self.size
    }

    pub fn check_rank(&self, r: usize) -> Result<Rank, AlgebraError> {
        if r < self.size {
            Ok(r as Rank)
        } else {
            Err(AlgebraError::RankOutOfRange {
                rank: r,
                size: self.size,
            })
        }
    }

    #[inline]
    pub fn conj(&self, a: Rank, b: Rank) -> Rank {
        self.conj[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn res(&self, a: Rank, c: Rank) -> Rank {
        self.res[a as usize * self.size + c as usize]
    }

    #[inline]
    pub fn meet(&self, a: Rank, b: Rank) -> Rank {
        a.min(b)
    }

    #[inline]
    pub fn join(&self, a: Rank, b: Rank) -> Rank {
        a.max(b)
    }

    #[inline]
    pub fn in_filter(&self, a: Rank) -> bool {
        a >= self.one
    }

    pub fn checked_conj(&self, a: usize, b: usize) -> Result<Rank, AlgebraError> {
        Ok(self.conj(self.check_rank(a)?, self.check_rank(b)?))
    }

    pub fn checked_res(&self, a: usize, c: usize) -> Result<Rank, AlgebraError> {
        Ok(self.res(self.check_rank(a)?, self.check_rank(c)?))
    }

    pub fn checked_meet(&self, a: usize, b: usize) -> Result<Rank, AlgebraError> {
        Ok(self.meet(self.check_rank(a)?, self.check_rank(b)?))
    }

    pub fn checked_join(&self, a: usize, b: usize) -> Result<Rank, AlgebraError> {
        Ok(self.join(self.check_rank(a)?, self.check_rank(b)?))
    }

    pub fn checked_in_filter(&self, a: usize) -> Result<bool, AlgebraError> {
        Ok(self.in_filter(self.check_rank(a)?))
    }

    /// Rows of the conjunction table.
    pub fn conj_rows(&self) -> Vec<Vec<Rank>> {
        self.conj.chunks(self.size).map(<[Rank]>::to_vec).collect()
    }

    /// Renders the chain in the line-oriented chain file format.
    pub fn to_file_string(&self) -> String {
        let mut out = format!(
            "chain {} {} one={} zero={}\n",
            self.name, self.size, self.one, self.zero
        );
        for row in self.conj.chunks(self.size) {
            out.push_str(&join_ranks(row));
            out.push('\n');
        }
        out
    }

    /// Parses the chain file format. Blank lines and `#` comments are skipped;
    /// anything after the table is rejected.
    pub fn parse_file(text: &str) -> Result<Chain, AlgebraError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l).trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(AlgebraError::Parse {
            line: 1,
            msg: "empty chain file".into(),
        })?;
        let perr = |line: usize, msg: String| AlgebraError::Parse { line, msg };
        let toks: Vec<&str> = header.split_whitespace().collect();
        if toks.len() != 5 || toks[0] != "chain" {
            return Err(perr(
                hline,
                "expected `chain <name> <n> one=<r> zero=<r>`".into(),
            ));
        }
        let name = toks[1].to_string();
        let size: usize = toks[2]
            .parse()
            .map_err(|_| perr(hline, format!("bad size `{}`", toks[2])))?;
        let keyed = |tok: &str, key: &str| -> Result<Rank, AlgebraError> {
            tok.strip_prefix(key)
                .and_then(|v| v.parse::<Rank>().ok())
                .ok_or_else(|| perr(hline, format!("expected `{key}<rank>`, found `{tok}`")))
        };
        let one = keyed(toks[3], "one=")?;
        let zero = keyed(toks[4], "zero=")?;
        if size == 0 || size > MAX_CHAIN_SIZE {
            return Err(AlgebraError::InvalidSize(size));
        }
        let mut rows = Vec::with_capacity(size);
        for _ in 0..size {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| perr(hline, format!("expected {size} table rows")))?;
            let row = line
                .split_whitespace()
                .map(|t| {
                    t.parse::<Rank>()
                        .map_err(|_| perr(ln, format!("bad rank `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != size {
                return Err(perr(
                    ln,
                    format!("row has {} entries, expected {size}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(perr(ln, "trailing content after table".into()));
        }
        Chain::from_table(name, size, &rows, one, zero)
    }

    /// Renders the ⊗ and → tables as aligned text.
    pub fn render_tables(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "chain {} size={} one={} zero={} bot={} top={}",
            self.name,
            self.size,
            self.one,
            self.zero,
            self.bot(),
            self.top()
        );
        for (label, table) in [("conj", &self.conj), ("res", &self.res)] {
            let _ = writeln!(out, "{label}:");
            for (a, row) in table.chunks(self.size).enumerate() {
                let _ = writeln!(out, "  {a:>3} | {}", join_ranks(row));
            }
        }
        out
    }
}

impl fmt::Display for Chain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

fn join_ranks(row: &[Rank]) -> String {
    row.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    }
}

/// How a chain is named on the command line or in a structure file header.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ChainRef {
    Bool,
    Luk(usize),
    Godel(usize),
    File(PathBuf),
}

impl ChainRef {
    /// Builds the chain; relative file paths are resolved against `base`.
    pub fn resolve(&self, base: Option<&Path>) -> Result<Chain, AlgebraError> {
        match self {
            ChainRef::Bool => Ok(Chain::boolean()),
            ChainRef::Luk(n) => Chain::lukasiewicz(*n),
            ChainRef::Godel(n) => Chain::godel(*n),
            ChainRef::File(p) => {
                let path = match base {
                    Some(dir) if p.is_relative() => dir.join(p),
                    _ => p.clone(),
                };
                let text = std::fs::read_to_string(&path).map_err(|e| AlgebraError::Io {
                    path: path.display().to_string(),
                    msg: e.to_string(),
                })?;
                Chain::parse_file(&text)
            }
        }
    }
}

impl FromStr for ChainRef {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let sized = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| AlgebraError::UnknownRef(s.to_string()))
        };
        if s == "bool" {
            Ok(ChainRef::Bool)
        } else if let Some(rest) = s.strip_prefix("luk:") {
            Ok(ChainRef::Luk(sized(rest)?))
        } else if let Some(rest) = s.strip_prefix("godel:") {
            Ok(ChainRef::Godel(sized(rest)?))
        } else if s.is_empty() {
            Err(AlgebraError::UnknownRef(s.to_string()))
        } else {
            Ok(ChainRef::File(PathBuf::from(s)))
        }
    }
}

impl fmt::Display for ChainRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainRef::Bool => f.write_str("bool"),
            ChainRef::Luk(n) => write!(f, "luk:{n}"),
            ChainRef::Godel(n) => write!(f, "godel:{n}"),
            ChainRef::File(p) => write!(f, "{}", p.display()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u3_rows() -> Vec<Vec<Rank>> {
        vec![vec![0, 0, 0], vec![0, 1, 2], vec![0, 2, 2]]
    }

    /// max { b : a ⊗ b <= c } by direct scan.
    fn scan_res(ch: &Chain, a: Rank, c: Rank) -> Rank {
        ch.ranks().filter(|&b| ch.conj(a, b) <= c).max().unwrap()
    }

    #[test]
    fn boolean_chain() {
        let b = Chain::lukasiewicz(2).unwrap();
        assert_eq!(b.conj(1, 1), 1);
        assert_eq!(b.conj(1, 0), 0);
        assert_eq!(b.name(), "bool");
    }

    #[test]
    fn lukasiewicz_three() {
        let l = Chain::lukasiewicz(3).unwrap();
        assert_eq!(l.conj(1, 1), 0);
        assert_eq!(l.res(2, 1), 1);
        assert_eq!(scan_res(&l, 2, 1), 1);
        for c in l.ranks() {
            assert_eq!(l.res(0, c), 2);
        }
        assert!(l.in_filter(2));
        assert!(!l.in_filter(1));
        assert_eq!((l.one(), l.zero()), (2, 0));
    }

    #[test]
    fn godel_residua() {
        let g = Chain::godel(3).unwrap();
        assert_eq!(g.conj(2, 1), 1);
        assert_eq!(g.res(2, 1), scan_res(&g, 2, 1));
        assert_eq!(g.res(2, 1), 1);
        assert_eq!(g.res(1, 2), 2);
        let g4 = Chain::godel(4).unwrap();
        for a in g4.ranks() {
            for c in a..4 {
                assert_eq!(g4.res(a, c), g4.top());
            }
        }
    }

    #[test]
    fn too_small() {
        assert_eq!(Chain::lukasiewicz(1), Err(AlgebraError::InvalidSize(1)));
        assert_eq!(Chain::godel(0), Err(AlgebraError::InvalidSize(0)));
    }

    #[test]
    fn uninorm_table() {
        let u = Chain::from_table("U3", 3, &u3_rows(), 1, 0).unwrap();
        assert_eq!(u.res(2, 1), 0);
        assert_eq!(scan_res(&u, 2, 1), 0);
        assert!(u.in_filter(1) && u.in_filter(2) && !u.in_filter(0));
    }

    #[test]
    fn uninorm_with_wrong_unit() {
        let err = Chain::from_table("U3", 3, &u3_rows(), 2, 0).unwrap_err();
        assert_eq!(
            err,
            AlgebraError::Axiom {
                axiom: Axiom::Neutrality,
                witness: (2, 1, 2)
            }
        );
    }

    #[test]
    fn swapped_row_is_not_monotone() {
        let mut rows = u3_rows();
        rows[2].swap(0, 1);
        match Chain::from_table("bad", 3, &rows, 1, 0) {
            Err(AlgebraError::Axiom { axiom, .. }) => assert_eq!(axiom, Axiom::Monotonicity),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_residuum() {
        // 2 absorbing, 0 idempotent: associative and monotone, but 2 ⊗ b <= 0 has no solution.
        let rows = vec![vec![0, 0, 2], vec![0, 1, 2], vec![2, 2, 2]];
        match Chain::from_table("nores", 3, &rows, 1, 0) {
            Err(AlgebraError::Axiom { axiom, .. }) => assert_eq!(axiom, Axiom::Residuation),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn range_errors() {
        let l = Chain::lukasiewicz(3).unwrap();
        assert!(matches!(
            l.checked_conj(3, 0),
            Err(AlgebraError::RankOutOfRange { rank: 3, size: 3 })
        ));
        assert!(l.checked_res(0, 5).is_err());
        assert_eq!(l.checked_meet(1, 2), Ok(1));
        assert_eq!(l.checked_join(1, 2), Ok(2));
        assert_eq!(l.checked_in_filter(2), Ok(true));
        let rows = vec![vec![0, 3], vec![0, 1]];
        assert!(matches!(
            Chain::from_table("x", 2, &rows, 1, 0),
            Err(AlgebraError::RankOutOfRange { .. })
        ));
    }

    #[test]
    fn builtins_round_trip_through_table_validation() {
        for ch in [
            Chain::lukasiewicz(5).unwrap(),
            Chain::godel(5).unwrap(),
            Chain::boolean(),
        ] {
            let again = Chain::from_table(ch.name(), ch.size(), &ch.conj_rows(), ch.one(), ch.zero())
                .unwrap();
            assert_eq!(again, ch);
            assert_eq!(Chain::parse_file(&ch.to_file_string()).unwrap(), ch);
        }
    }

    #[test]
    fn chain_file_rejects_garbage() {
        let good = "chain U3 3 one=1 zero=0\n0 0 0\n0 1 2\n0 2 2\n";
        assert!(Chain::parse_file(good).is_ok());
        assert!(Chain::parse_file(&format!("{good}junk\n")).is_err());
        assert!(Chain::parse_file("chain U3 3 one=1 zero=0\n0 0 0\n0 1 2 9\n0 2 2\n").is_err());
        assert!(Chain::parse_file("chain U3 3 one=1\n0 0 0\n0 1 2\n0 2 2\n").is_err());
        assert!(Chain::parse_file("# header comment\nchain U3 3 one=1 zero=0 # ok\n0 0 0\n0 1 2\n0 2 2\n\n").is_ok());
    }

    #[test]
    fn chain_refs() {
        assert_eq!("bool".parse::<ChainRef>().unwrap(), ChainRef::Bool);
        assert_eq!("luk:4".parse::<ChainRef>().unwrap(), ChainRef::Luk(4));
        assert_eq!("godel:3".parse::<ChainRef>().unwrap(), ChainRef::Godel(3));
        assert!("luk:x".parse::<ChainRef>().is_err());
        assert_eq!(
            "godel:3".parse::<ChainRef>().unwrap().resolve(None).unwrap(),
            Chain::godel(3).unwrap()
        );
    }

    #[test]
    fn graded_implication_laws() {
        let u = Chain::from_table("U3", 3, &u3_rows(), 1, 0).unwrap();
        for ch in [Chain::lukasiewicz(4).unwrap(), Chain::godel(4).unwrap(), u] {
            for a in ch.ranks() {
                assert!(ch.in_filter(ch.res(a, a)));
                for b in ch.ranks() {
                    assert_eq!(a <= b, ch.in_filter(ch.res(a, b)));
                }
            }
        }
    }
}
