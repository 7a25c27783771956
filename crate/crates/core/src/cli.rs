//! The `graded` command-line tool.
//!
//! [`run`] parses the arguments, dispatches to the library and returns the
//! rendered output with an exit code: 0 when the command succeeded and any
//! requested check passed, 1 on a domain error or a failed check, 2 on a
//! usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::algebra::{AlgebraError, Chain, ChainRef};
use crate::classes::{self, ClassError, ClassSpec, Property};
use crate::fraisse::{self, FraisseError, TaskOrder, VFormation};
use crate::logic::{evaluate, parse_formula, Assignment, LogicError};
use crate::structure::{
    age, is_isomorphic, is_substructure, parse_structure, write_structure, StructureError,
    StructureFile,
};

/// Subcommand paths and the library operation each one reaches.
pub const DISPATCH: &[(&str, &str)] = &[
    ("algebra validate", "algebra::Chain::parse_file"),
    ("algebra show", "algebra::Chain::render_tables"),
    ("eval", "logic::evaluate"),
    ("iso", "structure::is_isomorphic"),
    ("age", "structure::age"),
    ("sub", "structure::is_substructure"),
    ("enumerate", "classes::enumerate_class"),
    ("check", "classes::check_property"),
    ("amalgamate", "classes::amalgamate"),
    ("union", "fraisse::thm1_union"),
    ("homogeneity", "fraisse::check_homogeneity"),
    ("limit build", "fraisse::build_limit"),
    ("limit check", "fraisse::check_extension_property"),
    ("limit replay", "fraisse::replay"),
    ("randgraph build", "fraisse::random_weighted_graph"),
    ("randgraph check", "fraisse::check_random_graph_property"),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Class(#[from] ClassError),
    #[error(transparent)]
    Fraisse(#[from] FraisseError),
    #[error("{path}: {msg}")]
    Io { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Forward,
    Reverse,
}

#[derive(Debug, Parser)]
#[command(name = "graded", version, about = "Graded structures over finite residuated chains")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Reserved; every construction is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate or display a chain.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Evaluate a formula in a structure.
    Eval {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        formula: String,
        /// Comma-separated `var=element` pairs.
        #[arg(long)]
        assign: Option<String>,
    },
    /// Decide whether two structures are isomorphic.
    Iso { a: PathBuf, b: PathBuf },
    /// List the isomorphism types generated by at most `k` elements.
    Age {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Decide whether the first structure is a substructure of the second.
    Sub { a: PathBuf, b: PathBuf },
    /// Enumerate the isomorphism types of a class.
    Enumerate {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        max_size: usize,
        #[arg(long)]
        count_only: bool,
    },
    /// Check a class property on all types up to size `k`.
    Check {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        property: Property,
    },
    /// Amalgamate two structures over a common substructure.
    Amalgamate {
        #[arg(long)]
        class: String,
        #[arg(long)]
        base: PathBuf,
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Build the chain union of all class types up to a size.
    Union {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        max_size: usize,
    },
    /// List partial isomorphisms that extend to no automorphism.
    Homogeneity {
        file: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Limit stages.
    #[command(subcommand)]
    Limit(LimitCmd),
    /// The random weighted graph.
    #[command(subcommand)]
    Randgraph(RandgraphCmd),
}

#[derive(Debug, Args)]
struct ClassArgs {
    #[arg(long)]
    class: String,
    #[arg(long)]
    chain: String,
}

#[derive(Debug, Subcommand)]
enum AlgebraCmd {
    /// Parse and validate a chain file.
    Validate { file: PathBuf },
    /// Print the conjunction and residuum tables.
    Show { chain: String },
}

#[derive(Debug, Subcommand)]
enum LimitCmd {
    /// Build stages and write them with a transcript.
    Build {
        #[command(flatten)]
        class: ClassArgs,
        #[arg(long)]
        stages: usize,
        #[arg(long)]
        budget: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = OrderArg::Forward)]
        order: OrderArg,
    },
    /// Check the extension property of a stage.
    Check {
        #[arg(long)]
        stage: PathBuf,
        #[arg(long)]
        class: String,
        #[arg(long)]
        budget: usize,
        /// Only embeddings into the elements of this structure are checked.
        #[arg(long)]
        base: Option<PathBuf>,
    },
    /// Rebuild the stages recorded in a transcript.
    Replay {
        transcript: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum RandgraphCmd {
    /// Build the graph after a number of rounds.
    Build {
        #[arg(long)]
        chain: String,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Look for witness sets without a witness vertex.
    Check {
        #[arg(long)]
        structure: PathBuf,
        #[arg(long)]
        max_x: usize,
        /// Comma-separated vertices the witness sets are drawn from.
        #[arg(long)]
        within: Option<String>,
    },
}

/// Output of a successful command; `passed` is false when a requested check
/// found a problem.
struct Report {
    text: String,
    passed: bool,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, passed: true }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        msg: e.to_string(),
    })
}

fn load_structure(path: &Path) -> Result<StructureFile, CliError> {
    let text = read(path)?;
    Ok(parse_structure(&text, path.parent())?)
}

/// The chain and the reference written into output files; file references
/// become absolute so the outputs resolve from any directory.
fn load_chain(text: &str) -> Result<(Arc<Chain>, ChainRef), CliError> {
    let mut r: ChainRef = text.parse()?;
    if let ChainRef::File(p) = &r {
        let abs = fs::canonicalize(p).map_err(|e| CliError::Io {
            path: p.display().to_string(),
            msg: e.to_string(),
        })?;
        r = ChainRef::File(abs);
    }
    Ok((Arc::new(r.resolve(None)?), r))
}

fn class_spec(name: &str) -> Result<ClassSpec, CliError> {
    ClassSpec::by_name(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn algebra_cmd(cmd: AlgebraCmd, format: Format) -> Result<Report, CliError> {
    match cmd {
        AlgebraCmd::Validate { file } => {
            let c = Chain::parse_file(&read(&file)?)?;
            Ok(Report::ok(match format {
                Format::Text => format!(
                    "valid chain {} size={} one={} zero={}\n",
                    c.name(),
                    c.size(),
                    c.one(),
                    c.zero()
                ),
                Format::Tsv => format!("{}\t{}\t{}\t{}\n", c.name(), c.size(), c.one(), c.zero()),
            }))
        }
        AlgebraCmd::Show { chain } => {
            let (c, _) = load_chain(&chain)?;
            Ok(Report::ok(match format {
                Format::Text => c.render_tables(),
                Format::Tsv => {
                    let mut out = String::new();
                    for a in c.ranks() {
                        for b in c.ranks() {
                            let _ = writeln!(out, "conj\t{a}\t{b}\t{}", c.conj(a, b));
                        }
                    }
                    for a in c.ranks() {
                        for b in c.ranks() {
                            let _ = writeln!(out, "res\t{a}\t{b}\t{}", c.res(a, b));
                        }
                    }
                    out
                }
            }))
        }
    }
}

fn parse_assign(text: &str) -> Result<Vec<(&str, &str)>, CliError> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            pair.split_once('=')
                .map(|(v, e)| (v.trim(), e.trim()))
                .ok_or_else(|| CliError::Usage(format!("bad assignment `{pair}` (expected var=element)")))
        })
        .collect()
}

fn eval_cmd(structure: &Path, formula: &str, assign: Option<&str>, format: Format) -> Result<Report, CliError> {
    let file = load_structure(structure)?;
    let m = &file.structure;
    let phi = parse_formula(formula, m.signature())?;
    let pairs = match assign {
        Some(text) => parse_assign(text)?,
        None => vec![],
    };
    let v = Assignment::from_names(m, pairs)?;
    let value = evaluate(m, &phi, &v)?;
    let designated = m.chain().in_filter(value);
    Ok(Report::ok(match format {
        Format::Text => format!("value {value}\nin filter: {}\n", yes_no(designated)),
        Format::Tsv => format!("{value}\t{designated}\n"),
    }))
}

fn age_cmd(path: &Path, k: usize, format: Format) -> Result<Report, CliError> {
    let file = load_structure(path)?;
    let forms = age(&file.structure, k);
    let mut out = String::new();
    if format == Format::Text {
        let _ = writeln!(out, "age k={k} types={}", forms.len());
    }
    for f in &forms {
        match format {
            Format::Text => {
                let _ = writeln!(out, "size={} form={f}", f.size());
            }
            Format::Tsv => {
                let _ = writeln!(out, "{}\t{f}", f.size());
            }
        }
    }
    Ok(Report::ok(out))
}

fn enumerate_cmd(class: &ClassArgs, max_size: usize, count_only: bool, format: Format) -> Result<Report, CliError> {
    let spec = class_spec(&class.class)?;
    let (chain, chain_ref) = load_chain(&class.chain)?;
    let types = classes::enumerate_class(&spec, &chain, max_size)?;
    if count_only {
        return Ok(Report::ok(format!("{}\n", types.len())));
    }
    let mut out = String::new();
    for (i, t) in types.iter().enumerate() {
        match format {
            Format::Text => {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&write_structure(&format!("t{i}"), &chain_ref.to_string(), &t.structure));
            }
            Format::Tsv => {
                let _ = writeln!(out, "{i}\t{}\t{}", t.structure.len(), t.form);
            }
        }
    }
    Ok(Report::ok(out))
}

fn check_cmd(class: &ClassArgs, k: usize, property: Property, format: Format) -> Result<Report, CliError> {
    let spec = class_spec(&class.class)?;
    let (chain, _) = load_chain(&class.chain)?;
    let rep = classes::check_property(&spec, &chain, k, property)?;
    let text = match format {
        Format::Text => rep.render(),
        Format::Tsv => {
            let mut out = format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                rep.property.name(),
                rep.class,
                rep.chain,
                rep.k,
                rep.types,
                rep.instances,
                rep.constructor_witnesses,
                rep.fallback_witnesses,
                rep.counterexamples.len()
            );
            for c in &rep.counterexamples {
                let _ = writeln!(out, "counterexample\t{}", c.detail);
            }
            out
        }
    };
    Ok(Report {
        text,
        passed: rep.passed(),
    })
}

fn amalgamate_cmd(class: &str, base: &Path, left: &Path, right: &Path) -> Result<Report, CliError> {
    let spec = class_spec(class)?;
    let b = load_structure(base)?;
    let l = load_structure(left)?;
    let r = load_structure(right)?;
    let vf = VFormation::new(b.structure, l.structure, r.structure)?;
    let (m, searched) = classes::amalgamate(&spec, &vf)?;
    let mut out = format!(
        "# witness: {}\n",
        if searched { "search" } else { "class construction" }
    );
    out.push_str(&write_structure("amalgam", &l.chain_ref.to_string(), &m));
    Ok(Report::ok(out))
}

fn union_cmd(class: &ClassArgs, max_size: usize) -> Result<Report, CliError> {
    let spec = class_spec(&class.class)?;
    let (chain, chain_ref) = load_chain(&class.chain)?;
    let types = classes::enumerate_class(&spec, &chain, max_size)?;
    let members: Vec<_> = types.into_iter().map(|t| t.structure).collect();
    let m = fraisse::thm1_union(&spec, &members)?;
    let mut out = format!("# members: {}\n", members.len());
    out.push_str(&write_structure("union", &chain_ref.to_string(), &m));
    Ok(Report::ok(out))
}

fn homogeneity_cmd(path: &Path, k: usize, format: Format) -> Result<Report, CliError> {
    let file = load_structure(path)?;
    let m = &file.structure;
    let rep = fraisse::check_homogeneity(m, k);
    let mut out = String::new();
    match format {
        Format::Text => {
            let _ = writeln!(out, "defects={} classes={}", rep.defects.len(), rep.classes.len());
            for (rep_iso, count) in &rep.classes {
                let _ = writeln!(out, "class {} count={count}", fraisse::render_partial_iso(m, rep_iso));
            }
        }
        Format::Tsv => {
            for (rep_iso, count) in &rep.classes {
                let _ = writeln!(out, "{}\t{count}", fraisse::render_partial_iso(m, rep_iso));
            }
        }
    }
    Ok(Report {
        text: out,
        passed: rep.is_homogeneous(),
    })
}

fn stage_file_name(i: usize) -> String {
    format!("stage_{i}.gs")
}

fn write_stages(
    dir: &Path,
    chain_ref: &str,
    stages: &[crate::structure::GradedStructure],
) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::Io {
        path: dir.display().to_string(),
        msg: e.to_string(),
    })?;
    for (i, s) in stages.iter().enumerate() {
        write(&dir.join(stage_file_name(i)), &write_structure(&format!("stage{i}"), chain_ref, s))?;
    }
    Ok(())
}

fn stage_summary(stages: &[crate::structure::GradedStructure], format: Format) -> String {
    let mut out = String::new();
    for (i, s) in stages.iter().enumerate() {
        match format {
            Format::Text => {
                let _ = writeln!(out, "stage {i}: {} elements", s.len());
            }
            Format::Tsv => {
                let _ = writeln!(out, "{i}\t{}", s.len());
            }
        }
    }
    out
}

fn limit_cmd(cmd: LimitCmd, format: Format) -> Result<Report, CliError> {
    match cmd {
        LimitCmd::Build {
            class,
            stages,
            budget,
            out,
            order,
        } => {
            let spec = class_spec(&class.class)?;
            let (chain, chain_ref) = load_chain(&class.chain)?;
            let order = match order {
                OrderArg::Forward => TaskOrder::Forward,
                OrderArg::Reverse => TaskOrder::Reverse,
            };
            let run = fraisse::build_limit(&spec, &chain, &chain_ref, stages, budget, order)?;
            write_stages(&out, &chain_ref.to_string(), &run.stages)?;
            write(&out.join("transcript.txt"), &run.transcript.render())?;
            Ok(Report::ok(stage_summary(&run.stages, format)))
        }
        LimitCmd::Check {
            stage,
            class,
            budget,
            base,
        } => {
            let spec = class_spec(&class)?;
            let m = load_structure(&stage)?.structure;
            let restrict = match base {
                Some(p) => Some(load_structure(&p)?.structure.elements().to_vec()),
                None => None,
            };
            let defects = fraisse::check_extension_property(&m, &spec, budget, restrict.as_deref())?;
            let mut out = String::new();
            if format == Format::Text {
                let _ = writeln!(out, "defects={}", defects.len());
            }
            for d in &defects {
                let _ = writeln!(out, "{}", d.render());
            }
            Ok(Report {
                text: out,
                passed: defects.is_empty(),
            })
        }
        LimitCmd::Replay { transcript, out } => {
            let text = read(&transcript)?;
            let stages = fraisse::replay(&text)?;
            if let Some(dir) = out {
                let chain_ref = text
                    .lines()
                    .find_map(|l| l.strip_prefix("chain "))
                    .ok_or_else(|| FraisseError::Transcript("missing chain line".into()))?;
                write_stages(&dir, chain_ref.trim(), &stages)?;
            }
            Ok(Report::ok(stage_summary(&stages, format)))
        }
    }
}

fn randgraph_cmd(cmd: RandgraphCmd, format: Format) -> Result<Report, CliError> {
    match cmd {
        RandgraphCmd::Build { chain, rounds, out } => {
            let (chain, chain_ref) = load_chain(&chain)?;
            let g = fraisse::random_weighted_graph(&chain, rounds)?;
            let mut file = String::new();
            for r in 0..=rounds {
                let names: Vec<&str> = (0..g.graph.len())
                    .filter(|&v| g.round_of[v] == r)
                    .map(|v| g.graph.element(v))
                    .collect();
                let _ = writeln!(file, "# round {r}: {}", names.len());
            }
            file.push_str(&write_structure("randgraph", &chain_ref.to_string(), &g.graph));
            match out {
                Some(path) => {
                    write(&path, &file)?;
                    let mut text = String::new();
                    for r in 0..=rounds {
                        let n = g.round_of.iter().filter(|&&x| x == r).count();
                        match format {
                            Format::Text => {
                                let _ = writeln!(text, "round {r}: {n} vertices");
                            }
                            Format::Tsv => {
                                let _ = writeln!(text, "{r}\t{n}");
                            }
                        }
                    }
                    Ok(Report::ok(text))
                }
                None => Ok(Report::ok(file)),
            }
        }
        RandgraphCmd::Check {
            structure,
            max_x,
            within,
        } => {
            let m = load_structure(&structure)?.structure;
            let pool = match within {
                Some(list) => Some(
                    list.split(',')
                        .filter(|s| !s.trim().is_empty())
                        .map(|name| {
                            m.index_of(name.trim())
                                .ok_or_else(|| StructureError::UnknownElement(name.trim().to_string()))
                        })
                        .collect::<Result<Vec<usize>, _>>()?,
                ),
                None => None,
            };
            let defects = fraisse::check_random_graph_property(&m, max_x, pool.as_deref())?;
            let mut out = String::new();
            if format == Format::Text {
                let _ = writeln!(out, "defects={}", defects.len());
            }
            for d in &defects {
                let _ = writeln!(out, "{}", d.render());
            }
            Ok(Report {
                text: out,
                passed: defects.is_empty(),
            })
        }
    }
}

fn dispatch(cli: Cli) -> Result<Report, CliError> {
    let format = cli.format;
    match cli.command {
        Command::Algebra(cmd) => algebra_cmd(cmd, format),
        Command::Eval {
            structure,
            formula,
            assign,
        } => eval_cmd(&structure, &formula, assign.as_deref(), format),
        Command::Iso { a, b } => {
            let ma = load_structure(&a)?.structure;
            let mb = load_structure(&b)?.structure;
            Ok(match is_isomorphic(&ma, &mb) {
                Some(iso) => Report::ok(match format {
                    Format::Text => format!("isomorphic: {}\n", iso.render(&ma, &mb)),
                    Format::Tsv => format!("true\t{}\n", iso.render(&ma, &mb)),
                }),
                None => Report {
                    text: match format {
                        Format::Text => "not isomorphic\n".into(),
                        Format::Tsv => "false\n".into(),
                    },
                    passed: false,
                },
            })
        }
        Command::Age { file, k } => age_cmd(&file, k, format),
        Command::Sub { a, b } => {
            let ma = load_structure(&a)?.structure;
            let mb = load_structure(&b)?.structure;
            let holds = is_substructure(&ma, &mb)?;
            Ok(Report {
                text: match format {
                    Format::Text if holds => "substructure\n".into(),
                    Format::Text => "not a substructure\n".into(),
                    Format::Tsv => format!("{holds}\n"),
                },
                passed: holds,
            })
        }
        Command::Enumerate {
            class,
            max_size,
            count_only,
        } => enumerate_cmd(&class, max_size, count_only, format),
        Command::Check { class, k, property } => check_cmd(&class, k, property, format),
        Command::Amalgamate {
            class,
            base,
            left,
            right,
        } => amalgamate_cmd(&class, &base, &left, &right),
        Command::Union { class, max_size } => union_cmd(&class, max_size),
        Command::Homogeneity { file, k } => homogeneity_cmd(&file, k, format),
        Command::Limit(cmd) => limit_cmd(cmd, format),
        Command::Randgraph(cmd) => randgraph_cmd(cmd, format),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: rendered,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: rendered,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli)),
            Err(e) => Err(CliError::Usage(format!("--jobs: {e}"))),
        },
        None => dispatch(cli),
    };
    match result {
        Ok(rep) => Outcome {
            code: if rep.passed { 0 } else { 1 },
            stdout: rep.text,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Paths of every leaf subcommand known to the parser.
pub fn subcommand_paths() -> Vec<String> {
    fn walk(cmd: &clap::Command, prefix: &str, out: &mut Vec<String>) {
        for sub in cmd.get_subcommands() {
            let path = if prefix.is_empty() {
                sub.get_name().to_string()
            } else {
                format!("{prefix} {}", sub.get_name())
            };
            if sub.has_subcommands() {
                walk(sub, &path, out);
            } else {
                out.push(path);
            }
        }
    }
    let mut out = vec![];
    walk(&Cli::command(), "", &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn dispatch_table_covers_every_subcommand_once() {
        let paths: BTreeSet<String> = subcommand_paths().into_iter().collect();
        let table: Vec<&str> = DISPATCH.iter().map(|(p, _)| *p).collect();
        let table_set: BTreeSet<String> = table.iter().map(|s| s.to_string()).collect();
        assert_eq!(table.len(), table_set.len());
        assert_eq!(paths, table_set);
        let ops: BTreeSet<&str> = DISPATCH.iter().map(|(_, o)| *o).collect();
        assert_eq!(ops.len(), DISPATCH.len());
    }

    #[test]
    fn parser_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn usage_errors_exit_two() {
        let out = run(["graded", "enumerate", "--bogus"]);
        assert_eq!(out.code, 2);
        let out = run(["graded", "enumerate", "--class", "k9", "--chain", "bool", "--max-size", "2"]);
        assert_eq!(out.code, 2);
    }

    #[test]
    fn enumerate_counts_graphs() {
        let out = run([
            "graded", "enumerate", "--class", "k1", "--chain", "bool", "--max-size", "3", "--count-only",
        ]);
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "7\n");
    }

    #[test]
    fn domain_errors_exit_one() {
        let out = run(["graded", "algebra", "show", "luk:0"]);
        assert_eq!(out.code, 1);
        assert!(out.stderr.starts_with("error:"));
    }
}
