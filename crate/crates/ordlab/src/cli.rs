//! Argument parsing, dispatch and run reports.
//!
//! Every command produces a [`RunReport`]; with `--json` the report is the
//! whole output, otherwise a short text rendering is printed. Exit status:
//! 0 ok, 1 violations found, 2 usage or input error.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use ordlab_core::cseq::{build_avoiding, standard_csequence, verify_csequence, AvoidSet, CSequence};
use ordlab_core::ordinal::{decode_seq, encode_seq, format_list, SeqCode};
use ordlab_core::poset::{
    is_suborder, maximal_antichains, regular_closure, regularity_failure, support_product, RegularityFailure,
};
use ordlab_core::refine::{compatible_refinement_product, delta_system, knaster_refinement, RefineError};
use ordlab_core::rhotree::{build_arena, TreeView};
use ordlab_core::specforcing::{
    linked_leq, linked_reduct_refuter, pt_compatible, pt_union, pt_validate, syntactic_incompatible,
    tree_reduct_refuter, BitString, LinkedCondition, LinkedParams, SpecCondition,
};
use ordlab_core::walks::{walk_with_code, Rho0Code, Walk};
use ordlab_core::Ordinal;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::emit::{to_dot, tree_emit};
use crate::formats::{
    parse_index_list, parse_ordinal_lines, read_json, read_text, KnasterInput, PosetFile, ProductInput, TreeFile,
};
use crate::suite;

#[derive(Debug, Parser)]
#[command(
    name = "ordlab",
    version,
    about = "Walks on ordinals and finite forcing combinatorics"
)]
pub struct Cli {
    /// Print the run report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordinal arithmetic and sequence codes.
    #[command(subcommand)]
    Ord(OrdCmd),
    /// C-sequence entries and checks.
    #[command(subcommand)]
    Cseq(CseqCmd),
    /// The walk from β down to α and its code ρ₀(α, β).
    Walk(WalkArgs),
    /// Fragments of the code tree.
    #[command(subcommand)]
    Tree(TreeCmd),
    /// Finite posets: regularity, closures, products, antichains.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Δ-systems and compatible refinements.
    #[command(subcommand)]
    Refine(RefineCmd),
    /// Specialization forcing and the linked poset.
    #[command(subcommand)]
    Spec(SpecCmd),
    /// Run the acceptance suites.
    Suite(SuiteArgs),
}

#[derive(Debug, Subcommand)]
pub enum OrdCmd {
    /// Normal form and shape of an ordinal.
    Parse {
        x: Ordinal,
    },
    Add {
        a: Ordinal,
        b: Ordinal,
    },
    Compare {
        a: Ordinal,
        b: Ordinal,
    },
    /// Code of a comma-separated sequence of naturals.
    Encode {
        seq: String,
    },
    Decode {
        code: String,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct AvoidArgs {
    /// Limit ordinals the C-sequences must avoid, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub avoid: Vec<Ordinal>,
    /// File with one avoided ordinal per line.
    #[arg(long)]
    pub avoid_file: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum CseqCmd {
    /// The `i`-th entry of `C_α`.
    Entry {
        #[arg(long)]
        alpha: Ordinal,
        #[arg(long)]
        i: u64,
        #[command(flatten)]
        avoid: AvoidArgs,
    },
    /// Check avoidance, monotonicity and cofinality on the levels of a file.
    Verify {
        #[arg(long)]
        arena_file: PathBuf,
        #[arg(long, default_value_t = 10)]
        probes: usize,
        #[command(flatten)]
        avoid: AvoidArgs,
    },
}

#[derive(Debug, Args)]
pub struct WalkArgs {
    #[arg(long)]
    pub alpha: Ordinal,
    #[arg(long)]
    pub beta: Ordinal,
    #[command(flatten)]
    pub avoid: AvoidArgs,
}

#[derive(Debug, Subcommand)]
pub enum TreeCmd {
    /// Canonical nodes at the given levels, as DOT or JSON.
    Emit {
        /// Ordinals whose walk closure is the arena.
        #[arg(long, value_delimiter = ',', required = true)]
        seed: Vec<Ordinal>,
        #[arg(long, value_delimiter = ',', required = true)]
        levels: Vec<Ordinal>,
        #[command(flatten)]
        avoid: AvoidArgs,
        #[arg(long, default_value_t = 8)]
        probes: usize,
        /// Print DOT (the default).
        #[arg(long)]
        dot: bool,
        /// Write the DOT or JSON rendering to this file instead.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    /// Is the subset a regular suborder?
    CheckRegular {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Least regular suborder containing the subset, by the closure procedure.
    Closure {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long, default_value = "")]
        subset: String,
    },
    /// Support product of the factor files.
    Product {
        #[arg(long, value_delimiter = ',', required = true)]
        factors: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        nu: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    Antichains {
        #[arg(long)]
        poset: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum RefineCmd {
    /// Largest Δ-subsystem of a family of sets (one comma-separated set per line).
    Delta {
        #[arg(long)]
        sets: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    Product {
        #[arg(long)]
        input: PathBuf,
    },
    Knaster {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpecCmd {
    /// Compatibility of two conditions `node:colour,…` on a tree.
    Compat {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long, default_value = "")]
        q: String,
    },
    /// An extension of `q` incompatible with `{(t, 0)}`.
    RefuteTree {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long, default_value = "")]
        q: String,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        beta: u32,
    },
    /// An extension of `q = ⟨s, a⟩` incompatible with `⟨∅, {point}⟩`.
    RefuteLinked {
        #[arg(long)]
        lambda: u8,
        /// The set X of binary strings of length λ.
        #[arg(long, value_delimiter = ',', required = true)]
        x: Vec<BitString>,
        /// The strings of `s_q`, in order.
        #[arg(long, value_delimiter = ',')]
        s: Vec<String>,
        #[arg(long, value_delimiter = ',')]
        a: Vec<BitString>,
        #[arg(long)]
        point: BitString,
    },
}

#[derive(Debug, Args)]
pub struct SuiteArgs {
    /// Criteria to run, e.g. `1,5`; all by default.
    #[arg(long, value_delimiter = ',')]
    pub only: Vec<u8>,
    #[arg(long, default_value_t = suite::DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Usage,
    Input,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Outcome {
    Ok,
    Violations { items: Vec<String> },
    Error { kind: ErrorKind, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: Vec<String>,
    pub outcome: Outcome,
    /// Files written.
    pub artifacts: Vec<PathBuf>,
    pub elapsed_ms: u128,
    /// The value the operation returned.
    pub result: Value,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        match self.outcome {
            Outcome::Ok => 0,
            Outcome::Violations { .. } => 1,
            Outcome::Error { .. } => 2,
        }
    }
}

/// A finished run: the report and its text rendering.
#[derive(Debug)]
pub struct Execution {
    pub report: RunReport,
    pub text: String,
    pub json: bool,
}

impl Execution {
    /// What goes to stdout.
    pub fn stdout(&self) -> String {
        if self.json {
            let mut s = serde_json::to_string_pretty(&self.report).expect("report serializes");
            s.push('\n');
            s
        } else {
            self.text.clone()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkOutput {
    pub walk: Walk,
    pub code: Rho0Code,
    pub seq_code: SeqCode,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularOutput {
    pub suborder: bool,
    pub regular: bool,
    pub failure: Option<RegularityFailure>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatOutput {
    pub compatible: bool,
    pub union: Option<SpecCondition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RefuteLinkedOutput {
    pub r: LinkedCondition,
    pub extends_q: bool,
    pub incompatible: bool,
}

/// Output of a command before it is wrapped in a report.
struct Done {
    text: String,
    result: Value,
    violations: Vec<String>,
    artifacts: Vec<PathBuf>,
}

impl Done {
    fn new<T: Serialize>(text: String, result: &T) -> Result<Self> {
        Ok(Done {
            text,
            result: serde_json::to_value(result)?,
            violations: Vec::new(),
            artifacts: Vec::new(),
        })
    }

    fn violations(mut self, v: Vec<String>) -> Self {
        self.violations = v;
        self
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Never panics on malformed input.
pub fn run<I, T>(args: I) -> Execution
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let start = Instant::now();
    let argv: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let command: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let wants_json = command.iter().any(|a| a == "--json");
    let report = |outcome, result, artifacts| RunReport {
        command: command.clone(),
        outcome,
        artifacts,
        elapsed_ms: start.elapsed().as_millis(),
        result,
    };
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind as K;
            let text = e.render().to_string();
            let outcome = match e.kind() {
                K::DisplayHelp | K::DisplayVersion => Outcome::Ok,
                _ => Outcome::Error {
                    kind: ErrorKind::Usage,
                    message: text.trim_end().to_string(),
                },
            };
            return Execution {
                report: report(outcome, Value::Null, Vec::new()),
                text,
                json: wants_json,
            };
        }
    };
    let json = cli.json;
    match dispatch(cli.command) {
        Ok(done) => {
            let outcome = if done.violations.is_empty() {
                Outcome::Ok
            } else {
                Outcome::Violations { items: done.violations }
            };
            Execution {
                report: report(outcome, done.result, done.artifacts),
                text: done.text,
                json,
            }
        }
        Err(e) => {
            let message = format!("{e:#}");
            Execution {
                text: format!("error: {message}\n"),
                report: report(
                    Outcome::Error {
                        kind: ErrorKind::Input,
                        message,
                    },
                    Value::Null,
                    Vec::new(),
                ),
                json,
            }
        }
    }
}

fn dispatch(command: Command) -> Result<Done> {
    match command {
        Command::Ord(c) => ord(c),
        Command::Cseq(c) => cseq(c),
        Command::Walk(a) => walk_cmd(a),
        Command::Tree(c) => tree(c),
        Command::Poset(c) => poset(c),
        Command::Refine(c) => refine(c),
        Command::Spec(c) => spec(c),
        Command::Suite(a) => suite_cmd(a),
    }
}

fn ord(c: OrdCmd) -> Result<Done> {
    match c {
        OrdCmd::Parse { x } => {
            let class = if x.is_zero() {
                "zero"
            } else if x.is_limit() {
                "limit"
            } else {
                "successor"
            };
            Done::new(format!("{x} ({class})\n"), &json!({ "ordinal": x, "class": class }))
        }
        OrdCmd::Add { a, b } => {
            let sum = &a + &b;
            Done::new(format!("{sum}\n"), &sum)
        }
        OrdCmd::Compare { a, b } => {
            let sign = match a.cmp(&b) {
                Ordering::Less => "<",
                Ordering::Equal => "=",
                Ordering::Greater => ">",
            };
            Done::new(format!("{a} {sign} {b}\n"), &sign)
        }
        OrdCmd::Encode { seq } => {
            let seq: Vec<u64> = seq
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty())
                .map(|p| p.parse().with_context(|| format!("bad natural {p:?}")))
                .collect::<Result<_>>()?;
            let code = encode_seq(&seq);
            Done::new(format!("{code}\n"), &code)
        }
        OrdCmd::Decode { code } => {
            let n: BigUint = code
                .trim()
                .parse()
                .map_err(|_| anyhow!("not a natural number: {code:?}"))?;
            let seq = decode_seq(&SeqCode::from(n));
            let text = seq.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
            Done::new(format!("<{text}>\n"), &seq)
        }
    }
}

fn avoid_set(args: &AvoidArgs) -> Result<AvoidSet> {
    let mut members = args.avoid.clone();
    if let Some(path) = &args.avoid_file {
        members.extend(parse_ordinal_lines(&read_text(path)?).with_context(|| path.display().to_string())?);
    }
    Ok(AvoidSet::new(members)?)
}

fn cseq(c: CseqCmd) -> Result<Done> {
    match c {
        CseqCmd::Entry { alpha, i, avoid } => {
            let c = build_avoiding(avoid_set(&avoid)?, standard_csequence());
            let entry = c.entry(&alpha, i);
            let text = match &entry {
                Some(x) => format!("{x}\n"),
                None => format!("C_{alpha} has no entry {i}\n"),
            };
            Done::new(text, &entry)
        }
        CseqCmd::Verify {
            arena_file,
            probes,
            avoid,
        } => {
            let levels =
                parse_ordinal_lines(&read_text(&arena_file)?).with_context(|| arena_file.display().to_string())?;
            let set = avoid_set(&avoid)?;
            let c = build_avoiding(set.clone(), standard_csequence());
            let report = verify_csequence(&c, &levels, &set, probes);
            let violations: Vec<String> = report.violations.iter().map(|v| format!("{v:?}")).collect();
            let mut text = format!(
                "{} levels checked, {} violations\n",
                report.checked_levels,
                violations.len()
            );
            for v in &violations {
                writeln!(text, "  {v}")?;
            }
            Ok(Done::new(text, &report)?.violations(violations))
        }
    }
}

fn walk_cmd(a: WalkArgs) -> Result<Done> {
    let c = build_avoiding(avoid_set(&a.avoid)?, standard_csequence());
    let (walk, code) = walk_with_code(&c, &a.alpha, &a.beta)?;
    let seq_code = code.seq_code();
    let entries = code.entries.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    let text = format!(
        "steps: {}\ncode: {}\nseqcode: {seq_code}\n",
        format_list(&walk.steps),
        if entries.is_empty() { "<>".to_string() } else { entries }
    );
    Done::new(text, &WalkOutput { walk, code, seq_code })
}

fn tree(c: TreeCmd) -> Result<Done> {
    let TreeCmd::Emit {
        seed,
        levels,
        avoid,
        probes,
        dot: _,
        out,
    } = c;
    let set = avoid_set(&avoid)?;
    let c = build_avoiding(set.clone(), standard_csequence());
    let mut points = seed;
    points.extend(levels.iter().cloned());
    let mut arena = build_arena(&points, c, probes)?;
    arena.add_probe_points(set.iter().cloned());
    let mut view = TreeView::new(&arena);
    let emitted = tree_emit(&mut view, &levels)?;
    let mut done = Done::new(to_dot(&emitted), &emitted)?;
    if let Some(path) = out {
        let body = if path.extension().is_some_and(|e| e == "json") {
            serde_json::to_string_pretty(&emitted)?
        } else {
            to_dot(&emitted)
        };
        write_file(&path, &body)?;
        done.text = format!(
            "{} nodes, {} edges written to {}\n",
            emitted.nodes.len(),
            emitted.edges.len(),
            path.display()
        );
        done.artifacts.push(path);
    }
    Ok(done)
}

fn write_file(path: &Path, body: &str) -> Result<()> {
    std::fs::write(path, body).with_context(|| format!("writing {}", path.display()))
}

fn load_poset(path: &Path) -> Result<ordlab_core::poset::FinitePoset> {
    read_json::<PosetFile>(path)?
        .to_poset()
        .with_context(|| path.display().to_string())
}

fn poset(c: PosetCmd) -> Result<Done> {
    match c {
        PosetCmd::CheckRegular { poset, subset } => {
            let q = load_poset(&poset)?;
            let a = parse_index_list(&subset)?;
            let failure = regularity_failure(&q, &a)?;
            let out = RegularOutput {
                suborder: is_suborder(&q, &a),
                regular: failure.is_none(),
                failure,
            };
            let violations: Vec<String> = out.failure.iter().map(describe_failure).collect();
            let text = if out.regular {
                "regular\n".to_string()
            } else {
                format!("not regular: {}\n", violations[0])
            };
            Ok(Done::new(text, &out)?.violations(violations))
        }
        PosetCmd::Closure { poset, subset } => {
            let q = load_poset(&poset)?;
            let closure = regular_closure(&q, &parse_index_list(&subset)?)?;
            let text = closure.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
            Done::new(format!("{text}\n"), &closure)
        }
        PosetCmd::Product { factors, nu, out } => {
            let posets = factors.iter().map(|f| load_poset(f)).collect::<Result<Vec<_>>>()?;
            let product = support_product(&posets, nu)?;
            let coords: Vec<&Vec<usize>> = product.conditions().iter().map(|c| &c.coords).collect();
            let result = json!({ "conditions": coords, "poset": PosetFile::from_poset(product.poset()) });
            let mut done = Done::new(format!("{} conditions\n", coords.len()), &result)?;
            if let Some(path) = out {
                write_file(
                    &path,
                    &serde_json::to_string_pretty(&PosetFile::from_poset(product.poset()))?,
                )?;
                done.artifacts.push(path);
            }
            Ok(done)
        }
        PosetCmd::Antichains { poset } => {
            let q = load_poset(&poset)?;
            let all = maximal_antichains(&q)?;
            let mut text = String::new();
            for a in &all {
                writeln!(text, "{}", a.iter().map(usize::to_string).collect::<Vec<_>>().join(","))?;
            }
            Done::new(text, &all)
        }
    }
}

fn describe_failure(f: &RegularityFailure) -> String {
    match f {
        RegularityFailure::NotSuborder { p, q } => {
            format!("{p} and {q} are compatible without a common extension in the subset")
        }
        RegularityFailure::AntichainNotMaximal { antichain, witness } => {
            format!("maximal antichain {antichain:?} of the subset is incompatible with {witness}")
        }
    }
}

fn refine(c: RefineCmd) -> Result<Done> {
    match c {
        RefineCmd::Delta { sets, k } => {
            let family = parse_sets(&read_text(&sets)?)?;
            let ds = delta_system(&family, k);
            let text = match &ds {
                Some(d) => format!("root {:?}, members {:?}\n", d.root, d.members),
                None => format!("no Δ-system of size {k}\n"),
            };
            let violations = if ds.is_none() {
                vec![format!("no Δ-system of size {k}")]
            } else {
                Vec::new()
            };
            Ok(Done::new(text, &ds)?.violations(violations))
        }
        RefineCmd::Product { input } => {
            let inp: ProductInput = read_json(&input)?;
            let factors = inp
                .factors
                .iter()
                .map(PosetFile::to_poset)
                .collect::<Result<Vec<_>>>()?;
            let product = support_product(&factors, inp.nu)?;
            let indices = inp
                .conditions
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    product
                        .index_of(c)
                        .ok_or_else(|| anyhow!("condition {i} is not in the product"))
                })
                .collect::<Result<Vec<_>>>()?;
            match compatible_refinement_product(&product, &indices) {
                Ok((out, trace)) => Done::new(format!("{out:?}\n"), &json!({ "output": out, "trace": trace })),
                Err(e) => refinement_failure(e),
            }
        }
        RefineCmd::Knaster { input } => {
            let inp: KnasterInput = read_json(&input)?;
            let tree = inp.tree.to_tree()?;
            let conditions = inp.conditions(&tree)?;
            match knaster_refinement(&tree, &inp.witness, &conditions) {
                Ok((out, trace)) => Done::new(
                    format!("{out:?} ({} fingerprints)\n", trace.fingerprint_count),
                    &json!({ "output": out, "trace": trace }),
                ),
                Err(e) => refinement_failure(e),
            }
        }
    }
}

/// Findings about the input (bad witness, splitting, no compatible pair)
/// are violations; malformed input is an error.
fn refinement_failure(e: RefineError) -> Result<Done> {
    match e {
        RefineError::Empty
        | RefineError::WitnessInvalid(_)
        | RefineError::SplittingDetected { .. }
        | RefineError::NotCompatible(..) => {
            let msg = e.to_string();
            Ok(Done::new(format!("{msg}\n"), &Value::Null)?.violations(vec![msg]))
        }
        other => bail!(other),
    }
}

/// One set per line, elements comma-separated; `#` starts a comment.
fn parse_sets(text: &str) -> Result<Vec<Vec<u64>>> {
    text.lines()
        .enumerate()
        .map(|(i, line)| (i, line.split('#').next().unwrap_or("").trim()))
        .filter(|(_, line)| !line.is_empty())
        .map(|(i, line)| {
            let mut set: Vec<u64> = line
                .split(',')
                .map(str::trim)
                .filter(|p| !p.is_empty() && *p != "{}")
                .map(|p| p.parse().with_context(|| format!("line {}: bad element {p:?}", i + 1)))
                .collect::<Result<_>>()?;
            set.sort_unstable();
            set.dedup();
            Ok(set)
        })
        .collect()
}

/// `3:1,5:0`.
fn parse_assignment(s: &str) -> Result<BTreeMap<usize, u64>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (node, colour) = p
                .split_once(':')
                .ok_or_else(|| anyhow!("expected node:colour, got {p:?}"))?;
            Ok((
                node.trim().parse().with_context(|| format!("bad node in {p:?}"))?,
                colour.trim().parse().with_context(|| format!("bad colour in {p:?}"))?,
            ))
        })
        .collect()
}

fn format_condition(c: &SpecCondition) -> String {
    let parts: Vec<String> = c.assignment().iter().map(|(t, col)| format!("{t}:{col}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn spec(c: SpecCmd) -> Result<Done> {
    match c {
        SpecCmd::Compat { tree, p, q } => {
            let tree = read_json::<TreeFile>(&tree)?.to_tree()?;
            let p = pt_validate(&tree, parse_assignment(&p)?).context("p")?;
            let q = pt_validate(&tree, parse_assignment(&q)?).context("q")?;
            let out = CompatOutput {
                compatible: pt_compatible(&tree, &p, &q),
                union: pt_union(&tree, &p, &q),
            };
            let text = match &out.union {
                Some(u) => format!("compatible: {}\n", format_condition(u)),
                None => "incompatible\n".to_string(),
            };
            Done::new(text, &out)
        }
        SpecCmd::RefuteTree { tree, q, t, beta } => {
            let tree = read_json::<TreeFile>(&tree)?.to_tree()?;
            let q = pt_validate(&tree, parse_assignment(&q)?).context("q")?;
            let r = tree_reduct_refuter(&tree, &q, t, beta)?;
            let target = pt_validate(&tree, [(t, 0)].into_iter().collect())?;
            let mut violations = Vec::new();
            if !r.extends(&q) {
                violations.push("r does not extend q".to_string());
            }
            if pt_compatible(&tree, &r, &target) {
                violations.push(format!("r is compatible with {{{t}:0}}"));
            }
            Ok(Done::new(format!("{}\n", format_condition(&r)), &r)?.violations(violations))
        }
        SpecCmd::RefuteLinked { lambda, x, s, a, point } => {
            let params = LinkedParams {
                lambda,
                x: x.into_iter().collect(),
                max_n: 0,
                max_a: 0,
            };
            let q = LinkedCondition {
                s: s.iter().map(|p| p.parse()).collect::<Result<_, _>>()?,
                a: a.into_iter().collect(),
            };
            let r = linked_reduct_refuter(&params, &q, &point)?;
            let out = RefuteLinkedOutput {
                extends_q: linked_leq(&r, &q),
                incompatible: syntactic_incompatible(&r, &point),
                r,
            };
            let mut violations = Vec::new();
            if !out.extends_q {
                violations.push("r is not below q".to_string());
            }
            if !out.incompatible {
                violations.push(format!("r is compatible with ⟨∅, {{{point}}}⟩"));
            }
            let strings: Vec<String> = out.r.s.iter().map(|b| format!("{b:?}")).collect();
            let text = format!("s = [{}], a = {:?}\n", strings.join(", "), out.r.a);
            Ok(Done::new(text, &out)?.violations(violations))
        }
    }
}

fn suite_cmd(a: SuiteArgs) -> Result<Done> {
    let results: Vec<suite::CriterionResult> = if a.only.is_empty() {
        suite::run_all(a.seed)
    } else {
        a.only
            .iter()
            .map(|&id| suite::run_criterion(id, a.seed).ok_or_else(|| anyhow!("no criterion {id}")))
            .collect::<Result<_>>()?
    };
    let mut text = String::new();
    for r in &results {
        writeln!(text, "{}", r.line())?;
    }
    let passed = results.iter().filter(|r| r.passed).count();
    writeln!(text, "{passed}/{} criteria pass", results.len())?;
    let violations = results.iter().filter(|r| !r.passed).map(|r| r.line()).collect();
    Ok(Done::new(text, &results)?.violations(violations))
}
