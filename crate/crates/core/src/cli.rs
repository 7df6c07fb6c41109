//! The `homog` command line.
//!
//! Presentation arguments are file paths, or the stem of a bundled
//! presentation such as `complete_auto`. Exit status is 0 on success, 1
//! when a verification fails and 2 on usage or input errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::automata::{write_dfa, Env, Value};
use crate::autostruct::{
    freeproduct_language, irreducible_language, refutation_witness, validate_structure,
    MultiplierSuite, ValidationError,
};
use crate::catalogue;
use crate::construct::{
    code_decompose, combined_presentation, e_rule_critical_pairs, free_product,
    free_product_growth, ideal_correspondence, nary_extension, phi_presentation, quasi_commutation,
    verify_embedding, PhiMap,
};
use crate::derivation::{
    module_membership, CircuitKind, Circuits, DerivationError, FreeRingElement, Membership,
};
use crate::oracle::Oracle;
use crate::presentation::Presentation;
use crate::rewrite::{
    check_local_confluence, check_termination, complete, find_precedence, OrderKind, RewriteError,
    RewriteSystem, TermOrder, DEFAULT_FUEL,
};
use crate::word::Word;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Output(#[from] io::Error),
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Whether the command's checks passed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Failed,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Ok
        } else {
            Status::Failed
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "homog",
    version,
    about = "Rewriting, automata and derivation tools for homogeneous monoids"
)]
pub struct Cli {
    #[command(flatten)]
    pub opts: Opts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Instantiate rule schemes up to this left-hand side length.
    #[arg(long, global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub bound: u64,
    /// Longest word examined by exhaustive checks.
    #[arg(long, global = true, default_value_t = 7, value_parser = clap::value_parser!(u64).range(1..))]
    pub maxlen: u64,
    /// Rewriting steps allowed per normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL as u64, value_parser = clap::value_parser!(u64).range(1..))]
    pub fuel: u64,
    /// Term order, e.g. `shortlex:c<a<b` or `rtl:b1<b2,b3<a`.
    #[arg(long, global = true)]
    pub order: Option<String>,
    /// Write the produced file here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

impl Opts {
    fn bound(&self) -> usize {
        self.bound as usize
    }

    fn maxlen(&self) -> usize {
        self.maxlen as usize
    }

    fn fuel(&self) -> usize {
        self.fuel as usize
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a presentation and check termination and local confluence.
    Check { presentation: String },
    /// Rewrite a word to normal form.
    Normalize { presentation: String, word: String },
    /// Run Knuth–Bendix completion.
    Complete {
        presentation: String,
        #[arg(long, default_value_t = 500)]
        max_rules: usize,
    },
    /// Show the congruence class of a word, or compare two words.
    Oracle {
        presentation: String,
        word: String,
        other: Option<String>,
    },
    /// Count congruence classes of each length.
    Growth { presentation: String },
    /// Check that a language meets every class exactly once.
    NfVerify {
        presentation: String,
        /// Language expression; defaults to the irreducible words.
        #[arg(long)]
        lang: Option<String>,
    },
    /// Evaluate a language or relation expression over the presentation's letters.
    Automata {
        presentation: String,
        expr: String,
        /// A second language to compare with.
        other: Option<String>,
    },
    /// Automatic structures.
    #[command(subcommand)]
    Structure(StructureCommand),
    /// Presentation constructions.
    #[command(subcommand)]
    Construct(ConstructCommand),
    /// Derivation paths and circuits of the three-rule system.
    #[command(subcommand)]
    Derivation(DerivationCommand),
    /// Run every certificate over the bundled catalogue.
    ReproduceTable,
}

#[derive(Debug, Subcommand)]
pub enum StructureCommand {
    /// Validate a multiplier suite against the oracle.
    Validate { presentation: String, suite: String },
    /// Compute the pumping witness against left multipliers.
    Witness {
        presentation: String,
        #[arg(long, default_value_t = 8)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
    },
    /// Write the automaton of irreducible words.
    Irreducible { presentation: String },
}

#[derive(Debug, Subcommand)]
pub enum ConstructCommand {
    /// Free product, renaming clashing letters of the second operand.
    FreeProduct { first: String, second: String },
    /// Pad every relation to length exactly n.
    Nary { presentation: String, n: usize },
    /// Map every relation into two letters.
    Phi { presentation: String },
    /// The presentation with both the original letters and the two-letter images.
    Combined { presentation: String },
    /// Split a word over x, y into image blocks and gaps.
    Decompose { presentation: String, word: String },
    /// Check that the two-letter map preserves and reflects equality.
    Embedding { presentation: String },
    /// Compare congruences of a presentation and its n-ary extension.
    Ideal { presentation: String, n: usize },
    /// Check quasi-commutation of the image rules over the original rules.
    QuasiCommutation { presentation: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CircuitArg {
    Ct1,
    Ct2,
    Ct3,
}

#[derive(Debug, Subcommand)]
pub enum DerivationCommand {
    /// Dump the path from `c u a b` to `c u b b`.
    Cu { u: String },
    /// Dump a critical circuit and its image in the free ring.
    Circuit {
        kind: CircuitArg,
        #[arg(long, default_value = "a")]
        x: String,
        #[arg(long, default_value = "")]
        u: String,
        #[arg(long, default_value = "")]
        v: String,
    },
    /// Check the circuit images for all short parameters.
    Table {
        #[arg(long, default_value_t = 3)]
        max_word: usize,
    },
    /// Decide whether `(ab − bb) a^(m+1)` lies in the module generated by
    /// `u (ab − bb) v` with `|v| ≤ m`.
    Membership { m: usize },
}

/// Parses `args` and runs the command, returning the exit status.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return 2;
            }
            let _ = write!(out, "{}", e.render());
            return 0;
        }
    };
    match run(&cli, out) {
        Ok(Status::Ok) => 0,
        Ok(Status::Failed) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Status, CliError> {
    let o = &cli.opts;
    match &cli.command {
        Command::Check { presentation } => check(&load(presentation)?, o, out),
        Command::Normalize { presentation, word } => normalize(&load(presentation)?, word, o, out),
        Command::Complete {
            presentation,
            max_rules,
        } => run_completion(&load(presentation)?, *max_rules, o, out),
        Command::Oracle {
            presentation,
            word,
            other,
        } => oracle(&load(presentation)?, word, other.as_deref(), out),
        Command::Growth { presentation } => {
            let p = load(presentation)?;
            let series = Oracle::new(p)
                .map_err(input)?
                .growth_series(o.maxlen())
                .map_err(input)?;
            for (n, c) in series.iter().enumerate() {
                writeln!(out, "length {n}: {c} classes")?;
            }
            Ok(Status::Ok)
        }
        Command::NfVerify { presentation, lang } => {
            let p = load(presentation)?;
            let l = match lang {
                Some(e) => Env::new(&p.alphabet).lang(e).map_err(input)?,
                None => irreducible_language(&p).map_err(input)?,
            };
            let report = Oracle::new(p.clone())
                .map_err(input)?
                .verify_normal_forms(&l, o.maxlen())
                .map_err(input)?;
            writeln!(out, "classes checked: {}", report.classes_checked)?;
            for line in report.lines(&p) {
                writeln!(out, "{line}")?;
            }
            writeln!(
                out,
                "result: {}",
                if report.passed() { "pass" } else { "FAIL" }
            )?;
            Ok(Status::from_bool(report.passed()))
        }
        Command::Automata {
            presentation,
            expr,
            other,
        } => automata(&load(presentation)?, expr, other.as_deref(), o, out),
        Command::Structure(cmd) => structure(cmd, o, out),
        Command::Construct(cmd) => construct(cmd, o, out),
        Command::Derivation(cmd) => derivation(cmd, o, out),
        Command::ReproduceTable => reproduce_table(o, out),
    }
}

/// Reads a presentation file, falling back to the bundled catalogue.
fn load(arg: &str) -> Result<Presentation, CliError> {
    let path = Path::new(arg);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        return Presentation::parse(&text).map_err(|e| CliError::Usage(format!("{arg}: {e}")));
    }
    let stem = arg.strip_suffix(".pres").unwrap_or(arg);
    catalogue::by_name(stem)
        .ok_or_else(|| CliError::Usage(format!("no such file or bundled presentation `{arg}`")))
}

fn load_suite(arg: &str) -> Result<MultiplierSuite, CliError> {
    let path = Path::new(arg);
    let text = if path.exists() {
        fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?
    } else {
        let stem = arg.strip_suffix(".suite").unwrap_or(arg);
        catalogue::suite_by_name(stem)
            .ok_or_else(|| CliError::Usage(format!("no such file or bundled suite `{arg}`")))?
            .to_string()
    };
    MultiplierSuite::parse(&text).map_err(|e| CliError::Usage(format!("{arg}: {e}")))
}

/// Writes `text` to `--out` if given, otherwise to `out`.
fn emit(o: &Opts, out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    match &o.out {
        Some(path) => {
            fs::write(path, text).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => write!(out, "{text}")?,
    }
    Ok(())
}

fn classification_word(p: &Presentation) -> &'static str {
    let c = p.classify();
    if c.multihomogeneous {
        "multihomogeneous"
    } else if c.homogeneous {
        "homogeneous"
    } else {
        "not homogeneous"
    }
}

/// The order from `--order`, else the first of shortlex, a shortlex
/// precedence, or a right-to-left precedence under which all rules
/// decrease.
fn termination_order(sys: &RewriteSystem, o: &Opts) -> Result<Option<TermOrder>, CliError> {
    if let Some(spec) = &o.order {
        let order = TermOrder::parse(spec, &sys.alphabet).map_err(input)?;
        return Ok(check_termination(&sys.rules, &order).then_some(order));
    }
    let shortlex = TermOrder::shortlex(&sys.alphabet);
    if check_termination(&sys.rules, &shortlex) {
        return Ok(Some(shortlex));
    }
    Ok(
        find_precedence(&sys.alphabet, &sys.rules, OrderKind::Shortlex)
            .or_else(|| find_precedence(&sys.alphabet, &sys.rules, OrderKind::RightToLeft)),
    )
}

fn check(p: &Presentation, o: &Opts, out: &mut dyn Write) -> Result<Status, CliError> {
    let sys = RewriteSystem::from_presentation(p, o.bound());
    let mut parts = vec![classification_word(p).to_string()];
    if sys.is_empty() {
        parts.push("confluent vacuously".into());
        writeln!(out, "{}", parts.join(", "))?;
        return Ok(Status::Ok);
    }
    if let Some(n) = p.classify().nary {
        parts.push(format!("{n}-ary"));
    }
    let order = termination_order(&sys, o)?;
    parts.push(match &order {
        Some(ord) => format!("terminating ({})", ord.kind),
        None => "termination not certified".into(),
    });
    let report = check_local_confluence(&sys, o.fuel()).map_err(input)?;
    parts.push(format!(
        "{}: {}/{} pairs joinable",
        if report.all_joinable() {
            "locally confluent"
        } else {
            "not locally confluent"
        },
        report.joinable_count(),
        report.pairs.len()
    ));
    writeln!(out, "{}", parts.join(", "))?;
    if let Some(ord) = &order {
        writeln!(out, "order: {}", ord.show(&p.alphabet))?;
    }
    if !p.is_plain() {
        writeln!(
            out,
            "instantiated up to length {}: {} rules",
            o.bound(),
            sys.len()
        )?;
    }
    for f in report.failures() {
        writeln!(
            out,
            "non-joinable: {} -> {} / {}, normal forms {} / {}",
            p.show(&f.pair.peak),
            p.show(&f.pair.left),
            p.show(&f.pair.right),
            p.show(&f.left_nf),
            p.show(&f.right_nf)
        )?;
    }
    Ok(Status::from_bool(order.is_some() && report.all_joinable()))
}

fn normalize(
    p: &Presentation,
    word: &str,
    o: &Opts,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let w = p.word(word).map_err(input)?;
    let sys = RewriteSystem::from_presentation(p, o.bound());
    match sys.normalize(&w, o.fuel()) {
        Ok(n) => {
            writeln!(out, "{}", p.show(&n.word))?;
            writeln!(out, "steps: {}", n.steps)?;
            if !p.is_plain() && w.len() > o.bound() {
                writeln!(
                    out,
                    "note: rules instantiated only up to length {}",
                    o.bound()
                )?;
            }
            Ok(Status::Ok)
        }
        Err(RewriteError::FuelExhausted { fuel, .. }) => {
            writeln!(out, "fuel exhausted after {fuel} steps")?;
            Ok(Status::Failed)
        }
        Err(e) => Err(input(e)),
    }
}

fn run_completion(
    p: &Presentation,
    max_rules: usize,
    o: &Opts,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let sys = RewriteSystem::from_presentation(p, o.bound());
    let order = match &o.order {
        Some(spec) => TermOrder::parse(spec, &p.alphabet).map_err(input)?,
        None => TermOrder::shortlex(&p.alphabet),
    };
    match complete(&p.alphabet, &sys.pairs(), &order, max_rules, o.fuel()) {
        Ok(rules) => {
            let done = Presentation::from_rules(p.alphabet.clone(), &rules);
            emit(
                o,
                out,
                &format!("# completed under {}\n{done}", order.show(&p.alphabet)),
            )?;
            Ok(Status::Ok)
        }
        Err(e) => {
            writeln!(out, "completion failed: {e}")?;
            Ok(Status::Failed)
        }
    }
}

fn oracle(
    p: &Presentation,
    u: &str,
    v: Option<&str>,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let o = Oracle::new(p.clone()).map_err(input)?;
    let u = p.word(u).map_err(input)?;
    match v {
        Some(v) => {
            let v = p.word(v).map_err(input)?;
            let eq = o.are_equal(&u, &v).map_err(input)?;
            writeln!(out, "{}", if eq { "equal" } else { "not equal" })?;
        }
        None => {
            let c = o.congruence_class(&u).map_err(input)?;
            writeln!(out, "class of {}: {} members", p.show(&u), c.len())?;
            for m in &c.members {
                writeln!(out, "{}", p.show(m))?;
            }
        }
    }
    Ok(Status::Ok)
}

fn automata(
    p: &Presentation,
    expr: &str,
    other: Option<&str>,
    o: &Opts,
    out: &mut dyn Write,
) -> Result<Status, CliError> {
    let env = Env::new(&p.alphabet);
    let value = env.eval(expr).map_err(input)?;
    if let Some(other) = other {
        let (Value::Lang(l1), Value::Lang(l2)) = (value, env.eval(other).map_err(input)?) else {
            return Err(CliError::Usage("only languages can be compared".into()));
        };
        return Ok(match l1.counterexample(&l2) {
            None => {
                writeln!(out, "equivalent")?;
                Status::Ok
            }
            Some(w) => {
                let side = if l1.accepts(&w) { "first" } else { "second" };
                writeln!(out, "differ on {} (only in the {side})", p.show(&w))?;
                Status::Failed
            }
        });
    }
    match value {
        Value::Lang(d) => {
            if o.out.is_some() {
                emit(o, out, &write_dfa(&d))?;
            }
            writeln!(out, "language: {} states", d.num_states())?;
            for n in 0..=o.maxlen() {
                writeln!(out, "length {n}: {} words", d.count_of_length(n))?;
            }
        }
        Value::Rel(t) => {
            writeln!(
                out,
                "relation: {} states, {} edges",
                t.states,
                t.edges.len()
            )?;
            for (u, v) in t.pairs_up_to(o.maxlen()) {
                writeln!(out, "{} -> {}", p.show(&u), p.show(&v))?;
            }
        }
    }
    Ok(Status::Ok)
}

fn structure(cmd: &StructureCommand, o: &Opts, out: &mut dyn Write) -> Result<Status, CliError> {
    match cmd {
        StructureCommand::Validate {
            presentation,
            suite,
        } => {
            let p = load(presentation)?;
            let s = load_suite(suite)?;
            let oracle = Oracle::new(p.clone()).map_err(input)?;
            match validate_structure(&oracle, &s, o.maxlen()) {
                Ok(cert) => {
                    for line in cert.lines(&p.alphabet) {
                        writeln!(out, "{line}")?;
                    }
                    Ok(Status::Ok)
                }
                Err(ValidationError::Refuted(c)) => {
                    writeln!(out, "{}", c.line(&p.alphabet))?;
                    writeln!(out, "result: refuted")?;
                    Ok(Status::Failed)
                }
                Err(e) => Err(input(e)),
            }
        }
        StructureCommand::Witness { presentation, n, k } => {
            let p = load(presentation)?;
            let w = refutation_witness(&p, *n, *k).map_err(input)?;
            for line in w.lines(&p) {
                writeln!(out, "{line}")?;
            }
            Ok(Status::from_bool(w.verified()))
        }
        StructureCommand::Irreducible { presentation } => {
            let p = load(presentation)?;
            let d = irreducible_language(&p).map_err(input)?;
            emit(o, out, &write_dfa(&d))?;
            Ok(Status::Ok)
        }
    }
}

fn construct(cmd: &ConstructCommand, o: &Opts, out: &mut dyn Write) -> Result<Status, CliError> {
    match cmd {
        ConstructCommand::FreeProduct { first, second } => {
            let (p, renames) = free_product(&load(first)?, &load(second)?);
            let mut text = String::new();
            for r in renames {
                text.push_str(&format!("# renamed {} to {}\n", r.from, r.to));
            }
            emit(o, out, &format!("{text}{p}"))?;
        }
        ConstructCommand::Nary { presentation, n } => {
            let p = nary_extension(&load(presentation)?, *n).map_err(input)?;
            emit(o, out, &p.to_string())?;
        }
        ConstructCommand::Phi { presentation } => {
            let src = load(presentation)?;
            let (phi, p) = phi_presentation(&src).map_err(input)?;
            let mut text = String::new();
            for l in src.alphabet.letters() {
                text.push_str(&format!(
                    "# {} -> {}\n",
                    src.alphabet.name(l),
                    phi.target.show(phi.image(l))
                ));
            }
            emit(o, out, &format!("{text}{p}"))?;
        }
        ConstructCommand::Combined { presentation } => {
            let q = load(presentation)?;
            let p = combined_presentation(&q, &PhiMap::new(&q.alphabet)).map_err(input)?;
            emit(o, out, &p.to_string())?;
        }
        ConstructCommand::Decompose { presentation, word } => {
            let src = load(presentation)?;
            let phi = PhiMap::new(&src.alphabet);
            let w = phi.target.parse_word(word).map_err(input)?;
            let d = code_decompose(&w, &phi);
            let t = &phi.target;
            writeln!(out, "z0 = {}", t.show(&d.gaps[0]))?;
            for (i, ((u, dec), z)) in d
                .blocks
                .iter()
                .zip(&d.decoded)
                .zip(&d.gaps[1..])
                .enumerate()
            {
                writeln!(
                    out,
                    "u{} = {} = image of {}",
                    i + 1,
                    t.show(u),
                    src.show(dec)
                )?;
                writeln!(out, "z{} = {}", i + 1, t.show(z))?;
            }
        }
        ConstructCommand::Embedding { presentation } => {
            let p = load(presentation)?;
            let r = verify_embedding(&p, o.maxlen()).map_err(input)?;
            for line in r.lines(&p.alphabet, &PhiMap::new(&p.alphabet).target) {
                writeln!(out, "{line}")?;
            }
            return Ok(Status::from_bool(r.passed()));
        }
        ConstructCommand::Ideal { presentation, n } => {
            let p = load(presentation)?;
            let (_, r) = ideal_correspondence(&p, *n).map_err(input)?;
            for (len, classes) in &r.lengths {
                writeln!(out, "length {len}: {classes} classes")?;
            }
            if let Some(m) = &r.mismatch {
                writeln!(
                    out,
                    "mismatch: {} and {} are equal only in the {}",
                    p.show(&m.u),
                    p.show(&m.v),
                    if m.equal_in_first {
                        "original"
                    } else {
                        "extension"
                    }
                )?;
            }
            writeln!(out, "result: {}", if r.holds() { "pass" } else { "FAIL" })?;
            return Ok(Status::from_bool(r.holds()));
        }
        ConstructCommand::QuasiCommutation { presentation } => {
            let q = load(presentation)?;
            let phi = PhiMap::new(&q.alphabet);
            let overlaps = e_rule_critical_pairs(&phi).len();
            let r = quasi_commutation(&q, &phi, o.maxlen()).map_err(input)?;
            writeln!(out, "image rule critical pairs: {overlaps}")?;
            writeln!(
                out,
                "words: {}, reorderable sequences: {}",
                r.words, r.peaks
            )?;
            let c = combined_presentation(&q, &phi).map_err(input)?;
            for w in &r.failures {
                writeln!(out, "failure at {}", c.show(w))?;
            }
            let ok = overlaps == 0 && r.holds();
            writeln!(out, "result: {}", if ok { "pass" } else { "FAIL" })?;
            return Ok(Status::from_bool(ok));
        }
    }
    Ok(Status::Ok)
}

fn derivation(cmd: &DerivationCommand, o: &Opts, out: &mut dyn Write) -> Result<Status, CliError> {
    let s = Circuits::standard();
    let a = &s.alphabet;
    let word = |t: &str| a.parse_word(t).map_err(input);
    match cmd {
        DerivationCommand::Cu { u } => {
            let p = s.build_cu(&word(u)?).map_err(input)?;
            emit(o, out, &p.dump(a))?;
        }
        DerivationCommand::Circuit { kind, x, u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            let kind = match kind {
                CircuitArg::Ct1 => {
                    let x = word(x)?;
                    let [x] = x[..] else {
                        return Err(CliError::Usage("--x must be a single letter".into()));
                    };
                    CircuitKind::Ct1 { x, u }
                }
                CircuitArg::Ct2 => CircuitKind::Ct2 { u },
                CircuitArg::Ct3 => CircuitKind::Ct3 { u, v },
            };
            let p = s.circuit(&kind).map_err(input)?;
            emit(o, out, &p.dump(a))?;
            writeln!(out, "closed at {}, {} edges", a.show(p.start()), p.len())?;
            match s.phi_eval(&p) {
                Ok(v) => writeln!(out, "phi: {}", v.show(a))?,
                Err(DerivationError::NotOneC(v)) => writeln!(
                    out,
                    "phi: undefined, vertex {} does not contain exactly one c",
                    a.show(&v)
                )?,
                Err(e) => return Err(input(e)),
            }
        }
        DerivationCommand::Table { max_word } => {
            let (ok, checked) = circuit_table(&s, *max_word)?;
            writeln!(out, "circuits checked: {checked}")?;
            writeln!(out, "result: {}", if ok { "pass" } else { "FAIL" })?;
            return Ok(Status::from_bool(ok));
        }
        DerivationCommand::Membership { m } => {
            let t = membership_target(&s, *m);
            let r = module_membership(&t, s.a, s.b, *m, m + 3).map_err(input)?;
            writeln!(out, "target: {}", t.show(a))?;
            writeln!(
                out,
                "{}",
                if r.is_feasible() {
                    "feasible"
                } else {
                    "infeasible"
                }
            )?;
        }
    }
    Ok(Status::Ok)
}

/// `(ab − bb) a^(m+1)`.
fn membership_target(s: &Circuits, m: usize) -> FreeRingElement {
    s.table_value(&[], &vec![s.a; m + 1])
}

/// Checks circuit images for all `x` and `|u|, |v| ≤ max_word`.
fn circuit_table(s: &Circuits, max_word: usize) -> Result<(bool, usize), CliError> {
    let ab = crate::word::Alphabet::new(["a", "b"]).expect("valid");
    let lift = |w: &Word| -> Word { w.iter().map(|l| if l.0 == 0 { s.a } else { s.b }).collect() };
    let words: Vec<Word> = ab.words_up_to(max_word).map(|w| lift(&w)).collect();
    let mut checked = 0;
    let mut ok = true;
    for u in &words {
        for x in [s.a, s.b] {
            let c = s
                .circuit(&CircuitKind::Ct1 { x, u: u.clone() })
                .map_err(input)?;
            ok &= c.is_closed() && s.phi_eval(&c).map_err(input)?.is_zero();
            checked += 1;
        }
        for v in &words {
            let c = s
                .circuit(&CircuitKind::Ct3 {
                    u: u.clone(),
                    v: v.clone(),
                })
                .map_err(input)?;
            ok &= c.is_closed() && s.phi_eval(&c).map_err(input)? == s.table_value(u, v);
            checked += 1;
        }
    }
    Ok((ok, checked))
}

/// One row of the catalogue table.
struct Row {
    name: &'static str,
    /// Expected properties: finite complete system, finite derivation
    /// type, biautomatic, automatic.
    properties: [bool; 4],
    cells: Vec<(String, Result<bool, String>)>,
}

fn yn(b: bool) -> char {
    if b {
        'Y'
    } else {
        'N'
    }
}

fn cell<F: FnOnce() -> Result<bool, String>>(row: &mut Row, name: &str, f: F) {
    row.cells.push((name.to_string(), f()));
}

fn complete_cell(p: &Presentation, bound: usize, order: Option<&str>) -> Result<bool, String> {
    let sys = RewriteSystem::from_presentation(p, bound);
    let terminates = match order {
        Some(spec) => check_termination(
            &sys.rules,
            &TermOrder::parse(spec, &p.alphabet).map_err(|e| e.to_string())?,
        ),
        None => find_precedence(&p.alphabet, &sys.rules, OrderKind::Shortlex).is_some(),
    };
    let report = check_local_confluence(&sys, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    Ok(terminates && report.all_joinable())
}

fn nf_cell(p: &Presentation, lang: &crate::automata::Dfa, maxlen: usize) -> Result<bool, String> {
    let o = Oracle::new(p.clone()).map_err(|e| e.to_string())?;
    Ok(o.verify_normal_forms(lang, maxlen)
        .map_err(|e| e.to_string())?
        .passed())
}

fn suite_cell(p: &Presentation, suite: &str, maxlen: usize) -> Result<bool, String> {
    let o = Oracle::new(p.clone()).map_err(|e| e.to_string())?;
    let s = MultiplierSuite::parse(suite).map_err(|e| e.to_string())?;
    match validate_structure(&o, &s, maxlen) {
        Ok(_) => Ok(true),
        Err(ValidationError::Refuted(_)) => Ok(false),
        Err(e) => Err(e.to_string()),
    }
}

fn free_product_row(
    name: &'static str,
    properties: [bool; 4],
    first: (&Presentation, &Presentation),
    second: (&Presentation, &Presentation),
    maxlen: usize,
) -> Row {
    let mut row = Row {
        name,
        properties,
        cells: Vec::new(),
    };
    let (prod, _) = free_product(first.0, second.0);
    cell(&mut row, "homogeneous product", || {
        Ok(prod.classify().homogeneous)
    });
    cell(
        &mut row,
        &format!("growth identity to degree {maxlen}"),
        || {
            Ok(free_product_growth(first.0, second.0, maxlen)
                .map_err(|e| e.to_string())?
                .holds())
        },
    );
    cell(
        &mut row,
        &format!("product normal forms to {maxlen}"),
        || {
            let l1 = irreducible_language(first.1).map_err(|e| e.to_string())?;
            let l2 = irreducible_language(second.1).map_err(|e| e.to_string())?;
            // The product renames clashing letters of the second factor in place.
            let tail = prod.alphabet.names()[first.0.alphabet.len()..]
                .iter()
                .cloned();
            let l2 = crate::automata::Dfa {
                alphabet: crate::word::Alphabet::from_symbols(tail).map_err(|e| e.to_string())?,
                ..l2
            };
            let l = freeproduct_language(&l1, &l2).map_err(|e| e.to_string())?;
            nf_cell(&prod, &l, maxlen)
        },
    );
    row
}

fn reproduce_table(o: &Opts, out: &mut dyn Write) -> Result<Status, CliError> {
    let start = Instant::now();
    let maxlen = o.maxlen();
    let bound = o.bound();
    let complete_auto = catalogue::complete_auto();
    let complete_nonauto = catalogue::complete_nonauto();
    let fdt = catalogue::fdt_biauto();
    let fdt_s = catalogue::fdt_biauto_schemes();
    let nonfdt = catalogue::nonfdt_biauto();
    let nonfdt_c = catalogue::nonfdt_biauto_complete();
    let mut rows = Vec::new();

    let mut row = Row {
        name: "complete_auto",
        properties: [true, true, false, true],
        cells: Vec::new(),
    };
    cell(&mut row, "finite complete system", || {
        complete_cell(&complete_auto, bound, None)
    });
    cell(
        &mut row,
        &format!("irreducible normal forms to {maxlen}"),
        || {
            nf_cell(
                &complete_auto,
                &irreducible_language(&complete_auto).map_err(|e| e.to_string())?,
                maxlen,
            )
        },
    );
    cell(&mut row, &format!("right multipliers to {maxlen}"), || {
        suite_cell(&complete_auto, catalogue::COMPLETE_AUTO_SUITE, maxlen)
    });
    cell(&mut row, "refutation witness verified", || {
        Ok(refutation_witness(&complete_auto, 8, 2)
            .map_err(|e| e.to_string())?
            .verified())
    });
    rows.push(row);

    let mut row = Row {
        name: "complete_nonauto",
        properties: [true, true, false, false],
        cells: Vec::new(),
    };
    cell(&mut row, "finite complete system", || {
        complete_cell(&complete_nonauto, bound, None)
    });
    cell(&mut row, "reversal of complete_auto", || {
        Ok(complete_nonauto == complete_auto.reversed())
    });
    cell(
        &mut row,
        &format!("irreducible normal forms to {maxlen}"),
        || {
            nf_cell(
                &complete_nonauto,
                &irreducible_language(&complete_nonauto).map_err(|e| e.to_string())?,
                maxlen,
            )
        },
    );
    rows.push(row);

    let mut row = Row {
        name: "fdt_biauto",
        properties: [false, true, true, true],
        cells: Vec::new(),
    };
    cell(
        &mut row,
        &format!("scheme system complete at bound {bound}"),
        || complete_cell(&fdt_s, bound, Some("rtl:b1<b2,b3<a<d1<d2,d3")),
    );
    cell(&mut row, "irreducible words match the pattern", || {
        let l = irreducible_language(&fdt_s).map_err(|e| e.to_string())?;
        let pattern = Env::new(&fdt_s.alphabet)
            .lang(catalogue::FDT_BIAUTO_PATTERN)
            .map_err(|e| e.to_string())?;
        Ok(l.equivalent(&pattern))
    });
    let fdt_len = maxlen.min(5);
    cell(
        &mut row,
        &format!("scheme normal forms to {fdt_len}"),
        || {
            nf_cell(
                &fdt,
                &irreducible_language(&fdt_s).map_err(|e| e.to_string())?,
                fdt_len,
            )
        },
    );
    rows.push(row);

    let mut row = Row {
        name: "nonfdt_biauto",
        properties: [false, false, true, true],
        cells: Vec::new(),
    };
    cell(&mut row, "finite system not confluent", || {
        Ok(!complete_cell(&nonfdt, bound, None)?)
    });
    cell(
        &mut row,
        &format!("scheme system complete at bound {bound}"),
        || complete_cell(&nonfdt_c, bound, None),
    );
    cell(
        &mut row,
        &format!("A* ∪ c+b*a* normal forms to {maxlen}"),
        || {
            let l = Env::new(&nonfdt.alphabet)
                .lang("[a b]* | c+ b* a*")
                .map_err(|e| e.to_string())?;
            nf_cell(&nonfdt, &l, maxlen)
        },
    );
    cell(
        &mut row,
        &format!("left and right multipliers to {maxlen}"),
        || suite_cell(&nonfdt, catalogue::NONFDT_BIAUTO_SUITE, maxlen),
    );
    cell(&mut row, "circuit images for |u|,|v| ≤ 3", || {
        circuit_table(&Circuits::standard(), 3)
            .map(|(ok, _)| ok)
            .map_err(|e| e.to_string())
    });
    cell(&mut row, "module non-generation for m = 1..4", || {
        let s = Circuits::standard();
        for m in 1..=4 {
            let r = module_membership(&membership_target(&s, m), s.a, s.b, m, m + 3)
                .map_err(|e| e.to_string())?;
            if r != Membership::Infeasible {
                return Ok(false);
            }
        }
        Ok(true)
    });
    rows.push(row);

    let fp_len = maxlen.min(4);
    rows.push(free_product_row(
        "complete_auto * fdt_biauto",
        [false, true, false, true],
        (&complete_auto, &complete_auto),
        (&fdt, &fdt_s),
        fp_len,
    ));
    rows.push(free_product_row(
        "complete_nonauto * fdt_biauto",
        [false, true, false, false],
        (&complete_nonauto, &complete_nonauto),
        (&fdt, &fdt_s),
        fp_len,
    ));
    rows.push(free_product_row(
        "complete_auto * nonfdt_biauto",
        [false, false, false, true],
        (&complete_auto, &complete_auto),
        (&nonfdt, &nonfdt_c),
        fp_len,
    ));
    rows.push(free_product_row(
        "complete_nonauto * nonfdt_biauto",
        [false, false, false, false],
        (&complete_nonauto, &complete_nonauto),
        (&nonfdt, &nonfdt_c),
        fp_len,
    ));

    let mut row = Row {
        name: "constructions",
        properties: [false; 4],
        cells: Vec::new(),
    };
    cell(&mut row, "3-ary extension of commute", || {
        Ok(ideal_correspondence(&catalogue::commute(), 3)
            .map_err(|e| e.to_string())?
            .1
            .holds())
    });
    cell(&mut row, "4-ary extension of complete_auto", || {
        Ok(ideal_correspondence(&complete_auto, 4)
            .map_err(|e| e.to_string())?
            .1
            .holds())
    });
    cell(&mut row, "embedding of nonfdt_biauto to 4", || {
        Ok(verify_embedding(&nonfdt, 4)
            .map_err(|e| e.to_string())?
            .passed())
    });
    cell(&mut row, "image rules do not overlap", || {
        Ok(e_rule_critical_pairs(&PhiMap::new(&complete_auto.alphabet)).is_empty())
    });
    rows.push(row);

    let mut pass = 0;
    let mut total = 0;
    for row in &rows {
        if row.name == "constructions" {
            writeln!(out, "{}", row.name)?;
        } else {
            let [f, d, b, a] = row.properties;
            writeln!(
                out,
                "{}  [fcrs {} fdt {} biauto {} auto {}]",
                row.name,
                yn(f),
                yn(d),
                yn(b),
                yn(a)
            )?;
        }
        for (name, result) in &row.cells {
            total += 1;
            let verdict = match result {
                Ok(true) => {
                    pass += 1;
                    "PASS".to_string()
                }
                Ok(false) => "FAIL".to_string(),
                Err(e) => format!("FAIL ({e})"),
            };
            writeln!(out, "  {name}: {verdict}")?;
        }
    }
    writeln!(
        out,
        "summary: {pass}/{total} PASS in {:.1} s",
        start.elapsed().as_secs_f64()
    )?;
    Ok(Status::from_bool(pass == total))
}
