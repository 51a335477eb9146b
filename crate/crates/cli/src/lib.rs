//! Command implementations and the JSON record types behind the `subsum`
//! binary. Kept in a library so the integration tests can parse what the
//! binary prints.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use subsum::cyclotomic::{CycloExponentVector, FactoredBinomialProduct};
use subsum::partitions::{enumerate, PartitionClass};
use subsum::subsum::{big_g, den_star, num_star, reduced_pair_with, spol, t_direct, SubsumError};
use subsum::verify::{
    odd_part_factorial, ConjectureId, ConjectureReport, Record, Verifier,
};
use subsum::{Engine, IntPoly};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "subsum", version, about = "Reduced partition-reciprocal sums and their verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print num, den, G or one of the unreduced objects for one n.
    Compute(ComputeArgs),
    /// Run one or all of the numbered checks over 1..=max-n.
    Verify(VerifyArgs),
    /// Print an integer sequence, one row per n.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ClassArg {
    Ordinary,
    Odd,
    Binary,
    Ternary,
}

impl From<ClassArg> for PartitionClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Ordinary => PartitionClass::Ordinary,
            ClassArg::Odd => PartitionClass::Odd,
            ClassArg::Binary => PartitionClass::Binary,
            ClassArg::Ternary => PartitionClass::Ternary,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    Num,
    Den,
    G,
    NumStar,
    DenStar,
    SpolList,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    #[default]
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    #[default]
    Dp,
    Enumerate,
    Both,
}

impl From<EngineArg> for Engine {
    fn from(e: EngineArg) -> Self {
        match e {
            EngineArg::Dp => Engine::Dp,
            EngineArg::Enumerate => Engine::Enumerate,
            EngineArg::Both => Engine::Both,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long)]
    pub n: usize,
    #[arg(long, value_enum)]
    pub what: What,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Expand factored outputs (den, g, den-star) into coefficients.
    #[arg(long)]
    pub expand: bool,
    #[arg(long, value_enum, default_value_t)]
    pub engine: EngineArg,
}

/// `all` or a single statement id.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Selection {
    All,
    One(ConjectureId),
}

fn parse_selection(s: &str) -> Result<Selection, String> {
    if s == "all" {
        Ok(Selection::All)
    } else {
        s.parse().map(Selection::One)
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// 1..10, lemma4 or all.
    #[arg(long, value_parser = parse_selection)]
    pub conjecture: Selection,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
    /// Worker threads across n. Output is identical for any value.
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
    #[arg(long, value_enum, default_value_t)]
    pub engine: EngineArg,
    /// Report elapsed time as 0, for byte-for-byte comparisons.
    #[arg(long)]
    pub no_timing: bool,
    /// Multiply every reduced numerator at this n by (1 + x).
    #[arg(long, hide = true)]
    pub inject_fault_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Sequence {
    /// t(n) = num_T(n, 1), from n = 0.
    T,
    /// s(n) = num_T(n, -1), from n = 1.
    S,
    /// Odd part of n!, from n = 1.
    OPart,
    /// Degree of G(n, x) for ordinary partitions, from n = 1.
    GDegree,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub sequence: Sequence,
    #[arg(long)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value_t)]
    pub format: TableFormat,
}

/// One line of JSON output.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// Partition class tag; absent for reports.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    /// The `n` computed, or the top of the range for a report.
    pub n: usize,
    #[serde(flatten)]
    pub body: Payload,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload", rename_all = "kebab-case")]
pub enum Payload {
    /// Coefficients from `x^0` upward, no trailing zeros.
    Polynomial(Vec<String>),
    Factored(Factored),
    Scalar(String),
    Report(ConjectureReport),
    PolynomialList(Vec<SpolEntry>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// Base `i` stands for `1 + x^i`.
    Binomial,
    /// Base `m` stands for the cyclotomic polynomial `Phi_m`.
    Cyclotomic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factored {
    pub basis: Basis,
    /// `(base, exponent)` pairs, bases ascending, exponents positive.
    pub factors: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpolEntry {
    pub partition: Vec<usize>,
    pub spol: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub value: String,
}

pub fn coefficient_strings(p: &IntPoly) -> Vec<String> {
    if p.is_zero() {
        return vec!["0".to_string()];
    }
    p.coeffs().iter().map(|c| c.to_string()).collect()
}

fn cyclotomic_factored(v: &CycloExponentVector) -> Factored {
    Factored {
        basis: Basis::Cyclotomic,
        factors: v.iter().map(|(d, e)| (2 * d, e)).collect(),
    }
}

fn binomial_factored(f: &FactoredBinomialProduct) -> Factored {
    Factored {
        basis: Basis::Binomial,
        factors: f.iter().collect(),
    }
}

impl Factored {
    pub fn render(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        let mut out = Vec::with_capacity(self.factors.len());
        for &(base, e) in &self.factors {
            let mut s = match self.basis {
                Basis::Binomial if base == 1 => "(1 + x)".to_string(),
                Basis::Binomial => format!("(1 + x^{base})"),
                Basis::Cyclotomic => format!("Phi_{base}"),
            };
            if e > 1 {
                write!(s, "^{e}").unwrap();
            }
            out.push(s);
        }
        out.join(" ")
    }
}

/// Builds the record for one `compute` invocation.
pub fn compute(args: &ComputeArgs) -> Result<OutputRecord, SubsumError> {
    let class: PartitionClass = args.class.into();
    let engine: Engine = args.engine.into();
    let n = args.n;
    let factored_or_expanded = |f: Factored, expanded: IntPoly| {
        if args.expand {
            Payload::Polynomial(coefficient_strings(&expanded))
        } else {
            Payload::Factored(f)
        }
    };
    let body = match args.what {
        What::Num => Payload::Polynomial(coefficient_strings(&reduced_pair_with(n, class, engine)?.num)),
        What::Den => {
            let pair = reduced_pair_with(n, class, engine)?;
            factored_or_expanded(cyclotomic_factored(&pair.den), pair.den_expanded())
        }
        What::G => {
            let g = big_g(n, class);
            factored_or_expanded(cyclotomic_factored(&g), g.expand())
        }
        What::NumStar => Payload::Polynomial(coefficient_strings(&num_star(n, class, engine)?)),
        What::DenStar => {
            let d = den_star(n, class);
            factored_or_expanded(binomial_factored(&d), d.expand())
        }
        What::SpolList => Payload::PolynomialList(
            enumerate(n, class)
                .map(|p| SpolEntry {
                    spol: coefficient_strings(&spol(&p)),
                    partition: p.parts().to_vec(),
                })
                .collect(),
        ),
    };
    Ok(OutputRecord {
        class: Some(class.name().to_string()),
        n,
        body,
    })
}

pub fn render_text(record: &OutputRecord) -> String {
    match &record.body {
        Payload::Polynomial(c) => render_coefficients(c),
        Payload::Factored(f) => f.render(),
        Payload::Scalar(s) => s.clone(),
        Payload::Report(r) => render_report(r),
        Payload::PolynomialList(entries) => {
            let mut out = String::new();
            for e in entries {
                let parts: Vec<String> = e.partition.iter().map(|p| p.to_string()).collect();
                writeln!(out, "({})\t{}", parts.join(","), render_coefficients(&e.spol)).unwrap();
            }
            out.trim_end().to_string()
        }
    }
}

fn render_coefficients(c: &[String]) -> String {
    let coeffs: Vec<num_bigint::BigInt> = c.iter().map(|s| s.parse().expect("decimal")).collect();
    IntPoly::from_coeffs(coeffs).to_string()
}

fn render_record_line(tag: &str, r: &Record) -> String {
    let mut s = format!("  {tag} n={}", r.n);
    if let Some(d) = r.d {
        write!(s, " d={d}").unwrap();
    }
    if let Some(i) = r.index {
        write!(s, " index={i}").unwrap();
    }
    write!(s, ": {}", r.detail).unwrap();
    s
}

pub fn render_report(r: &ConjectureReport) -> String {
    let mut out = format!(
        "conjecture {} n={}..={}: {:?} ({} failures, {} witnesses, {} us)",
        r.conjecture,
        r.n_range.0,
        r.n_range.1,
        r.verdict,
        r.failures.len(),
        r.witnesses.len(),
        r.elapsed_us
    );
    for e in &r.pipeline_errors {
        write!(out, "\n{}", render_record_line("ERROR", e)).unwrap();
    }
    let tag = if r.conjecture.is_proved() { "FAIL" } else { "OBSERVED" };
    for f in &r.failures {
        write!(out, "\n{}", render_record_line(tag, f)).unwrap();
    }
    for f in &r.findings {
        write!(out, "\n{}", render_record_line("FINDING", f)).unwrap();
    }
    out
}

/// Runs the selected checks. Exit status is 1 when any proved statement
/// has a failure record or the pipeline itself failed.
pub fn verify(args: &VerifyArgs) -> (Vec<ConjectureReport>, i32) {
    let mut verifier = Verifier::new().engine(args.engine.into()).jobs(args.jobs);
    if let Some(bad_n) = args.inject_fault_n {
        log::warn!("injecting a (1 + x) factor into every numerator at n={bad_n}");
        verifier = verifier.numerator_hook(move |_, n, num| {
            if n == bad_n {
                num.mul_binomial_assign(1);
            }
        });
    }
    let mut reports = match args.conjecture {
        Selection::All => verifier.run_all(args.max_n),
        Selection::One(id) => verifier.run(id, args.max_n),
    };
    if args.no_timing {
        reports = reports.iter().map(ConjectureReport::without_timing).collect();
    }
    let code = if reports.iter().any(ConjectureReport::is_blocking) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    };
    (reports, code)
}

pub fn report_record(r: ConjectureReport) -> OutputRecord {
    OutputRecord {
        class: None,
        n: r.n_range.1,
        body: Payload::Report(r),
    }
}

pub fn table(args: &TableArgs) -> Result<Vec<TableRow>, SubsumError> {
    let start = if args.sequence == Sequence::T { 0 } else { 1 };
    let mut rows = Vec::new();
    for n in start..=args.max_n {
        let value = match args.sequence {
            Sequence::T => t_direct(n).to_string(),
            Sequence::S => reduced_pair_with(n, PartitionClass::Ternary, Engine::Dp)?
                .num
                .eval_at_int(-1)
                .to_string(),
            Sequence::OPart => odd_part_factorial(n).to_string(),
            Sequence::GDegree => big_g(n, PartitionClass::Ordinary).degree().to_string(),
        };
        rows.push(TableRow { n, value });
    }
    Ok(rows)
}

fn sequence_name(s: Sequence) -> &'static str {
    match s {
        Sequence::T => "t",
        Sequence::S => "s",
        Sequence::OPart => "o_part",
        Sequence::GDegree => "g_degree",
    }
}

/// Parses, dispatches and writes everything to `out`. Returns the exit code.
pub fn run(cli: Cli, out: &mut impl Write) -> io::Result<i32> {
    match cli.command {
        Command::Compute(args) => match compute(&args) {
            Ok(record) => {
                match args.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&record)?)?,
                    Format::Text => writeln!(out, "{}", render_text(&record))?,
                }
                Ok(EXIT_OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(EXIT_FAILURE)
            }
        },
        Command::Verify(args) => {
            let (reports, code) = verify(&args);
            for r in reports {
                let blocking = r.is_blocking();
                if blocking {
                    log::error!("conjecture {} has failures", r.conjecture);
                }
                match args.format {
                    Format::Json => writeln!(out, "{}", serde_json::to_string(&report_record(r))?)?,
                    Format::Text => writeln!(out, "{}", render_report(&r))?,
                }
            }
            Ok(code)
        }
        Command::Table(args) => match table(&args) {
            Ok(rows) => {
                match args.format {
                    TableFormat::Json => writeln!(out, "{}", serde_json::to_string(&rows)?)?,
                    TableFormat::Csv => {
                        writeln!(out, "n,{}", sequence_name(args.sequence))?;
                        for r in rows {
                            writeln!(out, "{},{}", r.n, r.value)?;
                        }
                    }
                }
                Ok(EXIT_OK)
            }
            Err(e) => {
                eprintln!("error: {e}");
                Ok(EXIT_FAILURE)
            }
        },
    }
}


#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
pub struct BookCli;
