//! Command-line front end. [`run`] parses arguments, does the work and
//! returns the exit code with everything that should be printed, so it can be
//! driven without spawning a process.
//!
//! Exit codes: 0 when every verdict passes, 1 when a mathematical check
//! fails, 2 for usage or parameter errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::{
    admissible_ranks, brute_rank_census, class_field, completeness_holds, rank_census, HermVariant,
};
use crate::charcensus::{census_table, qminus1_report, sum_of_squares_check, DegreeCensus};
use crate::error::{Error, Result};
use crate::falinalg::{ClassSpace, SymmetryClass};
use crate::gf::Field;
use crate::orbitmethod::{
    class_count_brute, orbit_census, pairing_nondegeneracy_check, radical_order, RadicalParams,
    RadicalType,
};
use crate::qpoly::QPoly;
use crate::Budget;

#[derive(Parser, Debug)]
#[command(
    name = "radchar",
    version,
    about = "Character degree censuses of unipotent radicals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Md)]
    format: Format,
    /// Omit the timing field so output is byte-for-byte reproducible.
    #[arg(long, global = true)]
    no_timing: bool,
    /// Enumeration budget for brute-force checks (at most 10^9).
    #[arg(long, global = true)]
    budget: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form character census of R_u^{X,d}.
    Census(CensusArgs),
    /// Rank census of symmetric, skew-symmetric or skew-Hermitian matrices.
    Ranks(RanksArgs),
    /// Run verification suites.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long = "type", value_enum)]
    kind: KindArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    d: usize,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    variant: VariantArg,
    #[arg(long, value_enum, default_value_t = Basis::Q)]
    basis: Basis,
    /// Compare against the orbit census and a conjugacy-class count.
    #[arg(long)]
    oracle: bool,
}

#[derive(Args, Debug)]
struct RanksArgs {
    #[arg(long, value_enum)]
    class: ClassArg,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
    variant: VariantArg,
    /// Enumerate the whole class and compare.
    #[arg(long)]
    brute: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    #[arg(long)]
    max_n: Option<usize>,
    #[arg(long, num_args = 1.., default_values_t = [3u64])]
    q: Vec<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "U", alias = "u")]
    U,
}

impl From<KindArg> for RadicalType {
    fn from(k: KindArg) -> RadicalType {
        match k {
            KindArg::C => RadicalType::C,
            KindArg::D => RadicalType::D,
            KindArg::U => RadicalType::U,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VariantArg {
    Printed,
    Corrected,
}

impl From<VariantArg> for HermVariant {
    fn from(v: VariantArg) -> HermVariant {
        match v {
            VariantArg::Printed => HermVariant::Printed,
            VariantArg::Corrected => HermVariant::Corrected,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Sym,
    Skew,
    Herm,
}

impl From<ClassArg> for SymmetryClass {
    fn from(c: ClassArg) -> SymmetryClass {
        match c {
            ClassArg::Sym => SymmetryClass::Symmetric,
            ClassArg::Skew => SymmetryClass::SkewSymmetric,
            ClassArg::Herm => SymmetryClass::SkewHermitian,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Q,
    Qminus1,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, ValueEnum)]
enum Suite {
    Classes,
    Orbits,
    Pairings,
    Positivity,
    Ranks,
    All,
}

/// One line of a table: a degree of a character census, or a rank of a rank
/// census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<QPoly>,
    pub count: QPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_at_q: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub qminus1: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brute: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub suite: String,
    pub check: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub command: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<RadicalParams>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub variant: HermVariant,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub basis: Basis,
    pub rows: Vec<Row>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

impl OutputRecord {
    fn new(command: Vec<String>) -> OutputRecord {
        OutputRecord {
            command,
            params: None,
            class: None,
            n: None,
            variant: HermVariant::Corrected,
            q: None,
            basis: Basis::Q,
            rows: vec![],
            verdicts: vec![],
            notes: vec![],
            timing_ms: None,
        }
    }

    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let echo = args
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    let start = Instant::now();
    let result = Budget::new(cli.budget.unwrap_or(Budget::ENUMERATION.0)).and_then(|_| {
        let budget = cli.budget.map(Budget);
        match &cli.command {
            Command::Census(a) => cmd_census(a, budget, echo),
            Command::Ranks(a) => cmd_ranks(a, budget, echo),
            Command::Verify(a) => cmd_verify(a, budget, echo),
        }
    });
    match result {
        Ok(mut rec) => {
            if !cli.no_timing {
                rec.timing_ms = Some((start.elapsed().as_secs_f64() * 1e3 * 1e3).round() / 1e3);
            }
            let code = if rec.all_pass() { 0 } else { 1 };
            let stdout = render(&rec, cli.format);
            let stderr = rec
                .verdicts
                .iter()
                .filter(|v| !v.pass)
                .map(|v| format!("FAIL {} {}: {}\n", v.suite, v.check, v.detail))
                .collect();
            Outcome {
                code,
                stdout,
                stderr,
            }
        }
        Err(e) => Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn poly_in_basis(p: &QPoly, basis: Basis) -> String {
    match basis {
        Basis::Q => p.to_string(),
        Basis::Qminus1 => match p.to_qminus1_basis() {
            Ok(x) => {
                let terms: Vec<String> = x
                    .coeffs
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
                    .map(|(k, c)| match k {
                        0 => c.to_string(),
                        1 => format!("{c}*(q-1)"),
                        _ => format!("{c}*(q-1)^{k}"),
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            }
            Err(_) => p.to_string(),
        },
    }
}

fn eval_string(p: &QPoly, q: Option<u64>) -> Result<Option<String>> {
    q.map(|q| p.eval_u64(q).map(|v| v.to_string())).transpose()
}

fn census_rows(table: &DegreeCensus, q: Option<u64>, basis: Basis) -> Result<Vec<Row>> {
    let qm1 = qminus1_report(table.params, table.variant)?;
    table
        .rows
        .iter()
        .zip(qm1)
        .map(|(row, x)| {
            Ok(Row {
                r: Some(row.r),
                e: Some(row.e),
                degree: Some(row.degree.clone()),
                count: row.count.clone(),
                count_at_q: eval_string(&row.count, q)?,
                qminus1: match basis {
                    Basis::Qminus1 => x.coeffs.map(|c| c.iter().map(|v| v.to_string()).collect()),
                    Basis::Q => None,
                },
                brute: None,
            })
        })
        .collect()
}

fn verdict(
    suite: &str,
    check: impl Into<String>,
    pass: bool,
    detail: impl Into<String>,
) -> Verdict {
    Verdict {
        suite: suite.into(),
        check: check.into(),
        pass,
        detail: detail.into(),
    }
}

/// `(e, characters)` of the closed form evaluated at `q`.
fn table_counts_at(table: &DegreeCensus, q: u64) -> Result<Vec<(usize, String)>> {
    let mut v = vec![];
    for row in &table.rows {
        let c = row.count.eval_u64(q)?;
        if !num_traits::Zero::is_zero(&c) {
            v.push((row.e, c.to_string()));
        }
    }
    Ok(v)
}

/// Orbit-census and class-count comparisons for one instance.
fn oracle_verdicts(
    suite: &str,
    table: &DegreeCensus,
    q: u64,
    orbit_budget: Budget,
    class_budget: Budget,
) -> Result<Vec<Verdict>> {
    let p = table.params;
    let label = format!("{p} q={q}");
    let mut out = vec![];
    let oc = orbit_census(p, q, orbit_budget)?;
    let brute: Vec<(usize, String)> = oc
        .rows
        .iter()
        .map(|r| (r.e, r.characters.to_string()))
        .collect();
    let closed = table_counts_at(table, q)?;
    out.push(verdict(
        suite,
        format!("{label} orbit census"),
        brute == closed,
        format!("closed form {closed:?}, orbits {brute:?}"),
    ));
    let r_order = radical_order(p).eval_u64(q)?;
    out.push(verdict(
        suite,
        format!("{label} sum of squares"),
        num_bigint::BigInt::from(oc.sum_of_squares()) == r_order,
        format!("sum = {}, |R_u| = {r_order}", oc.sum_of_squares()),
    ));
    match class_count_brute(p, q, class_budget) {
        Ok(classes) => {
            let total = table.total_count().eval_u64(q)?;
            out.push(verdict(
                suite,
                format!("{label} class count"),
                total == classes.into(),
                format!("closed form {total}, conjugacy classes {classes}"),
            ));
        }
        Err(Error::EnumerationTooLarge { .. }) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

fn cmd_census(a: &CensusArgs, budget: Option<Budget>, echo: Vec<String>) -> Result<OutputRecord> {
    let params = RadicalParams::new(a.kind.into(), a.n, a.d)?;
    if let Some(q) = a.q {
        Field::with_order(q)?;
    }
    let table = census_table(params, a.variant.into())?;
    let mut rec = OutputRecord::new(echo);
    rec.params = Some(params);
    rec.variant = table.variant;
    rec.q = a.q;
    rec.basis = a.basis;
    rec.rows = census_rows(&table, a.q, a.basis)?;
    rec.notes = table.notes.clone();
    rec.verdicts.push(verdict(
        "census",
        format!("{params} sum of squares (symbolic)"),
        table.sum_of_squares_holds,
        format!(
            "sum = {}, |R_u| = {}",
            table.sum_of_squares(),
            radical_order(params)
        ),
    ));
    if a.oracle {
        let q =
            a.q.ok_or_else(|| Error::InvalidParams("--oracle requires --q".into()))?;
        let orbit_budget = budget.unwrap_or(Budget::ENUMERATION);
        let class_budget = budget.unwrap_or(Budget::GROUP);
        rec.verdicts.extend(oracle_verdicts(
            "oracle",
            &table,
            q,
            orbit_budget,
            class_budget,
        )?);
        if !rec
            .verdicts
            .iter()
            .any(|v| v.check.ends_with("class count"))
        {
            rec.notes.push(format!(
                "class count skipped: group order exceeds budget {}",
                class_budget.0
            ));
        }
    }
    Ok(rec)
}

fn cmd_ranks(a: &RanksArgs, budget: Option<Budget>, echo: Vec<String>) -> Result<OutputRecord> {
    let class: SymmetryClass = a.class.into();
    let variant: HermVariant = a.variant.into();
    let ranks = match a.r {
        Some(r) => {
            rank_census(class, a.n, r, variant)?;
            vec![r]
        }
        None => admissible_ranks(class, a.n),
    };
    let mut rec = OutputRecord::new(echo);
    rec.class = Some(class.name().into());
    rec.n = Some(a.n);
    rec.variant = variant;
    rec.q = a.q;
    let hist = match (a.brute, a.q) {
        (true, Some(q)) => {
            let field = class_field(class, q)?;
            Some(brute_rank_census(
                class,
                a.n,
                &field,
                budget.unwrap_or(Budget::ENUMERATION),
            )?)
        }
        (true, None) => return Err(Error::InvalidParams("--brute requires --q".into())),
        _ => None,
    };
    for r in ranks {
        let count = rank_census(class, a.n, r, variant)?;
        let at_q = eval_string(&count, a.q)?;
        let brute = hist
            .as_ref()
            .map(|h| h.get(&r).copied().unwrap_or(0).to_string());
        if let (Some(b), Some(c)) = (&brute, &at_q) {
            rec.verdicts.push(verdict(
                "ranks",
                format!("{} n={} r={r} q={}", class.name(), a.n, a.q.unwrap()),
                b == c,
                format!("closed form {c}, enumeration {b}"),
            ));
        }
        if class == SymmetryClass::SkewHermitian {
            let other = match variant {
                HermVariant::Corrected => HermVariant::Printed,
                HermVariant::Printed => HermVariant::Corrected,
            };
            if let (Some(b), Some(q)) = (&brute, a.q) {
                let v = rank_census(class, a.n, r, other)?.eval_u64(q)?.to_string();
                if &v != b {
                    rec.notes.push(format!(
                        "{} variant disagrees at r={r}: {v} vs enumeration {b}",
                        other.name()
                    ));
                }
            }
        }
        rec.rows.push(Row {
            r: Some(r),
            e: None,
            degree: None,
            count,
            count_at_q: at_q,
            qminus1: None,
            brute,
        });
    }
    Ok(rec)
}

type Check = Box<dyn Fn() -> Result<Vec<Verdict>> + Send + Sync>;

fn cmd_verify(a: &VerifyArgs, budget: Option<Budget>, echo: Vec<String>) -> Result<OutputRecord> {
    for &q in &a.q {
        Field::with_order(q)?;
    }
    let suites: Vec<Suite> = match a.suite {
        Suite::All => vec![
            Suite::Classes,
            Suite::Orbits,
            Suite::Pairings,
            Suite::Positivity,
            Suite::Ranks,
        ],
        s => vec![s],
    };
    let mut rec = OutputRecord::new(echo);
    let mut checks: Vec<Check> = vec![];
    for suite in suites {
        match suite {
            Suite::Ranks => ranks_checks(a, budget, &mut checks, &mut rec.notes),
            Suite::Orbits => orbit_checks(a, budget, &mut checks),
            Suite::Classes => class_checks(a, budget, &mut checks),
            Suite::Pairings => pairing_checks(a, &mut checks),
            Suite::Positivity => positivity_checks(a, &mut checks),
            Suite::All => unreachable!(),
        }
    }
    let results: Vec<Result<Vec<Verdict>>> = checks.par_iter().map(|c| c()).collect();
    for r in results {
        rec.verdicts.extend(r?);
    }
    Ok(rec)
}

fn ranks_checks(
    a: &VerifyArgs,
    budget: Option<Budget>,
    checks: &mut Vec<Check>,
    notes: &mut Vec<String>,
) {
    let budget = budget.unwrap_or(Budget::ENUMERATION);
    let cap = a.max_n.unwrap_or(usize::MAX);
    for &q in &a.q {
        let instances = [
            (SymmetryClass::Symmetric, 3),
            (SymmetryClass::SkewSymmetric, 4),
            (SymmetryClass::SkewHermitian, if q == 3 { 3 } else { 2 }),
        ];
        for (class, max) in instances {
            for n in 1..=max.min(cap) {
                let size = class_field(class, q)
                    .and_then(|f| ClassSpace::new(n, class, &f))
                    .map(|s| s.len())
                    .unwrap_or(u128::MAX);
                if size > budget.0 as u128 {
                    notes.push(format!(
                        "ranks {} n={n} q={q} skipped: {size} exceeds budget",
                        class.name()
                    ));
                    continue;
                }
                checks.push(Box::new(move || {
                    let field = class_field(class, q)?;
                    let hist = brute_rank_census(class, n, &field, budget)?;
                    let mut closed = std::collections::BTreeMap::new();
                    for r in admissible_ranks(class, n) {
                        let v = rank_census(class, n, r, HermVariant::Corrected)?.eval_u64(q)?;
                        closed.insert(r, u64::try_from(v).map_err(|_| Error::NotDivisible)?);
                    }
                    closed.retain(|_, v| *v != 0);
                    Ok(vec![verdict(
                        "ranks",
                        format!("{} n={n} q={q}", class.name()),
                        closed == hist,
                        format!("closed form {closed:?}, enumeration {hist:?}"),
                    )])
                }));
            }
        }
    }
    checks.push(Box::new(move || {
        let mut out = vec![];
        for class in [
            SymmetryClass::Symmetric,
            SymmetryClass::SkewSymmetric,
            SymmetryClass::SkewHermitian,
        ] {
            for n in 1..=cap.min(8) {
                let ok = completeness_holds(class, n, HermVariant::Corrected)?;
                out.push(verdict(
                    "ranks",
                    format!("{} n={n} completeness", class.name()),
                    ok,
                    "",
                ));
            }
        }
        Ok(out)
    }));
}

fn orbit_checks(a: &VerifyArgs, budget: Option<Budget>, checks: &mut Vec<Check>) {
    let orbit_budget = budget.unwrap_or(Budget::ENUMERATION);
    let class_budget = budget.unwrap_or(Budget::GROUP);
    let cap = a.max_n.unwrap_or(usize::MAX);
    let instances = [
        (RadicalType::C, 2, 1),
        (RadicalType::C, 3, 1),
        (RadicalType::C, 3, 2),
        (RadicalType::D, 4, 1),
        (RadicalType::D, 4, 2),
        (RadicalType::U, 2, 1),
    ];
    for &q in &a.q {
        for (kind, n, d) in instances {
            if n > cap {
                continue;
            }
            checks.push(Box::new(move || {
                let p = RadicalParams::new(kind, n, d)?;
                let table = census_table(p, HermVariant::Corrected)?;
                match oracle_verdicts("orbits", &table, q, orbit_budget, class_budget) {
                    Err(Error::EnumerationTooLarge { size, budget }) => Ok(vec![verdict(
                        "orbits",
                        format!("{p} q={q} orbit census"),
                        false,
                        format!("enumeration of {size} exceeds budget {budget}"),
                    )]),
                    r => r,
                }
            }));
        }
    }
    checks.push(Box::new(move || {
        let mut out = vec![];
        for kind in [RadicalType::C, RadicalType::D, RadicalType::U] {
            for n in 2..=cap.min(8) {
                for p in RadicalParams::all(kind, n) {
                    let ok = sum_of_squares_check(p, HermVariant::Corrected);
                    out.push(verdict(
                        "orbits",
                        format!("{p} sum of squares (symbolic)"),
                        ok,
                        "",
                    ));
                }
            }
        }
        Ok(out)
    }));
}

fn class_checks(a: &VerifyArgs, budget: Option<Budget>, checks: &mut Vec<Check>) {
    let class_budget = budget.unwrap_or(Budget::GROUP);
    let cap = a.max_n.unwrap_or(3);
    for &q in &a.q {
        for kind in [RadicalType::C, RadicalType::D, RadicalType::U] {
            for n in 2..=cap {
                for p in RadicalParams::all(kind, n) {
                    let exp = p.order_exponent() as u32;
                    let fits = (q as u128)
                        .checked_pow(exp)
                        .is_some_and(|o| o <= class_budget.0 as u128);
                    if !fits {
                        continue;
                    }
                    checks.push(Box::new(move || {
                        let table = census_table(p, HermVariant::Corrected)?;
                        let total = table.total_count().eval_u64(q)?;
                        let classes = class_count_brute(p, q, class_budget)?;
                        Ok(vec![verdict(
                            "classes",
                            format!("{p} q={q}"),
                            total == classes.into(),
                            format!("closed form {total}, conjugacy classes {classes}"),
                        )])
                    }));
                }
            }
        }
    }
}

fn pairing_checks(a: &VerifyArgs, checks: &mut Vec<Check>) {
    let cap = a.max_n.unwrap_or(4);
    for &q in &a.q {
        checks.push(Box::new(move || {
            let mut out = vec![];
            for kind in [RadicalType::C, RadicalType::D, RadicalType::U] {
                for n in 2..=cap {
                    for p in RadicalParams::all(kind, n) {
                        let ok = pairing_nondegeneracy_check(p, q)?;
                        out.push(verdict("pairings", format!("{p} q={q}"), ok, ""));
                    }
                }
            }
            Ok(out)
        }));
    }
}

fn positivity_checks(a: &VerifyArgs, checks: &mut Vec<Check>) {
    let cap = a.max_n.unwrap_or(10);
    for kind in [RadicalType::C, RadicalType::D, RadicalType::U] {
        checks.push(Box::new(move || {
            let mut out = vec![];
            for n in 2..=cap {
                for p in RadicalParams::all(kind, n) {
                    let rep = qminus1_report(p, HermVariant::Corrected)?;
                    let bad: Vec<usize> =
                        rep.iter().filter(|r| !r.nonnegative).map(|r| r.e).collect();
                    out.push(verdict(
                        "positivity",
                        format!("{p}"),
                        bad.is_empty(),
                        if bad.is_empty() {
                            String::new()
                        } else {
                            format!("e = {bad:?}")
                        },
                    ));
                }
            }
            Ok(out)
        }));
    }
}

fn render(rec: &OutputRecord, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rec).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => render_csv(rec),
        Format::Md => render_md(rec),
    }
}

fn row_cells(rec: &OutputRecord, row: &Row) -> Vec<String> {
    let opt = |x: Option<String>| x.unwrap_or_default();
    let count = poly_in_basis(&row.count, rec.basis);
    if let Some(p) = rec.params {
        vec![
            p.kind.to_string(),
            p.n.to_string(),
            p.d.to_string(),
            opt(row.r.map(|r| r.to_string())),
            opt(row.e.map(|e| e.to_string())),
            opt(row.degree.as_ref().map(|d| d.to_string())),
            count,
            opt(row.count_at_q.clone()),
        ]
    } else {
        vec![
            opt(rec.class.clone()),
            opt(rec.n.map(|n| n.to_string())),
            opt(row.r.map(|r| r.to_string())),
            count,
            opt(row.count_at_q.clone()),
            opt(row.brute.clone()),
        ]
    }
}

fn headers(rec: &OutputRecord) -> Vec<&'static str> {
    if rec.params.is_some() {
        vec![
            "type",
            "n",
            "d",
            "r",
            "e",
            "degree",
            "count_poly",
            "count_at_q",
        ]
    } else {
        vec!["class", "n", "r", "count_poly", "count_at_q", "brute"]
    }
}

fn render_csv(rec: &OutputRecord) -> String {
    let mut s = String::new();
    if !rec.rows.is_empty() {
        s += &headers(rec).join(",");
        s.push('\n');
        for row in &rec.rows {
            s += &row_cells(rec, row).join(",");
            s.push('\n');
        }
    }
    if !rec.verdicts.is_empty() {
        if !s.is_empty() {
            s.push('\n');
        }
        s += "suite,check,pass,detail\n";
        for v in &rec.verdicts {
            let _ = writeln!(
                s,
                "{},{},{},\"{}\"",
                v.suite,
                v.check,
                v.pass,
                v.detail.replace('"', "'")
            );
        }
    }
    s
}

fn render_md(rec: &OutputRecord) -> String {
    let mut s = String::new();
    if let Some(p) = rec.params {
        let _ = writeln!(s, "## R_u{p}, {} variant\n", rec.variant.name());
    } else if let (Some(c), Some(n)) = (&rec.class, rec.n) {
        let _ = writeln!(s, "## {c} n={n}\n");
    }
    if !rec.rows.is_empty() {
        let h = headers(rec);
        let _ = writeln!(s, "| {} |", h.join(" | "));
        let _ = writeln!(s, "|{}", "---|".repeat(h.len()));
        for row in &rec.rows {
            let _ = writeln!(s, "| {} |", row_cells(rec, row).join(" | "));
        }
        s.push('\n');
    }
    for v in &rec.verdicts {
        let tag = if v.pass { "PASS" } else { "FAIL" };
        if v.detail.is_empty() {
            let _ = writeln!(s, "- {tag} [{}] {}", v.suite, v.check);
        } else {
            let _ = writeln!(s, "- {tag} [{}] {}: {}", v.suite, v.check, v.detail);
        }
    }
    for n in &rec.notes {
        let _ = writeln!(s, "- note: {n}");
    }
    if let Some(t) = rec.timing_ms {
        let _ = writeln!(s, "\n_{t} ms_");
    }
    s
}
