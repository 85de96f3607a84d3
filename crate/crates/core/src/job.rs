//! Batch jobs: read an operation table, run the requested checks and render
//! a report as JSON or text.

use std::fmt::{self, Write as _};
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::extend::{
    check_extension_associativity, check_extension_axioms, check_homomorphism,
    check_left_shift_claim, check_oracle, check_uniqueness, closure_check, endomorphisms,
    extended_cayley_table, idempotents, ExtendedOp, OpMorphism,
};
use crate::finset::{BinOpTable, FinSet};
use crate::monad::{
    check_functor_laws, check_monad_laws, check_mult_naturality, check_unit_naturality, MonadKind,
};
use crate::report::{CheckOptions, Counterexample, Guards, LawReport, Mode, Regime, Status};
use crate::tensor::{
    check_tensor_associativity, check_tensor_naturality_sweep, check_tensor_oracle,
    check_tensor_unit,
};

pub const SCHEMA_VERSION: u32 = 1;

/// Exit codes of the command-line front end.
pub mod exit {
    pub const PASS: i32 = 0;
    pub const LAW_FAILED: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const RESOURCE: i32 = 3;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    Laws,
    Axioms,
    Uniqueness,
    Associativity,
    Tensor,
    Homomorphism,
    Oracles,
    Idempotents,
}

impl Check {
    pub const ALL: [Check; 8] = [
        Check::Laws,
        Check::Axioms,
        Check::Uniqueness,
        Check::Associativity,
        Check::Tensor,
        Check::Homomorphism,
        Check::Oracles,
        Check::Idempotents,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Laws => "laws",
            Check::Axioms => "axioms",
            Check::Uniqueness => "uniqueness",
            Check::Associativity => "associativity",
            Check::Tensor => "tensor",
            Check::Homomorphism => "homomorphism",
            Check::Oracles => "oracles",
            Check::Idempotents => "idempotents",
        }
    }

    /// Whether the check needs `TX` listed.
    pub fn needs_enumeration(self) -> bool {
        matches!(self, Check::Idempotents)
    }

    /// Parses a comma-separated list; `all` expands to every check that
    /// `kind` supports.
    pub fn parse_list(text: &str, kind: MonadKind) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for word in text.split(',').map(str::trim).filter(|w| !w.is_empty()) {
            if word == "all" {
                out.extend(
                    Check::ALL
                        .into_iter()
                        .filter(|c| kind.is_enumerable() || !c.needs_enumeration()),
                );
            } else {
                out.push(word.parse()?);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::parse("--check", format!("unknown check {s:?}")))
    }
}

/// The JSON table document `{"elements": [...], "table": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDoc {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl TableDoc {
    pub fn from_table(op: &BinOpTable) -> Self {
        let x = op.left();
        TableDoc {
            elements: x.atoms().to_vec(),
            table: (0..x.len())
                .map(|i| {
                    (0..x.len())
                        .map(|j| op.out().atom(op.get(i, j)).to_string())
                        .collect()
                })
                .collect(),
        }
    }

    fn into_table(self, carrier: std::sync::Arc<FinSet>) -> Result<BinOpTable> {
        let n = carrier.len();
        if self.table.len() != n {
            return Err(Error::parse(
                "table",
                format!("{} rows for {n} elements", self.table.len()),
            ));
        }
        let mut cells = Vec::with_capacity(n * n);
        for (r, row) in self.table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::parse(
                    format!("table[{r}]"),
                    format!("ragged row of length {} (expected {n})", row.len()),
                ));
            }
            for (c, label) in row.iter().enumerate() {
                cells.push(carrier.index_of(label).ok_or_else(|| {
                    Error::parse(
                        format!("table[{r}][{c}]"),
                        format!("unknown label {label:?}"),
                    )
                })?);
            }
        }
        BinOpTable::cayley(&carrier, cells)
    }
}

fn read_doc(text: &str) -> Result<TableDoc> {
    serde_json::from_str(text).map_err(|e| {
        Error::parse(
            format!("line {}, column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

/// Parses an input table. Labels must be plain atoms.
pub fn parse_table(text: &str) -> Result<BinOpTable> {
    let doc = read_doc(text)?;
    let carrier = FinSet::new(doc.elements.clone()).map_err(|e| match e {
        Error::InvalidSet(msg) => Error::parse("elements", msg),
        other => other,
    })?;
    if carrier.is_empty() {
        return Err(Error::parse("elements", "no elements"));
    }
    doc.into_table(carrier)
}

/// Parses a table whose labels may be rendered elements, as emitted in the
/// `table` field of a report.
pub fn parse_emitted_table(text: &str) -> Result<BinOpTable> {
    let doc = read_doc(text)?;
    let carrier = FinSet::opaque(doc.elements.clone()).map_err(|e| match e {
        Error::InvalidSet(msg) => Error::parse("elements", msg),
        other => other,
    })?;
    doc.into_table(carrier)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobConfig {
    pub monad: MonadKind,
    pub input: String,
    pub checks: Vec<Check>,
    pub mode: ModeName,
    pub seed: u64,
    pub samples: usize,
    /// Largest base over which carriers are listed; `None` keeps the
    /// defaults.
    pub max_carrier: Option<usize>,
    pub allow_nonassociative: bool,
    #[serde(skip)]
    pub record_timing: bool,
}

impl JobConfig {
    pub fn new(monad: MonadKind, input: impl Into<String>) -> Self {
        JobConfig {
            monad,
            input: input.into(),
            checks: Vec::new(),
            mode: ModeName::Exhaustive,
            seed: 42,
            samples: 1000,
            max_carrier: None,
            allow_nonassociative: false,
            record_timing: false,
        }
    }

    pub fn guards(&self) -> Guards {
        let mut g = Guards {
            fallback_seed: self.seed,
            fallback_samples: self.samples,
            ..Guards::default()
        };
        if let Some(n) = self.max_carrier {
            g.max_exp_base = n;
            g.max_lattice_base = n;
        }
        g
    }

    pub fn options(&self) -> CheckOptions {
        CheckOptions {
            mode: match self.mode {
                ModeName::Exhaustive => Mode::Exhaustive,
                ModeName::Sampled => Mode::Sampled {
                    seed: self.seed,
                    samples: self.samples,
                },
            },
            guards: self.guards(),
        }
    }

    /// Rejects checks the monad cannot run.
    pub fn validate(&self) -> Result<()> {
        if let Some(c) = self
            .checks
            .iter()
            .find(|c| c.needs_enumeration() && !self.monad.is_enumerable())
        {
            return Err(Error::Capability(format!(
                "check {c} needs a listable carrier, which {} does not have",
                self.monad
            )));
        }
        if self.samples == 0 {
            return Err(Error::Precondition("--samples must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryStatus {
    Pass,
    Fail,
    PreconditionFailed,
    /// Not run: the request was invalid for this input.
    Refused,
    /// Not run: a resource guard was hit.
    ResourceExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckEntry {
    pub name: Check,
    pub status: EntryStatus,
    pub instances: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub values: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub laws: Vec<LawReport>,
}

impl CheckEntry {
    fn from_laws(name: Check, laws: Vec<LawReport>) -> Self {
        let all = LawReport::conjunction(name.name(), laws);
        CheckEntry {
            name,
            status: match all.status {
                Status::Pass => EntryStatus::Pass,
                Status::Fail => EntryStatus::Fail,
                Status::PreconditionFailed => EntryStatus::PreconditionFailed,
            },
            instances: all.instances,
            counterexample: all.counterexample,
            message: None,
            values: None,
            laws: all.parts,
        }
    }

    fn from_error(name: Check, e: Error) -> Self {
        let status = match e {
            Error::Resource(_) => EntryStatus::ResourceExceeded,
            Error::Internal(_) => EntryStatus::Fail,
            _ => EntryStatus::Refused,
        };
        CheckEntry {
            name,
            status,
            instances: 0,
            counterexample: None,
            message: Some(e.to_string()),
            values: None,
            laws: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobEcho {
    #[serde(flatten)]
    pub config: JobConfig,
    pub elements: Vec<String>,
    pub associative: bool,
    pub guards: Guards,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Timing {
    pub recorded: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub job: JobEcho,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<TableDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table_message: Option<String>,
    pub timing: Timing,
}

impl Report {
    /// Exit code for the report: a failed law outranks an invalid request,
    /// which outranks a resource refusal.
    pub fn exit_code(&self) -> i32 {
        let has = |s: EntryStatus| self.checks.iter().any(|c| c.status == s);
        if has(EntryStatus::Fail) {
            exit::LAW_FAILED
        } else if has(EntryStatus::Refused) || has(EntryStatus::PreconditionFailed) {
            exit::CONFIG
        } else if has(EntryStatus::ResourceExceeded) {
            exit::RESOURCE
        } else {
            exit::PASS
        }
    }
}

fn run_check(
    check: Check,
    kind: MonadKind,
    op: &BinOpTable,
    ext: Option<&ExtendedOp>,
    cfg: &JobConfig,
) -> Result<CheckEntry> {
    let opts = cfg.options();
    let x = op.left();
    let laws = match check {
        Check::Laws => vec![
            check_monad_laws(kind, x, &opts)?,
            check_functor_laws(kind, x, x, x, &opts)?,
            check_unit_naturality(kind, x, x, &opts)?,
            check_mult_naturality(kind, x, x, &opts)?,
        ],
        Check::Axioms => vec![
            check_extension_axioms(kind, op, &opts)?,
            check_left_shift_claim(kind, op, &opts)?,
        ],
        Check::Uniqueness => vec![check_uniqueness(kind, op, &opts)?],
        Check::Associativity => vec![
            check_extension_associativity(kind, op, cfg.allow_nonassociative, &opts)?,
            closure_check(kind, op, &opts)?,
        ],
        Check::Tensor => {
            let mut v = vec![
                check_tensor_unit(kind, x, x)?,
                check_tensor_naturality_sweep(kind, (x, x), (x, x), &opts)?,
                check_tensor_associativity(kind, x, x, x, &opts)?,
            ];
            if matches!(kind, MonadKind::Exp | MonadKind::Prob) {
                v.push(check_tensor_oracle(kind, x, x, &opts)?);
            }
            v
        }
        Check::Homomorphism => {
            let mut v = Vec::new();
            for h in endomorphisms(op)? {
                let labels: Vec<&str> = h.table().iter().map(|&i| x.atom(i)).collect();
                let m = OpMorphism {
                    h_x: h.clone(),
                    h_y: h.clone(),
                    h_z: h,
                };
                let mut r = check_homomorphism(kind, op, op, &m, &opts)?;
                r.law = format!("{} [h = ({})]", r.law, labels.join(","));
                v.push(r);
            }
            v
        }
        Check::Oracles => vec![check_oracle(kind, op, &opts)?],
        Check::Idempotents => {
            let ext = match ext {
                Some(ext) => ext,
                // rebuild to surface why the table is missing
                None => &extended_cayley_table(kind, op, cfg.allow_nonassociative, &cfg.guards())?,
            };
            let values = idempotents(ext).iter().map(|e| e.render()).collect();
            return Ok(CheckEntry {
                name: check,
                status: EntryStatus::Pass,
                instances: ext.elements().len() as u64,
                counterexample: None,
                message: None,
                values: Some(values),
                laws: Vec::new(),
            });
        }
    };
    Ok(CheckEntry::from_laws(check, laws))
}

/// Runs a job against an already-parsed table.
pub fn run_job(cfg: &JobConfig, op: &BinOpTable) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let kind = cfg.monad;
    let guards = cfg.guards();
    let associative = op.is_associative()?;
    let (ext, table_message) = if kind.is_enumerable() {
        match extended_cayley_table(kind, op, cfg.allow_nonassociative, &guards) {
            Ok(ext) => (Some(ext), None),
            Err(e) => (None, Some(e.to_string())),
        }
    } else {
        (
            None,
            Some(format!("{kind} has no listable carrier; no table")),
        )
    };
    let mut checks = Vec::with_capacity(cfg.checks.len());
    for &check in &cfg.checks {
        let entry = match run_check(check, kind, op, ext.as_ref(), cfg) {
            Ok(entry) => entry,
            Err(e) => CheckEntry::from_error(check, e),
        };
        checks.push(entry);
    }
    let elapsed = started.elapsed().as_millis();
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        job: JobEcho {
            config: cfg.clone(),
            elements: op.left().atoms().to_vec(),
            associative,
            guards,
        },
        checks,
        table: ext.as_ref().map(|e| TableDoc::from_table(e.table())),
        table_message,
        timing: Timing {
            recorded: cfg.record_timing,
            elapsed_ms: cfg.record_timing.then_some(elapsed),
        },
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("reports serialise");
            s.push('\n');
            s
        }
        Format::Text => render_text(r),
    }
}

fn regime_text(r: &Regime) -> String {
    match r {
        Regime::Exhaustive => "exhaustive".into(),
        Regime::Sampled {
            seed,
            samples,
            fallback,
        } => {
            let mut s = format!("sampled, seed {seed}, {samples} draws");
            if let Some(why) = fallback {
                let _ = write!(s, "; {why}");
            }
            s
        }
    }
}

fn status_text(s: EntryStatus) -> &'static str {
    match s {
        EntryStatus::Pass => "PASS",
        EntryStatus::Fail => "FAIL",
        EntryStatus::PreconditionFailed => "N/A ",
        EntryStatus::Refused => "REFUSED",
        EntryStatus::ResourceExceeded => "GUARD",
    }
}

fn law_lines(out: &mut String, r: &LawReport, depth: usize) {
    let mark = match r.status {
        Status::Pass => "ok  ",
        Status::Fail => "FAIL",
        Status::PreconditionFailed => "n/a ",
    };
    let _ = writeln!(
        out,
        "{:indent$}{mark} {} ({} instances, {})",
        "",
        r.law,
        r.instances,
        regime_text(&r.regime),
        indent = 2 * depth
    );
    if let Some(note) = &r.note {
        let _ = writeln!(out, "{:indent$}     {note}", "", indent = 2 * depth);
    }
    for p in &r.parts {
        law_lines(out, p, depth + 1);
    }
}

fn render_text(r: &Report) -> String {
    let mut out = String::new();
    let job = &r.job;
    let _ = writeln!(
        out,
        "monad {}  input {}  elements {}  associative {}",
        job.config.monad,
        job.config.input,
        job.elements.join(" "),
        if job.associative { "yes" } else { "no" }
    );
    for c in &r.checks {
        let _ = writeln!(
            out,
            "[{}] {} ({} instances)",
            status_text(c.status),
            c.name,
            c.instances
        );
        if let Some(m) = &c.message {
            let _ = writeln!(out, "    {m}");
        }
        if let Some(v) = &c.values {
            let _ = writeln!(out, "    {}", v.join("  "));
        }
        if let Some(ce) = &c.counterexample {
            let _ = writeln!(out, "    at   {}", ce.inputs.join(", "));
            let _ = writeln!(out, "    lhs  {}", ce.lhs);
            let _ = writeln!(out, "    rhs  {}", ce.rhs);
        }
        for l in &c.laws {
            law_lines(&mut out, l, 2);
        }
    }
    if let Some(t) = &r.table {
        let width = t
            .elements
            .iter()
            .map(|e| e.chars().count())
            .max()
            .unwrap_or(1);
        let _ = writeln!(out, "table:");
        let _ = write!(out, "{:width$} |", "");
        for e in &t.elements {
            let _ = write!(out, " {e:width$}");
        }
        out.push('\n');
        for (e, row) in t.elements.iter().zip(&t.table) {
            let _ = write!(out, "{e:width$} |");
            for cell in row {
                let _ = write!(out, " {cell:width$}");
            }
            out.push('\n');
        }
    } else if let Some(m) = &r.table_message {
        let _ = writeln!(out, "table: {m}");
    }
    if let Some(ms) = r.timing.elapsed_ms {
        let _ = writeln!(out, "elapsed {ms} ms");
    }
    out
}
