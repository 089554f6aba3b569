//! Job descriptions, their parser, and the runner behind `blockmon`.
//!
//! A job file is a list of `key: value` lines; `#` starts a comment.
//!
//! ```text
//! group: Z/3
//! seq: (1),(2)
//! cmd: catenary
//! graded: true
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use blockmonoid::bounds::{check_bounds, quiver_sequence, Quiver};
use blockmonoid::congruence::{block_catenary_degrees, Congruence};
use blockmonoid::groebner::{buchberger, check_groebner_system, default_class_degree, is_quadratic, TermOrder};
use blockmonoid::sweep::{self, Range, SweepOptions};
use blockmonoid::tilde::btilde_isomorphism;
use blockmonoid::{BlockMonoid, Error as CoreError, GroupSpec, Sequence};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Atoms,
    Presentation,
    Catenary,
    Tilde,
    Groebner,
    Bounds,
    Quiver,
    Sweep,
}

impl Command {
    pub const ALL: [Command; 8] = [
        Command::Atoms,
        Command::Presentation,
        Command::Catenary,
        Command::Tilde,
        Command::Groebner,
        Command::Bounds,
        Command::Quiver,
        Command::Sweep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Atoms => "atoms",
            Command::Presentation => "presentation",
            Command::Catenary => "catenary",
            Command::Tilde => "tilde",
            Command::Groebner => "groebner",
            Command::Bounds => "bounds",
            Command::Quiver => "quiver",
            Command::Sweep => "sweep",
        }
    }

    fn needs_sequence(self) -> bool {
        !matches!(self, Command::Quiver | Command::Sweep)
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown command `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderChoice {
    Lex,
    Grlex,
}

impl FromStr for OrderChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lex" => Ok(OrderChoice::Lex),
            "grlex" => Ok(OrderChoice::Grlex),
            _ => Err(format!("unknown order `{s}` (expected lex or grlex)")),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Largest `|G|`; for groups with a free part, the order of the torsion part.
    pub max_order: u64,
    pub max_len: usize,
    /// Largest degree searched for factorizations: twice the longest atom.
    pub max_degree: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_order: 64,
            max_len: 10,
            max_degree: 40,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Options {
    pub order: OrderChoice,
    pub graded: bool,
    pub tilde: bool,
    /// 1-based index of the entry to repeat.
    pub repeat: Option<usize>,
    pub format: Format,
    pub caps: Caps,
    pub arrows: Option<String>,
    pub h: Option<Vec<i64>>,
    pub sweep_order: Option<u64>,
    pub sweep_len: Option<usize>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            order: OrderChoice::Lex,
            graded: false,
            tilde: false,
            repeat: None,
            format: Format::Text,
            caps: Caps::default(),
            arrows: None,
            h: None,
            sweep_order: None,
            sweep_len: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSpec {
    pub group: Option<GroupSpec>,
    pub sequence: Vec<Vec<i64>>,
    pub command: Command,
    pub options: Options,
}

/// Where a parse error points; line 0 stands for a command-line argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "argument error: {}", self.message)
        } else {
            write!(f, "parse error at {}:{}: {}", self.line, self.column, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

/// One `key: value` setting with the position of its value.
#[derive(Clone, Debug)]
pub struct Entry {
    pub key: String,
    pub value: String,
    pub line: usize,
    pub column: usize,
}

impl Entry {
    /// A setting that came from a command-line flag.
    pub fn arg(key: &str, value: impl Into<String>) -> Self {
        Entry {
            key: key.to_string(),
            value: value.into(),
            line: 0,
            column: 0,
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        self.error_at(0, message)
    }

    fn error_at(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let message = message.into();
        ParseError {
            line: self.line,
            column: if self.line == 0 { 0 } else { self.column + offset },
            message: if self.line == 0 {
                format!("--{}: {message}", self.key)
            } else {
                message
            },
        }
    }
}

pub fn parse_input(text: &str) -> Result<JobSpec, ParseError> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            let column = line.len() - line.trim_start().len() + 1;
            return Err(ParseError {
                line: i + 1,
                column,
                message: "expected `key: value`".into(),
            });
        };
        let lead = value.len() - value.trim_start().len();
        entries.push(Entry {
            key: key.trim().to_string(),
            value: value.trim().to_string(),
            line: i + 1,
            column: key.len() + 2 + lead,
        });
    }
    build_job(&entries)
}

/// Validates settings into a job.
pub fn build_job(entries: &[Entry]) -> Result<JobSpec, ParseError> {
    let mut group: Option<(GroupSpec, &Entry)> = None;
    let mut seq: Option<(Vec<(Vec<i64>, usize)>, &Entry)> = None;
    let mut command: Option<Command> = None;
    let mut options = Options::default();
    for e in entries {
        match e.key.as_str() {
            "group" => {
                let g = e.value.parse::<GroupSpec>().map_err(|err| e.error(err.to_string()))?;
                group = Some((g, e));
            }
            "seq" => seq = Some((parse_tuples(e)?, e)),
            "cmd" => command = Some(e.value.parse().map_err(|m: String| e.error(m))?),
            "order" => options.order = e.value.parse().map_err(|m: String| e.error(m))?,
            "graded" => options.graded = parse_bool(e)?,
            "tilde" => options.tilde = parse_bool(e)?,
            "repeat" => {
                let r: usize = parse_num(e)?;
                if r == 0 {
                    return Err(e.error("repeat index is 1-based"));
                }
                options.repeat = Some(r);
            }
            "format" => {
                options.format = match e.value.as_str() {
                    "text" => Format::Text,
                    "json" => Format::Json,
                    _ => return Err(e.error(format!("unknown format `{}`", e.value))),
                }
            }
            "arrows" => {
                Quiver::parse(&e.value).map_err(|err| e.error(err.to_string()))?;
                options.arrows = Some(e.value.clone());
            }
            "h" => {
                // the parentheses are optional for a single tuple
                let t = if e.value.trim_start().starts_with('(') {
                    parse_tuples(e)?
                } else {
                    let wrapped = Entry {
                        value: format!("({})", e.value.trim()),
                        ..e.clone()
                    };
                    parse_tuples(&wrapped).map_err(|mut err| {
                        if err.line != 0 {
                            err.column = err.column.saturating_sub(1).max(e.column);
                        }
                        err
                    })?
                };
                if t.len() != 1 {
                    return Err(e.error("h is a single tuple"));
                }
                options.h = Some(t.into_iter().next().expect("one tuple").0);
            }
            "cap-order" => options.caps.max_order = positive(e)?,
            "cap-len" => options.caps.max_len = positive::<usize>(e)?,
            "cap-degree" => options.caps.max_degree = positive(e)?,
            "max-order" => options.sweep_order = Some(positive(e)?),
            "max-len" => options.sweep_len = Some(positive(e)?),
            other => return Err(e.error(format!("unknown key `{other}`"))),
        }
    }
    let Some(command) = command else {
        return Err(ParseError {
            line: 0,
            column: 0,
            message: "missing `cmd`".into(),
        });
    };
    let mut sequence = Vec::new();
    if let Some((g, ge)) = &group {
        if let Some((tuples, se)) = &seq {
            for (t, col) in tuples {
                if t.len() != g.arity() {
                    return Err(se.error_at(
                        *col,
                        format!("element arity {} does not match group {} (arity {})", t.len(), g, g.arity()),
                    ));
                }
            }
            sequence = tuples.iter().map(|(t, _)| t.clone()).collect();
        } else if command.needs_sequence() {
            return Err(ge.error("missing `seq`"));
        }
    } else if command.needs_sequence() {
        let message = if seq.is_some() { "missing `group` for `seq`" } else { "missing `group` and `seq`" };
        return Err(ParseError {
            line: seq.as_ref().map_or(0, |(_, e)| e.line),
            column: seq.as_ref().map_or(0, |(_, e)| e.column),
            message: message.into(),
        });
    }
    if command == Command::Quiver && (options.arrows.is_none() || options.h.is_none()) {
        return Err(ParseError {
            line: 0,
            column: 0,
            message: "quiver needs `arrows` and `h`".into(),
        });
    }
    Ok(JobSpec {
        group: group.map(|(g, _)| g),
        sequence,
        command,
        options,
    })
}

fn parse_bool(e: &Entry) -> Result<bool, ParseError> {
    match e.value.as_str() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(e.error(format!("expected true or false, found `{}`", e.value))),
    }
}

fn parse_num<T: FromStr>(e: &Entry) -> Result<T, ParseError> {
    e.value
        .parse()
        .map_err(|_| e.error(format!("expected a number, found `{}`", e.value)))
}

fn positive<T: FromStr + PartialOrd + Default>(e: &Entry) -> Result<T, ParseError> {
    let v: T = parse_num(e)?;
    if v <= T::default() {
        return Err(e.error("caps must be positive"));
    }
    Ok(v)
}

/// `(1,0),(2,1)`; each tuple comes with its column offset in the value.
fn parse_tuples(e: &Entry) -> Result<Vec<(Vec<i64>, usize)>, ParseError> {
    let s = e.value.as_str();
    let mut out = Vec::new();
    let mut i = 0;
    let bytes = s.as_bytes();
    let skip_ws = |i: &mut usize| {
        while *i < bytes.len() && bytes[*i].is_ascii_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i >= bytes.len() || bytes[i] != b'(' {
            return Err(e.error_at(i, "expected `(`"));
        }
        let start = i;
        let Some(close) = s[i..].find(')') else {
            return Err(e.error_at(i, "unclosed `(`"));
        };
        let inner = &s[i + 1..i + close];
        let mut tuple = Vec::new();
        let mut offset = i + 1;
        for part in inner.split(',') {
            let t = part.trim();
            let v: i64 = t
                .parse()
                .map_err(|_| e.error_at(offset, format!("bad integer `{t}`")))?;
            tuple.push(v);
            offset += part.len() + 1;
        }
        out.push((tuple, start));
        i += close + 1;
        skip_ws(&mut i);
        if i == bytes.len() {
            return Ok(out);
        }
        if bytes[i] != b',' {
            return Err(e.error_at(i, "expected `,` between elements"));
        }
        i += 1;
    }
}

/// A finished job: fixed header fields plus command-specific ones.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: Command,
    pub group: Option<String>,
    pub sequence: Vec<Vec<i64>>,
    /// Whether every check in the report holds; true for plain computations.
    pub passed: bool,
    #[serde(flatten)]
    pub result: Map<String, Value>,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\n", self.command.name());
        if let Some(g) = &self.group {
            out.push_str(&format!("group: {g}\n"));
        }
        if !self.sequence.is_empty() {
            out.push_str(&format!("sequence: {}\n", tuples(&self.sequence)));
        }
        for (k, v) in &self.result {
            out.push_str(&format!("{k}: {}\n", compact(v)));
        }
        out.push_str(&format!("passed: {}\n", self.passed));
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.to_json() + "\n",
            Format::Text => self.to_text(),
        }
    }
}

/// Parses a JSON report, refusing other schema versions.
pub fn parse_report(text: &str) -> Result<Report, String> {
    let value: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    match value.get("schema_version").and_then(Value::as_u64) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => return Err(format!("unsupported schema_version {v}")),
        None => return Err("missing schema_version".into()),
    }
    serde_json::from_value(value).map_err(|e| e.to_string())
}

fn tuples(seq: &[Vec<i64>]) -> String {
    seq.iter()
        .map(|t| format!("({})", t.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(",")
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug)]
pub enum RunError {
    Core(CoreError),
    Cap(String),
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Core(e) => write!(f, "{e}"),
            RunError::Cap(m) => write!(f, "refused: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<CoreError> for RunError {
    fn from(e: CoreError) -> Self {
        RunError::Core(e)
    }
}

fn cap_group(group: &GroupSpec, caps: &Caps) -> Result<(), RunError> {
    let order = group.torsion_order().unwrap_or(u64::MAX);
    if order > caps.max_order {
        return Err(RunError::Cap(format!(
            "group order {order} exceeds --cap-order {}",
            caps.max_order
        )));
    }
    Ok(())
}

fn cap_len(m: usize, caps: &Caps) -> Result<(), RunError> {
    if m > caps.max_len {
        return Err(RunError::Cap(format!("sequence length {m} exceeds --cap-len {}", caps.max_len)));
    }
    Ok(())
}

fn cap_degree(bm: &BlockMonoid, caps: &Caps) -> Result<(), RunError> {
    let d = 2 * bm.max_atom_length();
    if d > caps.max_degree {
        return Err(RunError::Cap(format!(
            "factorization search degree {d} exceeds --cap-degree {}",
            caps.max_degree
        )));
    }
    Ok(())
}

fn sequence_of(job: &JobSpec) -> Result<Sequence, RunError> {
    let group = job.group.as_ref().ok_or(RunError::Core(CoreError::EmptySequence))?;
    cap_group(group, &job.options.caps)?;
    cap_len(job.sequence.len(), &job.options.caps)?;
    Ok(Sequence::from_coords(&group.clone().into_group(), &job.sequence)?)
}

fn block_of(job: &JobSpec) -> Result<BlockMonoid, RunError> {
    let bm = BlockMonoid::new(sequence_of(job)?);
    cap_degree(&bm, &job.options.caps)?;
    Ok(bm)
}

fn term_order(choice: OrderChoice, n: usize) -> TermOrder {
    match choice {
        OrderChoice::Lex => TermOrder::lex(n),
        OrderChoice::Grlex => TermOrder::grlex(n),
    }
}

fn to_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

/// Runs a job. Failed checks are reported in `passed`, not as errors.
pub fn run(job: &JobSpec) -> Result<Report, RunError> {
    let opts = &job.options;
    let (result, passed) = match job.command {
        Command::Atoms => {
            let bm = block_of(job)?;
            let lengths: Vec<u64> = bm.length_grading().degrees().to_vec();
            (
                json!({ "count": bm.atoms().len(), "atoms": bm.atoms(), "lengths": lengths }),
                true,
            )
        }
        Command::Presentation => {
            let bm = block_of(job)?;
            let p = Congruence::of_block(&bm).minimal_presentation(&bm.length_grading());
            (
                json!({ "count": p.pairs.len(), "max_degree": p.max_degree(), "pairs": p.pairs }),
                true,
            )
        }
        Command::Catenary => {
            let bm = block_of(job)?;
            let c = block_catenary_degrees(&bm);
            let mut v = json!({ "catenary": c.catenary });
            if opts.graded {
                v["graded_catenary"] = json!(c.graded);
            }
            (v, true)
        }
        Command::Tilde => {
            let seq = sequence_of(job)?;
            cap_len(seq.len() + 1, &opts.caps)?;
            let r = repeat_index(job, &seq)?;
            let iso = btilde_isomorphism(&seq, r)?;
            cap_degree(&iso.repeated, &opts.caps)?;
            let t = sweep::transfer_check(&iso)?;
            let repeated: Vec<Vec<i64>> = iso
                .repeated
                .sequence()
                .elements()
                .iter()
                .map(|e| e.coords().to_vec())
                .collect();
            (
                json!({
                    "repeat": r + 1,
                    "repeated_sequence": tuples(&repeated),
                    "base_atoms": iso.base.atoms().len(),
                    "tilde_atoms": iso.repeated.atoms().len(),
                    "layout_degrees": iso.layout.degrees(),
                    "transfer": t,
                }),
                t.passed(),
            )
        }
        Command::Groebner => {
            let bm = block_of(job)?;
            if opts.tilde {
                let seq = bm.sequence();
                cap_len(seq.len() + 1, &opts.caps)?;
                let r = repeat_index(job, seq)?;
                let iso = btilde_isomorphism(seq, r)?;
                cap_degree(&iso.repeated, &opts.caps)?;
                let order = term_order(opts.order, bm.atoms().len());
                let g = sweep::tilde_groebner_check(&iso, &order)?;
                let passed = g.check.passed() && (!g.base_quadratic || g.tilde_quadratic);
                let mut v = serde_json::to_value(&g).expect("serializable");
                v["repeat"] = json!(r + 1);
                (v, passed)
            } else {
                let m = bm.monoid();
                let order = term_order(opts.order, m.num_atoms());
                let system = buchberger(m, &order);
                let reference: Vec<_> = Congruence::of_block(&bm)
                    .minimal_presentation(&bm.length_grading())
                    .pairs
                    .into_iter()
                    .map(|p| (p.left, p.right))
                    .collect();
                let check = check_groebner_system(&system, m, &reference, default_class_degree(m));
                let passed = check.passed();
                (
                    json!({
                        "order": order.name(),
                        "count": system.len(),
                        "quadratic": is_quadratic(&system),
                        "pairs": system.pairs,
                        "check": check,
                    }),
                    passed,
                )
            }
        }
        Command::Bounds => {
            let bm = block_of(job)?;
            let report = check_bounds(bm.sequence())?;
            let passed = report.passed();
            (serde_json::to_value(&report).expect("serializable"), passed)
        }
        Command::Quiver => {
            let arrows = opts.arrows.as_deref().expect("validated");
            let h = opts.h.as_deref().expect("validated");
            let quiver = Quiver::parse(arrows)?;
            cap_len(quiver.arrows.len() + 1, &opts.caps)?;
            let seq = quiver_sequence(&quiver, h)?;
            let bm = BlockMonoid::new(seq.clone());
            cap_degree(&bm, &opts.caps)?;
            let c = block_catenary_degrees(&bm);
            let coords: Vec<Vec<i64>> = seq.elements().iter().map(|e| e.coords().to_vec()).collect();
            (
                json!({
                    "vertices": quiver.vertices,
                    "arrows": arrows,
                    "quiver_sequence": tuples(&coords),
                    "atoms": bm.atoms().len(),
                    "catenary": c.catenary,
                }),
                true,
            )
        }
        Command::Sweep => {
            let sweep_opts = sweep_options(opts);
            let hull = sweep_opts.hull();
            if hull.max_order > opts.caps.max_order || hull.max_len > opts.caps.max_len {
                return Err(RunError::Cap(format!(
                    "sweep range |G| <= {}, m <= {} exceeds the caps",
                    hull.max_order, hull.max_len
                )));
            }
            let summary = sweep::run_sweep(&sweep_opts)?;
            let passed = summary.passed();
            let tallies: Map<String, Value> = summary
                .tallies
                .iter()
                .map(|(k, t)| (k.name().to_string(), json!({ "passed": t.passed, "failed": t.failed })))
                .collect();
            (
                json!({
                    "instances": summary.instances,
                    "ranges": sweep_opts,
                    "tallies": tallies,
                    "failures": summary.failures,
                }),
                passed,
            )
        }
    };
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        command: job.command,
        group: job.group.as_ref().map(|g| g.to_string()),
        sequence: job.sequence.clone(),
        passed,
        result: to_map(result),
    })
}

fn repeat_index(job: &JobSpec, seq: &Sequence) -> Result<usize, RunError> {
    let r = job.options.repeat.unwrap_or(1);
    if r == 0 || r > seq.len() {
        return Err(RunError::Core(CoreError::RepeatIndex {
            index: r,
            len: seq.len(),
        }));
    }
    Ok(r - 1)
}

/// Default ranges, clipped by `max-order` and `max-len`.
pub fn sweep_options(opts: &Options) -> SweepOptions {
    let clip = |r: Option<Range>| {
        r.map(|r| {
            Range::new(
                opts.sweep_order.map_or(r.max_order, |o| o.min(r.max_order)),
                opts.sweep_len.map_or(r.max_len, |l| l.min(r.max_len)),
            )
        })
    };
    let d = SweepOptions::default();
    SweepOptions {
        core: clip(d.core),
        tilde: clip(d.tilde),
        bounds: clip(d.bounds),
        chain_search: clip(d.chain_search),
    }
}

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    /// A computation failed, a cap was hit, or a check in the report failed.
    pub const FAILURE: i32 = 1;
    pub const PARSE: i32 = 2;
}
