//! Command implementations behind the `gemd` binary. Each command produces a
//! serializable [`Payload`] that is rendered either as JSON or as a plain
//! key/value table.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use gemd::analysis::{
    emd_histogram, grade_report, histogram_from_genfunc, rescale_common_mass, skewness,
    EmdHistogram, GradeTable, DEFAULT_ENUMERATION_BUDGET,
};
use gemd::cost::{build_cost_array, CostArray, DEFAULT_DENSE_CAP};
use gemd::genfunc::{continuous_expected, discrete_expected, unit_normalized_expected};
use gemd::monge::{check_full, check_planes};
use gemd::rational::{ratio, to_decimal};
use gemd::transport::{
    continuous_emd, discrete_emd, max_emd, rsk_joint, unit_normalized_emd,
};
use gemd::{BinShape, Composition, DistTuple, MultiIndex, Rational};
use serde::{Deserialize, Serialize};

pub const DEFAULT_DIGITS: usize = 6;
pub const BUDGET_ENV: &str = "GEMD_ENUM_BUDGET";

#[derive(Parser, Debug)]
#[command(
    name = "gemd",
    version,
    about = "Generalized earth mover's distance for tuples of histograms"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Table, global = true)]
    pub format: Format,
    /// Decimal places used when rendering rationals.
    #[arg(long, default_value_t = DEFAULT_DIGITS, global = true)]
    pub digits: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// EMD of two or more histograms.
    Emd(EmdArgs),
    /// Expected EMD of uniformly random histograms.
    Expected(ExpectedArgs),
    /// Distribution of EMD values over all tuples of a given mass.
    Histogram(HistogramArgs),
    /// Check an array for the Monge property.
    Monge(MongeArgs),
    /// EMD report for a grade table.
    Grades(GradesArgs),
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("input").required(true).args(["dists", "csv"])))]
pub struct EmdArgs {
    /// Inline histograms, e.g. "4,0,1;1,2,2;0,5,0".
    #[arg(long)]
    pub dists: Option<String>,
    /// Grade-table CSV; every section is one histogram.
    #[arg(long)]
    pub csv: Option<PathBuf>,
    /// Scale all histograms to the largest mass before comparing.
    #[arg(long)]
    pub rescale: bool,
    /// Also emit the optimal chain-supported transport plan.
    #[arg(long)]
    pub plan: bool,
}

#[derive(Args, Debug)]
pub struct ExpectedArgs {
    /// Number of histograms.
    #[arg(short = 'd', value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    /// Number of bins.
    #[arg(
        short = 'n',
        value_parser = clap::value_parser!(u32).range(1..),
        required_unless_present = "table"
    )]
    pub n: Option<u32>,
    /// Only report the unit-normalized value.
    #[arg(long)]
    pub normalized: bool,
    /// Tabulate n = 2..=NMAX.
    #[arg(long, value_name = "NMAX", conflicts_with_all = ["n", "discrete"])]
    pub table: Option<u32>,
    /// Discrete expectation over histograms of total mass S.
    #[arg(long, value_name = "S")]
    pub discrete: Option<u64>,
}

#[derive(Args, Debug)]
pub struct HistogramArgs {
    #[arg(short = 'd', value_parser = clap::value_parser!(u32).range(1..))]
    pub d: u32,
    #[arg(short = 'n', value_parser = clap::value_parser!(u32).range(1..))]
    pub n: u32,
    /// Total mass of each histogram.
    #[arg(short = 's')]
    pub s: u64,
    /// Read counts off the generating function instead of enumerating.
    #[arg(long)]
    pub via_genfunc: bool,
    /// Print `emd,count` CSV rows instead of the report.
    #[arg(long)]
    pub csv: bool,
    /// Largest number of tuples to enumerate.
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_ENUMERATION_BUDGET)]
    pub budget: u128,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["builtin", "array"])))]
pub struct MongeArgs {
    /// Check the built-in cost array on [N]^D.
    #[arg(long, num_args = 2, value_names = ["D", "N"])]
    pub builtin: Option<Vec<u32>>,
    /// CSV array: one line per row, or a `shape:n1,n2,...` line followed by
    /// row-major entries.
    #[arg(long)]
    pub array: Option<PathBuf>,
    /// Test every pair of cells instead of adjacent squares.
    #[arg(long)]
    pub full: bool,
}

#[derive(Args, Debug)]
pub struct GradesArgs {
    /// Grade-table CSV.
    pub path: PathBuf,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ExitKind {
    Usage = 2,
    Capacity = 3,
    Data = 4,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub kind: ExitKind,
    pub message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Usage,
            message: message.into(),
        }
    }

    fn data(message: impl Into<String>) -> Self {
        Self {
            kind: ExitKind::Data,
            message: message.into(),
        }
    }
}

impl From<gemd::Error> for CliError {
    fn from(e: gemd::Error) -> Self {
        let kind = match e {
            gemd::Error::CapacityExceeded { .. } => ExitKind::Capacity,
            _ => ExitKind::Data,
        };
        Self {
            kind,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Exact rational with a rounded decimal rendering.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RationalValue {
    pub num: String,
    pub den: String,
    pub decimal: String,
}

impl RationalValue {
    pub fn new(r: &Rational, digits: usize) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
            decimal: to_decimal(r, digits),
        }
    }

    pub fn to_rational(&self) -> Option<Rational> {
        Some(Rational::new(self.num.parse().ok()?, self.den.parse().ok()?))
    }
}

impl std::fmt::Display for RationalValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == "1" {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{} = {}", self.num, self.den, self.decimal)
        }
    }
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
#[serde(tag = "command", rename_all = "snake_case")]
pub enum Payload {
    Emd(EmdOutput),
    Expected(ExpectedOutput),
    Histogram(HistogramOutput),
    Monge(MongeOutput),
    Grades(GradesOutput),
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct PlanCell {
    pub cell: Vec<usize>,
    pub weight: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EmdOutput {
    pub d: usize,
    pub n: usize,
    pub mass: u64,
    pub distributions: Vec<Vec<u64>>,
    pub discrete: u64,
    pub continuous: RationalValue,
    pub unit_normalized: RationalValue,
    pub plan: Option<Vec<PlanCell>>,
    pub warnings: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub n: usize,
    pub expected: Option<RationalValue>,
    pub normalized: Option<RationalValue>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct ExpectedOutput {
    pub d: usize,
    /// Mass of the discrete expectation; `None` for the continuous limit.
    pub s: Option<u64>,
    pub rows: Vec<ExpectedRow>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct Bucket {
    pub emd: u64,
    pub count: u64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq)]
pub struct HistogramOutput {
    pub d: usize,
    pub n: usize,
    pub s: u64,
    pub method: String,
    pub total: u64,
    pub buckets: Vec<Bucket>,
    pub mean: RationalValue,
    /// Population skewness; `None` when every tuple has the same EMD.
    pub skewness: Option<f64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MongeWitness {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
    /// `A(x min y) + A(x max y)`.
    pub lhs: i64,
    /// `A(x) + A(y)`.
    pub rhs: i64,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MongeOutput {
    pub source: String,
    pub shape: Vec<usize>,
    pub checker: String,
    pub holds: bool,
    pub witness: Option<MongeWitness>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SectionRow {
    pub name: String,
    pub counts: Vec<u64>,
    pub rescaled: Vec<u64>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GradesOutput {
    pub labels: Vec<String>,
    pub sections: Vec<SectionRow>,
    pub mass: u64,
    pub discrete: u64,
    pub continuous: RationalValue,
    pub unit_normalized: RationalValue,
    pub expected_normalized: Option<RationalValue>,
    pub ratio_to_expected: Option<RationalValue>,
    pub warnings: Vec<String>,
}

/// Runs the parsed command line and returns the text to print.
pub fn run(cli: &Cli) -> CliResult<String> {
    let payload = execute(&cli.command, cli.digits)?;
    if let (Command::Histogram(args), Payload::Histogram(h)) = (&cli.command, &payload) {
        if args.csv {
            return histogram_csv(h);
        }
    }
    Ok(match cli.format {
        Format::Json => to_json(&payload),
        Format::Table => render_table(&payload),
    })
}

pub fn execute(command: &Command, digits: usize) -> CliResult<Payload> {
    match command {
        Command::Emd(a) => cmd_emd(a, digits).map(Payload::Emd),
        Command::Expected(a) => cmd_expected(a, digits).map(Payload::Expected),
        Command::Histogram(a) => cmd_histogram(a, digits).map(Payload::Histogram),
        Command::Monge(a) => cmd_monge(a).map(Payload::Monge),
        Command::Grades(a) => cmd_grades(&a.path, digits).map(Payload::Grades),
    }
}

pub fn to_json(payload: &Payload) -> String {
    let mut s = serde_json::to_string_pretty(payload).expect("payloads always serialize");
    s.push('\n');
    s
}

/// Parses `c1,c2,...;c1,c2,...` into one row per histogram.
pub fn parse_inline(text: &str) -> CliResult<Vec<Vec<u64>>> {
    text.split(';')
        .map(str::trim)
        .filter(|m| !m.is_empty())
        .map(|member| {
            member
                .split(',')
                .map(|c| {
                    c.trim()
                        .parse::<u64>()
                        .map_err(|_| CliError::data(format!("`{}` is not a nonnegative count", c.trim())))
                })
                .collect()
        })
        .collect()
}

fn cmd_emd(args: &EmdArgs, digits: usize) -> CliResult<EmdOutput> {
    let table = match (&args.dists, &args.csv) {
        (Some(inline), _) => {
            let rows = parse_inline(inline)?;
            let n = rows.first().map_or(0, Vec::len);
            let sections = rows
                .into_iter()
                .enumerate()
                .map(|(i, r)| Ok((format!("mu{}", i + 1), Composition::new(r)?)))
                .collect::<CliResult<Vec<_>>>()?;
            GradeTable::new((1..=n).map(|k| k.to_string()).collect(), sections)?
        }
        (None, Some(path)) => GradeTable::from_path(path)?,
        (None, None) => return Err(CliError::usage("give --dists or --csv")),
    };
    if table.sections.len() < 2 {
        return Err(CliError::data("need at least two distributions"));
    }
    let mut warnings = Vec::new();
    let tuple = if args.rescale {
        let t = rescale_common_mass(&table)?;
        let changed: Vec<&str> = table
            .sections
            .iter()
            .zip(t.members())
            .filter(|((_, raw), scaled)| raw != *scaled)
            .map(|((name, _), _)| name.as_str())
            .collect();
        if !changed.is_empty() {
            warnings.push(format!("rescaled to mass {}: {}", t.mass(), changed.join(", ")));
        }
        t
    } else {
        DistTuple::new(table.sections.iter().map(|(_, c)| c.clone()).collect()).map_err(
            |e| match e {
                gemd::Error::MassMismatch { .. } => {
                    CliError::data(format!("{e} (pass --rescale to equalize masses)"))
                }
                e => e.into(),
            },
        )?
    };
    let plan = args.plan.then(|| {
        rsk_joint(&tuple)
            .support()
            .iter()
            .map(|(m, w)| PlanCell {
                cell: m.coords().to_vec(),
                weight: *w,
            })
            .collect()
    });
    Ok(EmdOutput {
        d: tuple.dim(),
        n: table.labels.len(),
        mass: tuple.mass(),
        distributions: tuple.members().iter().map(|c| c.bins().to_vec()).collect(),
        discrete: discrete_emd(&tuple),
        continuous: RationalValue::new(&continuous_emd(&tuple)?, digits),
        unit_normalized: RationalValue::new(&unit_normalized_emd(&tuple)?, digits),
        plan,
        warnings,
    })
}

fn cmd_expected(args: &ExpectedArgs, digits: usize) -> CliResult<ExpectedOutput> {
    let d = args.d as usize;
    let ns: Vec<usize> = match (args.table, args.n) {
        (Some(nmax), _) => (2..=nmax as usize).collect(),
        (None, Some(n)) => vec![n as usize],
        (None, None) => return Err(CliError::usage("give -n or --table")),
    };
    let rows = ns
        .into_iter()
        .map(|n| {
            let shape = BinShape::uniform(d, n)?;
            let (expected, normalized) = match args.discrete {
                Some(s) => {
                    let e = discrete_expected(&shape, s)?;
                    let max = s * max_emd(d, n);
                    let norm = (max > 0).then(|| &e / ratio(max, 1));
                    (e, norm)
                }
                None => (
                    continuous_expected(&shape),
                    unit_normalized_expected(d, n).ok(),
                ),
            };
            if args.normalized && normalized.is_none() {
                return Err(CliError::data(format!(
                    "normalized value undefined for d = {d}, n = {n}"
                )));
            }
            Ok(ExpectedRow {
                n,
                expected: (!args.normalized).then(|| RationalValue::new(&expected, digits)),
                normalized: normalized.map(|r| RationalValue::new(&r, digits)),
            })
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ExpectedOutput {
        d,
        s: args.discrete,
        rows,
    })
}

fn cmd_histogram(args: &HistogramArgs, digits: usize) -> CliResult<HistogramOutput> {
    let (d, n, s) = (args.d as usize, args.n as usize, args.s);
    let (h, method): (EmdHistogram, _) = if args.via_genfunc {
        (histogram_from_genfunc(d, n, s)?, "generating-function")
    } else {
        let h = emd_histogram(d, n, s, args.budget).map_err(|e| {
            let mut err = CliError::from(e);
            if err.kind == ExitKind::Capacity {
                err.message += &format!(
                    "; raise {BUDGET_ENV} or --budget, or use --via-genfunc"
                );
            }
            err
        })?;
        (h, "enumeration")
    };
    let sk = skewness(&h);
    Ok(HistogramOutput {
        d,
        n,
        s,
        method: method.into(),
        total: h.total(),
        buckets: h
            .counts
            .iter()
            .map(|(&emd, &count)| Bucket { emd, count })
            .collect(),
        mean: RationalValue::new(&h.mean(), digits),
        skewness: (!sk.degenerate).then_some(sk.value),
    })
}

fn histogram_csv(h: &HistogramOutput) -> CliResult<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::data(e.to_string());
    w.write_record(["emd", "count"]).map_err(io)?;
    for b in &h.buckets {
        w.serialize((b.emd, b.count)).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::data(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is ascii"))
}

/// Reads a Monge input array. Plain CSV rows give a two-dimensional array;
/// a leading `shape:n1,...,nd` line switches to row-major entries.
pub fn parse_array(text: &str) -> CliResult<CostArray> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for r in reader.records() {
        let r = r.map_err(|e| CliError::data(e.to_string()))?;
        let fields: Vec<String> = r.iter().filter(|f| !f.is_empty()).map(str::to_string).collect();
        if !fields.is_empty() {
            records.push(fields);
        }
    }
    let num = |f: &str| {
        f.parse::<i64>()
            .map_err(|_| CliError::data(format!("`{f}` is not an integer")))
    };
    let Some(first) = records.first() else {
        return Err(CliError::data("empty array"));
    };
    if let Some(head) = first[0].strip_prefix("shape:") {
        let sizes = std::iter::once(head.trim())
            .chain(first[1..].iter().map(String::as_str))
            .filter(|f| !f.is_empty())
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| CliError::data(format!("bad shape entry `{f}`")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let entries = records[1..]
            .iter()
            .flatten()
            .map(|f| num(f))
            .collect::<CliResult<Vec<_>>>()?;
        return Ok(CostArray::from_entries(BinShape::new(sizes)?, entries)?);
    }
    let rows = records
        .iter()
        .map(|r| r.iter().map(|f| num(f)).collect())
        .collect::<CliResult<Vec<Vec<i64>>>>()?;
    Ok(CostArray::from_rows(&rows)?)
}

fn cmd_monge(args: &MongeArgs) -> CliResult<MongeOutput> {
    let (array, source) = match (&args.builtin, &args.array) {
        (Some(dn), _) => {
            let shape = BinShape::uniform(dn[0] as usize, dn[1] as usize)?;
            (build_cost_array(&shape, DEFAULT_DENSE_CAP)?, "builtin".to_string())
        }
        (None, Some(path)) => (read_array(path)?, path.display().to_string()),
        (None, None) => return Err(CliError::usage("give --builtin or --array")),
    };
    let verdict = if args.full {
        check_full(&array)
    } else {
        check_planes(&array)
    };
    let witness = verdict.witness.map(|(x, y)| {
        let (lo, hi): (Vec<usize>, Vec<usize>) = x
            .coords()
            .iter()
            .zip(y.coords())
            .map(|(&a, &b)| (a.min(b), a.max(b)))
            .unzip();
        let at = |v: Vec<usize>| array.get(&MultiIndex::new(v).expect("coordinates are positive"));
        MongeWitness {
            lhs: at(lo) + at(hi),
            rhs: array.get(&x) + array.get(&y),
            x: x.into_vec(),
            y: y.into_vec(),
        }
    });
    Ok(MongeOutput {
        source,
        shape: array.shape().sizes().to_vec(),
        checker: if args.full { "full" } else { "planes" }.into(),
        holds: verdict.holds,
        witness,
    })
}

fn read_array(path: &Path) -> CliResult<CostArray> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::data(format!("cannot read {}: {e}", path.display())))?;
    parse_array(&text)
}

fn cmd_grades(path: &Path, digits: usize) -> CliResult<GradesOutput> {
    let table = GradeTable::from_path(path)?;
    let r = grade_report(&table)?;
    let rv = |x: &Rational| RationalValue::new(x, digits);
    Ok(GradesOutput {
        labels: table.labels.clone(),
        sections: table
            .sections
            .iter()
            .zip(r.tuple.members())
            .map(|((name, raw), scaled)| SectionRow {
                name: name.clone(),
                counts: raw.bins().to_vec(),
                rescaled: scaled.bins().to_vec(),
            })
            .collect(),
        mass: r.mass,
        discrete: r.discrete,
        continuous: rv(&r.continuous),
        unit_normalized: rv(&r.unit_normalized),
        expected_normalized: r.expected_normalized.as_ref().map(rv),
        ratio_to_expected: r.ratio_to_expected.as_ref().map(rv),
        warnings: r.warnings,
    })
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(",")
}

fn opt(v: &Option<RationalValue>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |r| r.decimal.clone())
}

pub fn render_table(payload: &Payload) -> String {
    let mut out = String::new();
    let o = &mut out;
    match payload {
        Payload::Emd(e) => {
            for (i, m) in e.distributions.iter().enumerate() {
                let _ = writeln!(o, "mu{:<15} ({})", i + 1, join(m));
            }
            let _ = writeln!(o, "{:<17} {}", "d", e.d);
            let _ = writeln!(o, "{:<17} {}", "n", e.n);
            let _ = writeln!(o, "{:<17} {}", "mass", e.mass);
            let _ = writeln!(o, "{:<17} {}", "discrete", e.discrete);
            let _ = writeln!(o, "{:<17} {}", "continuous", e.continuous);
            let _ = writeln!(o, "{:<17} {}", "unit-normalized", e.unit_normalized);
            if let Some(plan) = &e.plan {
                let _ = writeln!(o, "plan:");
                for c in plan {
                    let _ = writeln!(o, "  ({}) x {}", join(&c.cell), c.weight);
                }
            }
        }
        Payload::Expected(x) => {
            let label = match x.s {
                Some(s) => format!("E_s (s = {s})"),
                None => "E".to_string(),
            };
            let _ = writeln!(o, "d = {}", x.d);
            let _ = writeln!(o, "{:>4}  {:>16}  {:>16}", "n", label, "normalized");
            for r in &x.rows {
                let _ = writeln!(
                    o,
                    "{:>4}  {:>16}  {:>16}",
                    r.n,
                    opt(&r.expected),
                    opt(&r.normalized)
                );
            }
        }
        Payload::Histogram(h) => {
            let _ = writeln!(o, "d = {}, n = {}, s = {} ({})", h.d, h.n, h.s, h.method);
            let width = h.buckets.iter().map(|b| b.count).max().unwrap_or(1).max(1);
            for b in &h.buckets {
                let bar = "#".repeat(((b.count * 40).div_ceil(width)) as usize);
                let _ = writeln!(o, "{:>6}  {:>12}  {bar}", b.emd, b.count);
            }
            let _ = writeln!(o, "total     {}", h.total);
            let _ = writeln!(o, "mean      {}", h.mean);
            let _ = match h.skewness {
                Some(v) => writeln!(o, "skewness  {v:.6}"),
                None => writeln!(o, "skewness  undefined (zero variance)"),
            };
        }
        Payload::Monge(m) => {
            let _ = writeln!(o, "array     {} ({})", m.source, join(&m.shape));
            let _ = writeln!(o, "checker   {}", m.checker);
            let _ = writeln!(o, "monge     {}", m.holds);
            if let Some(w) = &m.witness {
                let _ = writeln!(
                    o,
                    "witness   x = ({}), y = ({}): {} > {}",
                    join(&w.x),
                    join(&w.y),
                    w.lhs,
                    w.rhs
                );
            }
        }
        Payload::Grades(g) => {
            let name_w = g.sections.iter().map(|s| s.name.len()).max().unwrap_or(0).max(7);
            let _ = writeln!(o, "{:<name_w$}  {}", "section", g.labels.join(" "));
            for s in &g.sections {
                let _ = writeln!(o, "{:<name_w$}  {}", s.name, join(&s.rescaled));
            }
            let _ = writeln!(o, "{:<20} {}", "mass", g.mass);
            let _ = writeln!(o, "{:<20} {}", "discrete", g.discrete);
            let _ = writeln!(o, "{:<20} {}", "continuous", g.continuous);
            let _ = writeln!(o, "{:<20} {}", "unit-normalized", g.unit_normalized);
            let _ = writeln!(o, "{:<20} {}", "expected normalized", opt(&g.expected_normalized));
            let _ = writeln!(o, "{:<20} {}", "ratio to expected", opt(&g.ratio_to_expected));
        }
    }
    let warnings = match payload {
        Payload::Emd(e) => &e.warnings[..],
        Payload::Grades(g) => &g.warnings[..],
        _ => &[],
    };
    for w in warnings {
        let _ = writeln!(o, "warning: {w}");
    }
    out
}
