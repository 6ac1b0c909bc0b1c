//! The `braidrep` command line.
//!
//! Exit codes: 0 on success, 1 on usage or configuration errors, 2 when a
//! mathematical check fails (a braid relation, the golden fixture, or a
//! corank that disagrees with its closed form).

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{
    certify_irreducible, check_standard_equivalence, commutant_dimension, corank, separation_check,
    SeparationMode,
};
use crate::error::Error;
use crate::export::{representation_from_json, representation_to_json, CertificateJson};
use crate::golden::{self, GoldenReport};
use crate::monomial::MonomialMatrix;
use crate::orbit::ValueTuple;
use crate::rep::{
    classify_adjointness, evaluate_word, verify_braid_relations, BraidWord, QTable, Representation,
};
use crate::scalar::{GaussianRational, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "braidrep",
    about = "Exact braid-group representations on multiset-permutation orbits",
    long_about = "Builds representations of the braid group B_n on the span of the orbit of a seed \
tuple, where tau_k sends v_x to q(x_k, x_{k+1}) v_{sigma_k(x)}. All arithmetic is exact: entries \
are Laurent polynomials in t with Gaussian-rational coefficients.\n\n\
Basis vectors are indexed 0-based in ascending lexicographic order of their tuples; generators \
tau_k are indexed 1-based.\n\n\
Scalar syntax: canonical form `(3/2)*t^-1 + 1 + (0+1i)*t^2`, or any expression built from \
integers, `t`, `i`, `+ - * /`, parentheses and integer powers `^k`.\n\n\
Exit codes: 0 success, 1 usage/config error, 2 mathematical failure."
)]
pub struct Cli {
    /// Seed for the random evaluation points used in rank cross-checks.
    #[arg(long, global = true, env = "BRAIDREP_SEED", default_value_t = 0)]
    pub rng_seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build a representation, verify the braid relations and export it.
    Build(BuildArgs),
    /// Separation check, irreducibility certificate and corank.
    Analyze(AnalyzeArgs),
    /// Evaluate a braid word such as "1 -2 3^-2".
    ///
    /// The word `a b` is the matrix product phi(tau_a)·phi(tau_b) acting on
    /// column vectors, so the rightmost letter acts first. `^p` repeats a
    /// letter |p| times and inverts it when p < 0.
    Word(WordArgs),
    /// Dimension, corank and verdict for a range of (n, m) in CSV.
    Sweep(SweepArgs),
    /// Compare phi_3 on 5 strands with the embedded reference matrices.
    GoldenCheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RepSource {
    /// Strand count of the phi_m family member (with --m).
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of ones in the phi_m seed (with --n).
    #[arg(long)]
    pub m: Option<usize>,
    /// Explicit seed tuple, e.g. `1,0,0` (with --qtable).
    #[arg(long, allow_hyphen_values = false)]
    pub seed: Option<String>,
    /// JSON file mapping "a,b" to scalar strings (with --seed).
    #[arg(long)]
    pub qtable: Option<PathBuf>,
    /// Representation JSON previously written by `build --format json`.
    #[arg(long)]
    pub load: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct BuildArgs {
    #[command(flatten)]
    pub source: RepSource,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Skip braid-relation verification.
    #[arg(long)]
    pub no_verify: bool,
    /// Compare with the embedded reference matrices (n = 5, m = 3 only).
    #[arg(long)]
    pub golden_check: bool,
    /// Write the export to a file instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    #[command(flatten)]
    pub source: RepSource,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exact rational evaluation point for commutant checks, e.g. `5/2`.
    #[arg(long, default_value = "2")]
    pub t: String,
}

#[derive(Args, Debug)]
pub struct WordArgs {
    #[command(flatten)]
    pub source: RepSource,
    /// The braid word.
    #[arg(allow_hyphen_values = true)]
    pub word: String,
    /// Substitute t by this exact rational.
    #[arg(long)]
    pub t: Option<String>,
    /// Also print the dense matrix.
    #[arg(long)]
    pub dense: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 3)]
    pub n_min: usize,
    #[arg(long, default_value_t = 8)]
    pub n_max: usize,
    /// Restrict to these m values (comma separated); default is every 1 <= m < n.
    #[arg(long, value_delimiter = ',')]
    pub m: Option<Vec<usize>>,
    /// Add a wall-time column (makes output non-deterministic).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// A failure that maps to an exit code.
#[derive(Debug)]
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("I/O error: {e}"))
    }
}

type CliResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Build(a) => cmd_build(a, out, err),
        Command::Analyze(a) => cmd_analyze(a, cli.rng_seed, out),
        Command::Word(a) => cmd_word(a, out),
        Command::Sweep(a) => cmd_sweep(a, cli.rng_seed, out),
        Command::GoldenCheck => cmd_golden(out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Math(msg)) => {
            let _ = writeln!(err, "check failed: {msg}");
            EXIT_MATH
        }
    }
}

pub fn parse_point(text: &str) -> Result<GaussianRational, Error> {
    let p: GaussianRational = text
        .parse()
        .map_err(|_| Error::Invalid(format!("`{text}` is not an exact rational such as 5/2")))?;
    if p.is_zero() {
        return Err(Error::EvalAtZero);
    }
    Ok(p)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

impl RepSource {
    fn load(&self) -> Result<Representation, Failure> {
        let family = self.n.is_some() || self.m.is_some();
        let explicit = self.seed.is_some() || self.qtable.is_some();
        let loaded = self.load.is_some();
        if [family, explicit, loaded].iter().filter(|&&b| b).count() != 1 {
            return Err(Failure::Usage(
                "give exactly one of --n/--m, --seed/--qtable, or --load".into(),
            ));
        }
        if family {
            let (Some(n), Some(m)) = (self.n, self.m) else {
                return Err(Failure::Usage("--n and --m must be given together".into()));
            };
            return Ok(Representation::build_phi_m(n, m)?);
        }
        if explicit {
            let (Some(seed), Some(path)) = (&self.seed, &self.qtable) else {
                return Err(Failure::Usage(
                    "--seed and --qtable must be given together".into(),
                ));
            };
            let seed: ValueTuple = seed.parse()?;
            let q = QTable::from_json(&read(path)?)?;
            return Ok(Representation::build_generic(&seed, &q)?);
        }
        let path = self.load.as_ref().expect("checked above");
        Ok(representation_from_json(&read(path)?)?)
    }
}

fn describe(rep: &Representation) -> String {
    format!("n={} seed={} dim={}", rep.strands(), rep.seed(), rep.dim())
}

fn relation_summary(rep: &Representation) -> (bool, String) {
    let report = verify_braid_relations(rep);
    let total = report.checks.len();
    let passed = report.checks.iter().filter(|c| c.passed).count();
    let mut s = format!("relations: {passed}/{total} passed\n");
    for c in report.failures() {
        let _ = write!(s, "  FAIL {}", c.relation);
        if let Some(w) = &c.witness {
            let _ = write!(
                s,
                " at basis {} {}: lhs ({})*e{}, rhs ({})*e{}",
                w.basis_index, w.tuple, w.lhs_scalar, w.lhs_target, w.rhs_scalar, w.rhs_target
            );
        }
        s.push('\n');
    }
    (report.all_passed(), s)
}

fn golden_summary(report: &GoldenReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "golden basis order: {}",
        if report.basis_matches {
            "match"
        } else {
            "MISMATCH"
        }
    );
    for (i, ok) in report.per_k.iter().enumerate() {
        let _ = writeln!(
            s,
            "golden tau_{}: {}",
            i + 1,
            if *ok { "exact match" } else { "MISMATCH" }
        );
    }
    for m in &report.mismatches {
        let _ = writeln!(
            s,
            "  tau_{} [{}][{}]: expected {}, got {}",
            m.k, m.row, m.col, m.expected, m.actual
        );
    }
    s
}

fn text_export(rep: &Representation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", describe(rep));
    let _ = writeln!(s, "basis (0-based index, tuple):");
    for (i, x) in rep.orbit().basis().iter().enumerate() {
        let _ = writeln!(s, "  [{i}] {x}");
    }
    let _ = writeln!(s, "q-table:");
    for ((a, b), q) in rep.q_table().entries() {
        let _ = writeln!(s, "  q({a},{b}) = {q}");
    }
    for (i, g) in rep.generators().iter().enumerate() {
        let _ = writeln!(s, "tau_{} (k = {}, 1-based):", i + 1, i + 1);
        let _ = write!(s, "{}", g.to_dense());
    }
    s
}

fn csv_export(rep: &Representation) -> String {
    let mut s = String::new();
    for (i, g) in rep.generators().iter().enumerate() {
        let _ = writeln!(s, "# tau_{}", i + 1);
        s.push_str(&g.to_dense().to_csv());
    }
    s
}

fn cmd_build(a: &BuildArgs, out: &mut dyn Write, err: &mut dyn Write) -> CliResult {
    let rep = a.source.load()?;
    let body = match a.format {
        Format::Text => text_export(&rep),
        Format::Json => representation_to_json(&rep) + "\n",
        Format::Csv => csv_export(&rep),
    };
    match &a.output {
        Some(path) => std::fs::write(path, &body)?,
        None => out.write_all(body.as_bytes())?,
    }
    // Keep stdout a clean export in machine formats.
    let mut diag = String::new();
    let mut failure = None;
    if !a.no_verify {
        let (ok, summary) = relation_summary(&rep);
        diag.push_str(&summary);
        if !ok {
            failure = Some("braid relations do not hold".to_string());
        }
    }
    if a.golden_check {
        let fixture = golden::GoldenFixture::embedded();
        if (a.source.n, a.source.m) != (Some(fixture.n), Some(fixture.m)) {
            return Err(Failure::Usage(format!(
                "--golden-check needs --n {} --m {}",
                fixture.n, fixture.m
            )));
        }
        let report = golden::compare(&rep, &fixture);
        diag.push_str(&golden_summary(&report));
        if !report.passed() {
            failure = Some("golden matrices differ".to_string());
        }
    }
    if a.format == Format::Text && a.output.is_none() {
        out.write_all(diag.as_bytes())?;
    } else {
        err.write_all(diag.as_bytes())?;
    }
    match failure {
        Some(msg) => Err(Failure::Math(msg)),
        None => Ok(()),
    }
}

/// Fixed points plus three seeded random rationals outside `{0, 1, -1}`.
pub fn cross_check_points(rng_seed: u64) -> Vec<GaussianRational> {
    let mut pts = vec![
        GaussianRational::from_integer(2),
        GaussianRational::from_integer(3),
        GaussianRational::ratio(5, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    while pts.len() < 6 {
        let p = GaussianRational::ratio(rng.gen_range(-40..=40), rng.gen_range(1..=9));
        let excluded = p.is_zero() || p.is_one() || (-&p).is_one();
        if !excluded && !pts.contains(&p) {
            pts.push(p);
        }
    }
    pts
}

fn cmd_analyze(a: &AnalyzeArgs, rng_seed: u64, out: &mut dyn Write) -> CliResult {
    let rep = a.source.load()?;
    let at = parse_point(&a.t)?;
    let (relations_ok, relation_text) = relation_summary(&rep);
    let cert = certify_irreducible(&rep, &at)?;
    let points = cross_check_points(rng_seed);
    let cork = corank(&rep, &points)?;
    let closed_ok = cork.matches_closed_form().unwrap_or(true);

    match a.format {
        Format::Json | Format::Csv => {
            let doc = CertificateJson::new(&cert, &cork, rep.orbit().basis());
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{}", describe(&rep));
            s.push_str(&relation_text);
            for c in classify_adjointness(&rep) {
                let _ = writeln!(
                    s,
                    "tau_{}: {}{}",
                    c.k,
                    c.label(),
                    if c.consistent() {
                        ""
                    } else {
                        " (matrix check disagrees)"
                    }
                );
            }
            let all = separation_check(&rep, SeparationMode::AllPairs);
            let consecutive = separation_check(&rep, SeparationMode::ConsecutiveLex);
            for (name, sep) in [("all pairs", &all), ("lex-consecutive pairs", &consecutive)] {
                match &sep.witness_pair {
                    None => {
                        let _ = writeln!(s, "separation ({name}): holds");
                    }
                    Some((x, y)) => {
                        let _ = writeln!(s, "separation ({name}): fails on {x} / {y}");
                    }
                }
            }
            let _ = write!(
                s,
                "certificate: {} via {}",
                cert.verdict.as_str(),
                cert.method.as_str()
            );
            if let Some(p) = &cert.evaluation_point {
                let _ = write!(s, " at t = {p}");
            }
            s.push('\n');
            if !cert.refutations.is_empty() {
                let _ = writeln!(s, "  no single complement-pair span is invariant:");
            }
            for r in &cert.refutations {
                let _ = writeln!(
                    s,
                    "    span{{{}, {}}} moved by tau_{} to span{{{}, {}}}",
                    r.x, r.y, r.k, r.image_support.0, r.image_support.1
                );
            }
            if let Some(sym) = &cert.symmetry {
                let _ = writeln!(
                    s,
                    "  complement involution v_x -> v_(1-x) commutes with every generator; \
span{{v_x + v_(1-x)}} (dim {}) and span{{v_x - v_(1-x)}} (dim {}) are invariant",
                    sym.eigenspace_dims.0, sym.eigenspace_dims.1
                );
            }
            if let Some(line) = &cert.witness {
                let eig: Vec<String> = line.eigenvalues.iter().map(Scalar::to_string).collect();
                let _ = writeln!(
                    s,
                    "  invariant line: sum of all basis vectors, eigenvalues [{}]",
                    eig.join(", ")
                );
            }
            let cdim = match cert.commutant_dim {
                Some(d) => d,
                None => commutant_dimension(&rep, &at)?,
            };
            let _ = writeln!(s, "commutant dimension at t = {at}: {cdim}");
            let per_k: Vec<String> = cork.per_k.iter().map(usize::to_string).collect();
            let _ = writeln!(s, "corank per k: [{}]", per_k.join(", "));
            let pts: Vec<String> = points.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                s,
                "dense rank cross-check at t in {{{}}}: {}",
                pts.join(", "),
                if cork.dense_agrees() {
                    "agrees"
                } else {
                    "DISAGREES"
                }
            );
            match (cork.value(), cork.closed_form) {
                (Some(v), Some(cf)) => {
                    let _ = writeln!(
                        s,
                        "corank {v} {} closed form 2(n-2)!/((m-1)!(n-m-1)!) = {cf}",
                        if v as u128 == cf { "=" } else { "!=" }
                    );
                }
                (Some(v), None) => {
                    let _ = writeln!(s, "corank {v}");
                }
                (None, _) => {
                    let _ = writeln!(s, "corank depends on k");
                }
            }
            if rep.phi_m_parameter() == Some(1) {
                let eq = check_standard_equivalence(rep.strands())?;
                let _ = writeln!(
                    s,
                    "m = 1: dimension n = {} and corank {}; intertwiner beta_j -> v_(x_j) with the standard \
representation (q(a,b) = 1 + (t-1)*b table): {}",
                    rep.strands(),
                    cork.value().map_or("varies".into(), |v| v.to_string()),
                    if eq.passed() { "pass" } else { "FAIL" }
                );
            }
            out.write_all(s.as_bytes())?;
        }
    }
    if !relations_ok {
        return Err(Failure::Math("braid relations do not hold".into()));
    }
    if !closed_ok {
        return Err(Failure::Math(
            "measured corank differs from the closed form".into(),
        ));
    }
    Ok(())
}

#[derive(Serialize)]
struct WordJson {
    word: String,
    identity: bool,
    perm: Vec<usize>,
    scale: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluated_at: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dense: Option<Vec<Vec<String>>>,
}

fn cmd_word(a: &WordArgs, out: &mut dyn Write) -> CliResult {
    let word: BraidWord = a.word.parse()?;
    let rep = a.source.load()?;
    let m = evaluate_word(&rep, &word)?;
    let at = a.t.as_deref().map(parse_point).transpose()?;
    let scales: Vec<String> = match &at {
        Some(p) => m
            .scale()
            .iter()
            .map(|s| s.eval(p).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?,
        None => m.scale().iter().map(Scalar::to_string).collect(),
    };
    let dense = if a.dense {
        Some(dense_strings(&m, at.as_ref())?)
    } else {
        None
    };
    match a.format {
        Format::Json | Format::Csv => {
            let doc = WordJson {
                word: word.to_string(),
                identity: m.is_identity(),
                perm: m.perm().to_vec(),
                scale: scales,
                evaluated_at: at.as_ref().map(ToString::to_string),
                dense,
            };
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("serializable")
            )?;
        }
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "{} word=\"{}\"", describe(&rep), word);
            if let Some(p) = &at {
                let _ = writeln!(s, "evaluated at t = {p}");
            }
            let _ = writeln!(
                s,
                "identity: {}",
                if m.is_identity() { "yes" } else { "no" }
            );
            let orbit = rep.orbit();
            for (x, (&y, c)) in m.perm().iter().zip(&scales).enumerate() {
                let _ = writeln!(
                    s,
                    "  e{x} {} -> ({c}) * e{y} {}",
                    orbit.get(x),
                    orbit.get(y)
                );
            }
            if let Some(grid) = dense {
                let width = grid.iter().flatten().map(String::len).max().unwrap_or(1);
                for row in grid {
                    let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
                    let _ = writeln!(s, "[ {} ]", cells.join("  "));
                }
            }
            out.write_all(s.as_bytes())?;
        }
    }
    Ok(())
}

fn dense_strings(
    m: &MonomialMatrix,
    at: Option<&GaussianRational>,
) -> Result<Vec<Vec<String>>, Error> {
    let dense = m.to_dense();
    match at {
        None => Ok(dense.to_strings()),
        Some(p) => Ok(dense
            .eval(p)?
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect())
            .collect()),
    }
}

#[derive(Serialize, Clone, Debug, PartialEq, Eq)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub dim: usize,
    pub corank_measured: Option<usize>,
    pub corank_closed_form: u128,
    pub dense_agrees: bool,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u128>,
}

/// One sweep cell.
pub fn sweep_cell(n: usize, m: usize, points: &[GaussianRational]) -> Result<SweepRow, Error> {
    let start = Instant::now();
    let rep = Representation::build_phi_m(n, m)?;
    let cork = corank(&rep, points)?;
    let cert = certify_irreducible(&rep, &points[0])?;
    Ok(SweepRow {
        n,
        m,
        dim: rep.dim(),
        corank_measured: cork.value(),
        corank_closed_form: crate::analysis::corank_closed_form(n, m)?,
        dense_agrees: cork.dense_agrees(),
        verdict: cert.verdict.as_str().to_string(),
        wall_ms: Some(start.elapsed().as_millis()),
    })
}

fn cmd_sweep(a: &SweepArgs, rng_seed: u64, out: &mut dyn Write) -> CliResult {
    if a.n_min < 3 || a.n_max < a.n_min {
        return Err(Failure::Usage(format!(
            "need 3 <= n-min <= n-max, got {}..{}",
            a.n_min, a.n_max
        )));
    }
    let mut cells = Vec::new();
    for n in a.n_min..=a.n_max {
        match &a.m {
            Some(ms) => {
                for &m in ms {
                    if m < 1 || m >= n {
                        return Err(Failure::Usage(format!(
                            "m = {m} is out of range for n = {n}"
                        )));
                    }
                    cells.push((n, m));
                }
            }
            None => cells.extend((1..n).map(|m| (n, m))),
        }
    }
    let points = cross_check_points(rng_seed);
    // Rows come back in cell order regardless of which worker finishes first.
    let rows = cells
        .par_iter()
        .map(|&(n, m)| sweep_cell(n, m, &points))
        .collect::<Result<Vec<_>, _>>()?;
    let rows: Vec<SweepRow> = rows
        .into_iter()
        .map(|mut r| {
            if !a.timing {
                r.wall_ms = None;
            }
            r
        })
        .collect();
    match a.format {
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string_pretty(&rows).expect("serializable")
        )?,
        Format::Csv | Format::Text => {
            let mut s =
                String::from("n,m,dim,corank_measured,corank_closed_form,dense_agrees,verdict");
            if a.timing {
                s.push_str(",wall_ms");
            }
            s.push('\n');
            for r in &rows {
                let measured = r.corank_measured.map_or("varies".into(), |v| v.to_string());
                let _ = write!(
                    s,
                    "{},{},{},{},{},{},{}",
                    r.n, r.m, r.dim, measured, r.corank_closed_form, r.dense_agrees, r.verdict
                );
                if let Some(ms) = r.wall_ms {
                    let _ = write!(s, ",{ms}");
                }
                s.push('\n');
            }
            out.write_all(s.as_bytes())?;
        }
    }
    let bad: Vec<String> = rows
        .iter()
        .filter(|r| {
            r.corank_measured.map(|v| v as u128) != Some(r.corank_closed_form) || !r.dense_agrees
        })
        .map(|r| format!("({}, {})", r.n, r.m))
        .collect();
    if !bad.is_empty() {
        return Err(Failure::Math(format!(
            "corank mismatch at {}",
            bad.join(", ")
        )));
    }
    Ok(())
}

fn cmd_golden(out: &mut dyn Write) -> CliResult {
    let report = golden::golden_check()?;
    out.write_all(golden_summary(&report).as_bytes())?;
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Math("golden matrices differ".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["braidrep"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn points_are_deterministic_and_admissible() {
        assert_eq!(cross_check_points(7), cross_check_points(7));
        for p in cross_check_points(11) {
            assert!(!p.is_zero() && !p.is_one() && !(-&p).is_one());
        }
    }

    #[test]
    fn float_t_is_rejected() {
        assert!(parse_point("2.5").is_err());
        assert_eq!(parse_point("5/2").unwrap(), GaussianRational::ratio(5, 2));
        assert_eq!(parse_point("0"), Err(Error::EvalAtZero));
    }

    #[test]
    fn conflicting_sources() {
        let (code, _, err) = run_capture(&["build", "--n", "5", "--m", "3", "--seed", "1,0"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("exactly one"));
        let (code, _, _) = run_capture(&["build", "--n", "5"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn golden_needs_five_three() {
        let (code, _, _) = run_capture(&["build", "--n", "4", "--m", "2", "--golden-check"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn bad_word_reports_position() {
        let (code, _, err) = run_capture(&["word", "--n", "4", "--m", "2", "1 x"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("byte 2"), "{err}");
    }
}
