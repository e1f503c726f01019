//! Command-line front end shared by the binary and the integration tests.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::nambu::{JacobiForm, ScanResult};
use crate::dynamics::{
    max_drift, random_shell_field, Integrator, IntegratorConfig, RhsMethod, Scheme, SimState,
};
use crate::error::Error;
use crate::field::{from_physical, ModeField};
use crate::grid::{TruncationGrid, WaveVector};
use crate::io;
use crate::verification::convergence::{
    default_pairs, default_sizes, run_convergence_study_seeded,
};
use crate::verification::suite::MAX_SUITE_N;
use crate::verification::{
    all_passed, format_reports, run_counterexample, run_identity_suite, run_jacobi_scan,
    CheckReport,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RUNTIME: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "nambu-vorticity",
    version,
    about = "Sine-bracket vorticity dynamics and its Nambu bracket"
)]
pub struct Cli {
    /// Worker threads for parallel sums.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate the truncated system from a JSON config.
    Run(RunArgs),
    /// Run identity checks and the counterexample.
    Verify(VerifyArgs),
    /// Convergence of the structure constants towards the continuum.
    Converge(ConvergeArgs),
    /// Exhaustive generalized Jacobi scan.
    JacobiScan(ScanArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides for the matching config fields.
    #[arg(long)]
    pub n: Option<i64>,
    #[arg(long)]
    pub dt: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output directory; replaces `output_dir`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteName {
    Identity,
    Counterexample,
    Convergence,
    JacobiScan,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 5)]
    pub n: i64,
    /// Every suite; the default when nothing is selected.
    #[arg(long)]
    pub all: bool,
    /// Same as `--suite counterexample`.
    #[arg(long)]
    pub counterexample: bool,
    #[arg(long, value_enum)]
    pub suite: Vec<SuiteName>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "nambu-out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    /// CSV with columns i1,i2,j1,j2; built-in pairs when omitted.
    #[arg(long)]
    pub pairs: Option<PathBuf>,
    /// Comma-separated odd grid sizes [default: 11,21,41,81].
    #[arg(long, value_delimiter = ',')]
    pub sizes: Option<Vec<i64>>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value = "nambu-out")]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Symmetrized,
    Literal,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 5)]
    pub n: i64,
    #[arg(long, value_enum, default_value_t = FormArg::Symmetrized)]
    pub form: FormArg,
    /// Write every violating tuple instead of one per symmetry class.
    #[arg(long)]
    pub all_tuples: bool,
    #[arg(long, default_value = "nambu-out")]
    pub out: PathBuf,
}

/// Initial condition of a run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialCondition {
    Zero,
    /// `amplitude / k^2` with a seeded phase on `shell_min <= k^2 <= shell_max`.
    RandomShell {
        shell_min: i64,
        shell_max: i64,
        #[serde(default = "unit")]
        amplitude: f64,
    },
    /// Each listed mode is set together with its conjugate partner.
    Modes {
        modes: Vec<ModeSpec>,
    },
    /// Real samples on the `n x n` grid, one CSV row per `x1`.
    PhysicalCsv {
        path: PathBuf,
    },
}

fn unit() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSpec {
    pub i1: i64,
    pub i2: i64,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

fn default_record_every() -> usize {
    10
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n: i64,
    #[serde(default)]
    pub scheme: Scheme,
    #[serde(default)]
    pub rhs: RhsMethod,
    pub dt: f64,
    pub steps: usize,
    #[serde(default = "default_record_every")]
    pub record_every: usize,
    #[serde(default)]
    pub seed: u64,
    pub initial: InitialCondition,
    #[serde(default = "default_out")]
    pub output_dir: PathBuf,
}

fn default_out() -> PathBuf {
    PathBuf::from("nambu-out")
}

impl RunConfig {
    pub fn validate(&self) -> Result<TruncationGrid, Error> {
        let grid = TruncationGrid::new(self.n)?;
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::Config(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.record_every == 0 {
            return Err(Error::Config("record_every must be positive".into()));
        }
        if !(self.dt * self.steps as f64).is_finite() {
            return Err(Error::Config("dt * steps is not finite".into()));
        }
        if let InitialCondition::RandomShell {
            shell_min,
            shell_max,
            amplitude,
        } = &self.initial
        {
            if shell_min > shell_max || !amplitude.is_finite() {
                return Err(Error::Config("empty shell or non-finite amplitude".into()));
            }
        }
        Ok(grid)
    }

    pub fn integrator(&self) -> IntegratorConfig {
        IntegratorConfig {
            scheme: self.scheme,
            dt: self.dt,
            steps: self.steps,
            record_every: self.record_every,
            rhs: self.rhs,
        }
    }

    pub fn initial_field(&self, grid: TruncationGrid) -> Result<ModeField, Error> {
        match &self.initial {
            InitialCondition::Zero => Ok(ModeField::zeros(grid)),
            InitialCondition::RandomShell {
                shell_min,
                shell_max,
                amplitude,
            } => Ok(random_shell_field(
                grid, *shell_min, *shell_max, *amplitude, self.seed,
            )),
            InitialCondition::Modes { modes } => {
                let mut f = ModeField::zeros(grid);
                for m in modes {
                    f.set_pair(WaveVector::new(m.i1, m.i2), Complex64::new(m.re, m.im))?;
                }
                Ok(f)
            }
            InitialCondition::PhysicalCsv { path } => {
                let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
                from_physical(&io::read_physical_field(file)?, grid)
            }
        }
    }
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: e.to_string(),
        }
    }

    fn runtime(e: impl std::fmt::Display) -> Self {
        Failure {
            code: EXIT_RUNTIME,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

pub fn execute(cli: &Cli) -> Result<i32, Failure> {
    if cli.workers == 0 {
        return Err(Failure::usage("--workers must be at least 1"));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.workers)
        .build()
        .map_err(Failure::runtime)?;
    pool.install(|| match &cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Converge(a) => cmd_converge(a),
        Command::JacobiScan(a) => cmd_jacobi_scan(a),
    })
}

fn prepare_dir(dir: &Path) -> Result<(), Failure> {
    std::fs::create_dir_all(dir).map_err(|e| Failure::runtime(Error::io(dir, e)))
}

#[derive(Serialize)]
struct RunSummary {
    n: i64,
    steps: usize,
    final_time: f64,
    final_drift_energy: f64,
    final_drift_enstrophy: f64,
    max_drift_energy: f64,
    max_drift_enstrophy: f64,
    wall_seconds: f64,
}

pub fn load_run_config(args: &RunArgs) -> Result<RunConfig, Failure> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| Failure::usage(Error::io(&args.config, e)))?;
    let mut config: RunConfig = serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{}: {e}", args.config.display())))?;
    if let Some(n) = args.n {
        config.n = n;
    }
    if let Some(dt) = args.dt {
        config.dt = dt;
    }
    if let Some(steps) = args.steps {
        config.steps = steps;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    Ok(config)
}

pub fn cmd_run(args: &RunArgs) -> Result<i32, Failure> {
    let start = Instant::now();
    let config = load_run_config(args)?;
    let grid = config.validate().map_err(Failure::usage)?;
    let initial = config.initial_field(grid).map_err(|e| match e {
        Error::Io { .. } => Failure::runtime(e),
        other => Failure::usage(other),
    })?;
    let integrator = Integrator::new(grid, config.integrator()).map_err(Failure::usage)?;
    let state = SimState::new(initial);
    let (end, records) = integrator.integrate(&state).map_err(Failure::runtime)?;

    let dir = &config.output_dir;
    prepare_dir(dir)?;
    let hash = io::config_hash(&config).map_err(Failure::runtime)?;
    let seed = Some(config.seed);
    let write =
        |name: &str, f: &dyn Fn(&mut std::io::BufWriter<std::fs::File>) -> crate::Result<()>| {
            io::write_with_metadata(&dir.join(name), &hash, seed, |w| f(w))
                .map_err(Failure::runtime)
        };
    write("diagnostics.csv", &|w| io::write_diagnostics(w, &records))?;
    write("initial_state.csv", &|w| {
        io::write_mode_field(w, &state.field)
    })?;
    write("final_state.csv", &|w| io::write_mode_field(w, &end.field))?;
    let last = records.last().expect("initial record exists");
    let (mh, me) = max_drift(&records);
    let summary = RunSummary {
        n: config.n,
        steps: config.steps,
        final_time: end.time,
        final_drift_energy: last.drift_energy,
        final_drift_enstrophy: last.drift_enstrophy,
        max_drift_energy: mh,
        max_drift_enstrophy: me,
        wall_seconds: start.elapsed().as_secs_f64(),
    };
    write("summary.json", &|w| {
        serde_json::to_writer_pretty(&mut *w, &summary)?;
        std::io::Write::write_all(w, b"\n").map_err(|e| Error::io("summary.json", e))
    })?;
    println!(
        "n={} steps={} t={:.6} drift_H={:.3e} drift_E={:.3e}",
        config.n, config.steps, end.time, mh, me
    );
    Ok(EXIT_OK)
}

fn check_verify_n(n: i64) -> Result<TruncationGrid, Failure> {
    let grid = TruncationGrid::new(n).map_err(Failure::usage)?;
    if n > MAX_SUITE_N {
        return Err(Failure::usage(format!(
            "brute-force checks need n <= {MAX_SUITE_N}, got {n}"
        )));
    }
    Ok(grid)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<i32, Failure> {
    let grid = check_verify_n(args.n)?;
    let mut selected = args.suite.clone();
    if args.counterexample {
        selected.push(SuiteName::Counterexample);
    }
    if args.all || selected.is_empty() {
        selected = vec![
            SuiteName::Identity,
            SuiteName::Counterexample,
            SuiteName::Convergence,
            SuiteName::JacobiScan,
        ];
    }
    selected.dedup();
    let mut reports: Vec<CheckReport> = Vec::new();
    let mut notes = Vec::new();
    for s in selected {
        match s {
            SuiteName::Identity => reports.extend(run_identity_suite(grid, args.seed)),
            SuiteName::Counterexample | SuiteName::JacobiScan if args.n < 5 => {
                notes.push(format!(
                    "{s:?} skipped: the counterexample tuple needs n >= 5"
                ));
            }
            SuiteName::Counterexample => {
                reports.push(run_counterexample(args.n).map_err(Failure::runtime)?.report)
            }
            SuiteName::Convergence => reports.push(
                run_convergence_study_seeded(&default_pairs(), &default_sizes(), args.seed)
                    .map_err(Failure::runtime)?
                    .report,
            ),
            SuiteName::JacobiScan => reports.push(
                run_jacobi_scan(args.n, JacobiForm::Symmetrized)
                    .map_err(Failure::runtime)?
                    .0,
            ),
        }
    }
    print!("{}", format_reports(&reports));
    for note in &notes {
        println!("{note}");
    }
    prepare_dir(&args.out)?;
    let path = args.out.join("verify_report.json");
    let hash = io::config_hash(&(args.n, args.seed, format!("{:?}", args.suite)))
        .map_err(Failure::runtime)?;
    io::write_with_metadata(&path, &hash, Some(args.seed), |w| {
        serde_json::to_writer_pretty(&mut *w, &reports)?;
        Ok(())
    })
    .map_err(Failure::runtime)?;
    Ok(if all_passed(&reports) {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

#[derive(Deserialize)]
struct PairRow {
    i1: i64,
    i2: i64,
    j1: i64,
    j2: i64,
}

pub fn read_pairs(path: &Path) -> Result<Vec<(WaveVector, WaveVector)>, Failure> {
    let file = std::fs::File::open(path).map_err(|e| Failure::usage(Error::io(path, e)))?;
    let mut pairs = Vec::new();
    for row in csv::Reader::from_reader(file).deserialize() {
        let r: PairRow = row.map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
        pairs.push((WaveVector::new(r.i1, r.i2), WaveVector::new(r.j1, r.j2)));
    }
    if pairs.is_empty() {
        return Err(Failure::usage(format!("{}: no pairs", path.display())));
    }
    Ok(pairs)
}

#[derive(Serialize)]
struct ExponentRow {
    i1: i64,
    i2: i64,
    j1: i64,
    j2: i64,
    cross: i64,
    exponent: Option<f64>,
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<i32, Failure> {
    let pairs = match &args.pairs {
        Some(p) => read_pairs(p)?,
        None => default_pairs(),
    };
    let sizes = args.sizes.clone().unwrap_or_else(default_sizes);
    let study = run_convergence_study_seeded(&pairs, &sizes, args.seed).map_err(|e| match e {
        Error::Io { .. } => Failure::runtime(e),
        other => Failure::usage(other),
    })?;
    print!("{}", format_reports(std::slice::from_ref(&study.report)));
    prepare_dir(&args.out)?;
    let hash = io::config_hash(&(
        &sizes,
        pairs.iter().map(|(a, b)| (*a, *b)).collect::<Vec<_>>(),
        args.seed,
    ))
    .map_err(Failure::runtime)?;
    let seed = Some(args.seed);
    let table = |name: &str,
                 rows: &dyn Fn(
        &mut csv::Writer<&mut std::io::BufWriter<std::fs::File>>,
    ) -> csv::Result<()>| {
        io::write_with_metadata(&args.out.join(name), &hash, seed, |w| {
            let mut c = csv::Writer::from_writer(w);
            rows(&mut c)?;
            c.flush().map_err(|e| Error::io(name, e))?;
            Ok(())
        })
        .map_err(Failure::runtime)
    };
    table("convergence.csv", &|c| {
        study.rows.iter().try_for_each(|r| c.serialize(r))
    })?;
    table("exponents.csv", &|c| {
        study.fits.iter().try_for_each(|f| {
            c.serialize(ExponentRow {
                i1: f.i.i1,
                i2: f.i.i2,
                j1: f.j.i1,
                j2: f.j.i2,
                cross: f.cross,
                exponent: f.exponent,
            })
        })
    })?;
    table("functional.csv", &|c| {
        study.functional.iter().try_for_each(|r| c.serialize(r))
    })?;
    io::write_with_metadata(&args.out.join("converge_report.json"), &hash, seed, |w| {
        serde_json::to_writer_pretty(&mut *w, &study.report)?;
        Ok(())
    })
    .map_err(Failure::runtime)?;
    Ok(if study.report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}

pub fn cmd_jacobi_scan(args: &ScanArgs) -> Result<i32, Failure> {
    TruncationGrid::new(args.n).map_err(Failure::usage)?;
    if args.n < 5 {
        return Err(Failure::usage(format!(
            "the scan needs n >= 5, got {}",
            args.n
        )));
    }
    let form = match args.form {
        FormArg::Symmetrized => JacobiForm::Symmetrized,
        FormArg::Literal => JacobiForm::Literal,
    };
    let (report, scan) = run_jacobi_scan(args.n, form).map_err(Failure::runtime)?;
    print!("{}", format_reports(std::slice::from_ref(&report)));
    println!("violations: {}", scan.violations.len());
    prepare_dir(&args.out)?;
    let written = if args.all_tuples {
        scan.clone()
    } else {
        ScanResult {
            violations: scan.deduplicated(),
            ..scan.clone()
        }
    };
    let hash = io::config_hash(&(args.n, format!("{form:?}"), args.all_tuples))
        .map_err(Failure::runtime)?;
    io::write_with_metadata(&args.out.join("violations.csv"), &hash, None, |w| {
        io::write_violations(w, &written)
    })
    .map_err(Failure::runtime)?;
    io::write_with_metadata(&args.out.join("scan_report.json"), &hash, None, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        Ok(())
    })
    .map_err(Failure::runtime)?;
    Ok(if report.passed {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    })
}
