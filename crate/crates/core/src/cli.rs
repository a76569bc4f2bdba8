//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 for invalid arguments or configuration, 3
//! when a computation fails, 1 for I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64 as C64;
use twofloat::TwoFloat;

use crate::bruno::{
    boundary_gaps, bruno_grid, build_table, cutoff_study, jump_at, Cutoff, CutoffConfig,
};
use crate::dynamics::{h_grid, log_u_unwrapped, unit_grid, HSample, IterationBudget};
use crate::error::Error;
use crate::farey::farey_iter;
use crate::monoid::{matrix_s, matrix_t};
use crate::nicf::{bruno_real, convergents, nicf_expand_rational, nicf_expand_real};
use crate::rational::Rational;
use crate::spectral::{clp_estimate, dlp_estimate, fourier_coeffs_h, log_space, pooled_interval};

/// Fractions of the boundary jump table.
pub const JUMP_FRACTIONS: [(i64, i64); 6] = [(0, 1), (1, 2), (1, 3), (1, 4), (1, 5), (2, 5)];
/// Offset used to measure jumps.
pub const JUMP_DELTA: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(name = "bruno", version, about = "Continued fractions, the 1/2-complex Bruno function and Hoelder estimates")]
#[command(args_override_self = true)]
pub struct Cli {
    /// Worker threads (default: available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// File of key=value lines supplying defaults for the flags.
    #[arg(long, global = true, value_name = "FILE")]
    seed_config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Nearest-integer continued fraction of p/q or of a decimal.
    Cf(CfArgs),
    /// Farey series as "p,q" lines.
    Farey(FareyArgs),
    /// g_T and g_S of every fraction up to a denominator, as "a,b,c,d,type".
    Monoid(MonoidArgs),
    /// B(x + it) on a uniform grid, as "x,t,re_b,im_b".
    Bruno(BrunoArgs),
    /// log U(e^{2πi(x+it)}) on [0, 1), as "x,t,re_logu,im_logu".
    Yoccoz(YoccozArgs),
    /// H = log U - i B on [0, 1), as "x,t,re_h,im_h".
    Hgrid(HArgs),
    /// Fourier coefficients of H, as "l,h_l".
    Fourier(HArgs),
    /// Hoelder exponent of H by the continuous and discrete Littlewood-Paley methods.
    Holder(HolderArgs),
    /// Cut-off study, boundary jumps and boundary convergence of B.
    Appendix(AppendixArgs),
}

#[derive(Debug, Args)]
struct OutArg {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CfArgs {
    /// `p/q`, an integer, or a decimal number.
    value: String,
    /// Pairs computed for a decimal input.
    #[arg(long, default_value_t = 40)]
    max_terms: usize,
}

#[derive(Debug, Args)]
struct FareyArgs {
    /// Order of the series.
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, Args)]
struct MonoidArgs {
    /// Largest denominator.
    #[arg(long)]
    n: u32,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, Args, Clone, Copy)]
struct CutoffArgs {
    #[arg(long, default_value_t = 151)]
    nmax: u32,
    #[arg(long, default_value_t = 80)]
    k1: u32,
    #[arg(long, default_value_t = 20)]
    k2: u32,
    #[arg(long, default_value_t = 20)]
    q_switch: u32,
    /// Orders of the closed-form tail beyond the cut-offs (0 disables it).
    #[arg(long, default_value_t = 8)]
    tail_order: u32,
}

impl CutoffArgs {
    fn config(&self) -> Result<CutoffConfig, CliError> {
        let cfg = CutoffConfig::new(self.nmax, self.k1, self.k2, self.q_switch.min(self.nmax))
            .with_tail_order(self.tail_order);
        cfg.validate().map_err(invalid)?;
        Ok(cfg)
    }
}

#[derive(Debug, Args, Clone, Copy)]
struct BudgetArgs {
    #[arg(long, default_value_t = 1e-3)]
    eps_u: f64,
    #[arg(long, default_value_t = 1e-4)]
    rho: f64,
    #[arg(long, default_value_t = 10_000_000)]
    n_cap: u64,
}

impl BudgetArgs {
    fn budget(&self) -> Result<IterationBudget, CliError> {
        let b = IterationBudget::new(self.eps_u, self.rho, self.n_cap);
        b.validate().map_err(invalid)?;
        Ok(b)
    }
}

#[derive(Debug, Args)]
struct BrunoArgs {
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    #[arg(long, default_value_t = 0.0)]
    x_lo: f64,
    #[arg(long, default_value_t = 0.5)]
    x_hi: f64,
    #[command(flatten)]
    cutoffs: CutoffArgs,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, Args)]
struct YoccozArgs {
    #[arg(long)]
    t: f64,
    #[arg(long, default_value_t = 10_000)]
    points: usize,
    #[command(flatten)]
    budget: BudgetArgs,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, Args)]
struct HArgs {
    /// Sampling height.
    #[arg(long, default_value_t = 1e-5)]
    t: f64,
    #[arg(long, default_value_t = 8192)]
    points: usize,
    #[command(flatten)]
    cutoffs: CutoffArgs,
    #[command(flatten)]
    budget: BudgetArgs,
    /// Directory holding cached H grids.
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Fail instead of computing when no matching cached grid exists.
    #[arg(long)]
    no_compute: bool,
    #[command(flatten)]
    out: OutArg,
}

#[derive(Debug, Args)]
struct HolderArgs {
    #[command(flatten)]
    h: HArgs,
    /// Derivative orders of the continuous estimator.
    #[arg(long, value_delimiter = ',', default_value = "2,3,4")]
    r: Vec<u32>,
    /// Base of the dyadic blocks.
    #[arg(long, default_value_t = 1.25)]
    a_base: f64,
    #[arg(long, default_value_t = 1e-3)]
    t_min: f64,
    #[arg(long, default_value_t = 1e-1)]
    t_max: f64,
    #[arg(long, default_value_t = 100)]
    t_count: usize,
    /// Directory for the "log_t,log_supnorm" and "M,logA_supnorm" tables.
    #[arg(long)]
    data_dir: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AppendixArgs {
    /// Which part to run: cutoff, jumps, convergence or all.
    #[arg(long, default_value = "all")]
    part: String,
    /// Height of the jump table.
    #[arg(long, default_value_t = 1e-7)]
    t: f64,
    /// Points of the cut-off study grid on [0, 1/2].
    #[arg(long, default_value_t = 500)]
    points: usize,
    #[command(flatten)]
    out: OutArg,
}

/// Failure of a command, mapped to an exit code.
#[derive(Debug)]
pub enum CliError {
    Invalid(String),
    Numeric(Error),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Numeric(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Invalid(m) => write!(f, "invalid argument: {m}"),
            CliError::Numeric(e) => write!(f, "computation failed: {e}"),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Numeric(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn invalid<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Invalid(e.to_string())
}

fn require(ok: bool, msg: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Invalid(msg.to_string()))
    }
}

/// Float with 17 significant digits, enough to round-trip exactly.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn emit(out: &OutArg, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Reads `key=value` lines into `--key value` arguments. Blank lines and
/// lines starting with `#` are skipped.
pub fn seed_args(text: &str) -> Result<Vec<OsString>, String> {
    let mut args = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let (k, v) = line.split_once('=').ok_or_else(|| format!("malformed line {line:?}"))?;
        let k = k.trim().replace('_', "-");
        let v = v.trim();
        match v {
            "true" => args.push(format!("--{k}").into()),
            "false" => {}
            _ => {
                args.push(format!("--{k}").into());
                args.push(v.into());
            }
        }
    }
    Ok(args)
}

/// Splices the seed file's flags right after the subcommand so that flags
/// given on the command line take precedence.
fn with_seed(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let pos = argv.iter().position(|a| a == "--seed-config");
    let inline = argv.iter().find_map(|a| a.to_str().and_then(|s| s.strip_prefix("--seed-config=")).map(PathBuf::from));
    let path = match (pos, inline) {
        (Some(i), _) => match argv.get(i + 1) {
            Some(p) => PathBuf::from(p),
            None => return Ok(argv),
        },
        (None, Some(p)) => p,
        (None, None) => return Ok(argv),
    };
    let text = fs::read_to_string(&path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))?;
    let seeds = seed_args(&text).map_err(CliError::Invalid)?;
    let names = ["cf", "farey", "monoid", "bruno", "yoccoz", "hgrid", "fourier", "holder", "appendix"];
    let Some(sub) = argv.iter().position(|a| names.iter().any(|n| a == n)) else {
        return Ok(argv);
    };
    let mut out = argv[..=sub].to_vec();
    out.extend(seeds);
    out.extend_from_slice(&argv[sub + 1..]);
    Ok(out)
}

/// Parses `argv` and runs the command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let argv = match with_seed(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    if let Some(n) = cli.threads {
        require(n >= 1, "--threads must be at least 1")?;
        // a pool may already exist when called repeatedly in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match cli.command {
        Command::Cf(a) => cmd_cf(&a),
        Command::Farey(a) => cmd_farey(&a),
        Command::Monoid(a) => cmd_monoid(&a),
        Command::Bruno(a) => cmd_bruno(&a),
        Command::Yoccoz(a) => cmd_yoccoz(&a),
        Command::Hgrid(a) => cmd_hgrid(&a),
        Command::Fourier(a) => cmd_fourier(&a),
        Command::Holder(a) => cmd_holder(&a),
        Command::Appendix(a) => cmd_appendix(&a),
    }
}

fn parse_fraction(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (i64, i64) = (p.trim().parse().ok()?, q.trim().parse().ok()?);
            (q != 0).then(|| Rational::new(p, q))
        }
        None => s.trim().parse::<i64>().ok().map(Rational::integer),
    }
}

fn cmd_cf(a: &CfArgs) -> Result<(), CliError> {
    let mut s = String::new();
    if let Some(r) = parse_fraction(&a.value) {
        let e = nicf_expand_rational(r);
        let c = convergents(&e);
        writeln!(s, "value={r}\nexpansion={e}\nn,a,eps,p,q").unwrap();
        for (n, pair) in e.pairs().iter().enumerate() {
            let (p, q) = c.get(n as isize);
            writeln!(s, "{n},{},{},{p},{q}", pair.a, pair.eps).unwrap();
        }
    } else {
        let x: f64 = a.value.trim().parse().map_err(|_| invalid(format!("cannot parse {:?}", a.value)))?;
        require(x.is_finite(), "value must be finite")?;
        require(a.max_terms >= 1, "--max-terms must be positive")?;
        let e = nicf_expand_real(TwoFloat::from(x), a.max_terms, 0.0);
        writeln!(s, "value={}\nexpansion={}", fmt_f64(x), e.expansion).unwrap();
        match bruno_real(TwoFloat::from(x), 1e-16, 200) {
            Ok(b) => writeln!(s, "bruno_half={}", fmt_f64(b)).unwrap(),
            Err(_) => writeln!(s, "bruno_half=inf").unwrap(),
        }
    }
    emit(&OutArg { out: None }, &s)
}

fn cmd_farey(a: &FareyArgs) -> Result<(), CliError> {
    require(a.n >= 1, "--n must be at least 1")?;
    let mut s = String::from("p,q\n");
    for r in farey_iter(a.n) {
        writeln!(s, "{},{}", r.numer(), r.denom()).unwrap();
    }
    emit(&a.out, &s)
}

fn cmd_monoid(a: &MonoidArgs) -> Result<(), CliError> {
    require(a.n >= 2, "--n must be at least 2")?;
    let mut s = String::from("a,b,c,d,type\n");
    for r in farey_iter(a.n).filter(|r| r.numer() > 0 && r.numer() < r.denom()) {
        let t = matrix_t(r)?;
        writeln!(s, "{},{},{},{},T", t.a, t.b, t.c, t.d).unwrap();
        let (g, in_ms) = matrix_s(r)?;
        if in_ms {
            writeln!(s, "{},{},{},{},S", g.a, g.b, g.c, g.d).unwrap();
        }
    }
    emit(&a.out, &s)
}

fn cmd_bruno(a: &BrunoArgs) -> Result<(), CliError> {
    require(a.t > 0.0 && a.t.is_finite(), "--t must be positive")?;
    require(a.points >= 2, "--points must be at least 2")?;
    require(a.x_lo.is_finite() && a.x_hi.is_finite() && a.x_lo < a.x_hi, "need x_lo < x_hi")?;
    let cfg = a.cutoffs.config()?;
    let table = build_table(&cfg);
    let rows = bruno_grid(a.t, a.x_lo, a.x_hi, a.points, &table, &cfg)?;
    let mut s = String::from("x,t,re_b,im_b\n");
    for r in rows {
        writeln!(s, "{},{},{},{}", fmt_f64(r.x), fmt_f64(r.t), fmt_f64(r.value.re), fmt_f64(r.value.im)).unwrap();
    }
    emit(&a.out, &s)
}

fn cmd_yoccoz(a: &YoccozArgs) -> Result<(), CliError> {
    require(a.t > 0.0 && a.t.is_finite(), "--t must be positive")?;
    require(a.points >= 16, "--points must be at least 16")?;
    let budget = a.budget.budget()?;
    let logs = log_u_unwrapped(a.t, a.points, &budget)?;
    let mut s = String::from("x,t,re_logu,im_logu\n");
    for (x, l) in unit_grid(a.points).into_iter().zip(logs) {
        writeln!(s, "{},{},{},{}", fmt_f64(x), fmt_f64(a.t), fmt_f64(l.re), fmt_f64(l.im)).unwrap();
    }
    emit(&a.out, &s)
}

/// Configuration fingerprint written in the first line of a cached grid.
fn fingerprint(t: f64, points: usize, cfg: &CutoffConfig, b: &IterationBudget) -> String {
    format!(
        "t={},points={points},nmax={},k1={},k2={},q_switch={},tail_order={},eps_u={},rho={},n_cap={}",
        fmt_f64(t),
        cfg.n_max,
        cfg.k1,
        cfg.k2,
        cfg.q_switch,
        cfg.tail_order,
        fmt_f64(b.eps_u),
        fmt_f64(b.rho),
        b.n_cap
    )
}

fn cache_path(dir: &Path, t: f64, points: usize, cfg: &CutoffConfig, b: &IterationBudget) -> PathBuf {
    dir.join(format!(
        "hgrid_t{t:e}_p{points}_n{}_k{}-{}_q{}_o{}_e{:e}_r{:e}.csv",
        cfg.n_max, cfg.k1, cfg.k2, cfg.q_switch, cfg.tail_order, b.eps_u, b.rho
    ))
}

/// `x,t,re_h,im_h` table of an H grid.
pub fn h_csv(samples: &[HSample]) -> String {
    let mut s = String::from("x,t,re_h,im_h\n");
    for h in samples {
        writeln!(s, "{},{},{},{}", fmt_f64(h.x), fmt_f64(h.t), fmt_f64(h.value.re), fmt_f64(h.value.im)).unwrap();
    }
    s
}

/// Parses the body written by [`h_csv`].
pub fn parse_h_csv(text: &str) -> Option<Vec<HSample>> {
    let mut lines = text.lines();
    if lines.next()? != "x,t,re_h,im_h" {
        return None;
    }
    lines
        .map(|l| {
            let v: Vec<f64> = l.split(',').map(|f| f.parse().ok()).collect::<Option<_>>()?;
            (v.len() == 4).then(|| HSample { x: v[0], t: v[1], value: C64::new(v[2], v[3]) })
        })
        .collect()
}

/// Loads a cached grid whose fingerprint matches, if any.
fn load_cached(path: &Path, fp: &str, points: usize) -> Option<Vec<HSample>> {
    let text = fs::read_to_string(path).ok()?;
    let (head, body) = text.split_once('\n')?;
    if head.strip_prefix("# ")? != fp {
        return None;
    }
    parse_h_csv(body).filter(|g| g.len() == points)
}

fn obtain_h(a: &HArgs) -> Result<Vec<HSample>, CliError> {
    require(a.t > 0.0 && a.t.is_finite(), "--t must be positive")?;
    require(a.points >= 16, "--points must be at least 16")?;
    let cfg = a.cutoffs.config()?;
    let budget = a.budget.budget()?;
    let fp = fingerprint(a.t, a.points, &cfg, &budget);
    let path = a.cache.as_ref().map(|d| cache_path(d, a.t, a.points, &cfg, &budget));
    if let Some(g) = path.as_ref().and_then(|p| load_cached(p, &fp, a.points)) {
        return Ok(g);
    }
    if a.no_compute {
        return Err(CliError::Invalid("no cached H grid matches the configuration".into()));
    }
    let table = build_table(&cfg);
    let grid = h_grid(a.t, a.points, &budget, &table, &cfg)?;
    if let Some(p) = path {
        if let Some(d) = p.parent() {
            fs::create_dir_all(d)?;
        }
        fs::write(&p, format!("# {fp}\n{}", h_csv(&grid)))?;
    }
    Ok(grid)
}

fn check_fft_size(points: usize) -> Result<(), CliError> {
    require(points >= 1024 && points.is_power_of_two(), "--points must be a power of two >= 1024")
}

fn cmd_hgrid(a: &HArgs) -> Result<(), CliError> {
    let g = obtain_h(a)?;
    emit(&a.out, &h_csv(&g))
}

fn cmd_fourier(a: &HArgs) -> Result<(), CliError> {
    check_fft_size(a.points)?;
    let s = fourier_coeffs_h(&obtain_h(a)?)?;
    let mut out = String::from("l,h_l\n");
    for (l, c) in s.coeffs.iter().enumerate() {
        writeln!(out, "{l},{}", fmt_f64(*c)).unwrap();
    }
    eprintln!("residual_imag={} residual_negative={}", fmt_f64(s.residual_imag), fmt_f64(s.residual_negative));
    emit(&a.out, &out)
}

fn cmd_holder(a: &HolderArgs) -> Result<(), CliError> {
    check_fft_size(a.h.points)?;
    require(!a.r.is_empty() && a.r.iter().all(|&r| r >= 2), "--r values must be at least 2")?;
    require(a.a_base > 1.0, "--a-base must exceed 1")?;
    require(a.t_count >= 10, "--t-count must be at least 10")?;
    require(a.t_min > 0.0 && a.t_min < a.t_max, "need 0 < t_min < t_max")?;
    require(a.t_min >= 10.0 * a.h.t, "--t-min must be at least 10 times the sampling height")?;
    let s = fourier_coeffs_h(&obtain_h(&a.h)?)?;
    let ts = log_space(a.t_min, a.t_max, a.t_count);
    let mut rep = String::new();
    writeln!(rep, "t0={}\nl_max={}\nresidual_imag={}", fmt_f64(s.t0), s.l_max(), fmt_f64(s.residual_imag)).unwrap();
    let mut clps = Vec::new();
    for &r in &a.r {
        let e = clp_estimate(&s, r, &ts)?;
        writeln!(rep, "eta_clp_r{r}={}\neta_clp_r{r}_stderr={}", fmt_f64(e.eta), fmt_f64(e.stderr)).unwrap();
        clps.push(e);
    }
    let (mid, half) = pooled_interval(&clps).expect("at least one order");
    writeln!(rep, "eta_clp={}\neta_clp_stderr={}", fmt_f64(mid), fmt_f64(half)).unwrap();
    let d = dlp_estimate(&s, a.a_base, None)?;
    writeln!(
        rep,
        "eta_dlp={}\neta_dlp_stderr={}\nc_dlp={}\nc_dlp_stderr={}\ndlp_blocks={}\ndlp_excluded={}",
        fmt_f64(d.eta),
        fmt_f64(d.stderr),
        fmt_f64(d.c),
        fmt_f64(d.c_stderr),
        d.points.len(),
        d.excluded.len()
    )
    .unwrap();
    if let Some(dir) = &a.data_dir {
        fs::create_dir_all(dir)?;
        for e in &clps {
            let mut t = String::from("log_t,log_supnorm\n");
            for (x, y) in &e.points {
                writeln!(t, "{},{}", fmt_f64(*x), fmt_f64(*y)).unwrap();
            }
            fs::write(dir.join(format!("clp_r{}.csv", e.r)), t)?;
        }
        let mut t = String::from("M,logA_supnorm\n");
        for (m, y) in &d.points {
            writeln!(t, "{m},{}", fmt_f64(*y)).unwrap();
        }
        fs::write(dir.join("dlp.csv"), t)?;
    }
    emit(&a.h.out, &rep)
}

/// `2 - G` and `sqrt 2 - 1` in double-double with their closed-form
/// 1/2-Bruno values.
pub fn good_numbers() -> [(&'static str, TwoFloat, f64); 2] {
    let five = TwoFloat::from(5.0).sqrt();
    let g = (TwoFloat::from(1.0) + five) / 2.0;
    let two = TwoFloat::from(2.0).sqrt();
    let gf = g.hi() + g.lo();
    [
        ("2-G", TwoFloat::from(2.0) - g, 2.0 * gf * gf.ln()),
        ("sqrt2-1", two - 1.0, (1.0 + 2f64.sqrt()).ln() / (2.0 - 2f64.sqrt())),
    ]
}

fn cmd_appendix(a: &AppendixArgs) -> Result<(), CliError> {
    let part = a.part.as_str();
    require(["all", "cutoff", "jumps", "convergence"].contains(&part), "--part must be cutoff, jumps, convergence or all")?;
    require(a.t > 0.0, "--t must be positive")?;
    require(a.points >= 2, "--points must be at least 2")?;
    let mut s = String::new();
    if part == "all" || part == "jumps" {
        let cfg = CutoffConfig::default();
        let table = build_table(&cfg);
        writeln!(s, "# jumps at t={} (nmax=151, k1=80, k2=20)\np/q,jump,pi_over_q,residual", fmt_f64(a.t)).unwrap();
        for (p, q) in JUMP_FRACTIONS {
            let j = jump_at(Rational::new(p, q), a.t, JUMP_DELTA, &table, &cfg)?;
            let e = std::f64::consts::PI / q as f64;
            writeln!(s, "{p}/{q},{},{},{}", fmt_f64(j), fmt_f64(e), fmt_f64(j - e)).unwrap();
        }
    }
    if part == "all" || part == "convergence" {
        let cfg = CutoffConfig::new(101, 80, 20, 20);
        let table = build_table(&cfg);
        let ts: Vec<f64> = (2..=7).map(|k| 10f64.powi(-k)).collect();
        writeln!(s, "# boundary convergence (nmax=101, k1=80, k2=20)\nx,t,gap").unwrap();
        for (name, x, b) in good_numbers() {
            for (t, g) in ts.iter().zip(boundary_gaps(x.hi() + x.lo(), b, &ts, &table, &cfg)?) {
                writeln!(s, "{name},{},{}", fmt_f64(*t), fmt_f64(g)).unwrap();
            }
        }
    }
    if part == "all" || part == "cutoff" {
        let reference = CutoffConfig::new(101, 80, 20, 20);
        let table = build_table(&reference);
        let grid: Vec<C64> = (0..a.points).map(|j| C64::new(0.5 * j as f64 / (a.points - 1) as f64, 1e-4)).collect();
        writeln!(s, "# cut-off study on {} points at t=1e-4, reference (101, 80, 20)\ncutoff,value,log10_mean_rel_err", a.points)
            .unwrap();
        for (name, which, values) in
            [("nmax", Cutoff::NMax, vec![41, 61, 83]), ("k1", Cutoff::K1, vec![20, 40, 60]), ("k2", Cutoff::K2, vec![10, 15])]
        {
            for (v, e) in values.iter().zip(cutoff_study(which, &values, &reference, &grid, &table)?) {
                writeln!(s, "{name},{v},{}", fmt_f64(e.log10())).unwrap();
            }
        }
    }
    emit(&a.out, &s)
}
