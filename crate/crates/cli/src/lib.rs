//! `hartogs` command-line front end.
//!
//! Exit codes: 0 success, 1 I/O error, 2 invalid input or parameter,
//! 3 a verification suite failed.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Deserialize;

use hartogs_core::coeffspace::{space_norm_sq, split_f123, star_norm, t_norm_sq, LaurentCoeffs, MixedPoly, SplitPart, TorusSeries};
use hartogs_core::geometry::HartogsPoint;
use hartogs_core::isometries::{
    bergman_pullback, bergman_pullback_inverse, bidisc_to_dirichlet, bidisc_to_hardy, dirichlet_to_bidisc, hardy_to_bidisc,
    BidiscCoeffs, PullbackCoeffs,
};
use hartogs_core::kernels::kernel;
use hartogs_core::projections::{blowup_scan, critical_range, lp_norm_torus, project_bergman, project_szego, project_szego_grid, self_test};
use hartogs_core::HartogsError;

pub mod verify;

/// Tolerance on the quadrature self-test that `project` runs before projecting.
pub const PROJECT_SELF_TEST_TOL: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(name = "hartogs", version, about = "Function spaces on the Hartogs triangle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the reproducing kernel; CSV rows `nu,z1_re,...,w2_im,re,im`.
    Kernel {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        /// Single point `z1_re,z1_im,z2_re,z2_im`.
        #[arg(long, allow_hyphen_values = true, requires = "w")]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true, requires = "z")]
        w: Option<String>,
        /// JSON array of `{"z": {"z1": [re, im], "z2": [re, im]}, "w": {...}}`.
        #[arg(long, conflicts_with = "z")]
        pairs: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Squared norm of a Laurent polynomial in the space selected by `nu`.
    Norm {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long = "in")]
        input: PathBuf,
        /// Also report the derivative split norms `||T f_i||^2` and `||f||_*`.
        #[arg(long)]
        split: bool,
    },
    /// Weighted Bergman projection of a mixed polynomial.
    Project {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Szego projection of torus data (`.bin` samples, JSON samples or JSON series).
    Szego {
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print `p,norm_in,norm_out,ratio` for this exponent; requires `--out`.
        #[arg(long, requires = "out")]
        p: Option<f64>,
    },
    /// Print the interval of `p` for which `P_nu` is bounded on `L^p_nu`.
    CriticalRange {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
    },
    /// Growth of the truncated necessity integral; CSV `epsilon,integral,fitted_slope`.
    ScanBlowup {
        #[arg(long, allow_hyphen_values = true)]
        nu: f64,
        #[arg(long)]
        p: f64,
        /// Comma-separated, strictly decreasing.
        #[arg(long, default_value = "1e-1,1e-2,1e-3,1e-4,1e-5,1e-6,1e-7,1e-8")]
        eps: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Coefficient isometries onto bidisc spaces.
    Isometry {
        #[arg(long, value_enum)]
        space: IsoSpace,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<f64>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "forward")]
        direction: Direction,
    },
    /// Run numerical verification suites; CSV `case,closed_form,quadrature,abs_err,rel_err`.
    Verify {
        #[arg(value_enum)]
        suite: verify::Suite,
        #[arg(long, allow_hyphen_values = true)]
        nu: Option<f64>,
        #[arg(long, default_value_t = 4)]
        jmax: i64,
        #[arg(long, default_value_t = 4)]
        kmax: i64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Replace every suite tolerance.
        #[arg(long)]
        tol: Option<f64>,
        /// Radial order; defaults to `HARTOGS_QUAD_ORDER` or 64.
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = hartogs_core::quadrature::DEFAULT_ANGULAR_COUNT)]
        angular: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IsoSpace {
    Hardy,
    Dirichlet,
    Bergman,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
    #[error("verification failed: {}", .0.join(", "))]
    Verify(Vec<String>),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Io(_) => 1,
            Self::Invalid(_) => 2,
            Self::Verify(_) => 3,
        }
    }
}

impl From<HartogsError> for CliError {
    fn from(e: HartogsError) -> Self {
        Self::Invalid(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Twelve significant digits, switching to exponent form outside `[1e-5, 1e12)`.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.11e}");
    let e: i32 = sci[sci.find('e').expect("exponent form") + 1..].parse().expect("integer exponent");
    if (-5..12).contains(&e) {
        format!("{:.*}", (11 - e) as usize, x)
    } else {
        sci
    }
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Io(format!("{}: {e}", path.display()))
}

fn read_json(path: &Path) -> CliResult<serde_json::Value> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn emit(out: &mut dyn Write, dest: Option<&Path>, text: &str) -> CliResult<()> {
    match dest {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => out.write_all(text.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
    }
}

fn emit_json(out: &mut dyn Write, dest: Option<&Path>, v: &serde_json::Value) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(v).expect("values are finite JSON");
    text.push('\n');
    emit(out, dest, &text)
}

fn parse_point(s: &str) -> CliResult<HartogsPoint> {
    let xs: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Invalid(format!("bad point '{s}': {e}")))?;
    match xs[..] {
        [a, b, c, d] => Ok(HartogsPoint::from_reals((a, b), (c, d))?),
        _ => Err(CliError::Invalid(format!("point '{s}' needs four comma-separated reals"))),
    }
}

#[derive(Deserialize)]
struct PairRepr {
    z: HartogsPoint,
    w: HartogsPoint,
}

fn cmd_kernel(nu: f64, z: Option<String>, w: Option<String>, pairs: Option<PathBuf>, out_path: Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    hartogs_core::coeffspace::SpaceParam::new(nu)?;
    let list: Vec<(HartogsPoint, HartogsPoint)> = match (z, w, pairs) {
        (Some(z), Some(w), None) => vec![(parse_point(&z)?, parse_point(&w)?)],
        (None, None, Some(p)) => {
            let v = read_json(&p)?;
            let raw: Vec<PairRepr> = serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("{}: {e}", p.display())))?;
            raw.into_iter().map(|r| (r.z, r.w)).collect()
        }
        _ => return Err(CliError::Invalid("give either --z and --w or --pairs".into())),
    };
    let mut text = String::from("nu,z1_re,z1_im,z2_re,z2_im,w1_re,w1_im,w2_re,w2_im,re,im\n");
    for (z, w) in list {
        if !(z.is_valid() && w.is_valid()) {
            return Err(CliError::Invalid("point outside the Hartogs triangle".into()));
        }
        let k = kernel(nu, &z, &w)?;
        let cols = [nu, z.z1.re, z.z1.im, z.z2.re, z.z2.im, w.z1.re, w.z1.im, w.z2.re, w.z2.im, k.re, k.im];
        text.push_str(&cols.iter().map(|&x| fmt12(x)).collect::<Vec<_>>().join(","));
        text.push('\n');
    }
    emit(out, out_path.as_deref(), &text)
}

fn cmd_norm(nu: f64, input: &Path, split: bool, out: &mut dyn Write) -> CliResult<()> {
    hartogs_core::coeffspace::SpaceParam::new(nu)?;
    let f = LaurentCoeffs::from_json(&read_json(input)?)?;
    let n = space_norm_sq(nu, &f)?;
    let mut text = if split { "nu,norm_sq,t1_sq,t2_sq,t3_sq,star\n" } else { "nu,norm_sq\n" }.to_string();
    let mut cols = vec![nu, n];
    if split {
        let s = split_f123(&f);
        cols.push(t_norm_sq(nu, SplitPart::F1, &s.f1)?);
        cols.push(t_norm_sq(nu, SplitPart::F2, &s.f2)?);
        cols.push(t_norm_sq(nu, SplitPart::F3, &s.f3)?);
        cols.push(star_norm(nu, &f)?);
    }
    text.push_str(&cols.iter().map(|&x| fmt12(x)).collect::<Vec<_>>().join(","));
    text.push('\n');
    emit(out, None, &text)
}

fn cmd_project(nu: f64, input: &Path, out_path: Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    let err = self_test(nu)?;
    if !(err <= PROJECT_SELF_TEST_TOL) {
        return Err(CliError::Verify(vec![format!("projection self-test (max rel err {})", fmt12(err))]));
    }
    let f = MixedPoly::from_json(&read_json(input)?)?;
    let g = project_bergman(nu, &f)?;
    emit_json(out, out_path.as_deref(), &g.to_json())
}

fn read_samples_bin(path: &Path) -> CliResult<Vec<Complex64>> {
    let bytes = fs::read(path).map_err(|e| io_err(path, e))?;
    if bytes.len() % 16 != 0 {
        return Err(CliError::Invalid(format!("{}: length is not a multiple of 16 bytes", path.display())));
    }
    Ok(bytes
        .chunks_exact(16)
        .map(|c| {
            let re = f64::from_le_bytes(c[..8].try_into().expect("8 bytes"));
            let im = f64::from_le_bytes(c[8..].try_into().expect("8 bytes"));
            Complex64::new(re, im)
        })
        .collect())
}

fn samples_to_bin(samples: &[Complex64]) -> Vec<u8> {
    samples.iter().flat_map(|z| z.re.to_le_bytes().into_iter().chain(z.im.to_le_bytes())).collect()
}

fn is_bin(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "bin")
}

fn grid_side(len: usize, grid: Option<usize>) -> CliResult<usize> {
    let n = grid.unwrap_or_else(|| (len as f64).sqrt().round() as usize);
    if n == 0 || n * n != len {
        return Err(CliError::Invalid(format!("{len} samples do not form a grid of side {n}")));
    }
    Ok(n)
}

fn cmd_szego(grid: Option<usize>, input: &Path, out_path: Option<PathBuf>, p: Option<f64>, out: &mut dyn Write) -> CliResult<()> {
    // Either a sample grid (FFT route) or a coefficient series (exact route).
    let samples = if is_bin(input) {
        Some(read_samples_bin(input)?)
    } else {
        let v = read_json(input)?;
        if v.is_array() {
            let raw: Vec<Complex64> = serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("{}: {e}", input.display())))?;
            Some(raw)
        } else {
            let f = TorusSeries::from_json(&v)?;
            match grid {
                Some(n) => Some(f.sample_grid(n)),
                None => {
                    let g = project_szego(&f);
                    if let Some(p) = p {
                        let side = 4 * (f.degree().max(1) as usize + 1);
                        let (a, b) = (lp_norm_torus(p, &f.sample_grid(side), side), lp_norm_torus(p, &g.sample_grid(side), side));
                        emit(out, None, &format!("p,norm_in,norm_out,ratio\n{},{},{},{}\n", fmt12(p), fmt12(a), fmt12(b), fmt12(b / a)))?;
                    }
                    return emit_json(out, out_path.as_deref(), &g.to_json());
                }
            }
        }
    };
    let samples = samples.expect("set on every sample route");
    let n = grid_side(samples.len(), grid)?;
    let projected = project_szego_grid(&samples, n)?;
    if let Some(p) = p {
        if !(p >= 1.0) {
            return Err(CliError::Invalid(format!("p must be at least 1, got {p}")));
        }
        let (a, b) = (lp_norm_torus(p, &samples, n), lp_norm_torus(p, &projected, n));
        emit(out, None, &format!("p,norm_in,norm_out,ratio\n{},{},{},{}\n", fmt12(p), fmt12(a), fmt12(b), fmt12(b / a)))?;
    }
    match out_path {
        Some(path) if is_bin(&path) => fs::write(&path, samples_to_bin(&projected)).map_err(|e| io_err(&path, e)),
        dest => {
            let v = serde_json::to_value(&projected).expect("finite samples");
            emit_json(out, dest.as_deref(), &v)
        }
    }
}

fn cmd_scan(nu: f64, p: f64, eps: &str, out_path: Option<PathBuf>, out: &mut dyn Write) -> CliResult<()> {
    let eps: Vec<f64> = eps
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| CliError::Invalid(format!("bad --eps list: {e}")))?;
    let scan = blowup_scan(nu, p, &eps)?;
    let mut text = String::from("epsilon,integral,fitted_slope\n");
    for (e, t) in scan.epsilons.iter().zip(&scan.integrals) {
        text.push_str(&format!("{},{},{}\n", fmt12(*e), fmt12(*t), fmt12(scan.fitted_slope)));
    }
    emit(out, out_path.as_deref(), &text)
}

fn cmd_isometry(space: IsoSpace, nu: Option<f64>, input: &Path, out_path: Option<PathBuf>, direction: Direction, out: &mut dyn Write) -> CliResult<()> {
    let bergman_nu = match (space, nu) {
        (IsoSpace::Bergman, None) => return Err(CliError::Invalid("--nu is required for the Bergman pullback".into())),
        (IsoSpace::Bergman, Some(nu)) if !(nu > -1.0) => {
            return Err(CliError::Invalid(format!("Bergman pullback requires nu > -1, got {nu}")))
        }
        (_, nu) => nu,
    };
    let v = read_json(input)?;
    let result = match (space, direction) {
        (IsoSpace::Hardy, Direction::Forward) => hardy_to_bidisc(&LaurentCoeffs::from_json(&v)?)?.to_json(),
        (IsoSpace::Hardy, Direction::Inverse) => bidisc_to_hardy(&BidiscCoeffs::from_json(&v)?).to_json(),
        (IsoSpace::Dirichlet, Direction::Forward) => dirichlet_to_bidisc(&LaurentCoeffs::from_json(&v)?)?.to_json(),
        (IsoSpace::Dirichlet, Direction::Inverse) => bidisc_to_dirichlet(&BidiscCoeffs::from_json(&v)?).to_json(),
        (IsoSpace::Bergman, Direction::Forward) => {
            bergman_pullback(bergman_nu.expect("checked"), &LaurentCoeffs::from_json(&v)?)?.to_json()
        }
        (IsoSpace::Bergman, Direction::Inverse) => bergman_pullback_inverse(&PullbackCoeffs::from_json(&v)?).to_json(),
    };
    emit_json(out, out_path.as_deref(), &result)
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Kernel { nu, z, w, pairs, out: o } => cmd_kernel(nu, z, w, pairs, o, out),
        Command::Norm { nu, input, split } => cmd_norm(nu, &input, split, out),
        Command::Project { nu, input, out: o } => cmd_project(nu, &input, o, out),
        Command::Szego { grid, input, out: o, p } => cmd_szego(grid, &input, o, p, out),
        Command::CriticalRange { nu } => {
            let r = critical_range(nu)?;
            emit(out, None, &format!("{:.12} {:.12}\n", r.p_minus, r.p_plus))
        }
        Command::ScanBlowup { nu, p, eps, out: o } => cmd_scan(nu, p, &eps, o, out),
        Command::Isometry { space, nu, input, out: o, direction } => cmd_isometry(space, nu, &input, o, direction, out),
        Command::Verify { suite, nu, jmax, kmax, seed, tol, order, angular, out: o } => {
            let cfg = verify::VerifyConfig {
                nu,
                jmax,
                kmax,
                seed,
                tol,
                order: order.unwrap_or_else(verify::default_order),
                angular,
            };
            let (text, failed) = verify::run_suite(suite, &cfg)?;
            emit(out, o.as_deref(), &text)?;
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Verify(failed))
            }
        }
    }
}

/// Parses `args` (program name first) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if code == 0 { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(1.0), "1.00000000000");
        assert_eq!(fmt12(0.9999999999999973), "1.00000000000");
        assert_eq!(fmt12(-2.5e-3), "-0.00250000000000");
        assert_eq!(fmt12(3.0e-9), "3.00000000000e-9");
        assert_eq!(fmt12(0.0), "0");
    }

    #[test]
    fn in_memory_streams() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(["hartogs", "critical-range", "--nu", "-0.5"], &mut out, &mut err);
        assert_eq!(code, 0);
        assert_eq!(String::from_utf8(out).unwrap(), "1.400000000000 3.500000000000\n");
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run(["hartogs", "no-such-command"], &mut out, &mut err), 2);
        assert!(!err.is_empty());
    }
}
