use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use riemann_limit::{pressure::strictly_decreasing, Epsilon64, Grid1D64, RiemannData64, State64};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    /// Solve one Riemann problem and list its waves.
    Solve,
    /// Sample the solution on a uniform grid of x at a fixed time.
    Sample,
    /// Two-shock epsilon sweep against the predicted limit.
    Sweep,
    /// Predicted vanishing-pressure limit.
    Limit,
    /// Entropy production sweep.
    Entropy,
    /// Alternate-flux model over a list of eps.
    Alt,
    /// Lax-Friedrichs reference run compared with the exact solution.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelKind {
    Base,
    Alt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "riemann-limit",
    version,
    about = "Exact Riemann solutions and vanishing-pressure limits"
)]
pub struct Cli {
    #[arg(value_enum)]
    pub command: Command,
    #[arg(long, allow_hyphen_values = true)]
    pub ul: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub rhol: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub ur: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub rhor: f64,
    /// Pressure scale; repeat for sweeps, largest first.
    #[arg(long = "eps", allow_hyphen_values = true)]
    pub eps: Vec<f64>,
    #[arg(long, value_enum, default_value_t = ModelKind::Base)]
    pub model: ModelKind,
    /// Time of the sampled profile or of the end of a reference run.
    #[arg(long, allow_hyphen_values = true)]
    pub t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: Option<f64>,
    /// Number of sample points, or of cells for `oracle`.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    pub cfl: Option<f64>,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

/// Uniform sampling of `x` at time `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleGrid {
    pub t: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub n: usize,
}

impl SampleGrid {
    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let h = if self.n > 1 {
            (self.x_max - self.x_min) / (self.n - 1) as f64
        } else {
            0.0
        };
        (0..self.n).map(move |i| {
            if i + 1 == self.n && self.n > 1 {
                self.x_max
            } else {
                self.x_min + h * i as f64
            }
        })
    }
}

/// Validated run configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub data: RiemannData64,
    pub eps: Vec<Epsilon64>,
    pub model: ModelKind,
    pub sample: Option<SampleGrid>,
    pub grid: Option<Grid1D64>,
    pub out: Option<PathBuf>,
    pub format: Format,
}

fn arg_error(flag: &'static str, message: impl Into<String>) -> CliError {
    CliError::Argument {
        flag,
        message: message.into(),
    }
}

fn positive(flag: &'static str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(arg_error(flag, format!("must be positive and finite (got {v})")))
    }
}

fn finite(flag: &'static str, v: f64) -> Result<f64, CliError> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(arg_error(flag, format!("must be finite (got {v})")))
    }
}

impl Cli {
    pub fn into_config(self) -> Result<RunConfig, CliError> {
        let ul = finite("--ul", self.ul)?;
        let ur = finite("--ur", self.ur)?;
        let rhol = positive("--rhol", self.rhol)?;
        let rhor = positive("--rhor", self.rhor)?;
        let data = RiemannData64::new(State64::new(ul, rhol), State64::new(ur, rhor))
            .map_err(|e| arg_error("--rhol", e.to_string()))?;

        let mut eps = Vec::with_capacity(self.eps.len());
        for &e in &self.eps {
            let v = positive("--eps", e)?;
            eps.push(Epsilon64::new(v).map_err(|err| arg_error("--eps", err.to_string()))?);
        }
        if !eps.is_empty() && !strictly_decreasing(&eps) {
            return Err(arg_error("--eps", "values must be strictly decreasing"));
        }
        match self.command {
            Command::Limit => {}
            Command::Solve | Command::Sample | Command::Oracle => {
                if eps.len() != 1 {
                    return Err(arg_error("--eps", "exactly one value is required for this command"));
                }
            }
            Command::Sweep | Command::Entropy | Command::Alt => {
                if eps.is_empty() {
                    return Err(arg_error("--eps", "at least one value is required"));
                }
            }
        }
        let base_only = matches!(self.command, Command::Sweep | Command::Entropy | Command::Oracle);
        if base_only && self.model == ModelKind::Alt {
            return Err(arg_error("--model", "this command supports only the base model"));
        }

        let x_min = finite("--xmin", self.xmin.unwrap_or(-1.0))?;
        let x_max = finite("--xmax", self.xmax.unwrap_or(1.0))?;
        let needs_t = matches!(self.command, Command::Sample | Command::Oracle);
        let t = match self.t {
            Some(t) => Some(positive("--t", t)?),
            None if needs_t => return Err(arg_error("--t", "is required for this command")),
            None => None,
        };

        let mut sample = None;
        let mut grid = None;
        match self.command {
            Command::Sample => {
                if x_max <= x_min {
                    return Err(arg_error("--xmax", "must exceed --xmin"));
                }
                let n = self.n.unwrap_or(201);
                if n < 2 {
                    return Err(arg_error("--n", "at least two sample points are required"));
                }
                sample = Some(SampleGrid {
                    t: t.expect("checked above"),
                    x_min,
                    x_max,
                    n,
                });
            }
            Command::Oracle => {
                let g = Grid1D64::new(
                    self.xmin.unwrap_or(-1.5),
                    self.xmax.unwrap_or(1.5),
                    self.n.unwrap_or(1000),
                    self.cfl.unwrap_or(0.9),
                    t.expect("checked above"),
                )
                .map_err(|e| {
                    let flag = match e {
                        riemann_limit::Error::InvalidGrid(m) if m.contains("cells") => "--n",
                        riemann_limit::Error::InvalidGrid(m) if m.contains("cfl") => "--cfl",
                        _ => "--xmin",
                    };
                    arg_error(flag, e.to_string())
                })?;
                grid = Some(g);
            }
            _ => {}
        }

        Ok(RunConfig {
            command: self.command,
            data,
            eps,
            model: self.model,
            sample,
            grid,
            out: self.out,
            format: self.format,
        })
    }
}

/// Parses and validates a full argument vector, program name first.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Cli::try_parse_from(argv).map_err(CliError::Usage)?.into_config()
}
