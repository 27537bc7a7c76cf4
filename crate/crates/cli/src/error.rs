use std::fmt;
use std::path::PathBuf;

/// Failure of a command-line run, mapped onto the process exit status.
#[derive(Debug)]
pub enum CliError {
    /// Rejected by the argument parser (also covers `--help`).
    Usage(clap::Error),
    Argument {
        flag: &'static str,
        message: String,
    },
    Io {
        path: Option<PathBuf>,
        source: std::io::Error,
    },
    Numeric(riemann_limit::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(e) => {
                if e.use_stderr() {
                    2
                } else {
                    0
                }
            }
            CliError::Argument { .. } => 2,
            CliError::Io { .. } => 3,
            CliError::Numeric(_) => 4,
        }
    }
}

/// A short statement of which regime the numeric failure belongs to.
fn regime_note(e: &riemann_limit::Error) -> Option<&'static str> {
    use riemann_limit::Error as E;
    Some(match e {
        E::EpsilonTooLarge { .. } => {
            "the 1-shock and 2-shock curves do not meet for this eps; the two-shock solution exists only for small enough eps"
        }
        E::RarefactionOverlap { .. } => {
            "the rarefaction curves cross before reaching vacuum; the two-rarefaction solution needs smaller eps"
        }
        E::OverflowAtVanishingEpsilon { .. } => {
            "p(rho) is not representable at this density; sweeps switch to the log-domain path automatically"
        }
        E::DenominatorVanishing { .. } | E::OutsideBvWindow { .. } => {
            "u_l - u_r exceeds eps, so the alternate model forms a delta shock instead of a small shock"
        }
        E::InsideBvWindow { .. } => "u_l - u_r is at most eps, so the alternate model has a bounded solution",
        E::BoundaryReached { .. } => "waves reach the domain boundary; widen --xmin/--xmax or shorten --t",
        E::BlowUp { .. } => "the finite-volume run became non-finite; reduce --cfl",
        _ => return None,
    })
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(e) => write!(f, "{e}"),
            CliError::Argument { flag, message } => write!(f, "invalid {flag}: {message}"),
            CliError::Io { path: Some(p), source } => write!(f, "cannot write {}: {source}", p.display()),
            CliError::Io { path: None, source } => write!(f, "output error: {source}"),
            CliError::Numeric(e) => match regime_note(e) {
                Some(note) => write!(f, "numeric failure: {e} ({note})"),
                None => write!(f, "numeric failure: {e}"),
            },
        }
    }
}

impl std::error::Error for CliError {}

impl From<riemann_limit::Error> for CliError {
    fn from(e: riemann_limit::Error) -> Self {
        CliError::Numeric(e)
    }
}
