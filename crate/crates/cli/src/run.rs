use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use riemann_limit::{
    alt_limit, alt_solve, entropy_limit_sweep, epsilon_sweep, lax_friedrichs_run, predicted_limit, AltRegime, AltWave,
    Model64,
};

use crate::args::{Command, ModelKind, RunConfig};
use crate::error::CliError;
use crate::output::{
    emit_alt, emit_entropy, emit_oracle, emit_profile, emit_sweep, emit_waves, sample_profile, AltRow, EntropyRow,
    Meta, OracleDocument, OracleRow, OracleSummary, Profile, ProfileDocument, SweepDocument, SweepRow, TableDocument,
};

/// Rendered output: the main document plus an optional side table.
struct Rendered {
    main: Vec<u8>,
    side: Option<(Vec<u8>, &'static str)>,
}

fn meta(cfg: &RunConfig) -> Meta {
    let name = match cfg.command {
        Command::Solve => "solve",
        Command::Sample => "sample",
        Command::Sweep => "sweep",
        Command::Limit => "limit",
        Command::Entropy => "entropy",
        Command::Alt => "alt",
        Command::Oracle => "oracle",
    };
    let model = match (cfg.command, cfg.model) {
        (Command::Alt, _) | (_, ModelKind::Alt) => "alt",
        _ => "base",
    };
    Meta {
        command: name.to_string(),
        model: model.to_string(),
        u_l: cfg.data.left.u,
        rho_l: cfg.data.left.rho,
        u_r: cfg.data.right.u,
        rho_r: cfg.data.right.rho,
        eps: cfg.eps.iter().map(|e| e.value()).collect(),
        t: cfg.sample.map(|s| s.t).or(cfg.grid.map(|g| g.t_end)),
    }
}

fn solution(cfg: &RunConfig) -> Result<Box<dyn Profile>, CliError> {
    let eps = cfg.eps[0];
    Ok(match cfg.model {
        ModelKind::Base => Box::new(Model64::exp(eps).solve(&cfg.data)?),
        ModelKind::Alt => Box::new(alt_solve(&cfg.data, eps)?),
    })
}

fn render(cfg: &RunConfig) -> Result<Rendered, CliError> {
    let mut main = Vec::new();
    let mut side = Vec::new();
    let meta = meta(cfg);
    let used_side = match cfg.command {
        Command::Solve | Command::Limit => {
            let waves = if cfg.command == Command::Solve {
                solution(cfg)?.wave_rows()
            } else {
                match cfg.model {
                    ModelKind::Base => predicted_limit(&cfg.data).wave_rows(),
                    ModelKind::Alt => alt_limit(&cfg.data).wave_rows(),
                }
            };
            let doc = ProfileDocument {
                meta,
                profile: Vec::new(),
                waves,
            };
            emit_waves(&doc, cfg.format, &mut main, &mut side)?
        }
        Command::Sample => {
            let grid = cfg.sample.expect("sample grid is validated");
            let sol = solution(cfg)?;
            let doc = ProfileDocument {
                meta,
                profile: sample_profile(sol.as_ref(), &grid)?,
                waves: sol.wave_rows(),
            };
            emit_profile(&doc, cfg.format, &mut main, &mut side)?
        }
        Command::Sweep => {
            let records = epsilon_sweep(&cfg.data, &cfg.eps)?;
            let doc = SweepDocument {
                meta,
                records: records.iter().map(SweepRow::from).collect(),
            };
            emit_sweep(&doc, cfg.format, &mut main)?;
            false
        }
        Command::Entropy => {
            let records = entropy_limit_sweep(&cfg.data, &cfg.eps)?;
            let doc = TableDocument {
                meta,
                records: records.iter().map(EntropyRow::from).collect(),
            };
            emit_entropy(&doc, cfg.format, &mut main)?;
            false
        }
        Command::Alt => {
            let records = cfg
                .eps
                .iter()
                .map(|&eps| alt_row(cfg, eps))
                .collect::<Result<Vec<_>, _>>()?;
            emit_alt(&TableDocument { meta, records }, cfg.format, &mut main)?;
            false
        }
        Command::Oracle => {
            let grid = cfg.grid.expect("oracle grid is validated");
            let model = Model64::exp(cfg.eps[0]);
            let exact = model.solve(&cfg.data)?;
            let sol = lax_friedrichs_run(&model, &cfg.data, &grid)?;
            let err = riemann_limit::compare_l1(&exact, &sol)?;
            let t = grid.t_end;
            let profile = (0..grid.n_cells)
                .map(|i| {
                    let x = grid.center(i);
                    let e = exact.sample(x, t)?;
                    Ok(OracleRow {
                        x,
                        t,
                        u: sol.u[i],
                        rho: sol.rho[i],
                        u_exact: e.u,
                        rho_exact: e.rho,
                    })
                })
                .collect::<Result<Vec<_>, riemann_limit::Error>>()?;
            let doc = OracleDocument {
                meta,
                summary: OracleSummary {
                    n_cells: grid.n_cells,
                    steps: sol.dt_history.len(),
                    l1_u: err.u,
                    l1_rho: err.rho,
                    rel_u: err.u_relative,
                    rel_rho: err.rho_relative,
                    mass_defect: sol.mass_defect(),
                },
                profile,
            };
            emit_oracle(&doc, cfg.format, &mut main, &mut side)?
        }
    };
    let side_ext = if cfg.command == Command::Oracle {
        "summary.csv"
    } else {
        "delta.csv"
    };
    Ok(Rendered {
        main,
        side: used_side.then_some((side, side_ext)),
    })
}

fn alt_row(cfg: &RunConfig, eps: riemann_limit::Epsilon64) -> Result<AltRow, CliError> {
    let fan = alt_solve(&cfg.data, eps)?;
    let regime = riemann_limit::alt_regime(&cfg.data, eps);
    let mut row = AltRow {
        eps: eps.value(),
        regime: match regime {
            AltRegime::Rarefaction => "rarefaction",
            AltRegime::SmallShock => "small_shock",
            AltRegime::Delta => "delta",
        }
        .to_string(),
        rho_star: None,
        shock_speed: None,
        w0: None,
        carried_u: None,
    };
    for w in fan.waves() {
        match *w {
            AltWave::Contact { right, .. } if regime != AltRegime::Delta => {
                if fan.waves().len() > 3 {
                    row.rho_star = Some(right.rho);
                }
            }
            AltWave::Shock { speed, .. } => row.shock_speed = Some(speed),
            AltWave::Delta {
                speed,
                weight_coefficient,
                carried_u,
                ..
            } => {
                row.shock_speed = Some(speed);
                row.w0 = Some(weight_coefficient);
                row.carried_u = Some(carried_u);
            }
            _ => {}
        }
    }
    Ok(row)
}

fn side_path(out: &Path, ext: &str) -> PathBuf {
    out.with_extension(ext)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: Some(path.to_path_buf()),
        source,
    })
}

/// Runs a validated configuration. Output is rendered in memory first, so a
/// numeric failure never leaves a partial file behind.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rendered = render(cfg)?;
    match &cfg.out {
        Some(path) => {
            write_file(path, &rendered.main)?;
            if let Some((side, ext)) = &rendered.side {
                write_file(&side_path(path, ext), side)?;
            }
        }
        None => {
            let io = |source| CliError::Io { path: None, source };
            stdout.write_all(&rendered.main).map_err(io)?;
            if let Some((side, _)) = &rendered.side {
                stdout.write_all(b"\n").map_err(io)?;
                stdout.write_all(side).map_err(io)?;
            }
            stdout.flush().map_err(io)?;
        }
    }
    Ok(())
}
