//! Output documents and their CSV/JSON encodings.
//!
//! CSV numbers carry 17 significant digits; JSON uses shortest round-trip
//! formatting. Either way a re-read reproduces the values bit-exactly.

use std::io::Write;

use riemann_limit::{AltWave, AltWaveFan64, EntropyRecord, LimitSolution64, State64, SweepRecord64, Wave, WaveFan64};
use serde::{Deserialize, Serialize};

use crate::args::{Format, SampleGrid};
use crate::error::CliError;

/// Formats a number with 17 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub command: String,
    pub model: String,
    pub u_l: f64,
    pub rho_l: f64,
    pub u_r: f64,
    pub rho_r: f64,
    pub eps: Vec<f64>,
    pub t: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    pub rho: f64,
    /// Segment kind and its index in the wave list, e.g. `fan:1`.
    pub region_tag: String,
}

/// One segment of a solution. Unbounded ends are `None`; `w0` and
/// `carried_u` are set for delta shocks only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveRow {
    pub index: usize,
    pub kind: String,
    pub from: Option<f64>,
    pub to: Option<f64>,
    pub u_left: f64,
    pub rho_left: f64,
    pub u_right: f64,
    pub rho_right: f64,
    pub w0: Option<f64>,
    pub carried_u: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProfileDocument {
    pub meta: Meta,
    pub profile: Vec<ProfileRow>,
    pub waves: Vec<WaveRow>,
}

/// Something that can be sampled with a region tag and listed as waves.
pub trait Profile {
    fn sample_tagged(&self, x: f64, t: f64) -> Result<(State64, String), riemann_limit::Error>;
    fn wave_rows(&self) -> Vec<WaveRow>;
}

fn row(index: usize, kind: &str, (from, to): (f64, f64), l: State64, r: State64) -> WaveRow {
    WaveRow {
        index,
        kind: kind.to_string(),
        from: finite(from),
        to: finite(to),
        u_left: l.u,
        rho_left: l.rho,
        u_right: r.u,
        rho_right: r.rho,
        w0: None,
        carried_u: None,
    }
}

impl Profile for WaveFan64 {
    fn sample_tagged(&self, x: f64, t: f64) -> Result<(State64, String), riemann_limit::Error> {
        let s = self.sample(x, t)?;
        let i = self.locate(x / t);
        Ok((s, format!("{}:{i}", self.waves()[i].kind())))
    }

    fn wave_rows(&self) -> Vec<WaveRow> {
        self.waves()
            .iter()
            .enumerate()
            .map(|(i, w): (usize, &Wave<f64>)| row(i, w.kind(), w.interval(), w.left_state(), w.right_state()))
            .collect()
    }
}

impl Profile for AltWaveFan64 {
    fn sample_tagged(&self, x: f64, t: f64) -> Result<(State64, String), riemann_limit::Error> {
        let s = self.sample(x, t)?;
        let i = self.locate(x / t);
        Ok((s, format!("{}:{i}", self.waves()[i].kind())))
    }

    fn wave_rows(&self) -> Vec<WaveRow> {
        self.waves()
            .iter()
            .enumerate()
            .map(|(i, w)| {
                let (l, r) = w.edge_states();
                let mut out = row(i, w.kind(), w.interval(), l, r);
                if let AltWave::Delta {
                    weight_coefficient,
                    carried_u,
                    ..
                } = *w
                {
                    out.w0 = Some(weight_coefficient);
                    out.carried_u = Some(carried_u);
                }
                out
            })
            .collect()
    }
}

fn limit_segments(lim: &LimitSolution64) -> Vec<WaveRow> {
    let (l, r) = (lim.left(), lim.right());
    let inf = f64::INFINITY;
    match *lim {
        LimitSolution64::DeltaShock { delta, .. } => {
            let c = delta.speed;
            let mut d = row(1, "delta", (c, c), l, r);
            d.w0 = Some(delta.weight_coefficient);
            d.carried_u = Some(delta.carried_u);
            vec![
                row(0, "constant", (-inf, c), l, l),
                d,
                row(2, "constant", (c, inf), r, r),
            ]
        }
        LimitSolution64::Contact { speed, .. } => vec![
            row(0, "constant", (-inf, speed), l, l),
            row(1, "contact", (speed, speed), l, r),
            row(2, "constant", (speed, inf), r, r),
        ],
        LimitSolution64::Vacuum { .. } => vec![
            row(0, "constant", (-inf, l.u), l, l),
            row(1, "vacuum", (l.u, r.u), State64::vacuum(l.u), State64::vacuum(r.u)),
            row(2, "constant", (r.u, inf), r, r),
        ],
    }
}

impl Profile for LimitSolution64 {
    fn sample_tagged(&self, x: f64, t: f64) -> Result<(State64, String), riemann_limit::Error> {
        if !(t > 0.0) {
            return Err(riemann_limit::Error::Domain {
                what: "sampling time must be positive",
                value: t,
            });
        }
        let xi = x / t;
        let s = self.state_xi(xi);
        let rows = limit_segments(self);
        let i = rows
            .iter()
            .position(|w| w.kind != "delta" && w.kind != "contact" && xi < w.to.unwrap_or(f64::INFINITY))
            .unwrap_or(rows.len() - 1);
        Ok((s, format!("{}:{i}", rows[i].kind)))
    }

    fn wave_rows(&self) -> Vec<WaveRow> {
        limit_segments(self)
    }
}

pub fn sample_profile(p: &dyn Profile, grid: &SampleGrid) -> Result<Vec<ProfileRow>, CliError> {
    grid.points()
        .map(|x| {
            let (s, tag) = p.sample_tagged(x, grid.t)?;
            Ok(ProfileRow {
                x,
                t: grid.t,
                u: s.u,
                rho: s.rho,
                region_tag: tag,
            })
        })
        .collect()
}

fn io_err(e: impl Into<std::io::Error>) -> CliError {
    CliError::Io {
        path: None,
        source: e.into(),
    }
}

fn csv_writer(w: &mut dyn Write) -> csv::Writer<&mut dyn Write> {
    csv::WriterBuilder::new().has_headers(false).from_writer(w)
}

fn write_table(
    w: &mut dyn Write,
    header: &[&str],
    rows: impl IntoIterator<Item = Vec<String>>,
) -> Result<(), CliError> {
    let mut wr = csv_writer(w);
    wr.write_record(header).map_err(io_err)?;
    for r in rows {
        wr.write_record(&r).map_err(io_err)?;
    }
    wr.flush().map_err(io_err)
}

fn write_json<T: Serialize>(w: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *w, value).map_err(io_err)?;
    writeln!(w).map_err(io_err)
}

pub const PROFILE_HEADER: [&str; 5] = ["x", "t", "u", "rho", "region_tag"];
pub const WAVE_HEADER: [&str; 10] = [
    "index",
    "kind",
    "from",
    "to",
    "u_left",
    "rho_left",
    "u_right",
    "rho_right",
    "w0",
    "carried_u",
];
pub const DELTA_HEADER: [&str; 3] = ["speed", "w0", "carried_u"];
pub const SWEEP_HEADER: [&str; 10] = [
    "eps",
    "u_star",
    "log_rho_star",
    "eps_p_rho_star",
    "s1",
    "s2",
    "d_coeff",
    "err_u",
    "err_l",
    "err_w",
];

fn delta_rows(waves: &[WaveRow]) -> Vec<Vec<String>> {
    waves
        .iter()
        .filter(|w| w.kind == "delta")
        .map(|w| vec![opt(w.from), opt(w.w0), opt(w.carried_u)])
        .collect()
}

/// Writes a sampled profile. In CSV form any delta shocks go to `side` as a
/// `speed,w0,carried_u` table; the return value tells whether `side` was used.
pub fn emit_profile(
    doc: &ProfileDocument,
    format: Format,
    main: &mut dyn Write,
    side: &mut dyn Write,
) -> Result<bool, CliError> {
    match format {
        Format::Json => write_json(main, doc).map(|_| false),
        Format::Csv => {
            write_table(
                main,
                &PROFILE_HEADER,
                doc.profile
                    .iter()
                    .map(|r| vec![num(r.x), num(r.t), num(r.u), num(r.rho), r.region_tag.clone()]),
            )?;
            emit_delta_side(&doc.waves, side)
        }
    }
}

/// Writes the wave list of a solution.
pub fn emit_waves(
    doc: &ProfileDocument,
    format: Format,
    main: &mut dyn Write,
    side: &mut dyn Write,
) -> Result<bool, CliError> {
    match format {
        Format::Json => write_json(main, doc).map(|_| false),
        Format::Csv => {
            write_table(
                main,
                &WAVE_HEADER,
                doc.waves.iter().map(|w| {
                    vec![
                        w.index.to_string(),
                        w.kind.clone(),
                        opt(w.from),
                        opt(w.to),
                        num(w.u_left),
                        num(w.rho_left),
                        num(w.u_right),
                        num(w.rho_right),
                        opt(w.w0),
                        opt(w.carried_u),
                    ]
                }),
            )?;
            emit_delta_side(&doc.waves, side)
        }
    }
}

fn emit_delta_side(waves: &[WaveRow], side: &mut dyn Write) -> Result<bool, CliError> {
    let rows = delta_rows(waves);
    if rows.is_empty() {
        return Ok(false);
    }
    write_table(side, &DELTA_HEADER, rows)?;
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub eps: f64,
    pub u_star: f64,
    pub log_rho_star: f64,
    pub eps_p_rho_star: f64,
    pub s1: f64,
    pub s2: f64,
    pub d_coeff: f64,
    pub err_u: f64,
    pub err_l: f64,
    pub err_w: f64,
}

impl From<&SweepRecord64> for SweepRow {
    fn from(r: &SweepRecord64) -> Self {
        Self {
            eps: r.eps,
            u_star: r.u_star,
            log_rho_star: r.log_rho_star,
            eps_p_rho_star: r.eps_p_rho_star,
            s1: r.s1,
            s2: r.s2,
            d_coeff: r.d_eps_coeff,
            err_u: r.err_u,
            err_l: r.err_l,
            err_w: r.err_w,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDocument {
    pub meta: Meta,
    pub records: Vec<SweepRow>,
}

/// One row per record, in input order.
pub fn emit_sweep(doc: &SweepDocument, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(w, doc),
        Format::Csv => write_table(
            w,
            &SWEEP_HEADER,
            doc.records.iter().map(|r| {
                [
                    r.eps,
                    r.u_star,
                    r.log_rho_star,
                    r.eps_p_rho_star,
                    r.s1,
                    r.s2,
                    r.d_coeff,
                    r.err_u,
                    r.err_l,
                    r.err_w,
                ]
                .into_iter()
                .map(num)
                .collect()
            }),
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyRow {
    pub eps: f64,
    pub production_1: f64,
    pub production_2: f64,
    pub total: f64,
    pub cross_term: f64,
    pub limit: f64,
}

impl From<&EntropyRecord<f64>> for EntropyRow {
    fn from(r: &EntropyRecord<f64>) -> Self {
        Self {
            eps: r.eps,
            production_1: r.production_1,
            production_2: r.production_2,
            total: r.total,
            cross_term: r.cross_term,
            limit: r.limit,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AltRow {
    pub eps: f64,
    pub regime: String,
    pub rho_star: Option<f64>,
    pub shock_speed: Option<f64>,
    pub w0: Option<f64>,
    pub carried_u: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleRow {
    pub x: f64,
    pub t: f64,
    pub u: f64,
    pub rho: f64,
    pub u_exact: f64,
    pub rho_exact: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleSummary {
    pub n_cells: usize,
    pub steps: usize,
    pub l1_u: f64,
    pub l1_rho: f64,
    pub rel_u: f64,
    pub rel_rho: f64,
    pub mass_defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableDocument<R> {
    pub meta: Meta,
    pub records: Vec<R>,
}

pub fn emit_entropy(doc: &TableDocument<EntropyRow>, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(w, doc),
        Format::Csv => write_table(
            w,
            &["eps", "production_1", "production_2", "total", "cross_term", "limit"],
            doc.records.iter().map(|r| {
                [r.eps, r.production_1, r.production_2, r.total, r.cross_term, r.limit]
                    .into_iter()
                    .map(num)
                    .collect()
            }),
        ),
    }
}

pub fn emit_alt(doc: &TableDocument<AltRow>, format: Format, w: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(w, doc),
        Format::Csv => write_table(
            w,
            &["eps", "regime", "rho_star", "shock_speed", "w0", "carried_u"],
            doc.records.iter().map(|r| {
                vec![
                    num(r.eps),
                    r.regime.clone(),
                    opt(r.rho_star),
                    opt(r.shock_speed),
                    opt(r.w0),
                    opt(r.carried_u),
                ]
            }),
        ),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleDocument {
    pub meta: Meta,
    pub summary: OracleSummary,
    pub profile: Vec<OracleRow>,
}

/// Cell profile to `main`; in CSV form the summary goes to `side`.
pub fn emit_oracle(
    doc: &OracleDocument,
    format: Format,
    main: &mut dyn Write,
    side: &mut dyn Write,
) -> Result<bool, CliError> {
    match format {
        Format::Json => write_json(main, doc).map(|_| false),
        Format::Csv => {
            write_table(
                main,
                &["x", "t", "u", "rho", "u_exact", "rho_exact"],
                doc.profile.iter().map(|r| {
                    [r.x, r.t, r.u, r.rho, r.u_exact, r.rho_exact]
                        .into_iter()
                        .map(num)
                        .collect()
                }),
            )?;
            let s = &doc.summary;
            write_table(
                side,
                &["n_cells", "steps", "l1_u", "l1_rho", "rel_u", "rel_rho", "mass_defect"],
                [vec![
                    s.n_cells.to_string(),
                    s.steps.to_string(),
                    num(s.l1_u),
                    num(s.l1_rho),
                    num(s.rel_u),
                    num(s.rel_rho),
                    num(s.mass_defect),
                ]],
            )?;
            Ok(true)
        }
    }
}
