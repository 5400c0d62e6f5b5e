//! Scenario runner: angular sweeps for the configured scenarios and their
//! CSV/JSON output.

use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::acoustic::valley_response_acoustic;
use crate::config::{Mechanism, SweepConfig, Scenario};
use crate::coulomb::{valley_response_coulomb, BraceMode, ScreeningParams};
use crate::emission::{decompose_111_responses, AngularDecomposition};
use crate::error::{Error, Result};
use crate::hotfield::{emission_distorted_with, BracketForm, MonoValleyModel};
use crate::material::{CarrierState, MaterialParams};
use crate::units::{kelvin_to_erg, volt_per_cm_to_cgs, HBAR};

pub const CSV_HEADER: [&str; 13] = [
    "scenario",
    "mechanism",
    "point",
    "field_V_per_cm",
    "lattice_temperature_K",
    "n1_cm3",
    "T1_K",
    "n2_cm3",
    "T2_K",
    "phi_rad",
    "a0",
    "a2",
    "emission",
];

/// One angle of one sweep point. Powers are in erg/(s·cm³·sr); for
/// `field-100` rows n1 = n2 is the per-valley concentration and φ is the
/// angle between polarization and field.
#[allow(non_snake_case)]
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub scenario: String,
    pub mechanism: String,
    pub point: usize,
    pub field_V_per_cm: f64,
    pub lattice_temperature_K: f64,
    pub n1_cm3: f64,
    pub T1_K: f64,
    pub n2_cm3: f64,
    pub T2_K: f64,
    pub phi_rad: f64,
    pub a0: f64,
    pub a2: f64,
    pub emission: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
}

/// A₀, A₂ of a (1,1,1) point for the given mechanism weights.
#[allow(clippy::too_many_arguments)]
pub fn point_111(
    mat: &MaterialParams,
    omega: f64,
    mechanism: Mechanism,
    brace: BraceMode,
    n1: f64,
    t1: f64,
    n2: f64,
    t2: f64,
) -> Result<AngularDecomposition> {
    let (wa, wc) = mechanism.weights();
    let mut r1 = crate::emission::ValleyResponse { perp: 0.0, par: 0.0 };
    let mut r2 = r1;
    if wa > 0.0 {
        r1 = r1 + valley_response_acoustic(mat, n1, t1, omega)?.scale(wa);
        r2 = r2 + valley_response_acoustic(mat, n2, t2, omega)?.scale(wa);
    }
    if wc > 0.0 {
        let carriers = CarrierState::field_111(n1, t1, n2, t2)?;
        let screening = ScreeningParams::from_carriers(&carriers, mat.chi0)?;
        r1 = r1 + valley_response_coulomb(mat, n1, t1, omega, &screening, brace)?.scale(wc);
        r2 = r2 + valley_response_coulomb(mat, n2, t2, omega, &screening, brace)?.scale(wc);
    }
    Ok(decompose_111_responses(r1, r2))
}

/// Isotropic part and P₂ coefficient of a (1,0,0) point, returned as
/// (a0, a2) of the cos 2θ₀ expansion.
pub fn point_100(
    mat: &MaterialParams,
    omega: f64,
    form: BracketForm,
    n_total: f64,
    t_e: f64,
    field: f64,
) -> Result<(f64, f64)> {
    let model = MonoValleyModel::from_multivalley(mat, n_total, t_e, field, 0.0)?;
    let e = emission_distorted_with(&model, omega, form)?;
    // P₂(cos θ) = ¼ + ¾ cos 2θ
    Ok((e.isotropic + 0.25 * e.p2_coefficient, 0.75 * e.p2_coefficient))
}

/// Runs every scenario, or only the one named `only`.
pub fn run_sweep(cfg: &SweepConfig, only: Option<&str>) -> Result<SweepTable> {
    if let Some(name) = only {
        if !cfg.scenarios.iter().any(|s| s.name() == name) {
            return Err(Error::Config {
                path: "scenario".into(),
                message: format!("no scenario named `{name}`"),
            });
        }
    }
    let omega = cfg.photon_energy() / HBAR;
    let angles = cfg.angles.angles();
    let base = cfg.material.to_params()?;
    let base_t_k = crate::units::erg_to_kelvin(base.t_lattice);
    let mut rows = Vec::new();
    for (si, sc) in cfg.scenarios.iter().enumerate().filter(|(_, s)| only.is_none() || only == Some(s.name())) {
        let mut push = |mechanism: &str, point: usize, field: f64, t_lat: f64, c: [f64; 4], a0: f64, a2: f64| {
            for &phi in &angles {
                rows.push(SweepRow {
                    scenario: sc.name().to_string(),
                    mechanism: mechanism.to_string(),
                    point,
                    field_V_per_cm: field,
                    lattice_temperature_K: t_lat,
                    n1_cm3: c[0],
                    T1_K: c[1],
                    n2_cm3: c[2],
                    T2_K: c[3],
                    phi_rad: phi,
                    a0,
                    a2,
                    emission: a0 + a2 * (2.0 * phi).cos(),
                });
            }
        };
        match sc {
            Scenario::Field111 { mechanism, points, .. } => {
                for (i, p) in points.iter().enumerate() {
                    let d = point_111(
                        &base,
                        omega,
                        *mechanism,
                        cfg.coulomb_brace,
                        p.n1_cm3,
                        kelvin_to_erg(p.T1_K),
                        p.n2_cm3,
                        kelvin_to_erg(p.T2_K),
                    )
                    .map_err(|e| point_error(si, i, e))?;
                    push(
                        mechanism.label(),
                        i,
                        p.field_V_per_cm,
                        base_t_k,
                        [p.n1_cm3, p.T1_K, p.n2_cm3, p.T2_K],
                        d.a0,
                        d.a2,
                    );
                }
            }
            Scenario::Field100 { points, .. } => {
                for (i, p) in points.iter().enumerate() {
                    let (a0, a2) = point_100(
                        &base,
                        omega,
                        cfg.hotfield_bracket,
                        p.n_cm3,
                        kelvin_to_erg(p.T_e_K),
                        volt_per_cm_to_cgs(p.field_V_per_cm),
                    )
                    .map_err(|e| point_error(si, i, e))?;
                    let nv = 0.25 * p.n_cm3;
                    push("hotfield", i, p.field_V_per_cm, base_t_k, [nv, p.T_e_K, nv, p.T_e_K], a0, a2);
                }
            }
            Scenario::LatticeTempScan {
                field_V_per_cm, points, ..
            } => {
                for (i, p) in points.iter().enumerate() {
                    let mat = cfg.material.to_params_at(p.lattice_temperature_K).map_err(|e| point_error(si, i, e))?;
                    let mech = Mechanism::AutoMix {
                        acoustic_weight: p.acoustic_weight,
                        coulomb_weight: p.coulomb_weight,
                    };
                    let d = point_111(
                        &mat,
                        omega,
                        mech,
                        cfg.coulomb_brace,
                        p.n1_cm3,
                        kelvin_to_erg(p.T1_K),
                        p.n2_cm3,
                        kelvin_to_erg(p.T2_K),
                    )
                    .map_err(|e| point_error(si, i, e))?;
                    push(
                        mech.label(),
                        i,
                        *field_V_per_cm,
                        p.lattice_temperature_K,
                        [p.n1_cm3, p.T1_K, p.n2_cm3, p.T2_K],
                        d.a0,
                        d.a2,
                    );
                }
            }
        }
    }
    Ok(SweepTable { rows })
}

/// Oracle cross-checks for every point of the selected scenarios: the two
/// valley populations of (1,1,1) points for each mechanism with nonzero
/// weight, and the distorted mono-valley model of (1,0,0) points.
#[cfg(feature = "oracle")]
pub fn oracle_reports(cfg: &SweepConfig, only: Option<&str>) -> Result<Vec<crate::oracle::OracleReport>> {
    use crate::acoustic::Process;
    use crate::material::ValleySet;
    use crate::oracle::{oracle_acoustic, oracle_coulomb_with, oracle_hotfield_with, OracleOptions};

    let omega = cfg.photon_energy() / HBAR;
    let base = cfg.material.to_params()?;
    let axes = ValleySet::germanium();
    let (l1, l2) = (axes.axes()[0], axes.axes()[1]);
    let mut out = Vec::new();
    let valley_pair = |out: &mut Vec<crate::oracle::OracleReport>,
                           tag: String,
                           mat: &MaterialParams,
                           mech: Mechanism,
                           c: [f64; 4]|
     -> Result<()> {
        let (wa, wc) = mech.weights();
        let (t1, t2) = (kelvin_to_erg(c[1]), kelvin_to_erg(c[3]));
        let pops = [("valley 1", l1, c[0], t1), ("valley 2", l2, c[2], t2)];
        if wa > 0.0 {
            for (name, l, n, t) in pops {
                let mut r = oracle_acoustic(mat, &l, n, t, omega, &l1, Process::Emission)?;
                r.label = format!("{tag} {name}: {}", r.label);
                out.push(r);
            }
        }
        if wc > 0.0 {
            let carriers = CarrierState::field_111(c[0], t1, c[2], t2)?;
            let screening = ScreeningParams::from_carriers(&carriers, mat.chi0)?;
            for (name, l, n, t) in pops {
                let mut r = oracle_coulomb_with(
                    mat,
                    &l,
                    n,
                    t,
                    omega,
                    &l1,
                    &screening,
                    cfg.coulomb_brace,
                    Process::Emission,
                    &OracleOptions::default(),
                )?;
                r.label = format!("{tag} {name}: {}", r.label);
                out.push(r);
            }
        }
        Ok(())
    };
    for sc in cfg.scenarios.iter().filter(|s| only.is_none() || only == Some(s.name())) {
        match sc {
            Scenario::Field111 { mechanism, points, .. } => {
                for (i, p) in points.iter().enumerate() {
                    let tag = format!("{}[{i}]", sc.name());
                    valley_pair(&mut out, tag, &base, *mechanism, [p.n1_cm3, p.T1_K, p.n2_cm3, p.T2_K])?;
                }
            }
            Scenario::Field100 { points, .. } => {
                for (i, p) in points.iter().enumerate() {
                    let model = MonoValleyModel::from_multivalley(
                        &base,
                        p.n_cm3,
                        kelvin_to_erg(p.T_e_K),
                        volt_per_cm_to_cgs(p.field_V_per_cm),
                        0.0,
                    )?;
                    let mut r = oracle_hotfield_with(&model, omega, cfg.hotfield_bracket)?;
                    r.label = format!("{}[{i}]: {}", sc.name(), r.label);
                    out.push(r);
                }
            }
            Scenario::LatticeTempScan { points, .. } => {
                for (i, p) in points.iter().enumerate() {
                    let mat = cfg.material.to_params_at(p.lattice_temperature_K)?;
                    let mech = Mechanism::AutoMix {
                        acoustic_weight: p.acoustic_weight,
                        coulomb_weight: p.coulomb_weight,
                    };
                    let tag = format!("{}[{i}]", sc.name());
                    valley_pair(&mut out, tag, &mat, mech, [p.n1_cm3, p.T1_K, p.n2_cm3, p.T2_K])?;
                }
            }
        }
    }
    Ok(out)
}

fn point_error(scenario: usize, i: usize, e: Error) -> Error {
    match e {
        e @ (Error::Config { .. } | Error::QuadratureNonConvergence { .. }) => e,
        other => Error::Config {
            path: format!("scenarios[{scenario}].points[{i}]"),
            message: other.to_string(),
        },
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the table as RFC 4180 CSV (CRLF line ends, 17 significant digits).
pub fn write_csv<W: Write>(table: &SweepTable, out: W) -> Result<()> {
    if table.rows.is_empty() {
        return Err(Error::arg("table", "nothing to write"));
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in &table.rows {
        w.write_record([
            r.scenario.clone(),
            r.mechanism.clone(),
            r.point.to_string(),
            num(r.field_V_per_cm),
            num(r.lattice_temperature_K),
            num(r.n1_cm3),
            num(r.T1_K),
            num(r.n2_cm3),
            num(r.T2_K),
            num(r.phi_rad),
            num(r.a0),
            num(r.a2),
            num(r.emission),
        ])?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn emit_csv(table: &SweepTable, path: &Path) -> Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    write_csv(table, std::io::BufWriter::new(file)).map_err(|e| match e {
        Error::Csv(c) if c.is_io_error() => Error::Io {
            path: path.to_path_buf(),
            source: std::io::Error::other(c.to_string()),
        },
        other => other,
    })
}

pub fn write_json<W: Write>(table: &SweepTable, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, table)?;
    writeln!(out).map_err(|e| Error::Json(serde_json::Error::io(e)))?;
    Ok(())
}
