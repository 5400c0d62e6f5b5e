//! Brute-force evaluators of the momentum-space integrals behind the closed
//! forms. Each run integrates over the initial and final electron momenta
//! with tensor-product Gauss rules, doubling the node counts until two
//! successive levels agree, and reports the comparison with the closed form.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acoustic::{acoustic_w_cos2, delta_p_acoustic, Process};
use crate::coulomb::{coulomb_integral, coulomb_p, BraceIntegrand, BraceMode, ScreeningParams};
use crate::error::{require_positive, Error, Result};
use crate::hotfield::{emission_distorted_with, BracketForm, MonoValleyModel};
use crate::material::{MaterialParams, RadiationQuery};
use crate::quad::{integrate_semi_infinite, GaussLegendre, Tolerance};
use crate::specfun::p2;
use crate::units::{C, E0, HBAR};
use crate::vector::{UnitVec3, Vec3};

/// Upper end of the reduced momentum u = p/√(2mT) of the lower-energy state.
const U_MAX: f64 = 7.5;
const T_MIN: f64 = 2e-5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub label: String,
    pub closed_form: f64,
    pub brute_force: f64,
    pub error_estimate: f64,
    pub relative_discrepancy: f64,
    pub samples_or_nodes: u64,
}

impl OracleReport {
    pub fn new(label: impl Into<String>, closed_form: f64, brute_force: f64, error_estimate: f64, nodes: u64) -> Self {
        let scale = closed_form.abs().max(brute_force.abs());
        let relative_discrepancy = if scale > 0.0 {
            (closed_form - brute_force).abs() / scale
        } else {
            0.0
        };
        Self {
            label: label.into(),
            closed_form,
            brute_force,
            error_estimate: error_estimate.max(f64::EPSILON * brute_force.abs()).max(f64::MIN_POSITIVE),
            relative_discrepancy,
            samples_or_nodes: nodes,
        }
    }

    pub fn agrees_within(&self, rel: f64) -> bool {
        self.relative_discrepancy <= rel
    }

    /// Relative error estimate of the brute-force value.
    pub fn relative_error(&self) -> f64 {
        self.error_estimate / self.brute_force.abs()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleOptions {
    /// Target for |I_L − I_{L−1}|/|I_L|.
    pub rel_tol: f64,
    /// Last refinement level tried; each level doubles every node count.
    pub max_level: u32,
}

impl Default for OracleOptions {
    fn default() -> Self {
        Self {
            rel_tol: 5e-3,
            max_level: 3,
        }
    }
}

/// Sum with a fixed binary tree, independent of how the terms were produced.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= 8 {
        return xs.iter().sum();
    }
    let (l, r) = xs.split_at(xs.len() / 2);
    pairwise_sum(l) + pairwise_sum(r)
}

struct SphereRule {
    dirs: Vec<[f64; 3]>,
    weights: Vec<f64>,
}

impl SphereRule {
    /// Gauss in cos θ times trapezoid in φ.
    fn new(n_theta: usize) -> Self {
        let gl = GaussLegendre::new(n_theta);
        let n_phi = 2 * n_theta;
        let dphi = 2.0 * PI / n_phi as f64;
        let mut dirs = Vec::with_capacity(n_theta * n_phi);
        let mut weights = Vec::with_capacity(n_theta * n_phi);
        for (ct, w) in gl.mapped(-1.0, 1.0) {
            let st = (1.0 - ct * ct).max(0.0).sqrt();
            for j in 0..n_phi {
                let ph = (j as f64 + 0.5) * dphi;
                dirs.push([st * ph.cos(), st * ph.sin(), ct]);
                weights.push(w * dphi);
            }
        }
        Self { dirs, weights }
    }
}

/// Directions relative to a pole: t = 1 − cos χ on graded panels toward 0,
/// trapezoid in the azimuth ψ.
struct RelativeRule {
    /// (cos χ, sin χ, weight in t)
    polar: Vec<(f64, f64, f64)>,
    azimuth: Vec<(f64, f64)>,
    dpsi: f64,
}

impl RelativeRule {
    fn new(level: u32) -> Self {
        let panels = 5 << level;
        let gl = GaussLegendre::new(6);
        let edge = |j: usize| 2.0 * T_MIN.powf(1.0 - j as f64 / panels as f64);
        let mut polar = Vec::new();
        let mut push = |lo: f64, hi: f64| {
            for (t, w) in gl.mapped(lo, hi) {
                let c = 1.0 - t;
                polar.push((c, (t * (2.0 - t)).max(0.0).sqrt(), w));
            }
        };
        push(0.0, edge(0));
        for j in 0..panels {
            push(edge(j), edge(j + 1));
        }
        let n_psi = 12 << level;
        let dpsi = 2.0 * PI / n_psi as f64;
        let azimuth = (0..n_psi)
            .map(|j| {
                let s = (j as f64 + 0.5) * dpsi;
                (s.cos(), s.sin())
            })
            .collect();
        Self { polar, azimuth, dpsi }
    }

    fn len(&self) -> usize {
        self.polar.len() * self.azimuth.len()
    }
}

fn frame(n: &[f64; 3]) -> ([f64; 3], [f64; 3]) {
    let v = Vec3(*n);
    let helper = if n[2].abs() < 0.9 { Vec3::new(0.0, 0.0, 1.0) } else { Vec3::new(1.0, 0.0, 0.0) };
    let e1 = helper.cross(&v).normalized().expect("nonzero cross product").vec();
    (e1.0, v.cross(&e1).0)
}

#[derive(Clone, Copy, PartialEq)]
enum InnerRule {
    Absolute,
    Relative,
}

/// ∫₀^∞ du u²v e^{−u²} ∫dΩ ∫dΩ′ F(δ) with v = √(u² + 2a).
///
/// For absorption the electron goes from u·n to v·n′, for emission from
/// v·n to u·n′ (and the Maxwell weight becomes e^{−v²}); δ is the final
/// minus the initial reduced momentum.
fn shell_pair<F>(a: f64, process: Process, level: u32, inner: InnerRule, f: &F) -> (f64, u64)
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    let radial = GaussLegendre::new(8).composite(0.0, U_MAX, 3 << level);
    let outer = SphereRule::new(6 << level);
    let abs_inner = SphereRule::new(6 << level);
    let rel_inner = RelativeRule::new(level);
    let inner_len = match inner {
        InnerRule::Absolute => abs_inner.dirs.len(),
        InnerRule::Relative => rel_inner.len(),
    };
    let terms: Vec<f64> = radial
        .par_iter()
        .map(|&(u, wu)| {
            let v = (u * u + 2.0 * a).sqrt();
            let (r_in, r_out, maxwell) = match process {
                Process::Absorption => (u, v, (-u * u).exp()),
                Process::Emission => (v, u, (-v * v).exp()),
            };
            let mut acc = 0.0;
            for (n, &wn) in outer.dirs.iter().zip(&outer.weights) {
                let p = [r_in * n[0], r_in * n[1], r_in * n[2]];
                let mut inner_sum = 0.0;
                match inner {
                    InnerRule::Absolute => {
                        for (m, &wm) in abs_inner.dirs.iter().zip(&abs_inner.weights) {
                            inner_sum += wm * f([r_out * m[0] - p[0], r_out * m[1] - p[1], r_out * m[2] - p[2]]);
                        }
                    }
                    InnerRule::Relative => {
                        let (e1, e2) = frame(n);
                        for &(c, s, wt) in &rel_inner.polar {
                            let mut ring = 0.0;
                            for &(cp, sp) in &rel_inner.azimuth {
                                let mut d = [0.0; 3];
                                for k in 0..3 {
                                    d[k] = r_out * (c * n[k] + s * (cp * e1[k] + sp * e2[k])) - p[k];
                                }
                                ring += f(d);
                            }
                            inner_sum += wt * rel_inner.dpsi * ring;
                        }
                    }
                }
                acc += wn * inner_sum;
            }
            wu * u * u * v * maxwell * acc
        })
        .collect();
    let nodes = (radial.len() * outer.dirs.len() * inner_len) as u64;
    (pairwise_sum(&terms), nodes)
}

/// Runs levels 0, 1, … until two successive values agree to `opts.rel_tol`.
fn refine<G>(opts: &OracleOptions, mut eval: G) -> Result<(f64, f64, u64)>
where
    G: FnMut(u32) -> (f64, u64),
{
    require_positive("rel_tol", opts.rel_tol)?;
    let (mut prev, mut nodes) = eval(0);
    let mut est = f64::INFINITY;
    for level in 1..=opts.max_level {
        let (cur, n) = eval(level);
        nodes = n;
        est = (cur - prev).abs();
        if est <= opts.rel_tol * cur.abs() {
            return Ok((cur, est, nodes));
        }
        prev = cur;
    }
    Err(Error::OracleNonConvergence {
        target: opts.rel_tol,
        estimate: est / prev.abs(),
        nodes: nodes as usize,
    })
}

/// Valley-frame components (along e₁, e₂, l) of the polarization and the
/// reduced-to-lab momentum scalings √m⊥, √m⊥, √m∥.
struct ValleyGeometry {
    g: [f64; 3],
    sqrt_m: [f64; 3],
    m_perp: f64,
    m_par: f64,
}

impl ValleyGeometry {
    fn new(mat: &MaterialParams, valley: &UnitVec3, g0: &UnitVec3) -> Self {
        let (e1, e2) = valley.orthonormal_frame();
        let g = g0.vec();
        Self {
            g: [e1.vec().dot(&g), e2.vec().dot(&g), valley.vec().dot(&g)],
            sqrt_m: [mat.m_perp.sqrt(), mat.m_perp.sqrt(), mat.m_par.sqrt()],
            m_perp: mat.m_perp,
            m_par: mat.m_par,
        }
    }

    /// Lab-frame momentum change for a reduced change δ (units of √(2T)).
    fn dp(&self, d: [f64; 3]) -> [f64; 3] {
        [self.sqrt_m[0] * d[0], self.sqrt_m[1] * d[1], self.sqrt_m[2] * d[2]]
    }

    /// Σ_α g_α Δp_α (m⊥/m_α).
    fn gamma(&self, dp: [f64; 3]) -> f64 {
        self.g[0] * dp[0] + self.g[1] * dp[1] + self.g[2] * dp[2] * self.m_perp / self.m_par
    }
}

/// Brute-force ΔP(±) for acoustic scattering with unit vector-potential
/// amplitude, compared with [`delta_p_acoustic`].
///
/// The scattering weight is built from the deformation potentials, so the
/// closed form is evaluated with the matching relaxation times.
#[allow(clippy::too_many_arguments)]
pub fn oracle_acoustic(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    process: Process,
) -> Result<OracleReport> {
    oracle_acoustic_with(mat, valley, n, t_e, omega, g0, process, &OracleOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn oracle_acoustic_with(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    process: Process,
    opts: &OracleOptions,
) -> Result<OracleReport> {
    require_positive("n", n)?;
    require_positive("T_e", t_e)?;
    require_positive("omega", omega)?;
    let consistent = (*mat).with_deformation_relaxation_times()?;
    let q = RadiationQuery::new(omega, *g0)?;
    let closed = delta_p_acoustic(&consistent, valley, n, t_e, &q, 1.0, process)?;

    let hw = HBAR * omega;
    let a = 0.5 * hw / t_e;
    let geo = ValleyGeometry::new(mat, valley, g0);
    let f = |d: [f64; 3]| {
        let dp = geo.dp(d);
        let dp2 = dp[0] * dp[0] + dp[1] * dp[1] + dp[2] * dp[2];
        let c2 = if dp2 > 0.0 { dp[2] * dp[2] / dp2 } else { 0.0 };
        let gam = geo.gamma(dp);
        acoustic_w_cos2(mat, c2) * gam * gam
    };
    let (s, est, nodes) = refine(opts, |level| shell_pair(a, process, level, InnerRule::Absolute, &f))?;
    let sign = match process {
        Process::Absorption => 1.0,
        Process::Emission => -1.0,
    };
    let jac = mat.m_perp * mat.m_par.sqrt();
    // γ² above is (Σ g_α Δp_α m⊥/m_α)² in units of 2T; the wavevector brings 1/ħ²
    let pre = sign * hw * jac * n / (2.0 * PI * t_e).powf(1.5)
        * (2.0 * t_e).powi(2)
        * (E0 / (2.0 * mat.m_perp * omega * C * HBAR)).powi(2)
        * (2.0 * t_e);
    Ok(OracleReport::new(
        format!("acoustic {}", process_label(process)),
        closed,
        pre * s,
        pre.abs() * est,
        nodes,
    ))
}

fn process_label(p: Process) -> &'static str {
    match p {
        Process::Absorption => "absorption",
        Process::Emission => "emission",
    }
}

/// Brute-force P(±) for screened impurity scattering (unit amplitude); the
/// closed form is the x-integral with the given brace.
#[allow(clippy::too_many_arguments)]
pub fn oracle_coulomb(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    screening: &ScreeningParams,
    brace: BraceMode,
) -> Result<OracleReport> {
    oracle_coulomb_with(mat, valley, n, t_e, omega, g0, screening, brace, Process::Absorption, &OracleOptions::default())
}

#[allow(clippy::too_many_arguments)]
pub fn oracle_coulomb_with(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    screening: &ScreeningParams,
    brace: BraceMode,
    process: Process,
    opts: &OracleOptions,
) -> Result<OracleReport> {
    let (bf, est, nodes) = coulomb_brute_force(mat, valley, n, t_e, omega, g0, screening, process, opts)?;
    let q = RadiationQuery::new(omega, *g0)?;
    let closed = coulomb_p(mat, valley, n, t_e, &q, screening, 1.0, process, brace)?;
    Ok(OracleReport::new(
        format!("coulomb {} ({})", process_label(process), brace_label(brace)),
        closed,
        bf,
        est,
        nodes,
    ))
}

fn brace_label(b: BraceMode) -> &'static str {
    match b {
        BraceMode::Sum => "sum",
        BraceMode::Difference => "difference",
    }
}

#[allow(clippy::too_many_arguments)]
fn coulomb_brute_force(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    screening: &ScreeningParams,
    process: Process,
    opts: &OracleOptions,
) -> Result<(f64, f64, u64)> {
    mat.validate()?;
    require_positive("n", n)?;
    require_positive("T_e", t_e)?;
    require_positive("omega", omega)?;
    let hw = HBAR * omega;
    let a = 0.5 * hw / t_e;
    let geo = ValleyGeometry::new(mat, valley, g0);
    // (ħ/r_D)² in units of 2T
    let screen = (HBAR / screening.r_d).powi(2) / (2.0 * t_e);
    let f = |d: [f64; 3]| {
        let dp = geo.dp(d);
        let dp2 = dp[0] * dp[0] + dp[1] * dp[1] + dp[2] * dp[2];
        let gam = geo.gamma(dp);
        let den = dp2 + screen;
        gam * gam / (den * den)
    };
    let (s, est, nodes) = refine(opts, |level| shell_pair(a, process, level, InnerRule::Relative, &f))?;
    let sign = match process {
        Process::Absorption => 1.0,
        Process::Emission => -1.0,
    };
    let jac = mat.m_perp * mat.m_par.sqrt();
    let pre = sign * hw * 4.0 * E0.powi(4) * mat.n_d / (mat.chi0 * mat.chi0) * jac * n
        / (2.0 * PI * t_e).powf(1.5)
        * (2.0 * t_e).powi(2)
        * (E0 / (2.0 * mat.m_perp * omega * C * HBAR)).powi(2)
        * (2.0 * t_e)
        / (2.0 * t_e).powi(2);
    Ok((pre * s, pre.abs() * est, nodes))
}

/// Outcome of comparing both brace readings with one brute-force run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BraceAdjudication {
    pub sum: OracleReport,
    pub difference: OracleReport,
    pub tolerance: f64,
    /// The reading that agrees within `tolerance`, when exactly one does.
    pub selected: Option<BraceMode>,
}

#[allow(clippy::too_many_arguments)]
pub fn adjudicate_brace(
    mat: &MaterialParams,
    valley: &UnitVec3,
    n: f64,
    t_e: f64,
    omega: f64,
    g0: &UnitVec3,
    screening: &ScreeningParams,
    tolerance: f64,
) -> Result<BraceAdjudication> {
    let opts = OracleOptions::default();
    let (bf, est, nodes) = coulomb_brute_force(mat, valley, n, t_e, omega, g0, screening, Process::Absorption, &opts)?;
    let q = RadiationQuery::new(omega, *g0)?;
    let report = |brace| -> Result<OracleReport> {
        let cf = coulomb_p(mat, valley, n, t_e, &q, screening, 1.0, Process::Absorption, brace)?;
        Ok(OracleReport::new(format!("coulomb brace {}", brace_label(brace)), cf, bf, est, nodes))
    };
    let sum = report(BraceMode::Sum)?;
    let difference = report(BraceMode::Difference)?;
    let selected = match (sum.agrees_within(tolerance), difference.agrees_within(tolerance)) {
        (true, false) => Some(BraceMode::Sum),
        (false, true) => Some(BraceMode::Difference),
        _ => None,
    };
    Ok(BraceAdjudication {
        sum,
        difference,
        tolerance,
        selected,
    })
}

/// Monte Carlo estimate of the x-integral with x = t², t half-normal;
/// `error_estimate` is the standard error.
#[allow(clippy::too_many_arguments)]
pub fn monte_carlo_coulomb_integral(
    mat: &MaterialParams,
    t_e: f64,
    hw: f64,
    cos2: f64,
    screening: &ScreeningParams,
    brace: BraceMode,
    samples: u64,
    seed: u64,
) -> Result<OracleReport> {
    if !(0.0..=1.0).contains(&cos2) {
        return Err(Error::arg("cos2", format!("must lie in [0, 1], got {cos2}")));
    }
    if samples < 2 {
        return Err(Error::arg("samples", "need at least two samples"));
    }
    let kern = BraceIntegrand::new(mat, t_e, hw, screening, brace)?;
    let closed = coulomb_integral(mat, t_e, hw, screening, brace, Tolerance::relative(1e-10))?.value(cos2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid normal");
    let (mut sum, mut sum2) = (0.0, 0.0);
    for _ in 0..samples {
        let t: f64 = normal.sample(&mut rng);
        let x = t * t;
        let (s1, s2) = kern.terms(x);
        let y = PI.sqrt() * ((1.0 - cos2) * s1 + cos2 * s2) / (x + kern.w).sqrt();
        sum += y;
        sum2 += y * y;
    }
    let nf = samples as f64;
    let mean = sum / nf;
    let var = (sum2 / nf - mean * mean).max(0.0) * nf / (nf - 1.0);
    Ok(OracleReport::new("coulomb x-integral (monte carlo)", closed, mean, (var / nf).sqrt(), samples))
}

/// Brute-force emission of the mono-valley model with f₀ + f₁P₁ + f₂P₂,
/// compared with the default closed form.
pub fn oracle_hotfield(model: &MonoValleyModel, omega: f64) -> Result<OracleReport> {
    oracle_hotfield_with(model, omega, BracketForm::default())
}

pub fn oracle_hotfield_with(model: &MonoValleyModel, omega: f64, form: BracketForm) -> Result<OracleReport> {
    require_positive("omega", omega)?;
    let closed = emission_distorted_with(model, omega, form)?.total;
    let hw = HBAR * omega;
    let m = model.m;
    let ef = E0 * model.field;
    let g = [model.theta0.sin(), 0.0, model.theta0.cos()];

    let g_of_p = |p: f64| {
        let eps = p * p / (2.0 * m);
        model.tau(eps) / p * (-p / (m * model.t_e)) * model.f0(eps)
    };
    let f2 = |p: f64| {
        let h = 1e-3 * p;
        let d = (g_of_p(p - 2.0 * h) - 8.0 * g_of_p(p - h) + 8.0 * g_of_p(p + h) - g_of_p(p + 2.0 * h)) / (12.0 * h);
        2.0 / 3.0 * ef * ef * model.tau(p * p / (2.0 * m)) * p * d
    };
    let f1 = |p: f64| {
        let eps = p * p / (2.0 * m);
        ef * model.tau(eps) * p / (m * model.t_e) * model.f0(eps)
    };

    let run = |n_theta: usize| -> Result<(f64, f64, u64)> {
        let sphere = SphereRule::new(n_theta);
        let pt = (2.0 * m * model.t_e).sqrt();
        let r = integrate_semi_infinite(
            |s| {
                if s == 0.0 {
                    return 0.0;
                }
                let eps = hw + model.t_e * s * s;
                let p = (2.0 * m * eps).sqrt();
                let pf = pt * s;
                let (a0, a1, a2) = (model.f0(eps), f1(p), f2(p));
                let mut acc = 0.0;
                for (n, &wn) in sphere.dirs.iter().zip(&sphere.weights) {
                    let mu = n[2];
                    let f = a0 + a1 * mu + a2 * p2(mu);
                    let gp = p * (g[0] * n[0] + g[1] * n[1] + g[2] * n[2]);
                    let mut inner = 0.0;
                    for (k, &wk) in sphere.dirs.iter().zip(&sphere.weights) {
                        let gq = pf * (g[0] * k[0] + g[1] * k[1] + g[2] * k[2]) - gp;
                        inner += wk * gq * gq;
                    }
                    acc += wn * f * inner;
                }
                // d³p = m p dε, dε = 2T s ds, final-state factor m p′
                m * p * 2.0 * model.t_e * s * m * pf * acc
            },
            Tolerance::relative(1e-10),
        )?;
        let n = (r.evaluations * sphere.dirs.len() * sphere.dirs.len()) as u64;
        Ok((r.value, r.abs_error, n))
    };
    let (coarse, _, _) = run(6)?;
    let (fine, radial_err, nodes) = run(12)?;
    let w = model.scattering_weight();
    // −P(−)/A² · ħω/(π²c)
    let pre = hw * w * (E0 / (2.0 * m * omega * C * HBAR)).powi(2) * hw / (PI * PI * C);
    let est = (fine - coarse).abs() + radial_err;
    Ok(OracleReport::new("hotfield emission", closed, pre * fine, pre * est, nodes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::material::ValleySet;
    use crate::units::kelvin_to_erg;

    #[test]
    fn pairwise_matches_naive() {
        let xs: Vec<f64> = (1..=1000).map(|i| 1.0 / i as f64).collect();
        let naive: f64 = xs.iter().sum();
        assert!((pairwise_sum(&xs) - naive).abs() < 1e-12);
        assert_eq!(pairwise_sum(&[]), 0.0);
    }

    #[test]
    fn report_discrepancy() {
        let r = OracleReport::new("x", 1.0, 1.01, 0.0, 10);
        assert!((r.relative_discrepancy - 0.01 / 1.01).abs() < 1e-15);
        assert!(r.error_estimate > 0.0);
        assert!(r.agrees_within(0.01) && !r.agrees_within(0.009));
        let json = serde_json::to_string(&r).unwrap();
        let back: OracleReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn sphere_rule_integrates_quadratics() {
        let s = SphereRule::new(6);
        let area: f64 = s.weights.iter().sum();
        assert!((area - 4.0 * PI).abs() < 1e-12);
        let zz: f64 = s.dirs.iter().zip(&s.weights).map(|(d, w)| w * d[2] * d[2]).sum();
        assert!((zz - 4.0 * PI / 3.0).abs() < 1e-12);
        let r = RelativeRule::new(0);
        let t: f64 = r.polar.iter().map(|p| p.2).sum();
        assert!((t * r.dpsi * r.azimuth.len() as f64 - 4.0 * PI).abs() < 1e-12);
    }

    fn beta_model(beta: f64, theta0: f64) -> MonoValleyModel {
        let mat = MaterialParams::n_ge();
        let base = MonoValleyModel::from_multivalley(&mat, 1e14, kelvin_to_erg(10.0), 0.0, theta0).unwrap();
        let field = (6.0 * beta * base.m * base.t_e.powi(2) / base.t_lattice).sqrt() / (E0 * base.tau0);
        MonoValleyModel::new(base.m, base.tau0, field, theta0, base.n, base.t_e, base.t_lattice).unwrap()
    }

    #[test]
    fn hotfield_oracle_agrees() {
        let m = beta_model(0.1, 0.4);
        assert!((m.beta() - 0.1).abs() < 1e-12);
        let omega = 2.0 * m.t_e / HBAR;
        let r = oracle_hotfield(&m, omega).unwrap();
        assert!(r.relative_discrepancy < 1e-6, "{r:?}");
        let printed = oracle_hotfield_with(&m, omega, BracketForm::Printed).unwrap();
        assert!(printed.relative_discrepancy > 0.01);
    }

    #[test]
    fn hotfield_magic_angle_and_zero_field() {
        let magic = (1.0f64 / 3.0).sqrt().acos();
        let m = beta_model(0.1, magic);
        let omega = m.t_e / HBAR;
        let r = oracle_hotfield(&m, omega).unwrap();
        let zero = beta_model(1e-30, magic);
        let r0 = oracle_hotfield(&zero, omega).unwrap();
        assert!((r.brute_force - r0.brute_force).abs() <= r.error_estimate);
        assert!(r0.relative_discrepancy < 1e-3);
    }

    #[test]
    fn monte_carlo_x_integral() {
        let mat = MaterialParams::n_ge();
        let t = kelvin_to_erg(20.0);
        let scr = ScreeningParams::from_density(1e15, t, mat.chi0).unwrap();
        let r = monte_carlo_coulomb_integral(&mat, t, t, 0.4, &scr, BraceMode::Sum, 200_000, 3).unwrap();
        assert!(r.relative_discrepancy < 5.0 * r.relative_error().max(1e-4), "{r:?}");
        let again = monte_carlo_coulomb_integral(&mat, t, t, 0.4, &scr, BraceMode::Sum, 200_000, 3).unwrap();
        assert_eq!(r, again);
        assert!(monte_carlo_coulomb_integral(&mat, t, t, 1.5, &scr, BraceMode::Sum, 10, 3).is_err());
    }

    #[test]
    fn acoustic_oracle_at_a_one() {
        let mat = MaterialParams::n_ge();
        let l = ValleySet::germanium().axes()[0];
        let g = UnitVec3::from_components(0.2, -0.5, 1.0).unwrap();
        let t = mat.t_lattice;
        let r = oracle_acoustic(&mat, &l, 1e14, t, 2.0 * t / HBAR, &g, Process::Absorption).unwrap();
        assert!(r.relative_discrepancy < 5e-3, "{r:?}");
        assert!(r.closed_form > 0.0 && r.brute_force > 0.0);
    }

    #[test]
    fn non_convergence_is_reported() {
        let mat = MaterialParams::n_ge();
        let l = ValleySet::germanium().axes()[0];
        let t = mat.t_lattice;
        let opts = OracleOptions {
            rel_tol: 1e-12,
            max_level: 1,
        };
        let e = oracle_acoustic_with(&mat, &l, 1e14, t, 2.0 * t / HBAR, &l, Process::Emission, &opts).unwrap_err();
        assert_eq!(e.kind(), "oracle-non-convergence");
    }
}
