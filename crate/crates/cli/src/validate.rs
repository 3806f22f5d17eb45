//! Self-checks of the numerical building blocks against independent
//! references, reported with measured errors.

use std::f64::consts::{FRAC_2_PI, PI, TAU};

use anyhow::anyhow;
use taperscat::forward::{
    eval_scattered, greens_rep_eval, greens_rep_eval_illuminated, mie_default_order, mie_series_reference,
    ForwardSolver,
};
use taperscat::geometry::BoundaryCurve;
use taperscat::incident::{pde_residual, PlaneWave, TaperForm, TaperedWave};
use taperscat::specfun::{bessel_j, bessel_j_orders, bessel_y, bessel_y_orders};
use taperscat::{Vec2, C64};

use crate::args::ValidateArgs;
use crate::{CliResult, Failure, Status};

/// A wavenumber where the unit disk has an interior Neumann eigenvalue
/// (first positive zero of J₀'), so the double-layer-only system is singular.
pub const RESONANT_K: f64 = 3.831_705_970_207_512;

struct Check {
    name: String,
    passed: bool,
    /// Informational checks are reported but do not affect the exit status.
    gating: bool,
    detail: String,
}

impl Check {
    fn gate(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Check {
            name: name.into(),
            passed,
            gating: true,
            detail,
        }
    }

    fn info(name: impl Into<String>, passed: bool, detail: String) -> Self {
        Check {
            name: name.into(),
            passed,
            gating: false,
            detail,
        }
    }
}

fn rel_l2(a: &[C64], b: &[C64]) -> f64 {
    let num: f64 = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum();
    let den: f64 = b.iter().map(|y| y.norm_sqr()).sum();
    (num / den).sqrt()
}

fn special_functions() -> Vec<Check> {
    let mut wr = 0.0f64;
    let mut rec = 0.0f64;
    for i in 0..=400 {
        let x = 0.1 * 2000f64.powf(i as f64 / 400.0);
        let j = bessel_j_orders(51, x);
        let y = bessel_y_orders(51, x).expect("positive argument");
        let exact = FRAC_2_PI / x;
        for n in 0..=50 {
            wr = wr.max((j[n + 1] * y[n] - j[n] * y[n + 1] - exact).abs() / exact);
        }
        for n in 1..=50 {
            let c = 2.0 * n as f64 / x;
            for v in [&j, &y] {
                let scale = v[n - 1].abs().max(v[n + 1].abs()).max((c * v[n]).abs());
                rec = rec.max((v[n - 1] + v[n + 1] - c * v[n]).abs() / scale);
            }
        }
    }
    let j_zero = bessel_j(0, 2.404_825_557_695_773).abs();
    let y_zero = bessel_y(0, 0.893_576_966_279_167_5)
        .map(f64::abs)
        .unwrap_or(f64::INFINITY);
    vec![
        Check::gate(
            "bessel wronskian",
            wr <= 1e-10,
            format!("max relative error {wr:.3e} (tol 1e-10)"),
        ),
        Check::gate(
            "bessel recurrence",
            rec <= 1e-9,
            format!("max relative error {rec:.3e} (tol 1e-9)"),
        ),
        Check::gate(
            "bessel zeros",
            j_zero <= 1e-10 && y_zero <= 1e-9,
            format!("|J0(j01)| = {j_zero:.3e} (tol 1e-10), |Y0(y01)| = {y_zero:.3e} (tol 1e-9)"),
        ),
    ]
}

fn mie(eta: Option<f64>) -> Vec<Check> {
    let circle = BoundaryCurve::circle(1.0);
    let d = Vec2::new(0.6, 0.8);
    let receivers: Vec<Vec2> = (0..64)
        .map(|i| Vec2::from_angle(TAU * i as f64 / 64.0) * 5.0)
        .collect();
    [5.0, 25.0, RESONANT_K]
        .into_iter()
        .map(|k| {
            let name = format!("mie k={k}");
            let solver = ForwardSolver::with_eta(std::slice::from_ref(&circle), k, 256, eta.unwrap_or(k));
            let result = solver.and_then(|s| {
                let sol = s.solve(&PlaneWave::new(k, d))?;
                let order = mie_default_order(k, 1.0);
                let mut got = Vec::new();
                let mut want = Vec::new();
                for &x in &receivers {
                    got.push(eval_scattered(&sol, x)?);
                    want.push(mie_series_reference(1.0, k, d, x, order)?);
                }
                Ok((rel_l2(&got, &want), s.condition()))
            });
            match result {
                Ok((err, cond)) => Check::gate(
                    name,
                    err <= 1e-6,
                    format!("relative l2 error {err:.3e} (tol 1e-6), condition {cond:.2e}"),
                ),
                Err(e) => Check::gate(name, false, format!("solver failed: {e}")),
            }
        })
        .collect()
}

/// Deterministic scatter of `(incidence angle, along-beam offset, across-beam
/// offset in widths)` inside tapered beams. Angles stay between 0.1 and 0.6
/// off the vertical: never axis-aligned, and wide enough beams for the
/// stencil to resolve.
fn beam_samples(count: usize) -> Vec<(f64, f64, f64)> {
    let golden = 0.5 * (5f64.sqrt() - 1.0);
    (0..count)
        .map(|i| {
            let f = |a: f64| (0.5 + i as f64 * a).fract();
            let sign = if (i / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let theta = sign * (0.1 + 0.5 * f(3f64.sqrt())) + PI * (i % 2) as f64;
            (theta, f(golden) - 0.5, 6.0 * f(2f64.sqrt()) - 3.0)
        })
        .collect()
}

fn pde(form: TaperForm) -> anyhow::Result<(f64, f64)> {
    let (k, g) = (25.0, 0.1);
    let mut coarse = 0.0f64;
    let mut fine = 0.0f64;
    for (theta, along, across) in beam_samples(50) {
        let beam = TaperedWave::from_angle(k, g, theta)?.with_form(form);
        let x = beam.d * along + beam.d_perp * (across * beam.lambda);
        if beam.envelope(x) < 1e-12 {
            return Err(anyhow!("sample outside the beam"));
        }
        coarse = coarse.max(pde_residual(&beam, x, 1e-3)?);
        fine = fine.max(pde_residual(&beam, x, 1e-4)?);
    }
    Ok((fine, (coarse / fine).log10()))
}

fn pde_checks() -> Vec<Check> {
    let mut out = Vec::new();
    for (form, gating) in [(TaperForm::PhaseModulated, true), (TaperForm::Printed, false)] {
        let name = format!("beam pde residual ({})", form.name());
        let check = match pde(form) {
            Ok((res, order)) => {
                let ok = res <= 1e-3 && order >= 1.8;
                let detail = format!(
                    "max residual {res:.3e} at h=1e-4 (tol 1e-3), observed order {order:.2} (min 1.8)"
                );
                if gating {
                    Check::gate(name, ok, detail)
                } else {
                    Check::info(name, ok, detail)
                }
            }
            Err(e) => Check::gate(name, false, e.to_string()),
        };
        out.push(check);
    }
    out
}

fn green() -> Vec<Check> {
    let run = || -> taperscat::Result<(f64, f64)> {
        let circle = BoundaryCurve::circle(1.0);
        let beam = TaperedWave::from_angle(25.0, 0.01, 0.6)?;
        let solver = ForwardSolver::new(std::slice::from_ref(&circle), 25.0, 512)?;
        let sol = solver.solve(&beam)?;
        let mut direct = Vec::new();
        let mut full = Vec::new();
        let mut arc = Vec::new();
        for i in 0..16 {
            let x = Vec2::from_angle(TAU * i as f64 / 16.0 + 0.1) * 2.0;
            direct.push(eval_scattered(&sol, x)?);
            full.push(greens_rep_eval(&sol, x)?);
            arc.push(greens_rep_eval_illuminated(&sol, &beam, x, 1e-3)?);
        }
        Ok((rel_l2(&full, &direct), rel_l2(&arc, &direct)))
    };
    match run() {
        Ok((full, arc)) => vec![
            Check::gate(
                "green representation",
                full <= 1e-6,
                format!("relative error {full:.3e} (tol 1e-6)"),
            ),
            Check::info(
                "green representation (illuminated arc)",
                arc <= 0.05,
                format!("relative error {arc:.3e} (tol 5e-2)"),
            ),
        ],
        Err(e) => vec![Check::gate("green representation", false, e.to_string())],
    }
}

pub fn run(args: ValidateArgs) -> CliResult<()> {
    if let Some(eta) = args.debug_eta {
        if !eta.is_finite() {
            return Err(Failure::usage(anyhow!("--debug-eta must be finite")));
        }
        println!("note: forward check uses eta = {eta} instead of eta = k");
    }
    let mut checks = special_functions();
    checks.extend(mie(args.debug_eta));
    checks.extend(pde_checks());
    checks.extend(green());

    let mut failed = Vec::new();
    for c in &checks {
        let tag = match (c.passed, c.gating) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "INFO",
        };
        println!("{tag} {}: {}", c.name, c.detail);
        if c.gating && !c.passed {
            failed.push(c.name.clone());
        }
    }
    if failed.is_empty() {
        println!("all checks passed");
        Ok(())
    } else {
        Err(Failure {
            status: Status::ValidationFailed,
            error: anyhow!("failed checks: {}", failed.join(", ")),
        })
    }
}
