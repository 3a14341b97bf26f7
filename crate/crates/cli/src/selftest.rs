//! Quick invariant battery run by `vdw selftest`.

use std::f64::consts::PI;

use vdw_core::halfspace::{halfspace_ue, halfspace_um};
use vdw_core::pair::{bulk_pair_potential, corrected_medium_factors, freespace_pair_potential, BulkScene};
use vdw_core::quadrature::integrate_semi_infinite;
use vdw_core::response::{MaterialModel, Oscillator};
use vdw_core::specfun::{BesselSeq, LegendreTable};
use vdw_core::sphere::{sphere_uem, sphere_uem_small, sphere_ume};
use vdw_core::{AtomModel, HalfSpaceScene, QuadratureSpec, SphereScene, VdwError};

pub struct GroupResult {
    pub group: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = Result<(bool, String), VdwError>;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn dielectric() -> MaterialModel {
    MaterialModel::drude_lorentz(Some(Oscillator::new(3.0, 1.0, 0.001).unwrap()), None)
}

fn specfun() -> Check {
    let mut worst = 0.0f64;
    for &(n, x) in &[(0usize, 0.5), (3, 2.0), (20, 7.5), (60, 40.0)] {
        let s = BesselSeq::new(n, x)?;
        // i_n k_n (D_k - D_i) = x(i_n k_n' - i_n' k_n) = -1/x
        let w = (s.ln_i(n) + s.ln_k(n)).exp() * (s.d_third(n) - s.d_first(n));
        worst = worst.max(rel(-w, 1.0 / x));
    }
    let t = LegendreTable::new(30, 1.0)?;
    let leg = (1..=30).all(|n| (t.p(n) - 1.0).abs() < 1e-12 && rel(t.dp(n), (n * (n + 1)) as f64 / 2.0) < 1e-12);
    Ok((worst < 1e-12 && leg, format!("Wronskian {worst:.1e}, Legendre endpoints {}", if leg { "ok" } else { "off" })))
}

fn response() -> Check {
    let m = dielectric();
    let eps0 = m.eps_iu(0.0);
    let lf = m.lf_electric(0.0);
    Ok((rel(eps0, 10.0) < 1e-14 && rel(lf, 30.0 / 21.0) < 1e-14, format!("ε(0) = {eps0}, local-field factor {lf:.6}")))
}

fn quadrature() -> Check {
    let s = QuadratureSpec::new(1e-11, 0.0)?;
    let a = integrate_semi_infinite(|u| (-u).exp(), &s)?.value;
    let b = integrate_semi_infinite(|u| 1.0 / (1.0 + u * u), &s)?.value;
    let ok = (a - 1.0).abs() < 1e-10 && (b - PI / 2.0).abs() < 1e-10;
    Ok((ok, format!("∫e^-u = {a:.12}, ∫1/(1+u²) = {b:.12}")))
}

fn pair() -> Check {
    let s = QuadratureSpec::new(1e-10, 0.0)?;
    let a = AtomModel::new(1.0, 1.0, 1.0)?;
    let l = 200.0f64;
    let p = freespace_pair_potential(&a, &a, l, &s)?;
    let ee = p.u_ee * l.powi(7) / (-23.0 / (4.0 * PI));
    let em = p.u_em * l.powi(7) / (7.0 / (4.0 * PI));
    let host = MaterialModel::drude_lorentz(
        Some(Oscillator::new(2.0, 1.0, 0.1)?),
        Some(Oscillator::new(1.0, 0.5, 0.0)?),
    );
    let b = AtomModel::new(0.3, 0.8, 1.5)?;
    let scene = BulkScene::new(host, a, b, 0.4, true)?;
    let dual = rel(bulk_pair_potential(&scene.dual(), &s)?.total, bulk_pair_potential(&scene, &s)?.total);
    let f = corrected_medium_factors(1e6, 1e6).em;
    let ok = (ee - 1.0).abs() < 0.01 && (em - 1.0).abs() < 0.01 && dual < 1e-10 && (f - 81.0 / 16.0).abs() < 1e-4;
    Ok((ok, format!("retarded ratios {ee:.5}, {em:.5}; duality {dual:.1e}; mixed medium factor {f:.6}")))
}

fn halfspace() -> Check {
    let s = QuadratureSpec::new(1e-10, 0.0)?;
    let z = 200.0f64;
    let mirror = HalfSpaceScene::new(MaterialModel::perfect_mirror(), AtomModel::polarizable(1.0), z)?;
    let r = halfspace_ue(&mirror, &s)? / (-3.0 / (8.0 * PI * z.powi(4)));
    let sc = HalfSpaceScene::new(dielectric(), AtomModel::new(0.5, 0.7, 1.0)?, 0.2)?;
    let bits = halfspace_um(&sc, &s)?.to_bits() == halfspace_ue(&sc.dual(), &s)?.to_bits();
    Ok(((r - 1.0).abs() < 0.01 && bits, format!("mirror ratio {r:.5}; magnetic part is the dual electric part: {bits}")))
}

fn sphere() -> Check {
    let s = QuadratureSpec::new(1e-8, 0.0)?;
    let (a, b) = (AtomModel::new(1e-3, 0.0, 1.0)?, AtomModel::new(0.0, 1e-3, 1.0)?);
    let vac = SphereScene::new(MaterialModel::vacuum(), 1.0, a, b, 1.2, 1.5, 1.0)?;
    let m = sphere_uem(&vac, &s, None)?;
    let free = m.total == m.u0;
    let sc = SphereScene::new(dielectric(), 1.0, a, b, 1.3, 1.6, 0.8)?;
    let dual = rel(sphere_ume(&sc.dual(), &s, None)?.total, sphere_uem(&sc, &s, None)?.total);
    let small = SphereScene::new(dielectric(), 0.02, a, b, 1.0, 1.0, PI / 2.0)?;
    let m = sphere_uem(&small, &s, None)?;
    let lim = (m.u1 + m.u2) / sphere_uem_small(&small, &s)?;
    Ok((free && dual < 1e-9 && (lim - 1.0).abs() < 0.02, format!("vacuum sphere inert: {free}; duality {dual:.1e}; small-sphere ratio {lim:.4}")))
}

pub fn run_selftest() -> Vec<GroupResult> {
    let groups: [(&'static str, fn() -> Check); 6] = [
        ("specfun", specfun),
        ("response", response),
        ("quadrature", quadrature),
        ("pair", pair),
        ("halfspace", halfspace),
        ("sphere", sphere),
    ];
    groups
        .into_iter()
        .map(|(group, f)| match f() {
            Ok((passed, detail)) => GroupResult { group, passed, detail },
            Err(e) => GroupResult {
                group,
                passed: false,
                detail: format!("error: {e}"),
            },
        })
        .collect()
}
