//! Evaluation of configured scenes and CSV emission.

use std::fmt::Write as _;

use rayon::prelude::*;
use vdw_core::halfspace::halfspace_ue_with_error;
use vdw_core::pair::{bulk_pair_potential, freespace_pair_potential};
use vdw_core::sphere::{sphere_uem, sphere_ume};
use vdw_core::QuadratureSpec;

use crate::config::{Point, RunConfig, Scene, SceneKind};
use crate::CliError;

/// CSV header and rows, in sweep order.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Rows where the atoms coincide; their potential columns are NaN.
    pub coincident: usize,
}

impl Table {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }

    /// RFC 4180 text with shortest round-trip number formatting.
    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push_str("\r\n");
        for row in &self.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write!(out, "{v:e}").unwrap();
            }
            out.push_str("\r\n");
        }
        out
    }
}

fn base_columns(kind: SceneKind) -> &'static [&'static str] {
    match kind {
        SceneKind::Freespace | SceneKind::Bulk => &["l", "u_ee", "u_em", "u_me", "u_mm", "total", "err_estimate"],
        SceneKind::Halfspace => &["z", "u_e", "u_m", "total", "err_estimate"],
        SceneKind::Sphere => &[
            "theta",
            "u_ee_0",
            "u_em_0",
            "u_me_0",
            "u_mm_0",
            "u_em_total",
            "u_me_total",
            "ratio_em",
            "err_estimate",
        ],
    }
}

fn evaluate(scene: &Scene, spec: &QuadratureSpec, n_max: Option<usize>) -> Result<Vec<f64>, CliError> {
    Ok(match scene {
        Scene::Freespace(s) | Scene::Bulk(s) => {
            let p = bulk_pair_potential(s, spec)?;
            vec![s.separation, p.u_ee, p.u_em, p.u_me, p.u_mm, p.total, p.errors.total()]
        }
        Scene::Halfspace(s) => {
            let (ue, err_e) = halfspace_ue_with_error(s, spec)?;
            // the magnetic part is the electric part of the dual scene
            let (um, err_m) = halfspace_ue_with_error(&s.dual(), spec)?;
            vec![s.z, ue, um, ue + um, err_e + err_m]
        }
        Scene::Sphere(s) => {
            let free = freespace_pair_potential(&s.atom_a, &s.atom_b, s.separation(), spec)?;
            let em = sphere_uem(s, spec, n_max)?;
            let me = sphere_ume(s, spec, n_max)?;
            let err = free.errors.ee + free.errors.mm + em.err_estimate + me.err_estimate;
            vec![
                s.theta,
                free.u_ee,
                free.u_em,
                free.u_me,
                free.u_mm,
                em.total,
                me.total,
                em.total / em.u0,
                err,
            ]
        }
    })
}

/// Evaluate every point of the run. `threads = None` uses the global pool.
pub fn run(config: &RunConfig, threads: Option<usize>) -> Result<Table, CliError> {
    let kind = config.params.kind();
    let base = base_columns(kind);
    let mut header: Vec<String> = base.iter().map(|s| s.to_string()).collect();
    let extra = config.sweep.as_ref().and_then(|sw| {
        let short = sw.variable.strip_prefix(kind.namespace()).and_then(|s| s.strip_prefix('.'));
        let name = short.unwrap_or(sw.variable);
        (!base.contains(&name)).then(|| name.to_string())
    });
    if let Some(name) = &extra {
        header.insert(0, name.clone());
    }

    let points = config.points()?;
    let spec = config.quadrature;
    let width = base.len();
    let work = || {
        points
            .par_iter()
            .map(|(x, point)| {
                let mut row = match point {
                    Point::Regular(scene) => evaluate(scene, &spec, config.n_max)?,
                    Point::Coincident { theta } => {
                        let mut r = vec![f64::NAN; width];
                        r[0] = *theta;
                        r
                    }
                };
                if extra.is_some() {
                    row.insert(0, x.expect("sweep value"));
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>, CliError>>()
    };
    let rows = match threads {
        None => work()?,
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?
            .install(work)?,
    };
    let coincident = points.iter().filter(|(_, p)| matches!(p, Point::Coincident { .. })).count();
    Ok(Table { header, rows, coincident })
}
