//! Line-oriented `key = value` run configuration.
//!
//! `#` starts a comment anywhere on a line. Keys are dot-namespaced:
//!
//! ```text
//! command = sphere
//! host.wpe = 3        # material of the bulk host, the wall or the sphere
//! host.wte = 1
//! host.ge = 0.001
//! atom_a.a0 = 1e-3
//! atom_b.b0 = 1e-3
//! sphere.radius_R = 1
//! sphere.r_a = 1.03
//! sphere.r_b = 1.03
//! sweep.variable = theta
//! sweep.start = 0.05
//! sweep.stop = 3.14159
//! sweep.count = 60
//! ```

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::path::PathBuf;

use vdw_core::pair::BulkScene;
use vdw_core::response::{MaterialModel, Oscillator, Response};
use vdw_core::{AtomModel, HalfSpaceScene, QuadratureSpec, SphereScene, Transform};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Freespace,
    Bulk,
    Halfspace,
    Sphere,
    Sweep,
    Selftest,
}

impl Command {
    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "freespace" => Self::Freespace,
            "bulk" => Self::Bulk,
            "halfspace" => Self::Halfspace,
            "sphere" => Self::Sphere,
            "sweep" => Self::Sweep,
            "selftest" => Self::Selftest,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Freespace => "freespace",
            Self::Bulk => "bulk",
            Self::Halfspace => "halfspace",
            Self::Sphere => "sphere",
            Self::Sweep => "sweep",
            Self::Selftest => "selftest",
        }
    }

    fn scene(self) -> Option<SceneKind> {
        Some(match self {
            Self::Freespace => SceneKind::Freespace,
            Self::Bulk => SceneKind::Bulk,
            Self::Halfspace => SceneKind::Halfspace,
            Self::Sphere => SceneKind::Sphere,
            Self::Sweep | Self::Selftest => return None,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SceneKind {
    Freespace,
    Bulk,
    Halfspace,
    Sphere,
}

impl SceneKind {
    pub fn namespace(self) -> &'static str {
        match self {
            Self::Freespace => "freespace",
            Self::Bulk => "bulk",
            Self::Halfspace => "halfspace",
            Self::Sphere => "sphere",
        }
    }

    fn uses(self, key: &str) -> bool {
        let ns = key.split('.').next().unwrap_or("");
        match ns {
            "host" => self != Self::Freespace,
            "atom_a" => true,
            "atom_b" => self != Self::Halfspace,
            "lf" => self == Self::Bulk,
            other => other == self.namespace(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Spacing {
    Linear,
    Log,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Sweep {
    /// Fully qualified key of the swept field.
    pub variable: &'static str,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|k| {
                let t = k as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * t,
                    Spacing::Log => self.start * (self.stop / self.start).powf(t),
                }
            })
            .collect()
    }
}

/// Numeric scene fields; these are also the legal sweep variables.
const NUMERIC: &[&str] = &[
    "host.wpe",
    "host.wte",
    "host.ge",
    "host.wpm",
    "host.wtm",
    "host.gm",
    "atom_a.a0",
    "atom_a.b0",
    "atom_a.resonance",
    "atom_b.a0",
    "atom_b.b0",
    "atom_b.resonance",
    "freespace.l",
    "bulk.l",
    "halfspace.z",
    "sphere.radius_R",
    "sphere.r_a",
    "sphere.r_b",
    "sphere.l",
    "sphere.theta",
];

const OTHER: &[&str] = &[
    "command",
    "host.variant",
    "lf.enabled",
    "sphere.n_max",
    "sweep.scene",
    "sweep.variable",
    "sweep.start",
    "sweep.stop",
    "sweep.count",
    "sweep.spacing",
    "quad.rel_tol",
    "quad.abs_tol",
    "quad.max_subdivisions",
    "quad.transform",
    "output",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Variant {
    Vacuum,
    DrudeLorentz,
    PerfectMirror,
    PerfectMagneticMirror,
}

/// Scene fields as read, before a sweep value is substituted.
#[derive(Clone, Debug, PartialEq)]
pub struct SceneParams {
    kind: SceneKind,
    values: BTreeMap<&'static str, f64>,
    variant: Option<Variant>,
    local_field: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Scene {
    Freespace(BulkScene),
    Bulk(BulkScene),
    Halfspace(HalfSpaceScene),
    Sphere(SphereScene),
}

/// Problem found while building a scene, attributed to one key.
struct FieldError {
    key: &'static str,
    message: String,
    /// The atoms coincide; tolerated at isolated sweep points.
    coincident: bool,
}

fn field_err(key: &'static str, message: impl Into<String>) -> FieldError {
    FieldError {
        key,
        message: message.into(),
        coincident: false,
    }
}

/// One sweep point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Point {
    Regular(Scene),
    /// Both atoms at the same position (Θ = 0 with r_a = r_b); the potential diverges.
    Coincident { theta: f64 },
}

impl SceneParams {
    pub fn kind(&self) -> SceneKind {
        self.kind
    }

    fn get(&self, key: &'static str) -> Option<f64> {
        self.values.get(key).copied()
    }

    fn require(&self, key: &'static str) -> Result<f64, FieldError> {
        self.get(key).ok_or_else(|| field_err(key, "missing required key"))
    }

    fn with(&self, key: &'static str, value: f64) -> Self {
        let mut p = self.clone();
        p.values.insert(key, value);
        p
    }

    fn material(&self) -> Result<MaterialModel, FieldError> {
        let osc = |p: &'static str, t: &'static str, g: &'static str| -> Result<Option<Oscillator>, FieldError> {
            match (self.get(p), self.get(t)) {
                (None, None) => {
                    if self.get(g).is_some() {
                        return Err(field_err(g, "damping given without an oscillator"));
                    }
                    Ok(None)
                }
                (Some(_), None) => Err(field_err(t, "missing required key")),
                (None, Some(_)) => Err(field_err(p, "missing required key")),
                (Some(wp), Some(wt)) => Oscillator::new(wp, wt, self.get(g).unwrap_or(0.0))
                    .map(Some)
                    .map_err(|e| field_err(p, e.to_string())),
            }
        };
        let has_osc = ["host.wpe", "host.wte", "host.ge", "host.wpm", "host.wtm", "host.gm"]
            .iter()
            .find(|k| self.values.contains_key(*k));
        let variant = self.variant.unwrap_or(if has_osc.is_some() {
            Variant::DrudeLorentz
        } else {
            Variant::Vacuum
        });
        if variant != Variant::DrudeLorentz {
            if let Some(k) = has_osc {
                return Err(field_err(k, "oscillator parameters need host.variant = drude_lorentz"));
            }
        }
        Ok(match variant {
            Variant::Vacuum => MaterialModel::vacuum(),
            Variant::DrudeLorentz => MaterialModel::drude_lorentz(
                osc("host.wpe", "host.wte", "host.ge")?,
                osc("host.wpm", "host.wtm", "host.gm")?,
            ),
            Variant::PerfectMirror => MaterialModel::perfect_mirror(),
            Variant::PerfectMagneticMirror => MaterialModel::from_responses(Response::Unity, Response::Infinite)
                .map_err(|e| field_err("host.variant", e.to_string()))?,
        })
    }

    fn atom(&self, which: &str) -> Result<AtomModel, FieldError> {
        let (ka, kb, kr): (&'static str, &'static str, &'static str) = if which == "a" {
            ("atom_a.a0", "atom_a.b0", "atom_a.resonance")
        } else {
            ("atom_b.a0", "atom_b.b0", "atom_b.resonance")
        };
        let (a0, b0, res) = (
            self.get(ka).unwrap_or(0.0),
            self.get(kb).unwrap_or(0.0),
            self.get(kr).unwrap_or(1.0),
        );
        for (k, v) in [(ka, a0), (kb, b0)] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(field_err(k, format!("must be finite and non-negative, got {v}")));
            }
        }
        AtomModel::new(a0, b0, res).map_err(|e| field_err(kr, e.to_string()))
    }

    fn positive(&self, key: &'static str) -> Result<f64, FieldError> {
        let v = self.require(key)?;
        if !(v > 0.0) || !v.is_finite() {
            return Err(field_err(key, format!("must be positive and finite, got {v}")));
        }
        Ok(v)
    }

    fn build(&self) -> Result<Scene, FieldError> {
        match self.kind {
            SceneKind::Freespace => {
                let l = self.positive("freespace.l")?;
                let s = BulkScene::free_space(self.atom("a")?, self.atom("b")?, l)
                    .map_err(|e| field_err("freespace.l", e.to_string()))?;
                Ok(Scene::Freespace(s))
            }
            SceneKind::Bulk => {
                let l = self.positive("bulk.l")?;
                let host = self.material()?;
                if host.is_mirror() {
                    return Err(field_err("host.variant", "a perfect mirror cannot be a bulk host"));
                }
                let s = BulkScene::new(host, self.atom("a")?, self.atom("b")?, l, self.local_field)
                    .map_err(|e| field_err("bulk.l", e.to_string()))?;
                Ok(Scene::Bulk(s))
            }
            SceneKind::Halfspace => {
                let z = self.positive("halfspace.z")?;
                let s = HalfSpaceScene::new(self.material()?, self.atom("a")?, z)
                    .map_err(|e| field_err("halfspace.z", e.to_string()))?;
                Ok(Scene::Halfspace(s))
            }
            SceneKind::Sphere => {
                let sphere = self.material()?;
                if sphere.is_mirror() {
                    return Err(field_err("host.variant", "perfectly reflecting spheres are not supported"));
                }
                let radius = self.positive("sphere.radius_R")?;
                let r_a = self.positive("sphere.r_a")?;
                if r_a <= radius {
                    return Err(field_err("sphere.r_a", format!("atom A must lie outside the sphere: r_a = {r_a} <= R = {radius}")));
                }
                let theta = self.require("sphere.theta")?;
                if !(0.0..=PI).contains(&theta) {
                    return Err(field_err("sphere.theta", format!("theta = {theta} outside [0, π]")));
                }
                let r_b = match (self.get("sphere.r_b"), self.get("sphere.l")) {
                    (Some(_), Some(_)) => return Err(field_err("sphere.l", "give either sphere.r_b or sphere.l, not both")),
                    (None, None) => return Err(field_err("sphere.r_b", "missing required key (or sphere.l)")),
                    (Some(r_b), None) => r_b,
                    (None, Some(_)) => {
                        if theta != 0.0 {
                            return Err(field_err("sphere.l", "sphere.l describes the linear arrangement and needs sphere.theta = 0"));
                        }
                        r_a + self.positive("sphere.l")?
                    }
                };
                if !(r_b > radius) || !r_b.is_finite() {
                    return Err(field_err("sphere.r_b", format!("atom B must lie outside the sphere: r_b = {r_b} <= R = {radius}")));
                }
                if !(r_a * r_a + r_b * r_b - 2.0 * r_a * r_b * theta.cos() > 0.0) {
                    return Err(FieldError {
                        key: "sphere.theta",
                        message: "the two atoms coincide".into(),
                        coincident: true,
                    });
                }
                let s = SphereScene::new(sphere, radius, self.atom("a")?, self.atom("b")?, r_a, r_b, theta)
                    .map_err(|e| field_err("sphere.theta", e.to_string()))?;
                Ok(Scene::Sphere(s))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub params: SceneParams,
    pub sweep: Option<Sweep>,
    pub quadrature: QuadratureSpec,
    pub n_max: Option<usize>,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    /// Points in sweep order (one point without a sweep).
    pub fn points(&self) -> Result<Vec<(Option<f64>, Point)>, CliError> {
        let build = |p: &SceneParams| match p.build() {
            Ok(s) => Ok(Point::Regular(s)),
            Err(f) if f.coincident => Ok(Point::Coincident {
                theta: p.get("sphere.theta").unwrap_or(0.0),
            }),
            Err(f) => Err(CliError::Internal(format!("scene failed after validation: {}: {}", f.key, f.message))),
        };
        match &self.sweep {
            None => Ok(vec![(None, build(&self.params)?)]),
            Some(sw) => sw
                .points()
                .into_iter()
                .map(|x| Ok((Some(x), build(&self.params.with(sw.variable, x))?)))
                .collect(),
        }
    }
}

struct Entry {
    line: usize,
    value: String,
}

fn config_err(line: usize, key: &str, message: impl Into<String>) -> CliError {
    CliError::Config {
        line,
        key: key.to_string(),
        message: message.into(),
    }
}

fn parse_f64(e: &Entry, key: &str) -> Result<f64, CliError> {
    e.value
        .parse::<f64>()
        .ok()
        .filter(|v| !v.is_nan())
        .ok_or_else(|| config_err(e.line, key, format!("expected a number, got `{}`", e.value)))
}

fn parse_usize(e: &Entry, key: &str) -> Result<usize, CliError> {
    e.value
        .parse::<usize>()
        .map_err(|_| config_err(e.line, key, format!("expected a non-negative integer, got `{}`", e.value)))
}

/// Parse and validate a configuration. `command` is the subcommand given on
/// the command line; a `command` key in the text must agree with it.
pub fn parse_config(text: &str, command: Option<Command>) -> Result<RunConfig, CliError> {
    let mut entries: BTreeMap<&'static str, Entry> = BTreeMap::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let Some((k, v)) = body.split_once('=') else {
            return Err(config_err(line, body, "expected `key = value`"));
        };
        let (k, v) = (k.trim(), v.trim());
        if k.is_empty() {
            return Err(config_err(line, "", "empty key"));
        }
        let Some(&key) = NUMERIC.iter().chain(OTHER).find(|&&known| known == k) else {
            return Err(config_err(line, k, "unknown key"));
        };
        if v.is_empty() {
            return Err(config_err(line, key, "empty value"));
        }
        if let Some(prev) = entries.get(key) {
            return Err(config_err(line, key, format!("duplicate key, first set on line {}", prev.line)));
        }
        entries.insert(key, Entry { line, value: v.to_string() });
    }
    let end = last_line + 1;

    let command = match (command, entries.get("command")) {
        (Some(c), None) => c,
        (cli, Some(e)) => {
            let c = Command::parse(&e.value).ok_or_else(|| config_err(e.line, "command", format!("unknown command `{}`", e.value)))?;
            if let Some(cli) = cli {
                if cli != c {
                    return Err(config_err(e.line, "command", format!("config says `{}` but `{}` was requested", c.name(), cli.name())));
                }
            }
            c
        }
        (None, None) => return Err(config_err(end, "command", "missing required key")),
    };

    let kind = match command.scene() {
        Some(k) => {
            if let Some(e) = entries.get("sweep.scene") {
                return Err(config_err(e.line, "sweep.scene", "only used by the sweep command"));
            }
            k
        }
        None if command == Command::Selftest => {
            return Err(config_err(entries.get("command").map_or(1, |e| e.line), "command", "selftest takes no configuration"));
        }
        None => {
            let e = entries.get("sweep.scene").ok_or_else(|| config_err(end, "sweep.scene", "missing required key"))?;
            match Command::parse(&e.value).and_then(Command::scene) {
                Some(k) => k,
                None => return Err(config_err(e.line, "sweep.scene", format!("expected freespace, bulk, halfspace or sphere, got `{}`", e.value))),
            }
        }
    };

    let mut values = BTreeMap::new();
    for (&key, e) in &entries {
        if NUMERIC.contains(&key) {
            if !kind.uses(key) {
                return Err(config_err(e.line, key, format!("not used by a {} scene", kind.namespace())));
            }
            values.insert(key, parse_f64(e, key)?);
        }
    }

    let variant = match entries.get("host.variant") {
        None => None,
        Some(e) => {
            if !kind.uses("host.variant") {
                return Err(config_err(e.line, "host.variant", format!("not used by a {} scene", kind.namespace())));
            }
            Some(match e.value.as_str() {
                "vacuum" => Variant::Vacuum,
                "drude_lorentz" => Variant::DrudeLorentz,
                "perfect_mirror" => Variant::PerfectMirror,
                "perfect_magnetic_mirror" => Variant::PerfectMagneticMirror,
                other => {
                    return Err(config_err(
                        e.line,
                        "host.variant",
                        format!("expected vacuum, drude_lorentz, perfect_mirror or perfect_magnetic_mirror, got `{other}`"),
                    ))
                }
            })
        }
    };

    let local_field = match entries.get("lf.enabled") {
        None => true,
        Some(e) => {
            if !kind.uses("lf.enabled") {
                return Err(config_err(e.line, "lf.enabled", format!("not used by a {} scene", kind.namespace())));
            }
            match e.value.as_str() {
                "true" | "1" | "yes" => true,
                "false" | "0" | "no" => false,
                other => return Err(config_err(e.line, "lf.enabled", format!("expected true or false, got `{other}`"))),
            }
        }
    };

    let mut quadrature = QuadratureSpec::default();
    if let Some(e) = entries.get("quad.rel_tol") {
        quadrature.rel_tol = parse_f64(e, "quad.rel_tol")?;
    }
    if let Some(e) = entries.get("quad.abs_tol") {
        quadrature.abs_tol = parse_f64(e, "quad.abs_tol")?;
    }
    if let Some(e) = entries.get("quad.max_subdivisions") {
        quadrature.max_subdivisions = parse_usize(e, "quad.max_subdivisions")?;
    }
    if let Some(e) = entries.get("quad.transform") {
        quadrature.transform = match e.value.as_str() {
            "rational" => Transform::Rational,
            "exp" => Transform::Exp,
            other => return Err(config_err(e.line, "quad.transform", format!("expected rational or exp, got `{other}`"))),
        };
    }
    if let Err(err) = quadrature.validate() {
        let key = ["quad.rel_tol", "quad.abs_tol", "quad.max_subdivisions"]
            .into_iter()
            .find(|k| err.to_string().contains(k.trim_start_matches("quad.")))
            .unwrap_or("quad.rel_tol");
        let line = entries.get(key).map_or(end, |e| e.line);
        return Err(config_err(line, key, err.to_string()));
    }

    let n_max = match entries.get("sphere.n_max") {
        None => None,
        Some(e) => {
            if kind != SceneKind::Sphere {
                return Err(config_err(e.line, "sphere.n_max", format!("not used by a {} scene", kind.namespace())));
            }
            let n = parse_usize(e, "sphere.n_max")?;
            if n < 1 {
                return Err(config_err(e.line, "sphere.n_max", "must be at least 1"));
            }
            Some(n)
        }
    };

    let sweep = parse_sweep(&entries, kind, command, end)?;
    let output = entries.get("output").map(|e| PathBuf::from(&e.value));
    let params = SceneParams {
        kind,
        values,
        variant,
        local_field,
    };

    {
        let line_of = |key: &str| -> usize {
            match &sweep {
                Some(sw) if sw.variable == key => entries["sweep.variable"].line,
                _ => entries.get(key).map_or(end, |e| e.line),
            }
        };
        let check = |p: &SceneParams, sweeping: bool| match p.build() {
            Ok(_) => Ok(true),
            Err(f) if f.coincident && sweeping => Ok(false),
            Err(f) => Err(config_err(line_of(f.key), f.key, f.message)),
        };
        match &sweep {
            None => {
                check(&params, false)?;
            }
            Some(sw) => {
                let mut regular = 0;
                for x in sw.points() {
                    regular += check(&params.with(sw.variable, x), true)? as usize;
                }
                if regular == 0 {
                    return Err(config_err(entries["sweep.variable"].line, "sweep.variable", "the atoms coincide at every sweep point"));
                }
            }
        }
    }

    Ok(RunConfig {
        command,
        params,
        sweep,
        quadrature,
        n_max,
        output,
    })
}

fn parse_sweep(
    entries: &BTreeMap<&'static str, Entry>,
    kind: SceneKind,
    command: Command,
    end: usize,
) -> Result<Option<Sweep>, CliError> {
    let keys = ["sweep.variable", "sweep.start", "sweep.stop", "sweep.count", "sweep.spacing"];
    let present = keys.iter().find(|k| entries.contains_key(*k));
    let Some(var) = entries.get("sweep.variable") else {
        if command == Command::Sweep {
            return Err(config_err(end, "sweep.variable", "missing required key"));
        }
        if let Some(k) = present {
            return Err(config_err(entries[k].line, k, "sweep keys given without sweep.variable"));
        }
        return Ok(None);
    };
    let qualified = if var.value.contains('.') {
        var.value.clone()
    } else {
        format!("{}.{}", kind.namespace(), var.value)
    };
    let variable = NUMERIC
        .iter()
        .copied()
        .find(|k| *k == qualified)
        .filter(|k| kind.uses(k))
        .ok_or_else(|| config_err(var.line, "sweep.variable", format!("`{}` is not a numeric field of a {} scene", var.value, kind.namespace())))?;
    if let Some(e) = entries.get(variable) {
        return Err(config_err(e.line, variable, "swept field must not also be set"));
    }
    let get = |k: &'static str| entries.get(k).ok_or_else(|| config_err(end, k, "missing required key"));
    let start = parse_f64(get("sweep.start")?, "sweep.start")?;
    let stop = parse_f64(get("sweep.stop")?, "sweep.stop")?;
    let count_entry = get("sweep.count")?;
    let count = parse_usize(count_entry, "sweep.count")?;
    if count < 2 {
        return Err(config_err(count_entry.line, "sweep.count", format!("must be at least 2, got {count}")));
    }
    if !start.is_finite() || !stop.is_finite() {
        return Err(config_err(entries["sweep.start"].line, "sweep.start", "sweep bounds must be finite"));
    }
    let spacing = match entries.get("sweep.spacing") {
        None => Spacing::Linear,
        Some(e) => match e.value.as_str() {
            "linear" => Spacing::Linear,
            "log" => {
                if !(start > 0.0 && stop > 0.0) {
                    return Err(config_err(e.line, "sweep.spacing", format!("log spacing needs positive bounds, got {start} and {stop}")));
                }
                Spacing::Log
            }
            other => return Err(config_err(e.line, "sweep.spacing", format!("expected linear or log, got `{other}`"))),
        },
    };
    Ok(Some(Sweep {
        variable,
        start,
        stop,
        count,
        spacing,
    }))
}
