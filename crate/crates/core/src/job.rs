//! Job descriptions and the runner behind the command-line front end.
//!
//! A job is a line-oriented `key: value` text: a field, a ring, exactly one
//! source (inline ideal, complete intersection, sphere file, or a builtin
//! fixture), an optional vol normalization, a task list and a seed. The
//! runner executes tasks in dependency order and produces a JSON report with
//! sorted keys; for a fixed job and seed the report is byte-identical across
//! runs except for the timings block.

use crate::field::FieldConfig;
use crate::groebner::IdealBasis;
use crate::models::{
    self, default_extension_degree, CompleteIntersectionSpec, OrientedSimplicialSphere,
};
use crate::parseval::{ParsevalContext, VolumeFunctional};
use crate::poly::{
    monomials_of_degree, parse_monomial, parse_polynomial, format_monomial, PolyRing, Polynomial,
    Ring,
};
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde_json::{json, Map, Value};
use std::sync::Arc;
use std::time::Instant;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JobError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum JobSource {
    /// Inline generators in the shared polynomial syntax.
    Ideal(Vec<String>),
    /// Complete intersection generators (same syntax, extra validation).
    Ci(Vec<String>),
    /// Path to a sphere description file.
    SphereFile(String),
    /// One of the builtin examples: `nonci`, `ci-xy`, `simplex-boundary`,
    /// `octahedron`, `square`.
    Fixture(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Task {
    Resolve,
    Epsilon,
    Verify,
    Lemmas,
    SphereFormula,
}

impl Task {
    fn name(self) -> &'static str {
        match self {
            Task::Resolve => "resolve",
            Task::Epsilon => "epsilon",
            Task::Verify => "verify",
            Task::Lemmas => "lemmas",
            Task::SphereFormula => "sphere-formula",
        }
    }

    fn parse(s: &str) -> Option<Task> {
        match s {
            "resolve" => Some(Task::Resolve),
            "epsilon" => Some(Task::Epsilon),
            "verify" => Some(Task::Verify),
            "lemmas" => Some(Task::Lemmas),
            "sphere-formula" => Some(Task::SphereFormula),
            _ => None,
        }
    }
}

pub const FIXTURES: [&str; 5] = ["nonci", "ci-xy", "simplex-boundary", "octahedron", "square"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobSpec {
    /// `(p, e)`; `None` means the source's default field.
    pub field: Option<(u64, usize)>,
    pub ring_vars: Vec<String>,
    pub source: JobSource,
    /// `(monomial text, value text)` for `vol: m = v`.
    pub vol: Option<(String, String)>,
    pub tasks: Vec<Task>,
    pub seed: u64,
}

impl JobSpec {
    /// Pretty-print in the job grammar; `parse_job` of the output reproduces
    /// the spec.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if let Some((p, e)) = self.field {
            if e == 1 {
                out.push_str(&format!("field: p={}\n", p));
            } else {
                out.push_str(&format!("field: p={} e={}\n", p, e));
            }
        }
        if !self.ring_vars.is_empty() {
            out.push_str(&format!("ring: {}\n", self.ring_vars.join(" ")));
        }
        match &self.source {
            JobSource::Ideal(gens) => out.push_str(&format!("ideal: {}\n", gens.join(", "))),
            JobSource::Ci(gens) => out.push_str(&format!("ci: {}\n", gens.join(", "))),
            JobSource::SphereFile(path) => out.push_str(&format!("sphere: {}\n", path)),
            JobSource::Fixture(name) => out.push_str(&format!("fixture: {}\n", name)),
        }
        if let Some((m, v)) = &self.vol {
            out.push_str(&format!("vol: {} = {}\n", m, v));
        }
        let tasks: Vec<&str> = self.tasks.iter().map(|t| t.name()).collect();
        out.push_str(&format!("tasks: {}\n", tasks.join(" ")));
        out.push_str(&format!("seed: {}\n", self.seed));
        out
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Parse the job grammar. Unknown keys are rejected; errors carry the line.
pub fn parse_job(text: &str) -> Result<JobSpec, JobError> {
    let mut field: Option<(u64, usize)> = None;
    let mut ring_vars: Vec<String> = Vec::new();
    let mut source: Option<JobSource> = None;
    let mut vol: Option<(String, String)> = None;
    let mut tasks: Option<Vec<Task>> = None;
    let mut seed: u64 = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        let err = |msg: String| JobError::Syntax { line: lineno, msg };
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once(':')
            .ok_or_else(|| err("expected 'key: value'".to_string()))?;
        let value = value.trim();
        match key.trim() {
            "field" => {
                let mut p: Option<u64> = None;
                let mut e: usize = 1;
                for part in value.split_whitespace() {
                    if let Some(ps) = part.strip_prefix("p=") {
                        p = Some(
                            ps.parse()
                                .map_err(|_| err(format!("invalid p '{}'", ps)))?,
                        );
                    } else if let Some(es) = part.strip_prefix("e=") {
                        e = es
                            .parse()
                            .map_err(|_| err(format!("invalid e '{}'", es)))?;
                    } else {
                        return Err(err(format!("unknown field clause '{}'", part)));
                    }
                }
                let p = p.ok_or_else(|| err("field needs p=<prime>".to_string()))?;
                if !is_prime(p) {
                    return Err(err(format!("p = {} is not prime", p)));
                }
                field = Some((p, e));
            }
            "ring" => {
                ring_vars = value.split_whitespace().map(|s| s.to_string()).collect();
                if ring_vars.is_empty() {
                    return Err(err("ring needs at least one variable".to_string()));
                }
            }
            "ideal" | "ci" => {
                if source.is_some() {
                    return Err(err("more than one source".to_string()));
                }
                let gens: Vec<String> = value
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if gens.is_empty() {
                    return Err(err("no generators listed".to_string()));
                }
                source = Some(if key.trim() == "ideal" {
                    JobSource::Ideal(gens)
                } else {
                    JobSource::Ci(gens)
                });
            }
            "sphere" => {
                if source.is_some() {
                    return Err(err("more than one source".to_string()));
                }
                source = Some(JobSource::SphereFile(value.to_string()));
            }
            "fixture" => {
                if source.is_some() {
                    return Err(err("more than one source".to_string()));
                }
                if !FIXTURES.contains(&value) {
                    return Err(err(format!(
                        "unknown fixture '{}'; available: {}",
                        value,
                        FIXTURES.join(", ")
                    )));
                }
                source = Some(JobSource::Fixture(value.to_string()));
            }
            "vol" => {
                let (m, v) = value
                    .split_once('=')
                    .ok_or_else(|| err("vol needs 'monomial = value'".to_string()))?;
                vol = Some((m.trim().to_string(), v.trim().to_string()));
            }
            "tasks" => {
                let mut list = Vec::new();
                for t in value.split_whitespace() {
                    let task = Task::parse(t)
                        .ok_or_else(|| err(format!("unknown task '{}'", t)))?;
                    if !list.contains(&task) {
                        list.push(task);
                    }
                }
                if list.is_empty() {
                    return Err(err("tasks must be nonempty".to_string()));
                }
                tasks = Some(list);
            }
            "seed" => {
                seed = value
                    .parse()
                    .map_err(|_| err(format!("invalid seed '{}'", value)))?;
            }
            other => {
                return Err(err(format!("unknown key '{}'", other)));
            }
        }
    }

    let source = source.ok_or_else(|| {
        JobError::Semantic("missing source (ideal, ci, sphere or fixture)".to_string())
    })?;
    let tasks = tasks.ok_or_else(|| JobError::Semantic("missing 'tasks:' line".to_string()))?;
    if matches!(source, JobSource::Ideal(_) | JobSource::Ci(_)) {
        if field.is_none() {
            return Err(JobError::Semantic(
                "inline sources need a 'field:' line".to_string(),
            ));
        }
        if ring_vars.is_empty() {
            return Err(JobError::Semantic(
                "inline sources need a 'ring:' line".to_string(),
            ));
        }
        if vol.is_none() {
            return Err(JobError::Semantic(
                "inline sources need a 'vol:' normalization".to_string(),
            ));
        }
    }
    Ok(JobSpec {
        field,
        ring_vars,
        source,
        vol,
        tasks,
        seed,
    })
}

/// Default fixture jobs for the `--fixture` shortcut.
pub fn fixture_job(name: &str) -> Result<JobSpec, JobError> {
    if !FIXTURES.contains(&name) {
        return Err(JobError::Semantic(format!(
            "unknown fixture '{}'; available: {}",
            name,
            FIXTURES.join(", ")
        )));
    }
    let sphere = matches!(name, "simplex-boundary" | "octahedron" | "square");
    let mut tasks = vec![Task::Resolve, Task::Epsilon, Task::Verify, Task::Lemmas];
    if sphere {
        tasks.push(Task::SphereFormula);
    }
    Ok(JobSpec {
        field: None,
        ring_vars: Vec::new(),
        source: JobSource::Fixture(name.to_string()),
        vol: None,
        tasks,
        seed: 0,
    })
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub seed_override: Option<u64>,
    /// Test hook: multiply the computed epsilon by 2 before the checks.
    pub corrupt_epsilon: bool,
}

/// Exit codes: 0 all requested verifications pass, 1 verification failure,
/// 2 input error, 3 internal invariant violation.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub report: Value,
    pub summary: String,
}

struct Problem {
    ring: Ring,
    ideal: IdealBasis,
    vol: VolumeFunctional,
    // oracles, when the source carries them
    ci_spec: Option<CompleteIntersectionSpec>,
    sphere: Option<(OrientedSimplicialSphere, models::GenericReduction)>,
    source_desc: Value,
}

fn field_json(ring: &Ring) -> Value {
    let f = ring.field();
    json!({
        "p": f.characteristic(),
        "e": f.extension_degree(),
        "modulus": f.modulus().map(|m| m.to_vec()),
    })
}

fn semantic(msg: impl Into<String>) -> JobError {
    JobError::Semantic(msg.into())
}

fn build_inline_ring(spec: &JobSpec) -> Result<Ring, JobError> {
    let (p, e) = spec.field.expect("validated by parse_job");
    let field = FieldConfig::new(p, e).map_err(|e| semantic(e.to_string()))?;
    Ok(PolyRing::new(field, spec.ring_vars.clone()))
}

fn parse_gens(ring: &Ring, gens: &[String]) -> Result<Vec<Polynomial>, JobError> {
    gens.iter()
        .map(|s| {
            parse_polynomial(ring, s).map_err(|e| semantic(format!("in generator '{}': {}", s, e)))
        })
        .collect()
}

fn build_vol(
    ring: &Ring,
    ideal: &IdealBasis,
    clause: &(String, String),
) -> Result<VolumeFunctional, JobError> {
    let m0 = parse_monomial(ring, &clause.0)
        .map_err(|e| semantic(format!("in vol monomial: {}", e)))?;
    let value = parse_polynomial(ring, &clause.1)
        .map_err(|e| semantic(format!("in vol value: {}", e)))?;
    if !value.is_zero() && value.degree() != Some(0) {
        return Err(semantic("vol value must be a scalar"));
    }
    let scalar = if value.is_zero() {
        ring.field().zero()
    } else {
        value.terms()[0].1.clone()
    };
    crate::parseval::compute_vol(ideal, &m0, &scalar).map_err(|e| semantic(e.to_string()))
}

fn build_problem(spec: &JobSpec, seed: u64) -> Result<Problem, JobError> {
    match &spec.source {
        JobSource::Ideal(gens) => {
            let ring = build_inline_ring(spec)?;
            let polys = parse_gens(&ring, gens)?;
            let ideal = IdealBasis::new(&ring, polys).map_err(|e| semantic(e.to_string()))?;
            let vol = build_vol(&ring, &ideal, spec.vol.as_ref().expect("validated"))?;
            Ok(Problem {
                source_desc: json!({"type": "ideal"}),
                ring,
                ideal,
                vol,
                ci_spec: None,
                sphere: None,
            })
        }
        JobSource::Ci(gens) => {
            let ring = build_inline_ring(spec)?;
            let polys = parse_gens(&ring, gens)?;
            let ci = CompleteIntersectionSpec::new(&ring, polys)
                .map_err(|e| semantic(e.to_string()))?;
            let ideal = ci.ideal();
            let vol = build_vol(&ring, &ideal, spec.vol.as_ref().expect("validated"))?;
            Ok(Problem {
                source_desc: json!({"type": "ci"}),
                ring,
                ideal,
                vol,
                ci_spec: Some(ci),
                sphere: None,
            })
        }
        JobSource::SphereFile(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| semantic(format!("cannot read sphere file '{}': {}", path, e)))?;
            let sphere =
                models::parse_sphere_file(&text).map_err(|e| semantic(e.to_string()))?;
            build_sphere_problem(spec, sphere, seed, json!({"type": "sphere", "path": path}))
        }
        JobSource::Fixture(name) => build_fixture_problem(spec, name, seed),
    }
}

fn build_sphere_problem(
    spec: &JobSpec,
    sphere: OrientedSimplicialSphere,
    seed: u64,
    desc: Value,
) -> Result<Problem, JobError> {
    let (p, e) = spec
        .field
        .map(|(p, e)| (p, e))
        .unwrap_or((2, default_extension_degree(2)));
    let ring = models::sphere_ring(&sphere, p, e).map_err(|e| semantic(e.to_string()))?;
    let (ideal, _gb, reduction) = models::generic_artinian_reduction(&sphere, &ring, seed, 32)
        .map_err(|e| semantic(e.to_string()))?;
    let vol = models::kustin_miller_vol(&sphere, &reduction, &ideal)
        .map_err(|e| semantic(e.to_string()))?;
    Ok(Problem {
        source_desc: desc,
        ring,
        ideal,
        vol,
        ci_spec: None,
        sphere: Some((sphere, reduction)),
    })
}

fn build_fixture_problem(spec: &JobSpec, name: &str, seed: u64) -> Result<Problem, JobError> {
    match name {
        "nonci" => {
            let (p, e) = spec.field.unwrap_or((2, 1));
            if e != 1 {
                return Err(semantic("the nonci fixture lives over a prime field"));
            }
            let fx = models::nonci_fixture(p);
            let vol = crate::parseval::compute_vol(
                &fx.ideal,
                &fx.vol_monomial,
                &fx.ring.field().one(),
            )
            .map_err(|e| semantic(e.to_string()))?;
            Ok(Problem {
                source_desc: json!({"type": "fixture", "name": "nonci"}),
                ring: fx.ring.clone(),
                ideal: fx.ideal.clone(),
                vol,
                ci_spec: None,
                sphere: None,
            })
        }
        "ci-xy" => {
            let (p, e) = spec.field.unwrap_or((3, 1));
            let field = FieldConfig::new(p, e).map_err(|e| semantic(e.to_string()))?;
            let ring = PolyRing::new(field, vec!["x".into(), "y".into()]);
            let gens = vec![
                parse_polynomial(&ring, "x^2").unwrap(),
                parse_polynomial(&ring, "y^2").unwrap(),
            ];
            let ci = CompleteIntersectionSpec::new(&ring, gens)
                .map_err(|e| semantic(e.to_string()))?;
            let ideal = ci.ideal();
            let m0 = parse_monomial(&ring, "x*y").unwrap();
            let vol = crate::parseval::compute_vol(&ideal, &m0, &ring.field().one())
                .map_err(|e| semantic(e.to_string()))?;
            Ok(Problem {
                source_desc: json!({"type": "fixture", "name": "ci-xy"}),
                ring,
                ideal,
                vol,
                ci_spec: Some(ci),
                sphere: None,
            })
        }
        "simplex-boundary" | "octahedron" | "square" => {
            let sphere = match name {
                "simplex-boundary" => OrientedSimplicialSphere::simplex_boundary(),
                "octahedron" => OrientedSimplicialSphere::octahedron(),
                _ => OrientedSimplicialSphere::square(),
            };
            let default_p = if name == "octahedron" { 3 } else { 2 };
            let spec_with_field = JobSpec {
                field: Some(spec.field.unwrap_or((
                    default_p,
                    default_extension_degree(default_p),
                ))),
                ..spec.clone()
            };
            build_sphere_problem(
                &spec_with_field,
                sphere,
                seed,
                json!({"type": "fixture", "name": name}),
            )
        }
        _ => Err(semantic(format!("unknown fixture '{}'", name))),
    }
}

/// Execute a job. All randomness flows from the single job seed.
pub fn run_job(spec: &JobSpec, opts: &RunOptions) -> RunOutcome {
    let started = Instant::now();
    let seed = opts.seed_override.unwrap_or(spec.seed);
    let mut report = Map::new();
    let mut summary = String::new();
    let mut exit_code = 0i32;

    let problem = match build_problem(spec, seed) {
        Ok(p) => p,
        Err(e) => {
            report.insert("error".to_string(), json!(e.to_string()));
            return RunOutcome {
                exit_code: 2,
                report: Value::Object(report),
                summary: format!("input error: {}\n", e),
            };
        }
    };

    let tasks: Vec<Task> = {
        let mut t = spec.tasks.clone();
        t.sort();
        t
    };
    if tasks.contains(&Task::SphereFormula) && problem.sphere.is_none() {
        return RunOutcome {
            exit_code: 2,
            report: json!({"error": "sphere-formula requires a sphere source"}),
            summary: "input error: sphere-formula requires a sphere source\n".to_string(),
        };
    }

    let ring = Arc::clone(&problem.ring);
    let field = ring.field();
    report.insert("p".to_string(), json!(field.characteristic()));
    report.insert("field".to_string(), field_json(&ring));
    report.insert("ring".to_string(), json!(ring.vars()));
    report.insert("seed".to_string(), json!(seed));
    report.insert("source".to_string(), problem.source_desc.clone());
    report.insert(
        "tasks".to_string(),
        json!(tasks.iter().map(|t| t.name()).collect::<Vec<_>>()),
    );
    report.insert(
        "ideal".to_string(),
        json!(problem
            .ideal
            .generators()
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()),
    );

    let run = (|| -> Result<(), RunFailure> {
        let ctx = ParsevalContext::with_vol(
            problem.ideal.clone(),
            problem.ideal.groebner(),
            problem.vol.clone(),
        )
        .map_err(RunFailure::internal)?;
        report.insert("s".to_string(), json!(ctx.socle_degree()));
        report.insert("s_hat".to_string(), json!(ctx.socle_degree_hat()));
        let mut vol_table = Map::new();
        for (m, v) in ctx.vol().monomials().iter().zip(ctx.vol().values()) {
            vol_table.insert(format_monomial(ring.vars(), m), json!(v.serialize()));
        }
        report.insert("vol_table".to_string(), Value::Object(vol_table));
        summary.push_str(&format!(
            "ring: {} over F_{}^{} | s = {}, s_hat = {}\n",
            ring.vars().join(" "),
            field.characteristic(),
            field.extension_degree(),
            ctx.socle_degree(),
            ctx.socle_degree_hat()
        ));

        if tasks.contains(&Task::Resolve) {
            let f = crate::complexes::minimal_free_resolution(&problem.ideal)
                .map_err(RunFailure::internal)?;
            let rep = f.verify(true);
            if !rep.ok() {
                return Err(RunFailure::invariant(format!(
                    "resolution fails verification: {}",
                    rep.violations[0]
                )));
            }
            report.insert("betti".to_string(), json!(f.betti_numbers()));
            summary.push_str(&format!("resolution betti: {:?}\n", f.betti_numbers()));
        }

        let needs_eps = tasks
            .iter()
            .any(|t| matches!(t, Task::Epsilon | Task::Verify | Task::Lemmas | Task::SphereFormula));
        if !needs_eps {
            return Ok(());
        }

        let mut eps = ctx.epsilon_homological().map_err(RunFailure::internal)?;
        if opts.corrupt_epsilon {
            eps.epsilon = eps.epsilon.scale(&field.from_u64(2));
        }
        let eps_nf = ctx.bracket_groebner().normal_form(&eps.epsilon);
        report.insert(
            "epsilon".to_string(),
            json!({
                "method": "homological",
                "normal_form": eps_nf.to_string(),
                "certificate": eps.certificate.serialize(),
            }),
        );
        summary.push_str(&format!("epsilon (normal form): {}\n", eps_nf));

        // dual-method agreement for non-sphere sources; spheres use the
        // closed-form oracle in the sphere-formula task instead
        let method_agreement: Value = if problem.sphere.is_none() {
            let colon = ctx.epsilon_colon().map_err(RunFailure::internal)?;
            let agree = ctx
                .bracket_groebner()
                .normal_form(&eps.epsilon.sub(&colon.epsilon))
                .is_zero();
            if !agree {
                exit_code = exit_code.max(1);
            }
            summary.push_str(&format!(
                "method agreement (homological vs colon): {}\n",
                agree
            ));
            json!(agree)
        } else {
            Value::Null
        };
        report.insert("method_agreement".to_string(), method_agreement);

        if let Some(ci) = &problem.ci_spec {
            let oracle = ci.epsilon_oracle();
            let agree = ctx
                .bracket_groebner()
                .normal_form(&eps.epsilon.sub(&oracle))
                .is_zero()
                || {
                    // the oracle is unnormalized: compare classes up to the
                    // scalar fixed by hat_vol
                    let c = ctx
                        .hat_vol()
                        .evaluate(&oracle.mul(ctx.nu()))
                        .map_err(RunFailure::internal)?;
                    !c.is_zero() && {
                        let scaled = oracle.scale(&field.inv(&c).unwrap());
                        ctx.bracket_groebner()
                            .normal_form(&eps.epsilon.sub(&scaled))
                            .is_zero()
                    }
                };
            let socle_ok = ci.socle_degree() == ctx.socle_degree();
            report.insert(
                "ci_oracle".to_string(),
                json!({"epsilon_matches": agree, "socle_formula_matches": socle_ok}),
            );
            if !agree || !socle_ok {
                exit_code = exit_code.max(1);
            }
            summary.push_str(&format!(
                "ci oracle: epsilon {}, socle formula {}\n",
                agree, socle_ok
            ));
        }

        if tasks.contains(&Task::Verify) {
            let mut per_w = Vec::new();
            let mut passes = 0usize;
            let mut total = 0usize;
            for u in ctx.vol().monomials() {
                let w = Polynomial::from_term(&ring, u.clone(), field.one());
                let check = ctx.verify_identity(&eps, &w).map_err(RunFailure::internal)?;
                total += 1;
                if check.pass {
                    passes += 1;
                }
                per_w.push(json!({
                    "w": w.to_string(),
                    "lhs": check.lhs.serialize(),
                    "rhs": check.rhs.serialize(),
                    "pass": check.pass,
                }));
            }
            let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0x77_3315_9add_55u64);
            let monomials = monomials_of_degree(&ring, ctx.socle_degree());
            let mut drawn = 0;
            while drawn < 20 {
                let mut w = Polynomial::zero(&ring);
                for m in &monomials {
                    w = w.add(&Polynomial::from_term(
                        &ring,
                        m.clone(),
                        field.random_element(&mut rng),
                    ));
                }
                if w.is_zero() {
                    continue;
                }
                drawn += 1;
                let check = ctx.verify_identity(&eps, &w).map_err(RunFailure::internal)?;
                total += 1;
                if check.pass {
                    passes += 1;
                }
                per_w.push(json!({
                    "w": w.to_string(),
                    "lhs": check.lhs.serialize(),
                    "rhs": check.rhs.serialize(),
                    "pass": check.pass,
                }));
            }
            report.insert(
                "identity".to_string(),
                json!({"total": total, "passes": passes, "per_w": per_w}),
            );
            if passes < total {
                exit_code = exit_code.max(1);
            }
            summary.push_str(&format!("identity checks: {}/{} pass\n", passes, total));
        }

        if tasks.contains(&Task::Lemmas) {
            let lemmas = ctx.check_lemmas(&eps);
            report.insert(
                "lemmas".to_string(),
                json!({
                    "vol_nu_is_one": lemmas.vol_nu_is_one,
                    "eps_annihilates_ideal": lemmas.eps_annihilates_ideal,
                    "hat_vol_eps_nu_is_one": lemmas.hat_vol_eps_nu_is_one,
                    "eps_nu_congruence": lemmas.eps_nu_congruence,
                }),
            );
            if !lemmas.all_pass() {
                exit_code = exit_code.max(1);
            }
            summary.push_str(&format!(
                "lemmas: vol(nu)=1 {}, eps*I in bracket {}, hat_vol(eps*nu)=1 {}, congruence {}\n",
                lemmas.vol_nu_is_one,
                lemmas.eps_annihilates_ideal,
                lemmas.hat_vol_eps_nu_is_one,
                lemmas.eps_nu_congruence
            ));
        }

        if tasks.contains(&Task::SphereFormula) {
            let (sphere, reduction) = problem.sphere.as_ref().expect("checked above");
            let oracle = models::sphere_epsilon_oracle(sphere, reduction, &ring);
            let eps_match = ctx
                .bracket_groebner()
                .normal_form(&eps.epsilon.sub(&oracle))
                .is_zero()
                || {
                    let c = ctx
                        .hat_vol()
                        .evaluate(&oracle.mul(ctx.nu()))
                        .map_err(RunFailure::internal)?;
                    !c.is_zero() && {
                        let scaled = oracle.scale(&field.inv(&c).unwrap());
                        ctx.bracket_groebner()
                            .normal_form(&eps.epsilon.sub(&scaled))
                            .is_zero()
                    }
                };
            let n = sphere.dimension();
            let mut formula_total = 0usize;
            let mut formula_passes = 0usize;
            for m in monomials_of_degree(&ring, n as u32 + 1) {
                let a: Vec<u16> = m.exponents().to_vec();
                let rhs = models::multinomial_rhs(sphere, reduction, &ring, &a, ctx.vol());
                formula_total += 1;
                if &rhs == ctx.vol().value(&m) {
                    formula_passes += 1;
                }
            }
            report.insert(
                "sphere_formula".to_string(),
                json!({
                    "epsilon_matches_oracle": eps_match,
                    "kustin_miller_consistent": true,
                    "multinomial_total": formula_total,
                    "multinomial_passes": formula_passes,
                    "retries": reduction.failed_seeds,
                }),
            );
            if !eps_match || formula_passes < formula_total {
                exit_code = exit_code.max(1);
            }
            summary.push_str(&format!(
                "sphere formula: epsilon oracle {}, multinomial {}/{}\n",
                eps_match, formula_passes, formula_total
            ));
        }

        Ok(())
    })();

    if let Err(failure) = run {
        report.insert("error".to_string(), json!(failure.message));
        summary.push_str(&format!("error: {}\n", failure.message));
        return RunOutcome {
            exit_code: failure.code,
            report: Value::Object(report),
            summary,
        };
    }

    report.insert(
        "timings".to_string(),
        json!({"total_ms": started.elapsed().as_millis() as u64}),
    );
    summary.push_str(if exit_code == 0 {
        "result: PASS\n"
    } else {
        "result: FAIL\n"
    });
    RunOutcome {
        exit_code,
        report: Value::Object(report),
        summary,
    }
}

struct RunFailure {
    code: i32,
    message: String,
}

impl RunFailure {
    fn internal(e: impl std::fmt::Display) -> Self {
        RunFailure {
            code: 3,
            message: e.to_string(),
        }
    }

    fn invariant(message: String) -> Self {
        RunFailure { code: 3, message }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NONCI_JOB: &str = "\
field: p=3
ring: x y z
ideal: x^2, -y*z, x*y+z^2, -x*z, y^2
vol: x*y = 1
tasks: epsilon verify lemmas
seed: 0
";

    #[test]
    fn parse_the_reference_job() {
        let spec = parse_job(NONCI_JOB).unwrap();
        assert_eq!(spec.field, Some((3, 1)));
        assert_eq!(spec.ring_vars, vec!["x", "y", "z"]);
        assert_eq!(
            spec.source,
            JobSource::Ideal(vec![
                "x^2".to_string(),
                "-y*z".to_string(),
                "x*y+z^2".to_string(),
                "-x*z".to_string(),
                "y^2".to_string()
            ])
        );
        assert_eq!(spec.tasks, vec![Task::Epsilon, Task::Verify, Task::Lemmas]);
    }

    #[test]
    fn parse_rejects_bad_jobs() {
        // missing tasks
        let no_tasks = "field: p=3\nring: x y\nideal: x^2, y^2\nvol: x*y = 1\n";
        let err = parse_job(no_tasks).unwrap_err();
        assert!(err.to_string().contains("tasks"));
        // non-prime p
        let bad_p = "field: p=4\nring: x y\nideal: x^2, y^2\nvol: x*y = 1\ntasks: epsilon\n";
        assert!(parse_job(bad_p).unwrap_err().to_string().contains("not prime"));
        // unknown key
        let unk = "field: p=3\nfoo: bar\nring: x\nideal: x\nvol: 1 = 1\ntasks: epsilon\n";
        assert!(parse_job(unk).unwrap_err().to_string().contains("unknown key"));
        // two sources
        let two = "field: p=3\nring: x\nideal: x\nci: x\nvol: 1 = 1\ntasks: epsilon\n";
        assert!(parse_job(two).unwrap_err().to_string().contains("more than one source"));
    }

    #[test]
    fn job_round_trip() {
        let spec = parse_job(NONCI_JOB).unwrap();
        let rendered = spec.render();
        assert_eq!(parse_job(&rendered).unwrap(), spec);

        let fx = fixture_job("octahedron").unwrap();
        assert_eq!(parse_job(&fx.render()).unwrap(), fx);
    }

    #[test]
    fn run_reference_job_passes() {
        let spec = parse_job(NONCI_JOB).unwrap();
        let outcome = run_job(&spec, &RunOptions::default());
        assert_eq!(outcome.exit_code, 0, "summary: {}", outcome.summary);
        let identity = &outcome.report["identity"];
        assert_eq!(identity["passes"], identity["total"]);
        assert_eq!(outcome.report["s"], json!(2));
        assert_eq!(outcome.report["s_hat"], json!(12));
        assert_eq!(outcome.report["method_agreement"], json!(true));
    }

    #[test]
    fn corrupted_epsilon_fails_lemma() {
        let spec = parse_job(NONCI_JOB).unwrap();
        let opts = RunOptions {
            corrupt_epsilon: true,
            ..Default::default()
        };
        let outcome = run_job(&spec, &opts);
        assert_eq!(outcome.exit_code, 1);
        let lemmas = &outcome.report["lemmas"];
        assert_eq!(lemmas["eps_annihilates_ideal"], json!(true));
        assert_eq!(lemmas["hat_vol_eps_nu_is_one"], json!(false));
    }

    #[test]
    fn determinism_modulo_timings() {
        let spec = parse_job(NONCI_JOB).unwrap();
        let mut a = run_job(&spec, &RunOptions::default()).report;
        let mut b = run_job(&spec, &RunOptions::default()).report;
        a.as_object_mut().unwrap().remove("timings");
        b.as_object_mut().unwrap().remove("timings");
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn fixture_jobs_exist() {
        for name in FIXTURES {
            assert!(fixture_job(name).is_ok());
        }
        assert!(fixture_job("nope").is_err());
    }

    #[test]
    fn sphere_formula_requires_sphere_source() {
        let mut spec = parse_job(NONCI_JOB).unwrap();
        spec.tasks.push(Task::SphereFormula);
        let outcome = run_job(&spec, &RunOptions::default());
        assert_eq!(outcome.exit_code, 2);
    }

    #[test]
    fn run_square_fixture() {
        let mut spec = fixture_job("square").unwrap();
        spec.tasks = vec![Task::Epsilon, Task::Verify, Task::Lemmas, Task::SphereFormula];
        let outcome = run_job(&spec, &RunOptions::default());
        assert_eq!(outcome.exit_code, 0, "summary: {}", outcome.summary);
        let sf = &outcome.report["sphere_formula"];
        assert_eq!(sf["epsilon_matches_oracle"], json!(true));
        assert_eq!(sf["multinomial_passes"], sf["multinomial_total"]);
    }
}
