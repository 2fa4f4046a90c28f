use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use vosa::affinevoa::{
    build_vacuum_for, check_positive_integer, commutator_identity_check, conformal,
    residual_singular_vectors, simple_quotient, virasoro_check, zhu_circle, zhu_star,
    ConformalJson, ModuleReport, SimpleQuotientJson, TruncatedModule, VirasoroSummary,
};
use vosa::c2::{c2_report, closure_checks, nilpotency_check, C2Report, ClosureReport};
use vosa::integrability::{self, CertificateJson, LabelFamily};
use vosa::liesuper::{root_inner_products, AlgebraJson, AxiomReport};
use vosa::linalg::{parse_scalar, Scalar};
use vosa::realizations::{g3_root_data, Family, G3Json, Realization, RealizationJson};
use vosa::Error;

use crate::{AlgebraArgs, C2Args, EnumerateArgs, Format, ModuleArgs};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }

    fn cutoff(message: impl Into<String>) -> Self {
        Failure {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CutoffExceeded { .. } | Error::Untestable(_) => 3,
            Error::InvalidArgument(_) | Error::ParseScalar(_) | Error::FamilyMismatch { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<Output, Failure>;

fn emit<T: Serialize>(
    format: Format,
    value: &T,
    table: impl FnOnce() -> String,
    code: u8,
) -> CmdResult {
    let stdout = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Failure {
                code: 1,
                message: e.to_string(),
            })?;
            s.push('\n');
            s
        }
        Format::Table => table(),
    };
    Ok(Output { stdout, code })
}

fn warn(message: &str) {
    eprintln!("warning: {message}");
}

fn realization(family: &str, n: usize) -> Result<Realization, Failure> {
    let f = Family::from_tag(family).ok_or_else(|| {
        Failure::usage(format!(
            "unknown family {family}; expected sl1n, osp22n, osp12n, sl or sp"
        ))
    })?;
    f.build(n).map_err(|e| Failure::usage(e.to_string()))
}

struct Config {
    r: Realization,
    k: Scalar,
    cutoff: usize,
}

fn module_config(a: &ModuleArgs) -> Result<Config, Failure> {
    let r = realization(&a.family, a.n)?;
    let k = parse_scalar(&a.k).map_err(|e| Failure::usage(e.to_string()))?;
    if a.cutoff < 0 {
        return Err(Failure::usage(format!(
            "cutoff N must be nonnegative, got {}",
            a.cutoff
        )));
    }
    Ok(Config {
        r,
        k,
        cutoff: a.cutoff as usize,
    })
}

// algebra

#[derive(Serialize)]
struct AlgebraOut {
    realization: RealizationJson,
    superdimension: i64,
    dual_coxeter: String,
    axiom_report: AxiomReport,
    root_inner_products: Vec<Vec<String>>,
    structure: AlgebraJson,
}

#[derive(Serialize)]
struct G3Out {
    g3: G3Json,
    validation: Vec<String>,
}

pub fn algebra(a: &AlgebraArgs) -> CmdResult {
    if a.family == "g3" {
        let d = g3_root_data();
        let out = G3Out {
            g3: d.to_json(),
            validation: integrability::validate_g3_data(&d),
        };
        let code = u8::from(!out.validation.is_empty());
        return emit(a.format, &out, || g3_table(&out), code);
    }
    let r = realization(&a.family, a.n)?;
    let g = &r.algebra;
    let products = root_inner_products(&r.roots, g.gram())?;
    let out = AlgebraOut {
        realization: r.to_json(),
        superdimension: g.superdimension(),
        dual_coxeter: g.dual_coxeter()?.to_string(),
        axiom_report: g.verify_axioms(),
        root_inner_products: products
            .iter()
            .map(|row| row.iter().map(|x| x.to_string()).collect())
            .collect(),
        structure: g.to_json(),
    };
    let code = u8::from(!out.axiom_report.is_empty());
    emit(a.format, &out, || algebra_table(&out), code)
}

fn algebra_table(o: &AlgebraOut) -> String {
    let r = &o.realization;
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{}: dim {} ({} even, {} odd), sdim {}",
        r.name, r.dim, r.even_dim, r.odd_dim, o.superdimension
    );
    let _ = writeln!(s, "dual Coxeter number: {}", o.dual_coxeter);
    if o.axiom_report.is_empty() {
        let _ = writeln!(s, "axioms: all hold");
    } else {
        let _ = writeln!(s, "axioms: {} violations", o.axiom_report.violations.len());
        for v in &o.axiom_report.violations {
            let _ = writeln!(s, "  {v:?}");
        }
    }
    let _ = writeln!(s, "form on epsilons:");
    for (l, row) in r.epsilon_labels.iter().zip(&r.epsilon_gram) {
        let _ = writeln!(
            s,
            "  ({l}|{l}) = {}",
            row[r.epsilon_labels.iter().position(|x| x == l).unwrap()]
        );
    }
    let _ = writeln!(s, "simple roots: {}", r.simple_roots.join(", "));
    if let Some(h) = &r.highest_root {
        let _ = writeln!(s, "theta: {h}");
    }
    let _ = writeln!(
        s,
        "{:<20} {:<6} {:>6} {:>9}",
        "root", "parity", "norm", "positive"
    );
    for root in &r.roots {
        let parity = serde_json::to_value(root.parity)
            .ok()
            .and_then(|v| v.as_str().map(String::from));
        let _ = writeln!(
            s,
            "{:<20} {:<6} {:>6} {:>9}",
            root.label,
            parity.unwrap_or_default(),
            root.norm,
            root.positive
        );
    }
    s
}

fn g3_table(o: &G3Out) -> String {
    let g = &o.g3;
    let mut s = String::new();
    let _ = writeln!(s, "G(3) root data in {}", g.labels.join(", "));
    for (l, row) in g.labels.iter().zip(&g.gram) {
        let _ = writeln!(s, "  ({l}|·) = [{}]", row.join(", "));
    }
    let _ = writeln!(s, "positive even roots: {}", g.positive_even.join(", "));
    let _ = writeln!(s, "positive odd roots: {}", g.positive_odd.join(", "));
    let _ = writeln!(s, "simple roots: {}", g.simple.join(", "));
    let _ = writeln!(s, "weights of V: {}", g.weights_v.join(", "));
    let _ = writeln!(s, "weights of V_1: {}", g.weights_v1.join(", "));
    let _ = writeln!(
        s,
        "theta2 = {}, (theta2|theta2) = {}",
        g.theta2, g.theta2_norm
    );
    if o.validation.is_empty() {
        let _ = writeln!(s, "validation: all data match");
    } else {
        for v in &o.validation {
            let _ = writeln!(s, "mismatch: {v}");
        }
    }
    s
}

// vacuum and simple

/// Grades whose basis states the Virasoro self-check visits.
const VIRASORO_GRADES: usize = 3;

fn conformal_part(
    m: &TruncatedModule,
) -> Result<Option<(ConformalJson, VirasoroSummary)>, Failure> {
    if m.is_critical()? {
        warn("critical level k = -h∨: no conformal vector, conformal data skipped");
        return Ok(None);
    }
    if m.cutoff() < 2 {
        warn("conformal vector lies in grade 2, above the cutoff; conformal data skipped");
        return Ok(None);
    }
    let cd = conformal(m)?;
    let check = virasoro_check(m, &cd, VIRASORO_GRADES)?;
    Ok(Some((cd.to_json(m), check)))
}

#[derive(Serialize)]
struct SingularJson {
    grade: i64,
    state: String,
}

#[derive(Serialize)]
struct VacuumOut {
    module: ModuleReport,
    conformal: Option<ConformalJson>,
    virasoro: Option<VirasoroSummary>,
    singular_vectors: Vec<SingularJson>,
}

pub fn vacuum(a: &ModuleArgs) -> CmdResult {
    let cfg = module_config(a)?;
    let m = build_vacuum_for(&cfg.r, cfg.k.clone(), cfg.cutoff);
    let conf = conformal_part(&m)?;
    let singular = residual_singular_vectors(&m, &cfg.r.theta_raising())?
        .into_iter()
        .map(|s| SingularJson {
            grade: s.grade,
            state: m.format_state(&s),
        })
        .collect();
    let (conformal, virasoro) = conf.map_or((None, None), |(c, v)| (Some(c), Some(v)));
    let code = u8::from(virasoro.as_ref().is_some_and(|v| !v.failures.is_empty()));
    let out = VacuumOut {
        module: m.report(),
        conformal,
        virasoro,
        singular_vectors: singular,
    };
    emit(a.format, &out, || vacuum_table(&out), code)
}

fn conformal_lines(s: &mut String, c: &Option<ConformalJson>, v: &Option<VirasoroSummary>) {
    if let Some(c) = c {
        let _ = writeln!(
            s,
            "h∨ = {}, c = {} (Sugawara formula: {})",
            c.h_dual, c.c, c.c_sugawara
        );
    }
    if let Some(v) = v {
        let verdict = if v.failures.is_empty() {
            "all hold"
        } else {
            "FAILED"
        };
        let _ = writeln!(
            s,
            "Virasoro relations on grades <= {}: {} checks, {verdict}",
            v.max_grade, v.checked
        );
        for f in &v.failures {
            let _ = writeln!(s, "  {f}");
        }
    }
}

fn vacuum_table(o: &VacuumOut) -> String {
    let mut s = String::new();
    let m = &o.module;
    let _ = writeln!(s, "V^{}({}) up to grade {}", m.k, m.algebra, m.cutoff);
    let _ = writeln!(s, "{:>5} {:>8}", "grade", "dim");
    for (g, d) in m.grade_dims.iter().enumerate() {
        let _ = writeln!(s, "{g:>5} {d:>8}");
    }
    conformal_lines(&mut s, &o.conformal, &o.virasoro);
    if o.singular_vectors.is_empty() {
        let _ = writeln!(s, "no singular vectors in grades 1..={}", m.cutoff);
    }
    for v in &o.singular_vectors {
        let _ = writeln!(s, "singular vector at grade {}: {}", v.grade, v.state);
    }
    s
}

#[derive(Serialize)]
struct SimpleOut {
    quotient: SimpleQuotientJson,
    generator: String,
    conformal: Option<ConformalJson>,
    virasoro: Option<VirasoroSummary>,
}

fn simple_config(a: &ModuleArgs) -> Result<(Config, usize), Failure> {
    let cfg = module_config(a)?;
    let k = check_positive_integer(&cfg.k).map_err(|e| Failure::usage(e.to_string()))?;
    if cfg.cutoff < k + 1 {
        return Err(Failure::cutoff(format!(
            "the generator e_θ(-1)^{} 1 has grade {}, above the cutoff N = {}",
            k + 1,
            k + 1,
            cfg.cutoff
        )));
    }
    Ok((cfg, k))
}

pub fn simple(a: &ModuleArgs) -> CmdResult {
    let (cfg, _) = simple_config(a)?;
    let q = simple_quotient(&cfg.r, &cfg.k, cfg.cutoff)?;
    for s in &q.residual_singular {
        warn(&format!(
            "quotient not simple at this cutoff: singular vector {}",
            q.module.format_state(s)
        ));
    }
    let conf = conformal_part(&q.module)?;
    let (conformal, virasoro) = conf.map_or((None, None), |(c, v)| (Some(c), Some(v)));
    let code = u8::from(virasoro.as_ref().is_some_and(|v| !v.failures.is_empty()));
    let out = SimpleOut {
        quotient: q.to_json(&cfg.r.theta_raising())?,
        generator: q.module.ambient().format_state(&q.generator),
        conformal,
        virasoro,
    };
    emit(a.format, &out, || simple_table(&out), code)
}

fn simple_table(o: &SimpleOut) -> String {
    let q = &o.quotient;
    let mut s = String::new();
    let _ = writeln!(s, "L_{}({},0) up to grade {}", q.algebra, q.k, q.cutoff);
    let _ = writeln!(
        s,
        "{:>5} {:>8} {:>12} {:>8}",
        "grade", "pbw_dim", "closure_rank", "dim"
    );
    for g in 0..=q.cutoff {
        let _ = writeln!(
            s,
            "{g:>5} {:>8} {:>12} {:>8}",
            q.grade_dims[g], q.closure_ranks[g], q.quotient_grade_dims[g]
        );
    }
    if q.generator_singular {
        let _ = writeln!(
            s,
            "singular generator found at grade {}: {}",
            q.generator_grade, o.generator
        );
    } else {
        let _ = writeln!(
            s,
            "generator at grade {} is NOT singular: {}",
            q.generator_grade, o.generator
        );
    }
    conformal_lines(&mut s, &o.conformal, &o.virasoro);
    if q.residual_singular.is_empty() {
        let _ = writeln!(s, "no singular vectors remain in grades 1..={}", q.cutoff);
    }
    for r in &q.residual_singular {
        let _ = writeln!(s, "residual singular vector: {r}");
    }
    s
}

// c2

#[derive(Serialize)]
struct NilpotencyJson {
    root: String,
    power: usize,
    vanishes: bool,
}

#[derive(Serialize)]
struct C2Out {
    report: C2Report,
    closure: ClosureReport,
    nilpotency: Option<NilpotencyJson>,
}

pub fn c2(a: &C2Args) -> CmdResult {
    let (m, cfg, nil) = if a.vacuum {
        let cfg = module_config(&a.module)?;
        (
            build_vacuum_for(&cfg.r, cfg.k.clone(), cfg.cutoff),
            cfg,
            None,
        )
    } else {
        let (cfg, k) = simple_config(&a.module)?;
        let q = simple_quotient(&cfg.r, &cfg.k, cfg.cutoff)?;
        (q.module, cfg, Some(k + 1))
    };
    if cfg.cutoff < 2 {
        return Err(Failure::cutoff("C_2 vanishes below grade 2; use N >= 2"));
    }
    let report = c2_report(&m)?;
    let closure = closure_checks(&m, a.samples, a.module.seed)?;
    let nilpotency = match nil {
        Some(p) if p <= cfg.cutoff => Some(NilpotencyJson {
            root: cfg.r.root_label(cfg.r.highest_root()),
            power: p,
            vanishes: nilpotency_check(&m, cfg.r.e_theta(), p)?,
        }),
        _ => None,
    };
    let out = C2Out {
        report,
        closure,
        nilpotency,
    };
    emit(a.module.format, &out, || c2_table(&out), 0)
}

fn c2_table(o: &C2Out) -> String {
    let mut s = o.report.table();
    let c = &o.closure;
    let _ = writeln!(
        s,
        "closure lemmas: {} samples, {} skipped, {} violations",
        c.samples,
        c.skipped,
        c.violations.len()
    );
    for v in &c.violations {
        let _ = writeln!(s, "  {v}");
    }
    if let Some(n) = &o.nilpotency {
        let verdict = if n.vanishes {
            "vanishes"
        } else {
            "does not vanish"
        };
        let _ = writeln!(
            s,
            "Y(e_{}, z)^{} {verdict} on the computed grades",
            n.root, n.power
        );
    }
    s
}

// enumerate

pub fn enumerate(a: &EnumerateArgs) -> CmdResult {
    let family = LabelFamily::from_tag(&a.family).ok_or_else(|| {
        Failure::usage(format!(
            "unknown family {}; expected sl1n or osp22n",
            a.family
        ))
    })?;
    let k = parse_scalar(&a.k).map_err(|e| Failure::usage(e.to_string()))?;
    let cert =
        integrability::enumerate(family, a.n, &k).map_err(|e| Failure::usage(e.to_string()))?;
    let out = cert.to_json();
    emit(a.format, &out, || enumerate_table(&out), 0)
}

fn enumerate_table(c: &CertificateJson) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{} n = {} level {}: labels ({})",
        c.family_tag(),
        c.n,
        c.k,
        c.labels.join(", ")
    );
    let _ = writeln!(s, "discrete solutions ({}):", c.discrete.len());
    for d in &c.discrete {
        let _ = writeln!(s, "  ({})", d.join(", "));
    }
    let _ = writeln!(s, "one-parameter families ({}):", c.families.len());
    for f in &c.families {
        let fixed: Vec<String> = f.fixed.iter().map(|(l, v)| format!("{l} = {v}")).collect();
        let _ = writeln!(s, "  b0 = t, b1 = {} - t, {}", f.m, fixed.join(", "));
    }
    let _ = writeln!(s, "infinitely many: {}", c.infinite);
    s
}

trait FamilyTag {
    fn family_tag(&self) -> &'static str;
}

impl FamilyTag for CertificateJson {
    fn family_tag(&self) -> &'static str {
        self.family.tag()
    }
}

// zhu-check

#[derive(Serialize, Default)]
struct ZhuOut {
    unit_checks: usize,
    top_component_checks: usize,
    commutator_checks: usize,
    failures: Vec<String>,
}

/// Commutator-formula samples per run.
const COMMUTATOR_SAMPLES: usize = 100;
/// Sampled pairs for the top component of `u∘v`.
const TOP_SAMPLES: usize = 50;

pub fn zhu_check(a: &ModuleArgs) -> CmdResult {
    let cfg = module_config(a)?;
    if cfg.cutoff < 2 {
        return Err(Failure::cutoff("the Zhu checks need N >= 2"));
    }
    let m = build_vacuum_for(&cfg.r, cfg.k.clone(), cfg.cutoff);
    let n = cfg.cutoff;
    let mut out = ZhuOut::default();
    let one = m.vacuum();
    // 1∘v = 0 and 1*v = v; 1∘v has a top term in grade wt v + 1.
    for g in 0..n.min(4) {
        for i in 0..m.pbw_dim(g) {
            let v = m.basis_state(g, i);
            out.unit_checks += 1;
            if !zhu_circle(&m, &one, &v)?.is_empty() {
                out.failures
                    .push(format!("1∘v != 0 for v = {}", m.format_state(&v)));
            }
            let star = zhu_star(&m, &one, &v)?;
            if star.len() != 1 || star.get(&(g as i64)) != Some(&v) {
                out.failures
                    .push(format!("1*v != v for v = {}", m.format_state(&v)));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let pick = |rng: &mut ChaCha8Rng, g: usize| m.basis_state(g, rng.gen_range(0..m.pbw_dim(g)));
    for _ in 0..TOP_SAMPLES {
        let wa = rng.gen_range(0..n);
        let wb = rng.gen_range(0..n - wa);
        let (u, v) = (pick(&mut rng, wa), pick(&mut rng, wb));
        out.top_component_checks += 1;
        let circ = zhu_circle(&m, &u, &v)?;
        let top = m.field_coeff(&u, -2, &v)?;
        let got = circ
            .get(&top.grade)
            .cloned()
            .unwrap_or_else(|| m.zero(top.grade));
        if got != top || circ.keys().any(|&g| g > top.grade) {
            out.failures.push(format!(
                "top of u∘v differs from u_-2 v: u = {}, v = {}",
                m.format_state(&u),
                m.format_state(&v)
            ));
        }
    }
    let n = n as i64;
    while out.commutator_checks < COMMUTATOR_SAMPLES {
        let (wu, wv, ww) = (
            rng.gen_range(1..=2i64),
            rng.gen_range(1..=2i64),
            rng.gen_range(0..=2i64),
        );
        let (p, q) = (rng.gen_range(-1..=1i32), rng.gen_range(-1..=1i32));
        let top = wu + wv + ww - (p + q) as i64 - 2;
        let mid = (ww + wv - q as i64 - 1)
            .max(ww + wu - p as i64 - 1)
            .max(wu + wv - 1);
        // (1, 1, 0) with p = q = 0 always fits once N >= 2, so the loop ends.
        if top < 0 || top > n || mid > n {
            continue;
        }
        let (u, v, w) = (
            pick(&mut rng, wu as usize),
            pick(&mut rng, wv as usize),
            pick(&mut rng, ww as usize),
        );
        out.commutator_checks += 1;
        if !commutator_identity_check(&m, &u, &v, &w, p, q)? {
            out.failures.push(format!(
                "commutator formula fails for m = {p}, n = {q}: u = {}, v = {}, w = {}",
                m.format_state(&u),
                m.format_state(&v),
                m.format_state(&w)
            ));
        }
    }
    let code = u8::from(!out.failures.is_empty());
    emit(a.format, &out, || zhu_table(&out), code)
}

fn zhu_table(o: &ZhuOut) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "1∘v = 0 and 1*v = v: {} states", o.unit_checks);
    let _ = writeln!(
        s,
        "top component of u∘v = u_-2 v: {} pairs",
        o.top_component_checks
    );
    let _ = writeln!(s, "commutator formula: {} triples", o.commutator_checks);
    if o.failures.is_empty() {
        let _ = writeln!(s, "all checks hold");
    }
    for f in &o.failures {
        let _ = writeln!(s, "FAILED: {f}");
    }
    s
}
