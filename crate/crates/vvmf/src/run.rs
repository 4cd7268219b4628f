//! Command dispatch: one command composes core operations on one input
//! document and yields a deterministic report.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use vvmf_core::basis::{canonical_basis, characteristic_matrix, principal_part, CanonicalBasis};
use vvmf_core::exactnum::parse_rational;
use vvmf_core::fixtures;
use vvmf_core::forms::{form_basis, form_space};
use vvmf_core::fundamental::{expand_fundamental, FundamentalMatrix};
use vvmf_core::repdata::{all_pass, trace_audit, CheckReport, RepData, RepTraces};
use vvmf_core::reptools::{
    congruence_heuristic, g_ell_conjugation_check, nonnegativity_test, rationality_test, reduce_representation,
    unit_transversal, ModularRep,
};
use vvmf_core::{BigRational, Error};

use crate::codec::{
    decode_modular, decode_principal_part, decode_repdata, encode_fundamental, encode_matrix, encode_modular,
    encode_principal_part, encode_repdata, encode_series, encode_vec, encode_vector, object, Codec, ParseError,
};

type Q = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Validate,
    Expand,
    DetCheck,
    HyperCheck,
    Dual,
    Shift,
    Basis,
    Invert,
    GfCheck,
    Dims,
    FormBasis,
    RepAudit,
    Reduce,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Expand => "expand",
            Command::DetCheck => "det-check",
            Command::HyperCheck => "hyper-check",
            Command::Dual => "dual",
            Command::Shift => "shift",
            Command::Basis => "basis",
            Command::Invert => "invert",
            Command::GfCheck => "gf-check",
            Command::Dims => "dims",
            Command::FormBasis => "form-basis",
            Command::RepAudit => "rep-audit",
            Command::Reduce => "reduce",
        }
    }
}

/// One invocation.
#[derive(Clone, Debug)]
pub struct Job {
    pub command: Command,
    pub input: Value,
    pub order: Option<usize>,
    pub max_pole: Option<usize>,
    pub bi_order: Option<(i64, i64)>,
    pub block: Option<Vec<usize>>,
    pub component: Option<usize>,
    pub pair: Option<(usize, usize)>,
    /// Upper bound on every expansion order.
    pub max_order: Option<usize>,
}

impl Job {
    pub fn new(command: Command, input: Value) -> Self {
        Job {
            command,
            input,
            order: None,
            max_pole: None,
            bi_order: None,
            block: None,
            component: None,
            pair: None,
            max_order: None,
        }
    }
}

/// Exit statuses.
pub const PASS: i32 = 0;
pub const CHECK_FAILED: i32 = 1;
pub const PARSE_ERROR: i32 = 2;
pub const PRECONDITION: i32 = 3;

enum Failure {
    Parse(String),
    Precondition(Error),
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e.0)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Precondition(e)
    }
}

type Out = Result<(Value, Vec<CheckReport>), Failure>;

/// Runs a job; returns the exit status and the report.
pub fn run(job: &Job) -> (i32, Value) {
    let digest = inputs_digest(job);
    let base = |results: Value, checks: Value| {
        object(vec![
            ("command", json!(job.command.name())),
            ("inputs_digest", json!(digest)),
            ("results", results),
            ("checks", checks),
        ])
    };
    match dispatch(job) {
        Ok((results, checks)) => {
            let status = if all_pass(&checks) { PASS } else { CHECK_FAILED };
            (status, base(results, encode_checks(&checks)))
        }
        Err(Failure::Parse(msg)) => {
            let mut r = base(Value::Null, json!([]));
            r["error"] = json!({ "kind": "parse", "message": msg });
            (PARSE_ERROR, r)
        }
        Err(Failure::Precondition(e)) => {
            let mut r = base(Value::Null, json!([]));
            r["error"] = json!({ "kind": error_kind(&e), "message": e.to_string() });
            (PRECONDITION, r)
        }
    }
}

fn error_kind(e: &Error) -> String {
    let dbg = format!("{e:?}");
    dbg.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string()
}

fn encode_checks(checks: &[CheckReport]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| json!({ "name": c.check, "pass": c.pass, "detail": format!("{} | {}", c.lhs, c.rhs) }))
            .collect(),
    )
}

/// SHA-256 over the command, the flags and the input in canonical form.
pub fn inputs_digest(job: &Job) -> String {
    let mut h = Sha256::new();
    h.update(job.command.name());
    h.update(b"\n");
    h.update(serde_json::to_string(&job.input).unwrap_or_default());
    h.update(b"\n");
    let flags = format!(
        "order={:?} max_pole={:?} bi_order={:?} block={:?} component={:?} pair={:?}",
        job.order, job.max_pole, job.bi_order, job.block, job.component, job.pair
    );
    h.update(flags);
    hex::encode(h.finalize())
}

struct Input {
    name: Option<String>,
    rep: Option<RepData<Q>>,
    modular: Option<ModularRep>,
}

fn load(v: &Value) -> Result<Input, Failure> {
    if let Some(name) = v.get("fixture") {
        let name = name.as_str().ok_or_else(|| Failure::Parse(String::from("`fixture` must be a string")))?;
        let f = fixtures::by_name(name).ok_or_else(|| Failure::Parse(format!("unknown fixture {name:?}")))?;
        return Ok(Input {
            name: Some(f.name),
            rep: Some(f.rep),
            modular: Some(f.modular),
        });
    }
    let rep = if v.get("x").is_some() { Some(decode_repdata(v)?) } else { None };
    let modular = if v.get("s").is_some() { Some(decode_modular(v)?) } else { None };
    if rep.is_none() && modular.is_none() {
        return Err(Failure::Parse(String::from("input needs `fixture`, `lambda` and `x`, or `s`")));
    }
    Ok(Input {
        name: v.get("name").and_then(Value::as_str).map(String::from),
        rep,
        modular,
    })
}

impl Input {
    fn rep(&self) -> Result<&RepData<Q>, Failure> {
        self.rep
            .as_ref()
            .ok_or_else(|| Failure::Parse(String::from("this command needs `lambda` and `x`")))
    }

    fn modular(&self) -> Result<&ModularRep, Failure> {
        self.modular
            .as_ref()
            .ok_or_else(|| Failure::Parse(String::from("this command needs `s`")))
    }
}

fn weight(v: &Value) -> Result<Q, Failure> {
    let w = v
        .get("weight")
        .ok_or_else(|| Failure::Parse(String::from("this command needs `weight`, e.g. \"5/2\"")))?;
    match w {
        Value::String(s) => parse_rational(s).map_err(Failure::Parse),
        Value::Number(n) if n.is_i64() => Ok(Q::from_integer(n.as_i64().unwrap().into())),
        _ => Err(Failure::Parse(String::from("`weight` must be a string like \"5/2\""))),
    }
}

fn cap(job: &Job, order: usize) -> Result<usize, Failure> {
    match job.max_order {
        Some(m) if order > m => Err(Failure::Precondition(Error::Invalid(format!(
            "order {order} exceeds the VVMF_MAX_ORDER limit {m}"
        )))),
        _ => Ok(order),
    }
}

fn order(job: &Job, default: usize) -> Result<usize, Failure> {
    let o = job.order.unwrap_or(default);
    if o == 0 {
        return Err(Failure::Parse(String::from("--order must be positive")));
    }
    cap(job, o)
}

fn expand(job: &Job, rep: &RepData<Q>, m: usize) -> Result<FundamentalMatrix<Q>, Failure> {
    Ok(expand_fundamental(rep, cap(job, m)?)?)
}

fn resonance_checks(fm: &FundamentalMatrix<Q>) -> Value {
    Value::Array(
        fm.resonances()
            .iter()
            .map(|r| json!({ "n": r.n, "row": r.row, "col": r.col }))
            .collect(),
    )
}

fn dispatch(job: &Job) -> Out {
    let input = load(&job.input)?;
    match job.command {
        Command::Validate => validate(job, &input),
        Command::Expand => {
            let rep = input.rep()?;
            let fm = expand(job, rep, order(job, 10)?)?;
            let checks = fm.compat1_check(rep.x())?;
            let results = object(vec![
                ("fundamental", encode_fundamental(&fm)),
                ("resonances", resonance_checks(&fm)),
            ]);
            Ok((results, checks))
        }
        Command::DetCheck => {
            let rep = input.rep()?;
            let (spec, sig) = rep.spectral_check();
            let Some(sig) = sig else {
                return Ok((Value::Null, spec));
            };
            let fm = expand(job, rep, order(job, 30)?)?;
            let mut checks = fm.det_check(&sig)?;
            checks.push(fm.detdif_check()?);
            let results = object(vec![
                ("signature", json!(sig.to_string())),
                ("det_xi", encode_series(&fm.det_xi()?)),
            ]);
            Ok((results, checks))
        }
        Command::HyperCheck => {
            let rep = input.rep()?;
            let (a, b) = rep.derive_ab();
            let fm = expand(job, rep, order(job, 10)?)?;
            let checks = fm.hypergeometric_check(&a, &b)?;
            let results = object(vec![("a", encode_matrix(&a)), ("b", encode_matrix(&b))]);
            Ok((results, checks))
        }
        Command::Dual => dual(job, &input),
        Command::Shift => shift(job, &input),
        Command::Basis => {
            let rep = input.rep()?;
            let pole = job.max_pole.unwrap_or(2).max(1);
            let m = order(job, pole + 8)?;
            let basis = canonical_basis(&expand(job, rep, m)?, pole)?;
            let mut checks = vec![CheckReport::equal(
                "characteristic matrix recovered from the basis",
                &characteristic_matrix(&basis)?,
                rep.x(),
            )];
            if pole > 1 {
                checks.extend(basis.differential_relations_check((pole - 1).min(4))?);
            }
            let mut vectors = Vec::new();
            for n in 1..=pole {
                for xi in 0..basis.dim() {
                    let v = basis.vector(xi, n)?;
                    vectors.push(object(vec![
                        ("component", json!(xi)),
                        ("pole", json!(n)),
                        ("constant_part", encode_vec(&v.constant_part()?)),
                        ("series", encode_vector(&v.series)),
                    ]));
                }
            }
            Ok((object(vec![("lambda", encode_vec(rep.lambda())), ("vectors", Value::Array(vectors))]), checks))
        }
        Command::Invert => invert(job, &input),
        Command::GfCheck => {
            let rep = input.rep()?;
            let (mq, mz) = job.bi_order.unwrap_or((8, 8));
            if mq < 0 || mz < 0 {
                return Err(Failure::Parse(String::from("--bi-order must be nonnegative")));
            }
            let m = cap(job, (mq + mz + 1) as usize)?;
            let basis = canonical_basis(&expand(job, rep, m)?, (mz + 1) as usize)?;
            let checks = basis.generating_function_check(mq, mz)?;
            let results = object(vec![("bi_order", json!([mq, mz])), ("pole_orders", json!(mz + 1))]);
            Ok((results, checks))
        }
        Command::Dims => {
            let rho = input.modular()?;
            let ks: Vec<Q> = match job.input.get("weights") {
                Some(Value::Array(ws)) => ws
                    .iter()
                    .map(|w| weight(&json!({ "weight": w })))
                    .collect::<Result<_, _>>()?,
                _ => vec![weight(&job.input)?],
            };
            let mut rows = Vec::new();
            let mut checks = Vec::new();
            for k in &ks {
                let sp = form_space(rho, k)?;
                checks.extend(sp.induced.checks.iter().map(|c| {
                    let mut c = c.clone();
                    c.check = format!("weight {k}: {}", c.check);
                    c
                }));
                rows.push(object(vec![
                    ("weight", json!(k.to_string())),
                    ("lambda", sp.lambda.as_deref().map_or(Value::Null, encode_vec)),
                    ("dim_forms", json!(sp.dim_forms)),
                    ("dim_cusp_forms", json!(sp.dim_cusp_forms)),
                ]));
            }
            Ok((Value::Array(rows), checks))
        }
        Command::FormBasis => {
            let rep = input.rep()?;
            let k = weight(&job.input)?;
            let s = &k / Q::from_integer(12.into());
            let need = rep
                .lambda()
                .iter()
                .map(|l| vvmf_core::exactnum::floor(&(l + &s)))
                .max()
                .and_then(|n| usize::try_from(n).ok())
                .unwrap_or(0)
                .max(1);
            let pole = job.max_pole.unwrap_or(need).max(need);
            let m = order(job, pole + 8)?.max(pole);
            let basis = canonical_basis(&expand(job, rep, m)?, pole)?;
            let fb = form_basis(&basis, &k)?;
            let checks = fb.checks.clone();
            let forms: Vec<Value> = fb
                .labels
                .iter()
                .zip(&fb.forms)
                .map(|(&(xi, n), f)| {
                    object(vec![("label", json!([xi, n])), ("series", encode_vector(f))])
                })
                .collect();
            let results = object(vec![
                ("weight", json!(k.to_string())),
                ("dim_formula", json!(fb.dim_formula)),
                ("count", json!(fb.forms.len())),
                ("forms", Value::Array(forms)),
            ]);
            Ok((results, checks))
        }
        Command::RepAudit => rep_audit(job, &input),
        Command::Reduce => {
            let rho = input.modular()?;
            let orbits = vvmf_core::reptools::charge_conjugation_orbits(rho)?;
            let red = reduce_representation(rho)?;
            let checks = red.relation_checks();
            let results = object(vec![("orbits", json!(orbits)), ("reduced", encode_modular(&red))]);
            Ok((results, checks))
        }
    }
}

fn validate(job: &Job, input: &Input) -> Out {
    let rep = input.rep()?;
    let (mut checks, sig) = rep.spectral_check();
    checks.extend(rep.monodromy_check());
    checks.push(rep.linear_relation_check());
    let traces: Option<RepTraces> = input.modular.as_ref().map(ModularRep::traces);
    let blocks = job
        .block
        .clone()
        .or_else(|| job.input.get("blocks").and_then(|b| serde_json::from_value(b.clone()).ok()));
    checks.extend(trace_audit(rep, traces.as_ref(), blocks.as_deref(), None));
    let results = object(vec![
        ("name", input.name.as_deref().map_or(Value::Null, |n| json!(n))),
        ("signature", sig.map_or(Value::Null, |s| json!(s.to_string()))),
        ("a", encode_matrix(&rep.a_matrix())),
        ("b", encode_matrix(&rep.b_matrix())),
    ]);
    Ok((results, checks))
}

fn dual(job: &Job, input: &Input) -> Out {
    let rep = input.rep()?;
    let m = order(job, 20)?;
    let fm = expand(job, rep, m)?;
    let dfm = fm.dual()?;
    let drep = rep.dual();
    let mut checks = dfm.compat1_check(drep.x())?;
    let direct = expand(job, &drep, m)?;
    checks.push(CheckReport::new(
        "dual Ξ equals the expansion of the dual data",
        dfm.psi() == direct.psi(),
        format!("through q^{m}"),
        "equal",
    ));
    checks.push(CheckReport::new("double dual is the identity", drep.dual() == *rep, encode_repdata(&drep.dual()), encode_repdata(rep)));
    Ok((
        object(vec![("dual", encode_repdata(&drep)), ("fundamental", encode_fundamental(&dfm))]),
        checks,
    ))
}

fn shift(job: &Job, input: &Input) -> Out {
    let rep = input.rep()?;
    let (i, j) = job
        .pair
        .ok_or_else(|| Failure::Parse(String::from("shift needs --pair i,j")))?;
    let m = order(job, 12)?;
    let fm = expand(job, rep, m)?;
    let (new_rep, new_fm) = fm.lambda_shift(i, j)?;
    let direct = expand(job, &new_rep, new_fm.order())?;
    let mut checks = new_rep.spectral_check().0;
    checks.push(CheckReport::new(
        "shifted Ξ equals the expansion of the shifted data",
        new_fm.psi() == direct.psi(),
        format!("through q^{}", new_fm.order()),
        "equal",
    ));
    checks.push(CheckReport::equal(
        "Tr Λ is unchanged",
        &new_rep.trace_lambda(),
        &rep.trace_lambda(),
    ));
    Ok((
        object(vec![("shifted", encode_repdata(&new_rep)), ("fundamental", encode_fundamental(&new_fm))]),
        checks,
    ))
}

fn invert(job: &Job, input: &Input) -> Out {
    let rep = input.rep()?;
    let p = decode_principal_part::<Q>(job.input.get("principal_part").unwrap_or(&json!([])))?;
    let pole = job.max_pole.unwrap_or(0).max(p.max_pole()).max(1);
    let m = order(job, 2 * pole + 3)?.max(pole);
    let basis: CanonicalBasis<Q> = canonical_basis(&expand(job, rep, m)?, pole)?;
    let y = basis.invert(&p)?;
    let back = principal_part(&y);
    let mut checks = vec![CheckReport::new(
        "principal part of the result equals the input",
        back == p,
        encode_principal_part(&back),
        encode_principal_part(&p),
    )];
    let ode_order = m as i64 - p.max_pole() as i64 - 1;
    if !p.is_empty() && ode_order >= 0 {
        checks.extend(basis.ode_check(&y, ode_order)?);
    }
    Ok((object(vec![("vector", encode_vector(&y)), ("principal_part", encode_principal_part(&p))]), checks))
}

fn rep_audit(job: &Job, input: &Input) -> Out {
    let rho = input.modular()?;
    let mut checks = rho.relation_checks();
    let rat = rationality_test(rho)?;
    checks.push(CheckReport::new(
        "rationality test",
        rat.pass,
        rat.witness.as_ref().map_or(String::from("no witness"), |(l, _)| format!("fails at l = {l}")),
        "sigma_l(S) = G_l S for all l",
    ));
    let cong = congruence_heuristic(rho);
    checks.push(CheckReport::new(
        "congruence heuristic",
        cong.pass,
        cong.witness.map_or(String::from("no witness"), |l| format!("fails at l = {l}")),
        "T^(l^2) a permutation of T",
    ));
    // a diagnostic that cannot run on this S counts as a failed check
    for ell in unit_transversal(rho.conductor()) {
        checks.push(g_ell_conjugation_check(rho, ell).unwrap_or_else(|e| {
            CheckReport::new(format!("G_{ell} T G_{ell}^-1 = T^(l^2)"), false, e, "defined")
        }));
    }
    let nn = nonnegativity_test(rho, job.component);
    checks.push(match &nn {
        Ok(nn) => CheckReport::new(
            "nonnegativity test",
            nn.pass(),
            format!("ker(S-1) has dimension {}", nn.kernel_dim),
            match nn.positive_eigenvector {
                Some(true) => "positive eigenvector found",
                Some(false) => "no positive eigenvector",
                None => "undecided",
            },
        ),
        Err(e) => CheckReport::new("nonnegativity test", false, e, "defined"),
    });
    if let Some(rep) = &input.rep {
        let blocks = job.block.clone();
        checks.extend(trace_audit(rep, Some(&rho.traces()), blocks.as_deref(), None));
    }
    let tr = rho.traces();
    let results = object(vec![
        ("representation", encode_modular(rho)),
        ("trace_s", tr.s.encode()),
        ("trace_u", tr.u.encode()),
        ("is_psl", json!(rho.is_psl())),
        ("kernel_dim", nn.as_ref().map_or(Value::Null, |n| json!(n.kernel_dim))),
        (
            "rationality_witness",
            rat.witness.map_or(Value::Null, |(l, d)| json!({ "l": l, "difference": encode_matrix(&d) })),
        ),
    ]);
    Ok((results, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_depends_on_flags() {
        let mut a = Job::new(Command::Expand, json!({"fixture": "E7"}));
        let b = a.clone();
        a.order = Some(3);
        assert_ne!(inputs_digest(&a), inputs_digest(&b));
        assert_eq!(inputs_digest(&b), inputs_digest(&b.clone()));
    }

    #[test]
    fn order_cap_is_a_precondition_failure() {
        let mut j = Job::new(Command::Expand, json!({"fixture": "E7"}));
        j.order = Some(50);
        j.max_order = Some(20);
        let (status, r) = run(&j);
        assert_eq!(status, PRECONDITION);
        assert_eq!(r["error"]["kind"], "Invalid");
    }

    #[test]
    fn missing_fields_are_parse_errors() {
        let (status, _) = run(&Job::new(Command::Validate, json!({"lambda": ["1"]})));
        assert_eq!(status, PARSE_ERROR);
        let (status, _) = run(&Job::new(Command::Shift, json!({"fixture": "E7"})));
        assert_eq!(status, PARSE_ERROR);
    }
}
