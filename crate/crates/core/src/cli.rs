//! Batch verification: JSON configurations, named checks and reports.
//!
//! A configuration names one check and carries the family data it needs.
//! Scalars use the cyclotomic literal format of [`crate::cyclotomic`]: an
//! object `{"order": N, "coeffs": {"k": "p/q"}}`, or `"p/q"` / an integer for
//! rationals. All literals and root orders are promoted into one ambient field
//! `Q(zeta_N)`, with `N` the least common multiple of every order in the
//! configuration (or `field_order` when given, which must be a multiple).

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cherednik::{
    corrupted, pbw_consistency, presentation_abelian, presentation_negative,
    presentation_rational_sn, verma_relation_failure, Presentation,
};
use crate::cyclotomic::{lcm_orders, CycloElement, CycloField, CycloFieldExt};
use crate::doubles::{
    braided_reduce, build_q_reflections, embedding_conditions, ga_to_string, heisenberg_beta,
    negative_q_cherednik, q_commutativity_failure, quad_algebra_dims, r_max, roots_span,
    CommutatorMap, RelationSpace, YDModule,
};
use crate::dunkl::{
    braided_partial, d_ij, divided_difference_sigma, divided_difference_t, dunkl_abelian,
    dunkl_negative, dunkl_negative_via_dij, dunkl_product, dunkl_symmetric, q_bracket,
    AbelianParams, DunklParams, NegativeParams, Operator,
};
use crate::field::{Field, RootField};
use crate::linalg::Matrix;
use crate::qpoly::QMatrix;
use crate::wgroup::{
    block_structure, build_gmpn, build_gmpn_plus, build_w_cc, first_preservation_failure,
    gamma_generators, generate_group, make_srefl, make_t, minus_id, BlockSign, Group,
    MonomialMatrix, DEFAULT_CAP,
};
use crate::{Error, Result};

type F = CycloElement;

/// Library version recorded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Names of the checks understood by [`run_check`].
pub const CHECKS: &[&str] = &[
    "anticommute",
    "qcommute",
    "pbw",
    "verma",
    "formula-equivalence",
    "dij-identity",
    "rmax",
    "equivariance",
    "qcommutativity",
    "blocks",
    "nq-membership",
    "embedding",
    "hilbert",
    "braided-weyl",
    "group-order",
    "braided-reduction",
];

/// A deformation matrix: explicit literals, root exponents, or a constant off the diagonal.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(untagged)]
pub enum QSpec {
    Entries(Vec<Vec<Value>>),
    Exponents {
        order: u64,
        exponents: Vec<Vec<i64>>,
    },
    Constant {
        constant: i64,
        n: usize,
    },
}

/// Per-pair coefficient for the negative family (one-based indices).
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PairCoefficient {
    pub i: usize,
    pub j: usize,
    pub c: Value,
}

/// Family data shared by checks and by the factors of a braided product.
#[derive(Serialize, Deserialize, Clone, Debug, Default, PartialEq)]
pub struct FamilySpec {
    /// `w_cc` (alias `negative`), `abelian`, `symmetric` (alias `rational_sn`) or `product`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, rename = "m'", skip_serializing_if = "Option::is_none")]
    pub mp: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_prime: Option<Value>,
    /// `c_{zeta_{m'}^k}` for `k = 1..m'-1`; missing entries are zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub c_prime: Vec<Value>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub degenerate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<QSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coeffs: Option<Vec<Vec<Value>>>,
    /// Replace the uniform `c1` by per-pair values (a negative control when asymmetric).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair_c: Option<Vec<PairCoefficient>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<FamilySpec>>,
    /// `r[k][l]` for `k < l`; other entries are ignored.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<Vec<Value>>>,
}

/// Group description: a named family or explicit monomial generators.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    /// `w_cc`, `gmpn`, `gmpn_plus` or `generators`.
    pub family: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(default, rename = "m'", skip_serializing_if = "Option::is_none")]
    pub mp: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub det_power: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<GeneratorSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

/// `x_j -> scalars[j] x_{perm[j]}` with one-based `perm`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub perm: Vec<usize>,
    pub scalars: Vec<Value>,
}

/// Outcome of a check.
#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

/// One verification request.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct VerifyConfig {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(flatten)]
    pub family: FamilySpec,
    #[serde(default, rename = "D", skip_serializing_if = "Option::is_none")]
    pub max_degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Parameter for the doubles checks: `s2_cherednik`, `heisenberg`, `zero`,
    /// `q_cherednik_negative`, `rational_sn` or `random`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub same_as: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_order: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_partition: Option<Vec<Vec<usize>>>,
    /// Dense matrices (rows of literals) tested alongside group generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<Vec<Vec<Value>>>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub corrupt: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Status>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u64>,
}

impl VerifyConfig {
    /// A bare configuration for `check`.
    pub fn new(check: &str) -> Self {
        VerifyConfig {
            check: check.into(),
            name: None,
            family: FamilySpec::default(),
            max_degree: None,
            d_max: None,
            trials: None,
            max_len: None,
            seed: None,
            beta: None,
            group: None,
            same_as: None,
            expected_order: None,
            expected_partition: None,
            matrices: None,
            corrupt: false,
            expect: None,
            field_order: None,
        }
    }
}

const CONFIG_KEYS: &[&str] = &[
    "check",
    "name",
    "family",
    "m",
    "m'",
    "n",
    "c1",
    "c1_prime",
    "c_prime",
    "degenerate",
    "c",
    "q",
    "orders",
    "coeffs",
    "pair_c",
    "factors",
    "r",
    "D",
    "d_max",
    "trials",
    "max_len",
    "seed",
    "beta",
    "group",
    "same_as",
    "expected_order",
    "expected_partition",
    "matrices",
    "corrupt",
    "expect",
    "field_order",
];

const FACTOR_KEYS: &[&str] = &[
    "family",
    "m",
    "m'",
    "n",
    "c1",
    "c1_prime",
    "c_prime",
    "degenerate",
    "c",
    "q",
    "orders",
    "coeffs",
    "pair_c",
    "factors",
    "r",
];

fn config_error(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Config {
        location: location.into(),
        message: message.into(),
    }
}

fn check_keys(value: &Value, allowed: &[&str], location: &str) -> Result<()> {
    let obj = value
        .as_object()
        .ok_or_else(|| config_error(location, "expected a JSON object"))?;
    for key in obj.keys() {
        if !allowed.contains(&key.as_str()) {
            return Err(config_error(format!("{location}.{key}"), "unknown key"));
        }
    }
    if let Some(Value::Array(factors)) = obj.get("factors") {
        for (k, f) in factors.iter().enumerate() {
            check_keys(f, FACTOR_KEYS, &format!("{location}.factors[{k}]"))?;
        }
    }
    Ok(())
}

/// Parse one configuration, reporting the location of malformed input.
pub fn parse_config(text: &str) -> Result<VerifyConfig> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        config_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    config_from_value(value)
}

/// Configuration from an already parsed JSON value.
pub fn config_from_value(value: Value) -> Result<VerifyConfig> {
    check_keys(&value, CONFIG_KEYS, "config")?;
    let cfg: VerifyConfig =
        serde_json::from_value(value).map_err(|e| config_error("config", e.to_string()))?;
    if !CHECKS.contains(&cfg.check.as_str()) {
        return Err(config_error(
            "config.check",
            format!("unknown check {:?}", cfg.check),
        ));
    }
    Ok(cfg)
}

/// Parse a list of configurations (a JSON array) or a single one.
pub fn parse_configs(text: &str) -> Result<Vec<VerifyConfig>> {
    let value: Value = serde_json::from_str(text).map_err(|e| {
        config_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    match value {
        Value::Array(items) => items
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                config_from_value(v).map_err(|e| match e {
                    Error::Config { location, message } => {
                        config_error(format!("[{k}].{location}"), message)
                    }
                    other => other,
                })
            })
            .collect(),
        other => Ok(vec![config_from_value(other)?]),
    }
}

/// Machine-readable result of a check.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct Report {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub params: Value,
    pub status: Status,
    pub expected: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub duration_ms: u64,
    pub version: String,
}

impl Report {
    /// Whether the status equals the expected one (pass unless marked as a negative control).
    pub fn as_expected(&self) -> bool {
        self.status == self.expected
    }

    /// JSON text with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    /// JSON text with the wall-clock field removed, for reproducibility comparisons.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        if let Some(obj) = v.as_object_mut() {
            obj.remove("duration_ms");
        }
        serde_json::to_string_pretty(&v).expect("values serialize")
    }
}

/// Parse a report written by [`emit_report`].
pub fn parse_report(text: &str) -> Result<Report> {
    serde_json::from_str(text).map_err(|e| config_error("report", e.to_string()))
}

/// Write a report as pretty JSON.
pub fn emit_report(report: &Report, path: &Path) -> Result<()> {
    std::fs::write(path, report.to_json())
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

struct Outcome {
    pass: bool,
    counterexample: Option<Value>,
    details: Value,
}

impl Outcome {
    fn pass(details: Value) -> Self {
        Outcome {
            pass: true,
            counterexample: None,
            details,
        }
    }

    fn fail(counterexample: Value, details: Value) -> Self {
        Outcome {
            pass: false,
            counterexample: Some(counterexample),
            details,
        }
    }
}

/// Run one check. Failures inside the library become `error` reports.
pub fn run_check(config: &VerifyConfig) -> Report {
    let start = Instant::now();
    let params = serde_json::to_value(config).expect("configs serialize");
    let result = Ctx::new(config).and_then(|ctx| dispatch(config, &ctx));
    let (status, counterexample, details, error) = match result {
        Ok(o) => (
            if o.pass { Status::Pass } else { Status::Fail },
            o.counterexample,
            o.details,
            None,
        ),
        Err(e) => (Status::Error, None, Value::Null, Some(e.to_string())),
    };
    Report {
        check: config.check.clone(),
        name: config.name.clone(),
        params,
        status,
        expected: config.expect.unwrap_or(Status::Pass),
        counterexample,
        details,
        error,
        duration_ms: start.elapsed().as_millis() as u64,
        version: VERSION.to_string(),
    }
}

/// Run several checks on a pool of worker threads; reports keep the input order.
pub fn run_suite(configs: &[VerifyConfig]) -> Vec<Report> {
    let workers = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(configs.len().max(1));
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Report>>> = Mutex::new(vec![None; configs.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                if k >= configs.len() {
                    break;
                }
                let report = run_check(&configs[k]);
                slots.lock().expect("no poisoned workers")[k] = Some(report);
            });
        }
    });
    slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|r| r.expect("every slot filled"))
        .collect()
}

/// Ambient field and helpers for one configuration.
struct Ctx {
    field: Arc<CycloField>,
    one: F,
}

fn collect_orders(value: &Value, out: &mut Vec<u64>) {
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match (k.as_str(), v) {
                    ("order" | "m" | "m'", Value::Number(n)) => out.extend(n.as_u64()),
                    ("orders", Value::Array(items)) => {
                        out.extend(items.iter().filter_map(Value::as_u64))
                    }
                    _ => collect_orders(v, out),
                }
            }
        }
        Value::Array(items) => items.iter().for_each(|v| collect_orders(v, out)),
        _ => {}
    }
}

impl Ctx {
    fn new(cfg: &VerifyConfig) -> Result<Self> {
        let mut orders = Vec::new();
        collect_orders(
            &serde_json::to_value(cfg).expect("configs serialize"),
            &mut orders,
        );
        orders.retain(|&o| o > 0);
        let needed = lcm_orders(&orders);
        let order = match cfg.field_order {
            Some(n) => {
                if let Some(bad) = orders.iter().find(|&&o| n % o != 0) {
                    return Err(config_error(
                        "config.field_order",
                        format!("root order {bad} does not divide the ambient order {n}"),
                    ));
                }
                n
            }
            None => needed,
        };
        let field = CycloField::new(order.max(1));
        let one = field.one();
        Ok(Ctx { field, one })
    }

    fn lit(&self, v: &Value, location: &str) -> Result<F> {
        F::from_literal(v, &self.field).map_err(|e| match e {
            Error::Config { message, .. } => config_error(location, message),
            other => config_error(location, other.to_string()),
        })
    }

    fn qmatrix(&self, spec: &QSpec) -> Result<QMatrix<F>> {
        match spec {
            QSpec::Entries(rows) => {
                let entries = rows
                    .iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, v)| self.lit(v, &format!("config.q[{i}][{j}]")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                QMatrix::new(entries)
            }
            QSpec::Exponents { order, exponents } => {
                QMatrix::from_root_exponents(*order, exponents, &self.one)
            }
            QSpec::Constant { constant, n } => match constant {
                1 => Ok(QMatrix::ones(*n, &self.one)),
                -1 => Ok(QMatrix::minus_one(*n, &self.one)),
                _ => Err(config_error(
                    "config.q.constant",
                    "only 1 and -1 are allowed",
                )),
            },
        }
    }

    fn group(&self, spec: &GroupSpec, location: &str) -> Result<Group<F>> {
        let need = |v: Option<u64>, key: &str| {
            v.ok_or_else(|| config_error(format!("{location}.{key}"), "missing"))
        };
        let n = spec
            .n
            .ok_or_else(|| config_error(format!("{location}.n"), "missing"));
        let cap = spec.cap.unwrap_or(DEFAULT_CAP);
        match spec.family.as_str() {
            "w_cc" => build_w_cc(&self.one, need(spec.m, "m")?, need(spec.mp, "m'")?, n?, cap),
            "gmpn" => build_gmpn(&self.one, need(spec.m, "m")?, need(spec.p, "p")?, n?, cap),
            "gmpn_plus" => build_gmpn_plus(
                &self.one,
                need(spec.m, "m")?,
                need(spec.p, "p")?,
                n?,
                spec.det_power.unwrap_or(2),
                cap,
            ),
            "generators" => {
                let gens = spec
                    .generators
                    .as_ref()
                    .ok_or_else(|| config_error(format!("{location}.generators"), "missing"))?;
                let mats = gens
                    .iter()
                    .enumerate()
                    .map(|(k, g)| self.generator(g, &format!("{location}.generators[{k}]")))
                    .collect::<Result<Vec<_>>>()?;
                let dim = spec.n.or_else(|| mats.first().map(|g| g.n())).unwrap_or(0);
                generate_group(&mats, dim, &self.one, cap)
            }
            other => Err(config_error(
                format!("{location}.family"),
                format!("unknown group family {other:?}"),
            )),
        }
    }

    fn generator(&self, g: &GeneratorSpec, location: &str) -> Result<MonomialMatrix<F>> {
        if g.perm.contains(&0) {
            return Err(config_error(
                format!("{location}.perm"),
                "indices are one-based",
            ));
        }
        let scalars = g
            .scalars
            .iter()
            .enumerate()
            .map(|(k, v)| self.lit(v, &format!("{location}.scalars[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        MonomialMatrix::new(g.perm.iter().map(|p| p - 1).collect(), scalars)
            .map_err(|e| config_error(location, e.to_string()))
    }

    fn lit_or(&self, v: &Option<Value>, default: i64, location: &str) -> Result<F> {
        match v {
            Some(v) => self.lit(v, location),
            None => Ok(self.field.int(default)),
        }
    }

    fn negative(&self, fam: &FamilySpec) -> Result<(NegativeParams<F>, usize)> {
        let m = fam.m.ok_or_else(|| config_error("config.m", "missing"))?;
        let mp = fam.mp.unwrap_or(1);
        let n = fam.n.ok_or_else(|| config_error("config.n", "missing"))?;
        let mut c_prime = fam
            .c_prime
            .iter()
            .enumerate()
            .map(|(k, v)| self.lit(v, &format!("config.c_prime[{k}]")))
            .collect::<Result<Vec<_>>>()?;
        if c_prime.len() as u64 > mp.saturating_sub(1) {
            return Err(config_error(
                "config.c_prime",
                format!("at most {} values for m' = {mp}", mp.saturating_sub(1)),
            ));
        }
        c_prime.resize(mp.saturating_sub(1) as usize, self.field.zero());
        let params = NegativeParams {
            m,
            mp,
            c1: self.lit_or(&fam.c1, 0, "config.c1")?,
            c1_prime: fam
                .c1_prime
                .as_ref()
                .map(|v| self.lit(v, "config.c1_prime"))
                .transpose()?,
            c_prime,
            degenerate: fam.degenerate,
        };
        Ok((params, n))
    }

    fn abelian(&self, fam: &FamilySpec) -> Result<AbelianParams<F>> {
        let q = self.qmatrix(
            fam.q
                .as_ref()
                .ok_or_else(|| config_error("config.q", "missing"))?,
        )?;
        let orders = fam
            .orders
            .clone()
            .ok_or_else(|| config_error("config.orders", "missing"))?;
        let coeffs = match &fam.coeffs {
            Some(rows) => rows
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(k, v)| self.lit(v, &format!("config.coeffs[{i}][{k}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
            None => orders
                .iter()
                .map(|&m| vec![self.field.zero(); m.saturating_sub(1) as usize])
                .collect(),
        };
        Ok(AbelianParams { q, orders, coeffs })
    }

    fn family_name(fam: &FamilySpec) -> Result<&str> {
        let name = fam
            .family
            .as_deref()
            .ok_or_else(|| config_error("config.family", "missing"))?;
        Ok(match name {
            "w_cc" | "negative" => "negative",
            "symmetric" | "rational_sn" => "symmetric",
            other => other,
        })
    }

    fn dunkl_params(&self, fam: &FamilySpec) -> Result<(DunklParams<F>, usize)> {
        match Self::family_name(fam)? {
            "negative" => {
                let (p, n) = self.negative(fam)?;
                Ok((DunklParams::Negative(p), n))
            }
            "abelian" => {
                let p = self.abelian(fam)?;
                let n = p.q.n();
                Ok((DunklParams::Abelian(p), n))
            }
            "symmetric" => {
                let n = fam.n.ok_or_else(|| config_error("config.n", "missing"))?;
                Ok((
                    DunklParams::Symmetric {
                        c: self.lit_or(&fam.c, 0, "config.c")?,
                    },
                    n,
                ))
            }
            other => Err(config_error(
                "config.family",
                format!("{other:?} is not a single Dunkl family"),
            )),
        }
    }

    /// Dunkl operators of the configured family up to degree `d`.
    fn operators(&self, fam: &FamilySpec, d: u32) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
        if Self::family_name(fam)? == "product" {
            let factors = fam
                .factors
                .as_ref()
                .ok_or_else(|| config_error("config.factors", "missing"))?;
            let parsed = factors
                .iter()
                .map(|f| self.dunkl_params(f))
                .collect::<Result<Vec<_>>>()?;
            let k = parsed.len();
            let r_spec = fam
                .r
                .as_ref()
                .ok_or_else(|| config_error("config.r", "missing"))?;
            let mut r = vec![vec![self.one.clone(); k]; k];
            for a in 0..k {
                for b in a + 1..k {
                    let v = r_spec
                        .get(a)
                        .and_then(|row| row.get(b))
                        .ok_or_else(|| config_error(format!("config.r[{a}][{b}]"), "missing"))?;
                    r[a][b] = self.lit(v, &format!("config.r[{a}][{b}]"))?;
                }
            }
            return dunkl_product(&parsed, &r, &self.one, d);
        }
        if let Some(pairs) = &fam.pair_c {
            return self.pair_operators(fam, pairs, d);
        }
        let (params, n) = self.dunkl_params(fam)?;
        match params {
            DunklParams::Negative(p) => dunkl_negative(&p, &self.one, n, d),
            DunklParams::Abelian(p) => {
                let q = Arc::new(p.q.clone());
                Ok((q, dunkl_abelian(&p, d)?))
            }
            DunklParams::Symmetric { c } => dunkl_symmetric(&self.one, n, &c, d),
        }
    }

    /// Negative family with `c1` replaced by a coefficient per ordered pair.
    fn pair_operators(
        &self,
        fam: &FamilySpec,
        pairs: &[PairCoefficient],
        d: u32,
    ) -> Result<(Arc<QMatrix<F>>, Vec<Operator<F>>)> {
        let (mut params, n) = self.negative(fam)?;
        params.c1 = self.field.zero();
        params.c1_prime = None;
        let (q, mut ops) = dunkl_negative(&params, &self.one, n, d)?;
        for (k, pc) in pairs.iter().enumerate() {
            if pc.i == 0 || pc.j == 0 || pc.i > n || pc.j > n || pc.i == pc.j {
                return Err(config_error(
                    format!("config.pair_c[{k}]"),
                    "need distinct one-based indices",
                ));
            }
            let c = self.lit(&pc.c, &format!("config.pair_c[{k}].c"))?;
            let dd = divided_difference_sigma(&q, pc.i - 1, pc.j - 1, params.m, d)?;
            ops[pc.i - 1] = ops[pc.i - 1].add(&dd.scale(&c))?;
        }
        Ok((q, ops))
    }

    fn presentation(&self, fam: &FamilySpec) -> Result<Presentation<F>> {
        match self.dunkl_params(fam)? {
            (DunklParams::Negative(p), n) => presentation_negative(&p, &self.one, n),
            (DunklParams::Abelian(p), _) => presentation_abelian(&p),
            (DunklParams::Symmetric { c }, n) => presentation_rational_sn(n, &c, &self.one),
        }
    }
}

fn op_counterexample(op: &Operator<F>, extra: Value) -> Option<Value> {
    op.first_nonzero().map(|(m, p)| {
        let mut v = extra;
        v["monomial"] = json!(m.to_string());
        v["image"] = json!(p.to_string());
        v
    })
}

fn dispatch(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    match cfg.check.as_str() {
        "anticommute" => check_bracket(cfg, ctx, true),
        "qcommute" => check_bracket(cfg, ctx, false),
        "pbw" => check_pbw(cfg, ctx),
        "verma" => check_verma(cfg, ctx),
        "formula-equivalence" => check_formula_equivalence(cfg, ctx),
        "dij-identity" => check_dij_identity(cfg, ctx),
        "rmax" => check_rmax(cfg, ctx),
        "equivariance" => check_equivariance_cfg(cfg, ctx),
        "qcommutativity" => check_qcommutativity(cfg, ctx),
        "blocks" => check_blocks(cfg, ctx),
        "nq-membership" => check_nq_membership(cfg, ctx),
        "embedding" => check_embedding(cfg, ctx),
        "hilbert" => check_hilbert(cfg, ctx),
        "braided-weyl" => check_braided_weyl(cfg, ctx),
        "group-order" => check_group_order(cfg, ctx),
        "braided-reduction" => check_braided_reduction(cfg, ctx),
        other => Err(config_error(
            "config.check",
            format!("unknown check {other:?}"),
        )),
    }
}

/// `A_i A_j - s q_ij A_j A_i` for all `i < j`, with `s = -1` forced for anticommutation.
fn check_bracket(cfg: &VerifyConfig, ctx: &Ctx, anti: bool) -> Result<Outcome> {
    let d = cfg.max_degree.unwrap_or(4);
    let (q, ops) = ctx.operators(&cfg.family, d)?;
    let n = ops.len();
    for i in 0..n {
        for j in i + 1..n {
            let (coef, sign) = if anti {
                (ctx.one.clone(), -1)
            } else {
                (q.q(i, j).clone(), 1)
            };
            let br = q_bracket(&ops[i], &ops[j], &coef, sign)?;
            if let Some(ce) = op_counterexample(&br, json!({"i": i + 1, "j": j + 1})) {
                return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
            }
        }
    }
    if !anti && Ctx::family_name(&cfg.family)? == "abelian" && cfg.family.pair_c.is_none() {
        let params = ctx.abelian(&cfg.family)?;
        if let Some(ce) = abelian_commutation_failure(&params, d)? {
            return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
        }
    }
    Ok(Outcome::pass(
        json!({"n": n, "D": d, "operators_constructed": n}),
    ))
}

/// `A_i x_j - q_ji x_j A_i = delta_ij (1 + sum_eps c_{i,eps} t_i^(eps))` for the abelian family.
fn abelian_commutation_failure(params: &AbelianParams<F>, d: u32) -> Result<Option<Value>> {
    let ops = dunkl_abelian(params, d + 1)?;
    let q = Arc::new(params.q.clone());
    let n = q.n();
    let one = q.one();
    for i in 0..n {
        let mut rhs = Operator::identity(&q, d);
        for (k, c) in params.coeffs[i].iter().enumerate() {
            let eps = one.root_of_unity_like(params.orders[i], k as i64 + 1)?;
            rhs = rhs.add(&Operator::group_action(&q, &make_t(n, i, &eps)?, d).scale(c))?;
        }
        for j in 0..n {
            let x = Operator::left_mul(&q, j, d);
            let lhs = ops[i]
                .compose(&x)?
                .truncate(d)
                .sub(&x.compose(&ops[i])?.truncate(d).scale(q.q(j, i)))?;
            let diff = if i == j { lhs.sub(&rhs)? } else { lhs };
            if let Some(ce) = op_counterexample(
                &diff,
                json!({"relation": "commutation with x", "i": i + 1, "j": j + 1}),
            ) {
                return Ok(Some(ce));
            }
        }
    }
    Ok(None)
}

fn check_pbw(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let mut p = ctx.presentation(&cfg.family)?;
    if cfg.corrupt {
        p = corrupted(&p);
    }
    let trials = cfg.trials.unwrap_or(200);
    let max_len = cfg.max_len.unwrap_or(6);
    let seed = cfg.seed.unwrap_or(0);
    let report = pbw_consistency(&p, trials, max_len, seed);
    let details = json!({"presentation": p.name(), "trials": trials, "agreements": report.agreements, "max_len": max_len, "seed": seed});
    Ok(match report.counterexample {
        None => Outcome::pass(details),
        Some(w) => Outcome::fail(json!({"word": w}), details),
    })
}

fn check_verma(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let d = cfg.max_degree.unwrap_or(4);
    let p = ctx.presentation(&cfg.family)?;
    let details =
        json!({"presentation": p.name(), "D": d, "relations": p.defining_relations().len()});
    Ok(match verma_relation_failure(&p, d)? {
        None => Outcome::pass(details),
        Some((rel, m)) => {
            Outcome::fail(json!({"relation": rel, "monomial": m.to_string()}), details)
        }
    })
}

fn check_formula_equivalence(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let d = cfg.max_degree.unwrap_or(4);
    let (params, n) = ctx.negative(&cfg.family)?;
    let (_, direct) = dunkl_negative(&params, &ctx.one, n, d)?;
    let (_, via) = dunkl_negative_via_dij(&params, &ctx.one, n, d)?;
    for i in 0..n {
        let diff = direct[i].sub(&via[i])?;
        if let Some(ce) = op_counterexample(&diff, json!({"i": i + 1})) {
            return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
        }
    }
    Ok(Outcome::pass(json!({"n": n, "D": d})))
}

/// `[A, x_k]` as an operator on degrees `<= d`, for `A` built up to `d + 1`.
fn commutator_with_x(
    a: &Operator<F>,
    q: &Arc<QMatrix<F>>,
    k: usize,
    d: u32,
) -> Result<Operator<F>> {
    let x = Operator::left_mul(q, k, d);
    a.compose(&x)?.truncate(d).sub(&x.compose(a)?.truncate(d))
}

fn check_dij_identity(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let d = cfg.max_degree.unwrap_or(3);
    let n = cfg
        .family
        .n
        .ok_or_else(|| config_error("config.n", "missing"))?;
    let mp = cfg.family.mp.unwrap_or(2);
    let one = &ctx.one;
    let q = Arc::new(QMatrix::minus_one(n, one));
    let gammas = gamma_generators(&q);
    let mid = minus_id(n, one);
    let mut checked = 0usize;
    for i in 0..n {
        let gi = Operator::group_action(&q, &gammas[i], d + 1);
        for j in (0..n).filter(|&j| j != i) {
            let a = gi.compose(&d_ij(&q, i, j, d + 1)?)?;
            let plus = Operator::group_action(&q, &mid.compose(&make_srefl(n, i, j, one)?), d);
            let minus =
                Operator::group_action(&q, &mid.compose(&make_srefl(n, i, j, &one.neg_ref())?), d);
            for k in 0..n {
                let expected = if k == i {
                    plus.add(&minus)?
                } else if k == j {
                    plus.sub(&minus)?
                } else {
                    Operator::zero(&q, d, 0)
                };
                let diff = commutator_with_x(&a, &q, k, d)?.sub(&expected)?;
                if let Some(ce) = op_counterexample(
                    &diff,
                    json!({"operator": "gamma_i D_ij", "i": i + 1, "j": j + 1, "k": k + 1}),
                ) {
                    return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
                }
                checked += 1;
            }
        }
        for e in 1..mp {
            let eps = ctx.field.root_of_unity((ctx.field.order() / mp * e) as i64);
            let a = gi.compose(&divided_difference_t(&q, i, &eps, d + 1)?)?;
            let label = gammas[i].compose(&make_t(n, i, &eps)?);
            let t = Operator::group_action(&q, &label, d).scale(&one.sub_ref(&eps));
            for k in 0..n {
                let expected = if k == i {
                    t.clone()
                } else {
                    Operator::zero(&q, d, 0)
                };
                let diff = commutator_with_x(&a, &q, k, d)?.sub(&expected)?;
                if let Some(ce) = op_counterexample(
                    &diff,
                    json!({"operator": "gamma_i D_i", "i": i + 1, "eps'": eps.to_literal(), "k": k + 1}),
                ) {
                    return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
                }
                checked += 1;
            }
        }
    }
    Ok(Outcome::pass(
        json!({"n": n, "D": d, "identities": checked}),
    ))
}

fn space_json(s: &RelationSpace<F>) -> Value {
    json!({
        "dim": s.dim(),
        "basis": s.basis().iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
    })
}

fn check_rmax(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let one = &ctx.one;
    let kind = cfg.beta.as_deref().unwrap_or("s2_cherednik");
    let (beta, expected_minus, expected_plus) = match kind {
        "s2_cherednik" => {
            let c = ctx.lit_or(&cfg.family.c, 1, "config.c")?;
            let p = presentation_rational_sn(2, &c, one)?;
            let q = QMatrix::ones(2, one);
            (
                p.commutator_map()?,
                RelationSpace::wedge_q(&q),
                RelationSpace::wedge_q(&q),
            )
        }
        "heisenberg" => {
            let q = ctx.qmatrix(
                cfg.family
                    .q
                    .as_ref()
                    .ok_or_else(|| config_error("config.q", "missing"))?,
            )?;
            let y = YDModule::over_gamma(&q)?;
            (
                heisenberg_beta(&y),
                RelationSpace::wedge_q(&q),
                RelationSpace::wedge_q(&q.transpose()),
            )
        }
        "zero" => {
            let n = cfg
                .family
                .n
                .ok_or_else(|| config_error("config.n", "missing"))?;
            (
                CommutatorMap::zero(n),
                RelationSpace::full(n * n, one),
                RelationSpace::full(n * n, one),
            )
        }
        other => {
            return Err(config_error(
                "config.beta",
                format!("unsupported parameter {other:?} for rmax"),
            ))
        }
    };
    let (minus, plus) = r_max(&beta, None, one)?;
    let details = json!({"beta": kind, "r_minus": space_json(&minus), "r_plus": space_json(&plus)});
    if minus != expected_minus {
        return Ok(Outcome::fail(
            json!({"side": "minus", "expected": space_json(&expected_minus)}),
            details,
        ));
    }
    if plus != expected_plus {
        return Ok(Outcome::fail(
            json!({"side": "plus", "expected": space_json(&expected_plus)}),
            details,
        ));
    }
    Ok(Outcome::pass(details))
}

/// Commutator parameter, its group and its q-matrix for the doubles checks.
fn doubles_parameter(
    cfg: &VerifyConfig,
    ctx: &Ctx,
) -> Result<(CommutatorMap<F>, Group<F>, QMatrix<F>)> {
    let one = &ctx.one;
    let kind = cfg.beta.as_deref().unwrap_or("q_cherednik_negative");
    let (mut beta, group, q) = match kind {
        "q_cherednik_negative" => {
            let (params, n) = ctx.negative(&cfg.family)?;
            let (wt, beta, _) = negative_q_cherednik(&params, one, n)?;
            (beta, wt, QMatrix::minus_one(n, one))
        }
        "rational_sn" | "s2_cherednik" => {
            let n = cfg.family.n.unwrap_or(2);
            let c = ctx.lit_or(&cfg.family.c, 1, "config.c")?;
            let p = presentation_rational_sn(n, &c, one)?;
            (
                p.commutator_map()?,
                p.group().clone(),
                QMatrix::ones(n, one),
            )
        }
        "heisenberg" | "random" => {
            let q = ctx.qmatrix(
                cfg.family
                    .q
                    .as_ref()
                    .ok_or_else(|| config_error("config.q", "missing"))?,
            )?;
            let y = YDModule::over_gamma(&q)?;
            let beta = if kind == "random" {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.unwrap_or(0));
                let n = q.n();
                let mut entries = Vec::new();
                for g in gamma_generators(&q) {
                    let mut l = Matrix::zeros(n, n, &ctx.field.zero());
                    for r in 0..n {
                        for c in 0..n {
                            l[(r, c)] = ctx.field.int(rng.gen_range(-3..=3));
                        }
                    }
                    entries.push((g, l));
                }
                CommutatorMap::from_entries(n, entries)?
            } else {
                heisenberg_beta(&y)
            };
            (beta, y.group().clone(), q)
        }
        other => {
            return Err(config_error(
                "config.beta",
                format!("unsupported parameter {other:?}"),
            ))
        }
    };
    if cfg.corrupt {
        let (w, l) = beta
            .support()
            .iter()
            .find(|(w, _)| !w.is_identity())
            .or_else(|| beta.support().iter().next())
            .map(|(w, l)| (w.clone(), l.clone()))
            .ok_or_else(|| config_error("config.corrupt", "parameter has empty support"))?;
        let mut bump = Matrix::zeros(l.rows(), l.cols(), &ctx.field.zero());
        bump[(0, l.cols() - 1)] = one.clone();
        beta.add_entry(w, &bump)?;
    }
    Ok((beta, group, q))
}

fn check_equivariance_cfg(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let (beta, group, _) = doubles_parameter(cfg, ctx)?;
    let details = json!({"group_order": group.order(), "support": beta.support().len()});
    Ok(match crate::doubles::equivariance_failure(&beta, &group) {
        None => Outcome::pass(details),
        Some((g, w)) => Outcome::fail(
            json!({"generator": g.label(), "support_element": w.label()}),
            details,
        ),
    })
}

fn check_qcommutativity(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let (beta, _, q) = doubles_parameter(cfg, ctx)?;
    let details = json!({"support": beta.support().len()});
    Ok(match q_commutativity_failure(&beta, &q) {
        None => Outcome::pass(details),
        Some(f) => Outcome::fail(
            json!({"w": f.w.label(), "i": f.i + 1, "j": f.j + 1, "space": if f.dual { "dual" } else { "V" }}),
            details,
        ),
    })
}

fn check_blocks(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let q = ctx.qmatrix(
        cfg.family
            .q
            .as_ref()
            .ok_or_else(|| config_error("config.q", "missing"))?,
    )?;
    let b = block_structure(&q)?;
    let partition: Vec<Vec<usize>> = b
        .partition
        .iter()
        .map(|blk| blk.iter().map(|i| i + 1).collect())
        .collect();
    let signs: Vec<&str> = b
        .sign
        .iter()
        .map(|s| match s {
            BlockSign::Positive => "positive",
            BlockSign::Negative => "negative",
        })
        .collect();
    let pair_values: Vec<Vec<Value>> = b
        .pair_values
        .iter()
        .map(|r| r.iter().map(F::to_literal).collect())
        .collect();
    let details = json!({"partition": partition, "sign": signs, "pair_values": pair_values});
    if let Some(expected) = &cfg.expected_partition {
        if *expected != partition {
            return Ok(Outcome::fail(
                json!({"expected_partition": expected}),
                details,
            ));
        }
    }
    Ok(Outcome::pass(details))
}

fn check_nq_membership(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let q = ctx.qmatrix(
        cfg.family
            .q
            .as_ref()
            .ok_or_else(|| config_error("config.q", "missing"))?,
    )?;
    let mut candidates: Vec<(String, Matrix<F>)> = Vec::new();
    if let Some(spec) = &cfg.group {
        let g = ctx.group(spec, "config.group")?;
        for h in g.generators() {
            candidates.push((h.label(), h.to_dense()));
        }
    }
    if let Some(mats) = &cfg.matrices {
        for (k, rows) in mats.iter().enumerate() {
            let entries = rows
                .iter()
                .enumerate()
                .map(|(r, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(c, v)| ctx.lit(v, &format!("config.matrices[{k}][{r}][{c}]")))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let cols = entries.first().map(Vec::len).unwrap_or(0);
            if entries.len() != q.n() || cols != q.n() {
                return Err(config_error(
                    format!("config.matrices[{k}]"),
                    "matrix size differs from q",
                ));
            }
            candidates.push((format!("matrix {k}"), Matrix::from_rows(entries, cols)));
        }
    }
    if candidates.is_empty() {
        return Err(config_error("config.group", "no group or matrices to test"));
    }
    let details = json!({"tested": candidates.len()});
    for (label, m) in &candidates {
        if let Some([k, l, i, j]) = first_preservation_failure(m, &q) {
            return Ok(Outcome::fail(
                json!({"element": label, "k": k + 1, "l": l + 1, "i": i + 1, "j": j + 1}),
                details,
            ));
        }
    }
    Ok(Outcome::pass(details))
}

fn check_embedding(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let one = &ctx.one;
    let (beta, group, q, coeffs) = match Ctx::family_name(&cfg.family)? {
        "symmetric" => {
            // S_2 on its reflection representation: V = Q, s = -1.
            if cfg.family.n.unwrap_or(2) != 2 {
                return Err(config_error(
                    "config.n",
                    "embedding data for the symmetric family needs n = 2",
                ));
            }
            let c = ctx.lit_or(&cfg.family.c, 1, "config.c")?;
            let group = generate_group(&[minus_id(1, one)], 1, one, DEFAULT_CAP)?;
            let q = QMatrix::ones(1, one);
            let coeffs = vec![(minus_id(1, one), c)];
            let refl = build_q_reflections(&group, &q, &coeffs)?;
            let beta = crate::doubles::reflection_beta(&refl.roots, 1)?;
            (beta, group, q, coeffs)
        }
        "negative" => {
            let (mut params, n) = ctx.negative(&cfg.family)?;
            params.degenerate = true;
            params
                .c_prime
                .iter_mut()
                .for_each(|c| *c = ctx.field.zero());
            let (wt, beta, roots) = negative_q_cherednik(&params, one, n)?;
            let coeffs: Vec<_> = roots
                .into_iter()
                .filter(|r| !r.c.eq_zero())
                .map(|r| (r.label, r.c))
                .collect();
            (beta, wt, QMatrix::minus_one(n, one), coeffs)
        }
        other => {
            return Err(config_error(
                "config.family",
                format!("embedding data for {other:?} is not implemented"),
            ))
        }
    };
    let refl = build_q_reflections(&group, &q, &coeffs)?;
    let gamma = beta.identity_on_support(one);
    let s_minus = RelationSpace::wedge_q(&q);
    let r_plus = RelationSpace::wedge_q(&q.transpose());
    let report = embedding_conditions(
        &beta,
        &gamma,
        &s_minus,
        &r_plus,
        &refl.module,
        &refl.mu,
        &refl.nu,
    )?;
    let span = roots_span(&refl.roots, q.n());
    let details = json!({
        "dim_Y": refl.module.dim(),
        "commutator": report.commutator,
        "minus_relations": report.minus_relations,
        "plus_relations": report.plus_relations,
        "roots_span": span,
    });
    if let Some(f) = report.failure {
        return Ok(Outcome::fail(json!({"condition": f}), details));
    }
    if !span {
        return Ok(Outcome::fail(
            json!({"condition": "roots with nonzero coefficient do not span V"}),
            details,
        ));
    }
    Ok(Outcome::pass(details))
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_hilbert(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let q = ctx.qmatrix(
        cfg.family
            .q
            .as_ref()
            .ok_or_else(|| config_error("config.q", "missing"))?,
    )?;
    let d_max = cfg.d_max.unwrap_or(5);
    let n = q.n();
    let dims = quad_algebra_dims(n, &RelationSpace::wedge_q(&q), d_max)?;
    let expected: Vec<usize> = (0..=d_max).map(|d| binomial(n + d - 1, d)).collect();
    let details = json!({"dims": dims, "expected": expected});
    for d in 0..=d_max {
        if dims[d] != expected[d] {
            return Ok(Outcome::fail(
                json!({"degree": d, "dim": dims[d], "expected": expected[d]}),
                details,
            ));
        }
    }
    Ok(Outcome::pass(details))
}

fn check_braided_weyl(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let d = cfg.max_degree.unwrap_or(4);
    let q = match (&cfg.family.q, cfg.family.n) {
        (Some(spec), _) => ctx.qmatrix(spec)?,
        (None, Some(n)) => QMatrix::minus_one(n, &ctx.one),
        (None, None) => return Err(config_error("config.q", "missing")),
    };
    let q = Arc::new(q);
    let n = q.n();
    let partials: Vec<_> = (0..n).map(|i| braided_partial(&q, i, d + 1)).collect();
    let id = Operator::identity(&q, d);
    for j in 0..n {
        for i in 0..n {
            // d_j x_i - q_ij x_i d_j = delta_ij
            let x = Operator::left_mul(&q, i, d);
            let lhs = partials[j]
                .compose(&x)?
                .truncate(d)
                .sub(&x.compose(&partials[j])?.truncate(d).scale(q.q(i, j)))?;
            let diff = if i == j { lhs.sub(&id)? } else { lhs };
            if let Some(ce) = op_counterexample(
                &diff,
                json!({"relation": "derivative", "j": j + 1, "i": i + 1}),
            ) {
                return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let br = q_bracket(
                &partials[i].truncate(d),
                &partials[j].truncate(d),
                q.q(i, j),
                1,
            )?;
            if let Some(ce) = op_counterexample(
                &br,
                json!({"relation": "q-commutation", "i": i + 1, "j": j + 1}),
            ) {
                return Ok(Outcome::fail(ce, json!({"n": n, "D": d})));
            }
        }
    }
    Ok(Outcome::pass(json!({"n": n, "D": d})))
}

fn check_group_order(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let spec = cfg
        .group
        .as_ref()
        .ok_or_else(|| config_error("config.group", "missing"))?;
    let g = ctx.group(spec, "config.group")?;
    let mut details = json!({"order": g.order()});
    if let Some(expected) = cfg.expected_order {
        if g.order() != expected {
            return Ok(Outcome::fail(
                json!({"order": g.order(), "expected_order": expected}),
                details,
            ));
        }
    }
    if let Some(other) = &cfg.same_as {
        let h = ctx.group(other, "config.same_as")?;
        details["other_order"] = json!(h.order());
        if !g.same_elements(&h) {
            let missing = g
                .elements()
                .iter()
                .find(|e| !h.contains(e))
                .or_else(|| h.elements().iter().find(|e| !g.contains(e)));
            return Ok(Outcome::fail(
                json!({"element": missing.map(|e| e.label())}),
                details,
            ));
        }
    }
    Ok(Outcome::pass(details))
}

fn check_braided_reduction(cfg: &VerifyConfig, ctx: &Ctx) -> Result<Outcome> {
    let (params, n) = ctx.negative(&cfg.family)?;
    let (_, beta, _) = negative_q_cherednik(&params, &ctx.one, n)?;
    let q = QMatrix::minus_one(n, &ctx.one);
    let reduced = braided_reduce(&beta, &q)?;
    let p = presentation_negative(&params, &ctx.one, n)?;
    let target: BTreeMap<_, _> = p.table().clone();
    let details = json!({"entries": reduced.len(), "support": beta.support().len()});
    for j in 0..n {
        for i in 0..n {
            let a = reduced.get(&(j, i)).cloned().unwrap_or_default();
            let b = target.get(&(j, i)).cloned().unwrap_or_default();
            if a != b {
                return Ok(Outcome::fail(
                    json!({"j": j + 1, "i": i + 1, "reduced": ga_to_string(&a), "expected": ga_to_string(&b)}),
                    details,
                ));
            }
        }
    }
    Ok(Outcome::pass(details))
}

/// Order and element labels of a described group.
pub fn enumerate_group(spec: &GroupSpec) -> Result<(usize, Vec<String>)> {
    let mut c = VerifyConfig::new("group-order");
    c.group = Some(spec.clone());
    let ctx = Ctx::new(&c)?;
    let g = ctx.group(spec, "group")?;
    Ok((g.order(), g.elements().iter().map(|e| e.label()).collect()))
}

/// Parse a group description file.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    serde_json::from_str(text).map_err(|e| {
        config_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })
}

/// Blocks report for a deformation matrix given as a `q` value.
pub fn blocks_config(q_text: &str) -> Result<VerifyConfig> {
    let value: Value = serde_json::from_str(q_text).map_err(|e| {
        config_error(
            format!("line {} column {}", e.line(), e.column()),
            e.to_string(),
        )
    })?;
    let q = match value {
        Value::Object(ref map) if map.contains_key("q") => map["q"].clone(),
        other => other,
    };
    config_from_value(json!({"check": "blocks", "q": q}))
}

fn cfg(value: Value) -> VerifyConfig {
    config_from_value(value).expect("bundled configurations are valid")
}

/// The bundled configuration list covering the acceptance grid.
pub fn acceptance_suite() -> Vec<VerifyConfig> {
    let mut out = Vec::new();
    let grid: [(u64, u64); 5] = [(2, 1), (2, 2), (4, 1), (4, 2), (6, 3)];
    let c_prime =
        |mp: u64| -> Vec<Value> { (1..mp).map(|k| json!(format!("{}/{}", k, k + 4))).collect() };
    for (m, mp) in grid {
        for n in [2usize, 3] {
            let base = json!({"family": "w_cc", "m": m, "m'": mp, "n": n, "c1": "1/2", "c_prime": c_prime(mp)});
            let mut a = base.clone();
            a["check"] = json!("anticommute");
            a["D"] = json!(5);
            a["name"] = json!(format!("anticommute w_cc({m},{mp}) n={n}"));
            out.push(cfg(a));
            for degenerate in [false, true] {
                let mut v = base.clone();
                v["check"] = json!("verma");
                v["D"] = json!(4);
                v["degenerate"] = json!(degenerate);
                v["name"] = json!(format!(
                    "verma w_cc({m},{mp}) n={n}{}",
                    if degenerate { " degenerate" } else { "" }
                ));
                out.push(cfg(v));
            }
        }
    }
    for (m, mp) in [(4u64, 1u64), (4, 2)] {
        let base = json!({"family": "w_cc", "m": m, "m'": mp, "n": 2, "c1": "1/2", "c1_prime": "1/3", "c_prime": c_prime(mp)});
        let mut a = base.clone();
        a["check"] = json!("anticommute");
        a["D"] = json!(5);
        a["name"] = json!(format!("anticommute w_cc({m},{mp}) n=2 with c1'"));
        out.push(cfg(a));
        let mut v = base;
        v["check"] = json!("verma");
        v["D"] = json!(4);
        v["name"] = json!(format!("verma w_cc({m},{mp}) n=2 with c1'"));
        out.push(cfg(v));
    }
    out.push(cfg(json!({
        "check": "anticommute", "name": "negative control: asymmetric pair coefficients",
        "family": "w_cc", "m": 2, "m'": 1, "n": 3, "D": 3,
        "pair_c": [{"i": 1, "j": 2, "c": "1/2"}, {"i": 2, "j": 1, "c": "1/3"}, {"i": 1, "j": 3, "c": "1/2"},
                   {"i": 3, "j": 1, "c": "1/2"}, {"i": 2, "j": 3, "c": "1/2"}, {"i": 3, "j": 2, "c": "1/2"}],
        "expect": "fail"
    })));
    let abelian_q = json!({"order": 12, "exponents": [[0, 1, 5], [11, 0, 4], [7, 8, 0]]});
    let abelian = json!({
        "family": "abelian", "q": abelian_q, "orders": [2, 3, 4],
        "coeffs": [["1/2"], ["1/3", "2/7"], ["3/5", "1/4", "5/9"]]
    });
    for check in ["qcommute", "verma"] {
        let mut v = abelian.clone();
        v["check"] = json!(check);
        v["D"] = json!(5);
        v["name"] = json!(format!("{check} abelian(2,3,4)"));
        out.push(cfg(v));
    }
    out.push(cfg(json!({"check": "braided-weyl", "name": "braided Weyl relations, mu_12 q", "q": abelian_q, "D": 5})));
    out.push(cfg(json!({
        "check": "qcommute", "name": "product symmetric(S_2) x negative(B_2^+)", "family": "product", "D": 4,
        "factors": [{"family": "symmetric", "n": 2, "c": "1/2"}, {"family": "w_cc", "m": 2, "m'": 1, "n": 2, "c1": "1/3"}],
        "r": [[1, {"order": 4, "coeffs": {"1": "1"}}], [1, 1]]
    })));
    out.push(cfg(json!({
        "check": "qcommute", "name": "product with ranks (1,2,2)", "family": "product", "D": 4,
        "factors": [
            {"family": "abelian", "q": [[1]], "orders": [2], "coeffs": [["1/5"]]},
            {"family": "symmetric", "n": 2, "c": "1/2"},
            {"family": "w_cc", "m": 2, "m'": 1, "n": 2, "c1": "1/3"}
        ],
        "r": [[1, {"order": 4, "coeffs": {"1": "1"}}, {"order": 3, "coeffs": {"1": "1"}}],
              [1, 1, {"order": 4, "coeffs": {"1": "-1"}}], [1, 1, 1]]
    })));
    for (m, mp) in [(2u64, 1u64), (4, 2)] {
        out.push(cfg(json!({
            "check": "formula-equivalence", "name": format!("formula equivalence w_cc({m},{mp}) n=2"),
            "family": "w_cc", "m": m, "m'": mp, "n": 2, "c1": "1/2", "c_prime": c_prime(mp), "D": 4
        })));
    }
    for n in [2usize, 3] {
        out.push(cfg(json!({"check": "dij-identity", "name": format!("D_ij identities n={n}"), "n": n, "m'": 4, "D": 3})));
    }
    out.push(cfg(
        json!({"check": "rmax", "name": "rmax S_2 Cherednik", "beta": "s2_cherednik", "c": "1/2"}),
    ));
    for n in [2usize, 3] {
        out.push(cfg(json!({"check": "rmax", "name": format!("rmax Heisenberg q=-1 n={n}"), "beta": "heisenberg", "q": {"constant": -1, "n": n}})));
    }
    out.push(cfg(
        json!({"check": "rmax", "name": "rmax zero parameter", "beta": "zero", "n": 2}),
    ));
    let hilbert_qs = [
        json!({"constant": -1, "n": 3}),
        json!({"order": 6, "exponents": [[0, 1], [5, 0]]}),
        json!({"order": 6, "exponents": [[0, 2, 3], [4, 0, 1], [3, 5, 0]]}),
        json!({"order": 4, "exponents": [[0, 1, 2], [3, 0, 3], [2, 1, 0]]}),
        json!({"order": 5, "exponents": [[0, 1, 4], [4, 0, 2], [1, 3, 0]]}),
    ];
    for (k, q) in hilbert_qs.into_iter().enumerate() {
        out.push(cfg(
            json!({"check": "hilbert", "name": format!("hilbert q{k}"), "q": q, "d_max": 5}),
        ));
    }
    for (name, family) in [
        (
            "B_2^+",
            json!({"family": "w_cc", "m": 2, "m'": 1, "n": 2, "c1": "1/2"}),
        ),
        (
            "B_3^+",
            json!({"family": "w_cc", "m": 2, "m'": 1, "n": 3, "c1": "1/2"}),
        ),
        (
            "abelian(2,3)",
            json!({"family": "abelian", "q": {"order": 6, "exponents": [[0, 1], [5, 0]]}, "orders": [2, 3], "coeffs": [["1/2"], ["1/3", "1/5"]]}),
        ),
        (
            "S_2 rational",
            json!({"family": "symmetric", "n": 2, "c": "1/2"}),
        ),
    ] {
        let mut v = family;
        v["check"] = json!("pbw");
        v["trials"] = json!(200);
        v["max_len"] = json!(6);
        v["seed"] = json!(1);
        v["name"] = json!(format!("pbw {name}"));
        out.push(cfg(v));
    }
    out.push(cfg(json!({
        "check": "pbw", "name": "negative control: corrupted B_2^+ table", "family": "w_cc", "m": 2, "m'": 1, "n": 2,
        "c1": "1/2", "corrupt": true, "trials": 200, "max_len": 6, "seed": 1, "expect": "fail"
    })));
    for (name, group, order) in [
        (
            "|B_2^+|",
            json!({"family": "w_cc", "m": 2, "m'": 1, "n": 2}),
            4usize,
        ),
        (
            "|B_3^+|",
            json!({"family": "w_cc", "m": 2, "m'": 1, "n": 3}),
            24,
        ),
        (
            "|G(2,1,2)|",
            json!({"family": "gmpn", "m": 2, "p": 1, "n": 2}),
            8,
        ),
        (
            "|G(4,2,2)|",
            json!({"family": "gmpn", "m": 4, "p": 2, "n": 2}),
            16,
        ),
    ] {
        out.push(cfg(
            json!({"check": "group-order", "name": name, "group": group, "expected_order": order}),
        ));
    }
    out.push(cfg(json!({
        "check": "group-order", "name": "W_{mu_2,mu_2}(2) = G(2,1,2)",
        "group": {"family": "w_cc", "m": 2, "m'": 2, "n": 2}, "same_as": {"family": "gmpn", "m": 2, "p": 1, "n": 2}
    })));
    for (m, mp, n) in [(2u64, 1u64, 3usize), (4, 2, 2), (6, 3, 3)] {
        out.push(cfg(json!({
            "check": "nq-membership", "name": format!("W_cc({m},{mp}) preserves q=-1 n={n}"),
            "q": {"constant": -1, "n": n}, "group": {"family": "w_cc", "m": m, "m'": mp, "n": n}
        })));
    }
    out.push(cfg(json!({
        "check": "nq-membership", "name": "G(4,2,2) preserves q=1", "q": {"constant": 1, "n": 2},
        "group": {"family": "gmpn", "m": 4, "p": 2, "n": 2}
    })));
    out.push(cfg(json!({
        "check": "nq-membership", "name": "negative control: generic rotation", "q": {"constant": -1, "n": 2},
        "matrices": [[["3/5", "-4/5"], ["4/5", "3/5"]]], "expect": "fail"
    })));
    out.push(cfg(json!({"check": "blocks", "name": "blocks q=-1 n=3", "q": {"constant": -1, "n": 3}, "expected_partition": [[1, 2, 3]]})));
    out.push(cfg(json!({"check": "embedding", "name": "embedding S_2 degenerate rational", "family": "symmetric", "n": 2, "c": "1/2"})));
    out.push(cfg(json!({"check": "embedding", "name": "embedding B_2^+", "family": "w_cc", "m": 2, "m'": 1, "n": 2, "c1": "1/2"})));
    for (m, mp) in [(2u64, 1u64), (4, 2)] {
        let base = json!({"family": "w_cc", "m": m, "m'": mp, "n": 2, "c1": "1/2", "c_prime": c_prime(mp)});
        for check in ["braided-reduction", "equivariance", "qcommutativity"] {
            let mut v = base.clone();
            v["check"] = json!(check);
            v["beta"] = json!("q_cherednik_negative");
            v["name"] = json!(format!("{check} w_cc({m},{mp}) n=2"));
            if check == "braided-reduction" {
                v.as_object_mut().expect("object").remove("beta");
            }
            out.push(cfg(v));
        }
    }
    out.push(cfg(json!({"check": "equivariance", "name": "equivariance S_2 Cherednik", "beta": "rational_sn", "n": 2, "c": "1/2"})));
    out.push(cfg(json!({
        "check": "equivariance", "name": "negative control: broken S_2 parameter", "beta": "rational_sn", "n": 2,
        "c": "1/2", "corrupt": true, "expect": "fail"
    })));
    out.push(cfg(json!({
        "check": "qcommutativity", "name": "negative control: random dense L over q=-1", "beta": "random",
        "q": {"constant": -1, "n": 2}, "seed": 3, "expect": "fail"
    })));
    out
}
