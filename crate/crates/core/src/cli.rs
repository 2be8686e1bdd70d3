//! Command-line front end: instance generators, solvers, oracles and a
//! certificate checker, all speaking canonical JSON.
//!
//! Exit codes: 0 success or valid certificate, 1 error or malformed input,
//! 2 invalid certificate, 3 a solver produced a certificate that failed its
//! own check.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::constraint_select::{
    classify_constraints, gen_satcond_lower_bound, satisfies, select_satcond, Constraint, SatcondParams,
};
use crate::error::Error;
use crate::geom_sep::{
    gen_circle_apex, gen_collinear, gen_diameter_fan, gen_moment_curve, gen_polar_triples, halfspace_separator,
    line_separator, min_geom_separator, verify_separator, ConvexSet, GeomVerdict, HalfSpace, Mode, Point, PointConfig,
};
use crate::linear_select::{ceil_log2, gen_logp1_tight, select_logp1};
use crate::oracle::{min_satisfying_subfamily_bounded, min_separating_subfamily_bounded};
use crate::phased_select::{logpalpha_bound, select_logpalpha, PhaseTrace};
use crate::setsystem::{
    is_separating, GroundSet, Partition, Scope, SeparationInstance, SetFamily, SubsetMask, Verdict,
};
use crate::vc_tools::{
    binomial, gen_dual_binomial_separator, gen_intervals, gen_vc_tight_family, shatter_function, vc_dimension,
};

/// Engineering constant in the size bound reported for `solve logpalpha`.
pub const LOGPALPHA_K: f64 = 40.0;

#[derive(Parser, Debug)]
#[command(name = "sepfam", version, about = "Small separating subfamilies, exact oracles and convex separators")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Run a constructive algorithm and print a certificate.
    Solve(SolveArgs),
    /// Exact minimum by exhaustive search.
    Oracle(OracleArgs),
    /// Check a certificate against an instance.
    Verify { instance: PathBuf, certificate: PathBuf },
    /// VC dimension of a set instance.
    Vcdim { instance: PathBuf },
    /// Shatter function value at `m`.
    Shatter {
        instance: PathBuf,
        #[arg(long)]
        m: u32,
    },
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[command(subcommand)]
    pub generator: Generator,
    /// Output file; the instance goes to standard output when omitted.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Generator {
    /// Dense family needing one member per constraint.
    SatcondLb {
        #[arg(long)]
        m: u32,
        #[arg(long = "N")]
        big_n: u32,
    },
    /// Blocks of size n where ⌈log2 n⌉ members never suffice.
    Logp1Tight {
        #[arg(long)]
        n: u32,
    },
    /// Masks containing 0 with at most d alternations.
    VcTight {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        universe: u32,
    },
    /// All nonempty intervals of 0..n.
    Intervals {
        #[arg(long)]
        n: u32,
    },
    /// Dual of the (2^d - 1)-subsets of an m-set.
    DualBinomial {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    /// n points 0..n-1 on a line.
    Collinear {
        #[arg(long)]
        n: usize,
    },
    /// Points on the moment curve.
    MomentCurve {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
    },
    /// Circle points in the first quadrant plus (1, 1).
    CircleApex {
        #[arg(long)]
        n: usize,
    },
    /// Antipodal outer pairs with inner points near the center.
    DiameterFan {
        #[arg(long)]
        n: usize,
    },
    /// Point triples near the unit circle, for intersection separation.
    PolarTriples {
        #[arg(long)]
        n: usize,
    },
    /// Uniformly random family with the given density.
    RandomFamily {
        #[arg(long)]
        n: u32,
        /// Target density as `p/q`; the family has ⌈(p/q)·2^n⌉ members.
        #[arg(long)]
        density: String,
        #[arg(long)]
        seed: u64,
        /// Split the ground set into this many contiguous blocks.
        #[arg(long, default_value_t = 1)]
        blocks: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Logp1,
    Logpalpha,
    Satcond,
    Line,
    Halfspace,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    pub algorithm: Algorithm,
    pub instance: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Include the per-phase trace (logpalpha).
    #[arg(long)]
    pub trace: bool,
    /// Threshold ε for satcond, as `p/q`.
    #[arg(long, default_value = "1/4")]
    pub epsilon: String,
    /// Sunflower arm count for the satcond diagnostic.
    #[arg(long, default_value_t = 2)]
    pub arms: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Problem {
    MinSeparator,
    MinConstraints,
    MinGeom,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScopeArg {
    AllPairs,
    FamilySeparated,
}

impl From<ScopeArg> for Scope {
    fn from(s: ScopeArg) -> Scope {
        match s {
            ScopeArg::AllPairs => Scope::AllPairs,
            ScopeArg::FamilySeparated => Scope::FamilySeparated,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Containment,
    Intersection,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Containment => Mode::Containment,
            ModeArg::Intersection => Mode::Intersection,
        }
    }
}

#[derive(Args, Debug)]
pub struct OracleArgs {
    pub problem: Problem,
    pub instance: PathBuf,
    #[arg(long, default_value_t = 12)]
    pub max_size: usize,
    #[arg(long, value_enum, default_value_t = ScopeArg::AllPairs)]
    pub scope: ScopeArg,
    #[arg(long, value_enum, default_value_t = ModeArg::Containment)]
    pub mode: ModeArg,
    /// Fail instead of setting aside pairs with equal hulls.
    #[arg(long)]
    pub strict: bool,
    #[arg(long)]
    pub threads: Option<usize>,
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
    /// Printed to standard output before exiting.
    pub report: Option<Value>,
}

impl Failure {
    fn error(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into(), report: None }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let report = match &e {
            Error::BoundExceeded { max_size, lower_bound } => {
                Some(json!({"status": "bound-exceeded", "max_size": max_size, "lower_bound": lower_bound}))
            }
            _ => None,
        };
        Failure { code: 1, message: e.to_string(), report }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

// ---- instance formats ----

/// Any instance file the commands accept.
#[derive(Clone, Debug, PartialEq)]
pub enum Instance {
    Sets(SeparationInstance),
    Constraints { family: SetFamily, constraints: Vec<Constraint> },
    Points(PointConfig),
}

fn malformed(msg: impl Into<String>) -> Error {
    Error::Malformed(msg.into())
}

fn field<'a>(v: &'a Value, key: &str) -> crate::Result<&'a Value> {
    v.get(key).ok_or_else(|| malformed(format!("missing field \"{key}\"")))
}

fn as_u64(v: &Value, what: &str) -> crate::Result<u64> {
    v.as_u64().ok_or_else(|| malformed(format!("{what} must be a non-negative integer")))
}

fn as_array<'a>(v: &'a Value, what: &str) -> crate::Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| malformed(format!("{what} must be an array")))
}

fn id_list(v: &Value, what: &str) -> crate::Result<Vec<u32>> {
    as_array(v, what)?
        .iter()
        .map(|x| as_u64(x, what).and_then(|i| u32::try_from(i).map_err(|_| malformed(format!("{what} out of range")))))
        .collect()
}

fn parse_family(v: &Value) -> crate::Result<SetFamily> {
    let n = as_u64(field(v, "n")?, "n")?;
    let g = GroundSet::new(u32::try_from(n).map_err(|_| malformed("n out of range"))?)?;
    let members = as_array(field(v, "family")?, "family")?
        .iter()
        .map(|x| {
            x.as_str().ok_or_else(|| malformed("family entries must be hex strings")).and_then(SubsetMask::from_hex)
        })
        .collect::<crate::Result<Vec<_>>>()?;
    SetFamily::new(g, members)
}

fn parse_rational(v: &Value) -> crate::Result<BigRational> {
    let pair = as_array(v, "rational")?;
    let [num, den] = pair.as_slice() else {
        return Err(malformed("a rational is a [\"num\", \"den\"] pair"));
    };
    let parse = |x: &Value| -> crate::Result<BigInt> {
        x.as_str()
            .ok_or_else(|| malformed("rational parts must be decimal strings"))?
            .parse::<BigInt>()
            .map_err(|e| malformed(format!("bad integer: {e}")))
    };
    let den = parse(den)?;
    if den == BigInt::from(0) {
        return Err(malformed("zero denominator"));
    }
    Ok(BigRational::new(parse(num)?, den))
}

fn rational_json(r: &BigRational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

fn point_json(p: &Point) -> Value {
    Value::Array(p.iter().map(rational_json).collect())
}

pub fn parse_instance(v: &Value) -> crate::Result<Instance> {
    if v.get("points").is_some() {
        let d = as_u64(field(v, "d")?, "d")? as usize;
        let k = as_u64(field(v, "k")?, "k")? as usize;
        let points = as_array(field(v, "points")?, "points")?
            .iter()
            .map(|p| as_array(p, "point")?.iter().map(parse_rational).collect())
            .collect::<crate::Result<Vec<Point>>>()?;
        return Ok(Instance::Points(PointConfig::new(d, points, k)?));
    }
    let family = parse_family(v)?;
    if let Some(cs) = v.get("constraints") {
        let constraints = as_array(cs, "constraints")?
            .iter()
            .map(|c| {
                let vs = id_list(field(c, "v")?, "constraint v")?;
                let ws = id_list(field(c, "w")?, "constraint w")?;
                if let Some(&e) = vs.iter().chain(&ws).find(|&&e| e >= family.n()) {
                    return Err(malformed(format!("constraint element {e} is outside the ground set")));
                }
                Constraint::from_lists(&vs, &ws)
            })
            .collect::<crate::Result<Vec<_>>>()?;
        return Ok(Instance::Constraints { family, constraints });
    }
    let parts = match v.get("parts") {
        None => Partition::single_block(family.ground()),
        Some(p) => {
            let lists = as_array(p, "parts")?.iter().map(|b| id_list(b, "part")).collect::<crate::Result<Vec<_>>>()?;
            Partition::from_element_lists(&lists)?
        }
    };
    Ok(Instance::Sets(SeparationInstance::new(family, parts)?))
}

fn family_json(f: &SetFamily) -> Value {
    Value::Array(f.members().iter().map(|m| Value::String(m.to_hex())).collect())
}

fn elements_json(m: SubsetMask) -> Value {
    json!(m.elements().collect::<Vec<_>>())
}

pub fn instance_json(inst: &Instance) -> Value {
    match inst {
        Instance::Sets(s) => json!({
            "n": s.family.n(),
            "parts": s.parts.sorted_blocks().into_iter().map(elements_json).collect::<Vec<_>>(),
            "family": family_json(&s.family),
        }),
        Instance::Constraints { family, constraints } => json!({
            "n": family.n(),
            "family": family_json(family),
            "constraints": constraints
                .iter()
                .map(|c| json!({"v": elements_json(c.v()), "w": elements_json(c.w())}))
                .collect::<Vec<_>>(),
        }),
        Instance::Points(cfg) => json!({
            "d": cfg.d(),
            "k": cfg.k(),
            "points": cfg.points().iter().map(point_json).collect::<Vec<_>>(),
        }),
    }
}

/// Canonical serialization: sorted keys, no whitespace.
pub fn canonical_string(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

/// SHA-256 of the canonical form of the instance.
pub fn instance_digest(inst: &Instance) -> String {
    hex::encode(Sha256::digest(canonical_string(&instance_json(inst)).as_bytes()))
}

pub fn read_json(path: &Path) -> crate::Result<Value> {
    let text = fs::read_to_string(path).map_err(|e| malformed(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| malformed(format!("{}: {e}", path.display())))
}

pub fn read_instance(path: &Path) -> crate::Result<Instance> {
    parse_instance(&read_json(path)?)
}

fn ratio_string(r: &Ratio<u64>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn decimal(x: f64) -> String {
    format!("{x:.6}")
}

// ---- certificates ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Claim {
    SeparatesParts(Scope),
    SatisfiesConstraints,
    Separator(Mode),
}

impl Claim {
    fn name(self) -> &'static str {
        match self {
            Claim::SeparatesParts(_) => "separates-parts",
            Claim::SatisfiesConstraints => "satisfies-constraints",
            Claim::Separator(Mode::Containment) => "containment-separator",
            Claim::Separator(Mode::Intersection) => "intersection-separator",
        }
    }
}

fn scope_name(s: Scope) -> &'static str {
    match s {
        Scope::AllPairs => "all-pairs",
        Scope::FamilySeparated => "family-separated",
    }
}

/// What a certificate selects.
#[derive(Clone, Debug, PartialEq)]
pub enum Selection {
    Members(Vec<usize>),
    Sets(Vec<ConvexSet>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Certificate {
    pub claim: Claim,
    pub selected: Selection,
    pub digest: String,
}

fn convex_set_json(c: &ConvexSet) -> Value {
    match c {
        ConvexSet::Hull(h) => json!({"hull": elements_json(h.generators)}),
        ConvexSet::HalfSpace(h) => json!({"halfspace": {
            "normal": point_json(h.normal()),
            "offset": rational_json(h.offset()),
        }}),
    }
}

pub fn certificate_json(c: &Certificate) -> Value {
    let selected = match &c.selected {
        Selection::Members(ix) => json!(ix),
        Selection::Sets(sets) => Value::Array(sets.iter().map(convex_set_json).collect()),
    };
    let mut v = json!({"claim": c.claim.name(), "selected": selected, "digest": c.digest});
    if let Claim::SeparatesParts(s) = c.claim {
        v["scope"] = json!(scope_name(s));
    }
    v
}

pub fn parse_certificate(v: &Value, inst: &Instance) -> crate::Result<Certificate> {
    let claim = match field(v, "claim")?.as_str() {
        Some("separates-parts") => {
            let scope = match v.get("scope").and_then(Value::as_str) {
                None | Some("all-pairs") => Scope::AllPairs,
                Some("family-separated") => Scope::FamilySeparated,
                Some(other) => return Err(malformed(format!("unknown scope {other}"))),
            };
            Claim::SeparatesParts(scope)
        }
        Some("satisfies-constraints") => Claim::SatisfiesConstraints,
        Some("containment-separator") => Claim::Separator(Mode::Containment),
        Some("intersection-separator") => Claim::Separator(Mode::Intersection),
        _ => return Err(malformed("unknown or missing claim")),
    };
    let digest = field(v, "digest")?.as_str().ok_or_else(|| malformed("digest must be a string"))?.to_string();
    let raw = as_array(field(v, "selected")?, "selected")?;
    let selected = match (claim, inst) {
        (Claim::SeparatesParts(_), Instance::Sets(s)) => Selection::Members(member_indices(raw, s.family.len())?),
        (Claim::SatisfiesConstraints, Instance::Constraints { family, .. }) => {
            Selection::Members(member_indices(raw, family.len())?)
        }
        (Claim::Separator(_), Instance::Points(cfg)) => {
            Selection::Sets(raw.iter().map(|s| parse_convex_set(s, cfg)).collect::<crate::Result<_>>()?)
        }
        _ => return Err(malformed("certificate claim does not match the instance kind")),
    };
    Ok(Certificate { claim, selected, digest })
}

fn member_indices(raw: &[Value], len: usize) -> crate::Result<Vec<usize>> {
    raw.iter()
        .map(|x| {
            let i = as_u64(x, "member index")? as usize;
            if i >= len {
                return Err(malformed(format!("member index {i} out of range")));
            }
            Ok(i)
        })
        .collect()
}

fn parse_convex_set(v: &Value, cfg: &PointConfig) -> crate::Result<ConvexSet> {
    if let Some(h) = v.get("hull") {
        let labels = id_list(h, "hull")?;
        if let Some(&l) = labels.iter().find(|&&l| l as usize >= cfg.n()) {
            return Err(malformed(format!("hull label {l} out of range")));
        }
        return Ok(ConvexSet::Hull(cfg.canonical(SubsetMask::from_elements(labels))));
    }
    if let Some(h) = v.get("halfspace") {
        let normal: Point =
            as_array(field(h, "normal")?, "normal")?.iter().map(parse_rational).collect::<crate::Result<_>>()?;
        if normal.len() != cfg.d() {
            return Err(malformed("halfspace normal has the wrong dimension"));
        }
        let offset = parse_rational(field(h, "offset")?)?;
        return Ok(ConvexSet::HalfSpace(HalfSpace::new(normal, offset)?));
    }
    Err(malformed("a convex set is {\"hull\": ...} or {\"halfspace\": ...}"))
}

/// Outcome of checking a certificate.
#[derive(Clone, Debug, PartialEq)]
pub enum Check {
    Valid,
    Invalid(Value),
}

/// Checks the claim against the instance; the digest is checked separately.
pub fn check_certificate(inst: &Instance, cert: &Certificate) -> crate::Result<Check> {
    match (cert.claim, inst, &cert.selected) {
        (Claim::SeparatesParts(scope), Instance::Sets(s), Selection::Members(ix)) => {
            let masks: Vec<SubsetMask> = ix.iter().map(|&i| s.family.members()[i]).collect();
            Ok(match is_separating(&masks, s, scope) {
                Verdict::Separating => Check::Valid,
                Verdict::Unseparated(x, y) => Check::Invalid(json!({"pair": [x, y]})),
            })
        }
        (Claim::SatisfiesConstraints, Instance::Constraints { family, constraints }, Selection::Members(ix)) => {
            let masks: Vec<SubsetMask> = ix.iter().map(|&i| family.members()[i]).collect();
            Ok(match constraints.iter().position(|c| !masks.iter().any(|&a| satisfies(a, c))) {
                None => Check::Valid,
                Some(i) => Check::Invalid(json!({"constraint": i})),
            })
        }
        (Claim::Separator(mode), Instance::Points(cfg), Selection::Sets(sets)) => {
            Ok(match verify_separator(cfg, sets, mode) {
                GeomVerdict::Separating => Check::Valid,
                GeomVerdict::Unseparated(a, b) => Check::Invalid(json!({"pair": [elements_json(a), elements_json(b)]})),
            })
        }
        _ => Err(malformed("certificate claim does not match the instance kind")),
    }
}

fn indices_of(f: &SetFamily, masks: &[SubsetMask]) -> Vec<usize> {
    masks.iter().map(|m| f.members().iter().position(|x| x == m).expect("selected mask is a member")).collect()
}

// ---- commands ----

fn emit(out: &mut dyn Write, v: &Value) -> CliResult<()> {
    writeln!(out, "{}", canonical_string(v)).map_err(|e| Failure::error(e.to_string()))
}

fn parse_ratio(s: &str) -> CliResult<Ratio<u64>> {
    let (p, q) = s.split_once('/').unwrap_or((s, "1"));
    let p: u64 = p.trim().parse().map_err(|_| Failure::error(format!("bad rational {s}")))?;
    let q: u64 = q.trim().parse().map_err(|_| Failure::error(format!("bad rational {s}")))?;
    if q == 0 {
        return Err(Failure::error("zero denominator"));
    }
    Ok(Ratio::new(p, q))
}

fn contiguous_blocks(n: u32, blocks: u32) -> CliResult<Partition> {
    if blocks == 0 || blocks > n {
        return Err(Failure::error(format!("cannot split {n} elements into {blocks} blocks")));
    }
    let lists: Vec<Vec<u32>> = (0..blocks).map(|b| (b * n / blocks..(b + 1) * n / blocks).collect()).collect();
    Ok(Partition::from_element_lists(&lists)?)
}

/// Random family with `⌈density·2^n⌉` members drawn without replacement.
pub fn random_family(n: u32, density: Ratio<u64>, seed: u64) -> crate::Result<SetFamily> {
    let g = GroundSet::new(n)?;
    if density > Ratio::from_integer(1) {
        return Err(Error::InvalidArgument(format!("density {density} exceeds 1")));
    }
    let total = g.power_set_size();
    let size = (density * Ratio::from_integer(total)).ceil().to_integer() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut members: Vec<SubsetMask> =
        sample(&mut rng, total as usize, size).into_iter().map(|i| SubsetMask(i as u32)).collect();
    members.sort_unstable();
    SetFamily::new(g, members)
}

fn generate(g: &Generator) -> CliResult<(Instance, Value)> {
    let sets = |f: SetFamily| Instance::Sets(SeparationInstance::single_block(f));
    Ok(match *g {
        Generator::SatcondLb { m, big_n } => {
            let (family, constraints) = gen_satcond_lower_bound(m, big_n)?;
            let summary = json!({"generator": "satcond-lb", "m": m, "N": big_n});
            (Instance::Constraints { family, constraints }, summary)
        }
        Generator::Logp1Tight { n } => {
            (Instance::Sets(gen_logp1_tight(n)?), json!({"generator": "logp1-tight", "block_size": n}))
        }
        Generator::VcTight { d, universe } => {
            (sets(gen_vc_tight_family(d, universe)?), json!({"generator": "vc-tight", "d": d}))
        }
        Generator::Intervals { n } => (sets(gen_intervals(n)?), json!({"generator": "intervals"})),
        Generator::DualBinomial { m, d } => {
            let r = gen_dual_binomial_separator(m, d)?;
            (sets(r.family), json!({"generator": "dual-binomial", "m": m, "d": d, "subsets": r.subsets}))
        }
        Generator::Collinear { n } => (Instance::Points(gen_collinear(n)?), json!({"generator": "collinear"})),
        Generator::MomentCurve { n, d, k } => {
            (Instance::Points(gen_moment_curve(n, d, k)?), json!({"generator": "moment-curve"}))
        }
        Generator::CircleApex { n } => (Instance::Points(gen_circle_apex(n)?), json!({"generator": "circle-apex"})),
        Generator::DiameterFan { n } => (Instance::Points(gen_diameter_fan(n)?), json!({"generator": "diameter-fan"})),
        Generator::PolarTriples { n } => {
            (Instance::Points(gen_polar_triples(n)?), json!({"generator": "polar-triples"}))
        }
        Generator::RandomFamily { n, ref density, seed, blocks } => {
            let f = random_family(n, parse_ratio(density)?, seed)?;
            let parts = contiguous_blocks(n, blocks)?;
            let summary = json!({"generator": "random-family", "seed": seed});
            (Instance::Sets(SeparationInstance::new(f, parts)?), summary)
        }
    })
}

fn summarize(inst: &Instance, mut summary: Value) -> Value {
    match inst {
        Instance::Sets(s) => {
            summary["n"] = json!(s.family.n());
            summary["members"] = json!(s.family.len());
            summary["density"] = json!(ratio_string(&s.family.density()));
            summary["max_part"] = json!(s.max_part());
        }
        Instance::Constraints { family, constraints } => {
            summary["n"] = json!(family.n());
            summary["members"] = json!(family.len());
            summary["density"] = json!(ratio_string(&family.density()));
            summary["constraints"] = json!(constraints.len());
        }
        Instance::Points(cfg) => {
            summary["points"] = json!(cfg.n());
            summary["d"] = json!(cfg.d());
            summary["k"] = json!(cfg.k());
            summary["general_position"] = json!(cfg.general_position());
        }
    }
    summary["digest"] = json!(instance_digest(inst));
    summary
}

fn cmd_gen(args: &GenArgs, out: &mut dyn Write) -> CliResult<()> {
    let (inst, summary) = generate(&args.generator)?;
    let summary = summarize(&inst, summary);
    let body = canonical_string(&instance_json(&inst));
    match &args.output {
        Some(path) => {
            fs::write(path, format!("{body}\n")).map_err(|e| Failure::error(format!("{}: {e}", path.display())))?;
            emit(out, &summary)
        }
        None => {
            eprintln!("{}", canonical_string(&summary));
            writeln!(out, "{body}").map_err(|e| Failure::error(e.to_string()))
        }
    }
}

fn trace_json(t: &PhaseTrace) -> Value {
    let phases: Vec<Value> = t
        .phases
        .iter()
        .enumerate()
        .map(|(i, p)| {
            json!({
                "phase": p.phase,
                "selected": p.selected.iter().map(|m| m.to_hex()).collect::<Vec<_>>(),
                "max_block_before": p.max_block_before,
                "max_block_after": p.max_block_after,
                "histogram": p.histogram.iter().map(|&(s, c)| json!([s, c])).collect::<Vec<_>>(),
                "total_selected": p.total_selected,
                "loss": decimal(t.loss(i)),
                "stall": p.stall.as_ref().map(|s| s.reason.clone()),
            })
        })
        .collect();
    json!({"alpha": ratio_string(&t.alpha), "initial_max_block": t.initial_max_block, "phases": phases})
}

fn want_sets(inst: &Instance) -> CliResult<&SeparationInstance> {
    match inst {
        Instance::Sets(s) => Ok(s),
        _ => Err(Failure::error("this command needs a set instance")),
    }
}

fn want_points(inst: &Instance) -> CliResult<&PointConfig> {
    match inst {
        Instance::Points(p) => Ok(p),
        _ => Err(Failure::error("this command needs a point instance")),
    }
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult<()> {
    let inst = read_instance(&args.instance)?;
    let digest = instance_digest(&inst);
    let (claim, selected, mut stats) = match args.algorithm {
        Algorithm::Logp1 => {
            let s = want_sets(&inst)?;
            let sel = select_logp1(s)?;
            let bound = ceil_log2(s.max_part()) + 1;
            let stats = json!({"size": sel.len(), "bound": bound});
            (Claim::SeparatesParts(Scope::AllPairs), Selection::Members(indices_of(&s.family, &sel)), stats)
        }
        Algorithm::Logpalpha => {
            let s = want_sets(&inst)?;
            let r = select_logpalpha(s)?;
            let bound = logpalpha_bound(s.max_part(), s.family.density(), LOGPALPHA_K);
            let last = r.trace.phases.len() - 1;
            let mut stats = json!({
                "size": r.selected.len(),
                "bound": decimal(bound),
                "loss": decimal(r.trace.loss(last)),
                "stalls": r.trace.stalls().map(|s| json!({"phase": s.phase, "reason": s.reason})).collect::<Vec<_>>(),
            });
            if args.trace {
                stats["trace"] = trace_json(&r.trace);
            }
            let ix = indices_of(&s.family, &r.selected);
            (Claim::SeparatesParts(Scope::FamilySeparated), Selection::Members(ix), stats)
        }
        Algorithm::Satcond => {
            let Instance::Constraints { family, constraints } = &inst else {
                return Err(Failure::error("satcond needs a constraint instance"));
            };
            let seed = args.seed.ok_or_else(|| Failure::error("satcond is randomized; pass --seed"))?;
            let eps = parse_ratio(&args.epsilon)?;
            let params = SatcondParams::new(eps, args.arms, constraints.len(), seed)?;
            let sel = select_satcond(family, constraints, &params)?;
            let classes = classify_constraints(family, constraints, eps);
            let stats = json!({
                "size": sel.size(),
                "random": sel.random.len(),
                "completion": sel.completion.len(),
                "t_random": params.t_random,
                "epsilon": ratio_string(&eps),
                "bad": classes.bad.len(),
                "seed": seed,
            });
            (Claim::SatisfiesConstraints, Selection::Members(indices_of(family, &sel.members())), stats)
        }
        Algorithm::Line => {
            let cfg = want_points(&inst)?;
            let sets = line_separator(cfg)?;
            let stats = json!({"size": sets.len(), "bound": 2 * cfg.n() - 4});
            (
                Claim::Separator(Mode::Containment),
                Selection::Sets(sets.into_iter().map(ConvexSet::Hull).collect()),
                stats,
            )
        }
        Algorithm::Halfspace => {
            let cfg = want_points(&inst)?;
            let hs = halfspace_separator(cfg)?;
            let bound = 2 * binomial(cfg.n() as u64, cfg.k() as u64 - 1);
            let stats = json!({"size": hs.len(), "bound": bound});
            let sets = hs.into_iter().map(ConvexSet::HalfSpace).collect();
            (Claim::Separator(Mode::Containment), Selection::Sets(sets), stats)
        }
    };
    let cert = Certificate { claim, selected, digest };
    if check_certificate(&inst, &cert)? != Check::Valid {
        return Err(Failure { code: 3, message: "solver output failed verification".into(), report: None });
    }
    stats["verified"] = json!(true);
    emit(out, &json!({"certificate": certificate_json(&cert), "stats": stats}))
}

fn oracle_report(args: &OracleArgs) -> CliResult<Value> {
    let inst = read_instance(&args.instance)?;
    let digest = instance_digest(&inst);
    let (claim, selected, mut report) = match args.problem {
        Problem::MinSeparator => {
            let s = want_sets(&inst)?;
            let scope: Scope = args.scope.into();
            let r = min_separating_subfamily_bounded(s, scope, args.max_size)?;
            let masks: Vec<String> = r.masks.iter().map(|m| m.to_hex()).collect();
            (
                Claim::SeparatesParts(scope),
                Selection::Members(r.indices.clone()),
                json!({"size": r.size(), "masks": masks}),
            )
        }
        Problem::MinConstraints => {
            let Instance::Constraints { family, constraints } = &inst else {
                return Err(Failure::error("min-constraints needs a constraint instance"));
            };
            let r = min_satisfying_subfamily_bounded(family, constraints, args.max_size)?;
            let masks: Vec<String> = r.masks.iter().map(|m| m.to_hex()).collect();
            (
                Claim::SatisfiesConstraints,
                Selection::Members(r.indices.clone()),
                json!({"size": r.size(), "masks": masks}),
            )
        }
        Problem::MinGeom => {
            let cfg = want_points(&inst)?;
            let mode: Mode = args.mode.into();
            let r = min_geom_separator(cfg, mode, args.strict, args.max_size)?;
            let inseparable: Vec<Value> =
                r.inseparable.iter().map(|&(a, b)| json!([elements_json(a), elements_json(b)])).collect();
            let report = json!({
                "size": r.size,
                "candidates": r.n_candidates,
                "requirements": r.n_requirements,
                "inseparable": inseparable,
            });
            let sets = r.sets.into_iter().map(ConvexSet::Hull).collect();
            (Claim::Separator(mode), Selection::Sets(sets), report)
        }
    };
    let name = args.problem.to_possible_value().expect("problems have names");
    report["problem"] = json!(name.get_name());
    report["certificate"] = certificate_json(&Certificate { claim, selected, digest });
    Ok(report)
}

fn cmd_verify(instance: &Path, certificate: &Path, out: &mut dyn Write) -> CliResult<()> {
    let inst = read_instance(instance)?;
    let raw = read_json(certificate)?;
    // accept the full output of `solve` or `oracle` as well as a bare certificate
    let raw = raw.get("certificate").cloned().unwrap_or(raw);
    let cert = parse_certificate(&raw, &inst)?;
    if cert.digest != instance_digest(&inst) {
        return Err(Failure::error("certificate digest does not match the instance"));
    }
    match check_certificate(&inst, &cert)? {
        Check::Valid => emit(out, &json!({"valid": true})),
        Check::Invalid(witness) => Err(Failure {
            code: 2,
            message: "certificate is invalid".into(),
            report: Some(json!({"valid": false, "witness": witness})),
        }),
    }
}

fn cmd_vcdim(instance: &Path, out: &mut dyn Write) -> CliResult<()> {
    let s = read_instance(instance)?;
    let r = vc_dimension(&want_sets(&s)?.family)?;
    emit(out, &json!({"dimension": r.dimension, "witness": elements_json(r.witness)}))
}

fn cmd_shatter(instance: &Path, m: u32, out: &mut dyn Write) -> CliResult<()> {
    let s = read_instance(instance)?;
    let f = &want_sets(&s)?.family;
    let value = shatter_function(f, m)?;
    let d = vc_dimension(f)?.dimension as u64;
    let sauer: u64 = (0..=d).map(|i| binomial(m as u64, i)).sum();
    emit(out, &json!({"m": m, "value": value, "sauer_bound": sauer}))
}

/// Runs one parsed command, writing results to `out`.
pub fn execute(cli: &Cli, out: &mut dyn Write) -> CliResult<()> {
    match &cli.command {
        Command::Gen(a) => cmd_gen(a, out),
        Command::Solve(a) => cmd_solve(a, out),
        Command::Oracle(a) => {
            let report = match a.threads {
                Some(t) => rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .map_err(|e| Failure::error(e.to_string()))?
                    .install(|| oracle_report(a))?,
                None => oracle_report(a)?,
            };
            emit(out, &report)
        }
        Command::Verify { instance, certificate } => cmd_verify(instance, certificate, out),
        Command::Vcdim { instance } => cmd_vcdim(instance, out),
        Command::Shatter { instance, m } => cmd_shatter(instance, *m, out),
    }
}

/// Entry point of the `sepfam` binary.
pub fn run() -> ExitCode {
    let cli = Cli::parse();
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match execute(&cli, &mut out) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if let Some(r) = &f.report {
                let _ = writeln!(out, "{}", canonical_string(r));
            }
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
