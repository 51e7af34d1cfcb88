//! Command implementations for the `biquad` binary.
//!
//! Every command writes machine-readable output to the given writer and
//! returns an exit code: 0 when everything checked out, 1 when a
//! verification failed, 2 for invalid or degenerate input.

use std::io::Write;

use anyhow::Result;
use biquad::exact::Rational;
use biquad::family::{
    self, classify, final_family, is_proportional, param_solution, parametrize_cubic,
    t_candidate_1, t_candidate_2, t_of_ab, verify_system, FamilyError, FamilyParams, ParamPoint,
    Triad, TriadPair,
};
use biquad::identities::run_identity_suite;
use biquad::quartic::{
    build_quartics, secant_variants, tangent_variants, verify_square_point, CurvePoint,
    MonicQuartic, QuarticError, Variant,
};
use biquad::search::{enumerate_pairs, family_grid, SearchConfig};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_INVALID: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "biquad",
    version,
    about = "Two triads of biquadrates with equal sums and equal products"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build the family member at (a, b) and verify it.
    Generate {
        #[arg(long, allow_negative_numbers = true)]
        a: i64,
        #[arg(long, allow_negative_numbers = true)]
        b: i64,
    },
    /// Build every nondegenerate, nontrivial family pair over a grid.
    GenerateRange {
        #[arg(long, allow_negative_numbers = true)]
        a_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        a_max: i64,
        #[arg(long, allow_negative_numbers = true)]
        b_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        b_max: i64,
        /// Drop pairs with an entry above this value.
        #[arg(long)]
        max_element: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Check two triads for equal sums of fourth powers and equal products.
    Verify {
        /// Comma-separated, e.g. 7,133,153
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
    },
    /// Exhaustive search over all triads with entries up to --max.
    Search {
        #[arg(long)]
        max: u32,
        /// Only pairs whose six entries are coprime.
        #[arg(long)]
        primitive: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Run the symbolic identity suite.
    IdentityCheck,
    /// Quartic-curve utilities.
    Quartic {
        #[command(subcommand)]
        op: QuarticOp,
    },
}

#[derive(Debug, Clone, Args)]
pub struct Pqr {
    #[arg(long, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub q: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub r: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum CurveKind {
    Q1,
    Q2,
}

/// A curve given either by `(p, q, r)` and a choice of quartic, or by its
/// coefficients below the leading term.
#[derive(Debug, Clone, Args)]
pub struct CurveSpec {
    #[arg(long, allow_negative_numbers = true, requires_all = ["q", "r"])]
    pub p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub q: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub r: Option<i64>,
    #[arg(long, value_enum, default_value_t = CurveKind::Q1)]
    pub curve: CurveKind,
    /// c3,c2,c1,c0 for t^4 + c3 t^3 + c2 t^2 + c1 t + c0
    #[arg(long, conflicts_with_all = ["p", "q", "r"], allow_hyphen_values = true)]
    pub coeffs: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum QuarticOp {
    /// t value making the first quartic a square.
    T1(Pqr),
    /// t value making the second quartic a square.
    T2(Pqr),
    /// First quartic, optionally evaluated at --t.
    Q1 {
        #[command(flatten)]
        pqr: Pqr,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Second quartic, optionally evaluated at --t.
    Q2 {
        #[command(flatten)]
        pqr: Pqr,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// New points from the points over --t1 and --t2 (all sign choices).
    Compose {
        #[command(flatten)]
        curve: CurveSpec,
        #[arg(long, allow_hyphen_values = true)]
        t1: String,
        #[arg(long, allow_hyphen_values = true)]
        t2: String,
    },
    /// New points from the tangent at the point over --t (both sign choices).
    Tangent {
        #[command(flatten)]
        curve: CurveSpec,
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
}

fn emit(out: &mut dyn Write, v: &Value) -> Result<()> {
    serde_json::to_writer(&mut *out, v)?;
    writeln!(out)?;
    Ok(())
}

fn invalid(out: &mut dyn Write, msg: impl std::fmt::Display) -> Result<u8> {
    emit(out, &json!({ "error": msg.to_string() }))?;
    Ok(EXIT_INVALID)
}

fn strs<'a, I: IntoIterator<Item = &'a BigInt>>(v: I) -> Vec<String> {
    v.into_iter().map(|x| x.to_string()).collect()
}

pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    match cli.command {
        Command::Generate { a, b } => cmd_generate(a, b, out),
        Command::GenerateRange {
            a_min,
            a_max,
            b_min,
            b_max,
            max_element,
            format,
        } => cmd_generate_range(a_min..=a_max, b_min..=b_max, max_element, format, out, err),
        Command::Verify { left, right } => cmd_verify(&left, &right, out),
        Command::Search {
            max,
            primitive,
            jobs,
            format,
        } => cmd_search(max, primitive, jobs, format, out, err),
        Command::IdentityCheck => cmd_identity_check(out, err),
        Command::Quartic { op } => cmd_quartic(op, out),
    }
}

pub fn cmd_generate(a: i64, b: i64, out: &mut dyn Write) -> Result<u8> {
    let pt = match ParamPoint::new(a, b) {
        Ok(pt) => pt,
        Err(e) => {
            emit(
                out,
                &json!({ "a": a, "b": b, "status": "degenerate", "reason": e.to_string() }),
            )?;
            return Ok(EXIT_INVALID);
        }
    };
    let degeneracies = classify(&pt);
    let reasons: Vec<&str> = degeneracies.iter().map(|d| d.reason()).collect();
    let cubic = parametrize_cubic(&pt);
    let member = match final_family(&pt) {
        Ok(m) => m,
        Err(FamilyError::Degenerate(why)) => {
            let mut all = reasons.iter().map(|s| s.to_string()).collect::<Vec<_>>();
            if all.is_empty() {
                all.push(why);
            }
            emit(
                out,
                &json!({
                    "a": a, "b": b,
                    "status": "degenerate",
                    "reason": all.join("; "),
                    "degenerate": degeneracies,
                    "p": cubic.p.to_string(), "q": cubic.q.to_string(), "r": cubic.r.to_string(),
                }),
            )?;
            return Ok(EXIT_INVALID);
        }
        Err(e) => return Err(e.into()),
    };

    let system = verify_system(&member.squares.values);
    let all_squares = member
        .squares
        .values
        .iter()
        .all(|v| biquad::exact::is_perfect_square(v).is_some());
    let fourth_sum =
        |v: &[BigInt; 3]| -> BigInt { v.iter().map(|x| num_traits::pow(x.clone(), 4)).sum() };
    let root_prod = |v: &[BigInt; 3]| -> BigInt { v.iter().product() };
    let fourth_equal = fourth_sum(&member.roots.x) == fourth_sum(&member.roots.y);
    let root_products_equal = root_prod(&member.roots.x) == root_prod(&member.roots.y);
    let condition_zero = family::condition_value(&cubic.p, &cubic.q, &cubic.r) == BigInt::from(0);

    let mut checks = json!({
        "all_squares": all_squares,
        "sums_equal": system.sums_equal,
        "products_equal": system.products_equal,
        "fourth_power_sums_equal": fourth_equal,
        "root_products_equal": root_products_equal,
        "condition_zero": condition_zero,
    });
    let mut t_json = Value::Null;
    if let (Ok(t), Ok(params)) = (t_of_ab(&pt), cubic.params()) {
        let agree = t_candidate_1(&params).ok().as_ref() == Some(&t)
            && t_candidate_2(&params).ok().as_ref() == Some(&t);
        let proportional = param_solution(&params, &t, &Rational::one())
            .map(|s| is_proportional(&s.as_array(), &member.squares.as_array()))
            .unwrap_or(false);
        checks["t_candidates_agree"] = json!(agree);
        checks["proportional_to_scaled_solution"] = json!(proportional);
        t_json = json!(t.to_string());
    }
    let checks_pass = checks
        .as_object()
        .map(|m| m.values().all(|v| v == &Value::Bool(true)))
        .unwrap_or(false);

    let status = if !reasons.is_empty() {
        "degenerate"
    } else if member.trivial {
        "trivial"
    } else if checks_pass {
        "ok"
    } else {
        "failed"
    };
    let mut payload = json!({
        "a": a,
        "b": b,
        "status": status,
        "p": cubic.p.to_string(),
        "q": cubic.q.to_string(),
        "r": cubic.r.to_string(),
        "t": t_json,
        "squares": { "x": strs(&member.squares.values.x), "y": strs(&member.squares.values.y) },
        "roots": { "x": strs(&member.roots.x), "y": strs(&member.roots.y) },
        "pair": member.pair,
        "trivial": member.trivial,
        "checks": checks,
    });
    if !reasons.is_empty() {
        payload["reason"] = json!(reasons.join("; "));
        payload["degenerate"] = json!(degeneracies);
    }
    emit(out, &payload)?;
    Ok(match status {
        "ok" => EXIT_OK,
        "failed" => EXIT_FAILED,
        _ => EXIT_INVALID,
    })
}

fn pair_csv_row(p: &TriadPair) -> Vec<String> {
    let mut row = strs(p.left().values());
    row.extend(strs(p.right().values()));
    row.push(p.sum4().to_string());
    row.push(p.prod().to_string());
    row
}

const CSV_HEADER: [&str; 8] = [
    "left1", "left2", "left3", "right1", "right2", "right3", "sum4", "prod",
];

fn write_pairs(pairs: &[TriadPair], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Json => {
            for p in pairs {
                emit(out, &serde_json::to_value(p)?)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(CSV_HEADER)?;
            for p in pairs {
                w.write_record(pair_csv_row(p))?;
            }
            w.flush()?;
        }
    }
    Ok(())
}

pub fn cmd_generate_range(
    a_range: std::ops::RangeInclusive<i64>,
    b_range: std::ops::RangeInclusive<i64>,
    max_element: Option<u64>,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8> {
    let grid = match family_grid(a_range, b_range, max_element) {
        Ok(g) => g,
        Err(e @ FamilyError::InternalConsistency(_)) => {
            writeln!(err, "{e}")?;
            return Ok(EXIT_FAILED);
        }
        Err(e) => return invalid(out, e),
    };
    write_pairs(&grid.pairs, format, out)?;
    let summary = json!({ "summary": {
        "points": grid.points,
        "pairs": grid.pairs.len(),
        "degenerate": grid.degenerate,
        "trivial": grid.trivial,
        "over_bound": grid.over_bound,
    }});
    match format {
        Format::Json => emit(out, &summary)?,
        Format::Csv => writeln!(err, "{summary}")?,
    }
    Ok(EXIT_OK)
}

fn parse_triad(s: &str) -> std::result::Result<Triad, String> {
    let vals: Vec<BigInt> = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<BigInt>()
                .map_err(|_| format!("bad integer {p:?} in {s:?}"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let vals: [BigInt; 3] = vals
        .try_into()
        .map_err(|_| format!("expected three comma-separated integers, got {s:?}"))?;
    if vals.iter().any(|v| !v.is_positive()) {
        return Err(format!("triad entries must be positive: {s:?}"));
    }
    Triad::new(vals).map_err(|e| e.to_string())
}

pub fn cmd_verify(left: &str, right: &str, out: &mut dyn Write) -> Result<u8> {
    let (l, r) = match (parse_triad(left), parse_triad(right)) {
        (Ok(l), Ok(r)) => (l, r),
        (Err(e), _) | (_, Err(e)) => return invalid(out, e),
    };
    let (s_l, s_r) = (l.sum_fourth_powers(), r.sum_fourth_powers());
    let (p_l, p_r) = (l.product(), r.product());
    let sums_equal = s_l == s_r;
    let products_equal = p_l == p_r;
    let trivial = l == r;
    let mut payload = json!({
        "left": l,
        "right": r,
        "sum4_left": s_l.to_string(),
        "sum4_right": s_r.to_string(),
        "prod_left": p_l.to_string(),
        "prod_right": p_r.to_string(),
        "sums_equal": sums_equal,
        "products_equal": products_equal,
        "trivial": trivial,
    });
    let ok = sums_equal && products_equal && !trivial;
    if ok {
        payload["sum4"] = json!(s_l.to_string());
        payload["prod"] = json!(p_l.to_string());
    }
    payload["status"] = json!(if ok {
        "ok"
    } else if trivial {
        "trivial"
    } else {
        "failed"
    });
    emit(out, &payload)?;
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

pub fn cmd_search(
    max: u32,
    primitive: bool,
    jobs: usize,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<u8> {
    if max == 0 {
        return invalid(out, "--max must be at least 1");
    }
    let report = enumerate_pairs(&SearchConfig {
        bound: max,
        primitive_only: primitive,
        partitions: jobs.max(1),
    });
    write_pairs(&report.pairs, format, out)?;
    let summary = json!({ "summary": {
        "max": max,
        "primitive_only": primitive,
        "pairs": report.pairs.len(),
        "triads_enumerated": report.triads_enumerated,
    }});
    writeln!(err, "search finished in {} ms", report.elapsed.as_millis())?;
    match format {
        Format::Json => emit(out, &summary)?,
        Format::Csv => writeln!(err, "{summary}")?,
    }
    Ok(EXIT_OK)
}

pub fn cmd_identity_check(out: &mut dyn Write, err: &mut dyn Write) -> Result<u8> {
    let report = run_identity_suite();
    let lines: Vec<String> = report.checks.iter().map(|c| c.line()).collect();
    for l in &lines {
        writeln!(err, "{l}")?;
    }
    for p in &report.informational {
        writeln!(
            err,
            "informational: reference point on {} at (p,q,r)=({},{},{}): t={} value={} y^2={} on curve: {}",
            p.curve, p.p, p.q, p.r, p.t, p.value, p.y_squared, p.on_curve
        )?;
    }
    let passed = report.all_passed();
    emit(
        out,
        &json!({
            "all_passed": passed,
            "checks": report.checks,
            "lines": lines,
            "informational": report.informational,
            "elapsed_ms": report.elapsed_ms as u64,
        }),
    )?;
    Ok(if passed { EXIT_OK } else { EXIT_FAILED })
}

fn parse_q(s: &str) -> std::result::Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

fn params_of(p: &Pqr) -> std::result::Result<FamilyParams, FamilyError> {
    FamilyParams::from_i64s(p.p, p.q, p.r)
}

fn resolve_curve(spec: &CurveSpec) -> std::result::Result<MonicQuartic, String> {
    if let Some(coeffs) = &spec.coeffs {
        let vals: Vec<Rational> = coeffs
            .split(',')
            .map(parse_q)
            .collect::<std::result::Result<_, _>>()?;
        let [c3, c2, c1, c0]: [Rational; 4] = vals
            .try_into()
            .map_err(|_| "--coeffs takes four values c3,c2,c1,c0".to_string())?;
        return Ok(MonicQuartic::new(c3, c2, c1, c0));
    }
    let (Some(p), Some(q), Some(r)) = (spec.p, spec.q, spec.r) else {
        return Err("give either --p/--q/--r or --coeffs".into());
    };
    let params = FamilyParams::from_i64s(p, q, r).map_err(|e| e.to_string())?;
    let (q1, q2) = build_quartics(&params).map_err(|e| e.to_string())?;
    Ok(match spec.curve {
        CurveKind::Q1 => q1,
        CurveKind::Q2 => q2,
    })
}

fn point_on(f: &MonicQuartic, t: &str) -> std::result::Result<CurvePoint, String> {
    let t = parse_q(t)?;
    verify_square_point(f, &t)
        .ok_or_else(|| format!("f({t}) = {} is not a rational square", f.eval(&t)))
}

fn variant_json<S: serde::Serialize>(v: &Variant<S>) -> Value {
    let mut o = json!({ "signs": v.signs });
    match &v.outcome {
        Ok(Some(p)) => o["point"] = json!(p),
        Ok(None) => o["point"] = Value::Null,
        Err(e) => o["error"] = json!(e.to_string()),
    }
    o
}

fn quartic_error(e: &QuarticError) -> bool {
    matches!(e, QuarticError::InternalConsistency(_))
}

pub fn cmd_quartic(op: QuarticOp, out: &mut dyn Write) -> Result<u8> {
    match op {
        QuarticOp::T1(pqr) => t_candidate_cmd(&pqr, 1, out),
        QuarticOp::T2(pqr) => t_candidate_cmd(&pqr, 2, out),
        QuarticOp::Q1 { pqr, t } => curve_cmd(&pqr, CurveKind::Q1, t.as_deref(), out),
        QuarticOp::Q2 { pqr, t } => curve_cmd(&pqr, CurveKind::Q2, t.as_deref(), out),
        QuarticOp::Compose { curve, t1, t2 } => {
            let f = match resolve_curve(&curve) {
                Ok(f) => f,
                Err(e) => return invalid(out, e),
            };
            let (p1, p2) = match (point_on(&f, &t1), point_on(&f, &t2)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(e), _) | (_, Err(e)) => return invalid(out, e),
            };
            if p1.t == p2.t {
                return invalid(out, QuarticError::SameAbscissa(p1.t));
            }
            let variants = secant_variants(&f, &p1, &p2);
            let broken = variants
                .iter()
                .any(|v| v.outcome.as_ref().err().is_some_and(quartic_error));
            emit(
                out,
                &json!({
                    "curve": f,
                    "p1": p1,
                    "p2": p2,
                    "variants": variants.iter().map(variant_json).collect::<Vec<_>>(),
                }),
            )?;
            Ok(if broken { EXIT_FAILED } else { EXIT_OK })
        }
        QuarticOp::Tangent { curve, t } => {
            let f = match resolve_curve(&curve) {
                Ok(f) => f,
                Err(e) => return invalid(out, e),
            };
            let p = match point_on(&f, &t) {
                Ok(p) => p,
                Err(e) => return invalid(out, e),
            };
            if p.y.is_zero() {
                return invalid(out, "tangent undefined where y = 0");
            }
            let variants = tangent_variants(&f, &p);
            let broken = variants
                .iter()
                .any(|v| v.outcome.as_ref().err().is_some_and(quartic_error));
            emit(
                out,
                &json!({
                    "curve": f,
                    "point": p,
                    "variants": variants.iter().map(variant_json).collect::<Vec<_>>(),
                }),
            )?;
            Ok(if broken { EXIT_FAILED } else { EXIT_OK })
        }
    }
}

fn t_candidate_cmd(pqr: &Pqr, which: u8, out: &mut dyn Write) -> Result<u8> {
    let params = match params_of(pqr) {
        Ok(p) => p,
        Err(e) => return invalid(out, e),
    };
    let t = if which == 1 {
        t_candidate_1(&params)
    } else {
        t_candidate_2(&params)
    };
    let t = match t {
        Ok(t) => t,
        Err(e) => return invalid(out, e),
    };
    let (q1, q2) = build_quartics(&params)?;
    let curve = if which == 1 { q1 } else { q2 };
    let point = verify_square_point(&curve, &t);
    emit(
        out,
        &json!({
            "p": pqr.p, "q": pqr.q, "r": pqr.r,
            "t": t,
            "curve": curve,
            "value": curve.eval(&t),
            "square": point.as_ref().map(|p| &p.y),
        }),
    )?;
    Ok(if point.is_some() {
        EXIT_OK
    } else {
        EXIT_FAILED
    })
}

fn curve_cmd(pqr: &Pqr, kind: CurveKind, t: Option<&str>, out: &mut dyn Write) -> Result<u8> {
    let params = match params_of(pqr) {
        Ok(p) => p,
        Err(e) => return invalid(out, e),
    };
    let (q1, q2) = match build_quartics(&params) {
        Ok(qs) => qs,
        Err(e) => return invalid(out, e),
    };
    let curve = if kind == CurveKind::Q1 { q1 } else { q2 };
    let mut payload = json!({ "p": pqr.p, "q": pqr.q, "r": pqr.r, "curve": curve });
    if let Some(t) = t {
        let t = match parse_q(t) {
            Ok(t) => t,
            Err(e) => return invalid(out, e),
        };
        let value = curve.eval(&t);
        payload["t"] = json!(t);
        payload["square"] = json!(value.sqrt());
        payload["value"] = json!(value);
    }
    emit(out, &payload)?;
    Ok(EXIT_OK)
}
