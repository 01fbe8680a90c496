use serde_json::{json, Value};

use pseudodiff::acceptance;
use pseudodiff::exact::parse_scalar;
use pseudodiff::fractional::{dord, is_differential, FracOp};
use pseudodiff::grassmannian::{
    dressing_from_plane, example_4_5, frac_certify, quotient_dim, rank, rank_two_example,
    spectral_membership, Plane,
};
use pseudodiff::krichever::{
    conjugated_pair, elliptic_plane, rank1_verify, section_check, section_operator, weierstrass_p,
    CurveData,
};
use pseudodiff::psdo::{schur_dress, PsDO};
use pseudodiff::relations::{bc_relation, span_dim};
use pseudodiff::{Error, Result, Verdict, ZSeries};

use crate::report::{Report, Status};
use crate::{
    BcCmd, Cli, Command, Example, FracCmd, KricheverCmd, PlaneCmd, PlaneSource, PsdoCmd, Window,
};

type Outcome = Result<(Status, Value)>;

pub fn run(cli: &Cli, input: Vec<String>) -> Report {
    let w = &cli.window;
    let window = json!({
        "prec_x": w.prec_x,
        "z_floor": w.z_floor,
        "depth": w.depth,
        "nmax": w.nmax,
        "deg_bound": w.deg_bound,
    });
    let (name, outcome) = match &cli.command {
        Command::Psdo(c) => psdo(c, w),
        Command::Frac(c) => frac(c, w),
        Command::Plane(c) => plane(c, w),
        Command::Bc(c) => bc(c, w),
        Command::Krichever(c) => krichever(c, w),
        Command::Selftest { only } => ("selftest", selftest(*only)),
    };
    match outcome {
        Ok((status, payload)) => Report {
            command: name.into(),
            status,
            payload,
            input,
            window,
        },
        Err(e) => Report::from_error(name.into(), &e, input, window),
    }
}

fn status_of(v: Verdict) -> Status {
    match v {
        Verdict::UnknownAtPrecision => Status::Unknown,
        _ => Status::Ok,
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("library types serialize")
}

fn op(text: &str, w: &Window) -> Result<PsDO> {
    PsDO::parse(text, w.prec_x as usize)
}

fn frac_op(text: &str, w: &Window) -> Result<FracOp> {
    FracOp::parse(text, w.prec_x as usize)
}

fn psdo(c: &PsdoCmd, w: &Window) -> (&'static str, Outcome) {
    let (name, out) = match c {
        PsdoCmd::Mul { p, q } => ("psdo.mul", (|| Ok(op(p, w)?.mul(&op(q, w)?)))()),
        PsdoCmd::Invert { p } => ("psdo.invert", op(p, w).and_then(|p| p.invert())),
        PsdoCmd::Dress { l } => ("psdo.dress", op(l, w).and_then(|l| schur_dress(&l))),
    };
    (
        name,
        out.map(|r| {
            (
                Status::Ok,
                json!({ "result": r.to_string(), "operator": to_value(&r) }),
            )
        }),
    )
}

fn frac(c: &FracCmd, w: &Window) -> (&'static str, Outcome) {
    match c {
        FracCmd::Certify { p } => ("frac.certify", {
            op(p, w).map(|p| {
                let cert = frac_certify(&p);
                (status_of(cert.verdict), to_value(&cert))
            })
        }),
        FracCmd::Dord { p } => ("frac.dord", {
            frac_op(p, w).and_then(|p| {
                let (k, l) = dord(&p)?;
                Ok((
                    Status::Ok,
                    json!({ "dord": k, "denominator": l.to_string() }),
                ))
            })
        }),
        FracCmd::Differential { p } => ("frac.differential", {
            frac_op(p, w).map(|p| {
                let check = is_differential(&p);
                (status_of(check.verdict), to_value(&check))
            })
        }),
    }
}

fn load_plane(source: &PlaneSource, w: &Window) -> Result<Plane> {
    let depth = w.depth as usize;
    if let Some(path) = &source.plane {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
        let mut v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
        // Accept a whole `--json` report as well as a bare plane.
        if let Some(payload) = v.get_mut("payload").map(Value::take) {
            v = match payload.get("plane") {
                Some(p) => p.clone(),
                None => payload,
            };
        }
        return serde_json::from_value(v).map_err(|e| Error::Parse(e.to_string()));
    }
    Ok(match source.example.unwrap_or(Example::Trivial) {
        Example::Trivial => example_4_5(depth),
        Example::RankTwo => rank_two_example(depth),
        Example::Standard => Plane::standard(depth, -2 * depth as i64 - 2),
    })
}

/// A z-series trusted `|z_floor|` exponents below the plane's floor unless it carries `O(z^k)`.
fn series(text: &str, plane: &Plane, w: &Window) -> Result<ZSeries> {
    ZSeries::parse(text, plane.floor() + w.z_floor)
}

fn plane(c: &PlaneCmd, w: &Window) -> (&'static str, Outcome) {
    match c {
        PlaneCmd::Show { source } => (
            "plane.show",
            load_plane(source, w).map(|p| (Status::Ok, to_value(&p))),
        ),
        PlaneCmd::Kw { source, f } => ("plane.kw", {
            (|| {
                let p = load_plane(source, w)?;
                let cert = quotient_dim(&p, &series(f, &p, w)?);
                let status = if cert.stabilized {
                    Status::Ok
                } else {
                    Status::Unknown
                };
                Ok((status, to_value(&cert)))
            })()
        }),
        PlaneCmd::Spectral { source, f } => ("plane.spectral", {
            (|| {
                let p = load_plane(source, w)?;
                let check = spectral_membership(&p, &series(f, &p, w)?);
                Ok((status_of(check.verdict), to_value(&check)))
            })()
        }),
        PlaneCmd::Rank { source, f } => ("plane.rank", {
            (|| {
                let p = load_plane(source, w)?;
                let report = rank(&p, &series(f, &p, w)?, w.deg_bound as usize)?;
                let status = if report.stabilized {
                    Status::Ok
                } else {
                    Status::Unknown
                };
                Ok((status, to_value(&report)))
            })()
        }),
        PlaneCmd::Dressing { source } => ("plane.dressing", {
            (|| {
                let u = dressing_from_plane(&load_plane(source, w)?)?;
                Ok((
                    Status::Ok,
                    json!({ "dressing": u.to_string(), "operator": to_value(&u) }),
                ))
            })()
        }),
    }
}

fn bc(c: &BcCmd, w: &Window) -> (&'static str, Outcome) {
    match c {
        BcCmd::Relate { p, q } => ("bc.relate", {
            (|| {
                let (f, report) = bc_relation(&frac_op(p, w)?, &frac_op(q, w)?, w.nmax as usize)?;
                Ok((
                    Status::Ok,
                    json!({ "relation": f.to_string(), "report": to_value(&report) }),
                ))
            })()
        }),
        BcCmd::Span { p, q, n } => ("bc.span", {
            (|| {
                let report = span_dim(&frac_op(p, w)?, &frac_op(q, w)?, *n)?;
                Ok((Status::Ok, to_value(&report)))
            })()
        }),
    }
}

fn curve_scalars(g2: &str, g3: &str) -> Result<(pseudodiff::Scalar, pseudodiff::Scalar)> {
    Ok((parse_scalar(g2)?, parse_scalar(g3)?))
}

fn krichever(c: &KricheverCmd, w: &Window) -> (&'static str, Outcome) {
    match c {
        KricheverCmd::Elliptic { curve, a, b } => ("krichever.elliptic", {
            (|| {
                let (g2, g3) = curve_scalars(&curve.g2, &curve.g3)?;
                let data = CurveData::new(g2, g3, parse_scalar(a)?, parse_scalar(b)?)?;
                let e = elliptic_plane(&data, w.depth as usize)?;
                let pair = conjugated_pair(&e)?;
                let (l2, l3) = (
                    FracOp::from_differential(pair.l2.clone())?,
                    FracOp::from_differential(pair.l3.clone())?,
                );
                let (relation, report) = bc_relation(&l2, &l3, w.nmax as usize)?;
                let rank_one = rank1_verify(&e.plane, &e.p)?;
                let section = section_check(&e.plane, &section_operator(&e));
                let status = if rank_one {
                    Status::Ok
                } else {
                    Status::Unknown
                };
                Ok((
                    status,
                    json!({
                        "curve": to_value(&data),
                        "plane": to_value(&e.plane),
                        "l2": pair.l2.to_string(),
                        "l3": pair.l3.to_string(),
                        "relation": relation.to_string(),
                        "bc_report": to_value(&report),
                        "rank1": rank_one,
                        "section": section.verdict.to_string(),
                    }),
                ))
            })()
        }),
        KricheverCmd::Weierstrass { curve, terms } => ("krichever.weierstrass", {
            (|| {
                let (g2, g3) = curve_scalars(&curve.g2, &curve.g3)?;
                let ws = weierstrass_p(&g2, &g3, *terms);
                Ok((
                    Status::Ok,
                    json!({
                        "p": ws.p.to_string(),
                        "dp": ws.dp.to_string(),
                        "coeffs": to_value(&ws)["coeffs"],
                        "checked_through": ws.checked_through,
                    }),
                ))
            })()
        }),
    }
}

fn selftest(only: Option<u64>) -> Outcome {
    let results = match only {
        Some(id) => acceptance::run(id as usize).into_iter().collect(),
        None => acceptance::run_all(),
    };
    let lines: Vec<String> = results
        .iter()
        .map(|r| {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            format!(
                "{mark} [{}] {} ({:.2}s): {}",
                r.id, r.name, r.seconds, r.detail
            )
        })
        .collect();
    let passed = results.iter().filter(|r| r.passed).count();
    let status = if passed == results.len() {
        Status::Ok
    } else {
        Status::Error
    };
    Ok((
        status,
        json!({ "passed": passed, "total": results.len(), "criteria": lines, "results": to_value(&results) }),
    ))
}
