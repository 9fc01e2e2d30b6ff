use serde_json::{json, Value};
use welding_core::exact::parse_rational;
use welding_core::numerics::{
    bessel_k, cardy_exponent, cardy_f, cardy_log_f, cumulative_int, diag_cdf, diag_laplace,
    ode_residual, sandwich_check, ConjectureParams, Estimate, Hp,
};
use welding_core::{Error, Result};

use crate::args::{CardyReport, DiagonalCmd, LawArgs};
use crate::output::{object, verdict, Artifact, Style};

fn hp(name: &str, s: &str) -> Result<Hp> {
    Hp::parse_decimal(s)
        .map_err(|_| Error::InvalidInput(format!("--{name}: cannot parse '{s}' as a number")))
}

fn law(args: &LawArgs) -> Result<ConjectureParams> {
    ConjectureParams::new(hp("beta", &args.beta)?, hp("c", &args.c)?)
}

/// A single estimate with the parameters that produced it.
fn scalar(style: Style, quantity: &str, params: &[(&str, &str)], e: &Estimate) -> Artifact {
    let p = object(
        params
            .iter()
            .map(|(k, v)| (k.to_string(), Value::String(v.to_string()))),
    );
    let value = style.float(&e.value);
    let bound = style.bound(&e.error_bound);
    let json =
        json!({ "quantity": quantity, "parameters": p, "value": value, "error_bound": bound });
    let rows = vec![vec![quantity.to_string(), value, bound]];
    Artifact::new(
        json,
        &["quantity", "value", "error_bound"],
        rows,
        style.estimate_text(e),
    )
}

pub fn run(cmd: &DiagonalCmd, style: Style) -> Result<Artifact> {
    match cmd {
        DiagonalCmd::Cdf { x, law: l } => {
            let e = diag_cdf(&hp("x", x)?, &law(l)?)?;
            Ok(scalar(
                style,
                "cdf",
                &[("x", x), ("beta", &l.beta), ("c", &l.c)],
                &e,
            ))
        }
        DiagonalCmd::Laplace { lambda, law: l } => {
            let e = diag_laplace(&hp("lambda", lambda)?, &law(l)?)?;
            Ok(scalar(
                style,
                "laplace",
                &[("lambda", lambda), ("beta", &l.beta), ("c", &l.c)],
                &e,
            ))
        }
        DiagonalCmd::Ode { lambda, h, law: l } => {
            let e = ode_residual(&hp("lambda", lambda)?, &law(l)?, &hp("h", h)?)?;
            let params = [
                ("lambda", lambda.as_str()),
                ("h", h),
                ("beta", &l.beta),
                ("c", &l.c),
            ];
            Ok(scalar(style, "ode_residual", &params, &e))
        }
        DiagonalCmd::Bessel { alpha, x } => {
            let e = bessel_k(&hp("alpha", alpha)?, &hp("x", x)?)?;
            Ok(scalar(style, "bessel_k", &[("alpha", alpha), ("x", x)], &e))
        }
        DiagonalCmd::Cumint { x, beta, mode } => {
            let e = cumulative_int(&hp("x", x)?, &hp("beta", beta)?, *mode)?;
            let mode = mode.to_string();
            Ok(scalar(
                style,
                "cumulative_int",
                &[("x", x), ("beta", beta), ("mode", &mode)],
                &e,
            ))
        }
        DiagonalCmd::Cardy {
            rho,
            small_rho,
            report,
        } => cardy(style, rho, *small_rho, *report),
        DiagonalCmd::Sandwich { beta, grid } => sandwich(style, beta, grid),
    }
}

fn cardy(style: Style, rho_text: &str, small_rho: bool, report: CardyReport) -> Result<Artifact> {
    let rho = hp("rho", rho_text)?;
    let (quantity, e) = match report {
        CardyReport::Value if small_rho => {
            let lf = cardy_log_f(&rho)?;
            let v = lf.value.exp();
            // An absolute bound b on log F leaves F known to within a factor exp(b).
            let bound = v.abs() * (lf.error_bound.exp() - Hp::one());
            (
                "cardy_f",
                Estimate {
                    value: v,
                    error_bound: bound,
                },
            )
        }
        CardyReport::Value => ("cardy_f", cardy_f(&rho)?),
        CardyReport::Log => ("cardy_log_f", cardy_log_f(&rho)?),
        CardyReport::Exponent => ("cardy_exponent", cardy_exponent(&rho)?),
    };
    let path = if small_rho || report != CardyReport::Value {
        "log"
    } else {
        "direct"
    };
    Ok(scalar(
        style,
        quantity,
        &[("rho", rho_text), ("path", path)],
        &e,
    ))
}

/// Parses `a:b:step` into the points `a, a + step, ...` not exceeding `b`, using exact arithmetic.
pub fn parse_grid(spec: &str) -> Result<Vec<Hp>> {
    let bad = || Error::InvalidInput(format!("grid must look like a:b:step, got '{spec}'"));
    let parts: Vec<&str> = spec.split(':').collect();
    let [a, b, step] = parts.as_slice() else {
        return Err(bad());
    };
    let (a, b, step) = (
        parse_rational(a)?,
        parse_rational(b)?,
        parse_rational(step)?,
    );
    if step <= num_traits::Zero::zero() || b < a {
        return Err(bad());
    }
    let mut out = Vec::new();
    let mut x = a;
    while x <= b {
        out.push(Hp::from_rational(&x));
        x += &step;
        if out.len() > 10_000 {
            return Err(Error::InvalidInput(
                "grid has more than 10000 points".into(),
            ));
        }
    }
    Ok(out)
}

fn sandwich(style: Style, beta_text: &str, grid_text: &str) -> Result<Artifact> {
    let beta = hp("beta", beta_text)?;
    let grid = parse_grid(grid_text)?;
    let r = sandwich_check(&beta, &grid)?;
    let rows_json: Vec<Value> = r
        .rows
        .iter()
        .map(|row| {
            json!({
                "rho": style.float(&row.rho),
                "lower": style.estimate(&row.lower),
                "middle": style.estimate(&row.middle),
                "upper": style.estimate(&row.upper),
                "lower_ok": row.lower_ok,
                "upper_ok": row.upper_ok,
            })
        })
        .collect();
    let json = json!({ "beta": beta_text, "grid": grid_text, "feasible": r.feasible(), "rows": rows_json });
    let rows = r
        .rows
        .iter()
        .map(|row| {
            vec![
                style.float(&row.rho),
                style.float(&row.lower.value),
                style.bound(&row.lower.error_bound),
                style.float(&row.middle.value),
                style.bound(&row.middle.error_bound),
                style.float(&row.upper.value),
                style.bound(&row.upper.error_bound),
                row.lower_ok.to_string(),
                row.upper_ok.to_string(),
            ]
        })
        .collect();
    let header = [
        "rho",
        "lower",
        "lower_error_bound",
        "middle",
        "middle_error_bound",
        "upper",
        "upper_error_bound",
        "lower_ok",
        "upper_ok",
    ];
    let mut text = format!(
        "beta = {beta_text}: {}\n",
        if r.feasible() {
            "feasible"
        } else {
            "ruled out"
        }
    );
    for row in &r.rows {
        text.push_str(&format!(
            "rho {}  F(rho) {}  I {}  F(log16+rho) {}  {} {}\n",
            style.float(&row.rho),
            style.float(&row.lower.value),
            style.float(&row.middle.value),
            style.float(&row.upper.value),
            verdict(row.lower_ok),
            verdict(row.upper_ok)
        ));
    }
    Ok(Artifact::new(json, &header, rows, text))
}
