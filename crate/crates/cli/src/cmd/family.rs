use serde_json::{json, Value};
use welding_core::exact::rational::fmt_rational;
use welding_core::exact::GaussianRational;
use welding_core::family::{
    family_a_closed, family_area, family_p_check, family_series, inversion_check, FamilyPoint,
    P_CHECK_MAX,
};
use welding_core::{Error, Result};

use crate::args::FamilyArgs;
use crate::output::{verdict, Artifact, Style};

fn strings(v: &[GaussianRational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

pub fn run(args: &FamilyArgs, style: Style) -> Result<Artifact> {
    let w: GaussianRational = args.w.parse()?;
    let pt = FamilyPoint::new(args.n, w)?;
    if args.check_pn > P_CHECK_MAX {
        return Err(Error::InvalidInput(format!(
            "--check-pn is limited to {P_CHECK_MAX}"
        )));
    }
    let order = args.order.max(args.n);
    let shown = args.show_terms.min(order) as usize;

    let series = family_series(&pt, order.max(shown as u32))?;
    let closed = family_a_closed(&pt);
    let area = family_area(&pt, order)?;
    let a_closed = match &closed.exact {
        Some(q) => fmt_rational(q),
        None => style.float(&closed.value.value),
    };
    let gap = (&area.value - &closed.value.value).abs();

    let checks = (1..=args.check_pn)
        .map(|n| family_p_check(&pt, n))
        .collect::<Result<Vec<_>>>()?;
    let inv = inversion_check(&pt, args.inversion_order)?;

    let checks_json: Vec<Value> = checks
        .iter()
        .map(|c| {
            json!({
                "n": c.n,
                "p_u": c.p_u.to_string(),
                "p_l": c.p_l.to_string(),
                "expected_u": c.expected_u.to_string(),
                "expected_l": c.expected_l.to_string(),
                "relation": c.relation,
                "literal_relation": c.literal_relation,
                "pass": c.pass(),
            })
        })
        .collect();
    let json = json!({
        "N": args.n,
        "w": pt.w().to_string(),
        "a_closed": a_closed,
        "a_closed_exact": closed.exact.is_some(),
        "a_closed_error_bound": style.bound(&closed.value.error_bound),
        "a_truncated": style.float(&area.value),
        "order": order,
        "tail_bound": style.bound(&area.tail_bound),
        "gap": style.bound(&gap),
        "series": {
            "u": strings(&series.u[..shown]),
            "l": strings(&series.l[..shown]),
            "b": strings(&series.b[..shown]),
        },
        "p_checks": checks_json,
        "inversion": {
            "order": inv.order,
            "pass": inv.pass(),
            "first_mismatch": inv.first_mismatch,
            "conj_l": inv.conj_l,
            "same_a": inv.same_a,
        },
    });

    let mut rows = vec![
        vec![
            "a_closed".into(),
            "".into(),
            a_closed.clone(),
            style.bound(&closed.value.error_bound),
        ],
        vec![
            "a_truncated".into(),
            order.to_string(),
            style.float(&area.value),
            style.bound(&area.tail_bound),
        ],
    ];
    for c in &checks {
        rows.push(vec![
            "p_u".into(),
            c.n.to_string(),
            c.p_u.to_string(),
            verdict(c.pass()).into(),
        ]);
    }
    rows.push(vec![
        "inversion".into(),
        inv.order.to_string(),
        "".into(),
        verdict(inv.pass()).into(),
    ]);

    let mut text = format!(
        "{pt}\na_closed = {a_closed}\na_truncated = {} (order {order}, tail bound {})\n",
        style.float(&area.value),
        style.bound(&area.tail_bound)
    );
    text.push_str(&format!(
        "u = [{}]\n",
        strings(&series.u[..shown]).join(", ")
    ));
    text.push_str(&format!(
        "b = [{}]\n",
        strings(&series.b[..shown]).join(", ")
    ));
    for c in &checks {
        text.push_str(&format!(
            "P_{}(u) = {}  P_{}(l) = {}  {}\n",
            c.n,
            c.p_u,
            c.n,
            c.p_l,
            verdict(c.pass())
        ));
    }
    text.push_str(&format!(
        "inversion through order {}: {}\n",
        inv.order,
        verdict(inv.pass())
    ));

    let mut a = Artifact::new(json, &["item", "index", "value", "verdict"], rows, text);
    for c in checks.iter().filter(|c| !c.pass()) {
        a.failures.push(format!("P_{} pattern fails", c.n));
    }
    a.fail_if(!inv.pass(), "inversion check fails");
    Ok(a)
}
