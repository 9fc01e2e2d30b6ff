//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed. The process fails when a
//! criterion fails that is not in [`KNOWN_RED`], or when a criterion in it passes.

use std::process::ExitCode;
use std::time::Instant;

use quadrature::double_exponential::integrate;
use welding_core::algebra::{enumerate_partitions, inner_product, monomial_basis, Partition};
use welding_core::exact::rational::{int, rat};
use welding_core::exact::{Coeff, Family, GaussianRational, Gen, Poly};
use welding_core::family::{family_area, family_p_check, inversion_check, FamilyPoint};
use welding_core::moments::{solve_system, MomentConfig, MomentEngine};
use welding_core::numerics::{
    cardy_exponent, cardy_f, diag_laplace, ode_residual, ConjectureParams, Hp,
};
use welding_core::virasoro::checks::{
    bracket_sweep, verify_diagonal_lemma, verify_diagonal_lemma_b,
};
use welding_core::virasoro::residues::p_leading_coeff;
use welding_core::virasoro::{build_level_operators, compute_b, compute_p, r1t_kernel, FamilyOps};

/// Criteria that fail as stated; each has an analysis in the project notes.
/// 7: part (b) of the diagonal lemma does not hold at (m, n) = (1, 0).
const KNOWN_RED: &[u32] = &[7];

const LAPLACE_TOL: f64 = 1e-8;
const NORMALIZATION_TOL: f64 = 1e-12;
const ODE_TOL: f64 = 1e-6;
const AREA_TOL: f64 = 1e-8;
const CARDY_SLOPE_TOL: f64 = 1e-3;
const CARDY_EXPONENT_TOL: f64 = 1e-6;

type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn core<T>(r: welding_core::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn part(s: &str) -> Partition {
    s.parse().unwrap()
}

/// Partition numbers from the generating function prod 1/(1 - x^k), expanded term by term.
fn partition_numbers(n: usize) -> Vec<usize> {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for k in 1..=n {
        for m in k..=n {
            p[m] += p[m - k];
        }
    }
    p
}

fn engine(level: u32) -> Result<MomentEngine, String> {
    let mut e = core(MomentEngine::new(MomentConfig::default()))?;
    core(e.solve_through(level))?;
    Ok(e)
}

fn c1_exact_moments() -> Check {
    let start = Instant::now();
    let e = engine(6)?;
    for n in 1..=6u32 {
        let p = Partition::new(vec![n]);
        let got = core(e.moment(&p, &p))?;
        ensure(got == rat(1, n as i64 + 1), || {
            format!("E(u{n} ubar{n}) = {got}")
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1} s"))
}

fn c2_level_two() -> Check {
    let e = engine(2)?;
    for (p, q, v) in [
        ("2", "2", rat(1, 3)),
        ("2", "1+1", rat(1, 3)),
        ("1+1", "2", rat(1, 3)),
        ("1+1", "1+1", rat(17, 42)),
    ] {
        let got = core(e.moment(&part(p), &part(q)))?;
        ensure(got == v, || format!("{p}|{q} = {got}, expected {v}"))?;
    }
    Ok(())
}

fn c3_partition_sweep() -> Check {
    let e = engine(5)?;
    for n in 1..=5u32 {
        let single = Partition::new(vec![n]);
        for p in enumerate_partitions(n) {
            let got = core(e.moment(&p, &single))?;
            ensure(got == rat(1, n as i64 + 1), || {
                format!("E(u^[{p}] ubar{n}) = {got}")
            })?;
        }
    }
    Ok(())
}

fn c4_p_polynomials() -> Check {
    let u = |k| Poly::gen(Gen::u(k));
    let expected = u(1).mul(&u(1)).scale(&int(7)).sub(&u(2).scale(&int(4)));
    let p2 = core(compute_p(Family::U, 2))?;
    ensure(p2 == expected, || format!("P_2 = {p2}"))?;
    for n in 1..=8u32 {
        let c = core(p_leading_coeff(Family::U, n))?;
        ensure(c == int(-2 * n as i64), || {
            format!("u{n} coefficient of P_{n} is {c}")
        })?;
    }
    for m in -4..=4 {
        for n in 1..=6 {
            let b = core(compute_b(Family::U, m, n))?;
            ensure(b.agree(), || {
                format!("B_{m}({n}): {} vs {}", b.z_route, b.u_route)
            })?;
        }
    }
    Ok(())
}

fn c5_brackets() -> Check {
    let r = core(bracket_sweep(3, 4))?;
    ensure(r.passed(), || {
        format!(
            "{} of {} brackets fail, first {:?}",
            r.failures.len(),
            r.checked,
            r.failures.first()
        )
    })
}

fn c6_level_operators() -> Check {
    let start = Instant::now();
    let p = partition_numbers(6);
    for n in 2..=6u32 {
        let k = n as usize;
        let ops = core(build_level_operators(n))?;
        let r2 = ops.r2.as_ref().ok_or("missing R2")?;
        ensure(ops.r1.rank() == p[k - 1], || {
            format!("n={n}: rank R1 = {}", ops.r1.rank())
        })?;
        ensure(r2.rank() == p[k - 2], || {
            format!("n={n}: rank R2 = {}", r2.rank())
        })?;
        let ker = ops.r1t.kernel().len();
        ensure(ker == p[k] - p[k - 1], || {
            format!("n={n}: dim ker R1^t = {ker}")
        })?;
        let both = core(ops.r1.hconcat(r2))?.rank();
        ensure(both == p[k], || format!("n={n}: rank [R1|R2] = {both}"))?;
    }
    let k2: Vec<String> = core(r1t_kernel(2))?.iter().map(|q| q.to_string()).collect();
    ensure(k2 == ["u1^2"], || format!("kernel at 2: {k2:?}"))?;
    let k3: Vec<String> = core(r1t_kernel(3))?.iter().map(|q| q.to_string()).collect();
    ensure(k3 == ["u1^3 + 2*u1*u2"], || format!("kernel at 3: {k3:?}"))?;
    // <R1 x, y> = <x, R1^t y> straight from the operator formulas.
    for n in 1..=6u32 {
        let ops = core(FamilyOps::new(Family::UBar, n))?;
        for x in monomial_basis(n - 1, Family::UBar) {
            let x = Poly::term(x, int(1));
            let r1x = core(ops.r1(&x))?;
            for y in monomial_basis(n, Family::UBar) {
                let y = Poly::term(y, int(1));
                let lhs = inner_product(&r1x, &y);
                let rhs = inner_product(&x, &core(ops.r1t(&y))?);
                ensure(lhs == rhs, || {
                    format!("adjoint at level {n}: <R1 {x}, {y}> = {lhs} vs {rhs}")
                })?;
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 30.0, || format!("took {secs:.1} s"))
}

fn c7_diagonal_lemma() -> Check {
    let mut failures = Vec::new();
    for n in 1..=3 {
        let (a, b) = core(verify_diagonal_lemma(n))?;
        if !(a.is_zero() && b.is_zero()) {
            failures.push(format!("(a) n={n}"));
        }
    }
    for (m, n) in [(1, 0), (2, 1), (3, 1)] {
        let d = core(verify_diagonal_lemma_b(m, n))?;
        if !d.is_zero() {
            failures.push(format!("(b) (m,n)=({m},{n}) defect {d}"));
        }
    }
    ensure(failures.is_empty(), || failures.join("; "))
}

fn c8_consistency() -> Check {
    let mut e = core(MomentEngine::new(MomentConfig::default()))?;
    for n in 1..=6 {
        let sys = core(e.assemble_level(n))?;
        let a = core(solve_system(&sys.shuffled(3)))?;
        let b = core(solve_system(&sys.shuffled(77)))?;
        ensure(a.digest() == b.digest(), || {
            format!("level {n}: shuffled runs differ")
        })?;
        let t = core(e.solve_level(n))?;
        ensure(t.is_symmetric(), || {
            format!("level {n}: table not symmetric")
        })?;
        ensure(t.digest() == a.digest(), || {
            format!("level {n}: reordered solution differs")
        })?;
    }
    Ok(())
}

fn c9_family() -> Check {
    let g = |a: i64, b: i64, c: i64, d: i64| GaussianRational::new(rat(a, b), rat(c, d));
    let ws = [
        g(1, 4, 0, 1),
        g(0, 1, -1, 4),
        g(3, 20, 1, 5),
        g(1, 2, 0, 1),
        g(-3, 10, 2, 5),
        g(0, 1, 1, 2),
    ];
    for n in 1..=3u32 {
        for w in &ws {
            let pt = core(FamilyPoint::new(n, w.clone()))?;
            let a = core(family_area(&pt, 200))?.value.to_f64();
            let modulus2 = welding_core::exact::rational::to_f64(&w.norm_sqr());
            let closed = (1.0 - modulus2).powf(1.0 / n as f64);
            ensure((a - closed).abs() < AREA_TOL, || {
                format!("area N={n} w={w}: {a} vs {closed}")
            })?;
            let inv = core(inversion_check(&pt, 50))?;
            ensure(inv.pass(), || {
                format!("inversion N={n} w={w}: {:?}", inv.first_mismatch)
            })?;
        }
    }
    for n in 1..=4u32 {
        for w in [g(1, 3, 0, 1), g(1, 5, -2, 7), g(0, 1, 1, 2)] {
            let pt = core(FamilyPoint::new(n, w.clone()))?;
            for k in 1..=12 {
                let c = core(family_p_check(&pt, k))?;
                // The pattern (m+1) w^m, recomputed here.
                let expected = if k % n == 0 {
                    let m = (k / n) as i64;
                    w.powi(m).unwrap().scale(&int(m + 1))
                } else {
                    GaussianRational::nil()
                };
                ensure(c.pass() && c.p_u == expected, || {
                    format!("P_{k} at N={n} w={w}: {}", c.p_u)
                })?;
            }
        }
    }
    Ok(())
}

fn c10_special_functions() -> Check {
    for &lambda in &[0.1, 1.0, 10.0] {
        for &beta in &[1.0f64, 5.0] {
            for &c in &[0.0f64, 0.5] {
                let alpha = 1.0 - c;
                // E exp(-lambda X) for the inverse-gamma density, with y = e^s.
                let f = |s: f64| {
                    (-lambda * s.exp() - beta / s.exp() - alpha * s).exp() * beta.powf(alpha)
                };
                let gamma_alpha = if c == 0.0 {
                    1.0
                } else {
                    std::f64::consts::PI.sqrt()
                };
                let oracle = integrate(f, -12.0, 12.0, 1e-14).integral / gamma_alpha;
                let p = core(ConjectureParams::from_f64(beta, c))?;
                let got = core(diag_laplace(&Hp::from_f64(lambda), &p))?.to_f64();
                ensure((got - oracle).abs() <= LAPLACE_TOL, || {
                    format!("laplace lambda={lambda} beta={beta} c={c}: {got} vs {oracle}")
                })?;
            }
        }
    }
    let p = core(ConjectureParams::from_f64(1.0, 0.0))?;
    let one = core(diag_laplace(&Hp::zero(), &p))?.to_f64();
    ensure((one - 1.0).abs() <= NORMALIZATION_TOL, || {
        format!("laplace(0) = {one}")
    })?;
    let res = |h: f64| core(ode_residual(&Hp::one(), &p, &Hp::from_f64(h))).map(|e| e.to_f64());
    let r = res(1e-4)?;
    ensure(r.abs() < ODE_TOL, || format!("ODE residual {r:e}"))?;
    let (r1, r2, r3) = (res(1e-2)?, res(5e-3)?, res(2.5e-3)?);
    for ratio in [r1 / r2, r2 / r3] {
        ensure((3.8..4.2).contains(&ratio), || {
            format!("h-halving ratio {ratio}")
        })?;
    }
    Ok(())
}

fn c11_cardy() -> Check {
    let start = Instant::now();
    let slope =
        core(cardy_f(&Hp::from_i64(51)))?.to_f64() - core(cardy_f(&Hp::from_i64(50)))?.to_f64();
    ensure((slope - 1.0).abs() < CARDY_SLOPE_TOL, || {
        format!("F(51) - F(50) = {slope}")
    })?;
    let e = core(cardy_exponent(&Hp::from_f64(0.1)))?.to_f64();
    let target = 5.0 * std::f64::consts::PI.powi(2) / 4.0;
    ensure((e - target).abs() < CARDY_EXPONENT_TOL, || {
        format!("exponent {e} vs {target}")
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 5.0, || format!("took {secs:.2} s"))
}

type Criterion = (u32, &'static str, fn() -> Check);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        (
            1,
            "exact moments E(u_n ubar_n) = 1/(n+1), n <= 6",
            c1_exact_moments,
        ),
        (2, "level-two golden table", c2_level_two),
        (
            3,
            "E(u^P ubar_n) = 1/(n+1) for all P |- n, n <= 5",
            c3_partition_sweep,
        ),
        (4, "P polynomials and residue routes", c4_p_polynomials),
        (5, "bracket relations", c5_brackets),
        (
            6,
            "level-operator ranks, kernels, adjoints",
            c6_level_operators,
        ),
        (7, "diagonal lemma", c7_diagonal_lemma),
        (8, "moment-system consistency", c8_consistency),
        (9, "welding family", c9_family),
        (10, "special functions", c10_special_functions),
        (11, "Cardy formula", c11_cardy),
    ];
    let mut unexpected = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        let known = KNOWN_RED.contains(&id);
        match &outcome {
            Ok(()) => println!("PASS criterion {id:>2}: {name} ({secs:.2} s)"),
            Err(why) => println!("FAIL criterion {id:>2}: {name} ({secs:.2} s): {why}"),
        }
        if outcome.is_ok() == known {
            unexpected += 1;
            let what = if known {
                "passes but is listed as known red"
            } else {
                "fails"
            };
            println!("  unexpected: criterion {id} {what}");
        }
    }
    let red = KNOWN_RED
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ");
    println!("known red criteria: {red}; unexpected outcomes: {unexpected}");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
