//! Acceptance suite. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use nullframe::bsolver::{analytic_b_f0, invert_b_for_u, solve_b_numeric, BOdeProblem};
use nullframe::curve::{compute_b, CurveRep};
use nullframe::examples::{
    group_curve, group_exponential, lie_matrix_rep, make_lie_slant_vector, make_minkowski_curve, Branch, MatrixRep,
};
use nullframe::frenet::{
    build_frame, curvatures, general_frame_coefficients, geodesic_test, gram_residuals, left_invariant_cartan,
    unique_distinguished_frame, verify_cartan, BetaRule,
};
use nullframe::linalg::Mat3;
use nullframe::models::{classify, ManifoldModel};
use nullframe::scalar::{ratio, Rational};
use nullframe::structure::{check_structure, Basis, Tangent3};
use nullframe::ManifoldClass;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

const SEED: u64 = 0x5eed_f00d;

fn params() -> [(f64, f64); 3] {
    [(1.0, 0.0), (2.0, 0.3), (-1.0, 0.0)]
}

/// Null tangent in the flat model with `η = a` and `g(Ċ, φĊ) = b`.
fn flat_null_tangent(a: f64, b: f64) -> [f64; 3] {
    let s = (a.powi(4) + b * b).sqrt();
    let x2 = b.signum() * (b * b / (2.0 * (a * a + s))).sqrt();
    let x1 = (x2 * x2 + a * a).sqrt();
    [x1, x2, a]
}

/// Scaling-and-squaring Taylor exponential.
fn series_exp(a: &Mat3<f64>) -> Mat3<f64> {
    let norm = a.max_abs() * 3.0;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as i32 } else { 0 };
    let scaled = a.scale(0.5f64.powi(squarings));
    let mut term = Mat3::identity();
    let mut sum = Mat3::identity();
    for k in 1..30 {
        term = (term * scaled).scale(1.0 / k as f64);
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

fn structure_axioms() -> Outcome {
    let flat = ManifoldModel::<f64>::flat();
    let lie = ManifoldModel::lie_group(1.0, 1.0).map_err(|e| e.to_string())?;
    let rf = check_structure(&flat.structure, 1e-10);
    let rl = check_structure(&lie.structure, 1e-10);
    ensure!(rf.passes(), "flat axioms: max residual {:e}", rf.max_residual());
    ensure!(rl.passes(), "lie axioms: max residual {:e}", rl.max_residual());
    let cf = classify(&flat, 1e-8);
    let cl = classify(&lie, 1e-8);
    ensure!(cf.class == ManifoldClass::F0, "flat classified {}", cf.class);
    ensure!(cl.class == ManifoldClass::F1, "lie classified {}", cl.class);
    ensure!(cl.f1_residual < 1e-8, "F1 identity residual {:e}", cl.f1_residual);
    ensure!(cl.nabla_xi_residual < 1e-12, "nabla xi residual {:e}", cl.nabla_xi_residual);
    Ok(format!(
        "axiom residuals {:.1e}/{:.1e}; flat={} lie={}; F1 residual {:.1e}",
        rf.max_residual(),
        rl.max_residual(),
        cf.class,
        cl.class,
        cl.f1_residual
    ))
}

fn frame_property() -> Outcome {
    let m = ManifoldModel::<f64>::flat();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    let mut count = 0;
    while count < 1000 {
        let a: f64 = rng.gen_range(-3.0..3.0);
        if a.abs() < 0.1 {
            continue;
        }
        let b: f64 = rng.gen_range(-10.0..10.0);
        let beta: f64 = rng.gen_range(-5.0..5.0);
        let c = m.tangent(flat_null_tangent(a, b));
        let coeffs = general_frame_coefficients(a, b, beta).map_err(|e| e.to_string())?;
        let (n, w) = coeffs.vectors(&m, &c);
        let r = gram_residuals(&m, &c, &n, &w).max();
        ensure!(r < 1e-9, "a={a} b={b} beta={beta}: residual {r:e}");
        worst = worst.max(r);
        count += 1;
    }
    Ok(format!("1000 samples, worst Gram residual {worst:.1e}"))
}

fn distinguished_parameter() -> Outcome {
    let m = ManifoldModel::<f64>::flat();
    let c1 = make_minkowski_curve(Branch::C1, 1.0, 0.0, [0.0; 3]).map_err(|e| e.to_string())?;
    let curve = c1.curve_rep(-1.0, 1.0, 201).map_err(|e| e.to_string())?;
    let frame = unique_distinguished_frame(&curve, &m).map_err(|e| e.to_string())?;
    let curv = curvatures(&curve, &m, &frame).map_err(|e| e.to_string())?;
    let h_max = curv.max_abs_h();
    ensure!(h_max < 1e-6, "unique frame max |h| = {h_max:e}");
    let perturbed = build_frame(&curve, &m, BetaRule::Offset(0.1)).map_err(|e| e.to_string())?;
    let pc = curvatures(&curve, &m, &perturbed).map_err(|e| e.to_string())?;
    let hp = pc.max_abs_h();
    ensure!(hp > 1e-3, "perturbed frame max |h| = {hp:e}");
    Ok(format!("max |h| {h_max:.1e}; perturbed max |h| {hp:.3}"))
}

fn cartan_reproduction() -> Outcome {
    let m = ManifoldModel::<f64>::flat();
    let mut worst = [0.0f64; 5];
    for branch in [Branch::C1, Branch::C2] {
        for (a, u) in params() {
            let c = make_minkowski_curve(branch, a, u, [0.0; 3]).map_err(|e| e.to_string())?;
            let curve = c.curve_rep(-1.0, 1.0, 201).map_err(|e| e.to_string())?;
            let frame = unique_distinguished_frame(&curve, &m).map_err(|e| e.to_string())?;
            let curv = curvatures(&curve, &m, &frame).map_err(|e| e.to_string())?;
            let report = verify_cartan(&curve, &m, &frame, &curv, 1e-5).map_err(|e| e.to_string())?;
            let tau_err = curv
                .points
                .iter()
                .map(|p| (p.k2 + 1.0 / (2.0 * a * a)).abs())
                .fold(0.0, f64::max);
            let bprof = compute_b(&curve, &m).map_err(|e| e.to_string())?;
            let b_err = bprof
                .t
                .iter()
                .zip(&bprof.b)
                .map(|(t, b)| (b - analytic_b_f0(a, u, *t).unwrap()).abs())
                .fold(0.0, f64::max);
            let tag = format!("{branch} a={a} u={u}");
            ensure!(report.max_k1_error < 1e-6, "{tag}: |k1-1| = {:e}", report.max_k1_error);
            ensure!(report.max_h < 1e-6, "{tag}: |h| = {:e}", report.max_h);
            ensure!(tau_err < 1e-6, "{tag}: |tau + 1/(2a^2)| = {tau_err:e}");
            ensure!(
                report.max_equation_residual < 1e-5,
                "{tag}: Cartan residual {:e}",
                report.max_equation_residual
            );
            ensure!(b_err < 1e-10, "{tag}: b error {b_err:e}");
            for (w, v) in worst.iter_mut().zip([
                report.max_k1_error,
                report.max_h,
                tau_err,
                report.max_equation_residual,
                b_err,
            ]) {
                *w = w.max(v);
            }
        }
    }
    Ok(format!(
        "6 curves; worst |k1-1| {:.1e}, |h| {:.1e}, tau {:.1e}, equations {:.1e}, b {:.1e}",
        worst[0], worst[1], worst[2], worst[3], worst[4]
    ))
}

fn lie_exact() -> Outcome {
    let one = ratio(1, 1);
    let v = make_lie_slant_vector(one, ratio(2, 1)).map_err(|e| e.to_string())?;
    let li = |x: [Rational; 3]| Tangent3::new(x, Basis::LeftInvariant);
    ensure!(v.x == li([ratio(2, 1), ratio(15, 4), ratio(17, 4)]), "X = {:?}", v.x);
    ensure!(v.b() == ratio(-255, 8), "b = {}", v.b());
    let residual = v.defining_residual().map_err(|e| e.to_string())?;
    ensure!(residual == 0.0, "defining residual {residual:e}");
    let model = ManifoldModel::<Rational>::lie_group(one, one).map_err(|e| e.to_string())?;
    let res = left_invariant_cartan(&model, v.x).map_err(|e| e.to_string())?;
    ensure!(res.acceleration == v.w1, "nabla_X X = {:?}, W1 = {:?}", res.acceleration, v.w1);
    ensure!(res.frame.w == v.w1, "frame W differs from W1");
    ensure!(res.k1 == one, "k1 = {}", res.k1);
    ensure!(res.h == ratio(0, 1), "h = {}", res.h);
    ensure!(res.tau == ratio(-1, 8), "tau = {}", res.tau);
    ensure!(res.is_cartan(), "Cartan equations not exact");
    Ok(format!("b = {}, k1 = {}, h = {}, tau = {} (exact)", res.b, res.k1, res.h, res.tau))
}

fn matrix_representation() -> Outcome {
    let v = make_lie_slant_vector(ratio(1, 1), ratio(2, 1)).map_err(|e| e.to_string())?;
    let rep = lie_matrix_rep(&v);
    ensure!(rep == MatrixRep::displayed(v.c, v.a), "assembled matrices differ from closed forms");
    ensure!(rep.homomorphism_residual(v.c, v.c) == 0.0, "not a homomorphism");
    let vf = v.to_f64();
    let pi_x = lie_matrix_rep(&vf).pi_x;
    let mut worst_series = 0.0f64;
    for t in [-1.0, 0.5, 3.0] {
        let a = pi_x.scale(t);
        let g = group_exponential(&a).map_err(|e| e.to_string())?;
        let d = g.max_abs_diff(&series_exp(&a));
        ensure!(d < 1e-10, "t={t}: series gap {d:e}");
        worst_series = worst_series.max(d);
    }
    let mut rng = StdRng::seed_from_u64(SEED + 6);
    let mut worst_group = 0.0f64;
    for _ in 0..100 {
        let s: f64 = rng.gen_range(-2.0..2.0);
        let t: f64 = rng.gen_range(-2.0..2.0);
        let gs = group_curve(&vf, s).map_err(|e| e.to_string())?;
        let gt = group_curve(&vf, t).map_err(|e| e.to_string())?;
        let gst = group_curve(&vf, s + t).map_err(|e| e.to_string())?;
        let d = (gs * gt).max_abs_diff(&gst);
        ensure!(d < 1e-10, "s={s} t={t}: subgroup gap {d:e}");
        worst_group = worst_group.max(d);
    }
    Ok(format!("exact match; series gap {worst_series:.1e}; subgroup gap {worst_group:.1e}"))
}

fn b_ode() -> Outcome {
    let mut worst = 0.0f64;
    let mut worst_u = 0.0f64;
    for a in [1.0, 2.0, -1.0, 0.5] {
        let b0 = analytic_b_f0(a, 0.0, 0.0).map_err(|e| e.to_string())?;
        let p = BOdeProblem::with_constant_theta(a, 0.0, 0.0, b0, (0.0, 1.0), 1e-3).map_err(|e| e.to_string())?;
        let sol = solve_b_numeric(&p).map_err(|e| e.to_string())?;
        for (t, b) in sol.t.iter().zip(&sol.b) {
            let exact = analytic_b_f0(a, 0.0, *t).map_err(|e| e.to_string())?;
            let d = (b - exact).abs();
            ensure!(d < 1e-7, "a={a} t={t}: RK4 error {d:e}");
            worst = worst.max(d);
            let u = invert_b_for_u(a, *t, exact).map_err(|e| e.to_string())?;
            ensure!(u.abs() < 1e-10, "a={a} t={t}: u round trip {u:e}");
            worst_u = worst_u.max(u.abs());
        }
    }
    Ok(format!("worst RK4 error {worst:.1e}; worst u round trip {worst_u:.1e}"))
}

fn geodesic_criterion() -> Outcome {
    let m = ManifoldModel::<f64>::flat();
    let mut worst_k1 = 0.0f64;
    for (dir, a) in [([1.0, 0.0, 1.0], 1.0), ([1.25, 0.75, 1.0], 1.0), ([2.5, 1.5, -2.0], -2.0)] {
        let positions: Vec<[f64; 3]> = (0..21)
            .map(|i| {
                let t = -1.0 + 0.1 * i as f64;
                [1.0 + t * dir[0], -2.0 + t * dir[1], 0.5 + t * dir[2]]
            })
            .collect();
        let curve = CurveRep::sampled(positions, -1.0, 1.0).map_err(|e| e.to_string())?;
        let geo = geodesic_test(&curve, &m, 1e-8).map_err(|e| e.to_string())?;
        ensure!(geo.geodesic, "line {dir:?} not geodesic: residual {:e}", geo.max_residual);
        let frame = build_frame(&curve, &m, BetaRule::Distinguished).map_err(|e| e.to_string())?;
        let curv = curvatures(&curve, &m, &frame).map_err(|e| e.to_string())?;
        let k1 = curv.points.iter().map(|p| p.k1.abs()).fold(0.0, f64::max);
        ensure!(k1 < 1e-10, "line {dir:?}: k1 = {k1:e}");
        ensure!((frame.a - a).abs() < 1e-12, "line {dir:?}: slant {}", frame.a);
        worst_k1 = worst_k1.max(k1);
    }
    let c1 = make_minkowski_curve(Branch::C1, 1.0, 0.0, [0.0; 3]).map_err(|e| e.to_string())?;
    let curve = c1.curve_rep(-1.0, 1.0, 201).map_err(|e| e.to_string())?;
    let geo = geodesic_test(&curve, &m, 1e-8).map_err(|e| e.to_string())?;
    ensure!(!geo.geodesic, "C1 reported geodesic");
    let mut worst = 0.0f64;
    for (i, r) in geo.residuals.iter().enumerate() {
        let b = c1.b(curve.time(i));
        let expected = 2.0 * (1.0 + b * b).sqrt();
        let d = (r - expected).abs();
        ensure!(d < 1e-6, "C1 t={}: residual {r} vs {expected}", curve.time(i));
        worst = worst.max(d);
    }
    Ok(format!("lines geodesic with max k1 {worst_k1:.1e}; C1 residual gap {worst:.1e}"))
}

fn closed_form_curvatures() -> Outcome {
    let mut worst = 0.0f64;
    let mut curves = 0;
    let flat = ManifoldModel::<f64>::flat();
    for branch in [Branch::C1, Branch::C2] {
        for (a, u) in params() {
            let c = make_minkowski_curve(branch, a, u, [0.0; 3]).map_err(|e| e.to_string())?;
            let curve = c.curve_rep(-1.0, 1.0, 201).map_err(|e| e.to_string())?;
            for rule in [BetaRule::Distinguished, BetaRule::Offset(0.1), BetaRule::Constant(-0.7)] {
                let frame = build_frame(&curve, &flat, rule).map_err(|e| e.to_string())?;
                let curv = curvatures(&curve, &flat, &frame).map_err(|e| e.to_string())?;
                let gap = curv.max_closed_form_gap().ok_or("no closed form on flat model")?;
                ensure!(gap < 1e-6, "{branch} a={a} u={u} {rule:?}: gap {gap:e}");
                worst = worst.max(gap);
                curves += 1;
            }
        }
    }
    let lie = ManifoldModel::lie_group(1.0, 1.0).map_err(|e| e.to_string())?;
    let v = make_lie_slant_vector(1.0, 2.0).map_err(|e| e.to_string())?;
    let curve = CurveRep::left_invariant(v.x.components, -1.0, 1.0, 21).map_err(|e| e.to_string())?;
    for rule in [BetaRule::Distinguished, BetaRule::Offset(0.1)] {
        let frame = build_frame(&curve, &lie, rule).map_err(|e| e.to_string())?;
        let curv = curvatures(&curve, &lie, &frame).map_err(|e| e.to_string())?;
        let gap = curv.max_closed_form_gap().ok_or("no closed form on Lie model")?;
        ensure!(gap < 1e-6, "lie {rule:?}: gap {gap:e}");
        worst = worst.max(gap);
        curves += 1;
    }
    Ok(format!("{curves} curve/frame pairs, worst gap {worst:.1e}"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("structure axioms and classification", structure_axioms),
        ("frame coefficients satisfy Gram relations", frame_property),
        ("distinguished parameter and non-uniqueness", distinguished_parameter),
        ("Cartan frames of C1 and C2", cartan_reproduction),
        ("exact Lie group slant null vector", lie_exact),
        ("matrix representation and exponential", matrix_representation),
        ("b ODE against closed form", b_ode),
        ("geodesic criterion", geodesic_criterion),
        ("closed-form vs direct curvatures", closed_form_curvatures),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("criterion {} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
