//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the report is printed even when everything passes.

mod common;

use std::f64::consts::TAU;
use std::time::{Duration, Instant};

use disc_ergodics::dynamics::{boundary_periodic_points, classify, sup_norm_iterate};
use disc_ergodics::ergodicity::{
    boundary_gap_witness, cesaro_apply, cesaro_final, cesaro_orbit_mean, monomial_mean_turns, orbit_density,
    rotation_cesaro_limit, verdict, Decision, Space, TestFunction, VerdictBudgets,
};
use disc_ergodics::weighted::{
    counterexample_pair, default_probe_radii, h2_norm_sq, lacunary_exponents, make_weight_v_alpha, Angle, Weight,
};
use disc_ergodics::{gallery, Complex};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))
}

/// `angles` equally spaced points on each circle `|z| = r`.
fn polar_grid(radii: &[f64], angles: usize) -> Vec<Complex> {
    radii
        .iter()
        .flat_map(|&r| (0..angles).map(move |k| Complex::from_polar(r, TAU * k as f64 / angles as f64)))
        .collect()
}

fn poly_eval(coeffs: &[Complex], z: Complex) -> Complex {
    coeffs.iter().rev().fold(c(0.0, 0.0), |acc, &a| acc * z + a)
}

fn rotation_periodic_limit() -> Outcome {
    let start = Instant::now();
    let s = gallery::get("rot_i").map_err(|e| e.to_string())?;
    let coeffs = vec![c(1.0, 0.0); 5];
    let f = TestFunction::TaylorFn { coeffs: coeffs.clone() };
    let limit = rotation_cesaro_limit(4, &coeffs).map_err(|e| e.to_string())?;
    let points = polar_grid(&[0.25, 0.5, 0.75, 1.0], 16);
    ensure(points.len() == 64, || format!("{} grid points", points.len()))?;
    let mut worst = 0.0f64;
    for &z in &points {
        let trace = cesaro_apply(&s, &f, z, 4000).map_err(|e| e.to_string())?;
        worst = worst.max((trace.final_mean - poly_eval(&limit, z)).norm());
    }
    ensure(worst <= 1e-10, || format!("max error {worst:e}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("max error {worst:.1e}"))
}

fn rotation_monomial_norms() -> Outcome {
    let start = Instant::now();
    let theta = Angle::sqrt2_minus_1().value();
    let mut worst = 0.0f64;
    for j in 1..=5u64 {
        for n in [100u64, 1_000, 10_000] {
            // oracle: plain summation of λ^{jm} with the phase jmθ split into
            // its rounded product and exact rounding error
            let mut sum = c(0.0, 0.0);
            for m in 1..=n {
                let k = (j * m) as f64;
                let x = k * theta;
                let err = k.mul_add(theta, -x);
                sum += Complex::from_polar(1.0, TAU * ((x - x.floor()) + err));
            }
            let direct = (sum / n as f64).norm();
            let mm = monomial_mean_turns(theta, j, n).map_err(|e| e.to_string())?;
            let bound = mm.sup_norm_bound.ok_or("missing bound")?;
            worst = worst.max((direct - mm.sup_norm_exact).abs());
            ensure(direct <= bound, || format!("j={j} n={n}: {direct} above bound {bound}"))?;
        }
    }
    ensure(worst <= 1e-12, || format!("max deviation {worst:e}"))?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("max deviation {worst:.1e}"))
}

fn interior_dw_ume() -> Outcome {
    let s = gallery::get("half").map_err(|e| e.to_string())?;
    let mut worst = 0.0f64;
    for n in 1..=30 {
        let sup = sup_norm_iterate(&s, n, 512, 64).map_err(|e| e.to_string())?;
        worst = worst.max((sup - 0.5f64.powi(n as i32)).abs());
    }
    ensure(worst <= 1e-12, || format!("sup-norm error {worst:e}"))?;
    let v = verdict(&s, Space::Hinf, &VerdictBudgets::default());
    ensure(
        v.mean_ergodic == Decision::Yes && v.uniformly_mean_ergodic == Decision::Yes,
        || format!("verdict {:?}/{:?}", v.mean_ergodic, v.uniformly_mean_ergodic),
    )?;
    ensure(v.theorem_tag.as_deref() == Some("Thm 3.2"), || {
        format!("tag {:?}", v.theorem_tag)
    })?;
    Ok(format!("sup-norm error {worst:.1e}, H^inf yes/yes"))
}

fn boundary_obstruction() -> Outcome {
    let mut notes = Vec::new();
    for name in ["zsq", "quad_half"] {
        let s = gallery::get(name).map_err(|e| e.to_string())?;
        let points = boundary_periodic_points(&s, 1, 2048).map_err(|e| e.to_string())?;
        let one = points
            .iter()
            .find(|p| (p.point - 1.0).norm() <= 1e-8)
            .ok_or_else(|| format!("{name}: fixed point 1 not found"))?;
        ensure(one.residual <= 1e-10, || format!("{name}: residual {:e}", one.residual))?;
        let v = verdict(&s, Space::A, &VerdictBudgets::default());
        ensure(
            v.mean_ergodic == Decision::No && v.uniformly_mean_ergodic == Decision::No,
            || format!("{name}: verdict {:?}/{:?}", v.mean_ergodic, v.uniformly_mean_ergodic),
        )?;
        notes.push(format!("{name} residual {:.1e}", one.residual));
    }
    Ok(notes.join(", "))
}

fn boundary_dw_never_ume() -> Outcome {
    let start = Instant::now();
    let mut min_gap = f64::INFINITY;
    for name in ["hyp", "parab", "tangent"] {
        let s = gallery::get(name).map_err(|e| e.to_string())?;
        let z0 = classify(&s)
            .map_err(|e| e.to_string())?
            .dw_point()
            .ok_or_else(|| format!("{name}: no Denjoy-Wolff point"))?;
        for n in [3, 10, 100] {
            let w = boundary_gap_witness(&s, z0, n).map_err(|e| e.to_string())?;
            ensure(w.gap >= 0.5 - 1e-9, || format!("{name} n={n}: gap {}", w.gap))?;
            min_gap = min_gap.min(w.gap);
        }
    }
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!("min gap {min_gap:.6}"))
}

fn parabolic_vs_hyperbolic() -> Outcome {
    let start = Instant::now();
    let parab = gallery::get("parab").map_err(|e| e.to_string())?;
    let z0 = c(1.0, 0.0);
    let mut min_est = f64::INFINITY;
    for k in 0..32 {
        // half-step offsets keep every seed away from z0 = 1
        let z = Complex::from_polar(1.0, TAU * (k as f64 + 0.5) / 32.0);
        let d = orbit_density(&parab, z, z0, 0.1, 100_000).map_err(|e| e.to_string())?;
        min_est = min_est.min(d.estimate);
    }
    ensure(min_est >= 0.99, || format!("parabolic min estimate {min_est}"))?;
    let v = verdict(&parab, Space::A, &VerdictBudgets::default());
    ensure(
        v.mean_ergodic == Decision::Yes && v.uniformly_mean_ergodic == Decision::No,
        || format!("parabolic verdict {:?}/{:?}", v.mean_ergodic, v.uniformly_mean_ergodic),
    )?;

    let hyp = gallery::get("hyp").map_err(|e| e.to_string())?;
    let d = orbit_density(&hyp, c(-1.0, 0.0), z0, 0.1, 100_000).map_err(|e| e.to_string())?;
    ensure(d.estimate == 0.0, || format!("hyperbolic estimate {}", d.estimate))?;
    let v = verdict(&hyp, Space::A, &VerdictBudgets::default());
    ensure(v.mean_ergodic == Decision::No, || {
        format!("hyperbolic ME {:?}", v.mean_ergodic)
    })?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("parabolic min estimate {min_est:.4}, hyperbolic estimate 0"))
}

fn cesaro_denjoy_wolff() -> Outcome {
    let start = Instant::now();
    let seeds: Vec<Complex> = [0.1, 0.3, 0.5, 0.7, 0.9]
        .iter()
        .flat_map(|&r| (0..5).map(move |k| Complex::from_polar(r, TAU * (k as f64 + 0.25) / 5.0)))
        .collect();
    let mut worst = 0.0f64;
    let mut count = 0;
    for name in gallery::names() {
        let s = gallery::get(name).map_err(|e| e.to_string())?;
        let class = classify(&s).map_err(|e| e.to_string())?;
        let Some(z0) = class.dw_point() else { continue };
        count += 1;
        for &z in &seeds {
            let m = cesaro_orbit_mean(&s, z, 100_000).map_err(|e| e.to_string())?;
            let err = (m - z0).norm();
            ensure(err <= 0.05, || format!("{name} seed {z}: error {err}"))?;
            worst = worst.max(err);
        }
    }
    ensure(count == 6, || format!("{count} non-elliptic gallery symbols"))?;
    within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!("{count} symbols x 25 seeds, max error {worst:.1e}"))
}

fn lacunary_construction() -> Outcome {
    let start = Instant::now();
    let seq = lacunary_exponents(&Angle::golden(), 2.0, 12, u64::MAX).map_err(|e| e.to_string())?;
    let theta = Angle::golden().value();
    // brute force over n ≤ 10^4, extended up to the last exponent
    let top = (*seq.exponents.last().unwrap()).max(10_000);
    let mut dist = vec![f64::INFINITY; top as usize + 1];
    for n in 1..=top {
        let k = n as f64;
        let x = k * theta;
        let err = k.mul_add(theta, -x);
        let frac = (x - x.round()) + err;
        dist[n as usize] = 2.0 * (std::f64::consts::PI * frac.abs()).sin();
    }
    for (i, &n) in seq.exponents.iter().enumerate() {
        let k = i as i32 + 1;
        let threshold = 2f64.powi(-k);
        ensure(seq.distances[i] <= threshold, || {
            format!("n_{k} = {n}: stored distance above 2^-{k}")
        })?;
        ensure(dist[n as usize] <= threshold, || {
            format!("n_{k} = {n}: brute distance above 2^-{k}")
        })?;
        let below = dist[1..n as usize].iter().fold(f64::INFINITY, |a, &b| a.min(b));
        ensure(dist[n as usize] < below, || {
            format!("n_{k} = {n} is not a record minimiser")
        })?;
    }
    within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("exponents {:?}", seq.exponents))
}

fn weighted_counterexample() -> Outcome {
    let start = Instant::now();
    let seq = lacunary_exponents(&Angle::golden(), 2.0, 30, u64::MAX).map_err(|e| e.to_string())?;
    let w = make_weight_v_alpha(0.5, 0.5, &seq, 30).map_err(|e| e.to_string())?;
    let Weight::VAlpha { c: weight_c, .. } = w else {
        unreachable!()
    };
    let pair = counterexample_pair(&seq, 30, Some(&w), &default_probe_radii()).map_err(|e| e.to_string())?;
    let probes = &pair.report.probes;
    ensure(probes.len() == 5, || format!("{} probes", probes.len()))?;
    for p in probes.windows(2) {
        ensure(p[1].v_abs_g > p[0].v_abs_g, || {
            format!("v|g| not increasing at r = {}", p[1].radius)
        })?;
    }
    let (first, last) = (probes[0].v_abs_g, probes[4].v_abs_g);
    ensure(last > 3.0 * first, || format!("v|g| grew from {first} to {last} only"))?;
    let bound = weight_c * pair.report.certified_bound;
    for p in probes {
        ensure(p.v_abs_f <= bound, || {
            format!("v|f| = {} above C/(R-1) = {bound} at r = {}", p.v_abs_f, p.radius)
        })?;
    }
    ensure(probes[4].v_abs_f < probes[3].v_abs_f, || {
        "v|f| not decreasing at the last two radii".into()
    })?;
    within(start.elapsed(), Duration::from_secs(1))?;
    Ok(format!(
        "v|g| {first:.3} -> {last:.3}, v|f| <= {bound:.3e}, last two {:.3e} > {:.3e}",
        probes[3].v_abs_f, probes[4].v_abs_f
    ))
}

fn aperiodic_rotation_dichotomy() -> Outcome {
    let s = gallery::get("rot_golden").map_err(|e| e.to_string())?;
    let points = polar_grid(&[0.5, 1.0], 8);
    ensure(points.len() == 16, || format!("{} grid points", points.len()))?;
    let mut worst = 0.0f64;
    for j in 1..=8 {
        let f = TestFunction::Monomial { j };
        for &z in &points {
            worst = worst.max(cesaro_final(&s, &f, z, 100_000).map_err(|e| e.to_string())?.norm());
        }
    }
    ensure(worst <= 2e-4, || format!("max |mean| {worst:e}"))?;
    let seq = lacunary_exponents(&Angle::golden(), 2.0, 40, u64::MAX).map_err(|e| e.to_string())?;
    for k in [10, 20, 40] {
        let pair = counterexample_pair(&seq, k, None, &[]).map_err(|e| e.to_string())?;
        let h2 = h2_norm_sq(&pair.g);
        ensure(h2.value == k as f64 && h2.divergent, || format!("K={k}: h2 {h2:?}"))?;
    }
    Ok(format!("max |mean| {worst:.1e}, h2(g) = 10, 20, 40"))
}

fn invariant_suites() -> Outcome {
    let start = Instant::now();
    const CASES: u32 = 128;
    for (name, property) in common::PROPERTIES {
        property(CASES).map_err(|e| format!("{name}: {e}"))?;
    }
    within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!("{} properties x {CASES} cases", common::PROPERTIES.len()))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("rotation periodic limit", rotation_periodic_limit),
        ("rotation monomial norms", rotation_monomial_norms),
        ("interior Denjoy-Wolff point, UME on H^inf", interior_dw_ume),
        ("boundary fixed point obstruction", boundary_obstruction),
        ("boundary Denjoy-Wolff point never UME", boundary_dw_never_ume),
        ("parabolic ME, hyperbolic not", parabolic_vs_hyperbolic),
        ("Cesaro means of orbits converge to z0", cesaro_denjoy_wolff),
        ("lacunary construction", lacunary_construction),
        ("weighted counterexample", weighted_counterexample),
        ("aperiodic rotation dichotomy", aperiodic_rotation_dichotomy),
        ("invariant suites", invariant_suites),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({elapsed:.2?}): {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
