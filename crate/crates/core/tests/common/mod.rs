//! Property checks shared by the `properties` and `acceptance` targets.

use std::f64::consts::TAU;

use disc_ergodics::dynamics::{classify, pseudo_hyperbolic};
use disc_ergodics::ergodicity::{cesaro_apply, TestFunction};
use disc_ergodics::symbols::{make_automorphism, AutomorphismKind, Blaschke, Moebius, Polynomial};
use disc_ergodics::weighted::{lacunary_exponents, lacunary_sum, make_weight_v_alpha, Angle, Weight, WeightedError};
use disc_ergodics::{Complex, Symbol, SymbolClass};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

pub type Property = fn(u32) -> Result<(), String>;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("derivative matches finite difference", derivative_vs_finite_difference),
    (
        "Schwarz-Pick contraction and Schwarz monotonicity",
        schwarz_monotonicity,
    ),
    ("classify is invariant under conjugation", conjugation_invariance),
    ("Cesaro traces are power bounded", cesaro_power_bounded),
    (
        "v_alpha weight is continuous, non-increasing and small at the circle",
        weight_monotonicity,
    ),
    ("lacunary exponents satisfy their inequality", lacunary_inequality),
];

fn run<S, F>(cases: u32, strategy: S, test: F) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
    F: Fn(S::Value) -> Result<(), TestCaseError>,
{
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new(config).run(&strategy, test).map_err(|e| e.to_string())
}

fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

fn point_in_disc(radius: f64) -> impl Strategy<Value = Complex> {
    (0.0..radius, 0.0..TAU).prop_map(|(r, t)| Complex::from_polar(r, t))
}

/// Self-maps covering every representation and dynamical class.
fn symbol() -> impl Strategy<Value = Symbol> {
    prop_oneof![
        (0.05..0.95f64).prop_map(|mu| make_automorphism(AutomorphismKind::Hyperbolic { mu }).unwrap().into()),
        (0.2..3.0f64).prop_map(|b| make_automorphism(AutomorphismKind::Parabolic { translation: b })
            .unwrap()
            .into()),
        (0.0..TAU, point_in_disc(0.8)).prop_map(|(angle, p)| make_automorphism(AutomorphismKind::Elliptic {
            angle,
            fixed_point: p
        })
        .unwrap()
        .into()),
        (0.05..0.95f64, point_in_disc(0.9)).prop_map(|(r, p)| {
            // z ↦ r z + (1 − r) p with |p| < 1 fixes p
            Moebius::new(c(r, 0.0), p * (1.0 - r), c(0.0, 0.0), c(1.0, 0.0))
                .unwrap()
                .into()
        }),
        (0.0..TAU, prop::collection::vec(point_in_disc(0.9), 1..4))
            .prop_map(|(rot, zeros)| Blaschke::new(rot, zeros).unwrap().into()),
        prop::collection::vec(point_in_disc(1.0), 1..5).prop_map(|raw| {
            // scale so that Σ|a_n| ≤ 1, which certifies the self-map property
            let total: f64 = raw.iter().map(|a| a.norm()).sum::<f64>().max(1.0);
            Polynomial::new(raw.iter().map(|a| a / total).collect()).unwrap().into()
        }),
    ]
}

pub fn derivative_vs_finite_difference(cases: u32) -> Result<(), String> {
    run(cases, (symbol(), point_in_disc(0.9)), |(s, z)| {
        let h = 1e-5;
        let fd = (s.apply(z + h) - s.apply(z - h)) / (2.0 * h);
        let d = s.derivative_at(z);
        let scale = 1.0 + d.norm();
        prop_assert!(
            (fd - d).norm() <= 1e-6 * scale,
            "derivative {d} vs finite difference {fd}"
        );
        Ok(())
    })
}

pub fn schwarz_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (
        symbol(),
        point_in_disc(0.95),
        point_in_disc(0.95),
        0.0..TAU,
        prop::collection::vec(point_in_disc(0.9), 0..3),
    );
    run(cases, strategy, |(s, z, w, rot, zeros)| {
        // Schwarz–Pick: self-maps do not increase the pseudo-hyperbolic distance
        let before = pseudo_hyperbolic(z, w);
        let after = pseudo_hyperbolic(s.apply(z), s.apply(w));
        prop_assert!(after <= before + 1e-12, "{after} > {before}");

        // maps fixing 0 pull every orbit monotonically toward 0
        let mut all = vec![c(0.0, 0.0)];
        all.extend(zeros);
        let b: Symbol = Blaschke::new(rot, all).unwrap().into();
        let mut u = z;
        for _ in 0..20 {
            let next = b.apply(u);
            prop_assert!(next.norm() <= u.norm() + 1e-15);
            u = next;
        }
        Ok(())
    })
}

pub fn conjugation_invariance(cases: u32) -> Result<(), String> {
    let base = prop_oneof![
        (0.05..0.95f64).prop_map(|mu| make_automorphism(AutomorphismKind::Hyperbolic { mu }).unwrap()),
        (0.2..3.0f64).prop_map(|b| make_automorphism(AutomorphismKind::Parabolic { translation: b }).unwrap()),
        (0.1..0.9f64).prop_map(|r| Moebius::new(c(r, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap()),
        (0.1..0.9f64).prop_map(|t| Moebius::new(c(1.0 - t, 0.0), c(t, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap()),
    ];
    run(cases, (base, point_in_disc(0.7)), |(m, p)| {
        let psi = Moebius::involution(p);
        let conj = m.conjugate_by(&psi);
        let conj = Moebius::new(conj.a, conj.b, conj.c, conj.d)
            .map_err(|e| TestCaseError::fail(format!("conjugate rejected: {e}")))?;
        let a = classify(&m.into()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let b = classify(&conj.into()).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(a.name(), b.name());
        // the Denjoy–Wolff point moves with the conjugacy: ψ⁻¹(z0)
        let z0 = a.dw_point().unwrap();
        let moved = psi.inverse().eval(z0);
        prop_assert!(
            (b.dw_point().unwrap() - moved).norm() <= 1e-7,
            "{:?} vs {moved}",
            b.dw_point()
        );
        match (a, b) {
            (
                SymbolClass::InteriorDw {
                    multiplier_modulus: x, ..
                },
                SymbolClass::InteriorDw {
                    multiplier_modulus: y, ..
                },
            ) => prop_assert!((x - y).abs() <= 1e-9),
            (
                SymbolClass::HyperbolicDw {
                    angular_derivative: x, ..
                },
                SymbolClass::HyperbolicDw {
                    angular_derivative: y, ..
                },
            ) => prop_assert!((x - y).abs() <= 1e-7),
            _ => {}
        }
        Ok(())
    })
}

pub fn cesaro_power_bounded(cases: u32) -> Result<(), String> {
    run(
        cases,
        (symbol(), point_in_disc(1.0), 1u64..8, 1usize..400),
        |(s, z, j, n)| {
            let f = TestFunction::Monomial { j };
            let trace = cesaro_apply(&s, &f, z, n).map_err(|e| TestCaseError::fail(e.to_string()))?;
            // ‖C_φ‖ ≤ 1 on the disc algebra, so every mean of z^j stays in the disc
            for m in &trace.partial_means {
                prop_assert!(m.norm() <= 1.0 + 1e-12, "{m}");
            }
            Ok(())
        },
    )
}

pub fn weight_monotonicity(cases: u32) -> Result<(), String> {
    let angle = prop_oneof![Just(Angle::golden()), Just(Angle::sqrt2_minus_1())];
    // with finitely many terms v(1⁻) = (Σ r0^{n_k} / K)^α, so the decay bound
    // needs r0 small enough; r0 ≤ 0.3 suffices for both built-in angles
    run(
        cases,
        (angle, 0.3..0.95f64, 0.05..0.3f64, 20usize..=40),
        |(angle, alpha, r0, k)| {
            let seq = lacunary_exponents(&angle, 2.0, k, u64::MAX).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let w = make_weight_v_alpha(alpha, r0, &seq, k).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let at_r0 = w.eval(r0);
            prop_assert!((at_r0 - 1.0).abs() <= 1e-12);
            // right-hand branch evaluated at r0 itself
            let Weight::VAlpha { c, ref exponents, .. } = w else {
                unreachable!()
            };
            let right = c * lacunary_sum(exponents, r0).powf(-alpha);
            prop_assert!((right - at_r0).abs() <= 1e-12, "jump {} at r0", right - at_r0);
            let mut prev = f64::INFINITY;
            for i in 0..1000 {
                let v = w.eval(i as f64 / 1000.0);
                prop_assert!(v <= prev, "increase at r = {}", i as f64 / 1000.0);
                prev = v;
            }
            prop_assert!(w.eval(1.0 - 1e-6) < 0.1 * at_r0, "v(1 - 1e-6) = {}", w.eval(1.0 - 1e-6));
            Ok(())
        },
    )
}

fn brute_distance(theta: f64, n: u64) -> f64 {
    // direct evaluation of |1 − λ^n|, phase reduced in double-double style
    let x = n as f64 * theta;
    let err = (n as f64).mul_add(theta, -x);
    let frac = (x - x.round()) + err;
    (c(1.0, 0.0) - Complex::from_polar(1.0, TAU * frac)).norm()
}

pub fn lacunary_inequality(cases: u32) -> Result<(), String> {
    run(cases, (0.01..0.99f64, 1.5..4.0f64), |(theta, ratio)| {
        let angle = Angle::Turns { value: theta };
        let mut count = 1;
        let mut last = None;
        loop {
            match lacunary_exponents(&angle, ratio, count, 10_000) {
                Ok(seq) => {
                    last = Some(seq);
                    count += 1;
                }
                Err(WeightedError::RootOfUnity { .. }) => return Ok(()),
                Err(WeightedError::BudgetExceeded { .. }) => break,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
        }
        let Some(seq) = last else { return Ok(()) };
        let mut best = f64::INFINITY;
        let mut records = Vec::new();
        for n in 1..=*seq.exponents.last().unwrap() {
            let d = brute_distance(theta, n);
            if d < best {
                best = d;
                records.push(n);
            }
        }
        for (i, &n) in seq.exponents.iter().enumerate() {
            let k = i as i32 + 1;
            prop_assert!(n >= k as u64);
            prop_assert!(brute_distance(theta, n) <= ratio.powi(-k) * (1.0 + 1e-9));
            // oracle: every selected exponent is a running minimiser of |1 − λ^n|
            prop_assert!(records.contains(&n), "n_{k} = {n} is not a record minimiser");
        }
        Ok(())
    })
}
