mod common;

use algspec::fourier::{contrast_report, transform, transform_direct};
use algspec::instfreq::{curvature, phi_formula, phi_symbolic};
use algspec::opcalc::{from_signal, to_rational};
use algspec::pipeline::spectrum;
use algspec::ratfield::{poles, spectrum_of_rational, RatFunc};
use algspec::scalar::{int, ratio, to_f64, Real, Scalar};
use algspec::sigexpr::{diff_time, eval, parse, SignalExpr};
use algspec::weylode::catalog_equation;
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn real() -> impl Strategy<Value = Real> {
    (-20i64..=20, prop::sample::select(vec![1i64, 2, 3, 4, 5, 10])).prop_map(|(n, d)| ratio(n, d))
}

fn positive() -> impl Strategy<Value = Real> {
    (1i64..=30, prop::sample::select(vec![1i64, 2, 4, 5, 10])).prop_map(|(n, d)| ratio(n, d))
}

fn small_rate() -> impl Strategy<Value = Scalar> {
    (-10i64..=10, -30i64..=30).prop_map(|(a, b)| Scalar::new(ratio(a, 10), ratio(b, 10)))
}

fn gaussian() -> impl Strategy<Value = Scalar> {
    (real(), real()).prop_map(|(a, b)| Scalar::new(a, b))
}

/// Atoms that evaluate everywhere on `t > 0`.
fn smooth_leaf() -> impl Strategy<Value = SignalExpr> {
    prop_oneof![
        gaussian().prop_map(SignalExpr::constant),
        Just(SignalExpr::TimeVar),
        small_rate().prop_map(SignalExpr::Exp),
        (positive(), real()).prop_map(|(w, p)| SignalExpr::sin(w, p)),
        (positive(), real()).prop_map(|(w, p)| SignalExpr::cos(w, p)),
        positive().prop_map(|w| SignalExpr::sinc(w).unwrap()),
        positive().prop_map(|w| SignalExpr::raised_cos(w).unwrap()),
        (positive(), real(), real()).prop_map(|(a, b, c)| SignalExpr::chirp(a / int(10), b, c).unwrap()),
    ]
}

fn leaf() -> impl Strategy<Value = SignalExpr> {
    prop_oneof![
        4 => smooth_leaf(),
        1 => Just(SignalExpr::Dirac),
        1 => real().prop_map(SignalExpr::Delay),
    ]
}

fn tree(leaf: BoxedStrategy<SignalExpr>, with_recip: bool) -> impl Strategy<Value = SignalExpr> {
    leaf.prop_recursive(3, 16, 3, move |inner| {
        let ops = prop_oneof![
            prop::collection::vec(inner.clone(), 2..4).prop_map(SignalExpr::add),
            prop::collection::vec(inner.clone(), 2..3).prop_map(SignalExpr::mul),
            (inner.clone(), 1u32..4).prop_map(|(b, k)| SignalExpr::pow(b, k)),
        ];
        if with_recip {
            prop_oneof![3 => ops, 1 => inner.prop_map(SignalExpr::recip)].boxed()
        } else {
            ops.boxed()
        }
    })
}

/// Exponential-polynomial expressions in real and complex form.
fn exp_poly_expr() -> impl Strategy<Value = SignalExpr> {
    let atom = prop_oneof![
        gaussian().prop_map(SignalExpr::constant),
        Just(SignalExpr::TimeVar),
        small_rate().prop_map(SignalExpr::Exp),
        (positive(), real()).prop_map(|(w, p)| SignalExpr::sin(w, p)),
        (positive(), real()).prop_map(|(w, p)| SignalExpr::cos(w, p)),
    ];
    tree(atom.boxed(), false)
}

/// Real signals `Σ P_k(t)·sin(ω_k t + φ_k)`.
fn real_signal() -> impl Strategy<Value = SignalExpr> {
    let term = (prop::collection::vec(real(), 1..4), positive(), real()).prop_map(|(p, w, phi)| {
        let poly = SignalExpr::add(
            p.into_iter()
                .enumerate()
                .map(|(k, c)| {
                    SignalExpr::mul(vec![SignalExpr::real(c), SignalExpr::pow(SignalExpr::TimeVar, k as u32)])
                })
                .collect(),
        );
        SignalExpr::mul(vec![poly, SignalExpr::sin(w, phi)])
    });
    prop::collection::vec(term, 1..4).prop_map(SignalExpr::add)
}

fn c(e: &SignalExpr, t: f64) -> Complex64 {
    eval(e, t).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_ratfunc(r: &mut ChaCha8Rng) -> RatFunc {
    loop {
        let x = common::ratfunc(r, 3);
        if !x.is_zero() {
            return x;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn print_parse_round_trip(e in tree(leaf().boxed(), true)) {
        let printed = e.to_string();
        let back = parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(&back, &e.clone().canonical(), "{}", printed);
        // Classification is total and stable under printing.
        prop_assert_eq!(back.classify(), e.classify());
    }

    #[test]
    fn diff_time_matches_central_difference(e in tree(smooth_leaf().boxed(), false), t in 0.1f64..10.0) {
        let d = c(&diff_time(&e).unwrap(), t);
        let h = 1e-6;
        let fd = (c(&e, t + h) - c(&e, t - h)) / (2.0 * h);
        prop_assert!((d - fd).norm() <= 1e-5 * (1.0 + d.norm()), "{}: {} vs {}", e, d, fd);
    }

    #[test]
    fn exp_poly_eval_matches_expression(e in exp_poly_expr(), t in 0.0f64..5.0) {
        let x = from_signal(&e).unwrap();
        let (a, b) = (x.eval(t), c(&e, t));
        prop_assert!((a - b).norm() <= 1e-8 * (1.0 + b.norm()), "{}: {} vs {}", e, a, b);
    }

    #[test]
    fn spectrum_via_rates_equals_spectrum_of_image(e in exp_poly_expr()) {
        let x = from_signal(&e).unwrap();
        let direct = x.spectrum();
        let image = spectrum_of_rational(&to_rational(&x)).unwrap();
        prop_assert_eq!(direct.frequencies.len(), image.frequencies.len());
        for (a, b) in direct.frequencies.iter().zip(&image.frequencies) {
            prop_assert!((a - b).abs() <= 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn real_signals_have_symmetric_spectra(e in real_signal()) {
        let s = spectrum(&e).unwrap();
        prop_assert!(s.is_symmetric(1e-9), "{}: {}", e, s);
    }

    #[test]
    fn modulated_sine_has_two_frequencies(e in real_signal().prop_filter("single term", |e| !matches!(e, SignalExpr::Add(_)))) {
        let SignalExpr::Mul(f) = &e else { return Ok(()) };
        let Some(SignalExpr::Sin { omega, .. }) = f.last() else { return Ok(()) };
        let w = to_f64(omega);
        prop_assert!(spectrum(&e).unwrap().matches(&[-w, w], 1e-9), "{}", e);
    }

    #[test]
    fn delay_spectrum_is_empty(l in real()) {
        prop_assert!(spectrum(&SignalExpr::Delay(l)).unwrap().is_empty());
    }

    #[test]
    fn sinc_equation_matches_derivative_of_sine_image(w in positive()) {
        // t·sinc_ω(t) = sin(ωt), and multiplication by -t is d/ds on images.
        let sine = to_rational(&from_signal(&SignalExpr::sin(w.clone(), int(0))).unwrap());
        let sys = catalog_equation(&SignalExpr::sinc(w).unwrap()).unwrap();
        prop_assert_eq!(sys.rhs(), &-&sine);
    }

    #[test]
    fn field_laws(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y, z) = (common::ratfunc(&mut r, 3), common::ratfunc(&mut r, 3), common::ratfunc(&mut r, 3));
        prop_assert_eq!(&(&(&x + &y) + &z), &(&x + &(&y + &z)));
        prop_assert_eq!(&(&(&x * &y) * &z), &(&x * &(&y * &z)));
        prop_assert_eq!(&(&x * &(&y + &z)), &(&(&x * &y) + &(&x * &z)));
        prop_assert_eq!(&(&x - &x), &RatFunc::zero());
        let w = nonzero_ratfunc(&mut r);
        prop_assert_eq!(&w * &w.inv().unwrap(), RatFunc::one());
    }

    #[test]
    fn alg_deriv_is_a_derivation(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (common::ratfunc(&mut r, 3), common::ratfunc(&mut r, 3));
        let lhs = (&x * &y).alg_deriv();
        let rhs = &(&x.alg_deriv() * &y) + &(&x * &y.alg_deriv());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn product_poles_lie_among_factor_poles(seed in any::<u64>()) {
        let mut r = rng(seed);
        let (x, y) = (nonzero_ratfunc(&mut r), nonzero_ratfunc(&mut r));
        let xy = &x * &y;
        let factor_poles: Vec<Complex64> = poles(&x).unwrap().iter().chain(&poles(&y).unwrap()).map(|p| p.to_c64()).collect();
        for p in poles(&xy).unwrap() {
            let z = p.to_c64();
            prop_assert!(factor_poles.iter().any(|q| (q - z).norm() <= 1e-9 * (1.0 + z.norm())), "{} not a pole of {} or {}", z, x, y);
        }
    }

    #[test]
    fn apply_is_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let op = common::weyl_op(&mut r, 2);
        let (x, y) = (common::ratfunc(&mut r, 2), common::ratfunc(&mut r, 2));
        let (a, b) = (common::gaussian(&mut r, 5), common::gaussian(&mut r, 5));
        let lhs = op.apply(&(&x.scale(&a) + &y.scale(&b)));
        let rhs = &op.apply(&x).scale(&a) + &op.apply(&y).scale(&b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_sign_tracks_second_derivative(e in tree(smooth_leaf().boxed(), false).prop_filter("real", |e| {
        (1..20).all(|k| c(e, k as f64 * 0.5).im.abs() <= 1e-12 * c(e, k as f64 * 0.5).re.abs().max(1.0))
    }), t in 0.1f64..10.0) {
        let dd = c(&diff_time(&diff_time(&e).unwrap()).unwrap(), t).re;
        if let Ok(phi) = phi_symbolic(&e, t) {
            if dd.abs() > 1e-9 {
                prop_assert_eq!(phi.signum(), dd.signum(), "{} at {}", e, t);
            }
        }
    }

    #[test]
    fn tone_scale_law(a in -5.0f64..5.0, w in 0.1f64..10.0, t in 0.0f64..10.0) {
        let e = parse(&format!("{a}*sin({w}*t)")).unwrap();
        let phi = phi_symbolic(&e, t).unwrap();
        let lhs = phi * (1.0 + (w * a * (w * t).cos()).powi(2)).sqrt();
        let rhs = -w * w * a * (w * t).sin();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + rhs.abs()));
    }

    #[test]
    fn phi_is_curvature_times_arc_factor(dx in -1e3f64..1e3, ddx in -1e3f64..1e3) {
        let lhs = phi_formula(dx, ddx);
        let rhs = curvature(dx, ddx) * (1.0 + dx * dx);
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
    }

    #[test]
    fn dft_linearity_and_parseval(
        x in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..80),
        y_seed in any::<u64>(),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        use rand::Rng;
        let x: Vec<Complex64> = x.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
        let mut r = rng(y_seed);
        let y: Vec<Complex64> = (0..x.len()).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let combo: Vec<Complex64> = x.iter().zip(&y).map(|(p, q)| p * a + q * b).collect();
        let (fx, fy, fc) = (transform(&x), transform(&y), transform(&combo));
        let scale = fx.iter().chain(&fy).map(|z| z.norm()).fold(1.0, f64::max) * (a.abs() + b.abs() + 1.0);
        for k in 0..x.len() {
            prop_assert!((fc[k] - (fx[k] * a + fy[k] * b)).norm() <= 1e-9 * scale);
        }
        let time: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        let freq: f64 = fx.iter().map(|z| z.norm_sqr()).sum::<f64>() / x.len() as f64;
        prop_assert!((time - freq).abs() <= 1e-9 * time.max(1e-300));
    }

    #[test]
    fn fast_and_direct_transforms_agree(log in 0u32..9, seed in any::<u64>()) {
        use rand::Rng;
        let mut r = rng(seed);
        let x: Vec<Complex64> = (0..1usize << log).map(|_| Complex64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0))).collect();
        let (fast, slow) = (transform(&x), transform_direct(&x));
        let scale = slow.iter().map(|z| z.norm()).fold(1e-300, f64::max);
        for (p, q) in fast.iter().zip(&slow) {
            prop_assert!((p - q).norm() <= 1e-9 * scale);
        }
    }

    #[test]
    fn contrast_uses_pipeline_spectrum(w in positive()) {
        let e = SignalExpr::sin(w, int(0));
        let report = contrast_report(&e).unwrap();
        prop_assert_eq!(&report.rows[0].algebraic, &spectrum(&e).unwrap());
    }
}
