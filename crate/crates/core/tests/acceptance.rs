//! Acceptance suite. Runs without the libtest harness so that every
//! criterion reports one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cardano::cardano::{
    b_coeff, b_coeff_oracle, build_polynomial, closed_form_roots, compute_pq, recognize, s_sum,
    trig_roots, DepressedCubic,
};
use cardano::chebyshev::{
    cardano_from_omega, cardano_recurrence_sequence, omega_closed, omega_recurrence,
    recurrence_residual,
};
use cardano::ferrari::{resolvent_cubic, solve_quartic_depressed, solve_quartic_general};
use cardano::operator::{
    circulant_eigenvalues, commutation_check, fourier_root_recovery, fujii_w,
    verify_cardano_identity,
};
use cardano::{oracle_roots, root_multiset_equal, CardanoParams, Complex, Polynomial, RootSet};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn params(n: usize, c: f64, d: f64) -> CardanoParams {
    CardanoParams::new(n, c, d).expect("valid parameters")
}

fn real_poly(coeffs: &[f64]) -> Polynomial {
    Polynomial::from_real(coeffs).expect("finite coefficients")
}

fn per_root_residual(p: &Polynomial, roots: &RootSet) -> f64 {
    roots.iter().map(|r| p.eval(*r).norm()).fold(0.0, f64::max)
}

fn c1_cubic_one_real_root() -> Outcome {
    let p = real_poly(&[-9.0, -6.0, 0.0, 1.0]);
    let params = recognize(&p, 1e-9).ok_or("x³−6x−9 not recognized")?;
    let roots = closed_form_roots(&params);
    let h = 3f64.sqrt() / 2.0;
    let want = RootSet::new(vec![
        Complex::new(3.0, 0.0),
        Complex::new(-1.5, h),
        Complex::new(-1.5, -h),
    ]);
    ensure(root_multiset_equal(&roots, &want, 1e-9), || {
        format!("roots {roots:?}")
    })?;
    let residual = per_root_residual(&p, &roots);
    ensure(residual <= 1e-10, || format!("residual {residual:e}"))?;
    let oracle = oracle_roots(&p).map_err(|e| e.to_string())?;
    ensure(root_multiset_equal(&roots, &oracle, 1e-9), || {
        "oracle mismatch".into()
    })?;
    Ok(format!("max residual {residual:.1e}"))
}

fn c2_unit_parameter_family() -> Outcome {
    let cubic = build_polynomial(&params(3, 1.0, 1.0)).map_err(|e| e.to_string())?;
    ensure(cubic.real_coeffs() == vec![-2.0, -3.0, 0.0, 1.0], || {
        format!("C3 = {cubic}")
    })?;
    let quintic = build_polynomial(&params(5, 1.0, 1.0)).map_err(|e| e.to_string())?;
    ensure(
        quintic.real_coeffs() == vec![-2.0, 5.0, 0.0, -5.0, 0.0, 1.0],
        || format!("C5 = {quintic}"),
    )?;

    let r3 = closed_form_roots(&params(3, 1.0, 1.0));
    let want3 = RootSet::from_real(&[2.0, -1.0, -1.0]);
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let r5 = closed_form_roots(&params(5, 1.0, 1.0));
    let want5 = RootSet::from_real(&[2.0, phi - 1.0, phi - 1.0, -phi, -phi]);
    ensure(root_multiset_equal(&r3, &want3, 1e-6), || {
        format!("C3 roots {r3:?}")
    })?;
    ensure(root_multiset_equal(&r5, &want5, 1e-6), || {
        format!("C5 roots {r5:?}")
    })?;
    let residual = per_root_residual(&cubic, &r3).max(per_root_residual(&quintic, &r5));
    ensure(residual <= 1e-8, || format!("residual {residual:e}"))?;
    Ok(format!("max residual {residual:.1e}"))
}

fn c3_negative_discriminant_quintic() -> Outcome {
    let params = params(5, 3.0, 2.0);
    let p = build_polynomial(&params).map_err(|e| e.to_string())?;
    ensure(
        p.real_coeffs() == vec![-4.0, 45.0, 0.0, -15.0, 0.0, 1.0],
        || format!("C5 = {p}"),
    )?;
    ensure(params.discriminant() == -239.0, || {
        format!("D = {}", params.discriminant())
    })?;
    let roots = trig_roots(&params).map_err(|e| e.to_string())?;
    let x0 = roots.as_slice()[0];
    ensure(x0.im == 0.0 && (x0.re - 3.3215).abs() <= 5e-4, || {
        format!("x[0] = {x0}")
    })?;
    let residual = per_root_residual(&p, &roots);
    ensure(roots.len() == 5 && residual <= 1e-9, || {
        format!("residual {residual:e}")
    })?;
    Ok(format!("x[0] = {:.6}, max residual {residual:.1e}", x0.re))
}

fn c4_coefficient_identities() -> Outcome {
    let mut cases = 0;
    for m in 1..=20 {
        for j in 0..m {
            let b = b_coeff(m, j).map_err(|e| e.to_string())?;
            let oracle = b_coeff_oracle(m, j).map_err(|e| e.to_string())?;
            ensure(b == oracle, || {
                format!("B({m},{j}) = {b} but oracle gives {oracle}")
            })?;
            let s = s_sum(m, j).map_err(|e| e.to_string())?;
            ensure(s == 0, || format!("S({m},{j}) = {s}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (m, j) pairs, both identities"))
}

fn c5_c7_golden(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..20 {
        let c: f64 = rng.gen_range(-5.0..5.0);
        let d: f64 = rng.gen_range(-5.0..5.0);
        let got = build_polynomial(&params(7, c, d))
            .map_err(|e| e.to_string())?
            .real_coeffs();
        let want = vec![
            -2.0 * d,
            -7.0 * (c * c * c),
            0.0,
            14.0 * (c * c),
            0.0,
            -7.0 * c,
            0.0,
            1.0,
        ];
        ensure(got == want, || format!("c={c}, d={d}: {got:?} != {want:?}"))?;
    }
    Ok("20 random (c, d), bitwise equal".into())
}

fn c6_chebyshev_bridge(rng: &mut ChaCha8Rng) -> Outcome {
    for n in 1..=30 {
        ensure(omega_closed(n) == omega_recurrence(n), || {
            format!("Omega_{n} differs")
        })?;
    }
    let mut worst_bridge: f64 = 0.0;
    for _ in 0..100 {
        let n = 2 * rng.gen_range(1..=10) + 1;
        let c = 5.0 - rng.gen_range(0.0..5.0);
        let d = rng.gen_range(-5.0..=5.0);
        let p = params(n, c, d);
        let via = cardano_from_omega(&p).map_err(|e| e.to_string())?;
        let direct = build_polynomial(&p).map_err(|e| e.to_string())?;
        let scale = direct.max_abs_coeff();
        let err = (0..=n)
            .map(|k| (via.coeff(k) - direct.coeff(k)).norm())
            .fold(0.0, f64::max)
            / scale;
        worst_bridge = worst_bridge.max(err);
        ensure(err <= 1e-9, || {
            format!("(n,c,d)=({n},{c},{d}) relative error {err:e}")
        })?;
    }
    let mut worst_rec: f64 = 0.0;
    for _ in 0..100 {
        let c = rng.gen_range(-5.0..=5.0);
        let d = rng.gen_range(-5.0..=5.0);
        let seq = cardano_recurrence_sequence(c, d, 21);
        ensure(seq[0].real_coeffs() == vec![-2.0 * d, 1.0], || {
            "C1 seed".into()
        })?;
        ensure(
            seq[1].real_coeffs() == vec![-2.0 * c - 2.0 * d, 0.0, 1.0],
            || "C2 seed".into(),
        )?;
        for w in seq.windows(3) {
            let scale = 1.0 + w.iter().map(|p| p.norm1()).fold(0.0, f64::max);
            let r = recurrence_residual(c, d, &w[0], &w[1], &w[2]) / scale;
            worst_rec = worst_rec.max(r);
            ensure(r <= 1e-9, || format!("c={c}, d={d}: residual {r:e}"))?;
        }
    }
    Ok(format!(
        "bridge rel err {worst_bridge:.1e}, recurrence rel residual {worst_rec:.1e}"
    ))
}

fn c7_ferrari(rng: &mut ChaCha8Rng) -> Outcome {
    let resolvent = resolvent_cubic(6.0, 8.0, 3.0);
    ensure(
        resolvent.real_coeffs() == vec![1.0, -3.0, -3.0, 1.0],
        || format!("resolvent {resolvent}"),
    )?;
    let depressed = DepressedCubic::from_coefficients(-3.0, -3.0, 1.0);
    let cp = depressed.to_params().map_err(|e| e.to_string())?;
    ensure(depressed.shift == -1.0, || {
        format!("shift {}", depressed.shift)
    })?;
    ensure(cp.n() == 3 && cp.c() == 2.0 && cp.d() == 2.0, || {
        format!("{cp:?}")
    })?;
    let z0 = closed_form_roots(&cp).as_slice()[0];
    ensure(
        (z0 - Complex::new(1.0 + 3f64.sqrt(), 0.0)).norm() <= 1e-10,
        || format!("z[0] = {z0}"),
    )?;

    let sol = solve_quartic_depressed(6.0, 8.0, 3.0).map_err(|e| e.to_string())?;
    let quartic = real_poly(&[3.0, 8.0, 6.0, 0.0, 1.0]);
    let residual = per_root_residual(&quartic, &sol.roots);
    ensure(sol.roots.len() == 4 && residual <= 1e-8, || {
        format!("residual {residual:e}")
    })?;

    for i in 0..1000 {
        let a: [f64; 4] = std::array::from_fn(|_| rng.gen_range(-5.0..=5.0));
        let sol = solve_quartic_general(a[3], a[2], a[1], a[0])
            .map_err(|e| format!("quartic {i}: {e}"))?;
        let p = real_poly(&[a[0], a[1], a[2], a[3], 1.0]);
        let bound = 1e-8 * (1.0 + p.max_abs_coeff());
        let r = per_root_residual(&p, &sol.roots);
        ensure(r <= bound, || format!("quartic {a:?}: residual {r:e}"))?;
        let oracle = oracle_roots(&p).map_err(|e| format!("quartic {a:?}: {e}"))?;
        ensure(root_multiset_equal(&sol.roots, &oracle, 1e-6), || {
            format!("quartic {a:?}: oracle mismatch")
        })?;
    }
    Ok(format!(
        "x⁴+6x²+8x+3 residual {residual:.1e}; 1000 random quartics agree"
    ))
}

fn c8_operator_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst_identity: f64 = 0.0;
    for n in (3..=15).step_by(2) {
        let comm = commutation_check(n).map_err(|e| e.to_string())?;
        ensure(comm <= 1e-12 * n as f64, || {
            format!("n={n}: ZX − ωXZ = {comm:e}")
        })?;
        for _ in 0..50 {
            let p = params(n, rng.gen_range(-3.0..=3.0), rng.gen_range(-3.0..=3.0));
            let tag = format!("(n,c,d)=({n},{},{})", p.c(), p.d());
            let report = verify_cardano_identity(&p).map_err(|e| e.to_string())?;
            let worst = report.identity_residual.max(report.x_residual);
            worst_identity = worst_identity.max(worst / report.scale);
            ensure(worst <= 1e-8 * report.scale, || {
                format!("{tag}: residual {worst:e}")
            })?;

            let pq = compute_pq(&p);
            let row = report
                .circulant_first_row
                .as_ref()
                .ok_or_else(|| format!("{tag}: X not circulant"))?;
            let mut want = vec![Complex::new(0.0, 0.0); n];
            want[1] = pq.q;
            want[n - 1] = pq.p;
            let row_err = row
                .iter()
                .zip(&want)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            ensure(row_err <= 1e-10, || {
                format!("{tag}: first row off by {row_err:e}")
            })?;

            let w_diag = RootSet::new(fujii_w(&p).map_err(|e| e.to_string())?.diag());
            ensure(
                root_multiset_equal(&circulant_eigenvalues(row), &w_diag, 1e-9),
                || format!("{tag}: spectrum differs from diag(W)"),
            )?;
            let recovered = fourier_root_recovery(&p).map_err(|e| e.to_string())?;
            ensure(
                root_multiset_equal(&recovered, &closed_form_roots(&p), 1e-9),
                || format!("{tag}: Fourier recovery differs"),
            )?;
        }
    }
    Ok(format!(
        "7 orders x 50 draws, worst relative residual {worst_identity:.1e}"
    ))
}

fn c9_recognition(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..200 {
        let n = 2 * rng.gen_range(1..=12) + 1;
        let p = params(n, rng.gen_range(-5.0..=5.0), rng.gen_range(-5.0..=5.0));
        let poly = build_polynomial(&p).map_err(|e| e.to_string())?;
        let got = recognize(&poly, 1e-9).ok_or_else(|| format!("{p:?} not recognized"))?;
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-9 * (1.0 + b.abs());
        ensure(
            got.n() == n && close(got.c(), p.c()) && close(got.d(), p.d()),
            || format!("{p:?} recognized as {got:?}"),
        )?;

        let mut coeffs = poly.real_coeffs();
        let e: f64 = rng.gen_range(0.01..=5.0);
        coeffs[n - 1] = if rng.gen_bool(0.5) { e } else { -e };
        ensure(recognize(&real_poly(&coeffs), 1e-9).is_none(), || {
            format!("{p:?} with x^(n-1) term accepted")
        })?;
    }
    ensure(
        recognize(&real_poly(&[1.0, 1.0, 0.0, 0.0, 0.0, 1.0]), 1e-9).is_none(),
        || "x⁵+x+1 accepted".into(),
    )?;
    Ok("200 round trips, perturbations rejected".into())
}

fn main() -> ExitCode {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00ca_d0a0);
    let mut results = Vec::new();
    let mut run = |id: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        match &outcome {
            Ok(detail) => println!("criterion {id} [{name}]: PASS ({detail}; {ms:.0} ms)"),
            Err(why) => println!("criterion {id} [{name}]: FAIL ({why})"),
        }
        results.push(outcome.is_ok());
    };

    run(1, "cubic x³−6x−9", &mut c1_cubic_one_real_root);
    run(2, "family (3,1,1) and (5,1,1)", &mut c2_unit_parameter_family);
    run(
        3,
        "quintic (5,3,2), D<0",
        &mut c3_negative_discriminant_quintic,
    );
    run(4, "B(m,j) identities", &mut c4_coefficient_identities);
    run(5, "C7 golden", &mut || c5_c7_golden(&mut rng));
    run(6, "Chebyshev bridge", &mut || c6_chebyshev_bridge(&mut rng));
    run(7, "Ferrari", &mut || c7_ferrari(&mut rng));
    run(8, "operator suite", &mut || c8_operator_suite(&mut rng));
    run(9, "recognition round trip", &mut || {
        c9_recognition(&mut rng)
    });

    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
