//! Acceptance suite: one test per criterion, every tolerance pinned in
//! code. Each test prints a single pass line (visible with
//! `cargo test --test acceptance -- --nocapture`); a failed assertion
//! marks the criterion failed.

use num_bigint::BigInt;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use selmer_core::convergents::{beta_matrix, beta_product, ConvergentState, reconstruct_point};
use selmer_core::geometry::{convex_hull, in_convex_hull, Point2};
use selmer_core::maps::{
    in_absorbing_set, msa_cylinder_image_vertices, msa_step, ssa_step, Algo, Digit, PointB,
    StepOutcome,
};
use selmer_core::numfield::{NumberField, NumberFieldElement};
use selmer_core::periodic::{detect_period, expand_orbit, DetectOutcome};
use selmer_core::poly::Polynomial;
use selmer_core::rational::{rat, rat_int, Rational};
use selmer_core::sampling;
use std::cmp::Ordering;
use std::sync::Arc;
use std::time::Instant;

fn cbrt2_field() -> Arc<NumberField> {
    NumberField::new(Polynomial::from_i64(&[-2, 0, 0, 1]), rat_int(1), rat_int(2)).unwrap()
}

fn sqrt5_field() -> Arc<NumberField> {
    NumberField::new(Polynomial::from_i64(&[-5, 0, 1]), rat_int(2), rat_int(3)).unwrap()
}

/// x = (∛4 − 1, ∛2 − 1)
fn cbrt_point() -> PointB {
    let g = cbrt2_field();
    let a = g.generator();
    let one = g.one();
    PointB::new(vec![a.pow(2).sub(&one).unwrap(), a.sub(&one).unwrap()]).unwrap()
}

/// x = ((√5 − 1)/2, (3 − √5)/2)
fn golden_point() -> PointB {
    let f = sqrt5_field();
    PointB::new(vec![
        f.element(vec![rat(-1, 2), rat(1, 2)]),
        f.element(vec![rat(3, 2), rat(-1, 2)]),
    ])
    .unwrap()
}

fn nfe_from_int_combo(f: &Arc<NumberField>, c0: i64, c1: i64, c2: i64) -> NumberFieldElement {
    f.element(vec![rat_int(c0), rat_int(c1), rat_int(c2)])
}

fn assert_le(a: &NumberFieldElement, b: &NumberFieldElement, msg: &str) {
    assert_ne!(a.cmp_exact(b).unwrap(), Ordering::Greater, "{msg}");
}

fn assert_lt(a: &NumberFieldElement, b: &NumberFieldElement, msg: &str) {
    assert_eq!(a.cmp_exact(b).unwrap(), Ordering::Less, "{msg}");
}

fn pow10_inv(p: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(p))
}

/// Column error vector max_i |B_i/B_0 − x_i| of one column as an exact
/// field element, `None` when the denominator entry vanishes.
fn column_max_error(
    state: &ConvergentState,
    g: usize,
    x: &PointB,
) -> Option<NumberFieldElement> {
    let ratios = state.convergent_point(g).ok()?;
    let f = x.field();
    let mut worst: Option<NumberFieldElement> = None;
    for (r, xi) in ratios.iter().zip(x.coords()) {
        let e = f.element_from_rational(r.clone()).sub(xi).unwrap().abs();
        worst = Some(match worst {
            None => e,
            Some(w) => {
                if w.cmp_exact(&e).unwrap() == Ordering::Less {
                    e
                } else {
                    w
                }
            }
        });
    }
    worst
}

#[test]
fn acceptance_01_ssa_periodicity() {
    let start = Instant::now();
    let outcome = detect_period(&cbrt_point(), Algo::Ssa, 64);
    let elapsed = start.elapsed();
    let DetectOutcome::Periodic(report) = outcome else {
        panic!("criterion 1: expansion must be periodic");
    };
    assert_eq!(
        (report.preperiod, report.period),
        (1, 30),
        "criterion 1: (m, p) must be exactly (1, 30)"
    );
    assert!(
        elapsed.as_secs_f64() < 5.0,
        "criterion 1: detection took {elapsed:?}, budget is 5 s"
    );
    println!(
        "acceptance 01 PASS: SSA of (cbrt4-1, cbrt2-1) has (m, p) = (1, 30), found in {elapsed:?}"
    );
}

#[test]
fn acceptance_02_ssa_exact_values() {
    let x = cbrt_point();
    let trace = expand_orbit(&x, Algo::Ssa, 31);
    assert_eq!(trace.states.len(), 32);
    let f = x.field().clone();

    // T^30 x = ((54 - 29a - 11a^2)/(30a^2 + 13a - 64),
    //           (24a + 3a^2 - 35)/(30a^2 + 13a - 64))
    let den30 = nfe_from_int_combo(&f, -64, 13, 30);
    let t30 = PointB::new(vec![
        nfe_from_int_combo(&f, 54, -29, -11).div(&den30).unwrap(),
        nfe_from_int_combo(&f, -35, 24, 3).div(&den30).unwrap(),
    ])
    .unwrap();
    // T^31 x = ((27a^2 - 11a - 29)/(54 - 29a - 11a^2),
    //           (24a + 3a^2 - 35)/(54 - 29a - 11a^2))
    let den31 = nfe_from_int_combo(&f, 54, -29, -11);
    let t31 = PointB::new(vec![
        nfe_from_int_combo(&f, -29, -11, 27).div(&den31).unwrap(),
        nfe_from_int_combo(&f, -35, 24, 3).div(&den31).unwrap(),
    ])
    .unwrap();

    assert_eq!(trace.states[30], t30, "criterion 2: T^30 x mismatch");
    assert_eq!(trace.states[31], t31, "criterion 2: T^31 x mismatch");
    assert_eq!(trace.states[31], trace.states[1], "criterion 2: T^31 x = T x");
    println!("acceptance 02 PASS: T^30 and T^31 equal the displayed algebraic values exactly");
}

#[test]
fn acceptance_03_msa_golden_fixed_point() {
    let x = golden_point();
    let StepOutcome::Step { next, digit } = msa_step(&x) else {
        panic!("criterion 3: golden point must step");
    };
    assert_eq!(digit, Digit::Msa(BigInt::from(2)), "criterion 3: digit k = 2");
    assert_eq!(next, x, "criterion 3: S x = x exactly");

    let DetectOutcome::Periodic(report) = detect_period(&x, Algo::Msa, 16) else {
        panic!("criterion 3: detection must find the fixed point");
    };
    assert_eq!((report.preperiod, report.period), (0, 1), "criterion 3: period (0, 1)");

    let analysis = report.analysis.as_ref().expect("criterion 3: analysis runs");
    let expect_cp = Polynomial::from_i64(&[-1, -2, 0, 1]); // t^3 - 2t - 1
    assert_eq!(analysis.char_poly, expect_cp, "criterion 3: char poly of beta(2)");
    // independent oracle: evaluate det(tI - M) at integer points
    let m = &analysis.matrix;
    for t in 0..=3i64 {
        let mut shifted = selmer_core::convergents::IntMatrix::zero(3);
        for i in 0..3 {
            for j in 0..3 {
                let v = if i == j {
                    BigInt::from(t) - m.get(i, j)
                } else {
                    -m.get(i, j).clone()
                };
                shifted.set(i, j, v);
            }
        }
        assert_eq!(
            shifted.det(),
            expect_cp.eval_bigint(&BigInt::from(t)),
            "criterion 3: determinant oracle at t = {t}"
        );
    }

    // rho0 isolated inside (1.61, 1.62) after refinement
    analysis.dominant.field.refine_to(&rat(1, 1000));
    let iv = analysis.dominant.field.current_interval();
    assert!(
        iv.lo > rat(161, 100) && iv.hi < rat(162, 100),
        "criterion 3: rho0 interval ({}, {}) not inside (1.61, 1.62)",
        iv.lo,
        iv.hi
    );

    // eigen point returns x exactly (across fields)
    let v = &analysis.eigen_point;
    assert!(
        v.coord(0).eq_value(x.coord(0)).unwrap() && v.coord(1).eq_value(x.coord(1)).unwrap(),
        "criterion 3: eigen point must equal the golden point exactly"
    );
    println!("acceptance 03 PASS: golden fixed point, digit 2, charpoly, rho0 and eigen point check out");
}

#[test]
fn acceptance_04_determinant_identity() {
    for n in 1..=6usize {
        let expect = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        for k in 1..=10i64 {
            assert_eq!(
                beta_matrix(&BigInt::from(k), n).det(),
                expect,
                "criterion 4: det beta({k}) != (-1)^{n}"
            );
        }
    }
    println!("acceptance 04 PASS: det beta(k) = (-1)^n for n in 1..=6, k in 1..=10, exact");
}

#[test]
fn acceptance_05_recursion_product_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for trial in 0..50 {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let len = rng.gen_range(1..=60);
        let digits = sampling::digit_string(len, &mut rng, 9);
        let mut state = ConvergentState::identity(n);
        for k in &digits {
            state = state.extend(k).unwrap();
        }
        assert_eq!(
            state,
            beta_product(&digits, n),
            "criterion 5: trial {trial} diverged (n = {n}, len = {len})"
        );
    }
    println!("acceptance 05 PASS: 50 random digit strings, recursion chain = matrix product exactly");
}

#[test]
fn acceptance_06_reconstruction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    for n in [2usize, 3] {
        for trial in 0..50 {
            let x = sampling::rational_point(n, &mut rng, 1_000_000);
            let mut state = ConvergentState::identity(n);
            let mut y = x.clone();
            for _ in 0..30 {
                match msa_step(&y) {
                    StepOutcome::Step { next, digit: Digit::Msa(k) } => {
                        state = state.extend(&k).unwrap();
                        y = next;
                    }
                    _ => break,
                }
                let back = reconstruct_point(&state, &y).unwrap();
                assert_eq!(
                    back,
                    x,
                    "criterion 6: reconstruction failed at s = {} (n = {n}, trial {trial})",
                    state.step_count()
                );
            }
        }
    }
    println!(
        "acceptance 06 PASS: 50 random rational points in B^2 and in B^3 reconstruct exactly at every prefix"
    );
}

#[test]
fn acceptance_07_positivity_lemma() {
    for n in [2usize, 3, 4] {
        let bound = n * n + 1;
        for k in 1..=3i64 {
            let b = beta_matrix(&BigInt::from(k), n);
            let mut acc = b.pow(bound as u32);
            for p in bound..=bound + 5 {
                assert!(
                    acc.is_entrywise_positive(),
                    "criterion 7: beta({k})^{p} has a zero entry at n = {n}"
                );
                acc = acc.mul(&b);
            }
        }
    }
    // minimal exponent for n = 2, k = 1 is exactly 5
    let b1 = beta_matrix(&BigInt::one(), 2);
    assert!(
        !b1.pow(4).is_entrywise_positive(),
        "criterion 7: beta(1)^4 must still have a zero entry"
    );
    assert!(b1.pow(5).is_entrywise_positive(), "criterion 7: beta(1)^5 must be positive");
    assert_eq!(
        selmer_core::periodic::positive_power_exponent(&b1).unwrap(),
        5,
        "criterion 7: minimal exponent of beta(1) at n = 2"
    );
    println!("acceptance 07 PASS: beta(k)^p > 0 for n^2+1 <= p <= n^2+6, minimal exponent 5 at (n, k) = (2, 1)");
}

#[test]
fn acceptance_08_weak_convergence() {
    let x = golden_point();
    let f = x.field().clone();
    let two = BigInt::from(2);
    let tol = f.element_from_rational(pow10_inv(8));

    // labeled main column error at s = 40 is <= 1e-8
    let mut state = ConvergentState::identity(2);
    let mut errors = Vec::new(); // max errors of the labeled column B^(s)
    for _ in 1..=44 {
        state = state.extend(&two).unwrap();
        errors.push(column_max_error(&state, state.main_column(), &x));
        if state.step_count() == 40 {
            let err40 = errors.last().unwrap().clone().unwrap();
            assert_le(&err40, &tol, "criterion 8: error at s = 40 exceeds 1e-8");
        }
        if state.step_count() == 44 {
            // uniform weak convergence: all three column positions agree
            // with x (and hence each other) within 1e-8
            for g in 0..=2usize {
                let err = column_max_error(&state, g, &x)
                    .expect("criterion 8: columns are nondegenerate by s = 44");
                assert_le(
                    &err,
                    &tol,
                    &format!("criterion 8: column {g} error at s = 44 exceeds 1e-8"),
                );
            }
            let cols: Vec<Vec<Rational>> = (0..=2usize)
                .map(|g| state.convergent_point(g).unwrap())
                .collect();
            for a in 0..cols.len() {
                for b in a + 1..cols.len() {
                    for (ra, rb) in cols[a].iter().zip(&cols[b]) {
                        let d = f
                            .element_from_rational(ra - rb)
                            .abs();
                        assert_le(
                            &d,
                            &f.element_from_rational(pow10_inv(8) * rat_int(2)),
                            "criterion 8: columns disagree beyond 2e-8",
                        );
                    }
                }
            }
        }
    }

    // certified geometric decrease: err(s+1)/err(s) within
    // [1/phi - 0.05, 1/phi + 0.05] for s in [20, 40]
    let inv_phi = x.coord(0); // (sqrt5 - 1)/2 = 1/phi, exactly
    let slack = f.element_from_rational(rat(1, 20));
    let lo = inv_phi.sub(&slack).unwrap();
    let hi = inv_phi.add(&slack).unwrap();
    for s in 20..40usize {
        let e_s = errors[s - 1].clone().unwrap();
        let e_next = errors[s].clone().unwrap();
        let ratio = e_next.div(&e_s).unwrap();
        assert_ne!(
            ratio.cmp_exact(&lo).unwrap(),
            Ordering::Less,
            "criterion 8: ratio at s = {s} below 1/phi - 0.05"
        );
        assert_ne!(
            ratio.cmp_exact(&hi).unwrap(),
            Ordering::Greater,
            "criterion 8: ratio at s = {s} above 1/phi + 0.05"
        );
    }
    println!(
        "acceptance 08 PASS: error <= 1e-8 at s = 40, geometric ratio in 1/phi +- 0.05 on [20, 40], all columns agree"
    );
}

#[test]
fn acceptance_09_approximation_envelope() {
    let x = golden_point();
    let f = x.field().clone();
    let two = BigInt::from(2);

    // e_i(g) = |B_0^(g) x_i - B_i^(g)| for g = 1..40 (p = 1), exactly
    let mut state = ConvergentState::identity(2);
    let mut errs: Vec<[NumberFieldElement; 2]> = Vec::new();
    for _ in 1..=40 {
        state = state.extend(&two).unwrap();
        let col = state.main_column();
        let b0 = state.matrix().get(0, col).clone();
        let row = [1usize, 2].map(|i| {
            let bi = state.matrix().get(i, col).clone();
            x.coords()[i - 1]
                .mul_rational(&Rational::from_integer(b0.clone()))
                .sub(&f.element_from_rational(Rational::from_integer(bi)))
                .unwrap()
                .abs()
        });
        errs.push(row);
    }

    // fit the band on g <= 10: c1 = min observed; c2 from Aitken
    // extrapolation of each coordinate's (exactly geometric) sequence
    let window = &errs[..10];
    let mut c1 = window[0][0].clone();
    for row in window {
        for e in row {
            if e.cmp_exact(&c1).unwrap() == Ordering::Less {
                c1 = e.clone();
            }
        }
    }
    assert!(c1.sign() > 0, "criterion 9: c1 must be strictly positive");

    let aitken = |e8: &NumberFieldElement, e9: &NumberFieldElement, e10: &NumberFieldElement| {
        let d10 = e10.sub(e9).unwrap();
        let d9 = e9.sub(e8).unwrap();
        let r = d10.div(&d9).unwrap();
        let one = e8.field().one();
        e10.add(&d10.mul(&r).unwrap().div(&one.sub(&r).unwrap()).unwrap())
            .unwrap()
    };
    let mut c2: Option<NumberFieldElement> = None;
    for i in [0usize, 1] {
        let a = aitken(&errs[7][i], &errs[8][i], &errs[9][i]);
        c2 = Some(match c2 {
            None => a,
            Some(c) => {
                if c.cmp_exact(&a).unwrap() == Ordering::Less {
                    a
                } else {
                    c
                }
            }
        });
    }
    let c2 = c2.unwrap();
    assert_lt(&c1, &c2, "criterion 9: band must be nondegenerate");

    // validation on g = 11..40: every error stays inside [c1, c2]
    for (g, row) in errs.iter().enumerate().skip(10) {
        for (i, e) in row.iter().enumerate() {
            assert_ne!(
                e.cmp_exact(&c1).unwrap(),
                Ordering::Less,
                "criterion 9: e_{}({}) fell below c1",
                i + 1,
                g + 1
            );
            assert_ne!(
                e.cmp_exact(&c2).unwrap(),
                Ordering::Greater,
                "criterion 9: e_{}({}) exceeded c2",
                i + 1,
                g + 1
            );
        }
    }
    println!(
        "acceptance 09 PASS: approximation errors stay in the fitted band [c1, c2] = [{}, {}] through g = 40",
        c1.decimal(6),
        c2.decimal(6)
    );
}

#[test]
fn acceptance_10_absorbing_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    // stay-in-D: hard failure on any counterexample
    for _ in 0..1000 {
        let x = sampling::absorbing_point(&mut rng, 100);
        let StepOutcome::Step { next, .. } = ssa_step(&x) else {
            panic!("criterion 10: SSA terminated inside D");
        };
        assert!(
            in_absorbing_set(&next).unwrap(),
            "criterion 10: stay-in-D failed at {x}"
        );
    }

    // hitting times: statistic reported; rational orbits may park on the
    // degenerate boundary x_n = 0 outside D ("almost every" claim), and
    // nothing else may fail to absorb
    let mut hits = 0usize;
    let mut worst = 0usize;
    let mut degenerate = 0usize;
    for _ in 0..1000 {
        let mut x = sampling::rational_point(2, &mut rng, 100);
        let mut hit = false;
        for step in 0..500usize {
            if in_absorbing_set(&x).unwrap() {
                hits += 1;
                worst = worst.max(step);
                hit = true;
                break;
            }
            match ssa_step(&x) {
                StepOutcome::Step { next, .. } => x = next,
                StepOutcome::Terminated => break,
            }
        }
        if !hit {
            degenerate += 1;
            assert!(
                x.coord(1).is_zero(),
                "criterion 10: non-degenerate orbit failed to reach D: {x}"
            );
        }
    }
    println!(
        "acceptance 10 PASS: stay-in-D holds on 1000 samples; hitting statistic: {hits}/1000 \
         reached D within 500 steps (worst {worst}), {degenerate} orbits parked on the \
         degenerate boundary x_2 = 0"
    );
}

#[test]
fn acceptance_11_cylinder_geometry() {
    for k in 1..=10u64 {
        let inner: Vec<Point2> = msa_cylinder_image_vertices(k);
        let outer: Vec<Point2> = msa_cylinder_image_vertices(k + 1);
        let inner_hull = convex_hull(&inner);
        let outer_hull = convex_hull(&outer);
        for p in &inner_hull {
            assert!(
                in_convex_hull(&outer_hull, p),
                "criterion 11: SB({k}) vertex {p:?} escapes SB({})",
                k + 1
            );
        }
        // witness in SB(k+1) \ SB(k)
        let witness = (
            Rational::new(BigInt::one(), BigInt::from(k + 1)),
            Rational::from_integer(0.into()),
        );
        assert!(
            in_convex_hull(&outer_hull, &witness),
            "criterion 11: witness not in SB({})",
            k + 1
        );
        assert!(
            !in_convex_hull(&inner_hull, &witness),
            "criterion 11: witness unexpectedly in SB({k})"
        );
    }
    println!("acceptance 11 PASS: SB(k) strictly nested in SB(k+1) for k <= 10, witnesses produced");
}

#[test]
fn acceptance_12_nonperiodicity_budget() {
    let outcome = detect_period(&cbrt_point(), Algo::Msa, 40);
    match outcome {
        DetectOutcome::NotFound { trace } => {
            assert_eq!(trace.step_count(), 40, "criterion 12: all 40 steps scanned");
        }
        other => panic!("criterion 12: expected NotFound, got {other:?}"),
    }
    println!(
        "acceptance 12 PASS: MSA of (cbrt4-1, cbrt2-1) not periodic within 40 steps (NotFound)"
    );
}
