//! `selmer verify`: the exact invariant suites. Each check prints one
//! line; any failure flips the exit code to 1.

use crate::CliError;
use num_bigint::BigInt;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use selmer_core::convergents::{beta_matrix, beta_product, ConvergentState, reconstruct_point};
use selmer_core::geometry::{convex_hull, in_convex_hull};
use selmer_core::maps::{
    in_absorbing_set, msa_cylinder_image_vertices, msa_inverse_branch, msa_step,
    ssa_inverse_branch, ssa_step, Digit, StepOutcome,
};
use selmer_core::periodic::positive_power_exponent;
use selmer_core::rational::Rational;
use selmer_core::sampling;

pub struct VerifyArgs {
    pub suite: String,
    pub n: String,
    pub k: String,
    pub trials: usize,
    pub max_steps: usize,
    pub seed: u64,
}

struct Report {
    failures: usize,
}

impl Report {
    fn check(&mut self, name: &str, ok: bool, detail: &str) {
        if ok {
            println!("ok   {name}: {detail}");
        } else {
            println!("FAIL {name}: {detail}");
            self.failures += 1;
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| CliError::usage(format!("range {s:?} must look like \"2..4\"")))?;
    let lo: u64 = a.trim().parse().map_err(|e| CliError::usage(format!("bad range: {e}")))?;
    let hi: u64 = b.trim().parse().map_err(|e| CliError::usage(format!("bad range: {e}")))?;
    if lo > hi {
        return Err(CliError::usage(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    let (n_lo, n_hi) = parse_range(&args.n)?;
    let (k_lo, k_hi) = parse_range(&args.k)?;
    let known = [
        "all",
        "det",
        "positivity",
        "recursion",
        "reconstruct",
        "roundtrip",
        "absorbing",
        "cylinders",
    ];
    if !known.contains(&args.suite.as_str()) {
        return Err(CliError::usage(format!(
            "unknown suite {:?}; pick one of {}",
            args.suite,
            known.join(", ")
        )));
    }
    let want = |name: &str| args.suite == "all" || args.suite == name;
    let mut report = Report { failures: 0 };

    if want("det") {
        suite_det(&mut report, n_lo, n_hi, k_lo, k_hi);
    }
    if want("positivity") {
        suite_positivity(&mut report, n_lo, n_hi, k_lo, k_hi);
    }
    if want("recursion") {
        suite_recursion(&mut report, args.trials, args.seed);
    }
    if want("reconstruct") {
        suite_reconstruct(&mut report, args.trials, args.seed);
    }
    if want("roundtrip") {
        suite_roundtrip(&mut report, args.trials, args.seed);
    }
    if want("absorbing") {
        suite_absorbing(&mut report, args.max_steps, args.seed);
    }
    if want("cylinders") {
        suite_cylinders(&mut report, k_hi);
    }

    if report.failures > 0 {
        println!("{} check(s) failed", report.failures);
        Err(CliError::runtime(format!("{} verification failure(s)", report.failures)))
    } else {
        println!("all checks passed");
        Ok(())
    }
}

fn suite_det(report: &mut Report, n_lo: u64, n_hi: u64, k_lo: u64, k_hi: u64) {
    let mut ok = true;
    let mut detail = String::new();
    'outer: for n in n_lo.max(1)..=n_hi {
        let expect = if n % 2 == 0 {
            BigInt::one()
        } else {
            -BigInt::one()
        };
        for k in k_lo.max(1)..=k_hi {
            let d = beta_matrix(&BigInt::from(k), n as usize).det();
            if d != expect {
                ok = false;
                detail = format!("det beta({k}) = {d} != (-1)^{n} at n = {n}");
                break 'outer;
            }
        }
    }
    if ok {
        detail = format!(
            "det beta(k) = (-1)^n for n in {n_lo}..={n_hi}, k in {k_lo}..={k_hi}"
        );
    }
    report.check("det", ok, &detail);
}

fn suite_positivity(report: &mut Report, n_lo: u64, n_hi: u64, k_lo: u64, k_hi: u64) {
    let mut ok = true;
    let mut worst = 0u32;
    let mut detail = String::new();
    'outer: for n in n_lo.max(2)..=n_hi {
        let bound = (n * n + 1) as u32;
        for k in k_lo.max(1)..=k_hi {
            match positive_power_exponent(&beta_matrix(&BigInt::from(k), n as usize)) {
                Ok(e) if e <= bound => worst = worst.max(e),
                Ok(e) => {
                    ok = false;
                    detail = format!("exponent {e} exceeds n^2+1 = {bound} at n = {n}, k = {k}");
                    break 'outer;
                }
                Err(err) => {
                    ok = false;
                    detail = format!("beta({k}) at n = {n}: {err}");
                    break 'outer;
                }
            }
        }
    }
    if ok {
        detail = format!(
            "beta(k)^e > 0 with e <= n^2+1 for n in {}..={n_hi}, k in {}..={k_hi} (max e = {worst})",
            n_lo.max(2),
            k_lo.max(1)
        );
    }
    report.check("positivity", ok, &detail);
}

fn suite_recursion(report: &mut Report, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng;
    let mut ok = true;
    let mut detail = String::new();
    for t in 0..trials {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let len = rng.gen_range(1..=60);
        let digits = sampling::digit_string(len, &mut rng, 9);
        let mut state = ConvergentState::identity(n);
        for k in &digits {
            state = state.extend(k).expect("valid digit");
        }
        if state != beta_product(&digits, n) {
            ok = false;
            detail = format!("trial {t}: recursion != product for digits {digits:?}");
            break;
        }
    }
    if ok {
        detail = format!("{trials} random digit strings: recursion chain equals matrix product");
    }
    report.check("recursion", ok, &detail);
}

fn suite_reconstruct(report: &mut Report, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
    use rand::Rng;
    let mut ok = true;
    let mut detail = String::new();
    'outer: for t in 0..trials {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let x = sampling::rational_point(n, &mut rng, 1_000_000);
        let mut state = ConvergentState::identity(n);
        let mut y = x.clone();
        for _ in 0..30 {
            match msa_step(&y) {
                StepOutcome::Step { next, digit: Digit::Msa(k) } => {
                    state = state.extend(&k).expect("valid digit");
                    y = next;
                }
                _ => break,
            }
            match reconstruct_point(&state, &y) {
                Ok(back) if back == x => {}
                other => {
                    ok = false;
                    detail = format!(
                        "trial {t}: reconstruction failed at s = {} ({other:?})",
                        state.step_count()
                    );
                    break 'outer;
                }
            }
        }
    }
    if ok {
        detail =
            format!("{trials} random expansions reconstruct the start exactly at every prefix");
    }
    report.check("reconstruct", ok, &detail);
}

fn suite_roundtrip(report: &mut Report, trials: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
    use rand::Rng;
    let mut ok = true;
    let mut detail = String::new();
    'outer: for t in 0..trials {
        let n = if rng.gen_bool(0.5) { 2 } else { 3 };
        let x = sampling::rational_point(n, &mut rng, 5_000);
        if let StepOutcome::Step { next, digit: Digit::Ssa(j) } = ssa_step(&x) {
            match ssa_inverse_branch(&next, j) {
                Ok(back) if back == x => {}
                other => {
                    ok = false;
                    detail = format!("trial {t}: SSA inverse branch mismatch ({other:?})");
                    break 'outer;
                }
            }
        }
        if let StepOutcome::Step { next, digit: Digit::Msa(k) } = msa_step(&x) {
            match msa_inverse_branch(&next, &k) {
                Ok(back) if back == x => {}
                other => {
                    ok = false;
                    detail = format!("trial {t}: MSA inverse branch mismatch ({other:?})");
                    break 'outer;
                }
            }
        }
    }
    if ok {
        detail = format!("{trials} random points: inverse branches undo both step maps exactly");
    }
    report.check("roundtrip", ok, &detail);
}

fn suite_absorbing(report: &mut Report, max_steps: usize, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
    // forward invariance of D is a hard check
    let mut stay_ok = true;
    let mut detail = String::new();
    for t in 0..1000 {
        let x = sampling::absorbing_point(&mut rng, 100);
        let StepOutcome::Step { next, .. } = ssa_step(&x) else {
            stay_ok = false;
            detail = format!("trial {t}: SSA terminated inside D");
            break;
        };
        if !in_absorbing_set(&next).expect("dimension 2") {
            stay_ok = false;
            detail = format!("trial {t}: T{} left D", x.to_text());
            break;
        }
    }
    if stay_ok {
        detail = "1000 sampled points of D stay in D for one step".into();
    }
    report.check("absorbing-stay", stay_ok, &detail);

    // hitting times are a reported statistic (rational orbits can
    // degenerate onto x_n = 0 outside D, a measure-zero family)
    let mut hits = 0usize;
    let mut worst = 0usize;
    let mut misses = 0usize;
    for _ in 0..1000 {
        let mut x = sampling::rational_point(2, &mut rng, 100);
        let mut hit = false;
        for step in 0..max_steps {
            if in_absorbing_set(&x).expect("dimension 2") {
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
            misses += 1;
        }
    }
    report.check(
        "absorbing-hit",
        true,
        &format!(
            "{hits}/1000 points reached D within {max_steps} steps (worst hit {worst}, \
             {misses} stuck on the degenerate boundary)"
        ),
    );
}

fn suite_cylinders(report: &mut Report, k_hi: u64) {
    let mut ok = true;
    let mut detail = String::new();
    let kmax = k_hi.max(2);
    for k in 1..=kmax {
        let inner = convex_hull(
            &msa_cylinder_image_vertices(k)
                .into_iter()
                .collect::<Vec<_>>(),
        );
        let outer = convex_hull(
            &msa_cylinder_image_vertices(k + 1)
                .into_iter()
                .collect::<Vec<_>>(),
        );
        // SB(k) inside SB(k+1)
        if !inner.iter().all(|p| in_convex_hull(&outer, p)) {
            ok = false;
            detail = format!("SB({k}) not contained in SB({})", k + 1);
            break;
        }
        // witness of strictness: (1/(k+1), 0) is a vertex of SB(k+1)
        // but lies left of the bottom edge of SB(k)
        let witness = (
            Rational::new(1.into(), BigInt::from(k + 1)),
            Rational::from_integer(0.into()),
        );
        if !in_convex_hull(&outer, &witness) || in_convex_hull(&inner, &witness) {
            ok = false;
            detail = format!("strictness witness failed at k = {k}");
            break;
        }
        // no cylinder is full: the corner (0, 0) of B^2 never lies in SB(k)
        let corner = (Rational::from_integer(0.into()), Rational::from_integer(0.into()));
        if in_convex_hull(&inner, &corner) {
            ok = false;
            detail = format!("SB({k}) unexpectedly covers the corner of B^2");
            break;
        }
    }
    if ok {
        detail = format!(
            "SB(k) strictly nested in SB(k+1) for k in 1..={kmax}, with witnesses; none full"
        );
    }
    report.check("cylinders-nested", ok, &detail);

    // SB(k) is not a union of rank-1 cells: both points sit in cell
    // B(k+1), one inside SB(k) and one outside
    let mut ok2 = true;
    let mut detail2 = String::new();
    for k in 1..=kmax {
        let hull = convex_hull(&msa_cylinder_image_vertices(k).into_iter().collect::<Vec<_>>());
        // t = midpoint of (1/(k+2), 1/(k+1))
        let t = (Rational::new(1.into(), BigInt::from(k + 2))
            + Rational::new(1.into(), BigInt::from(k + 1)))
            / Rational::from_integer(2.into());
        let p_in = (Rational::from_integer(1.into()), t.clone());
        let p_out = (t.clone(), t.clone());
        let cell_of = |p: &(Rational, Rational)| {
            let pt = selmer_core::maps::PointB::from_rationals(vec![p.0.clone(), p.1.clone()])
                .expect("valid point");
            selmer_core::maps::msa_digit(&pt).expect("nonzero")
        };
        let same_cell = cell_of(&p_in) == BigInt::from(k + 1) && cell_of(&p_out) == BigInt::from(k + 1);
        if !(same_cell && in_convex_hull(&hull, &p_in) && !in_convex_hull(&hull, &p_out)) {
            ok2 = false;
            detail2 = format!("union-of-cells witness failed at k = {k}");
            break;
        }
    }
    if ok2 {
        detail2 = format!(
            "for k in 1..={kmax}, cell B(k+1) straddles the boundary of SB(k): \
             SB(k) is not a union of rank-1 cells"
        );
    }
    report.check("cylinders-not-union", ok2, &detail2);
}
