//! Acceptance criteria, run sequentially with one PASS/FAIL line each.
//!
//! Built with `harness = false`: the binary exits non-zero if any criterion
//! fails, so `cargo test` reports the failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lemni::capacity::CompactSetModel;
use lemni::chebyshev::{derivative_magnitude_at_zero, inverse_derivative_square_sum, monic_chebyshev};
use lemni::claims::{
    ols_slope, verify_crane_composition, verify_example_2_1, verify_lemma_ball, verify_main_theorem_decay, ClaimStatus,
};
use lemni::fekete::{
    brute_force_fekete_oracle, check_derivative_lower_bound, circle_fekete_polynomial, fekete_points_with_candidates,
    FeketeConfig,
};
use lemni::lemniscate::{
    certified_area, component_ball_bound, components, crane_bound, inclusion_ball, monte_carlo_area, AreaOptions,
};
use lemni::polycore::compose_with_chebyshev;
use lemni::roots::FiberSolveConfig;
use lemni::{ComplexPoint, MonicPolynomial};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im)
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn ac1_chebyshev_identity() -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 2..=256usize {
        let err = (inverse_derivative_square_sum(n) - 1.0 / (2.0 * n as f64)).abs();
        worst = worst.max(err);
        ensure(err <= 1e-12, || format!("n = {n}: error {err:e}"))?;
    }
    Ok(format!("max error {worst:.3e}"))
}

fn ac2_disk_sanity() -> Outcome {
    let z = MonicPolynomial::from_real_roots(&[0.0]).map_err(e)?;
    let cert = certified_area(&z, &AreaOptions::depth(12)).map_err(e)?;
    ensure(cert.brackets(PI), || {
        format!("[{}, {}] misses pi", cert.lower, cert.upper)
    })?;
    ensure(cert.width() <= 0.01 * PI, || format!("width {}", cert.width()))?;
    Ok(format!(
        "[{:.6}, {:.6}], width/pi = {:.2e}",
        cert.lower,
        cert.upper,
        cert.width() / PI
    ))
}

fn ac3_chebyshev_sandwich() -> Outcome {
    let mut notes = Vec::new();
    for n in [2usize, 4, 8, 16, 32] {
        let cert = certified_area(&monic_chebyshev(n).map_err(e)?, &AreaOptions::depth(14)).map_err(e)?;
        let nf = n as f64;
        ensure(cert.upper <= 81.0 * PI / (2.0 * nf), || {
            format!("n = {n}: upper {}", cert.upper)
        })?;
        ensure(cert.lower >= PI / (32.0 * nf), || {
            format!("n = {n}: lower {}", cert.lower)
        })?;
        notes.push(format!(
            "n={n}: n*[l,u]=[{:.4},{:.4}]",
            nf * cert.lower,
            nf * cert.upper
        ));
    }
    Ok(notes.join("; "))
}

fn ac4_exponential_decay() -> Outcome {
    let r = verify_main_theorem_decay(1.2, 4, 16, 12).map_err(e)?;
    let uppers: Vec<f64> = r.table.iter().map(|row| row.upper).collect();
    ensure(r.table.iter().map(|row| row.n).eq(4..=16), || {
        "unexpected degree list".into()
    })?;
    for (k, w) in uppers.windows(2).enumerate() {
        ensure(w[1] < w[0], || format!("upper not decreasing at n = {}", k + 5))?;
    }
    let xs: Vec<f64> = (4..=16).map(|n| n as f64).collect();
    let ys: Vec<f64> = uppers.iter().map(|u| u.ln()).collect();
    let slope = ols_slope(&xs, &ys);
    ensure(slope <= -0.25, || format!("slope {slope}"))?;
    for n in 4..=16usize {
        let p = circle_fekete_polynomial(c(0.0, 0.0), 1.2, n).map_err(e)?;
        let checks = check_derivative_lower_bound(&p, 1.2);
        ensure(checks.iter().all(|ch| ch.pass), || {
            format!("derivative check fails at n = {n}")
        })?;
        // |p'(z_k)| = n 1.2^{n-1} exactly
        let expected = n as f64 * 1.2f64.powi(n as i32 - 1);
        for ch in &checks {
            ensure((ch.derivative - expected).abs() <= 1e-9 * expected, || {
                format!("n = {n}: derivative {} vs {expected}", ch.derivative)
            })?;
        }
    }
    ensure(r.status == ClaimStatus::Pass, || format!("claim status {:?}", r.status))?;
    Ok(format!("slope {slope:.4} (prediction {:.4})", -2.0 * 1.2f64.ln()))
}

fn ac5_example_2_1() -> Outcome {
    let mut notes = Vec::new();
    for (j, t, l_max) in [(2.0, 0.5, 4usize), (4.0, 0.5, 4), (9.0, 0.9, 3)] {
        let r = verify_example_2_1(j, t, l_max, 10).map_err(e)?;
        let cap_err = r.numbers["capacity_error"];
        ensure(cap_err <= 1e-12, || format!("j = {j}: capacity error {cap_err:e}"))?;
        for l in 1..=l_max {
            for n in [2 * l, 2 * l + 1] {
                ensure(r.numbers[&format!("contained_n{n}")] == 1.0, || {
                    format!("j = {j}, n = {n}: containment not certified")
                })?;
            }
        }
        let bound = 2.0 * PI / j;
        ensure(r.table.iter().all(|row| row.upper <= bound), || {
            format!("j = {j}: area above 2 pi / j")
        })?;
        ensure(r.status == ClaimStatus::Pass, || {
            format!("j = {j}: status {:?}", r.status)
        })?;
        notes.push(format!("j={j}: max upper {:.4} <= {bound:.4}", r.numbers["max_upper"]));
    }
    Ok(notes.join("; "))
}

/// Distance from `z` to `[p, q] U [-q, -p]` on the real line.
fn distance_to_pair(z: ComplexPoint, p: f64, q: f64) -> f64 {
    let x = z.re.abs().clamp(p, q);
    c(z.re.abs() - x, z.im).norm()
}

fn ac6_crane() -> Outcome {
    let a = 4.0f64;
    let q = [c(-a, 0.0), c(0.0, 0.0), c(1.0, 0.0)];
    let opts = AreaOptions::depth(12);
    let mut notes = Vec::new();
    for n in [2usize, 4, 8] {
        let composed = compose_with_chebyshev(n, &q, &FiberSolveConfig::default()).map_err(e)?;
        ensure(composed.degree() == 2 * n, || {
            format!("n = {n}: degree {}", composed.degree())
        })?;
        let worst = composed
            .roots()
            .iter()
            .map(|&z| distance_to_pair(z, (a - 2.0).sqrt(), (a + 2.0).sqrt()))
            .fold(0.0, f64::max);
        ensure(worst <= 1e-9, || format!("n = {n}: root off the set by {worst:e}"))?;
        let inner = certified_area(&monic_chebyshev(n).map_err(e)?, &opts).map_err(e)?;
        let outer = certified_area(&composed, &opts).map_err(e)?;
        let bound = crane_bound(inner.upper, 2);
        ensure(outer.upper <= bound, || format!("n = {n}: {} > {bound}", outer.upper))?;
        notes.push(format!("n={n}: {:.4} <= {bound:.4}", outer.upper));
    }
    let r = verify_crane_composition(a, &[2, 4, 8], 12).map_err(e)?;
    ensure(r.status == ClaimStatus::Pass, || format!("claim status {:?}", r.status))?;
    Ok(notes.join("; "))
}

fn ac7_lemma_ball() -> Outcome {
    for n in [2usize, 3, 4] {
        let p = monic_chebyshev(n).map_err(e)?;
        let s = components(&p, &AreaOptions::at_level(1.5, 10)).map_err(e)?;
        ensure(
            s.count_range == (n, n) && s.components.iter().all(|ci| ci.certified_disjoint),
            || format!("n = {n}: separation at level 3/2 not certified: {:?}", s.count_range),
        )?;
        for k in 0..n {
            let (_, radius) = component_ball_bound(&p, k, 1.5).map_err(e)?;
            let expected = 9.0 / derivative_magnitude_at_zero(n, k + 1).map_err(e)?;
            ensure((radius - expected).abs() <= 1e-12 * expected, || {
                format!("n = {n}, k = {k}: radius {radius}")
            })?;
        }
    }
    let r = verify_lemma_ball(&[2, 3, 4], 1.5, 10).map_err(e)?;
    ensure(r.status == ClaimStatus::Pass, || {
        format!("claim status {:?}: {:?}", r.status, r.numbers)
    })?;
    let worst = ["n2", "n3", "n4"]
        .iter()
        .map(|k| r.numbers[&format!("max_distance_over_radius_{k}")])
        .fold(0.0, f64::max);
    Ok(format!("farthest inside cell at {worst:.3} of the ball radius"))
}

fn ac8_fekete_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut min_margin = f64::INFINITY;
    for trial in 0..20u64 {
        let circle = trial % 2 == 1;
        let m = rng.gen_range(8..=64usize);
        let n = rng.gen_range(2..=5usize);
        let (model, candidates): (_, Vec<ComplexPoint>) = if circle {
            let pts = (0..m).map(|_| ComplexPoint::from_polar(1.0, rng.gen_range(0.0..std::f64::consts::TAU)));
            (
                CompactSetModel::Circle {
                    center: c(0.0, 0.0),
                    radius: 1.0,
                },
                pts.collect(),
            )
        } else {
            let pts = (0..m).map(|_| c(rng.gen_range(-2.0..=2.0), 0.0));
            (CompactSetModel::Interval { a: -2.0, b: 2.0 }, pts.collect())
        };
        let (_, oracle) = brute_force_fekete_oracle(&candidates, n).map_err(e)?;
        let cfg = FeketeConfig {
            seed: trial,
            ..Default::default()
        };
        let found = fekete_points_with_candidates(&model, n, &candidates, &cfg).map_err(e)?;
        let margin = found.energy - oracle;
        min_margin = min_margin.min(margin);
        ensure(margin >= -1e-9, || {
            format!("trial {trial}: energy {} < oracle {oracle}", found.energy)
        })?;
    }
    Ok(format!("smallest margin over oracle {min_margin:.3e}"))
}

fn ac9_remark_lower_bound() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut worst_ratio = f64::INFINITY;
    for trial in 0..10 {
        let n = 2 + trial % 2;
        let d: f64 = rng.gen_range(2.2..=4.0);
        let theta: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let base = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let dir = ComplexPoint::from_polar(1.0, theta);
        let mut roots = vec![base, base + dir * d];
        if n == 3 {
            // inside the disk on the diameter, so no pair is farther than d
            let mid = base + dir * (d / 2.0);
            roots.push(mid + ComplexPoint::from_polar(rng.gen_range(0.0..d / 2.0), rng.gen_range(0.0..6.3)));
        }
        let p = MonicPolynomial::new(roots).map_err(e)?;
        let d = d.max(p.root_diameter());
        let (center, radius) = inclusion_ball(&p, d)
            .map_err(e)?
            .ok_or_else(|| format!("trial {trial}: validity inequality fails for d = {d}"))?;
        let expected = d.powi(-n);
        ensure(
            center == p.roots()[0] && (radius - expected).abs() <= 1e-12 * expected,
            || format!("trial {trial}: ball radius {radius}, expected {expected}"),
        )?;
        let cert = certified_area(&p, &AreaOptions::depth(10)).map_err(e)?;
        let target = PI / d.powi(2 * n);
        worst_ratio = worst_ratio.min(cert.lower / target);
        ensure(cert.lower >= 0.9 * target, || {
            format!("trial {trial}: lower {} < 0.9 * {target}", cert.lower)
        })?;
    }
    Ok(format!("min lower / (pi d^-2n) = {worst_ratio:.3}"))
}

fn ac10_non_decay_contrast() -> Outcome {
    let opts = AreaOptions::depth(11);
    let origin = c(0.0, 0.0);
    let mut min_lower = f64::INFINITY;
    for n in [2usize, 4, 8, 16] {
        let cert = certified_area(&circle_fekete_polynomial(origin, 1.0, n).map_err(e)?, &opts).map_err(e)?;
        min_lower = min_lower.min(cert.lower);
        ensure(cert.lower >= 0.5, || format!("z^{n} - 1: lower {}", cert.lower))?;
    }
    let mut max_upper: f64 = 0.0;
    for n in 6..=16usize {
        let cert = certified_area(&circle_fekete_polynomial(origin, 1.2, n).map_err(e)?, &opts).map_err(e)?;
        max_upper = max_upper.max(cert.upper);
        ensure(cert.upper < 0.5, || format!("z^{n} - 1.2^{n}: upper {}", cert.upper))?;
    }
    Ok(format!(
        "unit circle min lower {min_lower:.4}; radius 1.2 max upper {max_upper:.4}"
    ))
}

fn random_polynomial(rng: &mut ChaCha8Rng) -> MonicPolynomial {
    let n = rng.gen_range(1..=6);
    let roots = (0..n)
        .map(|_| c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)))
        .collect();
    MonicPolynomial::new(roots).unwrap()
}

fn ac11_property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    // soundness against Monte Carlo
    for i in 0..500u64 {
        let p = random_polynomial(&mut rng);
        let cert = certified_area(&p, &AreaOptions::depth(8)).map_err(e)?;
        let mc = monte_carlo_area(&p, 1.0, 20_000, i).map_err(e)?;
        ensure(mc.overlaps(cert.lower, cert.upper, 2.0), || {
            format!(
                "poly {i}: MC {} +- {} vs [{}, {}]",
                mc.estimate, mc.half_width, cert.lower, cert.upper
            )
        })?;
    }
    // monotone in depth, components bounded by the degree
    for i in 0..60 {
        let p = random_polynomial(&mut rng);
        let certs: Vec<_> = [5u32, 7, 9]
            .iter()
            .map(|&d| certified_area(&p, &AreaOptions::depth(d)))
            .collect::<Result<_, _>>()
            .map_err(e)?;
        for w in certs.windows(2) {
            ensure(w[1].lower >= w[0].lower && w[1].upper <= w[0].upper, || {
                format!("poly {i}: depth widened")
            })?;
        }
        let s = components(&p, &AreaOptions::depth(8)).map_err(e)?;
        ensure(s.component_count <= p.degree() && s.count_range.1 <= p.degree(), || {
            format!("poly {i}: {:?} components for degree {}", s.count_range, p.degree())
        })?;
    }
    // byte-identical reruns through the command line
    for args in [
        vec!["area", "--chebyshev", "6", "--depth", "10"],
        vec!["components", "--roots", "1,1;-1,0.5;0,-1", "--depth", "9"],
        vec!["sweep", "--family", "circle", "--n", "4,6", "--depth", "9", "--csv"],
        vec!["render", "--chebyshev", "4", "--depth", "7", "--disk", "0,0,2.5"],
        vec![
            "fekete",
            "--set",
            r#"{"kind":"disk","radius":1}"#,
            "-n",
            "5",
            "--seed",
            "3",
        ],
    ] {
        let run = || {
            let (mut out, mut err) = (Vec::new(), Vec::new());
            let code = lemni::cli::parse_and_dispatch(
                std::iter::once("lemni").chain(args.iter().copied()),
                &mut out,
                &mut err,
            );
            (code, out)
        };
        let (a, b) = (run(), run());
        ensure(a.0 == 0 && !a.1.is_empty(), || format!("{args:?}: exit {}", a.0))?;
        ensure(a == b, || format!("{args:?}: reruns differ"))?;
    }
    Ok("500 MC soundness, 60 depth/components, 5 CLI determinism cases".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AC1 chebyshev identity", ac1_chebyshev_identity, Duration::from_secs(1)),
        ("AC2 disk sanity", ac2_disk_sanity, Duration::from_secs(5)),
        (
            "AC3 chebyshev sandwich",
            ac3_chebyshev_sandwich,
            Duration::from_secs(120),
        ),
        ("AC4 exponential decay", ac4_exponential_decay, Duration::from_secs(180)),
        ("AC5 two-interval example", ac5_example_2_1, Duration::from_secs(180)),
        ("AC6 crane composition", ac6_crane, Duration::from_secs(120)),
        ("AC7 component ball", ac7_lemma_ball, Duration::from_secs(60)),
        ("AC8 fekete oracle", ac8_fekete_oracle, Duration::from_secs(60)),
        (
            "AC9 remark lower bound",
            ac9_remark_lower_bound,
            Duration::from_secs(120),
        ),
        (
            "AC10 non-decay contrast",
            ac10_non_decay_contrast,
            Duration::from_secs(120),
        ),
        ("AC11 property suites", ac11_property_suites, Duration::from_secs(300)),
    ];
    let mut failures = 0;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(note) if elapsed > limit => Err(format!("{note}; took {elapsed:.2?}, limit {limit:?}")),
            other => other,
        };
        match outcome {
            Ok(note) => println!("PASS {name} ({elapsed:.2?}): {note}"),
            Err(why) => {
                failures += 1;
                println!("FAIL {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", 11 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
