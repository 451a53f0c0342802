//! Acceptance criteria, one test each. Every test writes a single
//! `[criterion N] PASS|FAIL ...` line to stderr before asserting; the line
//! bypasses output capture so it shows up in a plain `cargo test` run.

use std::io::Write;
use std::time::{Duration, Instant};

use cyb_core::chow::{closed_form_intersections, reduce, Base, BundleSpec, FormalPoly};
use cyb_core::cohomology::SplitBundle;
use cyb_core::discriminant::{
    base_locus_expected, build_discriminant, gradient_by_identity, sample_section,
    scaling_law_check, singularity_witness, Lcg, WitnessVerdict,
};
use cyb_core::exact::{int, ratio, Rational};
use cyb_core::invariants::{
    euler_characteristic_rank2_p3, fiber_count, gamma, invariants, picard_number, sym2_twist_c3,
    PicardHypotheses,
};
use cyb_core::kahler::{
    boundary_rays, classify_contraction_p1, degeneracy_determinant, h4_basis_determinant, h4_gram,
    rationality_analysis, verify_ky_squared, w_cubic, ContractionKind, CubicForm, Rationality,
};

const LIMIT_P3_INTERSECTIONS: Duration = Duration::from_secs(1);
const LIMIT_P1_FAMILY: Duration = Duration::from_secs(5);
const LIMIT_DISCRIMINANT: Duration = Duration::from_secs(30);
const SECTIONS_PER_SPEC: u64 = 50;
const PLANTED_CUBICS: usize = 100;

fn verdict(n: u32, title: &str, failures: &[String]) {
    let line = if failures.is_empty() {
        format!("[criterion {n:>2}] PASS {title}\n")
    } else {
        format!("[criterion {n:>2}] FAIL {title}: {}\n", failures.join("; "))
    };
    let _ = std::io::stderr().write_all(line.as_bytes());
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn p3(d: &[i64]) -> BundleSpec {
    BundleSpec::split(Base::P3, d).unwrap()
}

fn p1(d: &[i64]) -> BundleSpec {
    BundleSpec::split(Base::P1, d).unwrap()
}

/// `0 = a <= b <= max`, before any admissibility filter.
fn p3_family(max: i64) -> Vec<BundleSpec> {
    (0..=max).map(|b| p3(&[0, b])).collect()
}

/// All pairs `0 <= a <= b <= 8` with `b - a <= 4`, unnormalized.
fn p3_admissible_pairs() -> Vec<(i64, i64)> {
    (0..=8)
        .flat_map(|a| (a..=8).map(move |b| (a, b)))
        .filter(|(a, b)| b - a <= 4)
        .collect()
}

/// Normalized rank-4 tuples over `P^1` with entries at most `max`.
fn p1_family(max: i64) -> Vec<BundleSpec> {
    let mut out = Vec::new();
    for a1 in 0..=max {
        for a2 in a1..=max {
            for a3 in a2..=max {
                out.push(p1(&[0, a1, a2, a3]));
            }
        }
    }
    out
}

/// `h_k(degrees)`: push-forward of `xi^(r-1+k)` to the base.
fn complete_homogeneous(degrees: &[i64], k: usize) -> i64 {
    let mut h = vec![0i64; k + 1];
    h[0] = 1;
    for &a in degrees {
        for j in 1..=k {
            h[j] += a * h[j - 1];
        }
    }
    h[k]
}

fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_01_intersection_closed_forms() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for spec in p3_family(8) {
        let d = spec.split_degrees().unwrap().to_vec();
        let forms = closed_form_intersections(&spec);
        if forms.len() != 4 {
            failures.push(format!("{spec}: {} closed forms", forms.len()));
        }
        for t in forms {
            let ring = reduce(&spec, &FormalPoly::monomial(t.xi_pow, t.h_pow, int(1))).integrate();
            let segre = complete_homogeneous(&d, (t.xi_pow - 1) as usize);
            if ring != int(t.value) || segre != t.value {
                failures.push(format!(
                    "{spec} xi^{} H^{}: closed {} ring {} segre {segre}",
                    t.xi_pow, t.h_pow, t.value, ring
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_P3_INTERSECTIONS {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        1,
        "P^3 intersection numbers (0 <= b <= 8) match the Chow ring",
        &failures,
    );
}

#[test]
fn criterion_02_invariants_p3() {
    let mut failures = Vec::new();
    for (a, b) in p3_admissible_pairs() {
        let spec = p3(&[a, b]);
        match invariants(&spec) {
            Ok(inv) => {
                if inv.checks.len() != 8 || !inv.all_oracles_ok() {
                    failures.push(format!("({a},{b}) checks {:?}", inv.checks));
                }
            }
            Err(e) => failures.push(format!("({a},{b}): {e}")),
        }
    }
    let inv = invariants(&p3(&[0, 0])).unwrap();
    let got = (inv.c3_x, inv.h_dot_c2, inv.mk_dot_c2);
    if got != (-168, 44, 224) {
        failures.push(format!("(0,0) gave c3, h.c2, -K.c2 = {got:?}"));
    }
    verdict(
        2,
        "eight P^3 closed forms agree with the Chern class oracle",
        &failures,
    );
}

#[test]
fn criterion_03_euler_number_bound() {
    let mut failures = Vec::new();
    let values: Vec<(i64, i64)> = p3_admissible_pairs()
        .into_iter()
        .map(|(a, b)| {
            let s = p3(&[a, b]);
            (invariants(&s).unwrap().c3_x, gamma(&s).unwrap())
        })
        .collect();
    let min = values.iter().map(|v| v.0).min().unwrap();
    if min != -296 {
        failures.push(format!("min c3 = {min}"));
    }
    let at_min: Vec<_> = values.iter().filter(|v| v.0 == min).map(|v| v.1).collect();
    if at_min.iter().any(|&g| g != 16) || at_min.is_empty() {
        failures.push(format!("minimum attained at gamma {at_min:?}"));
    }
    verdict(
        3,
        "min c3 over the admissible family is -296, only at gamma = 16",
        &failures,
    );
}

#[test]
fn criterion_04_fiber_count_agreement() {
    let mut failures = Vec::new();
    for (a, b) in p3_admissible_pairs() {
        let spec = p3(&[a, b]);
        let g = (b - a) * (b - a);
        let closed = 64 - 4 * g;
        let c1 = a + b;
        let chern = sym2_twist_c3(c1, a * b, 4 - c1);
        let bezout = (a - b + 4) * 4 * (b - a + 4);
        let lib = fiber_count(&spec).map(|f| f.value);
        let locus = base_locus_expected(&spec);
        if chern != closed || bezout != closed || lib != Ok(closed) || locus != Ok(closed) {
            failures.push(format!(
                "({a},{b}): 64-4g {closed}, chern {chern}, bezout {bezout}, lib {lib:?}, locus {locus:?}"
            ));
        }
    }
    for (d, want) in [([0, 0], 64), ([0, 4], 0)] {
        let got = fiber_count(&p3(&d)).unwrap().value;
        if got != want {
            failures.push(format!("{d:?}: {got}"));
        }
    }
    verdict(
        4,
        "fiber count: 64 - 4 gamma = c3(S^2 E(4 - c1)) = Bezout",
        &failures,
    );
}

#[test]
fn criterion_05_invariants_p1() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let family: Vec<_> = p1_family(6).into_iter().filter(|s| s.c1() <= 3).collect();
    for spec in &family {
        let c1 = spec.c1();
        match invariants(spec) {
            Ok(inv) => {
                let got = (
                    inv.c3_x,
                    inv.h_dot_c2,
                    inv.mk_dot_c2,
                    inv.mk_cubed,
                    inv.mk_sq_h,
                    inv.xi_dot_c2,
                    inv.xi_cubed,
                );
                let want = (-168, 24, 224, Some(512), Some(64), 6 * c1 + 44, 3 * c1 + 2);
                if got != want || !inv.all_oracles_ok() {
                    failures.push(format!("{spec}: {got:?}"));
                }
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_P1_FAMILY {
        failures.push(format!("took {elapsed:?}"));
    }
    if family.len() != 7 {
        failures.push(format!("family has {} members", family.len()));
    }
    verdict(5, "P^1 invariants for every tuple with c1 <= 3", &failures);
}

#[test]
fn criterion_06_picard_criteria() {
    let mut failures = Vec::new();
    for spec in p1_family(6) {
        let rho = picard_number(&spec).unwrap().value;
        if (rho == 2) != (spec.c1() <= 3) {
            failures.push(format!("{spec}: rho {rho}"));
        }
    }
    let rho = picard_number(&p3(&[0, 4])).unwrap();
    if rho.value != 1 || rho.hypotheses != PicardHypotheses::Verified {
        failures.push(format!("(0,4): {rho:?}"));
    }
    for a in -8..=8 {
        for b in a..=8 {
            let h2 = SplitBundle::new(3, &[a, b])
                .unwrap()
                .end_bundle()
                .cohomology(2)
                .unwrap();
            if h2 != 0 {
                failures.push(format!("h2(End O({a})+O({b})) = {h2}"));
            }
        }
    }
    verdict(
        6,
        "rho = 2 iff c1 <= 3 over P^1; rho = 1 at (0,4); h2(End E) = 0",
        &failures,
    );
}

#[test]
fn criterion_07_euler_characteristic() {
    let mut failures = Vec::new();
    for a in 0..=8 {
        for b in a..=8 {
            let spec = BundleSpec::from_chern(Base::P3, a + b, a * b).unwrap();
            let rr = euler_characteristic_rank2_p3(&spec).unwrap();
            let direct = binomial(a + 3, 3) + binomial(b + 3, 3);
            if rr != int(direct) {
                failures.push(format!("({a},{b}): RR {rr} vs {direct}"));
            }
        }
    }
    let at =
        euler_characteristic_rank2_p3(&BundleSpec::from_chern(Base::P3, 4, 0).unwrap()).unwrap();
    if at != int(36) {
        failures.push(format!("(0,4): {at}"));
    }
    verdict(7, "Riemann-Roch chi(E) = C(a+3,3) + C(b+3,3)", &failures);
}

#[test]
fn criterion_08_determinants() {
    let mut failures = Vec::new();
    for c1 in -10..=10 {
        for c2 in -10..=10 {
            let spec = BundleSpec::from_chern(Base::P3, c1, c2).unwrap();
            let g = c1 * c1 - 4 * c2;
            let det = degeneracy_determinant(&spec).unwrap();
            let basis = h4_basis_determinant(&spec).unwrap();
            // Gram of (H^2, xi H): H^4 = 0, xi H^3 = 1, xi^2 H^2 = c1
            let gram = h4_gram(&spec);
            if det != 16 - g || basis != -1 || gram != [[int(0), int(1)], [int(1), int(c1)]] {
                failures.push(format!("c1={c1} c2={c2}: det {det}, basis {basis}"));
            }
        }
    }
    for spec in p1_family(6) {
        let basis = h4_basis_determinant(&spec).unwrap();
        if basis != -1 {
            failures.push(format!("{spec}: basis {basis}"));
        }
    }
    verdict(
        8,
        "degeneracy det = 16 - gamma, H^4 Gram det = -1",
        &failures,
    );
}

#[test]
fn criterion_09_cone_rationality() {
    let mut failures = Vec::new();
    for spec in p1_family(6) {
        let r = rationality_analysis(&w_cubic(&spec).unwrap()).unwrap();
        if r.verdict != Rationality::RationalDoubleLine {
            failures.push(format!("{spec}: {:?}", r.verdict));
        }
    }
    let mut rng = Lcg::new(20240607);
    let mut pick = |lo: i64, hi: i64| lo + rng.below((hi - lo + 1) as u64) as i64;
    for i in 0..PLANTED_CUBICS {
        // k (p x - q y)^2 (u x - v y): double line through (q, p)
        let (mut p, q) = (pick(-9, 9), pick(-9, 9));
        if p == 0 && q == 0 {
            p = 1;
        }
        let (mut u, v) = (pick(-9, 9), pick(-9, 9));
        if u == 0 && v == 0 {
            u = 1;
        }
        let k = pick(1, 5) * if i % 2 == 0 { 1 } else { -1 };
        let w = CubicForm::from_ints(
            k * p * p * u,
            -k * (p * p * v + 2 * p * q * u),
            k * (q * q * u + 2 * p * q * v),
            -k * q * q * v,
        );
        let r = rationality_analysis(&w).unwrap();
        let hit = r.double_line.as_ref().is_some_and(|l| l.x * p == l.y * q);
        if r.verdict != Rationality::RationalDoubleLine || !hit {
            failures.push(format!("planted ({q},{p}) x ({v},{u}): {r:?}"));
        }
    }
    verdict(
        9,
        "double lines on every P^1 cubic and on 100 planted cubics",
        &failures,
    );
}

#[test]
fn criterion_10_classification_table() {
    let mut failures = Vec::new();
    for spec in p1_family(6).into_iter().filter(|s| s.c1() <= 3) {
        let d = spec.split_degrees().unwrap().to_vec();
        let rk = d.iter().filter(|&&a| a == 0).count();
        let expected = match (spec.c1(), rk) {
            (3, 3) => (ContractionKind::ExcludedByTheorem, None),
            (3, _) => (ContractionKind::DivisorToSurfaceP1xPk, None),
            (2, 2) => (ContractionKind::RuledOverPoints, Some(4)),
            (2, _) => (ContractionKind::RuledOverQuartic, None),
            (1, _) => (ContractionKind::SixteenCurvesQuinticImage, Some(16)),
            _ => (ContractionKind::SixtyFourCurves, Some(64)),
        };
        match classify_contraction_p1(&spec) {
            Ok(r) if (r.kind, r.counts) == expected && r.rk_trivial == rk => {}
            other => failures.push(format!("{spec}: {other:?}")),
        }
    }
    let quartic = classify_contraction_p1(&p1(&[0, 0, 0, 2])).unwrap();
    if quartic.extra.quartic_degree != Some(4) {
        failures.push(format!("quartic degree {:?}", quartic.extra.quartic_degree));
    }
    let ky = verify_ky_squared(&p1(&[0, 0, 0, 1]));
    if ky != Ok(-7) {
        failures.push(format!("K_Y^2 = {ky:?}"));
    }
    verdict(
        10,
        "second contraction table, counts 4 / 16 / 64, K_Y^2 = -7",
        &failures,
    );
}

#[test]
fn criterion_11_discriminant() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut rng = Lcg::new(11);
    for gap in 0..=4 {
        let spec = p3(&[0, gap]);
        for seed in 0..SECTIONS_PER_SPEC {
            let q = sample_section(&spec, seed, 3).unwrap();
            let delta = build_discriminant(&q);
            if !delta.poly().is_homogeneous_of(8)
                || delta.poly().homogeneous_degree().is_some_and(|d| d != 8)
            {
                failures.push(format!("gap {gap} seed {seed}: not an octic"));
            }
            let r = ratio(rng.below(13) as i64 - 6, 1 + rng.below(5) as i64);
            if !scaling_law_check(&q, &r) {
                failures.push(format!("gap {gap} seed {seed}: scaling by {r}"));
            }
            if delta.poly().gradient() != gradient_by_identity(&q) {
                failures.push(format!("gap {gap} seed {seed}: gradient identity"));
            }
            let point: [Rational; 4] = [0; 4].map(|_| int(rng.below(7) as i64 - 3));
            let point = if point.iter().all(|c| *c == int(0)) {
                [int(1), int(0), int(0), int(0)]
            } else {
                point
            };
            let witness = q
                .vanishing_at(&point)
                .and_then(|w| singularity_witness(&w, &point));
            match witness {
                Ok(w) if w.verdict == WitnessVerdict::SingularPoint => {}
                other => failures.push(format!("gap {gap} seed {seed}: witness {other:?}")),
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_DISCRIMINANT {
        failures.push(format!("took {elapsed:?}"));
    }
    verdict(
        11,
        "octic degree, scaling law, gradient identity, singular base points",
        &failures,
    );
}

#[test]
fn criterion_12_c2_positivity() {
    let mut failures = Vec::new();
    let rho_two_p3 = p3_family(4)
        .into_iter()
        .filter(|s| picard_number(s).unwrap().value == 2);
    let rho_two_p1 = p1_family(6).into_iter().filter(|s| s.c1() <= 3);
    for spec in rho_two_p3.chain(rho_two_p1) {
        match boundary_rays(&spec) {
            Ok(r) => {
                if r.c2_values.iter().any(|&v| v <= 0) {
                    failures.push(format!("{spec}: {:?}", r.c2_values));
                }
                if let Some(b) = r.c2_bound {
                    let g = gamma(&spec).unwrap();
                    if b.constant != 8 * g + 224 || b.slope != 44 || !b.dominates_floor {
                        failures.push(format!("{spec}: {b:?}"));
                    }
                    if (b.floor_constant, b.floor_slope) != (56, 44) {
                        failures.push(format!("{spec}: floor {b:?}"));
                    }
                } else if spec.base() == Base::P3 {
                    failures.push(format!("{spec}: no linear bound"));
                }
            }
            Err(e) => failures.push(format!("{spec}: {e}")),
        }
    }
    verdict(
        12,
        "c2 positive on both boundary rays; 8g + 224 + 44k >= 56 + 44k",
        &failures,
    );
}
