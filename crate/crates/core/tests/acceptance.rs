//! Acceptance gate. Each test evaluates one criterion at its stated
//! tolerance and writes a single PASS/FAIL line to stderr (unbuffered, so
//! the line shows even when the harness captures output).

use std::f64::consts::{PI, TAU};
use std::fmt::Display;
use std::io::Write;
use std::time::Instant;

use hstab::analyzer::{
    certificate_residual, classify, hyperbola_matrix_analysis, hyperbola_q_matrix, hyperbola_witness, q_integral,
    scaling_probe, spectral_criterion, wirtinger_bound, wirtinger_mode_check, ClassifyOptions, HyperbolaDirection,
    Label, ScalingPlan, Strategy, WirtingerBranch,
};
use hstab::catalog::{flat_chart_ids, lookup, make_torus, CatalogEntry, EntryKind, PlaneKind};
use hstab::commands::{tube_table, verify_paper, GridOverride, VerifyConfig};
use hstab::geometry::Sign;
use hstab::immersion::{
    check_h_minimal, check_lagrangian, induced_geometry, sample_grid, trisymmetry_residual, AxisDomain, OracleKind,
};
use hstab::jet::UJet;
use hstab::quadrature::{integrate, GridSpec};
use hstab::testfn::{random, TestFunction};
use hstab::variation::{
    bochner_residual, reilly_residual, second_variation, second_variation_raw, ConstantMetric, MainTheoremFunctional,
    QuadraticFunctional,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(criterion: u32, title: &str, ok: bool, detail: impl Display) {
    let line = format!(
        "[acceptance {criterion:>2}] {} {title}: {detail}\n",
        if ok { "PASS" } else { "FAIL" }
    );
    let _ = std::io::stderr().write_all(line.as_bytes());
}

fn grid(n: usize) -> GridSpec {
    GridSpec::default_for(n)
}

/// `(Vol/2)[(Σε_j m_j²)² + (Σε_j m_j/r_j)² − 2Σ m_j²/r_j²]` with `m_j = k_j/r_j`
/// and the first `p` signs negative.
fn torus_mode_oracle(radii: &[f64], p: usize, k: &[i64]) -> f64 {
    let vol: f64 = radii.iter().map(|r| TAU * r).product();
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    for (j, (&r, &kj)) in radii.iter().zip(k).enumerate() {
        let e = if j < p { -1.0 } else { 1.0 };
        let m = kj as f64 / r;
        a += e * m * m;
        b += e * m / r;
        c += m * m / (r * r);
    }
    vol / 2.0 * (a * a + b * b - 2.0 * c)
}

fn mode_from_label(label: &str) -> Vec<i64> {
    label
        .strip_prefix("fourier:k=")
        .expect("torus witnesses are Fourier modes")
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect()
}

#[test]
fn acceptance_01_torus_single_axis_modes() {
    let all = [1.0, 2.0, 3.0];
    let mut worst = 0.0f64;
    for n in 1..=3 {
        let radii = &all[..n];
        for p in 0..=n {
            let f = MainTheoremFunctional::new(make_torus(radii, p).unwrap());
            for k in [2i64, 3] {
                let mut mode = vec![0; n];
                mode[0] = k;
                let u = TestFunction::fourier_mode(f.domains(), &mode).unwrap();
                let got = second_variation(&f, &u, &grid(n)).unwrap();
                let kf = k as f64;
                let want = radii[1..].iter().map(|r| TAU * r).product::<f64>() * PI * (kf.powi(4) - kf * kf)
                    / radii[0].powi(3);
                worst = worst.max((got - want).abs() / want.abs());
            }
        }
    }
    let ok = worst <= 1e-9;
    report(1, "torus single-axis modes", ok, format!("max rel err {worst:.3e} (tol 1e-9)"));
    assert!(ok, "max relative error {worst:e}");
}

#[test]
fn acceptance_02_torus_wave_direction() {
    let f = MainTheoremFunctional::new(make_torus(&[1.0, 1.0], 1).unwrap());
    let u = TestFunction::fourier_mode(f.domains(), &[1, -1]).unwrap();
    let g = grid(2);
    let value = second_variation(&f, &u, &g).unwrap();
    let boxes = u.support_boxes(f.domains()).unwrap();
    let lap_term = integrate(
        |s| {
            let t = f.terms(s, &u.jet(s))?;
            Ok(t.eps * t.laplacian * t.laplacian * t.vol)
        },
        f.domains(),
        &boxes,
        &g,
    )
    .unwrap();
    let want = -8.0 * PI * PI;
    let ok = (value - want).abs() <= 1e-9 && lap_term.abs() <= 1e-10;
    report(
        2,
        "torus wave direction cos(s1 - s2)",
        ok,
        format!("value {value:.12e} vs {want:.12e} (tol 1e-9), Laplacian term {lap_term:.3e} (tol 1e-10)"),
    );
    assert!(lap_term.abs() <= 1e-10, "Laplacian term {lap_term:e}");
    assert!((value - want).abs() <= 1e-9, "δ²V(cos(s1 − s2)) = {value:e}, expected {want:e}");
}

#[test]
fn acceptance_03_indefinite_tori() {
    let mut ids: Vec<String> = flat_chart_ids()
        .into_iter()
        .filter(|id| id.starts_with("torus:"))
        .map(String::from)
        .collect();
    ids.extend(
        [
            "torus:n=2,r=1,3,p=1",
            "torus:n=3,r=1,1,1,p=1",
            "torus:n=3,r=1,1,1,p=2",
            "torus:n=4,r=1,2,3,4,p=1",
            "torus:n=4,r=1,2,3,4,p=3",
        ]
        .map(String::from),
    );
    let mut checked = 0;
    let mut failures = Vec::new();
    for id in &ids {
        let entry = lookup(id).unwrap();
        let EntryKind::Torus { radii, p } = entry.kind.clone() else { unreachable!() };
        let n = radii.len();
        if n < 2 || p == 0 || p >= n {
            continue;
        }
        checked += 1;
        let v = classify(entry.functional.as_ref(), Strategy::FourierSweep, &ClassifyOptions::default()).unwrap();
        if v.label != Label::Indefinite {
            failures.push(format!("{id}: {}", v.label));
            continue;
        }
        let chart = entry.chart.as_ref().unwrap();
        for (w, sign) in [(v.witness_pos.as_ref().unwrap(), 1.0), (v.witness_neg.as_ref().unwrap(), -1.0)] {
            let oracle = torus_mode_oracle(&radii, p, &mode_from_label(&w.probe_id));
            let slow = second_variation_raw(chart, w.probe.as_ref().unwrap(), &grid(n)).unwrap();
            if oracle * sign <= 0.0 || slow * sign <= 0.0 || (w.value - oracle).abs() > 1e-9 * oracle.abs() {
                failures.push(format!("{id}: {} = {} (closed form {oracle}, slow path {slow})", w.probe_id, w.value));
            }
        }
    }
    let ok = failures.is_empty();
    report(3, "tori with 0 < p < n are indefinite", ok, format!("{checked} tori, failures {failures:?}"));
    assert!(ok, "{failures:?}");
}

/// `−(Σ ε_j u_jj)² − Q(du)` on a hyperbola product.
fn hyperbola_density_oracle(radii: &[f64], branches: &[Sign], u: &UJet) -> f64 {
    let n = radii.len();
    let lap: f64 = (0..n).map(|j| branches[j].value() * u.d2[j][j]).sum();
    let mut q = 0.0;
    for j in 0..n {
        q += u.d1[j] * u.d1[j] / (radii[j] * radii[j]);
        for k in j + 1..n {
            q -= 2.0 * branches[j].value() * branches[k].value() * u.d1[j] * u.d1[k] / (radii[j] * radii[k]);
        }
    }
    -lap * lap - q
}

fn random_jet(rng: &mut ChaCha8Rng, n: usize) -> UJet {
    let mut u = UJet::zero(n);
    for i in 0..n {
        u.d1[i] = rng.random_range(-1.0..1.0);
        for j in 0..=i {
            let x = rng.random_range(-1.0..1.0);
            u.d2[i][j] = x;
            u.d2[j][i] = x;
        }
    }
    u
}

fn hyperbola_parts(entry: &CatalogEntry) -> (Vec<f64>, Vec<Sign>) {
    match &entry.kind {
        EntryKind::Hyperbola { radii, branches } => (radii.clone(), branches.clone()),
        _ => unreachable!(),
    }
}

#[test]
fn acceptance_04_hyperbola_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut failures = Vec::new();
    let mut worst_residual = 0.0f64;
    for id in [
        "hyperbola:n=1,r=1,eps=+",
        "hyperbola:n=1,r=2,eps=-",
        "hyperbola:n=2,r=1,3,eps=+,+",
        "hyperbola:n=2,r=1,3,eps=+,-",
        "hyperbola:n=2,r=0.5,0.5,eps=-,-",
    ] {
        let entry = lookup(id).unwrap();
        let (radii, branches) = hyperbola_parts(&entry);
        let f = entry.functional.as_ref();
        let v = classify(f, Strategy::SosCertificate, &ClassifyOptions::default()).unwrap();
        if v.label != Label::NegativeDefinite || v.certificate.is_none() {
            failures.push(format!("{id}: {}", v.label));
        }
        let (residual, _) = certificate_residual(f, 0).unwrap().expect("certificate");
        worst_residual = worst_residual.max(residual);
        for s in sample_grid(f.domains(), 17) {
            let u = random_jet(&mut rng, radii.len());
            let gap = (f.density(&s, &u).unwrap() - hyperbola_density_oracle(&radii, &branches, &u)).abs();
            worst_residual = worst_residual.max(gap);
        }
    }
    for id in ["hyperbola:n=3,r=1,1,1,eps=+,+,+", "hyperbola:n=4,r=1,2,1,2,eps=+,-,+,-"] {
        let entry = lookup(id).unwrap();
        let (radii, branches) = hyperbola_parts(&entry);
        let n = radii.len() as f64;
        let a = hyperbola_matrix_analysis(&radii, &branches).unwrap();
        if (a.w_value - (2.0 * n - n * n)).abs() > 1e-12 * n * n {
            failures.push(format!("{id}: wᵀM_Qw = {}", a.w_value));
        }
        if (a.e1_value - 1.0 / (radii[0] * radii[0])).abs() > 1e-12 {
            failures.push(format!("{id}: e1ᵀM_Qe1 = {}", a.e1_value));
        }
        let domains = entry.functional.domains().to_vec();
        let g = grid(radii.len());
        let qw = q_integral(&radii, &branches, &hyperbola_witness(&radii, &branches, HyperbolaDirection::W).unwrap(), &domains, &g).unwrap();
        let qe = q_integral(&radii, &branches, &hyperbola_witness(&radii, &branches, HyperbolaDirection::E1).unwrap(), &domains, &g).unwrap();
        if !(qw < 0.0 && qe > 0.0) {
            failures.push(format!("{id}: ∫Q along w {qw}, along e1 {qe}"));
        }
        let opts = ClassifyOptions {
            scaling: entry.scaling.clone(),
            ..ClassifyOptions::default()
        };
        let v = classify(entry.functional.as_ref(), Strategy::ScalingProbe, &opts).unwrap();
        if v.label != Label::Indefinite || !v.is_consistent() {
            failures.push(format!("{id}: {}", v.label));
        }
        for w in v.witnesses() {
            if !w.probe_id.starts_with("gauss(w-direction)") {
                failures.push(format!("{id}: witness {} is not along w", w.probe_id));
            }
        }
    }
    let ok = failures.is_empty() && worst_residual <= 1e-10;
    report(
        4,
        "hyperbola products",
        ok,
        format!("certificate residual {worst_residual:.3e} (tol 1e-10), failures {failures:?}"),
    );
    assert!(ok, "residual {worst_residual:e}, {failures:?}");
}

#[test]
fn acceptance_05_q_matrix_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = rng.random_range(2..=4usize);
        let radii: Vec<f64> = (0..n).map(|_| rng.random_range(0.3..3.0)).collect();
        let eps: Vec<f64> = (0..n).map(|_| if rng.random_bool(0.5) { 1.0 } else { -1.0 }).collect();
        let branches: Vec<Sign> = eps.iter().map(|&e| Sign::of(e)).collect();
        let w: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
        let m = hyperbola_q_matrix(&radii, &branches).unwrap();
        let quad: f64 = (0..n).map(|i| (0..n).map(|j| w[i] * m[i][j] * w[j]).sum::<f64>()).sum();
        // brute-force expansion of Σ w_j²/r_j² − 2Σ_{j<k} ε_jε_k w_jw_k/(r_jr_k)
        let mut terms = Vec::new();
        for j in 0..n {
            terms.push(w[j] * w[j] / (radii[j] * radii[j]));
            for k in j + 1..n {
                terms.push(-2.0 * eps[j] * eps[k] * w[j] * w[k] / (radii[j] * radii[k]));
            }
        }
        let direct: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        worst = worst.max((quad - direct).abs() / scale);
    }
    let a = hyperbola_matrix_analysis(&[1.0; 3], &[Sign::Plus; 3]).unwrap();
    let eig_ok = a.eigenvalues.iter().zip([-1.0, 2.0, 2.0]).all(|(x, y)| (x - y).abs() <= 1e-12);
    let inertia_ok = (a.inertia.positive, a.inertia.negative) == (2, 1);
    let ok = worst <= 1e-12 && eig_ok && inertia_ok;
    report(
        5,
        "M_Q oracle equivalence",
        ok,
        format!(
            "max rel err {worst:.3e} (tol 1e-12), inertia ({},{}), eigenvalues {:?}",
            a.inertia.positive, a.inertia.negative, a.eigenvalues
        ),
    );
    assert!(ok);
}

#[test]
fn acceptance_06_bochner_and_reilly() {
    let metrics = [
        ConstantMetric::diag(&[1.0, 1.0]),
        ConstantMetric::diag(&[2.0, 0.5]),
        ConstantMetric::diag(&[-1.0, 1.0]),
        ConstantMetric::diag(&[1.0, -3.0]),
    ];
    let torus = [AxisDomain::circle(TAU).unwrap(), AxisDomain::circle(TAU).unwrap()];
    let plane = [AxisDomain::line(50.0).unwrap(), AxisDomain::line(50.0).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut reilly, mut bochner) = (0.0f64, 0.0f64);
    for i in 0..20 {
        let m = &metrics[i % metrics.len()];
        let (domains, u) = if i % 2 == 0 {
            (&torus, random::trig_polynomial(&mut rng, &torus, 3, 4).unwrap())
        } else {
            (&plane, random::bump_sum(&mut rng, &plane, 3).unwrap())
        };
        reilly = reilly.max(reilly_residual(&u, m, domains, &grid(2)).unwrap().abs());
        for s in sample_grid(domains, 3) {
            bochner = bochner.max(bochner_residual(&u, m, &s).unwrap().abs());
        }
    }
    let ok = reilly <= 1e-9 && bochner <= 1e-5;
    report(
        6,
        "Reilly and Bochner residuals",
        ok,
        format!("Reilly {reilly:.3e} (tol 1e-9), Bochner {bochner:.3e} (tol 1e-5)"),
    );
    assert!(ok);
}

#[test]
fn acceptance_07_ricci_flat_planes() {
    // (id, ε, diagonal of the induced metric)
    let cases: [(&str, f64, [f64; 2]); 4] = [
        ("plane:kind=C,n=2,p=0", 1.0, [1.0, 1.0]),
        ("plane:kind=C,n=2,p=1", 1.0, [-1.0, 1.0]),
        ("plane:kind=C,n=2,p=2", 1.0, [-1.0, -1.0]),
        ("plane:kind=D,n=2", -1.0, [1.0, 1.0]),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = grid(2);
    let mut worst = 0.0f64;
    let mut sign_ok = true;
    for (id, eps, metric) in cases {
        let entry = lookup(id).unwrap();
        assert!(matches!(entry.kind, EntryKind::Plane { kind, .. } if (kind == PlaneKind::Para) == (eps < 0.0)));
        let f = entry.functional.as_ref();
        for _ in 0..10 {
            let u = random::bump_sum(&mut rng, f.domains(), 3).unwrap();
            let got = second_variation(f, &u, &g).unwrap();
            let boxes = u.support_boxes(f.domains()).unwrap();
            let want = integrate(
                |s| {
                    let j = u.jet(s);
                    let lap = j.d2[0][0] / metric[0] + j.d2[1][1] / metric[1];
                    Ok(eps * lap * lap)
                },
                f.domains(),
                &boxes,
                &g,
            )
            .unwrap();
            worst = worst.max((got - want).abs() / want.abs().max(1.0));
            sign_ok &= got * eps >= 0.0;
        }
    }
    let ok = worst <= 1e-10 && sign_ok;
    report(
        7,
        "Ricci-flat planes",
        ok,
        format!("max err {worst:.3e} (tol 1e-10), signs follow ε: {sign_ok}"),
    );
    assert!(ok);
}

#[test]
fn acceptance_08_sphere_tube_spectral() {
    let report_ = spectral_criterion(&[1.0, 1.0], 2.0).unwrap();
    let entry = lookup("tube:S3:closed:G").unwrap();
    let f = entry.functional.as_ref();
    let g = grid(2);
    let mut worst = 0.0f64;
    for k in 1..=5i64 {
        let u = TestFunction::fourier_mode(f.domains(), &[k, 0]).unwrap();
        let kk = (k * k) as f64;
        worst = worst.max((second_variation(f, &u, &g).unwrap() - 2.0 * PI * PI * kk * (kk - 2.0)).abs());
    }
    let diagonal = second_variation(f, &TestFunction::fourier_mode(f.domains(), &[1, 1]).unwrap(), &g).unwrap();
    let v = classify(f, Strategy::SpectralCriterion, &ClassifyOptions::default()).unwrap();
    let neg = v.witness_neg.as_ref().map(|w| w.probe_id.clone());
    let ok = (report_.lambda1 - 1.0).abs() < 1e-15
        && !report_.stable
        && worst <= 1e-9
        && diagonal.abs() <= 1e-9
        && v.label == Label::Indefinite
        && neg.as_deref() == Some("fourier:k=1,0");
    report(
        8,
        "sphere tube spectral criterion",
        ok,
        format!(
            "λ1 = {}, max err {worst:.3e} (tol 1e-9), cos(s+t) → {diagonal:.3e}, negative witness {neg:?}",
            report_.lambda1
        ),
    );
    assert!(ok);
}

/// Published (G, G′) stability by `(ε₁, ε₂, ε₃, ε₄)`.
const PUBLISHED: [([i8; 4], bool, bool); 8] = [
    ([1, 1, 1, 1], false, true),
    ([1, 1, -1, -1], false, false),
    ([1, -1, 1, -1], false, false),
    ([-1, 1, -1, 1], false, false),
    ([1, -1, -1, 1], false, true),
    ([-1, 1, 1, -1], true, false),
    ([-1, -1, -1, -1], true, false),
    ([-1, -1, 1, 1], false, false),
];

fn stability(stable: bool) -> &'static str {
    if stable {
        "stable"
    } else {
        "unstable"
    }
}

#[test]
fn acceptance_09_tube_table() {
    let start = Instant::now();
    let table = tube_table(&GridOverride::default(), 0).unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let mut mismatches = Vec::new();
    for (eps, g, gp) in PUBLISHED {
        let row = table.rows.iter().find(|r| r.eps == eps).expect("row present");
        for (cell, want) in [(&row.g, g), (&row.g_prime, gp)] {
            let provenance = if cell.label.is_definite() {
                cell.certificate.is_some()
            } else {
                cell.probes.len() == 2
            };
            if cell.computed != stability(want) || !provenance {
                mismatches.push(format!("{}: {}", cell.catalog_id, cell.computed));
            }
        }
    }
    let ok = table.rows.len() == 8 && mismatches.is_empty() && elapsed <= 10.0;
    report(9, "geodesic-tube table", ok, format!("mismatches {mismatches:?}, {elapsed:.2} s (limit 10 s)"));
    assert!(ok);
}

#[test]
fn acceptance_10_tangent_bundle() {
    let sos = lookup("tn:kappa=0,K=-1").unwrap();
    let v = classify(sos.functional.as_ref(), Strategy::SosCertificate, &ClassifyOptions::default()).unwrap();
    let a_ok = v.label == Label::PositiveDefinite;

    let circle = lookup("tn:circle:R=1").unwrap();
    let EntryKind::Bundle { curve } = &circle.kind else { unreachable!() };
    let bound = wirtinger_bound(curve).unwrap();
    let checks = wirtinger_mode_check(curve, &grid(2)).unwrap();
    let margin = checks
        .iter()
        .map(|c| (c.lhs - c.rhs) / c.rhs.abs().max(1.0))
        .fold(f64::INFINITY, f64::min);
    let b_ok = bound.stable
        && bound.branch == Some(WirtingerBranch::Wirtinger)
        && (bound.threshold.unwrap() - 4.0).abs() < 1e-12
        && margin >= -1e-9;

    let open = lookup("tn:kappa=1,K=0").unwrap();
    let plan: ScalingPlan = open.scaling.clone().unwrap();
    let lo = plan.schedule.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = plan.schedule.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scan = scaling_probe(open.functional.as_ref(), &plan, &grid(2)).unwrap();
    let c_ok = lo >= 0.05 - 1e-12
        && hi <= 20.0 + 1e-12
        && scan.positive_witness().is_some()
        && scan.negative_witness().is_some();

    let ok = a_ok && b_ok && c_ok;
    report(
        10,
        "tangent bundle",
        ok,
        format!(
            "(a) {} (b) {} with min margin {margin:.3e} over {} probes (c) sign changes {:?}",
            v.label,
            if bound.stable { "stable" } else { "inconclusive" },
            checks.len(),
            scan.sign_changes
        ),
    );
    assert!(a_ok, "sum-of-squares branch: {}", v.label);
    assert!(b_ok, "length-bound branch: {bound:?}, margin {margin}");
    assert!(c_ok, "scaling family: {:?}", scan.points);
}

#[test]
fn acceptance_11_structural_properties() {
    let (mut lag, mut hmin, mut tri, mut dual) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for id in flat_chart_ids() {
        let entry = lookup(id).unwrap();
        let chart = entry.chart.as_ref().unwrap();
        let n = chart.dim();
        let pts = sample_grid(&chart.domains, if n <= 2 { 9 } else { 4 });
        lag = lag.max(check_lagrangian(chart, &pts));
        hmin = hmin.max(check_h_minimal(chart, &pts).unwrap());
        tri = tri.max(trisymmetry_residual(chart, &pts));
        let other = match &entry.kind {
            EntryKind::Torus { radii, p } => hstab::catalog::make_torus_with(radii, *p, OracleKind::DualNumber),
            EntryKind::Hyperbola { radii, branches } => {
                hstab::catalog::make_hyperbola_product_with(radii, branches, OracleKind::DualNumber)
            }
            EntryKind::Plane { kind, n, p } => hstab::catalog::make_plane_with(*kind, *n, *p, OracleKind::DualNumber),
            _ => unreachable!(),
        }
        .unwrap();
        for s in &pts {
            let a = induced_geometry(chart, s).unwrap().g;
            let b = induced_geometry(&other, s).unwrap().g;
            for i in 0..n {
                for j in 0..n {
                    dual = dual.max((a.get(i, j) - b.get(i, j)).abs());
                }
            }
        }
    }
    let ok = lag <= 1e-10 && hmin <= 1e-8 && tri <= 1e-8 && dual <= 1e-10;
    report(
        11,
        "structural properties of flat charts",
        ok,
        format!("Lagrangian {lag:.1e}, H-minimal {hmin:.1e}, tri-symmetry {tri:.1e}, dual-number metric {dual:.1e}"),
    );
    assert!(ok);
}

#[test]
fn acceptance_12_determinism_across_thread_counts() {
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            verify_paper(&VerifyConfig::default())
                .unwrap()
                .render(hstab::commands::Format::Json)
                .unwrap()
        })
    };
    let one = run(1);
    let four = run(4);
    let ok = one == four;
    report(
        12,
        "verify-paper JSON across thread counts",
        ok,
        format!("{} vs {} bytes, identical: {ok}", one.len(), four.len()),
    );
    assert!(ok);
}
