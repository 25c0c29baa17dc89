//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::f64::consts::SQRT_2;
use std::process::ExitCode;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use grav_bell::arrays::{balance_geometry, path_proper_times, rotated_balanced_geometry, standard_geometry};
use grav_bell::chsh::{
    critical_area, sigma_balanced, sigma_classical, sigma_gaussian, sigma_general, sigma_phase_compensated,
    sigma_rotated_hugged, TSIRELSON_BOUND,
};
use grav_bell::quantum::{
    probability_amplitude_oracle, probability_gaussian, probability_quadrature, FrequencyGrid,
    DEFAULT_GRID_POINTS,
};
use grav_bell::spectra::sigma_from_bandwidth;
use grav_bell::sweep::{figure_table, Figure, SourceConfig, FIGURE_BANDWIDTHS};
use grav_bell::{
    ArrayGeometry, ArrayKind, GaussianSpectrum, GravityModel, JointSpectrum, PhasePair, PhaseSettings,
    TabulatedSpectrum,
};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut StdRng) -> Outcome>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn broadband(bandwidth: f64, model: &GravityModel) -> (GaussianSpectrum, GaussianSpectrum) {
    SourceConfig::broadband(bandwidth).spectra(model).unwrap()
}

fn spectral_widths() -> Outcome {
    let m = GravityModel::earth();
    let cases = [
        (806e-9, 161.2e-9, 4.724e14),
        (706e-9, 161.2e-9, 6.176e14),
        (806e-9, 322.4e-9, 9.744e14),
        (706e-9, 322.4e-9, 1.286e15),
        (806e-9, 644.2e-9, 2.224e15),
        (706e-9, 644.2e-9, 3.076e15),
    ];
    let worst = cases
        .iter()
        .map(|&(l0, dl, expected)| (sigma_from_bandwidth(l0, dl, &m).unwrap() / expected - 1.0).abs())
        .fold(0.0, f64::max);
    check(
        worst < 5e-3,
        format!("six widths, worst relative error {worst:.2e} (limit 5e-3)"),
    )
}

fn critical_area_identity(rng: &mut StdRng) -> Outcome {
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let s1 = rng.gen_range(1e13..5e15);
        let s2 = rng.gen_range(1e13..5e15);
        let g = rng.gen_range(0.1..100.0);
        let m = GravityModel::earth().with_g(g).unwrap();
        let a = critical_area(s1, s2, &m).unwrap();
        let d = m.g * a / m.c.powi(3);
        worst = worst.max((sigma_phase_compensated(d, d, s1, s2) - 2.0).abs());
    }
    check(
        worst <= 1e-12,
        format!("100 triples, worst |Σ − 2| = {worst:.2e} (limit 1e-12)"),
    )
}

fn maximal_violation() -> Outcome {
    let m = GravityModel::earth();
    let (l, r) = broadband(644.2e-9, &m);
    let settings = PhaseSettings::canonical();
    let (s1, s2, w1, w2) = (l.sigma(), r.sigma(), l.omega_bar(), r.omega_bar());
    let tab = TabulatedSpectrum::sample_product(&l, &r, 81, 6.0).unwrap();
    let values = [
        sigma_general(0.0, 0.0, &JointSpectrum::product(l, r), &settings)
            .unwrap()
            .sigma,
        sigma_general(0.0, 0.0, &JointSpectrum::delta(w1, w2), &settings)
            .unwrap()
            .sigma,
        sigma_general(0.0, 0.0, &JointSpectrum::Tabulated(tab), &settings)
            .unwrap()
            .sigma,
        sigma_gaussian(0.0, 0.0, &l, &r, &settings).sigma,
        sigma_balanced(0.0, s1, s2, w1, w2),
        sigma_rotated_hugged(0.0, s1, s2, w1, w2),
        sigma_phase_compensated(0.0, 0.0, s1, s2),
    ];
    let worst = values
        .iter()
        .map(|v| (v - TSIRELSON_BOUND).abs())
        .fold(0.0, f64::max);
    check(
        worst <= 1e-12,
        format!(
            "{} variants, worst |Σ − 2√2| = {worst:.2e} (limit 1e-12)",
            values.len()
        ),
    )
}

fn oracle_equivalence(rng: &mut StdRng) -> Outcome {
    let m = GravityModel::earth();
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let kind = ArrayKind::ALL[rng.gen_range(0..4)];
        let (l, r) = broadband(rng.gen_range(100e-9..650e-9), &m);
        let a_star = critical_area(l.sigma(), r.sigma(), &m).unwrap();
        let area = rng.gen_range(0.0..2.0 * a_star);
        let height = rng.gen_range(1e3..2e4);
        let offset = rng.gen_range(0.0..1e-12);
        let phases = PhasePair::new(rng.gen_range(-3.2..3.2), rng.gen_range(-3.2..3.2));
        let geometry = standard_geometry(kind, area / height, height, offset, &m).unwrap();
        let times = path_proper_times(&geometry, &m).unwrap();
        let (d1, d2) = (times.g1_g2(), times.g1p_g2p());
        let closed = probability_gaussian(d1, d2, &l, &r, phases);
        let quad = probability_quadrature(d1, d2, &JointSpectrum::product(l, r), phases).unwrap();
        let grid = FrequencyGrid::gaussian(&l, &r, DEFAULT_GRID_POINTS).unwrap();
        let amp =
            probability_amplitude_oracle(&times, geometry.post_selection_offset(), phases, &grid).unwrap();
        worst = worst
            .max(closed.max_difference(&quad))
            .max(closed.max_difference(&amp))
            .max(quad.max_difference(&amp));
    }
    check(
        worst <= 1e-6,
        format!("50 configurations, worst disagreement {worst:.2e} (limit 1e-6)"),
    )
}

fn offset_independence() -> Outcome {
    let m = GravityModel::earth();
    let (l, r) = broadband(644.2e-9, &m);
    let grid = FrequencyGrid::gaussian(&l, &r, DEFAULT_GRID_POINTS).unwrap();
    let phases = PhasePair::new(0.3, 0.9);
    let mut worst: f64 = 0.0;
    for kind in [ArrayKind::Franson, ArrayKind::Hugged] {
        let mut reference = None;
        for offset in [1e-15, 1e-14, 1e-13, 1e-12] {
            let g = balance_geometry(kind, 1e4, 1e4, offset, &m).unwrap();
            let t = path_proper_times(&g, &m).unwrap();
            let p = probability_amplitude_oracle(&t, offset, phases, &grid).unwrap();
            let base = *reference.get_or_insert(p);
            worst = worst.max(p.max_difference(&base));
        }
    }
    check(
        worst <= 1e-10,
        format!("offsets 1e-15..1e-12 s, largest change {worst:.2e} (limit 1e-10)"),
    )
}

fn figures() -> Outcome {
    let m = GravityModel::earth();
    let fig3a = figure_table(Figure::Fig3a, &m).unwrap();
    let labels = FIGURE_BANDWIDTHS.map(|b| format!("{:.1}nm", b * 1e9));
    let starts_at_half = labels
        .iter()
        .all(|l| fig3a.column(&format!("p_pp_{l}")).unwrap()[0] == 0.5);
    let envelopes: Vec<Vec<f64>> = labels
        .iter()
        .map(|l| fig3a.column(&format!("visibility_{l}")).unwrap())
        .collect();
    let damping_ordered =
        (1..fig3a.rows.len()).all(|i| envelopes[0][i] > envelopes[1][i] && envelopes[1][i] > envelopes[2][i]);

    let fig4 = figure_table(Figure::Fig4, &m).unwrap();
    let violations: Vec<&Vec<f64>> = fig4.rows.iter().filter(|r| r[4] > 2.0).collect();
    let bounded = !violations.is_empty() && violations.iter().all(|r| r[1] < r[5]);

    let fig5 = figure_table(Figure::Fig5, &m).unwrap();
    let ten_km = fig5
        .rows
        .iter()
        .find(|r| r[0] == 1e4 && r[1] == 1e4)
        .map(|r| r[5])
        .unwrap_or(0.0);

    check(
        starts_at_half && damping_ordered && bounded && ten_km > 2.0,
        format!(
            "fig3a p++(0) = 0.5: {starts_at_half}, damping grows with bandwidth: {damping_ordered}, \
             fig4 violations inside A < A*: {bounded}, fig5 Σ(10 km, 10 km) = {ten_km:.4}"
        ),
    )
}

fn classical_bound(rng: &mut StdRng) -> Outcome {
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let v = sigma_classical(
            rng.gen_range(-1e-14..1e-14),
            rng.gen_range(-1e-14..1e-14),
            rng.gen_range(1e12..5e15),
            rng.gen_range(1e12..5e15),
            rng.gen_range(1e14..1e16),
            rng.gen_range(1e14..1e16),
        );
        worst = worst.max(v);
    }
    check(
        worst <= SQRT_2 / 2.0,
        format!("1000 parameter sets, largest Σ_class = {worst:.6} (bound √2/2)"),
    )
}

fn constraint_identity(rng: &mut StdRng) -> Outcome {
    let m = GravityModel::earth();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for _ in 0..250 {
        let l2p = rng.gen_range(0.0..5e4);
        let h = rng.gen_range(0.0..5e4);
        let offset = rng.gen_range(0.0..1e-9);
        let geometries = [
            balance_geometry(ArrayKind::Franson, l2p, h, offset, &m).unwrap(),
            balance_geometry(ArrayKind::Hugged, l2p, h, offset, &m).unwrap(),
            rotated_balanced_geometry(ArrayKind::FransonRotatedBalanced, l2p, h, &m).unwrap(),
            rotated_balanced_geometry(ArrayKind::HuggedRotatedBalanced, l2p, h, &m).unwrap(),
            ArrayGeometry::new(
                ArrayKind::ALL[rng.gen_range(0..4)],
                rng.gen_range(0.0..1e5),
                rng.gen_range(0.0..1e5),
                l2p,
                rng.gen_range(0.0..1e5),
                h,
                offset,
            )
            .unwrap(),
        ];
        for g in geometries {
            let t = path_proper_times(&g, &m).unwrap();
            worst = worst.max(t.constraint_residual().abs());
            count += 1;
        }
    }
    check(
        worst <= 1e-30,
        format!("{count} geometries, worst residual {worst:.2e} s (limit 1e-30 s)"),
    )
}

fn normalization_and_symmetry(rng: &mut StdRng) -> Outcome {
    let m = GravityModel::earth();
    let (mut closed_worst, mut quad_worst): (f64, f64) = (0.0, 0.0);
    for k in 0..200 {
        let (l, r) = broadband(rng.gen_range(50e-9..700e-9), &m);
        let d1 = rng.gen_range(-1e-15..1e-15);
        let d2 = rng.gen_range(-1e-15..1e-15);
        let (a, b, s) = (
            rng.gen_range(-7.0..7.0),
            rng.gen_range(-7.0..7.0),
            rng.gen_range(-7.0..7.0),
        );
        let p = probability_gaussian(d1, d2, &l, &r, PhasePair::new(a, b));
        let shifted = probability_gaussian(d1, d2, &l, &r, PhasePair::new(a + s, b - s));
        closed_worst = closed_worst
            .max((p.sum() - 1.0).abs())
            .max((p.p_pp - p.p_mm).abs())
            .max((p.p_pm - p.p_mp).abs())
            .max(p.max_difference(&shifted));
        if k % 4 == 0 {
            let spectrum = JointSpectrum::product(l, r);
            let q = probability_quadrature(d1, d2, &spectrum, PhasePair::new(a, b)).unwrap();
            let qs = probability_quadrature(d1, d2, &spectrum, PhasePair::new(a + s, b - s)).unwrap();
            quad_worst = quad_worst
                .max((q.sum() - 1.0).abs())
                .max((q.p_pp - q.p_mm).abs())
                .max((q.p_pm - q.p_mp).abs())
                .max(q.max_difference(&qs));
        }
    }
    check(
        closed_worst <= 1e-12 && quad_worst <= 1e-6,
        format!("closed form worst {closed_worst:.2e} (limit 1e-12), quadrature worst {quad_worst:.2e} (limit 1e-6)"),
    )
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed_b311);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("spectral width conversions", Box::new(|_| spectral_widths())),
        ("critical-area identity", Box::new(critical_area_identity)),
        (
            "maximal violation at zero delay",
            Box::new(|_| maximal_violation()),
        ),
        ("three-way probability agreement", Box::new(oracle_equivalence)),
        (
            "independence of the post-selection offset",
            Box::new(|_| offset_independence()),
        ),
        ("figure reproduction", Box::new(|_| figures())),
        ("classical bound", Box::new(classical_bound)),
        ("delay constraint identity", Box::new(constraint_identity)),
        ("normalization and symmetry", Box::new(normalization_and_symmetry)),
    ];
    let mut failures = 0;
    for (number, (name, criterion)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = criterion(&mut rng);
        let elapsed = start.elapsed().as_secs_f64();
        let (status, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("{status} {}. {name}: {detail} [{elapsed:.2} s]", number + 1);
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
