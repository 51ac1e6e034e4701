use zbstein::harness::{cm_envelope, zero_middle_sequence, GridRange};
use zbstein::{
    a_functional, asymptotic_sweep, b_functional, convolve, lattice_span, lower_bound_sweep,
    moments, standardize, verify_iid, w1_step_step, FiniteDist,
};

/// Law on {a, b, c} with mean zero and vanishing third moment.
fn symmetric_third(a: f64, b: f64, c: f64) -> FiniteDist {
    // Cramer's rule on [1 1 1; a b c; a³ b³ c³] p = (1, 0, 0)
    let det = |m: [[f64; 3]; 3]| {
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    };
    let m = [[1.0, 1.0, 1.0], [a, b, c], [a.powi(3), b.powi(3), c.powi(3)]];
    let d = det(m);
    let probs = (0..3)
        .map(|j| {
            let mut mj = m;
            for (i, rhs) in [1.0, 0.0, 0.0].into_iter().enumerate() {
                mj[i][j] = rhs;
            }
            det(mj) / d
        })
        .collect();
    standardize(&FiniteDist::new(vec![a, b, c], probs).unwrap()).unwrap()
}

#[test]
fn nonlattice_zero_skew_sweep_vanishes() {
    let g = symmetric_third(-2f64.sqrt(), 0.5, 1.5);
    assert!(!lattice_span(&g).is_lattice);
    assert!(moments(&g).third.abs() < 1e-12);
    assert!(a_functional(&g).unwrap().abs() < 1e-12);
    let reports = asymptotic_sweep(&g, &[16, 64, 256, 1024]).unwrap();
    let last = reports.last().unwrap();
    assert!(last.sqrtn_w1 <= 0.05, "{}", last.sqrtn_w1);
    assert!(reports.iter().all(|r| r.is_clean()));
}

#[test]
fn multinomial_route_matches_pairwise_convolution() {
    let g = symmetric_third(-2f64.sqrt(), 0.5, 1.5);
    let mut direct = g.clone();
    for _ in 1..7 {
        direct = convolve(&direct, &g);
    }
    let enumerated = zbstein::convolution_power(&g, 7, 1_000_000).unwrap();
    assert_eq!(enumerated.len(), direct.len());
    assert!(w1_step_step(&enumerated, &direct) < 1e-13);
}

#[test]
fn asymmetric_two_point_approaches_a() {
    let g = standardize(&FiniteDist::new(vec![-1.0, 2.0], vec![2.0 / 3.0, 1.0 / 3.0]).unwrap()).unwrap();
    let a = a_functional(&g).unwrap();
    let schedule: Vec<usize> = (0..=12).map(|k| 1 << k).collect();
    let reports = asymptotic_sweep(&g, &schedule).unwrap();
    let last = reports.last().unwrap();
    assert_eq!(last.a_value, Some(a));
    assert!((last.sqrtn_w1 - a).abs() <= 0.03, "{} vs {a}", last.sqrtn_w1);
}

#[test]
fn constant_sandwich_and_envelope() {
    let schedule: Vec<usize> = (0..=10).map(|k| 1 << k).collect();
    let laws = [
        FiniteDist::rademacher(),
        FiniteDist::two_point(-1.0, 3.0).unwrap(),
        FiniteDist::new(vec![-2.0, 1.0, 3.0], vec![0.5, 0.25, 0.25]).unwrap(),
    ];
    let mut overall = 0.0f64;
    for g in &laws {
        let reports = asymptotic_sweep(g, &schedule).unwrap();
        let env = cm_envelope(&reports);
        assert!(env.windows(2).all(|w| w[1] <= w[0]));
        overall = overall.max(env[0]);
        for r in &reports {
            assert!(r.ratio_be <= 1.0 + 1e-9);
        }
    }
    assert!(overall <= 1.0 + 1e-9);
    assert!(overall >= 0.5353);
    let first = verify_iid(&FiniteDist::rademacher(), 1).unwrap();
    assert!((first.ratio_be - overall).abs() < 1e-12);
}

#[test]
fn zero_middle_perturbation_converges() {
    let x = FiniteDist::new(vec![-2.0, 0.0, 1.0], vec![0.2, 0.4, 0.4]).unwrap();
    let seq = zero_middle_sequence(&x, &[10, 100, 1000, 10_000]).unwrap();
    let limit = seq.last().unwrap().1;
    assert_eq!(seq.last().unwrap().0, 0);
    assert!((limit - b_functional(&x).unwrap()).abs() < 1e-12);
    for (n, b) in &seq {
        assert!(*b <= 1.0 + 1e-9, "n = {n}: {b}");
    }
    // distance to the limit shrinks like 1/n
    let dist: Vec<f64> = seq[..4].iter().map(|(_, b)| (b - limit).abs()).collect();
    assert!(dist.windows(2).all(|w| w[1] < 0.2 * w[0]), "{dist:?}");
    assert!(dist[3] < 1e-3);
}

#[test]
fn lower_bound_grid_peaks_at_half() {
    let grid = GridRange::new(0.001, 0.999, 999).unwrap().points();
    let table = lower_bound_sweep(&grid).unwrap();
    assert_eq!(table.rows.len(), 999);
    let nearest = grid
        .iter()
        .copied()
        .min_by(|a, b| (a - 0.5).abs().total_cmp(&(b - 0.5).abs()))
        .unwrap();
    assert!((table.max.0 - nearest).abs() < 1e-12);
    assert!((table.max.1 - 0.535377).abs() < 1e-5);
}
