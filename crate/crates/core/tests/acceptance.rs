//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

mod common;

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use agchannel::extraction::{AnalysisConfig, FitReport, InterceptMode};
use agchannel::geometry::{elevation_angle, los_state, LinkState, ScenarioGeometry};
use agchannel::io::{write_trace_csv, Provenance, ReportDocument};
use agchannel::propagation::{fspl, pl_3gpp_uma, pl_altitude_model, PathLossParams};
use agchannel::roundtrip::{loglogistic_beta, roundtrip, top_family_counts};
use agchannel::stochastic::empirical::{fading_depth, ks_critical_value, ks_statistic, sorted};
use agchannel::stochastic::{FadingDistribution, FadingFamily};
use agchannel::synthesis::{synthesize_flight, ChannelModel, FlightConfig};
use agchannel::propagation::Frequency;

struct Outcome {
    pass: bool,
    detail: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            pass: true,
            detail: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) {
        self.pass &= ok;
        self.detail.push(format!("    [{}] {what}", if ok { "ok" } else { "FAIL" }));
    }
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let v = fspl(0.35, 1000.0).unwrap();
    o.check(close(v, 83.33, 0.01), format!("fspl(0.35 km, 1000 MHz) = {v:.4} (83.33 ± 0.01)"));
    let v = pl_3gpp_uma(100.0, 1.0, 1.5, LinkState::Los).unwrap();
    o.check(close(v, 72.0, 1e-6), format!("UMa LOS(100 m, 1 GHz) = {v:.9} (72 ± 1e-6)"));

    let p1 = PathLossParams::paper_1ghz();
    let p4 = PathLossParams::paper_4ghz();
    // hand-derived sums of the individual terms
    let cases = [
        (350.89, 1.0, 0.0, LinkState::Nlos, &p1, 62.41 + 50.9026),
        (350.0, 4.0, 24.0, LinkState::Los, &p4, 40.55 + 50.8814 + 12.0412 - 0.250 * 24.0),
        (1.0, 1.0, 0.0, LinkState::Los, &p1, 40.55),
    ];
    for (d, f, h, los, p, expect) in cases {
        let v = pl_altitude_model(d, f, h, los, p).unwrap();
        o.check(
            close(v, expect, 0.01),
            format!("altitude model(d3D {d}, {f} GHz, h {h}, {los}) = {v:.4} ({expect:.4} ± 0.01)"),
        );
    }
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    let lo = elevation_angle(0.0, 25.0, 350.0).unwrap();
    let hi = elevation_angle(24.0, 25.0, 350.0).unwrap();
    o.check(format!("{lo:.2}") == "4.09", format!("elevation at 0 m = {lo:.4}° (4.09)"));
    o.check(format!("{hi:.2}") == "0.16", format!("elevation at 24 m = {hi:.4}° (0.16)"));

    let s = ScenarioGeometry::CAMPUS;
    let grid: Vec<f64> = (0..=2400).map(|i| i as f64 / 100.0).collect();
    let states: Vec<LinkState> = grid.iter().map(|&h| los_state(&s, h).unwrap()).collect();
    let first_los = states.iter().position(|&st| st == LinkState::Los).unwrap();
    let monotone = states[first_los..].iter().all(|&st| st == LinkState::Los)
        && states[..first_los].iter().all(|&st| st == LinkState::Nlos);
    let last_nlos = grid[first_los - 1];
    let first = grid[first_los];
    o.check(
        monotone && last_nlos >= 11.0 && first <= 12.0,
        format!("NLOS up to {last_nlos} m, LOS from {first} m (transition within [11, 12] m)"),
    );
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    for (ghz, params) in [(1.0, PathLossParams::paper_1ghz()), (4.0, PathLossParams::paper_4ghz())] {
        let cfg = FlightConfig::with_frequency(Frequency::from_ghz(ghz).unwrap(), 1);
        let model = ChannelModel::deterministic(params.clone());
        let mut analysis = AnalysisConfig::default();
        analysis.decomposition.mode = InterceptMode::FreeIntercepts;
        let r = roundtrip(&cfg, &model, &analysis).unwrap();
        let q = &r.pathloss.params;
        let worst = [
            (q.intercept_los_db, params.intercept_los_db),
            (q.intercept_nlos_db, params.intercept_nlos_db),
            (q.n_los, params.n_los),
            (q.n_nlos, params.n_nlos),
        ]
        .iter()
        .map(|(a, b)| ((a - b) / b).abs())
        .fold(0.0, f64::max);
        o.check(worst <= 1e-6, format!("{ghz} GHz: worst relative error {worst:.2e} (≤ 1e-6)"));
    }
    o
}

const ROUNDTRIP_SEEDS: u64 = 64;

fn run_seeds(model: &ChannelModel, ghz: f64) -> Vec<FitReport> {
    let threads = std::thread::available_parallelism().map_or(4, |n| n.get());
    let seeds: Vec<u64> = (0..ROUNDTRIP_SEEDS).collect();
    let chunks: Vec<&[u64]> = seeds.chunks(seeds.len().div_ceil(threads)).collect();
    std::thread::scope(|scope| {
        let handles: Vec<_> = chunks
            .iter()
            .map(|chunk| {
                scope.spawn(move || {
                    chunk
                        .iter()
                        .map(|&seed| {
                            let cfg = FlightConfig {
                                round_trips: 2,
                                ..FlightConfig::with_frequency(Frequency::from_ghz(ghz).unwrap(), seed)
                            };
                            roundtrip(&cfg, model, &AnalysisConfig::default()).unwrap()
                        })
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().unwrap()).collect()
    })
}

fn mean(v: impl Iterator<Item = f64>) -> f64 {
    let v: Vec<f64> = v.collect();
    v.iter().sum::<f64>() / v.len() as f64
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    for (ghz, model) in [(1.0, ChannelModel::paper_1ghz()), (4.0, ChannelModel::paper_4ghz())] {
        let reports = run_seeds(&model, ghz);
        let tag = format!("{ghz} GHz, {} seeds", reports.len());

        let n_gen = model.pathloss.n_nlos;
        let n = mean(reports.iter().map(|r| r.pathloss.nlos.unwrap().n_db_per_m));
        o.check(
            (n - n_gen).abs() <= 0.15 * n_gen,
            format!("{tag}: n_NLOS {n:.4} vs {n_gen} (±15%)"),
        );
        for state in LinkState::ALL {
            let sigma_gen = model.shadowing.get(state).sigma_db;
            let sigma = mean(reports.iter().map(|r| r.condition(state).unwrap().shadowing.params.sigma_db));
            o.check(
                (sigma - sigma_gen).abs() <= 0.5,
                format!("{tag}: sigma_{state} {sigma:.3} dB vs {sigma_gen} (±0.5 dB)"),
            );
            let Some(FadingDistribution::LogLogistic(gen)) = model.fading.get(state) else {
                unreachable!()
            };
            let beta = mean(reports.iter().map(|r| loglogistic_beta(r, state).unwrap()));
            o.check(
                (beta - gen.beta).abs() <= 0.10 * gen.beta,
                format!("{tag}: beta_{state} {beta:.4} vs {} (±10%)", gen.beta),
            );
            let top = top_family_counts(&reports, state)
                .into_iter()
                .find(|(f, _)| *f == FadingFamily::LogLogistic)
                .unwrap()
                .1;
            o.check(
                top as f64 >= 0.9 * reports.len() as f64,
                format!("{tag}: LogLogistic top-ranked in {top}/{} {state} fits (≥ 90%)", reports.len()),
            );
        }
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for (l1, l50, depth) in [(-5.88, -0.169, 5.711), (-2.87, -0.052, 2.818)] {
        let v = fading_depth(&common::engineered_fading(l1, l50)).unwrap();
        o.check(close(v, depth, 0.01), format!("L1 {l1}, L50 {l50}: depth {v:.6} ({depth} ± 0.01)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let normal = Normal::new(0.0, 3.0).unwrap();
    let mut worst: f64 = 0.0;
    for n in [200, 517, 1000] {
        let x: Vec<f64> = (0..n).map(|_| normal.sample(&mut rng)).collect();
        let oracle = common::brute_percentile(&x, 0.5) - common::brute_percentile(&x, 0.01);
        worst = worst.max((fading_depth(&x).unwrap() - oracle).abs());
    }
    o.check(worst <= 1e-9, format!("Gaussian samples vs brute-force percentiles: max diff {worst:.2e} (≤ 1e-9)"));
    o
}

fn family_cases() -> Vec<FadingDistribution> {
    vec![
        FadingDistribution::log_logistic(1.0, 1.41).unwrap(),
        FadingDistribution::log_logistic(1.0, 1.12).unwrap(),
        FadingDistribution::log_logistic(0.7, 3.0).unwrap(),
        FadingDistribution::rician(0.0, 1.0).unwrap(),
        FadingDistribution::rician(3.0, 1.5).unwrap(),
        FadingDistribution::rician(12.0, 0.8).unwrap(),
        FadingDistribution::rayleigh(1.0).unwrap(),
        FadingDistribution::rayleigh(0.3).unwrap(),
        FadingDistribution::nakagami(0.6, 1.0).unwrap(),
        FadingDistribution::nakagami(3.0, 2.0).unwrap(),
        FadingDistribution::weibull(1.0, 1.5).unwrap(),
        FadingDistribution::weibull(2.0, 3.0).unwrap(),
    ]
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    let cases = family_cases();

    let worst_mass = cases
        .iter()
        .map(|d| (common::integrate_half_line(&|x| d.pdf(x)) - 1.0).abs())
        .fold(0.0, f64::max);
    o.check(worst_mass <= 1e-6, format!("pdf mass: max |∫pdf - 1| = {worst_mass:.2e} (≤ 1e-6)"));

    let mut worst_inv: f64 = 0.0;
    for d in &cases {
        for i in 1..1000 {
            let u = i as f64 / 1000.0;
            let back = d.cdf(d.quantile(u).unwrap());
            worst_inv = worst_inv.max(((back - u) / u).abs());
        }
    }
    o.check(worst_inv <= 1e-9, format!("cdf(quantile(u)): max relative error {worst_inv:.2e} (≤ 1e-9)"));

    let n = 100_000;
    let crit = ks_critical_value(n, 0.01);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in [cases[0], cases[4], cases[6], cases[9], cases[10]] {
        let x: Vec<f64> = (0..n).map(|_| d.sample(&mut rng)).collect();
        let stat = ks_statistic(&sorted(&x).unwrap(), |v| d.cdf(v));
        o.check(stat < crit, format!("KS {}: D = {stat:.5} (< {crit:.5})", d.family()));
    }

    let sigma = 0.8;
    let rayleigh = FadingDistribution::rayleigh(sigma).unwrap();
    let rician = FadingDistribution::rician(0.0, 2.0 * sigma * sigma).unwrap();
    let nakagami = FadingDistribution::nakagami(1.0, 2.0 * sigma * sigma).unwrap();
    let (mut d_rice, mut d_naka): (f64, f64) = (0.0, 0.0);
    for i in 0..=4000 {
        let x = i as f64 / 1000.0;
        d_rice = d_rice.max((rician.pdf(x) - rayleigh.pdf(x)).abs());
        d_naka = d_naka.max((nakagami.pdf(x) - rayleigh.pdf(x)).abs());
    }
    o.check(d_rice <= 1e-12, format!("Rician(K=0) vs Rayleigh: max |Δpdf| {d_rice:.2e} (≤ 1e-12)"));
    o.check(d_naka <= 1e-12, format!("Nakagami(m=1) vs Rayleigh: max |Δpdf| {d_naka:.2e} (≤ 1e-12)"));
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let s = ScenarioGeometry::CAMPUS;
    for (ghz, p) in [(1.0, PathLossParams::paper_1ghz()), (4.0, PathLossParams::paper_4ghz())] {
        let along_flight: Vec<f64> = (0..=2400)
            .map(|i| {
                let h = i as f64 / 100.0;
                let link = s.link(h).unwrap();
                pl_altitude_model(link.d3d_m, ghz, h, link.los, &p).unwrap()
            })
            .collect();
        let flight_ok = along_flight.windows(2).all(|w| w[1] < w[0]);
        let fixed_ok = LinkState::ALL.iter().all(|&st| {
            (0..240).all(|i| {
                let (h0, h1) = (i as f64 / 10.0, (i + 1) as f64 / 10.0);
                pl_altitude_model(350.0, ghz, h1, st, &p).unwrap() < pl_altitude_model(350.0, ghz, h0, st, &p).unwrap()
            })
        });
        o.check(
            flight_ok && fixed_ok,
            format!("{ghz} GHz: strictly decreasing in altitude (flight {flight_ok}, fixed d3D {fixed_ok})"),
        );
        o.check(
            p.n_nlos > p.n_los,
            format!("{ghz} GHz: n_NLOS {} > n_LOS {}", p.n_nlos, p.n_los),
        );
    }
    o
}

fn artifacts(cfg: &FlightConfig, model: &ChannelModel) -> (Vec<u8>, String) {
    let trace = synthesize_flight(cfg, model).unwrap();
    let mut csv = Vec::new();
    write_trace_csv(&trace, &mut csv).unwrap();
    let report = agchannel::extraction::analyze(&trace, &AnalysisConfig::default()).unwrap();
    let doc = ReportDocument {
        provenance: Provenance::new(&cfg.to_toml_string(), &csv, Some(cfg.seed)),
        report,
    };
    (csv, doc.to_json())
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let cfg = FlightConfig {
        seed: 77,
        round_trips: 2,
        ..Default::default()
    };
    let model = ChannelModel::paper_4ghz();
    let (csv_a, json_a) = artifacts(&cfg, &model);
    let (csv_b, json_b) = artifacts(&cfg, &model);
    o.check(csv_a == csv_b, format!("trace CSV identical ({} bytes)", csv_a.len()));
    o.check(json_a == json_b, format!("report identical ({} bytes)", json_a.len()));
    let (csv_c, _) = artifacts(&FlightConfig { seed: 78, ..cfg }, &model);
    o.check(csv_c != csv_a, "different seed gives a different trace".into());
    o
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("model evaluation exactness", criterion_1),
        ("geometry pins", criterion_2),
        ("exact noiseless round trip", criterion_3),
        ("statistical round trip", criterion_4),
        ("fading-depth oracle", criterion_5),
        ("distribution correctness", criterion_6),
        ("monotonicity", criterion_7),
        ("determinism", criterion_8),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let o = run();
        println!(
            "{} criterion {}: {name} ({:.2} s)",
            if o.pass { "PASS" } else { "FAIL" },
            i + 1,
            t.elapsed().as_secs_f64()
        );
        for line in &o.detail {
            println!("{line}");
        }
        if !o.pass {
            failed.push(i + 1);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
