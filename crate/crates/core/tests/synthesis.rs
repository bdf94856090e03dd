use proptest::prelude::*;

use agchannel::extraction::{Trace, TraceSample};
use agchannel::geometry::ScenarioGeometry;
use agchannel::io::{read_trace_csv, write_trace_csv};
use agchannel::propagation::{pl_altitude_model, Frequency};
use agchannel::synthesis::{received_power, synthesize_flight, ChannelModel, FlightConfig, LinkBudget, PerCondition};
use agchannel::stochastic::ShadowingParams;

/// Variance of the fast-fading part of a trace (shadowing switched off).
fn ff_variance(averaging_factor: u32, seed: u64) -> f64 {
    let zero = ShadowingParams::zero_mean(0.0).unwrap();
    let model = ChannelModel {
        shadowing: PerCondition { los: zero, nlos: zero },
        ..ChannelModel::paper_4ghz()
    };
    let cfg = FlightConfig {
        averaging_factor,
        seed,
        ..FlightConfig::default()
    };
    let t = synthesize_flight(&cfg, &model).unwrap();
    let ff: Vec<f64> = t
        .samples()
        .iter()
        .map(|s| {
            let link = cfg.scenario.link(s.altitude_m).unwrap();
            s.loss_db - pl_altitude_model(link.d3d_m, 4.0, s.altitude_m, link.los, &model.pathloss).unwrap()
        })
        .collect();
    let mean = ff.iter().sum::<f64>() / ff.len() as f64;
    ff.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (ff.len() - 1) as f64
}

#[test]
fn more_averaging_means_less_fading_variance() {
    let seeds = 10;
    let mean_var = |a| (0..seeds).map(|s| ff_variance(a, s)).sum::<f64>() / seeds as f64;
    let v: Vec<f64> = [1, 5, 20, 80].into_iter().map(mean_var).collect();
    println!("FF variance by averaging factor 1/5/20/80: {v:?}");
    assert!(v.windows(2).all(|w| w[1] < w[0]), "{v:?}");
}

#[test]
fn default_trip_stores_1500_samples() {
    let cfg = FlightConfig::default();
    assert_eq!(cfg.sample_count(), 1500);
    let t = synthesize_flight(&cfg, &ChannelModel::paper_1ghz()).unwrap();
    assert_eq!(t.len(), 1500);
    let twice = synthesize_flight(&FlightConfig { round_trips: 2, ..cfg }, &ChannelModel::paper_1ghz()).unwrap();
    assert_eq!(twice.len(), 1500);
}

#[test]
fn budget_on_a_trace() {
    let s = ScenarioGeometry::CAMPUS;
    let f = Frequency::from_ghz(1.0).unwrap();
    let samples = [150.0, 160.0, 0.0]
        .iter()
        .enumerate()
        .map(|(i, &l)| TraceSample {
            altitude_m: i as f64,
            loss_db: l,
        })
        .collect();
    let t = Trace::new(samples, f, 1.0, s).unwrap();
    let rx = received_power(&t, &LinkBudget::default()).unwrap();
    assert!((rx[0].power_dbm + 114.85).abs() < 1e-9 && !rx[0].below_floor);
    assert!((rx[1].power_dbm + 124.85).abs() < 1e-9 && rx[1].below_floor);
    assert!((rx[2].power_dbm - 35.15).abs() < 1e-9);
    let bare = LinkBudget {
        tx_gain_dbi: 0.0,
        rx_gain_dbi: 0.0,
        ..LinkBudget::default()
    };
    let rx = received_power(&t, &bare).unwrap();
    assert!((rx[1].power_dbm + 130.0).abs() < 1e-9 && rx[1].below_floor);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csv_round_trip_is_byte_stable(
        rows in prop::collection::vec((0.0f64..500.0, -50.0f64..250.0), 2..300),
    ) {
        let samples = rows.iter().map(|&(h, l)| TraceSample { altitude_m: h, loss_db: l }).collect();
        let f = Frequency::from_ghz(4.0).unwrap();
        let t = Trace::new(samples, f, 62.5, ScenarioGeometry::CAMPUS).unwrap();
        let mut first = Vec::new();
        write_trace_csv(&t, &mut first).unwrap();
        let back = read_trace_csv(first.as_slice(), f, 62.5, ScenarioGeometry::CAMPUS).unwrap();
        let mut second = Vec::new();
        write_trace_csv(&back, &mut second).unwrap();
        prop_assert_eq!(first, second);
        for (a, b) in t.samples().iter().zip(back.samples()) {
            prop_assert!((a.loss_db - b.loss_db).abs() <= 5e-7);
        }
    }

    #[test]
    fn same_seed_same_trace(seed in any::<u64>()) {
        let cfg = FlightConfig { seed, ..FlightConfig::default() };
        let m = ChannelModel::paper_4ghz();
        prop_assert_eq!(synthesize_flight(&cfg, &m).unwrap(), synthesize_flight(&cfg, &m).unwrap());
    }
}
