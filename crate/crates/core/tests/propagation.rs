use proptest::prelude::*;

use agchannel::geometry::{breakpoint_distance, elevation_angle, los_state, LinkState, ScenarioGeometry};
use agchannel::propagation::{fspl, free_space_loss, pl_3gpp_uma, pl_altitude_model, Frequency, PathLossParams};

fn scenario() -> impl Strategy<Value = ScenarioGeometry> {
    (50.0f64..1000.0, 5.0f64..60.0, 0.05f64..0.95, 0.0f64..1.0).prop_map(|(d, gs, frac, hb)| {
        ScenarioGeometry::new(d, gs, frac * d, hb * gs).unwrap()
    })
}

proptest! {
    #[test]
    fn los_is_monotone_in_altitude(s in scenario(), h in 0.0f64..100.0, dh in 0.0f64..50.0) {
        if los_state(&s, h).unwrap() == LinkState::Los {
            prop_assert_eq!(los_state(&s, h + dh).unwrap(), LinkState::Los);
        }
    }

    #[test]
    fn d3d_is_smallest_at_gs_height(s in scenario(), h in 0.0f64..100.0) {
        let at_gs = s.link(s.gs_height_m).unwrap();
        prop_assert_eq!(at_gs.d3d_m, at_gs.d2d_m);
        prop_assert!(s.link(h).unwrap().d3d_m >= at_gs.d3d_m);
    }

    #[test]
    fn elevation_decreases_with_altitude(gs in 1.0f64..60.0, d in 10.0f64..2000.0, h in 0.0f64..100.0, dh in 0.01f64..10.0) {
        prop_assert!(elevation_angle(h + dh, gs, d).unwrap() < elevation_angle(h, gs, d).unwrap());
    }

    #[test]
    fn breakpoint_scales_linearly(ht in 1.0f64..50.0, hr in 1.0f64..50.0, f in 1e8f64..1e10, k in 1.5f64..10.0) {
        let base = breakpoint_distance(ht, hr, f).unwrap();
        for scaled in [
            breakpoint_distance(k * ht, hr, f).unwrap(),
            breakpoint_distance(ht, k * hr, f).unwrap(),
            breakpoint_distance(ht, hr, k * f).unwrap(),
        ] {
            prop_assert!((scaled / base - k).abs() < 1e-12 * k);
        }
    }

    #[test]
    fn altitude_model_decreases_with_altitude(
        d in 10.0f64..2000.0, h in 0.0f64..100.0, dh in 0.01f64..10.0, high in any::<bool>(), los in any::<bool>(),
    ) {
        let (f, p) = if high { (4.0, PathLossParams::paper_4ghz()) } else { (1.0, PathLossParams::paper_1ghz()) };
        let st = if los { LinkState::Los } else { LinkState::Nlos };
        prop_assert!(pl_altitude_model(d, f, h + dh, st, &p).unwrap() < pl_altitude_model(d, f, h, st, &p).unwrap());
    }

    #[test]
    fn fspl_decade_exchange(d in 0.001f64..100.0, f in 10.0f64..1e5) {
        let a = fspl(d, f).unwrap();
        let b = fspl(10.0 * d, f / 10.0).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn fspl_unit_forms_agree(d_m in 1.0f64..1e5, f_mhz in 10.0f64..1e5) {
        let a = fspl(d_m / 1000.0, f_mhz).unwrap();
        let b = free_space_loss(d_m, Frequency::from_mhz(f_mhz).unwrap()).unwrap();
        prop_assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn distance_coefficients(d in 10.0f64..1000.0, f in 0.5f64..6.0, h in 1.5f64..22.5) {
        let decade = |g: &dyn Fn(f64) -> f64| g(10.0 * d) - g(d);
        let fs = decade(&|x| fspl(x / 1000.0, f * 1000.0).unwrap());
        prop_assert!((fs - 20.0).abs() < 1e-9);
        let los = decade(&|x| pl_3gpp_uma(x, f, h, LinkState::Los).unwrap());
        prop_assert!((los - 22.0).abs() < 1e-9);
        let nlos = decade(&|x| pl_3gpp_uma(x, f, h, LinkState::Nlos).unwrap());
        prop_assert!((nlos - 39.08).abs() < 1e-9);
        let p = PathLossParams::paper_4ghz();
        for st in LinkState::ALL {
            let m = decade(&|x| pl_altitude_model(x, f, h, st, &p).unwrap());
            prop_assert!((m - 20.0).abs() < 1e-9);
        }
    }
}

#[test]
fn nlos_slope_exceeds_los_slope() {
    for p in [PathLossParams::paper_1ghz(), PathLossParams::paper_4ghz()] {
        let slope = |st| pl_altitude_model(350.0, 1.0, 10.0, st, &p).unwrap() - pl_altitude_model(350.0, 1.0, 0.0, st, &p).unwrap();
        assert!(slope(LinkState::Nlos) < slope(LinkState::Los));
    }
}
