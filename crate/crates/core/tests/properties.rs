use proptest::prelude::*;
use riemann_limit::{
    alt_limit, alt_solve_delta, alt_solve_small_shock, entropy_production_shock, predicted_limit, Epsilon64, Error,
    ExpLaw, Model64, PressureLaw, RiemannData64, State64, Wave,
};

fn eps_strategy() -> impl Strategy<Value = f64> {
    (-4.0f64..-0.3).prop_map(|e| 10f64.powf(e))
}

fn state(u: f64, rho: f64) -> State64 {
    State64::new(u, rho)
}

fn model(eps: f64) -> Model64 {
    Model64::exp(Epsilon64::new(eps).unwrap())
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn pressure_is_increasing(a in 0.0f64..20.0, d in 1e-6f64..5.0) {
        let law = ExpLaw;
        prop_assert!(law.p(a + d).unwrap() > law.p(a).unwrap());
        prop_assert!(law.p_prime(a + d).unwrap() > 0.0);
    }

    #[test]
    fn hugoniot_root_resubstitutes(u in -2.0f64..2.0, rho in 0.1f64..4.0, du in 1e-3f64..3.0, eps in eps_strategy()) {
        let m = model(eps);
        let anchor = state(u, rho);
        let r = m.hugoniot_branch(anchor, du).unwrap();
        prop_assert!(r > rho);
        let cand = state(u + du, r);
        let res = m.hugoniot_residual(anchor, cand).unwrap();
        let scale = du * du * (r + rho);
        prop_assert!(res.abs() <= 1e-10 * scale, "residual {res} scale {scale}");
        let gap = m.hugoniot_velocity_gap(anchor, r).unwrap();
        prop_assert!(close(gap, du, 1e-9));
    }

    #[test]
    fn shock_curves_are_monotone(
        u in -2.0f64..2.0, rho in 0.1f64..4.0, a in 1e-3f64..2.0, b in 1e-3f64..2.0, eps in eps_strategy()
    ) {
        let m = model(eps);
        let s = state(u, rho);
        let (near, far) = (a.min(b), a.max(b) + 1e-3);
        // 1-shock: density grows as u drops below u_left
        prop_assert!(m.shock1_rho_of_u(s, u - far).unwrap() > m.shock1_rho_of_u(s, u - near).unwrap());
        // 2-shock: density grows as u rises above u_right
        prop_assert!(m.shock2_rho_of_u(s, u + far).unwrap() > m.shock2_rho_of_u(s, u + near).unwrap());
    }

    #[test]
    fn two_shock_solutions_satisfy_jump_conditions(
        ul in -2.0f64..2.0, jump in 0.05f64..3.0, rhol in 0.2f64..3.0, rhor in 0.2f64..3.0, eps in eps_strategy()
    ) {
        let data = RiemannData64::from_values(ul, rhol, ul - jump, rhor).unwrap();
        let m = model(eps);
        let (star, fan) = match m.solve_two_shock(&data) {
            Ok(v) => v,
            Err(Error::EpsilonTooLarge { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(star.u_star < data.left.u && star.u_star > data.right.u);
        prop_assert!(star.rho_star > rhol.max(rhor));
        prop_assert!(fan.check_invariants(1e-9));
        let shocks: Vec<_> = fan.shocks().copied().collect();
        prop_assert_eq!(shocks.len(), 2);
        for j in &shocks {
            let (mass, vel) = m.rh_residuals(j).unwrap();
            let scale = 1.0 + star.rho_star * (1.0 + ul.abs() + jump);
            prop_assert!(mass.abs() <= 1e-8 * scale, "mass residual {mass}");
            prop_assert!(vel.abs() <= 1e-8 * scale, "velocity residual {vel}");
            prop_assert!(m.lax_admissible(j));
            let production = entropy_production_shock(j, m.eps()).unwrap();
            prop_assert!(production <= 1e-12, "entropy production {production}");
        }
        prop_assert!(shocks[0].speed < shocks[1].speed);
    }

    #[test]
    fn solutions_are_continuous_across_fans(
        ul in -2.0f64..2.0, ur in -2.0f64..2.0, rhol in 0.2f64..3.0, rhor in 0.2f64..3.0, eps in eps_strategy()
    ) {
        let data = RiemannData64::from_values(ul, rhol, ur, rhor).unwrap();
        let m = model(eps);
        let fan = match m.solve(&data) {
            Ok(f) => f,
            Err(Error::EpsilonTooLarge { .. }) | Err(Error::RarefactionOverlap { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        prop_assert!(fan.check_invariants(1e-9));
        for w in fan.waves() {
            if let Wave::Rarefaction { head, tail, .. } = *w {
                for edge in [head, tail] {
                    let h = 1e-9 * (1.0 + edge.abs());
                    let a = fan.sample_xi(edge - h).unwrap();
                    let b = fan.sample_xi(edge + h).unwrap();
                    prop_assert!((a.u - b.u).abs() < 1e-6 && (a.rho - b.rho).abs() < 1e-6);
                }
            }
        }
        for k in 0..=40 {
            let xi = -6.0 + 0.3 * k as f64;
            let s = fan.sample_xi(xi).unwrap();
            prop_assert!(s.rho >= 0.0 && s.u.is_finite());
        }
        for j in fan.shocks() {
            prop_assert!(entropy_production_shock(j, m.eps()).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn mirrored_data_gives_reflected_solution(
        ul in -2.0f64..2.0, jump in 0.05f64..3.0, rhol in 0.2f64..3.0, rhor in 0.2f64..3.0, eps in eps_strategy()
    ) {
        let data = RiemannData64::from_values(ul, rhol, ul - jump, rhor).unwrap();
        let m = model(eps);
        let (Ok((a, _)), Ok((b, _))) = (m.solve_two_shock(&data), m.solve_two_shock(&data.mirrored())) else {
            return Ok(());
        };
        prop_assert!(close(a.u_star, -b.u_star, 1e-9));
        prop_assert!(close(a.rho_star, b.rho_star, 1e-9));
    }

    #[test]
    fn alternate_limit_matches_predicted_limit(
        ul in -3.0f64..3.0, ur in -3.0f64..3.0, rhol in 0.1f64..5.0, rhor in 0.1f64..5.0
    ) {
        let data = RiemannData64::from_values(ul, rhol, ur, rhor).unwrap();
        prop_assert_eq!(alt_limit(&data), predicted_limit(&data));
    }

    #[test]
    fn alternate_window_partitions_compressive_data(
        ul in -2.0f64..2.0, jump in 0.0f64..3.0, rhol in 0.2f64..3.0, rhor in 0.2f64..3.0, eps in 1e-3f64..4.0
    ) {
        let data = RiemannData64::from_values(ul, rhol, ul - jump, rhor).unwrap();
        let e = Epsilon64::new(eps).unwrap();
        let small = alt_solve_small_shock(&data, e).is_ok();
        let delta = alt_solve_delta(&data, e).is_ok();
        prop_assert!(small != delta, "jump {jump} eps {eps}: small {small} delta {delta}");
        prop_assert_eq!(small, jump <= eps);
    }
}
