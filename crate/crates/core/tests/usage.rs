//! End-to-end use of the public API from outside the crate.

use riemann_limit::{
    alt_solve, epsilon_sweep, predicted_limit, Epsilon, Epsilon64, LimitSolution, Model, RiemannData, RiemannData64,
};

#[test]
fn crate_level_example() {
    let data = RiemannData::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
    let model = Model::exp(Epsilon::new(0.01).unwrap());
    let (star, fan) = model.solve_two_shock(&data).unwrap();
    assert_eq!(star.u_star, 0.0);
    assert_eq!(fan.shocks().count(), 2);
}

#[test]
fn sweep_then_limit() {
    let data = RiemannData64::from_values(2.0, 1.0, 0.0, 2.0).unwrap();
    let eps: Vec<Epsilon64> = [1e-2, 1e-4].iter().map(|&e| Epsilon::new(e).unwrap()).collect();
    let recs = epsilon_sweep(&data, &eps).unwrap();
    assert!(recs[1].err_w < recs[0].err_w);
    let LimitSolution::DeltaShock { delta, .. } = predicted_limit(&data) else {
        panic!("expected a delta shock");
    };
    // speed (u_l + u_r)/2 and weight (u_l - u_r)(rho_l + rho_r)/2
    assert_eq!((delta.speed, delta.weight_coefficient), (1.0, 3.0));
}

#[test]
fn single_precision_solve() {
    let data = RiemannData::<f32>::from_values(1.0, 1.0, -1.0, 1.0).unwrap();
    let fan = Model::exp(Epsilon::new(0.05f32).unwrap()).solve(&data).unwrap();
    assert!(fan.check_invariants(1e-4));
    let alt = alt_solve(&data, Epsilon::new(0.5f32).unwrap()).unwrap();
    assert_eq!(alt.delta().unwrap().carried_u, 0.5);
}
