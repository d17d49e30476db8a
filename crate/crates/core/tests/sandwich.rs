use sigraph::experiment::sandwich_check;
use sigraph::scaling::{coupling_k_bounds, solve_t};

// A point deep enough in the tP >> ln n regime for K- to be positive.
#[test]
fn sandwich_orders_at_a_feasible_point() {
    let (n, pool, s) = (200, 10_000, 2);
    let t = solve_t(n, pool, s, 1, 0.0).unwrap().param;
    let bounds = coupling_k_bounds(t, pool, n).unwrap();
    assert!(bounds.k_minus > f64::from(s));
    let r = sandwich_check(n, t, pool, s, 1, 400, 21, 0.95).unwrap();
    assert!(r.items_lower < r.items_upper);
    assert!(r.ordered(), "{r:?}");
    for triple in [r.vconn, r.econn, r.mindeg] {
        assert!(triple.lower.estimate <= triple.upper.estimate);
    }
    // the lower model is nearly always disconnected and the upper one nearly always connected
    assert!(r.mindeg.lower.estimate < 0.05 && r.mindeg.upper.estimate > 0.95, "{r:?}");
}

#[test]
fn sandwich_is_deterministic() {
    let a = sandwich_check(60, 0.2, 500, 1, 1, 50, 4, 0.95).unwrap();
    let b = sandwich_check(60, 0.2, 500, 1, 1, 50, 4, 0.95).unwrap();
    assert_eq!(a, b);
}
