//! Chi-square upper tails against closed forms that need no gamma function.

use boxshare::fitting::chi_square_sf;

/// `Q(k, x/2)` for `dof = 2k`: `exp(-x/2) * sum_{j<k} (x/2)^j / j!`.
fn even_dof_tail(x: f64, dof: u64) -> f64 {
    let half = x / 2.0;
    let mut term = 1.0;
    let mut total = 1.0;
    for j in 1..dof / 2 {
        term *= half / j as f64;
        total += term;
    }
    (-half).exp() * total
}

#[test]
fn two_degrees_of_freedom_is_exponential() {
    for x in [0.0, 1e-6, 0.3, 2.0, 5.991464547107979, 40.0, 300.0] {
        let p = chi_square_sf(x, 2).unwrap();
        let expected = (-x / 2.0).exp();
        assert!(
            (p - expected).abs() <= 1e-13 * expected.max(1e-300),
            "x={x}: {p} vs {expected}"
        );
    }
}

#[test]
fn even_degrees_of_freedom_match_poisson_sum() {
    for dof in [4u64, 6, 10, 20, 50, 100] {
        for x in [
            0.5,
            3.0,
            dof as f64 - 1.0,
            dof as f64 + 7.5,
            3.0 * dof as f64,
            250.0,
        ] {
            let p = chi_square_sf(x, dof).unwrap();
            let expected = even_dof_tail(x, dof);
            let err = (p - expected).abs() / expected;
            assert!(
                err <= 1e-11,
                "dof={dof} x={x}: {p} vs {expected} (rel {err:e})"
            );
        }
    }
}

#[test]
fn textbook_critical_values() {
    // 0.05 and 0.001 critical points of common tables
    for (x, dof, p) in [
        (3.841458820694124, 1, 0.05),
        (10.827566170662733, 1, 0.001),
        (15.50731305586545, 8, 0.05),
        (26.12448155837614, 8, 0.001),
    ] {
        let got = chi_square_sf(x, dof).unwrap();
        assert!((got - p).abs() < 1e-9, "dof={dof}: {got}");
    }
}

#[test]
fn monotone_in_statistic() {
    let mut previous = 1.0;
    for i in 0..200 {
        let p = chi_square_sf(i as f64 * 0.25, 7).unwrap();
        assert!(p <= previous);
        previous = p;
    }
}
