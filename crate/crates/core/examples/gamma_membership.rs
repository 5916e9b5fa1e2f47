//! Membership of points in the closed symmetrized polydisk and its
//! distinguished boundary, via the roots of the associated polynomial.

use num_complex::Complex64;
use symtoep::gamma::{point_in_bgamma, point_in_gamma, symmetrize};

pub fn run_example() -> symtoep::error::Result<()> {
    let c = |re: f64| Complex64::new(re, 0.0);
    for pt in [vec![c(2.0), c(1.0)], vec![c(3.0), c(1.0)], vec![c(0.0), c(-1.0)], vec![c(1.0), c(0.25)]] {
        let g = point_in_gamma(&pt, 1e-9);
        let b = point_in_bgamma(&pt, 1e-9);
        println!("{pt:?}: in Gamma {} (margin {:+.4}), in boundary {}", g.in_set, g.margin, b.in_set);
    }
    let torus = [Complex64::from_polar(1.0, 0.4), Complex64::from_polar(1.0, 2.0), Complex64::from_polar(1.0, -2.5)];
    let s = symmetrize(&torus);
    assert!(point_in_bgamma(&s, 1e-9).in_set);
    println!("symmetrized torus point lies on the boundary");
    Ok(())
}

#[allow(dead_code)]
fn main() -> symtoep::error::Result<()> {
    run_example()
}
