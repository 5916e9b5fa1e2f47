//! Symbol algebra: elementary symmetric functions, products, conjugates,
//! evaluation, and the JSON format read by the command line.

use num_complex::Complex64;
use symtoep::error::Result;
use symtoep::scalar::Scalar;
use symtoep::symbol::{battery, combine, conjugate, elementary, evaluate, multiply, sup_norm_sampled, Symbol};

pub fn run_example() -> Result<()> {
    let d = 2;
    let s1 = elementary(d, 1)?;
    let p = elementary(d, 2)?;
    let one = Scalar::from_integer(1);

    // s_1 + conj(s_1): a real symbol that is not analytic
    let phi = combine(&one, &s1, &one, &conjugate(&s1))?;
    println!("phi = s1 + conj(s1): {} terms, height {}, analytic {}", phi.len(), phi.height(), phi.is_analytic());

    // conj(p) p = 1 on the torus
    let unit = multiply(&conjugate(&p), &p)?;
    assert_eq!(unit, Symbol::unit(d));

    let z = [Complex64::from_polar(1.0, 0.3), Complex64::from_polar(1.0, -1.1)];
    println!("s1^2 at {z:?} = {}", evaluate(&multiply(&s1, &s1)?, &z)?);
    println!("sampled sup of s1 on a 256 grid: {:.6}", sup_norm_sampled(&s1, 256)?);

    let json = phi.to_json();
    println!("JSON: {json}");
    assert_eq!(Symbol::from_json(&json)?, phi);

    for d in 2..=3 {
        println!("test battery in d = {d}: {} symbols", battery(d)?.len());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
