//! Windowed norms of `T_{s_1}` grow towards the sup norm of the symbol, and
//! never exceed the windowed Laurent norms.

use symtoep::error::Result;
use symtoep::hardy::lift_verify;
use symtoep::matrix::NormOptions;
use symtoep::partition::enumerate_window;
use symtoep::symbol::elementary;

pub fn run_example() -> Result<()> {
    let windows = [4, 8, 12]
        .iter()
        .map(|&t| enumerate_window(2, t, -t))
        .collect::<Result<Vec<_>>>()?;
    let opts = NormOptions {
        iterations: 300,
        grid: 256,
        ..NormOptions::default()
    };
    let r = lift_verify(&elementary(2, 1)?, &windows, opts)?;
    println!("sampled sup: {}", r.details["sampledSup"]);
    for n in &r.norms {
        println!(
            "maxTop {:>2}: Toeplitz {:.6}  Laurent {:.6}",
            n["maxTop"],
            n["toeplitz"].as_f64().unwrap_or(f64::NAN),
            n["laurent"].as_f64().unwrap_or(f64::NAN)
        );
    }
    assert!(r.passed());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
