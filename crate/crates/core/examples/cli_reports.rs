//! Driving the command line from code and reading back its JSON reports.

use symtoep::cli::run;
use symtoep::error::Result;

pub fn run_example() -> Result<()> {
    let dir = tempfile::tempdir()?;
    let phi = dir.path().join("phi.json");
    std::fs::write(
        &phi,
        r#"{"d": 2, "terms": [{"m": [1, 0], "re": "1", "im": "0"}, {"m": [0, -1], "re": "1", "im": "0"}]}"#,
    )?;
    let out = dir.path().join("report.json");
    let code = run([
        "symtoep", "verify", "--suite", "brown-halmos", "--symbol", phi.to_str().unwrap(), "--out", out.to_str().unwrap(),
    ]);
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out)?)?;
    println!("brown-halmos on s1 + conj(s1): exit {code}, verdict {}", report["report"]["verdict"]);

    let code = run(["symtoep", "verify", "--suite", "brown-halmos", "--operator", "shiftY1", "--out", out.to_str().unwrap()]);
    println!("brown-halmos on Y_1: exit {code}");

    let code = run(["symtoep", "gamma", "member", "--point", "0,-1", "--boundary", "--out", out.to_str().unwrap()]);
    println!("(0, -1) on the boundary: exit {code}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<()> {
    run_example()
}
