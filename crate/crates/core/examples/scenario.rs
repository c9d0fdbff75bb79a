// A scenario file run end to end: grid sampling, a transform chain, CSV and
// JSON output.

use ernstlab::cli::{run_scenario, Scenario};

const CONFIG: &str = r#"{
  "schema": 1,
  "source": { "family": "x1", "A": 1.0, "B": 1.0, "C": 0.0 },
  "grid": { "f_min": 0.5, "f_max": 1.5, "f_count": 8, "g_min": 0.5, "g_max": 1.5, "g_count": 8 },
  "transforms": [
    { "kind": "coordinate-action", "scale": 1.2, "shift": 0.1 },
    { "kind": "x5", "epsilon": 0.3 }
  ],
  "outputs": ["fields", "residuals", "invariants"],
  "tolerance": 1e-9
}"#;

pub fn run_example() -> ernstlab::Result<bool> {
    let scenario = Scenario::from_json(CONFIG)?;
    let dir = std::env::temp_dir().join(format!("ernstlab-scenario-{}", std::process::id()));
    let (run, files) = run_scenario(&scenario, &dir, "x1-x5")?;
    println!("{}", serde_json::to_string_pretty(&run.summary)?);
    if let Some(csv) = &files.csv {
        let text = std::fs::read_to_string(csv)?;
        for line in text.lines().take(3) {
            println!("{line}");
        }
    }
    std::fs::remove_dir_all(&dir)?;
    Ok(run.summary.passed)
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
