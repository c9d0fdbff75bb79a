// Exact commutators of the five symmetry generators.

use ernstlab::lie::{basis, commutator_table, decompose_in_basis, lie_bracket, structure_check};

pub fn run_example() -> ernstlab::Result<bool> {
    let table = commutator_table()?;
    print!("{table}");
    let x = basis();
    let bracket = lie_bracket(&x[2], &x[4]);
    println!("[X3, X5] = {bracket}");
    println!(
        "coordinates in X1..X5: {:?}",
        decompose_in_basis(&bracket)?.map(|c| c.to_string())
    );
    let report = structure_check()?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(report.all_passed())
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
