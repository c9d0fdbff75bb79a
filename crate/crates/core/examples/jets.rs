// Exact second-order derivatives with `Jet2`, third-order Taylor numbers, and
// the finite-difference oracle they are checked against.

use ernstlab::numerics::{fd_partials_richardson, Elementary, Jet2, Taylor3, DEFAULT_STEP};

pub fn run_example() -> ernstlab::Result<f64> {
    // u(f, g) = ln(f + g) · sech(f − g)
    let u = |f: Jet2, g: Jet2| -> ernstlab::Result<Jet2> {
        Ok((f + g).apply(Elementary::Ln)? * (f - g).apply(Elementary::Sech)?)
    };
    let (f, g) = (0.8, 1.3);
    let jet = u(Jet2::lift_f(f), Jet2::lift_g(g))?;
    let fd = fd_partials_richardson(
        |f, g| Ok(u(Jet2::constant(f), Jet2::constant(g))?.value),
        f,
        g,
        DEFAULT_STEP,
    )?;
    println!("slot      jet                      finite difference");
    let names = ["value", "d_f", "d_g", "d_ff", "d_fg", "d_gg"];
    let mut worst: f64 = 0.0;
    for ((name, a), b) in names.iter().zip(jet.slots()).zip(fd.slots()) {
        println!("{name:<6} {a:>24.16e} {b:>24.16e}");
        worst = worst.max((a - b).abs());
    }

    // K(t) = 2 + sin t: derivatives through third order at t = 0.7
    let t = Taylor3::variable(0.7).apply(Elementary::Sin)? + Taylor3::constant(2.0);
    println!(
        "2 + sin t at 0.7: K = {:.12}, K' = {:.12}, K'' = {:.12}, K''' = {:.12}",
        t.derivative_at(0),
        t.derivative_at(1),
        t.derivative_at(2),
        t.derivative_at(3)
    );
    println!("max |jet - fd| = {worst:.3e}");
    Ok(worst)
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
