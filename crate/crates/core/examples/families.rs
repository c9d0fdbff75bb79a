// The two closed-form families and the complex trigonometric family, with
// their Ernst residuals on a grid.

use ernstlab::potentials::{
    ernst_residual, eval_x1_family, eval_x2_family, invariant_surface_residual, trig_family_sample,
    FamilyParams, SolutionFamily, SurfaceGenerator, TrigFamilyParams, TrigVariant,
};

pub fn run_example() -> ernstlab::Result<f64> {
    let p = FamilyParams::new(1.0, 1.0, 0.0)?;
    let z = eval_x1_family(&p, 1.0, 1.0)?.z();
    println!("x1 family A=B=1 at (1,1): Z = {z:.6}");

    let n = 16;
    let node = |i: usize| 0.1 + 1.9 * i as f64 / (n - 1) as f64;
    let params = FamilyParams::new(1.3, 0.7, -0.4)?;
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let (f, g) = (node(i), node(j));
            for s in [
                eval_x1_family(&params, f, g)?,
                eval_x2_family(&params, f, g)?,
            ] {
                let (rk, rl) = ernst_residual(&s, f, g)?;
                worst = worst.max(rk.abs()).max(rl.abs());
            }
        }
    }
    println!("max residual of both families on a {n}x{n} grid over [0.1,2]^2: {worst:.3e}");

    let x2 = SolutionFamily::X2(params);
    let (rk, rl) = invariant_surface_residual(&x2, SurfaceGenerator::X2, 0.6, 1.4)?;
    println!("x2 family invariant surface residual: ({rk:.1e}, {rl:.1e})");

    // the real x1 family as a special case of the complex family
    let trig = TrigFamilyParams::from_real_family(&params)?;
    let s = trig_family_sample(&trig, TrigVariant::I, 0.6, 1.4)?;
    let (rk, rl) = ernst_residual(&s, 0.6, 1.4)?;
    println!(
        "trig family: K = {:.12}, L = {:.12}, |residual| = {:.1e}",
        s.k.value,
        s.l.value,
        rk.norm().max(rl.norm())
    );
    println!(
        "x1 family:   Z = {:.12}",
        eval_x1_family(&params, 0.6, 1.4)?.z()
    );
    Ok(worst)
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
