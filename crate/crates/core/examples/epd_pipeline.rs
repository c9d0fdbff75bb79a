// From a solution of the linear Euler-Poisson-Darboux equation to an Ernst
// potential through Z = sech F + i tanh F.

use ernstlab::potentials::{epd_residual, epd_to_ernst, ernst_residual, EpdBasis, EpdCombination};

pub fn run_example() -> ernstlab::Result<(f64, f64)> {
    let combo = EpdCombination::new([
        (0.7, EpdBasis::LogSum),
        (1.3, EpdBasis::ArctanRatio),
        (0.5, EpdBasis::Antisym),
    ])?;
    let n = 32;
    let node = |i: usize| 0.2 + 1.6 * i as f64 / (n - 1) as f64;
    let (mut worst_epd, mut worst_ernst): (f64, f64) = (0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let (f, g) = (node(i), node(j));
            let field = combo.eval(f, g)?;
            worst_epd = worst_epd.max(epd_residual(&field, f, g)?.abs());
            let (rk, rl) = ernst_residual(&epd_to_ernst(&field)?, f, g)?;
            worst_ernst = worst_ernst.max(rk.abs()).max(rl.abs());
        }
    }
    let z = epd_to_ernst(&combo.eval(1.0, 1.0)?)?.z();
    println!("F = 0.7 ln(f+g) + 1.3 arctan sqrt(f/g) + 0.5 (f-g)");
    println!("Z(1,1) = {z:.12}");
    println!("max EPD residual   {worst_epd:.3e}");
    println!("max Ernst residual {worst_ernst:.3e}");
    Ok((worst_epd, worst_ernst))
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
