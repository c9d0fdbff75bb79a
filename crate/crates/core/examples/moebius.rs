// The symmetry group in action: Möbius maps on Z, coordinate actions on
// (f, g), and a transform chain applied to an exact solution.

use ernstlab::potentials::{ernst_residual, ErnstField, FamilyParams, SolutionFamily};
use ernstlab::transforms::{
    apply_x5_action, compose_moebius, ehlers_from_real, moebius_from_params, CoordinateAction,
    GroupParams, MoebiusMatrix, Transform, TransformedField,
};
use num_complex::Complex64;

pub fn run_example() -> ernstlab::Result<f64> {
    let m = moebius_from_params(-0.5, -(2f64.ln()), -1.0);
    for zo in [0.5, 2.0, 4.0] {
        println!(
            "Zo = {zo}: matrix {:.12}, closed form {:.12}",
            m.apply(Complex64::new(zo, 0.0))?,
            ehlers_from_real(zo)?
        );
    }

    let z = Complex64::new(0.8, -0.3);
    let twice = apply_x5_action(0.2, apply_x5_action(0.3, z)?)?;
    println!(
        "X5(0.2) after X5(0.3): {twice:.12}; X5(0.5): {:.12}",
        apply_x5_action(0.5, z)?
    );
    let product = compose_moebius(
        &MoebiusMatrix::x5(0.2),
        &MoebiusMatrix::shift_scale(0.7, -0.2),
    );
    println!(
        "composed matrix entries {:?}, det {:.15}",
        product.entries(),
        product.determinant()
    );

    let base = SolutionFamily::X1(FamilyParams::new(1.0, 1.0, 0.0)?);
    let group = GroupParams {
        alpha: 0.4,
        beta: 0.3,
        gamma: 0.7,
        delta: -0.2,
        epsilon: 0.3,
    };
    let mut chain = group.chain();
    chain.push(Transform::CoordinateAction(CoordinateAction::new(
        1.2, -0.1,
    )?));
    let field = TransformedField::new(base, chain)?;
    let mut worst: f64 = 0.0;
    for i in 0..16 {
        for j in 0..16 {
            let (f, g) = (0.2 + 0.1 * i as f64, 0.2 + 0.1 * j as f64);
            let (rk, rl) = ernst_residual(&field.sample(f, g)?, f, g)?;
            worst = worst.max(rk.abs()).max(rl.abs());
        }
    }
    println!("transformed x1 solution: max residual {worst:.3e}");
    Ok(worst)
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
