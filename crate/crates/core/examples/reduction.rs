// First integrals of the third-order ODE for K along X1-invariant solutions.

use ernstlab::numerics::Taylor3;
use ernstlab::potentials::{x1_components, FamilyParams};
use ernstlab::reduction::{
    determining_system_residuals, first_integral_identity_check, line_integral_first_integral,
    ode_rhs, psi_values, reduced_ode_residual, AlphaAnsatz, AlphaTerm, IntegratingFactor, JetPoint,
    MonomialAlpha,
};

pub fn run_example() -> ernstlab::Result<f64> {
    let p = JetPoint::new(1.0, 1.0, 1.0, 1.0, 1.0)?;
    println!("F(1,1,1,1,1) = {}", ode_rhs(&p)?);
    let (psi1, psi2) = psi_values(&p)?;
    println!("psi at (1,1,1,1,1) = ({psi1}, {psi2})");
    for tag in IntegratingFactor::BOTH {
        println!(
            "line integral for {tag:?}: {:.10}",
            line_integral_first_integral(&p, tag, None)?
        );
    }

    // along the x1 family the first integrals are constant: psi1 = -A^2, psi2 = -B^2
    let params = FamilyParams::new(1.2, 0.9, 0.0)?;
    let g = 0.5;
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        let f = 0.2 + 0.4 * i as f64;
        let (k, _) = x1_components(&params, Taylor3::variable(f) + Taylor3::constant(g))?;
        let q = JetPoint::new(f, g, k.c[0], k.derivative_at(1), k.derivative_at(2))?;
        let (a, b) = psi_values(&q)?;
        let r = reduced_ode_residual(&q, -1.44, -0.81)?;
        println!("f = {f:.1}: psi = ({a:.12}, {b:.12}), reduced ODE residual {r:.1e}");
        worst = worst.max((a + 1.44).abs()).max((b + 0.81).abs());
    }

    let trajectory = Taylor3::new(2.0, -0.4, 0.3, 0.1);
    let off_shell =
        first_integral_identity_check(&trajectory, 0.7, 1.0, IntegratingFactor::Lambda2)?;
    println!("d psi2/df - Lambda2 (K3 - F) on an arbitrary trajectory: {off_shell:.1e}");

    let alpha: MonomialAlpha = AlphaAnsatz { c1: 1.0, c2: -2.0 }.into();
    println!(
        "determining system, exact ansatz: {:?}",
        determining_system_residuals(&alpha, 1.0, 1.0, 2.0)?
    );
    let perturbed = alpha.with_term(AlphaTerm::new(1.0, 3, -1));
    println!(
        "determining system, perturbed:    {:?}",
        determining_system_residuals(&perturbed, 1.0, 1.0, 2.0)?
    );
    Ok(worst)
}

fn main() -> ernstlab::Result<()> {
    run_example()?;
    Ok(())
}
