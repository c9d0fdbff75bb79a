//! Exact Lie algebra of the point symmetry generators.
//!
//! ```text
//! X1 = ∂f − ∂g            X2 = f∂f + g∂g
//! X3 = ∂L                 X4 = K∂K + L∂L
//! X5 = 2KL∂K + (L² − K²)∂L
//! ```
//!
//! Everything here is rational arithmetic; no floating point enters the
//! brackets or the table.

mod poly;
mod table;

pub use poly::{poly_partial, rational, Exponents, Poly4, Var};
pub use table::{commutator_table, structure_check, CommutatorTable, StructureReport};

use std::fmt;
use std::ops::{Add, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// A vector field `ξ_f ∂f + ξ_g ∂g + η_K ∂K + η_L ∂L` with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VectorField4 {
    /// coefficients in the order `(f, g, K, L)`
    pub components: [Poly4; 4],
}

impl VectorField4 {
    pub fn new(xi_f: Poly4, xi_g: Poly4, eta_k: Poly4, eta_l: Poly4) -> Self {
        VectorField4 {
            components: [xi_f, xi_g, eta_k, eta_l],
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn component(&self, v: Var) -> &Poly4 {
        &self.components[v as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Poly4::is_zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        VectorField4 {
            components: std::array::from_fn(|i| self.components[i].scale(c)),
        }
    }

    /// The field acting as a derivation on a polynomial.
    pub fn derive(&self, p: &Poly4) -> Poly4 {
        Var::ALL.iter().fold(Poly4::zero(), |acc, v| {
            &acc + &(self.component(*v) * &p.partial(*v))
        })
    }

    /// `[self, other]^i = self(other^i) − other(self^i)`.
    pub fn bracket(&self, other: &VectorField4) -> VectorField4 {
        VectorField4 {
            components: std::array::from_fn(|i| {
                &self.derive(&other.components[i]) - &other.derive(&self.components[i])
            }),
        }
    }

    /// Evaluate `(η_K, η_L)` at a target-space point.
    pub fn eta_at(&self, f: f64, g: f64, k: f64, l: f64) -> (f64, f64) {
        let p = [f, g, k, l];
        (self.components[2].eval(p), self.components[3].eval(p))
    }
}

impl Add for &VectorField4 {
    type Output = VectorField4;
    fn add(self, rhs: &VectorField4) -> VectorField4 {
        VectorField4 {
            components: std::array::from_fn(|i| &self.components[i] + &rhs.components[i]),
        }
    }
}

impl Sub for &VectorField4 {
    type Output = VectorField4;
    fn sub(self, rhs: &VectorField4) -> VectorField4 {
        VectorField4 {
            components: std::array::from_fn(|i| &self.components[i] - &rhs.components[i]),
        }
    }
}

impl fmt::Display for VectorField4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Var::ALL
            .iter()
            .filter(|v| !self.component(**v).is_zero())
            .map(|v| format!("({})∂{}", self.component(*v), v.symbol()))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

pub fn lie_bracket(x: &VectorField4, y: &VectorField4) -> VectorField4 {
    x.bracket(y)
}

/// The five point symmetry generators `X1..X5`.
pub fn basis() -> [VectorField4; 5] {
    let one = || Poly4::constant(BigRational::one());
    let two = rational(2);
    let (f, g, k, l) = (
        Poly4::var(Var::F),
        Poly4::var(Var::G),
        Poly4::var(Var::K),
        Poly4::var(Var::L),
    );
    let z = Poly4::zero;
    [
        VectorField4::new(one(), -&one(), z(), z()),
        VectorField4::new(f.clone(), g.clone(), z(), z()),
        VectorField4::new(z(), z(), z(), one()),
        VectorField4::new(z(), z(), k.clone(), l.clone()),
        VectorField4::new(z(), z(), (&k * &l).scale(&two), &(&l * &l) - &(&k * &k)),
    ]
}

/// `Σ c_i X_i`.
pub fn combine(coefficients: &[BigRational; 5]) -> VectorField4 {
    basis()
        .iter()
        .zip(coefficients)
        .fold(VectorField4::zero(), |acc, (x, c)| &acc + &x.scale(c))
}

/// Exact coordinates of `v` in the basis `X1..X5`.
///
/// Each basis field is read as a vector of coefficients over
/// `(component, monomial)` pairs and the linear system is solved by exact
/// Gaussian elimination; anything left over is reported.
pub fn decompose_in_basis(v: &VectorField4) -> Result<[BigRational; 5]> {
    let basis = basis();
    let mut keys: Vec<(usize, Exponents)> = Vec::new();
    for field in basis.iter().chain(std::iter::once(v)) {
        for (i, p) in field.components.iter().enumerate() {
            for (e, _) in p.terms() {
                if !keys.contains(&(i, *e)) {
                    keys.push((i, *e));
                }
            }
        }
    }
    // augmented matrix: rows = keys, columns = 5 basis coefficients + rhs
    let mut rows: Vec<Vec<BigRational>> = keys
        .iter()
        .map(|(i, e)| {
            let mut row: Vec<BigRational> = basis
                .iter()
                .map(|b| b.components[*i].coefficient(e))
                .collect();
            row.push(v.components[*i].coefficient(e));
            row
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..5 {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = BigRational::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..=5 {
                    let delta = &factor * &rows[r][j];
                    rows[i][j] -= delta;
                }
            }
        }
        pivot_cols.push(col);
        r += 1;
    }

    let mut coeffs: [BigRational; 5] = std::array::from_fn(|_| BigRational::zero());
    for (row, col) in pivot_cols.iter().enumerate() {
        coeffs[*col] = rows[row][5].clone();
    }
    let residual = v - &combine(&coeffs);
    if residual.is_zero() {
        Ok(coeffs)
    } else {
        Err(Error::NotInSpan {
            residual: residual.to_string(),
        })
    }
}
