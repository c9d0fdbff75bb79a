use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use super::{basis, decompose_in_basis, lie_bracket, rational, VectorField4};
use crate::error::Result;

pub const BASIS_NAMES: [&str; 5] = ["X1", "X2", "X3", "X4", "X5"];

/// All brackets `[Xi, Xj]` written in the basis `X1..X5`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutatorTable {
    entries: Vec<Vec<[BigRational; 5]>>,
}

impl CommutatorTable {
    /// Coefficients of `[X_{row+1}, X_{col+1}]`.
    pub fn entry(&self, row: usize, col: usize) -> &[BigRational; 5] {
        &self.entries[row][col]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..5).all(|i| {
            (0..5).all(|j| {
                self.entries[i][j]
                    .iter()
                    .zip(&self.entries[j][i])
                    .all(|(a, b)| (a + b).is_zero())
            })
        })
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = (0..5)
            .flat_map(|i| (0..5).map(move |j| (i, j)))
            .map(|(i, j)| {
                json!({
                    "left": BASIS_NAMES[i],
                    "right": BASIS_NAMES[j],
                    "bracket": render_combination(self.entry(i, j)),
                    "coefficients": self.entry(i, j).iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "basis": BASIS_NAMES, "entries": entries })
    }
}

/// `"0"`, `"X1"`, `"2 X4"`, `"-X5"`, `"X1 + 1/2 X3"`.
pub fn render_combination(c: &[BigRational; 5]) -> String {
    let mut out = String::new();
    for (k, coeff) in c.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        let mag = coeff.abs();
        let neg = coeff.is_negative();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !mag.is_one() {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(BASIS_NAMES[k]);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for CommutatorTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| render_combination(self.entry(i, j)))
                    .collect()
            })
            .collect();
        let width = cells
            .iter()
            .flatten()
            .map(|s| s.chars().count())
            .max()
            .unwrap_or(1)
            .max(5);
        write!(f, "{:<6}", "[.,.]")?;
        for name in BASIS_NAMES {
            write!(f, "| {name:<width$} ")?;
        }
        writeln!(f)?;
        writeln!(f, "{}", "-".repeat(6 + 5 * (width + 3)))?;
        for (i, row) in cells.iter().enumerate() {
            write!(f, "{:<6}", BASIS_NAMES[i])?;
            for cell in row {
                write!(f, "| {cell:<width$} ")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn commutator_table() -> Result<CommutatorTable> {
    let x = basis();
    let mut entries = Vec::with_capacity(5);
    for xi in &x {
        let mut row = Vec::with_capacity(5);
        for xj in &x {
            row.push(decompose_in_basis(&lie_bracket(xi, xj))?);
        }
        entries.push(row);
    }
    Ok(CommutatorTable { entries })
}

/// Outcome of the structural checks on the symmetry algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// `[X1, X2] = X1`, so `⟨X1, X2⟩` is the non-abelian two-dimensional algebra.
    pub affine_block_closed: bool,
    /// Brackets within `⟨X3, X4, X5⟩` stay in that span.
    pub sl2_block_closed: bool,
    /// Every bracket between the two blocks vanishes.
    pub cross_brackets_vanish: bool,
    /// `h = −2X4`, `e = X3`, `f = −X5` obey `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
    pub sl2_standard_relations: bool,
    pub antisymmetric: bool,
    /// Jacobi identity on all ten unordered triples of basis fields.
    pub jacobi: bool,
}

impl StructureReport {
    pub fn all_passed(&self) -> bool {
        self.affine_block_closed
            && self.sl2_block_closed
            && self.cross_brackets_vanish
            && self.sl2_standard_relations
            && self.antisymmetric
            && self.jacobi
    }
}

pub fn structure_check() -> Result<StructureReport> {
    let x = basis();
    let table = commutator_table()?;
    let zero_outside =
        |c: &[BigRational; 5], keep: &[usize]| (0..5).all(|k| keep.contains(&k) || c[k].is_zero());

    let affine_block_closed = lie_bracket(&x[0], &x[1]) == x[0]
        && (0..2).all(|i| (0..2).all(|j| zero_outside(table.entry(i, j), &[0, 1])));
    let sl2_block_closed =
        (2..5).all(|i| (2..5).all(|j| zero_outside(table.entry(i, j), &[2, 3, 4])));
    let cross_brackets_vanish = (0..2).all(|i| (2..5).all(|j| lie_bracket(&x[i], &x[j]).is_zero()));

    let h = x[3].scale(&rational(-2));
    let e = x[2].clone();
    let f = x[4].scale(&rational(-1));
    let sl2_standard_relations = lie_bracket(&h, &e) == e.scale(&rational(2))
        && lie_bracket(&h, &f) == f.scale(&rational(-2))
        && lie_bracket(&e, &f) == h;

    let mut jacobi = true;
    for i in 0..5 {
        for j in i + 1..5 {
            for k in j + 1..5 {
                let sum: VectorField4 = [
                    lie_bracket(&lie_bracket(&x[i], &x[j]), &x[k]),
                    lie_bracket(&lie_bracket(&x[j], &x[k]), &x[i]),
                    lie_bracket(&lie_bracket(&x[k], &x[i]), &x[j]),
                ]
                .iter()
                .fold(VectorField4::zero(), |acc, v| &acc + v);
                jacobi &= sum.is_zero();
            }
        }
    }

    Ok(StructureReport {
        affine_block_closed,
        sl2_block_closed,
        cross_brackets_vanish,
        sl2_standard_relations,
        antisymmetric: table.is_antisymmetric(),
        jacobi,
    })
}
