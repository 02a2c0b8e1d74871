//! Synthesis of invertible linear and affine maps over Z_k into D/U/H/V
//! circuits, and the reverse direction (reading a matrix off a circuit,
//! recognizing an affine permutation table).
//!
//! Z_k need not be a field, so elimination cannot simply divide by a
//! nonzero pivot. Before each pivot is used, other rows are added into it
//! until it is a unit (see [`pivot_unitize`]). The elementary operations
//! that reduce the matrix to the identity are recorded, and the circuit is
//! their inverses in reverse order.

use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::residue::{decode_into, gcd, Modulus, PermTable, Word};
use crate::matrix::{AffineMap, MatrixModK};

/// Adds `coeff` times row `from` to the pivot row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowAdd {
    pub from: usize,
    pub coeff: u32,
}

/// Finds row additions that turn `column[0]` into a unit.
///
/// `column[1..]` are the donor rows. Each round tries every donor with
/// every coefficient in `1..k` and keeps the addition giving the smallest
/// `gcd(pivot, k)`; a round that cannot lower it means the entries do not
/// generate the unit ideal.
pub fn pivot_unitize(column: &[u32], k: Modulus) -> Result<Vec<RowAdd>> {
    let modulus = k.get() as u64;
    let Some(&first) = column.first() else {
        return Err(Error::NoUnitCombination);
    };
    let mut pivot = k.reduce(first as u64);
    let mut steps = Vec::new();
    while gcd(pivot as u64, modulus) != 1 {
        let current = gcd(pivot as u64, modulus);
        let mut best: Option<(u64, RowAdd, u32)> = None;
        for (from, &donor) in column.iter().enumerate().skip(1) {
            for coeff in 1..k.get() {
                let candidate = k.add(pivot, k.mul(coeff, donor));
                let g = gcd(candidate as u64, modulus);
                if g < current && best.is_none_or(|(bg, ..)| g < bg) {
                    best = Some((g, RowAdd { from, coeff }, candidate));
                }
            }
        }
        let (_, step, value) = best.ok_or(Error::NoUnitCombination)?;
        steps.push(step);
        pivot = value;
    }
    Ok(steps)
}

#[derive(Debug, Clone, Copy)]
enum ElementaryOp {
    /// `row[to] += coeff * row[from]`
    Add { from: usize, to: usize, coeff: u32 },
    /// `row[row] *= factor`
    Scale { row: usize, factor: u32 },
}

/// Gates computing `x_to += x_from`, repeated `times`.
fn add_wire_gates(from: usize, to: usize, times: u32) -> impl Iterator<Item = Gate> {
    let gate = if from < to {
        Gate::D(from, to)
    } else {
        Gate::U(to, from)
    };
    std::iter::repeat_n(gate, times as usize)
}

pub fn synth_linear(m: &MatrixModK) -> Result<Circuit> {
    let k = m.k();
    let n = m.n();
    if !m.is_invertible() {
        return Err(Error::NotInvertible(k.get()));
    }
    let mut work = m.clone();
    let mut ops = Vec::new();
    for col in 0..n {
        let column: Vec<u32> = (col..n).map(|r| work.get(r, col)).collect();
        for step in pivot_unitize(&column, k)? {
            let from = col + step.from;
            work.add_row(from, col, step.coeff);
            ops.push(ElementaryOp::Add {
                from,
                to: col,
                coeff: step.coeff,
            });
        }
        let pivot = work.get(col, col);
        if pivot != 1 {
            let factor = k.inverse(pivot)?;
            work.scale_row(col, factor);
            ops.push(ElementaryOp::Scale { row: col, factor });
        }
        for row in 0..n {
            let v = work.get(row, col);
            if row != col && v != 0 {
                let coeff = k.neg(v);
                work.add_row(col, row, coeff);
                ops.push(ElementaryOp::Add {
                    from: col,
                    to: row,
                    coeff,
                });
            }
        }
    }
    debug_assert_eq!(work, MatrixModK::identity(k, n));

    let mut gates = Vec::new();
    for op in ops.iter().rev() {
        match *op {
            ElementaryOp::Add { from, to, coeff } => {
                gates.extend(add_wire_gates(from, to, k.neg(coeff)));
            }
            ElementaryOp::Scale { row, factor } => gates.push(Gate::H {
                coeff: k.inverse(factor)?,
                wire: row,
            }),
        }
    }
    Circuit::from_gates(k, n, gates)
}

/// The linear part followed by `offset[i]` copies of `V(i)` on each wire.
pub fn synth_affine(a: &AffineMap) -> Result<Circuit> {
    let mut circuit = synth_linear(&a.linear)?;
    for (wire, &u) in a.offset.coords().iter().enumerate() {
        for _ in 0..u {
            circuit.push(Gate::V(wire))?;
        }
    }
    Ok(circuit)
}

/// The matrix `M` with `evaluate(c, w) = M w`; gates are left-composed.
pub fn matrix_of_circuit(c: &Circuit) -> Result<MatrixModK> {
    let mut m = MatrixModK::identity(c.k(), c.n());
    for g in c.gates() {
        match *g {
            Gate::D(i, j) => m.add_row(i, j, 1),
            Gate::U(i, j) => m.add_row(j, i, 1),
            Gate::H { coeff, wire } => m.scale_row(wire, coeff),
            Gate::Swap(i, j) => m.swap_rows(i, j),
            Gate::V(_) | Gate::S(_) | Gate::Cns { .. } => {
                return Err(Error::NonLinearGate(g.to_string()))
            }
        }
    }
    Ok(m)
}

/// Recovers `p` as `w -> u + M w` if it is affine.
///
/// Takes `u = p(0)` and column `i` of `M` as `p(e_i) - u`, then checks the
/// candidate against every entry of the table.
pub fn detect_affine(p: &PermTable) -> Result<AffineMap> {
    detect_affine_using(p, Strategy::default())
}

pub fn detect_affine_using(p: &PermTable, strategy: Strategy) -> Result<AffineMap> {
    let (k, n) = (p.k(), p.n());
    let offset = p.apply_word(&Word::zero(n));
    let mut linear = MatrixModK::identity(k, n);
    for i in 0..n {
        let image = p.apply_word(&Word::unit(n, i));
        for r in 0..n {
            linear.set(r, i, k.sub(image.0[r], offset.0[r]));
        }
    }
    let candidate = AffineMap::new(linear, offset)?;
    let mismatch = strategy.find_first(p.len(), |idx| {
        let mut coords = vec![0; n];
        decode_into(idx, k, &mut coords);
        candidate.apply(&Word(coords)).encode(k) != p.apply(idx)
    });
    match mismatch {
        Some(_) => Err(Error::NotAffine),
        None => Ok(candidate),
    }
}
