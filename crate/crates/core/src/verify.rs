//! Independent equivalence oracle.
//!
//! Each gate is tabulated on its own from its definition, working on
//! digits of the table index directly, and the gate tables are composed.
//! Nothing here calls the circuit evaluator.

use crate::circuit::{Circuit, Gate, GateStats};
use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::residue::{PermTable, SizeGuard, Word};

/// Index arithmetic on Z_k^n with coordinate 0 most significant.
struct Digits {
    k: usize,
    strides: Vec<usize>,
}

impl Digits {
    fn new(k: usize, n: usize) -> Self {
        let mut strides = vec![1; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * k;
        }
        Digits { k, strides }
    }

    #[inline]
    fn get(&self, idx: usize, wire: usize) -> usize {
        (idx / self.strides[wire]) % self.k
    }

    /// Replaces the digit on `wire` (currently `old`) by `new`.
    #[inline]
    fn with(&self, idx: usize, wire: usize, old: usize, new: usize) -> usize {
        idx - old * self.strides[wire] + new * self.strides[wire]
    }
}

/// Image of index `idx` under a single gate.
fn gate_image(d: &Digits, gate: &Gate, idx: usize) -> usize {
    let k = d.k;
    let s_map = |v: usize| match v {
        0 => 1,
        1 => 0,
        v => v,
    };
    match *gate {
        Gate::D(i, j) => {
            let (a, b) = (d.get(idx, i), d.get(idx, j));
            d.with(idx, j, b, (a + b) % k)
        }
        Gate::U(i, j) => {
            let (a, b) = (d.get(idx, i), d.get(idx, j));
            d.with(idx, i, a, (a + b) % k)
        }
        Gate::H { coeff, wire } => {
            let a = d.get(idx, wire);
            d.with(idx, wire, a, (a * coeff as usize) % k)
        }
        Gate::V(i) => {
            let a = d.get(idx, i);
            d.with(idx, i, a, (a + 1) % k)
        }
        Gate::S(i) => {
            let a = d.get(idx, i);
            d.with(idx, i, a, s_map(a))
        }
        Gate::Cns {
            ref controls,
            target,
        } => {
            if controls.iter().any(|&c| d.get(idx, c) != 0) {
                idx
            } else {
                let a = d.get(idx, target);
                d.with(idx, target, a, s_map(a))
            }
        }
        Gate::Swap(i, j) => {
            let (a, b) = (d.get(idx, i), d.get(idx, j));
            let tmp = d.with(idx, i, a, b);
            d.with(tmp, j, b, a)
        }
    }
}

pub fn oracle_table(c: &Circuit, guard: SizeGuard) -> Result<PermTable> {
    oracle_table_using(c, guard, Strategy::default())
}

/// Composes per-gate tables, first gate first.
pub fn oracle_table_using(c: &Circuit, guard: SizeGuard, strategy: Strategy) -> Result<PermTable> {
    let len = guard.table_len(c.k(), c.n())?;
    c.validate()?;
    let digits = Digits::new(c.k().get() as usize, c.n());
    let mut acc: Vec<usize> = (0..len).collect();
    for gate in c.gates() {
        let gate_table = strategy.tabulate(len, |i| gate_image(&digits, gate, i));
        strategy.compose_in_place(&mut acc, &gate_table);
    }
    PermTable::from_table(c.k(), c.n(), acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub input: Word,
    pub expected: Word,
    pub actual: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub equivalent: bool,
    /// Smallest failing input, if any.
    pub first_mismatch: Option<Mismatch>,
    pub stats: GateStats,
    pub arity_ok: bool,
    pub alphabet_ok: bool,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.equivalent && self.arity_ok && self.alphabet_ok
    }
}

impl std::fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "equivalent: {}", self.equivalent)?;
        writeln!(f, "arity_ok: {}", self.arity_ok)?;
        writeln!(f, "alphabet_ok: {}", self.alphabet_ok)?;
        writeln!(f, "stats: {}", self.stats)?;
        if let Some(m) = &self.first_mismatch {
            writeln!(
                f,
                "first mismatch: input [{}] expected [{}] actual [{}]",
                m.input, m.expected, m.actual
            )?;
        }
        Ok(())
    }
}

/// Whether a gate belongs to the final generator alphabet
/// {D, U, H, V, S, CNS with at most one control}.
pub fn in_generator_alphabet(g: &Gate) -> bool {
    match g {
        Gate::D(..) | Gate::U(..) | Gate::H { .. } | Gate::V(_) | Gate::S(_) => true,
        Gate::Cns { controls, .. } => controls.len() <= 1,
        Gate::Swap(..) => false,
    }
}

pub fn certify(c: &Circuit, p: &PermTable, max_arity: usize, guard: SizeGuard) -> Result<VerificationReport> {
    if c.k() != p.k() || c.n() != p.n() {
        return Err(Error::DimensionMismatch {
            expected_k: p.k().get(),
            expected_n: p.n(),
            found_k: c.k().get(),
            found_n: c.n(),
        });
    }
    let strategy = Strategy::default();
    let actual = oracle_table_using(c, guard, strategy)?;
    let first = strategy.find_first(p.len(), |i| actual.apply(i) != p.apply(i));
    let (k, n) = (p.k(), p.n());
    let first_mismatch = first.map(|i| Mismatch {
        input: Word::decode(i, k, n).expect("index in range"),
        expected: Word::decode(p.apply(i), k, n).expect("index in range"),
        actual: Word::decode(actual.apply(i), k, n).expect("index in range"),
    });
    Ok(VerificationReport {
        equivalent: first_mismatch.is_none(),
        first_mismatch,
        stats: c.stats(),
        arity_ok: c.gates().iter().all(|g| g.arity() <= max_arity),
        alphabet_ok: c.gates().iter().all(in_generator_alphabet),
    })
}
