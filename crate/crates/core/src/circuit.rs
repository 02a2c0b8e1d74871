//! Gate-level IR over Z_k: generator gates, circuits, and their semantics.
//!
//! Gates act in list order (first gate first). Controlled negations fire
//! when every control wire reads 0.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::residue::{decode_into, encode_coords, seeded_rng, Modulus, PermTable, SizeGuard, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    /// `(x_i, x_j) -> (x_i, x_i + x_j)`
    D(usize, usize),
    /// `(x_i, x_j) -> (x_i + x_j, x_j)`
    U(usize, usize),
    /// `x_i -> a * x_i` for a unit `a`.
    H { coeff: u32, wire: usize },
    /// `x_i -> x_i + 1`
    V(usize),
    /// Exchanges 0 and 1, fixes everything else.
    S(usize),
    /// Applies S to `target` iff every control reads 0.
    Cns { controls: Vec<usize>, target: usize },
    Swap(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    D,
    U,
    H,
    V,
    S,
    Cns,
    Swap,
}

impl Gate {
    /// Controlled S; an empty control set yields the plain S gate.
    pub fn controlled_s(mut controls: Vec<usize>, target: usize) -> Gate {
        if controls.is_empty() {
            Gate::S(target)
        } else {
            controls.sort_unstable();
            Gate::Cns { controls, target }
        }
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::D(..) => GateKind::D,
            Gate::U(..) => GateKind::U,
            Gate::H { .. } => GateKind::H,
            Gate::V(_) => GateKind::V,
            Gate::S(_) => GateKind::S,
            Gate::Cns { .. } => GateKind::Cns,
            Gate::Swap(..) => GateKind::Swap,
        }
    }

    /// Every wire the gate touches, controls included.
    pub fn wires(&self) -> Vec<usize> {
        match self {
            Gate::D(i, j) | Gate::U(i, j) | Gate::Swap(i, j) => vec![*i, *j],
            Gate::H { wire, .. } | Gate::V(wire) | Gate::S(wire) => vec![*wire],
            Gate::Cns { controls, target } => {
                let mut w = controls.clone();
                w.push(*target);
                w
            }
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Gate::D(..) | Gate::U(..) | Gate::Swap(..) => 2,
            Gate::H { .. } | Gate::V(_) | Gate::S(_) => 1,
            Gate::Cns { controls, .. } => controls.len() + 1,
        }
    }

    /// Number of controls for CNS gates, 0 otherwise.
    pub fn control_count(&self) -> usize {
        match self {
            Gate::Cns { controls, .. } => controls.len(),
            _ => 0,
        }
    }

    pub fn validate(&self, k: Modulus, n: usize) -> Result<()> {
        let wires = self.wires();
        let mut seen = BTreeSet::new();
        for &w in &wires {
            if w >= n {
                return Err(Error::WireOutOfRange { wire: w, wires: n });
            }
            if !seen.insert(w) {
                return Err(Error::WireCollision(w));
            }
        }
        if let Gate::H { coeff, .. } = self {
            if *coeff >= k.get() {
                return Err(Error::OutOfRange {
                    value: *coeff as u64,
                    bound: k.get() as u64,
                });
            }
            k.inverse(*coeff)?;
        }
        Ok(())
    }

    /// Applies the gate in place. Assumes the gate was validated.
    #[inline]
    pub fn apply(&self, k: Modulus, x: &mut [u32]) {
        match *self {
            Gate::D(i, j) => x[j] = k.add(x[i], x[j]),
            Gate::U(i, j) => x[i] = k.add(x[i], x[j]),
            Gate::H { coeff, wire } => x[wire] = k.mul(coeff, x[wire]),
            Gate::V(i) => x[i] = k.add(x[i], 1),
            Gate::S(i) => x[i] = negate(x[i]),
            Gate::Cns {
                ref controls,
                target,
            } => {
                if controls.iter().all(|&c| x[c] == 0) {
                    x[target] = negate(x[target]);
                }
            }
            Gate::Swap(i, j) => x.swap(i, j),
        }
    }

    /// The inverse expressed with gates of the same kind.
    pub fn inverse(&self, k: Modulus) -> Vec<Gate> {
        let repeat = |g: &Gate| vec![g.clone(); k.get() as usize - 1];
        match self {
            Gate::D(..) | Gate::U(..) | Gate::V(_) => repeat(self),
            Gate::H { coeff, wire } => vec![Gate::H {
                coeff: k.inverse(*coeff).expect("H coefficient is a unit"),
                wire: *wire,
            }],
            Gate::S(_) | Gate::Cns { .. } | Gate::Swap(..) => vec![self.clone()],
        }
    }
}

#[inline]
fn negate(x: u32) -> u32 {
    match x {
        0 => 1,
        1 => 0,
        other => other,
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::D(i, j) => write!(f, "D {i} {j}"),
            Gate::U(i, j) => write!(f, "U {i} {j}"),
            Gate::H { coeff, wire } => write!(f, "H {coeff} {wire}"),
            Gate::V(i) => write!(f, "V {i}"),
            Gate::S(i) => write!(f, "S {i}"),
            Gate::Cns { controls, target } if controls.is_empty() => write!(f, "S {target}"),
            Gate::Cns { controls, target } => {
                f.write_str("CNS ")?;
                for (idx, c) in controls.iter().enumerate() {
                    if idx > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, " {target}")
            }
            Gate::Swap(i, j) => write!(f, "SWAP {i} {j}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GateStats {
    pub d: usize,
    pub u: usize,
    pub h: usize,
    pub v: usize,
    pub s: usize,
    pub cns: usize,
    pub swap: usize,
    pub max_controls: usize,
    pub total: usize,
    pub max_arity: usize,
}

impl GateStats {
    pub fn count(&self, kind: GateKind) -> usize {
        match kind {
            GateKind::D => self.d,
            GateKind::U => self.u,
            GateKind::H => self.h,
            GateKind::V => self.v,
            GateKind::S => self.s,
            GateKind::Cns => self.cns,
            GateKind::Swap => self.swap,
        }
    }
}

impl fmt::Display for GateStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "gates={} D={} U={} H={} V={} S={} CNS={} SWAP={} max_controls={} max_arity={}",
            self.total,
            self.d,
            self.u,
            self.h,
            self.v,
            self.s,
            self.cns,
            self.swap,
            self.max_controls,
            self.max_arity
        )
    }
}

/// A sequence of gates on `n` wires over Z_k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circuit {
    k: Modulus,
    n: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(k: Modulus, n: usize) -> Self {
        Circuit {
            k,
            n,
            gates: Vec::new(),
        }
    }

    /// Builds a circuit, validating each gate.
    pub fn from_gates(k: Modulus, n: usize, gates: Vec<Gate>) -> Result<Self> {
        let c = Circuit { k, n, gates };
        c.validate()?;
        Ok(c)
    }

    pub(crate) fn from_gates_unchecked(k: Modulus, n: usize, gates: Vec<Gate>) -> Self {
        Circuit { k, n, gates }
    }

    pub fn k(&self) -> Modulus {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn into_gates(self) -> Vec<Gate> {
        self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.k, self.n)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        self.gates
            .iter()
            .try_for_each(|g| g.validate(self.k, self.n))
    }

    fn check_word(&self, w: &Word) -> Result<()> {
        Word::new(w.0.clone(), self.k, self.n).map(|_| ())
    }

    fn check_same_shape(&self, other: &Circuit) -> Result<()> {
        if self.k != other.k || self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected_k: self.k.get(),
                expected_n: self.n,
                found_k: other.k.get(),
                found_n: other.n,
            });
        }
        Ok(())
    }

    pub fn evaluate(&self, w: &Word) -> Result<Word> {
        self.check_word(w)?;
        let mut x = w.0.clone();
        self.apply_in_place(&mut x);
        Ok(Word(x))
    }

    pub(crate) fn apply_in_place(&self, x: &mut [u32]) {
        for g in &self.gates {
            g.apply(self.k, x);
        }
    }

    pub fn to_perm_table(&self, guard: SizeGuard) -> Result<PermTable> {
        self.to_perm_table_using(guard, Strategy::default())
    }

    /// Exhaustive tabulation by evaluating every word.
    pub fn to_perm_table_using(&self, guard: SizeGuard, strategy: Strategy) -> Result<PermTable> {
        let len = guard.table_len(self.k, self.n)?;
        let (k, n) = (self.k, self.n);
        let table = strategy.tabulate(len, |i| {
            let mut x = vec![0; n];
            decode_into(i, k, &mut x);
            self.apply_in_place(&mut x);
            encode_coords(&x, k)
        });
        Ok(PermTable::from_raw_unchecked(k, n, table))
    }

    /// Reversed order, each gate replaced by its same-alphabet inverse.
    pub fn invert(&self) -> Circuit {
        let gates = self
            .gates
            .iter()
            .rev()
            .flat_map(|g| g.inverse(self.k))
            .collect();
        Circuit::from_gates_unchecked(self.k, self.n, gates)
    }

    /// Replaces every SWAP by `U(i,j); D(i,j)^(k-1); U(i,j); H(k-1, j)`.
    pub fn lower_swap(&self) -> Circuit {
        let k = self.k;
        let mut gates = Vec::with_capacity(self.gates.len());
        for g in &self.gates {
            match *g {
                Gate::Swap(i, j) => gates.extend(swap_lowering(k, i, j)),
                _ => gates.push(g.clone()),
            }
        }
        Circuit::from_gates_unchecked(k, self.n, gates)
    }

    pub fn stats(&self) -> GateStats {
        let mut s = GateStats::default();
        for g in &self.gates {
            match g.kind() {
                GateKind::D => s.d += 1,
                GateKind::U => s.u += 1,
                GateKind::H => s.h += 1,
                GateKind::V => s.v += 1,
                GateKind::S => s.s += 1,
                GateKind::Cns => s.cns += 1,
                GateKind::Swap => s.swap += 1,
            }
            s.max_controls = s.max_controls.max(g.control_count());
            s.max_arity = s.max_arity.max(g.arity());
        }
        s.total = self.gates.len();
        s
    }

    /// `self` followed by `then`.
    pub fn concat(&self, then: &Circuit) -> Result<Circuit> {
        self.check_same_shape(then)?;
        let mut gates = self.gates.clone();
        gates.extend_from_slice(&then.gates);
        Ok(Circuit::from_gates_unchecked(self.k, self.n, gates))
    }

    pub fn append(&mut self, then: Circuit) -> Result<()> {
        self.check_same_shape(&then)?;
        self.gates.extend(then.gates);
        Ok(())
    }

    /// `outer; inner; outer^-1`.
    pub fn conjugate(outer: &Circuit, inner: &Circuit) -> Result<Circuit> {
        outer.concat(inner)?.concat(&outer.invert())
    }
}

pub(crate) fn swap_lowering(k: Modulus, i: usize, j: usize) -> Vec<Gate> {
    let mut gates = Vec::with_capacity(k.get() as usize + 3);
    gates.push(Gate::U(i, j));
    gates.extend(std::iter::repeat_n(Gate::D(i, j), k.get() as usize - 1));
    gates.push(Gate::U(i, j));
    gates.push(Gate::H {
        coeff: k.get() - 1,
        wire: j,
    });
    gates
}

/// Random circuit over the full gate alphabet, for testing and benchmarks.
pub fn random_circuit(k: Modulus, n: usize, len: usize, seed: u64) -> Circuit {
    let mut rng = seeded_rng(seed);
    let units = k.units();
    let mut gates = Vec::with_capacity(len);
    while gates.len() < len {
        let choice = rng.gen_range(0..7);
        let i = rng.gen_range(0..n);
        let gate = if n < 2 && matches!(choice, 0 | 1 | 5 | 6) {
            continue;
        } else {
            let mut j = rng.gen_range(0..n);
            while n >= 2 && j == i {
                j = rng.gen_range(0..n);
            }
            match choice {
                0 => Gate::D(i, j),
                1 => Gate::U(i, j),
                2 => Gate::H {
                    coeff: units[rng.gen_range(0..units.len())],
                    wire: i,
                },
                3 => Gate::V(i),
                4 => Gate::S(i),
                5 => {
                    let mut controls: Vec<usize> =
                        (0..n).filter(|&w| w != i && rng.gen_bool(0.5)).collect();
                    if controls.is_empty() {
                        controls.push(j);
                    }
                    Gate::Cns {
                        controls,
                        target: i,
                    }
                }
                _ => Gate::Swap(i, j),
            }
        };
        gates.push(gate);
    }
    Circuit::from_gates_unchecked(k, n, gates)
}
