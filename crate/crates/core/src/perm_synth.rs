//! Synthesis of arbitrary bijections of Z_k^n (k odd) into gates of
//! arity at most two.
//!
//! Pipeline:
//! 1. split the permutation into transpositions (cycle decomposition);
//! 2. route each transposition along a path of adjacent steps
//!    `w <-> w + e_i`, conjugating the last step by the earlier ones;
//! 3. realize each adjacent step as a translated controlled-S gate whose
//!    target is the stepped coordinate;
//! 4. strip controls one at a time: a CNS with controls `C` becomes a
//!    U-ladder on two distinguished controls followed by a CNS with one
//!    control fewer, until every CNS has at most one control.
//!
//! The ladder is where odd k matters: it pairs up the nonzero values of
//! the middle wire two at a time using translated copies of the T circuit.

use crate::affine::{detect_affine, synth_affine};
use crate::circuit::{Circuit, Gate};
use crate::error::{Error, Result};
use crate::par::Strategy;
use crate::residue::{Modulus, PermTable, SizeGuard, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transposition {
    pub a: Word,
    pub b: Word,
}

/// The transposition `base <-> base + e_coord`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacentStep {
    pub base: Word,
    pub coord: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SynthOptions {
    /// Expand multi-control CNS gates and lower SWAPs.
    pub lower_to_generators: bool,
    /// Emit an affine D/U/H/V circuit when the input is affine.
    pub fast_path_affine: bool,
    pub guard: SizeGuard,
}

impl Default for SynthOptions {
    fn default() -> Self {
        SynthOptions {
            lower_to_generators: true,
            fast_path_affine: true,
            guard: SizeGuard::default(),
        }
    }
}

fn require_odd(k: Modulus) -> Result<()> {
    if !k.is_odd() {
        return Err(Error::EvenModulusUnsupported(k.get()));
    }
    Ok(())
}

fn check_distinct(wires: &[usize], extra: &[usize]) -> Result<()> {
    let mut all: Vec<usize> = wires.iter().chain(extra).copied().collect();
    all.sort_unstable();
    if let Some(w) = all.windows(2).find(|p| p[0] == p[1]) {
        return Err(Error::WireCollision(w[0]));
    }
    Ok(())
}

fn with_extra(extra: &[usize], wire: usize) -> Vec<usize> {
    let mut controls = extra.to_vec();
    controls.push(wire);
    controls
}

fn t_gates(x: usize, y: usize, z: usize, extra: &[usize]) -> [Gate; 4] {
    let sy = Gate::controlled_s(with_extra(extra, x), y);
    let sz = Gate::controlled_s(with_extra(extra, y), z);
    [sy.clone(), sz.clone(), sy, sz]
}

fn ladder_gates(k: Modulus, x: usize, y: usize, z: usize, extra: &[usize]) -> Vec<Gate> {
    let blocks = (k.get() as usize - 1) / 2;
    let mut gates = Vec::with_capacity(blocks * 6 + 1);
    for _ in 0..blocks {
        gates.push(Gate::V(y));
        gates.push(Gate::V(y));
        gates.extend(t_gates(x, y, z, extra));
    }
    gates.push(Gate::V(y));
    gates
}

/// The T circuit: flips `z` iff `x = 0` and `y` is 0 or 1 (and every
/// extra control reads 0).
pub fn build_t(
    k: Modulus,
    n: usize,
    x: usize,
    y: usize,
    z: usize,
    extra: &[usize],
) -> Result<Circuit> {
    check_distinct(&[x, y, z], extra)?;
    Circuit::from_gates(k, n, t_gates(x, y, z, extra).to_vec())
}

/// The U-ladder: `(k-1)/2` copies of T, each translated along `y` by two
/// more than the last, with `k` V gates in total. Flips `z` iff `x = 0`
/// and `y != 0` (and every extra control reads 0).
pub fn build_u_ladder(
    k: Modulus,
    n: usize,
    x: usize,
    y: usize,
    z: usize,
    extra: &[usize],
) -> Result<Circuit> {
    require_odd(k)?;
    check_distinct(&[x, y, z], extra)?;
    Circuit::from_gates(k, n, ladder_gates(k, x, y, z, extra))
}

/// One control fewer: U-ladder on the two largest controls, then CNS on
/// the remaining controls plus the second-largest.
fn reduce_gates(k: Modulus, controls: &[usize], target: usize) -> Vec<Gate> {
    let mut sorted = controls.to_vec();
    sorted.sort_unstable();
    let y = sorted.pop().expect("at least two controls");
    let x = sorted.pop().expect("at least two controls");
    let extra = sorted;
    let mut gates = ladder_gates(k, x, y, target, &extra);
    gates.push(Gate::controlled_s(with_extra(&extra, x), target));
    gates
}

pub fn reduce_controls_once(k: Modulus, n: usize, gate: &Gate) -> Result<Circuit> {
    require_odd(k)?;
    gate.validate(k, n)?;
    match gate {
        Gate::Cns { controls, target } if controls.len() >= 2 => {
            Circuit::from_gates(k, n, reduce_gates(k, controls, *target))
        }
        other => Err(Error::Precondition(format!(
            "expected a CNS gate with at least two controls, got '{other}'"
        ))),
    }
}

/// Gate count after fully expanding a CNS with `controls` controls:
/// `G(1) = 1`, `G(m) = k + (2k - 1) G(m - 1)`.
pub fn expanded_gate_count(k: Modulus, controls: usize) -> u128 {
    let k = k.get() as u128;
    let mut count: u128 = 1;
    for _ in 1..controls.max(1) {
        count = count.saturating_mul(2 * k - 1).saturating_add(k);
    }
    count
}

fn expand_into(k: Modulus, gate: &Gate, out: &mut Vec<Gate>) {
    match gate {
        Gate::Cns { controls, target } if controls.len() >= 2 => {
            for g in reduce_gates(k, controls, *target) {
                expand_into(k, &g, out);
            }
        }
        other => out.push(other.clone()),
    }
}

/// Expands every CNS until none has more than one control.
pub fn expand_controls(c: &Circuit, guard: SizeGuard) -> Result<Circuit> {
    let k = c.k();
    if c.gates().iter().all(|g| g.control_count() <= 1) {
        return Ok(c.clone());
    }
    require_odd(k)?;
    let projected = c
        .gates()
        .iter()
        .map(|g| expanded_gate_count(k, g.control_count()))
        .fold(0u128, u128::saturating_add);
    guard.check("control expansion (gates)", projected)?;
    let mut gates = Vec::with_capacity(projected as usize);
    for g in c.gates() {
        expand_into(k, g, &mut gates);
    }
    Ok(Circuit::from_gates_unchecked(k, c.n(), gates))
}

/// Cycle decomposition. Applied in list order, the transpositions
/// reproduce `p`: a cycle `a1 -> a2 -> ... -> am` is emitted as
/// `(a_{m-1} a_m), ..., (a_1 a_2)`.
pub fn perm_to_transpositions(p: &PermTable) -> Vec<Transposition> {
    let (k, n) = (p.k(), p.n());
    let word = |i: usize| Word::decode(i, k, n).expect("index in range");
    let mut visited = vec![false; p.len()];
    let mut out = Vec::new();
    for start in 0..p.len() {
        if visited[start] || p.apply(start) == start {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = p.apply(start);
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            cur = p.apply(cur);
        }
        for j in (0..cycle.len() - 1).rev() {
            out.push(Transposition {
                a: word(cycle[j]),
                b: word(cycle[j + 1]),
            });
        }
    }
    out
}

/// Routes `(a b)` along `+1` steps, coordinates in ascending order.
/// With path steps `s1..sm` the result is `s1 .. s(m-1) sm s(m-1) .. s1`.
pub fn transposition_to_adjacent(t: &Transposition, k: Modulus) -> Vec<AdjacentStep> {
    let mut path = Vec::new();
    let mut cur = t.a.clone();
    for coord in 0..cur.len() {
        let steps = k.sub(t.b.0[coord], t.a.0[coord]);
        for _ in 0..steps {
            path.push(AdjacentStep {
                base: cur.clone(),
                coord,
            });
            cur.0[coord] = k.add(cur.0[coord], 1);
        }
    }
    let mut out = path.clone();
    if let Some((_, rest)) = path.split_last() {
        out.extend(rest.iter().rev().cloned());
    }
    out
}

/// Translate `base` to 0, apply CNS on all other wires targeting `coord`,
/// translate back.
pub fn adjacent_to_circuit(s: &AdjacentStep, k: Modulus, n: usize) -> Result<Circuit> {
    if s.base.len() != n {
        return Err(Error::WordLength {
            expected: n,
            found: s.base.len(),
        });
    }
    if s.coord >= n {
        return Err(Error::WireOutOfRange {
            wire: s.coord,
            wires: n,
        });
    }
    let mut gates = Vec::new();
    for (wire, &b) in s.base.coords().iter().enumerate() {
        gates.extend(std::iter::repeat_n(Gate::V(wire), k.neg(b) as usize));
    }
    let controls = (0..n).filter(|&w| w != s.coord).collect();
    gates.push(Gate::controlled_s(controls, s.coord));
    for (wire, &b) in s.base.coords().iter().enumerate() {
        gates.extend(std::iter::repeat_n(Gate::V(wire), b as usize));
    }
    Circuit::from_gates(k, n, gates)
}

pub fn synthesize(p: &PermTable, opts: &SynthOptions) -> Result<Circuit> {
    synthesize_using(p, opts, Strategy::default())
}

pub fn synthesize_using(p: &PermTable, opts: &SynthOptions, strategy: Strategy) -> Result<Circuit> {
    let (k, n) = (p.k(), p.n());
    opts.guard.table_len(k, n)?;
    if opts.fast_path_affine {
        if let Ok(a) = detect_affine(p) {
            return synth_affine(&a);
        }
    }
    require_odd(k)?;

    let transpositions = perm_to_transpositions(p);
    let pieces = strategy.map(&transpositions, |t| -> Result<Vec<Gate>> {
        let mut gates = Vec::new();
        for step in transposition_to_adjacent(t, k) {
            gates.extend(adjacent_to_circuit(&step, k, n)?.into_gates());
        }
        Ok(gates)
    });
    let mut gates = Vec::new();
    for piece in pieces {
        gates.extend(piece?);
    }
    let circuit = Circuit::from_gates_unchecked(k, n, gates);
    if !opts.lower_to_generators {
        return Ok(circuit);
    }
    Ok(expand_controls(&circuit, opts.guard)?.lower_swap())
}

/// Synthesizes a batch of tables, one task per table.
pub fn synthesize_batch(
    perms: &[PermTable],
    opts: &SynthOptions,
    strategy: Strategy,
) -> Vec<Result<Circuit>> {
    strategy.map(perms, |p| synthesize_using(p, opts, Strategy::Sequential))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(k: u32) -> Modulus {
        Modulus::new(k).unwrap()
    }

    fn guard() -> SizeGuard {
        SizeGuard::default()
    }

    fn table(c: &Circuit) -> PermTable {
        c.to_perm_table(guard()).unwrap()
    }

    /// Three-wire table oracle: flip z when `rule(x, y)` holds.
    fn flip_rule(k: Modulus, rule: impl Fn(u32, u32) -> bool + Sync + Send) -> PermTable {
        PermTable::from_fn(k, 3, guard(), |w| {
            let (x, y, z) = (w.0[0], w.0[1], w.0[2]);
            let z = if rule(x, y) {
                match z {
                    0 => 1,
                    1 => 0,
                    o => o,
                }
            } else {
                z
            };
            Word(vec![x, y, z])
        })
        .unwrap()
    }

    #[test]
    fn t_examples() {
        let k = m(3);
        let t = build_t(k, 3, 0, 1, 2, &[]).unwrap();
        assert_eq!(t.len(), 4);
        assert_eq!(t.stats().cns, 4);
        assert_eq!(t.evaluate(&Word(vec![0, 0, 0])).unwrap(), Word(vec![0, 0, 1]));
        assert_eq!(t.evaluate(&Word(vec![0, 1, 1])).unwrap(), Word(vec![0, 1, 0]));
        for y in 0..3 {
            for z in 0..3 {
                let w = Word(vec![1, y, z]);
                assert_eq!(t.evaluate(&w).unwrap(), w);
            }
        }
        assert!(build_t(k, 3, 0, 0, 2, &[]).is_err());
        assert!(build_t(k, 4, 0, 1, 2, &[1]).is_err());
    }

    #[test]
    fn t_rule_exhaustive() {
        for k in [3u32, 5, 7] {
            let t = build_t(m(k), 3, 0, 1, 2, &[]).unwrap();
            assert_eq!(table(&t), flip_rule(m(k), |x, y| x == 0 && y <= 1));
        }
    }

    #[test]
    fn ladder_rule_and_counts() {
        for k in [3u32, 5, 7, 9] {
            let u = build_u_ladder(m(k), 3, 0, 1, 2, &[]).unwrap();
            assert_eq!(table(&u), flip_rule(m(k), |x, y| x == 0 && y != 0));
            let s = u.stats();
            assert_eq!(s.v as u32, k);
            assert_eq!(s.cns as u32, 4 * (k - 1) / 2);
        }
        let u3 = build_u_ladder(m(3), 3, 0, 1, 2, &[]).unwrap();
        let mut want = vec![Gate::V(1), Gate::V(1)];
        want.extend(build_t(m(3), 3, 0, 1, 2, &[]).unwrap().into_gates());
        want.push(Gate::V(1));
        assert_eq!(u3.gates(), want.as_slice());
        assert_eq!(
            build_u_ladder(m(4), 3, 0, 1, 2, &[]),
            Err(Error::EvenModulusUnsupported(4))
        );
    }

    #[test]
    fn ladder_with_extra_controls() {
        let k = m(3);
        let u = build_u_ladder(k, 4, 1, 2, 3, &[0]).unwrap();
        let expected = PermTable::from_fn(k, 4, guard(), |w| {
            let mut v = w.clone();
            if w.0[0] == 0 && w.0[1] == 0 && w.0[2] != 0 {
                v.0[3] = match w.0[3] {
                    0 => 1,
                    1 => 0,
                    o => o,
                };
            }
            v
        })
        .unwrap();
        assert_eq!(table(&u), expected);
    }

    fn single_transposition(k: Modulus, n: usize) -> PermTable {
        let mut b = Word::zero(n);
        b.0[n - 1] = 1;
        PermTable::transposition(k, n, &Word::zero(n), &b, guard()).unwrap()
    }

    #[test]
    fn reduce_once_examples() {
        let k3 = m(3);
        let g = Gate::controlled_s(vec![0, 1], 2);
        let c = reduce_controls_once(k3, 3, &g).unwrap();
        assert_eq!(table(&c), single_transposition(k3, 3));
        // 2 V + T(4) + V + CNS
        assert_eq!(c.len(), 8);
        for k in [3u32, 5, 9] {
            let c = reduce_controls_once(m(k), 3, &g).unwrap();
            let s = c.stats();
            assert_eq!(s.cns as u32, 2 * k - 1);
            assert_eq!(s.cns as u32, 4 * (k - 1) / 2 + 1);
            assert_eq!(s.v as u32, k);
            assert_eq!(s.max_controls, 1);
            assert_eq!(table(&c), single_transposition(m(k), 3));
        }
        assert!(reduce_controls_once(k3, 3, &Gate::controlled_s(vec![0], 2)).is_err());
        assert!(reduce_controls_once(m(5), 3, &Gate::V(0)).is_err());
    }

    #[test]
    fn reduce_once_decreases_controls_by_one() {
        let k = m(3);
        for target in 0..4 {
            let all: Vec<usize> = (0..4).filter(|&w| w != target).collect();
            for mask in 0u32..8 {
                let controls: Vec<usize> = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &w)| w)
                    .collect();
                if controls.len() < 2 {
                    continue;
                }
                let g = Gate::controlled_s(controls.clone(), target);
                let c = reduce_controls_once(k, 4, &g).unwrap();
                assert_eq!(c.stats().max_controls, controls.len() - 1);
                let orig = Circuit::from_gates(k, 4, vec![g]).unwrap();
                assert_eq!(table(&c), table(&orig));
            }
        }
    }

    #[test]
    fn expansion_counts() {
        // direct count vs recurrence vs closed form for the CNS part
        for (k, controls) in [(3u32, 2usize), (3, 3), (5, 2), (5, 3), (7, 2)] {
            let n = controls + 1;
            let g = Gate::controlled_s((0..controls).collect(), controls);
            let c = Circuit::from_gates(m(k), n, vec![g]).unwrap();
            let e = expand_controls(&c, guard()).unwrap();
            let s = e.stats();
            assert_eq!(s.cns as u128, (2 * k as u128 - 1).pow(controls as u32 - 1));
            let mut nv: u128 = 0;
            for _ in 2..n {
                nv = (2 * k as u128 - 1) * nv + k as u128;
            }
            assert_eq!(s.v as u128, nv);
            assert_eq!(s.total as u128, expanded_gate_count(m(k), controls));
            assert_eq!(s.max_controls, 1);
        }
        assert_eq!(expanded_gate_count(m(3), 0), 1);
        assert_eq!(expanded_gate_count(m(3), 1), 1);
        assert_eq!(expanded_gate_count(m(3), 2), 3 + 5);
    }

    #[test]
    fn expand_examples() {
        let k = m(3);
        let c = Circuit::from_gates(k, 2, vec![Gate::controlled_s(vec![0], 1), Gate::V(0)]).unwrap();
        assert_eq!(expand_controls(&c, guard()).unwrap(), c);

        let s4 = Circuit::from_gates(k, 4, vec![Gate::controlled_s(vec![0, 1, 2], 3)]).unwrap();
        let e = expand_controls(&s4, guard()).unwrap();
        assert_eq!(e.stats().cns, 25);
        let t = table(&e);
        assert_eq!(t.len(), 81);
        assert_eq!(t, single_transposition(k, 4));
    }

    #[test]
    fn expand_guard_and_parity() {
        let k = m(3);
        let big = Circuit::from_gates(k, 8, vec![Gate::controlled_s((0..7).collect(), 7)]).unwrap();
        match expand_controls(&big, SizeGuard::new(1000)) {
            Err(Error::SizeGuard { requested, .. }) => {
                assert_eq!(requested, expanded_gate_count(k, 7));
            }
            other => panic!("{other:?}"),
        }
        let even = Circuit::from_gates(m(4), 3, vec![Gate::controlled_s(vec![0, 1], 2)]).unwrap();
        assert_eq!(
            expand_controls(&even, guard()),
            Err(Error::EvenModulusUnsupported(4))
        );
    }

    fn recompose(k: Modulus, n: usize, ts: &[Transposition]) -> PermTable {
        ts.iter().fold(PermTable::identity(k, n, guard()).unwrap(), |acc, t| {
            let tt = PermTable::transposition(k, n, &t.a, &t.b, guard()).unwrap();
            acc.compose(&tt).unwrap()
        })
    }

    fn recompose_steps(k: Modulus, n: usize, steps: &[AdjacentStep]) -> PermTable {
        let ts: Vec<Transposition> = steps
            .iter()
            .map(|s| {
                let mut b = s.base.clone();
                b.0[s.coord] = k.add(b.0[s.coord], 1);
                Transposition {
                    a: s.base.clone(),
                    b,
                }
            })
            .collect();
        recompose(k, n, &ts)
    }

    #[test]
    fn transpositions_recompose() {
        let k = m(3);
        let id = PermTable::identity(k, 2, guard()).unwrap();
        assert!(perm_to_transpositions(&id).is_empty());
        let a = Word(vec![0, 1]);
        let b = Word(vec![2, 2]);
        let sw = PermTable::transposition(k, 2, &a, &b, guard()).unwrap();
        let ts = perm_to_transpositions(&sw);
        assert_eq!(ts.len(), 1);
        assert_eq!(recompose(k, 2, &ts), sw);
        for seed in 0..30 {
            let p = PermTable::random(k, 2, seed, guard()).unwrap();
            assert_eq!(recompose(k, 2, &perm_to_transpositions(&p)), p);
        }
    }

    #[test]
    fn adjacent_routing() {
        let k = m(3);
        let single = Transposition {
            a: Word(vec![0, 2]),
            b: Word(vec![1, 2]),
        };
        let steps = transposition_to_adjacent(&single, k);
        assert_eq!(
            steps,
            vec![AdjacentStep {
                base: Word(vec![0, 2]),
                coord: 0
            }]
        );
        let diag = Transposition {
            a: Word(vec![0, 0]),
            b: Word(vec![1, 1]),
        };
        let steps = transposition_to_adjacent(&diag, k);
        assert_eq!(steps.len(), 3);
        let want = PermTable::transposition(k, 2, &diag.a, &diag.b, guard()).unwrap();
        assert_eq!(recompose_steps(k, 2, &steps), want);

        let k5 = m(5);
        for seed in 0..40u64 {
            let p = PermTable::random(k5, 2, seed, guard()).unwrap();
            let a = Word::decode(0, k5, 2).unwrap();
            let b = p.apply_word(&a);
            if a == b {
                continue;
            }
            let t = Transposition { a, b };
            let steps = transposition_to_adjacent(&t, k5);
            let want = PermTable::transposition(k5, 2, &t.a, &t.b, guard()).unwrap();
            assert_eq!(recompose_steps(k5, 2, &steps), want);
            assert_eq!(steps.len() % 2, 1);
        }
    }

    #[test]
    fn adjacent_circuits() {
        let k = m(3);
        let s = AdjacentStep {
            base: Word::zero(2),
            coord: 1,
        };
        let c = adjacent_to_circuit(&s, k, 2).unwrap();
        assert_eq!(c.gates(), &[Gate::controlled_s(vec![0], 1)]);

        let s = AdjacentStep {
            base: Word(vec![1, 2]),
            coord: 1,
        };
        let t = table(&adjacent_to_circuit(&s, k, 2).unwrap());
        let want = PermTable::transposition(k, 2, &Word(vec![1, 2]), &Word(vec![1, 0]), guard()).unwrap();
        assert_eq!(t, want);
        assert_eq!(t.support_size(), 2);

        let k5 = m(5);
        let mut rng = crate::residue::seeded_rng(3);
        use rand::Rng as _;
        for _ in 0..30 {
            let base = Word((0..3).map(|_| rng.gen_range(0..5)).collect());
            let coord = rng.gen_range(0..3);
            let t = table(&adjacent_to_circuit(&AdjacentStep { base: base.clone(), coord }, k5, 3).unwrap());
            assert_eq!(t.support_size(), 2);
            let mut other = base.clone();
            other.0[coord] = (other.0[coord] + 1) % 5;
            assert_eq!(t.apply_word(&base), other);
        }
    }

    #[test]
    fn synthesize_examples() {
        let opts = SynthOptions::default();
        let id = PermTable::identity(m(3), 2, guard()).unwrap();
        assert!(synthesize(&id, &opts).unwrap().is_empty());

        let s5 = PermTable::from_table(m(5), 1, vec![1, 0, 2, 3, 4]).unwrap();
        assert_eq!(synthesize(&s5, &opts).unwrap().gates(), &[Gate::S(0)]);

        // On Z_3, S is affine; the fast path gives x -> 2x + 1 instead.
        let s3 = PermTable::from_table(m(3), 1, vec![1, 0, 2]).unwrap();
        let no_fast = SynthOptions {
            fast_path_affine: false,
            ..opts
        };
        assert_eq!(synthesize(&s3, &no_fast).unwrap().gates(), &[Gate::S(0)]);
        let fast = synthesize(&s3, &opts).unwrap();
        assert_eq!(table(&fast), s3);
        assert_eq!(fast.stats().s, 0);
    }

    #[test]
    fn synthesize_random_tables() {
        let opts = SynthOptions::default();
        for seed in 0..25 {
            let p = PermTable::random(m(3), 2, seed, guard()).unwrap();
            let c = synthesize(&p, &opts).unwrap();
            assert_eq!(table(&c), p);
            assert!(c.stats().max_arity <= 2);
        }
    }

    #[test]
    fn synthesize_without_lowering_keeps_controls() {
        let p = PermTable::random(m(3), 3, 5, guard()).unwrap();
        let opts = SynthOptions {
            lower_to_generators: false,
            fast_path_affine: false,
            ..Default::default()
        };
        let c = synthesize(&p, &opts).unwrap();
        assert_eq!(c.stats().max_controls, 2);
        assert_eq!(table(&c), p);
    }

    #[test]
    fn synthesize_rejects_even_nonaffine() {
        let k = m(4);
        let s = PermTable::from_table(k, 1, vec![1, 0, 2, 3]).unwrap();
        assert!(detect_affine(&s).is_err());
        assert_eq!(
            synthesize(&s, &SynthOptions::default()),
            Err(Error::EvenModulusUnsupported(4))
        );
    }

    #[test]
    fn batch_matches_single() {
        let perms: Vec<PermTable> = (0..8)
            .map(|s| PermTable::random(m(5), 2, s, guard()).unwrap())
            .collect();
        let opts = SynthOptions::default();
        let seq = synthesize_batch(&perms, &opts, Strategy::Sequential);
        let par = synthesize_batch(&perms, &opts, Strategy::Parallel);
        for ((a, b), p) in seq.into_iter().zip(par).zip(&perms) {
            let a = a.unwrap();
            assert_eq!(a, b.unwrap());
            assert_eq!(table(&a), *p);
        }
    }
}
