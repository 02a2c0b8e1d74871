//! Square matrices over Z_k and affine maps built on them.

use std::fmt;

use rand::Rng as _;

use crate::error::{Error, Result};
use crate::residue::{seeded_rng, Modulus, PermTable, SizeGuard, Word};

/// An n×n matrix over Z_k, row-major. Acts on column vectors: `w -> M w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixModK {
    k: Modulus,
    n: usize,
    entries: Vec<u32>,
}

impl MatrixModK {
    pub fn identity(k: Modulus, n: usize) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        MatrixModK { k, n, entries }
    }

    pub fn from_rows(k: Modulus, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::Precondition(format!(
                    "row of length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
            entries.extend(row.iter().map(|&x| k.reduce(x as u64)));
        }
        Ok(MatrixModK { k, n, entries })
    }

    pub fn k(&self) -> Modulus {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: u32) {
        self.entries[row * self.n + col] = self.k.reduce(value as u64);
    }

    pub fn column(&self, col: usize) -> Vec<u32> {
        (0..self.n).map(|r| self.get(r, col)).collect()
    }

    /// `row[to] += coeff * row[from]`
    pub fn add_row(&mut self, from: usize, to: usize, coeff: u32) {
        let k = self.k;
        for c in 0..self.n {
            let v = k.add(self.get(to, c), k.mul(coeff, self.get(from, c)));
            self.entries[to * self.n + c] = v;
        }
    }

    pub fn scale_row(&mut self, row: usize, factor: u32) {
        let k = self.k;
        for c in 0..self.n {
            let v = k.mul(factor, self.get(row, c));
            self.entries[row * self.n + c] = v;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        for c in 0..self.n {
            self.entries.swap(a * self.n + c, b * self.n + c);
        }
    }

    pub fn mul_vec(&self, w: &[u32]) -> Vec<u32> {
        let k = self.k;
        (0..self.n)
            .map(|r| {
                let acc: u64 = (0..self.n)
                    .map(|c| self.get(r, c) as u64 * w[c] as u64)
                    .sum();
                k.reduce(acc)
            })
            .collect()
    }

    /// `self * rhs`
    pub fn mul(&self, rhs: &MatrixModK) -> Result<MatrixModK> {
        if self.k != rhs.k || self.n != rhs.n {
            return Err(Error::DimensionMismatch {
                expected_k: self.k.get(),
                expected_n: self.n,
                found_k: rhs.k.get(),
                found_n: rhs.n,
            });
        }
        let n = self.n;
        let mut out = MatrixModK::identity(self.k, n);
        for r in 0..n {
            for c in 0..n {
                let acc: u64 = (0..n)
                    .map(|i| self.get(r, i) as u64 * rhs.get(i, c) as u64)
                    .sum();
                out.entries[r * n + c] = self.k.reduce(acc);
            }
        }
        Ok(out)
    }

    /// Determinant mod k via Euclidean row reduction (no division needed).
    pub fn determinant(&self) -> u32 {
        let k = self.k;
        let n = self.n;
        let mut m = self.clone();
        let mut negate = false;
        for col in 0..n {
            loop {
                // smallest nonzero entry in rows col.. becomes the pivot
                let pivot = (col..n)
                    .filter(|&r| m.get(r, col) != 0)
                    .min_by_key(|&r| m.get(r, col));
                let Some(p) = pivot else {
                    return 0;
                };
                let pv = m.get(p, col);
                let mut reduced_all = true;
                for r in col..n {
                    if r == p {
                        continue;
                    }
                    let v = m.get(r, col);
                    if v != 0 {
                        let q = v / pv;
                        m.add_row(p, r, k.neg(k.reduce(q as u64)));
                        if m.get(r, col) != 0 {
                            reduced_all = false;
                        }
                    }
                }
                if reduced_all {
                    if p != col {
                        m.swap_rows(p, col);
                        negate = !negate;
                    }
                    break;
                }
            }
        }
        let det = (0..n).fold(1u32, |acc, i| k.mul(acc, m.get(i, i)));
        if negate {
            k.neg(det)
        } else {
            det
        }
    }

    pub fn is_invertible(&self) -> bool {
        self.k.is_unit(self.determinant())
    }

    /// Random product of elementary matrices; invertible by construction.
    pub fn random_invertible(k: Modulus, n: usize, seed: u64) -> Self {
        let mut rng = seeded_rng(seed);
        let units = k.units();
        let mut m = MatrixModK::identity(k, n);
        let steps = 4 * n * n + 4;
        for _ in 0..steps {
            if n >= 2 && rng.gen_bool(0.75) {
                let from = rng.gen_range(0..n);
                let mut to = rng.gen_range(0..n);
                while to == from {
                    to = rng.gen_range(0..n);
                }
                m.add_row(from, to, rng.gen_range(0..k.get()));
            } else {
                let row = rng.gen_range(0..n);
                m.scale_row(row, units[rng.gen_range(0..units.len())]);
            }
        }
        m
    }
}

impl fmt::Display for MatrixModK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// `w -> offset + linear * w`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    pub linear: MatrixModK,
    pub offset: Word,
}

impl AffineMap {
    pub fn new(linear: MatrixModK, offset: Word) -> Result<Self> {
        if offset.len() != linear.n() {
            return Err(Error::WordLength {
                expected: linear.n(),
                found: offset.len(),
            });
        }
        Ok(AffineMap { linear, offset })
    }

    pub fn k(&self) -> Modulus {
        self.linear.k()
    }

    pub fn n(&self) -> usize {
        self.linear.n()
    }

    pub fn apply(&self, w: &Word) -> Word {
        let k = self.k();
        let lin = self.linear.mul_vec(w.coords());
        Word(
            lin.iter()
                .zip(self.offset.coords())
                .map(|(&a, &b)| k.add(a, b))
                .collect(),
        )
    }

    pub fn to_perm_table(&self, guard: SizeGuard) -> Result<PermTable> {
        PermTable::from_fn(self.k(), self.n(), guard, |w| self.apply(w))
    }

    pub fn random(k: Modulus, n: usize, seed: u64) -> Self {
        let linear = MatrixModK::random_invertible(k, n, seed);
        let mut rng = seeded_rng(seed ^ 0x9e37_79b9_7f4a_7c15);
        let offset = Word((0..n).map(|_| rng.gen_range(0..k.get())).collect());
        AffineMap { linear, offset }
    }
}
