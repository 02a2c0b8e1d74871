//! Arithmetic in Z_k, words of Z_k^n, and explicit permutation tables.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::par::Strategy;

/// Seeded generator used for every random object in the crate.
pub type Rng = ChaCha8Rng;

pub fn seeded_rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The ring Z_k, k >= 2. Residues are plain `u32` values in `[0, k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(k: u32) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidModulus(k as u64));
        }
        Ok(Modulus(k))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_odd(self) -> bool {
        self.0 % 2 == 1
    }

    #[inline]
    pub fn reduce(self, x: u64) -> u32 {
        (x % self.0 as u64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 + b as u64)
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        self.reduce(a as u64 * b as u64)
    }

    pub fn is_unit(self, a: u32) -> bool {
        gcd(a as u64, self.0 as u64) == 1
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inverse(self, a: u32) -> Result<u32> {
        let k = self.0 as i64;
        let (mut r0, mut r1) = (k, (a as i64).rem_euclid(k));
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        if r0 != 1 {
            return Err(Error::NotAUnit {
                value: a,
                modulus: self.0,
            });
        }
        Ok(s0.rem_euclid(k) as u32)
    }

    /// All units of Z_k in increasing order.
    pub fn units(self) -> Vec<u32> {
        (1..self.0).filter(|&a| self.is_unit(a)).collect()
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// k^n, saturating.
pub fn space_size(k: Modulus, n: usize) -> u128 {
    let mut size: u128 = 1;
    for _ in 0..n {
        size = size.saturating_mul(k.get() as u128);
    }
    size
}

/// Refuses to materialize anything with more than `cap` entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    pub cap: u64,
}

impl SizeGuard {
    pub const DEFAULT_CAP: u64 = 10_000_000;
    /// Environment variable consulted by [`SizeGuard::from_env`].
    pub const ENV_VAR: &'static str = "ZKSYNTH_SIZE_CAP";

    pub fn new(cap: u64) -> Self {
        SizeGuard { cap }
    }

    pub fn from_env() -> Self {
        std::env::var(Self::ENV_VAR)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .map(SizeGuard::new)
            .unwrap_or_default()
    }

    pub fn check(&self, what: &'static str, requested: u128) -> Result<()> {
        if requested > self.cap as u128 {
            return Err(Error::SizeGuard {
                what,
                requested,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// Checks k^n against the cap and returns it as a table length.
    pub fn table_len(&self, k: Modulus, n: usize) -> Result<usize> {
        let size = space_size(k, n);
        self.check("permutation table", size)?;
        Ok(size as usize)
    }
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard::new(Self::DEFAULT_CAP)
    }
}

/// An element of Z_k^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<u32>);

impl Word {
    pub fn zero(n: usize) -> Self {
        Word(vec![0; n])
    }

    /// Unit vector e_i.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut w = Word::zero(n);
        w.0[i] = 1;
        w
    }

    pub fn new(coords: Vec<u32>, k: Modulus, n: usize) -> Result<Self> {
        if coords.len() != n {
            return Err(Error::WordLength {
                expected: n,
                found: coords.len(),
            });
        }
        if let Some(&bad) = coords.iter().find(|&&c| c >= k.get()) {
            return Err(Error::OutOfRange {
                value: bad as u64,
                bound: k.get() as u64,
            });
        }
        Ok(Word(coords))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    /// Mixed-radix index, coordinate 0 most significant.
    pub fn encode(&self, k: Modulus) -> usize {
        encode_coords(&self.0, k)
    }

    pub fn decode(index: usize, k: Modulus, n: usize) -> Result<Self> {
        let size = space_size(k, n);
        if index as u128 >= size {
            return Err(Error::OutOfRange {
                value: index as u64,
                bound: size.min(u64::MAX as u128) as u64,
            });
        }
        let mut coords = vec![0; n];
        decode_into(index, k, &mut coords);
        Ok(Word(coords))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

pub(crate) fn encode_coords(coords: &[u32], k: Modulus) -> usize {
    coords
        .iter()
        .fold(0usize, |acc, &c| acc * k.get() as usize + c as usize)
}

/// Fills `coords` (length n) from an in-range index.
pub(crate) fn decode_into(mut index: usize, k: Modulus, coords: &mut [u32]) {
    let k = k.get() as usize;
    for c in coords.iter_mut().rev() {
        *c = (index % k) as u32;
        index /= k;
    }
}

/// An explicit bijection of Z_k^n, stored as `table[encode(x)] = encode(f(x))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermTable {
    k: Modulus,
    n: usize,
    table: Vec<usize>,
}

impl PermTable {
    pub fn identity(k: Modulus, n: usize, guard: SizeGuard) -> Result<Self> {
        let len = guard.table_len(k, n)?;
        Ok(PermTable {
            k,
            n,
            table: (0..len).collect(),
        })
    }

    /// Validates bijectivity. Reports the first image that is hit twice.
    pub fn from_table(k: Modulus, n: usize, table: Vec<usize>) -> Result<Self> {
        let len = space_size(k, n);
        if table.len() as u128 != len {
            return Err(Error::TableLength {
                expected: len.min(usize::MAX as u128) as usize,
                found: table.len(),
            });
        }
        let mut preimage = vec![usize::MAX; table.len()];
        for (x, &y) in table.iter().enumerate() {
            if y >= table.len() {
                return Err(Error::OutOfRange {
                    value: y as u64,
                    bound: table.len() as u64,
                });
            }
            if preimage[y] != usize::MAX {
                return Err(Error::InvalidPermutation {
                    image: y,
                    first: preimage[y],
                    second: x,
                });
            }
            preimage[y] = x;
        }
        Ok(PermTable { k, n, table })
    }

    /// Tabulates `f` over Z_k^n and validates the result.
    pub fn from_fn<F>(k: Modulus, n: usize, guard: SizeGuard, f: F) -> Result<Self>
    where
        F: Fn(&Word) -> Word + Sync + Send,
    {
        let len = guard.table_len(k, n)?;
        let table = Strategy::default().tabulate(len, |i| {
            let mut coords = vec![0; n];
            decode_into(i, k, &mut coords);
            f(&Word(coords)).encode(k)
        });
        PermTable::from_table(k, n, table)
    }

    /// The transposition exchanging `a` and `b`.
    pub fn transposition(k: Modulus, n: usize, a: &Word, b: &Word, guard: SizeGuard) -> Result<Self> {
        let mut p = PermTable::identity(k, n, guard)?;
        let (ia, ib) = (a.encode(k), b.encode(k));
        p.table.swap(ia, ib);
        Ok(p)
    }

    /// Uniform random bijection via a seeded Fisher-Yates shuffle.
    pub fn random(k: Modulus, n: usize, seed: u64, guard: SizeGuard) -> Result<Self> {
        let mut p = PermTable::identity(k, n, guard)?;
        p.table.shuffle(&mut seeded_rng(seed));
        Ok(p)
    }

    pub(crate) fn from_raw_unchecked(k: Modulus, n: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len() as u128, space_size(k, n));
        PermTable { k, n, table }
    }

    pub fn k(&self) -> Modulus {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.table
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.table
    }

    #[inline]
    pub fn apply(&self, index: usize) -> usize {
        self.table[index]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        let mut coords = vec![0; self.n];
        decode_into(self.table[w.encode(self.k)], self.k, &mut coords);
        Word(coords)
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_same_shape(&self, other: &PermTable) -> Result<()> {
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

    /// Diagram order: `self` first, then `then`.
    pub fn compose(&self, then: &PermTable) -> Result<PermTable> {
        self.check_same_shape(then)?;
        let table = self.table.iter().map(|&x| then.table[x]).collect();
        Ok(PermTable {
            k: self.k,
            n: self.n,
            table,
        })
    }

    pub fn invert(&self) -> PermTable {
        let mut table = vec![0; self.table.len()];
        for (x, &y) in self.table.iter().enumerate() {
            table[y] = x;
        }
        PermTable {
            k: self.k,
            n: self.n,
            table,
        }
    }

    /// Number of points moved.
    pub fn support_size(&self) -> usize {
        self.table.iter().enumerate().filter(|(i, &x)| *i != x).count()
    }
}
