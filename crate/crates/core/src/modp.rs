//! Residue arithmetic modulo an odd prime: primitive roots, discrete-log
//! tables, multiplicative subgroups with their cosets, and the two sum-free
//! intervals used throughout the crate.

use std::sync::{Arc, OnceLock};

use crate::characters::RootTables;
use crate::error::{Error, Result};

/// Largest prime accepted by [`PrimeContext::new`]; tables are O(p).
pub const MAX_PRIME: u64 = 1 << 20;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin with the witness set {2, 3, 5, 7, 11, 13, 17}, which is
/// deterministic far beyond the table cap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in `[lo, hi]`, ascending.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// Positive divisors of `m`, ascending.
pub fn divisors(m: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while (d as u64) * (d as u64) <= m as u64 {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn distinct_prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 2;
    while f * f <= m {
        if m.is_multiple_of(f) {
            out.push(f);
            while m.is_multiple_of(f) {
                m /= f;
            }
        }
        f += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// An odd prime p > 3 with its smallest primitive root and discrete-log table.
#[derive(Debug)]
pub struct PrimeContext {
    p: u32,
    g: u32,
    /// `dlog[x]` for x in 1..p; `dlog[0]` is a sentinel.
    dlog: Vec<u32>,
    /// `powers[k] = g^k` for k in 0..p-1.
    powers: Vec<u32>,
    roots: OnceLock<RootTables>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p <= 3 {
            return Err(Error::PrimeTooSmall(p));
        }
        if p > MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        let order = p - 1;
        let factors = distinct_prime_factors(order);
        let g = (2..p)
            .find(|&g| factors.iter().all(|&q| pow_mod(g, order / q, p) != 1))
            .expect("every prime has a primitive root");

        let p32 = p as u32;
        let mut dlog = vec![u32::MAX; p as usize];
        let mut powers = Vec::with_capacity(order as usize);
        let mut x = 1u64;
        for k in 0..order as u32 {
            powers.push(x as u32);
            dlog[x as usize] = k;
            x = x * g % p;
        }
        debug_assert_eq!(x, 1);
        Ok(Arc::new(Self {
            p: p32,
            g: g as u32,
            dlog,
            powers,
            roots: OnceLock::new(),
        }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The group order p − 1.
    pub fn order(&self) -> u32 {
        self.p - 1
    }

    pub fn generator(&self) -> u32 {
        self.g
    }

    pub fn reduce(&self, x: i64) -> u32 {
        x.rem_euclid(self.p as i64) as u32
    }

    /// Discrete log of a nonzero residue. Panics on 0.
    pub fn dlog(&self, x: u32) -> u32 {
        let x = x % self.p;
        assert!(x != 0, "discrete log of 0 is undefined");
        self.dlog[x as usize]
    }

    /// g^k for any k (reduced mod p − 1).
    pub fn pow_g(&self, k: u64) -> u32 {
        self.powers[(k % self.order() as u64) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(&self, x: u32) -> u32 {
        let k = self.dlog(x);
        self.pow_g((self.order() - k) as u64)
    }

    /// Multiplicative order of a nonzero residue.
    pub fn order_of(&self, x: u32) -> u32 {
        let k = self.dlog(x);
        self.order() / gcd(self.order(), k)
    }

    pub fn neg(&self, x: u32) -> u32 {
        (self.p - x % self.p) % self.p
    }

    pub(crate) fn roots(&self) -> &RootTables {
        self.roots.get_or_init(|| RootTables::new(self.p))
    }

    /// Legendre symbol (x/p) from the parity of the discrete log.
    pub fn legendre(&self, x: i64) -> i32 {
        let r = self.reduce(x);
        if r == 0 {
            0
        } else if self.dlog[r as usize].is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// Checks that `set` is a set of canonical residues and returns it sorted
    /// and deduplicated.
    pub fn canonical_set(&self, set: &[u32]) -> Result<Vec<u32>> {
        let mut out = set.to_vec();
        if let Some(&x) = out.iter().find(|&&x| x >= self.p) {
            return Err(Error::ResidueOutOfRange {
                x: x as u64,
                p: self.p,
            });
        }
        out.sort_unstable();
        out.dedup();
        Ok(out)
    }

    /// Like [`canonical_set`](Self::canonical_set) but also rejects 0.
    pub fn nonzero_set(&self, set: &[u32]) -> Result<Vec<u32>> {
        let out = self.canonical_set(set)?;
        if out.first() == Some(&0) {
            return Err(Error::ZeroInSet);
        }
        Ok(out)
    }
}

pub fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Legendre symbol for a freshly built context of `p`.
pub fn legendre(ctx: &PrimeContext, x: i64) -> i32 {
    ctx.legendre(x)
}

/// The multiplicative subgroup of index n in F_p^*, with its cosets.
///
/// Coset ξ is the class of g^ξ, so coset labels add modulo n under
/// multiplication and coset 0 is the subgroup itself.
#[derive(Debug, Clone)]
pub struct SubgroupContext {
    ctx: Arc<PrimeContext>,
    d: u32,
    n: u32,
    members: Vec<u32>,
    coset_reps: Vec<u32>,
    contains_minus_one: bool,
}

impl SubgroupContext {
    pub fn new(ctx: &Arc<PrimeContext>, n: u32) -> Result<Arc<Self>> {
        let order = ctx.order();
        if n == 0 || !order.is_multiple_of(n) {
            return Err(Error::IndexDoesNotDivide {
                n,
                p_minus_one: order,
            });
        }
        let d = order / n;
        let mut members: Vec<u32> = (0..d).map(|k| ctx.pow_g(n as u64 * k as u64)).collect();
        members.sort_unstable();
        let coset_reps = (0..n).map(|j| ctx.pow_g(j as u64)).collect();
        // −1 = g^{(p−1)/2}
        let contains_minus_one = (order / 2).is_multiple_of(n);
        Ok(Arc::new(Self {
            ctx: Arc::clone(ctx),
            d,
            n,
            members,
            coset_reps,
            contains_minus_one,
        }))
    }

    pub fn ctx(&self) -> &Arc<PrimeContext> {
        &self.ctx
    }

    pub fn p(&self) -> u32 {
        self.ctx.p()
    }

    /// Subgroup order |Γ|.
    pub fn order(&self) -> u32 {
        self.d
    }

    pub fn index(&self) -> u32 {
        self.n
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn coset_reps(&self) -> &[u32] {
        &self.coset_reps
    }

    pub fn contains_minus_one(&self) -> bool {
        self.contains_minus_one
    }

    pub fn contains(&self, x: u32) -> bool {
        !x.is_multiple_of(self.p()) && self.coset_of(x) == 0
    }

    pub fn coset_of(&self, x: u32) -> u32 {
        self.ctx.dlog(x) % self.n
    }

    /// Coset index of −ξ.
    pub fn neg_coset(&self, xi: u32) -> u32 {
        (xi + self.ctx.order() / 2) % self.n
    }

    /// Quotient-group product of two coset labels.
    pub fn coset_mul(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.n
    }

    /// Members of the coset ξΓ, ascending.
    pub fn coset(&self, xi: u32) -> Vec<u32> {
        let rep = self.coset_reps[xi as usize];
        let mut out: Vec<u32> = self.members.iter().map(|&g| self.ctx.mul(rep, g)).collect();
        out.sort_unstable();
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IntervalKind {
    /// I = [p/3, 2p/3)
    Thirds,
    /// J = [p/8, 3p/8)
    Eighths,
    Custom,
}

/// A run of consecutive canonical residues `lo..hi` in F_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    kind: IntervalKind,
    p: u32,
    lo: u32,
    hi: u32,
}

impl Interval {
    /// {⌊p/3⌋+1, …, ⌈2p/3⌉−1}; has ⌊2p/3⌋ − ⌊p/3⌋ elements.
    pub fn thirds(p: u32) -> Self {
        Self {
            kind: IntervalKind::Thirds,
            p,
            lo: p / 3 + 1,
            hi: (2 * p).div_ceil(3),
        }
    }

    /// {⌊p/8⌋+1, …, ⌊3p/8⌋}.
    pub fn eighths(p: u32) -> Self {
        Self {
            kind: IntervalKind::Eighths,
            p,
            lo: p / 8 + 1,
            hi: 3 * p / 8 + 1,
        }
    }

    pub fn custom(p: u32, lo: u32, hi: u32) -> Result<Self> {
        if lo >= hi || hi > p {
            return Err(Error::InvalidInterval { lo, hi, p });
        }
        Ok(Self {
            kind: IntervalKind::Custom,
            p,
            lo,
            hi,
        })
    }

    pub fn of_kind(kind: IntervalKind, p: u32) -> Option<Self> {
        match kind {
            IntervalKind::Thirds => Some(Self::thirds(p)),
            IntervalKind::Eighths => Some(Self::eighths(p)),
            IntervalKind::Custom => None,
        }
    }

    pub fn kind(&self) -> IntervalKind {
        self.kind
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn lo(&self) -> u32 {
        self.lo
    }

    pub fn hi(&self) -> u32 {
        self.hi
    }

    pub fn len(&self) -> u32 {
        self.hi - self.lo
    }

    pub fn is_empty(&self) -> bool {
        self.hi == self.lo
    }

    pub fn contains(&self, x: u32) -> bool {
        let x = x % self.p;
        self.lo <= x && x < self.hi
    }

    pub fn members(&self) -> std::ops::Range<u32> {
        self.lo..self.hi
    }
}
