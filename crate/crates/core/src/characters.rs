//! Multiplicative characters modulo p, indexed by an exponent against the
//! context's primitive root: χ_t(g^k) = e^{2πi·t·k/(p−1)}.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;

use crate::modp::{Interval, PrimeContext, SubgroupContext};

/// Precomputed roots of unity of orders p − 1 and p.
#[derive(Debug)]
pub struct RootTables {
    multiplicative: Vec<Complex64>,
    additive: Vec<Complex64>,
}

impl RootTables {
    pub(crate) fn new(p: u32) -> Self {
        Self {
            multiplicative: unit_roots(p as usize - 1),
            additive: unit_roots(p as usize),
        }
    }

    /// e^{2πik/(p−1)}
    pub fn mult(&self, k: u64) -> Complex64 {
        self.multiplicative[(k % self.multiplicative.len() as u64) as usize]
    }

    /// e^{2πik/p}
    pub fn add(&self, k: u64) -> Complex64 {
        self.additive[(k % self.additive.len() as u64) as usize]
    }
}

/// e^{2πik/n} for k in 0..n, with exact values at the quarter turns.
pub(crate) fn unit_roots(n: usize) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            if (4 * k) % n == 0 {
                match 4 * k / n {
                    0 => Complex64::new(1.0, 0.0),
                    1 => Complex64::new(0.0, 1.0),
                    2 => Complex64::new(-1.0, 0.0),
                    _ => Complex64::new(0.0, -1.0),
                }
            } else {
                let (s, c) = (2.0 * PI * k as f64 / n as f64).sin_cos();
                Complex64::new(c, s)
            }
        })
        .collect()
}

/// Pairwise (cascade) summation.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        values.iter().fold(Complex64::new(0.0, 0.0), |a, &b| a + b)
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

pub fn pairwise_sum_real(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let mid = values.len() / 2;
        pairwise_sum_real(&values[..mid]) + pairwise_sum_real(&values[mid..])
    }
}

#[derive(Debug, Clone)]
pub struct Character {
    ctx: Arc<PrimeContext>,
    t: u32,
}

impl PartialEq for Character {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.p() == other.ctx.p() && self.t == other.t
    }
}

impl Eq for Character {}

impl Character {
    pub fn new(ctx: &Arc<PrimeContext>, t: u64) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            t: (t % ctx.order() as u64) as u32,
        }
    }

    pub fn principal(ctx: &Arc<PrimeContext>) -> Self {
        Self::new(ctx, 0)
    }

    /// The Legendre symbol as the character of order two.
    pub fn legendre(ctx: &Arc<PrimeContext>) -> Self {
        Self::new(ctx, ctx.order() as u64 / 2)
    }

    pub fn ctx(&self) -> &Arc<PrimeContext> {
        &self.ctx
    }

    pub fn exponent(&self) -> u32 {
        self.t
    }

    pub fn is_principal(&self) -> bool {
        self.t == 0
    }

    /// χ(−1) = +1.
    pub fn is_even(&self) -> bool {
        self.t.is_multiple_of(2)
    }

    /// Real-valued (order ≤ 2).
    pub fn is_real(&self) -> bool {
        self.t == 0 || 2 * self.t == self.ctx.order()
    }

    pub fn conj(&self) -> Self {
        Self::new(&self.ctx, (self.ctx.order() - self.t) as u64)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.ctx, self.t as u64 + other.t as u64)
    }

    /// Order of χ in the character group.
    pub fn order(&self) -> u32 {
        self.ctx.order() / crate::modp::gcd(self.ctx.order(), self.t)
    }

    pub fn eval(&self, x: i64) -> Complex64 {
        let r = self.ctx.reduce(x);
        if r == 0 {
            return Complex64::new(0.0, 0.0);
        }
        let k = self.t as u64 * self.ctx.dlog(r) as u64;
        self.ctx.roots().mult(k)
    }

    /// χ(−1) as ±1.
    pub fn parity(&self) -> i32 {
        if self.is_even() {
            1
        } else {
            -1
        }
    }

    /// Whether χ is identically one on Γ, i.e. belongs to the dual set X.
    pub fn is_trivial_on(&self, sub: &SubgroupContext) -> bool {
        (self.t as u64 * sub.index() as u64).is_multiple_of(self.ctx.order() as u64)
    }
}

pub fn char_eval(chi: &Character, x: i64) -> Complex64 {
    chi.eval(x)
}

/// The dual set X = {χ_{j·|Γ|} : 0 ≤ j < n}, in order of j.
pub fn dual_set(sub: &SubgroupContext) -> Vec<Character> {
    (0..sub.index())
        .map(|j| Character::new(sub.ctx(), j as u64 * sub.order() as u64))
        .collect()
}

/// X* = X without the principal character.
pub fn dual_set_nontrivial(sub: &SubgroupContext) -> Vec<Character> {
    dual_set(sub).into_iter().skip(1).collect()
}

/// Value of χ ∈ X on coset ξ (χ is constant on cosets).
pub fn eval_on_coset(chi: &Character, sub: &SubgroupContext, xi: u32) -> Complex64 {
    chi.eval(sub.coset_reps()[xi as usize] as i64)
}

/// Σ_x χ(x) e^{2πimx/p}, summed directly.
pub fn twisted_exp_sum(chi: &Character, m: i64) -> Complex64 {
    let ctx = chi.ctx();
    let roots = ctx.roots();
    let m = ctx.reduce(m) as u64;
    let terms: Vec<Complex64> = (1..ctx.p())
        .map(|x| chi.eval(x as i64) * roots.add(m * x as u64))
        .collect();
    pairwise_sum(&terms)
}

/// G(χ) = Σ_x χ(x) e^{2πix/p}.
pub fn gauss_sum(chi: &Character) -> Complex64 {
    twisted_exp_sum(chi, 1)
}

/// Σ_{x ∈ interval} χ(x), summed directly.
pub fn interval_char_sum(chi: &Character, interval: &Interval) -> Complex64 {
    let terms: Vec<Complex64> = interval.members().map(|x| chi.eval(x as i64)).collect();
    pairwise_sum(&terms)
}
