//! L(1, ψ) for non-principal Dirichlet characters and the closed forms that
//! express interval character sums through L-values.
//!
//! L(1, ψ) is evaluated by the finite digamma form
//! `L(1, ψ) = −(1/q) Σ_{r=1}^{q−1} ψ(r) ψ₀(r/q)`, exact up to the digamma
//! kernel because Σ_r ψ(r) = 0 for non-principal ψ. The truncated Dirichlet
//! series with an Abel-summation tail bound is kept as an independent check.

use std::f64::consts::{PI, SQRT_2};
use std::sync::Arc;

use num_complex::Complex64;

use crate::characters::{gauss_sum, pairwise_sum, Character};
use crate::error::{Error, Result};
use crate::modp::{IntervalKind, Interval, PrimeContext};

/// Largest modulus accepted by [`l_one`].
pub const MAX_L_MODULUS: u64 = 1 << 23;

/// A Dirichlet character evaluated pointwise on the integers.
pub trait DirichletCharacter {
    fn modulus(&self) -> u64;
    fn value(&self, m: i64) -> Complex64;
    fn is_principal(&self) -> bool;
    /// ψ(−1) as ±1.
    fn parity(&self) -> i32;
}

impl DirichletCharacter for Character {
    fn modulus(&self) -> u64 {
        self.ctx().p() as u64
    }

    fn value(&self, m: i64) -> Complex64 {
        self.eval(m)
    }

    fn is_principal(&self) -> bool {
        Character::is_principal(self)
    }

    fn parity(&self) -> i32 {
        Character::parity(self)
    }
}

/// The real non-principal characters modulo 3, 4 and 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmallModulusCharacter {
    Chi3,
    Chi4,
    Chi8,
}

const CHI3: [i8; 3] = [0, 1, -1];
const CHI4: [i8; 4] = [0, 1, 0, -1];
const CHI8: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];

impl SmallModulusCharacter {
    pub fn from_modulus(q: u32) -> Option<Self> {
        match q {
            3 => Some(Self::Chi3),
            4 => Some(Self::Chi4),
            8 => Some(Self::Chi8),
            _ => None,
        }
    }

    pub fn table(&self) -> &'static [i8] {
        match self {
            Self::Chi3 => &CHI3,
            Self::Chi4 => &CHI4,
            Self::Chi8 => &CHI8,
        }
    }

    pub fn at(&self, m: i64) -> i32 {
        let t = self.table();
        t[m.rem_euclid(t.len() as i64) as usize] as i32
    }
}

impl DirichletCharacter for SmallModulusCharacter {
    fn modulus(&self) -> u64 {
        self.table().len() as u64
    }

    fn value(&self, m: i64) -> Complex64 {
        Complex64::new(self.at(m) as f64, 0.0)
    }

    fn is_principal(&self) -> bool {
        false
    }

    fn parity(&self) -> i32 {
        self.at(-1)
    }
}

pub fn chi3(m: i64) -> i32 {
    SmallModulusCharacter::Chi3.at(m)
}

pub fn chi8(m: i64) -> i32 {
    SmallModulusCharacter::Chi8.at(m)
}

/// 1 iff m ≡ 0 (mod 8).
pub fn delta0(m: i64) -> i32 {
    (m.rem_euclid(8) == 0) as i32
}

/// 1 iff m ≡ 4 (mod 8).
pub fn delta4(m: i64) -> i32 {
    (m.rem_euclid(8) == 4) as i32
}

/// ψ(m) = χ(m mod p)·small(m mod q₀), a character modulo p·q₀.
#[derive(Debug, Clone)]
pub struct ProductCharacter {
    pub chi: Character,
    pub small: SmallModulusCharacter,
}

impl ProductCharacter {
    pub fn new(chi: Character, small: SmallModulusCharacter) -> Self {
        Self { chi, small }
    }
}

impl DirichletCharacter for ProductCharacter {
    fn modulus(&self) -> u64 {
        self.chi.ctx().p() as u64 * self.small.modulus()
    }

    fn value(&self, m: i64) -> Complex64 {
        match self.small.at(m) {
            0 => Complex64::new(0.0, 0.0),
            s => self.chi.eval(m) * s as f64,
        }
    }

    fn is_principal(&self) -> bool {
        false
    }

    fn parity(&self) -> i32 {
        self.chi.parity() * self.small.parity()
    }
}

/// ψ₀(x) for x > 0: shift upward to x ≥ 10, then the asymptotic series
/// through the x^{−14} term.
pub fn digamma_f64(mut x: f64) -> f64 {
    debug_assert!(x > 0.0);
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let z = inv * inv;
    let series = z
        * (1.0 / 12.0
            - z * (1.0 / 120.0
                - z * (1.0 / 252.0
                    - z * (1.0 / 240.0
                        - z * (1.0 / 132.0 - z * (691.0 / 32760.0 - z / 12.0))))));
    acc + x.ln() - 0.5 * inv - series
}

/// ψ₀(a/q) for 0 < a < q.
pub fn digamma(a: u64, q: u64) -> Result<f64> {
    if a == 0 || a >= q {
        return Err(Error::OutOfRange { a, q });
    }
    Ok(digamma_f64(a as f64 / q as f64))
}

/// Digamma table for one modulus, reusable across every character of that
/// modulus.
#[derive(Debug, Clone)]
pub struct LOneEvaluator {
    q: u64,
    /// `kernel[r] = ψ₀(r/q)`, with `kernel[0]` unused.
    kernel: Vec<f64>,
}

impl LOneEvaluator {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_L_MODULUS {
            return Err(Error::ModulusTooLarge(q));
        }
        let mut kernel = vec![0.0; q as usize];
        for (r, slot) in kernel.iter_mut().enumerate().skip(1) {
            *slot = digamma_f64(r as f64 / q as f64);
        }
        Ok(Self { q, kernel })
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    pub fn eval<C: DirichletCharacter + ?Sized>(&self, psi: &C) -> Result<Complex64> {
        if psi.is_principal() {
            return Err(Error::PrincipalCharacter);
        }
        let q = psi.modulus();
        if q != self.q {
            return Err(Error::DimensionMismatch(q as usize, self.q as usize));
        }
        let terms: Vec<Complex64> = (1..q)
            .map(|r| psi.value(r as i64) * self.kernel[r as usize])
            .collect();
        Ok(-pairwise_sum(&terms) / q as f64)
    }
}

/// L(1, ψ) via the digamma finite form.
pub fn l_one<C: DirichletCharacter + ?Sized>(psi: &C) -> Result<Complex64> {
    if psi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    LOneEvaluator::new(psi.modulus())?.eval(psi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncatedL {
    pub value: Complex64,
    /// Rigorous bound on |L(1, ψ) − value|.
    pub tail_bound: f64,
}

/// Σ_{m=1}^{M} ψ(m)/m with the Abel-summation tail bound 2·S_max/(M+1),
/// where S_max bounds every partial character sum over one period.
pub fn l_one_truncated<C: DirichletCharacter + ?Sized>(psi: &C, terms: u64) -> Result<TruncatedL> {
    if psi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    let q = psi.modulus();
    let mut running = Complex64::new(0.0, 0.0);
    let mut s_max: f64 = 0.0;
    for r in 1..=q {
        running += psi.value(r as i64);
        s_max = s_max.max(running.norm());
    }

    let mut value = Complex64::new(0.0, 0.0);
    let mut comp = Complex64::new(0.0, 0.0);
    for m in 1..=terms {
        // Kahan-compensated
        let y = psi.value(m as i64) / m as f64 - comp;
        let t = value + y;
        comp = (t - value) - y;
        value = t;
    }
    let rounding = 4.0 * f64::EPSILON * (terms as f64).max(1.0).ln().max(1.0);
    Ok(TruncatedL {
        value,
        tail_bound: 2.0 * s_max / (terms as f64 + 1.0) + rounding,
    })
}

/// Σ_{x ∈ interval} χ(x) reconstructed from L-values:
///
/// * thirds: `−(√3 G(χ)/2π) · L(1, χ̄χ₃) · (1 + χ̄(−1))`
/// * eighths, odd χ: `(√2 G(χ)/(πi)) · L(1, χ̄χ₈)`
pub fn interval_sum_via_l(chi: &Character, interval: &Interval) -> Result<Complex64> {
    let small = match interval.kind() {
        IntervalKind::Thirds => SmallModulusCharacter::Chi3,
        IntervalKind::Eighths => SmallModulusCharacter::Chi8,
        IntervalKind::Custom => return Err(Error::UnsupportedInterval),
    };
    let evaluator = LOneEvaluator::new(chi.ctx().p() as u64 * small.modulus())?;
    interval_sum_via_l_with(chi, interval, &evaluator)
}

/// [`interval_sum_via_l`] with a caller-supplied digamma table of modulus
/// 3p (thirds) or 8p (eighths).
pub fn interval_sum_via_l_with(
    chi: &Character,
    interval: &Interval,
    evaluator: &LOneEvaluator,
) -> Result<Complex64> {
    if chi.is_principal() {
        return Err(Error::PrincipalCharacter);
    }
    match interval.kind() {
        IntervalKind::Thirds => {
            if !chi.is_even() {
                // 1 + χ̄(−1) = 0
                return Ok(Complex64::new(0.0, 0.0));
            }
            let psi = ProductCharacter::new(chi.conj(), SmallModulusCharacter::Chi3);
            let l = evaluator.eval(&psi)?;
            Ok(-(3f64.sqrt() / (2.0 * PI)) * gauss_sum(chi) * l * 2.0)
        }
        IntervalKind::Eighths => {
            if chi.is_even() {
                return Err(Error::UnsupportedParity);
            }
            let psi = ProductCharacter::new(chi.conj(), SmallModulusCharacter::Chi8);
            let l = evaluator.eval(&psi)?;
            Ok(gauss_sum(chi) * SQRT_2 / (PI * Complex64::i()) * l)
        }
        IntervalKind::Custom => Err(Error::UnsupportedInterval),
    }
}

/// Both sides of Σ_{1≤x<p/3} (x/p) = √(3p)/(2π) · L(1, ρχ₃).
///
/// The identity holds when ρ is even (p ≡ 1 mod 4); the right side is still
/// returned for other p.
pub fn legendre_third_identity(ctx: &Arc<PrimeContext>) -> Result<(i64, f64)> {
    let p = ctx.p();
    let lhs: i64 = (1..=p / 3).map(|x| ctx.legendre(x as i64) as i64).sum();
    let psi = ProductCharacter::new(Character::legendre(ctx), SmallModulusCharacter::Chi3);
    let l = l_one(&psi)?;
    let rhs = (3.0 * p as f64).sqrt() / (2.0 * PI) * l.re;
    Ok((lhs, rhs))
}

/// The four cut points α for which S(α) = Σ_{1≤x≤αp} (x/p) has an L-value form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Alpha {
    OneThird,
    TwoThirds,
    OneEighth,
    ThreeEighths,
}

impl Alpha {
    pub const ALL: [Alpha; 4] = [
        Alpha::OneThird,
        Alpha::TwoThirds,
        Alpha::OneEighth,
        Alpha::ThreeEighths,
    ];

    fn fraction(self) -> (u64, u64) {
        match self {
            Alpha::OneThird => (1, 3),
            Alpha::TwoThirds => (2, 3),
            Alpha::OneEighth => (1, 8),
            Alpha::ThreeEighths => (3, 8),
        }
    }
}

/// S(α) = Σ_{1≤x≤αp} (x/p), by direct summation.
pub fn s_alpha_direct(ctx: &PrimeContext, alpha: Alpha) -> i64 {
    let (num, den) = alpha.fraction();
    let top = num * ctx.p() as u64 / den;
    (1..=top).map(|x| ctx.legendre(x as i64) as i64).sum()
}

/// S(α) = (√p/π)·(L(1, ρ) − Σ_{n≥1} (n/p) cos(2πnα)/n) for odd ρ, with the
/// cosine series reduced to L(1, ρ) and L(1, ρχ₈):
///
/// * α ∈ {1/3, 2/3}: cos(2πn/3) = (3·[3 | n] − 1)/2, giving (ρ(3) − 1)/2 · L(1, ρ)
/// * α ∈ {1/8, 3/8}: cos(πn/4), cos(3πn/4) = ±χ₈(n)/√2 + δ₀(n) − δ₄(n)
pub fn s_alpha_via_l(ctx: &Arc<PrimeContext>, alpha: Alpha) -> Result<f64> {
    let rho = Character::legendre(ctx);
    if rho.is_even() {
        return Err(Error::UnsupportedParity);
    }
    let l_rho = l_one(&rho)?.re;
    let cosine_series = match alpha {
        Alpha::OneThird | Alpha::TwoThirds => (ctx.legendre(3) as f64 - 1.0) / 2.0 * l_rho,
        Alpha::OneEighth | Alpha::ThreeEighths => {
            let l8 = l_one(&ProductCharacter::new(rho, SmallModulusCharacter::Chi8))?.re;
            let rho2 = ctx.legendre(2) as f64;
            // Σ_{8|n} (n/p)/n − Σ_{n≡4 (8)} (n/p)/n
            let delta_part = rho2 / 8.0 * l_rho - (1.0 - rho2 / 2.0) / 4.0 * l_rho;
            let sign = if alpha == Alpha::OneEighth { 1.0 } else { -1.0 };
            sign * l8 / SQRT_2 + delta_part
        }
    };
    Ok((ctx.p() as f64).sqrt() / PI * (l_rho - cosine_series))
}
