//! Coset discrepancies Δ_ξ = |ξΓ ∩ I| − |I|/n, coset profiles
//! a_ξ = |A ∩ ξΓ| − |A|/n, and the identities linking them to Gauss sums and
//! L(1, χ̄χ₃).
//!
//! Tables store n·Δ_ξ and n·a_ξ as integers so that the algebraic identities
//! are checked exactly; floating tolerances enter only with L-values.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_rational::Ratio;

use crate::characters::{
    dual_set, dual_set_nontrivial, eval_on_coset, gauss_sum, interval_char_sum, pairwise_sum,
    Character,
};
use crate::error::{Error, Result};
use crate::lfunctions::{
    interval_sum_via_l_with, LOneEvaluator, ProductCharacter, SmallModulusCharacter,
};
use crate::modp::{Interval, SubgroupContext};

pub type Rational = Ratio<i128>;

#[derive(Debug, Clone)]
pub struct DiscrepancyTable {
    sub: Arc<SubgroupContext>,
    interval: Interval,
    /// n·Δ_ξ
    scaled: Vec<i64>,
}

impl DiscrepancyTable {
    pub fn sub(&self) -> &Arc<SubgroupContext> {
        &self.sub
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn delta(&self, xi: u32) -> Rational {
        Rational::new(
            self.scaled[xi as usize] as i128,
            self.sub.index() as i128,
        )
    }

    pub fn delta_f64(&self, xi: u32) -> f64 {
        self.scaled[xi as usize] as f64 / self.sub.index() as f64
    }

    pub fn values_f64(&self) -> Vec<f64> {
        (0..self.sub.index()).map(|xi| self.delta_f64(xi)).collect()
    }

    /// Σ_ξ Δ_ξ², exactly.
    pub fn sum_of_squares(&self) -> Rational {
        let n = self.sub.index() as i128;
        let s: i128 = self.scaled.iter().map(|&v| (v as i128) * (v as i128)).sum();
        Rational::new(s, n * n)
    }

    /// Some coset has Δ > 0 and some has Δ < 0.
    pub fn has_both_signs(&self) -> bool {
        self.scaled.iter().any(|&v| v > 0) && self.scaled.iter().any(|&v| v < 0)
    }
}

pub fn delta_table(sub: &Arc<SubgroupContext>, interval: &Interval) -> DiscrepancyTable {
    let n = sub.index() as i64;
    let mut counts = vec![0i64; n as usize];
    for x in interval.members().filter(|&x| x != 0) {
        counts[sub.coset_of(x) as usize] += 1;
    }
    let len = interval.members().filter(|&x| x != 0).count() as i64;
    DiscrepancyTable {
        sub: Arc::clone(sub),
        interval: interval.clone(),
        scaled: counts.iter().map(|&c| n * c - len).collect(),
    }
}

fn thirds_evaluator(sub: &SubgroupContext) -> Result<LOneEvaluator> {
    LOneEvaluator::new(3 * sub.p() as u64)
}

/// Σ_{x∈I} χ(x) for each χ ∈ X*, each reconstructed from G(χ) and L(1, χ̄χ₃).
fn thirds_character_sums(sub: &SubgroupContext) -> Result<Vec<(Character, Complex64)>> {
    let interval = Interval::thirds(sub.p());
    let evaluator = thirds_evaluator(sub)?;
    dual_set_nontrivial(sub)
        .into_iter()
        .map(|chi| {
            let s = interval_sum_via_l_with(&chi, &interval, &evaluator)?;
            Ok((chi, s))
        })
        .collect()
}

/// Δ_ξ on the thirds interval rebuilt from
/// −(√3/2πn) Σ_{χ∈X*} (1 + χ̄(−1)) G(χ) L(1, χ̄χ₃) χ̄(ξ).
pub fn delta_via_series(sub: &Arc<SubgroupContext>) -> Result<Vec<f64>> {
    let n = sub.index();
    let sums = thirds_character_sums(sub)?;
    Ok((0..n)
        .map(|xi| {
            let terms: Vec<Complex64> = sums
                .iter()
                .map(|(chi, s)| eval_on_coset(chi, sub, xi).conj() * s)
                .collect();
            pairwise_sum(&terms).re / n as f64
        })
        .collect())
}

/// Σ_ξ Δ_ξ² counted exactly, against (3p/4π²n) Σ_{χ∈X*} |1+χ̄(−1)|² |L(1, χ̄χ₃)|².
pub fn parseval_discrepancy(sub: &Arc<SubgroupContext>) -> Result<(Rational, f64)> {
    let lhs = delta_table(sub, &Interval::thirds(sub.p())).sum_of_squares();
    let evaluator = thirds_evaluator(sub)?;
    let mut acc = Vec::new();
    for chi in dual_set_nontrivial(sub).into_iter().filter(|c| c.is_even()) {
        let l = evaluator.eval(&ProductCharacter::new(chi.conj(), SmallModulusCharacter::Chi3))?;
        acc.push(4.0 * l.norm_sqr());
    }
    let p = sub.p() as f64;
    let n = sub.index() as f64;
    let rhs = 3.0 * p / (4.0 * PI * PI * n) * crate::characters::pairwise_sum_real(&acc);
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtremalCosets {
    pub xi_max: u32,
    pub xi_min: u32,
    pub xi_absmax: u32,
}

/// Argmax, argmin and argmax of |Δ|; ties go to the smallest coset index.
pub fn extremal_cosets(table: &DiscrepancyTable) -> ExtremalCosets {
    let mut out = ExtremalCosets {
        xi_max: 0,
        xi_min: 0,
        xi_absmax: 0,
    };
    let s = &table.scaled;
    for (xi, &v) in s.iter().enumerate() {
        let xi = xi as u32;
        if v > s[out.xi_max as usize] {
            out.xi_max = xi;
        }
        if v < s[out.xi_min as usize] {
            out.xi_min = xi;
        }
        if v.abs() > s[out.xi_absmax as usize].abs() {
            out.xi_absmax = xi;
        }
    }
    out
}

/// For odd χ ∈ X* (requires −1 ∉ Γ): the direct sum of χ over J = [p/8, 3p/8)
/// paired with its closed form (√2 G(χ)/(πi)) L(1, χ̄χ₈).
pub fn eighths_odd_reconstruction(
    sub: &Arc<SubgroupContext>,
) -> Result<Vec<(Character, Complex64, Complex64)>> {
    let interval = Interval::eighths(sub.p());
    let evaluator = LOneEvaluator::new(8 * sub.p() as u64)?;
    dual_set_nontrivial(sub)
        .into_iter()
        .filter(|chi| !chi.is_even())
        .map(|chi| {
            let direct = interval_char_sum(&chi, &interval);
            let closed = interval_sum_via_l_with(&chi, &interval, &evaluator)?;
            Ok((chi, direct, closed))
        })
        .collect()
}

/// a_ξ = |A ∩ ξΓ| − |A|/n for A ⊆ F_p^*.
#[derive(Debug, Clone)]
pub struct CosetProfile {
    sub: Arc<SubgroupContext>,
    set: Vec<u32>,
    /// n·a_ξ
    scaled: Vec<i64>,
}

impl CosetProfile {
    pub fn sub(&self) -> &Arc<SubgroupContext> {
        &self.sub
    }

    pub fn set(&self) -> &[u32] {
        &self.set
    }

    pub fn scaled(&self) -> &[i64] {
        &self.scaled
    }

    pub fn a(&self, xi: u32) -> Rational {
        Rational::new(self.scaled[xi as usize] as i128, self.sub.index() as i128)
    }

    pub fn a_f64(&self, xi: u32) -> f64 {
        self.scaled[xi as usize] as f64 / self.sub.index() as f64
    }

    /// n·(a_ξ + a_{−ξ})
    pub fn folded_scaled(&self, xi: u32) -> i64 {
        self.scaled[xi as usize] + self.scaled[self.sub.neg_coset(xi) as usize]
    }

    /// Σ_ξ (a_ξ + a_{−ξ})², exactly.
    pub fn folded_energy(&self) -> Rational {
        let n = self.sub.index() as i128;
        let s: i128 = (0..self.sub.index())
            .map(|xi| {
                let v = self.folded_scaled(xi) as i128;
                v * v
            })
            .sum();
        Rational::new(s, n * n)
    }

    /// Σ_ξ a_ξ χ̄(ξ) for χ ∈ X.
    pub fn transform(&self, chi: &Character) -> Complex64 {
        let terms: Vec<Complex64> = (0..self.sub.index())
            .map(|xi| eval_on_coset(chi, &self.sub, xi).conj() * self.a_f64(xi))
            .collect();
        pairwise_sum(&terms)
    }
}

pub fn coset_profile(set: &[u32], sub: &Arc<SubgroupContext>) -> Result<CosetProfile> {
    let set = sub.ctx().nonzero_set(set)?;
    let n = sub.index() as i64;
    let mut counts = vec![0i64; n as usize];
    for &a in &set {
        counts[sub.coset_of(a) as usize] += 1;
    }
    let size = set.len() as i64;
    Ok(CosetProfile {
        sub: Arc::clone(sub),
        set,
        scaled: counts.iter().map(|&c| n * c - size).collect(),
    })
}

/// n²·Σ_ξ a_ξ Δ_{αξ}
fn correlation_scaled(profile: &CosetProfile, table: &DiscrepancyTable, alpha: u32) -> i128 {
    let sub = &profile.sub;
    (0..sub.index())
        .map(|xi| {
            profile.scaled[xi as usize] as i128
                * table.scaled[sub.coset_mul(alpha, xi) as usize] as i128
        })
        .sum()
}

/// Both sides of |Γ|^{−1} Σ_{x∈αΓ} |xA ∩ I| = |A||I|/(p−1) + |Γ|^{−1} Σ_ξ a_ξ Δ_{αξ}.
/// The left side is counted by dilating A; the two sides agree exactly.
pub fn dilation_average(
    set: &[u32],
    sub: &Arc<SubgroupContext>,
    alpha: u32,
    interval: &Interval,
) -> Result<(Rational, Rational)> {
    let profile = coset_profile(set, sub)?;
    let table = delta_table(sub, interval);
    Ok(dilation_average_with(&profile, &table, alpha))
}

pub fn dilation_average_with(
    profile: &CosetProfile,
    table: &DiscrepancyTable,
    alpha: u32,
) -> (Rational, Rational) {
    let sub = &profile.sub;
    let ctx = sub.ctx();
    let interval = &table.interval;
    let hits: i128 = sub
        .coset(alpha)
        .iter()
        .map(|&x| {
            profile
                .set
                .iter()
                .filter(|&&a| interval.contains(ctx.mul(x, a)))
                .count() as i128
        })
        .sum();
    let lhs = Rational::new(hits, sub.order() as i128);

    let n = sub.index() as i128;
    let len = interval.members().filter(|&x| x != 0).count() as i128;
    let size = profile.set.len() as i128;
    let p_minus_one = sub.ctx().order() as i128;
    let rhs = Rational::new(
        n * size * len + correlation_scaled(profile, table, alpha),
        n * p_minus_one,
    );
    (lhs, rhs)
}

/// Σ_α |Σ_ξ a_ξ Δ_{αξ}|² exactly (thirds interval), against
/// (3/4π²n) Σ_{χ∈X*} |1+χ̄(−1)|² |G(χ)|² |L(1, χ̄χ₃)|² |Σ_ξ a_ξ χ̄(ξ)|².
pub fn weighted_parseval(set: &[u32], sub: &Arc<SubgroupContext>) -> Result<(Rational, f64)> {
    let profile = coset_profile(set, sub)?;
    let table = delta_table(sub, &Interval::thirds(sub.p()));
    let n = sub.index() as i128;
    let s: i128 = (0..sub.index())
        .map(|alpha| {
            let c = correlation_scaled(&profile, &table, alpha);
            c * c
        })
        .sum();
    let lhs = Rational::new(s, n * n * n * n);

    let evaluator = thirds_evaluator(sub)?;
    let mut acc = Vec::new();
    for chi in dual_set_nontrivial(sub).into_iter().filter(|c| c.is_even()) {
        let l = evaluator.eval(&ProductCharacter::new(chi.conj(), SmallModulusCharacter::Chi3))?;
        let g = gauss_sum(&chi);
        acc.push(4.0 * g.norm_sqr() * l.norm_sqr() * profile.transform(&chi).norm_sqr());
    }
    let rhs = 3.0 / (4.0 * PI * PI * n as f64) * crate::characters::pairwise_sum_real(&acc);
    Ok((lhs, rhs))
}

/// Σ_{χ∈X} |1+χ̄(−1)|² |Σ_ξ a_ξ χ̄(ξ)|² against n·Σ_ξ (a_ξ + a_{−ξ})².
pub fn folded_energy_identity(set: &[u32], sub: &Arc<SubgroupContext>) -> Result<(f64, Rational)> {
    let profile = coset_profile(set, sub)?;
    let terms: Vec<f64> = dual_set(sub)
        .iter()
        .map(|chi| {
            let fold = 1.0 + chi.conj().parity() as f64;
            fold * fold * profile.transform(chi).norm_sqr()
        })
        .collect();
    let lhs = crate::characters::pairwise_sum_real(&terms);
    let rhs = profile.folded_energy() * sub.index() as i128;
    Ok((lhs, rhs))
}

/// |Σ_{x∈A} η(x)|² against (n/2)·Σ_ξ (a_ξ + a_{−ξ})² for even η ∈ X*.
pub fn even_char_sum_bound(
    set: &[u32],
    sub: &Arc<SubgroupContext>,
    eta: &Character,
) -> Result<(f64, f64)> {
    if eta.ctx().p() != sub.p() || eta.is_principal() || !eta.is_trivial_on(sub) {
        return Err(Error::NotInDualSet);
    }
    if !eta.is_even() {
        return Err(Error::OddCharacter);
    }
    let profile = coset_profile(set, sub)?;
    let terms: Vec<Complex64> = profile.set.iter().map(|&a| eta.eval(a as i64)).collect();
    let lhs = pairwise_sum(&terms).norm_sqr();
    let energy = profile.folded_energy();
    let rhs = sub.index() as f64 / 2.0 * (*energy.numer() as f64 / *energy.denom() as f64);
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::{divisors, primes_in_range, PrimeContext};

    fn sub(p: u64, n: u32) -> Arc<SubgroupContext> {
        SubgroupContext::new(&PrimeContext::new(p).unwrap(), n).unwrap()
    }

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    const Q13: [u32; 6] = [1, 3, 4, 9, 10, 12];

    #[test]
    fn delta_table_fixtures() {
        let s = sub(13, 2);
        let t = delta_table(&s, &Interval::thirds(13));
        assert_eq!((t.delta(0), t.delta(1)), (r(-2, 1), r(2, 1)));

        let t1 = delta_table(&sub(13, 1), &Interval::thirds(13));
        assert_eq!(t1.delta(0), r(0, 1));

        let t7 = delta_table(&sub(7, 2), &Interval::eighths(7));
        assert_eq!((t7.delta(0), t7.delta(1)), (r(1, 1), r(-1, 1)));
    }

    #[test]
    fn table_invariants() {
        for p in primes_in_range(5, 300) {
            let ctx = PrimeContext::new(p).unwrap();
            for n in divisors(ctx.order()) {
                let s = SubgroupContext::new(&ctx, n).unwrap();
                let t = delta_table(&s, &Interval::thirds(p as u32));
                assert_eq!(t.scaled().iter().sum::<i64>(), 0);
                for xi in 0..n {
                    assert_eq!(t.delta(xi), t.delta(s.neg_coset(xi)));
                }
                if t.sum_of_squares() > r(0, 1) {
                    assert!(t.has_both_signs());
                }
            }
        }
    }

    #[test]
    fn series_fixtures() {
        let v = delta_via_series(&sub(13, 2)).unwrap();
        assert!((v[0] + 2.0).abs() < 1e-6 && (v[1] - 2.0).abs() < 1e-6);
        assert_eq!(delta_via_series(&sub(13, 1)).unwrap(), vec![0.0]);
        let s = sub(31, 3);
        let exact = delta_table(&s, &Interval::thirds(31)).values_f64();
        let series = delta_via_series(&s).unwrap();
        for (a, b) in exact.iter().zip(&series) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    #[test]
    fn parseval_fixtures() {
        let (lhs, rhs) = parseval_discrepancy(&sub(13, 2)).unwrap();
        assert_eq!(lhs, r(8, 1));
        assert!((rhs - 8.0).abs() < 1e-5);
        let (lhs, rhs) = parseval_discrepancy(&sub(5, 2)).unwrap();
        assert_eq!(lhs, r(2, 1));
        assert!((rhs - 2.0).abs() < 1e-5);
        let (lhs, rhs) = parseval_discrepancy(&sub(13, 1)).unwrap();
        assert_eq!(lhs, r(0, 1));
        assert_eq!(rhs, 0.0);
    }

    #[test]
    fn extremal_fixtures() {
        let e = extremal_cosets(&delta_table(&sub(13, 2), &Interval::thirds(13)));
        assert_eq!(
            e,
            ExtremalCosets {
                xi_max: 1,
                xi_min: 0,
                xi_absmax: 0
            }
        );
        let z = extremal_cosets(&delta_table(&sub(13, 1), &Interval::thirds(13)));
        assert_eq!((z.xi_max, z.xi_min, z.xi_absmax), (0, 0, 0));
        let e7 = extremal_cosets(&delta_table(&sub(7, 2), &Interval::eighths(7)));
        assert_eq!(e7.xi_max, 0);
    }

    #[test]
    fn profile_fixtures() {
        let s = sub(13, 2);
        let q = coset_profile(&Q13, &s).unwrap();
        assert_eq!((q.a(0), q.a(1)), (r(3, 1), r(-3, 1)));
        let all: Vec<u32> = (1..13).collect();
        let z = coset_profile(&all, &s).unwrap();
        assert!(z.scaled().iter().all(|&v| v == 0));
        let one = coset_profile(&[1], &s).unwrap();
        assert_eq!((one.a(0), one.a(1)), (r(1, 2), r(-1, 2)));
        assert!(matches!(coset_profile(&[0, 1], &s), Err(Error::ZeroInSet)));
    }

    #[test]
    fn dilation_fixtures() {
        let s = sub(13, 2);
        let i = Interval::thirds(13);
        assert_eq!(dilation_average(&Q13, &s, 1, &i).unwrap(), (r(4, 1), r(4, 1)));
        assert_eq!(dilation_average(&Q13, &s, 0, &i).unwrap(), (r(0, 1), r(0, 1)));
        let all: Vec<u32> = (1..13).collect();
        for alpha in 0..2 {
            assert_eq!(dilation_average(&all, &s, alpha, &i).unwrap(), (r(4, 1), r(4, 1)));
        }
    }

    #[test]
    fn weighted_parseval_fixtures() {
        let s = sub(13, 2);
        let (lhs, rhs) = weighted_parseval(&Q13, &s).unwrap();
        assert_eq!(lhs, r(288, 1));
        assert!((rhs - 288.0).abs() < 1e-2);
        let all: Vec<u32> = (1..13).collect();
        let (lhs, rhs) = weighted_parseval(&all, &s).unwrap();
        assert_eq!(lhs, r(0, 1));
        assert!(rhs.abs() < 1e-9);

        // Q₅: a = (2−1, 0−1)·… = (+1, −1), Δ = (−1, +1): α=Q gives −2, α=N gives +2
        let s5 = sub(5, 2);
        let (lhs, rhs) = weighted_parseval(&[1, 4], &s5).unwrap();
        assert_eq!(lhs, r(8, 1));
        assert!((rhs - 8.0).abs() < 1e-4);
    }

    #[test]
    fn folded_energy_fixtures() {
        let s = sub(13, 2);
        let (lhs, rhs) = folded_energy_identity(&Q13, &s).unwrap();
        assert!((lhs - 144.0).abs() < 1e-6);
        assert_eq!(rhs, r(144, 1));

        // −1 ∉ Q₇: a = (1, −1), folded sums vanish
        let s7 = sub(7, 2);
        let (lhs, rhs) = folded_energy_identity(&[1, 2], &s7).unwrap();
        assert_eq!(rhs, r(0, 1));
        assert!(lhs.abs() < 1e-9);

        let (lhs, rhs) = folded_energy_identity(&[1, 3, 5], &s7).unwrap();
        assert!((lhs - *rhs.numer() as f64 / *rhs.denom() as f64).abs() < 1e-6);
    }

    #[test]
    fn even_bound_fixtures() {
        let s = sub(13, 2);
        let rho = Character::legendre(s.ctx());
        let (lhs, rhs) = even_char_sum_bound(&Q13, &s, &rho).unwrap();
        assert!((lhs - 36.0).abs() < 1e-9 && (rhs - 72.0).abs() < 1e-9);

        let all: Vec<u32> = (1..13).collect();
        let (lhs, rhs) = even_char_sum_bound(&all, &s, &rho).unwrap();
        assert!(lhs < 1e-18 && rhs == 0.0);

        let s7 = sub(7, 2);
        let rho7 = Character::legendre(s7.ctx());
        assert!(matches!(
            even_char_sum_bound(&[1], &s7, &rho7),
            Err(Error::OddCharacter)
        ));
        assert!(matches!(
            even_char_sum_bound(&[1], &s, &Character::new(s.ctx(), 1)),
            Err(Error::NotInDualSet)
        ));
        assert!(matches!(
            even_char_sum_bound(&[1], &s, &Character::principal(s.ctx())),
            Err(Error::NotInDualSet)
        ));
    }

    #[test]
    fn eighths_odd_reconstruction_small() {
        let rows = eighths_odd_reconstruction(&sub(7, 2)).unwrap();
        assert_eq!(rows.len(), 1);
        let (_, direct, closed) = &rows[0];
        assert!((direct - Complex64::new(2.0, 0.0)).norm() < 1e-9);
        assert!((direct - closed).norm() < 1e-6);
    }
}
