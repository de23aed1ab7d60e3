//! Additive Fourier analysis on F_p with the convention
//! f̂(ξ) = Σ_x f(x) e^{−2πiξx/p}.

use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;
use rustfft::FftPlanner;

use crate::characters::{pairwise_sum, unit_roots};
use crate::error::{Error, Result};
use crate::modp::SubgroupContext;

/// Lengths at or above this use the fast transform.
pub const FAST_DFT_THRESHOLD: usize = 4096;

/// Guard for spectrum threshold comparisons.
pub const SPECTRUM_GUARD: f64 = 1e-9;

/// A function F_p → ℂ, indexed by canonical residue.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityFunction {
    values: Vec<Complex64>,
}

impl DensityFunction {
    pub fn new(values: Vec<Complex64>) -> Self {
        Self { values }
    }

    pub fn from_real(values: &[f64]) -> Self {
        Self::new(values.iter().map(|&v| Complex64::new(v, 0.0)).collect())
    }

    pub fn zeros(p: u32) -> Self {
        Self::new(vec![Complex64::new(0.0, 0.0); p as usize])
    }

    /// Indicator function of `set` (residues reduced mod p).
    pub fn indicator(p: u32, set: &[u32]) -> Self {
        let mut f = Self::zeros(p);
        for &x in set {
            f.values[(x % p) as usize] = Complex64::new(1.0, 0.0);
        }
        f
    }

    pub fn p(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn at(&self, x: u32) -> Complex64 {
        self.values[x as usize % self.values.len()]
    }

    pub fn l2_squared(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }
}

/// Definition-conforming O(p²) transform.
pub fn dft_direct(f: &DensityFunction) -> DensityFunction {
    let p = f.p();
    let roots = unit_roots(p);
    let values = (0..p)
        .into_par_iter()
        .map(|xi| {
            let mut idx = 0usize;
            let terms: Vec<Complex64> = f
                .values
                .iter()
                .map(|&v| {
                    let t = v * roots[idx].conj();
                    idx += xi;
                    if idx >= p {
                        idx -= p;
                    }
                    t
                })
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    DensityFunction::new(values)
}

/// Fast transform of arbitrary (including prime) length.
pub fn dft_fast(f: &DensityFunction) -> DensityFunction {
    let mut buf = f.values.clone();
    if buf.is_empty() {
        return DensityFunction::new(buf);
    }
    let fft = FftPlanner::<f64>::new().plan_fft_forward(buf.len());
    fft.process(&mut buf);
    DensityFunction::new(buf)
}

pub fn dft(f: &DensityFunction) -> DensityFunction {
    if f.p() < FAST_DFT_THRESHOLD {
        dft_direct(f)
    } else {
        dft_fast(f)
    }
}

/// Inverse transform f(x) = (1/p) Σ_ξ f̂(ξ) e^{2πiξx/p}.
pub fn idft(f_hat: &DensityFunction) -> DensityFunction {
    let p = f_hat.p();
    let conj = DensityFunction::new(f_hat.values.iter().map(|v| v.conj()).collect());
    let t = dft(&conj);
    DensityFunction::new(t.values.iter().map(|v| v.conj() / p as f64).collect())
}

/// Spec_τ(A) = {ξ : |Â(ξ)| ≥ τ|A|}, ascending.
pub fn spectrum(p: u32, set: &[u32], tau: f64) -> Result<Vec<u32>> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let f_hat = dft(&DensityFunction::indicator(p, set));
    let size = f_hat.at(0).re;
    Ok((0..p)
        .filter(|&xi| f_hat.at(xi).norm() >= tau * size - SPECTRUM_GUARD)
        .collect())
}

/// {b : ‖bξ/p‖ ≤ τ for every ξ in `spec`}, ascending. ‖·‖ is the distance to
/// the nearest integer.
pub fn bohr_set(p: u32, spec: &[u32], tau: f64) -> Vec<u32> {
    (0..p)
        .filter(|&b| {
            spec.iter().all(|&xi| {
                let r = (b as u64 * xi as u64 % p as u64) as u32;
                let dist = r.min(p - r) as f64 / p as f64;
                dist <= tau + 1e-12
            })
        })
        .collect()
}

/// T(w) = Σ_{x+y=z} w(x)w(y)w(z), summed directly.
pub fn schur_count(w: &[f64]) -> f64 {
    let p = w.len();
    let rows: Vec<f64> = (0..p)
        .into_par_iter()
        .map(|x| {
            if w[x] == 0.0 {
                return 0.0;
            }
            let mut acc = 0.0;
            let mut z = x;
            for &wy in w {
                acc += wy * w[z];
                z += 1;
                if z == p {
                    z = 0;
                }
            }
            w[x] * acc
        })
        .collect();
    crate::characters::pairwise_sum_real(&rows)
}

/// T(w) from the transform side, (1/p) Σ_ξ ŵ(ξ)|ŵ(ξ)|².
pub fn schur_count_fourier(w: &[f64]) -> f64 {
    let w_hat = dft(&DensityFunction::from_real(w));
    let terms: Vec<Complex64> = w_hat.values.iter().map(|v| v * v.norm_sqr()).collect();
    pairwise_sum(&terms).re / w.len() as f64
}

/// (f∗g)(t) = Σ_x f(x)g(t−x).
pub fn convolve(f: &DensityFunction, g: &DensityFunction) -> Result<DensityFunction> {
    if f.p() != g.p() {
        return Err(Error::DimensionMismatch(f.p(), g.p()));
    }
    let p = f.p();
    let values = (0..p)
        .into_par_iter()
        .map(|t| {
            let terms: Vec<Complex64> = (0..p)
                .map(|x| f.values[x] * g.values[(t + p - x) % p])
                .collect();
            pairwise_sum(&terms)
        })
        .collect();
    Ok(DensityFunction::new(values))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WienerNorms {
    /// ‖A‖_W = p^{−1} Σ_x |Â(x)|
    pub w: f64,
    /// ‖A‖_{ℜW} = p^{−1} Σ_x |Σ_{a∈A} cos(2πax/p)|
    pub rw: f64,
}

pub fn wiener_norms(p: u32, set: &[u32]) -> Result<WienerNorms> {
    if set.is_empty() {
        return Err(Error::EmptySet);
    }
    let f_hat = dft(&DensityFunction::indicator(p, set));
    let abs: Vec<f64> = f_hat.values.iter().map(|v| v.norm()).collect();
    let re: Vec<f64> = f_hat.values.iter().map(|v| v.re.abs()).collect();
    Ok(WienerNorms {
        w: crate::characters::pairwise_sum_real(&abs) / p as f64,
        rw: crate::characters::pairwise_sum_real(&re) / p as f64,
    })
}

/// max_{ξ≠0} |Γ̂(ξ)|.
pub fn subgroup_transform_max(sub: &SubgroupContext) -> f64 {
    let g_hat = dft(&DensityFunction::indicator(sub.p(), sub.members()));
    g_hat.values[1..]
        .iter()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

/// Per-coset deviations | |ξΓ ∩ A| − |A||Γ|/p | and the common bound
/// ‖A‖_W · max_{x≠0} |Γ̂(x)|.
#[derive(Debug, Clone, PartialEq)]
pub struct CosetInequality {
    pub deviations: Vec<f64>,
    pub bound: f64,
}

pub fn coset_inequality(set: &[u32], sub: &Arc<SubgroupContext>) -> Result<CosetInequality> {
    let p = sub.p();
    let mut set: Vec<u32> = set.iter().map(|&a| a % p).collect();
    set.sort_unstable();
    set.dedup();
    let norms = wiener_norms(p, &set)?;
    let mut counts = vec![0u32; sub.index() as usize];
    for &a in set.iter().filter(|&&a| a != 0) {
        counts[sub.coset_of(a) as usize] += 1;
    }
    let mean = set.len() as f64 * sub.order() as f64 / p as f64;
    Ok(CosetInequality {
        deviations: counts.iter().map(|&c| (c as f64 - mean).abs()).collect(),
        bound: norms.w * subgroup_transform_max(sub),
    })
}
