use std::f64::consts::PI;

use num_complex::Complex64;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::config::SweepConfig;
use super::report::{CaseRecord, Provenance, Relation, VerificationReport};
use super::rng::SeededSets;
use crate::characters::{
    dual_set_nontrivial, gauss_sum, interval_char_sum, pairwise_sum, twisted_exp_sum, Character,
};
use crate::discrepancy::{
    coset_profile, delta_table, delta_via_series, dilation_average_with, eighths_odd_reconstruction,
    even_char_sum_bound, folded_energy_identity, parseval_discrepancy, weighted_parseval,
};
use crate::error::{Error, Result};
use crate::fourier::{
    bohr_set, coset_inequality, dft, schur_count, schur_count_fourier, spectrum,
    subgroup_transform_max, wiener_norms, DensityFunction,
};
use crate::lfunctions::{
    chi8, delta0, delta4, interval_sum_via_l_with, l_one, legendre_third_identity, s_alpha_direct,
    s_alpha_via_l, Alpha, DirichletCharacter, LOneEvaluator, ProductCharacter,
    SmallModulusCharacter,
};
use crate::modp::{divisors, Interval, PrimeContext, SubgroupContext};
use crate::sumfree::{
    default_cap, sf_dilation_bound, sf_exact, sf_lower_bound, sigma_averages_on, DEFAULT_CAP_K2,
};

type PerPrime = fn(u32, &SweepConfig) -> Result<Vec<CaseRecord>>;

/// Runs one suite over every prime selected by `config`.
pub fn run_suite(name: &str, config: &SweepConfig) -> Result<VerificationReport> {
    config.validate()?;
    let per_prime: PerPrime = match name {
        "lemma31" => lemma31,
        "thm32" => thm32,
        "prop41" => prop41,
        "thm43" => thm43,
        "sf_gamma" => sf_gamma,
        "wiener" => wiener,
        "identities" => identities,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let per: Vec<Vec<CaseRecord>> = config
        .primes()
        .into_par_iter()
        .map(|p| per_prime(p, config))
        .collect::<Result<_>>()?;
    Ok(VerificationReport::new(
        name,
        provenance(config),
        per.into_iter().flatten().collect(),
    ))
}

pub fn provenance(config: &SweepConfig) -> Provenance {
    Provenance {
        p_min: config.p_min,
        p_max: config.p_max,
        residue_filter: config.residue_filter.map(|f| f.to_string()),
        indices: config.indices.clone(),
        seed: config.seed,
        samples: config.samples,
        version: env!("CARGO_PKG_VERSION").to_string(),
    }
}

fn tol(config: &SweepConfig, default: f64) -> f64 {
    config.tolerance.unwrap_or(default)
}

/// Configured indices dividing p − 1, or 2..=12 dividing p − 1 by default.
fn indices_for(config: &SweepConfig, p: u32) -> Vec<u32> {
    let candidates: Vec<u32> = if config.indices.is_empty() {
        (2..=12).collect()
    } else {
        config.indices.clone()
    };
    candidates.into_iter().filter(|n| (p - 1).is_multiple_of(*n)).collect()
}

fn ratio<T>(r: &Ratio<T>) -> f64
where
    Ratio<T>: ToPrimitive,
{
    r.to_f64().unwrap_or(f64::NAN)
}

fn max_err(pairs: impl Iterator<Item = (Complex64, Complex64)>) -> f64 {
    pairs.map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

fn lemma31(p: u32, _config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let rho = Character::legendre(&ctx);
    let count = |iv: &Interval, r: i32| {
        iv.members().filter(|&x| ctx.legendre(x as i64) == r).count() as f64
    };
    let sqrt_p = (p as f64).sqrt();
    let case = if p % 4 == 1 {
        let iv = Interval::thirds(p);
        let q = count(&iv, 1);
        let half = (2 * p / 3 - p / 3) as f64 / 2.0;
        let l = l_one(&ProductCharacter::new(rho, SmallModulusCharacter::Chi3))?.re;
        CaseRecord::compare("thirds", p, 2, q, half, 0.0, Relation::Lt)
            .meta("deficit", half - q)
            .meta("deficit_over_sqrt_p", (half - q) / sqrt_p)
            .meta("l_value", l)
    } else {
        // Σ_J ρ = (√(2p)/π) L(1, ρχ₈) > 0, so N is the minority on J.
        let iv = Interval::eighths(p);
        let q = count(&iv, 1);
        let nr = count(&iv, -1);
        let half = iv.len() as f64 / 2.0;
        let literal = (3 * p / 8 - p / 8 + 1) as f64 / 2.0;
        let l = l_one(&ProductCharacter::new(rho, SmallModulusCharacter::Chi8))?.re;
        CaseRecord::compare("eighths", p, 2, nr, half, 0.0, Relation::Lt)
            .meta("deficit", half - nr)
            .meta("deficit_over_sqrt_p", (half - nr) / sqrt_p)
            .meta("l_value", l)
            .meta("residues_in_j", q)
            .meta("literal_bound", literal)
            .meta("literal_holds", q < literal)
    };
    Ok(vec![case])
}

fn thm32(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let (k, interval) = if p % 4 == 1 {
        (2, Interval::thirds(p))
    } else {
        (3, Interval::eighths(p))
    };
    let cap = default_cap(k);
    let mut rng = SeededSets::for_case(config.seed, "thm32", p);
    let sqrt_p = (p as f64).sqrt();
    let mut cases = Vec::new();
    for s in 0..config.samples {
        let set = rng.nonzero_subset(p, cap + 4);
        let sigma = sigma_averages_on(&ctx, &set, &interval)?;
        let exact = set.len() <= cap;
        let report = if exact {
            sf_exact(&ctx, &set, k, cap)?
        } else {
            sf_lower_bound(&ctx, &set, k)?
        };
        let smax = sigma.max();
        let pass = smax <= Ratio::from_integer(report.value as i64);
        let rho_sum: i64 = set.iter().map(|&a| ctx.legendre(a as i64) as i64).sum();
        cases.push(
            CaseRecord::with_verdict(
                format!("s{s:02}"),
                p,
                2,
                ratio(&smax),
                report.value as f64,
                0.0,
                Relation::Le,
                pass,
            )
            .meta("k", k)
            .meta("size", set.len())
            .meta("exact", exact)
            .meta("flagged", !exact || sigma.flagged)
            .meta("sigma1", sigma.sigma1.to_string())
            .meta("sigma2", sigma.sigma2.to_string())
            .meta("psi", report.psi.to_string())
            .meta("abs_rho_sum", rho_sum.abs())
            .meta("psi_sqrt_p", ratio(&report.psi) * sqrt_p),
        );
    }
    Ok(cases)
}

fn prop41(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let thirds = Interval::thirds(p);
    let lp = (p as f64).ln();
    let mut cases = Vec::new();
    for n in indices_for(config, p) {
        let sub = SubgroupContext::new(&ctx, n)?;
        let (lhs, rhs) = parseval_discrepancy(&sub)?;
        let table = delta_table(&sub, &thirds);
        let series = delta_via_series(&sub)?;
        let series_err = table
            .values_f64()
            .iter()
            .zip(&series)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        let zero = lhs == Ratio::from_integer(0);
        let max_abs = table.values_f64().iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let sum_sq = ratio(&lhs);
        let mut case = CaseRecord::compare(
            format!("n{n:03}"),
            p,
            n,
            sum_sq,
            rhs,
            tol(config, 1e-5),
            Relation::Eq,
        )
        .meta("series_max_err", series_err)
        .require("series_match", series_err <= tol(config, 1e-6))
        .require("sign_exists", zero || table.has_both_signs());
        if !sub.contains_minus_one() {
            let rec = eighths_odd_reconstruction(&sub)?;
            let err = max_err(rec.into_iter().map(|(_, d, c)| (d, c)));
            case = case
                .meta("eighths_max_err", err)
                .require("eighths_odd", err <= tol(config, 1e-6));
        }
        cases.push(
            case.meta("ratio_log2p_over_p", sum_sq * lp * lp / p as f64)
                .meta("ratio_over_p_0_9", sum_sq / (p as f64).powf(0.9))
                .meta("max_abs_delta_over_sqrt_p", max_abs / (p as f64).sqrt()),
        );
    }
    Ok(cases)
}

fn thm43(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let thirds = Interval::thirds(p);
    let mut rng = SeededSets::for_case(config.seed, "thm43", p);
    let mut cases = Vec::new();
    for n in indices_for(config, p) {
        let sub = SubgroupContext::new(&ctx, n)?;
        let table = delta_table(&sub, &thirds);
        let evens: Vec<Character> = dual_set_nontrivial(&sub)
            .into_iter()
            .filter(|c| c.is_even())
            .collect();
        for s in 0..config.samples {
            let set = rng.nonzero_subset(p, p as usize - 1);
            let profile = coset_profile(&set, &sub)?;
            let tag = format!("s{s:02}");
            for alpha in 0..n {
                let (l, r) = dilation_average_with(&profile, &table, alpha);
                cases.push(CaseRecord::with_verdict(
                    format!("{tag}_dil{alpha:02}"),
                    p,
                    n,
                    ratio(&l),
                    ratio(&r),
                    0.0,
                    Relation::Eq,
                    l == r,
                ));
            }

            let (fl, fr) = folded_energy_identity(&set, &sub)?;
            let fr = ratio(&fr);
            cases.push(CaseRecord::compare(
                format!("{tag}_folded"),
                p,
                n,
                fl,
                fr,
                tol(config, 1e-6) * fr.max(1.0),
                Relation::Eq,
            ));

            let (wl, wr) = weighted_parseval(&set, &sub)?;
            let wl = ratio(&wl);
            cases.push(CaseRecord::compare(
                format!("{tag}_weighted"),
                p,
                n,
                wl,
                wr,
                tol(config, 1e-4) * wl.max(1.0),
                Relation::Eq,
            ));

            for eta in &evens {
                let (el, er) = even_char_sum_bound(&set, &sub, eta)?;
                cases.push(
                    CaseRecord::compare(
                        format!("{tag}_eta{:05}", eta.exponent()),
                        p,
                        n,
                        el,
                        er,
                        tol(config, 1e-9) * er.max(1.0),
                        Relation::Le,
                    )
                    .meta("eta_exponent", eta.exponent()),
                );
            }

            let dil = sf_dilation_bound(&ctx, &set, &thirds)?;
            let psi = dil.value as f64 - set.len() as f64 / 3.0;
            cases.push(
                CaseRecord::compare(
                    format!("{tag}_l2stat"),
                    p,
                    n,
                    ratio(&profile.folded_energy()),
                    psi * psi * p as f64,
                    0.0,
                    Relation::Report,
                )
                .meta("size", set.len())
                .meta("psi", psi),
            );
        }
    }
    Ok(cases)
}

fn sf_gamma(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let thirds = Interval::thirds(p);
    let cap = DEFAULT_CAP_K2;
    let indices: Vec<u32> = if config.indices.is_empty() {
        divisors(p - 1)
            .into_iter()
            .filter(|&n| ((p - 1) / n) as usize <= cap)
            .collect()
    } else {
        indices_for(config, p)
    };
    let lp = (p as f64).log2();
    let tau = lp.log2() / lp.sqrt();
    let threshold = p as f64 * lp.log2().powi(2) / lp.sqrt();
    let mut cases = Vec::new();
    for n in indices {
        let sub = SubgroupContext::new(&ctx, n)?;
        let members = sub.members();
        let tag = format!("n{n:03}");
        if members.len() > cap {
            cases.push(
                CaseRecord::compare(format!("{tag}_cap"), p, n, members.len() as f64, cap as f64, 0.0, Relation::Report)
                    .meta("skipped", "subgroup exceeds the exact-search cap"),
            );
            continue;
        }
        let exact = sf_exact(&ctx, members, 2, cap)?;
        let dil = sf_dilation_bound(&ctx, members, &thirds)?;
        let value = exact.value as f64;
        cases.push(CaseRecord::compare(
            format!("{tag}_upper"),
            p,
            n,
            value,
            (p + 1) as f64 / 3.0,
            0.0,
            Relation::Le,
        ));
        cases.push(
            CaseRecord::compare(format!("{tag}_lower"), p, n, dil.value as f64, value, 0.0, Relation::Le)
                .meta("dilator", dil.dilator),
        );
        let spec = spectrum(p, members, tau)?;
        let bohr = bohr_set(p, &spec, tau);
        cases.push(
            CaseRecord::compare(
                format!("{tag}_ratio"),
                p,
                n,
                value / members.len() as f64,
                1.0 / 3.0,
                0.0,
                Relation::Report,
            )
            .meta("size", members.len())
            .meta("sf", exact.value)
            .meta("psi", exact.psi.to_string())
            .meta("m", threshold)
            .meta("tau", tau)
            .meta("spectrum_size", spec.len())
            .meta("bohr_size", bohr.len())
            .meta("bohr_lower", tau.powi(spec.len() as i32) * p as f64),
        );
    }
    Ok(cases)
}

fn wiener(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let q: Vec<u32> = (1..p).filter(|&x| ctx.legendre(x as i64) == 1).collect();
    let norms = wiener_norms(p, &q)?;
    let relation = if p % 4 == 3 {
        Relation::Lt
    } else {
        Relation::Report
    };
    let mut cases = vec![CaseRecord::compare("q_rw", p, 2, norms.rw, 1.0, 0.0, relation)
        .meta("w", norms.w)];

    let mut rng = SeededSets::for_case(config.seed, "wiener", p);
    let half: Vec<u32> = (1..=(p - 1) / 2).collect();
    for s in 0..config.samples {
        let size = rng.between(1, half.len() as u64) as usize;
        let mut set: Vec<u32> = rng
            .subset(&half, size)
            .into_iter()
            .flat_map(|a| [a, p - a])
            .collect();
        if rng.below(2) == 1 {
            set.push(0);
        }
        set.sort_unstable();
        let nw = wiener_norms(p, &set)?;
        cases.push(CaseRecord::compare(
            format!("sym_s{s:02}"),
            p,
            0,
            nw.rw,
            nw.w,
            tol(config, 1e-9),
            Relation::Eq,
        ));
    }

    for n in indices_for(config, p) {
        let sub = SubgroupContext::new(&ctx, n)?;
        cases.push(CaseRecord::compare(
            "gamma_hat",
            p,
            n,
            subgroup_transform_max(&sub),
            (p as f64).sqrt(),
            tol(config, 1e-9),
            Relation::Le,
        ));
        for s in 0..config.samples {
            let set = rng.nonzero_subset(p, p as usize - 1);
            let ineq = coset_inequality(&set, &sub)?;
            let worst = ineq.deviations.iter().copied().fold(0.0, f64::max);
            cases.push(
                CaseRecord::compare(
                    format!("coset_s{s:02}"),
                    p,
                    n,
                    worst,
                    ineq.bound,
                    tol(config, 1e-6),
                    Relation::Le,
                )
                .meta("size", set.len()),
            );
        }
    }
    Ok(cases)
}

fn identities(p: u32, config: &SweepConfig) -> Result<Vec<CaseRecord>> {
    let ctx = PrimeContext::new(p as u64)?;
    let order = ctx.order() as u64;
    let mut rng = SeededSets::for_case(config.seed, "identities", p);
    let small = p <= 61;
    let mut exps: Vec<u64> = if small {
        (0..order).collect()
    } else {
        let mut e: Vec<u64> = (0..8).map(|_| rng.below(order)).collect();
        e.extend([0, order / 2]);
        e
    };
    exps.sort_unstable();
    exps.dedup();
    let sqrt_p = (p as f64).sqrt();
    let mut cases = Vec::new();

    let values = |chi: &Character| -> Vec<Complex64> { (1..p).map(|x| chi.eval(x as i64)).collect() };

    // orthogonality of the rows in `exps` against every character
    let all: Vec<Vec<Complex64>> = (0..order).map(|t| values(&Character::new(&ctx, t))).collect();
    let mut ortho = 0.0f64;
    for &s in &exps {
        let row = &all[s as usize];
        for (t, col) in all.iter().enumerate() {
            let terms: Vec<Complex64> = row.iter().zip(col).map(|(a, b)| a * b.conj()).collect();
            let expect = if t as u64 == s { order as f64 } else { 0.0 };
            ortho = ortho.max((pairwise_sum(&terms) - expect).norm());
        }
    }
    cases.push(CaseRecord::compare("orthogonality", p, 0, ortho, 0.0, tol(config, 1e-8), Relation::Eq));

    let gauss: Vec<Complex64> = (1..order).map(|t| gauss_sum(&Character::new(&ctx, t))).collect();
    let modulus_err = gauss.iter().map(|g| (g.norm() - sqrt_p).abs()).fold(0.0, f64::max);
    cases.push(CaseRecord::compare("gauss_modulus", p, 0, modulus_err, 0.0, tol(config, 1e-9), Relation::Eq));
    let g0 = gauss_sum(&Character::principal(&ctx));
    cases.push(
        CaseRecord::compare("gauss_principal", p, 0, g0.re, -1.0, tol(config, 1e-9), Relation::Eq)
            .require("imaginary_part", g0.im.abs() <= tol(config, 1e-9)),
    );

    let ms: Vec<i64> = if small {
        (1..p as i64).collect()
    } else {
        (0..8).map(|_| rng.between(1, p as u64 - 1) as i64).collect()
    };
    let mut twisted = 0.0f64;
    for &s in exps.iter().filter(|&&s| s != 0) {
        let chi = Character::new(&ctx, s);
        let g = gauss[s as usize - 1];
        for &m in &ms {
            twisted = twisted.max((twisted_exp_sum(&chi, m) - chi.eval(m).conj() * g).norm());
        }
    }
    cases.push(CaseRecord::compare("twisted", p, 0, twisted, 0.0, tol(config, 1e-9), Relation::Eq));

    let cos_err = (0..8i64)
        .flat_map(|m| {
            let base = chi8(m) as f64 / 2f64.sqrt() + (delta0(m) - delta4(m)) as f64;
            let c1 = (PI * m as f64 / 4.0).cos();
            let c3 = (3.0 * PI * m as f64 / 4.0).cos();
            let base3 = -(chi8(m) as f64) / 2f64.sqrt() + (delta0(m) - delta4(m)) as f64;
            [(c1 - base).abs(), (c3 - base3).abs()]
        })
        .fold(0.0, f64::max);
    cases.push(CaseRecord::compare("cos", p, 0, cos_err, 0.0, tol(config, 1e-12), Relation::Eq));

    let rho = Character::legendre(&ctx);
    if p % 4 == 1 {
        let (lhs, rhs) = legendre_third_identity(&ctx)?;
        cases.push(CaseRecord::compare(
            "legendre_third",
            p,
            2,
            lhs as f64,
            rhs,
            tol(config, 1e-6),
            Relation::Eq,
        ));
    } else {
        for alpha in Alpha::ALL {
            let direct = s_alpha_direct(&ctx, alpha);
            let via = s_alpha_via_l(&ctx, alpha)?;
            cases.push(CaseRecord::compare(
                format!("s_alpha_{}", alpha_tag(alpha)),
                p,
                2,
                direct as f64,
                via,
                tol(config, 1e-6),
                Relation::Eq,
            ));
        }
        let eighths = Interval::eighths(p);
        let ev8 = LOneEvaluator::new(8 * p as u64)?;
        let direct = interval_char_sum(&rho, &eighths);
        let closed = interval_sum_via_l_with(&rho, &eighths, &ev8)?;
        cases.push(
            CaseRecord::compare("eighths_rho", p, 2, direct.re, closed.re, tol(config, 1e-6), Relation::Eq)
                .require("imaginary_part", (direct - closed).im.abs() <= tol(config, 1e-6)),
        );
    }

    let thirds = Interval::thirds(p);
    let ev3 = LOneEvaluator::new(3 * p as u64)?;
    let mut closed_err = 0.0f64;
    for &s in exps.iter().filter(|&&s| s != 0) {
        let chi = Character::new(&ctx, s);
        let closed = interval_sum_via_l_with(&chi, &thirds, &ev3)?;
        closed_err = closed_err.max((interval_char_sum(&chi, &thirds) - closed).norm());
    }
    cases.push(CaseRecord::compare("thirds_closed", p, 0, closed_err, 0.0, tol(config, 1e-6), Relation::Eq));

    for small in [SmallModulusCharacter::Chi3, SmallModulusCharacter::Chi8] {
        let q = p as u64 * small.modulus();
        let l = l_one(&ProductCharacter::new(rho.clone(), small))?.re;
        cases.push(
            CaseRecord::compare(format!("l_positive_{}", small.modulus()), p, 2, l, 0.0, 0.0, Relation::Gt)
                .meta("envelope", 2.0 + (q as f64).ln()),
        );
    }
    let l_rho = l_one(&rho)?.re;
    cases.push(CaseRecord::compare(
        "l_envelope",
        p,
        2,
        l_rho,
        2.0 + (p as f64).ln(),
        0.0,
        Relation::Report,
    ));

    let f: Vec<f64> = (0..p).map(|_| 2.0 * rng.unit() - 1.0).collect();
    let f_dens = DensityFunction::from_real(&f);
    let energy = f_dens.l2_squared();
    let dual = dft(&f_dens).l2_squared() / p as f64;
    cases.push(CaseRecord::compare(
        "parseval",
        p,
        0,
        energy,
        dual,
        tol(config, 1e-9) * energy.max(1.0),
        Relation::Eq,
    ));

    let w: Vec<f64> = (0..p).map(|_| rng.unit()).collect();
    let direct = schur_count(&w);
    cases.push(CaseRecord::compare(
        "schur",
        p,
        0,
        direct,
        schur_count_fourier(&w),
        tol(config, 1e-9) * direct.max(1.0),
        Relation::Eq,
    ));
    let mut ind = vec![0.0; p as usize];
    for x in thirds.members() {
        ind[x as usize] = 1.0;
    }
    cases.push(CaseRecord::compare("schur_thirds", p, 0, schur_count(&ind), 0.0, 0.0, Relation::Eq));
    Ok(cases)
}

fn alpha_tag(alpha: Alpha) -> &'static str {
    match alpha {
        Alpha::OneThird => "1_3",
        Alpha::TwoThirds => "2_3",
        Alpha::OneEighth => "1_8",
        Alpha::ThreeEighths => "3_8",
    }
}
