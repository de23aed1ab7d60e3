//! Largest subsets of A ⊆ F_p^* with no solution of x₁ + … + x_k = y
//! (repetition among the x_i allowed), for k ∈ {2, 3}.

use std::sync::Arc;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::modp::{Interval, PrimeContext};

pub const DEFAULT_CAP_K2: usize = 40;
pub const DEFAULT_CAP_K3: usize = 28;
/// Hyperedges are stored as u64 bitmasks.
const MASK_BITS: usize = 64;

pub fn default_cap(k: u32) -> usize {
    if k == 3 {
        DEFAULT_CAP_K3
    } else {
        DEFAULT_CAP_K2
    }
}

fn check_arity(k: u32) -> Result<()> {
    if k == 2 || k == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedArity(k))
    }
}

/// The interval whose dilates give solution-free subsets for arity k.
pub fn interval_for_arity(p: u32, k: u32) -> Result<Interval> {
    match k {
        2 => Ok(Interval::thirds(p)),
        3 => Ok(Interval::eighths(p)),
        _ => Err(Error::UnsupportedArity(k)),
    }
}

/// Returns a violating tuple (x₁, …, x_k, y) with x₁ ≤ … ≤ x_k, or `None`
/// when S is solution-free. Tuples are searched by descending y.
pub fn find_solution(ctx: &PrimeContext, set: &[u32], k: u32) -> Result<Option<Vec<u32>>> {
    check_arity(k)?;
    let set = ctx.canonical_set(set)?;
    let p = ctx.p();
    let mut member = vec![false; p as usize];
    for &x in &set {
        member[x as usize] = true;
    }
    for &y in set.iter().rev() {
        for (i, &x1) in set.iter().enumerate() {
            if k == 2 {
                let x2 = (y + p - x1) % p;
                if x2 >= x1 && member[x2 as usize] {
                    return Ok(Some(vec![x1, x2, y]));
                }
            } else {
                for &x2 in &set[i..] {
                    let x3 = ((y as u64 + 2 * p as u64 - x1 as u64 - x2 as u64) % p as u64) as u32;
                    if x3 >= x2 && member[x3 as usize] {
                        return Ok(Some(vec![x1, x2, x3, y]));
                    }
                }
            }
        }
    }
    Ok(None)
}

pub fn is_solution_free(ctx: &PrimeContext, set: &[u32], k: u32) -> Result<(bool, Option<Vec<u32>>)> {
    let w = find_solution(ctx, set, k)?;
    Ok((w.is_none(), w))
}

/// Forbidden tuples of `set` as bitmasks over positions in `set`.
pub fn forbidden_masks(p: u32, set: &[u32], k: u32) -> Vec<u64> {
    assert!(set.len() <= MASK_BITS);
    let mut index = vec![usize::MAX; p as usize];
    for (i, &x) in set.iter().enumerate() {
        index[x as usize] = i;
    }
    let mut edges = Vec::new();
    let n = set.len();
    for i in 0..n {
        for j in i..n {
            let s2 = (set[i] as u64 + set[j] as u64) % p as u64;
            if k == 2 {
                let l = index[s2 as usize];
                if l != usize::MAX {
                    edges.push(1u64 << i | 1 << j | 1 << l);
                }
            } else {
                for (l, &x3) in set.iter().enumerate().skip(j) {
                    let y = ((s2 + x3 as u64) % p as u64) as usize;
                    let m = index[y];
                    if m != usize::MAX {
                        edges.push(1u64 << i | 1 << j | 1 << l | 1 << m);
                    }
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    // drop edges that contain a smaller edge
    let minimal: Vec<u64> = edges
        .iter()
        .copied()
        .filter(|&e| !edges.iter().any(|&f| f != e && f & e == f))
        .collect();
    minimal
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DilationBound {
    pub value: usize,
    pub dilator: u32,
    pub subset: Vec<u32>,
}

/// max_{x ∈ F_p^*} |xA ∩ interval|, with the first maximizing dilator and
/// the subset A ∩ x^{−1}·interval.
pub fn sf_dilation_bound(ctx: &PrimeContext, set: &[u32], interval: &Interval) -> Result<DilationBound> {
    let set = ctx.nonzero_set(set)?;
    let mut best = DilationBound {
        value: 0,
        dilator: 1,
        subset: Vec::new(),
    };
    for x in 1..ctx.p() {
        let count = set
            .iter()
            .filter(|&&a| interval.contains(ctx.mul(x, a)))
            .count();
        if count > best.value {
            best.value = count;
            best.dilator = x;
        }
    }
    best.subset = set
        .iter()
        .copied()
        .filter(|&a| interval.contains(ctx.mul(best.dilator, a)))
        .collect();
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumFreeReport {
    pub set: Vec<u32>,
    pub k: u32,
    pub value: usize,
    /// Some optimal subset; not canonical.
    pub witness: Vec<u32>,
    pub exact: bool,
    /// value − |A|/(k+1)
    #[serde(serialize_with = "serialize_ratio")]
    pub psi: Ratio<i64>,
}

fn serialize_ratio<S: serde::Serializer>(r: &Ratio<i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

fn excess(value: usize, size: usize, k: u32) -> Ratio<i64> {
    Ratio::from_integer(value as i64) - Ratio::new(size as i64, k as i64 + 1)
}

/// Certified lower bound from the dilation argument.
pub fn sf_lower_bound(ctx: &PrimeContext, set: &[u32], k: u32) -> Result<SumFreeReport> {
    check_arity(k)?;
    let set = ctx.nonzero_set(set)?;
    let bound = sf_dilation_bound(ctx, &set, &interval_for_arity(ctx.p(), k)?)?;
    Ok(SumFreeReport {
        k,
        value: bound.value,
        witness: bound.subset,
        exact: false,
        psi: excess(bound.value, set.len(), k),
        set,
    })
}

struct Search<'a> {
    edges: &'a [u64],
    /// edges containing each vertex
    incident: Vec<Vec<u64>>,
    best: u64,
    best_count: u32,
}

impl Search<'_> {
    /// Vertex-disjoint residual edges inside the candidate set; each forces
    /// at least one exclusion.
    fn packing(&self, included: u64, candidates: u64) -> u32 {
        let mut used = 0u64;
        let mut count = 0;
        for &e in self.edges {
            let rest = e & !included;
            if rest & !candidates == 0 && rest & used == 0 {
                used |= rest;
                count += 1;
            }
        }
        count
    }

    fn run(&mut self, included: u64, candidates: u64) {
        let inc = included.count_ones();
        if candidates == 0 {
            if inc > self.best_count {
                self.best_count = inc;
                self.best = included;
            }
            return;
        }
        let cand = candidates.count_ones();
        if inc + cand <= self.best_count {
            return;
        }
        if inc + cand - self.packing(included, candidates) <= self.best_count {
            return;
        }
        let v = candidates.trailing_zeros() as usize;
        let bit = 1u64 << v;

        let with = included | bit;
        let mut next = candidates & !bit;
        for &e in &self.incident[v] {
            let rest = e & !with;
            if rest.count_ones() == 1 {
                next &= !rest;
            }
        }
        self.run(with, next);
        self.run(included, candidates & !bit);
    }
}

/// Exact sf_k(A) by branch and bound, for |A| ≤ cap.
pub fn sf_exact(ctx: &PrimeContext, set: &[u32], k: u32, cap: usize) -> Result<SumFreeReport> {
    check_arity(k)?;
    let set = ctx.nonzero_set(set)?;
    if set.len() > cap.min(MASK_BITS) {
        return Err(Error::CapExceeded {
            size: set.len(),
            cap: cap.min(MASK_BITS),
        });
    }
    let p = ctx.p();

    // Branch order: descending hypergraph degree, then ascending residue.
    let raw = forbidden_masks(p, &set, k);
    let mut degree = vec![0usize; set.len()];
    for &e in &raw {
        for (i, d) in degree.iter_mut().enumerate() {
            if e >> i & 1 == 1 {
                *d += 1;
            }
        }
    }
    let mut order: Vec<usize> = (0..set.len()).collect();
    order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(set[a].cmp(&set[b])));
    let relabeled: Vec<u32> = order.iter().map(|&i| set[i]).collect();
    let edges = forbidden_masks(p, &relabeled, k);
    let mut incident = vec![Vec::new(); relabeled.len()];
    for &e in &edges {
        for (i, inc) in incident.iter_mut().enumerate() {
            if e >> i & 1 == 1 {
                inc.push(e);
            }
        }
    }

    let lower = sf_dilation_bound(ctx, &relabeled, &interval_for_arity(p, k)?)?;
    let mut start = 0u64;
    for x in &lower.subset {
        let pos = relabeled.iter().position(|y| y == x).expect("subset of A");
        start |= 1 << pos;
    }

    let all = if relabeled.len() == 64 {
        u64::MAX
    } else {
        (1u64 << relabeled.len()) - 1
    };
    let mut search = Search {
        edges: &edges,
        incident,
        best: start,
        best_count: start.count_ones(),
    };
    search.run(0, all);

    let mut witness: Vec<u32> = (0..relabeled.len())
        .filter(|&i| search.best >> i & 1 == 1)
        .map(|i| relabeled[i])
        .collect();
    witness.sort_unstable();
    let value = witness.len();
    Ok(SumFreeReport {
        k,
        value,
        witness,
        exact: true,
        psi: excess(value, set.len(), k),
        set,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SigmaAverages {
    #[serde(serialize_with = "serialize_ratio")]
    pub sigma1: Ratio<i64>,
    #[serde(serialize_with = "serialize_ratio")]
    pub sigma2: Ratio<i64>,
    /// p ≡ 3 mod 4, outside the residue class where the thirds interval
    /// gives the quadratic-residue bias.
    pub flagged: bool,
}

impl SigmaAverages {
    pub fn max(&self) -> Ratio<i64> {
        self.sigma1.max(self.sigma2)
    }
}

/// σ₁ = |N|^{−1} Σ_{x∈N} |xA ∩ I| and σ₂ = |Q|^{−1} Σ_{x∈Q} |xA ∩ I| on the
/// thirds interval, from the closed forms.
pub fn sigma_averages(ctx: &Arc<PrimeContext>, set: &[u32]) -> Result<SigmaAverages> {
    sigma_averages_on(ctx, set, &Interval::thirds(ctx.p()))
}

pub fn sigma_averages_on(ctx: &PrimeContext, set: &[u32], interval: &Interval) -> Result<SigmaAverages> {
    let set = ctx.nonzero_set(set)?;
    let a_q = set.iter().filter(|&&a| ctx.legendre(a as i64) == 1).count() as i64;
    let a_n = set.len() as i64 - a_q;
    let q_i = interval.members().filter(|&x| ctx.legendre(x as i64) == 1).count() as i64;
    let n_i = interval.members().filter(|&x| ctx.legendre(x as i64) == -1).count() as i64;
    let half = (ctx.order() / 2) as i64;
    Ok(SigmaAverages {
        sigma1: Ratio::new(a_q * n_i + a_n * q_i, half),
        sigma2: Ratio::new(a_q * q_i + a_n * n_i, half),
        flagged: ctx.p() % 4 == 3,
    })
}

/// The same averages by dilating A by every residue and non-residue.
pub fn sigma_averages_direct(ctx: &PrimeContext, set: &[u32], interval: &Interval) -> Result<SigmaAverages> {
    let set = ctx.nonzero_set(set)?;
    let (mut over_n, mut over_q) = (0i64, 0i64);
    for x in 1..ctx.p() {
        let hits = set
            .iter()
            .filter(|&&a| interval.contains(ctx.mul(x, a)))
            .count() as i64;
        if ctx.legendre(x as i64) == 1 {
            over_q += hits;
        } else {
            over_n += hits;
        }
    }
    let half = (ctx.order() / 2) as i64;
    Ok(SigmaAverages {
        sigma1: Ratio::new(over_n, half),
        sigma2: Ratio::new(over_q, half),
        flagged: ctx.p() % 4 == 3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64) -> Arc<PrimeContext> {
        PrimeContext::new(p).unwrap()
    }

    const Q13: [u32; 6] = [1, 3, 4, 9, 10, 12];

    #[test]
    fn solution_free_fixtures() {
        let c = ctx(13);
        let thirds: Vec<u32> = Interval::thirds(13).members().collect();
        assert_eq!(is_solution_free(&c, &thirds, 2).unwrap(), (true, None));
        assert_eq!(
            is_solution_free(&c, &[1, 2, 4], 2).unwrap(),
            (false, Some(vec![2, 2, 4]))
        );
        for p in [13u64, 29, 101] {
            let c = ctx(p);
            let j: Vec<u32> = Interval::eighths(p as u32).members().collect();
            assert!(is_solution_free(&c, &j, 3).unwrap().0);
        }
        assert!(matches!(
            is_solution_free(&c, &[1], 4),
            Err(Error::UnsupportedArity(4))
        ));
        // a + a + (−a) = a
        let (free, w) = is_solution_free(&c, &[3, 10], 3).unwrap();
        assert!(!free);
        let w = w.unwrap();
        assert_eq!((w[0] + w[1] + w[2]) % 13, w[3]);
    }

    #[test]
    fn exact_fixtures() {
        let c13 = ctx(13);
        let r = sf_exact(&c13, &[1, 2, 3, 4, 5], 2, 40).unwrap();
        assert_eq!(r.value, 3);
        assert!(is_solution_free(&c13, &r.witness, 2).unwrap().0);

        let c11 = ctx(11);
        let all: Vec<u32> = (1..11).collect();
        assert_eq!(sf_exact(&c11, &all, 2, 40).unwrap().value, 4);

        let r = sf_exact(&c13, &Q13, 2, 40).unwrap();
        assert_eq!(r.value, 4);
        assert_eq!(r.psi, Ratio::from_integer(2));
        assert!(r.exact);
        assert!(r.witness.iter().all(|x| Q13.contains(x)));
    }

    #[test]
    fn exact_errors() {
        let c = ctx(101);
        let big: Vec<u32> = (1..=41).collect();
        assert!(matches!(
            sf_exact(&c, &big, 2, 40),
            Err(Error::CapExceeded { size: 41, cap: 40 })
        ));
        assert!(matches!(sf_exact(&c, &[0, 1], 2, 40), Err(Error::ZeroInSet)));
        assert!(matches!(sf_exact(&c, &[1], 5, 40), Err(Error::UnsupportedArity(5))));
        assert!(matches!(
            sf_exact(&c, &[1, 200], 2, 40),
            Err(Error::ResidueOutOfRange { .. })
        ));
    }

    #[test]
    fn dilation_fixtures() {
        let c = ctx(13);
        let i = Interval::thirds(13);
        let b = sf_dilation_bound(&c, &Q13, &i).unwrap();
        assert_eq!(b.value, 4);
        assert_eq!(c.legendre(b.dilator as i64), -1);
        assert!(is_solution_free(&c, &b.subset, 2).unwrap().0);

        let thirds: Vec<u32> = i.members().collect();
        let b = sf_dilation_bound(&c, &thirds, &i).unwrap();
        assert_eq!((b.value, b.dilator), (i.len() as usize, 1));

        assert_eq!(sf_dilation_bound(&c, &[1], &i).unwrap().value, 1);
    }

    #[test]
    fn sigma_fixtures() {
        let c = ctx(13);
        let s = sigma_averages(&c, &Q13).unwrap();
        assert_eq!((s.sigma1, s.sigma2), (Ratio::from_integer(4), Ratio::from_integer(0)));
        assert!(!s.flagged);
        let n13 = [2, 5, 6, 7, 8, 11];
        let s = sigma_averages(&c, &n13).unwrap();
        assert_eq!((s.sigma1, s.sigma2), (Ratio::from_integer(0), Ratio::from_integer(4)));
        let all: Vec<u32> = (1..13).collect();
        let s = sigma_averages(&c, &all).unwrap();
        assert_eq!((s.sigma1, s.sigma2), (Ratio::from_integer(4), Ratio::from_integer(4)));
        assert_eq!(
            sigma_averages_direct(&c, &Q13, &Interval::thirds(13)).unwrap(),
            sigma_averages(&c, &Q13).unwrap()
        );
    }

    #[test]
    fn cauchy_davenport_bound_on_whole_group() {
        for p in [5u64, 7, 11, 13, 17, 19, 23] {
            let c = ctx(p);
            let all: Vec<u32> = (1..p as u32).collect();
            let r = sf_exact(&c, &all, 2, 40).unwrap();
            assert!(3 * r.value as u64 <= p + 1, "p={p} value={}", r.value);
        }
    }
}
