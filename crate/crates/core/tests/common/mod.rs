//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use sumfree_core::harness::rng::SeededSets;

/// Masks over positions in `set` of every tuple x₁ + … + x_k = y, found by
/// plain enumeration of ordered tuples.
pub fn tuple_masks(p: u32, set: &[u32], k: u32) -> Vec<u32> {
    let m = set.len();
    let pos = |v: u32| set.iter().position(|&x| x == v);
    let mut masks = Vec::new();
    let mut idx = vec![0usize; k as usize];
    loop {
        let sum = idx.iter().map(|&i| set[i] as u64).sum::<u64>() % p as u64;
        if let Some(y) = pos(sum as u32) {
            let mask = idx.iter().fold(1u32 << y, |acc, &i| acc | 1 << i);
            masks.push(mask);
        }
        let mut d = 0;
        loop {
            if d == idx.len() {
                masks.sort_unstable();
                masks.dedup();
                return masks;
            }
            idx[d] += 1;
            if idx[d] < m {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Largest solution-free subset size over all 2^|A| subsets.
pub fn brute_sf(p: u32, set: &[u32], k: u32) -> usize {
    let m = set.len();
    assert!(m <= 20);
    if m == 0 {
        return 0;
    }
    // masks grouped by their highest position
    let mut by_top = vec![Vec::new(); m];
    for e in tuple_masks(p, set, k) {
        by_top[31 - e.leading_zeros() as usize].push(e);
    }
    let mut free = vec![false; 1 << m];
    free[0] = true;
    let mut best = 0;
    for mask in 1u32..1 << m {
        let top = 31 - mask.leading_zeros() as usize;
        let ok = free[(mask ^ 1 << top) as usize] && by_top[top].iter().all(|&e| e & mask != e);
        free[mask as usize] = ok;
        if ok {
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

/// Direct check that no tuple of `sub` solves the equation.
pub fn solution_free(p: u32, sub: &[u32], k: u32) -> bool {
    tuple_masks(p, sub, k).is_empty()
}

/// `count` seeded nonempty subsets of F_p^* of size at most `max_size`.
pub fn seeded_sets(seed: u64, tag: &str, p: u32, count: usize, max_size: usize) -> Vec<Vec<u32>> {
    let mut rng = SeededSets::for_case(seed, tag, p);
    (0..count).map(|_| rng.nonzero_subset(p, max_size)).collect()
}
