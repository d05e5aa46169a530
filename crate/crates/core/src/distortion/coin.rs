//! Shortest signed-coin representations in `ℤʳ`.
//!
//! Given a symmetric coin set `S ⊂ ℤʳ` and targets `t`, computes the least `k`
//! with `t = s₁ + … + s_k`, `sᵢ ∈ S`. The search is a breadth-first sweep of a
//! finite box: by the Steinitz lemma any optimal sum can be reordered so its
//! partial sums stay within ℓ∞-distance `2·r·C` of the segment `[0, t]`, where
//! `C` bounds the coins, so restricting to that box loses nothing.

use std::collections::VecDeque;

/// Minimal coin counts for each target, or `None` for unreachable targets.
pub fn coin_distances(coins: &[Vec<i64>], targets: &[Vec<i64>]) -> Vec<Option<u64>> {
    if targets.is_empty() {
        return Vec::new();
    }
    let rank = targets[0].len();
    let mut coins: Vec<Vec<i64>> = coins.iter().filter(|c| c.iter().any(|&x| x != 0)).cloned().collect();
    // symmetrize
    let negated: Vec<Vec<i64>> = coins.iter().map(|c| c.iter().map(|x| -x).collect()).collect();
    coins.extend(negated);
    coins.sort();
    coins.dedup();

    if rank == 1 {
        if let Some(c) = contiguous_interval(&coins) {
            return targets.iter().map(|t| Some(t[0].unsigned_abs().div_ceil(c))).collect();
        }
    }
    if coins.is_empty() {
        return targets.iter().map(|t| t.iter().all(|&x| x == 0).then_some(0)).collect();
    }

    let c_max = coins.iter().flat_map(|c| c.iter().map(|x| x.unsigned_abs())).max().unwrap_or(0) as i64;
    let margin = 2 * rank as i64 * c_max;
    let mut lo = vec![0i64; rank];
    let mut hi = vec![0i64; rank];
    for t in targets {
        for i in 0..rank {
            lo[i] = lo[i].min(t[i]);
            hi[i] = hi[i].max(t[i]);
        }
    }
    for i in 0..rank {
        lo[i] -= margin;
        hi[i] += margin;
    }
    let dims: Vec<usize> = (0..rank).map(|i| (hi[i] - lo[i] + 1) as usize).collect();
    let volume: usize = dims.iter().product();
    let encode = |v: &[i64]| -> Option<usize> {
        let mut idx = 0usize;
        for i in 0..rank {
            if v[i] < lo[i] || v[i] > hi[i] {
                return None;
            }
            idx = idx * dims[i] + (v[i] - lo[i]) as usize;
        }
        Some(idx)
    };
    let decode = |mut idx: usize| -> Vec<i64> {
        let mut v = vec![0i64; rank];
        for i in (0..rank).rev() {
            v[i] = lo[i] + (idx % dims[i]) as i64;
            idx /= dims[i];
        }
        v
    };

    let mut dist = vec![u32::MAX; volume];
    let wanted: Vec<usize> = targets.iter().map(|t| encode(t).expect("targets lie in the box")).collect();
    let mut remaining = {
        let mut w = wanted.clone();
        w.sort_unstable();
        w.dedup();
        w.len()
    };
    let mut is_target = vec![false; volume];
    for &w in &wanted {
        is_target[w] = true;
    }

    let origin = encode(&vec![0; rank]).expect("origin lies in the box");
    dist[origin] = 0;
    if is_target[origin] {
        remaining -= 1;
    }
    let mut queue = VecDeque::from([origin]);
    while let Some(cur) = queue.pop_front() {
        if remaining == 0 {
            break;
        }
        let d = dist[cur];
        let v = decode(cur);
        for c in &coins {
            let w: Vec<i64> = v.iter().zip(c).map(|(a, b)| a + b).collect();
            if let Some(j) = encode(&w) {
                if dist[j] == u32::MAX {
                    dist[j] = d + 1;
                    if is_target[j] {
                        remaining -= 1;
                    }
                    queue.push_back(j);
                }
            }
        }
    }
    wanted.iter().map(|&w| (dist[w] != u32::MAX).then_some(dist[w] as u64)).collect()
}

/// `Some(c)` when the one-dimensional coin set is exactly `{±1, …, ±c}`.
fn contiguous_interval(coins: &[Vec<i64>]) -> Option<u64> {
    let pos: Vec<i64> = coins.iter().map(|c| c[0]).filter(|&x| x > 0).collect();
    let c = *pos.last()?;
    (pos.len() as i64 == c).then_some(c as u64)
}
