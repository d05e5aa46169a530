//! Prescribed length functions on `ℤ` and the abstract distorted line.
//!
//! [`build_ell`] turns a sampled sublinear `f` into a subadditive integer
//! length `ℓ ≥ f` with long plateaus `ℓ(p_k) = … = ℓ(k·p_k)`. The line `ℤ` with
//! X-length `ℓ` and Y-length `|·|` then has unbounded `μ(i, c·i)` for every
//! `c`, while [`power_length`] gives a line where `μ(i, 4i)` stays bounded.

use num_bigint::BigUint;
use num_integer::{Integer, Roots};
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::distortion::coin::coin_distances;
use crate::distortion::InvariantSource;
use crate::error::{Error, Result};

/// Pairs `(m, n)` with `m + n ≤` this are checked exhaustively.
pub const EXHAUSTIVE_LIMIT: u64 = 3000;

/// A named source function sampled on `1..=grid_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SourceFamily {
    /// `⌈√r⌉`
    Sqrt,
    /// `⌈log₂(r + 1)⌉`
    LogScaled,
    /// `⌈r^{1/k}⌉`
    Power(u32),
}

impl SourceFamily {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "sqrt" => Ok(Self::Sqrt),
            "log-scaled" => Ok(Self::LogScaled),
            _ => {
                let k = s
                    .strip_prefix("power:")
                    .and_then(|k| k.parse::<u32>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| Error::InvalidArgument(format!("unknown source family `{s}`")))?;
                Ok(Self::Power(k))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            Self::Sqrt => "sqrt".into(),
            Self::LogScaled => "log-scaled".into(),
            Self::Power(k) => format!("power:{k}"),
        }
    }

    pub fn eval(&self, r: u64) -> u64 {
        match self {
            Self::Sqrt => ceil_root(r, 2),
            Self::LogScaled => 64 - (r).leading_zeros() as u64,
            Self::Power(k) => ceil_root(r, *k),
        }
    }
}

/// `⌈r^{1/k}⌉` in integer arithmetic.
pub fn ceil_root(r: u64, k: u32) -> u64 {
    let s = r.nth_root(k);
    if s.checked_pow(k).is_some_and(|p| p >= r) {
        s
    } else {
        s + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum LengthRule {
    /// `ℓ` tabulated on `0..=grid_max`.
    Table(Vec<u64>),
    /// `ℓ(z) = ⌈|z|^{1/k}⌉`.
    Power(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrescribedLengthFunction {
    pub rule: LengthRule,
    /// `p₁ < p₂ < …`; empty for power lengths.
    pub breakpoints: Vec<u64>,
    pub source: String,
}

impl PrescribedLengthFunction {
    /// Largest `|z|` at which `ℓ` is known.
    pub fn grid_max(&self) -> u64 {
        match &self.rule {
            LengthRule::Table(t) => t.len() as u64 - 1,
            // `2^62` keeps every `ℓ` sum and coin bound well inside `u64`.
            LengthRule::Power(_) => 1 << 62,
        }
    }

    pub fn eval(&self, z: i64) -> Result<u64> {
        let a = z.unsigned_abs();
        match &self.rule {
            LengthRule::Table(t) => {
                t.get(a as usize).copied().ok_or(Error::GridExhausted { at: a, grid_max: self.grid_max() })
            }
            LengthRule::Power(k) => Ok(ceil_root(a, *k)),
        }
    }

    fn at(&self, a: u64) -> u64 {
        self.eval(a as i64).expect("caller stays on the grid")
    }

    /// Breakpoints `p_k` with `ℓ(p_k) = ℓ(p_k + 1) = … = ℓ(k·p_k)` on the grid.
    pub fn plateaus(&self) -> Vec<(u32, u64, u64)> {
        self.breakpoints
            .iter()
            .enumerate()
            .filter_map(|(i, &p)| {
                let k = i as u64 + 1;
                let end = k * p;
                (end <= self.grid_max() && (p..=end).all(|s| self.at(s) == self.at(p))).then_some((k as u32, p, end))
            })
            .collect()
    }
}

/// Builds `ℓ` from `f` on `1..=grid_max`.
///
/// `p₁ = 1`, and `p_{k+1}` is the least integer `P ≥ k·p_k` such that
/// `f(r)·(k+1)! ≤ r` for every grid point `r ≥ (k+1)·P`. Then
/// `ℓ(s) = ⌈s/k!⌉` on `(k·p_k, p_{k+1}]` and `ℓ(s) = ⌈p_{k+1}/k!⌉` on
/// `(p_{k+1}, (k+1)·p_{k+1}]`; past the last plateau `ℓ(s) = ⌈s/k_max!⌉`.
pub fn build_ell(f: &dyn Fn(u64) -> u64, source: &str, k_max: u32, grid_max: u64) -> Result<PrescribedLengthFunction> {
    if k_max == 0 || grid_max == 0 {
        return Err(Error::InvalidArgument("k_max and grid_max must be positive".into()));
    }
    let fs: Vec<u64> = (0..=grid_max).map(|r| if r == 0 { 0 } else { f(r) }).collect();
    for r in 1..=grid_max as usize {
        if fs[r] == 0 || fs[r] > r as u64 {
            return Err(Error::LengthPrecondition(format!("need 1 ≤ f(r) ≤ r, got f({r}) = {}", fs[r])));
        }
        if r > 1 && fs[r] < fs[r - 1] {
            return Err(Error::LengthPrecondition(format!("f decreases at r = {r}")));
        }
    }

    let mut table = vec![0u64; grid_max as usize + 1];
    let mut breakpoints = vec![1u64];
    table[1] = 1;
    let mut fact = BigUint::from(1u32);
    let mut filled = 1u64;
    for k in 1..k_max as u64 {
        let p_k = breakpoints[k as usize - 1];
        let next_fact = &fact * BigUint::from(k + 1);
        // Last grid point violating the bound fixes the threshold.
        let last_bad = (1..=grid_max).rev().find(|&r| BigUint::from(fs[r as usize]) * &next_fact > BigUint::from(r));
        let p = last_bad.map_or(1, |r| r / (k + 1) + 1).max(k * p_k);
        let end = (k + 1) * p;
        if end > grid_max {
            return Err(Error::LengthPrecondition(format!(
                "plateau {} ends at {end}, beyond grid_max {grid_max}",
                k + 1
            )));
        }
        for s in filled + 1..=p {
            table[s as usize] = ceil_div(s, &fact);
        }
        let level = ceil_div(p, &fact);
        for s in p + 1..=end {
            table[s as usize] = level;
        }
        filled = end;
        breakpoints.push(p);
        fact = next_fact;
    }
    for s in filled + 1..=grid_max {
        table[s as usize] = ceil_div(s, &fact);
    }
    Ok(PrescribedLengthFunction { rule: LengthRule::Table(table), breakpoints, source: source.to_string() })
}

fn ceil_div(s: u64, d: &BigUint) -> u64 {
    BigUint::from(s).div_ceil(d).to_u64().expect("quotient ≤ s")
}

/// `ℓ(z) = ⌈|z|^{1/k}⌉`.
pub fn power_length(k: u32) -> Result<PrescribedLengthFunction> {
    if k == 0 {
        return Err(Error::InvalidArgument("power length needs k ≥ 1".into()));
    }
    Ok(PrescribedLengthFunction { rule: LengthRule::Power(k), breakpoints: Vec::new(), source: format!("power:{k}") })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub grid_max: u64,
    pub exhaustive_limit: u64,
    pub random_pairs: usize,
    pub subadditivity_failures: Vec<(u64, u64)>,
    pub domination_failures: Vec<u64>,
    pub monotonicity_failures: Vec<u64>,
    /// `(k, p_k, k·p_k)` for every plateau present.
    pub plateaus: Vec<(u32, u64, u64)>,
}

impl Certificate {
    pub fn holds(&self, plateaus_wanted: usize) -> bool {
        self.subadditivity_failures.is_empty()
            && self.domination_failures.is_empty()
            && self.monotonicity_failures.is_empty()
            && self.plateaus.len() >= plateaus_wanted
    }
}

/// Checks subadditivity (exhaustively for `m + n ≤ EXHAUSTIVE_LIMIT`, then on
/// `random_pairs` seeded pairs up to `grid_max`), `ℓ ≥ f`, monotonicity, and
/// the plateaus.
pub fn certify(
    ell: &PrescribedLengthFunction,
    f: &dyn Fn(u64) -> u64,
    grid_max: u64,
    random_pairs: usize,
    seed: u64,
) -> Certificate {
    let grid_max = grid_max.min(ell.grid_max());
    let limit = EXHAUSTIVE_LIMIT.min(grid_max);
    let mut sub: Vec<(u64, u64)> = (1..limit)
        .into_par_iter()
        .flat_map_iter(|m| (m..=limit - m).filter(move |&n| ell.at(m) + ell.at(n) < ell.at(m + n)).map(move |n| (m, n)))
        .collect();
    if grid_max > limit {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..random_pairs {
            let s = rng.gen_range(limit + 1..=grid_max);
            let m = rng.gen_range(1..s);
            if ell.at(m) + ell.at(s - m) < ell.at(s) {
                sub.push((m, s - m));
            }
        }
    }
    sub.sort_unstable();
    let domination_failures = (1..=grid_max).filter(|&r| ell.at(r) < f(r)).collect();
    let monotonicity_failures = (1..=grid_max).filter(|&r| ell.at(r) < ell.at(r - 1)).collect();
    Certificate {
        grid_max,
        exhaustive_limit: limit,
        random_pairs: if grid_max > limit { random_pairs } else { 0 },
        subadditivity_failures: sub,
        domination_failures,
        monotonicity_failures,
        plateaus: ell.plateaus(),
    }
}

/// `ℤ` with X-length `ℓ` and Y-length `|·|`.
#[derive(Debug, Clone)]
pub struct AbstractDistortedLine {
    pub ell: PrescribedLengthFunction,
}

impl AbstractDistortedLine {
    pub fn new(ell: PrescribedLengthFunction) -> Self {
        Self { ell }
    }

    /// `max{|z| : ℓ(z) ≤ n}`. The scan stops at the first `z` with
    /// `ℓ(z) > n` once `ℓ` is past `n` for good, which monotonicity of `ℓ`
    /// guarantees.
    pub fn delta(&self, n: u64) -> Result<u64> {
        Ok(self.nabla(n)? - 1)
    }

    /// `min{|z| : ℓ(z) > n}`.
    pub fn nabla(&self, n: u64) -> Result<u64> {
        let max = self.ell.grid_max();
        if self.ell.eval(max as i64)? <= n {
            return Err(Error::GridExhausted { at: max + 1, grid_max: max });
        }
        // ℓ is non-decreasing: binary search for the first z with ℓ(z) > n.
        let (mut lo, mut hi) = (0u64, max);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.ell.at(mid) > n {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo)
    }

    /// `μ(m,n)`: the most coins from `{y : ℓ(y) ≤ m}` needed for any
    /// `z` with `ℓ(z) ≤ n`.
    pub fn mu(&self, m: u64, n: u64) -> Result<u64> {
        let dm = self.delta(m)?;
        let dn = self.delta(n)?;
        if dm == 0 {
            return Err(Error::TrivialAlphabet(m as u32));
        }
        let coins: Vec<Vec<i64>> = (1..=dm as i64).map(|c| vec![c]).collect();
        let d = coin_distances(&coins, &[vec![dn as i64]]);
        Ok(d[0].expect("1 is a coin"))
    }
}

impl InvariantSource for AbstractDistortedLine {
    fn delta_at(&self, n: u32) -> Option<u64> {
        self.delta(n as u64).ok()
    }

    fn nabla_at(&self, n: u32) -> Option<u64> {
        self.nabla(n as u64).ok()
    }
}

/// `μ(max(ℓ(p_k) − 1, 1), ℓ(p_k))` for each plateau: reaching `k·p_k` with
/// coins of length below `ℓ(p_k)` takes at least `k` of them.
pub fn plateau_witnesses(line: &AbstractDistortedLine) -> Result<Vec<PlateauWitness>> {
    line.ell
        .plateaus()
        .into_iter()
        .map(|(k, p, _)| {
            let n = line.ell.at(p);
            let m = n.saturating_sub(1).max(1);
            Ok(PlateauWitness { k, p_k: p, m, n, mu: line.mu(m, n)? })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PlateauWitness {
    pub k: u32,
    pub p_k: u64,
    pub m: u64,
    pub n: u64,
    pub mu: u64,
}

#[cfg(test)]
mod tests;
