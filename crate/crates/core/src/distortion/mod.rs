//! Distortion invariants of a marked subgroup, computed on an enumerated ball.
//!
//! * `Δ(n) = max{|h|_Y : h ∈ H, |h|_X ≤ n}` (upper distortion)
//! * `∇(n) = min{|h|_Y : h ∈ H, |h|_X > n}` (lower distortion)
//! * `μ(m,n) = max{|h|_{Y_m} : h ∈ H, |h|_X ≤ n}` with `Y_m = H ∩ Ball_X(m)`
//!
//! Every value carries an [`Exactness`] flag. Δ is always exact once the ball
//! covers radius `n`; ∇ and μ depend on searches that may hit a cap, in which
//! case a lower bound is reported instead.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{subgroup_points, Ball, SubgroupPointSet};
use crate::error::{Error, Result};
use crate::exactness::Exactness;
use crate::group::{Group, Intrinsic, MarkedSubgroup};

pub mod coin;
mod fit;

pub use fit::{fit_report, FitReport};

/// Default number of subgroup elements visited before a search gives up.
pub const DEFAULT_SEARCH_CAP: usize = 2_000_000;

/// One computed invariant value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Entry<E> {
    pub value: u64,
    pub exactness: Exactness,
    /// Element attaining the value, when one exists.
    pub witness: Option<E>,
}

impl<E> Entry<E> {
    fn exact(value: u64, witness: Option<E>) -> Self {
        Self { value, exactness: Exactness::Exact, witness }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness.is_exact()
    }
}

fn need_radius<G: Group>(ball: &Ball<G>, need: u32) -> Result<()> {
    if ball.radius() < need {
        return Err(Error::RadiusTooSmall { have: ball.radius(), need });
    }
    Ok(())
}

/// `Δ(n)` with a witness `h` attaining it.
pub fn delta<G: Group>(ball: &Ball<G>, sub: &MarkedSubgroup<G::Elem>, n: u32) -> Result<Entry<G::Elem>> {
    need_radius(ball, n)?;
    match sub.intrinsic() {
        Intrinsic::Lattice { .. } => {
            let mut best: Option<(u64, &G::Elem)> = None;
            for (g, len) in ball.iter() {
                if len > n {
                    break;
                }
                if let Some(y) = sub.lattice_length(g) {
                    if best.is_none_or(|(b, _)| y > b) {
                        best = Some((y, g));
                    }
                }
            }
            let (value, w) = best.expect("identity is always a member");
            Ok(Entry::exact(value, Some(w.clone())))
        }
        Intrinsic::Whole => {
            let r = (0..=n).rev().find(|&r| !ball.sphere(r).is_empty()).unwrap_or(0);
            Ok(Entry::exact(r as u64, ball.sphere(r).first().cloned()))
        }
    }
}

/// Vectors of `ℤʳ` with ℓ¹ norm exactly `l`, in a fixed order.
fn l1_sphere(rank: usize, l: u64) -> Vec<Vec<i64>> {
    fn rec(rank: usize, l: u64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if rank == 1 {
            if l == 0 {
                out.push([prefix.as_slice(), &[0]].concat());
            } else {
                out.push([prefix.as_slice(), &[l as i64]].concat());
                out.push([prefix.as_slice(), &[-(l as i64)]].concat());
            }
            return;
        }
        for k in 0..=l {
            let signs: &[i64] = if k == 0 { &[0] } else { &[1, -1] };
            for &s in signs {
                prefix.push(s * k as i64);
                rec(rank - 1, l - k, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(rank, l, &mut Vec::new(), &mut out);
    out
}

/// `∇(n)`: walks `H` by increasing `|h|_Y` and returns the first length at
/// which some `h` has certified `|h|_X > n`. Absence from the ball certifies
/// this because the ball radius is at least `n`.
pub fn nabla<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    n: u32,
    cap: usize,
) -> Result<Entry<G::Elem>> {
    need_radius(ball, n)?;
    match sub.intrinsic() {
        Intrinsic::Lattice { rank, embed, .. } => {
            let mut visited = 0usize;
            for l in 1u64.. {
                for v in l1_sphere(*rank, l) {
                    let h = embed(&v);
                    if ball.word_length(&h).exceeds(n) == Some(true) {
                        return Ok(Entry::exact(l, Some(h)));
                    }
                    visited += 1;
                }
                if visited >= cap {
                    return Ok(Entry { value: l + 1, exactness: Exactness::LowerBound, witness: None });
                }
            }
            unreachable!()
        }
        Intrinsic::Whole => {
            need_radius(ball, n + 1)?;
            match ball.sphere(n + 1).first() {
                Some(h) => Ok(Entry::exact(n as u64 + 1, Some(h.clone()))),
                None => Err(Error::InsufficientData(format!("no element of length > {n}: the group is finite"))),
            }
        }
    }
}

/// Non-identity elements of `Y_m = H ∩ Ball_X(m)`.
fn alphabet<G: Group>(points: &SubgroupPointSet<G::Elem>, group: &G, m: u32) -> Vec<G::Elem> {
    points.within(m).filter(|(h, _)| !group.is_identity(h)).map(|(h, _)| h.clone()).collect()
}

/// `μ(m,n)`. Lattice subgroups use the exact coin search in `ℤʳ`; otherwise
/// falls back to [`mu_closure`].
pub fn mu<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    m: u32,
    n: u32,
    cap: usize,
) -> Result<Entry<G::Elem>> {
    let points = subgroup_points(ball, sub);
    mu_with_points(ball, sub, &points, m, n, cap)
}

fn mu_with_points<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    points: &SubgroupPointSet<G::Elem>,
    m: u32,
    n: u32,
    cap: usize,
) -> Result<Entry<G::Elem>> {
    need_radius(ball, m.max(n))?;
    let group = ball.group();
    let coins = alphabet(points, group, m);
    if coins.is_empty() {
        return Err(Error::TrivialAlphabet(m));
    }
    let targets: Vec<&G::Elem> = points.within(n).map(|(h, _)| h).collect();
    match sub.intrinsic() {
        Intrinsic::Lattice { coords, .. } => {
            let coin_vecs: Vec<Vec<i64>> = coins.iter().map(|c| coords(c).expect("member")).collect();
            let target_vecs: Vec<Vec<i64>> = targets.iter().map(|t| coords(t).expect("member")).collect();
            let dists = coin::coin_distances(&coin_vecs, &target_vecs);
            let (mut value, mut witness) = (0, None);
            for (t, d) in targets.iter().zip(dists) {
                let d = d.ok_or_else(|| Error::NotGenerated { m, target: format!("{t:?}") })?;
                if witness.is_none() || d > value {
                    (value, witness) = (d, Some(*t));
                }
            }
            Ok(Entry::exact(value, witness.cloned()))
        }
        Intrinsic::Whole => mu_closure_inner(group, sub, &coins, &targets, m, cap),
    }
}

/// `μ(m,n)` by breadth-first search over canonical ambient elements, each
/// step multiplying by a letter of `Y_m`. Works for any subgroup; used as the
/// independent check for the lattice coin search.
pub fn mu_closure<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    m: u32,
    n: u32,
    cap: usize,
) -> Result<Entry<G::Elem>> {
    need_radius(ball, m.max(n))?;
    let points = subgroup_points(ball, sub);
    let coins = alphabet(&points, ball.group(), m);
    if coins.is_empty() {
        return Err(Error::TrivialAlphabet(m));
    }
    let targets: Vec<&G::Elem> = points.within(n).map(|(h, _)| h).collect();
    mu_closure_inner(ball.group(), sub, &coins, &targets, m, cap)
}

fn mu_closure_inner<G: Group>(
    group: &G,
    sub: &MarkedSubgroup<G::Elem>,
    coins: &[G::Elem],
    targets: &[&G::Elem],
    m: u32,
    cap: usize,
) -> Result<Entry<G::Elem>> {
    let mut pending: HashSet<&G::Elem> = targets.iter().copied().collect();
    let e = group.identity();
    let mut seen: HashSet<G::Elem> = HashSet::from([e.clone()]);
    pending.remove(&e);
    if pending.is_empty() {
        return Ok(Entry::exact(0, Some(e)));
    }
    let mut frontier = vec![e];
    let mut last: (u64, Option<G::Elem>) = (0, None);
    let mut depth = 0u64;
    while !pending.is_empty() {
        if frontier.is_empty() {
            let t = pending.iter().next().expect("non-empty");
            return Err(Error::NotGenerated { m, target: format!("{t:?}") });
        }
        if seen.len() > cap {
            return Ok(Entry { value: depth + 1, exactness: Exactness::LowerBound, witness: None });
        }
        depth += 1;
        let mut next = Vec::new();
        for g in &frontier {
            for c in coins {
                let h = group.mul(g, c);
                debug_assert!(sub.contains(&h));
                if seen.insert(h.clone()) {
                    if pending.remove(&h) {
                        last = (depth, Some(h.clone()));
                    }
                    next.push(h);
                }
            }
        }
        next.sort();
        frontier = next;
    }
    Ok(Entry::exact(last.0, last.1))
}

/// `(n, Δ(n), ∇(n))` rows for `n = 1..=n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct DistortionTable<E> {
    pub rows: Vec<DistortionRow<E>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DistortionRow<E> {
    pub n: u32,
    pub delta: Entry<E>,
    pub nabla: Entry<E>,
}

impl<E> DistortionTable<E> {
    pub fn row(&self, n: u32) -> Option<&DistortionRow<E>> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Violations of monotonicity of Δ and ∇ among exact entries.
    pub fn monotonicity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for w in self.rows.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            if a.delta.is_exact() && b.delta.is_exact() && a.delta.value > b.delta.value {
                out.push(format!("Δ({}) > Δ({})", a.n, b.n));
            }
            if a.nabla.is_exact() && b.nabla.is_exact() && a.nabla.value > b.nabla.value {
                out.push(format!("∇({}) > ∇({})", a.n, b.n));
            }
        }
        out
    }

    /// Range of `Δ(n)/∇(n)` over exact rows; a bounded band is the finite
    /// shadow of uniform distortion.
    pub fn uniformity_band(&self) -> Option<(f64, f64)> {
        let ratios: Vec<f64> = self
            .rows
            .iter()
            .filter(|r| r.delta.is_exact() && r.nabla.is_exact() && r.nabla.value > 0)
            .map(|r| r.delta.value as f64 / r.nabla.value as f64)
            .collect();
        let lo = ratios.iter().copied().reduce(f64::min)?;
        let hi = ratios.iter().copied().reduce(f64::max)?;
        Some((lo, hi))
    }
}

pub fn distortion_table<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    ns: impl IntoIterator<Item = u32>,
    cap: usize,
) -> Result<DistortionTable<G::Elem>> {
    let rows = ns
        .into_iter()
        .map(|n| Ok(DistortionRow { n, delta: delta(ball, sub, n)?, nabla: nabla(ball, sub, n, cap)? }))
        .collect::<Result<_>>()?;
    Ok(DistortionTable { rows })
}

/// Grid of `μ(m,n)` values. Cells where `Y_m` is trivial are listed in
/// `undefined` instead.
#[derive(Debug, Clone, Serialize)]
pub struct MuTable<E> {
    pub cells: BTreeMap<(u32, u32), Entry<E>>,
    pub undefined: Vec<(u32, u32)>,
    /// `|Y_m|` (non-identity letters) for each `m` used.
    pub alphabet_sizes: BTreeMap<u32, usize>,
}

impl<E> MuTable<E> {
    pub fn get(&self, m: u32, n: u32) -> Option<&Entry<E>> {
        self.cells.get(&(m, n))
    }

    /// μ must be non-increasing in `m` and non-decreasing in `n`.
    pub fn monotonicity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(m, n), e) in &self.cells {
            if !e.is_exact() {
                continue;
            }
            if let Some(next) = self.cells.range((m + 1, 0)..).find(|((m2, n2), _)| *n2 == n && *m2 > m) {
                if next.1.is_exact() && next.1.value > e.value {
                    out.push(format!("μ({},{}) > μ({m},{n})", next.0 .0, n));
                }
            }
            if let Some(e2) = self.cells.get(&(m, n + 1)) {
                if e2.is_exact() && e2.value < e.value {
                    out.push(format!("μ({m},{}) < μ({m},{n})", n + 1));
                }
            }
        }
        out
    }
}

pub fn mu_table<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    cells: &[(u32, u32)],
    cap: usize,
) -> Result<MuTable<G::Elem>> {
    let points = subgroup_points(ball, sub);
    type Cell<E> = ((u32, u32), Result<Entry<E>>);
    let results: Vec<Cell<G::Elem>> = cells
        .par_iter()
        .map(|&(m, n)| ((m, n), mu_with_points(ball, sub, &points, m, n, cap)))
        .collect();
    let mut table = MuTable { cells: BTreeMap::new(), undefined: Vec::new(), alphabet_sizes: BTreeMap::new() };
    for ((m, n), r) in results {
        table.alphabet_sizes.entry(m).or_insert_with(|| alphabet(&points, ball.group(), m).len());
        match r {
            Ok(e) => {
                table.cells.insert((m, n), e);
            }
            Err(Error::TrivialAlphabet(_)) => table.undefined.push((m, n)),
            Err(e) => return Err(e),
        }
    }
    Ok(table)
}

/// All `(m, n)` with `m ∈ ms`, `n ∈ ns`.
pub fn grid(ms: impl IntoIterator<Item = u32>, ns: impl IntoIterator<Item = u32> + Clone) -> Vec<(u32, u32)> {
    ms.into_iter().flat_map(|m| ns.clone().into_iter().map(move |n| (m, n))).collect()
}

/// One checked cell of the pointwise sandwich
/// `⌈Δ(n)/Δ(m)⌉ ≤ μ(m,n) ≤ ⌈Δ(n)/(∇(m)−1)⌉`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SandwichCell {
    pub m: u32,
    pub n: u32,
    pub lower: Option<u64>,
    pub mu: u64,
    pub upper: Option<u64>,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SandwichReport {
    pub cells: Vec<SandwichCell>,
    /// Cells skipped because some ingredient was not exact or not computed.
    pub skipped: Vec<(u32, u32)>,
}

impl SandwichReport {
    pub fn violations(&self) -> impl Iterator<Item = &SandwichCell> {
        self.cells.iter().filter(|c| !c.holds)
    }

    pub fn all_hold(&self) -> bool {
        self.cells.iter().all(|c| c.holds)
    }
}

/// Plain exact values used by [`check_sandwich`], so abstract models can be
/// checked with the same code as group balls.
pub trait InvariantSource {
    fn delta_at(&self, n: u32) -> Option<u64>;
    fn nabla_at(&self, n: u32) -> Option<u64>;
}

impl<E> InvariantSource for DistortionTable<E> {
    fn delta_at(&self, n: u32) -> Option<u64> {
        self.row(n).filter(|r| r.delta.is_exact()).map(|r| r.delta.value)
    }
    fn nabla_at(&self, n: u32) -> Option<u64> {
        self.row(n).filter(|r| r.nabla.is_exact()).map(|r| r.nabla.value)
    }
}

pub fn check_sandwich<S: InvariantSource, E>(table: &S, mu: &MuTable<E>) -> SandwichReport {
    let cells: Vec<(u32, u32, u64)> =
        mu.cells.iter().filter(|(_, e)| e.is_exact()).map(|(&(m, n), e)| (m, n, e.value)).collect();
    let mut report = SandwichReport { cells: Vec::new(), skipped: Vec::new() };
    for (&(m, n), e) in &mu.cells {
        if !e.is_exact() {
            report.skipped.push((m, n));
        }
    }
    for (m, n, value) in cells {
        match check_cell(table.delta_at(m), table.delta_at(n), table.nabla_at(m), m, n, value) {
            Some(c) => report.cells.push(c),
            None => report.skipped.push((m, n)),
        }
    }
    report
}

/// Checks one cell from raw values.
pub fn check_cell(
    delta_m: Option<u64>,
    delta_n: Option<u64>,
    nabla_m: Option<u64>,
    m: u32,
    n: u32,
    mu: u64,
) -> Option<SandwichCell> {
    let (dm, dn, nm) = (delta_m?, delta_n?, nabla_m?);
    let lower = (dm > 0).then(|| dn.div_ceil(dm));
    let upper = (nm >= 2).then(|| dn.div_ceil(nm - 1));
    let holds = lower.is_none_or(|l| l <= mu) && upper.is_none_or(|u| mu <= u);
    Some(SandwichCell { m, n, lower, mu, upper, holds })
}

/// The slice `i ↦ μ(i, c·i)` with a trend summary.
#[derive(Debug, Clone, Serialize)]
pub struct RatioProbe {
    pub c: u32,
    pub rows: Vec<(u32, u64, Exactness)>,
    pub max: u64,
    pub strictly_increasing: bool,
    pub non_decreasing: bool,
    pub constant: bool,
}

pub fn mu_ratio_probe<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    c: u32,
    is: impl IntoIterator<Item = u32>,
    cap: usize,
) -> Result<RatioProbe> {
    let is: Vec<u32> = is.into_iter().collect();
    if let Some(&top) = is.iter().max() {
        need_radius(ball, c * top)?;
    }
    let cells: Vec<(u32, u32)> = is.iter().map(|&i| (i, c * i)).collect();
    let table = mu_table(ball, sub, &cells, cap)?;
    let rows: Vec<(u32, u64, Exactness)> =
        table.cells.iter().map(|(&(i, _), e)| (i, e.value, e.exactness)).collect();
    Ok(summarize_probe(c, rows))
}

pub fn summarize_probe(c: u32, rows: Vec<(u32, u64, Exactness)>) -> RatioProbe {
    let values: Vec<u64> = rows.iter().map(|r| r.1).collect();
    RatioProbe {
        c,
        max: values.iter().copied().max().unwrap_or(0),
        strictly_increasing: values.windows(2).all(|w| w[0] < w[1]),
        non_decreasing: values.windows(2).all(|w| w[0] <= w[1]),
        constant: values.windows(2).all(|w| w[0] == w[1]),
        rows,
    }
}

/// Smallest `j ≥ 0` with `m·2ʲ ≥ n`, i.e. `⌈log₂(n/m)⌉` clamped at zero.
pub fn ceil_log2_ratio(m: u32, n: u32) -> u32 {
    let mut j = 0;
    while (m as u64) << j < n as u64 {
        j += 1;
    }
    j
}

/// Cells violating `μ(m,n) ≤ K^{⌈log₂(n/m)⌉+1}`, the doubling bound implied
/// by `μ(i,4i) ≤ K` for all `i`.
pub fn doubling_bound_violations<E>(table: &MuTable<E>, k: u64) -> Vec<(u32, u32, u64, u64)> {
    table
        .cells
        .iter()
        .filter(|((m, n), e)| e.is_exact() && m <= n)
        .filter_map(|(&(m, n), e)| {
            let bound = k.saturating_pow(ceil_log2_ratio(m, n) + 1);
            (e.value > bound).then_some((m, n, e.value, bound))
        })
        .collect()
}

/// Largest exact μ per ratio bucket `⌈n/m⌉`: a finite-scale envelope `f`
/// with `μ(m,n) ≤ f(n/m)` on the computed grid.
pub fn homogeneous_envelope<E>(table: &MuTable<E>) -> BTreeMap<u32, u64> {
    let mut env = BTreeMap::new();
    for (&(m, n), e) in &table.cells {
        if e.is_exact() && m > 0 {
            let bucket = n.div_ceil(m);
            let slot = env.entry(bucket).or_insert(0);
            *slot = (*slot).max(e.value);
        }
    }
    env
}

/// Exact Y-lengths of all subgroup points of the ball, for reports.
pub fn y_lengths<G: Group>(ball: &Ball<G>, sub: &MarkedSubgroup<G::Elem>) -> HashMap<G::Elem, u64> {
    subgroup_points(ball, sub)
        .points
        .into_iter()
        .filter_map(|(h, l)| match sub.intrinsic() {
            Intrinsic::Lattice { .. } => sub.lattice_length(&h).map(|y| (h, y)),
            Intrinsic::Whole => Some((h, l as u64)),
        })
        .collect()
}
