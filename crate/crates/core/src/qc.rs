//! Finite-scale probes of (strong) quasi-convexity.
//!
//! The excursion of `h ∈ H` is the largest `d(v, H)` over vertices `v` on
//! geodesics `e → h`. Growth of `M(n) = max{E(h) : |h|_X ≤ n}` certifies that
//! `H` is not quasi-convex up to scale `n`; a flat profile proves nothing.

use std::collections::{BTreeMap, HashSet};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::{distance_to_set_local, Ball, SubsetDistance};
use crate::error::{Error, Result};
use crate::exactness::Exactness;
use crate::group::{Group, MarkedSubgroup};

/// Non-negative rational parameter (`λ` or `C`).
pub type QcParam = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Excursion<E> {
    pub target: E,
    pub length: u32,
    /// `max d(v, H)`; a lower bound when some vertex is farther than `d_cap`.
    pub value: u64,
    pub exactness: Exactness,
    /// Vertex attaining the value.
    pub vertex: E,
    /// Number of vertices on geodesics `e → h`.
    pub geodesic_vertices: usize,
}

fn length_of<G: Group>(ball: &Ball<G>, g: &G::Elem) -> Option<u32> {
    ball.word_length(g).exact()
}

/// Vertices `v` with `|v| + |v⁻¹h| = |h|`, found by walking down from `h`
/// through neighbours one step closer to `e`.
pub fn geodesic_vertices<G: Group>(ball: &Ball<G>, h: &G::Elem) -> Result<Vec<G::Elem>> {
    let group = ball.group();
    let top = length_of(ball, h).ok_or(Error::RadiusTooSmall { have: ball.radius(), need: ball.radius() + 1 })?;
    let mut seen: HashSet<G::Elem> = HashSet::from([h.clone()]);
    let mut layer = vec![h.clone()];
    for l in (1..=top).rev() {
        let mut next = Vec::new();
        for v in &layer {
            for x in group.generators() {
                let u = group.mul(v, &x.elem);
                if length_of(ball, &u) == Some(l - 1) && seen.insert(u.clone()) {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    let mut out: Vec<G::Elem> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

/// A geodesic word `e → v → h`, rebuilt from ball parents and a descending
/// walk, or `None` if `v` is not on a geodesic.
pub fn geodesic_word_through<G: Group>(ball: &Ball<G>, v: &G::Elem, h: &G::Elem) -> Option<Vec<usize>> {
    let group = ball.group();
    let (lv, lh) = (length_of(ball, v)?, length_of(ball, h)?);
    let mut word = ball.geodesic_word(v)?;
    let mut cur = v.clone();
    let mut left = lh.checked_sub(lv)?;
    while left > 0 {
        let (i, next) = group.generators().iter().enumerate().find_map(|(i, x)| {
            let w = group.mul(&cur, &x.elem);
            let rest = length_of(ball, &group.mul(&group.inv(&w), h))?;
            (length_of(ball, &w) == Some(lh - left + 1) && rest == left - 1).then_some((i, w))
        })?;
        word.push(i);
        cur = next;
        left -= 1;
    }
    (cur == *h).then_some(word)
}

/// Exact excursion of `h` when every geodesic vertex is within `d_cap` of `H`.
pub fn geodesic_excursion<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    h: &G::Elem,
    d_cap: u32,
) -> Result<Excursion<G::Elem>> {
    if !sub.contains(h) {
        return Err(Error::NotInSubgroup);
    }
    let group = ball.group();
    let length = length_of(ball, h).ok_or(Error::RadiusTooSmall { have: ball.radius(), need: ball.radius() + 1 })?;
    let verts = geodesic_vertices(ball, h)?;
    let mut best: Option<(u64, bool, &G::Elem)> = None;
    for v in &verts {
        let word = geodesic_word_through(ball, v, h).expect("on-geodesic vertex admits a geodesic word");
        debug_assert_eq!(word.len() as u32, length);
        debug_assert_eq!(group.eval_word(&word), *h);
        let (d, exact) = match distance_to_set_local(group, v, d_cap, |g| sub.contains(g)) {
            SubsetDistance::Exact(d) => (d as u64, true),
            SubsetDistance::AtLeast(d) => (d as u64, false),
        };
        if best.is_none_or(|(b, _, _)| d > b) {
            best = Some((d, exact, v));
        }
    }
    let (value, exact, vertex) = best.expect("h itself is a geodesic vertex");
    Ok(Excursion {
        target: h.clone(),
        length,
        value,
        exactness: if exact { Exactness::Exact } else { Exactness::LowerBound },
        vertex: vertex.clone(),
        geodesic_vertices: verts.len(),
    })
}

/// Checks that each on-geodesic vertex yields a reconstructed geodesic word
/// evaluating to `h`. Returns the vertices that fail.
pub fn verify_geodesic_vertices<G: Group>(ball: &Ball<G>, h: &G::Elem) -> Result<Vec<G::Elem>> {
    let group = ball.group();
    let len = length_of(ball, h).ok_or(Error::RadiusTooSmall { have: ball.radius(), need: ball.radius() + 1 })?;
    Ok(geodesic_vertices(ball, h)?
        .into_iter()
        .filter(|v| {
            geodesic_word_through(ball, v, h).is_none_or(|w| w.len() as u32 != len || group.eval_word(&w) != *h)
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QcRow {
    pub n: u32,
    pub m: u64,
    pub exactness: Exactness,
    pub targets: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExcursionReport<E> {
    pub rows: Vec<QcRow>,
    pub excursions: Vec<Excursion<E>>,
}

/// `M(n)` for each `n`, over all `h ∈ H` with `|h|_X ≤ n`.
pub fn quasiconvexity_report<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    ns: &[u32],
    d_cap: u32,
) -> Result<ExcursionReport<G::Elem>> {
    let n_max = ns.iter().copied().max().ok_or(Error::InvalidArgument("empty n range".into()))?;
    if ball.radius() < n_max {
        return Err(Error::RadiusTooSmall { have: ball.radius(), need: n_max });
    }
    let targets: Vec<&G::Elem> = ball.iter().filter(|(g, l)| *l <= n_max && sub.contains(g)).map(|(g, _)| g).collect();
    let excursions: Vec<Excursion<G::Elem>> =
        targets.par_iter().map(|h| geodesic_excursion(ball, sub, h, d_cap)).collect::<Result<_>>()?;
    let mut ns: Vec<u32> = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let rows = ns
        .iter()
        .map(|&n| {
            let within: Vec<&Excursion<G::Elem>> = excursions.iter().filter(|e| e.length <= n).collect();
            let m = within.iter().map(|e| e.value).max().unwrap_or(0);
            let exact = within.iter().all(|e| e.exactness.is_exact());
            QcRow { n, m, exactness: if exact { Exactness::Exact } else { Exactness::LowerBound }, targets: within.len() }
        })
        .collect();
    Ok(ExcursionReport { rows, excursions })
}

/// Whether a unit-step vertex sequence is a discrete `(λ, C)`-quasi-geodesic:
/// `|i − j| ≤ λ·(d(γ_i, γ_j) + C)` for all index pairs. The upper inequality
/// holds automatically for unit steps when `λ ≥ 1`.
pub fn is_quasi_geodesic<G: Group>(ball: &Ball<G>, path: &[G::Elem], lambda: QcParam, c: QcParam) -> Result<bool> {
    let group = ball.group();
    for w in path.windows(2) {
        if length_of(ball, &group.mul(&group.inv(&w[0]), &w[1])) != Some(1) {
            return Ok(false);
        }
    }
    for i in 0..path.len() {
        for j in i + 1..path.len() {
            let d = length_of(ball, &group.mul(&group.inv(&path[i]), &path[j]))
                .ok_or(Error::RadiusTooSmall { have: ball.radius(), need: ball.radius() + 1 })?;
            if QcParam::from_integer((j - i) as u64) > lambda * (QcParam::from_integer(d as u64) + c) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathExcursion<E> {
    /// Certified lower bound on the excursion over all `(λ, C)`-quasi-geodesics.
    pub value: u64,
    pub path: Vec<E>,
    pub explored: usize,
    /// Search finished below `path_cap`, so every such path was seen.
    pub complete: bool,
}

/// Excursion of an explicit path, if it is a `(λ, C)`-quasi-geodesic between
/// points of `H`. Distances to `H` above `d_cap` count as `d_cap + 1`.
pub fn verify_witness_path<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    path: &[G::Elem],
    lambda: QcParam,
    c: QcParam,
    d_cap: u32,
) -> Result<Option<u64>> {
    let (Some(a), Some(b)) = (path.first(), path.last()) else {
        return Ok(None);
    };
    if !sub.contains(a) || !sub.contains(b) || !is_quasi_geodesic(ball, path, lambda, c)? {
        return Ok(None);
    }
    Ok(Some(path.iter().map(|v| dist_to_h(ball.group(), sub, v, d_cap)).max().unwrap_or(0)))
}

fn dist_to_h<G: Group>(group: &G, sub: &MarkedSubgroup<G::Elem>, v: &G::Elem, d_cap: u32) -> u64 {
    match distance_to_set_local(group, v, d_cap, |g| sub.contains(g)) {
        SubsetDistance::Exact(d) | SubsetDistance::AtLeast(d) => d as u64,
    }
}

/// Depth-first search over unit-step `(λ, C)`-quasi-geodesics from `from` to
/// `to`, in seeded random generator order, stopping after `path_cap` paths.
/// Returns the largest excursion seen, which is only a lower bound.
#[allow(clippy::too_many_arguments)]
pub fn quasi_geodesic_excursion<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    lambda: QcParam,
    c: QcParam,
    from: &G::Elem,
    to: &G::Elem,
    path_cap: usize,
    d_cap: u32,
    seed: u64,
) -> Result<PathExcursion<G::Elem>> {
    if lambda < QcParam::from_integer(1) {
        return Err(Error::InvalidArgument("λ must be at least 1".into()));
    }
    let group = ball.group();
    let span = length_of(ball, &group.mul(&group.inv(from), to))
        .ok_or(Error::RadiusTooSmall { have: ball.radius(), need: ball.radius() + 1 })?;
    let max_len = (lambda * (QcParam::from_integer(span as u64) + c)).to_integer();
    let mut search = Search {
        ball,
        sub,
        lambda,
        c,
        to,
        max_len,
        path_cap,
        d_cap,
        rng: ChaCha8Rng::seed_from_u64(seed),
        path: vec![from.clone()],
        best: (0, vec![from.clone()]),
        explored: 0,
        truncated: false,
        dist_cache: BTreeMap::new(),
    };
    search.run()?;
    Ok(PathExcursion {
        value: search.best.0,
        path: search.best.1,
        explored: search.explored,
        complete: !search.truncated,
    })
}

struct Search<'a, G: Group> {
    ball: &'a Ball<G>,
    sub: &'a MarkedSubgroup<G::Elem>,
    lambda: QcParam,
    c: QcParam,
    to: &'a G::Elem,
    max_len: u64,
    path_cap: usize,
    d_cap: u32,
    rng: ChaCha8Rng,
    path: Vec<G::Elem>,
    best: (u64, Vec<G::Elem>),
    explored: usize,
    truncated: bool,
    dist_cache: BTreeMap<G::Elem, u64>,
}

impl<G: Group> Search<'_, G> {
    fn dist(&self, a: &G::Elem, b: &G::Elem) -> Result<u64> {
        let g = self.ball.group();
        length_of(self.ball, &g.mul(&g.inv(a), b))
            .map(u64::from)
            .ok_or(Error::RadiusTooSmall { have: self.ball.radius(), need: self.ball.radius() + 1 })
    }

    fn run(&mut self) -> Result<()> {
        if self.explored >= self.path_cap {
            self.truncated = true;
            return Ok(());
        }
        let cur = self.path.last().expect("non-empty").clone();
        let steps = self.path.len() as u64 - 1;
        if cur == *self.to {
            self.explored += 1;
            let mut exc = 0;
            for v in &self.path {
                let d = match self.dist_cache.get(v) {
                    Some(&d) => d,
                    None => {
                        let d = dist_to_h(self.ball.group(), self.sub, v, self.d_cap);
                        self.dist_cache.insert(v.clone(), d);
                        d
                    }
                };
                exc = exc.max(d);
            }
            if exc > self.best.0 {
                self.best = (exc, self.path.clone());
            }
        }
        if steps == self.max_len {
            return Ok(());
        }
        let mut order: Vec<usize> = (0..self.ball.group().generators().len()).collect();
        order.shuffle(&mut self.rng);
        for i in order {
            let next = self.ball.group().mul(&cur, &self.ball.group().generators()[i].elem);
            // must still be able to reach the endpoint in time
            if self.dist(&next, self.to)? > self.max_len - steps - 1 {
                continue;
            }
            let k = self.path.len();
            let mut ok = true;
            for (j, p) in self.path.iter().enumerate() {
                let d = self.dist(p, &next)?;
                if QcParam::from_integer((k - j) as u64) > self.lambda * (QcParam::from_integer(d) + self.c) {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            self.path.push(next);
            self.run()?;
            self.path.pop();
            if self.truncated {
                return Ok(());
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests;
