//! r-paths on finite metric spaces.
//!
//! An r-path is a point sequence whose consecutive distances are `≤ r`; `|t|_r`
//! is the fewest steps from the basepoint to `t`, and
//! `ν(m,n) = max{|t|_m : d(s,t) ≤ n}`.

use std::collections::VecDeque;

use petgraph::unionfind::UnionFind;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cayley::Ball;
use crate::error::{Error, Result};
use crate::exactness::Exactness;
use crate::group::{Group, MarkedSubgroup};
use crate::scalar::MetricScalar;

/// A stored distance. `AtLeast` marks pairs whose distance could not be
/// certified; they never count as `≤ r` for any `r` below the bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Dist<D> {
    Exact(D),
    AtLeast(D),
}

impl<D: MetricScalar> Dist<D> {
    /// Certified `d ≤ r`.
    fn within(&self, r: &D) -> bool {
        match self {
            Dist::Exact(d) => d <= r,
            Dist::AtLeast(_) => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Standalone,
    /// Points of a subgroup inside an ambient ball. `truncation` bounds the
    /// targets; points out to `truncation + slack` may serve as path vertices.
    Induced { group: String, subgroup: String, truncation: u32, slack: u32, ball_radius: u32 },
}

#[derive(Debug, Clone)]
pub struct FiniteMetricSpace<D> {
    labels: Vec<String>,
    /// Row-major `len × len`.
    dist: Vec<Dist<D>>,
    basepoint: usize,
    provenance: Provenance,
    /// Ambient word length of each point, for induced spaces.
    norms: Option<Vec<u32>>,
}

/// Outcome of [`FiniteMetricSpace::rpath_length`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PathLength {
    Steps(u64),
    Unreachable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NuValue {
    pub value: u64,
    pub exactness: Exactness,
    /// Index of a point attaining the value.
    pub witness: usize,
    /// Points within `n` of the basepoint that no `m`-path reaches.
    pub unreachable: Vec<usize>,
}

impl<D: MetricScalar> FiniteMetricSpace<D> {
    /// Builds a space from a distance procedure; the diagonal must be zero.
    pub fn from_fn(
        labels: Vec<String>,
        basepoint: usize,
        provenance: Provenance,
        mut d: impl FnMut(usize, usize) -> Dist<D>,
    ) -> Result<Self> {
        let n = labels.len();
        if basepoint >= n {
            return Err(Error::InvalidArgument(format!("basepoint {basepoint} out of range for {n} points")));
        }
        let mut dist = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                dist.push(if i == j { Dist::Exact(D::zero()) } else { d(i, j) });
            }
        }
        Ok(Self { labels, dist, basepoint, provenance, norms: None })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn distance(&self, i: usize, j: usize) -> &Dist<D> {
        &self.dist[i * self.len() + j]
    }

    /// Checks zero-iff-equal and symmetry on all pairs, and the triangle
    /// inequality on `samples` seeded random triples. Returns violations.
    pub fn check_axioms(&self, samples: usize, seed: u64) -> Vec<String> {
        let n = self.len();
        let mut bad = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let d = self.distance(i, j);
                if i != j && *d == Dist::Exact(D::zero()) {
                    bad.push(format!("d({i},{j}) = 0"));
                }
                if d != self.distance(j, i) {
                    bad.push(format!("d({i},{j}) ≠ d({j},{i})"));
                }
            }
        }
        if n == 0 {
            return bad;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            if let (Dist::Exact(ab), Dist::Exact(bc), Dist::Exact(ac)) =
                (self.distance(a, b), self.distance(b, c), self.distance(a, c))
            {
                if *ac > ab.clone() + bc.clone() {
                    bad.push(format!("triangle ({a},{b},{c})"));
                }
            }
        }
        bad
    }

    /// `|t|_r` for every point, by BFS on the `r`-threshold graph.
    #[allow(clippy::needless_range_loop)]
    pub fn rpath_lengths(&self, r: &D) -> Vec<PathLength> {
        let n = self.len();
        let mut out = vec![PathLength::Unreachable; n];
        out[self.basepoint] = PathLength::Steps(0);
        let mut queue = VecDeque::from([(self.basepoint, 0u64)]);
        while let Some((i, k)) = queue.pop_front() {
            for j in 0..n {
                if out[j] == PathLength::Unreachable && self.distance(i, j).within(r) {
                    out[j] = PathLength::Steps(k + 1);
                    queue.push_back((j, k + 1));
                }
            }
        }
        out
    }

    pub fn rpath_length(&self, r: &D, t: usize) -> PathLength {
        self.rpath_lengths(r)[t]
    }

    /// Connectedness of the `r`-threshold graph and its component count.
    pub fn is_r_connected(&self, r: &D) -> (bool, usize) {
        let n = self.len();
        let mut uf = UnionFind::<usize>::new(n);
        for i in 0..n {
            for j in i + 1..n {
                if self.distance(i, j).within(r) {
                    uf.union(i, j);
                }
            }
        }
        let mut roots: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
        roots.sort_unstable();
        roots.dedup();
        (roots.len() <= 1, roots.len())
    }

    /// Targets of `ν(·, n)`: points certified within `n` of the basepoint.
    pub fn targets(&self, n: &D) -> Vec<usize> {
        (0..self.len()).filter(|&t| self.distance(self.basepoint, t).within(n)).collect()
    }

    /// `ν(m,n)`. For induced spaces the value is exact only when every
    /// optimal path provably stays inside the computed points; see
    /// [`induced_space`].
    pub fn nu(&self, m: &D, n: &D) -> NuValue {
        let lengths = self.rpath_lengths(m);
        let mut value = 0;
        let mut witness = self.basepoint;
        let mut unreachable = Vec::new();
        for t in self.targets(n) {
            match lengths[t] {
                PathLength::Steps(k) if k > value => (value, witness) = (k, t),
                PathLength::Steps(_) => {}
                PathLength::Unreachable => unreachable.push(t),
            }
        }
        NuValue { value, exactness: Exactness::Exact, witness, unreachable }
    }
}

impl FiniteMetricSpace<u64> {
    /// Points of `ℤ` with the absolute-value metric.
    pub fn integer_points(points: &[i64], basepoint: usize) -> Result<Self> {
        let labels = points.iter().map(|p| p.to_string()).collect();
        Self::from_fn(labels, basepoint, Provenance::Standalone, |i, j| Dist::Exact(points[i].abs_diff(points[j])))
    }

    /// `{0, …, len}` based at `0`.
    pub fn integer_segment(len: u64) -> Self {
        let pts: Vec<i64> = (0..=len as i64).collect();
        Self::integer_points(&pts, 0).expect("non-empty")
    }

    /// Integer-valued `ν(m,n)` with the truncation certificate applied.
    ///
    /// A shortest `m`-path `e = h₀, …, h_k = t` has `|h_i|_X ≤ i·m` and
    /// `|h_i|_X ≤ |t|_X + (k−i)·m`, so its interior vertices satisfy
    /// `|h_i|_X ≤ min((k−1)·m, ⌊(k·m + |t|_X)/2⌋)`. The restricted search can
    /// only overestimate `k`, so once the computed points cover that radius the
    /// restricted value is the true one.
    pub fn nu_certified(&self, m: u64, n: u64) -> NuValue {
        let mut out = self.nu(&m, &n);
        let Some(norms) = &self.norms else {
            return out;
        };
        let covered = match &self.provenance {
            Provenance::Induced { truncation, slack, .. } => (truncation + slack) as u64,
            Provenance::Standalone => return out,
        };
        let lengths = self.rpath_lengths(&m);
        let uncertain = self.targets(&n).into_iter().any(|t| match lengths[t] {
            PathLength::Steps(k) if k >= 1 => {
                let need = ((k - 1) * m).min((k * m + norms[t] as u64) / 2);
                need > covered
            }
            _ => false,
        });
        if uncertain || !out.unreachable.is_empty() {
            out.exactness = Exactness::UpperUncertain;
        }
        out
    }
}

/// The subgroup `H ∩ Ball_X(truncation + slack)` with `d(h,k) = |h⁻¹k|_X`
/// read from the ball. Distances beyond the ball radius are stored as
/// `AtLeast(radius + 1)`. The basepoint is the identity.
pub fn induced_space<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    truncation: u32,
    slack: u32,
) -> Result<FiniteMetricSpace<u64>> {
    Ok(induced_space_with_points(ball, sub, truncation, slack)?.0)
}

/// [`induced_space`] together with the group element behind each point.
pub fn induced_space_with_points<G: Group>(
    ball: &Ball<G>,
    sub: &MarkedSubgroup<G::Elem>,
    truncation: u32,
    slack: u32,
) -> Result<(FiniteMetricSpace<u64>, Vec<G::Elem>)> {
    let need = truncation + slack;
    if ball.radius() < need {
        return Err(Error::RadiusTooSmall { have: ball.radius(), need });
    }
    let group = ball.group();
    let points: Vec<(G::Elem, u32)> =
        ball.iter().filter(|(g, l)| *l <= need && sub.contains(g)).map(|(g, l)| (g.clone(), l)).collect();
    let inverses: Vec<G::Elem> = points.iter().map(|(g, _)| group.inv(g)).collect();
    let labels = points.iter().map(|(g, _)| format!("{g:?}")).collect();
    let basepoint = points.iter().position(|(g, _)| group.is_identity(g)).expect("identity is in every subgroup");
    let provenance = Provenance::Induced {
        group: group.name(),
        subgroup: sub.name().to_string(),
        truncation,
        slack,
        ball_radius: ball.radius(),
    };
    let mut space = FiniteMetricSpace::from_fn(labels, basepoint, provenance, |i, j| {
        match ball.word_length(&group.mul(&inverses[i], &points[j].0)).exact() {
            Some(l) => Dist::Exact(l as u64),
            None => Dist::AtLeast(ball.radius() as u64 + 1),
        }
    })?;
    space.norms = Some(points.iter().map(|(_, l)| *l).collect());
    Ok((space, points.into_iter().map(|(g, _)| g).collect()))
}

/// `ν(m,n)` over an `(m,n)` grid, checking that `n` stays within the
/// truncation.
pub fn nu_grid(space: &FiniteMetricSpace<u64>, cells: &[(u32, u32)]) -> Result<Vec<(u32, u32, NuValue)>> {
    if let Provenance::Induced { truncation, .. } = space.provenance() {
        if let Some(&(_, n)) = cells.iter().find(|(_, n)| n > truncation) {
            return Err(Error::RadiusTooSmall { have: *truncation, need: n });
        }
    }
    Ok(cells.iter().map(|&(m, n)| (m, n, space.nu_certified(m as u64, n as u64))).collect())
}
