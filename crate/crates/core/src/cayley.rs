//! Exact balls in Cayley graphs and the word metric they carry.

use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{Group, MarkedSubgroup};

pub const DEFAULT_NODE_CAP: usize = 5_000_000;

/// Word length of an element relative to a finite ball.
///
/// `Beyond` certifies `|g|_X > radius`; it is never a guess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WordLength {
    Exact(u32),
    Beyond { radius: u32 },
}

impl WordLength {
    pub fn exact(self) -> Option<u32> {
        match self {
            WordLength::Exact(n) => Some(n),
            WordLength::Beyond { .. } => None,
        }
    }

    /// Certified `|g|_X > n`.
    pub fn exceeds(self, n: u32) -> Option<bool> {
        match self {
            WordLength::Exact(l) => Some(l > n),
            WordLength::Beyond { radius } if radius >= n => Some(true),
            WordLength::Beyond { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Node {
    len: u32,
    /// Generator whose right multiplication first reached this element.
    parent: u32,
}

const NO_PARENT: u32 = u32::MAX;

/// All elements of word length `≤ radius`, each with its exact length.
#[derive(Debug, Clone)]
pub struct Ball<G: Group> {
    group: G,
    radius: u32,
    index: HashMap<G::Elem, Node>,
    spheres: Vec<Vec<G::Elem>>,
}

/// Breadth-first enumeration of the radius-`radius` ball, deduplicated by
/// canonical form. Each frontier is expanded in parallel; spheres are sorted
/// by canonical key so results are deterministic.
pub fn enumerate_ball<G: Group>(group: G, radius: u32, node_cap: usize) -> Result<Ball<G>> {
    let e = group.identity();
    let mut index = HashMap::new();
    index.insert(e.clone(), Node { len: 0, parent: NO_PARENT });
    let mut spheres = vec![vec![e]];
    let gens = group.generators();

    for r in 0..radius {
        let candidates: Vec<Vec<(G::Elem, u32)>> = spheres[r as usize]
            .par_iter()
            .map(|g| {
                gens.iter()
                    .enumerate()
                    .map(|(i, x)| (group.mul(g, &x.elem), i as u32))
                    .filter(|(y, _)| !index.contains_key(y))
                    .collect()
            })
            .collect();
        let mut next = Vec::new();
        for (y, parent) in candidates.into_iter().flatten() {
            if let std::collections::hash_map::Entry::Vacant(slot) = index.entry(y) {
                next.push(slot.key().clone());
                slot.insert(Node { len: r + 1, parent });
            }
        }
        next.par_sort_unstable();
        spheres.push(next);
        if index.len() > node_cap {
            return Err(Error::NodeCapExceeded { cap: node_cap, sphere_sizes: spheres.iter().map(Vec::len).collect() });
        }
        if spheres[r as usize + 1].is_empty() {
            // finite group exhausted; remaining spheres stay empty
            spheres.resize((radius + 1) as usize, Vec::new());
            break;
        }
    }
    Ok(Ball { group, radius, index, spheres })
}

impl<G: Group> Ball<G> {
    pub fn group(&self) -> &G {
        &self.group
    }

    pub fn radius(&self) -> u32 {
        self.radius
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn contains(&self, g: &G::Elem) -> bool {
        self.index.contains_key(g)
    }

    pub fn word_length(&self, g: &G::Elem) -> WordLength {
        match self.index.get(g) {
            Some(n) => WordLength::Exact(n.len),
            None => WordLength::Beyond { radius: self.radius },
        }
    }

    /// Word metric `d(g,h) = |g⁻¹h|_X`.
    pub fn distance(&self, g: &G::Elem, h: &G::Elem) -> WordLength {
        self.word_length(&self.group.mul(&self.group.inv(g), h))
    }

    /// Elements of length exactly `r`, sorted by canonical key.
    pub fn sphere(&self, r: u32) -> &[G::Elem] {
        self.spheres.get(r as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn sphere_sizes(&self) -> Vec<usize> {
        self.spheres.iter().map(Vec::len).collect()
    }

    /// All elements in order of increasing length.
    pub fn iter(&self) -> impl Iterator<Item = (&G::Elem, u32)> {
        self.spheres.iter().enumerate().flat_map(|(r, s)| s.iter().map(move |g| (g, r as u32)))
    }

    /// A geodesic word for `g` read off the BFS parent pointers.
    pub fn geodesic_word(&self, g: &G::Elem) -> Option<Vec<usize>> {
        let gens = self.group.generators();
        let mut word = Vec::new();
        let mut cur = g.clone();
        loop {
            let node = self.index.get(&cur)?;
            if node.parent == NO_PARENT {
                break;
            }
            let x = node.parent as usize;
            word.push(x);
            cur = self.group.mul(&cur, &gens[gens[x].inverse].elem);
        }
        word.reverse();
        Some(word)
    }

    /// Rows for the `ball` CSV table.
    pub fn growth_rows(&self) -> Vec<GrowthRow> {
        let mut cumulative = 0;
        self.spheres
            .iter()
            .enumerate()
            .map(|(r, s)| {
                cumulative += s.len();
                GrowthRow { radius: r as u32, sphere_size: s.len(), cumulative_size: cumulative }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub radius: u32,
    pub sphere_size: usize,
    pub cumulative_size: usize,
}

/// `H ∩ Ball_X(radius)` with ambient lengths, ordered by length then key.
#[derive(Debug, Clone)]
pub struct SubgroupPointSet<E> {
    pub radius: u32,
    pub points: Vec<(E, u32)>,
}

impl<E> SubgroupPointSet<E> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Points with `|h|_X ≤ r`.
    pub fn within(&self, r: u32) -> impl Iterator<Item = &(E, u32)> {
        self.points.iter().filter(move |(_, l)| *l <= r)
    }
}

pub fn subgroup_points<G: Group>(ball: &Ball<G>, sub: &MarkedSubgroup<G::Elem>) -> SubgroupPointSet<G::Elem> {
    let points = ball.iter().filter(|(g, _)| sub.contains(g)).map(|(g, l)| (g.clone(), l)).collect();
    SubgroupPointSet { radius: ball.radius(), points }
}

/// Distance from a ball element to the target set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SubsetDistance {
    Exact(u32),
    AtLeast(u32),
}

/// Multi-source BFS from `targets` through ball elements.
///
/// When the targets are the whole of `H ∩ Ball_X(R)`, a value `d` found for
/// `v` with `|v| + d ≤ R` equals the true `d(v, H)`: a nearer point of `H`
/// and every vertex of a geodesic to it would lie inside the ball. Larger
/// values are reported as the lower bound `R − |v| + 1`.
pub fn distance_to_subset<G: Group>(
    ball: &Ball<G>,
    targets: &SubgroupPointSet<G::Elem>,
) -> Result<HashMap<G::Elem, SubsetDistance>> {
    if targets.is_empty() {
        return Err(Error::EmptyTargets);
    }
    let gens = ball.group().generators();
    let mut dist: HashMap<G::Elem, u32> = HashMap::with_capacity(ball.len());
    let mut queue = VecDeque::new();
    for (t, _) in &targets.points {
        if ball.contains(t) && !dist.contains_key(t) {
            dist.insert(t.clone(), 0);
            queue.push_back(t.clone());
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[&v];
        for x in gens {
            let w = ball.group().mul(&v, &x.elem);
            if ball.contains(&w) && !dist.contains_key(&w) {
                dist.insert(w.clone(), d + 1);
                queue.push_back(w);
            }
        }
    }
    let reach = ball.radius().min(targets.radius);
    Ok(ball
        .iter()
        .map(|(v, len)| {
            let bound = reach.saturating_sub(len) + 1;
            let value = match dist.get(v) {
                Some(&d) if len + d <= reach => SubsetDistance::Exact(d),
                _ => SubsetDistance::AtLeast(bound),
            };
            (v.clone(), value)
        })
        .collect())
}

/// Local BFS from `v` in the full Cayley graph, up to `cap` steps, for the
/// nearest element satisfying `member`. Exact when the answer is `≤ cap`.
pub fn distance_to_set_local<G: Group>(
    group: &G,
    v: &G::Elem,
    cap: u32,
    member: impl Fn(&G::Elem) -> bool,
) -> SubsetDistance {
    if member(v) {
        return SubsetDistance::Exact(0);
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(v.clone());
    let mut frontier = vec![v.clone()];
    for d in 1..=cap {
        let mut next = Vec::new();
        for u in &frontier {
            for x in group.generators() {
                let w = group.mul(u, &x.elem);
                if seen.insert(w.clone()) {
                    if member(&w) {
                        return SubsetDistance::Exact(d);
                    }
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    SubsetDistance::AtLeast(cap + 1)
}

/// Brute-force word lengths: evaluates every word of length `≤ radius`
/// (skipping only immediate `x x⁻¹` cancellations) and keeps the shortest
/// length per element. Independent of [`enumerate_ball`]; used as an oracle.
pub fn word_closure_lengths<G: Group>(group: &G, radius: u32) -> HashMap<G::Elem, u32> {
    fn dfs<G: Group>(group: &G, cur: &G::Elem, last: Option<usize>, depth: u32, radius: u32, out: &mut HashMap<G::Elem, u32>) {
        let entry = out.entry(cur.clone()).or_insert(depth);
        if *entry > depth {
            *entry = depth;
        }
        if depth == radius {
            return;
        }
        let gens = group.generators();
        for (i, x) in gens.iter().enumerate() {
            if last.is_some_and(|l| gens[l].inverse == i) {
                continue;
            }
            dfs(group, &group.mul(cur, &x.elem), Some(i), depth + 1, radius, out);
        }
    }
    let mut out = HashMap::new();
    dfs(group, &group.identity(), None, 0, radius, &mut out);
    out
}
