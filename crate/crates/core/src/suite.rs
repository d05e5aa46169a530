//! Fixed desk-scale checks of the worked examples: Heisenberg centre,
//! `⟨a⟩ ≤ BS(1,2)`, lines and diagonals in `ℤ²`, and the abstract lines.
//!
//! A check whose ball would be smaller than it needs is reported as skipped,
//! never as failed.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use crate::cayley::{enumerate_ball, word_closure_lengths, Ball, DEFAULT_NODE_CAP};
use crate::distortion::{check_sandwich, delta, distortion_table, grid, mu, mu_closure, mu_table, DEFAULT_SEARCH_CAP};
use crate::error::Result;
use crate::group::{
    bs_gen_a, free_abelian_cyclic, free_abelian_whole, heisenberg_center, product_subgroup, AnyGroup, Bs1p, BsElem,
    FreeAbelianGroup, Group, HeisenbergGroup, MarkedSubgroup, Product,
};
use crate::length::{build_ell, certify, plateau_witnesses, power_length, AbstractDistortedLine, SourceFamily};
use crate::qc::{quasiconvexity_report, verify_witness_path, QcParam};
use crate::rpath::{induced_space, nu_grid};

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub heisenberg_radius: u32,
    pub bs_radius: u32,
    pub z2_radius: u32,
    pub grid_max: u64,
    pub random_pairs: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { heisenberg_radius: 24, bs_radius: 14, z2_radius: 14, grid_max: 10_000, random_pairs: 100_000, seed: 0 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: u32,
    pub claim: String,
    #[serde(flatten)]
    pub status: Status,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.status {
            Status::Pass => write!(f, "[{:>2}] pass    {}: {}", self.id, self.claim, self.detail),
            Status::Fail(r) => write!(f, "[{:>2}] FAIL    {}: {r}; {}", self.id, self.claim, self.detail),
            Status::Skipped(r) => write!(f, "[{:>2}] skipped {}: {r}", self.id, self.claim),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn failures(&self) -> usize {
        self.checks.iter().filter(|c| matches!(c.status, Status::Fail(_))).count()
    }
}

struct Outcome {
    status: Status,
    detail: String,
}

fn verdict(ok: bool, detail: String, why: &str) -> Outcome {
    Outcome { status: if ok { Status::Pass } else { Status::Fail(why.to_string()) }, detail }
}

fn skipped(have: u32, need: u32) -> Outcome {
    Outcome { status: Status::Skipped(format!("insufficient radius ({have} < {need})")), detail: String::new() }
}

/// `x^n y^n x^{-n} y^{-n}` for `0 ≤ q ≤ n`: `x^q y^n x^{-q} y^{-n} z^r` spells
/// `z^{qn+r}`.
pub fn heisenberg_word(g: &HeisenbergGroup<i64>, q: i64, n: i64, r: i64) -> Vec<usize> {
    let text = format!("x^{q} y^{n} x^{} y^{} z^{r}", -q, -n);
    g.parse_word(&text).expect("generators x, y, z")
}

/// Binary Horner word for `a^k`, `k ≥ 0`:
/// `a^{c₀} b⁻¹ a^{c₁} b⁻¹ ⋯ a^{c_{n−1}} b^{n−1}` with `k = Σ cᵢ 2ⁱ`.
pub fn bs_horner_word(g: &Bs1p, k: u64) -> Vec<usize> {
    let p = g.p() as u64;
    let mut digits = Vec::new();
    let mut rest = k;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    let mut parts = Vec::new();
    for (i, c) in digits.iter().enumerate() {
        if i > 0 {
            parts.push("b^-1".to_string());
        }
        if *c > 0 {
            parts.push(format!("a^{c}"));
        }
    }
    if digits.len() > 1 {
        parts.push(format!("b^{}", digits.len() - 1));
    }
    g.parse_word(&parts.join(" ")).expect("generators a, b")
}

fn heis_ball(cfg: &SuiteConfig, need: u32) -> Option<Ball<HeisenbergGroup<i64>>> {
    (cfg.heisenberg_radius >= need).then(|| enumerate_ball(HeisenbergGroup::new(), need, DEFAULT_NODE_CAP).expect("small ball"))
}

fn bs_ball(cfg: &SuiteConfig, need: u32) -> Option<Ball<Bs1p>> {
    (cfg.bs_radius >= need).then(|| enumerate_ball(Bs1p::new(2).expect("p = 2"), need, DEFAULT_NODE_CAP).expect("small ball"))
}

fn check1(cfg: &SuiteConfig) -> Result<Outcome> {
    let g = HeisenbergGroup::<i64>::new();
    let Some(ball) = heis_ball(cfg, 10) else { return Ok(skipped(cfg.heisenberg_radius, 10)) };
    let sub = heisenberg_center(&g);
    let mut ok = true;
    let mut deltas = Vec::new();
    for n in 1..=10u32 {
        let d = delta(&ball, &sub, n)?;
        ok &= d.is_exact() && d.value <= (n * n) as u64;
        deltas.push(d.value);
    }
    for n in 1..=4i64 {
        let w = heisenberg_word(&g, n, n, 0);
        ok &= w.len() as i64 <= 4 * n && g.eval_word(&w) == g.central(n * n);
    }
    Ok(verdict(ok, format!("Δ(1..10) = {deltas:?}; commutator words of length 4n"), "bound exceeded"))
}

fn check2(_: &SuiteConfig) -> Result<Outcome> {
    let g = HeisenbergGroup::<i64>::new();
    let mut ok = true;
    let mut longest = 0;
    for n in 1..=8i64 {
        for m in 0..=n * n {
            let w = heisenberg_word(&g, m / n, n, m % n);
            let w = if m / n == 0 { g.parse_word(&format!("z^{m}")).expect("z") } else { w };
            ok &= w.len() as i64 <= 6 * n && g.eval_word(&w) == g.central(m);
            longest = longest.max(w.len());
        }
    }
    Ok(verdict(ok, format!("explicit words, longest {longest}"), "word too long"))
}

fn check3(_: &SuiteConfig) -> Result<Outcome> {
    let g = Bs1p::new(2)?;
    let mut ok = true;
    for n in 1..=8i64 {
        let w = g.parse_word(&format!("b^{} a b^{n}", -n)).expect("a, b");
        ok &= w.len() as i64 == 2 * n + 1 && g.eval_word(&w) == BsElem::translation(1i64 << n);
    }
    for n in 1..=6u32 {
        for k in 0..(1u64 << n) {
            let w = bs_horner_word(&g, k);
            ok &= w.len() as u32 <= 3 * n && g.eval_word(&w).as_a_power() == Some(&BigInt::from(k));
        }
    }
    Ok(verdict(ok, "b^-n a b^n and binary Horner words".into(), "word check failed"))
}

fn check4(cfg: &SuiteConfig) -> Result<Outcome> {
    let (Some(hb), Some(bb)) = (heis_ball(cfg, cfg.heisenberg_radius.max(4)), bs_ball(cfg, 10)) else {
        return Ok(skipped(cfg.heisenberg_radius.min(cfg.bs_radius), 10));
    };
    let g = HeisenbergGroup::<i64>::new();
    let hc = heisenberg_center(&g);
    let h: Vec<u64> =
        (1..=hb.radius() / 4).map(|i| mu(&hb, &hc, i, 4 * i, DEFAULT_SEARCH_CAP).map(|e| e.value)).collect::<Result<_>>()?;
    let b = Bs1p::new(2)?;
    let ba = bs_gen_a(&b);
    let s: Vec<u64> = (2..=5).map(|i| mu(&bb, &ba, i, 2 * i, DEFAULT_SEARCH_CAP).map(|e| e.value)).collect::<Result<_>>()?;
    let ok = h.iter().all(|&v| v <= 16) && s.windows(2).all(|w| w[0] < w[1]);
    Ok(verdict(ok, format!("Heisenberg μ(i,4i) = {h:?}; BS μ(i,2i), i=2..5 = {s:?}"), "dichotomy not seen"))
}

fn sandwich_holds<G: Group>(ball: &Ball<G>, sub: &MarkedSubgroup<G::Elem>, ms: u32, ns: u32) -> Result<(bool, usize)> {
    let table = distortion_table(ball, sub, 1..=ns.max(ms), DEFAULT_SEARCH_CAP)?;
    let mt = mu_table(ball, sub, &grid(1..=ms, 1..=ns), DEFAULT_SEARCH_CAP)?;
    let rep = check_sandwich(&table, &mt);
    Ok((rep.all_hold(), rep.cells.len()))
}

fn check5(cfg: &SuiteConfig) -> Result<Outcome> {
    let (Some(hb), Some(bb)) = (heis_ball(cfg, 11), bs_ball(cfg, 11)) else {
        return Ok(skipped(cfg.heisenberg_radius.min(cfg.bs_radius), 11));
    };
    let g = HeisenbergGroup::<i64>::new();
    let (a, na) = sandwich_holds(&hb, &heisenberg_center(&g), 10, 10)?;
    let b = Bs1p::new(2)?;
    let (c, nc) = sandwich_holds(&bb, &bs_gen_a(&b), 10, 10)?;
    let small = enumerate_ball(g.clone(), 6, DEFAULT_NODE_CAP)?;
    let (d, nd) = sandwich_holds(&small, &MarkedSubgroup::whole(&g), 5, 5)?;
    Ok(verdict(a && c && d, format!("{} cells", na + nc + nd), "sandwich violated"))
}

fn check6(cfg: &SuiteConfig) -> Result<Outcome> {
    let (Some(hb), Some(bb)) = (heis_ball(cfg, 12), bs_ball(cfg, 12)) else {
        return Ok(skipped(cfg.heisenberg_radius.min(cfg.bs_radius), 12));
    };
    let cells = grid(1..=6, 1..=6);
    let mut compared = 0;
    let mut ok = true;
    let g = HeisenbergGroup::<i64>::new();
    let hc = heisenberg_center(&g);
    for (m, n, v) in nu_grid(&induced_space(&hb, &hc, 6, 6)?, &cells)? {
        if v.exactness.is_exact() {
            compared += 1;
            ok &= v.value == mu(&hb, &hc, m, n, DEFAULT_SEARCH_CAP)?.value;
        }
    }
    let b = Bs1p::new(2)?;
    let ba = bs_gen_a(&b);
    for (m, n, v) in nu_grid(&induced_space(&bb, &ba, 6, 6)?, &cells)? {
        if v.exactness.is_exact() {
            compared += 1;
            ok &= v.value == mu(&bb, &ba, m, n, DEFAULT_SEARCH_CAP)?.value;
        }
    }
    Ok(verdict(ok, format!("{compared} exact cells compared"), "ν ≠ μ"))
}

fn check7(cfg: &SuiteConfig) -> Result<Outcome> {
    let f = |r| SourceFamily::Sqrt.eval(r);
    let ell = build_ell(&f, "sqrt", 4, cfg.grid_max)?;
    let cert = certify(&ell, &f, cfg.grid_max, cfg.random_pairs, cfg.seed);
    Ok(verdict(
        cert.holds(4),
        format!("breakpoints {:?}, {} plateaus", ell.breakpoints, cert.plateaus.len()),
        "certificate failed",
    ))
}

fn check8(cfg: &SuiteConfig) -> Result<Outcome> {
    let line = AbstractDistortedLine::new(power_length(2)?);
    let mut ok = (1..=200).all(|m| line.delta(m).ok() == Some(m * m));
    let mut worst = 0;
    for i in 1..=50 {
        let v = line.mu(i, 4 * i)?;
        worst = worst.max(v);
        ok &= v <= 16;
    }
    let f = |r| SourceFamily::Sqrt.eval(r);
    let sq = AbstractDistortedLine::new(build_ell(&f, "sqrt", 4, cfg.grid_max)?);
    let w = plateau_witnesses(&sq)?;
    ok &= !w.is_empty() && w.iter().all(|x| x.mu >= x.k as u64);
    let mus: Vec<u64> = w.iter().map(|x| x.mu).collect();
    Ok(verdict(ok, format!("max μ(i,4i) = {worst}; plateau μ = {mus:?}"), "dichotomy not seen"))
}

fn check9(cfg: &SuiteConfig) -> Result<Outcome> {
    // the k = 6 staircase has points 13 apart
    if cfg.z2_radius < 13 {
        return Ok(skipped(cfg.z2_radius, 13));
    }
    let g = FreeAbelianGroup::<i64>::new(2)?;
    let ball = enumerate_ball(g.clone(), 13, DEFAULT_NODE_CAP)?;
    let ns: Vec<u32> = (1..=12).collect();
    let diag = quasiconvexity_report(&ball, &free_abelian_cyclic(&g, "diagonal", vec![1, 1]), &ns, 8)?;
    let axis_sub = free_abelian_cyclic(&g, "axis", vec![1, 0]);
    let axis = quasiconvexity_report(&ball, &axis_sub, &ns, 8)?;
    let mut ok = (1..=6u32).all(|k| diag.rows.iter().any(|r| r.n == 2 * k && r.m >= k as u64));
    ok &= axis.rows.iter().all(|r| r.m == 0);
    let three = QcParam::from_integer(3);
    let zero = QcParam::from_integer(0);
    for k in 1..=6i64 {
        let path = staircase(&g, k);
        ok &= verify_witness_path(&ball, &axis_sub, &path, three, zero, 8)? >= Some(k as u64);
    }
    let ms: Vec<u64> = diag.rows.iter().map(|r| r.m).collect();
    Ok(verdict(ok, format!("diagonal M(1..12) = {ms:?}"), "excursion profile wrong"))
}

/// `(0,0) → (k,k) → (2k,0)` by unit staircases.
pub fn staircase(g: &FreeAbelianGroup<i64>, k: i64) -> Vec<Vec<i64>> {
    let mut path = vec![g.element(&[0, 0])];
    for i in 0..k {
        path.push(g.element(&[i + 1, i]));
        path.push(g.element(&[i + 1, i + 1]));
    }
    for i in 0..k {
        path.push(g.element(&[k + i + 1, k - i]));
        path.push(g.element(&[k + i + 1, k - i - 1]));
    }
    path
}

fn closure_matches<G: Group>(g: G, r: u32) -> Result<bool> {
    let closure = word_closure_lengths(&g, r);
    let ball = enumerate_ball(g, r, DEFAULT_NODE_CAP)?;
    Ok(ball.len() == closure.len() && ball.iter().all(|(e, l)| closure.get(e) == Some(&l)))
}

fn oracle_grid<G: Group>(g: G, sub: &MarkedSubgroup<G::Elem>) -> Result<bool> {
    let ball = enumerate_ball(g, 4, DEFAULT_NODE_CAP)?;
    for m in 1..=4 {
        for n in 1..=4 {
            let a = mu(&ball, sub, m, n, DEFAULT_SEARCH_CAP);
            let b = mu_closure(&ball, sub, m, n, DEFAULT_SEARCH_CAP);
            match (a, b) {
                (Ok(a), Ok(b)) if a.value == b.value => {}
                (Err(a), Err(b)) if a == b => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}

fn check10(_: &SuiteConfig) -> Result<Outcome> {
    let h = HeisenbergGroup::<i64>::new();
    let b = Bs1p::new(2)?;
    let z2 = FreeAbelianGroup::<i64>::new(2)?;
    let z = FreeAbelianGroup::<i64>::new(1)?;
    let zb = Product::new(z.clone(), b.clone());
    let mut ok = oracle_grid(h.clone(), &heisenberg_center(&h))?;
    ok &= oracle_grid(b.clone(), &bs_gen_a(&b))?;
    ok &= oracle_grid(z2.clone(), &free_abelian_cyclic(&z2, "diagonal", vec![1, 1]))?;
    ok &= oracle_grid(z2.clone(), &free_abelian_cyclic(&z2, "axis", vec![1, 0]))?;
    ok &= oracle_grid(zb.clone(), &product_subgroup(&zb, free_abelian_whole(&z), bs_gen_a(&b))?)?;
    let builtins = ["heisenberg", "bs1p:2", "bs1p:3", "free-abelian:2", "free:2", "product(free-abelian:1, bs1p:2)"];
    for id in builtins {
        ok &= closure_matches(AnyGroup::parse(id)?, 4)?;
    }
    Ok(verdict(ok, format!("5 subgroup pairs, {} builtins", builtins.len()), "oracle mismatch"))
}

const CLAIMS: [&str; 10] = [
    "Heisenberg centre: Δ(n) ≤ n², |z^(n²)| ≤ 4n",
    "Heisenberg centre: |z^m| ≤ 6n for m ≤ n²",
    "BS(1,2): |a^(2^n)| ≤ 2n+1, |a^k| ≤ 3n for k < 2^n",
    "μ(i,4i) bounded for the centre, μ(i,2i) increasing in BS(1,2)",
    "pointwise sandwich on exact cells",
    "ν on the induced subgroup equals μ",
    "length builder certificates for ⌈√r⌉",
    "power line bounded, plateau line unbounded",
    "quasi-convexity probes in ℤ²",
    "closure search agrees with coin search and ball lengths",
];

pub fn run_suite(cfg: &SuiteConfig) -> SuiteReport {
    let runners: [fn(&SuiteConfig) -> Result<Outcome>; 10] =
        [check1, check2, check3, check4, check5, check6, check7, check8, check9, check10];
    let checks = runners
        .iter()
        .zip(CLAIMS)
        .enumerate()
        .map(|(i, (run, claim))| {
            let out = run(cfg).unwrap_or_else(|e| Outcome { status: Status::Fail(e.to_string()), detail: String::new() });
            Check { id: i as u32 + 1, claim: claim.to_string(), status: out.status, detail: out.detail }
        })
        .collect();
    SuiteReport { checks }
}
