use anyhow::{anyhow, Context as _, Result};
use serde_json::{json, Value};

use subdist::cayley::Ball;
use subdist::distortion::{
    check_sandwich, delta, distortion_table, fit_report, grid, mu_ratio_probe, mu_table, nabla, Entry,
};
use subdist::group::{AnyElem, AnyGroup, Group, MarkedSubgroup};
use subdist::length::{build_ell, certify, plateau_witnesses, AbstractDistortedLine, LengthRule, SourceFamily};
use subdist::qc::{quasi_geodesic_excursion, quasiconvexity_report};
use subdist::rpath::{induced_space_with_points, nu_grid};
use subdist::suite::{run_suite, Status, SuiteConfig};
use subdist::Exactness;

use crate::config::{parse_param, Op, Range};
use crate::output::Table;

pub struct Context<'a> {
    pub ball: Option<&'a Ball<AnyGroup>>,
    pub sub: Option<&'a MarkedSubgroup<AnyElem>>,
    pub search_cap: usize,
    pub seed: u64,
}

/// A shortest word for `e` in `x^k` run notation, or `e` for the identity.
pub fn word(ball: &Ball<AnyGroup>, e: &AnyElem) -> String {
    let Some(w) = ball.geodesic_word(e) else { return String::new() };
    if w.is_empty() {
        return "e".into();
    }
    let gens = ball.group().generators();
    let mut parts: Vec<(String, i64)> = Vec::new();
    for i in w {
        let name = &gens[i].name;
        let (base, sign) = match name.strip_suffix("^-1") {
            Some(b) => (b.to_string(), -1),
            None => (name.clone(), 1),
        };
        match parts.last_mut() {
            Some((b, k)) if *b == base && k.signum() == sign => *k += sign,
            _ => parts.push((base, sign)),
        }
    }
    parts.into_iter().map(|(b, k)| if k == 1 { b } else { format!("{b}^{k}") }).collect::<Vec<_>>().join(" ")
}

fn flag(e: Exactness) -> Value {
    json!(e.as_str())
}

fn entry_row(ball: &Ball<AnyGroup>, m: Option<u32>, n: u32, e: &Entry<AnyElem>) -> Vec<Value> {
    vec![json!(m), json!(n), json!(e.value), flag(e.exactness), json!(e.witness.as_ref().map(|w| word(ball, w)))]
}

const ENTRY_COLUMNS: &[&str] = &["m", "n", "value", "exactness_flag", "witness"];

fn values(r: &Range) -> Result<Vec<u32>> {
    r.values()
}

pub fn run_op(op: &Op, cx: &Context) -> Result<Vec<Table>> {
    let ball = || cx.ball.ok_or_else(|| anyhow!("op `{}` needs a group", op.name()));
    let sub = || cx.sub.ok_or_else(|| anyhow!("op `{}` needs a subgroup", op.name()));
    let cap = cx.search_cap;
    let mut tables = Vec::new();
    match op {
        Op::Ball => {
            let mut t = Table::new("ball", &["radius", "sphere_size", "cumulative_size", "exactness_flag"]);
            for r in ball()?.growth_rows() {
                t.push(vec![json!(r.radius), json!(r.sphere_size), json!(r.cumulative_size), flag(Exactness::Exact)]);
            }
            tables.push(t);
        }
        Op::Delta { n } => {
            let (b, s) = (ball()?, sub()?);
            let mut t = Table::new("delta", ENTRY_COLUMNS);
            for n in values(n)? {
                t.push(entry_row(b, None, n, &delta(b, s, n)?));
            }
            tables.push(t);
        }
        Op::Nabla { n } => {
            let (b, s) = (ball()?, sub()?);
            let mut t = Table::new("nabla", ENTRY_COLUMNS);
            for n in values(n)? {
                t.push(entry_row(b, None, n, &nabla(b, s, n, cap)?));
            }
            tables.push(t);
        }
        Op::Mu { m, n } => {
            let (b, s) = (ball()?, sub()?);
            let mt = mu_table(b, s, &grid(values(m)?, values(n)?), cap)?;
            let mut t = Table::new("mu", ENTRY_COLUMNS);
            for ((m, n), e) in &mt.cells {
                t.push(entry_row(b, Some(*m), *n, e));
            }
            for (m, n) in &mt.undefined {
                t.push(vec![json!(m), json!(n), Value::Null, json!("undefined"), Value::Null]);
            }
            tables.push(t);
        }
        Op::Sandwich { m, n } => {
            let (b, s) = (ball()?, sub()?);
            let (ms, ns) = (values(m)?, values(n)?);
            let mut all: Vec<u32> = ms.iter().chain(&ns).copied().collect();
            all.sort_unstable();
            all.dedup();
            let table = distortion_table(b, s, all, cap)?;
            let mt = mu_table(b, s, &grid(ms, ns), cap)?;
            let rep = check_sandwich(&table, &mt);
            let mut t = Table::new("sandwich", &["m", "n", "lower", "mu", "upper", "holds", "exactness_flag"]);
            for c in &rep.cells {
                let e = mt.get(c.m, c.n).map_or(Exactness::Exact, |e| e.exactness);
                t.push(vec![json!(c.m), json!(c.n), json!(c.lower), json!(c.mu), json!(c.upper), json!(c.holds), flag(e)]);
            }
            tables.push(t);
        }
        Op::Ratio { c, i } => {
            let (b, s) = (ball()?, sub()?);
            let probe = mu_ratio_probe(b, s, *c, values(i)?, cap)?;
            let mut t = Table::new("ratio", &["i", "m", "n", "value", "exactness_flag"]);
            for (i, v, e) in &probe.rows {
                t.push(vec![json!(i), json!(i), json!(c * i), json!(v), flag(*e)]);
            }
            tables.push(t);
        }
        Op::Fit { n } => {
            let (b, s) = (ball()?, sub()?);
            let samples: Vec<(f64, f64)> =
                values(n)?.into_iter().map(|n| Ok((n as f64, delta(b, s, n)?.value as f64))).collect::<Result<_>>()?;
            let f = fit_report(&samples)?;
            let mut t = Table::new("fit", &["points", "degree", "degree_residual", "log_base", "base", "base_residual"]);
            t.push(vec![
                json!(f.points),
                json!(f.degree),
                json!(f.degree_residual),
                json!(f.log_base),
                json!(f.base),
                json!(f.base_residual),
            ]);
            tables.push(t);
        }
        Op::Nu { m, n, truncation, slack } => {
            let (b, s) = (ball()?, sub()?);
            let (space, points) = induced_space_with_points(b, s, *truncation, *slack)?;
            let mut t = Table::new("nu", &["m", "n", "value", "exactness_flag", "witness", "unreachable"]);
            for (m, n, v) in nu_grid(&space, &grid(values(m)?, values(n)?))? {
                t.push(vec![
                    json!(m),
                    json!(n),
                    json!(v.value),
                    flag(v.exactness),
                    json!(word(b, &points[v.witness])),
                    json!(v.unreachable.len()),
                ]);
            }
            tables.push(t);
        }
        Op::Qc { n, d_cap, lambda, c, path_cap } => {
            let (b, s) = (ball()?, sub()?);
            let ns = values(n)?;
            let rep = quasiconvexity_report(b, s, &ns, *d_cap)?;
            let mut t = Table::new("qc", &["n", "M", "exactness_flag", "targets"]);
            for r in &rep.rows {
                t.push(vec![json!(r.n), json!(r.m), flag(r.exactness), json!(r.targets)]);
            }
            tables.push(t);
            if lambda.is_some() {
                let (l, cc) = (parse_param(lambda, 1)?, parse_param(c, 0)?);
                let top = *ns.iter().max().expect("non-empty");
                let mut q = Table::new(
                    "quasi-geodesic",
                    &["target", "length", "excursion", "exactness_flag", "explored", "complete"],
                );
                let e = b.group().identity();
                for ex in rep.excursions.iter().filter(|x| x.length <= top) {
                    let r = quasi_geodesic_excursion(b, s, l, cc, &e, &ex.target, *path_cap, *d_cap, cx.seed)?;
                    q.push(vec![
                        json!(word(b, &ex.target)),
                        json!(ex.length),
                        json!(r.value),
                        flag(if r.complete && r.value <= *d_cap as u64 { Exactness::Exact } else { Exactness::LowerBound }),
                        json!(r.explored),
                        json!(r.complete),
                    ]);
                }
                tables.push(q);
            }
        }
        Op::DesignEll { family, k_max, grid_max, random_pairs } => {
            let fam = SourceFamily::parse(family)?;
            let f = move |r| fam.eval(r);
            let ell = build_ell(&f, &fam.name(), *k_max, *grid_max)?;
            let cert = certify(&ell, &f, *grid_max, *random_pairs, cx.seed);
            let line = AbstractDistortedLine::new(ell.clone());
            let witnesses = plateau_witnesses(&line)?;
            let LengthRule::Table(values) = &ell.rule else { unreachable!("builder tabulates") };
            let mut t = Table::new("ell", &["z", "ell", "f", "exactness_flag"]);
            for (z, l) in values.iter().enumerate() {
                t.push(vec![json!(z), json!(l), json!(if z == 0 { 0 } else { f(z as u64) }), flag(Exactness::Exact)]);
            }
            let mut p = Table::new("plateaus", &["k", "p_k", "plateau_end", "ell_p_k", "m", "mu", "exactness_flag"]);
            for (w, (_, _, end)) in witnesses.iter().zip(&cert.plateaus) {
                p.push(vec![json!(w.k), json!(w.p_k), json!(end), json!(w.n), json!(w.m), json!(w.mu), flag(Exactness::Exact)]);
            }
            let mut c = Table::new("certificate", &["property", "checked", "failures", "holds"]);
            c.push(vec![
                json!("subadditivity"),
                json!(format!("exhaustive to {}, {} random pairs to {}", cert.exhaustive_limit, cert.random_pairs, cert.grid_max)),
                json!(cert.subadditivity_failures.len()),
                json!(cert.subadditivity_failures.is_empty()),
            ]);
            c.push(vec![
                json!("domination"),
                json!(format!("1..={}", cert.grid_max)),
                json!(cert.domination_failures.len()),
                json!(cert.domination_failures.is_empty()),
            ]);
            c.push(vec![
                json!("plateaus"),
                json!(format!("k = 1..={k_max}")),
                json!(*k_max as usize - cert.plateaus.len().min(*k_max as usize)),
                json!(cert.plateaus.len() == *k_max as usize),
            ]);
            tables.extend([t, p, c]);
        }
        Op::PaperSuite { heisenberg_radius, bs_radius, z2_radius } => {
            let d = SuiteConfig::default();
            let cfg = SuiteConfig {
                heisenberg_radius: heisenberg_radius.unwrap_or(d.heisenberg_radius),
                bs_radius: bs_radius.unwrap_or(d.bs_radius),
                z2_radius: z2_radius.unwrap_or(d.z2_radius),
                seed: cx.seed,
                ..d
            };
            let rep = run_suite(&cfg);
            let mut t = Table::new("paper-suite", &["id", "claim", "status", "reason", "detail"]);
            for c in &rep.checks {
                let (status, reason) = match &c.status {
                    Status::Pass => ("pass", String::new()),
                    Status::Fail(r) => ("fail", r.clone()),
                    Status::Skipped(r) => ("skipped", r.clone()),
                };
                t.push(vec![json!(c.id), json!(c.claim), json!(status), json!(reason), json!(c.detail)]);
            }
            tables.push(t);
        }
    }
    Ok(tables)
}

/// Resolves the group and subgroup named by a config.
pub fn resolve(group: &str, subgroup: Option<&str>) -> Result<(AnyGroup, Option<MarkedSubgroup<AnyElem>>)> {
    let g = AnyGroup::parse(group).with_context(|| format!("group `{group}`"))?;
    let s = subgroup.map(|s| g.subgroup(s).with_context(|| format!("subgroup `{s}`"))).transpose()?;
    Ok((g, s))
}
