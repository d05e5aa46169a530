use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use subdist::qc::QcParam;

/// Integer list given either as a TOML array or as text: `5`, `1..8`
/// (inclusive) or `1,2,4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Range {
    List(Vec<u32>),
    Text(String),
}

impl Range {
    pub fn values(&self) -> Result<Vec<u32>> {
        let out = match self {
            Range::List(v) => v.clone(),
            Range::Text(t) => parse_range(t)?,
        };
        if out.is_empty() {
            bail!("empty range `{}`", self.text());
        }
        Ok(out)
    }

    fn text(&self) -> String {
        match self {
            Range::List(v) => format!("{v:?}"),
            Range::Text(t) => t.clone(),
        }
    }
}

pub fn parse_range(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: u32 = a.trim().parse().with_context(|| format!("bad range start in `{part}`"))?;
            let b: u32 = b.trim().trim_start_matches('=').parse().with_context(|| format!("bad range end in `{part}`"))?;
            if a > b {
                bail!("range `{part}` is empty");
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().with_context(|| format!("`{part}` is not a non-negative integer"))?);
        }
    }
    Ok(out)
}

/// Non-negative rational `a` or `a/b`; `default` when absent.
pub fn parse_param(text: &Option<String>, default: u64) -> Result<QcParam> {
    let Some(t) = text else { return Ok(QcParam::from_integer(default)) };
    let (a, b) = t.split_once('/').unwrap_or((t, "1"));
    let (a, b): (u64, u64) = (
        a.trim().parse().with_context(|| format!("bad rational `{t}`"))?,
        b.trim().parse().with_context(|| format!("bad rational `{t}`"))?,
    );
    if b == 0 {
        bail!("zero denominator in `{t}`");
    }
    Ok(QcParam::new(a, b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Op {
    Ball,
    Delta { n: Range },
    Nabla { n: Range },
    Mu { m: Range, n: Range },
    Sandwich { m: Range, n: Range },
    Ratio { c: u32, i: Range },
    Fit { n: Range },
    Nu { m: Range, n: Range, truncation: u32, slack: u32 },
    Qc {
        n: Range,
        d_cap: u32,
        /// `λ` as text, e.g. `3` or `3/2`; enables the quasi-geodesic search.
        #[serde(default)]
        lambda: Option<String>,
        #[serde(default)]
        c: Option<String>,
        #[serde(default = "default_path_cap")]
        path_cap: usize,
    },
    DesignEll {
        family: String,
        k_max: u32,
        grid_max: u64,
        #[serde(default = "default_random_pairs")]
        random_pairs: usize,
    },
    PaperSuite {
        #[serde(default)]
        heisenberg_radius: Option<u32>,
        #[serde(default)]
        bs_radius: Option<u32>,
        #[serde(default)]
        z2_radius: Option<u32>,
    },
}

fn default_path_cap() -> usize {
    100_000
}

fn default_random_pairs() -> usize {
    100_000
}

impl Op {
    pub fn name(&self) -> &'static str {
        match self {
            Op::Ball => "ball",
            Op::Delta { .. } => "delta",
            Op::Nabla { .. } => "nabla",
            Op::Mu { .. } => "mu",
            Op::Sandwich { .. } => "sandwich",
            Op::Ratio { .. } => "ratio",
            Op::Fit { .. } => "fit",
            Op::Nu { .. } => "nu",
            Op::Qc { .. } => "qc",
            Op::DesignEll { .. } => "design-ell",
            Op::PaperSuite { .. } => "paper-suite",
        }
    }

    /// Whether the op reads the group ball.
    pub fn needs_group(&self) -> bool {
        !matches!(self, Op::DesignEll { .. } | Op::PaperSuite { .. })
    }

    /// Whether the op also needs a subgroup.
    pub fn needs_subgroup(&self) -> bool {
        self.needs_group() && !matches!(self, Op::Ball)
    }

    /// Smallest ball radius the op can run on.
    pub fn radius_needed(&self) -> Result<u32> {
        let max = |r: &Range| -> Result<u32> { Ok(r.values()?.into_iter().max().unwrap_or(0)) };
        Ok(match self {
            Op::Ball | Op::DesignEll { .. } | Op::PaperSuite { .. } => 0,
            Op::Delta { n } | Op::Fit { n } => max(n)?,
            Op::Qc { n, lambda: None, .. } => max(n)?,
            // quasi-geodesic paths reach λ·(|h| + C) from the identity
            Op::Qc { n, lambda, c, .. } => {
                let reach = parse_param(lambda, 1)? * (QcParam::from_integer(max(n)? as u64) + parse_param(c, 0)?);
                reach.ceil().to_integer() as u32
            }
            Op::Nabla { n } => max(n)? + 1,
            Op::Mu { m, n } => max(m)?.max(max(n)?),
            Op::Sandwich { m, n } => max(m)?.max(max(n)?) + 1,
            Op::Ratio { c, i } => c * max(i)?,
            Op::Nu { m, n, truncation, slack } => {
                if max(n)? > *truncation {
                    bail!("nu: n = {} exceeds truncation {truncation}", max(n)?);
                }
                max(m)?.max(truncation + slack)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub group: Option<String>,
    #[serde(default)]
    pub subgroup: Option<String>,
    #[serde(default)]
    pub radius: Option<u32>,
    #[serde(default = "default_node_cap")]
    pub node_cap: usize,
    #[serde(default = "default_search_cap")]
    pub search_cap: usize,
    #[serde(default)]
    pub format: Format,
    /// Output directory; tables go to stdout when absent.
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, rename = "op")]
    pub ops: Vec<Op>,
}

fn default_node_cap() -> usize {
    subdist::cayley::DEFAULT_NODE_CAP
}

fn default_search_cap() -> usize {
    subdist::distortion::DEFAULT_SEARCH_CAP
}

impl RunConfig {
    pub fn new(ops: Vec<Op>) -> Self {
        Self {
            group: None,
            subgroup: None,
            radius: None,
            node_cap: default_node_cap(),
            search_cap: default_search_cap(),
            format: Format::Csv,
            output: None,
            seed: 0,
            ops,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| anyhow::anyhow!("config parse error: {e}"))?;
        Ok(cfg)
    }

    /// Checks the invariants that do not need the group itself.
    pub fn validate(&self) -> Result<()> {
        if self.ops.is_empty() {
            bail!("no operations requested");
        }
        let mut need = 0;
        for op in &self.ops {
            need = need.max(op.radius_needed().with_context(|| format!("op `{}`", op.name()))?);
            if op.needs_group() && self.group.is_none() {
                bail!("op `{}` needs `group`", op.name());
            }
            if op.needs_subgroup() && self.subgroup.is_none() {
                bail!("op `{}` needs `subgroup`", op.name());
            }
        }
        if self.ops.iter().any(Op::needs_group) {
            let Some(radius) = self.radius else { bail!("`radius` is required") };
            if radius < need {
                bail!("radius {radius} is smaller than the {need} some operation needs");
            }
        }
        Ok(())
    }
}
