//! Runtime-selected group models, addressed by identifier strings such as
//! `heisenberg`, `bs1p:2`, `free-abelian:2`, `free:2` or
//! `product(free-abelian:1, bs1p:2)`.

use crate::error::{Error, Result};

use super::subgroup::{bs_gen_a, free_abelian_cyclic, free_abelian_whole, heisenberg_center, product_subgroup};
use super::{
    Bs1p, BsElem, FreeAbelianGroup, FreeGroup, FreeWord, Generator, Group, HeisenbergElem, HeisenbergGroup,
    MarkedSubgroup, Product,
};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AnyElem {
    Heisenberg(HeisenbergElem<i64>),
    Bs(BsElem),
    Vector(Vec<i64>),
    Word(FreeWord),
    Pair(Box<(AnyElem, AnyElem)>),
}

#[derive(Debug, Clone)]
enum Kind {
    Heisenberg(HeisenbergGroup<i64>),
    Bs(Bs1p),
    FreeAbelian(FreeAbelianGroup<i64>),
    Free(FreeGroup),
    Product(Box<Product<AnyGroup, AnyGroup>>),
}

#[derive(Debug, Clone)]
pub struct AnyGroup {
    kind: Kind,
    gens: Vec<Generator<AnyElem>>,
}

fn lift<E>(gens: &[Generator<E>], f: impl Fn(&E) -> AnyElem) -> Vec<Generator<AnyElem>> {
    gens.iter().map(|g| Generator { name: g.name.clone(), elem: f(&g.elem), inverse: g.inverse }).collect()
}

/// Splits `a, b(c, d), e` at top-level commas.
fn split_args(s: &str) -> Vec<&str> {
    let (mut depth, mut start, mut out) = (0i32, 0usize, Vec::new());
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

fn parse_param(id: &str, text: Option<&str>, default: Option<u32>) -> Result<u32> {
    match (text, default) {
        (Some(t), _) => t
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter { group: id.into(), reason: format!("`{t}` is not a non-negative integer") }),
        (None, Some(d)) => Ok(d),
        (None, None) => Err(Error::InvalidParameter { group: id.into(), reason: "missing parameter".into() }),
    }
}

fn call_args(s: &str, head: &str) -> Option<Vec<String>> {
    let rest = s.strip_prefix(head)?.trim_start();
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    Some(split_args(inner).into_iter().map(str::to_string).collect())
}

impl AnyGroup {
    /// Builds a model from its name and integer parameters.
    pub fn builtin(name: &str, params: &[u32]) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidParameter { group: name.into(), reason: reason.into() };
        match name {
            "heisenberg" => {
                if !params.is_empty() {
                    return Err(bad("takes no parameters"));
                }
                Ok(Self::heisenberg(HeisenbergGroup::new()))
            }
            "bs1p" => match params {
                [p] => Ok(Self::bs(Bs1p::new(*p)?)),
                _ => Err(bad("expects exactly one parameter p ≥ 2")),
            },
            "free-abelian" => match params {
                [n] => Ok(Self::free_abelian(FreeAbelianGroup::new(*n as usize)?)),
                _ => Err(bad("expects exactly one rank parameter")),
            },
            "free" => match params {
                [k] => Ok(Self::free(FreeGroup::new(*k as usize)?)),
                _ => Err(bad("expects exactly one rank parameter")),
            },
            other => Err(Error::UnknownGroup(other.to_string())),
        }
    }

    /// Parses a group identifier.
    pub fn parse(id: &str) -> Result<Self> {
        let id = id.trim();
        if let Some(args) = call_args(id, "product") {
            let [l, r] = args.as_slice() else {
                return Err(Error::InvalidParameter { group: id.into(), reason: "product takes two factors".into() });
            };
            return Ok(Self::product(Self::parse(l)?, Self::parse(r)?));
        }
        let (name, param) = match id.split_once(':') {
            Some((n, p)) => (n.trim(), Some(p)),
            None => (id, None),
        };
        match name {
            "heisenberg" if param.is_none() => Self::builtin(name, &[]),
            "heisenberg" => Err(Error::InvalidParameter { group: id.into(), reason: "takes no parameters".into() }),
            "bs1p" => Self::builtin(name, &[parse_param(id, param, None)?]),
            "free-abelian" | "free" => Self::builtin(name, &[parse_param(id, param, Some(2))?]),
            _ => Err(Error::UnknownGroup(id.to_string())),
        }
    }

    pub fn heisenberg(g: HeisenbergGroup<i64>) -> Self {
        let gens = lift(g.generators(), |e| AnyElem::Heisenberg(e.clone()));
        Self { kind: Kind::Heisenberg(g), gens }
    }

    pub fn bs(g: Bs1p) -> Self {
        let gens = lift(g.generators(), |e| AnyElem::Bs(e.clone()));
        Self { kind: Kind::Bs(g), gens }
    }

    pub fn free_abelian(g: FreeAbelianGroup<i64>) -> Self {
        let gens = lift(g.generators(), |e| AnyElem::Vector(e.clone()));
        Self { kind: Kind::FreeAbelian(g), gens }
    }

    pub fn free(g: FreeGroup) -> Self {
        let gens = lift(g.generators(), |e| AnyElem::Word(e.clone()));
        Self { kind: Kind::Free(g), gens }
    }

    pub fn product(left: AnyGroup, right: AnyGroup) -> Self {
        let p = Product::new(left, right);
        let gens = lift(p.generators(), |(a, b)| AnyElem::Pair(Box::new((a.clone(), b.clone()))));
        Self { kind: Kind::Product(Box::new(p)), gens }
    }

    /// Resolves a subgroup identifier against this ambient group.
    ///
    /// Supported: `whole`, `center` (Heisenberg), `gen-a` (BS(1,p) and
    /// free abelian), `diagonal` (free abelian), `product(S1, S2)` and its
    /// alias `product-left` = `product(whole, gen-a)`.
    pub fn subgroup(&self, id: &str) -> Result<MarkedSubgroup<AnyElem>> {
        let id = id.trim();
        let unsupported = || Error::UnsupportedSubgroup { group: self.name(), subgroup: id.to_string() };
        let name = self.name();
        match (&self.kind, id) {
            (Kind::Heisenberg(g), "center") => Ok(heisenberg_center(g).map(
                name,
                |e: &AnyElem| match e {
                    AnyElem::Heisenberg(h) => Some(h.clone()),
                    _ => None,
                },
                AnyElem::Heisenberg,
            )),
            (Kind::Bs(g), "gen-a") => Ok(bs_gen_a(g).map(
                name,
                |e: &AnyElem| match e {
                    AnyElem::Bs(h) => Some(h.clone()),
                    _ => None,
                },
                AnyElem::Bs,
            )),
            (Kind::FreeAbelian(g), "gen-a" | "diagonal" | "whole") => {
                let sub = match id {
                    "gen-a" => {
                        let mut dir = vec![0; g.rank()];
                        dir[0] = 1;
                        free_abelian_cyclic(g, "gen-a", dir)
                    }
                    "diagonal" if g.rank() >= 2 => free_abelian_cyclic(g, "diagonal", vec![1; g.rank()]),
                    "whole" => free_abelian_whole(g),
                    _ => return Err(unsupported()),
                };
                Ok(sub.map(
                    name,
                    |e: &AnyElem| match e {
                        AnyElem::Vector(v) => Some(v.clone()),
                        _ => None,
                    },
                    AnyElem::Vector,
                ))
            }
            (Kind::Product(p), _) => {
                let args = if id == "product-left" {
                    vec!["whole".to_string(), "gen-a".to_string()]
                } else if id == "whole" {
                    match self.subgroup("product(whole, whole)") {
                        Ok(s) => return Ok(s),
                        Err(_) => return Ok(MarkedSubgroup::whole(self)),
                    }
                } else {
                    call_args(id, "product").filter(|a| a.len() == 2).ok_or_else(unsupported)?
                };
                let left = p.left().subgroup(&args[0])?;
                let right = p.right().subgroup(&args[1])?;
                let sub = product_subgroup(p.as_ref(), left, right)?;
                Ok(sub.map(
                    name,
                    |e: &AnyElem| match e {
                        AnyElem::Pair(pair) => Some((pair.0.clone(), pair.1.clone())),
                        _ => None,
                    },
                    |(a, b)| AnyElem::Pair(Box::new((a, b))),
                ))
            }
            (_, "whole") => Ok(MarkedSubgroup::whole(self)),
            _ => Err(unsupported()),
        }
    }
}

macro_rules! unwrap_elem {
    ($e:expr, $variant:ident) => {
        match $e {
            AnyElem::$variant(x) => x,
            other => panic!("element {other:?} does not belong to this group"),
        }
    };
}

impl Group for AnyGroup {
    type Elem = AnyElem;

    fn name(&self) -> String {
        match &self.kind {
            Kind::Heisenberg(g) => g.name(),
            Kind::Bs(g) => g.name(),
            Kind::FreeAbelian(g) => g.name(),
            Kind::Free(g) => g.name(),
            Kind::Product(p) => p.name(),
        }
    }

    fn identity(&self) -> AnyElem {
        match &self.kind {
            Kind::Heisenberg(g) => AnyElem::Heisenberg(g.identity()),
            Kind::Bs(g) => AnyElem::Bs(g.identity()),
            Kind::FreeAbelian(g) => AnyElem::Vector(g.identity()),
            Kind::Free(g) => AnyElem::Word(g.identity()),
            Kind::Product(p) => {
                let (a, b) = p.identity();
                AnyElem::Pair(Box::new((a, b)))
            }
        }
    }

    fn mul(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match &self.kind {
            Kind::Heisenberg(g) => AnyElem::Heisenberg(g.mul(unwrap_elem!(a, Heisenberg), unwrap_elem!(b, Heisenberg))),
            Kind::Bs(g) => AnyElem::Bs(g.mul(unwrap_elem!(a, Bs), unwrap_elem!(b, Bs))),
            Kind::FreeAbelian(g) => AnyElem::Vector(g.mul(unwrap_elem!(a, Vector), unwrap_elem!(b, Vector))),
            Kind::Free(g) => AnyElem::Word(g.mul(unwrap_elem!(a, Word), unwrap_elem!(b, Word))),
            Kind::Product(p) => {
                let (x, y) = (unwrap_elem!(a, Pair), unwrap_elem!(b, Pair));
                let l = p.left().mul(&x.0, &y.0);
                let r = p.right().mul(&x.1, &y.1);
                AnyElem::Pair(Box::new((l, r)))
            }
        }
    }

    fn inv(&self, a: &AnyElem) -> AnyElem {
        match &self.kind {
            Kind::Heisenberg(g) => AnyElem::Heisenberg(g.inv(unwrap_elem!(a, Heisenberg))),
            Kind::Bs(g) => AnyElem::Bs(g.inv(unwrap_elem!(a, Bs))),
            Kind::FreeAbelian(g) => AnyElem::Vector(g.inv(unwrap_elem!(a, Vector))),
            Kind::Free(g) => AnyElem::Word(g.inv(unwrap_elem!(a, Word))),
            Kind::Product(p) => {
                let x = unwrap_elem!(a, Pair);
                AnyElem::Pair(Box::new((p.left().inv(&x.0), p.right().inv(&x.1))))
            }
        }
    }

    fn generators(&self) -> &[Generator<AnyElem>] {
        &self.gens
    }
}
