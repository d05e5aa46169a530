use std::fmt;
use std::sync::Arc;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::scalar::ExactInt;

use super::{Bs1p, FreeAbelianGroup, Group, HeisenbergGroup, Product};

type CoordFn<E> = Arc<dyn Fn(&E) -> Option<Vec<i64>> + Send + Sync>;
type EmbedFn<E> = Arc<dyn Fn(&[i64]) -> E + Send + Sync>;

/// How the intrinsic word length `|h|_Y` of a subgroup is obtained.
#[derive(Clone)]
pub enum Intrinsic<E> {
    /// `H ≅ ℤʳ` with `Y` the standard basis, so `|h|_Y` is the ℓ¹ norm of
    /// the coordinates.
    Lattice { rank: usize, coords: CoordFn<E>, embed: EmbedFn<E> },
    /// `H = G` with `Y = X`; intrinsic lengths are ambient word lengths.
    Whole,
}

/// A subgroup `H ≤ G` with an exact membership test and a fixed generating set `Y`.
#[derive(Clone)]
pub struct MarkedSubgroup<E> {
    name: String,
    ambient: String,
    intrinsic: Intrinsic<E>,
}

impl<E> fmt::Debug for MarkedSubgroup<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match &self.intrinsic {
            Intrinsic::Lattice { rank, .. } => format!("lattice rank {rank}"),
            Intrinsic::Whole => "whole".to_string(),
        };
        f.debug_struct("MarkedSubgroup")
            .field("name", &self.name)
            .field("ambient", &self.ambient)
            .field("intrinsic", &shape)
            .finish()
    }
}

impl<E: Clone + 'static> MarkedSubgroup<E> {
    pub fn lattice<C, M>(name: impl Into<String>, ambient: impl Into<String>, rank: usize, coords: C, embed: M) -> Self
    where
        C: Fn(&E) -> Option<Vec<i64>> + Send + Sync + 'static,
        M: Fn(&[i64]) -> E + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            ambient: ambient.into(),
            intrinsic: Intrinsic::Lattice { rank, coords: Arc::new(coords), embed: Arc::new(embed) },
        }
    }

    /// `H = G`, measured with `Y = X`.
    pub fn whole<G: Group<Elem = E>>(g: &G) -> Self {
        Self { name: "whole".into(), ambient: g.name(), intrinsic: Intrinsic::Whole }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ambient_name(&self) -> &str {
        &self.ambient
    }

    pub fn intrinsic(&self) -> &Intrinsic<E> {
        &self.intrinsic
    }

    pub fn rank(&self) -> Option<usize> {
        match &self.intrinsic {
            Intrinsic::Lattice { rank, .. } => Some(*rank),
            Intrinsic::Whole => None,
        }
    }

    pub fn contains(&self, g: &E) -> bool {
        match &self.intrinsic {
            Intrinsic::Lattice { coords, .. } => coords(g).is_some(),
            Intrinsic::Whole => true,
        }
    }

    /// Coordinates in `ℤʳ`; `None` for non-members or non-lattice subgroups.
    pub fn coords(&self, g: &E) -> Option<Vec<i64>> {
        match &self.intrinsic {
            Intrinsic::Lattice { coords, .. } => coords(g),
            Intrinsic::Whole => None,
        }
    }

    /// The embedding `φ: ℤʳ → G`.
    pub fn embed(&self, v: &[i64]) -> Option<E> {
        match &self.intrinsic {
            Intrinsic::Lattice { embed, .. } => Some(embed(v)),
            Intrinsic::Whole => None,
        }
    }

    /// Closed-form `|h|_Y` for lattice subgroups.
    pub fn lattice_length(&self, g: &E) -> Option<u64> {
        self.coords(g).map(|v| v.iter().map(|x| x.unsigned_abs()).sum())
    }

    /// Intrinsic model of a lattice subgroup.
    pub fn intrinsic_model(&self) -> Option<FreeAbelianGroup<i64>> {
        self.rank().map(|r| FreeAbelianGroup::new(r).expect("rank is positive"))
    }

    /// Transports the subgroup along an injective element encoding.
    pub fn map<F, T, I>(self, ambient: impl Into<String>, from: F, to: T) -> MarkedSubgroup<I>
    where
        F: Fn(&I) -> Option<E> + Send + Sync + 'static,
        T: Fn(E) -> I + Send + Sync + 'static,
        E: 'static,
        I: Clone + 'static,
    {
        let intrinsic = match self.intrinsic {
            Intrinsic::Lattice { rank, coords, embed } => {
                let (from, to) = (Arc::new(from), Arc::new(to));
                Intrinsic::Lattice {
                    rank,
                    coords: Arc::new(move |i: &I| from(i).and_then(|e| coords(&e))),
                    embed: Arc::new(move |v: &[i64]| to(embed(v))),
                }
            }
            Intrinsic::Whole => Intrinsic::Whole,
        };
        MarkedSubgroup { name: self.name, ambient: ambient.into(), intrinsic }
    }
}

/// Center `{(0,0,c)}` of the Heisenberg group, `Y = {z}`.
pub fn heisenberg_center<T: ExactInt>(g: &HeisenbergGroup<T>) -> MarkedSubgroup<super::HeisenbergElem<T>> {
    let model = g.clone();
    MarkedSubgroup::lattice(
        "center",
        g.name(),
        1,
        |e: &super::HeisenbergElem<T>| e.is_central().then(|| e.c.to_i64().map(|c| vec![c])).flatten(),
        move |v: &[i64]| model.central(T::from_i64(v[0]).expect("coordinate fits")),
    )
}

/// `⟨a⟩ ≤ BS(1,p)`: integer translations, `Y = {a}`.
pub fn bs_gen_a(g: &Bs1p) -> MarkedSubgroup<super::BsElem> {
    MarkedSubgroup::lattice(
        "gen-a",
        g.name(),
        1,
        |e: &super::BsElem| e.as_a_power().and_then(|k| k.to_i64()).map(|k| vec![k]),
        |v: &[i64]| super::BsElem::translation(v[0]),
    )
}

/// Cyclic subgroup of `ℤⁿ` generated by a fixed primitive-or-not vector `dir`.
pub fn free_abelian_cyclic<T: ExactInt>(
    g: &FreeAbelianGroup<T>,
    name: &str,
    dir: Vec<i64>,
) -> MarkedSubgroup<Vec<T>> {
    assert_eq!(dir.len(), g.rank());
    let pivot = dir.iter().position(|&d| d != 0).expect("direction is non-zero");
    let d2 = dir.clone();
    MarkedSubgroup::lattice(
        name,
        g.name(),
        1,
        move |e: &Vec<T>| {
            let v: Vec<i64> = e.iter().map(|x| x.to_i64()).collect::<Option<_>>()?;
            if v[pivot] % dir[pivot] != 0 {
                return None;
            }
            let k = v[pivot] / dir[pivot];
            v.iter().zip(&dir).all(|(x, d)| *x == k * d).then(|| vec![k])
        },
        move |k: &[i64]| d2.iter().map(|d| T::from_i64(d * k[0]).expect("fits")).collect(),
    )
}

/// `ℤⁿ` as a lattice subgroup of itself (`H = G`, `Y = X`).
pub fn free_abelian_whole<T: ExactInt>(g: &FreeAbelianGroup<T>) -> MarkedSubgroup<Vec<T>> {
    MarkedSubgroup::lattice(
        "whole",
        g.name(),
        g.rank(),
        |e: &Vec<T>| e.iter().map(|x| x.to_i64()).collect(),
        |v: &[i64]| v.iter().map(|&x| T::from_i64(x).expect("fits")).collect(),
    )
}

/// Component-wise product `H₁ × H₂ ≤ G₁ × G₂` of two lattice subgroups.
pub fn product_subgroup<A: Group, B: Group>(
    g: &Product<A, B>,
    left: MarkedSubgroup<A::Elem>,
    right: MarkedSubgroup<B::Elem>,
) -> Result<MarkedSubgroup<(A::Elem, B::Elem)>>
where
    A::Elem: 'static,
    B::Elem: 'static,
{
    let unsupported = || Error::UnsupportedSubgroup {
        group: g.name(),
        subgroup: format!("product({}, {})", left.name(), right.name()),
    };
    let (Intrinsic::Lattice { rank: rl, coords: cl, embed: el }, Intrinsic::Lattice { rank: rr, coords: cr, embed: er }) =
        (left.intrinsic.clone(), right.intrinsic.clone())
    else {
        return Err(unsupported());
    };
    Ok(MarkedSubgroup::lattice(
        format!("product({}, {})", left.name(), right.name()),
        g.name(),
        rl + rr,
        move |e: &(A::Elem, B::Elem)| {
            let mut v = cl(&e.0)?;
            v.extend(cr(&e.1)?);
            Some(v)
        },
        move |v: &[i64]| (el(&v[..rl]), er(&v[rl..])),
    ))
}
