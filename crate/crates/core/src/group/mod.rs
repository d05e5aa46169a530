//! Exact group models.
//!
//! Every model stores elements in a canonical form, so the word problem is
//! solved by normalizing and comparing. Generating sets are kept symmetric:
//! each generator carries the index of its formal inverse, and word length
//! always counts letters from `X ∪ X⁻¹`.

use std::fmt::Debug;
use std::hash::Hash;

use crate::error::{Error, Result};

mod any;
mod bs;
mod free;
mod free_abelian;
mod heisenberg;
mod product;
mod subgroup;

pub use any::{AnyElem, AnyGroup};
pub use bs::{is_normalized, Bs1p, BsElem};
pub use free::{FreeGroup, FreeWord};
pub use free_abelian::FreeAbelianGroup;
pub use heisenberg::{HeisenbergElem, HeisenbergGroup};
pub use product::Product;
pub use subgroup::{
    bs_gen_a, free_abelian_cyclic, free_abelian_whole, heisenberg_center, product_subgroup, Intrinsic, MarkedSubgroup,
};

/// One letter of a symmetric generating set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator<E> {
    pub name: String,
    pub elem: E,
    /// Index of the formal inverse within the same generator list.
    pub inverse: usize,
}

/// Builds the symmetric list `x₁, x₁⁻¹, x₂, x₂⁻¹, …` from named base generators.
pub(crate) fn symmetric<E, F>(base: Vec<(String, E)>, invert: F) -> Vec<Generator<E>>
where
    F: Fn(&E) -> E,
{
    let mut out = Vec::with_capacity(base.len() * 2);
    for (i, (name, elem)) in base.into_iter().enumerate() {
        let inv = invert(&elem);
        out.push(Generator { name: name.clone(), elem, inverse: 2 * i + 1 });
        out.push(Generator { name: format!("{name}^-1"), elem: inv, inverse: 2 * i });
    }
    out
}

/// A finitely generated group with canonical element representatives.
pub trait Group: Send + Sync {
    /// Canonical payload. `Eq`/`Hash` on it is equality of group elements.
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync + 'static;

    fn name(&self) -> String;
    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// Symmetric generating set `X ∪ X⁻¹`.
    fn generators(&self) -> &[Generator<Self::Elem>];

    fn is_identity(&self, a: &Self::Elem) -> bool {
        *a == self.identity()
    }

    fn pow(&self, a: &Self::Elem, k: i64) -> Self::Elem {
        let base = if k < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &base);
        }
        acc
    }

    /// Evaluates a word given as indices into [`Group::generators`].
    fn eval_word(&self, word: &[usize]) -> Self::Elem {
        let gens = self.generators();
        word.iter().fold(self.identity(), |acc, &i| self.mul(&acc, &gens[i].elem))
    }

    fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators().iter().position(|g| g.name == name)
    }

    /// Parses a word such as `"x^2 y x^-1 y^-1"`.
    ///
    /// Tokens are whitespace separated; each is a generator name with an
    /// optional signed exponent.
    fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.rsplit_once('^') {
                Some((n, e)) if !n.is_empty() => {
                    let e: i64 = e.parse().map_err(|_| Error::UnknownGenerator(token.to_string()))?;
                    (n, e)
                }
                _ => (token, 1),
            };
            let idx = self
                .generator_index(name)
                .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
            let letter = if exp < 0 { self.generators()[idx].inverse } else { idx };
            word.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(word)
    }

    fn word_to_string(&self, word: &[usize]) -> String {
        let gens = self.generators();
        word.iter().map(|&i| gens[i].name.as_str()).collect::<Vec<_>>().join(" ")
    }
}

impl<G: Group + ?Sized> Group for &G {
    type Elem = G::Elem;
    fn name(&self) -> String {
        (**self).name()
    }
    fn identity(&self) -> Self::Elem {
        (**self).identity()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (**self).inv(a)
    }
    fn generators(&self) -> &[Generator<Self::Elem>] {
        (**self).generators()
    }
}
