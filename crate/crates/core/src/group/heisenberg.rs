use crate::scalar::ExactInt;

use super::{symmetric, Generator, Group};

/// Upper unitriangular matrix
///
/// ```text
/// | 1 a c |
/// | 0 1 b |
/// | 0 0 1 |
/// ```
///
/// stored by its three free entries.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeisenbergElem<T> {
    pub a: T,
    pub b: T,
    pub c: T,
}

impl<T: ExactInt> HeisenbergElem<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Self { a, b, c }
    }

    pub fn to_matrix(&self) -> [[T; 3]; 3] {
        let (o, z) = (T::one(), T::zero());
        [
            [o.clone(), self.a.clone(), self.c.clone()],
            [z.clone(), o.clone(), self.b.clone()],
            [z.clone(), z, o],
        ]
    }

    /// Central elements are exactly those with both off-diagonal entries zero.
    pub fn is_central(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

/// Discrete Heisenberg group with `X = {x, y, z}`, `z = [x, y]` central.
#[derive(Debug, Clone)]
pub struct HeisenbergGroup<T> {
    gens: Vec<Generator<HeisenbergElem<T>>>,
}

impl<T: ExactInt> HeisenbergGroup<T> {
    pub fn new() -> Self {
        let (o, z) = (T::one(), T::zero());
        let base = vec![
            ("x".to_string(), HeisenbergElem::new(o.clone(), z.clone(), z.clone())),
            ("y".to_string(), HeisenbergElem::new(z.clone(), o.clone(), z.clone())),
            ("z".to_string(), HeisenbergElem::new(z.clone(), z, o)),
        ];
        let gens = symmetric(base, |e| Self::invert(e));
        Self { gens }
    }

    fn invert(e: &HeisenbergElem<T>) -> HeisenbergElem<T> {
        // (a,b,c)^{-1} = (-a, -b, ab - c)
        HeisenbergElem::new(-e.a.clone(), -e.b.clone(), e.a.clone() * e.b.clone() - e.c.clone())
    }

    pub fn central(&self, c: T) -> HeisenbergElem<T> {
        HeisenbergElem::new(T::zero(), T::zero(), c)
    }
}

impl<T: ExactInt> Default for HeisenbergGroup<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: ExactInt> Group for HeisenbergGroup<T> {
    type Elem = HeisenbergElem<T>;

    fn name(&self) -> String {
        "heisenberg".into()
    }

    fn identity(&self) -> Self::Elem {
        HeisenbergElem::new(T::zero(), T::zero(), T::zero())
    }

    fn mul(&self, l: &Self::Elem, r: &Self::Elem) -> Self::Elem {
        HeisenbergElem::new(
            l.a.clone() + r.a.clone(),
            l.b.clone() + r.b.clone(),
            l.c.clone() + r.c.clone() + l.a.clone() * r.b.clone(),
        )
    }

    fn inv(&self, e: &Self::Elem) -> Self::Elem {
        Self::invert(e)
    }

    fn generators(&self) -> &[Generator<Self::Elem>] {
        &self.gens
    }
}
