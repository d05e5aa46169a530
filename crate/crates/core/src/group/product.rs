use super::{Generator, Group};

/// Direct product `G₁ × G₂` with generating set `{(x,e)} ∪ {(e,y)}`.
///
/// Left generators are renamed `1.x`, right ones `2.y`.
#[derive(Debug, Clone)]
pub struct Product<A: Group, B: Group> {
    left: A,
    right: B,
    gens: Vec<Generator<(A::Elem, B::Elem)>>,
}

impl<A: Group, B: Group> Product<A, B> {
    pub fn new(left: A, right: B) -> Self {
        let (el, er) = (left.identity(), right.identity());
        let nl = left.generators().len();
        let mut gens: Vec<_> = left
            .generators()
            .iter()
            .map(|g| Generator { name: format!("1.{}", g.name), elem: (g.elem.clone(), er.clone()), inverse: g.inverse })
            .collect();
        gens.extend(right.generators().iter().map(|g| Generator {
            name: format!("2.{}", g.name),
            elem: (el.clone(), g.elem.clone()),
            inverse: g.inverse + nl,
        }));
        Self { left, right, gens }
    }

    pub fn left(&self) -> &A {
        &self.left
    }

    pub fn right(&self) -> &B {
        &self.right
    }
}

impl<A: Group, B: Group> Group for Product<A, B> {
    type Elem = (A::Elem, B::Elem);

    fn name(&self) -> String {
        format!("product({}, {})", self.left.name(), self.right.name())
    }

    fn identity(&self) -> Self::Elem {
        (self.left.identity(), self.right.identity())
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (self.left.mul(&a.0, &b.0), self.right.mul(&a.1, &b.1))
    }

    fn inv(&self, a: &Self::Elem) -> Self::Elem {
        (self.left.inv(&a.0), self.right.inv(&a.1))
    }

    fn generators(&self) -> &[Generator<Self::Elem>] {
        &self.gens
    }
}
