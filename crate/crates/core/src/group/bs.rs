use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};

use super::{symmetric, Generator, Group};

/// Affine map `x ↦ pˢ·x + num / pᵉ` on `ℤ[1/p]`.
///
/// Normalized so that `p ∤ num` whenever `e > 0`, and `e = 0` when `num = 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BsElem {
    pub scale: i64,
    pub num: BigInt,
    pub den_exp: u32,
}

impl BsElem {
    /// `a^k`, the translation by `k`.
    pub fn translation(k: impl Into<BigInt>) -> Self {
        Self { scale: 0, num: k.into(), den_exp: 0 }
    }

    /// Integer translation amount if this is a power of `a`.
    pub fn as_a_power(&self) -> Option<&BigInt> {
        (self.scale == 0 && self.den_exp == 0).then_some(&self.num)
    }
}

/// A dyadic-style rational `num / pᵉ`.
#[derive(Clone)]
struct PAdicFrac {
    num: BigInt,
    exp: u32,
}

impl PAdicFrac {
    fn normalize(mut self, p: &BigInt) -> Self {
        if self.num.is_zero() {
            self.exp = 0;
            return self;
        }
        while self.exp > 0 {
            let (q, r) = self.num.div_rem(p);
            if !r.is_zero() {
                break;
            }
            self.num = q;
            self.exp -= 1;
        }
        self
    }

    fn scale_by(self, p: &BigInt, s: i64) -> Self {
        if s >= 0 {
            Self { num: self.num * p.pow(s as u32), exp: self.exp }
        } else {
            Self { num: self.num, exp: self.exp + s.unsigned_abs() as u32 }
        }
    }

    fn add(self, other: Self, p: &BigInt) -> Self {
        let exp = self.exp.max(other.exp);
        let lift = |f: Self| f.num * p.pow(exp - f.exp);
        Self { num: lift(self) + lift(other), exp }
    }
}

/// `BS(1,p) = ⟨a, b | b⁻¹ab = aᵖ⟩` acting faithfully by `a: x ↦ x+1`, `b: x ↦ x/p`.
///
/// Products compose maps right to left: `(gh)(x) = g(h(x))`.
#[derive(Debug, Clone)]
pub struct Bs1p {
    p: u32,
    p_big: BigInt,
    gens: Vec<Generator<BsElem>>,
}

impl Bs1p {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidParameter { group: format!("bs1p:{p}"), reason: "p must be at least 2".into() });
        }
        let p_big = BigInt::from(p);
        let a = BsElem::translation(1);
        let b = BsElem { scale: -1, num: BigInt::zero(), den_exp: 0 };
        let mut g = Self { p, p_big, gens: Vec::new() };
        let base = vec![("a".to_string(), a), ("b".to_string(), b)];
        g.gens = symmetric(base, |e| g.invert(e));
        Ok(g)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    fn frac(&self, e: &BsElem) -> PAdicFrac {
        PAdicFrac { num: e.num.clone(), exp: e.den_exp }
    }

    fn build(&self, scale: i64, t: PAdicFrac) -> BsElem {
        let t = t.normalize(&self.p_big);
        BsElem { scale, num: t.num, den_exp: t.exp }
    }

    fn invert(&self, e: &BsElem) -> BsElem {
        // x ↦ p^{-s}(x - t)
        let t = self.frac(e);
        let neg = PAdicFrac { num: -t.num, exp: t.exp };
        self.build(-e.scale, neg.scale_by(&self.p_big, -e.scale))
    }

    /// Applies the affine map to a rational point given as `num / pᵉ`.
    pub fn apply(&self, g: &BsElem, num: &BigInt, exp: u32) -> (BigInt, u32) {
        let x = PAdicFrac { num: num.clone(), exp }.scale_by(&self.p_big, g.scale);
        let y = x.add(self.frac(g), &self.p_big).normalize(&self.p_big);
        (y.num, y.exp)
    }
}

impl Group for Bs1p {
    type Elem = BsElem;

    fn name(&self) -> String {
        format!("bs1p:{}", self.p)
    }

    fn identity(&self) -> BsElem {
        BsElem::translation(0)
    }

    fn mul(&self, g: &BsElem, h: &BsElem) -> BsElem {
        // g(h(x)) = p^{s_g}(p^{s_h} x + t_h) + t_g
        let t = self.frac(h).scale_by(&self.p_big, g.scale).add(self.frac(g), &self.p_big);
        self.build(g.scale + h.scale, t)
    }

    fn inv(&self, e: &BsElem) -> BsElem {
        self.invert(e)
    }

    fn generators(&self) -> &[Generator<BsElem>] {
        &self.gens
    }
}

/// Canonical-form check: `p ∤ num` whenever `e > 0`, and `e = 0` for `num = 0`.
pub fn is_normalized(e: &BsElem, p: u32) -> bool {
    if e.num.is_zero() {
        return e.den_exp == 0;
    }
    e.den_exp == 0 || !(&e.num % BigInt::from(p)).is_zero()
}
