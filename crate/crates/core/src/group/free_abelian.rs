use crate::error::{Error, Result};
use crate::scalar::ExactInt;

use super::{symmetric, Generator, Group};

/// `ℤⁿ` with the standard basis; generators are named `a`, `b`, `c`, ….
#[derive(Debug, Clone)]
pub struct FreeAbelianGroup<T> {
    rank: usize,
    gens: Vec<Generator<Vec<T>>>,
}

pub(crate) fn letter(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{i}")
    }
}

impl<T: ExactInt> FreeAbelianGroup<T> {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter { group: "free-abelian".into(), reason: "rank must be positive".into() });
        }
        let base = (0..rank)
            .map(|i| {
                let mut v = vec![T::zero(); rank];
                v[i] = T::one();
                (letter(i), v)
            })
            .collect();
        let gens = symmetric(base, |v: &Vec<T>| v.iter().map(|x| -x.clone()).collect());
        Ok(Self { rank, gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn element(&self, coords: &[i64]) -> Vec<T> {
        assert_eq!(coords.len(), self.rank, "coordinate count must equal the rank");
        coords.iter().map(|&c| T::from_i64(c).expect("coordinate fits the scalar type")).collect()
    }
}

impl<T: ExactInt> Group for FreeAbelianGroup<T> {
    type Elem = Vec<T>;

    fn name(&self) -> String {
        format!("free-abelian:{}", self.rank)
    }

    fn identity(&self) -> Vec<T> {
        vec![T::zero(); self.rank]
    }

    fn mul(&self, a: &Vec<T>, b: &Vec<T>) -> Vec<T> {
        a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
    }

    fn inv(&self, a: &Vec<T>) -> Vec<T> {
        a.iter().map(|x| -x.clone()).collect()
    }

    fn generators(&self) -> &[Generator<Vec<T>>] {
        &self.gens
    }
}
