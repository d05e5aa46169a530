use crate::error::{Error, Result};

use super::free_abelian::letter;
use super::{Generator, Group};

/// Freely reduced word; letter `±(i+1)` is the `i`-th generator or its inverse.
pub type FreeWord = Vec<i32>;

fn reduce_into(buf: &mut FreeWord, letters: impl IntoIterator<Item = i32>) {
    for x in letters {
        if buf.last() == Some(&-x) {
            buf.pop();
        } else {
            buf.push(x);
        }
    }
}

/// Free group of rank `k` on `a, b, …`.
#[derive(Debug, Clone)]
pub struct FreeGroup {
    rank: usize,
    gens: Vec<Generator<FreeWord>>,
}

impl FreeGroup {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidParameter { group: "free".into(), reason: "rank must be positive".into() });
        }
        let mut gens = Vec::with_capacity(2 * rank);
        for i in 0..rank {
            let x = i as i32 + 1;
            gens.push(Generator { name: letter(i), elem: vec![x], inverse: 2 * i + 1 });
            gens.push(Generator { name: format!("{}^-1", letter(i)), elem: vec![-x], inverse: 2 * i });
        }
        Ok(Self { rank, gens })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Group for FreeGroup {
    type Elem = FreeWord;

    fn name(&self) -> String {
        format!("free:{}", self.rank)
    }

    fn identity(&self) -> FreeWord {
        Vec::new()
    }

    fn mul(&self, a: &FreeWord, b: &FreeWord) -> FreeWord {
        let mut out = a.clone();
        reduce_into(&mut out, b.iter().copied());
        out
    }

    fn inv(&self, a: &FreeWord) -> FreeWord {
        a.iter().rev().map(|x| -x).collect()
    }

    fn generators(&self) -> &[Generator<FreeWord>] {
        &self.gens
    }
}
