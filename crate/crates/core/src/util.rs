use crate::error::{Error, Result};

/// Iterates the set bits of a mask from lowest to highest.
pub(crate) fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(b)
        }
    })
}

/// Iterates the set bits of a mask from highest to lowest.
pub(crate) fn bits_desc(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let b = 127 - mask.leading_zeros() as usize;
            mask &= !(1u128 << b);
            Some(b)
        }
    })
}

pub(crate) fn binomial(n: i64, k: i64) -> Result<i64> {
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for t in 0..k {
        acc = acc * (n - t) as i128 / (t + 1) as i128;
        if acc > i64::MAX as i128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as i64)
}

pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let up = self.parent[self.parent[x] as usize];
            self.parent[x] = up;
            x = up as usize;
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra as u32;
        self.size[ra] += self.size[rb];
        self.components -= 1;
    }

    pub fn components(&self) -> usize {
        self.components
    }
}
