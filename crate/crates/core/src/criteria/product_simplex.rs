use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::Rational;

/// The 0/1 vector `(e_{i_1}, ..., e_{i_k})` in `R^{k m}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductSimplexVertex {
    blocks: Vec<usize>,
    m: usize,
}

impl ProductSimplexVertex {
    pub fn new(blocks: Vec<usize>, m: usize) -> Result<Self> {
        if let Some(&i) = blocks.iter().find(|&&i| i >= m) {
            return Err(Error::Precondition(format!(
                "block index {i} out of range for m = {m}"
            )));
        }
        Ok(ProductSimplexVertex { blocks, m })
    }

    /// `(e_a, e_b)`.
    pub fn pair(a: usize, b: usize, m: usize) -> Result<Self> {
        Self::new(vec![a, b], m)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn outcomes(&self) -> usize {
        self.m
    }

    pub fn to_vector(&self) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.blocks.len() * self.m];
        for (j, &i) in self.blocks.iter().enumerate() {
            v[j * self.m + i] = Rational::one();
        }
        v
    }

    /// Inverse of [`to_vector`](Self::to_vector); `None` unless every block
    /// holds exactly one 1 and zeros elsewhere.
    pub fn from_vector(v: &[Rational], m: usize) -> Option<Self> {
        if m == 0 || !v.len().is_multiple_of(m) {
            return None;
        }
        let mut blocks = Vec::new();
        for chunk in v.chunks(m) {
            let ones: Vec<usize> = (0..m).filter(|&i| chunk[i].is_one()).collect();
            if ones.len() != 1 || chunk.iter().any(|x| !x.is_zero() && !x.is_one()) {
                return None;
            }
            blocks.push(ones[0]);
        }
        Some(ProductSimplexVertex { blocks, m })
    }
}

impl fmt::Display for ProductSimplexVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|i| format!("e{i}")).collect();
        write!(f, "({})", parts.join(","))
    }
}
