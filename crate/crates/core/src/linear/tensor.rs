use std::fmt;

use super::BasisKey;

/// A pure tensor of basis keys, `k_1 ⊗ ... ⊗ k_n`.
///
/// Ordered lexicographically in factor order. The empty tensor is allowed and
/// stands for a scalar.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor<K>(Vec<K>);

impl<K: Clone> Tensor<K> {
    pub fn new(factors: Vec<K>) -> Self {
        Self(factors)
    }

    pub fn scalar() -> Self {
        Self(Vec::new())
    }

    pub fn factors(&self) -> &[K] {
        &self.0
    }

    pub fn into_factors(self) -> Vec<K> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Self) -> Self {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        Self(v)
    }

    /// Replaces the factor at `slot` by all factors of `inner`.
    pub fn splice(&self, slot: usize, inner: &Self) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + inner.0.len());
        v.extend_from_slice(&self.0[..slot]);
        v.extend(inner.0.iter().cloned());
        v.extend_from_slice(&self.0[slot + 1..]);
        Self(v)
    }
}

impl<K: BasisKey> BasisKey for Tensor<K> {
    fn degree(&self) -> usize {
        self.0.iter().map(|k| k.degree()).sum()
    }
}

impl<K: fmt::Display> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("()");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" # ")?;
            }
            let s = k.to_string();
            if self.0.len() > 1 && s.contains(' ') {
                write!(f, "({s})")?;
            } else {
                f.write_str(&s)?;
            }
        }
        Ok(())
    }
}

impl<K: fmt::Display> fmt::Debug for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
