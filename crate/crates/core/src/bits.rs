//! Fixed-width bit sets used for monomial supports, vertex sets and
//! lattice elements.

use std::fmt;

/// Largest index a [`Bits`] value can hold, plus one.
pub const CAPACITY: usize = 128;

/// A subset of `0..128` packed into a single `u128`.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bits(pub u128);

impl Bits {
  pub const EMPTY: Bits = Bits(0);

  #[inline]
  pub fn singleton(i: usize) -> Bits {
    debug_assert!(i < CAPACITY);
    Bits(1u128 << i)
  }

  /// The set `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
  pub fn range_inclusive(lo: usize, hi: usize) -> Bits {
    (lo..=hi).collect()
  }

  #[inline]
  pub fn contains(self, i: usize) -> bool {
    i < CAPACITY && (self.0 >> i) & 1 == 1
  }

  #[inline]
  pub fn insert(&mut self, i: usize) {
    self.0 |= 1u128 << i;
  }

  #[inline]
  pub fn remove(&mut self, i: usize) {
    self.0 &= !(1u128 << i);
  }

  #[inline]
  pub fn with(self, i: usize) -> Bits {
    Bits(self.0 | (1u128 << i))
  }

  #[inline]
  pub fn without(self, i: usize) -> Bits {
    Bits(self.0 & !(1u128 << i))
  }

  #[inline]
  pub fn union(self, other: Bits) -> Bits {
    Bits(self.0 | other.0)
  }

  #[inline]
  pub fn intersection(self, other: Bits) -> Bits {
    Bits(self.0 & other.0)
  }

  #[inline]
  pub fn difference(self, other: Bits) -> Bits {
    Bits(self.0 & !other.0)
  }

  #[inline]
  pub fn is_subset(self, other: Bits) -> bool {
    self.0 & !other.0 == 0
  }

  #[inline]
  pub fn is_proper_subset(self, other: Bits) -> bool {
    self != other && self.is_subset(other)
  }

  #[inline]
  pub fn is_disjoint(self, other: Bits) -> bool {
    self.0 & other.0 == 0
  }

  #[inline]
  pub fn is_empty(self) -> bool {
    self.0 == 0
  }

  #[inline]
  pub fn len(self) -> usize {
    self.0.count_ones() as usize
  }

  pub fn min(self) -> Option<usize> {
    if self.0 == 0 {
      None
    } else {
      Some(self.0.trailing_zeros() as usize)
    }
  }

  pub fn max(self) -> Option<usize> {
    if self.0 == 0 {
      None
    } else {
      Some(127 - self.0.leading_zeros() as usize)
    }
  }

  pub fn iter(self) -> BitsIter {
    BitsIter(self.0)
  }

  pub fn to_vec(self) -> Vec<usize> {
    self.iter().collect()
  }
}

pub struct BitsIter(u128);

impl Iterator for BitsIter {
  type Item = usize;

  #[inline]
  fn next(&mut self) -> Option<usize> {
    if self.0 == 0 {
      return None;
    }
    let i = self.0.trailing_zeros() as usize;
    self.0 &= self.0 - 1;
    Some(i)
  }

  fn size_hint(&self) -> (usize, Option<usize>) {
    let n = self.0.count_ones() as usize;
    (n, Some(n))
  }
}

impl ExactSizeIterator for BitsIter {}

impl IntoIterator for Bits {
  type IntoIter = BitsIter;
  type Item = usize;

  fn into_iter(self) -> BitsIter {
    self.iter()
  }
}

impl FromIterator<usize> for Bits {
  fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
    let mut b = Bits::EMPTY;
    for i in iter {
      b.insert(i);
    }
    b
  }
}

impl fmt::Debug for Bits {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    f.debug_set().entries(self.iter()).finish()
  }
}

impl fmt::Display for Bits {
  fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(f, "{{")?;
    for (k, i) in self.iter().enumerate() {
      if k > 0 {
        write!(f, ",")?;
      }
      write!(f, "{i}")?;
    }
    write!(f, "}}")
  }
}

#[cfg(test)]
mod tests {
  use super::*;

  #[test]
  fn iterates_in_ascending_order() {
    let b: Bits = [5, 1, 127, 64].into_iter().collect();
    assert_eq!(b.to_vec(), vec![1, 5, 64, 127]);
    assert_eq!(b.len(), 4);
    assert_eq!(b.min(), Some(1));
    assert_eq!(b.max(), Some(127));
  }

  #[test]
  fn subset_relations() {
    let a: Bits = [1, 2].into_iter().collect();
    let b: Bits = [1, 2, 3].into_iter().collect();
    assert!(a.is_subset(b));
    assert!(a.is_proper_subset(b));
    assert!(!b.is_subset(a));
    assert!(Bits::EMPTY.is_subset(a));
    assert_eq!(b.difference(a), Bits::singleton(3));
    assert_eq!(format!("{b}"), "{1,2,3}");
  }
}
