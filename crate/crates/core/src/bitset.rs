//! Fixed-width bit sets used for divisibility tables over ball indices.

use alloc::vec::Vec;

/// A set of element indices below a fixed universe size, packed 64 per
/// block. Intersections and subset tests are the hot operations of the
/// ideal sweeps, so they work blockwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BitSet {
    blocks: Vec<u64>,
    universe: usize,
}

impl BitSet {
    pub fn new(universe: usize) -> Self {
        BitSet { blocks: alloc::vec![0; universe.div_ceil(64)], universe }
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.universe);
        self.blocks[i / 64] |= 1u64 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        if i >= self.universe {
            return false;
        }
        self.blocks[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// `self ∩ other` as a new set. Universes must agree.
    pub fn intersection(&self, other: &BitSet) -> BitSet {
        debug_assert_eq!(self.universe, other.universe);
        BitSet {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a & b).collect(),
            universe: self.universe,
        }
    }

    pub fn intersect_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &BitSet) {
        debug_assert_eq!(self.universe, other.universe);
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a |= b;
        }
    }

    pub fn is_subset_of(&self, other: &BitSet) -> bool {
        debug_assert_eq!(self.universe, other.universe);
        self.blocks.iter().zip(&other.blocks).all(|(a, b)| a & !b == 0)
    }

    /// Indices in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(k, &block)| {
            let mut b = block;
            core::iter::from_fn(move || {
                if b == 0 {
                    return None;
                }
                let tz = b.trailing_zeros() as usize;
                b &= b - 1;
                Some(k * 64 + tz)
            })
        })
    }

    /// Least index present, if any.
    pub fn first(&self) -> Option<usize> {
        for (k, &b) in self.blocks.iter().enumerate() {
            if b != 0 {
                return Some(k * 64 + b.trailing_zeros() as usize);
            }
        }
        None
    }
}
