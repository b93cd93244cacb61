use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::bitset::ElementSet;

/// A subgroup of some parent group, stored as its sorted element indices.
///
/// Equality is set equality. Subgroups are ordered by size first and then
/// lexicographically by element list, which is the canonical order used in
/// every report.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    mask: ElementSet,
}

impl Subgroup {
    /// Wraps a set already known to be a subgroup.
    pub(crate) fn from_mask(mask: ElementSet) -> Self {
        Subgroup {
            elements: mask.to_vec(),
            mask,
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        Self::from_mask(ElementSet::from_indices(parent_order, [0]))
    }

    pub fn whole(parent_order: usize) -> Self {
        Self::from_mask(ElementSet::full(parent_order))
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn mask(&self) -> &ElementSet {
        &self.mask
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.universe()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.mask.universe()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.mask.contains(a)
    }

    pub fn is_subset(&self, other: &Subgroup) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup::from_mask(self.mask.intersection(&other.mask))
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elements.hash(state);
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements
            .len()
            .cmp(&other.elements.len())
            .then_with(|| self.elements.cmp(&other.elements))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
