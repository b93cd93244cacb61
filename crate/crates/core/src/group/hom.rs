use super::{FiniteGroup, Subgroup};
use crate::bitset::ElementSet;
use crate::{Error, Result};

/// A homomorphism between finite groups, stored as its image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHomomorphism {
    domain_order: usize,
    codomain_order: usize,
    images: Vec<usize>,
}

impl GroupHomomorphism {
    /// Validates `images` as a homomorphism from `domain` to `codomain`.
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, images: Vec<usize>) -> Result<Self> {
        let h = Self::from_parts(domain.order(), codomain.order(), images);
        h.verify(domain, codomain)?;
        Ok(h)
    }

    pub(crate) fn from_parts(domain_order: usize, codomain_order: usize, images: Vec<usize>) -> Self {
        GroupHomomorphism {
            domain_order,
            codomain_order,
            images,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Self::from_parts(g.order(), g.order(), g.elements().collect())
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        Self::from_parts(domain.order(), codomain.order(), vec![0; domain.order()])
    }

    pub fn verify(&self, domain: &FiniteGroup, codomain: &FiniteGroup) -> Result<()> {
        if self.domain_order != domain.order()
            || self.codomain_order != codomain.order()
            || self.images.len() != domain.order()
        {
            return Err(Error::NotHomomorphism("size mismatch".into()));
        }
        if let Some(&bad) = self.images.iter().find(|&&x| x >= codomain.order()) {
            return Err(Error::NotHomomorphism(format!("image {bad} out of range")));
        }
        if self.images[0] != 0 {
            return Err(Error::NotHomomorphism("identity not preserved".into()));
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if self.images[domain.mul(a, b)] != codomain.mul(self.images[a], self.images[b]) {
                    return Err(Error::NotHomomorphism(format!(
                        "f({a}*{b}) != f({a})*f({b})"
                    )));
                }
            }
        }
        Ok(())
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn domain_order(&self) -> usize {
        self.domain_order
    }

    pub fn codomain_order(&self) -> usize {
        self.codomain_order
    }

    pub fn kernel(&self) -> Subgroup {
        Subgroup::from_mask(ElementSet::from_indices(
            self.domain_order,
            (0..self.domain_order).filter(|&a| self.images[a] == 0),
        ))
    }

    /// Image of the whole domain, as a set of codomain elements.
    pub fn image_set(&self) -> ElementSet {
        ElementSet::from_indices(self.codomain_order, self.images.iter().copied())
    }

    pub fn is_injective(&self) -> bool {
        self.image_set().len() == self.domain_order
    }

    pub fn is_surjective(&self) -> bool {
        self.image_set().len() == self.codomain_order
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupHomomorphism) -> GroupHomomorphism {
        assert_eq!(self.codomain_order, other.domain_order);
        Self::from_parts(
            self.domain_order,
            other.codomain_order,
            self.images.iter().map(|&x| other.images[x]).collect(),
        )
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHomomorphism> {
        if self.domain_order != self.codomain_order || !self.is_injective() {
            return None;
        }
        let mut inv = vec![0; self.domain_order];
        for (a, &b) in self.images.iter().enumerate() {
            inv[b] = a;
        }
        Some(Self::from_parts(self.codomain_order, self.domain_order, inv))
    }
}
