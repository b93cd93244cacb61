use super::{FiniteGroup, GroupHomomorphism, Subgroup};
use crate::{Limits, Result};

/// Isomorphism invariants compared before any search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantProfile {
    pub order: usize,
    pub abelian: bool,
    pub element_orders: Vec<usize>,
    pub center: usize,
    pub derived: usize,
}

impl InvariantProfile {
    pub fn of(g: &FiniteGroup) -> Self {
        let mut element_orders = g.element_orders();
        element_orders.sort_unstable();
        InvariantProfile {
            order: g.order(),
            abelian: g.is_abelian(),
            element_orders,
            center: g.center().len(),
            derived: g.derived_subgroup().len(),
        }
    }
}

/// Searches for an isomorphism `g -> h`.
///
/// After the invariant screen, images are assigned to a greedy generating set
/// of `g` in index order; each partial assignment is propagated over the
/// Cayley graph of the generated subgroup and rejected as soon as it is not a
/// well-defined injective homomorphism.
pub fn are_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<GroupHomomorphism>> {
    let cap = Limits::default().group_order;
    Limits::check(g.order(), cap)?;
    Limits::check(h.order(), cap)?;
    if g.order() != h.order() {
        return Ok(None);
    }
    if InvariantProfile::of(g) != InvariantProfile::of(h) {
        return Ok(None);
    }
    let gens = g.generating_set(&Subgroup::whole(g.order()));
    let h_orders = h.element_orders();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            h.elements().filter(|&t| h_orders[t] == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    Ok(search(g, h, &gens, &candidates, &mut images)
        .map(|phi| GroupHomomorphism::from_parts(g.order(), h.order(), phi)))
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let depth = images.len();
    if depth == gens.len() {
        return propagate(g, h, gens, images);
    }
    for &t in &candidates[depth] {
        images.push(t);
        if propagate(g, h, &gens[..=depth], images).is_some() {
            if let Some(phi) = search(g, h, gens, candidates, images) {
                return Some(phi);
            }
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] -> images[i]` over the generated subgroup.
fn propagate(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let mut phi = vec![UNSET; g.order()];
    let mut used = vec![false; h.order()];
    phi[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let val = h.mul(phi[x], t);
            if phi[y] == UNSET {
                if used[val] {
                    return None;
                }
                used[val] = true;
                phi[y] = val;
                queue.push(y);
            } else if phi[y] != val {
                return None;
            }
        }
    }
    Some(phi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    #[test]
    fn cyclic_six_is_product() {
        let g = cyclic(6);
        let h = direct_product(&cyclic(2), &cyclic(3));
        let w = are_isomorphic(&g, &h).unwrap().expect("isomorphic");
        w.verify(&g, &h).unwrap();
        assert!(w.is_injective());
    }

    #[test]
    fn four_vs_klein() {
        assert!(are_isomorphic(&cyclic(4), &abelian(&[2, 2]).unwrap()).unwrap().is_none());
    }

    #[test]
    fn self_isomorphism_is_identity() {
        let g = symmetric(4).unwrap();
        let w = are_isomorphic(&g, &g).unwrap().unwrap();
        assert_eq!(w, GroupHomomorphism::identity(&g));
    }

    #[test]
    fn dihedral_three_is_symmetric_three() {
        let d3 = dihedral(3).unwrap();
        let s3 = symmetric(3).unwrap();
        let m = metacyclic(3, 1, 2, 1, 2).unwrap();
        assert!(are_isomorphic(&d3, &s3).unwrap().is_some());
        assert!(are_isomorphic(&m, &s3).unwrap().is_some());
    }

    #[test]
    fn same_profile_different_groups() {
        // same order, same center size, different element-order counts
        let a = direct_product(&dihedral(4).unwrap(), &cyclic(2));
        let b = direct_product(&generalized_quaternion(3).unwrap(), &cyclic(2));
        assert!(are_isomorphic(&a, &b).unwrap().is_none());
        let q16 = generalized_quaternion(4).unwrap();
        assert!(are_isomorphic(&q16, &dihedral(8).unwrap()).unwrap().is_none());
    }

    #[test]
    fn symmetric_and_invertible_witness() {
        let g = direct_product(&symmetric(3).unwrap(), &cyclic(2));
        let h = dihedral(6).unwrap();
        let w = are_isomorphic(&g, &h).unwrap().unwrap();
        let back = are_isomorphic(&h, &g).unwrap().unwrap();
        w.verify(&g, &h).unwrap();
        back.verify(&h, &g).unwrap();
        let inv = w.inverse().unwrap();
        inv.verify(&h, &g).unwrap();
    }
}
