use std::collections::HashSet;

use super::{FiniteGroup, Subgroup};
use crate::bitset::ElementSet;

/// Every subgroup generated by a union of atoms, starting from the trivial
/// subgroup. Each atom is a generator list; the result is canonically sorted.
pub(super) fn join_closure(g: &FiniteGroup, atoms: &[Vec<usize>]) -> Vec<Subgroup> {
    let trivial = ElementSet::from_indices(g.order(), [0]);
    let mut seen: HashSet<ElementSet> = HashSet::from([trivial.clone()]);
    let mut queue: Vec<(ElementSet, Vec<usize>)> = vec![(trivial, Vec::new())];
    let mut head = 0;
    while head < queue.len() {
        let (mask, gens) = queue[head].clone();
        head += 1;
        for atom in atoms {
            if atom.iter().all(|&x| mask.contains(x)) {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.extend(atom.iter().copied().filter(|&x| !mask.contains(x)));
            let joined = g.close(mask.clone(), &next_gens);
            if seen.insert(joined.clone()) {
                queue.push((joined, next_gens));
            }
        }
    }
    let mut out: Vec<Subgroup> = queue.into_iter().map(|(m, _)| Subgroup::from_mask(m)).collect();
    out.sort();
    out
}

/// Normal subgroups as joins of normal closures of single elements.
pub(super) fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let atoms: Vec<Vec<usize>> = g
        .conjugacy_classes()
        .into_iter()
        .filter(|c| c != &[0])
        .collect();
    join_closure(g, &atoms)
}
