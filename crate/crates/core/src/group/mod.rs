//! Finite groups given by Cayley tables, and the subgroup, quotient and
//! commutator calculus the rest of the crate is built on.
//!
//! Elements are indices `0..order` and the identity is always index `0`.

mod hom;
mod iso;
mod lattice;
pub mod named;
mod subgroup;

use std::collections::HashMap;

pub use hom::GroupHomomorphism;
pub use iso::{are_isomorphic, InvariantProfile};
pub use subgroup::Subgroup;

use crate::bitset::ElementSet;
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    name: Option<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table under the default order cap.
    pub fn from_cayley_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_cayley_table_capped(table, Limits::default().group_order)
    }

    pub fn from_cayley_table_capped(table: Vec<Vec<usize>>, cap: usize) -> Result<Self> {
        let n = table.len();
        if n == 0 || table.iter().any(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return Err(Error::MalformedTable);
        }
        Limits::check(n, cap)?;
        let flat: Vec<usize> = table.into_iter().flatten().collect();

        for a in 0..n {
            if flat[a] != a || flat[a * n] != a {
                return Err(Error::NoIdentityAtZero);
            }
        }
        for a in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                let r = flat[a * n + b];
                let c = flat[b * n + a];
                if row_seen[r] || col_seen[c] {
                    return Err(Error::NotLatinSquare(a));
                }
                row_seen[r] = true;
                col_seen[c] = true;
            }
        }
        let mut inverse = vec![0; n];
        for a in 0..n {
            let b = (0..n).find(|&b| flat[a * n + b] == 0).expect("latin row");
            if flat[b * n + a] != 0 {
                return Err(Error::NoInverse(a));
            }
            inverse[a] = b;
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::NonAssociative(a, b, c));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            order: n,
            table: flat,
            inverse,
            name: None,
        })
    }

    /// Builds a group from a table produced by a trusted constructor.
    pub(crate) fn from_trusted_table(order: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0; order];
        for a in 0..order {
            inverse[a] = (0..order)
                .find(|&b| table[a * order + b] == 0)
                .expect("trusted table has inverses");
        }
        FiniteGroup {
            order,
            table,
            inverse,
            name: None,
        }
    }

    /// Closes a set of permutations of `0..degree` under composition.
    ///
    /// Elements are numbered breadth-first from the identity, multiplying on
    /// the right by the generators in the order given. The product `a*b`
    /// applies `a` first and then `b`.
    pub fn from_permutation_generators(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutation_generators_capped(degree, generators, Limits::default().group_order)
    }

    pub fn from_permutation_generators_capped(
        degree: usize,
        generators: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self> {
        for g in generators {
            if g.len() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "{g:?} has length {} but degree is {degree}",
                    g.len()
                )));
            }
            let mut seen = vec![false; degree];
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::InvalidPermutation(format!("{g:?} is not a bijection")));
                }
                seen[x] = true;
            }
        }
        let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { a.iter().map(|&i| b[i]).collect() };

        let identity: Vec<usize> = (0..degree).collect();
        let mut perms = vec![identity.clone()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < perms.len() {
            for g in generators {
                let p = compose(&perms[head], g);
                if !index.contains_key(&p) {
                    if perms.len() == cap {
                        return Err(Error::OrderCapExceeded {
                            order: cap + 1,
                            cap,
                        });
                    }
                    index.insert(p.clone(), perms.len());
                    perms.push(p);
                }
            }
            head += 1;
        }
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                table.push(index[&compose(a, b)]);
            }
        }
        Ok(Self::from_trusted_table(n, table))
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("group of order {}", self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `[x, y] = x y x^-1 y^-1`.
    #[inline]
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn power(&self, a: usize, mut k: u64) -> usize {
        let mut base = a;
        let mut acc = 0;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Exhaustive check of the group axioms on the stored table.
    pub fn validate(&self) -> Result<()> {
        Self::from_cayley_table_capped(self.table_rows(), usize::MAX).map(|_| ())
    }

    pub fn center(&self) -> Subgroup {
        let mask = ElementSet::from_indices(
            self.order,
            self.elements()
                .filter(|&z| self.elements().all(|g| self.mul(z, g) == self.mul(g, z))),
        );
        Subgroup::from_mask(mask)
    }

    /// Elements commuting with every member of `set`.
    pub fn centralizer_of(&self, set: &[usize]) -> ElementSet {
        ElementSet::from_indices(
            self.order,
            self.elements()
                .filter(|&z| set.iter().all(|&g| self.mul(z, g) == self.mul(g, z))),
        )
    }

    pub fn conjugacy_class(&self, x: usize) -> Vec<usize> {
        let mut cls = ElementSet::empty(self.order);
        for g in self.elements() {
            cls.insert(self.conjugate(g, x));
        }
        cls.to_vec()
    }

    /// Conjugacy classes, each sorted, listed by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if !seen[x] {
                let cls = self.conjugacy_class(x);
                for &c in &cls {
                    seen[c] = true;
                }
                classes.push(cls);
            }
        }
        classes
    }

    /// Subgroup generated by `generators`.
    pub fn generate(&self, generators: &[usize]) -> Subgroup {
        Subgroup::from_mask(self.close(ElementSet::from_indices(self.order, [0]), generators))
    }

    /// Smallest subgroup containing `base` (assumed a subgroup) and `generators`.
    pub fn join_with(&self, base: &Subgroup, generators: &[usize]) -> Subgroup {
        if generators.iter().all(|&g| base.contains(g)) {
            return base.clone();
        }
        let mut gens: Vec<usize> = generators.to_vec();
        gens.extend(self.generating_set(base));
        Subgroup::from_mask(self.close(base.mask().clone(), &gens))
    }

    fn close(&self, start: ElementSet, generators: &[usize]) -> ElementSet {
        let mut mask = start;
        let mut frontier: Vec<usize> = mask.to_vec();
        while let Some(x) = frontier.pop() {
            for &g in generators {
                let y = self.mul(x, g);
                if mask.insert(y) {
                    frontier.push(y);
                }
            }
        }
        mask
    }

    /// A small generating set of `sub`, chosen greedily by largest element order.
    pub fn generating_set(&self, sub: &Subgroup) -> Vec<usize> {
        let mut candidates: Vec<usize> = sub.elements().iter().copied().filter(|&x| x != 0).collect();
        let orders: Vec<usize> = candidates.iter().map(|&x| self.element_order(x)).collect();
        let mut keyed: Vec<(usize, usize)> = orders.into_iter().zip(candidates.drain(..)).collect();
        keyed.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut current = ElementSet::from_indices(self.order, [0]);
        for (_, x) in keyed {
            if current.len() == sub.len() {
                break;
            }
            if !current.contains(x) {
                gens.push(x);
                current = self.close(current, &gens);
            }
        }
        gens
    }

    /// Checks that `elements` form a subgroup and wraps them.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        if elements.iter().any(|&x| x >= self.order) {
            return Err(Error::NotSubgroup);
        }
        let mask = ElementSet::from_indices(self.order, elements.iter().copied());
        if !mask.contains(0) {
            return Err(Error::NotSubgroup);
        }
        let members = mask.to_vec();
        for &a in &members {
            if !mask.contains(self.inv(a)) {
                return Err(Error::NotSubgroup);
            }
            for &b in &members {
                if !mask.contains(self.mul(a, b)) {
                    return Err(Error::NotSubgroup);
                }
            }
        }
        Ok(Subgroup::from_mask(mask))
    }

    pub fn is_normal(&self, sub: &Subgroup) -> bool {
        let gens = self.generating_set(sub);
        self.elements()
            .all(|g| gens.iter().all(|&x| sub.contains(self.conjugate(g, x))))
    }

    /// Smallest normal subgroup containing `set`.
    pub fn normal_closure(&self, set: &[usize]) -> Subgroup {
        let mut gens = ElementSet::empty(self.order);
        for &x in set {
            for g in self.elements() {
                gens.insert(self.conjugate(g, x));
            }
        }
        self.generate(&gens.to_vec())
    }

    /// Subgroup generated by all `[x, y]` with `x` in `i` and `y` in `j`.
    pub fn commutator_subgroup(&self, i: &Subgroup, j: &Subgroup) -> Subgroup {
        let mut gens = ElementSet::empty(self.order);
        for &x in i.elements() {
            for &y in j.elements() {
                gens.insert(self.commutator(x, y));
            }
        }
        self.generate(&gens.to_vec())
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let whole = Subgroup::whole(self.order);
        self.commutator_subgroup(&whole, &whole)
    }

    /// Coset map for a normal subgroup: coset labels ordered by minimal
    /// representative, so the identity coset is label 0.
    fn coset_labels(&self, n: &Subgroup) -> (Vec<usize>, Vec<usize>) {
        let mut label = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for a in self.elements() {
            if label[a] == usize::MAX {
                let l = reps.len();
                reps.push(a);
                for &h in n.elements() {
                    label[self.mul(a, h)] = l;
                }
            }
        }
        (label, reps)
    }

    /// Quotient by a normal subgroup, with the projection.
    pub fn quotient(&self, n: &Subgroup) -> Result<(FiniteGroup, GroupHomomorphism)> {
        if n.parent_order() != self.order || !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let (label, reps) = self.coset_labels(n);
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(label[self.mul(a, b)]);
            }
        }
        let mut q = FiniteGroup::from_trusted_table(m, table);
        q.name = Some(format!("{}/N{}", self.label(), n.len()));
        let proj = GroupHomomorphism::from_parts(self.order, m, label);
        Ok((q, proj))
    }

    /// The subgroup as a group in its own right. Element `i` of the result is
    /// `sub.elements()[i]`, so the returned embedding is that list.
    pub fn subgroup_as_group(&self, sub: &Subgroup) -> (FiniteGroup, Vec<usize>) {
        let elems = sub.elements().to_vec();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let m = elems.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &elems {
            for &b in &elems {
                table.push(pos[self.mul(a, b)]);
            }
        }
        (FiniteGroup::from_trusted_table(m, table), elems)
    }

    /// All normal subgroups in canonical order.
    pub fn normal_subgroups(&self, limits: &Limits) -> Result<Vec<Subgroup>> {
        Limits::check(self.order, limits.enumeration)?;
        Ok(lattice::normal_subgroups(self))
    }

    /// All subgroups in canonical order (capped by the stable-enumeration cap
    /// unless a larger one is passed).
    pub fn subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        Limits::check(self.order, cap)?;
        let atoms: Vec<Vec<usize>> = self.elements().skip(1).map(|x| vec![x]).collect();
        Ok(lattice::join_closure(self, &atoms))
    }

    /// Subgroups obtained as joins of the given generator sets (including the
    /// trivial subgroup).
    pub fn joins_of(&self, atoms: &[Vec<usize>]) -> Vec<Subgroup> {
        lattice::join_closure(self, atoms)
    }
}
