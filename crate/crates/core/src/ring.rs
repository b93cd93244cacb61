//! Finite rings, not necessarily commutative or unital, their two-sided
//! ideals, and p-prime ideals: `P` such that `I(a) ∩ I(b) ⊆ P` forces
//! `a ∈ P` or `b ∈ P`, where `I(a)` is the two-sided ideal generated by `a`.

use std::collections::HashSet;

use num_integer::Integer;

use crate::bitset::ElementSet;
use crate::group::FiniteGroup;
use crate::spectrum::{AxiomReport, AxiomTag, AxiomWitness};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug)]
pub struct FiniteRing {
    order: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
    neg: Vec<usize>,
    one: Option<usize>,
    modulus: Option<usize>,
    name: Option<String>,
}

impl FiniteRing {
    /// `Z/m` with elements `0..m`.
    pub fn modular(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedParameter("modulus must be positive".into()));
        }
        Limits::check(m, Limits::default().group_order)?;
        let add = (0..m).flat_map(|a| (0..m).map(move |b| (a + b) % m)).collect();
        let mul = (0..m).flat_map(|a| (0..m).map(move |b| a * b % m)).collect();
        Ok(FiniteRing {
            order: m,
            add,
            mul,
            neg: (0..m).map(|a| (m - a) % m).collect(),
            one: Some(1 % m),
            modulus: Some(m),
            name: Some(format!("Z/{m}")),
        })
    }

    /// Validates tables: `(add, 0)` an abelian group, multiplication
    /// associative and distributive on both sides. A two-sided
    /// multiplicative identity is detected when present.
    pub fn from_tables(add: Vec<Vec<usize>>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = add.len();
        if mul.len() != n || mul.iter().any(|r| r.len() != n) || mul.iter().flatten().any(|&x| x >= n) {
            return Err(Error::MalformedTable);
        }
        let additive = FiniteGroup::from_cayley_table(add)?;
        if !additive.is_abelian() {
            return Err(Error::RingAxiom("addition is not commutative".into()));
        }
        let add: Vec<usize> = additive.table_rows().concat();
        let mul: Vec<usize> = mul.concat();
        let at = |t: &[usize], a: usize, b: usize| t[a * n + b];
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if at(&mul, at(&mul, a, b), c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(Error::RingAxiom(format!("multiplication not associative at ({a},{b},{c})")));
                    }
                    if at(&mul, a, at(&add, b, c)) != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(Error::RingAxiom(format!("left distributivity fails at ({a},{b},{c})")));
                    }
                    if at(&mul, at(&add, a, b), c) != at(&add, at(&mul, a, c), at(&mul, b, c)) {
                        return Err(Error::RingAxiom(format!("right distributivity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let one = (0..n).find(|&e| (0..n).all(|a| at(&mul, e, a) == a && at(&mul, a, e) == a));
        Ok(FiniteRing {
            order: n,
            neg: (0..n).map(|a| additive.inv(a)).collect(),
            add,
            mul,
            one,
            modulus: None,
            name: None,
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("R{}", self.order))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn one(&self) -> Option<usize> {
        self.one
    }

    pub fn modulus(&self) -> Option<usize> {
        self.modulus
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b]
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    fn enumeration_cap(&self, limits: &Limits) -> usize {
        if self.modulus.is_some() {
            limits.modular_ring
        } else {
            limits.table_ring
        }
    }

    /// Smallest two-sided ideal containing `seed` and `gens`: closed under
    /// sums, negation and multiplication by ring elements on either side.
    /// Without a unit this includes the integer multiples of the generators.
    fn close(&self, mut set: ElementSet, gens: &[usize]) -> ElementSet {
        let mut members: Vec<usize> = set.to_vec();
        let mut work: Vec<usize> = Vec::new();
        if set.insert(0) {
            members.push(0);
        }
        for &g in gens {
            if set.insert(g) {
                members.push(g);
                work.push(g);
            }
        }
        while let Some(x) = work.pop() {
            let mut fresh = vec![self.neg(x)];
            for r in 0..self.order {
                fresh.push(self.mul(r, x));
                fresh.push(self.mul(x, r));
            }
            for &y in &members {
                fresh.push(self.add(x, y));
            }
            for z in fresh {
                if set.insert(z) {
                    members.push(z);
                    work.push(z);
                }
            }
        }
        set
    }

    pub fn principal_two_sided_ideal(&self, a: usize) -> TwoSidedIdeal {
        TwoSidedIdeal::from_mask(self.close(ElementSet::empty(self.order), &[a]))
    }

    /// Ideal generated by a set of elements.
    pub fn ideal_generated(&self, gens: &[usize]) -> TwoSidedIdeal {
        TwoSidedIdeal::from_mask(self.close(ElementSet::empty(self.order), gens))
    }

    pub fn ideal_sum(&self, i: &TwoSidedIdeal, j: &TwoSidedIdeal) -> TwoSidedIdeal {
        TwoSidedIdeal::from_mask(self.close(i.mask.clone(), &j.elements))
    }

    /// Checks that `elements` form a two-sided ideal.
    pub fn ideal(&self, elements: &[usize]) -> Result<TwoSidedIdeal> {
        if elements.iter().any(|&x| x >= self.order) {
            return Err(Error::NotIdeal);
        }
        let mask = ElementSet::from_indices(self.order, elements.iter().copied());
        let ideal = self.ideal_generated(elements);
        if ideal.mask != mask {
            return Err(Error::NotIdeal);
        }
        Ok(ideal)
    }

    /// All two-sided ideals as joins of principal ideals, sorted by size then
    /// elements.
    pub fn two_sided_ideals(&self, limits: &Limits) -> Result<Vec<TwoSidedIdeal>> {
        Limits::check(self.order, self.enumeration_cap(limits))?;
        let zero = ElementSet::from_indices(self.order, [0]);
        let mut seen: HashSet<ElementSet> = HashSet::from([zero.clone()]);
        let mut queue = vec![zero];
        let mut head = 0;
        while head < queue.len() {
            let current = queue[head].clone();
            head += 1;
            for a in 0..self.order {
                if current.contains(a) {
                    continue;
                }
                let joined = self.close(current.clone(), &[a]);
                if seen.insert(joined.clone()) {
                    queue.push(joined);
                }
            }
        }
        let mut out: Vec<TwoSidedIdeal> = queue.into_iter().map(TwoSidedIdeal::from_mask).collect();
        out.sort();
        Ok(out)
    }

    /// Whether `p` is p-prime; on failure, the first pair `(a, b)` in index
    /// order with `I(a) ∩ I(b) ⊆ P` and neither in `P`.
    pub fn is_p_prime(&self, p: &TwoSidedIdeal) -> (bool, Option<(usize, usize)>) {
        let principal: Vec<ElementSet> = (0..self.order)
            .map(|a| self.principal_two_sided_ideal(a).mask)
            .collect();
        self.p_prime_with(&principal, p)
    }

    fn p_prime_with(&self, principal: &[ElementSet], p: &TwoSidedIdeal) -> (bool, Option<(usize, usize)>) {
        for a in (0..self.order).filter(|&a| !p.contains(a)) {
            for b in (0..self.order).filter(|&b| !p.contains(b)) {
                if principal[a].meet_within(&principal[b], &p.mask) {
                    return (false, Some((a, b)));
                }
            }
        }
        (true, None)
    }

    /// All p-prime ideals, in the canonical ideal order.
    pub fn p_prime_ideals(&self, limits: &Limits) -> Result<Vec<TwoSidedIdeal>> {
        let principal: Vec<ElementSet> = (0..self.order)
            .map(|a| self.principal_two_sided_ideal(a).mask)
            .collect();
        Ok(self
            .two_sided_ideals(limits)?
            .into_iter()
            .filter(|p| self.p_prime_with(&principal, p).0)
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TwoSidedIdeal {
    elements: Vec<usize>,
    mask: ElementSet,
}

impl TwoSidedIdeal {
    fn from_mask(mask: ElementSet) -> Self {
        TwoSidedIdeal {
            elements: mask.to_vec(),
            mask,
        }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.mask.contains(a)
    }

    pub fn is_subset(&self, other: &TwoSidedIdeal) -> bool {
        self.mask.is_subset(&other.mask)
    }

    pub fn intersection(&self, other: &TwoSidedIdeal) -> TwoSidedIdeal {
        TwoSidedIdeal::from_mask(self.mask.intersection(&other.mask))
    }
}

impl PartialOrd for TwoSidedIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for TwoSidedIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.len(), &self.elements).cmp(&(other.len(), &other.elements))
    }
}

/// Checks `V(I ∩ J) = V(I) ∪ V(J)` over all ideal pairs and
/// `V(I_1 + ... + I_k) = ∩ V(I_i)` over families of size at most 3, with
/// `V` taken over the p-prime ideals.
pub fn verify_ring_topology(r: &FiniteRing, limits: &Limits) -> Result<Vec<AxiomReport>> {
    let ideals = r.two_sided_ideals(limits)?;
    let primes = r.p_prime_ideals(limits)?;
    let index: std::collections::HashMap<&ElementSet, usize> =
        ideals.iter().enumerate().map(|(i, x)| (&x.mask, i)).collect();
    let v: Vec<ElementSet> = ideals
        .iter()
        .map(|i| ElementSet::from_indices(primes.len(), (0..primes.len()).filter(|&k| i.is_subset(&primes[k]))))
        .collect();
    let differing = |a: &ElementSet, b: &ElementSet| {
        let k = a.union(b).iter().find(|&k| a.contains(k) != b.contains(k)).unwrap();
        primes[k].elements.clone()
    };

    let mut w = None;
    'pairs: for i in 0..ideals.len() {
        for j in i..ideals.len() {
            let meet = index[&ideals[i].mask.intersection(&ideals[j].mask)];
            let rhs = v[i].union(&v[j]);
            if v[meet] != rhs {
                w = Some(AxiomWitness::IntersectionUnion {
                    left: ideals[i].elements.clone(),
                    right: ideals[j].elements.clone(),
                    prime: differing(&v[meet], &rhs),
                });
                break 'pairs;
            }
        }
    }
    let mut reports = vec![AxiomReport::from_witness(AxiomTag::IntersectionUnion, w)];

    let n = ideals.len();
    let sum = |a: usize, b: usize| index[&r.ideal_sum(&ideals[a], &ideals[b]).mask];
    let mut w = None;
    'family: for a in 0..n {
        for b in a..n {
            let ab = sum(a, b);
            let rhs = v[a].intersection(&v[b]);
            if v[ab] != rhs {
                w = Some(AxiomWitness::FamilyIntersection {
                    family: vec![ideals[a].elements.clone(), ideals[b].elements.clone()],
                    prime: differing(&v[ab], &rhs),
                });
                break 'family;
            }
            if a == b {
                continue;
            }
            for c in b + 1..n {
                let abc = sum(ab, c);
                let rhs3 = rhs.intersection(&v[c]);
                if v[abc] != rhs3 {
                    w = Some(AxiomWitness::FamilyIntersection {
                        family: [a, b, c].iter().map(|&m| ideals[m].elements.clone()).collect(),
                        prime: differing(&v[abc], &rhs3),
                    });
                    break 'family;
                }
            }
        }
    }
    reports.push(AxiomReport::from_witness(AxiomTag::FamilyJoin, w));
    Ok(reports)
}

/// Bounded check that `(n)` is p-prime in `Z`: scans `a, b` in the order
/// `1, -1, 2, -2, ..., bound, -bound`, using `I(a) ∩ I(b) = (lcm(a, b))`,
/// and returns the first `(a, b)` with `n | lcm(a, b)` but `n ∤ a`, `n ∤ b`.
pub fn z_pprime_window_check(n: i64, bound: i64) -> Result<Option<(i64, i64)>> {
    if n < 2 {
        return Err(Error::UnsupportedParameter(format!("window check needs n >= 2, got {n}")));
    }
    if bound < n {
        return Err(Error::UnsupportedParameter(format!("bound {bound} is below n = {n}")));
    }
    let window: Vec<i64> = (1..=bound).flat_map(|k| [k, -k]).collect();
    for &a in window.iter().filter(|&&a| a % n != 0) {
        for &b in window.iter().filter(|&&b| b % n != 0) {
            if a.lcm(&b) % n == 0 {
                return Ok(Some((a, b)));
            }
        }
    }
    Ok(None)
}
