//! Recognition of the finite groups without divisors of zero (trivial base),
//! cross-checked against the exhaustive zero-divisor scan, and the curated
//! test corpus.

use serde::Serialize;

use crate::comma::{find_zero_divisor_pair, GGroup, ZeroDivisorWitness};
use crate::group::are_isomorphic;
use crate::group::named::{
    abelian, alternating, cyclic, dihedral, direct_product, factorize, generalized_quaternion, metacyclic,
    multiplicative_order, symmetric,
};
use crate::group::{FiniteGroup, Subgroup};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum MarinClass {
    Trivial,
    CyclicPrimePower { p: u64, n: u32 },
    /// Order `2^n`.
    GeneralizedQuaternion { n: u32 },
    /// `Z/p^a ⋊ Z/q^b` with a faithful action.
    MetacyclicPQ { p: u64, a: u32, q: u64, b: u32 },
    NotStronglyIndecomposable { witness: ZeroDivisorWitness },
}

impl MarinClass {
    pub fn is_strongly_indecomposable(&self) -> bool {
        !matches!(self, MarinClass::NotStronglyIndecomposable { .. })
    }

    pub fn label(&self) -> String {
        match self {
            MarinClass::Trivial => "Trivial".into(),
            MarinClass::CyclicPrimePower { p, n } => format!("CyclicPrimePower({p},{n})"),
            MarinClass::GeneralizedQuaternion { n } => format!("GeneralizedQuaternion({n})"),
            MarinClass::MetacyclicPQ { p, a, q, b } => format!("MetacyclicPQ({p},{a},{q},{b})"),
            MarinClass::NotStronglyIndecomposable { .. } => "NotStronglyIndecomposable".into(),
        }
    }
}

/// Valid twists `k` for `Z/p^a ⋊ Z/q^b`: `k` of multiplicative order `q^b`
/// modulo `p^a`.
pub fn metacyclic_twists(p: u64, a: u32, q: u64, b: u32) -> Vec<u64> {
    let (pa, qb) = (p.pow(a), q.pow(b));
    (2..pa).filter(|&k| multiplicative_order(k, pa) == Some(qb)).collect()
}

/// Parameter splits `(p, a, q, b)` of `order` admitting a faithful action.
fn metacyclic_splits(order: u64) -> Vec<(u64, u32, u64, u32)> {
    let f = factorize(order);
    if f.len() != 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, j) in [(0, 1), (1, 0)] {
        let ((p, a), (q, b)) = (f[i], f[j]);
        if p % 2 == 1 && (p - 1) % q.pow(b) == 0 {
            out.push((p, a, q, b));
        }
    }
    out
}

/// Structural recognition against the constructed archetypes.
fn recognize(g: &FiniteGroup) -> Result<Option<MarinClass>> {
    let order = g.order() as u64;
    if order == 1 {
        return Ok(Some(MarinClass::Trivial));
    }
    let f = factorize(order);
    if let [(p, n)] = f[..] {
        if g.element_orders().iter().any(|&o| o as u64 == order) {
            return Ok(Some(MarinClass::CyclicPrimePower { p, n }));
        }
        if p == 2 && n >= 3 && are_isomorphic(g, &generalized_quaternion(n)?)?.is_some() {
            return Ok(Some(MarinClass::GeneralizedQuaternion { n }));
        }
        return Ok(None);
    }
    for (p, a, q, b) in metacyclic_splits(order) {
        for k in metacyclic_twists(p, a, q, b) {
            if are_isomorphic(g, &metacyclic(p, a, q, b, k)?)?.is_some() {
                return Ok(Some(MarinClass::MetacyclicPQ { p, a, q, b }));
            }
        }
    }
    Ok(None)
}

/// Classifies `g` structurally and confirms the verdict with the exhaustive
/// zero-divisor scan over the trivial base.
pub fn marin_class(g: &FiniteGroup, limits: &Limits) -> Result<MarinClass> {
    Limits::check(g.order(), limits.group_order)?;
    let structural = recognize(g)?;
    let witness = find_zero_divisor_pair(&GGroup::plain(g.clone()), limits)?;
    match (structural, witness) {
        (Some(class), None) => Ok(class),
        (None, Some(witness)) => Ok(MarinClass::NotStronglyIndecomposable { witness }),
        (Some(class), Some(w)) => Err(Error::ClassifierInconsistency {
            name: g.label(),
            detail: format!("matches {} but ({}, {}) divide zero", class.label(), w.x, w.y),
        }),
        (None, None) => Err(Error::ClassifierInconsistency {
            name: g.label(),
            detail: "no divisors of zero but no archetype matches".into(),
        }),
    }
}

/// Whether every element order is 1 or a prime power; otherwise the first
/// element that violates it.
pub fn prime_power_orders(g: &FiniteGroup) -> (bool, Option<usize>) {
    let bad = g.elements().find(|&a| factorize(g.element_order(a) as u64).len() > 1);
    (bad.is_none(), bad)
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    let whole = Subgroup::whole(g.order());
    let mut term = whole.clone();
    loop {
        if term.is_trivial() {
            return true;
        }
        let next = g.commutator_subgroup(&term, &whole);
        if next == term {
            return false;
        }
        term = next;
    }
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub group: FiniteGroup,
    pub tags: Vec<&'static str>,
}

impl CorpusEntry {
    fn new(group: FiniteGroup, family: &'static str) -> Self {
        let mut tags = vec![family];
        if group.is_abelian() {
            tags.push("abelian");
        }
        if factorize(group.order() as u64).len() <= 1 {
            tags.push("p-group");
        }
        if is_nilpotent(&group) {
            tags.push("nilpotent");
        }
        if group.order() > 1 && is_simple(&group) {
            tags.push("simple");
        }
        CorpusEntry {
            name: group.label(),
            group,
            tags,
        }
    }
}

fn is_simple(g: &FiniteGroup) -> bool {
    g.conjugacy_classes()
        .iter()
        .filter(|c| c[0] != 0)
        .all(|c| g.normal_closure(c).is_whole())
}

/// Invariant-factor lists `d1 | d2 | ... | dk` with `k >= 2`, `d1 > 1` and
/// product at most `max`.
fn invariant_factor_lists(max: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, product: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() >= 2 {
            out.push(prefix.clone());
        }
        let last = *prefix.last().unwrap();
        let mut d = last;
        while product * d <= max {
            prefix.push(d);
            extend(prefix, product * d, max, out);
            prefix.pop();
            d += last;
        }
    }
    let mut out = Vec::new();
    for d in 2..=max {
        extend(&mut vec![d], d, max, &mut out);
    }
    out.sort_by_key(|l| (l.iter().product::<usize>(), l.clone()));
    out
}

/// Curated, deterministic list of groups of order at most `max_order`.
///
/// Cyclic groups, the noncyclic abelian groups by invariant factors,
/// dihedral groups `D_n` (order `2n`, `n >= 3`), generalized quaternion
/// groups, symmetric (`k >= 3`) and alternating (`k >= 4`) groups, one
/// metacyclic group per admissible `(p, a, q, b)` with `q^b > 2` (the case
/// `q^b = 2` is dihedral), and products of the nonabelian ones with `Z/m`.
/// Not exhaustive over isomorphism types. Entries are sorted by order,
/// then by family in the order listed.
pub fn corpus(max_order: usize) -> Vec<CorpusEntry> {
    let max = max_order.min(Limits::default().group_order);
    let mut out = Vec::new();
    for n in 1..=max {
        out.push(CorpusEntry::new(cyclic(n), "cyclic"));
    }
    for l in invariant_factor_lists(max) {
        out.push(CorpusEntry::new(abelian(&l).expect("positive factors"), "abelian"));
    }
    let mut nonabelian = Vec::new();
    for n in (3..).take_while(|n| 2 * n <= max) {
        nonabelian.push(CorpusEntry::new(dihedral(n).expect("n >= 3"), "dihedral"));
    }
    for n in (3..=9u32).take_while(|&n| 1usize << n <= max) {
        nonabelian.push(CorpusEntry::new(generalized_quaternion(n).expect("3 <= n <= 9"), "quaternion"));
    }
    for k in (3..=6usize).filter(|&k| (1..=k).product::<usize>() <= max) {
        nonabelian.push(CorpusEntry::new(symmetric(k).expect("k >= 3"), "symmetric"));
    }
    for k in (4..=6usize).filter(|&k| (1..=k).product::<usize>() / 2 <= max) {
        nonabelian.push(CorpusEntry::new(alternating(k).expect("k >= 4"), "alternating"));
    }
    for order in 6..=max as u64 {
        for (p, a, q, b) in metacyclic_splits(order) {
            if q.pow(b) > 2 {
                let k = metacyclic_twists(p, a, q, b)[0];
                let g = metacyclic(p, a, q, b, k).expect("admissible parameters");
                nonabelian.push(CorpusEntry::new(g, "metacyclic"));
            }
        }
    }
    let mut products = Vec::new();
    for e in &nonabelian {
        for m in (2..).take_while(|m| e.group.order() * m <= max) {
            products.push(CorpusEntry::new(direct_product(&e.group, &cyclic(m)), "product"));
        }
    }
    out.extend(nonabelian);
    out.extend(products);
    out.sort_by_key(|e| e.group.order());
    out
}
