//! Direct-product decomposition of a group with trivial radical.
//!
//! The primes other than the whole group are split into connected
//! components of their containment graph. Each component `i` yields a
//! complement `H_i` (the intersection of its primes) and a factor
//! `G_i = ∩_{j≠i} H_j`. Every structural claim about the result is checked
//! by direct computation before a certificate is returned.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::comma::GGroup;
use crate::group::{are_isomorphic, FiniteGroup, Subgroup};
use crate::spectrum::{spectrum, PrimalityNotion, Spectrum};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub check: &'static str,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct DecompositionCertificate {
    pub notion: PrimalityNotion,
    pub factors: Vec<Subgroup>,
    pub complements: Vec<Subgroup>,
    /// Indices into the spectrum's prime list, one list per factor.
    pub components: Vec<Vec<usize>>,
    /// Image in `G` of each tuple of the external product, tuples numbered
    /// row-major over the factors' sorted element lists.
    pub product_map: Vec<usize>,
    pub transcript: Vec<CheckRecord>,
}

impl DecompositionCertificate {
    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(Subgroup::len).collect()
    }

    pub fn verified(&self) -> bool {
        self.transcript.iter().all(|c| c.pass)
    }
}

/// Diagnostics for a decomposition whose verification failed.
#[derive(Clone, Debug)]
pub struct ReconstructionReport {
    pub group: String,
    pub failed_check: &'static str,
    pub certificate: DecompositionCertificate,
    pub primes: Vec<Vec<usize>>,
}

pub fn decompose(x: &GGroup, notion: PrimalityNotion, limits: &Limits) -> Result<DecompositionCertificate> {
    let spec = spectrum(x, notion, limits)?;
    decompose_spectrum(&spec, limits)
}

fn components(spec: &Spectrum) -> Vec<Vec<usize>> {
    let starred = spec.starred_indices();
    let c = spec.containment();
    let mut comp_of: HashMap<usize, usize> = HashMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in &starred {
        if comp_of.contains_key(&start) {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp_of.insert(start, id);
        let mut head = 0;
        while head < members.len() {
            let a = members[head];
            head += 1;
            for &b in &starred {
                if !comp_of.contains_key(&b) && (c[a][b] || c[b][a]) {
                    comp_of.insert(b, id);
                    members.push(b);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    comps
}

fn intersect_all<'a>(order: usize, subs: impl Iterator<Item = &'a Subgroup>) -> Subgroup {
    let mut acc = ElementSet::full(order);
    for s in subs {
        acc.intersect_with(s.mask());
    }
    Subgroup::from_mask(acc)
}

pub fn decompose_spectrum(spec: &Spectrum, limits: &Limits) -> Result<DecompositionCertificate> {
    let x = spec.owner();
    let g = x.carrier();
    let order = g.order();
    let radical = spec.radical();
    if !radical.is_trivial() {
        return Err(Error::RadicalNotTrivial {
            radical: radical.elements().to_vec(),
        });
    }
    let primes = spec.primes();
    let comps = {
        let c = components(spec);
        if c.is_empty() {
            vec![Vec::new()]
        } else {
            c
        }
    };
    let complements: Vec<Subgroup> = comps
        .iter()
        .map(|c| intersect_all(order, c.iter().map(|&i| &primes[i])))
        .collect();
    let n = comps.len();
    let factors: Vec<Subgroup> = (0..n)
        .map(|i| intersect_all(order, (0..n).filter(|&j| j != i).map(|j| &complements[j])))
        .collect();

    let mut transcript = Vec::new();
    let mut record = |check: &'static str, pass: bool| transcript.push(CheckRecord { check, pass });

    // V*(H_i) is exactly component i, so the components are disjoint closed sets
    let closed = comps.iter().zip(&complements).all(|(c, h)| {
        let v: Vec<usize> = spec
            .starred_indices()
            .into_iter()
            .filter(|&k| h.is_subset(&primes[k]))
            .collect();
        &v == c
    });
    record("components-are-closed-sets", closed || comps[0].is_empty());

    let all_prime = complements.iter().all(|h| spec.is_prime_member(h)) || comps[0].is_empty();
    record("complements-prime", all_prime);

    record(
        "complements-meet-trivially",
        intersect_all(order, complements.iter()).is_trivial(),
    );

    let mut disjoint = true;
    let mut commuting = true;
    for i in 0..n {
        for j in i + 1..n {
            disjoint &= factors[i].intersection(&factors[j]).is_trivial();
            commuting &= factors[i]
                .elements()
                .iter()
                .all(|&a| factors[j].elements().iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
        }
    }
    record("factors-meet-trivially", disjoint);
    record("factors-commute", commuting);

    let product_map = product_map(g, &factors);
    let bijective = product_map.len() == order
        && ElementSet::from_indices(order, product_map.iter().copied()).len() == order;
    record("product-map-bijective", bijective);
    record(
        "product-map-homomorphism",
        bijective && product_is_homomorphism(g, &factors, &product_map),
    );

    let generated = (0..n).all(|i| {
        let gens: Vec<usize> = (0..n)
            .filter(|&j| j != i)
            .flat_map(|j| factors[j].elements().iter().copied())
            .collect();
        g.generate(&gens) == complements[i]
    });
    record("complements-generated-by-other-factors", generated);

    let mut iso = true;
    let mut indecomposable = true;
    for (f, h) in factors.iter().zip(&complements) {
        if !g.is_normal(h) {
            iso = false;
            indecomposable = false;
            continue;
        }
        let (q, _) = g.quotient(h)?;
        let (fg, _) = g.subgroup_as_group(f);
        iso &= are_isomorphic(&fg, &q)?.is_some();
        indecomposable &= directly_indecomposable(&q, limits)?;
    }
    record("factors-isomorphic-to-quotients", iso);
    record("quotients-directly-indecomposable", indecomposable);

    let cert = DecompositionCertificate {
        notion: spec.notion(),
        factors,
        complements,
        components: comps,
        product_map,
        transcript,
    };
    if let Some(failed) = cert.transcript.iter().find(|c| !c.pass) {
        return Err(Error::ReconstructionFailed(Box::new(ReconstructionReport {
            group: g.label(),
            failed_check: failed.check,
            primes: primes.iter().map(|p| p.elements().to_vec()).collect(),
            certificate: cert,
        })));
    }
    Ok(cert)
}

/// No two proper nontrivial normal subgroups meet trivially with orders
/// multiplying to `|G|`.
pub fn directly_indecomposable(g: &FiniteGroup, limits: &Limits) -> Result<bool> {
    let normals = g.normal_subgroups(limits)?;
    let n = g.order();
    Ok(!normals.iter().enumerate().any(|(i, a)| {
        !a.is_trivial()
            && !a.is_whole()
            && normals[i + 1..]
                .iter()
                .any(|b| !b.is_trivial() && a.len() * b.len() == n && a.mask().meets_only_identity(b.mask()))
    }))
}

fn product_map(g: &FiniteGroup, factors: &[Subgroup]) -> Vec<usize> {
    let mut out = vec![0usize];
    for f in factors {
        let mut next = Vec::with_capacity(out.len() * f.len());
        for &acc in &out {
            for &e in f.elements() {
                next.push(g.mul(acc, e));
            }
        }
        out = next;
    }
    out
}

fn product_is_homomorphism(g: &FiniteGroup, factors: &[Subgroup], map: &[usize]) -> bool {
    let sizes: Vec<usize> = factors.iter().map(Subgroup::len).collect();
    let decode = |mut t: usize| -> Vec<usize> {
        let mut coords = vec![0; sizes.len()];
        for k in (0..sizes.len()).rev() {
            coords[k] = t % sizes[k];
            t /= sizes[k];
        }
        coords
    };
    let encode = |coords: &[usize]| coords.iter().zip(&sizes).fold(0, |acc, (&c, &s)| acc * s + c);
    let positions: Vec<HashMap<usize, usize>> = factors
        .iter()
        .map(|f| f.elements().iter().enumerate().map(|(i, &e)| (e, i)).collect())
        .collect();
    let coords: Vec<Vec<usize>> = (0..map.len()).map(decode).collect();
    for a in 0..map.len() {
        for b in 0..map.len() {
            let prod: Vec<usize> = (0..factors.len())
                .map(|k| {
                    let ea = factors[k].elements()[coords[a][k]];
                    let eb = factors[k].elements()[coords[b][k]];
                    positions[k][&g.mul(ea, eb)]
                })
                .collect();
            if map[encode(&prod)] != g.mul(map[a], map[b]) {
                return false;
            }
        }
    }
    true
}

/// All unordered internal factorizations of `g` into directly indecomposable
/// subgroups, each sorted canonically, the list sorted as well.
pub fn brute_force_decompositions(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Vec<Subgroup>>> {
    Limits::check(g.order(), limits.oracle)?;
    let mut memo: HashMap<Subgroup, Vec<Vec<Subgroup>>> = HashMap::new();
    let whole = Subgroup::whole(g.order());
    Ok(factorizations(g, &whole, &mut memo))
}

fn factorizations(
    g: &FiniteGroup,
    s: &Subgroup,
    memo: &mut HashMap<Subgroup, Vec<Vec<Subgroup>>>,
) -> Vec<Vec<Subgroup>> {
    if let Some(done) = memo.get(s) {
        return done.clone();
    }
    let (sg, emb) = g.subgroup_as_group(s);
    let unbounded = Limits::default().with_enumeration(usize::MAX);
    let normals: Vec<Subgroup> = sg
        .normal_subgroups(&unbounded)
        .expect("unbounded enumeration")
        .into_iter()
        .filter(|n| !n.is_trivial() && !n.is_whole())
        .map(|n| {
            Subgroup::from_mask(ElementSet::from_indices(
                g.order(),
                n.elements().iter().map(|&i| emb[i]),
            ))
        })
        .collect();
    let mut found: BTreeSet<Vec<Subgroup>> = BTreeSet::new();
    for (i, a) in normals.iter().enumerate() {
        for b in &normals[i + 1..] {
            if a.len() * b.len() != s.len() || !a.mask().meets_only_identity(b.mask()) {
                continue;
            }
            let fa = factorizations(g, a, memo);
            let fb = factorizations(g, b, memo);
            for x in &fa {
                for y in &fb {
                    let mut merged: Vec<Subgroup> = x.iter().chain(y).cloned().collect();
                    merged.sort();
                    found.insert(merged);
                }
            }
        }
    }
    let result: Vec<Vec<Subgroup>> = if found.is_empty() {
        vec![vec![s.clone()]]
    } else {
        found.into_iter().collect()
    };
    memo.insert(s.clone(), result.clone());
    result
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OracleMatch {
    Match,
    Mismatch,
    Skipped,
}

/// Groups `items` into isomorphism classes and returns the class sizes
/// paired with a representative, in first-seen order.
fn iso_classes(items: Vec<FiniteGroup>) -> Result<Vec<(FiniteGroup, usize)>> {
    let mut classes: Vec<(FiniteGroup, usize)> = Vec::new();
    'item: for f in items {
        for (rep, count) in classes.iter_mut() {
            if are_isomorphic(rep, &f)?.is_some() {
                *count += 1;
                continue 'item;
            }
        }
        classes.push((f, 1));
    }
    Ok(classes)
}

/// True when the two lists of groups agree as multisets of isomorphism types.
pub fn same_factor_types(a: &[FiniteGroup], b: &[FiniteGroup]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let ca = iso_classes(a.to_vec())?;
    let cb = iso_classes(b.to_vec())?;
    if ca.len() != cb.len() {
        return Ok(false);
    }
    for (rep, count) in &ca {
        let mut matched = false;
        for (other, c2) in &cb {
            if are_isomorphic(rep, other)?.is_some() {
                matched = count == c2;
                break;
            }
        }
        if !matched {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compares the certificate's factor types with every brute-force factorization.
pub fn compare_with_oracle(cert: &DecompositionCertificate, g: &FiniteGroup, limits: &Limits) -> Result<OracleMatch> {
    if g.order() > limits.oracle {
        return Ok(OracleMatch::Skipped);
    }
    let mine: Vec<FiniteGroup> = cert.factors.iter().map(|f| g.subgroup_as_group(f).0).collect();
    for fact in brute_force_decompositions(g, limits)? {
        let theirs: Vec<FiniteGroup> = fact.iter().map(|f| g.subgroup_as_group(f).0).collect();
        if !same_factor_types(&mine, &theirs)? {
            return Ok(OracleMatch::Mismatch);
        }
    }
    Ok(OracleMatch::Match)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named::*;

    fn lim() -> Limits {
        Limits::default()
    }

    fn plain(g: FiniteGroup) -> GGroup {
        GGroup::plain(g)
    }

    #[test]
    fn z6_splits_into_three_and_two() {
        let c = decompose(&plain(cyclic(6)), PrimalityNotion::IntersectionPrime, &lim()).unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.factors[0].elements(), &[0, 2, 4]);
        assert_eq!(c.factors[1].elements(), &[0, 3]);
        assert_eq!(c.complements[0].elements(), &[0, 3]);
        assert_eq!(c.complements[1].elements(), &[0, 2, 4]);
        assert!(c.verified());
    }

    #[test]
    fn z12_splits_into_four_and_three() {
        let c = decompose(&plain(cyclic(12)), PrimalityNotion::IntersectionPrime, &lim()).unwrap();
        assert_eq!(c.factor_orders(), vec![4, 3]);
        assert_eq!(c.components.len(), 2);
        assert_eq!(c.components[0].len(), 2);
    }

    #[test]
    fn q8_is_one_factor() {
        let q8 = generalized_quaternion(3).unwrap();
        let c = decompose(&plain(q8), PrimalityNotion::IntersectionPrime, &lim()).unwrap();
        assert_eq!(c.factor_orders(), vec![8]);
        assert!(c.complements[0].is_trivial());
    }

    #[test]
    fn klein_has_nontrivial_radical() {
        let v4 = abelian(&[2, 2]).unwrap();
        match decompose(&plain(v4), PrimalityNotion::IntersectionPrime, &lim()) {
            Err(Error::RadicalNotTrivial { radical }) => assert_eq!(radical, vec![0, 1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_group_is_its_own_factor() {
        let c = decompose(&plain(trivial()), PrimalityNotion::IntersectionPrime, &lim()).unwrap();
        assert_eq!(c.factor_orders(), vec![1]);
    }

    #[test]
    fn oracle_examples() {
        let f = brute_force_decompositions(&cyclic(6), &lim()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].iter().map(Subgroup::len).collect::<Vec<_>>(), vec![2, 3]);
        for n in [2, 4, 8, 9, 27] {
            let f = brute_force_decompositions(&cyclic(n), &lim()).unwrap();
            assert_eq!(f, vec![vec![Subgroup::whole(n)]]);
        }
        let f = brute_force_decompositions(&abelian(&[2, 2]).unwrap(), &lim()).unwrap();
        assert_eq!(f.len(), 3);
        let f = brute_force_decompositions(&dihedral(4).unwrap(), &lim()).unwrap();
        assert_eq!(f.len(), 1);
        assert!(matches!(
            brute_force_decompositions(&cyclic(100), &lim()),
            Err(Error::OrderCapExceeded { .. })
        ));
    }

    #[test]
    fn oracle_agrees_on_small_products() {
        for g in [cyclic(30), direct_product(&symmetric(3).unwrap(), &cyclic(5)), cyclic(12)] {
            let c = decompose(&plain(g.clone()), PrimalityNotion::IntersectionPrime, &lim()).unwrap();
            assert_eq!(compare_with_oracle(&c, &g, &lim()).unwrap(), OracleMatch::Match);
        }
    }
}
