//! Prime normal subgroups, the closed sets `V(I)`, radicals and the checks
//! of the topology identities.
//!
//! Two notions of primality are supported. `QuotientDomain` asks that `H/P`
//! be a domain. `IntersectionPrime` asks that `u(x) ∩ u(y) ⊆ P` force
//! `x ∈ P` or `y ∈ P`, where `u(x)` is the normal closure of `x` in `H`.
//! They differ already on `Z/2 x Z/2` (the diagonal is prime only under the
//! first).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::ElementSet;
use crate::comma::{self, GGroup};
use crate::group::{FiniteGroup, Subgroup};
use crate::{Error, Limits, Result};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PrimalityNotion {
    QuotientDomain,
    #[default]
    #[serde(rename = "intersection")]
    IntersectionPrime,
}

impl PrimalityNotion {
    pub fn tag(self) -> &'static str {
        match self {
            PrimalityNotion::QuotientDomain => "quotient-domain",
            PrimalityNotion::IntersectionPrime => "intersection",
        }
    }
}

impl fmt::Display for PrimalityNotion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for PrimalityNotion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "intersection" | "intersection-prime" => Ok(PrimalityNotion::IntersectionPrime),
            "quotient-domain" | "quotient" => Ok(PrimalityNotion::QuotientDomain),
            _ => Err(Error::InputParse(format!("unknown primality notion {s:?}"))),
        }
    }
}

/// Normal closures `u(x)` of every element, for the intersection test.
struct NormalClosures(Vec<ElementSet>);

impl NormalClosures {
    fn of(h: &FiniteGroup) -> Self {
        NormalClosures(h.elements().map(|x| h.normal_closure(&[x]).mask().clone()).collect())
    }

    /// `P` is intersection-prime iff no two elements outside `P` have
    /// normal closures meeting inside `P`.
    fn is_prime(&self, p: &Subgroup) -> bool {
        let outside: Vec<usize> = (0..self.0.len()).filter(|&x| !p.contains(x)).collect();
        for (i, &x) in outside.iter().enumerate() {
            for &y in &outside[i..] {
                if self.0[x].meet_within(&self.0[y], p.mask()) {
                    return false;
                }
            }
        }
        true
    }
}

fn require_normal(h: &FiniteGroup, n: &Subgroup) -> Result<()> {
    if n.parent_order() != h.order() || !h.is_normal(n) {
        Err(Error::NotNormal)
    } else {
        Ok(())
    }
}

fn prime_under(x: &GGroup, n: &Subgroup, notion: PrimalityNotion, closures: Option<&NormalClosures>, limits: &Limits) -> Result<bool> {
    match notion {
        PrimalityNotion::QuotientDomain => comma::is_domain(&x.quotient(n)?, limits),
        PrimalityNotion::IntersectionPrime => Ok(match closures {
            Some(c) => c.is_prime(n),
            None => NormalClosures::of(x.carrier()).is_prime(n),
        }),
    }
}

pub fn is_prime(x: &GGroup, n: &Subgroup, notion: PrimalityNotion, limits: &Limits) -> Result<bool> {
    require_normal(x.carrier(), n)?;
    Limits::check(x.carrier().order(), limits.group_order)?;
    prime_under(x, n, notion, None, limits)
}

/// The intersection condition stated over pairs of normal subgroups:
/// `I ∩ J ⊆ P` implies `I ⊆ P` or `J ⊆ P`.
pub fn is_intersection_prime_by_normals(normals: &[Subgroup], p: &Subgroup) -> bool {
    for (i, a) in normals.iter().enumerate() {
        if a.is_subset(p) {
            continue;
        }
        for b in &normals[i..] {
            if !b.is_subset(p) && a.mask().meet_within(b.mask(), p.mask()) {
                return false;
            }
        }
    }
    true
}

/// A closed set `V(I)` (or `V*(I)` when starred), as indices into the
/// spectrum's prime list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosedSet {
    pub defining: Vec<usize>,
    pub members: Vec<usize>,
    pub starred: bool,
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    owner: GGroup,
    notion: PrimalityNotion,
    normals: Vec<Subgroup>,
    primes: Vec<Subgroup>,
    containment: Vec<Vec<bool>>,
}

/// Computes all primes of `x` under `notion`.
pub fn spectrum(x: &GGroup, notion: PrimalityNotion, limits: &Limits) -> Result<Spectrum> {
    let h = x.carrier();
    let normals = h.normal_subgroups(limits)?;
    let closures = match notion {
        PrimalityNotion::IntersectionPrime => Some(NormalClosures::of(h)),
        PrimalityNotion::QuotientDomain => None,
    };
    let mut primes = Vec::new();
    for n in &normals {
        if prime_under(x, n, notion, closures.as_ref(), limits)? {
            primes.push(n.clone());
        }
    }
    let containment = primes
        .iter()
        .map(|a| primes.iter().map(|b| a.is_subset(b)).collect())
        .collect();
    Ok(Spectrum {
        owner: x.clone(),
        notion,
        normals,
        primes,
        containment,
    })
}

impl Spectrum {
    pub fn owner(&self) -> &GGroup {
        &self.owner
    }

    pub fn notion(&self) -> PrimalityNotion {
        self.notion
    }

    pub fn primes(&self) -> &[Subgroup] {
        &self.primes
    }

    pub fn normal_subgroups(&self) -> &[Subgroup] {
        &self.normals
    }

    /// `containment()[i][j]` is true when prime `i` is contained in prime `j`.
    pub fn containment(&self) -> &[Vec<bool>] {
        &self.containment
    }

    /// Indices of primes other than the whole carrier.
    pub fn starred_indices(&self) -> Vec<usize> {
        (0..self.primes.len()).filter(|&i| !self.primes[i].is_whole()).collect()
    }

    fn v_mask(&self, i: &Subgroup, starred: bool) -> ElementSet {
        ElementSet::from_indices(
            self.primes.len(),
            (0..self.primes.len())
                .filter(|&k| i.is_subset(&self.primes[k]) && !(starred && self.primes[k].is_whole())),
        )
    }

    pub fn v_set(&self, i: &Subgroup, starred: bool) -> Result<ClosedSet> {
        require_normal(self.owner.carrier(), i)?;
        Ok(ClosedSet {
            defining: i.elements().to_vec(),
            members: self.v_mask(i, starred).to_vec(),
            starred,
        })
    }

    /// Distinct closed sets `V(I)` over all normal `I`, plus the empty set.
    pub fn closed_family(&self, starred: bool) -> Vec<Vec<usize>> {
        let mut family: Vec<ElementSet> = vec![ElementSet::empty(self.primes.len())];
        for n in &self.normals {
            let m = self.v_mask(n, starred);
            if !family.contains(&m) {
                family.push(m);
            }
        }
        let mut out: Vec<Vec<usize>> = family.iter().map(ElementSet::to_vec).collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        out
    }

    /// Nonempty and not the union of two strictly smaller closed sets of the
    /// same (starred or unstarred) family.
    pub fn is_irreducible(&self, c: &ClosedSet) -> bool {
        if c.members.is_empty() {
            return false;
        }
        let target = ElementSet::from_indices(self.primes.len(), c.members.iter().copied());
        let smaller: Vec<ElementSet> = self
            .closed_family(c.starred)
            .into_iter()
            .map(|m| ElementSet::from_indices(self.primes.len(), m))
            .filter(|m| m.is_subset(&target) && m.len() < target.len())
            .collect();
        for (i, a) in smaller.iter().enumerate() {
            for b in &smaller[i..] {
                if a.union(b) == target {
                    return false;
                }
            }
        }
        true
    }

    fn intersect_primes(&self, members: impl Iterator<Item = usize>) -> Subgroup {
        let mut acc = ElementSet::full(self.owner.carrier().order());
        for k in members {
            acc.intersect_with(self.primes[k].mask());
        }
        Subgroup::from_mask(acc)
    }

    /// Intersection of all primes.
    pub fn radical(&self) -> Subgroup {
        self.intersect_primes(0..self.primes.len())
    }

    /// Intersection of the primes containing `i`.
    pub fn radical_of(&self, i: &Subgroup) -> Result<Subgroup> {
        require_normal(self.owner.carrier(), i)?;
        Ok(self.intersect_primes(self.v_mask(i, false).iter()))
    }

    pub fn is_radical_ideal(&self, i: &Subgroup) -> Result<bool> {
        Ok(&self.radical_of(i)? == i)
    }

    pub fn is_prime_member(&self, i: &Subgroup) -> bool {
        self.primes.binary_search(i).is_ok()
    }
}

pub fn radical(x: &GGroup, notion: PrimalityNotion, limits: &Limits) -> Result<Subgroup> {
    Ok(spectrum(x, notion, limits)?.radical())
}

pub fn radical_of(x: &GGroup, i: &Subgroup, notion: PrimalityNotion, limits: &Limits) -> Result<Subgroup> {
    spectrum(x, notion, limits)?.radical_of(i)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomTag {
    #[serde(rename = "T1")]
    T1,
    #[serde(rename = "T2")]
    T2,
    #[serde(rename = "T3")]
    T3,
    #[serde(rename = "intersection-union")]
    IntersectionUnion,
    #[serde(rename = "family-join")]
    FamilyJoin,
    #[serde(rename = "radical-irreducible")]
    RadicalIrreducible,
    #[serde(rename = "noetherian")]
    Noetherian,
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).ok().and_then(|v| v.as_str().map(String::from));
        f.write_str(s.as_deref().unwrap_or("?"))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum AxiomWitness {
    /// A prime in one side of `V(I ∩ J) = V(I) ∪ V(J)` but not the other.
    IntersectionUnion {
        left: Vec<usize>,
        right: Vec<usize>,
        prime: Vec<usize>,
    },
    /// A prime in one side of `V(<I_1,...,I_k>) = V(I_1) ∩ ... ∩ V(I_k)` only.
    FamilyIntersection { family: Vec<Vec<usize>>, prime: Vec<usize> },
    /// A radical ideal whose closed set's irreducibility disagrees with its primality.
    RadicalIrreducibility {
        ideal: Vec<usize>,
        irreducible: bool,
        prime: bool,
    },
    Subobject { subgroup: Vec<usize> },
    NormalMeet { left: Vec<usize>, right: Vec<usize> },
    Correspondence { normal: Vec<usize>, over: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub tag: AxiomTag,
    pub pass: bool,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub skipped: bool,
    pub witness: Option<AxiomWitness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl AxiomReport {
    pub(crate) fn from_witness(tag: AxiomTag, witness: Option<AxiomWitness>) -> Self {
        AxiomReport {
            tag,
            pass: witness.is_none(),
            skipped: false,
            witness,
            detail: None,
        }
    }

    fn skipped(tag: AxiomTag, detail: String) -> Self {
        AxiomReport {
            tag,
            pass: true,
            skipped: true,
            witness: None,
            detail: Some(detail),
        }
    }
}

/// Indexes the normal subgroups and memoizes their pairwise joins.
struct NormalLattice<'a> {
    group: &'a FiniteGroup,
    normals: &'a [Subgroup],
    index: HashMap<ElementSet, usize>,
    gens: Vec<Vec<usize>>,
    joins: HashMap<(usize, usize), usize>,
}

impl<'a> NormalLattice<'a> {
    fn new(group: &'a FiniteGroup, normals: &'a [Subgroup]) -> Self {
        NormalLattice {
            group,
            normals,
            index: normals.iter().enumerate().map(|(i, n)| (n.mask().clone(), i)).collect(),
            gens: normals.iter().map(|n| group.generating_set(n)).collect(),
            joins: HashMap::new(),
        }
    }

    fn position(&self, s: &ElementSet) -> usize {
        self.index[s]
    }

    fn join(&mut self, a: usize, b: usize) -> usize {
        let key = (a.min(b), a.max(b));
        if let Some(&j) = self.joins.get(&key) {
            return j;
        }
        let j = if self.normals[a].is_subset(&self.normals[b]) {
            b
        } else if self.normals[b].is_subset(&self.normals[a]) {
            a
        } else {
            let gens = [self.gens[a].as_slice(), self.gens[b].as_slice()].concat();
            let s = self.group.generate(&gens);
            self.position(s.mask())
        };
        self.joins.insert(key, j);
        j
    }
}

/// Checks the topology identities, the radical/irreducibility equivalence and
/// instances of the top-couple axioms, returning one report per tag.
pub fn verify_axioms(x: &GGroup, notion: PrimalityNotion, limits: &Limits) -> Result<Vec<AxiomReport>> {
    let spec = spectrum(x, notion, limits)?;
    verify_spectrum_axioms(&spec, limits)
}

pub fn verify_spectrum_axioms(spec: &Spectrum, limits: &Limits) -> Result<Vec<AxiomReport>> {
    let x = spec.owner();
    let h = x.carrier();
    let normals = spec.normal_subgroups();
    let v: Vec<ElementSet> = normals.iter().map(|n| spec.v_mask(n, false)).collect();
    let mut lattice = NormalLattice::new(h, normals);
    let mut reports = Vec::new();

    // T1 and T2 instances
    if h.order() <= limits.stable_enumeration {
        let w = comma::check_subobjects_are_domains(x, limits)?
            .map(|s| AxiomWitness::Subobject { subgroup: s.elements().to_vec() });
        reports.push(AxiomReport::from_witness(AxiomTag::T1, w));
    } else {
        reports.push(AxiomReport::skipped(
            AxiomTag::T1,
            format!("carrier order {} exceeds the stable-enumeration cap", h.order()),
        ));
    }
    let w = comma::check_normal_meets(x, limits)?.map(|(a, b)| AxiomWitness::NormalMeet {
        left: a.elements().to_vec(),
        right: b.elements().to_vec(),
    });
    reports.push(AxiomReport::from_witness(AxiomTag::T2, w));

    // T3: quotients carry the induced structure; normal subgroups above N
    // correspond to normal subgroups of H/N.
    let mut t3 = None;
    'outer: for n in normals {
        let q = x.quotient(n)?;
        if q.morphism().verify(q.base(), q.carrier()).is_err() {
            t3 = Some(AxiomWitness::Correspondence {
                normal: n.elements().to_vec(),
                over: n.elements().to_vec(),
            });
            break;
        }
        let (qg, proj) = h.quotient(n)?;
        for m in normals.iter().filter(|m| n.is_subset(m)) {
            let image: Vec<usize> = m.elements().iter().map(|&a| proj.apply(a)).collect();
            let img = qg.generate(&image);
            let back = ElementSet::from_indices(h.order(), h.elements().filter(|&a| img.contains(proj.apply(a))));
            if !qg.is_normal(&img) || &back != m.mask() {
                t3 = Some(AxiomWitness::Correspondence {
                    normal: n.elements().to_vec(),
                    over: m.elements().to_vec(),
                });
                break 'outer;
            }
        }
    }
    reports.push(AxiomReport::from_witness(AxiomTag::T3, t3));

    // V(I ∩ J) = V(I) ∪ V(J)
    let mut w = None;
    'pairs: for i in 0..normals.len() {
        for j in i..normals.len() {
            let meet = lattice.position(&normals[i].mask().intersection(normals[j].mask()));
            let lhs = &v[meet];
            let rhs = v[i].union(&v[j]);
            if lhs != &rhs {
                let k = lhs.union(&rhs).iter().find(|&k| lhs.contains(k) != rhs.contains(k)).unwrap();
                w = Some(AxiomWitness::IntersectionUnion {
                    left: normals[i].elements().to_vec(),
                    right: normals[j].elements().to_vec(),
                    prime: spec.primes[k].elements().to_vec(),
                });
                break 'pairs;
            }
        }
    }
    reports.push(AxiomReport::from_witness(AxiomTag::IntersectionUnion, w));

    // V(<I_a>) = ∩ V(I_a) for families of size 1, 2 and 3
    let n = normals.len();
    let mut w = None;
    let family_witness = |members: &[usize], lhs: &ElementSet, rhs: &ElementSet| {
        let k = lhs.union(rhs).iter().find(|&k| lhs.contains(k) != rhs.contains(k)).unwrap();
        AxiomWitness::FamilyIntersection {
            family: members.iter().map(|&m| normals[m].elements().to_vec()).collect(),
            prime: spec.primes[k].elements().to_vec(),
        }
    };
    'family: for a in 0..n {
        for b in a..n {
            let ab = if a == b { a } else { lattice.join(a, b) };
            let rhs = v[a].intersection(&v[b]);
            if v[ab] != rhs {
                w = Some(family_witness(&[a, b], &v[ab], &rhs));
                break 'family;
            }
            if a == b {
                continue;
            }
            for c in b + 1..n {
                let abc = lattice.join(ab, c);
                let rhs3 = rhs.intersection(&v[c]);
                if v[abc] != rhs3 {
                    w = Some(family_witness(&[a, b, c], &v[abc], &rhs3));
                    break 'family;
                }
            }
        }
    }
    reports.push(AxiomReport::from_witness(AxiomTag::FamilyJoin, w));

    // for radical I: V(I) irreducible <=> I prime
    let mut w = None;
    for ideal in normals {
        if !spec.is_radical_ideal(ideal)? {
            continue;
        }
        let c = spec.v_set(ideal, false)?;
        let irreducible = spec.is_irreducible(&c);
        let prime = spec.is_prime_member(ideal);
        if irreducible != prime {
            w = Some(AxiomWitness::RadicalIrreducibility {
                ideal: ideal.elements().to_vec(),
                irreducible,
                prime,
            });
            break;
        }
    }
    reports.push(AxiomReport::from_witness(AxiomTag::RadicalIrreducible, w));

    // ascending chains of closed sets are bounded by the family size
    let family = spec.closed_family(false);
    let longest = longest_chain(&family);
    let mut noetherian = AxiomReport::from_witness(AxiomTag::Noetherian, None);
    noetherian.detail = Some(format!(
        "{} closed sets, longest strict chain has {} members",
        family.len(),
        longest
    ));
    noetherian.pass = longest <= family.len();
    reports.push(noetherian);

    Ok(reports)
}

/// Length of the longest strictly increasing chain in a family of sets
/// sorted by size.
fn longest_chain(family: &[Vec<usize>]) -> usize {
    let mut best = vec![1usize; family.len()];
    for i in 0..family.len() {
        for j in 0..i {
            let sub = family[j].len() < family[i].len() && family[j].iter().all(|x| family[i].binary_search(x).is_ok());
            if sub {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}
