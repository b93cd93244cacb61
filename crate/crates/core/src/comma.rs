//! Groups under a fixed base group `G`: a carrier `H` with a structural
//! morphism `f: G -> H`, on which `G` acts by `Ad(g)(h) = f(g) h f(g)^-1`.
//!
//! A nontrivial `x` is a divisor of zero when some nontrivial `y` has
//! `G(x) ∩ G(y) = 1` and `[G(x), G(y)] = 1`, where `G(x)` is the subgroup
//! generated by the adjoint orbit of `x`. Objects without divisors of zero
//! are domains.

use serde::Serialize;

use crate::bitset::ElementSet;
use crate::group::{named, FiniteGroup, GroupHomomorphism, Subgroup};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug)]
pub struct GGroup {
    base: FiniteGroup,
    carrier: FiniteGroup,
    morphism: GroupHomomorphism,
    acting: Vec<usize>,
}

impl GGroup {
    pub fn new(base: FiniteGroup, carrier: FiniteGroup, images: Vec<usize>) -> Result<Self> {
        let morphism = GroupHomomorphism::new(&base, &carrier, images)?;
        Ok(Self::from_parts(base, carrier, morphism))
    }

    fn from_parts(base: FiniteGroup, carrier: FiniteGroup, morphism: GroupHomomorphism) -> Self {
        let acting = morphism.image_set().to_vec();
        GGroup {
            base,
            carrier,
            morphism,
            acting,
        }
    }

    /// A plain group: trivial base, trivial action.
    pub fn plain(carrier: FiniteGroup) -> Self {
        let base = named::trivial();
        let morphism = GroupHomomorphism::trivial(&base, &carrier);
        Self::from_parts(base, carrier, morphism)
    }

    /// The group over itself through the identity morphism; the action is conjugation.
    pub fn over_itself(carrier: FiniteGroup) -> Self {
        let morphism = GroupHomomorphism::identity(&carrier);
        Self::from_parts(carrier.clone(), carrier, morphism)
    }

    pub fn with_trivial_morphism(base: FiniteGroup, carrier: FiniteGroup) -> Self {
        let morphism = GroupHomomorphism::trivial(&base, &carrier);
        Self::from_parts(base, carrier, morphism)
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn carrier(&self) -> &FiniteGroup {
        &self.carrier
    }

    pub fn morphism(&self) -> &GroupHomomorphism {
        &self.morphism
    }

    /// Distinct elements `f(g)`, sorted.
    pub fn acting_elements(&self) -> &[usize] {
        &self.acting
    }

    pub fn ad(&self, g: usize, h: usize) -> usize {
        self.carrier.conjugate(self.morphism.apply(g), h)
    }

    /// The adjoint orbit `{f(g) x f(g)^-1}`, sorted.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut set = ElementSet::empty(self.carrier.order());
        for &a in &self.acting {
            set.insert(self.carrier.conjugate(a, x));
        }
        set.to_vec()
    }

    /// `G(x)`: the subgroup generated by the adjoint orbit of `x`.
    pub fn adjoint_orbit_subgroup(&self, x: usize) -> Subgroup {
        self.carrier.generate(&self.orbit(x))
    }

    pub fn is_stable(&self, sub: &Subgroup) -> bool {
        let gens = self.carrier.generating_set(sub);
        self.acting
            .iter()
            .all(|&a| gens.iter().all(|&x| sub.contains(self.carrier.conjugate(a, x))))
    }

    /// `H/N` with the induced structural morphism `p ∘ f`.
    pub fn quotient(&self, n: &Subgroup) -> Result<GGroup> {
        let (q, proj) = self.carrier.quotient(n)?;
        let morphism = self.morphism.then(&proj);
        Ok(Self::from_parts(self.base.clone(), q, morphism))
    }

    /// The sub-object on a subgroup containing the image of `f`.
    pub fn restrict(&self, sub: &Subgroup) -> Option<GGroup> {
        if !self.acting.iter().all(|&a| sub.contains(a)) {
            return None;
        }
        let (group, embedding) = self.carrier.subgroup_as_group(sub);
        let mut pos = vec![0; self.carrier.order()];
        for (i, &x) in embedding.iter().enumerate() {
            pos[x] = i;
        }
        let images = self.morphism.images().iter().map(|&x| pos[x]).collect();
        let morphism = GroupHomomorphism::from_parts(self.base.order(), group.order(), images);
        Some(Self::from_parts(self.base.clone(), group, morphism))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZeroDivisorWitness {
    pub x: usize,
    pub y: usize,
    pub gx: Vec<usize>,
    pub gy: Vec<usize>,
}

/// First pair `x < y` of divisors of zero, or `None` when `X` is a domain.
pub fn find_zero_divisor_pair(x: &GGroup, limits: &Limits) -> Result<Option<ZeroDivisorWitness>> {
    let h = x.carrier();
    Limits::check(h.order(), limits.group_order)?;
    let n = h.order();
    let subgroups: Vec<Option<Subgroup>> = (0..n)
        .map(|a| (a != 0).then(|| x.adjoint_orbit_subgroup(a)))
        .collect();
    for a in 1..n {
        let ga = subgroups[a].as_ref().unwrap();
        let mut centralizer: Option<ElementSet> = None;
        for b in a + 1..n {
            let gb = subgroups[b].as_ref().unwrap();
            if !ga.mask().meets_only_identity(gb.mask()) {
                continue;
            }
            let c = centralizer.get_or_insert_with(|| h.centralizer_of(&x.orbit(a)));
            if gb.mask().is_subset(c) {
                return Ok(Some(ZeroDivisorWitness {
                    x: a,
                    y: b,
                    gx: ga.elements().to_vec(),
                    gy: gb.elements().to_vec(),
                }));
            }
        }
    }
    Ok(None)
}

pub fn is_domain(x: &GGroup, limits: &Limits) -> Result<bool> {
    Ok(find_zero_divisor_pair(x, limits)?.is_none())
}

/// All subgroups of the carrier stable under the adjoint action.
pub fn g_stable_subgroups(x: &GGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    let h = x.carrier();
    Limits::check(h.order(), limits.stable_enumeration)?;
    let atoms: Vec<Vec<usize>> = h.elements().skip(1).map(|a| x.orbit(a)).collect();
    Ok(h.joins_of(&atoms))
}

/// A stable subgroup that is the internal direct product of two nontrivial
/// stable subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub subgroup: Vec<usize>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

/// Searches stable subgroups in canonical order for an internal split
/// `H' = A x B` with `A`, `B` stable, `A ∩ B = 1`, elementwise commuting and
/// `|A| |B| = |H'|`. Returns `(true, None)` when no split exists.
pub fn is_locally_g_indecomposable(x: &GGroup, limits: &Limits) -> Result<(bool, Option<SplitWitness>)> {
    let h = x.carrier();
    let stable = g_stable_subgroups(x, limits)?;
    let mut centralizers: Vec<Option<ElementSet>> = vec![None; stable.len()];
    for whole in stable.iter().filter(|s| !s.is_trivial()) {
        let inside: Vec<usize> = (0..stable.len())
            .filter(|&i| {
                let s = &stable[i];
                !s.is_trivial() && s.len() < whole.len() && whole.len() % s.len() == 0 && s.is_subset(whole)
            })
            .collect();
        for (pos, &ia) in inside.iter().enumerate() {
            let a = &stable[ia];
            let want = whole.len() / a.len();
            for &ib in &inside[pos + 1..] {
                let b = &stable[ib];
                if b.len() != want || !a.mask().meets_only_identity(b.mask()) {
                    continue;
                }
                let c = centralizers[ia].get_or_insert_with(|| h.centralizer_of(&h.generating_set(a)));
                if b.mask().is_subset(c) {
                    return Ok((
                        false,
                        Some(SplitWitness {
                            subgroup: whole.elements().to_vec(),
                            left: a.elements().to_vec(),
                            right: b.elements().to_vec(),
                        }),
                    ));
                }
            }
        }
    }
    Ok((true, None))
}

/// Instance of the injection axiom: when `X` is a domain, every sub-object
/// (stable subgroup containing the image of `f`) is a domain. Returns the
/// first sub-object that is not.
pub fn check_subobjects_are_domains(x: &GGroup, limits: &Limits) -> Result<Option<Subgroup>> {
    if !is_domain(x, limits)? {
        return Ok(None);
    }
    for sub in g_stable_subgroups(x, limits)? {
        if let Some(obj) = x.restrict(&sub) {
            if !is_domain(&obj, limits)? {
                return Ok(Some(sub));
            }
        }
    }
    Ok(None)
}

/// Instance of the meet axiom: in a domain, two normal subgroups meeting
/// trivially cannot both be nontrivial. Returns a violating pair.
pub fn check_normal_meets(x: &GGroup, limits: &Limits) -> Result<Option<(Subgroup, Subgroup)>> {
    if !is_domain(x, limits)? {
        return Ok(None);
    }
    let normals = x.carrier().normal_subgroups(limits)?;
    for (i, a) in normals.iter().enumerate() {
        for b in &normals[i..] {
            if !a.is_trivial() && !b.is_trivial() && a.intersection(b).is_trivial() {
                return Ok(Some((a.clone(), b.clone())));
            }
        }
    }
    Ok(None)
}

/// Rejects a morphism given for the wrong groups.
pub fn validate_morphism(base: &FiniteGroup, carrier: &FiniteGroup, images: &[usize]) -> Result<()> {
    if images.len() != base.order() {
        return Err(Error::NotHomomorphism(format!(
            "morphism has {} images, base has order {}",
            images.len(),
            base.order()
        )));
    }
    GroupHomomorphism::new(base, carrier, images.to_vec()).map(|_| ())
}
