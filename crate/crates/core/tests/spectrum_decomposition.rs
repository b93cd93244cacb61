use specdec_core::classification::corpus;
use specdec_core::comma::{is_domain, GGroup};
use specdec_core::decomposition::*;
use specdec_core::group::named::*;
use specdec_core::group::{FiniteGroup, Subgroup};
use specdec_core::spectrum::*;
use specdec_core::{Error, Limits};

const IP: PrimalityNotion = PrimalityNotion::IntersectionPrime;
const QD: PrimalityNotion = PrimalityNotion::QuotientDomain;

fn lim() -> Limits {
    Limits::default()
}

/// Normal closure by repeated conjugation and multiplication, without the
/// library's generator machinery.
fn naive_closure(g: &FiniteGroup, seed: &[usize]) -> Vec<bool> {
    let n = g.order();
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut todo: Vec<usize> = seed.to_vec();
    while let Some(x) = todo.pop() {
        if inside[x] && x != 0 {
            continue;
        }
        inside[x] = true;
        for c in 0..n {
            let conj = g.mul(g.mul(g.inv(c), x), c);
            if !inside[conj] {
                todo.push(conj);
            }
        }
        for y in 0..n {
            if inside[y] {
                for z in [g.mul(x, y), g.mul(y, x)] {
                    if !inside[z] {
                        todo.push(z);
                    }
                }
            }
        }
    }
    inside
}

fn naive_ip_prime(g: &FiniteGroup, p: &Subgroup) -> bool {
    let closures: Vec<Vec<bool>> = g.elements().map(|x| naive_closure(g, &[x])).collect();
    let outside: Vec<usize> = g.elements().filter(|&x| !p.contains(x)).collect();
    for &x in &outside {
        for &y in &outside {
            if (0..g.order()).all(|z| !(closures[x][z] && closures[y][z]) || p.contains(z)) {
                return false;
            }
        }
    }
    true
}

#[test]
fn intersection_primes_match_naive_definition() {
    for e in corpus(24) {
        let s = spectrum(&GGroup::plain(e.group.clone()), IP, &lim()).unwrap();
        for n in s.normal_subgroups() {
            let naive = naive_ip_prime(&e.group, n);
            assert_eq!(s.is_prime_member(n), naive, "{} {:?}", e.name, n.elements());
            assert_eq!(is_intersection_prime_by_normals(s.normal_subgroups(), n), naive);
        }
    }
}

#[test]
fn intersection_notion_ignores_the_base() {
    for e in corpus(24) {
        let a = spectrum(&GGroup::plain(e.group.clone()), IP, &lim()).unwrap();
        let b = spectrum(&GGroup::over_itself(e.group.clone()), IP, &lim()).unwrap();
        assert_eq!(a.primes(), b.primes(), "{}", e.name);
    }
}

#[test]
fn whole_group_is_always_prime() {
    for e in corpus(32) {
        for notion in [IP, QD] {
            let s = spectrum(&GGroup::plain(e.group.clone()), notion, &lim()).unwrap();
            assert!(s.primes().last().unwrap().is_whole(), "{}", e.name);
        }
    }
}

#[test]
fn over_itself_intersection_primes_are_quotient_domain_primes() {
    for e in corpus(24) {
        let x = GGroup::over_itself(e.group.clone());
        let ip = spectrum(&x, IP, &lim()).unwrap();
        let qd = spectrum(&x, QD, &lim()).unwrap();
        for p in ip.primes() {
            assert!(qd.is_prime_member(p), "{} {:?}", e.name, p.elements());
        }
    }
}

#[test]
fn trivial_base_breaks_the_inclusion() {
    // with no action, D4/<r^2> is Z2 x Z2 and has divisors of zero
    let d4 = GGroup::plain(dihedral(4).unwrap());
    let ip = spectrum(&d4, IP, &lim()).unwrap();
    let qd = spectrum(&d4, QD, &lim()).unwrap();
    assert!(ip.primes().iter().any(|p| !qd.is_prime_member(p)));

    // A5 is simple, so 1 is maximal normal; without an action A5 itself has divisors of zero
    let a5 = GGroup::plain(alternating(5).unwrap());
    assert!(!is_domain(&a5, &lim()).unwrap());
    let trivial = Subgroup::trivial(60);
    assert!(!is_prime(&a5, &trivial, QD, &lim()).unwrap());
    assert!(is_prime(&GGroup::over_itself(alternating(5).unwrap()), &trivial, QD, &lim()).unwrap());
}

#[test]
fn radical_is_below_every_prime() {
    for e in corpus(32) {
        let s = spectrum(&GGroup::plain(e.group.clone()), IP, &lim()).unwrap();
        let r = s.radical();
        assert!(s.primes().iter().all(|p| r.is_subset(p)));
        assert_eq!(s.radical_of(&Subgroup::trivial(e.group.order())).unwrap(), r);
        assert!(s.is_radical_ideal(&r).unwrap());
    }
}

#[test]
fn topology_identities_hold_for_intersection_primes() {
    for e in corpus(40) {
        let reports = verify_axioms(&GGroup::plain(e.group.clone()), IP, &lim()).unwrap();
        for r in reports {
            assert!(r.pass, "{} {:?}", e.name, r);
        }
    }
}

#[test]
fn quotient_domain_counterexample_is_reported() {
    let reports = verify_axioms(&GGroup::plain(abelian(&[2, 2]).unwrap()), QD, &lim()).unwrap();
    let by_tag = |t: AxiomTag| reports.iter().find(|r| r.tag == t).unwrap();
    assert_eq!(
        by_tag(AxiomTag::IntersectionUnion).witness,
        Some(AxiomWitness::IntersectionUnion {
            left: vec![0, 1],
            right: vec![0, 2],
            prime: vec![0, 3],
        })
    );
    assert_eq!(
        by_tag(AxiomTag::RadicalIrreducible).witness,
        Some(AxiomWitness::RadicalIrreducibility {
            ideal: vec![0],
            irreducible: true,
            prime: false,
        })
    );
}

#[test]
fn decompositions_are_verified_and_match_the_oracle() {
    let mut decomposed = 0;
    let mut refused = Vec::new();
    for e in corpus(48) {
        let x = GGroup::plain(e.group.clone());
        match decompose(&x, IP, &lim()) {
            Ok(c) => {
                assert!(c.verified(), "{}", e.name);
                assert_eq!(c.factor_orders().iter().product::<usize>(), e.group.order());
                for f in &c.factors {
                    let (fg, _) = e.group.subgroup_as_group(f);
                    assert!(directly_indecomposable(&fg, &lim()).unwrap(), "{}", e.name);
                }
                assert_eq!(compare_with_oracle(&c, &e.group, &lim()).unwrap(), OracleMatch::Match, "{}", e.name);
                decomposed += 1;
            }
            Err(Error::RadicalNotTrivial { .. }) => {}
            Err(Error::ReconstructionFailed(r)) => refused.push((e.name.clone(), r.failed_check)),
            Err(other) => panic!("{}: {other}", e.name),
        }
    }
    assert!(decomposed > 40, "{decomposed}");
    // D_n with n divisible by two primes and n != 2 mod 4: the primes inside
    // the rotations have trivial intersection but do not split the group
    assert_eq!(
        refused,
        [
            ("D12".to_string(), "product-map-bijective"),
            ("D15".to_string(), "complements-prime"),
            ("D20".to_string(), "product-map-bijective"),
            ("D21".to_string(), "complements-prime"),
            ("D24".to_string(), "product-map-bijective"),
        ]
    );
}

#[test]
fn d15_has_trivial_radical_but_no_splitting() {
    let g = dihedral(15).unwrap();
    let s = spectrum(&GGroup::plain(g.clone()), IP, &lim()).unwrap();
    let orders: Vec<usize> = s.primes().iter().map(Subgroup::len).collect();
    assert_eq!(orders, [3, 5, 15, 30]);
    assert!(s.radical().is_trivial());
    assert!(directly_indecomposable(&g, &lim()).unwrap());
}

#[test]
fn single_factor_groups() {
    for spec in ["quaternion:3", "dihedral:4", "cyclic:8", "symmetric:3", "alternating:5"] {
        let g = parse_named(spec).unwrap();
        let c = decompose(&GGroup::plain(g), IP, &lim()).unwrap();
        assert_eq!(c.n(), 1, "{spec}");
        assert!(c.verified());
    }
}

#[test]
fn radical_not_trivial_cases() {
    for spec in ["abelian:2,2", "abelian:3,3", "abelian:2,4", "quaternion:3 * cyclic:2"] {
        let g = parse_named(spec).unwrap();
        assert!(matches!(
            decompose(&GGroup::plain(g), IP, &lim()),
            Err(Error::RadicalNotTrivial { .. })
        ));
    }
}

#[test]
fn oracle_lists_every_factorization_of_small_groups() {
    // Z6 = Z2 x Z3 in one way; Z2 x Z2 has three ordered-irrelevant splits
    let z6 = brute_force_decompositions(&cyclic(6), &lim()).unwrap();
    assert_eq!(z6.len(), 1);
    assert_eq!(z6[0].len(), 2);
    let v4 = brute_force_decompositions(&abelian(&[2, 2]).unwrap(), &lim()).unwrap();
    assert_eq!(v4.len(), 3);
    assert!(brute_force_decompositions(&cyclic(8), &lim()).unwrap().iter().all(|f| f.len() == 1));
}
