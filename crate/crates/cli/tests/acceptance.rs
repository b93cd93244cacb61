//! End-to-end acceptance suite. Prints one line per criterion and exits
//! nonzero if any criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use specdec_core::classification::{corpus, marin_class, MarinClass};
use specdec_core::comma::{find_zero_divisor_pair, is_locally_g_indecomposable, GGroup};
use specdec_core::decomposition::{compare_with_oracle, decompose, OracleMatch};
use specdec_core::group::named::{abelian, cyclic, factorize, parse_named};
use specdec_core::group::{FiniteGroup, Subgroup};
use specdec_core::ring::{verify_ring_topology, z_pprime_window_check, FiniteRing};
use specdec_core::snf::{
    checked_smith_normal_form, is_prime_subgroup_fg_abelian, quotient_invariants, spec_of_integers, IntegerMatrix,
    IntegerSpec,
};
use specdec_core::spectrum::{spectrum, verify_axioms, AxiomTag, AxiomWitness, PrimalityNotion};
use specdec_core::{Error, Limits};

// Every check is exact; only wall-clock budgets are tolerances.
const TOPOLOGY_MAX_ORDER: usize = 48;
const TOPOLOGY_BUDGET: Duration = Duration::from_secs(120);
const LOCAL_MAX_ORDER: usize = 32;
const MARIN_MAX_ORDER: usize = 63;
const MARIN_BUDGET: Duration = Duration::from_secs(300);
const SNF_BATCH: usize = 500;
const SNF_MAX_DIM: usize = 8;
const SNF_MAX_ENTRY: i64 = 1000;
const SNF_SEED: u64 = 0x5eed;
const SNF_BUDGET: Duration = Duration::from_secs(60);
const LATTICE_MAX_QUOTIENT: u64 = 200;
const LATTICE_ENTRY: i64 = 6;
const RING_MAX_MODULUS: usize = 60;
const WINDOW_BOUND: i64 = 1000;
const DETERMINISM_CORPUS: &str = "corpus:32";

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn lim() -> Limits {
    Limits::default()
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let took = start.elapsed();
    check(took <= budget, || format!("took {took:?}, budget {budget:?}"))
}

/// Primes above `i` as a bitmask over `primes`.
fn v_of(primes: &[Subgroup], i: &Subgroup) -> u128 {
    primes
        .iter()
        .enumerate()
        .filter(|(_, p)| i.is_subset(p))
        .fold(0, |acc, (k, _)| acc | 1u128 << k)
}

fn topology() -> Outcome {
    let start = Instant::now();
    let (mut groups, mut pairs, mut triples) = (0, 0u64, 0u64);
    for e in corpus(TOPOLOGY_MAX_ORDER) {
        let x = GGroup::plain(e.group.clone());
        let s = spectrum(&x, PrimalityNotion::IntersectionPrime, &lim()).map_err(|er| format!("{}: {er}", e.name))?;
        let normals = s.normal_subgroups();
        let primes = s.primes();
        check(primes.len() <= 128, || format!("{}: too many primes", e.name))?;
        let v: Vec<u128> = normals.iter().map(|n| v_of(primes, n)).collect();
        for i in 0..normals.len() {
            for j in i..normals.len() {
                let ij = normals[i].intersection(&normals[j]);
                check(v_of(primes, &ij) == v[i] | v[j], || format!("{}: pair {i},{j}", e.name))?;
                pairs += 1;
                for k in j..normals.len() {
                    let ijk = ij.intersection(&normals[k]);
                    check(v_of(primes, &ijk) == v[i] | v[j] | v[k], || format!("{}: triple {i},{j},{k}", e.name))?;
                    triples += 1;
                }
            }
        }
        let reports = verify_axioms(&x, PrimalityNotion::IntersectionPrime, &lim()).map_err(|er| er.to_string())?;
        for r in reports
            .iter()
            .filter(|r| matches!(r.tag, AxiomTag::IntersectionUnion | AxiomTag::FamilyJoin))
        {
            check(r.pass && !r.skipped, || format!("{}: {} reported {:?}", e.name, r.tag, r.witness))?;
        }
        groups += 1;
    }
    within(start, TOPOLOGY_BUDGET)?;
    Ok(format!("{groups} groups, {pairs} pairs, {triples} triples"))
}

fn notion_separation() -> Outcome {
    let x = GGroup::plain(abelian(&[2, 2]).map_err(|e| e.to_string())?);
    let reports = verify_axioms(&x, PrimalityNotion::QuotientDomain, &lim()).map_err(|e| e.to_string())?;
    let witness = |t: AxiomTag| reports.iter().find(|r| r.tag == t).and_then(|r| r.witness.clone());
    let want_meet = AxiomWitness::IntersectionUnion {
        left: vec![0, 1],
        right: vec![0, 2],
        prime: vec![0, 3],
    };
    let want_irreducible = AxiomWitness::RadicalIrreducibility {
        ideal: vec![0],
        irreducible: true,
        prime: false,
    };
    let got = witness(AxiomTag::IntersectionUnion);
    check(got.as_ref() == Some(&want_meet), || format!("intersection witness {got:?}"))?;
    let got = witness(AxiomTag::RadicalIrreducible);
    check(got.as_ref() == Some(&want_irreducible), || format!("irreducibility witness {got:?}"))?;
    let ip = verify_axioms(&x, PrimalityNotion::IntersectionPrime, &lim()).map_err(|e| e.to_string())?;
    check(ip.iter().all(|r| r.pass), || "intersection notion also fails".into())?;
    Ok("axes {0,1},{0,2} against diagonal {0,3}; V(0) irreducible, 0 radical, not prime".into())
}

/// The carrier over several bases: none, itself, a trivial map from Z2 and
/// the inclusion of each cyclic subgroup.
fn ggroups_over(g: &FiniteGroup) -> Vec<GGroup> {
    let mut out = vec![
        GGroup::plain(g.clone()),
        GGroup::over_itself(g.clone()),
        GGroup::with_trivial_morphism(cyclic(2), g.clone()),
    ];
    let mut seen = Vec::new();
    for x in g.elements().skip(1) {
        let c = g.generate(&[x]);
        if seen.contains(&c) {
            continue;
        }
        let n = c.len();
        let images: Vec<usize> = (0..n).map(|k| g.power(x, k as u64)).collect();
        out.push(GGroup::new(cyclic(n), g.clone(), images).expect("power map is a homomorphism"));
        seen.push(c);
    }
    out
}

fn local_indecomposability() -> Outcome {
    let (mut objects, mut domains) = (0, 0);
    for e in corpus(LOCAL_MAX_ORDER) {
        for x in ggroups_over(&e.group) {
            let domain = find_zero_divisor_pair(&x, &lim()).map_err(|er| er.to_string())?.is_none();
            let (local, _) = is_locally_g_indecomposable(&x, &lim()).map_err(|er| er.to_string())?;
            check(domain == local, || {
                format!("{} over base of order {}: domain={domain} local={local}", e.name, x.base().order())
            })?;
            objects += 1;
            domains += domain as usize;
        }
    }
    Ok(format!("{objects} objects, {domains} domains"))
}

fn powers(g: &FiniteGroup, x: usize) -> Vec<usize> {
    let mut out = vec![0];
    let mut y = x;
    while y != 0 {
        out.push(y);
        y = g.mul(y, x);
    }
    out
}

fn is_zero_divisor_pair(g: &FiniteGroup, x: usize, y: usize) -> bool {
    let py = powers(g, y);
    x != 0 && y != 0 && g.mul(x, y) == g.mul(y, x) && powers(g, x).iter().all(|a| *a == 0 || !py.contains(a))
}

fn marin() -> Outcome {
    let start = Instant::now();
    let mut classes = Vec::new();
    for e in corpus(MARIN_MAX_ORDER) {
        let g = &e.group;
        let class = marin_class(g, &lim()).map_err(|er| er.to_string())?;
        let naive = g.elements().any(|x| g.elements().any(|y| is_zero_divisor_pair(g, x, y)));
        check(class.is_strongly_indecomposable() != naive, || format!("{}: {}", e.name, class.label()))?;
        if let MarinClass::NotStronglyIndecomposable { witness } = &class {
            check(is_zero_divisor_pair(g, witness.x, witness.y), || format!("{}: bad witness", e.name))?;
        }
        classes.push((e.name, class));
    }
    let class_of = |name: &str| classes.iter().find(|(n, _)| n == name).map(|(_, c)| c.clone());
    let mut prime_powers = 0;
    for (name, c) in &classes {
        if let Some(n) = name.strip_prefix('Z').and_then(|n| n.parse::<u64>().ok()) {
            if factorize(n).len() == 1 {
                check(matches!(c, MarinClass::CyclicPrimePower { .. }), || format!("{name}: {}", c.label()))?;
                prime_powers += 1;
            }
        }
    }
    for name in ["Q8", "Q16", "S3", "M(7^1:3^1,2)"] {
        let c = class_of(name).ok_or(format!("{name} missing from corpus"))?;
        check(c.is_strongly_indecomposable(), || format!("{name}: {}", c.label()))?;
    }
    for name in ["Z6", "Z2xZ2", "D4", "Z2xZ4"] {
        let c = class_of(name).ok_or(format!("{name} missing from corpus"))?;
        check(!c.is_strongly_indecomposable(), || format!("{name}: {}", c.label()))?;
    }
    within(start, MARIN_BUDGET)?;
    Ok(format!("{} groups, {prime_powers} cyclic prime powers", classes.len()))
}

fn sorted_orders(spec: &str) -> Result<Vec<usize>, String> {
    let g = parse_named(spec).map_err(|e| e.to_string())?;
    let c = decompose(&GGroup::plain(g.clone()), PrimalityNotion::IntersectionPrime, &lim())
        .map_err(|e| format!("{spec}: {e}"))?;
    check(c.verified(), || format!("{spec}: unverified certificate"))?;
    let mut o = c.factor_orders();
    o.sort_unstable();
    Ok(o)
}

fn decomposition() -> Outcome {
    for (spec, want) in [
        ("cyclic:6", vec![2, 3]),
        ("cyclic:12", vec![3, 4]),
        ("cyclic:30", vec![2, 3, 5]),
        ("symmetric:3 * cyclic:5", vec![5, 6]),
        ("quaternion:3", vec![8]),
    ] {
        let got = sorted_orders(spec)?;
        check(got == want, || format!("{spec}: {got:?}"))?;
    }
    let v4 = GGroup::plain(abelian(&[2, 2]).map_err(|e| e.to_string())?);
    let r = decompose(&v4, PrimalityNotion::IntersectionPrime, &lim());
    check(matches!(r, Err(Error::RadicalNotTrivial { .. })), || "Z2xZ2 was not refused".into())?;

    let (mut certs, mut oracle, mut refused) = (0, 0, 0);
    for e in corpus(lim().oracle) {
        match decompose(&GGroup::plain(e.group.clone()), PrimalityNotion::IntersectionPrime, &lim()) {
            Ok(c) => {
                check(c.verified(), || format!("{}: unverified certificate", e.name))?;
                match compare_with_oracle(&c, &e.group, &lim()).map_err(|er| er.to_string())? {
                    OracleMatch::Match => oracle += 1,
                    OracleMatch::Skipped => {}
                    OracleMatch::Mismatch => return Err(format!("{}: factors differ from the oracle", e.name)),
                }
                certs += 1;
            }
            Err(Error::RadicalNotTrivial { .. }) => {}
            Err(Error::ReconstructionFailed(_)) => refused += 1,
            Err(er) => return Err(format!("{}: {er}", e.name)),
        }
    }
    Ok(format!(
        "{certs} certificates verified, {oracle} oracle matches, {refused} refused after failed verification"
    ))
}

fn central_domains() -> Outcome {
    let mut seen = 0;
    for e in corpus(MARIN_MAX_ORDER) {
        let g = &e.group;
        if find_zero_divisor_pair(&GGroup::plain(g.clone()), &lim()).map_err(|er| er.to_string())?.is_some() {
            continue;
        }
        if g.center().is_trivial() {
            continue;
        }
        for x in g.elements() {
            let o = powers(g, x).len() as u64;
            check(factorize(o).len() <= 1, || format!("{}: element {x} has order {o}", e.name))?;
        }
        seen += 1;
    }
    Ok(format!("{seen} domains with nontrivial center"))
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, k| acc + &row[k] * &b[k][j]))
                .collect()
        })
        .collect()
}

/// Fraction-free Gaussian elimination.
fn det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn snf() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SNF_SEED);
    for t in 0..SNF_BATCH {
        let (r, c) = (rng.gen_range(1..=SNF_MAX_DIM), rng.gen_range(1..=SNF_MAX_DIM));
        let rows: Vec<Vec<i64>> = (0..r)
            .map(|_| (0..c).map(|_| rng.gen_range(-SNF_MAX_ENTRY..=SNF_MAX_ENTRY)).collect())
            .collect();
        let a = IntegerMatrix::from_rows(c, &rows).map_err(|e| e.to_string())?;
        let s = checked_smith_normal_form(&a).map_err(|e| format!("matrix {t}: {e}"))?;
        let (u, d, v) = (s.u.to_rows(), s.d.to_rows(), s.v.to_rows());
        check(mat_mul(&mat_mul(&u, &a.to_rows()), &v) == d, || format!("matrix {t}: UAV != D"))?;
        check(det(&u).abs().is_one() && det(&v).abs().is_one(), || format!("matrix {t}: not unimodular"))?;
        for (i, row) in d.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                check(i == j || x.is_zero(), || format!("matrix {t}: off-diagonal entry"))?;
            }
        }
        let diag: Vec<&BigInt> = (0..r.min(c)).map(|i| &d[i][i]).collect();
        check(diag.iter().all(|x| !x.is_negative()), || format!("matrix {t}: negative invariant"))?;
        for w in diag.windows(2) {
            let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(w[0]) };
            check(ok, || format!("matrix {t}: {} does not divide {}", w[0], w[1]))?;
        }
    }
    within(start, SNF_BUDGET)?;
    Ok(format!("{SNF_BATCH} matrices up to {SNF_MAX_DIM}x{SNF_MAX_DIM}, entries up to {SNF_MAX_ENTRY}"))
}

fn lattice_quotients() -> Outcome {
    let mut checked = 0;
    let mut agree = |cols: usize, rows: Vec<Vec<i64>>| -> Result<(), String> {
        let a = IntegerMatrix::from_rows(cols, &rows).map_err(|e| e.to_string())?;
        let t = quotient_invariants(cols, &a).map_err(|e| e.to_string())?;
        let Some(order) = t.order() else { return Ok(()) };
        if order > BigInt::from(LATTICE_MAX_QUOTIENT) {
            return Ok(());
        }
        let factors: Vec<usize> = t.torsion.iter().map(|x| x.to_usize().unwrap()).collect();
        let g = abelian(&factors).map_err(|e| e.to_string())?;
        let domain = find_zero_divisor_pair(&GGroup::plain(g), &lim()).map_err(|e| e.to_string())?.is_none();
        let prime = is_prime_subgroup_fg_abelian(cols, &a).map_err(|e| e.to_string())?;
        check(prime == domain, || format!("{rows:?}: prime={prime} domain={domain}"))?;
        checked += 1;
        Ok(())
    };
    for n in 1..=LATTICE_MAX_QUOTIENT as i64 {
        agree(1, vec![vec![n]])?;
    }
    let r = -LATTICE_ENTRY..=LATTICE_ENTRY;
    for a in r.clone() {
        for b in r.clone() {
            for c in r.clone() {
                for d in r.clone() {
                    agree(2, vec![vec![a, b], vec![c, d]])?;
                }
            }
        }
    }
    let want = IntegerSpec::Ideals(vec![(2, 1), (2, 2), (3, 1)]);
    let got = spec_of_integers(12);
    check(got == want, || format!("spec of 12: {got:?}"))?;
    Ok(format!("{checked} generator sets; spec(12) = (2),(4),(3)"))
}

fn rings() -> Outcome {
    for m in 1..=RING_MAX_MODULUS {
        let r = FiniteRing::modular(m).map_err(|e| e.to_string())?;
        let got: Vec<Vec<usize>> = r
            .p_prime_ideals(&lim())
            .map_err(|e| e.to_string())?
            .iter()
            .map(|i| i.elements().to_vec())
            .collect();
        let mut want: Vec<Vec<usize>> = (1..=m)
            .filter(|d| m % d == 0 && (*d == 1 || factorize(*d as u64).len() == 1))
            .map(|d| (0..m).step_by(d).collect())
            .collect();
        want.sort_by_key(|v: &Vec<usize>| (v.len(), v.clone()));
        check(got == want, || format!("Z/{m}: p-primes {got:?}"))?;
        for rep in verify_ring_topology(&r, &lim()).map_err(|e| e.to_string())? {
            check(rep.pass, || format!("Z/{m}: {} failed", rep.tag))?;
        }
    }
    for n in [4, 8, 9, 25, 27] {
        let got = z_pprime_window_check(n, WINDOW_BOUND).map_err(|e| e.to_string())?;
        check(got.is_none(), || format!("({n}) violated by {got:?}"))?;
    }
    let got = z_pprime_window_check(6, WINDOW_BOUND).map_err(|e| e.to_string())?;
    check(got == Some((2, 3)), || format!("(6) witness {got:?}"))?;
    Ok(format!("Z/m for m <= {RING_MAX_MODULUS}; window {WINDOW_BOUND}"))
}

fn determinism() -> Outcome {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_specdec"))
            .args(["verify", "--all", DETERMINISM_CORPUS, "--json"])
            .env_remove("SPECDEC_MAX_ORDER")
            .output()
            .map_err(|e| e.to_string())
    };
    let a = run()?;
    let b = run()?;
    check(!a.stdout.is_empty(), || "empty output".into())?;
    check(a.stdout == b.stdout, || "outputs differ".into())?;
    Ok(format!(
        "{} bytes, {} lines, identical",
        a.stdout.len(),
        a.stdout.iter().filter(|&&c| c == b'\n').count()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("topology identities under intersection primes", topology),
        ("quotient-domain counterexamples", notion_separation),
        ("domain iff locally indecomposable", local_indecomposability),
        ("classifier against zero-divisor search", marin),
        ("decomposition certificates", decomposition),
        ("element orders of central domains", central_domains),
        ("smith normal form batch", snf),
        ("lattice quotients and integer spectrum", lattice_quotients),
        ("p-prime ideals of Z/m", rings),
        ("deterministic verify output", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {}: pass  {name} ({detail}; {secs:.1}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why} ({secs:.1}s)", k + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
