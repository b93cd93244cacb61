use std::collections::BTreeMap;
use std::process::ExitCode;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use specdec_core::classification::{corpus as build_corpus, marin_class, MarinClass};
use specdec_core::comma::{find_zero_divisor_pair, is_locally_g_indecomposable, GGroup};
use specdec_core::decomposition::{compare_with_oracle, decompose_spectrum, OracleMatch};
use specdec_core::ring::{verify_ring_topology, z_pprime_window_check};
use specdec_core::snf::{
    checked_smith_normal_form, is_prime_subgroup_fg_abelian, quotient_invariants, spec_of_integers, FgAbelianType,
    IntegerMatrix, IntegerSpec,
};
use specdec_core::spectrum::{spectrum as build_spectrum, verify_axioms, verify_spectrum_axioms, AxiomReport, PrimalityNotion};
use specdec_core::{Error, Limits, Result};

use crate::input::{self, Named};
use crate::{CorpusArgs, Inputs, SnfArgs, VerifyArgs, ZspecArgs};

/// One report line in both renderings.
struct Line {
    json: Value,
    text: String,
}

#[derive(Default)]
pub struct Outcome {
    lines: Vec<Line>,
    failures: usize,
    error: Option<Error>,
}

impl Outcome {
    fn push(&mut self, json: Value, text: String, failed: bool) {
        self.lines.push(Line { json, text });
        self.failures += failed as usize;
    }

    fn failed(error: Error) -> Self {
        Outcome {
            error: Some(error),
            ..Outcome::default()
        }
    }

    pub fn finish(self, json: bool) -> ExitCode {
        use std::io::Write;
        let stdout = std::io::stdout();
        let mut out = stdout.lock();
        for line in &self.lines {
            let _ = if json {
                writeln!(out, "{}", line.json)
            } else {
                writeln!(out, "{}", line.text)
            };
        }
        if let Some(e) = &self.error {
            if json {
                let _ = writeln!(out, "{}", json!({ "error": e.to_string() }));
            }
            let _ = out.flush();
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        if self.failures > 0 {
            ExitCode::from(1)
        } else {
            ExitCode::SUCCESS
        }
    }
}

/// Runs `f` on every item in parallel and assembles the lines in input
/// order. The first error stops the report at that item.
fn each<T: Sync>(items: &[Named<T>], f: impl Fn(&Named<T>) -> Result<Vec<(Value, String, bool)>> + Sync) -> Outcome {
    let results: Vec<_> = items.par_iter().map(&f).collect();
    let mut outcome = Outcome::default();
    for r in results {
        match r {
            Ok(lines) => {
                for (j, t, failed) in lines {
                    outcome.push(j, t, failed);
                }
            }
            Err(e) => {
                outcome.error = Some(e);
                break;
            }
        }
    }
    outcome
}

fn load_groups(a: &Inputs) -> std::result::Result<(Vec<Named<GGroup>>, Limits), Outcome> {
    let limits = a.common.limits();
    input::groups(&a.inputs, a.common.base, &limits)
        .map(|g| (g, limits))
        .map_err(Outcome::failed)
}

fn set(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn header(n: &Named<GGroup>) -> String {
    let x = &n.value;
    if x.base().order() == 1 {
        format!("{} (order {})", n.name, x.carrier().order())
    } else {
        format!("{} (order {}, base {})", n.name, x.carrier().order(), x.base().label())
    }
}

fn axiom_text(reports: &[AxiomReport]) -> String {
    let mut out = String::new();
    for r in reports {
        let status = if r.skipped {
            "skipped"
        } else if r.pass {
            "pass"
        } else {
            "FAIL"
        };
        out.push_str(&format!("\n  {:<20} {status}", r.tag.to_string()));
        if let Some(w) = &r.witness {
            out.push_str(&format!("  witness {}", serde_json::to_string(w).unwrap_or_default()));
        }
        if let Some(d) = &r.detail {
            out.push_str(&format!("  ({d})"));
        }
    }
    out
}

pub fn group(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    each(&items, |n| {
        let g = n.value.carrier();
        let mut profile: BTreeMap<usize, usize> = BTreeMap::new();
        for o in g.element_orders() {
            *profile.entry(o).or_default() += 1;
        }
        let normals = if g.order() <= limits.enumeration {
            Some(g.normal_subgroups(&limits)?)
        } else {
            None
        };
        let center = g.center();
        let derived = g.derived_subgroup();
        let gens = g.generating_set(&specdec_core::group::Subgroup::whole(g.order()));
        let j = json!({
            "name": n.name,
            "order": g.order(),
            "abelian": g.is_abelian(),
            "center": center.elements(),
            "derived": derived.elements(),
            "generators": gens,
            "element_orders": profile.iter().map(|(o, c)| [o, c]).collect::<Vec<_>>(),
            "normal_subgroups": normals.as_ref().map(|v| v.iter().map(|s| s.elements().to_vec()).collect::<Vec<_>>()),
        });
        let profile_text: Vec<String> = profile.iter().map(|(o, c)| format!("{o}:{c}")).collect();
        let text = format!(
            "{}\n  abelian: {}\n  center: {}\n  derived subgroup: {}\n  generators: {:?}\n  element orders: {}\n  normal subgroups: {}",
            header(n),
            g.is_abelian(),
            set(center.elements()),
            set(derived.elements()),
            gens,
            profile_text.join(" "),
            normals.map_or("over the enumeration cap".into(), |v| v.len().to_string()),
        );
        Ok(vec![(j, text, false)])
    })
}

pub fn spectrum(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let notion = a.common.notion;
    each(&items, |n| {
        let spec = build_spectrum(&n.value, notion, &limits)?;
        let axioms = verify_spectrum_axioms(&spec, &limits)?;
        let failed = axioms.iter().any(|r| !r.pass);
        let primes: Vec<Vec<usize>> = spec.primes().iter().map(|p| p.elements().to_vec()).collect();
        let radical = spec.radical();
        let j = json!({
            "name": n.name,
            "order": n.value.carrier().order(),
            "notion": notion.tag(),
            "primes": primes,
            "radical": radical.elements(),
            "axioms": axioms,
        });
        let text = format!(
            "{} notion={}\n  primes ({}): {}\n  radical: {}{}",
            header(n),
            notion,
            primes.len(),
            primes.iter().map(|p| set(p)).collect::<Vec<_>>().join(" "),
            set(radical.elements()),
            axiom_text(&axioms),
        );
        Ok(vec![(j, text, failed)])
    })
}

pub fn radical(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let notion = a.common.notion;
    each(&items, |n| {
        let spec = build_spectrum(&n.value, notion, &limits)?;
        let radical = spec.radical();
        let mut radical_ideals = Vec::new();
        for i in spec.normal_subgroups() {
            if spec.is_radical_ideal(i)? {
                radical_ideals.push(i.elements().to_vec());
            }
        }
        let j = json!({
            "name": n.name,
            "order": n.value.carrier().order(),
            "notion": notion.tag(),
            "radical": radical.elements(),
            "radical_ideals": radical_ideals,
        });
        let text = format!(
            "{} notion={}\n  radical: {}\n  radical ideals: {}",
            header(n),
            notion,
            set(radical.elements()),
            radical_ideals.iter().map(|p| set(p)).collect::<Vec<_>>().join(" "),
        );
        Ok(vec![(j, text, false)])
    })
}

pub fn decompose(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let notion = a.common.notion;
    let oracle = a.common.oracle;
    each(&items, |n| {
        let g = n.value.carrier();
        let spec = build_spectrum(&n.value, notion, &limits)?;
        match decompose_spectrum(&spec, &limits) {
            Ok(cert) => {
                let m = if oracle {
                    compare_with_oracle(&cert, g, &limits)?
                } else {
                    OracleMatch::Skipped
                };
                let oracle_json = match m {
                    OracleMatch::Match => json!(true),
                    OracleMatch::Mismatch => json!(false),
                    OracleMatch::Skipped => json!("skipped"),
                };
                let factors: Vec<Vec<usize>> = cert.factors.iter().map(|f| f.elements().to_vec()).collect();
                let complements: Vec<Vec<usize>> = cert.complements.iter().map(|f| f.elements().to_vec()).collect();
                let j = json!({
                    "name": n.name,
                    "order": g.order(),
                    "notion": notion.tag(),
                    "n": cert.n(),
                    "factor_orders": cert.factor_orders(),
                    "factors": factors,
                    "complements": complements,
                    "components": cert.components,
                    "verified": cert.verified(),
                    "oracle_match": oracle_json,
                    "transcript": cert.transcript,
                });
                let mut text = format!(
                    "{} notion={}\n  {} factor(s) of orders {:?}, verified: {}, oracle: {}",
                    header(n),
                    notion,
                    cert.n(),
                    cert.factor_orders(),
                    cert.verified(),
                    oracle_json.as_bool().map_or("skipped".into(), |b| if b { "match" } else { "MISMATCH" }.to_string()),
                );
                for (f, c) in factors.iter().zip(&complements) {
                    text.push_str(&format!("\n  factor {}  complement {}", set(f), set(c)));
                }
                let failed = !cert.verified() || m == OracleMatch::Mismatch;
                Ok(vec![(j, text, failed)])
            }
            Err(Error::RadicalNotTrivial { radical }) => {
                let j = json!({
                    "name": n.name,
                    "order": g.order(),
                    "notion": notion.tag(),
                    "error": "radical-not-trivial",
                    "radical": radical,
                });
                let text = format!("{} notion={}\n  radical not trivial: {}", header(n), notion, set(&radical));
                Ok(vec![(j, text, false)])
            }
            Err(Error::ReconstructionFailed(report)) => {
                let j = json!({
                    "name": n.name,
                    "order": g.order(),
                    "notion": notion.tag(),
                    "error": "reconstruction-failed",
                    "failed_check": report.failed_check,
                    "factors": report.certificate.factors.iter().map(|f| f.elements().to_vec()).collect::<Vec<_>>(),
                    "primes": report.primes,
                    "transcript": report.certificate.transcript,
                });
                let text = format!(
                    "{} notion={}\n  RECONSTRUCTION FAILED at {}",
                    header(n),
                    notion,
                    report.failed_check
                );
                Ok(vec![(j, text, true)])
            }
            Err(e) => Err(e),
        }
    })
}

pub fn marin(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    each(&items, |n| {
        let g = n.value.carrier();
        match marin_class(g, &limits) {
            Ok(class) => {
                let witness = match &class {
                    MarinClass::NotStronglyIndecomposable { witness } => Some(witness.clone()),
                    _ => None,
                };
                let j = json!({
                    "name": n.name,
                    "order": g.order(),
                    "class": class.label(),
                    "witness": witness,
                });
                let text = match &witness {
                    Some(w) => format!(
                        "{}: {}  x={} y={} G(x)={} G(y)={}",
                        n.name,
                        class.label(),
                        w.x,
                        w.y,
                        set(&w.gx),
                        set(&w.gy)
                    ),
                    None => format!("{}: {}", n.name, class.label()),
                };
                Ok(vec![(j, text, false)])
            }
            Err(Error::ClassifierInconsistency { name, detail }) => {
                let j = json!({
                    "name": n.name,
                    "order": g.order(),
                    "error": "classifier-inconsistency",
                    "detail": detail,
                });
                Ok(vec![(j, format!("{name}: CLASSIFIER INCONSISTENCY: {detail}"), true)])
            }
            Err(e) => Err(e),
        }
    })
}

pub fn domain_check(a: &Inputs) -> Outcome {
    let (items, limits) = match load_groups(a) {
        Ok(v) => v,
        Err(o) => return o,
    };
    each(&items, |n| {
        let x = &n.value;
        let zd = find_zero_divisor_pair(x, &limits)?;
        let local = if x.carrier().order() <= limits.stable_enumeration {
            Some(is_locally_g_indecomposable(x, &limits)?)
        } else {
            None
        };
        let agree = local.as_ref().map(|(ind, _)| *ind == zd.is_none());
        let j = json!({
            "name": n.name,
            "order": x.carrier().order(),
            "base": x.base().label(),
            "domain": zd.is_none(),
            "witness": zd,
            "locally_indecomposable": local.as_ref().map(|l| l.0),
            "split": local.as_ref().and_then(|l| l.1.clone()),
            "agree": agree,
        });
        let mut text = format!("{}\n  domain: {}", header(n), zd.is_none());
        if let Some(w) = &zd {
            text.push_str(&format!("  (x={} y={} G(x)={} G(y)={})", w.x, w.y, set(&w.gx), set(&w.gy)));
        }
        match &local {
            Some((ind, split)) => {
                text.push_str(&format!("\n  locally indecomposable: {ind}"));
                if let Some(s) = split {
                    text.push_str(&format!("  ({} = {} x {})", set(&s.subgroup), set(&s.left), set(&s.right)));
                }
                if agree == Some(false) {
                    text.push_str("\n  DISAGREEMENT");
                }
            }
            None => text.push_str("\n  locally indecomposable: skipped (over the stable-subgroup cap)"),
        }
        Ok(vec![(j, text, agree == Some(false))])
    })
}

fn abelian_text(t: &FgAbelianType) -> String {
    let mut parts = Vec::new();
    if t.free_rank > 0 {
        parts.push(if t.free_rank == 1 {
            "Z".to_string()
        } else {
            format!("Z^{}", t.free_rank)
        });
    }
    parts.extend(t.torsion.iter().map(|d| format!("Z/{d}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" x ")
    }
}

fn random_matrix(rng: &mut ChaCha8Rng, max_dim: usize, max_entry: i64) -> IntegerMatrix {
    let rows = rng.gen_range(1..=max_dim);
    let cols = rng.gen_range(1..=max_dim);
    let data: Vec<Vec<i64>> = (0..rows)
        .map(|_| (0..cols).map(|_| rng.gen_range(-max_entry..=max_entry)).collect())
        .collect();
    IntegerMatrix::from_rows(cols, &data).expect("rectangular by construction")
}

pub fn snf(a: &SnfArgs) -> Outcome {
    let mut outcome = Outcome::default();
    if let Some(seed) = a.common.seed {
        if a.max_dim == 0 {
            return Outcome::failed(Error::InputParse("--max-dim must be positive".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for i in 0..a.batch {
            let m = random_matrix(&mut rng, a.max_dim, a.max_entry.abs());
            if let Err(reason) = checked_smith_normal_form(&m) {
                failures.push(json!({ "index": i, "matrix": m, "reason": reason }));
            }
        }
        let j = json!({
            "seed": seed,
            "matrices": a.batch,
            "max_dim": a.max_dim,
            "max_entry": a.max_entry.abs(),
            "failures": failures,
            "pass": failures.is_empty(),
        });
        let text = format!(
            "seed {seed}: {} random matrices (dims <= {}, |entries| <= {}), {} failure(s)",
            a.batch,
            a.max_dim,
            a.max_entry.abs(),
            failures.len()
        );
        outcome.push(j, text, !failures.is_empty());
    }
    if a.inputs.is_empty() {
        if a.common.seed.is_none() {
            return Outcome::failed(Error::InputParse("snf needs matrix inputs or --seed".into()));
        }
        return outcome;
    }
    let items = match input::matrices(&a.inputs) {
        Ok(v) => v,
        Err(e) => return Outcome::failed(e),
    };
    for n in &items {
        let m = &n.value;
        let result = checked_smith_normal_form(m).and_then(|snf| {
            let t = quotient_invariants(m.cols(), m).map_err(|e| e.to_string())?;
            let prime = is_prime_subgroup_fg_abelian(m.cols(), m).map_err(|e| e.to_string())?;
            Ok((snf, t, prime))
        });
        match result {
            Ok((snf, t, prime)) => {
                let j = json!({
                    "name": n.name,
                    "u": snf.u,
                    "d": snf.d,
                    "v": snf.v,
                    "quotient": t,
                    "prime": prime,
                });
                let diag: Vec<String> = snf.d.diagonal().iter().map(|x| x.to_string()).collect();
                let text = format!(
                    "{}\n  diagonal: [{}]\n  Z^{} / rows = {}\n  prime: {prime}",
                    n.name,
                    diag.join(", "),
                    m.cols(),
                    abelian_text(&t)
                );
                outcome.push(j, text, false);
            }
            Err(reason) => {
                let j = json!({ "name": n.name, "matrix": m, "error": reason });
                outcome.push(j, format!("{}: SNF CHECK FAILED: {reason}", n.name), true);
            }
        }
    }
    outcome
}

pub fn zspec(a: &ZspecArgs) -> Outcome {
    let mut outcome = Outcome::default();
    for &n in &a.values {
        let spec = spec_of_integers(n);
        let (spec_json, spec_text) = match &spec {
            IntegerSpec::All => (json!("all"), "every (p^a)".to_string()),
            IntegerSpec::Ideals(v) => (
                json!(v),
                v.iter().map(|(p, e)| format!("({p}^{e})")).collect::<Vec<_>>().join(" "),
            ),
        };
        let mut j = json!({ "n": n, "spec": spec_json });
        let mut text = format!("V(({n})): {spec_text}");
        if let Some(bound) = a.bound {
            if n >= 2 {
                match z_pprime_window_check(n as i64, bound) {
                    Ok(v) => {
                        j["window"] = json!({ "bound": bound, "violation": v.map(|(x, y)| [x, y]) });
                        text.push_str(&match v {
                            Some((x, y)) => format!("\n  ({n}) not p-prime: I({x}) ∩ I({y}) ⊆ ({n})"),
                            None => format!("\n  ({n}): no violation for |a|, |b| <= {bound}"),
                        });
                    }
                    Err(e) => {
                        outcome.error = Some(e);
                        return outcome;
                    }
                }
            }
        }
        outcome.push(j, text, false);
    }
    outcome
}

pub fn ring(a: &Inputs) -> Outcome {
    let limits = a.common.limits();
    let items = match input::rings(&a.inputs) {
        Ok(v) => v,
        Err(e) => return Outcome::failed(e),
    };
    each(&items, |n| {
        let r = &n.value;
        let ideals = r.two_sided_ideals(&limits)?;
        let mut primes = Vec::new();
        let mut witnesses = Vec::new();
        for i in &ideals {
            match r.is_p_prime(i) {
                (true, _) => primes.push(i.elements().to_vec()),
                (false, w) => {
                    let (x, y) = w.expect("failure carries a witness");
                    witnesses.push(json!({ "ideal": i.elements(), "a": x, "b": y }));
                }
            }
        }
        let topology = verify_ring_topology(r, &limits)?;
        let failed = topology.iter().any(|t| !t.pass);
        let ideal_lists: Vec<Vec<usize>> = ideals.iter().map(|i| i.elements().to_vec()).collect();
        let j = json!({
            "name": n.name,
            "order": r.order(),
            "unital": r.one().is_some(),
            "ideals": ideal_lists,
            "p_primes": primes,
            "non_prime_witnesses": witnesses,
            "topology": topology,
        });
        let text = format!(
            "{} (order {})\n  ideals ({}): {}\n  p-prime ({}): {}{}",
            n.name,
            r.order(),
            ideal_lists.len(),
            ideal_lists.iter().map(|i| set(i)).collect::<Vec<_>>().join(" "),
            primes.len(),
            primes.iter().map(|i| set(i)).collect::<Vec<_>>().join(" "),
            axiom_text(&topology),
        );
        Ok(vec![(j, text, failed)])
    })
}

pub fn verify(a: &VerifyArgs) -> Outcome {
    let (items, limits) = match load_groups(&a.inputs) {
        Ok(v) => v,
        Err(o) => return o,
    };
    let notions = if a.all {
        vec![PrimalityNotion::IntersectionPrime, PrimalityNotion::QuotientDomain]
    } else {
        vec![a.inputs.common.notion]
    };
    let mut outcome = each(&items, |n| {
        let mut lines = Vec::new();
        for &notion in &notions {
            let reports = verify_axioms(&n.value, notion, &limits)?;
            let pass = reports.iter().all(|r| r.pass);
            let j = json!({
                "name": n.name,
                "order": n.value.carrier().order(),
                "notion": notion.tag(),
                "pass": pass,
                "axioms": reports,
            });
            let text = if pass {
                format!("{} [{}] pass", header(n), notion)
            } else {
                let failing: Vec<AxiomReport> = reports.into_iter().filter(|r| !r.pass).collect();
                format!("{} [{}] FAIL{}", header(n), notion, axiom_text(&failing))
            };
            lines.push((j, text, !pass));
        }
        Ok(lines)
    });
    if outcome.error.is_none() {
        let checked = outcome.lines.len();
        let failed = outcome.failures;
        outcome.lines.push(Line {
            json: json!({ "summary": { "checked": checked, "failed": failed } }),
            text: format!("{checked} checked, {failed} failed"),
        });
    }
    outcome
}

pub fn corpus(a: &CorpusArgs) -> Outcome {
    let mut outcome = Outcome::default();
    for e in build_corpus(a.bound) {
        let j = json!({ "name": e.name, "order": e.group.order(), "tags": e.tags });
        let text = format!("{:<16} {:>4}  {}", e.name, e.group.order(), e.tags.join(","));
        outcome.push(j, text, false);
    }
    outcome
}
