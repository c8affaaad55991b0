//! Acceptance suite: ten property sweeps, one PASS/FAIL line each. Exits
//! non-zero if any fails.

mod common;

use std::collections::HashMap;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use confrel::generate::{lottery, random_mass};
use confrel::io::{family_json, measure_json, relation_json};
use confrel::measures::{
    brute_force_acceptance, brute_force_ct, classify_acceptance_belief, induce_relation,
    induce_sup_relation, is_big_stepped, is_context_tolerant_belief, rational, BeliefCase,
};
use confrel::preferential::{
    base_relation_verdicts, close_p, entails_query, rule_verdicts, strict_disjoint_pairs,
    ConditionalBase, ReflexivePolicy,
};
use confrel::relations::{
    check_axiom, check_closure, instance_violated, is_acceptance_preorder, lift_strict,
    strict_verdicts,
};
use confrel::representation::{
    decompose_with_threads, random_acceptance_preorder, recompose, DecomposeMode, RandomPreorder,
};
use confrel::{
    AtomUniverse, Axiom, ConfidenceRelation, MassAssignment, Measure, PossibilityDistribution,
    ProbabilityDistribution, SetFunction, StateSpace,
};

use common::{
    kernel_oracle, n2_acceptance_preorders, naive_additive, naive_is_acceptance, naive_p_closure,
    possibility_grid, probability_grid, Mask,
};

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn space(n: usize) -> StateSpace {
    StateSpace::numbered(n).unwrap()
}

fn c1_n2_sweep(rels: &[ConfidenceRelation]) -> Check {
    let s2 = space(2);
    let mut agree = 0usize;
    for w in 0..=u16::MAX {
        let m = confrel::BitMatrix::from_fn(4, |a, b| common::bit(w, a, b));
        let rel = ConfidenceRelation::from_matrix(s2.clone(), m).unwrap();
        if is_acceptance_preorder(&rel) == naive_is_acceptance(w) {
            agree += 1;
        }
    }
    ensure(agree == 1 << 16, || format!("acceptance filter disagrees on {} matrices", (1 << 16) - agree))?;

    let mut bad = Vec::new();
    for rel in rels {
        let sp = rel.space();
        let full = sp.full_mask();
        // Lifting the strict part.
        let sv = strict_verdicts(sp, rel.strict_matrix());
        if let Some(v) = sv.iter().find(|v| !v.holds) {
            bad.push(format!("strict part fails {}", v.axiom.name()));
            continue;
        }
        let lifted = lift_strict(sp, rel.strict_matrix()).map_err(|e| e.to_string())?;
        let identity = (0..=full).all(|a| (0..=full).all(|b| a == b || !lifted.equiv(a, b)));
        let keeps = rel.strict_pairs().iter().all(|&(a, b)| lifted.gt(a, b));
        if !is_acceptance_preorder(&lifted) || !identity || !keeps {
            bad.push("lifted strict part".into());
        }
        // Kernels, checked against the direct oracle.
        if rel.gt(full, 0) {
            let (k, exact) = kernel_oracle(rel, full);
            if k == 0 || !exact || !check_axiom(rel, Axiom::Kernel).holds {
                bad.push("kernel".into());
            }
        }
        for b in 1..=full {
            if rel.gt(b, 0) {
                let (k, exact) = kernel_oracle(rel, b);
                if k == 0 || !exact {
                    bad.push(format!("conditional kernel in {}", sp.format(b)));
                }
            }
        }
        for axiom in [Axiom::ConditionalKernel, Axiom::Negligibility, Axiom::CCS, Axiom::CAnd] {
            if !check_axiom(rel, axiom).holds {
                bad.push(axiom.name().into());
            }
        }
    }
    ensure(bad.is_empty(), || format!("{} counterexamples, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{} acceptance preorders of 65536 matrices, 0 counterexamples", rels.len()))
}

fn c2_big_stepped() -> Check {
    let mut checked = 0;
    let mut disagreements = Vec::new();
    let mut replay_failures = 0;
    for n in 1..=4 {
        let sp = space(n);
        for p in probability_grid(n, 20) {
            let pd = ProbabilityDistribution::new(sp.clone(), p.clone()).unwrap();
            let bs = is_big_stepped(&pd);
            let m = Measure::from(pd);
            let ct = brute_force_ct(&m, SetFunction::P).unwrap();
            checked += 1;
            if bs.holds != ct.holds {
                disagreements.push(format!("{p:?}"));
            }
            let rel = induce_relation(&m, SetFunction::P).unwrap();
            if (!bs.holds && !bs.replays_on(&rel)) || (!ct.holds && !instance_violated(&rel, Axiom::Ac, &ct.witness_masks().unwrap())) {
                replay_failures += 1;
            }
        }
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first {}", disagreements.len(), disagreements[0]))?;
    ensure(replay_failures == 0, || format!("{replay_failures} witnesses do not replay"))?;
    Ok(format!("{checked} distributions, 0 disagreements"))
}

fn mass_sample() -> Vec<MassAssignment> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    (0..10_000)
        .map(|_| {
            let n = rng.gen_range(1..=4);
            random_mass(&space(n), 4, 5, &mut rng).unwrap()
        })
        .collect()
}

fn c3_context_tolerant_belief(sample: &[MassAssignment]) -> Check {
    let mut disagreements = Vec::new();
    let mut positives = 0;
    for m in sample {
        let fast = is_context_tolerant_belief(m).holds;
        let slow = brute_force_ct(&Measure::Mass(m.clone()), SetFunction::Bel).unwrap().holds;
        positives += slow as usize;
        if fast != slow {
            disagreements.push(format!("{:?}", m.focal()));
        }
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first {}", disagreements.len(), disagreements[0]))?;
    Ok(format!("{} masses ({positives} context tolerant), 0 disagreements", sample.len()))
}

fn c4_acceptance_belief(sample: &[MassAssignment]) -> Check {
    let mut disagreements = Vec::new();
    let mut cases: HashMap<&'static str, usize> = HashMap::new();
    for m in sample {
        let c = classify_acceptance_belief(m);
        *cases.entry(c.case.name()).or_default() += 1;
        let measure = Measure::Mass(m.clone());
        let bel = brute_force_acceptance(&measure, SetFunction::Bel).unwrap().holds;
        let pl = brute_force_acceptance(&measure, SetFunction::Pl).unwrap().holds;
        let matched = c.case != BeliefCase::None;
        if matched != (bel && pl) || (matched && !c.recheck(m)) {
            disagreements.push(format!("{:?}: case {}, Bel {bel}, Pl {pl}", m.focal(), c.case.name()));
        }
    }
    ensure(disagreements.is_empty(), || format!("{} disagreements, first {}", disagreements.len(), disagreements[0]))?;
    let mut counts: Vec<_> = cases.into_iter().collect();
    counts.sort();
    Ok(format!("{} masses, cases {counts:?}, 0 disagreements", sample.len()))
}

fn c5_possibility() -> Check {
    let mut accept_cache: HashMap<Vec<(Mask, Mask)>, bool> = HashMap::new();
    let mut sup_cache: HashMap<(Vec<(Mask, Mask)>, Vec<(Mask, Mask)>), bool> = HashMap::new();
    let mut checked = 0;
    let mut failures = Vec::new();
    for n in 1..=4 {
        let sp = space(n);
        let full = sp.full_mask();
        for pi in possibility_grid(n, 10) {
            let pd = PossibilityDistribution::new(sp.clone(), pi.clone()).unwrap();
            let m = Measure::from(pd.clone());
            let poss = induce_relation(&m, SetFunction::Pi).unwrap();
            let nec = induce_relation(&m, SetFunction::N).unwrap();
            let sup = induce_sup_relation(&pd);
            checked += 1;
            for (name, rel) in [("Pi", &poss), ("N", &nec), ("sup", &sup)] {
                let ok = *accept_cache
                    .entry(rel.weak_pairs())
                    .or_insert_with(|| is_acceptance_preorder(rel));
                if !ok {
                    failures.push(format!("{name} order of {pi:?} is not an acceptance preorder"));
                }
            }
            let key = (sup.weak_pairs(), poss.weak_pairs());
            let ok = *sup_cache.entry(key).or_insert_with(|| {
                let self_dual = (0..=full).all(|a| {
                    (0..=full).all(|b| sup.gt(a, b) == sup.gt(!b & full, !a & full))
                });
                let refines = confrel::space::disjoint_pairs(n).all(|(a, b)| !poss.gt(a, b) || sup.gt(a, b));
                self_dual && refines
            });
            if !ok {
                failures.push(format!("sup strict part of {pi:?} is not self-dual or misses Pi"));
            }
        }
    }
    ensure(failures.is_empty(), || format!("{} failures, first {}", failures.len(), failures[0]))?;
    Ok(format!("{checked} distributions ({} distinct orders), 0 failures", accept_cache.len()))
}

fn c6_duality() -> Check {
    let sp = space(4);
    let m = MassAssignment::new(sp.clone(), vec![(0b0001, rational(2, 5)), (0b1100, rational(3, 5))]).unwrap();
    let (a, b) = (0b0001, 0b0110);
    let got = [m.belief(a), m.belief(b), m.plausibility(a), m.plausibility(b)];
    let want = [rational(2, 5), rational(0, 1), rational(2, 5), rational(3, 5)];
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("Bel(A)=2/5 > Bel(B)=0, Pl(A)=2/5 < Pl(B)=3/5".into())
}

fn cli() -> Command {
    Command::new(env!("CARGO_BIN_EXE_confrel"))
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = cli().args(args).output().expect("run confrel");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn c7_lottery() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for k in 3..=10 {
        let pd = lottery(k).unwrap();
        let m = Measure::from(pd.clone());
        let rel = induce_relation(&m, SetFunction::P).unwrap();
        let full = rel.space().full_mask();
        ensure((0..k).all(|i| rel.accepts(full & !(1 << i))), || format!("k={k}: a co-singleton is not accepted"))?;
        let closure = check_closure(&rel, rel.space().full()).unwrap();
        ensure(!closure.holds && closure.replays_on(&rel), || format!("k={k}: closure verdict {closure:?}"))?;
        ensure(!is_big_stepped(&pd).holds, || format!("k={k}: lottery is big-stepped"))?;

        // The command line reproduces exit codes and reports byte for byte.
        let (code, fixture) = run_cli(&["gen", "--type", "lottery", "--n", &k.to_string()]);
        ensure(code == 0 && fixture == measure_json(&m), || format!("k={k}: gen output differs"))?;
        let path = dir.path().join(format!("lottery{k}.json"));
        std::fs::write(&path, &fixture).unwrap();
        let path = path.to_str().unwrap();
        let first = run_cli(&["classify-measure", path, "--format", "json"]);
        let second = run_cli(&["classify-measure", path, "--format", "json"]);
        ensure(first.0 == 1 && first == second, || format!("k={k}: classify-measure unstable or exit {}", first.0))?;
        let report: Value = serde_json::from_str(&first.1).map_err(|e| e.to_string())?;
        for w in report["witnesses"].as_array().unwrap() {
            let axiom: Axiom = w["axiom"].as_str().unwrap().parse().unwrap();
            let events: Vec<Mask> = w["events"]
                .as_array()
                .unwrap()
                .iter()
                .map(|e| {
                    let names: Vec<String> = serde_json::from_value(e.clone()).unwrap();
                    rel.space().mask_of(&names).unwrap()
                })
                .collect();
            ensure(instance_violated(&rel, axiom, &events), || format!("k={k}: witness {w} does not replay"))?;
        }
        if k <= 7 {
            let rel_path = dir.path().join(format!("lottery{k}-rel.json"));
            std::fs::write(&rel_path, relation_json(&rel)).unwrap();
            let rel_path = rel_path.to_str().unwrap();
            let a = run_cli(&["accepted", "--relation", rel_path, "--format", "json"]);
            let b = run_cli(&["accepted", "--relation", rel_path, "--format", "json"]);
            ensure(a.0 == 1 && a == b, || format!("k={k}: accepted unstable or exit {}", a.0))?;
        }
    }
    Ok("k = 3..10: co-singletons accepted, closure fails, not big-stepped; CLI stable".into())
}

fn penguin() -> ConditionalBase {
    let u = AtomUniverse::new(&["b", "f", "p"]).unwrap();
    ConditionalBase::from_rules(u, &[("b", "f"), ("p", "b"), ("p", "!f")], ReflexivePolicy::Reject).unwrap()
}

fn c8_system_p() -> Check {
    let kb = penguin();
    let closed = close_p(&kb);
    let premises: Vec<(Mask, Mask)> = kb.pairs().collect();
    let oracle = naive_p_closure(&premises);
    let engine: std::collections::BTreeSet<(Mask, Mask)> = closed.pairs().collect();
    ensure(engine == oracle, || format!("closure has {} pairs, oracle {}", engine.len(), oracle.len()))?;
    ensure(entails_query(&closed, "p & b |~ !f").unwrap(), || "p & b |~ !f not entailed".into())?;
    ensure(!entails_query(&closed, "p |~ f").unwrap(), || "p |~ f entailed".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let mut without_premises_o = 0;
    for i in 0..100 {
        let n = 2 + i % 2;
        let shape = RandomPreorder {
            seeds: 6,
            plausible_states: true,
            ..RandomPreorder::default()
        };
        let rel = random_acceptance_preorder(&space(n), shape, &mut rng).unwrap();
        let strict = strict_disjoint_pairs(&rel);
        let chosen: Vec<(Mask, Mask)> = strict.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();

        let bare = ConditionalBase::from_pairs(rel.space().clone(), chosen.iter().copied()).unwrap();
        if !base_relation_verdicts(&close_p(&bare)).iter().all(|v| v.holds) {
            without_premises_o += 1;
        }

        let mut kb = bare.clone();
        kb.add_plausible_events();
        let closed = close_p(&kb);
        if let Some(v) = base_relation_verdicts(&closed).into_iter().find(|v| !v.holds) {
            return Err(format!("base {i}: closure fails {} at {}", v.axiom.name(), v.describe_with(rel.space())));
        }
        let engine: std::collections::BTreeSet<(Mask, Mask)> = closed.pairs().collect();
        let premises: Vec<(Mask, Mask)> = kb.pairs().collect();
        ensure(engine == naive_p_closure(&premises), || format!("base {i}: closure differs from oracle"))?;
        ensure(engine.iter().all(|p| strict.contains(p)), || format!("base {i}: closure leaves the source order"))?;
        if let Some(v) = rule_verdicts(&rel).into_iter().find(|v| !v.holds) {
            return Err(format!("base {i}: source order fails {}", v.axiom.name()));
        }
    }
    Ok(format!(
        "penguin closure = oracle ({} pairs); 100 bases both directions; {without_premises_o}/100 bare closures fail O",
        engine.len()
    ))
}

fn c9_roundtrip(n2: &[ConfidenceRelation]) -> Check {
    let check = |rel: &ConfidenceRelation, label: &str| -> Result<(), String> {
        let fam = decompose_with_threads(rel, DecomposeMode::All, Some(1)).map_err(|e| format!("{label}: {e}"))?;
        for m in fam.members() {
            ensure(m.is_complete() && is_acceptance_preorder(m), || format!("{label}: invalid member"))?;
        }
        let back = recompose(&fam).map_err(|e| format!("{label}: {e}"))?;
        ensure(&back == rel, || format!("{label}: recomposition differs"))?;
        let parallel = decompose_with_threads(rel, DecomposeMode::All, Some(4)).map_err(|e| e.to_string())?;
        ensure(family_json(&fam) == family_json(&parallel), || format!("{label}: output depends on threads"))?;
        let maximal = decompose_with_threads(rel, DecomposeMode::Maximal, Some(4)).map_err(|e| e.to_string())?;
        ensure(recompose(&maximal).map_err(|e| e.to_string())? == *rel, || format!("{label}: maximal mode"))?;
        Ok(())
    };
    for (i, rel) in n2.iter().enumerate() {
        check(rel, &format!("n=2 #{i}"))?;
    }
    let s3 = space(3);
    let mut members = 0;
    for seed in 0..200u64 {
        let shape = RandomPreorder {
            plausible_states: seed % 3 == 0,
            ..RandomPreorder::default()
        };
        let rel = random_acceptance_preorder(&s3, shape, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
        check(&rel, &format!("n=3 seed {seed}"))?;
        members += decompose_with_threads(&rel, DecomposeMode::All, None).unwrap().len();
    }
    Ok(format!("{} n=2 and 200 n=3 relations recomposed ({members} n=3 members)", n2.len()))
}

fn c10_additivity(rels: &[ConfidenceRelation]) -> Check {
    let mut additive = 0;
    let mut bad = Vec::new();
    for rel in rels {
        let add = check_axiom(rel, Axiom::Add).holds;
        if add != naive_additive(rel) {
            bad.push(format!("ADD scan disagrees on {:#06x}", common::n2_code(rel)));
        }
        let types = check_axiom(rel, Axiom::TypeOr).holds && check_axiom(rel, Axiom::TypeAnd).holds;
        if add != types {
            bad.push(format!("ADD != TYPE_OR & TYPE_AND on {:#06x}", common::n2_code(rel)));
        }
        if add {
            additive += 1;
            if !check_axiom(rel, Axiom::SelfDual).holds {
                bad.push(format!("additive, not self-dual: {:#06x}", common::n2_code(rel)));
            }
            let v = check_axiom(rel, Axiom::NullNegligible);
            if !v.holds {
                bad.push(format!(
                    "additive, null-negligibility fails at {} on {:#06x}",
                    v.describe_with(rel.space()),
                    common::n2_code(rel)
                ));
            }
        }
    }
    ensure(bad.is_empty(), || format!("{} counterexamples, first: {}", bad.len(), bad[0]))?;
    Ok(format!("{} preorders, {additive} additive, 0 counterexamples", rels.len()))
}

fn report(id: usize, name: &str, budget: Option<Duration>, f: impl FnOnce() -> Check) -> bool {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let over = budget.is_some_and(|b| elapsed > b);
    let (ok, detail) = match result {
        Ok(d) if over => (false, format!("{d}; over budget {:?}", budget.unwrap())),
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    println!(
        "criterion {id:>2} {} {name} ({:.2}s): {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64()
    );
    ok
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let start = Instant::now();
    let n2 = n2_acceptance_preorders();
    let sample = mass_sample();
    let sample_time = start.elapsed();

    let results = [
        report(1, "two-state sweep", secs(60), || c1_n2_sweep(&n2)),
        report(2, "big-stepped equivalence", secs(120), c2_big_stepped),
        report(3, "context-tolerant belief recognizer", secs(120), || c3_context_tolerant_belief(&sample)),
        report(4, "acceptance belief classification", None, || c4_acceptance_belief(&sample)),
        report(5, "possibility consistency", None, c5_possibility),
        report(6, "belief/plausibility duality", None, c6_duality),
        report(7, "lottery", None, c7_lottery),
        report(8, "preferential closure", secs(60), c8_system_p),
        report(9, "decomposition roundtrip", None, || c9_roundtrip(&n2)),
        report(10, "additivity consequences", None, || c10_additivity(&n2)),
    ];
    let passed = results.iter().filter(|&&r| r).count();
    println!(
        "acceptance: {passed}/{} passed (fixtures {:.2}s, total {:.2}s)",
        results.len(),
        sample_time.as_secs_f64(),
        start.elapsed().as_secs_f64()
    );
    if passed != results.len() {
        std::process::exit(1);
    }
}
