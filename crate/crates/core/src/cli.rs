//! Command-line front end. Every command yields a [`RunReport`]; the exit
//! code is 0 when the reported property holds, 1 when it fails (the report
//! then carries witnesses) and 2 on input or usage errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::generate;
use crate::io::{self, FamilyFile, RelationFile};
use crate::logic::AtomUniverse;
use crate::measures::{
    brute_force_acceptance, brute_force_ct, classify_acceptance_belief, induce_relation,
    induce_sup_relation, is_big_stepped, is_context_tolerant_belief, recognize_ct_plausibility,
    Measure, SetFunction,
};
use crate::preferential::{
    base_relation_verdicts, close_p, entails, rule_verdicts, strict_disjoint_pairs, ConditionalBase,
    Pair,
};
use crate::relations::{acceptance_verdicts, accepted_set, check_axiom, check_closure, Axiom, Verdict};
use crate::representation::{decompose_with_limit, recompose, DecomposeMode, RandomPreorder};
use crate::space::{Mask, StateSpace, MAX_DECOMPOSITION_STATES, MAX_RELATION_STATES};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenType {
    Lottery,
    Bigstep,
    RandomRelation,
    RandomMass,
}

#[derive(Debug, Parser)]
#[command(name = "confrel", version, about = "Check, induce and decompose comparative confidence relations")]
pub struct Cli {
    /// Write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Format of the report printed on standard output.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Raise the state-count guards. Relation matrices grow as 4^n bits.
    #[arg(long, global = true)]
    pub max_states: Option<usize>,
    /// Include the wall time in the report, which makes it vary across runs.
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check axioms on a relation file.
    CheckAxioms {
        relation: PathBuf,
        /// Comma-separated axiom names, or `all`.
        #[arg(long, value_delimiter = ',', default_value = "T,MI,Ac")]
        axioms: Vec<String>,
    },
    /// The relation induced by a measure.
    Induce {
        measure: PathBuf,
        /// P, Pi, N, Bel or Pl; defaults to the measure's first set function.
        #[arg(long)]
        kind: Option<String>,
        /// For possibility distributions, the relation comparing disjoint
        /// parts by their most plausible states.
        #[arg(long)]
        sup: bool,
        /// Write the induced relation file here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Whether a measure is a context-tolerant acceptance function, by
    /// structural recognizers and by exhaustive check.
    ClassifyMeasure {
        measure: PathBuf,
        #[arg(long)]
        kind: Option<String>,
    },
    /// Accepted beliefs of a relation, optionally in a context.
    Accepted {
        #[arg(long)]
        relation: PathBuf,
        /// Context formula. Atoms are state names unless `--atoms` is given.
        #[arg(long)]
        given: Option<String>,
        /// Atoms whose valuations name the relation's states (`"01"`, ...).
        #[arg(long, value_delimiter = ',')]
        atoms: Vec<String>,
    },
    /// Preferential closure of a knowledge base.
    CloseKb {
        kb: PathBuf,
        #[arg(long)]
        allow_reflexive: bool,
        /// Write the closure as a pair list here.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Whether a knowledge base entails `φ |~ ψ`.
    Entail {
        #[arg(long)]
        kb: PathBuf,
        query: String,
        #[arg(long)]
        allow_reflexive: bool,
    },
    /// Complete acceptance preorders whose intersection is the relation.
    Decompose {
        relation: PathBuf,
        #[arg(long, default_value = "all")]
        mode: String,
        /// Worker threads; the output does not depend on it.
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Intersection of a family of complete preorders.
    Recompose {
        family: PathBuf,
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Closed base read as a relation, or a relation read as a closed base.
    Roundtrip {
        #[arg(long, required_unless_present = "relation", conflicts_with = "relation")]
        kb: Option<PathBuf>,
        #[arg(long)]
        relation: Option<PathBuf>,
        /// Add `X > ∅` for every non-empty event before closing the base.
        #[arg(long)]
        plausible: bool,
        #[arg(long)]
        allow_reflexive: bool,
    },
    /// Print a fixture file on standard output.
    Gen {
        #[arg(long = "type", value_enum)]
        kind: GenType,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictEntry {
    pub check: String,
    pub holds: bool,
}

/// A failed check and the events of its violated instance, in the order of
/// the axiom's variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub check: String,
    pub axiom: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    pub events: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 over the command, its input files and its arguments.
    pub inputs_digest: String,
    pub holds: bool,
    pub verdicts: Vec<VerdictEntry>,
    pub witnesses: Vec<WitnessEntry>,
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

impl RunReport {
    pub fn exit_code(&self) -> i32 {
        if self.holds {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        io::to_json(self)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: {}", self.command, if self.holds { "holds" } else { "fails" });
        for v in &self.verdicts {
            let _ = writeln!(s, "  {:<28} {}", v.check, if v.holds { "ok" } else { "FAIL" });
        }
        for w in &self.witnesses {
            let events: Vec<String> = w.events.iter().map(|e| format!("{{{}}}", e.join(","))).collect();
            let _ = writeln!(s, "  witness {}: {}", w.check, events.join(", "));
        }
        if let Value::Object(map) = &self.results {
            for (k, v) in map {
                let _ = writeln!(s, "  {k}: {v}");
            }
        }
        let _ = writeln!(s, "  digest: {}", self.inputs_digest);
        if let Some(ms) = self.wall_time_ms {
            let _ = writeln!(s, "  wall time: {ms:.1} ms");
        }
        s
    }
}

/// What a command produced: the report and, for commands that build a file,
/// its contents.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: RunReport,
    pub artifact: Option<String>,
}

struct Builder {
    command: &'static str,
    hasher: Sha256,
    verdicts: Vec<VerdictEntry>,
    witnesses: Vec<WitnessEntry>,
}

impl Builder {
    fn new(command: &'static str) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(command.as_bytes());
        Self {
            command,
            hasher,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
        }
    }

    fn read(&mut self, path: &Path) -> Result<String> {
        let text = std::fs::read_to_string(path)?;
        self.hasher.update((text.len() as u64).to_le_bytes());
        self.hasher.update(text.as_bytes());
        Ok(text)
    }

    fn arg(&mut self, name: &str, value: &str) {
        for part in [name, value] {
            self.hasher.update((part.len() as u64).to_le_bytes());
            self.hasher.update(part.as_bytes());
        }
    }

    fn verdict(&mut self, check: String, space: &StateSpace, v: &Verdict, subject: Option<&str>) {
        self.verdicts.push(VerdictEntry {
            check: check.clone(),
            holds: v.holds,
        });
        if let Some(w) = v.witness_masks() {
            self.witnesses.push(WitnessEntry {
                check,
                axiom: v.axiom.name().to_string(),
                subject: subject.map(String::from),
                events: w.into_iter().map(|m| space.names_of(m)).collect(),
            });
        }
    }

    fn flag(&mut self, check: &str, holds: bool) {
        self.verdicts.push(VerdictEntry {
            check: check.to_string(),
            holds,
        });
    }

    fn witness(&mut self, check: &str, axiom: &str, space: &StateSpace, events: &[Mask]) {
        self.witnesses.push(WitnessEntry {
            check: check.to_string(),
            axiom: axiom.to_string(),
            subject: None,
            events: events.iter().map(|&m| space.names_of(m)).collect(),
        });
    }

    fn finish(self, results: Value) -> RunReport {
        RunReport {
            command: self.command.to_string(),
            inputs_digest: hex::encode(self.hasher.finalize()),
            holds: self.verdicts.iter().all(|v| v.holds),
            verdicts: self.verdicts,
            witnesses: self.witnesses,
            results,
            wall_time_ms: None,
        }
    }
}

fn event_json(space: &StateSpace, m: Mask) -> Value {
    json!(space.names_of(m))
}

fn pair_json(space: &StateSpace, (e, f): Pair) -> Value {
    json!({ "antecedent": space.names_of(e | f), "consequent": space.names_of(e) })
}

fn parse_kind(kind: &Option<String>, measure: &Measure) -> Result<Vec<SetFunction>> {
    match kind {
        None => Ok(measure.kinds().to_vec()),
        Some(k) => {
            let k: SetFunction = k.parse()?;
            if !measure.kinds().contains(&k) {
                return Err(Error::KindMismatch {
                    kind: k.name(),
                    measure: measure.type_name(),
                });
            }
            Ok(vec![k])
        }
    }
}

fn parse_axioms(names: &[String]) -> Result<Vec<Axiom>> {
    if names.len() == 1 && names[0].eq_ignore_ascii_case("all") {
        return Ok(Axiom::ALL.to_vec());
    }
    names.iter().map(|n| n.parse()).collect()
}

/// The universe used to read `--given`: the valuations of `atoms`, which must
/// name the relation's states, or else one atom per state.
fn context_universe(space: &StateSpace, atoms: &[String], max_states: usize) -> Result<AtomUniverse> {
    if !atoms.is_empty() {
        let u = AtomUniverse::with_limit(atoms, max_states)?;
        if u.space().names() != space.names() {
            return Err(Error::SpaceMismatch);
        }
        return Ok(u);
    }
    let labels: Vec<Vec<String>> = space.names().iter().map(|n| vec![n.clone()]).collect();
    AtomUniverse::labelled(space.clone(), space.names(), &labels)
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let limit = cli.max_states.unwrap_or(MAX_RELATION_STATES);
    let started = Instant::now();
    let mut outcome = match &cli.command {
        Command::CheckAxioms { relation, axioms } => {
            let mut b = Builder::new("check-axioms");
            let rel = io::parse_relation(&b.read(relation)?, limit)?;
            let axioms = parse_axioms(axioms)?;
            for a in &axioms {
                b.arg("axiom", a.name());
            }
            for a in &axioms {
                let v = check_axiom(&rel, *a);
                b.verdict(a.name().to_string(), rel.space(), &v, None);
            }
            let results = json!({ "states": rel.space().names(), "complete": rel.is_complete() });
            plain(b.finish(results))
        }
        Command::Induce { measure, kind, sup, emit } => {
            let mut b = Builder::new("induce");
            let m = io::parse_measure(&b.read(measure)?, limit)?;
            let k = parse_kind(kind, &m)?[0];
            b.arg("kind", k.name());
            b.arg("sup", &sup.to_string());
            let rel = match (&m, sup) {
                (Measure::Possibility(pd), true) => induce_sup_relation(pd),
                (_, true) => {
                    return Err(Error::Format("--sup applies to possibility distributions".into()))
                }
                (_, false) => induce_relation(&m, k)?,
            };
            for v in acceptance_verdicts(&rel) {
                b.verdict(v.axiom.name().to_string(), rel.space(), &v, None);
            }
            let file = RelationFile::from_relation(&rel);
            let results = json!({
                "kind": if *sup { "Pi_sup" } else { k.name() },
                "complete": rel.is_complete(),
                "relation": file,
            });
            write_emit(emit, &io::to_json(&file))?;
            Outcome {
                report: b.finish(results),
                artifact: Some(io::to_json(&file)),
            }
        }
        Command::ClassifyMeasure { measure, kind } => {
            let mut b = Builder::new("classify-measure");
            let m = io::parse_measure(&b.read(measure)?, limit)?;
            let kinds = parse_kind(kind, &m)?;
            for k in &kinds {
                b.arg("kind", k.name());
            }
            plain(classify(b, &m, &kinds)?)
        }
        Command::Accepted { relation, given, atoms } => {
            let mut b = Builder::new("accepted");
            let rel = io::parse_relation(&b.read(relation)?, limit)?;
            let space = rel.space();
            let context = match given {
                None => space.full_mask(),
                Some(text) => {
                    b.arg("given", text);
                    b.arg("atoms", &atoms.join(","));
                    let u = context_universe(space, atoms, limit)?;
                    u.models_mask(&u.parse(text)?)
                }
            };
            let kernel = accepted_set(&rel, space.event(context))?;
            let closure = check_closure(&rel, space.event(context))?;
            b.verdict("closure".into(), space, &closure, None);
            let results = json!({
                "context": event_json(space, context),
                "kernel": event_json(space, kernel.kernel.bits()),
                "accepted": kernel.accepted.iter().map(|e| space.names_of(e.bits())).collect::<Vec<_>>(),
                "flags": kernel.flags.iter().map(|f| f.name()).collect::<Vec<_>>(),
            });
            plain(b.finish(results))
        }
        Command::CloseKb { kb, allow_reflexive, emit } => {
            let mut b = Builder::new("close-kb");
            let base = io::parse_kb(&b.read(kb)?, limit, *allow_reflexive)?;
            b.arg("allow_reflexive", &allow_reflexive.to_string());
            let closed = close_p(&base);
            let space = closed.space().clone();
            b.flag("CP", closed.is_consistent());
            let mut results = json!({
                "premises": base.len(),
                "size": closed.len(),
            });
            if let Some(bad) = closed.inconsistency() {
                b.witness("CP", Axiom::CP.name(), &space, &[bad.pair.1]);
                results["inconsistency"] = json!(bad
                    .chain
                    .iter()
                    .map(|s| json!({
                        "rule": s.rule.name(),
                        "pair": pair_json(&space, s.pair),
                        "premises": s.premises.iter().map(|p| pair_json(&space, *p)).collect::<Vec<_>>(),
                    }))
                    .collect::<Vec<_>>());
            }
            let pairs: Vec<Value> = closed.pairs().map(|p| pair_json(&space, p)).collect();
            let artifact = io::to_json(&json!({ "states": space.names(), "pairs": pairs }));
            write_emit(emit, &artifact)?;
            Outcome {
                report: b.finish(results),
                artifact: Some(artifact),
            }
        }
        Command::Entail { kb, query, allow_reflexive } => {
            let mut b = Builder::new("entail");
            let base = io::parse_kb(&b.read(kb)?, limit, *allow_reflexive)?;
            b.arg("query", query);
            b.arg("allow_reflexive", &allow_reflexive.to_string());
            let pair = base.query_pair(query)?;
            let closed = close_p(&base);
            let entailed = entails(&closed, pair)?;
            let space = closed.space().clone();
            b.flag("entailed", entailed);
            if !entailed {
                b.witness("entailed", "query", &space, &[pair.0, pair.1]);
            }
            let results = json!({
                "query": query,
                "pair": pair_json(&space, pair),
                "closure_size": closed.len(),
                "consistent": closed.is_consistent(),
            });
            plain(b.finish(results))
        }
        Command::Decompose { relation, mode, threads, emit } => {
            let mut b = Builder::new("decompose");
            let rel = io::parse_relation(&b.read(relation)?, limit)?;
            let mode: DecomposeMode = mode.parse()?;
            b.arg("mode", mode.name());
            let cap = cli.max_states.unwrap_or(MAX_DECOMPOSITION_STATES);
            match decompose_with_limit(&rel, mode, *threads, cap) {
                Ok(family) => {
                    b.flag("decomposed", true);
                    let file = FamilyFile::from_family(&family);
                    let results = json!({ "mode": mode.name(), "members": family.len(), "family": file });
                    let artifact = io::to_json(&file);
                    write_emit(emit, &artifact)?;
                    Outcome {
                        report: b.finish(results),
                        artifact: Some(artifact),
                    }
                }
                Err(Error::NotAcceptance(v)) => {
                    b.verdict(v.axiom.name().to_string(), rel.space(), &v, None);
                    plain(b.finish(json!({ "mode": mode.name() })))
                }
                Err(e) => return Err(e),
            }
        }
        Command::Recompose { family, emit } => {
            let mut b = Builder::new("recompose");
            let fam = io::parse_family(&b.read(family)?, limit)?;
            let space = fam.space().clone();
            match recompose(&fam) {
                Ok(rel) => {
                    b.flag("recomposed", true);
                    let file = RelationFile::from_relation(&rel);
                    let artifact = io::to_json(&file);
                    write_emit(emit, &artifact)?;
                    Outcome {
                        report: b.finish(json!({ "members": fam.len(), "relation": file })),
                        artifact: Some(artifact),
                    }
                }
                Err(Error::SharedEquivalenceViolated { first, second, left, right }) => {
                    b.flag("shared_equivalence", false);
                    let l = space.mask_of(&names_in(&left))?;
                    let r = space.mask_of(&names_in(&right))?;
                    b.witness("shared_equivalence", "equivalence", &space, &[l, r]);
                    plain(b.finish(json!({ "members": fam.len(), "disagreeing_members": [first, second] })))
                }
                Err(Error::NotAcceptance(v)) => {
                    b.verdict(v.axiom.name().to_string(), &space, &v, None);
                    plain(b.finish(json!({ "members": fam.len() })))
                }
                Err(e) => return Err(e),
            }
        }
        Command::Roundtrip { kb, relation, plausible, allow_reflexive } => {
            if let Some(path) = kb {
                let mut b = Builder::new("roundtrip");
                let mut base = io::parse_kb(&b.read(path)?, limit, *allow_reflexive)?;
                b.arg("plausible", &plausible.to_string());
                if *plausible {
                    base.add_plausible_events();
                }
                let closed = close_p(&base);
                for v in base_relation_verdicts(&closed) {
                    b.verdict(v.axiom.name().to_string(), closed.space(), &v, Some("closure"));
                }
                plain(b.finish(json!({ "direction": "base_to_relation", "closure_size": closed.len() })))
            } else {
                let path = relation.as_ref().expect("clap requires --kb or --relation");
                let mut b = Builder::new("roundtrip");
                let rel = io::parse_relation(&b.read(path)?, limit)?;
                for v in rule_verdicts(&rel) {
                    b.verdict(v.axiom.name().to_string(), rel.space(), &v, None);
                }
                let pairs = strict_disjoint_pairs(&rel);
                let base = ConditionalBase::from_pairs(rel.space().clone(), pairs.iter().copied())?;
                let fixed = close_p(&base).len() == pairs.len();
                b.flag("closed_under_rules", fixed);
                plain(b.finish(json!({ "direction": "relation_to_base", "strict_pairs": pairs.len() })))
            }
        }
        Command::Gen { kind, n } => {
            let mut b = Builder::new("gen");
            b.arg("type", &format!("{kind:?}"));
            b.arg("n", &n.to_string());
            b.arg("seed", &cli.seed.to_string());
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            let artifact = match kind {
                GenType::Lottery => io::measure_json(&generate::lottery(*n)?.into()),
                GenType::Bigstep => io::measure_json(&generate::bigstep(*n)?.into()),
                GenType::RandomRelation => {
                    let space = StateSpace::with_limit(&numbered(*n), limit)?;
                    let rel = generate::random_relation(&space, RandomPreorder::default(), &mut rng)?;
                    io::relation_json(&rel)
                }
                GenType::RandomMass => {
                    let space = StateSpace::with_limit(&numbered(*n), limit)?;
                    io::measure_json(&generate::random_mass(&space, 4, 5, &mut rng)?.into())
                }
            };
            b.flag("generated", true);
            let results = json!({ "type": format!("{kind:?}").to_lowercase(), "n": n, "seed": cli.seed });
            Outcome {
                report: b.finish(results),
                artifact: Some(artifact),
            }
        }
    };
    if cli.timing {
        outcome.report.wall_time_ms = Some(started.elapsed().as_secs_f64() * 1e3);
    }
    Ok(outcome)
}

fn plain(report: RunReport) -> Outcome {
    Outcome { report, artifact: None }
}

fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// State names inside a `{a,b}` rendering.
fn names_in(formatted: &str) -> Vec<String> {
    formatted
        .trim_matches(|c| c == '{' || c == '}')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

fn write_emit(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text)?;
    }
    Ok(())
}

fn classify(mut b: Builder, m: &Measure, kinds: &[SetFunction]) -> Result<RunReport> {
    let space = m.space().clone();
    let mut results = serde_json::Map::new();
    results.insert("type".into(), json!(m.type_name()));

    if let Measure::Probability(pd) = m {
        let v = is_big_stepped(pd);
        b.verdict("big_stepped".into(), &space, &v, Some("P"));
        results.insert("big_stepped".into(), json!(v.holds));
    }
    if let Measure::Mass(mass) = m {
        if kinds.contains(&SetFunction::Bel) {
            let c = classify_acceptance_belief(mass);
            results.insert(
                "belief_case".into(),
                json!({
                    "case": c.case.name(),
                    "kernel": event_json(&space, c.kernel),
                    "twins": c.twins.map(|(i, j)| [space.names()[i].clone(), space.names()[j].clone()]),
                }),
            );
            let v = is_context_tolerant_belief(mass);
            b.verdict("context_tolerant_structure[Bel]".into(), &space, &v, Some("Bel"));
        }
        if kinds.contains(&SetFunction::Pl) {
            let r = recognize_ct_plausibility(mass);
            results.insert(
                "plausibility".into(),
                json!({ "via": r.via.name(), "example1": r.example1, "example2": r.example2 }),
            );
        }
    }
    for &k in kinds {
        let acc = brute_force_acceptance(m, k)?;
        b.verdict(format!("acceptance[{}]", k.name()), &space, &acc, Some(k.name()));
        let ct = brute_force_ct(m, k)?;
        b.verdict(format!("context_tolerance[{}]", k.name()), &space, &ct, Some(k.name()));
    }
    Ok(b.finish(Value::Object(results)))
}

/// Parses `args`, runs the command, prints the report and returns the exit
/// code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli).and_then(|outcome| emit(&cli, &outcome).map(|()| outcome)) {
        Ok(outcome) => outcome.report.exit_code(),
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn emit(cli: &Cli, outcome: &Outcome) -> Result<()> {
    let report = &outcome.report;
    if let Some(path) = &cli.out {
        std::fs::write(path, report.to_json())?;
    }
    match (&cli.command, &outcome.artifact) {
        (Command::Gen { .. }, Some(text)) => print!("{text}"),
        _ => match cli.format {
            OutputFormat::Json => print!("{}", report.to_json()),
            OutputFormat::Text => print!("{}", report.to_text()),
        },
    }
    Ok(())
}
