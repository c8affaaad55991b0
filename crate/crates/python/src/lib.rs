//! Python bindings: relations, measures and conditional knowledge bases.
//!
//! Events cross the boundary as lists of state names.

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use confrel::io;
use confrel::measures::{
    brute_force_acceptance, brute_force_ct, classify_acceptance_belief, induce_relation,
    induce_sup_relation, is_big_stepped, is_context_tolerant_belief, parse_rational,
    recognize_ct_plausibility,
};
use confrel::preferential::{base_relation_verdicts, close_p, entails_query, ConditionalBase, ReflexivePolicy};
use confrel::relations::{accepted_set, check_axiom, check_closure, is_acceptance_preorder, lift_strict_pairs};
use confrel::representation::{decompose_with_threads, recompose, DecomposeMode, Family};
use confrel::space::MAX_RELATION_STATES;
use confrel::{
    AtomUniverse, Axiom, ConfidenceRelation, MassAssignment, Measure, PossibilityDistribution,
    ProbabilityDistribution, SetFunction, StateSpace, Verdict,
};

create_exception!(pyconfrel, ConfrelError, PyException);

fn err(e: confrel::Error) -> PyErr {
    ConfrelError::new_err(e.to_string())
}

type Names = Vec<String>;

fn verdict_dict<'py>(py: Python<'py>, space: &StateSpace, v: &Verdict) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("axiom", v.axiom.name())?;
    d.set_item("holds", v.holds)?;
    let witness: Option<Vec<Names>> = v
        .witness_masks()
        .map(|w| w.into_iter().map(|m| space.names_of(m)).collect());
    d.set_item("witness", witness)?;
    Ok(d)
}

/// A confidence relation on the events of a finite state space.
#[pyclass(name = "Relation", frozen, from_py_object)]
#[derive(Clone)]
pub struct PyRelation {
    inner: ConfidenceRelation,
}

impl PyRelation {
    fn mask(&self, names: &[String]) -> PyResult<u32> {
        self.inner.space().mask_of(names).map_err(err)
    }
}

#[pymethods]
impl PyRelation {
    /// Reads a relation file (`{"states": ..., "pairs": ...}`).
    #[staticmethod]
    #[pyo3(signature = (text, max_states = MAX_RELATION_STATES))]
    fn from_json(text: &str, max_states: usize) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_relation(text, max_states).map_err(err)?,
        })
    }

    /// Weak pairs `(A, B)` meaning `A ≥ B`, closed under inclusion and
    /// transitivity; with `strict_only`, strict pairs lifted by inclusion.
    #[staticmethod]
    #[pyo3(signature = (states, pairs, strict_only = false))]
    fn from_pairs(states: Names, pairs: Vec<(Names, Names)>, strict_only: bool) -> PyResult<Self> {
        let space = StateSpace::new(&states).map_err(err)?;
        let events = pairs
            .iter()
            .map(|(a, b)| Ok((space.event_of(a)?, space.event_of(b)?)))
            .collect::<confrel::Result<Vec<_>>>()
            .map_err(err)?;
        let inner = if strict_only {
            lift_strict_pairs(&space, &events)
        } else {
            ConfidenceRelation::from_pairs(space, &events)
        }
        .map_err(err)?;
        Ok(Self { inner })
    }

    /// Inclusion: `A ≥ B` iff `B ⊆ A`.
    #[staticmethod]
    fn inclusion(states: Names) -> PyResult<Self> {
        Ok(Self {
            inner: ConfidenceRelation::inclusion(StateSpace::new(&states).map_err(err)?),
        })
    }

    fn to_json(&self) -> String {
        io::relation_json(&self.inner)
    }

    #[getter]
    fn states(&self) -> Names {
        self.inner.space().names().to_vec()
    }

    fn ge(&self, a: Names, b: Names) -> PyResult<bool> {
        Ok(self.inner.ge(self.mask(&a)?, self.mask(&b)?))
    }

    fn gt(&self, a: Names, b: Names) -> PyResult<bool> {
        Ok(self.inner.gt(self.mask(&a)?, self.mask(&b)?))
    }

    fn equiv(&self, a: Names, b: Names) -> PyResult<bool> {
        Ok(self.inner.equiv(self.mask(&a)?, self.mask(&b)?))
    }

    fn is_complete(&self) -> bool {
        self.inner.is_complete()
    }

    fn is_acceptance_preorder(&self) -> bool {
        is_acceptance_preorder(&self.inner)
    }

    /// `{"axiom", "holds", "witness"}` for one axiom, by name.
    fn check_axiom<'py>(&self, py: Python<'py>, axiom: &str) -> PyResult<Bound<'py, PyDict>> {
        let axiom: Axiom = axiom.parse().map_err(err)?;
        verdict_dict(py, self.inner.space(), &check_axiom(&self.inner, axiom))
    }

    /// Accepted events in context `given` (default: every state), their
    /// kernel, and whether they are deductively closed.
    #[pyo3(signature = (given = None))]
    fn accepted<'py>(&self, py: Python<'py>, given: Option<Names>) -> PyResult<Bound<'py, PyDict>> {
        let space = self.inner.space();
        let context = match given {
            Some(names) => space.event_of(&names).map_err(err)?,
            None => space.full(),
        };
        let k = accepted_set(&self.inner, context).map_err(err)?;
        let closure = check_closure(&self.inner, context).map_err(err)?;
        let d = PyDict::new(py);
        d.set_item("kernel", space.names_of(k.kernel.bits()))?;
        d.set_item(
            "accepted",
            k.accepted.iter().map(|e| space.names_of(e.bits())).collect::<Vec<_>>(),
        )?;
        d.set_item("flags", k.flags.iter().map(|f| f.name()).collect::<Vec<_>>())?;
        d.set_item("closed", closure.holds)?;
        Ok(d)
    }

    /// Complete acceptance preorders whose intersection is this relation.
    #[pyo3(signature = (mode = "all", threads = None))]
    fn decompose(&self, py: Python<'_>, mode: &str, threads: Option<usize>) -> PyResult<Vec<PyRelation>> {
        let mode: DecomposeMode = mode.parse().map_err(err)?;
        let inner = self.inner.clone();
        let family = py
            .detach(move || decompose_with_threads(&inner, mode, threads))
            .map_err(err)?;
        Ok(family
            .members()
            .iter()
            .map(|m| PyRelation { inner: m.clone() })
            .collect())
    }

    /// Intersection of complete relations sharing their equivalences.
    #[staticmethod]
    fn recompose(members: Vec<PyRelation>) -> PyResult<PyRelation> {
        let space = members
            .first()
            .map(|m| m.inner.space().clone())
            .ok_or_else(|| err(confrel::Error::EmptyFamily))?;
        let family = Family::new(space, members.into_iter().map(|m| m.inner).collect()).map_err(err)?;
        Ok(PyRelation {
            inner: recompose(&family).map_err(err)?,
        })
    }

    fn strict_pairs(&self) -> Vec<(Names, Names)> {
        let space = self.inner.space();
        self.inner
            .strict_pairs()
            .into_iter()
            .map(|(a, b)| (space.names_of(a), space.names_of(b)))
            .collect()
    }

    fn __eq__(&self, other: &PyRelation) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!(
            "Relation(states={:?}, weak_pairs={})",
            self.inner.space().names(),
            self.inner.weak_pairs().len()
        )
    }
}

/// A probability, possibility or mass assignment with exact rational values.
#[pyclass(name = "Measure", frozen)]
pub struct PyMeasure {
    inner: Measure,
}

fn rationals(values: &[String]) -> PyResult<Vec<confrel::Rational>> {
    values.iter().map(|v| parse_rational(v).map_err(err)).collect()
}

#[pymethods]
impl PyMeasure {
    #[staticmethod]
    #[pyo3(signature = (text, max_states = MAX_RELATION_STATES))]
    fn from_json(text: &str, max_states: usize) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_measure(text, max_states).map_err(err)?,
        })
    }

    /// Values as strings such as `"3/10"` or `"0.3"`, one per state.
    #[staticmethod]
    fn probability(states: Names, values: Vec<String>) -> PyResult<Self> {
        let space = StateSpace::new(&states).map_err(err)?;
        let p = ProbabilityDistribution::new(space, rationals(&values)?).map_err(err)?;
        Ok(Self { inner: p.into() })
    }

    #[staticmethod]
    fn possibility(states: Names, values: Vec<String>) -> PyResult<Self> {
        let space = StateSpace::new(&states).map_err(err)?;
        let p = PossibilityDistribution::new(space, rationals(&values)?).map_err(err)?;
        Ok(Self { inner: p.into() })
    }

    /// Focal sets with their masses.
    #[staticmethod]
    fn mass(states: Names, masses: Vec<(Names, String)>) -> PyResult<Self> {
        let space = StateSpace::new(&states).map_err(err)?;
        let focal = masses
            .iter()
            .map(|(e, v)| Ok((space.mask_of(e).map_err(err)?, parse_rational(v).map_err(err)?)))
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self {
            inner: MassAssignment::new(space, focal).map_err(err)?.into(),
        })
    }

    fn to_json(&self) -> String {
        io::measure_json(&self.inner)
    }

    #[getter]
    fn kinds(&self) -> Vec<&'static str> {
        self.inner.kinds().iter().map(|k| k.name()).collect()
    }

    /// The value of set function `kind` on an event, as an exact fraction.
    fn value(&self, kind: &str, event: Names) -> PyResult<String> {
        let kind: SetFunction = kind.parse().map_err(err)?;
        let space = self.inner.space();
        let e = space.event_of(&event).map_err(err)?;
        Ok(confrel::measures::evaluate(&self.inner, kind, e).map_err(err)?.to_string())
    }

    fn induce(&self, kind: &str) -> PyResult<PyRelation> {
        let kind: SetFunction = kind.parse().map_err(err)?;
        Ok(PyRelation {
            inner: induce_relation(&self.inner, kind).map_err(err)?,
        })
    }

    /// For a possibility distribution, the relation comparing the parts
    /// two events do not share.
    fn induce_sup(&self) -> PyResult<PyRelation> {
        match &self.inner {
            Measure::Possibility(pd) => Ok(PyRelation {
                inner: induce_sup_relation(pd),
            }),
            _ => Err(ConfrelError::new_err("induce_sup needs a possibility distribution")),
        }
    }

    /// Acceptance and context tolerance per set function, plus the
    /// structural recognizers that apply to this measure type.
    fn classify<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let space = self.inner.space();
        let d = PyDict::new(py);
        for &k in self.inner.kinds() {
            let acc = brute_force_acceptance(&self.inner, k).map_err(err)?;
            let ct = brute_force_ct(&self.inner, k).map_err(err)?;
            d.set_item(format!("acceptance[{}]", k.name()), verdict_dict(py, space, &acc)?)?;
            d.set_item(format!("context_tolerance[{}]", k.name()), verdict_dict(py, space, &ct)?)?;
        }
        match &self.inner {
            Measure::Probability(pd) => {
                d.set_item("big_stepped", verdict_dict(py, space, &is_big_stepped(pd))?)?;
            }
            Measure::Mass(m) => {
                let c = classify_acceptance_belief(m);
                d.set_item("belief_case", c.case.name())?;
                d.set_item("belief_kernel", space.names_of(c.kernel))?;
                d.set_item(
                    "context_tolerant_structure[Bel]",
                    verdict_dict(py, space, &is_context_tolerant_belief(m))?,
                )?;
                d.set_item("plausibility_via", recognize_ct_plausibility(m).via.name())?;
            }
            Measure::Possibility(_) => {}
        }
        Ok(d)
    }

    fn __repr__(&self) -> String {
        format!("Measure(type={}, states={:?})", self.inner.type_name(), self.inner.space().names())
    }
}

/// Conditional assertions `φ |~ ψ` over propositional atoms.
#[pyclass(name = "KnowledgeBase", frozen)]
pub struct PyKnowledgeBase {
    inner: ConditionalBase,
}

fn policy(allow_reflexive: bool) -> ReflexivePolicy {
    if allow_reflexive {
        ReflexivePolicy::Allow
    } else {
        ReflexivePolicy::Reject
    }
}

#[pymethods]
impl PyKnowledgeBase {
    #[staticmethod]
    #[pyo3(signature = (text, allow_reflexive = false, max_states = MAX_RELATION_STATES))]
    fn from_json(text: &str, allow_reflexive: bool, max_states: usize) -> PyResult<Self> {
        Ok(Self {
            inner: io::parse_kb(text, max_states, allow_reflexive).map_err(err)?,
        })
    }

    /// States are all valuations of `atoms`; rules are `(if, then)` formulas.
    #[staticmethod]
    #[pyo3(signature = (atoms, rules, allow_reflexive = false))]
    fn from_rules(atoms: Names, rules: Vec<(String, String)>, allow_reflexive: bool) -> PyResult<Self> {
        let universe = AtomUniverse::new(&atoms).map_err(err)?;
        Ok(Self {
            inner: ConditionalBase::from_rules(universe, &rules, policy(allow_reflexive)).map_err(err)?,
        })
    }

    #[getter]
    fn states(&self) -> Names {
        self.inner.space().names().to_vec()
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    /// Whether the preferential closure contains `"φ |~ ψ"`.
    fn entails(&self, query: &str) -> PyResult<bool> {
        entails_query(&self.inner, query).map_err(err)
    }

    /// The closed base, with `X > ∅` added for every non-empty `X` first
    /// when `plausible` is set.
    #[pyo3(signature = (plausible = false))]
    fn close(&self, plausible: bool) -> PyKnowledgeBase {
        let mut kb = self.inner.clone();
        if plausible {
            kb.add_plausible_events();
        }
        PyKnowledgeBase { inner: close_p(&kb) }
    }

    fn is_consistent(&self) -> bool {
        self.inner.is_consistent() && close_p(&self.inner).is_consistent()
    }

    /// Assertions as `(antecedent, consequent)` state-name lists.
    fn assertions(&self) -> Vec<(Names, Names)> {
        let space = self.inner.space();
        self.inner
            .pairs()
            .map(|(e, f)| (space.names_of(e | f), space.names_of(e)))
            .collect()
    }

    /// IR, T, O, Ac and CP for the base read as a strict relation.
    fn relation_verdicts<'py>(&self, py: Python<'py>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        base_relation_verdicts(&self.inner)
            .iter()
            .map(|v| verdict_dict(py, self.inner.space(), v))
            .collect()
    }
}

/// The uniform distribution on `k` states.
#[pyfunction]
fn lottery(k: usize) -> PyResult<PyMeasure> {
    Ok(PyMeasure {
        inner: confrel::generate::lottery(k).map_err(err)?.into(),
    })
}

/// `p(s_i) = 2^(n−i) / (2^n − 1)`.
#[pyfunction]
fn bigstep(n: usize) -> PyResult<PyMeasure> {
    Ok(PyMeasure {
        inner: confrel::generate::bigstep(n).map_err(err)?.into(),
    })
}

/// Runs the command-line tool with `args` and returns its exit code.
#[pyfunction]
fn run_cli(py: Python<'_>, args: Vec<String>) -> i32 {
    let argv: Vec<String> = std::iter::once("confrel".to_string()).chain(args).collect();
    py.detach(move || confrel::cli::run(argv))
}

#[pymodule]
fn pyconfrel(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyRelation>()?;
    m.add_class::<PyMeasure>()?;
    m.add_class::<PyKnowledgeBase>()?;
    m.add_function(wrap_pyfunction!(lottery, m)?)?;
    m.add_function(wrap_pyfunction!(bigstep, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("ConfrelError", m.py().get_type::<ConfrelError>())?;
    Ok(())
}
