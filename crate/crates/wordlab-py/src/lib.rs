//! Python bindings: the main wordlab types and operations in-process.
//!
//! ```python
//! import wordlab_py as wl
//! g = wl.Group.catalog("q8")
//! wl.count(g, "[x1,x2]")          # {'1': 40, 'g3': 24}
//! wl.verify("thmC", g, k=1)       # JSON report string
//! ```

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use wordlab::chars::{character_table, fourier_coefficients};
use wordlab::fiber::{
    count_auto, count_brute_force, count_central_quotient, count_convolve, CountOptions,
};
use wordlab::group::catalog;
use wordlab::group::{AssocCheck, FiniteGroup};
use wordlab::signature::{class2_signature, normalize_type2_partial, reduce_type1, NormalForm};
use wordlab::verify as wl_verify;
use wordlab::word;

fn err_to_py(e: wordlab::Error) -> PyErr {
    match e {
        wordlab::Error::TheoremViolated { .. } | wordlab::Error::CriteriaDisagreement(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
        other => PyValueError::new_err(other.to_string()),
    }
}

/// A finite group from the catalog or a JSON document.
#[pyclass(frozen)]
struct Group {
    inner: Arc<FiniteGroup>,
}

#[pymethods]
impl Group {
    /// Builds a catalog group, e.g. `Group.catalog("heisenberg(3)")`.
    #[staticmethod]
    fn catalog(name: &str) -> PyResult<Self> {
        Ok(Group {
            inner: Arc::new(catalog::catalog(name).map_err(err_to_py)?),
        })
    }

    /// Loads a `cayley-v1` or `pc2-v1` JSON document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(Group {
            inner: Arc::new(FiniteGroup::from_json(text, AssocCheck::Auto).map_err(err_to_py)?),
        })
    }

    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    fn order(&self) -> u64 {
        self.inner.order()
    }

    fn exponent(&self) -> u64 {
        self.inner.exponent()
    }

    fn center_order(&self) -> u64 {
        self.inner.center().order()
    }

    fn derived_order(&self) -> u64 {
        self.inner.derived_subgroup().order()
    }

    fn class_count(&self) -> usize {
        self.inner.conjugacy_classes().count()
    }

    fn is_abelian(&self) -> bool {
        self.inner.is_abelian()
    }

    fn is_class_le2(&self) -> bool {
        self.inner.is_class_le2()
    }

    fn is_nilpotent(&self) -> bool {
        self.inner.is_nilpotent()
    }

    /// Element labels in handle order; index 0 is the identity.
    fn element_labels(&self) -> Vec<String> {
        self.inner.elements().map(|e| self.inner.label(e)).collect()
    }

    /// The group as a validated `cayley-v1` JSON document.
    fn cayley_json(&self) -> PyResult<String> {
        Ok(self
            .inner
            .materialize_cayley()
            .map_err(err_to_py)?
            .to_json())
    }

    fn direct_product(&self, other: &Group) -> PyResult<Group> {
        Ok(Group {
            inner: Arc::new(self.inner.direct_product(&other.inner).map_err(err_to_py)?),
        })
    }

    fn __repr__(&self) -> String {
        format!("Group({}, order={})", self.inner.name(), self.inner.order())
    }
}

/// A freely reduced word in the x1/x2 grammar.
#[pyclass(frozen)]
struct Word {
    inner: word::Word,
}

#[pymethods]
impl Word {
    /// Parses a word; `arity` pads with unused trailing variables.
    #[staticmethod]
    #[pyo3(signature = (text, arity=None))]
    fn parse(text: &str, arity: Option<usize>) -> PyResult<Self> {
        Ok(Word {
            inner: word::parse_word(text, arity).map_err(err_to_py)?,
        })
    }

    /// One of the named families: `wk`, `left_normed`, `vn`.
    #[staticmethod]
    fn named(kind: &str, n: usize) -> PyResult<Self> {
        let kind = word::NamedWord::parse(kind).map_err(err_to_py)?;
        Ok(Word {
            inner: word::build_named_word(kind, n).map_err(err_to_py)?,
        })
    }

    fn text(&self) -> String {
        self.inner.render()
    }

    fn arity(&self) -> usize {
        self.inner.arity()
    }

    fn inverse(&self) -> Word {
        Word {
            inner: self.inner.invert(),
        }
    }

    /// Class-2 signature: (exponent sums, {(i, j): commutator exponent})
    /// with 1-based generator indices.
    fn signature(&self) -> (Vec<BigInt>, BTreeMap<(usize, usize), BigInt>) {
        let sig = class2_signature(&self.inner);
        let a = sig.exponent_sums().to_vec();
        let mut b = BTreeMap::new();
        for i in 0..sig.arity() {
            for j in (i + 1)..sig.arity() {
                let e = sig.commutator_exponent(i, j);
                if !num_traits::Zero::is_zero(e) {
                    b.insert((i + 1, j + 1), e.clone());
                }
            }
        }
        (a, b)
    }

    fn __repr__(&self) -> String {
        format!("Word({})", self.inner.render())
    }

    fn __eq__(&self, other: &Word) -> bool {
        self.inner == other.inner
    }
}

fn resolve_word(word: &Bound<'_, PyAny>) -> PyResult<word::Word> {
    if let Ok(w) = word.extract::<PyRef<Word>>() {
        return Ok(w.inner.clone());
    }
    let text: String = word.extract()?;
    word::parse_word(&text, None).map_err(err_to_py)
}

/// Exact fiber distribution as `{element_label: count}`; zero fibers are
/// omitted. Methods: auto, brute, central, convolve.
#[pyfunction]
#[pyo3(signature = (group, word, method="auto", budget=None, workers=1))]
fn count(
    group: &Group,
    word: &Bound<'_, PyAny>,
    method: &str,
    budget: Option<u64>,
    workers: usize,
) -> PyResult<BTreeMap<String, BigUint>> {
    let w = resolve_word(word)?;
    let opts = CountOptions {
        budget: budget.unwrap_or(wordlab::DEFAULT_BUDGET),
        workers,
    };
    let g = &group.inner;
    let dist = match method {
        "auto" => count_auto(g, &w, &opts),
        "brute" => count_brute_force(g, &w, &opts),
        "central" => count_central_quotient(g, &w, &opts),
        "convolve" => count_convolve(g, &w, &opts),
        other => return Err(PyValueError::new_err(format!("unknown method `{other}`"))),
    }
    .map_err(err_to_py)?;
    let mut out = BTreeMap::new();
    for e in g.elements() {
        let c = dist.count(e);
        if !num_traits::Zero::is_zero(c) {
            out.insert(g.label(e), c.clone());
        }
    }
    Ok(out)
}

/// The irreducible character table as its JSON export.
#[pyfunction]
fn character_table_json(group: &Group) -> PyResult<String> {
    let t = character_table(&group.inner).map_err(err_to_py)?;
    Ok(t.to_export(&group.inner).to_json())
}

/// Character degrees, ascending.
#[pyfunction]
fn character_degrees(group: &Group) -> PyResult<Vec<u32>> {
    let t = character_table(&group.inner).map_err(err_to_py)?;
    Ok(t.degrees().to_vec())
}

/// Exact Fourier coefficients of `N_w` as (numerator, denominator) pairs,
/// one per character in table order.
#[pyfunction]
fn fourier(group: &Group, word: &Bound<'_, PyAny>) -> PyResult<Vec<(BigInt, BigInt)>> {
    let w = resolve_word(word)?;
    let g = &group.inner;
    let t = character_table(g).map_err(err_to_py)?;
    let d = count_auto(g, &w, &CountOptions::default()).map_err(err_to_py)?;
    let f = fourier_coefficients(&d, &t).map_err(err_to_py)?;
    Ok(f.coefficients()
        .iter()
        .map(|c| (c.numer().clone(), c.denom().clone()))
        .collect())
}

/// Reduces a word at a prime. Returns (kind, exponents, canonical_text):
/// kind is "type1" or "type2-partial".
#[pyfunction]
fn reduce(word: &Bound<'_, PyAny>, prime: u64) -> PyResult<(String, Vec<u32>, String)> {
    let w = resolve_word(word)?;
    let sig = class2_signature(&w);
    let nf = if sig.has_zero_exponent_sums() {
        reduce_type1(&sig, prime).map_err(err_to_py)?
    } else {
        normalize_type2_partial(&sig, prime).map_err(err_to_py)?
    };
    let kind = match &nf {
        NormalForm::Type1 { .. } => "type1",
        NormalForm::Type2Partial { .. } => "type2-partial",
    };
    let canonical = nf.canonical_word().map_err(err_to_py)?;
    Ok((kind.to_string(), nf.exponents(), canonical.render()))
}

/// Runs one verification claim and returns the report as a JSON string.
/// Claims: amit, gamit, thmA, thmB, thmC, rational, chiral, uniform,
/// product (which needs `with_group`).
#[pyfunction]
#[pyo3(signature = (claim, group, word=None, k=None, with_group=None))]
fn verify(
    claim: &str,
    group: &Group,
    word: Option<&Bound<'_, PyAny>>,
    k: Option<usize>,
    with_group: Option<&Group>,
) -> PyResult<String> {
    let opts = CountOptions::default();
    let g = &group.inner;
    let need_word = || -> PyResult<word::Word> {
        word.map(resolve_word)
            .transpose()?
            .ok_or_else(|| PyValueError::new_err(format!("claim `{claim}` needs a word")))
    };
    let report = match claim {
        "amit" => wl_verify::verify_bounds(g, &need_word()?, wl_verify::BoundMode::Amit, &opts),
        "gamit" => wl_verify::verify_bounds(
            g,
            &need_word()?,
            wl_verify::BoundMode::GeneralizedAmit,
            &opts,
        ),
        "thmA" => {
            wl_verify::verify_bounds(g, &need_word()?, wl_verify::BoundMode::TwoVariable, &opts)
        }
        "thmB" => wl_verify::verify_bounds(g, &need_word()?, wl_verify::BoundMode::OddPrime, &opts),
        "thmC" => wl_verify::verify_theorem_c(g, k.unwrap_or(1), &opts),
        "rational" => wl_verify::check_rationality(g, &need_word()?, &opts),
        "chiral" => wl_verify::check_chirality(g, &need_word()?, &opts),
        "uniform" => wl_verify::check_uniformity_surjective(g, &need_word()?, &opts),
        "product" => {
            let other = with_group
                .ok_or_else(|| PyValueError::new_err("claim `product` needs with_group"))?;
            wl_verify::check_product_multiplicativity(g, &other.inner, &need_word()?, &opts)
        }
        other => return Err(PyValueError::new_err(format!("unknown claim `{other}`"))),
    }
    .map_err(err_to_py)?;
    Ok(report.to_json())
}

/// The built-in word corpus used by the sweeps.
#[pyfunction]
fn corpus() -> Vec<String> {
    wordlab::corpus::WORDS
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// Names of the curated class-2 catalog entries.
#[pyfunction]
fn catalog_class2() -> Vec<String> {
    catalog::class2_all()
        .into_iter()
        .map(String::from)
        .collect()
}

#[pymodule]
fn wordlab_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Group>()?;
    m.add_class::<Word>()?;
    m.add_function(wrap_pyfunction!(count, m)?)?;
    m.add_function(wrap_pyfunction!(character_table_json, m)?)?;
    m.add_function(wrap_pyfunction!(character_degrees, m)?)?;
    m.add_function(wrap_pyfunction!(fourier, m)?)?;
    m.add_function(wrap_pyfunction!(reduce, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(corpus, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_class2, m)?)?;
    Ok(())
}
