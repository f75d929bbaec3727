//! Python bindings: period matrices, theta evaluation, bitangent
//! extraction, fingerprints, and the curve comparison verdict.

use std::collections::BTreeMap;

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use quartic_theta::characteristics::{self, Characteristic, ParityFilter};
use quartic_theta::siegel::SiegelPoint;
use quartic_theta::weber::{self, Fingerprint, Verdict};
use quartic_theta::{bitangents, theta, BitangentLine, BitangentSet, Error};

fn pyerr(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_char(text: &str) -> PyResult<Characteristic> {
    text.parse::<Characteristic>().map_err(pyerr)
}

/// A validated point of the genus-g Siegel upper half-space.
#[pyclass(name = "PeriodMatrix", skip_from_py_object)]
#[derive(Clone)]
struct PyPeriodMatrix {
    inner: SiegelPoint,
}

#[pymethods]
impl PyPeriodMatrix {
    /// Build from a row-major nested list of complex entries.
    #[new]
    fn new(entries: Vec<Vec<Complex64>>) -> PyResult<Self> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(PyValueError::new_err("matrix rows must all have length n"));
        }
        let tau = nalgebra_matrix(&entries);
        SiegelPoint::new(tau).map(|inner| PyPeriodMatrix { inner }).map_err(pyerr)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        SiegelPoint::from_json(text).map(|inner| PyPeriodMatrix { inner }).map_err(pyerr)
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    #[getter]
    fn genus(&self) -> usize {
        self.inner.genus()
    }

    /// Smallest eigenvalue of the imaginary part (the conditioning).
    #[getter]
    fn lambda_min(&self) -> f64 {
        self.inner.lambda_min()
    }

    /// The matrix as a nested list of complex numbers.
    fn tau(&self) -> Vec<Vec<Complex64>> {
        let g = self.inner.genus();
        (0..g)
            .map(|i| (0..g).map(|j| self.inner.entry(i, j)).collect())
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "PeriodMatrix(genus={}, lambda_min={:.6})",
            self.inner.genus(),
            self.inner.lambda_min()
        )
    }
}

fn nalgebra_matrix(entries: &[Vec<Complex64>]) -> nalgebra::DMatrix<Complex64> {
    let n = entries.len();
    nalgebra::DMatrix::from_fn(n, n, |i, j| entries[i][j])
}

/// A well-conditioned random period matrix (deterministic in the seed).
#[pyfunction]
#[pyo3(signature = (seed, genus = 3, conditioning = 0.3))]
fn random_tau(seed: u64, genus: usize, conditioning: f64) -> PyPeriodMatrix {
    PyPeriodMatrix {
        inner: quartic_theta::siegel::random_tau(seed, genus, conditioning),
    }
}

/// Theta value with characteristic `char` at `tau` (optionally at `z`).
#[pyfunction]
#[pyo3(signature = (character, tau, z = None, tol = 1e-12))]
fn theta_value(
    character: &str,
    tau: &PyPeriodMatrix,
    z: Option<Vec<Complex64>>,
    tol: f64,
) -> PyResult<Complex64> {
    let m = parse_char(character)?;
    let z = z.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); tau.inner.genus()]);
    theta::theta(&m, &tau.inner, &z, tol).map(|v| v.value).map_err(pyerr)
}

/// Theta value plus its truncation certificate: (value, tail_bound, radius).
#[pyfunction]
#[pyo3(signature = (character, tau, z = None, tol = 1e-12))]
fn theta_with_certificate(
    character: &str,
    tau: &PyPeriodMatrix,
    z: Option<Vec<Complex64>>,
    tol: f64,
) -> PyResult<(Complex64, f64, u32)> {
    let m = parse_char(character)?;
    let z = z.unwrap_or_else(|| vec![Complex64::new(0.0, 0.0); tau.inner.genus()]);
    theta::theta(&m, &tau.inner, &z, tol)
        .map(|v| (v.value, v.tail_bound, v.radius))
        .map_err(pyerr)
}

/// Gradient at z = 0 of an odd-characteristic theta.
#[pyfunction]
#[pyo3(signature = (character, tau, tol = 1e-12))]
fn grad_theta(character: &str, tau: &PyPeriodMatrix, tol: f64) -> PyResult<Vec<Complex64>> {
    let n = parse_char(character)?;
    theta::grad_theta0(&n, &tau.inner, tol).map(|g| g.vector).map_err(pyerr)
}

/// The 28 bitangent lines as (characteristic, [c0, c1, c2]) pairs, sorted.
#[pyfunction]
#[pyo3(signature = (tau, tol = 1e-12))]
fn extract_bitangents(
    tau: &PyPeriodMatrix,
    tol: f64,
) -> PyResult<Vec<(String, Vec<Complex64>)>> {
    let set = bitangents::extract_bitangents(&tau.inner, tol).map_err(pyerr)?;
    Ok(set
        .lines()
        .iter()
        .map(|l| (l.character().to_string(), l.coords().to_vec()))
        .collect())
}

fn lines_from_pairs(pairs: Vec<(String, Vec<Complex64>)>) -> PyResult<BitangentSet> {
    let mut lines = Vec::with_capacity(pairs.len());
    for (label, coords) in pairs {
        if coords.len() != 3 {
            return Err(PyValueError::new_err("each line needs exactly 3 coordinates"));
        }
        let character = parse_char(&label)?;
        lines.push(
            BitangentLine::new(character, [coords[0], coords[1], coords[2]]).map_err(pyerr)?,
        );
    }
    BitangentSet::from_lines(lines).map_err(pyerr)
}

fn fingerprint_to_dict(fp: &Fingerprint) -> BTreeMap<String, Complex64> {
    fp.quotients()
        .iter()
        .map(|(m, q)| (m.to_string(), *q))
        .collect()
}

fn fingerprint_from_dict(entries: BTreeMap<String, Complex64>) -> PyResult<Fingerprint> {
    let mut quotients = BTreeMap::new();
    for (label, value) in entries {
        quotients.insert(parse_char(&label)?, value);
    }
    let reference = characteristics::enumerate(3, ParityFilter::Even)
        .into_iter()
        .next()
        .expect("genus 3 has even characteristics");
    Fingerprint::new(reference, quotients).map_err(pyerr)
}

/// Fingerprint (36 normalized fourth-power quotients) directly from theta
/// constants at `tau`.
#[pyfunction]
#[pyo3(signature = (tau, tol = 1e-12))]
fn fingerprint_from_tau(
    tau: &PyPeriodMatrix,
    tol: f64,
) -> PyResult<BTreeMap<String, Complex64>> {
    theta::theta4_map(&tau.inner, tol)
        .map(|fp| fingerprint_to_dict(&fp))
        .map_err(pyerr)
}

/// Fingerprint rebuilt from the 28 labeled bitangent lines alone.
#[pyfunction]
fn fingerprint_from_bitangents(
    lines: Vec<(String, Vec<Complex64>)>,
) -> PyResult<BTreeMap<String, Complex64>> {
    let set = lines_from_pairs(lines)?;
    weber::fingerprint_from_bitangents(&set)
        .map(|fp| fingerprint_to_dict(&fp))
        .map_err(pyerr)
}

/// Compare two fingerprints: returns ("SAME" | "DIFFERENT", max_deviation).
#[pyfunction]
#[pyo3(signature = (a, b, compare_tol = 1e-6))]
fn compare_fingerprints(
    a: BTreeMap<String, Complex64>,
    b: BTreeMap<String, Complex64>,
    compare_tol: f64,
) -> PyResult<(String, f64)> {
    let fa = fingerprint_from_dict(a)?;
    let fb = fingerprint_from_dict(b)?;
    let report = weber::compare_curves(&fa, &fb, compare_tol).map_err(pyerr)?;
    let verdict = match report.verdict {
        Verdict::Same => "SAME",
        Verdict::Different => "DIFFERENT",
    };
    Ok((verdict.to_string(), report.max_deviation))
}

/// All characteristics of the genus, optionally filtered by parity
/// ("even" | "odd" | "all").
#[pyfunction]
#[pyo3(signature = (genus = 3, parity = "all"))]
fn characteristics_list(genus: usize, parity: &str) -> PyResult<Vec<String>> {
    let filter = match parity {
        "even" => ParityFilter::Even,
        "odd" => ParityFilter::Odd,
        "all" => ParityFilter::All,
        other => {
            return Err(PyValueError::new_err(format!(
                "parity must be even/odd/all, got {other:?}"
            )))
        }
    };
    Ok(characteristics::enumerate(genus, filter)
        .iter()
        .map(|m| m.to_string())
        .collect())
}

/// Azygeticity of a triple of characteristics.
#[pyfunction]
fn is_azygetic(a: &str, b: &str, c: &str) -> PyResult<bool> {
    characteristics::is_azygetic_triple(&parse_char(a)?, &parse_char(b)?, &parse_char(c)?)
        .map_err(pyerr)
}

/// The deterministic Aronhold set for an ordered pair of distinct even
/// characteristics: 7 members; the first three sum to m2, all sum to m1.
#[pyfunction]
fn aronhold_find(m1: &str, m2: &str) -> PyResult<Vec<String>> {
    characteristics::aronhold_for_pair(&parse_char(m1)?, &parse_char(m2)?)
        .map(|s| s.members().iter().map(|m| m.to_string()).collect())
        .map_err(pyerr)
}

/// Max relative reconstruction residual over `trials` random period
/// matrices and even pairs (deterministic in the seed).
#[pyfunction]
#[pyo3(signature = (trials = 5, seed = 1, tol = 1e-12))]
fn weber_max_residual(trials: usize, seed: u64, tol: f64) -> PyResult<f64> {
    use quartic_theta::weber::{weber_lhs, weber_rhs, WeberInstance};
    use rand::{Rng, SeedableRng};
    let evens = characteristics::enumerate(3, ParityFilter::Even);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..trials {
        let rho = rng.random_range(0.05..=0.3);
        let tau_seed: u64 = rng.random();
        let point = quartic_theta::siegel::random_tau(tau_seed, 3, rho);
        let i = rng.random_range(0..evens.len());
        let mut j = rng.random_range(0..evens.len());
        while j == i {
            j = rng.random_range(0..evens.len());
        }
        let lines = bitangents::extract_bitangents(&point, tol).map_err(pyerr)?;
        let lhs = weber_lhs(&evens[i], &evens[j], &point, tol).map_err(pyerr)?;
        let rhs = WeberInstance::new(&lines, &evens[i], &evens[j])
            .and_then(|inst| weber_rhs(&inst))
            .map_err(pyerr)?;
        worst = worst.max((lhs - rhs).norm() / lhs.norm());
    }
    Ok(worst)
}

#[pymodule]
fn quartic_theta_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPeriodMatrix>()?;
    m.add_function(wrap_pyfunction!(random_tau, m)?)?;
    m.add_function(wrap_pyfunction!(theta_value, m)?)?;
    m.add_function(wrap_pyfunction!(theta_with_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(grad_theta, m)?)?;
    m.add_function(wrap_pyfunction!(extract_bitangents, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint_from_tau, m)?)?;
    m.add_function(wrap_pyfunction!(fingerprint_from_bitangents, m)?)?;
    m.add_function(wrap_pyfunction!(compare_fingerprints, m)?)?;
    m.add_function(wrap_pyfunction!(characteristics_list, m)?)?;
    m.add_function(wrap_pyfunction!(is_azygetic, m)?)?;
    m.add_function(wrap_pyfunction!(aronhold_find, m)?)?;
    m.add_function(wrap_pyfunction!(weber_max_residual, m)?)?;
    Ok(())
}
