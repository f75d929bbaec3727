//! Reconstruction of the fourth-power theta fingerprint from bitangents.
//!
//! For an ordered pair of distinct even characteristics `(m1, m2)` there is
//! an Aronhold set whose first three members sum to `m2` and whose total
//! sum is `m1`. Writing `b_i` for the coefficient vector of the bitangent
//! labeled by member `n_i` and `b_ij` for the one labeled `m1 + n_i + n_j`,
//! the quotient of fourth powers of theta constants is a ratio of products
//! of eight 3x3 determinants in those six vectors:
//!
//! ```text
//! (theta_m1 / theta_m2)^4 = e(m1 + m2) *
//!     D[b1,b2,b3] D[b1,b12,b13] D[b12,b2,b23] D[b13,b23,b3]
//!   / (D[b23,b13,b12] D[b23,b3,b2] D[b3,b13,b1] D[b2,b1,b12])
//! ```
//!
//! Every vector appears exactly twice upstairs and twice downstairs, so the
//! value is independent of the per-line scales; a global linear
//! substitution contributes `det^4 / det^4 = 1`. The full fingerprint (all
//! 36 quotients against a fixed reference characteristic) is therefore
//! computable from the 28 lines alone, and two quartics are isomorphic
//! exactly when their fingerprints agree.

use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bitangents::BitangentSet;
use crate::characteristics::{
    aronhold_for_pair, aronhold_sets_for_pair, enumerate, AronholdSet, Characteristic,
    ParityFilter,
};
use crate::error::{Error, Result};
use crate::siegel::SiegelPoint;
use crate::theta;

/// Relative threshold below which a denominator determinant counts as
/// degenerate (measured against the Hadamard bound of its rows).
const DENOMINATOR_GUARD: f64 = 1e-10;

/// Determinant of the 3x3 matrix with rows `r0, r1, r2`.
pub fn det3(r0: &[Complex64], r1: &[Complex64], r2: &[Complex64]) -> Complex64 {
    debug_assert!(r0.len() == 3 && r1.len() == 3 && r2.len() == 3);
    r0[0] * (r1[1] * r2[2] - r1[2] * r2[1]) - r0[1] * (r1[0] * r2[2] - r1[2] * r2[0])
        + r0[2] * (r1[0] * r2[1] - r1[1] * r2[0])
}

fn row_norm(r: &[Complex64]) -> f64 {
    r.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

// ---------------------------------------------------------------------------
// Fingerprints
// ---------------------------------------------------------------------------

/// The theta-fourth-power fingerprint of a curve: for every even
/// characteristic `m`, the quotient `(theta_m / theta_ref)^4`. Stored
/// normalized (the reference quotient is exactly 1), so it is a projective
/// invariant: two fingerprints agree exactly when the curves do.
#[derive(Debug, Clone, PartialEq)]
pub struct Fingerprint {
    reference: Characteristic,
    quotients: BTreeMap<Characteristic, Complex64>,
}

impl Fingerprint {
    /// Validate and normalize: keys must be exactly the 36 even genus-3
    /// characteristics, the reference among them with a nonzero finite
    /// quotient; all quotients are divided by the reference quotient.
    pub fn new(
        reference: Characteristic,
        quotients: BTreeMap<Characteristic, Complex64>,
    ) -> Result<Self> {
        if !reference.is_even() {
            return Err(Error::NotEven(reference.to_string()));
        }
        let evens = enumerate(3, ParityFilter::Even);
        if quotients.len() != evens.len()
            || !evens.iter().all(|m| quotients.contains_key(m))
        {
            return Err(Error::InvalidInput(
                "fingerprint must carry exactly the 36 even characteristics".into(),
            ));
        }
        let q_ref = quotients[&reference];
        if !q_ref.is_finite() || q_ref.norm() == 0.0 {
            return Err(Error::InvalidInput(
                "reference quotient must be finite and nonzero".into(),
            ));
        }
        if quotients.values().any(|q| !q.is_finite()) {
            return Err(Error::InvalidInput("non-finite quotient".into()));
        }
        let normalized = quotients
            .into_iter()
            .map(|(m, q)| (m, q / q_ref))
            .collect();
        Ok(Self {
            reference,
            quotients: normalized,
        })
    }

    pub fn reference(&self) -> &Characteristic {
        &self.reference
    }

    pub fn quotients(&self) -> &BTreeMap<Characteristic, Complex64> {
        &self.quotients
    }

    /// Maximum relative deviation between two fingerprints over the 36
    /// quotients: `|q_a - q_b| / max(|q_a|, |q_b|)` (0 where both vanish).
    pub fn deviation_from(&self, other: &Fingerprint) -> Result<f64> {
        if self.reference != other.reference {
            return Err(Error::ReferenceMismatch(
                self.reference.to_string(),
                other.reference.to_string(),
            ));
        }
        let mut worst = 0.0f64;
        for (m, qa) in &self.quotients {
            let qb = other.quotients[m];
            let denom = qa.norm().max(qb.norm());
            if denom > 0.0 {
                worst = worst.max((qa - qb).norm() / denom);
            }
        }
        Ok(worst)
    }

    /// Serialize to the fingerprint JSON wire format.
    pub fn to_json(&self) -> String {
        let wire = FingerprintFile::from(self);
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    /// Parse and validate the fingerprint JSON wire format.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: FingerprintFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        wire.try_into()
    }
}

/// Wire format: `{"reference": "m'|m''", "quotients": [{"char": "m'|m''",
/// "value": [re, im]}, ...]}` in lexicographic characteristic order.
#[derive(Debug, Serialize, Deserialize)]
pub struct FingerprintFile {
    pub reference: String,
    pub quotients: Vec<QuotientEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct QuotientEntry {
    #[serde(rename = "char")]
    pub character: String,
    pub value: [f64; 2],
}

impl From<&Fingerprint> for FingerprintFile {
    fn from(fp: &Fingerprint) -> Self {
        Self {
            reference: fp.reference.to_string(),
            quotients: fp
                .quotients
                .iter()
                .map(|(m, q)| QuotientEntry {
                    character: m.to_string(),
                    value: [q.re, q.im],
                })
                .collect(),
        }
    }
}

impl TryFrom<FingerprintFile> for Fingerprint {
    type Error = Error;

    fn try_from(wire: FingerprintFile) -> Result<Self> {
        let reference: Characteristic = wire.reference.parse()?;
        let mut quotients = BTreeMap::new();
        for entry in wire.quotients {
            let m: Characteristic = entry.character.parse()?;
            let q = Complex64::new(entry.value[0], entry.value[1]);
            if quotients.insert(m, q).is_some() {
                return Err(Error::RepeatedCharacteristic);
            }
        }
        Fingerprint::new(reference, quotients)
    }
}

// ---------------------------------------------------------------------------
// The reconstruction formula
// ---------------------------------------------------------------------------

/// A fully resolved instance of the reconstruction formula: the pair
/// `(m1, m2)`, the constrained Aronhold set, and the six bitangent
/// coefficient vectors the determinants consume.
#[derive(Debug, Clone)]
pub struct WeberInstance {
    m1: Characteristic,
    m2: Characteristic,
    aronhold: AronholdSet,
    b1: [Complex64; 3],
    b2: [Complex64; 3],
    b3: [Complex64; 3],
    b12: [Complex64; 3],
    b13: [Complex64; 3],
    b23: [Complex64; 3],
}

impl WeberInstance {
    /// Resolve the deterministic Aronhold set for `(m1, m2)` against a
    /// bitangent set.
    pub fn new(lines: &BitangentSet, m1: &Characteristic, m2: &Characteristic) -> Result<Self> {
        let aronhold = aronhold_for_pair(m1, m2)?;
        Self::from_aronhold(lines, aronhold)
    }

    /// Use an explicit Aronhold set; the pair is read off as
    /// `m1 = sum of all seven`, `m2 = sum of the first three`.
    pub fn from_aronhold(lines: &BitangentSet, aronhold: AronholdSet) -> Result<Self> {
        let m1 = aronhold.sum().clone();
        let m2 = aronhold.members()[0]
            .add(&aronhold.members()[1])?
            .add(&aronhold.members()[2])?;
        let labels = aronhold.complete_labels();
        let line = |n: &Characteristic| -> Result<[Complex64; 3]> {
            lines
                .get(n)
                .map(|l| *l.coords())
                .ok_or(Error::IncompleteBitangentSet)
        };
        Ok(Self {
            m1,
            m2,
            b1: line(&aronhold.members()[0])?,
            b2: line(&aronhold.members()[1])?,
            b3: line(&aronhold.members()[2])?,
            b12: line(&labels[&(1, 2)])?,
            b13: line(&labels[&(1, 3)])?,
            b23: line(&labels[&(2, 3)])?,
            aronhold,
        })
    }

    pub fn pair(&self) -> (&Characteristic, &Characteristic) {
        (&self.m1, &self.m2)
    }

    pub fn aronhold(&self) -> &AronholdSet {
        &self.aronhold
    }
}

/// Evaluate the right-hand side of the reconstruction formula for a
/// resolved instance. Denominator determinants are guarded against
/// degeneracy relative to their row norms.
pub fn weber_rhs(instance: &WeberInstance) -> Result<Complex64> {
    let WeberInstance {
        m1,
        m2,
        b1,
        b2,
        b3,
        b12,
        b13,
        b23,
        ..
    } = instance;

    let guarded = |label: &str, r0: &[Complex64; 3], r1: &[Complex64; 3], r2: &[Complex64; 3]| -> Result<Complex64> {
        let det = det3(r0, r1, r2);
        let scale = row_norm(r0) * row_norm(r1) * row_norm(r2);
        if det.norm() < DENOMINATOR_GUARD * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::DegenerateDenominator {
                which: label.to_string(),
                m1: m1.to_string(),
                m2: m2.to_string(),
            });
        }
        Ok(det)
    };

    let num = det3(b1, b2, b3) * det3(b1, b12, b13) * det3(b12, b2, b23) * det3(b13, b23, b3);
    let den = guarded("D[b23,b13,b12]", b23, b13, b12)?
        * guarded("D[b23,b3,b2]", b23, b3, b2)?
        * guarded("D[b3,b13,b1]", b3, b13, b1)?
        * guarded("D[b2,b1,b12]", b2, b1, b12)?;

    let parity = f64::from(m1.add(m2)?.parity());
    Ok(parity * num / den)
}

/// Left-hand side `(theta_m1 / theta_m2)^4` straight from theta constants,
/// radius capped at `cap`.
pub fn weber_lhs_with_cap(
    m1: &Characteristic,
    m2: &Characteristic,
    point: &SiegelPoint,
    tol: f64,
    cap: u32,
) -> Result<Complex64> {
    for m in [m1, m2] {
        if !m.is_even() {
            return Err(Error::NotEven(m.to_string()));
        }
    }
    if m1 == m2 {
        return Err(Error::RepeatedCharacteristic);
    }
    let t1 = theta::theta_with_cap(m1, point, &zeros(point.genus()), tol, cap)?;
    let t2 = theta::theta_with_cap(m2, point, &zeros(point.genus()), tol, cap)?;
    let ratio = t1.value / t2.value;
    if !ratio.is_finite() {
        return Err(Error::DegenerateDenominator {
            which: "theta_m2".into(),
            m1: m1.to_string(),
            m2: m2.to_string(),
        });
    }
    Ok(ratio.powi(4))
}

/// Left-hand side at the default radius cap.
pub fn weber_lhs(
    m1: &Characteristic,
    m2: &Characteristic,
    point: &SiegelPoint,
    tol: f64,
) -> Result<Complex64> {
    weber_lhs_with_cap(m1, m2, point, tol, theta::DEFAULT_RADIUS_CAP)
}

fn zeros(g: usize) -> Vec<Complex64> {
    vec![Complex64::new(0.0, 0.0); g]
}

/// Reconstruct the full fingerprint from the 28 bitangent lines alone:
/// quotient for each even `m` against the reference `[000|000]` via the
/// determinant formula.
pub fn fingerprint_from_bitangents(lines: &BitangentSet) -> Result<Fingerprint> {
    let reference = Characteristic::zero(3);
    let mut quotients = BTreeMap::new();
    for m in enumerate(3, ParityFilter::Even) {
        let q = if m == reference {
            Complex64::new(1.0, 0.0)
        } else {
            let instance = WeberInstance::new(lines, &m, &reference)?;
            weber_rhs(&instance)?
        };
        quotients.insert(m, q);
    }
    Fingerprint::new(reference, quotients)
}

/// Spread of the reconstructed quotient across up to `count` different
/// admissible Aronhold sets for the same pair: maximum relative deviation
/// from the first. A large spread flags an inconsistent bitangent set.
pub fn aronhold_choice_consistency(
    lines: &BitangentSet,
    m1: &Characteristic,
    m2: &Characteristic,
    count: usize,
) -> Result<f64> {
    let sets = aronhold_sets_for_pair(m1, m2, count.max(1))?;
    let mut first: Option<Complex64> = None;
    let mut worst = 0.0f64;
    for set in sets {
        let q = weber_rhs(&WeberInstance::from_aronhold(lines, set)?)?;
        match first {
            None => first = Some(q),
            Some(q0) => {
                worst = worst.max((q - q0).norm() / q0.norm().max(q.norm()));
            }
        }
    }
    Ok(worst)
}

// ---------------------------------------------------------------------------
// The decision procedure
// ---------------------------------------------------------------------------

/// Outcome of comparing two fingerprints.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Same,
    Different,
}

/// Comparison report: per-characteristic relative deviations and the
/// verdict at the given tolerance.
#[derive(Debug, Clone)]
pub struct ComparisonReport {
    pub verdict: Verdict,
    pub max_deviation: f64,
    pub deviations: BTreeMap<Characteristic, f64>,
    pub tol: f64,
}

/// Decide whether two fingerprints describe the same curve: the verdict is
/// [`Verdict::Same`] exactly when the maximum relative quotient deviation
/// is at most `tol`.
pub fn compare_curves(a: &Fingerprint, b: &Fingerprint, tol: f64) -> Result<ComparisonReport> {
    if a.reference() != b.reference() {
        return Err(Error::ReferenceMismatch(
            a.reference().to_string(),
            b.reference().to_string(),
        ));
    }
    let mut deviations = BTreeMap::new();
    let mut max_deviation = 0.0f64;
    for (m, qa) in a.quotients() {
        let qb = b.quotients()[m];
        let denom = qa.norm().max(qb.norm());
        let d = if denom > 0.0 {
            (qa - qb).norm() / denom
        } else {
            0.0
        };
        deviations.insert(m.clone(), d);
        max_deviation = max_deviation.max(d);
    }
    Ok(ComparisonReport {
        verdict: if max_deviation <= tol {
            Verdict::Same
        } else {
            Verdict::Different
        },
        max_deviation,
        deviations,
        tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bitangents::{extract_bitangents, BitangentLine, BitangentSet};
    use crate::siegel::random_tau;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(s: &str) -> Characteristic {
        s.parse().unwrap()
    }

    fn random_unit(rng: &mut ChaCha8Rng) -> Complex64 {
        // magnitude in [1e-3, 1e3], arbitrary phase
        let mag = 10f64.powf(rng.random_range(-3.0..3.0));
        let arg = rng.random_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(mag, arg)
    }

    fn rescaled_set(set: &BitangentSet, seed: u64) -> BitangentSet {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let lines = set
            .lines()
            .iter()
            .map(|l| l.rescaled(random_unit(&mut rng)).unwrap())
            .collect();
        BitangentSet::from_lines(lines).unwrap()
    }

    #[test]
    fn det3_algebra() {
        let e0 = [
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let e1 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 0.0),
        ];
        let e2 = [
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(1.0, 0.0),
        ];
        assert_eq!(det3(&e0, &e1, &e2), Complex64::new(1.0, 0.0));
        assert_eq!(det3(&e1, &e0, &e2), Complex64::new(-1.0, 0.0));
        let s = Complex64::new(2.0, -3.0);
        let scaled: Vec<Complex64> = e0.iter().map(|&x| x * s).collect();
        assert_eq!(det3(&scaled, &e1, &e2), s);
    }

    #[test]
    fn reconstruction_matches_theta_quotients() {
        let point = random_tau(201, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        for (m1, m2) in [
            ("000|000", "110|001"),
            ("011|000", "000|000"),
            ("111|110", "001|010"),
        ] {
            let m1 = c(m1);
            let m2 = c(m2);
            let lhs = weber_lhs(&m1, &m2, &point, 1e-12).unwrap();
            let rhs = weber_rhs(&WeberInstance::new(&lines, &m1, &m2).unwrap()).unwrap();
            let rel = (lhs - rhs).norm() / lhs.norm();
            assert!(rel < 1e-8, "pair ({m1}, {m2}): relative error {rel}");
        }
    }

    #[test]
    fn rhs_ignores_per_line_scales() {
        let point = random_tau(203, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        let m1 = c("000|000");
        let m2 = c("011|011");
        let base = weber_rhs(&WeberInstance::new(&lines, &m1, &m2).unwrap()).unwrap();
        for seed in [1u64, 2, 3] {
            let scaled = rescaled_set(&lines, seed);
            let q = weber_rhs(&WeberInstance::new(&scaled, &m1, &m2).unwrap()).unwrap();
            assert!((q - base).norm() < 1e-9 * base.norm());
        }
    }

    #[test]
    fn rhs_ignores_global_substitution() {
        let point = random_tau(205, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        let a = [
            [
                Complex64::new(1.2, 0.3),
                Complex64::new(-0.4, 0.1),
                Complex64::new(0.2, -0.6),
            ],
            [
                Complex64::new(0.5, -0.2),
                Complex64::new(0.9, 0.4),
                Complex64::new(-0.3, 0.7),
            ],
            [
                Complex64::new(-0.1, 0.8),
                Complex64::new(0.3, 0.2),
                Complex64::new(1.1, -0.5),
            ],
        ];
        let apply = |v: &[Complex64; 3]| -> [Complex64; 3] {
            std::array::from_fn(|i| a[i][0] * v[0] + a[i][1] * v[1] + a[i][2] * v[2])
        };
        let moved = BitangentSet::from_lines(
            lines
                .lines()
                .iter()
                .map(|l| BitangentLine::new(l.character().clone(), apply(l.coords())).unwrap())
                .collect(),
        )
        .unwrap();
        let m1 = c("101|000");
        let m2 = c("000|000");
        let q0 = weber_rhs(&WeberInstance::new(&lines, &m1, &m2).unwrap()).unwrap();
        let q1 = weber_rhs(&WeberInstance::new(&moved, &m1, &m2).unwrap()).unwrap();
        assert!((q0 - q1).norm() < 1e-9 * q0.norm());
    }

    #[test]
    fn consistent_across_aronhold_choices() {
        let point = random_tau(207, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        let spread =
            aronhold_choice_consistency(&lines, &c("000|000"), &c("110|001"), 4).unwrap();
        assert!(spread < 1e-8, "spread {spread}");
    }

    #[test]
    fn fingerprint_matches_direct_map() {
        let point = random_tau(209, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        let from_lines = fingerprint_from_bitangents(&lines).unwrap();
        let direct = theta::theta4_map(&point, 1e-12).unwrap();
        let dev = from_lines.deviation_from(&direct).unwrap();
        assert!(dev < 1e-7, "deviation {dev}");
    }

    #[test]
    fn compare_verdicts() {
        let p1 = random_tau(211, 3, 0.3);
        let p2 = random_tau(212, 3, 0.3);
        let f1 = theta::theta4_map(&p1, 1e-12).unwrap();
        let f1_again =
            fingerprint_from_bitangents(&rescaled_set(&extract_bitangents(&p1, 1e-12).unwrap(), 9))
                .unwrap();
        let f2 = theta::theta4_map(&p2, 1e-12).unwrap();
        let same = compare_curves(&f1, &f1_again, 1e-6).unwrap();
        assert_eq!(same.verdict, Verdict::Same);
        assert!(same.max_deviation < 1e-6);
        let diff = compare_curves(&f1, &f2, 1e-6).unwrap();
        assert_eq!(diff.verdict, Verdict::Different);
        assert!(diff.max_deviation > 1e-3);
    }

    #[test]
    fn fingerprint_json_round_trip() {
        let point = random_tau(213, 3, 0.3);
        let fp = theta::theta4_map(&point, 1e-12).unwrap();
        let text = fp.to_json();
        let back = Fingerprint::from_json(&text).unwrap();
        assert!(fp.deviation_from(&back).unwrap() < 1e-12);
        assert!(Fingerprint::from_json("{}").is_err());
        // Odd reference refused.
        let mut wire: FingerprintFile = serde_json::from_str(&text).unwrap();
        wire.reference = "001|001".into();
        assert!(Fingerprint::from_json(&serde_json::to_string(&wire).unwrap()).is_err());
    }

    /// Pairwise reconstructed quotients compose: q(m1,m2) q(m2,m3) = q(m1,m3).
    #[test]
    fn pairwise_quotients_satisfy_cocycle() {
        let point = random_tau(29, 3, 0.3);
        let lines = extract_bitangents(&point, 1e-12).unwrap();
        let evens = enumerate(3, ParityFilter::Even);
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let q = |a: &Characteristic, b: &Characteristic| -> Complex64 {
            weber_rhs(&WeberInstance::new(&lines, a, b).unwrap()).unwrap()
        };
        for _ in 0..20 {
            let mut idx = [0usize; 3];
            loop {
                for slot in &mut idx {
                    *slot = rng.random_range(0..36);
                }
                if idx[0] != idx[1] && idx[0] != idx[2] && idx[1] != idx[2] {
                    break;
                }
            }
            let (m1, m2, m3) = (&evens[idx[0]], &evens[idx[1]], &evens[idx[2]]);
            let composed = q(m1, m2) * q(m2, m3) / q(m1, m3);
            let defect = (composed - Complex64::new(1.0, 0.0)).norm();
            assert!(defect < 1e-7, "cocycle defect {defect:.3e} for ({m1}, {m2}, {m3})");
        }
    }
}
