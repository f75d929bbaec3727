//! Bitangent lines of a smooth plane quartic from its period matrix.
//!
//! Each odd characteristic `n` labels one of the 28 bitangents. The line's
//! coefficient vector is the gradient of the theta function at the
//! corresponding two-torsion point — equivalently, the gradient at `z = 0`
//! of the odd theta function itself. Coefficients are meaningful only up to
//! a nonzero complex scale (they are points of the dual projective plane),
//! so comparisons go through [`projective_distance`].

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::characteristics::{enumerate, Characteristic, ParityFilter};
use crate::error::{Error, Result};
use crate::siegel::SiegelPoint;
use crate::theta::{self, DEFAULT_RADIUS_CAP};

/// One bitangent line: an odd characteristic label and the coefficient
/// vector of the line in the dual plane (defined up to complex scale).
#[derive(Debug, Clone, PartialEq)]
pub struct BitangentLine {
    character: Characteristic,
    coords: [Complex64; 3],
}

impl BitangentLine {
    /// Validate: genus-3 odd characteristic, finite nonzero coordinates.
    pub fn new(character: Characteristic, coords: [Complex64; 3]) -> Result<Self> {
        if character.genus() != 3 {
            return Err(Error::UnsupportedGenus {
                expected: 3,
                got: character.genus(),
            });
        }
        if !character.is_odd() {
            return Err(Error::NotOdd(character.to_string()));
        }
        if coords.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite bitangent coordinate".into()));
        }
        if coords.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::ZeroGradient(character.to_string()));
        }
        Ok(Self { character, coords })
    }

    pub fn character(&self) -> &Characteristic {
        &self.character
    }

    pub fn coords(&self) -> &[Complex64; 3] {
        &self.coords
    }

    /// The same line with every coordinate multiplied by `scale`.
    pub fn rescaled(&self, scale: Complex64) -> Result<Self> {
        Self::new(self.character.clone(), self.coords.map(|c| c * scale))
    }
}

/// The full set of 28 bitangents, stored in lexicographic characteristic
/// order and guaranteed to cover each odd characteristic exactly once.
#[derive(Debug, Clone, PartialEq)]
pub struct BitangentSet {
    lines: Vec<BitangentLine>,
}

impl BitangentSet {
    /// Validate completeness: exactly the 28 odd genus-3 characteristics,
    /// each once. Lines are sorted by characteristic.
    pub fn from_lines(mut lines: Vec<BitangentLine>) -> Result<Self> {
        lines.sort_by(|a, b| a.character.cmp(&b.character));
        let expected = enumerate(3, ParityFilter::Odd);
        if lines.len() != expected.len()
            || lines
                .iter()
                .zip(&expected)
                .any(|(line, want)| line.character != *want)
        {
            return Err(Error::IncompleteBitangentSet);
        }
        Ok(Self { lines })
    }

    /// Lines in lexicographic characteristic order.
    pub fn lines(&self) -> &[BitangentLine] {
        &self.lines
    }

    /// Look up a line by its odd characteristic.
    pub fn get(&self, n: &Characteristic) -> Option<&BitangentLine> {
        self.lines
            .binary_search_by(|line| line.character.cmp(n))
            .ok()
            .map(|i| &self.lines[i])
    }

    /// Serialize to the bitangent JSON wire format.
    pub fn to_json(&self) -> String {
        let wire = BitangentSetFile::from(self);
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    /// Parse and validate the bitangent JSON wire format.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: BitangentSetFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        wire.try_into()
    }
}

/// Wire format: `{"genus": 3, "bitangents": [{"char": "m'|m''",
/// "coords": [[re, im], [re, im], [re, im]]}, ...]}` in lexicographic
/// characteristic order.
#[derive(Debug, Serialize, Deserialize)]
pub struct BitangentSetFile {
    pub genus: usize,
    pub bitangents: Vec<BitangentLineFile>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct BitangentLineFile {
    #[serde(rename = "char")]
    pub character: String,
    pub coords: Vec<[f64; 2]>,
}

impl From<&BitangentSet> for BitangentSetFile {
    fn from(set: &BitangentSet) -> Self {
        Self {
            genus: 3,
            bitangents: set
                .lines
                .iter()
                .map(|line| BitangentLineFile {
                    character: line.character.to_string(),
                    coords: line.coords.iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        }
    }
}

impl TryFrom<BitangentSetFile> for BitangentSet {
    type Error = Error;

    fn try_from(wire: BitangentSetFile) -> Result<Self> {
        if wire.genus != 3 {
            return Err(Error::UnsupportedGenus {
                expected: 3,
                got: wire.genus,
            });
        }
        let mut lines = Vec::with_capacity(wire.bitangents.len());
        for entry in wire.bitangents {
            let character: Characteristic = entry.character.parse()?;
            if entry.coords.len() != 3 {
                return Err(Error::InvalidInput(format!(
                    "bitangent {} must have 3 coordinates",
                    character
                )));
            }
            let coords = [
                Complex64::new(entry.coords[0][0], entry.coords[0][1]),
                Complex64::new(entry.coords[1][0], entry.coords[1][1]),
                Complex64::new(entry.coords[2][0], entry.coords[2][1]),
            ];
            lines.push(BitangentLine::new(character, coords)?);
        }
        BitangentSet::from_lines(lines)
    }
}

/// The two-torsion point `n'/2 + tau n''/2` attached to a characteristic.
pub fn two_torsion_point(n: &Characteristic, point: &SiegelPoint) -> Result<Vec<Complex64>> {
    let g = point.genus();
    if n.genus() != g {
        return Err(Error::GenusMismatch(n.genus(), g));
    }
    let tau = point.tau();
    let mut out = vec![Complex64::new(0.0, 0.0); g];
    for i in 0..g {
        out[i] = Complex64::new(f64::from(n.top()[i]) / 2.0, 0.0);
        for j in 0..g {
            out[i] += tau[(i, j)] * (f64::from(n.bottom()[j]) / 2.0);
        }
    }
    Ok(out)
}

/// Distance between two complex projective points: `||p x q|| / (||p|| ||q||)`
/// with the complex bilinear cross product. Zero exactly when the points
/// span the same complex line; symmetric; invariant under rescaling.
pub fn projective_distance(p: &[Complex64], q: &[Complex64]) -> Result<f64> {
    if p.len() != 3 || q.len() != 3 {
        return Err(Error::BadPointLength(p.len().max(q.len()), 3));
    }
    let np = p.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let nq = q.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    if np == 0.0 || nq == 0.0 {
        return Err(Error::ZeroProjectivePoint);
    }
    let cross = [
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    ];
    let nc = cross.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    Ok((nc / (np * nq)).min(1.0))
}

/// Extract the 28 bitangent lines from a period matrix: line `n` has
/// coefficient vector `grad theta_n(tau, 0)`. Refuses hyperelliptic or
/// degenerate period matrices, radius capped at `cap`.
pub fn extract_bitangents_with_cap(
    point: &SiegelPoint,
    tol: f64,
    cap: u32,
) -> Result<BitangentSet> {
    if point.genus() != 3 {
        return Err(Error::UnsupportedGenus {
            expected: 3,
            got: point.genus(),
        });
    }
    let batch = theta::batch_theta_with_cap(point, tol, cap)?;
    theta::hyperelliptic_guard(&batch.constants)?;
    let grad_scale = batch
        .gradients
        .values()
        .map(|grad| grad.vector.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt())
        .fold(0.0f64, f64::max);
    let mut lines = Vec::with_capacity(28);
    for (n, grad) in &batch.gradients {
        let norm = grad.vector.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-12 * grad_scale {
            return Err(Error::ZeroGradient(n.to_string()));
        }
        lines.push(BitangentLine::new(
            n.clone(),
            [grad.vector[0], grad.vector[1], grad.vector[2]],
        )?);
    }
    BitangentSet::from_lines(lines)
}

/// Extract the 28 bitangents at the default radius cap.
pub fn extract_bitangents(point: &SiegelPoint, tol: f64) -> Result<BitangentSet> {
    extract_bitangents_with_cap(point, tol, DEFAULT_RADIUS_CAP)
}

/// Consistency of the Gauss-map picture for one odd characteristic:
/// the gradient of the plain theta function at the two-torsion point dual
/// to `n` (top and bottom swapped) spans the same projective line as
/// `grad theta_n(tau, 0)`. Returns the projective deviation.
pub fn gauss_consistency(n: &Characteristic, point: &SiegelPoint, tol: f64) -> Result<f64> {
    if point.genus() != 3 {
        return Err(Error::UnsupportedGenus {
            expected: 3,
            got: point.genus(),
        });
    }
    if n.genus() != 3 {
        return Err(Error::GenusMismatch(n.genus(), 3));
    }
    if !n.is_odd() {
        return Err(Error::NotOdd(n.to_string()));
    }
    // Quasi-periodicity swaps the labeling: the shift that reproduces
    // theta_n is by the two-torsion point of the swapped characteristic.
    let shift = two_torsion_point(&n.swapped(), point)?;
    let at_shift = theta::grad_theta_at(&Characteristic::zero(3), point, &shift, tol)?;
    let at_zero = theta::grad_theta0(n, point, tol)?;
    projective_distance(&at_shift, &at_zero.vector)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel::random_tau;

    fn c(s: &str) -> Characteristic {
        s.parse().unwrap()
    }

    #[test]
    fn two_torsion_point_formula() {
        let point = random_tau(61, 3, 0.3);
        // n'' = 0: the point is the real vector n'/2.
        let n = c("110|000");
        let z = two_torsion_point(&n, &point).unwrap();
        assert_eq!(z[0], Complex64::new(0.5, 0.0));
        assert_eq!(z[1], Complex64::new(0.5, 0.0));
        assert_eq!(z[2], Complex64::new(0.0, 0.0));
        // n' = 0: the point is tau . n''/2 (columns of tau halved and summed).
        let n = c("000|011");
        let z = two_torsion_point(&n, &point).unwrap();
        let tau = point.tau();
        for i in 0..3 {
            let expect = (tau[(i, 1)] + tau[(i, 2)]) * 0.5;
            assert!((z[i] - expect).norm() < 1e-15);
        }
    }

    #[test]
    fn projective_distance_metric_properties() {
        let p = [
            Complex64::new(1.0, 0.2),
            Complex64::new(-0.4, 0.9),
            Complex64::new(0.3, -0.7),
        ];
        let q = [
            Complex64::new(0.2, -0.5),
            Complex64::new(1.1, 0.4),
            Complex64::new(-0.6, 0.3),
        ];
        // Same line (complex rescale) -> 0.
        let scale = Complex64::new(-2.3, 1.7);
        let ps: Vec<Complex64> = p.iter().map(|&x| x * scale).collect();
        assert!(projective_distance(&p, &ps).unwrap() < 1e-15);
        // Symmetry and scale invariance.
        let d1 = projective_distance(&p, &q).unwrap();
        let d2 = projective_distance(&q, &p).unwrap();
        assert!((d1 - d2).abs() < 1e-15);
        let qs: Vec<Complex64> = q.iter().map(|&x| x * Complex64::new(0.0, 3.0)).collect();
        assert!((projective_distance(&p, &qs).unwrap() - d1).abs() < 1e-14);
        assert!(d1 > 0.1); // generic points are far apart
        // Zero vector refused.
        let zero = [Complex64::new(0.0, 0.0); 3];
        assert!(projective_distance(&p, &zero).is_err());
    }

    #[test]
    fn extraction_covers_all_28_lines() {
        let point = random_tau(67, 3, 0.3);
        let set = extract_bitangents(&point, 1e-12).unwrap();
        assert_eq!(set.lines().len(), 28);
        let odds = enumerate(3, ParityFilter::Odd);
        for (line, n) in set.lines().iter().zip(&odds) {
            assert_eq!(line.character(), n);
            assert!(line.coords().iter().any(|c| c.norm() > 0.0));
        }
        // Lookup works.
        let n = c("001|001");
        assert!(set.get(&n).is_some());
        assert!(set.get(&c("000|000")).is_none());
    }

    #[test]
    fn extraction_refuses_hyperelliptic_tau() {
        // tau = i I_3 factors: even characteristics with two odd genus-1
        // components vanish exactly, tripping the guard.
        let tau = nalgebra::DMatrix::from_fn(3, 3, |i, j| {
            if i == j {
                Complex64::new(0.0, 1.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
        let point = SiegelPoint::new(tau).unwrap();
        assert!(matches!(
            extract_bitangents(&point, 1e-12),
            Err(Error::HyperellipticOrDegenerate(_))
        ));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let point = random_tau(71, 3, 0.3);
        let set = extract_bitangents(&point, 1e-12).unwrap();
        let text = set.to_json();
        let back = BitangentSet::from_json(&text).unwrap();
        for (a, b) in set.lines().iter().zip(back.lines()) {
            assert_eq!(a.character(), b.character());
            for j in 0..3 {
                assert!((a.coords()[j] - b.coords()[j]).norm() < 1e-12);
            }
        }
        // Dropping a line breaks completeness.
        let mut wire: BitangentSetFile = serde_json::from_str(&text).unwrap();
        wire.bitangents.pop();
        let json = serde_json::to_string(&wire).unwrap();
        assert!(matches!(
            BitangentSet::from_json(&json),
            Err(Error::IncompleteBitangentSet)
        ));
        // Duplicating a characteristic also breaks it.
        let mut wire: BitangentSetFile = serde_json::from_str(&text).unwrap();
        let first_char = wire.bitangents[0].character.clone();
        wire.bitangents[1].character = first_char;
        let json = serde_json::to_string(&wire).unwrap();
        assert!(BitangentSet::from_json(&json).is_err());
        // Wrong genus refused.
        assert!(BitangentSet::from_json("{\"genus\":2,\"bitangents\":[]}").is_err());
    }

    /// The Gauss-map consistency deviation is tiny for every odd n, and the
    /// shifted gradient agrees with an independent finite-difference
    /// gradient at the shifted point.
    #[test]
    fn gauss_map_consistency() {
        let point = random_tau(73, 3, 0.3);
        for n in enumerate(3, ParityFilter::Odd) {
            let dev = gauss_consistency(&n, &point, 1e-12).unwrap();
            assert!(dev < 1e-6, "n = {n}: deviation {dev}");
        }
        // Independent FD oracle at the shifted point for one characteristic.
        let n = c("101|110");
        let shift = two_torsion_point(&n.swapped(), &point).unwrap();
        let series = theta::grad_theta_at(&Characteristic::zero(3), &point, &shift, 1e-13).unwrap();
        let h = 1e-5;
        for j in 0..3 {
            let mut zp = shift.clone();
            let mut zm = shift.clone();
            zp[j] += Complex64::new(h, 0.0);
            zm[j] -= Complex64::new(h, 0.0);
            let fp = theta::theta(&Characteristic::zero(3), &point, &zp, 1e-15)
                .unwrap()
                .value;
            let fm = theta::theta(&Characteristic::zero(3), &point, &zm, 1e-15)
                .unwrap()
                .value;
            let fd = (fp - fm) / (2.0 * h);
            let scale = series.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            assert!((fd - series[j]).norm() < 1e-6 * scale.max(1e-12));
        }
        // Even characteristic analog is rejected.
        assert!(gauss_consistency(&c("000|000"), &point, 1e-12).is_err());
    }
}
