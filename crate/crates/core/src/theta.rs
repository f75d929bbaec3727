//! Theta constants and gradients by certified truncated lattice sums.
//!
//! The series convention throughout: with `exp(x) := e^{pi i x}`,
//!
//! ```text
//! theta_m(tau, z) = sum_{p in Z^g} exp[ (p + m'/2) . tau (p + m'/2)
//!                                       + 2 (p + m'/2) . (z + m''/2) ]
//! ```
//!
//! Truncation keeps lattice points with `||p + m'/2||_inf <= R` and bounds
//! the discarded tail by shells: the number of points at sup-distance `k`
//! times the largest possible term there, using the smallest eigenvalue of
//! `Im tau`. `R` grows until the bound drops below the requested tolerance
//! or hits a cap, where evaluation refuses instead of returning garbage.
//!
//! For all-characteristics work (`batch_theta`) a single pass over the
//! doubled lattice `r = 2p + m'` serves every characteristic at once: the
//! weight `exp[(r . tau r)/4]` is computed once per point and scattered to
//! the characteristics of the matching parity class with the fourth-root
//! phase `i^{r . m''}`.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::characteristics::{enumerate, Characteristic, ParityFilter};
use crate::error::{Error, Result};
use crate::siegel::SiegelPoint;
use crate::weber::Fingerprint;

/// Default evaluation tolerance.
pub const DEFAULT_TOL: f64 = 1e-12;
/// Default cap on the truncation radius.
pub const DEFAULT_RADIUS_CAP: u32 = 64;
/// Even theta constants whose min/max ratio drops below this mark the
/// period matrix as hyperelliptic or degenerate.
pub const HYPERELLIPTIC_GUARD: f64 = 1e-8;

/// A theta value together with its truncation certificate.
#[derive(Debug, Clone)]
pub struct ThetaValue {
    pub value: Complex64,
    /// Rigorous bound on the discarded tail.
    pub tail_bound: f64,
    /// Truncation radius actually used.
    pub radius: u32,
}

/// Gradient of a theta function at `z = 0` for an odd characteristic.
#[derive(Debug, Clone)]
pub struct ThetaGradient {
    pub character: Characteristic,
    pub vector: Vec<Complex64>,
    pub tail_bound: f64,
    pub radius: u32,
}

/// One-pass evaluation of every characteristic at `z = 0`: values for the
/// even ones (odd values vanish identically) and gradients for the odd ones
/// (even gradients vanish identically).
#[derive(Debug, Clone)]
pub struct BatchTheta {
    pub constants: BTreeMap<Characteristic, ThetaValue>,
    pub gradients: BTreeMap<Characteristic, ThetaGradient>,
    pub radius: u32,
}

// ---------------------------------------------------------------------------
// Truncation control
// ---------------------------------------------------------------------------

/// Upper bound for the tail of the series truncated at sup-radius `r`,
/// for a derivative of the given order.
///
/// Shell `k` holds at most `(2k+3)^g - (2k-1)^g` lattice points `q` with
/// `k <= ||q||_inf < k+1`; each term there is at most
/// `(2 pi sqrt(g) (k+1))^order * exp(-pi lambda k^2 + 2 pi sqrt(g)(k+1) y)`
/// with `lambda = lambda_min(Im tau)` and `y = ||Im z||_2`.
fn tail_estimate(genus: usize, lambda_min: f64, im_z_norm: f64, order: u32, r: u32) -> f64 {
    let g = genus as i32;
    let sg = (genus as f64).sqrt();
    let peak = sg * im_z_norm / lambda_min;
    let mut total = 0.0f64;
    let mut k = f64::from(r);
    let mut steps = 0u32;
    loop {
        let count = (2.0 * k + 3.0).powi(g) - (2.0 * k - 1.0).max(0.0).powi(g);
        let deriv = (2.0 * PI * sg * (k + 1.0)).powi(order as i32).max(1.0);
        let term =
            count * deriv * (-PI * lambda_min * k * k + 2.0 * PI * sg * (k + 1.0) * im_z_norm).exp();
        total += term;
        k += 1.0;
        steps += 1;
        if (k > peak + 2.0 && term <= total * 1e-18) || term == 0.0 || steps > 10_000 {
            break;
        }
    }
    total
}

/// Smallest radius whose tail bound meets `tol`, or a refusal if the cap
/// is not enough.
fn choose_radius(
    genus: usize,
    lambda_min: f64,
    im_z_norm: f64,
    order: u32,
    tol: f64,
    cap: u32,
) -> Result<(u32, f64)> {
    for r in 1..=cap {
        let bound = tail_estimate(genus, lambda_min, im_z_norm, order, r);
        if bound <= tol {
            return Ok((r, bound));
        }
    }
    Err(Error::RadiusOverflow {
        cap,
        lambda_min,
    })
}

// ---------------------------------------------------------------------------
// Single-characteristic evaluation (integer characteristics, arbitrary z)
// ---------------------------------------------------------------------------

struct RawEval {
    value: Complex64,
    grad: Vec<Complex64>,
    hess: DMatrix<Complex64>,
    radius: u32,
    /// Tail bounds for derivative orders 0, 1, 2.
    tails: [f64; 3],
}

/// Direct lattice sum for an integer characteristic pair `(top, bottom)`
/// (entries need not be 0/1), with derivatives in `z` up to `order`.
fn eval_raw(
    top: &[i64],
    bottom: &[i64],
    point: &SiegelPoint,
    z: &[Complex64],
    tol: f64,
    cap: u32,
    order: u32,
) -> Result<RawEval> {
    let g = point.genus();
    if top.len() != g || bottom.len() != g {
        return Err(Error::GenusMismatch(top.len().max(bottom.len()), g));
    }
    if z.len() != g {
        return Err(Error::BadPointLength(z.len(), g));
    }
    let im_z_norm = z.iter().map(|w| w.im * w.im).sum::<f64>().sqrt();
    let (radius, _) = choose_radius(g, point.lambda_min(), im_z_norm, order, tol, cap)?;
    let tails = [
        tail_estimate(g, point.lambda_min(), im_z_norm, 0, radius),
        tail_estimate(g, point.lambda_min(), im_z_norm, 1, radius),
        tail_estimate(g, point.lambda_min(), im_z_norm, 2, radius),
    ];

    let tau = point.tau();
    // z_eff = z + m''/2 (real shift, leaves Im z alone)
    let z_eff: Vec<Complex64> = (0..g)
        .map(|i| z[i] + Complex64::new(bottom[i] as f64 / 2.0, 0.0))
        .collect();

    // Per-coordinate lattice ranges so that q = p + top/2 has |q_i| <= R.
    let rf = f64::from(radius);
    let lo: Vec<i64> = (0..g)
        .map(|i| (-rf - top[i] as f64 / 2.0).ceil() as i64)
        .collect();
    let hi: Vec<i64> = (0..g)
        .map(|i| (rf - top[i] as f64 / 2.0).floor() as i64)
        .collect();

    let mut value = Complex64::new(0.0, 0.0);
    let mut grad = vec![Complex64::new(0.0, 0.0); g];
    let mut hess = DMatrix::from_element(g, g, Complex64::new(0.0, 0.0));

    let mut p = lo.clone();
    'points: loop {
        let q: Vec<f64> = (0..g).map(|i| p[i] as f64 + top[i] as f64 / 2.0).collect();
        // E = q . tau q + 2 q . z_eff
        let mut e = Complex64::new(0.0, 0.0);
        for i in 0..g {
            e += tau[(i, i)] * (q[i] * q[i]);
            for j in i + 1..g {
                e += tau[(i, j)] * (2.0 * q[i] * q[j]);
            }
            e += 2.0 * q[i] * z_eff[i];
        }
        let w = (Complex64::i() * PI * e).exp();
        value += w;
        if order >= 1 {
            for j in 0..g {
                grad[j] += Complex64::i() * (2.0 * PI * q[j]) * w;
            }
        }
        if order >= 2 {
            for i in 0..g {
                for j in 0..g {
                    hess[(i, j)] +=
                        (Complex64::i() * 2.0 * PI * q[i]) * (Complex64::i() * 2.0 * PI * q[j]) * w;
                }
            }
        }
        // odometer
        for i in (0..g).rev() {
            p[i] += 1;
            if p[i] <= hi[i] {
                continue 'points;
            }
            p[i] = lo[i];
            if i == 0 {
                break 'points;
            }
        }
    }

    Ok(RawEval {
        value,
        grad,
        hess,
        radius,
        tails,
    })
}

fn bits_to_i64(bits: &[u8]) -> Vec<i64> {
    bits.iter().map(|&b| i64::from(b)).collect()
}

// ---------------------------------------------------------------------------
// Public evaluation API
// ---------------------------------------------------------------------------

/// `theta_m(tau, z)` with a certified truncation, radius capped at `cap`.
pub fn theta_with_cap(
    m: &Characteristic,
    point: &SiegelPoint,
    z: &[Complex64],
    tol: f64,
    cap: u32,
) -> Result<ThetaValue> {
    if m.genus() != point.genus() {
        return Err(Error::GenusMismatch(m.genus(), point.genus()));
    }
    let raw = eval_raw(
        &bits_to_i64(m.top()),
        &bits_to_i64(m.bottom()),
        point,
        z,
        tol,
        cap,
        0,
    )?;
    Ok(ThetaValue {
        value: raw.value,
        tail_bound: raw.tails[0],
        radius: raw.radius,
    })
}

/// `theta_m(tau, z)` at the default radius cap.
pub fn theta(
    m: &Characteristic,
    point: &SiegelPoint,
    z: &[Complex64],
    tol: f64,
) -> Result<ThetaValue> {
    theta_with_cap(m, point, z, tol, DEFAULT_RADIUS_CAP)
}

/// Theta with a raw integer characteristic (entries not restricted to 0/1);
/// exercises the sign law `theta_{m + 2n} = (-1)^{m' . n''} theta_m`.
pub fn theta_raw(
    top: &[i64],
    bottom: &[i64],
    point: &SiegelPoint,
    z: &[Complex64],
    tol: f64,
) -> Result<ThetaValue> {
    let raw = eval_raw(top, bottom, point, z, tol, DEFAULT_RADIUS_CAP, 0)?;
    Ok(ThetaValue {
        value: raw.value,
        tail_bound: raw.tails[0],
        radius: raw.radius,
    })
}

/// Theta constant `theta_m(tau) = theta_m(tau, 0)`.
pub fn theta_constant(m: &Characteristic, point: &SiegelPoint, tol: f64) -> Result<ThetaValue> {
    let zeros = vec![Complex64::new(0.0, 0.0); point.genus()];
    theta(m, point, &zeros, tol)
}

/// Gradient in `z` at `z = 0` for an odd characteristic (the theta constant
/// of an odd characteristic vanishes; its gradient is the leading datum).
pub fn grad_theta0(n: &Characteristic, point: &SiegelPoint, tol: f64) -> Result<ThetaGradient> {
    if n.genus() != point.genus() {
        return Err(Error::GenusMismatch(n.genus(), point.genus()));
    }
    if !n.is_odd() {
        return Err(Error::NotOdd(n.to_string()));
    }
    let zeros = vec![Complex64::new(0.0, 0.0); point.genus()];
    let raw = eval_raw(
        &bits_to_i64(n.top()),
        &bits_to_i64(n.bottom()),
        point,
        &zeros,
        tol,
        DEFAULT_RADIUS_CAP,
        1,
    )?;
    Ok(ThetaGradient {
        character: n.clone(),
        vector: raw.grad,
        tail_bound: raw.tails[1],
        radius: raw.radius,
    })
}

/// Gradient in `z` of `theta_m(tau, .)` at an arbitrary point.
pub fn grad_theta_at(
    m: &Characteristic,
    point: &SiegelPoint,
    z: &[Complex64],
    tol: f64,
) -> Result<Vec<Complex64>> {
    if m.genus() != point.genus() {
        return Err(Error::GenusMismatch(m.genus(), point.genus()));
    }
    let raw = eval_raw(
        &bits_to_i64(m.top()),
        &bits_to_i64(m.bottom()),
        point,
        z,
        tol,
        DEFAULT_RADIUS_CAP,
        1,
    )?;
    Ok(raw.grad)
}

/// All theta constants (even) and gradients (odd) at `z = 0` in one lattice
/// pass, radius capped at `cap`.
pub fn batch_theta_with_cap(point: &SiegelPoint, tol: f64, cap: u32) -> Result<BatchTheta> {
    let g = point.genus();
    let lam = point.lambda_min();
    let (radius, _) = choose_radius(g, lam, 0.0, 1, tol, cap)?;
    let tail0 = tail_estimate(g, lam, 0.0, 0, radius);
    let tail1 = tail_estimate(g, lam, 0.0, 1, radius);
    let tau = point.tau();
    let n = 1usize << g;
    let r2 = 2 * i64::from(radius);

    // Accumulators indexed by (top bits, bottom bits), both MSB-first.
    let mut vals = vec![Complex64::new(0.0, 0.0); n * n];
    let mut grads = vec![Complex64::new(0.0, 0.0); n * n * g];
    let parity_even: Vec<bool> = (0..n * n)
        .map(|idx| {
            let (t, b) = (idx / n, idx % n);
            (t & b).count_ones() % 2 == 0
        })
        .collect();
    let i_pow = [
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 1.0),
        Complex64::new(-1.0, 0.0),
        Complex64::new(0.0, -1.0),
    ];

    let mut r = vec![-r2; g];
    'points: loop {
        // q = r/2; weight w = exp[i pi (q . tau q)]
        let mut e = Complex64::new(0.0, 0.0);
        for i in 0..g {
            let qi = r[i] as f64 / 2.0;
            e += tau[(i, i)] * (qi * qi);
            for j in i + 1..g {
                e += tau[(i, j)] * (2.0 * qi * r[j] as f64 / 2.0);
            }
        }
        let w = (Complex64::i() * PI * e).exp();
        // parity class: top bits = r mod 2, MSB-first
        let mut t = 0usize;
        for i in 0..g {
            t = t << 1 | (r[i].rem_euclid(2) as usize);
        }
        for b in 0..n {
            let mut dot = 0i64;
            for j in 0..g {
                if b >> (g - 1 - j) & 1 == 1 {
                    dot += r[j];
                }
            }
            let contrib = w * i_pow[dot.rem_euclid(4) as usize];
            let idx = t * n + b;
            if parity_even[idx] {
                vals[idx] += contrib;
            } else {
                for j in 0..g {
                    grads[idx * g + j] += Complex64::i() * (PI * r[j] as f64) * contrib;
                }
            }
        }
        for i in (0..g).rev() {
            r[i] += 1;
            if r[i] <= r2 {
                continue 'points;
            }
            r[i] = -r2;
            if i == 0 {
                break 'points;
            }
        }
    }

    let mut constants = BTreeMap::new();
    let mut gradients = BTreeMap::new();
    for m in enumerate(g, ParityFilter::All) {
        let mut t = 0usize;
        let mut b = 0usize;
        for &bit in m.top() {
            t = t << 1 | bit as usize;
        }
        for &bit in m.bottom() {
            b = b << 1 | bit as usize;
        }
        let idx = t * n + b;
        if m.is_even() {
            constants.insert(
                m.clone(),
                ThetaValue {
                    value: vals[idx],
                    tail_bound: tail0,
                    radius,
                },
            );
        } else {
            gradients.insert(
                m.clone(),
                ThetaGradient {
                    character: m.clone(),
                    vector: grads[idx * g..(idx + 1) * g].to_vec(),
                    tail_bound: tail1,
                    radius,
                },
            );
        }
    }
    Ok(BatchTheta {
        constants,
        gradients,
        radius,
    })
}

/// All theta constants and gradients at the default radius cap.
pub fn batch_theta(point: &SiegelPoint, tol: f64) -> Result<BatchTheta> {
    batch_theta_with_cap(point, tol, DEFAULT_RADIUS_CAP)
}

/// Jacobian determinant of three odd characteristics:
/// `D(n1, n2, n3) = pi^{-3} det(rows = gradients at 0)`.
///
/// The reconstruction identity only ever divides by determinants of
/// azygetic triples (sub-triples of an Aronhold set), and those are
/// bounded away from zero on well-conditioned period matrices. The
/// azygetic class itself is witnessed analytically by the
/// sum-characteristic constant: `theta_{n1+n2+n3}(0)` vanishes exactly
/// when the triple is syzygetic (odd sum), and is generically nonzero
/// when azygetic (even sum).
pub fn jacobian_d(
    n1: &Characteristic,
    n2: &Characteristic,
    n3: &Characteristic,
    point: &SiegelPoint,
    tol: f64,
) -> Result<Complex64> {
    if point.genus() != 3 {
        return Err(Error::UnsupportedGenus {
            expected: 3,
            got: point.genus(),
        });
    }
    for n in [n1, n2, n3] {
        if !n.is_odd() {
            return Err(Error::NotOdd(n.to_string()));
        }
    }
    if n1 == n2 || n1 == n3 || n2 == n3 {
        return Err(Error::RepeatedCharacteristic);
    }
    let g1 = grad_theta0(n1, point, tol)?;
    let g2 = grad_theta0(n2, point, tol)?;
    let g3 = grad_theta0(n3, point, tol)?;
    Ok(crate::weber::det3(&g1.vector, &g2.vector, &g3.vector) / PI.powi(3))
}

/// The min/max even-theta-constant ratio check shared by the fingerprint
/// and the bitangent extractor.
pub(crate) fn hyperelliptic_guard(constants: &BTreeMap<Characteristic, ThetaValue>) -> Result<()> {
    let mut min = f64::INFINITY;
    let mut max = 0.0f64;
    for v in constants.values() {
        let a = v.value.norm();
        min = min.min(a);
        max = max.max(a);
    }
    if max == 0.0 || min < HYPERELLIPTIC_GUARD * max {
        return Err(Error::HyperellipticOrDegenerate(if max == 0.0 {
            0.0
        } else {
            min / max
        }));
    }
    Ok(())
}

/// The fourth-power fingerprint straight from theta constants:
/// quotients `(theta_m / theta_ref)^4` over the 36 even `m`, reference
/// `[000|000]`. Refuses hyperelliptic/degenerate period matrices.
pub fn theta4_map_with_cap(point: &SiegelPoint, tol: f64, cap: u32) -> Result<Fingerprint> {
    if point.genus() != 3 {
        return Err(Error::UnsupportedGenus {
            expected: 3,
            got: point.genus(),
        });
    }
    let batch = batch_theta_with_cap(point, tol, cap)?;
    hyperelliptic_guard(&batch.constants)?;
    let reference = Characteristic::zero(3);
    let theta_ref = batch.constants[&reference].value;
    let mut quotients = BTreeMap::new();
    for (m, v) in &batch.constants {
        let ratio = v.value / theta_ref;
        quotients.insert(m.clone(), ratio.powi(4));
    }
    Fingerprint::new(reference, quotients)
}

/// The fourth-power fingerprint at the default radius cap.
pub fn theta4_map(point: &SiegelPoint, tol: f64) -> Result<Fingerprint> {
    theta4_map_with_cap(point, tol, DEFAULT_RADIUS_CAP)
}

/// Verify the heat equation `d^2 theta / dz_i dz_j = c_ij d theta / dtau_ij`
/// (`c_ii = 4 pi i`, `c_ij = 2 pi i` off-diagonal, with the convention that
/// the off-diagonal tau-derivative perturbs both symmetric slots).
///
/// The z-derivatives come from the differentiated series; the
/// tau-derivatives from central differences with step `h = 1e-5`. The FD
/// evaluations run at tolerance `tol * h` so truncation noise does not
/// dominate the quotient. Evaluation happens at a fixed generic `z` (at
/// `z = 0` odd characteristics would reduce the identity to `0 = 0`).
/// Returns the maximum relative residual over all `(i, j)`.
pub fn heat_check(m: &Characteristic, point: &SiegelPoint, tol: f64) -> Result<f64> {
    let g = point.genus();
    if m.genus() != g {
        return Err(Error::GenusMismatch(m.genus(), g));
    }
    let h = 1e-5;
    let z: Vec<Complex64> = (0..g)
        .map(|j| Complex64::new(0.13 - 0.04 * j as f64, 0.21 - 0.07 * j as f64))
        .collect();
    let top = bits_to_i64(m.top());
    let bottom = bits_to_i64(m.bottom());
    let series = eval_raw(&top, &bottom, point, &z, tol, DEFAULT_RADIUS_CAP, 2)?;
    let fd_tol = tol * h;

    let hess_scale = series
        .hess
        .iter()
        .map(|v| v.norm())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut worst = 0.0f64;
    for i in 0..g {
        for j in i..g {
            let mut plus = point.tau().clone();
            let mut minus = point.tau().clone();
            let dh = Complex64::new(h, 0.0);
            plus[(i, j)] += dh;
            minus[(i, j)] -= dh;
            if i != j {
                plus[(j, i)] += dh;
                minus[(j, i)] -= dh;
            }
            let p_plus = SiegelPoint::new(plus)?;
            let p_minus = SiegelPoint::new(minus)?;
            let v_plus = eval_raw(&top, &bottom, &p_plus, &z, fd_tol, DEFAULT_RADIUS_CAP, 0)?;
            let v_minus = eval_raw(&top, &bottom, &p_minus, &z, fd_tol, DEFAULT_RADIUS_CAP, 0)?;
            let fd = (v_plus.value - v_minus.value) / (2.0 * h);
            let c = if i == j {
                Complex64::i() * (4.0 * PI)
            } else {
                Complex64::i() * (2.0 * PI)
            };
            let lhs = series.hess[(i, j)];
            let rhs = c * fd;
            let denom = lhs.norm().max(rhs.norm()).max(1e-10 * hess_scale);
            worst = worst.max((lhs - rhs).norm() / denom);
        }
    }
    Ok(worst)
}
