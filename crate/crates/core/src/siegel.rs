//! The Siegel upper half-space and the integral symplectic group.
//!
//! A period matrix lives in `H_g`: complex symmetric `g x g` with positive
//! definite imaginary part. `Sp(2g, Z)` acts on it by fractional linear
//! transformations `tau -> (a tau + b)(c tau + d)^{-1}`. Symplectic matrices
//! are kept in exact integer arithmetic (arbitrary size) so group words,
//! congruence checks, and the eighth-root phase `phi` never round; only the
//! action on a period matrix converts to floating point, with an explicit
//! exactness guard.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::characteristics::Characteristic;
use crate::error::{Error, Result};

/// Relative symmetry tolerance for period-matrix validation.
const SYMMETRY_TOL: f64 = 1e-12;
/// Relative determinant threshold below which `c tau + d` counts as singular.
const SINGULAR_TOL: f64 = 1e-12;
/// Largest integer magnitude exactly representable in an f64.
const EXACT_F64: f64 = 9007199254740992.0; // 2^53

// ---------------------------------------------------------------------------
// Exact integer matrices
// ---------------------------------------------------------------------------

/// Dense integer matrix with arbitrary-size entries; just enough API for
/// symplectic bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BigInt::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::from(1));
        }
        m
    }

    /// Build from row-major `i64` rows; all rows must share a length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let r = rows.len();
        if r == 0 {
            return Err(Error::InvalidInput("empty matrix".into()));
        }
        let c = rows[0].len();
        if rows.iter().any(|row| row.len() != c) || c == 0 {
            return Err(Error::InvalidInput("ragged or empty matrix rows".into()));
        }
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, BigInt::from(v));
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.entry(i, j).clone());
            }
        }
        t
    }

    pub fn neg(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in IntMatrix::mul");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = BigInt::ZERO;
                for k in 0..self.cols {
                    acc += self.entry(i, k) * rhs.entry(k, j);
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn is_symmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.entry(i, j) != self.entry(j, i) {
                    return false;
                }
            }
        }
        true
    }

    /// Convert to a complex float matrix; errors if any entry exceeds the
    /// exactly representable integer range of an f64.
    fn to_complex(&self) -> Result<DMatrix<Complex64>> {
        let mut out = DMatrix::from_element(self.rows, self.cols, Complex64::new(0.0, 0.0));
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self
                    .entry(i, j)
                    .to_f64()
                    .ok_or(Error::IntegerOverflow)?;
                if v.abs() > EXACT_F64 {
                    return Err(Error::IntegerOverflow);
                }
                out[(i, j)] = Complex64::new(v, 0.0);
            }
        }
        Ok(out)
    }
}

// ---------------------------------------------------------------------------
// Symplectic matrices
// ---------------------------------------------------------------------------

/// An element of `Sp(2g, Z)`, stored as four exact `g x g` blocks
/// `(a b; c d)`. Constructors verify the symplectic identity exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    genus: usize,
    a: IntMatrix,
    b: IntMatrix,
    c: IntMatrix,
    d: IntMatrix,
}

impl SymplecticMatrix {
    /// Build from blocks, verifying `gamma^T J gamma = J` exactly.
    pub fn from_blocks(a: IntMatrix, b: IntMatrix, c: IntMatrix, d: IntMatrix) -> Result<Self> {
        let g = a.rows();
        for m in [&a, &b, &c, &d] {
            if m.rows() != g || m.cols() != g {
                return Err(Error::NotSymplectic);
            }
        }
        let m = Self {
            genus: g,
            a,
            b,
            c,
            d,
        };
        if !m.satisfies_symplectic_identity() {
            return Err(Error::NotSymplectic);
        }
        Ok(m)
    }

    /// Build from a full `2g x 2g` integer matrix in row-major `i64` rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        let g = n / 2;
        let full = IntMatrix::from_rows(rows)?;
        if full.cols() != n {
            return Err(Error::NotSymplectic);
        }
        let block = |r0: usize, c0: usize| {
            let mut m = IntMatrix::zeros(g, g);
            for i in 0..g {
                for j in 0..g {
                    m.set(i, j, full.entry(r0 + i, c0 + j).clone());
                }
            }
            m
        };
        Self::from_blocks(block(0, 0), block(0, g), block(g, 0), block(g, g))
    }

    /// The symplectic identity `a^T c = c^T a`, `b^T d = d^T b`,
    /// `a^T d - c^T b = I`, checked in exact arithmetic.
    fn satisfies_symplectic_identity(&self) -> bool {
        let atc_sym = {
            let m = self.a.transpose().mul(&self.c);
            m.is_symmetric()
        };
        let btd_sym = {
            let m = self.b.transpose().mul(&self.d);
            m.is_symmetric()
        };
        let atd_ctb = {
            let lhs = self.a.transpose().mul(&self.d);
            let rhs = self.c.transpose().mul(&self.b);
            let mut ok = true;
            for i in 0..self.genus {
                for j in 0..self.genus {
                    let diff = lhs.entry(i, j) - rhs.entry(i, j);
                    let expect = BigInt::from(u8::from(i == j));
                    if diff != expect {
                        ok = false;
                    }
                }
            }
            ok
        };
        atc_sym && btd_sym && atd_ctb
    }

    pub fn identity(genus: usize) -> Self {
        Self {
            genus,
            a: IntMatrix::identity(genus),
            b: IntMatrix::zeros(genus, genus),
            c: IntMatrix::zeros(genus, genus),
            d: IntMatrix::identity(genus),
        }
    }

    /// The standard involution `J = (0 I; -I 0)`.
    pub fn j_matrix(genus: usize) -> Self {
        Self {
            genus,
            a: IntMatrix::zeros(genus, genus),
            b: IntMatrix::identity(genus),
            c: IntMatrix::identity(genus).neg(),
            d: IntMatrix::zeros(genus, genus),
        }
    }

    /// Translation `(I B; 0 I)` for symmetric integer `B`.
    pub fn translation(b: &IntMatrix) -> Result<Self> {
        if !b.is_symmetric() {
            return Err(Error::NotSymplectic);
        }
        let g = b.rows();
        Ok(Self {
            genus: g,
            a: IntMatrix::identity(g),
            b: b.clone(),
            c: IntMatrix::zeros(g, g),
            d: IntMatrix::identity(g),
        })
    }

    /// Lower translation `(I 0; C I)` for symmetric integer `C`.
    pub fn lower_translation(c: &IntMatrix) -> Result<Self> {
        if !c.is_symmetric() {
            return Err(Error::NotSymplectic);
        }
        let g = c.rows();
        Ok(Self {
            genus: g,
            a: IntMatrix::identity(g),
            b: IntMatrix::zeros(g, g),
            c: c.clone(),
            d: IntMatrix::identity(g),
        })
    }

    /// Block-diagonal `(U 0; 0 U^{-T})` for unimodular `U`; the caller
    /// passes `U` and its inverse, which are verified by the constructor.
    pub fn gl_block(u: &IntMatrix, u_inv: &IntMatrix) -> Result<Self> {
        let g = u.rows();
        let prod = u.mul(u_inv);
        if prod != IntMatrix::identity(g) {
            return Err(Error::NotSymplectic);
        }
        Self::from_blocks(
            u.clone(),
            IntMatrix::zeros(g, g),
            IntMatrix::zeros(g, g),
            u_inv.transpose(),
        )
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Blocks `(a, b, c, d)`.
    pub fn blocks(&self) -> (&IntMatrix, &IntMatrix, &IntMatrix, &IntMatrix) {
        (&self.a, &self.b, &self.c, &self.d)
    }

    /// Exact product `self * rhs`.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.genus != rhs.genus {
            return Err(Error::GenusMismatch(self.genus, rhs.genus));
        }
        let a = self.a.mul(&rhs.a).add(&self.b.mul(&rhs.c));
        let b = self.a.mul(&rhs.b).add(&self.b.mul(&rhs.d));
        let c = self.c.mul(&rhs.a).add(&self.d.mul(&rhs.c));
        let d = self.c.mul(&rhs.b).add(&self.d.mul(&rhs.d));
        Self::from_blocks(a, b, c, d)
    }

    /// Exact inverse `(d^T, -b^T; -c^T, a^T)`.
    pub fn inverse(&self) -> Self {
        Self {
            genus: self.genus,
            a: self.d.transpose(),
            b: self.b.transpose().neg(),
            c: self.c.transpose().neg(),
            d: self.a.transpose(),
        }
    }

    /// Negation `-gamma` (also symplectic).
    pub fn neg(&self) -> Self {
        Self {
            genus: self.genus,
            a: self.a.neg(),
            b: self.b.neg(),
            c: self.c.neg(),
            d: self.d.neg(),
        }
    }

    /// Whether `gamma` is congruent to the identity mod `n` (principal
    /// congruence subgroup membership).
    pub fn is_in_level(&self, n: u64) -> bool {
        let n = BigInt::from(n);
        let cong = |m: &IntMatrix, identity: bool| {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    let expect = BigInt::from(u8::from(identity && i == j));
                    let diff = m.entry(i, j) - expect;
                    if (diff % &n) != BigInt::ZERO {
                        return false;
                    }
                }
            }
            true
        };
        cong(&self.a, true) && cong(&self.b, false) && cong(&self.c, false) && cong(&self.d, true)
    }

    /// Largest absolute entry, as a BigInt.
    pub fn max_abs_entry(&self) -> BigInt {
        let mut best = BigInt::ZERO;
        for m in [&self.a, &self.b, &self.c, &self.d] {
            for v in &m.data {
                let a = v.abs();
                if a > best {
                    best = a;
                }
            }
        }
        best
    }

    /// Fractional linear action on a period matrix:
    /// `tau -> (a tau + b)(c tau + d)^{-1}`, with a singularity guard on
    /// `c tau + d` and exact-integer-to-float conversion checks.
    pub fn act_tau(&self, point: &SiegelPoint) -> Result<SiegelPoint> {
        if self.genus != point.genus() {
            return Err(Error::GenusMismatch(self.genus, point.genus()));
        }
        let a = self.a.to_complex()?;
        let b = self.b.to_complex()?;
        let c = self.c.to_complex()?;
        let d = self.d.to_complex()?;
        let tau = point.tau();
        let denom = &c * tau + &d;
        let det = denom.determinant();
        // Hadamard bound as the natural scale for the determinant.
        let mut scale = 1.0f64;
        for i in 0..self.genus {
            let row_norm: f64 = (0..self.genus)
                .map(|j| denom[(i, j)].norm_sqr())
                .sum::<f64>()
                .sqrt();
            scale *= row_norm;
        }
        if !det.norm().is_finite() || det.norm() < SINGULAR_TOL * scale.max(f64::MIN_POSITIVE) {
            return Err(Error::SingularFactor(det.norm()));
        }
        let inv = denom
            .try_inverse()
            .ok_or(Error::SingularFactor(det.norm()))?;
        let num = &a * tau + &b;
        let mut image = num * inv;
        // Symmetrize away roundoff before validation.
        for i in 0..self.genus {
            for j in i + 1..self.genus {
                let avg = (image[(i, j)] + image[(j, i)]) * 0.5;
                image[(i, j)] = avg;
                image[(j, i)] = avg;
            }
        }
        SiegelPoint::new(image)
    }
}

/// Generators of `Sp(2g, Z)`: the involution `J` plus the `g(g+1)/2`
/// translations by the symmetric basis matrices `E_ii` and `E_ij + E_ji`.
pub fn generators(genus: usize) -> Vec<SymplecticMatrix> {
    let mut gens = vec![SymplecticMatrix::j_matrix(genus)];
    for i in 0..genus {
        for j in i..genus {
            let mut b = IntMatrix::zeros(genus, genus);
            b.set(i, j, BigInt::from(1));
            if i != j {
                b.set(j, i, BigInt::from(1));
            }
            gens.push(SymplecticMatrix::translation(&b).expect("basis matrix is symmetric"));
        }
    }
    gens
}

/// Elements of the principal level-2 congruence subgroup used for sampling:
/// upper/lower translations by `2B`, unipotent GL-blocks `U = I + 2 E_ij`,
/// and `-I`. Each is verified to lie in level 2.
pub fn level2_generators(genus: usize) -> Vec<SymplecticMatrix> {
    let mut gens = Vec::new();
    for i in 0..genus {
        for j in i..genus {
            let mut b = IntMatrix::zeros(genus, genus);
            b.set(i, j, BigInt::from(2));
            if i != j {
                b.set(j, i, BigInt::from(2));
            }
            gens.push(SymplecticMatrix::translation(&b).expect("symmetric"));
            gens.push(SymplecticMatrix::lower_translation(&b).expect("symmetric"));
        }
    }
    for i in 0..genus {
        for j in 0..genus {
            if i == j {
                continue;
            }
            let mut u = IntMatrix::identity(genus);
            u.set(i, j, BigInt::from(2));
            let mut u_inv = IntMatrix::identity(genus);
            u_inv.set(i, j, BigInt::from(-2));
            gens.push(SymplecticMatrix::gl_block(&u, &u_inv).expect("unimodular"));
        }
    }
    gens.push(SymplecticMatrix::identity(genus).neg());
    debug_assert!(gens.iter().all(|g| g.is_in_level(2)));
    gens
}

/// Random word of the given length in the `Sp(2g, Z)` generators and the
/// inverse translations; deterministic for a fixed RNG state.
pub fn random_word(genus: usize, len: usize, rng: &mut impl Rng) -> SymplecticMatrix {
    let base = generators(genus);
    let mut letters: Vec<SymplecticMatrix> = base.clone();
    // Translations by -B give the inverses; J^-1 = J^3 is reachable anyway.
    for gamma in &base[1..] {
        let (_, b, _, _) = gamma.blocks();
        letters.push(SymplecticMatrix::translation(&b.neg()).expect("symmetric"));
    }
    let mut word = SymplecticMatrix::identity(genus);
    for _ in 0..len {
        let pick = rng.random_range(0..letters.len());
        word = word.mul(&letters[pick]).expect("same genus");
    }
    word
}

/// Random word in the level-2 elements of [`level2_generators`].
pub fn random_level2_word(genus: usize, len: usize, rng: &mut impl Rng) -> SymplecticMatrix {
    let letters = level2_generators(genus);
    let mut word = SymplecticMatrix::identity(genus);
    for _ in 0..len {
        let pick = rng.random_range(0..letters.len());
        word = word.mul(&letters[pick]).expect("same genus");
    }
    word
}

// ---------------------------------------------------------------------------
// Siegel points
// ---------------------------------------------------------------------------

/// A validated point of the Siegel upper half-space `H_g`.
#[derive(Debug, Clone)]
pub struct SiegelPoint {
    genus: usize,
    tau: DMatrix<Complex64>,
    lambda_min: f64,
}

impl SiegelPoint {
    /// Validate symmetry (relative tolerance 1e-12) and positive
    /// definiteness of the imaginary part (Cholesky), and cache the
    /// smallest eigenvalue of `Im tau` for truncation control.
    pub fn new(tau: DMatrix<Complex64>) -> Result<Self> {
        let (r, c) = tau.shape();
        if r != c {
            return Err(Error::NotSquare(r, c));
        }
        if r == 0 {
            return Err(Error::ZeroGenus);
        }
        let scale = tau
            .iter()
            .map(|z| z.norm())
            .fold(0.0f64, f64::max)
            .max(1.0);
        let mut asym = 0.0f64;
        for i in 0..r {
            for j in i + 1..r {
                asym = asym.max((tau[(i, j)] - tau[(j, i)]).norm());
            }
        }
        if asym > SYMMETRY_TOL * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let im = tau.map(|z| z.im);
        if nalgebra::Cholesky::new(im.clone()).is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let eig = nalgebra::SymmetricEigen::new(im);
        let lambda_min = eig.eigenvalues.iter().cloned().fold(f64::INFINITY, f64::min);
        if !(lambda_min > 0.0) {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self {
            genus: r,
            tau,
            lambda_min,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn tau(&self) -> &DMatrix<Complex64> {
        &self.tau
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.tau[(i, j)]
    }

    /// Smallest eigenvalue of `Im tau`; controls series truncation.
    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    /// Serialize to the period-matrix JSON wire format.
    pub fn to_json(&self) -> String {
        let wire = PeriodMatrixFile::from(self);
        serde_json::to_string_pretty(&wire).expect("serializable")
    }

    /// Parse and validate the period-matrix JSON wire format.
    pub fn from_json(text: &str) -> Result<Self> {
        let wire: PeriodMatrixFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        wire.try_into()
    }
}

/// Wire format for a period matrix: `{"genus": g, "tau": [[[re, im], ...]]}`.
#[derive(Debug, Serialize, Deserialize)]
pub struct PeriodMatrixFile {
    pub genus: usize,
    pub tau: Vec<Vec<[f64; 2]>>,
}

impl From<&SiegelPoint> for PeriodMatrixFile {
    fn from(p: &SiegelPoint) -> Self {
        let g = p.genus();
        let tau = (0..g)
            .map(|i| {
                (0..g)
                    .map(|j| {
                        let z = p.entry(i, j);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        Self { genus: g, tau }
    }
}

impl TryFrom<PeriodMatrixFile> for SiegelPoint {
    type Error = Error;

    fn try_from(wire: PeriodMatrixFile) -> Result<Self> {
        let g = wire.genus;
        if g == 0 {
            return Err(Error::ZeroGenus);
        }
        if wire.tau.len() != g || wire.tau.iter().any(|row| row.len() != g) {
            return Err(Error::InvalidInput(format!(
                "tau must be a {g}x{g} matrix of [re, im] pairs"
            )));
        }
        let mut tau = DMatrix::from_element(g, g, Complex64::new(0.0, 0.0));
        for i in 0..g {
            for j in 0..g {
                let [re, im] = wire.tau[i][j];
                if !re.is_finite() || !im.is_finite() {
                    return Err(Error::InvalidInput("non-finite entry in tau".into()));
                }
                tau[(i, j)] = Complex64::new(re, im);
            }
        }
        SiegelPoint::new(tau)
    }
}

// ---------------------------------------------------------------------------
// Transformation phase
// ---------------------------------------------------------------------------

/// A rational phase `k/8 mod 1`, the exact value group of `phi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Eighths(u8);

impl Eighths {
    pub fn new(k: u8) -> Self {
        Self(k % 8)
    }

    /// Numerator `k` of `k/8`.
    pub fn numerator(self) -> u8 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 8.0
    }

    /// The unit-modulus phase `e^{2 pi i k / 8}`.
    pub fn phase(self) -> Complex64 {
        Complex64::from_polar(1.0, std::f64::consts::PI * f64::from(self.0) / 4.0)
    }
}

/// The theta transformation phase
/// `phi_m(gamma) = -(1/8)(m'.(b^T d)m' + m''.(a^T c)m'' - 2 m'.(b^T c)m'')
///  + (1/4) diag(a b^T).(d m' - c m'')`, reduced mod 1.
///
/// Computed in exact integer arithmetic: `8 phi = -X + 2Y mod 8`.
pub fn phi(m: &Characteristic, gamma: &SymplecticMatrix) -> Result<Eighths> {
    let g = gamma.genus();
    if g != m.genus() {
        return Err(Error::GenusMismatch(g, m.genus()));
    }
    let (a, b, c, d) = gamma.blocks();
    let mt: Vec<BigInt> = m.top().iter().map(|&x| BigInt::from(x)).collect();
    let mb: Vec<BigInt> = m.bottom().iter().map(|&x| BigInt::from(x)).collect();

    let btd = b.transpose().mul(d);
    let atc = a.transpose().mul(c);
    let btc = b.transpose().mul(c);

    let mut x = BigInt::ZERO;
    for i in 0..g {
        for j in 0..g {
            x += &mt[i] * btd.entry(i, j) * &mt[j];
            x += &mb[i] * atc.entry(i, j) * &mb[j];
            x -= 2 * (&mt[i] * btc.entry(i, j) * &mb[j]);
        }
    }
    let mut y = BigInt::ZERO;
    for i in 0..g {
        let mut diag = BigInt::ZERO;
        for k in 0..g {
            diag += a.entry(i, k) * b.entry(i, k);
        }
        let mut v = BigInt::ZERO;
        for k in 0..g {
            v += d.entry(i, k) * &mt[k] - c.entry(i, k) * &mb[k];
        }
        y += diag * v;
    }
    let eight_phi: BigInt = ((-x + 2 * y) % 8 + 8) % 8;
    Ok(Eighths::new(
        eight_phi.to_u8().expect("value reduced into 0..8"),
    ))
}

/// The multiplier `chi_m(gamma) = e^{2 pi i phi_m(gamma)}`, an exact eighth
/// root of unity.
pub fn chi(m: &Characteristic, gamma: &SymplecticMatrix) -> Result<Complex64> {
    Ok(phi(m, gamma)?.phase())
}

// ---------------------------------------------------------------------------
// Random period matrices
// ---------------------------------------------------------------------------

/// Seeded random period matrix `tau = S + iG`: `S` symmetric with entries
/// uniform in `[-1/2, 1/2)`, `G = I + rho * A / ||A||_F` with `A` symmetric
/// uniform in `[-1, 1)`, so the smallest eigenvalue of `Im tau` is at least
/// `1 - rho`. Deterministic for a fixed `(seed, genus, conditioning)`.
pub fn random_tau(seed: u64, genus: usize, conditioning: f64) -> SiegelPoint {
    assert!(genus >= 1, "genus must be at least 1");
    assert!(
        conditioning > 0.0 && conditioning <= 1.0,
        "conditioning must lie in (0, 1]"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = genus;
    let mut s = DMatrix::from_element(g, g, 0.0f64);
    for i in 0..g {
        for j in i..g {
            let v = rng.random_range(-0.5..0.5);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    let mut a = DMatrix::from_element(g, g, 0.0f64);
    for i in 0..g {
        for j in i..g {
            let v = rng.random_range(-1.0..1.0);
            a[(i, j)] = v;
            a[(j, i)] = v;
        }
    }
    let fro = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let mut im = DMatrix::identity(g, g);
    if fro > 0.0 {
        im += a * (conditioning / fro);
    }
    let tau = DMatrix::from_fn(g, g, |i, j| Complex64::new(s[(i, j)], im[(i, j)]));
    SiegelPoint::new(tau).expect("construction keeps Im tau positive definite")
}
