//! Half-integer theta characteristics and their combinatorics.
//!
//! A characteristic of genus `g` is a pair of vectors `m = [m' | m'']` with
//! entries in `{0, 1}`, written as a string like `"101|010"`. The group law
//! is componentwise addition mod 2, the parity is `(-1)^{m'.m''}`, and the
//! combinatorial layer on top (azygetic triples, Aronhold sets) drives the
//! bitangent labeling and the reconstruction formula in the sibling modules.
//!
//! Everything here is exact integer arithmetic; no floating point.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::siegel::SymplecticMatrix;

/// A half-integer characteristic `[m' | m'']` with entries in `{0, 1}`.
///
/// Ordering is lexicographic on the string form `"m'|m''"`, which agrees
/// with the derived field order (genus, top bits, bottom bits).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Characteristic {
    genus: usize,
    top: Vec<u8>,
    bottom: Vec<u8>,
}

/// Filter for [`enumerate`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParityFilter {
    Even,
    Odd,
    All,
}

/// Result of letting a symplectic matrix act on a characteristic: the
/// reduced representative together with the sign picked up by reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedCharacteristic {
    pub character: Characteristic,
    /// `+1` or `-1`.
    pub sign: i32,
}

impl Characteristic {
    /// Build a characteristic from explicit bit vectors.
    pub fn new(top: &[u8], bottom: &[u8]) -> Result<Self> {
        if top.is_empty() {
            return Err(Error::ZeroGenus);
        }
        if top.len() != bottom.len() {
            return Err(Error::GenusMismatch(top.len(), bottom.len()));
        }
        if top.iter().chain(bottom.iter()).any(|&b| b > 1) {
            return Err(Error::InvalidBits);
        }
        Ok(Self {
            genus: top.len(),
            top: top.to_vec(),
            bottom: bottom.to_vec(),
        })
    }

    /// The zero characteristic `[0...0 | 0...0]`.
    pub fn zero(genus: usize) -> Self {
        assert!(genus >= 1, "genus must be at least 1");
        Self {
            genus,
            top: vec![0; genus],
            bottom: vec![0; genus],
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Top (first) vector `m'`.
    pub fn top(&self) -> &[u8] {
        &self.top
    }

    /// Bottom (second) vector `m''`.
    pub fn bottom(&self) -> &[u8] {
        &self.bottom
    }

    /// Parity `(-1)^{m'.m''}`: `+1` (even) or `-1` (odd).
    pub fn parity(&self) -> i32 {
        let dot: u32 = self
            .top
            .iter()
            .zip(&self.bottom)
            .map(|(&a, &b)| u32::from(a & b))
            .sum();
        if dot % 2 == 0 {
            1
        } else {
            -1
        }
    }

    pub fn is_even(&self) -> bool {
        self.parity() == 1
    }

    pub fn is_odd(&self) -> bool {
        self.parity() == -1
    }

    /// Componentwise sum mod 2. Errors on genus mismatch.
    pub fn add(&self, rhs: &Self) -> Result<Self> {
        if self.genus != rhs.genus {
            return Err(Error::GenusMismatch(self.genus, rhs.genus));
        }
        Ok(Self {
            genus: self.genus,
            top: self
                .top
                .iter()
                .zip(&rhs.top)
                .map(|(&a, &b)| a ^ b)
                .collect(),
            bottom: self
                .bottom
                .iter()
                .zip(&rhs.bottom)
                .map(|(&a, &b)| a ^ b)
                .collect(),
        })
    }

    /// The characteristic with top and bottom vectors exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            genus: self.genus,
            top: self.bottom.clone(),
            bottom: self.top.clone(),
        }
    }

    /// Pack a genus-3 characteristic into 6 bits, top vector in the high
    /// bits. Numeric order of codes equals lexicographic order of strings.
    pub(crate) fn code3(&self) -> u8 {
        debug_assert_eq!(self.genus, 3);
        let mut code = 0u8;
        for &b in &self.top {
            code = code << 1 | b;
        }
        for &b in &self.bottom {
            code = code << 1 | b;
        }
        code
    }

    /// Inverse of [`Characteristic::code3`].
    pub(crate) fn from_code3(code: u8) -> Self {
        debug_assert!(code < 64);
        let top = (0..3).map(|i| code >> (5 - i) & 1).collect();
        let bottom = (0..3).map(|i| code >> (2 - i) & 1).collect();
        Self {
            genus: 3,
            top,
            bottom,
        }
    }
}

impl fmt::Display for Characteristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.top {
            write!(f, "{b}")?;
        }
        write!(f, "|")?;
        for &b in &self.bottom {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for Characteristic {
    type Err = Error;

    /// Parse `"101|010"`. Both halves must be nonempty, equal length, and
    /// consist of `0`/`1` only.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseCharacteristic(s.to_string());
        let (t, b) = s.split_once('|').ok_or_else(bad)?;
        if t.is_empty() || t.len() != b.len() {
            return Err(bad());
        }
        let bits = |half: &str| -> Result<Vec<u8>> {
            half.chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(bad()),
                })
                .collect()
        };
        Self::new(&bits(t)?, &bits(b)?)
    }
}

/// All characteristics of the given genus matching the filter, ordered
/// lexicographically by string form.
pub fn enumerate(genus: usize, filter: ParityFilter) -> Vec<Characteristic> {
    assert!(
        (1..=8).contains(&genus),
        "genus must be in 1..=8, got {genus}"
    );
    let n = 1u32 << genus;
    let mut out = Vec::new();
    for t in 0..n {
        for b in 0..n {
            let top: Vec<u8> = (0..genus).map(|i| (t >> (genus - 1 - i) & 1) as u8).collect();
            let bottom: Vec<u8> = (0..genus).map(|i| (b >> (genus - 1 - i) & 1) as u8).collect();
            let m = Characteristic {
                genus,
                top,
                bottom,
            };
            let keep = match filter {
                ParityFilter::Even => m.is_even(),
                ParityFilter::Odd => m.is_odd(),
                ParityFilter::All => true,
            };
            if keep {
                out.push(m);
            }
        }
    }
    out
}

fn check_same_genus(chars: &[&Characteristic]) -> Result<usize> {
    let g = chars[0].genus;
    for c in chars {
        if c.genus != g {
            return Err(Error::GenusMismatch(g, c.genus));
        }
    }
    Ok(g)
}

/// Whether a triple of pairwise distinct characteristics is azygetic:
/// `e(a) e(b) e(c) e(a+b+c) = -1`. Errors on genus mismatch or repeats.
pub fn is_azygetic_triple(
    a: &Characteristic,
    b: &Characteristic,
    c: &Characteristic,
) -> Result<bool> {
    check_same_genus(&[a, b, c])?;
    if a == b || a == c || b == c {
        return Err(Error::RepeatedCharacteristic);
    }
    let s = a.add(b)?.add(c)?;
    Ok(a.parity() * b.parity() * c.parity() * s.parity() == -1)
}

/// Whether every triple from the tuple is azygetic. Needs length >= 3 and
/// pairwise distinct entries of one genus.
pub fn is_azygetic_tuple(chars: &[Characteristic]) -> Result<bool> {
    if chars.len() < 3 {
        return Err(Error::TupleTooShort(chars.len()));
    }
    let refs: Vec<&Characteristic> = chars.iter().collect();
    check_same_genus(&refs)?;
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            if chars[i] == chars[j] {
                return Err(Error::RepeatedCharacteristic);
            }
        }
    }
    for i in 0..chars.len() {
        for j in i + 1..chars.len() {
            for k in j + 1..chars.len() {
                if !is_azygetic_triple(&chars[i], &chars[j], &chars[k])? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Packed genus-3 helpers for the combinatorial searches.
// ---------------------------------------------------------------------------

/// Parity bit of a packed genus-3 code: 1 for odd, 0 for even.
#[inline]
fn parity_bit(code: u8) -> u8 {
    let t = code >> 3;
    let b = code & 0b111;
    (t & b).count_ones() as u8 & 1
}

/// Azygetic test on packed codes (caller guarantees distinctness).
#[inline]
fn azygetic3_codes(a: u8, b: u8, c: u8) -> bool {
    parity_bit(a) ^ parity_bit(b) ^ parity_bit(c) ^ parity_bit(a ^ b ^ c) == 1
}

/// Packed codes of the 28 odd genus-3 characteristics, ascending.
fn odd_codes3() -> Vec<u8> {
    (0u8..64).filter(|&c| parity_bit(c) == 1).collect()
}

// ---------------------------------------------------------------------------
// Aronhold sets
// ---------------------------------------------------------------------------

/// An ordered 7-tuple of odd genus-3 characteristics such that the 8-tuple
/// `(n_1, ..., n_7, n_1 + ... + n_7)` is azygetic. The sum is then even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AronholdSet {
    members: [Characteristic; 7],
    sum: Characteristic,
}

impl AronholdSet {
    /// Validate and build. Checks: genus 3, all odd, the full 8-tuple with
    /// the sum azygetic, and the sum even.
    pub fn new(members: [Characteristic; 7]) -> Result<Self> {
        for m in &members {
            if m.genus != 3 {
                return Err(Error::UnsupportedGenus {
                    expected: 3,
                    got: m.genus,
                });
            }
            if !m.is_odd() {
                return Err(Error::NotOdd(m.to_string()));
            }
        }
        let mut sum = members[0].clone();
        for m in &members[1..] {
            sum = sum.add(m)?;
        }
        if members.iter().any(|m| *m == sum) {
            return Err(Error::RepeatedCharacteristic);
        }
        let mut eight: Vec<Characteristic> = members.to_vec();
        eight.push(sum.clone());
        if !is_azygetic_tuple(&eight)? {
            return Err(Error::InvalidInput(
                "7-tuple is not an Aronhold set (8-tuple with sum is not azygetic)".into(),
            ));
        }
        if !sum.is_even() {
            // Cannot happen for a genuine Aronhold set; loud alarm if the
            // azygetic check above ever lets one through.
            return Err(Error::NotEven(sum.to_string()));
        }
        Ok(Self { members, sum })
    }

    pub fn members(&self) -> &[Characteristic; 7] {
        &self.members
    }

    /// The (even) sum of the seven members.
    pub fn sum(&self) -> &Characteristic {
        &self.sum
    }

    /// The 21 pair labels `n_ij = sum + n_i + n_j` for `1 <= i < j <= 7`,
    /// keyed by 1-based `(i, j)`. Together with the members these exhaust
    /// the 28 odd characteristics.
    pub fn complete_labels(&self) -> BTreeMap<(usize, usize), Characteristic> {
        let mut out = BTreeMap::new();
        for i in 0..7 {
            for j in i + 1..7 {
                let nij = self
                    .sum
                    .add(&self.members[i])
                    .and_then(|s| s.add(&self.members[j]))
                    .expect("members share genus 3");
                out.insert((i + 1, j + 1), nij);
            }
        }
        out
    }
}

fn set_from_codes(codes: &[u8; 7]) -> Result<AronholdSet> {
    let members: [Characteristic; 7] =
        std::array::from_fn(|i| Characteristic::from_code3(codes[i]));
    AronholdSet::new(members)
}

/// All Aronhold sets in genus 3, members and sets in lexicographic order.
/// There are exactly 288. Only genus 3 is supported.
pub fn enumerate_aronhold_sets(genus: usize) -> Result<Vec<AronholdSet>> {
    if genus != 3 {
        return Err(Error::UnsupportedGenus {
            expected: 3,
            got: genus,
        });
    }
    let odds = odd_codes3();
    let mut out = Vec::new();
    let mut chosen = [0u8; 7];

    // Depth-first over ascending member indices; prune as soon as a triple
    // involving the newest member fails the azygetic test.
    fn descend(odds: &[u8], start: usize, depth: usize, chosen: &mut [u8; 7], out: &mut Vec<AronholdSet>) {
        if depth == 7 {
            let s = chosen.iter().fold(0u8, |acc, &c| acc ^ c);
            if parity_bit(s) == 1 {
                return;
            }
            for i in 0..7 {
                for j in i + 1..7 {
                    if !azygetic3_codes(chosen[i], chosen[j], s) {
                        return;
                    }
                }
            }
            out.push(set_from_codes(chosen).expect("search output validates"));
            return;
        }
        for idx in start..odds.len() {
            let cand = odds[idx];
            let ok = (0..depth).all(|i| {
                (i + 1..depth).all(|j| azygetic3_codes(chosen[i], chosen[j], cand))
            });
            if ok {
                chosen[depth] = cand;
                descend(odds, idx + 1, depth + 1, chosen, out);
            }
        }
    }

    descend(&odds, 0, 0, &mut chosen, &mut out);
    Ok(out)
}

/// Search for Aronhold sets whose first three members sum to `m2` and whose
/// total sum is `m1`, in deterministic lexicographic order, up to `limit`.
pub fn aronhold_sets_for_pair(
    m1: &Characteristic,
    m2: &Characteristic,
    limit: usize,
) -> Result<Vec<AronholdSet>> {
    for m in [m1, m2] {
        if m.genus != 3 {
            return Err(Error::UnsupportedGenus {
                expected: 3,
                got: m.genus,
            });
        }
        if !m.is_even() {
            return Err(Error::NotEven(m.to_string()));
        }
    }
    if m1 == m2 {
        return Err(Error::RepeatedCharacteristic);
    }
    let c1 = m1.code3();
    let c2 = m2.code3();
    let odds = odd_codes3();
    let mut out = Vec::new();

    // First three members: ascending azygetic triple with XOR = m2.
    for (i, &a) in odds.iter().enumerate() {
        for &b in odds.iter().skip(i + 1) {
            let c = a ^ b ^ c2;
            // The third member is determined; keep ascending order.
            if c <= b || parity_bit(c) != 1 {
                continue;
            }
            if !azygetic3_codes(a, b, c) {
                continue;
            }
            // Last four members: ascending, the fourth determined by the
            // total-sum constraint XOR(all 7) = m1.
            let triple = [a, b, c];
            let taken = |x: u8, extra: &[u8]| triple.contains(&x) || extra.contains(&x);
            for (p, &d1) in odds.iter().enumerate() {
                if taken(d1, &[]) {
                    continue;
                }
                if !prefix_ok(&triple, &[d1]) {
                    continue;
                }
                for (q, &d2) in odds.iter().enumerate().skip(p + 1) {
                    if taken(d2, &[d1]) {
                        continue;
                    }
                    if !prefix_ok(&triple, &[d1, d2]) {
                        continue;
                    }
                    for &d3 in odds.iter().skip(q + 1) {
                        if taken(d3, &[d1, d2]) {
                            continue;
                        }
                        let d4 = c1 ^ c2 ^ d1 ^ d2 ^ d3;
                        if d4 <= d3 || parity_bit(d4) != 1 || taken(d4, &[d1, d2, d3]) {
                            continue;
                        }
                        if !prefix_ok(&triple, &[d1, d2, d3]) {
                            continue;
                        }
                        let codes = [a, b, c, d1, d2, d3, d4];
                        if !all_triples_azygetic(&codes) {
                            continue;
                        }
                        let s = codes.iter().fold(0u8, |acc, &x| acc ^ x);
                        debug_assert_eq!(s, c1);
                        if (0..7).any(|i| {
                            (i + 1..7).any(|j| !azygetic3_codes(codes[i], codes[j], s))
                        }) {
                            continue;
                        }
                        out.push(set_from_codes(&codes)?);
                        if out.len() >= limit {
                            return Ok(out);
                        }
                    }
                }
            }
        }
    }
    if out.is_empty() {
        return Err(Error::AronholdNotFound(m1.to_string(), m2.to_string()));
    }
    Ok(out)
}

/// Whether every triple drawn from `base` plus the `ext` prefix that uses
/// the newest extension member is azygetic.
fn prefix_ok(base: &[u8; 3], ext: &[u8]) -> bool {
    let newest = *ext.last().expect("nonempty extension");
    let mut pool: Vec<u8> = base.to_vec();
    pool.extend_from_slice(&ext[..ext.len() - 1]);
    for i in 0..pool.len() {
        for j in i + 1..pool.len() {
            if !azygetic3_codes(pool[i], pool[j], newest) {
                return false;
            }
        }
    }
    true
}

fn all_triples_azygetic(codes: &[u8; 7]) -> bool {
    for i in 0..7 {
        for j in i + 1..7 {
            for k in j + 1..7 {
                if !azygetic3_codes(codes[i], codes[j], codes[k]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Deterministic first Aronhold set for an ordered pair of distinct even
/// characteristics: members 1..3 sum to `m2`, all seven sum to `m1`.
pub fn aronhold_for_pair(m1: &Characteristic, m2: &Characteristic) -> Result<AronholdSet> {
    Ok(aronhold_sets_for_pair(m1, m2, 1)?
        .pop()
        .expect("nonempty by construction"))
}

// ---------------------------------------------------------------------------
// Symplectic action on characteristics
// ---------------------------------------------------------------------------

/// Act by a symplectic matrix on a characteristic.
///
/// With blocks `a, b, c, d`, the raw integer image is
/// `M' = d m' - c m'' + diag(c d^T)`, `M'' = -b m' + a m'' + diag(a b^T)`.
/// The result is the canonical representative `M mod 2` together with the
/// sign `(-1)^{M'_red . n''}` picked up by reduction, where
/// `n'' = (M'' - M''_red) / 2`.
pub fn gamma_act_char(
    gamma: &SymplecticMatrix,
    m: &Characteristic,
) -> Result<SignedCharacteristic> {
    let g = gamma.genus();
    if g != m.genus {
        return Err(Error::GenusMismatch(g, m.genus));
    }
    let (a, b, c, d) = gamma.blocks();
    let mt: Vec<BigInt> = m.top.iter().map(|&x| BigInt::from(x)).collect();
    let mb: Vec<BigInt> = m.bottom.iter().map(|&x| BigInt::from(x)).collect();

    let mut raw_top = vec![BigInt::ZERO; g];
    let mut raw_bottom = vec![BigInt::ZERO; g];
    for i in 0..g {
        let mut t = BigInt::ZERO;
        let mut u = BigInt::ZERO;
        for k in 0..g {
            t += d.entry(i, k) * &mt[k] - c.entry(i, k) * &mb[k];
            u += a.entry(i, k) * &mb[k] - b.entry(i, k) * &mt[k];
        }
        // diag(c d^T)_i and diag(a b^T)_i
        for k in 0..g {
            t += c.entry(i, k) * d.entry(i, k);
            u += a.entry(i, k) * b.entry(i, k);
        }
        raw_top[i] = t;
        raw_bottom[i] = u;
    }

    let red = |x: &BigInt| -> u8 {
        if x.bit(0) {
            1
        } else {
            0
        }
    };
    let top: Vec<u8> = raw_top.iter().map(red).collect();
    let bottom: Vec<u8> = raw_bottom.iter().map(red).collect();

    // n'' = (M'' - reduced'') / 2, exact; sign = (-1)^{top_red . n''}.
    let mut exponent = BigInt::ZERO;
    for i in 0..g {
        let half = (&raw_bottom[i] - BigInt::from(bottom[i])) / 2;
        exponent += BigInt::from(top[i]) * half;
    }
    let sign = if exponent.bit(0) { -1 } else { 1 };
    Ok(SignedCharacteristic {
        character: Characteristic::new(&top, &bottom)?,
        sign,
    })
}

/// Count of even (`+1`) characteristics for a genus: `2^{g-1} (2^g + 1)`.
pub fn even_count(genus: usize) -> usize {
    (1 << (genus - 1)) * ((1 << genus) + 1)
}

/// Count of odd (`-1`) characteristics for a genus: `2^{g-1} (2^g - 1)`.
pub fn odd_count(genus: usize) -> usize {
    (1 << (genus - 1)) * ((1 << genus) - 1)
}

/// Helper used by tests and the selftest: exponent sum for a BigInt-free
/// sanity check that Plücker's bitangent count matches the odd count in
/// genus 3: `(1/2) d (d-2) (d^2 - 9)` for `d = 4`.
pub fn plucker_bitangent_count() -> usize {
    let d: i64 = 4;
    let n = d * (d - 2) * (d * d - 9) / 2;
    n.to_usize().expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::siegel;

    fn c(s: &str) -> Characteristic {
        s.parse().expect("valid characteristic literal")
    }

    #[test]
    fn parse_and_display_round_trip() {
        for s in ["000|000", "101|010", "1|1", "0110|1001"] {
            assert_eq!(c(s).to_string(), s);
        }
        assert!("101|01".parse::<Characteristic>().is_err());
        assert!("|".parse::<Characteristic>().is_err());
        assert!("102|010".parse::<Characteristic>().is_err());
        assert!("101010".parse::<Characteristic>().is_err());
    }

    #[test]
    fn parity_basics() {
        assert_eq!(c("000|000").parity(), 1);
        assert_eq!(c("001|001").parity(), -1);
        assert_eq!(c("011|011").parity(), 1);
        assert_eq!(c("1|1").parity(), -1);
    }

    #[test]
    fn parity_counts_match_closed_forms() {
        for g in 1..=4 {
            let evens = enumerate(g, ParityFilter::Even).len();
            let odds = enumerate(g, ParityFilter::Odd).len();
            assert_eq!(evens, even_count(g));
            assert_eq!(odds, odd_count(g));
            assert_eq!(evens + odds, 1 << (2 * g));
        }
        assert_eq!(even_count(3), 36);
        assert_eq!(odd_count(3), 28);
        assert_eq!(plucker_bitangent_count(), 28);
    }

    #[test]
    fn addition_is_xor() {
        let a = c("101|010");
        let b = c("011|110");
        assert_eq!(a.add(&b).unwrap(), c("110|100"));
        // (C, +) is an elementary abelian 2-group.
        assert_eq!(a.add(&a).unwrap(), c("000|000"));
        assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
        assert!(a.add(&c("11|00")).is_err());
    }

    #[test]
    fn enumerate_is_sorted_and_complete() {
        let all = enumerate(3, ParityFilter::All);
        assert_eq!(all.len(), 64);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        let strings: std::collections::BTreeSet<String> =
            all.iter().map(|m| m.to_string()).collect();
        assert_eq!(strings.len(), 64);
        assert_eq!(all[0], c("000|000"));
        assert_eq!(all[63], c("111|111"));
    }

    #[test]
    fn code3_round_trip_preserves_order() {
        let all = enumerate(3, ParityFilter::All);
        for (i, m) in all.iter().enumerate() {
            assert_eq!(m.code3() as usize, i);
            assert_eq!(&Characteristic::from_code3(m.code3()), m);
        }
    }

    #[test]
    fn azygetic_triple_examples() {
        // Pairwise-disjoint supports: sum has parity (-1)^3, product +1.
        let syz = [c("001|001"), c("010|010"), c("100|100")];
        assert!(!is_azygetic_triple(&syz[0], &syz[1], &syz[2]).unwrap());

        // A known azygetic triple (checked against the parity product).
        let a = c("001|001");
        let b = c("010|010");
        let d = c("011|001");
        assert_eq!(d.parity(), -1);
        let s = a.add(&b).unwrap().add(&d).unwrap();
        assert_eq!(
            a.parity() * b.parity() * d.parity() * s.parity(),
            -1
        );
        assert!(is_azygetic_triple(&a, &b, &d).unwrap());

        assert!(is_azygetic_triple(&a, &a, &b).is_err());
        assert!(is_azygetic_triple(&a, &b, &c("01|01")).is_err());
    }

    /// Frozen count: brute force over all C(28,3) odd triples in genus 3.
    #[test]
    fn azygetic_odd_triple_census() {
        let odds = enumerate(3, ParityFilter::Odd);
        assert_eq!(odds.len(), 28);
        let mut azygetic = 0usize;
        let mut total = 0usize;
        for i in 0..28 {
            for j in i + 1..28 {
                for k in j + 1..28 {
                    total += 1;
                    if is_azygetic_triple(&odds[i], &odds[j], &odds[k]).unwrap() {
                        azygetic += 1;
                    }
                }
            }
        }
        assert_eq!(total, 3276);
        assert_eq!(azygetic, 2016);
    }

    #[test]
    fn azygetic_tuple_agrees_with_triple_loop() {
        let odds = enumerate(3, ParityFilter::Odd);
        let tuple = [odds[0].clone(), odds[1].clone(), odds[2].clone(), odds[5].clone()];
        let mut expect = true;
        for i in 0..4 {
            for j in i + 1..4 {
                for k in j + 1..4 {
                    expect &= is_azygetic_triple(&tuple[i], &tuple[j], &tuple[k]).unwrap();
                }
            }
        }
        assert_eq!(is_azygetic_tuple(&tuple).unwrap(), expect);
        assert!(is_azygetic_tuple(&tuple[..2]).is_err());
    }

    /// Advance `combo` to the next ascending k-combination of `0..n`.
    fn next_combination(combo: &mut [usize], n: usize) -> bool {
        let k = combo.len();
        let mut i = k;
        while i > 0 {
            i -= 1;
            if combo[i] != i + n - k {
                combo[i] += 1;
                for j in i + 1..k {
                    combo[j] = combo[j - 1] + 1;
                }
                return true;
            }
        }
        false
    }

    /// Independent oracle for the Aronhold census: a dumb filter over all
    /// C(28,7) subsets using only the packed azygetic test.
    #[test]
    fn aronhold_census_against_brute_force() {
        let fast = enumerate_aronhold_sets(3).unwrap();
        assert_eq!(fast.len(), 288);

        let odds = odd_codes3();
        let mut brute = 0usize;
        let mut combo: Vec<usize> = (0..7).collect();
        loop {
            let codes: Vec<u8> = combo.iter().map(|&i| odds[i]).collect();
            let s = codes.iter().fold(0u8, |acc, &x| acc ^ x);
            let mut ok = true;
            'check: for i in 0..7 {
                for j in i + 1..7 {
                    if !azygetic3_codes(codes[i], codes[j], s) {
                        ok = false;
                        break 'check;
                    }
                    for k in j + 1..7 {
                        if !azygetic3_codes(codes[i], codes[j], codes[k]) {
                            ok = false;
                            break 'check;
                        }
                    }
                }
            }
            if ok {
                brute += 1;
            }
            if !next_combination(&mut combo, 28) {
                break;
            }
        }
        assert_eq!(brute, 288);
    }

    #[test]
    fn aronhold_sets_validate_and_complete() {
        let sets = enumerate_aronhold_sets(3).unwrap();
        let first = &sets[0];
        assert!(first.sum().is_even());
        let labels = first.complete_labels();
        assert_eq!(labels.len(), 21);
        let mut all: std::collections::BTreeSet<Characteristic> =
            first.members().iter().cloned().collect();
        for v in labels.values() {
            assert!(v.is_odd());
            all.insert(v.clone());
        }
        // members + pair labels exhaust the 28 odd characteristics
        assert_eq!(all.len(), 28);
        assert!(enumerate_aronhold_sets(2).is_err());
    }

    #[test]
    fn aronhold_for_pair_constraints_hold() {
        let m1 = c("000|000");
        let m2 = c("110|001");
        let set = aronhold_for_pair(&m1, &m2).unwrap();
        let first3 = set.members()[0]
            .add(&set.members()[1])
            .unwrap()
            .add(&set.members()[2])
            .unwrap();
        assert_eq!(first3, m2);
        assert_eq!(*set.sum(), m1);
        // deterministic: same inputs, same set
        let again = aronhold_for_pair(&m1, &m2).unwrap();
        assert_eq!(set, again);
        // several sets exist and all satisfy the constraints
        let few = aronhold_sets_for_pair(&m1, &m2, 5).unwrap();
        assert!(few.len() >= 2);
        for s in &few {
            let f3 = s.members()[0]
                .add(&s.members()[1])
                .unwrap()
                .add(&s.members()[2])
                .unwrap();
            assert_eq!(f3, m2);
            assert_eq!(*s.sum(), m1);
        }
        assert!(aronhold_for_pair(&m1, &m1).is_err());
        assert!(aronhold_for_pair(&m1, &c("001|001")).is_err());
    }

    #[test]
    fn action_of_identity_and_level_two() {
        let id = siegel::SymplecticMatrix::identity(3);
        for m in enumerate(3, ParityFilter::All) {
            let r = gamma_act_char(&id, &m).unwrap();
            assert_eq!(r.character, m);
            assert_eq!(r.sign, 1);
        }
        // Elements of the level-2 subgroup fix every characteristic.
        for gamma in siegel::level2_generators(3) {
            assert!(gamma.is_in_level(2));
            for m in enumerate(3, ParityFilter::All) {
                let r = gamma_act_char(&gamma, &m).unwrap();
                assert_eq!(r.character, m, "gamma should fix {m}");
            }
        }
    }

    #[test]
    fn action_preserves_parity_and_is_compatible_with_words() {
        let gens = siegel::generators(3);
        for gamma in &gens {
            for m in enumerate(3, ParityFilter::All) {
                let r = gamma_act_char(gamma, &m).unwrap();
                assert_eq!(r.character.parity(), m.parity());
            }
        }
        // Compatibility: (g2 g1) . m == g2 . (g1 . m) on the characteristic
        // part (signs compose only up to the eighth-root bookkeeping).
        let g1 = &gens[0];
        let g2 = &gens[1];
        let prod = g2.mul(g1).unwrap();
        for m in enumerate(3, ParityFilter::All) {
            let lhs = gamma_act_char(&prod, &m).unwrap().character;
            let step = gamma_act_char(g1, &m).unwrap().character;
            let rhs = gamma_act_char(g2, &step).unwrap().character;
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn action_permutes_characteristics() {
        for gamma in siegel::generators(3) {
            let mut seen = std::collections::BTreeSet::new();
            for m in enumerate(3, ParityFilter::All) {
                seen.insert(gamma_act_char(&gamma, &m).unwrap().character);
            }
            assert_eq!(seen.len(), 64);
        }
    }
}
