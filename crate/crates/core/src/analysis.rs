//! Counting behind the termination bound.
//!
//! A record is summarised by a sign sequence (`+1` per step, then `h` copies
//! of `-1` for every cancelled path of half-length `h`). At most `g(I)`
//! records share the sign sequence `I`, where `g` multiplies `4h` over the
//! runs of `-1`. The total `a_n` of `g` over all `2^n` sign sequences obeys
//! `a_n = 3a_{n-1} + a_{n-2} + a_{n-3}`, so it grows like `lambda0^n` with
//! `lambda0 ~ 3.383` the real root of `x^3 - 3x^2 - x - 1`. Comparing
//! `(k+1)^m a_{2t}` with the `k^t` possible inputs gives the step threshold.

use alloc::vec::Vec;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::coloring::Record;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("record needs {needed} signs, more than 2t = {limit}")]
    OverflowingRecord { needed: usize, limit: usize },
    #[error("brute force enumeration limited to n <= 24 (got {0})")]
    NTooLarge(usize),
    #[error("k = {0} does not exceed lambda0^2 ~ 11.445; no threshold exists under this bound")]
    KTooSmall(usize),
    #[error("sign sequences contain only +1 and -1")]
    BadSign,
}

/// Sequence of `+1` / `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignSequence(Vec<i8>);

impl SignSequence {
    pub fn new(entries: Vec<i8>) -> Result<Self, AnalysisError> {
        if entries.iter().any(|&s| s != 1 && s != -1) {
            return Err(AnalysisError::BadSign);
        }
        Ok(SignSequence(entries))
    }

    /// Unpadded sequence of a record: `(1)` per empty entry, `(1, -1^h)` per
    /// descriptor.
    pub fn from_record(record: &Record) -> Self {
        let mut s = Vec::with_capacity(2 * record.len());
        for entry in record.entries() {
            s.push(1);
            if let Some(d) = entry {
                s.extend(core::iter::repeat_n(-1, d.h() as usize));
            }
        }
        SignSequence(s)
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn prefix_sums(&self) -> Vec<i64> {
        self.0
            .iter()
            .scan(0i64, |acc, &s| {
                *acc += s as i64;
                Some(*acc)
            })
            .collect()
    }

    /// All prefix sums nonnegative, so appending `-1`s down to zero yields a
    /// Dyck word.
    pub fn is_dyck_prefix(&self) -> bool {
        self.prefix_sums().iter().all(|&s| s >= 0)
    }

    /// Lengths of the maximal runs of `-1`.
    pub fn negative_runs(&self) -> Vec<usize> {
        self.0
            .split(|&s| s == 1)
            .map(<[i8]>::len)
            .filter(|&l| l > 0)
            .collect()
    }

    pub fn concat(&self, other: &SignSequence) -> SignSequence {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignSequence(v)
    }
}

/// The record's sign sequence padded with `+1` to length exactly `2t`.
pub fn sign_sequence(record: &Record, t: usize) -> Result<SignSequence, AnalysisError> {
    let mut s = SignSequence::from_record(record);
    if s.len() > 2 * t {
        return Err(AnalysisError::OverflowingRecord {
            needed: s.len(),
            limit: 2 * t,
        });
    }
    s.0.resize(2 * t, 1);
    Ok(s)
}

/// `g(I)`: product of `4h` over the runs of `-1` (1 if there are none).
pub fn g_weight(seq: &SignSequence) -> BigUint {
    seq.negative_runs()
        .into_iter()
        .fold(BigUint::one(), |acc, h| acc * BigUint::from(4 * h as u64))
}

/// `g` of the sign sequence encoded by the low `n` bits of `mask` (bit set
/// means `-1`).
fn g_of_mask(mask: u32, n: usize) -> u64 {
    let mut product = 1u64;
    let mut run = 0u64;
    for i in 0..n {
        if mask >> i & 1 == 1 {
            run += 1;
        } else if run > 0 {
            product *= 4 * run;
            run = 0;
        }
    }
    if run > 0 {
        product *= 4 * run;
    }
    product
}

pub const BRUTEFORCE_MAX_N: usize = 24;

/// `a_n` by summing `g` over all `2^n` sign sequences.
pub fn a_bruteforce(n: usize) -> Result<BigUint, AnalysisError> {
    if n == 0 || n > BRUTEFORCE_MAX_N {
        return Err(AnalysisError::NTooLarge(n));
    }
    let total: u128 = (0..1u32 << n).map(|mask| g_of_mask(mask, n) as u128).sum();
    Ok(BigUint::from(total))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RecurrenceForm {
    /// `a_n = a_{n-1} + sum_{l=1}^{n-2} 4l a_{n-1-l} + 4(n-1) + 4n`.
    Convolution,
    /// `a_n = 3a_{n-1} + a_{n-2} + a_{n-3}` from the seeds 5, 17, 57.
    Compact,
}

/// `a_1, ..., a_n` (index 0 holds `a_1`).
pub fn a_sequence(n: usize, form: RecurrenceForm) -> Vec<BigUint> {
    let mut a: Vec<BigUint> = Vec::with_capacity(n);
    for i in 1..=n {
        let next = match form {
            RecurrenceForm::Compact => match i {
                1 => BigUint::from(5u32),
                2 => BigUint::from(17u32),
                3 => BigUint::from(57u32),
                _ => &a[i - 2] * 3u32 + &a[i - 3] + &a[i - 4],
            },
            RecurrenceForm::Convolution => {
                if i == 1 {
                    BigUint::from(5u32)
                } else {
                    // a[x - 1] holds a_x
                    let mut v = a[i - 2].clone();
                    for l in 1..=i - 2 {
                        v += &a[i - 2 - l] * (4 * l as u64);
                    }
                    v + BigUint::from(4 * (i as u64 - 1) + 4 * i as u64)
                }
            }
        };
        a.push(next);
    }
    a
}

/// `a_n` for `n >= 1`.
pub fn a_recurrence(n: usize, form: RecurrenceForm) -> BigUint {
    assert!(n >= 1, "a_n is defined for n >= 1");
    a_sequence(n, form).pop().expect("n >= 1")
}

/// Roots of `x^3 - 3x^2 - x - 1` with their residuals `|p(x)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootTriple {
    pub lambda0: f64,
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub residuals: [f64; 3],
}

fn characteristic(x: Complex64) -> Complex64 {
    x * x * x - 3.0 * x * x - x - 1.0
}

/// Closed-form roots via Cardano, substituting `x = y + 1` to reach the
/// depressed cubic `y^3 - 4y - 4 = 0`.
pub fn cardano_roots() -> RootTriple {
    let v0 = libm::cbrt(2.0 + (2.0 / 3.0) * libm::sqrt(11.0 / 3.0));
    let u0 = (4.0 / 3.0) / v0;
    let lambda0 = v0 + u0 + 1.0;
    let lambda1 = Complex64::new(-(v0 + u0) / 2.0 + 1.0, libm::sqrt(3.0) / 2.0 * (v0 - u0));
    let lambda2 = lambda1.conj();
    let residuals = [
        characteristic(Complex64::new(lambda0, 0.0)).norm(),
        characteristic(lambda1).norm(),
        characteristic(lambda2).norm(),
    ];
    RootTriple {
        lambda0,
        lambda1,
        lambda2,
        residuals,
    }
}

/// Numeric estimate of the leading constant `c0` in `a_n ~ c0 lambda0^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthEstimate {
    pub c0: f64,
    /// `(n, a_n / lambda0^n)` for `n = 1..=n_max`.
    pub estimates: Vec<(usize, f64)>,
    /// Relative change between the last two estimates.
    pub last_delta: f64,
}

impl GrowthEstimate {
    pub fn at(&self, n: usize) -> f64 {
        self.estimates[n - 1].1
    }
}

pub fn growth_constant(n_max: usize) -> GrowthEstimate {
    let n_max = n_max.max(2);
    let lambda0 = cardano_roots().lambda0;
    let a = a_sequence(n_max, RecurrenceForm::Compact);
    let estimates: Vec<(usize, f64)> = a
        .iter()
        .enumerate()
        .map(|(i, an)| {
            let n = i + 1;
            (
                n,
                an.to_f64().unwrap_or(f64::INFINITY) / libm::pow(lambda0, n as f64),
            )
        })
        .collect();
    let c0 = estimates[n_max - 1].1;
    let prev = estimates[n_max - 2].1;
    GrowthEstimate {
        c0,
        last_delta: libm::fabs(c0 - prev) / c0,
        estimates,
    }
}

/// Smallest `t` with `(k+1)^m a_{2t} < k^t`.
///
/// Exact big-integer scan. Needs `k > lambda0^2`; for `k = 12` the threshold
/// always exists since `lambda0^2 ~ 11.445`.
pub fn threshold_steps(m: usize, k: usize) -> Result<u64, AnalysisError> {
    let lambda0 = cardano_roots().lambda0;
    if (k as f64) <= lambda0 * lambda0 {
        return Err(AnalysisError::KTooSmall(k));
    }
    let colourings = BigUint::from(k as u64 + 1).pow(m as u32);
    let k_big = BigUint::from(k as u64);
    // rolling window of a_{n-2}, a_{n-1}, a_n
    let (mut a1, mut a2, mut a3) = (
        BigUint::from(5u32),
        BigUint::from(17u32),
        BigUint::from(57u32),
    );
    let mut n = 3usize;
    let mut inputs = BigUint::one();
    let mut t = 0u64;
    loop {
        t += 1;
        inputs *= &k_big;
        let target = 2 * t as usize;
        let a_2t = if target == 2 {
            a2.clone()
        } else {
            while n < target {
                let next = &a3 * 3u32 + &a2 + &a1;
                a1 = core::mem::replace(&mut a2, core::mem::replace(&mut a3, next));
                n += 1;
            }
            a3.clone()
        };
        if &colourings * a_2t < inputs {
            return Ok(t);
        }
    }
}

/// Catalan number `C_t` against the bound `4^t / (sqrt(pi) t^{3/2})`.
#[derive(Debug, Clone, PartialEq)]
pub struct CatalanCheck {
    pub t: usize,
    pub catalan: BigUint,
    pub bound: f64,
    pub holds: bool,
}

fn binomial(n: u64, k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn catalan(t: usize) -> BigUint {
    binomial(2 * t as u64, t as u64) / (t as u64 + 1)
}

pub fn catalan_check(t: usize) -> CatalanCheck {
    let c = catalan(t);
    let tf = t as f64;
    let bound = libm::pow(4.0, tf) / (libm::sqrt(core::f64::consts::PI) * libm::pow(tf, 1.5));
    let holds = c.to_f64().is_some_and(|cf| cf <= bound);
    CatalanCheck {
        t,
        catalan: c,
        bound,
        holds,
    }
}

/// Number of Dyck words of length `2t` by direct enumeration (oracle for
/// [`catalan`], feasible for small `t`).
pub fn dyck_words_bruteforce(t: usize) -> u64 {
    let n = 2 * t;
    (0u64..1 << n)
        .filter(|&mask| {
            let mut h = 0i64;
            for i in 0..n {
                h += if mask >> i & 1 == 1 { -1 } else { 1 };
                if h < 0 {
                    return false;
                }
            }
            h == 0
        })
        .count() as u64
}

/// `sum_{I in J_n} g(I)` restricted to sequences with nonnegative prefix sums
/// and total 0 (Dyck words), for comparison with the unrestricted `a_n`.
pub fn a_dyck_bruteforce(t: usize) -> Result<BigUint, AnalysisError> {
    let n = 2 * t;
    if n == 0 || n > BRUTEFORCE_MAX_N {
        return Err(AnalysisError::NTooLarge(n));
    }
    let mut total = BigUint::zero();
    for mask in 0u32..1 << n {
        let mut h = 0i64;
        let mut ok = true;
        for i in 0..n {
            h += if mask >> i & 1 == 1 { -1 } else { 1 };
            if h < 0 {
                ok = false;
                break;
            }
        }
        if ok && h == 0 {
            total += g_of_mask(mask, n);
        }
    }
    Ok(total)
}
