//! Domain types and the structural side of the theory.
//!
//! A [`Composition`] is the semi-m-Pell side object, a [`RunForm`] is the
//! one-place m-power side object written in exponent notation. The
//! membership test [`is_semi_m_pell`] works directly on the sequence of max
//! m-powers of the parts: a composition is semi-m-Pell exactly when that
//! sequence has pairwise distinct entries and rises strictly to a single
//! peak before falling strictly.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The ambient modulus `m >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidArgument(format!("modulus must be >= 2, got {m}")));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Modulus {
    type Error = Error;

    fn try_from(m: u64) -> Result<Self> {
        Modulus::new(m)
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Writes `n = m^i * h` with `m ∤ h` and returns `(m^i, h)`. `n` must be nonzero.
#[inline]
pub(crate) fn split_m_power(mut n: u64, m: u64) -> (u64, u64) {
    debug_assert!(n > 0 && m >= 2);
    let mut power = 1;
    while n.is_multiple_of(m) {
        n /= m;
        power *= m;
    }
    (power, n)
}

/// Largest power of `m` dividing `n` (the power itself, not its exponent).
pub fn max_m_power(n: u64, m: Modulus) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "max m-power is undefined for 0".to_string(),
        ));
    }
    Ok(split_m_power(n, m.get()).0)
}

/// True when `n` is `m^i` for some `i >= 0`.
pub(crate) fn is_power_of(mut n: u64, m: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n.is_multiple_of(m) {
        n /= m;
    }
    n == 1
}

/// An ordered sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Result<Self> {
        if let Some(i) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidArgument(format!(
                "part at position {} is zero",
                i + 1
            )));
        }
        Ok(Composition { parts })
    }

    /// The unique composition of 0.
    pub fn empty() -> Self {
        Composition { parts: Vec::new() }
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<u64>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<u64> {
        self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.parts.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

fn strip_parens(s: &str) -> &str {
    let s = s.trim();
    s.strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .unwrap_or(s)
        .trim()
}

fn parse_positive(token: &str) -> Result<u64> {
    let token = token.trim();
    let value: u64 = token
        .parse()
        .map_err(|_| Error::InvalidArgument(format!("expected a positive integer, got {token:?}")))?;
    if value == 0 {
        return Err(Error::InvalidArgument("parts must be positive".to_string()));
    }
    Ok(value)
}

/// Accepts `1,2,3`, `(1,2,3)` and `()` for the empty composition.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_parens(s);
        if body.is_empty() {
            return Ok(Composition::empty());
        }
        let parts = body.split(',').map(parse_positive).collect::<Result<Vec<_>>>()?;
        Ok(Composition { parts })
    }
}

/// Why a composition fails the semi-m-Pell test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiPellViolation {
    /// Two parts (0-based positions) share the max m-power `power`.
    RepeatedMaxPower {
        first: usize,
        second: usize,
        power: u64,
    },
    /// The max m-powers rise again after falling; `index` is the 0-based
    /// position of the part that starts the second rise.
    NotUnimodal { index: usize },
}

impl fmt::Display for SemiPellViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SemiPellViolation::RepeatedMaxPower {
                first,
                second,
                power,
            } => write!(
                f,
                "max m-powers not distinct (parts {} and {} both have max m-power {power})",
                first + 1,
                second + 1
            ),
            SemiPellViolation::NotUnimodal { index } => write!(
                f,
                "max m-powers not unimodal (rise again at part {})",
                index + 1
            ),
        }
    }
}

/// Fast path: strictly increasing then strictly decreasing, and no value
/// shared between the two arms. Allocation free.
fn strictly_unimodal_distinct(parts: &[u64], m: u64) -> bool {
    let k = parts.len();
    if k <= 1 {
        return true;
    }
    let pw = |i: usize| split_m_power(parts[i], m).0;
    let mut peak = 0;
    let mut prev = pw(0);
    while peak + 1 < k {
        let next = pw(peak + 1);
        if next > prev {
            peak += 1;
            prev = next;
        } else {
            break;
        }
    }
    let mut i = peak + 1;
    while i < k {
        let cur = pw(i);
        if cur >= prev {
            return false;
        }
        prev = cur;
        i += 1;
    }
    // Both arms are sorted; merge them from the bottom looking for a collision.
    let (mut a, mut b) = (0usize, k - 1);
    while a <= peak && b > peak {
        let (x, y) = (pw(a), pw(b));
        match x.cmp(&y) {
            Ordering::Equal => return false,
            Ordering::Less => a += 1,
            Ordering::Greater => b -= 1,
        }
    }
    true
}

fn classify(parts: &[u64], m: u64) -> Option<SemiPellViolation> {
    let powers: Vec<u64> = parts.iter().map(|&p| split_m_power(p, m).0).collect();
    let mut order: Vec<usize> = (0..powers.len()).collect();
    order.sort_by_key(|&i| (powers[i], i));
    for w in order.windows(2) {
        if powers[w[0]] == powers[w[1]] {
            return Some(SemiPellViolation::RepeatedMaxPower {
                first: w[0],
                second: w[1],
                power: powers[w[0]],
            });
        }
    }
    let mut falling = false;
    for i in 1..powers.len() {
        if powers[i] < powers[i - 1] {
            falling = true;
        } else if falling {
            return Some(SemiPellViolation::NotUnimodal { index: i });
        }
    }
    None
}

pub(crate) fn parts_are_semi_m_pell(parts: &[u64], m: u64) -> bool {
    strictly_unimodal_distinct(parts, m)
}

/// Returns the reason `c` is not semi-m-Pell, or `None` when it is.
///
/// Repeated max m-powers are reported ahead of a unimodality failure.
pub fn semi_m_pell_violation(c: &Composition, m: Modulus) -> Option<SemiPellViolation> {
    if strictly_unimodal_distinct(&c.parts, m.get()) {
        None
    } else {
        let v = classify(&c.parts, m.get());
        debug_assert!(v.is_some());
        v
    }
}

pub fn is_semi_m_pell(c: &Composition, m: Modulus) -> bool {
    strictly_unimodal_distinct(&c.parts, m.get())
}

/// Deletes a boundary part smaller than `m`, preferring the first part.
pub fn tau1(c: &Composition, m: Modulus) -> Result<Composition> {
    let parts = &c.parts;
    match (parts.first(), parts.last()) {
        (Some(&first), _) if first < m.get() => Ok(Composition {
            parts: parts[1..].to_vec(),
        }),
        (_, Some(&last)) if last < m.get() => Ok(Composition {
            parts: parts[..parts.len() - 1].to_vec(),
        }),
        _ => Err(Error::Precondition(format!(
            "tau1 needs a first or last part smaller than {m}"
        ))),
    }
}

/// Reduces the part at 0-based `index` by `m`; the part must exceed `m`
/// and not be divisible by it.
pub fn tau2(c: &Composition, index: usize, m: Modulus) -> Result<Composition> {
    let m = m.get();
    let part = *c.parts.get(index).ok_or_else(|| {
        Error::Precondition(format!(
            "tau2 index {index} out of range for {} parts",
            c.parts.len()
        ))
    })?;
    if part <= m || part % m == 0 {
        return Err(Error::Precondition(format!(
            "tau2 needs a part > {m} not divisible by {m}, got {part}"
        )));
    }
    let mut parts = c.parts.clone();
    parts[index] -= m;
    Ok(Composition { parts })
}

/// Divides every part by `m`; all parts must be multiples of `m`.
pub fn tau3(c: &Composition, m: Modulus) -> Result<Composition> {
    let m = m.get();
    if let Some(&p) = c.parts.iter().find(|&&p| p % m != 0) {
        return Err(Error::Precondition(format!(
            "tau3 needs every part divisible by {m}, found {p}"
        )));
    }
    Ok(Composition {
        parts: c.parts.iter().map(|p| p / m).collect(),
    })
}

/// One run `base^mult` of a [`RunForm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Run {
    pub base: u64,
    pub mult: u64,
}

impl Run {
    pub fn new(base: u64, mult: u64) -> Self {
        Run { base, mult }
    }
}

/// A composition written in one-place exponent notation, e.g. `(1^3,2,4)`.
///
/// Construction performs no checks so that malformed inputs can be
/// represented and rejected by [`validate_runform`].
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RunForm {
    runs: Vec<Run>,
}

impl RunForm {
    pub fn new(runs: Vec<Run>) -> Self {
        RunForm { runs }
    }

    pub fn from_pairs(pairs: &[(u64, u64)]) -> Self {
        RunForm {
            runs: pairs.iter().map(|&(b, u)| Run::new(b, u)).collect(),
        }
    }

    pub fn runs(&self) -> &[Run] {
        &self.runs
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn weight(&self) -> u64 {
        self.runs.iter().map(|r| r.base * r.mult).sum()
    }

    /// Largest base, `None` for the empty form.
    pub fn peak_base(&self) -> Option<u64> {
        self.runs.iter().map(|r| r.base).max()
    }

    /// Expanded part sequence, each run written out `mult` times.
    pub fn flatten(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.runs.iter().map(|r| r.mult as usize).sum());
        for r in &self.runs {
            out.extend(std::iter::repeat_n(r.base, r.mult as usize));
        }
        out
    }

    /// Lexicographic comparison of the flattened part sequences.
    pub fn cmp_flattened(&self, other: &RunForm) -> Ordering {
        let a = self.runs.iter().flat_map(|r| std::iter::repeat_n(r.base, r.mult as usize));
        let b = other.runs.iter().flat_map(|r| std::iter::repeat_n(r.base, r.mult as usize));
        a.cmp(b)
    }
}

impl fmt::Display for RunForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, r) in self.runs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if r.mult == 1 {
                write!(f, "{}", r.base)?;
            } else {
                write!(f, "{}^{}", r.base, r.mult)?;
            }
        }
        f.write_str(")")
    }
}

/// Accepts `1^3,2,4`, `(1^3,2,4)` and `()`.
impl FromStr for RunForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = strip_parens(s);
        if body.is_empty() {
            return Ok(RunForm::default());
        }
        let runs = body
            .split(',')
            .map(|tok| match tok.split_once('^') {
                Some((b, u)) => Ok(Run::new(parse_positive(b)?, parse_positive(u)?)),
                None => Ok(Run::new(parse_positive(tok)?, 1)),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RunForm { runs })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RunFormViolation {
    ZeroMultiplicity { index: usize },
    BaseNotPower { index: usize, base: u64 },
    MultiplicityDivisible { index: usize, mult: u64 },
    RepeatedBase { base: u64 },
    NotUnimodal { index: usize },
}

impl fmt::Display for RunFormViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunFormViolation::ZeroMultiplicity { index } => {
                write!(f, "run {} has multiplicity 0", index + 1)
            }
            RunFormViolation::BaseNotPower { index, base } => {
                write!(f, "run {} has base {base}, not a power of m", index + 1)
            }
            RunFormViolation::MultiplicityDivisible { index, mult } => write!(
                f,
                "run {} has multiplicity {mult}, divisible by m",
                index + 1
            ),
            RunFormViolation::RepeatedBase { base } => {
                write!(f, "part size {base} occurs in more than one place")
            }
            RunFormViolation::NotUnimodal { index } => {
                write!(f, "run sizes not unimodal (rise again at run {})", index + 1)
            }
        }
    }
}

pub fn runform_violation(r: &RunForm, m: Modulus) -> Option<RunFormViolation> {
    let m = m.get();
    for (index, run) in r.runs.iter().enumerate() {
        if run.mult == 0 {
            return Some(RunFormViolation::ZeroMultiplicity { index });
        }
        if !is_power_of(run.base, m) {
            return Some(RunFormViolation::BaseNotPower {
                index,
                base: run.base,
            });
        }
        if run.mult % m == 0 {
            return Some(RunFormViolation::MultiplicityDivisible {
                index,
                mult: run.mult,
            });
        }
    }
    let mut bases: Vec<u64> = r.runs.iter().map(|r| r.base).collect();
    bases.sort_unstable();
    if let Some(w) = bases.windows(2).find(|w| w[0] == w[1]) {
        return Some(RunFormViolation::RepeatedBase { base: w[0] });
    }
    let mut falling = false;
    for i in 1..r.runs.len() {
        if r.runs[i].base < r.runs[i - 1].base {
            falling = true;
        } else if falling {
            return Some(RunFormViolation::NotUnimodal { index: i });
        }
    }
    None
}

pub fn validate_runform(r: &RunForm, m: Modulus) -> bool {
    runform_violation(r, m).is_none()
}
