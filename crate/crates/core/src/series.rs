//! Truncated power series with exact integer coefficients, and the
//! closed-form generating function
//!
//! ```text
//! Q_m(x) = 1 + Σ_{i>=0} S_i(x)/(1 - x^{m^{i+1}}) · Π_{t<i} (1 + 2 S_t(x)/(1 - x^{m^{t+1}}))
//! S_t(x) = Σ_{r=1}^{m-1} x^{m^t r}
//! ```
//!
//! whose coefficients are `sp(n, m)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::composition::Modulus;
use crate::error::{Error, Result};
use crate::recurrence::CountCache;
use crate::report::CongruenceReport;

/// Coefficients of `x^0 ..= x^order`; higher terms are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<BigInt>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = BigInt::one();
        s
    }

    /// Builds a series from leading coefficients, padding with zeros and
    /// dropping anything past `order`.
    pub fn from_coeffs<I, T>(order: usize, coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c.into();
        }
        s
    }

    /// Sum of `c·x^e` over `terms`, truncated.
    pub fn from_terms(order: usize, terms: &[(u64, i64)]) -> Self {
        let mut s = Self::zero(order);
        for &(e, c) in terms {
            if e <= order as u64 {
                s.coeffs[e as usize] += c;
            }
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &BigInt {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_order(&self, other: &Series, op: &str) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::InvalidArgument(format!(
                "series {op}: orders {} and {} differ",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_order(other, "add")?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.same_order(other, "sub")?;
        Ok(Series {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    /// Cauchy product, truncated at the common order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_order(other, "mul")?;
        let n = self.order();
        let mut out = Series::zero(n);
        let rhs: Vec<(usize, &BigInt)> = other
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &rhs {
                if i + j > n {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: i64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `a(x) -> a(x^k)`, truncated at the same order.
    pub fn substitute_power(&self, k: u64) -> Result<Series> {
        if k == 0 {
            return Err(Error::InvalidArgument(
                "substitute_power needs k >= 1".to_string(),
            ));
        }
        let n = self.order();
        let mut out = Series::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            match (j as u64).checked_mul(k) {
                Some(e) if e <= n as u64 => out.coeffs[e as usize] = c.clone(),
                _ => break,
            }
        }
        Ok(out)
    }
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}x")?,
                _ => write!(f, "{c}x^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `1/(1 - x^k) = Σ_j x^{kj}`.
pub fn geometric_inverse(k: u64, order: usize) -> Result<Series> {
    if k == 0 {
        return Err(Error::InvalidArgument(
            "geometric_inverse needs k >= 1".to_string(),
        ));
    }
    let mut s = Series::zero(order);
    let mut e = 0u64;
    while e <= order as u64 {
        s.coeffs[e as usize] = BigInt::one();
        e = match e.checked_add(k) {
            Some(next) => next,
            None => break,
        };
    }
    Ok(s)
}

/// `1/(1 - x^k)`, or just 1 when `x^k` lies past the order.
fn geometric_or_one(k: Option<u64>, order: usize) -> Series {
    match k {
        Some(k) if k <= order as u64 => geometric_inverse(k, order).expect("k >= 1"),
        _ => Series::one(order),
    }
}

/// `Σ_{r=1}^{m-1} x^{step·r}`.
fn residue_sum(m: u64, step: u64, order: usize) -> Series {
    let terms: Vec<(u64, i64)> = (1..m)
        .filter_map(|r| step.checked_mul(r).map(|e| (e, 1)))
        .collect();
    Series::from_terms(order, &terms)
}

/// The outer terms of `Q_m` (without the leading 1), one per `i` with
/// `m^i <= order`. Term `i` counts the one-place compositions whose largest
/// part is `m^i`.
pub fn qm_terms(m: Modulus, order: usize) -> Vec<Series> {
    let mv = m.get();
    let mut terms = Vec::new();
    let mut product = Series::one(order);
    let mut power = Some(1u64);
    while let Some(p) = power.filter(|&p| p <= order as u64) {
        let next = p.checked_mul(mv);
        let tail = geometric_or_one(next, order);
        let s = residue_sum(mv, p, order);
        let with_tail = s.mul(&tail).expect("same order");
        terms.push(with_tail.mul(&product).expect("same order"));

        let factor = Series::one(order)
            .add(&with_tail.scale(2))
            .expect("same order");
        product = product.mul(&factor).expect("same order");
        power = next;
    }
    terms
}

/// `Q_m(x)` to the given order; coefficient `n` is `sp(n, m)`.
pub fn qm_series(m: Modulus, order: usize) -> Series {
    qm_terms(m, order)
        .iter()
        .fold(Series::one(order), |acc, t| acc.add(t).expect("same order"))
}

/// `(1 - x^m) Q_m(x) + Σ x^r - (1 + 2 Σ x^r - x^m) Q_m(x^m)` with
/// `r = 1..m-1`; identically zero when `Q_m` satisfies its functional
/// equation.
pub fn functional_equation_residual(m: Modulus, order: usize) -> Series {
    let mv = m.get();
    let q = qm_series(m, order);
    let q_sub = q.substitute_power(mv).expect("m >= 2");
    let sigma = residue_sum(mv, 1, order);
    let one_minus_xm = Series::from_terms(order, &[(0, 1), (mv, -1)]);
    let rhs_factor = one_minus_xm.add(&sigma.scale(2)).expect("same order");

    let lhs = one_minus_xm
        .mul(&q)
        .and_then(|t| t.add(&sigma))
        .expect("same order");
    let rhs = rhs_factor.mul(&q_sub).expect("same order");
    lhs.sub(&rhs).expect("same order")
}

/// Coefficients of `Q_m` against the recurrence, plus the vanishing of
/// the functional-equation residual, up to `order`.
pub fn check_series(m: Modulus, order: usize) -> CongruenceReport {
    let mv = m.get();
    let mut report =
        CongruenceReport::new("funceq", vec![("m", mv), ("order", order as u64)]);
    let q = qm_series(m, order);
    let mut cache = CountCache::new(m);
    for n in 0..=order {
        let want = BigInt::from(cache.sp(n as u64));
        let got = q.coeff(n);
        report.record(
            n as u64,
            n as u64,
            *got == want,
            || format!("[x^{n}] Q_{mv} = {got}"),
            || format!("sp({n},{mv}) = {want}"),
        );
    }
    let residual = functional_equation_residual(m, order);
    for (n, c) in residual.coeffs().iter().enumerate() {
        report.record(
            n as u64,
            n as u64,
            c.is_zero(),
            || format!("residual coefficient {c}"),
            || "0".to_string(),
        );
    }
    report.finish()
}
