//! Sweeps of the parity, mod 4 and mod 3 properties of `sp(n, m)`.
//!
//! Every checker pulls its values from [`CountCache`]; none of them uses a
//! shortcut formula for `sp`. Each returns a [`CongruenceReport`] whose
//! violation list is empty when the property held on the whole range.

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::composition::Modulus;
use crate::error::{Error, Result};
use crate::recurrence::CountCache;

pub use crate::report::{CongruenceReport, Violation};

fn residue(v: &BigUint, k: u32) -> u32 {
    (v % k).to_u32().expect("residue fits")
}

fn modulus(m: u64) -> Modulus {
    Modulus::new(m).expect("literal modulus >= 2")
}

/// `sp(n, m)` is odd for `0 <= n <= n_max`.
pub fn check_oddness(n_max: u64, m: Modulus) -> CongruenceReport {
    let mut report = CongruenceReport::new("oddness", vec![("m", m.get()), ("nmax", n_max)]);
    let mut cache = CountCache::new(m);
    for n in 0..=n_max {
        let v = cache.sp_ref(n);
        let ok = residue(v, 2) == 1;
        report.record(n, n, ok, || v.to_string(), || "odd".to_string());
    }
    report.finish()
}

/// `sp(2n+1, 2) ≡ 2n+1 (mod 4)` for `0 <= n <= n_max`.
pub fn check_mod4_base(n_max: u64) -> CongruenceReport {
    let mut report = CongruenceReport::new("mod4", vec![("nmax", n_max)]);
    let mut cache = CountCache::new(modulus(2));
    for n in 0..=n_max {
        let arg = 2 * n + 1;
        let want = (arg % 4) as u32;
        let v = cache.sp_ref(arg);
        let got = residue(v, 4);
        report.record(
            n,
            arg,
            got == want,
            || format!("sp({arg}) = {v} ≡ {got}"),
            || format!("≡ {want} (mod 4)"),
        );
    }
    report.finish()
}

/// `sp(2mj+1, m) ≡ 1` and `sp(2mj+m+1, m) ≡ 3 (mod 4)` for `0 <= j <= j_max`.
pub fn check_mod4_general(m: Modulus, j_max: u64) -> CongruenceReport {
    let mv = m.get();
    let mut report =
        CongruenceReport::new("mod4-general", vec![("m", mv), ("jmax", j_max)]);
    let mut cache = CountCache::new(m);
    for j in 0..=j_max {
        for (arg, want) in [(2 * mv * j + 1, 1), (2 * mv * j + mv + 1, 3)] {
            let v = cache.sp_ref(arg);
            let got = residue(v, 4);
            report.record(
                j,
                arg,
                got == want,
                || format!("sp({arg},{mv}) = {v} ≡ {got}"),
                || format!("≡ {want} (mod 4)"),
            );
        }
    }
    report.finish()
}

fn require_one_mod_three(m: Modulus, what: &str) -> Result<()> {
    let mv = m.get();
    if mv < 4 || mv % 3 != 1 {
        return Err(Error::InvalidArgument(format!(
            "{what} needs m >= 4 with m ≡ 1 (mod 3), got m = {mv}"
        )));
    }
    Ok(())
}

/// `sp(m²j + m + r, m) ≡ 0 (mod 3)` for `0 <= j <= j_max`, `1 <= r < m`;
/// requires `m ≡ 1 (mod 3)`, `m >= 4`.
pub fn check_mod3(m: Modulus, j_max: u64) -> Result<CongruenceReport> {
    require_one_mod_three(m, "mod3")?;
    let mv = m.get();
    let mut report = CongruenceReport::new("mod3", vec![("m", mv), ("jmax", j_max)]);
    let mut cache = CountCache::new(m);
    for j in 0..=j_max {
        for r in 1..mv {
            let arg = mv * mv * j + mv + r;
            let v = cache.sp_ref(arg);
            let got = residue(v, 3);
            report.record(
                j,
                arg,
                got == 0,
                || format!("sp({arg},{mv}) = {v} ≡ {got}"),
                || "≡ 0 (mod 3)".to_string(),
            );
        }
    }
    Ok(report.finish())
}

/// `Σ_{i=1}^{mj+1} sp(i, m) ≡ 1 (mod 3)` for `0 <= j <= j_max`; requires
/// `m ≡ 1 (mod 3)`, `m >= 4`.
pub fn check_partial_sum_mod3(m: Modulus, j_max: u64) -> Result<CongruenceReport> {
    require_one_mod_three(m, "partial-sum")?;
    let mv = m.get();
    let mut report = CongruenceReport::new("partial-sum", vec![("m", mv), ("jmax", j_max)]);
    let mut cache = CountCache::new(m);
    let mut sum = BigUint::default();
    let mut next = 1u64;
    for j in 0..=j_max {
        let upper = mv * j + 1;
        while next <= upper {
            sum += cache.sp_ref(next);
            next += 1;
        }
        let got = residue(&sum, 3);
        report.record(
            j,
            upper,
            got == 1,
            || format!("sum to {upper} = {sum} ≡ {got}"),
            || "≡ 1 (mod 3)".to_string(),
        );
    }
    Ok(report.finish())
}

/// Number of partitions of `n` into powers of 2 using exactly two distinct
/// part sizes, each an odd number of times.
pub fn ob_two_size_count(n: u64) -> u64 {
    let mut powers = Vec::new();
    let mut p = 1u64;
    while p <= n {
        powers.push(p);
        p *= 2;
    }
    let mut count = 0;
    for (a, &small) in powers.iter().enumerate() {
        for &large in &powers[a + 1..] {
            let mut v = 1;
            while v * large < n {
                let rest = n - v * large;
                if rest.is_multiple_of(small) && (rest / small) % 2 == 1 {
                    count += 1;
                }
                v += 2;
            }
        }
    }
    count
}

/// For odd `n <= n_max` with `n ≡ 2i+1 (mod 4)`, the two-size count of
/// [`ob_two_size_count`] is `≡ i (mod 2)`.
pub fn check_ob_parity(n_max: u64) -> CongruenceReport {
    let mut report = CongruenceReport::new("ob-parity", vec![("nmax", n_max)]);
    for n in (1..=n_max).step_by(2) {
        let i = (n % 4) / 2;
        let count = ob_two_size_count(n);
        report.record(
            n,
            n,
            count % 2 == i,
            || format!("{count} two-size partitions"),
            || format!("≡ {i} (mod 2)"),
        );
    }
    report.finish()
}

/// One of the individually listed congruences: `sp(step·j + offset, m) ≡
/// residue (mod modulus)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialCase {
    pub label: &'static str,
    pub m: u64,
    pub step: u64,
    pub offset: u64,
    pub modulus: u32,
    pub residue: u32,
}

pub const SPECIAL_CASES: [SpecialCase; 7] = [
    SpecialCase { label: "1a", m: 3, step: 6, offset: 1, modulus: 4, residue: 1 },
    SpecialCase { label: "1b", m: 3, step: 6, offset: 4, modulus: 4, residue: 3 },
    SpecialCase { label: "2a", m: 4, step: 8, offset: 1, modulus: 4, residue: 1 },
    SpecialCase { label: "2b", m: 4, step: 8, offset: 5, modulus: 4, residue: 3 },
    SpecialCase { label: "1", m: 4, step: 16, offset: 5, modulus: 3, residue: 0 },
    SpecialCase { label: "2", m: 7, step: 49, offset: 8, modulus: 3, residue: 0 },
    SpecialCase { label: "3", m: 10, step: 100, offset: 11, modulus: 3, residue: 0 },
];

/// Replays [`SPECIAL_CASES`] for `0 <= j <= j_max`.
pub fn check_special_cases(j_max: u64) -> CongruenceReport {
    let mut report = CongruenceReport::new("special-cases", vec![("jmax", j_max)]);
    for case in SPECIAL_CASES {
        let mut cache = CountCache::new(modulus(case.m));
        for j in 0..=j_max {
            let arg = case.step * j + case.offset;
            let v = cache.sp_ref(arg);
            let got = residue(v, case.modulus);
            report.record(
                j,
                arg,
                got == case.residue,
                || format!("({}) sp({arg},{}) = {v} ≡ {got}", case.label, case.m),
                || format!("≡ {} (mod {})", case.residue, case.modulus),
            );
        }
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    #[test]
    fn oddness_small() {
        let r = check_oddness(10, m(2));
        assert!(r.passed());
        assert_eq!(r.checked, 11);
        assert!(check_oddness(15, m(3)).passed());
        assert_eq!(check_oddness(0, m(7)).checked, 1);
    }

    #[test]
    fn mod4_examples() {
        let mut c2 = CountCache::new(m(2));
        assert_eq!(residue(&c2.sp(3), 4), 3);
        assert_eq!(residue(&c2.sp(7), 4), 3);
        assert_eq!(residue(&c2.sp(9), 4), 1);
        assert!(check_mod4_base(100).passed());

        let mut c3 = CountCache::new(m(3));
        assert_eq!(c3.sp(1), BigUint::from(1u32));
        assert_eq!(c3.sp(4), BigUint::from(3u32));
        let mut c4 = CountCache::new(m(4));
        assert_eq!(c4.sp(9), BigUint::from(5u32));
        assert_eq!(residue(&c2.sp(9), 4), 1);
        for mv in 2..=6 {
            assert!(check_mod4_general(m(mv), 30).passed());
        }
    }

    #[test]
    fn general_mod4_covers_base_at_m2() {
        let general = check_mod4_general(m(2), 50);
        let base = check_mod4_base(101);
        assert_eq!(general.covered, base.covered);
    }

    #[test]
    fn mod3_examples() {
        let mut c4 = CountCache::new(m(4));
        assert_eq!(c4.sp(5), BigUint::from(3u32));
        assert_eq!(c4.sp(7), BigUint::from(3u32));
        let mut c7 = CountCache::new(m(7));
        assert_eq!(residue(&c7.sp(57), 3), 0);
        let r = check_mod3(m(4), 20).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 21 * 3);
    }

    #[test]
    fn mod3_hypothesis() {
        for bad in [2, 3, 5, 6, 8, 9] {
            assert!(matches!(check_mod3(m(bad), 3), Err(Error::InvalidArgument(_))));
            assert!(check_partial_sum_mod3(m(bad), 3).is_err());
        }
    }

    #[test]
    fn partial_sums() {
        // 1+1+1+1+3 and 1+1+1+1+3+3+3+1+5
        let mut c4 = CountCache::new(m(4));
        let s5: BigUint = (1..=5).map(|i| c4.sp(i)).sum();
        let s9: BigUint = (1..=9).map(|i| c4.sp(i)).sum();
        assert_eq!(s5, BigUint::from(7u32));
        assert_eq!(s9, BigUint::from(19u32));
        let r = check_partial_sum_mod3(m(7), 2).unwrap();
        assert!(r.passed());
        assert_eq!(r.covered, vec![1, 8, 15]);
    }

    #[test]
    fn ob_counts() {
        assert_eq!(ob_two_size_count(5), 2);
        assert_eq!(ob_two_size_count(3), 1);
        assert_eq!(ob_two_size_count(1), 0);
        assert!(check_ob_parity(99).passed());
    }

    #[test]
    fn special_case_examples() {
        let mut c3 = CountCache::new(m(3));
        assert_eq!(c3.sp(7), BigUint::from(5u32));
        let mut c4 = CountCache::new(m(4));
        assert_eq!(c4.sp(13), BigUint::from(7u32));
        assert_eq!(c4.sp(5), BigUint::from(3u32));
        let r = check_special_cases(20);
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 7 * 21);
    }
}
