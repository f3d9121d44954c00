//! The weight-preserving bijection between `SP(n, m)` and `OC(n, m)`.
//!
//! A part `t = m^i * h` with `m ∤ h` becomes the run `(m^i)^h` and back.
//! Positions are kept, so the run sizes inherit the distinct, unimodal
//! pattern of the max m-powers.

use std::collections::HashSet;

use crate::composition::{
    runform_violation, semi_m_pell_violation, split_m_power, Composition, Modulus, Run, RunForm,
};
use crate::enumerate::{enumerate_oc, enumerate_sp};
use crate::error::{Error, Result};
use crate::report::CongruenceReport;

pub fn to_oc(c: &Composition, m: Modulus) -> Result<RunForm> {
    if let Some(v) = semi_m_pell_violation(c, m) {
        return Err(Error::NotSemiPell(v));
    }
    let runs = c
        .parts()
        .iter()
        .map(|&t| {
            let (base, mult) = split_m_power(t, m.get());
            Run::new(base, mult)
        })
        .collect();
    Ok(RunForm::new(runs))
}

pub fn from_oc(r: &RunForm, m: Modulus) -> Result<Composition> {
    if let Some(v) = runform_violation(r, m) {
        return Err(Error::InvalidRunForm(v));
    }
    Composition::new(r.runs().iter().map(|run| run.base * run.mult).collect())
}

/// Checks both round trips on the full enumerations of weight `n`, and
/// that `to_oc` maps `SP(n, m)` onto `OC(n, m)`.
pub fn roundtrip_check(n: u64, m: Modulus) -> CongruenceReport {
    let mut report = CongruenceReport::new("roundtrip", vec![("m", m.get()), ("n", n)]);
    let sp = enumerate_sp(n, m);
    let oc = enumerate_oc(n, m);
    let oc_set: HashSet<&RunForm> = oc.iter().collect();

    let mut image = HashSet::with_capacity(sp.len());
    for c in &sp {
        match to_oc(c, m) {
            Ok(r) => {
                let back = from_oc(&r, m);
                let ok = back.as_ref().is_ok_and(|b| b == c);
                report.record(
                    n,
                    n,
                    ok,
                    || format!("{c} -> {r} -> {back:?}"),
                    || format!("{c}"),
                );
                report.record(
                    n,
                    n,
                    oc_set.contains(&r),
                    || format!("{c} -> {r}"),
                    || "an element of OC(n,m)".to_string(),
                );
                image.insert(r);
            }
            Err(e) => report.record(n, n, false, || format!("{c}: {e}"), || "in SP".to_string()),
        }
    }
    report.record(
        n,
        n,
        image.len() == sp.len() && image.len() == oc.len(),
        || format!("|image| = {}, |SP| = {}", image.len(), sp.len()),
        || format!("|OC| = {}", oc.len()),
    );

    for r in &oc {
        let back = from_oc(r, m).and_then(|c| to_oc(&c, m));
        let ok = back.as_ref().is_ok_and(|b| b == r);
        report.record(n, n, ok, || format!("{r} -> {back:?}"), || format!("{r}"));
    }
    report.finish()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::SemiPellViolation;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn c(parts: &[u64]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_examples() {
        assert_eq!(
            to_oc(&c(&[14, 3, 18, 27]), m(3)).unwrap().to_string(),
            "(1^14,3,9^2,27)"
        );
        assert_eq!(to_oc(&c(&[3, 2, 4]), m(2)).unwrap().to_string(), "(1^3,2,4)");
        assert_eq!(
            to_oc(&c(&[9]), m(3)).unwrap(),
            RunForm::from_pairs(&[(9, 1)])
        );
    }

    #[test]
    fn inverse_examples() {
        let f = |s: &str, mv| from_oc(&s.parse().unwrap(), m(mv)).unwrap();
        assert_eq!(f("1^5,4", 2), c(&[5, 4]));
        assert_eq!(f("1^13", 3), c(&[13]));
        assert_eq!(f("2,1", 2), c(&[2, 1]));
        assert_eq!(f("()", 2), Composition::empty());
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(
            to_oc(&c(&[2, 9, 4]), m(2)),
            Err(Error::NotSemiPell(SemiPellViolation::NotUnimodal { .. }))
        ));
        assert!(matches!(
            from_oc(&"1^2,2".parse().unwrap(), m(2)),
            Err(Error::InvalidRunForm(_))
        ));
    }

    #[test]
    fn roundtrip_small() {
        let r = roundtrip_check(9, m(2));
        assert!(r.passed(), "{r}");
        assert!(roundtrip_check(13, m(3)).passed());
        for mv in 2..6 {
            assert!(roundtrip_check(0, m(mv)).passed());
        }
    }

    #[test]
    fn one_run_of_ones_at_an_end() {
        for mv in 2..=5 {
            for n in (1..=40).filter(|n| n % mv != 0) {
                for comp in enumerate_sp(n, m(mv)) {
                    let r = to_oc(&comp, m(mv)).unwrap();
                    let ones: Vec<usize> = r
                        .runs()
                        .iter()
                        .enumerate()
                        .filter(|(_, run)| run.base == 1)
                        .map(|(i, _)| i)
                        .collect();
                    assert_eq!(ones.len(), 1, "{r}");
                    assert!(ones[0] == 0 || ones[0] == r.runs().len() - 1, "{r}");
                }
            }
        }
    }
}
