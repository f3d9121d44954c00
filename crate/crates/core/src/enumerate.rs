//! Explicit generation of `SP(n, m)` and `OC(n, m)`.
//!
//! [`enumerate_sp`] and [`enumerate_oc`] follow the recursive construction:
//! for `m | n` scale the objects of weight `n/m` by `m`; for `n ≡ r` put `r`
//! (resp. a run `1^r`) at either end of each object of weight `n - r`, and
//! add `m` to the residue part (resp. the 1-run) of each object of weight
//! `n - m`. The two sources are disjoint because the first always has a
//! residue part equal to `r < m` and the second one larger than `m`; the
//! generators check this rather than assume it.
//!
//! [`oracle_sp`] and [`oracle_oc`] are independent exhaustive searches used
//! to cross-check the constructions. Both refuse inputs above a size guard.
//!
//! Output order is lexicographic on the part sequence (flattened for run
//! forms).

use std::collections::{HashMap, HashSet};

use crate::composition::{
    is_power_of, parts_are_semi_m_pell, Composition, Modulus, Run, RunForm,
};
use crate::error::{Error, Result};
use crate::report::CongruenceReport;

pub const ORACLE_SP_MAX_N: u64 = 24;
pub const ORACLE_OC_MAX_N: u64 = 60;

fn assert_distinct<T: std::hash::Hash + Eq + std::fmt::Debug>(items: &[T], what: &str, n: u64) {
    let mut seen = HashSet::with_capacity(items.len());
    for it in items {
        assert!(seen.insert(it), "{what}({n}) produced {it:?} twice");
    }
}

struct SpBuilder {
    m: u64,
    memo: HashMap<u64, Vec<Vec<u64>>>,
}

impl SpBuilder {
    fn get(&mut self, n: u64) -> &Vec<Vec<u64>> {
        if !self.memo.contains_key(&n) {
            let v = self.build(n);
            self.memo.insert(n, v);
        }
        &self.memo[&n]
    }

    fn build(&mut self, n: u64) -> Vec<Vec<u64>> {
        let m = self.m;
        if n == 0 {
            return vec![Vec::new()];
        }
        if n < m {
            return vec![vec![n]];
        }
        if n.is_multiple_of(m) {
            return self
                .get(n / m)
                .iter()
                .map(|c| c.iter().map(|p| p * m).collect())
                .collect();
        }
        let r = n % m;
        let mut out = Vec::new();
        for c in self.get(n - r) {
            let mut front = Vec::with_capacity(c.len() + 1);
            front.push(r);
            front.extend_from_slice(c);
            let mut back = c.clone();
            back.push(r);
            out.push(front);
            out.push(back);
        }
        for c in self.get(n - m) {
            let mut hits = c.iter().enumerate().filter(|(_, &p)| p % m == r);
            let (idx, _) = hits
                .next()
                .unwrap_or_else(|| panic!("member {c:?} of SP({}) has no part ≡ {r}", n - m));
            assert!(
                hits.next().is_none(),
                "member {c:?} of SP({}) has several parts ≡ {r}",
                n - m
            );
            let mut grown = c.clone();
            grown[idx] += m;
            out.push(grown);
        }
        assert_distinct(&out, "SP", n);
        out
    }
}

/// All semi-m-Pell compositions of `n`, in canonical order.
pub fn enumerate_sp(n: u64, m: Modulus) -> Vec<Composition> {
    let mut builder = SpBuilder {
        m: m.get(),
        memo: HashMap::new(),
    };
    let mut out: Vec<Vec<u64>> = builder.get(n).clone();
    out.sort_unstable();
    out.into_iter().map(Composition::from_parts_unchecked).collect()
}

struct OcBuilder {
    m: u64,
    memo: HashMap<u64, Vec<Vec<Run>>>,
}

impl OcBuilder {
    fn get(&mut self, n: u64) -> &Vec<Vec<Run>> {
        if !self.memo.contains_key(&n) {
            let v = self.build(n);
            self.memo.insert(n, v);
        }
        &self.memo[&n]
    }

    fn build(&mut self, n: u64) -> Vec<Vec<Run>> {
        let m = self.m;
        if n == 0 {
            return vec![Vec::new()];
        }
        if n < m {
            return vec![vec![Run::new(1, n)]];
        }
        if n.is_multiple_of(m) {
            return self
                .get(n / m)
                .iter()
                .map(|f| f.iter().map(|r| Run::new(r.base * m, r.mult)).collect())
                .collect();
        }
        let r = n % m;
        let mut out = Vec::new();
        for f in self.get(n - r) {
            debug_assert!(f.iter().all(|run| run.base != 1));
            let mut front = Vec::with_capacity(f.len() + 1);
            front.push(Run::new(1, r));
            front.extend_from_slice(f);
            let mut back = f.clone();
            back.push(Run::new(1, r));
            out.push(front);
            out.push(back);
        }
        for f in self.get(n - m) {
            let last = f.len().saturating_sub(1);
            let idx = match (f.first(), f.last()) {
                (Some(a), _) if a.base == 1 => 0,
                (_, Some(b)) if b.base == 1 => last,
                _ => panic!("member {f:?} of OC({}) has no boundary 1-run", n - m),
            };
            let mut grown = f.clone();
            grown[idx].mult += m;
            out.push(grown);
        }
        assert_distinct(&out, "OC", n);
        out
    }
}

fn sort_runforms(forms: &mut [RunForm]) {
    forms.sort_by(|a, b| a.cmp_flattened(b));
}

/// All one-place m-power compositions of `n`, in canonical order.
pub fn enumerate_oc(n: u64, m: Modulus) -> Vec<RunForm> {
    let mut builder = OcBuilder {
        m: m.get(),
        memo: HashMap::new(),
    };
    let mut out: Vec<RunForm> = builder.get(n).iter().cloned().map(RunForm::new).collect();
    sort_runforms(&mut out);
    out
}

/// Calls `f` with every composition of `n` (all `2^(n-1)` of them, or the
/// empty one for `n = 0`). The slice is reused between calls.
pub fn for_each_composition(n: u64, mut f: impl FnMut(&[u64])) {
    if n == 0 {
        f(&[]);
        return;
    }
    assert!(n <= 63, "composition sweep over n = {n} is not feasible");
    let mut parts = Vec::with_capacity(n as usize);
    // Bit i of the mask set: a cut after unit i+1.
    for mask in 0u64..(1u64 << (n - 1)) {
        parts.clear();
        let mut run = 1;
        for i in 0..n - 1 {
            if mask >> i & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        f(&parts);
    }
}

/// Semi-m-Pell compositions of `n` found by filtering every composition of
/// `n` through the max m-power test.
pub fn oracle_sp(n: u64, m: Modulus) -> Result<Vec<Composition>> {
    if n > ORACLE_SP_MAX_N {
        return Err(Error::ResourceGuard {
            what: "oracle_sp: weight",
            size: n,
            limit: ORACLE_SP_MAX_N,
        });
    }
    let mut out = Vec::new();
    for_each_composition(n, |parts| {
        if parts_are_semi_m_pell(parts, m.get()) {
            out.push(parts.to_vec());
        }
    });
    out.sort_unstable();
    Ok(out.into_iter().map(Composition::from_parts_unchecked).collect())
}

/// One-place m-power compositions of `n` by direct search: pick a set of
/// distinct powers of `m` with multiplicities not divisible by `m` summing
/// to `n`, then place every non-peak run on the left (ascending) or right
/// (descending) of the peak.
pub fn oracle_oc(n: u64, m: Modulus) -> Result<Vec<RunForm>> {
    if n > ORACLE_OC_MAX_N {
        return Err(Error::ResourceGuard {
            what: "oracle_oc: weight",
            size: n,
            limit: ORACLE_OC_MAX_N,
        });
    }
    let m = m.get();
    let mut powers = vec![1u64];
    while let Some(next) = powers.last().unwrap().checked_mul(m).filter(|&p| p <= n) {
        powers.push(next);
    }
    powers.reverse();

    let mut out = Vec::new();
    let mut chosen: Vec<Run> = Vec::new();
    choose_runs(&powers, m, n, &mut chosen, &mut out);
    for f in &out {
        debug_assert!(f.runs().iter().all(|r| is_power_of(r.base, m) && r.mult % m != 0));
    }
    sort_runforms(&mut out);
    Ok(out)
}

// `powers` is descending; `chosen` collects runs with descending bases.
fn choose_runs(powers: &[u64], m: u64, rem: u64, chosen: &mut Vec<Run>, out: &mut Vec<RunForm>) {
    if rem == 0 {
        arrange(chosen, out);
        return;
    }
    let Some((&p, rest)) = powers.split_first() else {
        return;
    };
    choose_runs(rest, m, rem, chosen, out);
    let mut mult = 1;
    while mult * p <= rem {
        if mult % m != 0 {
            chosen.push(Run::new(p, mult));
            choose_runs(rest, m, rem - mult * p, chosen, out);
            chosen.pop();
        }
        mult += 1;
    }
}

fn arrange(chosen: &[Run], out: &mut Vec<RunForm>) {
    let Some((&peak, others)) = chosen.split_first() else {
        out.push(RunForm::default());
        return;
    };
    let k = others.len();
    for mask in 0u64..(1u64 << k) {
        // others are descending: left side reads them in reverse.
        let mut runs = Vec::with_capacity(k + 1);
        runs.extend((0..k).rev().filter(|i| mask >> i & 1 == 1).map(|i| others[i]));
        runs.push(peak);
        runs.extend((0..k).filter(|i| mask >> i & 1 == 0).map(|i| others[i]));
        out.push(RunForm::new(runs));
    }
}

/// Compares both constructions with their oracles at weight `n`.
pub fn oracle_check(n: u64, m: Modulus) -> Result<CongruenceReport> {
    let mut report = CongruenceReport::new("oracle", vec![("m", m.get()), ("n", n)]);
    if n <= ORACLE_SP_MAX_N {
        let built = enumerate_sp(n, m);
        let found = oracle_sp(n, m)?;
        report.record(
            n,
            n,
            built == found,
            || format!("SP construction has {} members", built.len()),
            || format!("oracle's {}", found.len()),
        );
    }
    let built = enumerate_oc(n, m);
    let found = oracle_oc(n, m)?;
    report.record(
        n,
        n,
        built == found,
        || format!("OC construction has {} members", built.len()),
        || format!("oracle's {}", found.len()),
    );
    Ok(report.finish())
}
