//! Exact evaluation of `sp(n, m)`.
//!
//! ```text
//! sp(0, m) = 1,  sp(n, m) = 1 for 1 <= n < m
//! sp(n, m) = sp(n/m, m)                       if m | n
//! sp(n, m) = 2 sp(n-r, m) + sp(n-m, m)        if n ≡ r (mod m), 0 < r < m
//! ```
//!
//! Evaluation runs on an explicit worklist so that long residue chains
//! (depth about `n/m`) never touch the call stack. Values are memoized per
//! modulus in a [`CountCache`], which can be persisted with [`CacheStore`].

use std::collections::{BTreeMap, HashMap};
use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::composition::Modulus;
use crate::error::{Error, Result};
use crate::report::CongruenceReport;

enum Step {
    Base,
    Scale(u64),
    Residue(u64, u64),
}

fn step(n: u64, m: u64) -> Step {
    if n < m {
        Step::Base
    } else if n.is_multiple_of(m) {
        Step::Scale(n / m)
    } else {
        Step::Residue(n - n % m, n - m)
    }
}

/// Memo table of `sp(n, m)` for one modulus.
#[derive(Clone, Debug)]
pub struct CountCache {
    m: Modulus,
    values: HashMap<u64, BigUint>,
}

impl CountCache {
    pub fn new(m: Modulus) -> Self {
        CountCache {
            m,
            values: HashMap::new(),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.m
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, n: u64) -> Option<&BigUint> {
        self.values.get(&n)
    }

    /// Stored `(n, sp(n, m))` pairs in increasing `n`.
    pub fn entries(&self) -> Vec<(u64, &BigUint)> {
        let mut out: Vec<_> = self.values.iter().map(|(&n, v)| (n, v)).collect();
        out.sort_unstable_by_key(|&(n, _)| n);
        out
    }

    pub fn sp(&mut self, n: u64) -> BigUint {
        self.sp_ref(n).clone()
    }

    pub fn sp_ref(&mut self, n: u64) -> &BigUint {
        if !self.values.contains_key(&n) {
            self.fill(n);
        }
        &self.values[&n]
    }

    fn fill(&mut self, target: u64) {
        let m = self.m.get();
        let mut work = vec![target];
        while let Some(&n) = work.last() {
            if self.values.contains_key(&n) {
                work.pop();
                continue;
            }
            match step(n, m) {
                Step::Base => {
                    self.values.insert(n, BigUint::one());
                    work.pop();
                }
                Step::Scale(k) => match self.values.get(&k) {
                    Some(v) => {
                        let v = v.clone();
                        self.values.insert(n, v);
                        work.pop();
                    }
                    None => work.push(k),
                },
                Step::Residue(a, b) => match (self.values.get(&a), self.values.get(&b)) {
                    (Some(x), Some(y)) => {
                        let v = (x << 1usize) + y;
                        self.values.insert(n, v);
                        work.pop();
                    }
                    (x, y) => {
                        if x.is_none() {
                            work.push(a);
                        }
                        if y.is_none() {
                            work.push(b);
                        }
                    }
                },
            }
        }
    }

    pub(crate) fn insert_loaded(&mut self, n: u64, value: BigUint) {
        self.values.insert(n, value);
    }
}

/// `sp(n, m)` with a throwaway cache.
pub fn sp(n: u64, m: Modulus) -> BigUint {
    CountCache::new(m).sp(n)
}

/// Rows of `sp(n, m)` for `1 <= n <= n_max`, one row per entry of `moduli`.
pub fn sp_table(n_max: u64, moduli: &[Modulus]) -> Vec<Vec<BigUint>> {
    moduli
        .iter()
        .map(|&m| {
            let mut cache = CountCache::new(m);
            (1..=n_max).map(|n| cache.sp(n)).collect()
        })
        .collect()
}

/// Checks `sp(nm+r, m) = 1 + 2 Σ_{j=1}^{n} sp(j, m)` for every
/// `0 <= n <= v_max` and `1 <= r < m`, which also makes the values
/// constant across `r`.
pub fn check_plateau_identity(v_max: u64, m: Modulus) -> Result<CongruenceReport> {
    let mv = m.get();
    let mut report = CongruenceReport::new("plateau", vec![("m", mv), ("vmax", v_max)]);
    let mut cache = CountCache::new(m);
    let mut expected = BigUint::one();
    for n in 0..=v_max {
        if n > 0 {
            expected += cache.sp(n) << 1usize;
        }
        let base = n.checked_mul(mv).ok_or_else(|| overflow("plateau"))?;
        for r in 1..mv {
            let arg = base + r;
            let got = cache.sp(arg);
            report.record(
                n,
                arg,
                got == expected,
                || format!("sp({arg},{mv}) = {got}"),
                || format!("1 + 2*sum = {expected}"),
            );
        }
    }
    Ok(report.finish())
}

fn overflow(what: &str) -> Error {
    Error::InvalidArgument(format!("{what}: argument exceeds 64-bit range"))
}

/// Scaling identities:
///
/// * `sp(m^j (mv + r), m) = 2v + 1` for `0 <= v <= min(v_max, m)`, `1 <= r < m`;
/// * `sp(m^j h, m) = sp(h, m)` for every `h <= m*v_max + m - 1` with `m ∤ h`;
/// * `sp(m^j, m) = 1`;
///
/// all for `0 <= j <= j_max`.
pub fn check_scaling_identity(m: Modulus, j_max: u32, v_max: u64) -> Result<CongruenceReport> {
    let mv = m.get();
    let mut report = CongruenceReport::new(
        "scaling",
        vec![("m", mv), ("jmax", u64::from(j_max)), ("vmax", v_max)],
    );
    let mut cache = CountCache::new(m);
    let scale = |j: u32, h: u64| {
        mv.checked_pow(j)
            .and_then(|p| p.checked_mul(h))
            .ok_or_else(|| overflow("scaling"))
    };
    for j in 0..=j_max {
        for v in 0..=v_max.min(mv) {
            for r in 1..mv {
                let arg = scale(j, mv * v + r)?;
                let got = cache.sp(arg);
                let want = BigUint::from(2 * v + 1);
                report.record(
                    arg,
                    arg,
                    got == want,
                    || format!("sp({arg},{mv}) = {got}"),
                    || format!("2v+1 = {want} (v={v}, r={r}, j={j})"),
                );
            }
        }
        let h_max = mv * v_max + mv - 1;
        for h in (1..=h_max).filter(|h| h % mv != 0) {
            let arg = scale(j, h)?;
            let got = cache.sp(arg);
            let want = cache.sp(h);
            report.record(
                arg,
                arg,
                got == want,
                || format!("sp({arg},{mv}) = {got}"),
                || format!("sp({h},{mv}) = {want}"),
            );
        }
        let arg = scale(j, 1)?;
        let got = cache.sp(arg);
        report.record(
            arg,
            arg,
            got.is_one(),
            || format!("sp({arg},{mv}) = {got}"),
            || "1".to_string(),
        );
    }
    Ok(report.finish())
}

/// Persistent `sp` values for any number of moduli.
///
/// On disk: UTF-8, one record `m n sp(n,m)` per line, three base-10 fields
/// separated by single spaces, sorted by `(m, n)`.
#[derive(Clone, Debug, Default)]
pub struct CacheStore {
    caches: BTreeMap<u64, CountCache>,
}

impl CacheStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn cache_mut(&mut self, m: Modulus) -> &mut CountCache {
        self.caches
            .entry(m.get())
            .or_insert_with(|| CountCache::new(m))
    }

    pub fn cache(&self, m: Modulus) -> Option<&CountCache> {
        self.caches.get(&m.get())
    }

    pub fn len(&self) -> usize {
        self.caches.values().map(CountCache::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn read_from(reader: impl BufRead) -> Result<Self> {
        let mut store = CacheStore::new();
        let mut last: Option<(u64, u64)> = None;
        for (i, line) in reader.lines().enumerate() {
            let line_no = i + 1;
            let line = line?;
            let bad = |message: String| Error::CacheFormat {
                line: line_no,
                message,
            };
            let fields: Vec<&str> = line.split(' ').collect();
            if fields.len() != 3 {
                return Err(bad(format!(
                    "expected 3 space-separated fields, found {}",
                    fields.len()
                )));
            }
            for f in &fields {
                if f.is_empty() || !f.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(bad(format!("field {f:?} is not a base-10 integer")));
                }
            }
            let m: u64 = fields[0]
                .parse()
                .map_err(|_| bad(format!("modulus {:?} out of range", fields[0])))?;
            let n: u64 = fields[1]
                .parse()
                .map_err(|_| bad(format!("index {:?} out of range", fields[1])))?;
            let value: BigUint = fields[2]
                .parse()
                .map_err(|_| bad(format!("value {:?} is not an integer", fields[2])))?;
            let modulus = Modulus::new(m).map_err(|e| bad(e.to_string()))?;
            if value.is_zero() {
                return Err(bad("sp values are positive".to_string()));
            }
            if let Some(prev) = last {
                if (m, n) <= prev {
                    return Err(bad(format!(
                        "record ({m}, {n}) is not after ({}, {})",
                        prev.0, prev.1
                    )));
                }
            }
            last = Some((m, n));
            store.cache_mut(modulus).insert_loaded(n, value);
        }
        Ok(store)
    }

    pub fn write_to(&self, mut writer: impl Write) -> Result<()> {
        for (m, cache) in &self.caches {
            for (n, v) in cache.entries() {
                writeln!(writer, "{m} {n} {v}")?;
            }
        }
        Ok(())
    }

    /// Reads `path`, or returns an empty store when it does not exist.
    pub fn load(path: &Path) -> Result<Self> {
        match fs::File::open(path) {
            Ok(f) => Self::read_from(BufReader::new(f)),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::new()),
            Err(e) => Err(e.into()),
        }
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        fs::write(path, buf)?;
        Ok(())
    }

    /// Recomputes every stored value from scratch; returns the `(m, n)`
    /// keys whose stored value disagrees with the recurrence.
    pub fn verify(&self) -> Vec<(u64, u64)> {
        let mut bad = Vec::new();
        for (&m, cache) in &self.caches {
            let mut fresh = CountCache::new(cache.modulus());
            for (n, v) in cache.entries() {
                if fresh.sp_ref(n) != v {
                    bad.push((m, n));
                }
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(v: u64) -> Modulus {
        Modulus::new(v).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn known_values() {
        assert_eq!(sp(7, m(2)), big(11));
        assert_eq!(sp(13, m(3)), big(13));
        assert_eq!(sp(15, m(2)), big(51));
        assert_eq!(sp(0, m(5)), big(1));
        assert_eq!(sp(1024, m(2)), big(1));
        assert_eq!(sp(36, m(4)), big(5));
    }

    #[test]
    fn first_ten_binary() {
        let got: Vec<BigUint> = (1..=10).map(|n| sp(n, m(2))).collect();
        let want: Vec<BigUint> = [1, 1, 3, 1, 5, 3, 11, 1, 13, 5].map(big).to_vec();
        assert_eq!(got, want);
    }

    #[test]
    fn table_rows() {
        let rows = sp_table(15, &[m(4), m(6)]);
        let want4 = [1, 1, 1, 1, 3, 3, 3, 1, 5, 5, 5, 1, 7, 7, 7].map(big).to_vec();
        let want6 = [1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 1, 5, 5, 5].map(big).to_vec();
        assert_eq!(rows[0], want4);
        assert_eq!(rows[1], want6);
        assert_eq!(sp_table(3, &[m(2)])[0], [1, 1, 3].map(big).to_vec());
    }

    #[test]
    fn deep_chain_does_not_recurse() {
        let v = sp(1_000_001, m(2));
        assert!(v.bit(0), "sp is odd");
    }

    #[test]
    fn warm_and_cold_agree() {
        let mut warm = CountCache::new(m(3));
        for n in 0..500 {
            warm.sp(n);
        }
        for n in (0..500).rev() {
            assert_eq!(warm.sp(n), sp(n, m(3)));
        }
    }

    #[test]
    fn plateau_examples() {
        let mut c3 = CountCache::new(m(3));
        assert_eq!(c3.sp(10), big(7));
        assert_eq!(c3.sp(11), big(7));
        let r = check_plateau_identity(40, m(3)).unwrap();
        assert!(r.passed(), "{r}");
        assert_eq!(r.checked, 41 * 2);
        let r5 = check_plateau_identity(0, m(5)).unwrap();
        assert!(r5.passed());
        assert_eq!(r5.covered, vec![1, 2, 3, 4]);
    }

    #[test]
    fn scaling_examples() {
        assert_eq!(sp(4, m(3)), big(3));
        assert_eq!(sp(8, m(2)), big(1));
        let r = check_scaling_identity(m(4), 3, 4).unwrap();
        assert!(r.passed(), "{r}");
        assert!(r.covered.contains(&36));
        assert!(check_scaling_identity(m(2), 70, 1).is_err());
    }

    #[test]
    fn cache_file_round_trip() {
        let mut store = CacheStore::new();
        store.cache_mut(m(3)).sp(40);
        store.cache_mut(m(2)).sp(15);
        let mut buf = Vec::new();
        store.write_to(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("2 "));
        assert!(text.lines().all(|l| !l.ends_with(' ')));
        let loaded = CacheStore::read_from(buf.as_slice()).unwrap();
        assert_eq!(loaded.len(), store.len());
        assert!(loaded.verify().is_empty());
        let mut again = Vec::new();
        loaded.write_to(&mut again).unwrap();
        assert_eq!(again, buf);
    }

    #[test]
    fn cache_file_rejects_malformed() {
        let line_of = |text: &str| match CacheStore::read_from(text.as_bytes()) {
            Err(Error::CacheFormat { line, .. }) => line,
            other => panic!("expected format error, got {other:?}"),
        };
        assert_eq!(line_of("2 1 1\n2 3 3 \n"), 2);
        assert_eq!(line_of("2 1 1\n2  3 3\n"), 2);
        assert_eq!(line_of("2 3 3\n2 1 1\n"), 2);
        assert_eq!(line_of("1 3 3\n"), 1);
        assert_eq!(line_of("2 3 x\n"), 1);
        assert_eq!(line_of("2 3 -3\n"), 1);
        assert_eq!(line_of("2 3 3\n\n"), 2);
        assert_eq!(line_of("2 3 0\n"), 1);
        assert!(CacheStore::read_from("".as_bytes()).unwrap().is_empty());
    }

    #[test]
    fn verify_spots_tampering() {
        let store = CacheStore::read_from("2 7 11\n2 9 15\n".as_bytes()).unwrap();
        assert_eq!(store.verify(), vec![(2, 9)]);
    }
}
