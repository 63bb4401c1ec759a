use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::RwLock;

use num_bigint::{BigInt, BigUint};

use crate::algebra::Composition;
use crate::error::{MzvError, Result};

use super::bigreal::BigReal;

/// One cached value: a composition evaluated at `digits` decimal digits,
/// stored as decimal strings so it round-trips bit-exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CacheRecord {
    pub index: Composition,
    pub digits: u32,
    pub value: String,
    pub err: String,
}

impl CacheRecord {
    /// Encodes `x` with `digits + 10` fractional places; the stored error
    /// covers the error of `x` plus the decimal rounding.
    pub fn from_value(index: Composition, digits: u32, x: &BigReal) -> CacheRecord {
        let places = digits + 10;
        let value = x.to_fixed_decimal(places);
        // half a unit in the last place, in ulps of x, rounded up
        let ten = BigUint::from(10u32).pow(places);
        let half_ulp = ((BigUint::from(1u32) << x.bits()) + &ten * 2u32 - 1u32) / (&ten * 2u32);
        let e = BigReal::from_parts(BigInt::from(0), x.err_ulps() + half_ulp, x.bits());
        CacheRecord { index, digits, value, err: e.err_sci(3) }
    }

    /// The stored value at `bits` of working precision.
    pub fn to_value(&self, bits: u32) -> Result<BigReal> {
        BigReal::from_decimal(&self.value, &self.err, bits)
    }

    pub fn to_line(&self) -> String {
        format!("index={};digits={};value={};err={}", self.index, self.digits, self.value, self.err)
    }

    pub fn parse_line(line: &str) -> std::result::Result<CacheRecord, String> {
        let fields: Vec<&str> = line.split(';').collect();
        if fields.len() != 4 {
            return Err(format!("expected 4 fields, found {}", fields.len()));
        }
        let field = |i: usize, key: &str| -> std::result::Result<&str, String> {
            fields[i]
                .strip_prefix(key)
                .and_then(|r| r.strip_prefix('='))
                .ok_or_else(|| format!("field {} should be {key}=...", i + 1))
        };
        let index: Composition = field(0, "index")?.parse().map_err(|e| format!("{e}"))?;
        if index.is_empty() {
            return Err("empty index".into());
        }
        let digits: u32 = field(1, "digits")?.parse().map_err(|e| format!("bad digits: {e}"))?;
        let value = field(2, "value")?.to_string();
        let err = field(3, "err")?.to_string();
        super::bigreal::parse_decimal(&value).map_err(|e| format!("{e}"))?;
        super::bigreal::parse_decimal(&err).map_err(|e| format!("{e}"))?;
        Ok(CacheRecord { index, digits, value, err })
    }
}

/// In-memory value cache keyed by composition, holding the highest-precision
/// record seen for each one.
#[derive(Debug, Default)]
pub struct ValueCache {
    map: RwLock<BTreeMap<Composition, CacheRecord>>,
}

impl ValueCache {
    pub fn new() -> ValueCache {
        ValueCache::default()
    }

    /// A record with at least `digits` digits, if one is cached.
    pub fn get(&self, index: &Composition, digits: u32) -> Option<CacheRecord> {
        let map = self.map.read().expect("cache lock poisoned");
        map.get(index).filter(|r| r.digits >= digits).cloned()
    }

    /// Inserts `rec` unless an entry with at least as many digits exists.
    /// Returns whether the cache changed.
    pub fn insert(&self, rec: CacheRecord) -> bool {
        let mut map = self.map.write().expect("cache lock poisoned");
        match map.get(&rec.index) {
            Some(old) if old.digits >= rec.digits => false,
            _ => {
                map.insert(rec.index.clone(), rec);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.read().expect("cache lock poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// All records in index order.
    pub fn records(&self) -> Vec<CacheRecord> {
        self.map.read().expect("cache lock poisoned").values().cloned().collect()
    }

    /// Merges records from a file. The whole file is parsed before anything
    /// is inserted, so a malformed line leaves the cache untouched.
    pub fn load(&self, path: &Path) -> Result<usize> {
        let text = fs::read_to_string(path)?;
        let mut parsed = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let rec = CacheRecord::parse_line(line)
                .map_err(|msg| MzvError::Parse { line: i + 1, msg })?;
            parsed.push(rec);
        }
        let n = parsed.len();
        for rec in parsed {
            self.insert(rec);
        }
        Ok(n)
    }

    /// Like [`ValueCache::load`] but a missing file is an empty cache.
    pub fn load_if_exists(&self, path: &Path) -> Result<usize> {
        if path.exists() {
            self.load(path)
        } else {
            Ok(0)
        }
    }

    /// Writes every record, sorted by index, via a temporary file and rename.
    pub fn store(&self, path: &Path) -> Result<()> {
        let mut body = String::new();
        for rec in self.records() {
            body.push_str(&rec.to_line());
            body.push('\n');
        }
        let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let tmp = dir.join(format!(".{name}.tmp{}", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            f.write_all(body.as_bytes())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(idx: &[u32], digits: u32) -> CacheRecord {
        CacheRecord {
            index: Composition::from_parts(idx),
            digits,
            value: format!("1.{}", "5".repeat(digits as usize)),
            err: "1e-30".into(),
        }
    }

    #[test]
    fn line_round_trip() {
        let r = rec(&[2, 1], 20);
        assert_eq!(r.to_line(), format!("index=2,1;digits=20;value={};err=1e-30", r.value));
        assert_eq!(CacheRecord::parse_line(&r.to_line()).unwrap(), r);
    }

    #[test]
    fn bad_lines() {
        for l in ["index=2;digits=x;value=1;err=0", "index=1,2", "digits=3;index=2;value=1;err=0", "index=;digits=3;value=1;err=0"] {
            assert!(CacheRecord::parse_line(l).is_err(), "{l}");
        }
    }

    #[test]
    fn higher_precision_wins() {
        let c = ValueCache::new();
        assert!(c.insert(rec(&[3], 40)));
        assert!(!c.insert(rec(&[3], 20)));
        assert_eq!(c.get(&Composition::from_parts(&[3]), 30).unwrap().digits, 40);
        assert!(c.get(&Composition::from_parts(&[3]), 50).is_none());
    }

    #[test]
    fn load_is_atomic() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.txt");
        fs::write(&p, format!("{}\nnot a record\n", rec(&[2], 20).to_line())).unwrap();
        let c = ValueCache::new();
        match c.load(&p) {
            Err(MzvError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(c.is_empty());
    }

    #[test]
    fn record_covers_value() {
        let q = num_rational::BigRational::new(1.into(), 3.into());
        let x = BigReal::from_rational(&q, 200);
        let r = CacheRecord::from_value(Composition::from_parts(&[2]), 20, &x);
        assert_eq!(r.value.len(), 2 + 30);
        assert!(r.to_value(200).unwrap().contains(&q));
    }
}
