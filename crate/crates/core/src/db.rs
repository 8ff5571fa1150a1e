//! JSON results database with one certificate file per bound.
//!
//! The database lives in a single file; certificates go to a sibling
//! `<file>.certs/` directory and are referenced by relative path.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::certificate::{write_atomic, CertVerdict, Certificate};
use crate::error::{Error, Result};
use crate::kind::{Kind, KindSpec};
use crate::search::NumberResult;

pub const DB_SCHEMA_VERSION: u32 = 1;

/// How much re-checking happens when a database is opened.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrity {
    Off,
    /// Files exist and Bad colorings re-verify.
    Certificates,
    /// Also rerun the exhaustive searches.
    Deep,
}

/// Key of a result: `hj;h=2;c=2;m=1`, with `;n=..` for block-size kinds and
/// `;nodiv` when the divisibility filter was off for a divisible family.
pub fn db_key(spec: &KindSpec, divisibility: bool) -> String {
    let mut key = format!("{};h={};c={}", spec.kind.name(), spec.h, spec.c);
    if spec.kind != Kind::Oplus {
        key.push_str(&format!(";m={}", spec.kind.m()));
    }
    if let Some(n) = spec.kind.block_size() {
        key.push_str(&format!(";n={n}"));
    }
    if !divisibility && spec.kind.divisible_family() {
        key.push_str(";nodiv");
    }
    key
}

/// A result together with its evidence.
#[derive(Clone, Debug, PartialEq)]
pub struct DbResult {
    pub spec: KindSpec,
    pub divisibility: bool,
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: Option<usize>,
    /// Bad coloring at a size below `lower`.
    pub lower_cert: Option<Certificate>,
    /// Exhaustion record at `upper`.
    pub upper_cert: Option<Certificate>,
}

impl DbResult {
    pub fn from_number(r: &NumberResult) -> Self {
        Self {
            spec: r.spec,
            divisibility: r.divisibility,
            value: r.value,
            lower: r.lower,
            upper: r.upper,
            lower_cert: r.bad.as_ref().map(|b| Certificate::bad(&r.spec, b.size, &b.coloring, b.stats)),
            upper_cert: r
                .exhaustion
                .as_ref()
                .map(|e| Certificate::exhaustion(&r.spec, e.size, e.stats)),
        }
    }

    /// Checks the certificates against the claimed bounds.
    pub fn check(&self, deep: bool) -> Result<()> {
        let reject = |why: String| Err(Error::RejectedResult(why));
        if let Some(v) = self.value {
            if self.lower != v || self.upper != Some(v) {
                return reject(format!("value {v} disagrees with bounds"));
            }
        }
        if let Some(u) = self.upper {
            if u < self.lower {
                return reject(format!("upper {u} below lower {}", self.lower));
            }
            let Some(cert) = &self.upper_cert else {
                return reject("upper bound without an exhaustion certificate".into());
            };
            if cert.verdict != CertVerdict::NoneExists || cert.k != u {
                return reject(format!("upper certificate does not show size {u}"));
            }
        }
        if let Some(cert) = &self.lower_cert {
            if cert.verdict != CertVerdict::Bad || cert.k >= self.lower {
                return reject(format!("lower certificate does not support {}", self.lower));
            }
        }
        for cert in self.lower_cert.iter().chain(&self.upper_cert) {
            if cert.spec()? != self.spec {
                return reject(format!("certificate for {} filed under {}", cert.spec()?, self.spec));
            }
            cert.verify(deep)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DbEntry {
    pub kind: String,
    pub h: usize,
    pub c: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub divisibility: bool,
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_cert: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub upper_cert: Option<String>,
}

impl DbEntry {
    pub fn spec(&self) -> Result<KindSpec> {
        KindSpec::new(Kind::from_parts(&self.kind, self.m, self.n)?, self.h, self.c)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultsDb {
    pub schema_version: u32,
    /// Seconds since the Unix epoch at the last save.
    pub written_at: u64,
    pub entries: BTreeMap<String, DbEntry>,
    #[serde(skip)]
    path: PathBuf,
}

impl ResultsDb {
    pub fn new(path: &Path) -> Self {
        Self {
            schema_version: DB_SCHEMA_VERSION,
            written_at: 0,
            entries: BTreeMap::new(),
            path: path.to_path_buf(),
        }
    }

    /// Loads `path`, or starts empty if it does not exist.
    pub fn open(path: &Path, integrity: Integrity) -> Result<Self> {
        if path.exists() {
            Self::load(path, integrity)
        } else {
            Ok(Self::new(path))
        }
    }

    pub fn load(path: &Path, integrity: Integrity) -> Result<Self> {
        let mut db: Self = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if db.schema_version != DB_SCHEMA_VERSION {
            return Err(Error::RejectedResult(format!("database schema {}", db.schema_version)));
        }
        db.path = path.to_path_buf();
        if integrity != Integrity::Off {
            for key in db.entries.keys() {
                let r = db.get_key(key)?.expect("key present");
                r.check(integrity == Integrity::Deep)?;
            }
        }
        Ok(db)
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn base_dir(&self) -> PathBuf {
        self.path
            .parent()
            .filter(|p| !p.as_os_str().is_empty())
            .map(Path::to_path_buf)
            .unwrap_or_else(|| PathBuf::from("."))
    }

    /// Directory holding the certificate files, relative to the database.
    fn cert_dir_name(&self) -> String {
        let name = self.path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        format!("{name}.certs")
    }

    /// Verifies `r`, writes its certificates and stores the entry in memory.
    pub fn record(&mut self, r: &DbResult) -> Result<()> {
        r.check(false)?;
        let key = db_key(&r.spec, r.divisibility);
        let stem = key.replace(';', "_").replace('=', "-");
        let write = |cert: &Option<Certificate>, suffix: &str| -> Result<Option<String>> {
            let Some(cert) = cert else { return Ok(None) };
            let rel = format!("{}/{stem}.{suffix}.json", self.cert_dir_name());
            cert.save(&self.base_dir().join(&rel))?;
            Ok(Some(rel))
        };
        let lower_cert = write(&r.lower_cert, "lower")?;
        let upper_cert = write(&r.upper_cert, "upper")?;
        self.entries.insert(
            key,
            DbEntry {
                kind: r.spec.kind.name().into(),
                h: r.spec.h,
                c: r.spec.c,
                m: r.spec.kind.m(),
                n: r.spec.kind.block_size(),
                divisibility: r.divisibility,
                value: r.value,
                lower: r.lower,
                upper: r.upper,
                lower_cert,
                upper_cert,
            },
        );
        Ok(())
    }

    pub fn get(&self, spec: &KindSpec, divisibility: bool) -> Result<Option<DbResult>> {
        self.get_key(&db_key(spec, divisibility))
    }

    pub fn get_key(&self, key: &str) -> Result<Option<DbResult>> {
        let Some(e) = self.entries.get(key) else {
            return Ok(None);
        };
        let read = |rel: &Option<String>| -> Result<Option<Certificate>> {
            rel.as_ref().map(|p| Certificate::load(&self.base_dir().join(p))).transpose()
        };
        Ok(Some(DbResult {
            spec: e.spec()?,
            divisibility: e.divisibility,
            value: e.value,
            lower: e.lower,
            upper: e.upper,
            lower_cert: read(&e.lower_cert)?,
            upper_cert: read(&e.upper_cert)?,
        }))
    }

    /// Absolute path of a stored certificate reference.
    pub fn cert_path(&self, rel: &str) -> PathBuf {
        self.base_dir().join(rel)
    }

    /// Writes the database file atomically.
    pub fn save(&mut self) -> Result<()> {
        self.written_at = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let text = serde_json::to_string_pretty(self)?;
        write_atomic(&self.path, text.as_bytes())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{Coloring, Ground};
    use crate::search::{compute_number, Budget, SearchOptions};

    fn hj_result() -> DbResult {
        let spec = KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap();
        DbResult::from_number(&compute_number(&spec, 4, Budget::unlimited(), &SearchOptions::default()).unwrap())
    }

    #[test]
    fn record_save_load_get() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("results.json");
        let mut db = ResultsDb::new(&path);
        let r = hj_result();
        db.record(&r).unwrap();
        db.save().unwrap();
        let back = ResultsDb::load(&path, Integrity::Deep).unwrap();
        assert_eq!(back.entries, db.entries);
        assert_eq!(back.get(&r.spec, true).unwrap().unwrap(), r);
        assert!(back.entries.contains_key("hj;h=2;c=2;m=1"));
        let other = KindSpec::new(Kind::Hj { m: 2 }, 2, 2).unwrap();
        assert!(back.get(&other, true).unwrap().is_none());
    }

    #[test]
    fn tampered_certificate_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let mut db = ResultsDb::new(&dir.path().join("r.json"));
        let mut r = hj_result();
        let d = Coloring::decode(Ground::Cube { k: 1, h: 2 }, 2, "11").unwrap();
        r.lower_cert = Some(Certificate::bad(&r.spec, 1, &d, Default::default()));
        assert!(matches!(db.record(&r), Err(Error::RejectedResult(_))));
        let mut r = hj_result();
        r.upper_cert = None;
        assert!(matches!(db.record(&r), Err(Error::RejectedResult(_))));
    }

    #[test]
    fn tampered_file_fails_integrity_check() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.json");
        let mut db = ResultsDb::new(&path);
        db.record(&hj_result()).unwrap();
        db.save().unwrap();
        let rel = db.entries["hj;h=2;c=2;m=1"].lower_cert.clone().unwrap();
        let cert_path = db.cert_path(&rel);
        let text = std::fs::read_to_string(&cert_path).unwrap().replace("\"01\"", "\"00\"");
        std::fs::write(&cert_path, text).unwrap();
        assert!(ResultsDb::load(&path, Integrity::Off).is_ok());
        assert!(ResultsDb::load(&path, Integrity::Certificates).is_err());
    }

    #[test]
    fn keys() {
        let s = KindSpec::new(Kind::F9StarN { m: 2, n: 1 }, 2, 2).unwrap();
        assert_eq!(db_key(&s, true), "f9sn;h=2;c=2;m=2;n=1");
        assert_eq!(db_key(&s, false), "f9sn;h=2;c=2;m=2;n=1;nodiv");
        let o = KindSpec::new(Kind::Oplus, 2, 3).unwrap();
        assert_eq!(db_key(&o, false), "oplus;h=2;c=3");
    }
}
