//! Persisted, re-verifiable evidence for one (kind, parameters, size).

use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, Ground};
use crate::error::{Error, Result};
use crate::kind::{Kind, KindSpec};
use crate::search::{search_family, Budget, SearchOptions, SearchStats, SearchVerdict};
use crate::verify::verify_witness;
use crate::witness::WitnessFamily;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertVerdict {
    /// The coloring admits no witness: the number exceeds `k`.
    Bad,
    /// Every coloring admits a witness: the number is at most `k`.
    NoneExists,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringPayload {
    pub ground: Ground,
    pub encoding: String,
    pub data: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    pub kind: String,
    pub h: usize,
    pub c: usize,
    pub m: usize,
    pub n: Option<usize>,
    pub k: usize,
    pub verdict: CertVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coloring: Option<ColoringPayload>,
    pub search: SearchStats,
    pub tool_version: String,
    /// Free-form record of how the result was produced.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

impl Certificate {
    fn header(spec: &KindSpec, k: usize, verdict: CertVerdict, search: SearchStats) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            kind: spec.kind.name().to_string(),
            h: spec.h,
            c: spec.c,
            m: spec.kind.m(),
            n: spec.kind.block_size(),
            k,
            verdict,
            coloring: None,
            search,
            tool_version: TOOL_VERSION.to_string(),
            trace: None,
        }
    }

    pub fn bad(spec: &KindSpec, k: usize, d: &Coloring, search: SearchStats) -> Self {
        let mut cert = Self::header(spec, k, CertVerdict::Bad, search);
        cert.coloring = Some(ColoringPayload {
            ground: d.ground(),
            encoding: "base-c-string".into(),
            data: d.encode(),
        });
        cert
    }

    pub fn exhaustion(spec: &KindSpec, k: usize, search: SearchStats) -> Self {
        Self::header(spec, k, CertVerdict::NoneExists, search)
    }

    /// Builds the certificate matching a search verdict, if it is conclusive.
    pub fn from_verdict(spec: &KindSpec, k: usize, v: &SearchVerdict) -> Option<Self> {
        match v {
            SearchVerdict::Bad { coloring, stats } => Some(Self::bad(spec, k, coloring, *stats)),
            SearchVerdict::NoneExists { stats } => Some(Self::exhaustion(spec, k, *stats)),
            SearchVerdict::BudgetExceeded { .. } => None,
        }
    }

    pub fn with_trace(mut self, trace: serde_json::Value) -> Self {
        self.trace = Some(trace);
        self
    }

    pub fn spec(&self) -> Result<KindSpec> {
        KindSpec::new(Kind::from_parts(&self.kind, self.m, self.n)?, self.h, self.c)
    }

    /// The decoded coloring of a Bad certificate.
    pub fn coloring(&self) -> Result<Option<Coloring>> {
        let Some(p) = &self.coloring else {
            return Ok(None);
        };
        if p.encoding != "base-c-string" {
            return Err(Error::Parse(format!("unknown coloring encoding {:?}", p.encoding)));
        }
        Ok(Some(Coloring::decode(p.ground, self.c, &p.data)?))
    }

    /// Re-checks the certificate from its own contents.
    ///
    /// Bad: the coloring is decoded and every candidate witness is evaluated
    /// point by point. Exhaustion: structural checks only, unless `deep`, in
    /// which case the search is rerun without symmetry breaking.
    pub fn verify(&self, deep: bool) -> Result<()> {
        let reject = |why: String| Err(Error::RejectedResult(why));
        if self.schema_version != SCHEMA_VERSION {
            return reject(format!("schema version {}", self.schema_version));
        }
        let spec = self.spec()?;
        let family = WitnessFamily::compile(&spec, self.k)?;
        match self.verdict {
            CertVerdict::Bad => {
                let Some(d) = self.coloring()? else {
                    return reject("bad certificate without a coloring".into());
                };
                if d.ground() != spec.ground(self.k) {
                    return reject(format!("coloring on {} but {spec} at {} needs {}", d.ground(), self.k, spec.ground(self.k)));
                }
                for i in 0..family.len() {
                    if verify_witness(&spec, self.k, &d, family.witness(i))? {
                        return reject(format!("coloring admits {}", family.witness(i)));
                    }
                }
                Ok(())
            }
            CertVerdict::NoneExists => {
                if self.coloring.is_some() {
                    return reject("exhaustion certificate carries a coloring".into());
                }
                if !deep {
                    return Ok(());
                }
                let opts = SearchOptions {
                    symmetry: false,
                    ..SearchOptions::default()
                };
                match search_family(&family, spec.ground(self.k), spec.c, Budget::unlimited(), &opts)? {
                    SearchVerdict::NoneExists { .. } => Ok(()),
                    v => reject(format!("rerun of the search gave {}", v.name())),
                }
            }
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        write_atomic(path, self.to_json()?.as_bytes())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub(crate) fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path
        .file_name()
        .ok_or_else(|| Error::Parse(format!("not a file path: {}", path.display())))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::exists_bad_coloring;

    fn hj() -> KindSpec {
        KindSpec::new(Kind::Hj { m: 1 }, 2, 2).unwrap()
    }

    #[test]
    fn bad_certificate_round_trip() {
        let v = exists_bad_coloring(&hj(), 1, Budget::unlimited(), &SearchOptions::default()).unwrap();
        let cert = Certificate::from_verdict(&hj(), 1, &v).unwrap();
        let text = cert.to_json().unwrap();
        assert!(text.contains("\"ground\": \"cube(k=1,h=2)\""));
        assert!(text.contains("\"data\": \"01\""));
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        back.verify(true).unwrap();
    }

    #[test]
    fn tampered_coloring_is_rejected() {
        let d = Coloring::decode(Ground::Cube { k: 1, h: 2 }, 2, "00").unwrap();
        let cert = Certificate::bad(&hj(), 1, &d, SearchStats::default());
        assert!(matches!(cert.verify(false), Err(Error::RejectedResult(_))));
    }

    #[test]
    fn exhaustion_rerun() {
        let ok = Certificate::exhaustion(&hj(), 2, SearchStats::default());
        ok.verify(true).unwrap();
        let wrong = Certificate::exhaustion(&hj(), 1, SearchStats::default());
        wrong.verify(false).unwrap();
        assert!(wrong.verify(true).is_err());
    }

    #[test]
    fn file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.json");
        let cert = Certificate::exhaustion(&hj(), 2, SearchStats::default());
        cert.save(&path).unwrap();
        assert_eq!(Certificate::load(&path).unwrap(), cert);
    }
}
