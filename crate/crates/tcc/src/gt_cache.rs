//! Shipped cache of the minimal t-curve triangulations G_t.
//!
//! A cache file holds the rotation lists and generations of G_t, its
//! t-curve certificate, and a property record stamped with SHA-256 hashes
//! of both. Loading checks the hashes and re-verifies the certificate, so
//! only the expensive minimality search is skipped.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};
use tcc_core::cert::verify_certificate;
use tcc_core::constructions::{minimal_tcurve_triangulation, EmbeddedTriangulation, MinimalTriangulation};
use tcc_core::Budget;

use crate::formats::{read_certificate, read_rotation, write_certificate, write_rotation, FormatError};

const HEADER: &str = "tcc-gt 1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("cache file {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("malformed cache: {0}")]
    Malformed(String),
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{what} hash mismatch: recorded {recorded}, computed {computed}")]
    Hash {
        what: &'static str,
        recorded: String,
        computed: String,
    },
    #[error("cached triangulation fails its property check: {0}")]
    Property(String),
    #[error(transparent)]
    Construction(#[from] tcc_core::constructions::ConstructionError),
}

/// Default location of the cache for `t`, inside the crate's data folder.
pub fn default_path(t: usize) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(format!("g{t}.gt"))
}

fn sha(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn write_cache(gt: &MinimalTriangulation) -> String {
    let tri = &gt.triangulation;
    let rotation = write_rotation(tri.rotation_lists());
    let cert = write_certificate(&gt.certificate);
    let mut out = format!("{HEADER}\n");
    writeln!(
        out,
        "t={} n={} m={} round={} ell={}",
        gt.t,
        tri.n(),
        3 * tri.n() - 6,
        gt.m,
        gt.ell
    )
    .unwrap();
    writeln!(out, "rotation-sha256={}", sha(&rotation)).unwrap();
    writeln!(out, "certificate-sha256={}", sha(&cert)).unwrap();
    out.push_str("ROTATION\n");
    out.push_str(&rotation);
    out.push_str("GENERATION\n");
    let gens: Vec<String> = tri.generation().iter().map(|g| g.to_string()).collect();
    writeln!(out, "{}", gens.join(" ")).unwrap();
    out.push_str("CERTIFICATE\n");
    out.push_str(&cert);
    out
}

pub fn read_cache(text: &str) -> Result<MinimalTriangulation, CacheError> {
    let malformed = |m: &str| CacheError::Malformed(m.to_string());
    let (head, rest) = text.split_once("ROTATION\n").ok_or_else(|| malformed("missing ROTATION"))?;
    let (rotation, rest) = rest.split_once("GENERATION\n").ok_or_else(|| malformed("missing GENERATION"))?;
    let (gens, cert_text) = rest.split_once("CERTIFICATE\n").ok_or_else(|| malformed("missing CERTIFICATE"))?;
    let mut lines = head.lines();
    if lines.next() != Some(HEADER) {
        return Err(malformed("bad header"));
    }
    let mut fields = std::collections::BTreeMap::new();
    for line in lines {
        for w in line.split_whitespace() {
            let (k, v) = w.split_once('=').ok_or_else(|| malformed("expected key=value"))?;
            fields.insert(k.to_string(), v.to_string());
        }
    }
    let field = |k: &str| fields.get(k).cloned().ok_or_else(|| malformed(&format!("missing {k}")));
    let number = |k: &str| -> Result<usize, CacheError> { field(k)?.parse().map_err(|_| malformed(k)) };
    for (what, text, key) in [("rotation", rotation, "rotation-sha256"), ("certificate", cert_text, "certificate-sha256")] {
        let (recorded, computed) = (field(key)?, sha(text));
        if recorded != computed {
            return Err(CacheError::Hash {
                what,
                recorded,
                computed,
            });
        }
    }
    let (lists, g, _) = read_rotation(rotation)?;
    let generation = gens
        .split_whitespace()
        .map(|w| w.parse().map_err(|_| malformed("generation")))
        .collect::<Result<Vec<usize>, _>>()?;
    let triangulation = EmbeddedTriangulation::from_rotation_lists(lists, generation)?;
    let certificate = read_certificate(cert_text)?;
    let t = number("t")?;
    if triangulation.n() != number("n")? || g.m() != number("m")? {
        return Err(CacheError::Property("recorded size differs".into()));
    }
    verify_certificate(&g, &certificate, t, 0).map_err(|e| CacheError::Property(e.to_string()))?;
    Ok(MinimalTriangulation {
        t,
        triangulation,
        certificate,
        m: number("round")?,
        ell: number("ell")?,
    })
}

pub fn load(path: &Path) -> Result<MinimalTriangulation, CacheError> {
    let text = std::fs::read_to_string(path).map_err(|source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_cache(&text)
}

/// Recompute G_t from scratch and write it to `path`.
pub fn regenerate(t: usize, path: &Path, budget: &dyn Budget) -> Result<MinimalTriangulation, CacheError> {
    let gt = minimal_tcurve_triangulation(t, budget)?;
    std::fs::write(path, write_cache(&gt)).map_err(|source| CacheError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(gt)
}

/// The cached G_t when the file exists and checks out, otherwise a fresh
/// computation (not written back).
pub fn load_or_compute(t: usize, budget: &dyn Budget) -> Result<MinimalTriangulation, CacheError> {
    match load(&default_path(t)) {
        Ok(gt) if gt.t == t => Ok(gt),
        Ok(_) => Err(CacheError::Property("cache holds a different t".into())),
        Err(CacheError::Io { .. }) => Ok(minimal_tcurve_triangulation(t, budget)?),
        Err(e) => Err(e),
    }
}
