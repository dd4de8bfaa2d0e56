//! Batch jobs: every (entry, check) pair is computed or read from a content
//! addressed cache, then written out as one JSON and one text report.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::betti::checks::{property_report, PropertyReport};
use crate::betti::table::{BettiTable, Window};
use crate::betti::Method;
use crate::error::{Error, Result};
use crate::harness::corpus::{lookup, Family};
use crate::harness::verify::{
    verify_ci_corollary, verify_expectations, verify_imply_scan, verify_theorem_main1, verify_theorem_veronese,
    Status, VerificationReport, VerifyOptions,
};
use crate::ideal::Ideal;

pub const CACHE_ENV: &str = "SYZLAB_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Check {
    /// Betti table and derived invariants.
    Properties,
    /// The values the corpus records for the entry.
    Expectations,
    Main1 { lmax: u32 },
    Veronese { ell: u32 },
    Imply { ell: u32, p: usize },
    /// Only for complete intersection corpus entries.
    Ci { ells: Vec<u32> },
}

fn default_prime() -> u32 {
    crate::DEFAULT_PRIME
}

fn default_budget() -> u64 {
    VerifyOptions::default().claim_secs
}

fn default_fraction() -> f64 {
    0.1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Job {
    /// Corpus names or paths of ideal files.
    pub entries: Vec<String>,
    pub checks: Vec<Check>,
    #[serde(default)]
    pub window: Option<Window>,
    #[serde(default = "default_prime")]
    pub prime: u32,
    /// Seconds per claim.
    #[serde(default = "default_budget")]
    pub budget: u64,
    #[serde(default)]
    pub method: Method,
    /// Share of cache hits recomputed to audit the cache.
    #[serde(default = "default_fraction")]
    pub verify_fraction: f64,
}

impl Job {
    pub fn parse(text: &str) -> Result<Job> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Outcome {
    Properties(PropertyReport),
    Verification(VerificationReport),
    Error { message: String },
}

impl Outcome {
    fn literature_failures(&self) -> usize {
        match self {
            Outcome::Verification(r) => r.literature_failures().count(),
            _ => 0,
        }
    }

    /// Results depending on the budget are not worth caching.
    fn cacheable(&self) -> bool {
        match self {
            Outcome::Properties(p) => p.complete && p.normality_from.is_some(),
            Outcome::Verification(r) => r.count(Status::NotEvaluated) == 0,
            Outcome::Error { .. } => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemResult {
    pub entry: String,
    pub check: Check,
    pub key: String,
    pub outcome: Outcome,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    Cache,
    /// Read from the cache and recomputed to audit it; both agreed.
    CacheAudited,
    /// The cached value disagreed with a fresh computation or was unreadable.
    Recomputed,
}

/// Everything that may change between runs of the same job.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunInfo {
    pub timestamp: u64,
    pub provenance: Vec<Provenance>,
    pub elapsed_ms: Vec<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct JobReport {
    pub job_hash: String,
    pub results: Vec<ItemResult>,
    pub literature_failures: usize,
    pub run: RunInfo,
}

impl JobReport {
    pub fn to_text(&self) -> String {
        text_report(self)
    }

    /// Pretty JSON with the run block removed, for comparisons.
    pub fn stable_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Some(obj) = v.as_object_mut() {
            obj.remove("run");
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }
}

#[derive(Clone, Debug)]
pub struct RunSummary {
    pub json_path: PathBuf,
    pub text_path: PathBuf,
    pub items: usize,
    pub cache_hits: usize,
    pub literature_failures: usize,
    pub report: JobReport,
}

fn sha_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn load_entry(entry: &str, prime: u32) -> Result<(Ideal, Option<Family>)> {
    let path = Path::new(entry);
    if path.is_file() {
        return Ok((Ideal::parse_any(&fs::read_to_string(path)?)?, None));
    }
    let corpus = lookup(entry)?;
    let ideal = corpus.ideal(prime, &crate::Budget::unlimited())?;
    Ok((ideal, Some(corpus.family)))
}

fn cache_key(ideal: &Ideal, job: &Job, check: &Check) -> Result<String> {
    let material = serde_json::json!({
        "ideal": ideal.to_text(),
        "prime": ideal.ring().prime(),
        "order": ideal.ring().order().name(),
        "window": job.window,
        "method": job.method,
        "check": check,
    });
    Ok(sha_hex(serde_json::to_string(&material)?.as_bytes()))
}

fn compute(entry: &str, ideal: &Ideal, family: Option<&Family>, check: &Check, job: &Job) -> Outcome {
    let opts = VerifyOptions { claim_secs: job.budget };
    let result = match check {
        Check::Properties => property_report(ideal, job.window, job.method, &opts.budget()).map(Outcome::Properties),
        Check::Expectations => {
            lookup(entry).and_then(|c| verify_expectations(&c, job.prime, &opts)).map(Outcome::Verification)
        }
        Check::Main1 { lmax } => Ok(Outcome::Verification(verify_theorem_main1(ideal, *lmax, &opts))),
        Check::Veronese { ell } => Ok(Outcome::Verification(verify_theorem_veronese(ideal, *ell, &opts))),
        Check::Imply { ell, p } => Ok(Outcome::Verification(verify_imply_scan(ideal, *ell, *p, &opts))),
        Check::Ci { ells } => match family {
            Some(Family::CompleteIntersection { degrees, n_vars }) => {
                verify_ci_corollary(degrees, *n_vars, ells, ideal.ring().prime(), &opts).map(Outcome::Verification)
            }
            _ => Err(Error::Precondition(format!("{entry} is not a complete intersection corpus entry"))),
        },
    };
    result.unwrap_or_else(|e| Outcome::Error { message: e.to_string() })
}

/// Writes `bytes` next to `path` and renames it into place.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("out");
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    fs::write(&tmp, bytes)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

enum CacheRead {
    Miss,
    Hit(Outcome),
    Corrupt(String),
}

fn read_cache(dir: &Path, key: &str) -> CacheRead {
    let path = dir.join(format!("{key}.json"));
    match fs::read_to_string(&path) {
        Err(_) => CacheRead::Miss,
        Ok(text) => match serde_json::from_str::<ItemResult>(&text) {
            Ok(item) if item.key == key => CacheRead::Hit(item.outcome),
            Ok(_) => CacheRead::Corrupt(format!("{} holds another key", path.display())),
            Err(e) => CacheRead::Corrupt(format!("{}: {e}", path.display())),
        },
    }
}

struct Item {
    entry: String,
    check: Check,
}

fn process(item: &Item, job: &Job, cache: Option<&Path>) -> Result<(ItemResult, Provenance, u64)> {
    let started = std::time::Instant::now();
    let (ideal, family) = match load_entry(&item.entry, job.prime) {
        Ok(x) => x,
        Err(e) => {
            let outcome = Outcome::Error { message: e.to_string() };
            let result = ItemResult { entry: item.entry.clone(), check: item.check.clone(), key: String::new(), outcome };
            return Ok((result, Provenance::Computed, 0));
        }
    };
    let key = cache_key(&ideal, job, &item.check)?;
    let fresh = || compute(&item.entry, &ideal, family.as_ref(), &item.check, job);
    let (outcome, provenance) = match cache.map(|d| read_cache(d, &key)) {
        None | Some(CacheRead::Miss) => (fresh(), Provenance::Computed),
        Some(CacheRead::Corrupt(why)) => {
            log::warn!("unreadable cache entry, recomputing: {why}");
            (fresh(), Provenance::Recomputed)
        }
        Some(CacheRead::Hit(cached)) => {
            if rand::random::<f64>() < job.verify_fraction {
                let now = fresh();
                // compare what is stored, not run-dependent fields
                if serde_json::to_value(&now)? == serde_json::to_value(&cached)? {
                    (cached, Provenance::CacheAudited)
                } else {
                    log::warn!("cache entry {key} disagrees with a fresh computation; replacing it");
                    (now, Provenance::Recomputed)
                }
            } else {
                (cached, Provenance::Cache)
            }
        }
    };
    let result = ItemResult { entry: item.entry.clone(), check: item.check.clone(), key: key.clone(), outcome };
    if let Some(dir) = cache {
        if provenance != Provenance::Cache && provenance != Provenance::CacheAudited && result.outcome.cacheable() {
            write_atomic(&dir.join(format!("{key}.json")), serde_json::to_string_pretty(&result)?.as_bytes())?;
        }
    }
    Ok((result, provenance, started.elapsed().as_millis() as u64))
}

fn text_report(report: &JobReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "job {}", report.job_hash);
    for (k, r) in report.results.iter().enumerate() {
        let check = serde_json::to_string(&r.check).unwrap_or_default();
        let prov = report.run.provenance.get(k).map(|p| format!("{p:?}")).unwrap_or_default();
        let _ = writeln!(out, "\n== {} :: {check} [{}]", r.entry, prov.to_lowercase());
        match &r.outcome {
            Outcome::Properties(p) => {
                let table = BettiTable::complete_from(p.betti.iter().map(|e| ((e.i, e.q), e.beta)));
                if p.complete {
                    out.push_str(&table.diagram());
                } else {
                    let _ = writeln!(out, "(window not complete) nonzero cells: {:?}", table.entries());
                }
                let normality = p.normality_from.map_or("not evaluated".to_string(), |s| s.to_string());
                let _ = writeln!(
                    out,
                    "regularity {} projdim {} N_0 {} max N_2,p {} normal from {normality} generated in degree {}",
                    p.regularity, p.projdim, p.n0, p.max_n2p, p.generation_degree
                );
            }
            Outcome::Verification(v) => out.push_str(&v.to_text()),
            Outcome::Error { message } => {
                let _ = writeln!(out, "error: {message}");
            }
        }
    }
    let _ = writeln!(out, "\nfailed literature claims: {}", report.literature_failures);
    out
}

/// Cache directory from the environment, when set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Runs every check on every entry, in parallel, in job order.
pub fn run_job(job: &Job, cache: Option<&Path>) -> Result<JobReport> {
    if let Some(dir) = cache {
        fs::create_dir_all(dir)?;
    }
    let items: Vec<Item> = job
        .entries
        .iter()
        .flat_map(|e| job.checks.iter().map(move |c| Item { entry: e.clone(), check: c.clone() }))
        .collect();
    let processed = items.par_iter().map(|item| process(item, job, cache)).collect::<Result<Vec<_>>>()?;
    let mut results = Vec::with_capacity(processed.len());
    let mut provenance = Vec::with_capacity(processed.len());
    let mut elapsed = Vec::with_capacity(processed.len());
    for (r, p, ms) in processed {
        results.push(r);
        provenance.push(p);
        elapsed.push(ms);
    }
    let literature_failures = results.iter().map(|r| r.outcome.literature_failures()).sum();
    let timestamp = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    Ok(JobReport {
        job_hash: sha_hex(serde_json::to_string(job)?.as_bytes()),
        results,
        literature_failures,
        run: RunInfo { timestamp, provenance, elapsed_ms: elapsed },
    })
}

/// [`run_job`], then writes `report.json` and `report.txt` into `out_dir`.
pub fn run_report(job: &Job, out_dir: &Path, cache: Option<&Path>) -> Result<RunSummary> {
    let report = run_job(job, cache)?;
    let cache_hits =
        report.run.provenance.iter().filter(|p| matches!(p, Provenance::Cache | Provenance::CacheAudited)).count();
    let json_path = out_dir.join("report.json");
    let text_path = out_dir.join("report.txt");
    write_atomic(&json_path, serde_json::to_string_pretty(&report)?.as_bytes())?;
    write_atomic(&text_path, report.to_text().as_bytes())?;
    Ok(RunSummary {
        json_path,
        text_path,
        items: report.results.len(),
        cache_hits,
        literature_failures: report.literature_failures,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn job_defaults() {
        let job = Job::parse(r#"{"entries": ["twisted_cubic"], "checks": [{"kind": "main1", "lmax": 2}]}"#).unwrap();
        assert_eq!(job.prime, 32003);
        assert_eq!(job.method, Method::Koszul);
        assert_eq!(job.checks, [Check::Main1 { lmax: 2 }]);
        assert!(Job::parse(r#"{"entries": [], "checks": [{"kind": "bogus"}]}"#).is_err());
    }

    #[test]
    fn cache_keys_separate_primes_and_checks() {
        let job = Job::parse(r#"{"entries": [], "checks": []}"#).unwrap();
        let b = crate::Budget::unlimited();
        let i = crate::harness::corpus_emit("twisted_cubic", 32003, &b).unwrap();
        let j = crate::harness::corpus_emit("twisted_cubic", 101, &b).unwrap();
        let k1 = cache_key(&i, &job, &Check::Properties).unwrap();
        assert_ne!(k1, cache_key(&j, &job, &Check::Properties).unwrap());
        assert_ne!(k1, cache_key(&i, &job, &Check::Main1 { lmax: 2 }).unwrap());
        assert_eq!(k1, cache_key(&i, &job, &Check::Properties).unwrap());
    }
}
