//! Corpus, theorem checks and job reports.

pub mod corpus;
pub mod report;
pub mod verify;

pub use corpus::{corpus_emit, lookup, parse_name, standard_corpus, CorpusEntry, Expectation, Expected, Family, Origin};
pub use report::{cache_dir_from_env, run_job, run_report, Check, Job, JobReport, RunSummary, CACHE_ENV};
pub use verify::{
    verify_ci_corollary, verify_expectations, verify_imply_scan, verify_theorem_main1, verify_theorem_veronese, ClaimVerdict, Status,
    VerificationReport, VerifyOptions,
};
