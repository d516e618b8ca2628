//! Configuration, suite scheduling and report output for the `glmn` binary.

use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use glmn::gauss_currents::{
    check_definition_gl11, check_definition_glmn, check_serre, negative_check_grading_off, CheckOptions,
};
use glmn::graded_tensor::{Grading, ParityStructure};
use glmn::hopf_symbolic::{
    check_homomorphism_gl11, check_hopf_axioms, rep_homomorphism_check, rep_matches_single_site,
};
use glmn::report::{CheckRecord, Status, Summary, VerificationOutcome, VerificationReport};
use glmn::rll_evaluation::rll_suite;
use glmn::rmatrix::{
    build_r, build_rtilde, check_pt_symmetry, check_unitarity, check_weight_conservation, check_ybe, YbeForm,
};

/// Largest `m + n` accepted by default.
pub const MAX_RANK: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("m and n must be positive (got m = {m}, n = {n})")]
    NonPositive { m: usize, n: usize },
    #[error("m + n = {0} exceeds the budget of {MAX_RANK}")]
    TooLarge(usize),
    #[error("the window must have at least 4 modes (got {0})")]
    WindowTooSmall(usize),
    #[error("the guard ({guard}) must be at least the window ({trunc})")]
    GuardTooSmall { guard: usize, trunc: usize },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("no suite selected")]
    NoSuite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Ybe,
    RmatrixProps,
    Rll,
    Drinfeld,
    Serre,
    Hopf,
    Negative,
}

impl Suite {
    /// All suites in dependency order.
    pub const ALL: [Suite; 7] = [
        Suite::Ybe,
        Suite::RmatrixProps,
        Suite::Rll,
        Suite::Drinfeld,
        Suite::Serre,
        Suite::Hopf,
        Suite::Negative,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Ybe => "ybe",
            Suite::RmatrixProps => "rmatrix-props",
            Suite::Rll => "rll",
            Suite::Drinfeld => "drinfeld",
            Suite::Serre => "serre",
            Suite::Hopf => "hopf",
            Suite::Negative => "negative",
        }
    }

    pub fn parse(s: &str) -> Result<Suite, ConfigError> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Symbolic,
    Sampled,
}

/// Everything that determines a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub m: usize,
    pub n: usize,
    pub trunc: usize,
    pub guard: usize,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub grading: bool,
    pub suites: Vec<Suite>,
    #[serde(skip)]
    pub timings: bool,
}

impl RunConfig {
    pub fn new(m: usize, n: usize, suites: Vec<Suite>) -> RunConfig {
        RunConfig {
            m,
            n,
            trunc: 6,
            guard: 6,
            mode: Mode::Symbolic,
            seed: None,
            grading: true,
            suites,
            timings: false,
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.m == 0 || self.n == 0 {
            return Err(ConfigError::NonPositive { m: self.m, n: self.n });
        }
        if self.m + self.n > MAX_RANK {
            return Err(ConfigError::TooLarge(self.m + self.n));
        }
        if self.trunc < 4 {
            return Err(ConfigError::WindowTooSmall(self.trunc));
        }
        if self.guard < self.trunc {
            return Err(ConfigError::GuardTooSmall {
                guard: self.guard,
                trunc: self.trunc,
            });
        }
        if self.suites.is_empty() {
            return Err(ConfigError::NoSuite);
        }
        Ok(())
    }

    fn parity(&self) -> ParityStructure {
        let ps = ParityStructure::new(self.m, self.n).expect("validated");
        ps.with_grading(if self.grading { Grading::On } else { Grading::Off })
    }

    fn options(&self) -> CheckOptions {
        CheckOptions {
            trunc: self.trunc,
            guard: self.guard as i32,
            sample_seed: match self.mode {
                Mode::Symbolic => None,
                Mode::Sampled => Some(self.seed.unwrap_or(0)),
            },
        }
    }
}

/// A finished run: its configuration and the records of every suite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl RunReport {
    /// Process exit code: 0 when every check passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail + self.summary.mismatch == 0 {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let width = self.checks.iter().map(|c| c.id.len()).max().unwrap_or(2).max(2);
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(
            out,
            "gl({}|{})  N={} G={}  mode={}{}  grading={}",
            c.m,
            c.n,
            c.trunc,
            c.guard,
            match c.mode {
                Mode::Symbolic => "symbolic".to_string(),
                Mode::Sampled => "sampled".to_string(),
            },
            c.seed.map(|s| format!(" seed={s}")).unwrap_or_default(),
            if c.grading { "on" } else { "off" }
        );
        let _ = writeln!(out, "{:<width$}  {:<20}  {:>7}", "id", "status", "ms");
        for r in &self.checks {
            let _ = writeln!(out, "{:<width$}  {:<20}  {:>7}", r.id, r.status.to_string(), r.millis);
            if let Some(ce) = &r.counterexample {
                let line = format!("at {:?}: {} vs {}", ce.coordinates, ce.lhs, ce.rhs);
                let _ = writeln!(out, "    {}", clip(&line, 160));
            } else if r.status != Status::Pass {
                if let Some(note) = &r.note {
                    let _ = writeln!(out, "    {}", clip(note, 160));
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "pass {}  fail {}  mismatch {}  skipped {}",
            s.pass, s.fail, s.mismatch, s.skipped
        );
        out
    }
}

fn clip(s: &str, max: usize) -> String {
    match s.char_indices().nth(max) {
        Some((i, _)) => format!("{}...", &s[..i]),
        None => s.to_string(),
    }
}

fn ybe_suite(ps: ParityStructure) -> VerificationReport {
    let forms = [
        YbeForm::ThetaOperator,
        YbeForm::ComponentSigns,
        YbeForm::TildePlain,
        YbeForm::GradedEmbedding,
    ];
    let outcomes: Vec<(YbeForm, VerificationOutcome, u64)> = forms
        .par_iter()
        .map(|&f| {
            let start = Instant::now();
            let o = check_ybe(ps, f);
            (f, o, start.elapsed().as_millis() as u64)
        })
        .collect();
    let mut report = VerificationReport::new();
    for (f, o, ms) in outcomes {
        report.push(&format!("ybe/{}", f.id()), ps.m, ps.n, f.id(), o, ms);
    }
    report
}

fn rmatrix_props_suite(ps: ParityStructure) -> VerificationReport {
    let mut report = VerificationReport::new();
    for (name, r) in [("r", build_r(ps)), ("rtilde", build_rtilde(ps))] {
        report.record(
            &format!("rmatrix-props/{name}/pt-symmetry"),
            ps.m,
            ps.n,
            "pt-symmetry",
            || check_pt_symmetry(&r),
        );
        report.record(
            &format!("rmatrix-props/{name}/unitarity"),
            ps.m,
            ps.n,
            "unitarity",
            || check_unitarity(&r),
        );
        report.record(
            &format!("rmatrix-props/{name}/weight-conservation"),
            ps.m,
            ps.n,
            "weight-conservation",
            || check_weight_conservation(&r),
        );
    }
    report
}

fn drinfeld_suite(ps: ParityStructure, opts: &CheckOptions) -> VerificationReport {
    if ps.grading == Grading::Off {
        return negative_check_grading_off(ps, opts);
    }
    if ps.m == 1 && ps.n == 1 {
        check_definition_gl11(opts)
    } else {
        check_definition_glmn(ps, opts)
    }
}

fn hopf_suite(ps: ParityStructure, opts: &CheckOptions) -> VerificationReport {
    let mut report = check_hopf_axioms(ps);
    if ps.m == 1 && ps.n == 1 {
        report.extend(check_homomorphism_gl11());
    }
    let single = check_definition_glmn(ps, opts);
    let two = rep_homomorphism_check(ps, opts);
    let consistent = rep_matches_single_site(&two, &single);
    report.extend(two);
    let outcome = if consistent {
        VerificationOutcome::pass()
    } else {
        VerificationOutcome::fail(None).with_note("two-site verdicts differ from the single-site verdicts")
    };
    report.push(
        "hopf/rep/agrees-with-single-site",
        ps.m,
        ps.n,
        "rep-homomorphism",
        outcome,
        0,
    );
    report
}

fn negative_suite(ps: ParityStructure, opts: &CheckOptions) -> VerificationReport {
    negative_check_grading_off(ps, opts)
}

/// Runs one suite, timing it, with records sorted by id.
pub fn run_suite(suite: Suite, config: &RunConfig) -> VerificationReport {
    let ps = config.parity();
    let opts = config.options();
    let mut report = match suite {
        Suite::Ybe => ybe_suite(ps),
        Suite::RmatrixProps => rmatrix_props_suite(ps),
        Suite::Rll => rll_suite(ps),
        Suite::Drinfeld => drinfeld_suite(ps, &opts),
        Suite::Serre => check_serre(ps, &opts),
        Suite::Hopf => hopf_suite(ps, &opts),
        Suite::Negative => negative_suite(ps, &opts),
    };
    report.checks.sort_by(|a, b| a.id.cmp(&b.id));
    report
}

/// Runs the selected suites (deduplicated, in dependency order) and
/// assembles the report. Without `timings` all wall times are zero so that
/// symbolic runs are byte-reproducible.
pub fn run(config: &RunConfig) -> Result<RunReport, ConfigError> {
    config.validate()?;
    let mut suites = config.suites.clone();
    suites.sort();
    suites.dedup();
    let reports: Vec<VerificationReport> = suites.par_iter().map(|&s| run_suite(s, config)).collect();
    let mut all = VerificationReport::new();
    for r in reports {
        all.extend(r);
    }
    if !config.timings {
        all.strip_timings();
    }
    let summary = all.summary();
    let mut config = config.clone();
    config.suites = suites;
    Ok(RunReport {
        config,
        checks: all.checks,
        summary,
    })
}
