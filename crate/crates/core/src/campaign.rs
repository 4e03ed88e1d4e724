//! Sweeps over ranges of `(q, m)`: dispatches every check, runs pairs in
//! parallel, and assembles a deterministic report with a field manifest.
//!
//! Records are sorted by `(q, m, check name)`, so the report depends only on
//! the configuration (timings aside), not on scheduling.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{divisors, is_odd_prime_power, prime_power};
use crate::charsum::{consecutive_power_check, sample_line_sums_of_order};
use crate::cliquezoo::{
    alpha_fq_one_construction, alpha_q0_construction, census_allowed, check_hypotheses, conjecture_evidence,
    counterexample_family, divides_half, fq_alpha_construction, k4_count, maximal_size_census_with_limits,
    q0_construction, stability_check, verify_phi_correspondence, verify_psi_correspondence, CensusMode, CliqueZooError,
    Conjecture, ConstructionResult, K4Mode,
};
use crate::ffield::{field_cap, Field, FieldError, FieldManifest};
use crate::geometry::{block_graph_equals_gp, build_oa};
use crate::gpgraph::{verify_srg, EnumLimits, GpGraph};
use crate::oval::{find_bipartite_pair, verify_structure, Oval};
use crate::spectra::{build_eigenfunction, verify_eigenfunction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckKind {
    Srg,
    Oa,
    OvalStructure,
    Eigenfunction,
    Constructions,
    Conjecture1,
    Conjecture2,
    Correspondences,
    Census,
    K4,
    Charsum,
    CounterexampleFamily,
}

impl CheckKind {
    pub const ALL: [CheckKind; 12] = [
        CheckKind::Srg,
        CheckKind::Oa,
        CheckKind::OvalStructure,
        CheckKind::Eigenfunction,
        CheckKind::Constructions,
        CheckKind::Conjecture1,
        CheckKind::Conjecture2,
        CheckKind::Correspondences,
        CheckKind::Census,
        CheckKind::K4,
        CheckKind::Charsum,
        CheckKind::CounterexampleFamily,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Srg => "srg",
            CheckKind::Oa => "oa",
            CheckKind::OvalStructure => "oval-structure",
            CheckKind::Eigenfunction => "eigenfunction",
            CheckKind::Constructions => "constructions",
            CheckKind::Conjecture1 => "conjecture1",
            CheckKind::Conjecture2 => "conjecture2",
            CheckKind::Correspondences => "correspondences",
            CheckKind::Census => "census",
            CheckKind::K4 => "k4",
            CheckKind::Charsum => "charsum",
            CheckKind::CounterexampleFamily => "counterexample-family",
        }
    }

    /// Whether a failure contradicts a proved statement. Conjecture checks
    /// only collect evidence.
    pub fn is_theorem(self) -> bool {
        !matches!(self, CheckKind::Conjecture1 | CheckKind::Conjecture2)
    }
}

impl fmt::Display for CheckKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckKind {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckKind::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CampaignError::ConfigInvalid(format!("unknown check {s:?}")))
    }
}

/// Parses a comma-separated check list; `all` selects every check.
pub fn parse_checks(list: &str) -> Result<BTreeSet<CheckKind>, CampaignError> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .flat_map(|s| -> Vec<Result<CheckKind, CampaignError>> {
            if s == "all" {
                CheckKind::ALL.into_iter().map(Ok).collect()
            } else {
                vec![s.parse()]
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = CampaignError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(CampaignError::ConfigInvalid(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Time budget for each enumeration; exceeding it marks the record
    /// truncated.
    pub time_per_check: Option<Duration>,
    /// Run enumerations above the default gates.
    pub force_enumeration: bool,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub q_min: u64,
    pub q_max: u64,
    /// Explicit `m` values; `None` means every divisor `m ≥ 2` of `q + 1`.
    pub m_filter: Option<Vec<u32>>,
    pub checks: BTreeSet<CheckKind>,
    pub limits: Limits,
    pub output: Option<PathBuf>,
    pub format: OutputFormat,
}

impl CampaignConfig {
    pub fn new(q_min: u64, q_max: u64, checks: impl IntoIterator<Item = CheckKind>) -> CampaignConfig {
        CampaignConfig {
            q_min,
            q_max,
            m_filter: None,
            checks: checks.into_iter().collect(),
            limits: Limits::default(),
            output: None,
            format: OutputFormat::Json,
        }
    }

    /// The `(q, m)` pairs this configuration covers.
    pub fn pairs(&self) -> Vec<(u64, u32)> {
        list_pairs(self.q_min, self.q_max)
            .into_iter()
            .filter(|(_, m)| self.m_filter.as_ref().map_or(true, |ms| ms.contains(m)))
            .collect()
    }

    pub fn validate(&self) -> Result<Vec<(u64, u32)>, CampaignError> {
        if self.q_min == 0 || self.q_min > self.q_max {
            return Err(CampaignError::ConfigInvalid(format!(
                "empty q range [{}, {}]",
                self.q_min, self.q_max
            )));
        }
        if self.checks.is_empty() {
            return Err(CampaignError::ConfigInvalid("no checks requested".into()));
        }
        if let Some(m) = self.m_filter.as_ref().and_then(|ms| ms.iter().find(|&&m| m < 2)) {
            return Err(CampaignError::ConfigInvalid(format!("m = {m} is below 2")));
        }
        let pairs = self.pairs();
        if pairs.is_empty() {
            return Err(CampaignError::ConfigInvalid(format!(
                "no pairs (q, m) with q an odd prime power in [{}, {}]",
                self.q_min, self.q_max
            )));
        }
        let cap = field_cap();
        for &(q, _) in &pairs {
            if q * q > cap {
                let (p, k) = prime_power(q).expect("odd prime power");
                return Err(FieldError::FieldTooLarge { p, degree: 2 * k, cap }.into());
            }
        }
        Ok(pairs)
    }
}

#[derive(Debug, Error)]
pub enum CampaignError {
    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("writing report: {0}")]
    Io(#[from] io::Error),
    #[error("writing report: {0}")]
    Serialize(String),
}

/// Every odd prime power `q` in range with every divisor `m ≥ 2` of `q + 1`.
pub fn list_pairs(q_min: u64, q_max: u64) -> Vec<(u64, u32)> {
    (q_min.max(1)..=q_max)
        .filter(|&q| is_odd_prime_power(q))
        .flat_map(|q| {
            divisors(q + 1)
                .into_iter()
                .filter(|&m| m >= 2)
                .map(move |m| (q, m as u32))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    /// The pair falls outside the conjecture's hypotheses; the check still
    /// ran and `pass` records the evidence.
    HypothesisFailed,
    /// The check says nothing about this pair.
    NotApplicable,
    /// Enumeration refused by the size gate.
    Skipped,
    /// Enumeration stopped by a limit before finishing.
    Truncated,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub q: u64,
    pub m: u32,
    pub check_name: String,
    pub status: Status,
    pub theorem: bool,
    pub hypotheses_met: bool,
    pub pass: bool,
    pub witness: Option<Value>,
    pub sizes: Option<Vec<usize>>,
    pub detail: Value,
    pub elapsed_ms: u64,
}

impl Record {
    /// A failure that should fail the run.
    pub fn is_theorem_failure(&self) -> bool {
        self.theorem && matches!(self.status, Status::Fail | Status::Error)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub version: String,
    pub field_cap: u64,
    pub config: CampaignConfig,
    /// Field construction choices for each `q` in the run.
    pub fields: Vec<FieldManifest>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub records: usize,
    pub passed: usize,
    pub failed: usize,
    pub hypothesis_failed: usize,
    pub not_applicable: usize,
    pub skipped: usize,
    pub truncated: usize,
    pub errors: usize,
    pub theorem_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub manifest: Manifest,
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl Report {
    /// `0` when every theorem check passed, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.summary.theorem_failures > 0)
    }

    /// The report with timings zeroed, for comparing runs.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for rec in &mut r.records {
            rec.elapsed_ms = 0;
        }
        r
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<(), CampaignError> {
        serde_json::to_writer_pretty(out, self).map_err(|e| CampaignError::Serialize(e.to_string()))
    }

    /// One row per record; witnesses and details are dropped.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), CampaignError> {
        #[derive(Serialize)]
        struct Row<'a> {
            q: u64,
            m: u32,
            check_name: &'a str,
            status: Status,
            theorem: bool,
            hypotheses_met: bool,
            pass: bool,
            sizes: String,
            elapsed_ms: u64,
        }
        let mut w = csv::Writer::from_writer(out);
        for r in &self.records {
            let sizes = r
                .sizes
                .as_ref()
                .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(";"))
                .unwrap_or_default();
            w.serialize(Row {
                q: r.q,
                m: r.m,
                check_name: &r.check_name,
                status: r.status,
                theorem: r.theorem,
                hypotheses_met: r.hypotheses_met,
                pass: r.pass,
                sizes,
                elapsed_ms: r.elapsed_ms,
            })
            .map_err(|e| CampaignError::Serialize(e.to_string()))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write<W: Write>(&self, format: OutputFormat, out: W) -> Result<(), CampaignError> {
        match format {
            OutputFormat::Json => self.write_json(out),
            OutputFormat::Csv => self.write_csv(out),
        }
    }
}

/// Runs the campaign. When `config.output` is set the report is also written
/// there in `config.format`.
pub fn run(config: &CampaignConfig) -> Result<Report, CampaignError> {
    let pairs = config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.limits.jobs)
        .build()
        .map_err(|e| CampaignError::ConfigInvalid(e.to_string()))?;
    let checks: Vec<CheckKind> = config.checks.iter().copied().collect();
    let mut records: Vec<Record> = pool.install(|| {
        pairs
            .par_iter()
            .flat_map_iter(|&(q, m)| run_pair(q, m, &checks, &config.limits))
            .collect()
    });
    records.sort_by(|a, b| (a.q, a.m, &a.check_name).cmp(&(b.q, b.m, &b.check_name)));

    let qs: BTreeSet<u64> = pairs.iter().map(|&(q, _)| q).collect();
    let fields = qs
        .into_iter()
        .map(|q| Field::for_q(q).map(|f| f.manifest()))
        .collect::<Result<Vec<_>, _>>()?;
    let report = Report {
        manifest: Manifest {
            version: env!("CARGO_PKG_VERSION").to_string(),
            field_cap: field_cap(),
            config: config.clone(),
            fields,
        },
        summary: summarise(&records),
        records,
    };
    if let Some(path) = &config.output {
        let file = io::BufWriter::new(std::fs::File::create(path)?);
        report.write(config.format, file)?;
    }
    Ok(report)
}

fn summarise(records: &[Record]) -> Summary {
    let mut s = Summary {
        records: records.len(),
        ..Summary::default()
    };
    for r in records {
        match r.status {
            Status::Pass => s.passed += 1,
            Status::Fail => s.failed += 1,
            Status::HypothesisFailed => s.hypothesis_failed += 1,
            Status::NotApplicable => s.not_applicable += 1,
            Status::Skipped => s.skipped += 1,
            Status::Truncated => s.truncated += 1,
            Status::Error => s.errors += 1,
        }
        s.theorem_failures += usize::from(r.is_theorem_failure());
    }
    s
}

fn run_pair(q: u64, m: u32, checks: &[CheckKind], limits: &Limits) -> Vec<Record> {
    let graph = GpGraph::for_q(q, m);
    checks
        .iter()
        .map(|&check| {
            let start = Instant::now();
            let outcome = match &graph {
                Ok(g) => run_check(g, check, limits),
                Err(e) => Outcome::error(e.to_string()),
            };
            outcome.into_record(q, m, check, start.elapsed())
        })
        .collect()
}

/// What a single check produced, before timing and labelling.
struct Outcome {
    status: Status,
    hypotheses_met: bool,
    pass: bool,
    witness: Option<Value>,
    sizes: Option<Vec<usize>>,
    detail: Value,
}

impl Outcome {
    fn verdict(pass: bool, witness: Option<Value>, detail: Value) -> Outcome {
        Outcome {
            status: if pass { Status::Pass } else { Status::Fail },
            hypotheses_met: true,
            pass,
            witness,
            sizes: None,
            detail,
        }
    }

    fn other(status: Status, detail: Value) -> Outcome {
        Outcome {
            status,
            hypotheses_met: false,
            pass: false,
            witness: None,
            sizes: None,
            detail,
        }
    }

    fn error(message: String) -> Outcome {
        Outcome::other(Status::Error, json!({ "error": message }))
    }

    fn into_record(self, q: u64, m: u32, check: CheckKind, elapsed: Duration) -> Record {
        Record {
            q,
            m,
            check_name: check.name().to_string(),
            status: self.status,
            theorem: check.is_theorem(),
            hypotheses_met: self.hypotheses_met,
            pass: self.pass,
            witness: self.witness,
            sizes: self.sizes,
            detail: self.detail,
            elapsed_ms: elapsed.as_millis() as u64,
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialise")
}

fn run_check(g: &GpGraph, check: CheckKind, limits: &Limits) -> Outcome {
    let result = match check {
        CheckKind::Srg => Ok(srg_check(g)),
        CheckKind::Oa => Ok(oa_check(g)),
        CheckKind::OvalStructure => Ok(structure_check(g)),
        CheckKind::Eigenfunction => Ok(eigenfunction_check(g)),
        CheckKind::Constructions => constructions_check(g),
        CheckKind::Conjecture1 => conjecture_check(g, Conjecture::PencilCliques),
        CheckKind::Conjecture2 => conjecture_check(g, Conjecture::OvalCliques),
        CheckKind::Correspondences => correspondence_check(g),
        CheckKind::Census => census_check(g, limits),
        CheckKind::K4 => k4_check(g),
        CheckKind::Charsum => Ok(charsum_check(g)),
        CheckKind::CounterexampleFamily => counterexample_check(g, limits),
    };
    result.unwrap_or_else(|e| Outcome::error(e.to_string()))
}

fn pair_seed(g: &GpGraph, salt: u64) -> u64 {
    salt ^ ((g.q() as u64) << 20) ^ g.m() as u64
}

fn srg_check(g: &GpGraph) -> Outcome {
    let r = verify_srg(g);
    Outcome::verdict(r.pass(), r.discrepancy.as_ref().map(to_value), to_value(&r))
}

fn oa_check(g: &GpGraph) -> Outcome {
    let oa = build_oa(g);
    let orthogonal = oa.is_orthogonal();
    let block_graph = block_graph_equals_gp(&oa, g);
    Outcome::verdict(
        orthogonal && block_graph,
        None,
        json!({ "rows": oa.w(), "columns": oa.column_elements().len(), "orthogonal": orthogonal, "block_graph_equals_gp": block_graph }),
    )
}

fn structure_check(g: &GpGraph) -> Outcome {
    let o = Oval::new(g);
    let plain = verify_structure(&o, g, false);
    let scaled = verify_structure(&o, g, true);
    let pass = plain.pass && scaled.pass;
    let witness = (!pass).then(|| json!({ "q_ok": plain.pass, "alpha_q_ok": scaled.pass }));
    Outcome::verdict(pass, witness, json!({ "q": plain, "alpha_q": scaled }))
}

fn eigenfunction_check(g: &GpGraph) -> Outcome {
    let o = Oval::new(g);
    let Some((i1, i2)) = find_bipartite_pair(&o, g) else {
        return Outcome::other(
            Status::NotApplicable,
            json!({ "reason": "no complete bipartite pair of parts in Q" }),
        );
    };
    let f = match build_eigenfunction(&o, g, i1, i2) {
        Ok(f) => f,
        Err(e) => return Outcome::error(e.to_string()),
    };
    let w = g.w() as i64;
    let exact = verify_eigenfunction(g, &f);
    let eigenvalue_ok = f.eigenvalue() == -w;
    let support_ok = f.support_size() == 2 * w as usize;
    let pass = exact && eigenvalue_ok && support_ok;
    Outcome::verdict(
        pass,
        (!pass).then(|| to_value(&f)),
        json!({ "pair": [i1, i2], "eigenvalue": f.eigenvalue(), "support": f.support_size(), "exact": exact }),
    )
}

fn constructions_check(g: &GpGraph) -> Result<Outcome, CliqueZooError> {
    let mut built: Vec<ConstructionResult> = vec![fq_alpha_construction(g)?, alpha_q0_construction(g)?];
    if divides_half(g) {
        built.push(alpha_fq_one_construction(g)?);
        built.push(q0_construction(g)?);
    }
    let pass = built.iter().all(ConstructionResult::size_matches);
    let witness = built.iter().find(|c| !c.size_matches()).map(to_value);
    let sizes: Vec<usize> = built.iter().map(|c| c.clique.len()).collect();
    let detail: Vec<Value> = built
        .iter()
        .map(|c| {
            json!({
                "kind": c.kind.label(),
                "size": c.clique.len(),
                "predicted_size": c.predicted_size,
                "maximality": c.maximality,
            })
        })
        .collect();
    let mut out = Outcome::verdict(pass, witness, Value::Array(detail));
    out.sizes = Some(sizes);
    Ok(out)
}

fn conjecture_check(g: &GpGraph, which: Conjecture) -> Result<Outcome, CliqueZooError> {
    let report = conjecture_evidence(g, which)?;
    let hypotheses = check_hypotheses(g);
    let witness = report
        .witness()
        .map(|(c, v)| json!({ "construction": c.kind.label(), "extends_by": v }));
    let sizes = report.constructions.iter().map(|c| c.clique.len()).collect();
    let detail = json!({
        "constructions": report.constructions.iter().map(|c| json!({
            "kind": c.kind.label(),
            "size": c.clique.len(),
            "maximality": c.maximality,
        })).collect::<Vec<_>>(),
        "hypotheses": hypotheses.as_ref().err().map(ToString::to_string),
    });
    let mut out = Outcome::verdict(report.pass, witness, detail);
    out.sizes = Some(sizes);
    if hypotheses.is_err() {
        out.status = Status::HypothesisFailed;
        out.hypotheses_met = false;
    }
    Ok(out)
}

fn correspondence_check(g: &GpGraph) -> Result<Outcome, CliqueZooError> {
    let mut reports = vec![verify_psi_correspondence(g)?];
    if divides_half(g) {
        reports.push(verify_phi_correspondence(g)?);
    }
    let pass = reports.iter().all(|r| r.holds);
    let witness = reports.iter().find(|r| !r.holds).map(to_value);
    let detail = reports
        .iter()
        .map(|r| json!({ "map": r.map, "domain": r.domain, "holds": r.holds, "literal_q0_holds": r.literal_q0_holds }))
        .collect();
    Ok(Outcome::verdict(pass, witness, Value::Array(detail)))
}

fn enum_limits(limits: &Limits) -> EnumLimits {
    EnumLimits {
        time_budget: limits.time_per_check,
        ..EnumLimits::default()
    }
}

fn census_check(g: &GpGraph, limits: &Limits) -> Result<Outcome, CliqueZooError> {
    if !limits.force_enumeration && !census_allowed(g) {
        return Ok(Outcome::other(
            Status::Skipped,
            json!({ "reason": "above the census gate; rerun with force" }),
        ));
    }
    let census = maximal_size_census_with_limits(g, CensusMode::Rooted, true, &enum_limits(limits))?;
    let stability = stability_check(g, &census);
    let witness = stability.checks.iter().find(|c| !c.pass).map(to_value);
    let mut out = Outcome::verdict(
        stability.pass,
        witness,
        json!({ "mode": census.mode, "counts": census.counts, "checks": stability.checks }),
    );
    out.sizes = Some(census.sizes());
    if census.truncated {
        out.status = Status::Truncated;
        out.pass = false;
    }
    Ok(out)
}

fn k4_check(g: &GpGraph) -> Result<Outcome, CliqueZooError> {
    let formula = match k4_count(g, K4Mode::Formula) {
        Ok(n) => n,
        Err(CliqueZooError::FormulaInapplicable { .. }) => {
            return Ok(Outcome::other(
                Status::NotApplicable,
                json!({ "reason": "formula needs m = (q+1)/3 and q = 2 mod 3" }),
            ))
        }
        Err(e) => return Err(e),
    };
    match k4_count(g, K4Mode::BruteForce) {
        Ok(brute) => Ok(Outcome::verdict(
            brute == formula,
            (brute != formula).then(|| json!({ "formula": formula, "brute_force": brute })),
            json!({ "formula": formula, "brute_force": brute }),
        )),
        Err(CliqueZooError::EnumerationRefused { .. }) => Ok(Outcome::other(
            Status::Skipped,
            json!({ "formula": formula, "reason": "too large for brute force" }),
        )),
        Err(e) => Err(e),
    }
}

/// Samples per pair for the character-sum check.
const CHARSUM_SAMPLES: usize = 100;

fn charsum_check(g: &GpGraph) -> Outcome {
    let f = g.field();
    let mut rng = ChaCha8Rng::seed_from_u64(pair_seed(g, 0xc4a2_5000_0000));
    let sums = sample_line_sums_of_order(f, g.m() as u64, CHARSUM_SAMPLES, &mut rng);
    let full: Vec<_> = f.elements().filter(|&x| f.degree_over_prime(x) == f.degree()).collect();
    let mut runs_ok = true;
    let mut guaranteed = false;
    let mut run_witness = None;
    for _ in 0..CHARSUM_SAMPLES {
        let u = full[rng.gen_range(0..full.len())];
        let r = consecutive_power_check(g, u).expect("u has full degree");
        guaranteed = r.guaranteed;
        if !r.pass() {
            runs_ok = false;
            run_witness.get_or_insert(u);
        }
    }
    let pass = sums.pass() && runs_ok;
    let witness = sums
        .violations
        .first()
        .map(to_value)
        .or_else(|| run_witness.map(|u| json!({ "all_mth_powers_on": u })));
    Outcome::verdict(
        pass,
        witness,
        json!({ "samples": sums.samples, "max_ratio": sums.max_ratio, "non_power_guaranteed": guaranteed }),
    )
}

/// `r` with `q = r³` and `m = r² − r + 1`, if the pair belongs to the family.
fn family_parameter(q: u64, m: u32) -> Option<u32> {
    let r = (1..=q).map(|r| r as u32).find(|&r| (r as u64).pow(3) >= q)?;
    ((r as u64).pow(3) == q && m == r * r - r + 1).then_some(r)
}

fn counterexample_check(g: &GpGraph, limits: &Limits) -> Result<Outcome, CliqueZooError> {
    let Some(r) = family_parameter(g.q() as u64, g.m()) else {
        return Ok(Outcome::other(
            Status::NotApplicable,
            json!({ "reason": "pair is not of the form (r^3, r^2 - r + 1)" }),
        ));
    };
    let census = limits.force_enumeration || census_allowed(g);
    let rep = counterexample_family(r, census, limits.force_enumeration)?;
    let mut out = Outcome::verdict(rep.pass, (!rep.pass).then(|| to_value(&rep)), to_value(&rep));
    out.hypotheses_met = false;
    out.sizes = rep.sizes.clone();
    Ok(out)
}
