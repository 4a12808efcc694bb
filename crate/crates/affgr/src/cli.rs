//! Batch command implementations behind the `affgr` binary: enumeration,
//! factorization, smoothness reports, and identity verification, with
//! machine-readable output and deterministic ordering.

use std::str::FromStr;

use serde::Serialize;

use crate::cartan::{AffineType, Family, Gen};
use crate::segments::{ColoredPartition, SegmentSystem};
use crate::series;
use crate::smoothness::{self, BruhatPoset};
use crate::typea;
use crate::weyl::{GroupElement, QuotientElement};
use crate::{Error, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAIL: i32 = 1;
pub const EXIT_RESOURCE_CAP: i32 = 2;
pub const EXIT_INVALID_INPUT: i32 = 3;

/// Maps an error to the documented exit codes.
pub fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ResourceCap { .. } => EXIT_RESOURCE_CAP,
        Error::FactorizationInvariant(_) => EXIT_VERIFY_FAIL,
        _ => EXIT_INVALID_INPUT,
    }
}

#[derive(Debug, Copy, Clone, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "text" => Ok(OutputFormat::Text),
            other => Err(Error::InvalidInput(format!("unknown format {other:?}"))),
        }
    }
}

/// Shared run configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub ty: AffineType,
    pub max_len: usize,
    pub trunc: usize,
    pub format: OutputFormat,
    pub cap_elements: usize,
    pub threads: usize,
}

impl Config {
    /// Degree 100 for the infinite families, 60 for E₈ (240 segments keep
    /// the series DP cheap but the longer table makes deep truncation slow).
    pub fn default_trunc(ty: AffineType) -> usize {
        if ty.family() == Family::E8 {
            60
        } else {
            100
        }
    }

    pub fn threads_from_env() -> usize {
        std::env::var("AFFGR_THREADS")
            .ok()
            .and_then(|v| v.parse().ok())
            .filter(|&t| t >= 1)
            .unwrap_or(1)
    }
}

#[derive(Serialize)]
struct EnumerateRecord {
    partition: String,
    word: Vec<u32>,
    length: usize,
}

/// The canonical reduced word of `w`: the concatenation of its segment
/// factorization, so that every command prints the same word for the same
/// element.
fn canonical_word(system: &SegmentSystem, w: &QuotientElement) -> Result<Vec<u32>> {
    Ok(system
        .factor(w)?
        .iter()
        .flat_map(|s| s.word.iter().map(|&g| g as u32))
        .collect())
}

/// One record per quotient element, ordered by (length, partition).
pub fn cmd_enumerate(cfg: &Config, out: &mut impl std::io::Write) -> Result<()> {
    let poset = BruhatPoset::build_threaded(cfg.ty, cfg.max_len, cfg.cap_elements, cfg.threads)?;
    let system = SegmentSystem::get(cfg.ty)?;
    if cfg.format == OutputFormat::Csv {
        writeln!(out, "partition,word,length").unwrap();
    }
    for id in poset.all_ids() {
        let rec = EnumerateRecord {
            partition: poset.partition(id).to_string(),
            word: canonical_word(&system, poset.element(id))?,
            length: poset.len_of(id),
        };
        match cfg.format {
            OutputFormat::Json => {
                writeln!(out, "{}", serde_json::to_string(&rec).unwrap()).unwrap()
            }
            OutputFormat::Csv => writeln!(
                out,
                "\"{}\",\"{}\",{}",
                rec.partition,
                rec.word
                    .iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
                rec.length
            )
            .unwrap(),
            OutputFormat::Text => writeln!(
                out,
                "{:>4}  {:<24} {}",
                rec.length,
                rec.partition,
                poset.element(id)
            )
            .unwrap(),
        }
    }
    Ok(())
}

/// Input forms accepted by `factor`.
pub enum FactorInput {
    Word(Vec<Gen>),
    Partition(String),
    Core(Vec<u32>),
    Bounded(Vec<u32>),
}

pub fn parse_word(ty: AffineType, text: &str) -> Result<Vec<Gen>> {
    text.split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| {
            let g: usize = t
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad generator {t:?}")))?;
            if g >= ty.nodes() {
                return Err(Error::InvalidInput(format!("generator {g} out of range")));
            }
            Ok(g as Gen)
        })
        .collect()
}

pub fn parse_row_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad part {t:?}")))
        })
        .collect()
}

#[derive(Serialize)]
struct FactorRecord {
    r#type: String,
    word: Vec<u32>,
    length: usize,
    partition: String,
    segments: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    core: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bounded: Option<Vec<u32>>,
}

/// Resolves the input to a minimal representative and prints `r(w)`, `π(w)`,
/// and (type A) the core and bounded partitions.
pub fn cmd_factor(cfg: &Config, input: FactorInput, out: &mut impl std::io::Write) -> Result<()> {
    let ty = cfg.ty;
    let system = SegmentSystem::get(ty)?;
    let w: QuotientElement = match input {
        FactorInput::Word(word) => QuotientElement::new(GroupElement::from_word(ty, &word))?,
        FactorInput::Partition(text) => {
            let lambda = ColoredPartition::parse(ty, &text)?;
            system.pi_inv(&lambda)?
        }
        FactorInput::Core(rows) => {
            if ty.family() != Family::A {
                return Err(Error::InvalidInput("core input is type A only".into()));
            }
            let core = typea::CorePartition::new(rows, ty.rank())?;
            typea::a_map(ty, &typea::b_map(&core))?
        }
        FactorInput::Bounded(rows) => {
            if ty.family() != Family::A {
                return Err(Error::InvalidInput("bounded input is type A only".into()));
            }
            let mu = typea::BoundedPartition::new(rows, ty.rank())?;
            typea::a_map(ty, &mu)?
        }
    };
    let factors = system.factor(&w)?;
    let lambda = system.pi(&w)?;
    let (core, bounded) = if ty.family() == Family::A {
        let core = typea::c_map(&w)?;
        let bounded = typea::b_map(&core);
        (Some(core.rows().to_vec()), Some(bounded.rows().to_vec()))
    } else {
        (None, None)
    };
    let word = canonical_word(&system, &w)?;
    let rec = FactorRecord {
        r#type: ty.to_string(),
        word,
        length: w.len(),
        partition: lambda.to_string(),
        segments: factors.iter().map(|s| s.to_string()).collect(),
        core,
        bounded,
    };
    match cfg.format {
        OutputFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&rec).unwrap()).unwrap()
        }
        _ => {
            let letters: Vec<super::cartan::Gen> =
                rec.word.iter().map(|&g| g as super::cartan::Gen).collect();
            writeln!(out, "type:      {}", rec.r#type).unwrap();
            writeln!(out, "word:      {}", GroupElement::from_word(ty, &letters)).unwrap();
            writeln!(out, "length:    {}", rec.length).unwrap();
            writeln!(out, "partition: {}", rec.partition).unwrap();
            writeln!(out, "segments:  {}", rec.segments.join(" · ")).unwrap();
            if let Some(core) = &rec.core {
                writeln!(out, "core:      {:?}", core).unwrap();
            }
            if let Some(bounded) = &rec.bounded {
                writeln!(out, "bounded:   {:?}", bounded).unwrap();
            }
        }
    }
    Ok(())
}

/// Emits the per-element classification report.
pub fn cmd_smoothness(cfg: &Config, out: &mut impl std::io::Write) -> Result<()> {
    let poset = BruhatPoset::build_threaded(cfg.ty, cfg.max_len, cfg.cap_elements, cfg.threads)?;
    let records = smoothness::classification_report(&poset)?;
    if cfg.format == OutputFormat::Csv {
        writeln!(out, "partition,length,palindromic,cpo,chain,yb_nice").unwrap();
    }
    for rec in records {
        match cfg.format {
            OutputFormat::Json => {
                writeln!(out, "{}", serde_json::to_string(&rec).unwrap()).unwrap()
            }
            OutputFormat::Csv => writeln!(
                out,
                "\"{}\",{},{},{},{},{}",
                rec.partition, rec.length, rec.palindromic, rec.cpo, rec.chain, rec.yb_nice
            )
            .unwrap(),
            OutputFormat::Text => writeln!(
                out,
                "{:>4}  {:<20} palindromic={} cpo={} chain={} yb_nice={}",
                rec.length, rec.partition, rec.palindromic, rec.cpo, rec.chain, rec.yb_nice
            )
            .unwrap(),
        }
    }
    Ok(())
}

#[derive(Serialize)]
pub struct VerifyLine {
    pub identity: String,
    pub r#type: String,
    pub rank: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_mismatch_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl VerifyLine {
    fn new(ty: AffineType, identity: String, holds: bool) -> Self {
        VerifyLine {
            identity,
            r#type: ty.family().letter().to_string(),
            rank: ty.rank(),
            status: if holds { "PASS" } else { "FAIL" }.into(),
            first_mismatch_degree: None,
            detail: None,
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = Some(detail);
        self
    }
}

fn emit(line: &VerifyLine, cfg: &Config, out: &mut impl std::io::Write) {
    match cfg.format {
        OutputFormat::Json => writeln!(out, "{}", serde_json::to_string(line).unwrap()).unwrap(),
        _ => writeln!(
            out,
            "{}{:<5} {:<42} [{}]{}{}",
            line.r#type,
            line.rank,
            line.identity,
            line.status,
            line.first_mismatch_degree
                .map(|d| format!(" first mismatch at degree {d};"))
                .unwrap_or_default(),
            line.detail
                .as_deref()
                .map(|d| format!(" {d}"))
                .unwrap_or_default()
        )
        .unwrap(),
    }
}

/// Generating-function identities for one type. Returns pass/fail.
pub fn verify_identities(cfg: &Config, out: &mut impl std::io::Write) -> Result<bool> {
    let ty = cfg.ty;
    let n = ty.rank();
    let mut ok = true;
    match ty.family() {
        Family::B => {
            let rep = series::closed_form_b(n)?;
            ok &= rep.holds;
            emit(
                &VerifyLine::new(ty, "closed form vs Bott".into(), rep.holds),
                cfg,
                out,
            );
        }
        Family::C => {
            let rep = series::closed_form_c(n)?;
            ok &= rep.holds;
            emit(
                &VerifyLine::new(ty, "closed form vs Bott".into(), rep.holds),
                cfg,
                out,
            );
        }
        Family::D => {
            let rep = series::closed_form_d(n)?;
            ok &= rep.holds;
            emit(
                &VerifyLine::new(ty, "closed form vs Bott".into(), rep.holds),
                cfg,
                out,
            );
        }
        Family::G2 | Family::F4 => {
            let system = SegmentSystem::get(ty)?;
            let chain = series::chain_sum_genfun(&system, cfg.trunc, 10_000_000)?;
            let bott = ty.bott_series(cfg.trunc);
            let holds = chain == bott;
            ok &= holds;
            emit(
                &VerifyLine::new(ty, "chain expansion vs Bott (truncated)".into(), holds)
                    .with_detail(format!("degree {}", cfg.trunc)),
                cfg,
                out,
            );
            if ty.family() == Family::F4 {
                let rep = series::f4_appendix_data()?;
                ok &= rep.identity_holds;
                emit(
                    &VerifyLine::new(ty, "NR/NRE rational identity".into(), rep.identity_holds),
                    cfg,
                    out,
                );
            }
        }
        Family::A | Family::E6 | Family::E7 | Family::E8 => {
            let system = SegmentSystem::get(ty)?;
            let ps = series::partition_series(&system, cfg.trunc);
            let bott = ty.bott_series(cfg.trunc);
            let holds = ps == bott;
            ok &= holds;
            emit(
                &VerifyLine::new(ty, "partition series vs Bott (truncated)".into(), holds)
                    .with_detail(format!("degree {}", cfg.trunc)),
                cfg,
                out,
            );
        }
    }
    Ok(ok)
}

/// Layer sizes vs Bott coefficients vs partition counts.
pub fn verify_bijection(cfg: &Config, out: &mut impl std::io::Write) -> Result<bool> {
    let ty = cfg.ty;
    let poset = BruhatPoset::build_threaded(ty, cfg.max_len, cfg.cap_elements, cfg.threads)?;
    let system = SegmentSystem::get(ty)?;
    let bott = ty.bott_series(cfg.max_len);
    let ps = series::partition_series(&system, cfg.max_len);
    let mut ok = true;
    let mut first_mismatch = None;
    for l in 0..=cfg.max_len {
        let layer = poset.ids_of_len(l).len();
        let agree =
            &num_bigint::BigInt::from(layer) == bott.coeff(l) && bott.coeff(l) == ps.coeff(l);
        if !agree && first_mismatch.is_none() {
            first_mismatch = Some(l);
        }
        ok &= agree;
    }
    let mut line = VerifyLine::new(
        ty,
        format!("BFS layers = Bott = partition counts (≤ {})", cfg.max_len),
        ok,
    );
    line.first_mismatch_degree = first_mismatch;
    emit(&line, cfg, out);
    Ok(ok)
}

/// Empirical palindromics vs the predicted classification.
pub fn verify_palindromy(cfg: &Config, out: &mut impl std::io::Write) -> Result<bool> {
    let ty = cfg.ty;
    let poset = BruhatPoset::build_threaded(ty, cfg.max_len, cfg.cap_elements, cfg.threads)?;
    let empirical = smoothness::empirical_palindromics(&poset);
    let predicted = smoothness::predicted_palindromics(ty, cfg.max_len)?;
    let ok = empirical == predicted;
    let detail = if ok {
        Some(format!("{} palindromic elements", empirical.len()))
    } else {
        let missing: Vec<String> = predicted
            .difference(&empirical)
            .map(|p| p.to_string())
            .collect();
        let extra: Vec<String> = empirical
            .difference(&predicted)
            .map(|p| p.to_string())
            .collect();
        Some(format!("missing={missing:?} unexpected={extra:?}"))
    };
    let mut line = VerifyLine::new(
        ty,
        format!("palindromic set = predicted (≤ {})", cfg.max_len),
        ok,
    );
    line.detail = detail;
    emit(&line, cfg, out);
    Ok(ok)
}

/// F₄ NR/NRE data: |NR| = 132, |NRE| = 96, coefficient vectors, identity.
pub fn verify_f4_appendix(cfg: &Config, out: &mut impl std::io::Write) -> Result<bool> {
    let rep = series::f4_appendix_data()?;
    let nr_expected: Vec<u64> = vec![
        1, 1, 1, 1, 1, 2, 2, 3, 3, 3, 4, 4, 5, 5, 5, 5, 4, 5, 5, 6, 6, 6, 6, 6, 5, 5, 4, 4, 3, 2,
        2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1,
    ];
    let nre_expected: Vec<u64> = vec![
        1, 1, 1, 1, 1, 2, 2, 3, 2, 2, 2, 2, 2, 3, 3, 3, 2, 3, 4, 5, 5, 4, 4, 4, 3, 3, 3, 3, 2, 1,
        2, 2, 3, 2, 2, 2, 2, 1, 1, 1, 1,
    ];
    let maximizer = ColoredPartition::parse(cfg.ty, "13,12^1,10^1,5^1")?;
    let checks: Vec<(String, bool)> = vec![
        (
            format!("|NR| = 132 (got {})", rep.nr.len()),
            rep.nr.len() == 132,
        ),
        (
            format!("|NRE| = 96 (got {})", rep.nre.len()),
            rep.nre.len() == 96,
        ),
        ("NR coefficient vector".into(), rep.nr_coeffs == nr_expected),
        (
            "NRE coefficient vector".into(),
            rep.nre_coeffs == nre_expected,
        ),
        (
            "max |λ| = 40 with unique maximizer 13,12^1,10^1,5^1".into(),
            rep.nr_max_size == 40 && rep.nr_max_partitions == vec![maximizer],
        ),
        ("NR/NRE identity = Bott".into(), rep.identity_holds),
    ];
    let mut ok = true;
    for (name, holds) in checks {
        ok &= holds;
        emit(&VerifyLine::new(cfg.ty, name, holds), cfg, out);
    }
    Ok(ok)
}

/// The published `m_W` value per type. Type `D` carries two conflicting
/// stated values (`n-2` and `n-1`); `A₂` carries a stated value whose
/// witness mechanism needs `n ≥ 3` (the depth-2 witness `(C_{2,2})²` of
/// `A₃` degenerates to a palindromic spiral in `A₂`), so the observed value
/// there is 1.
pub enum MwClaim {
    Exact(usize),
    StatedWithDeskValue { stated: usize, desk: usize },
    DConflict { table: usize, corollary: usize },
}

pub fn stated_mw(ty: AffineType) -> MwClaim {
    let n = ty.rank();
    match ty.family() {
        Family::A if n == 1 => MwClaim::Exact(0),
        Family::A if n == 2 => MwClaim::StatedWithDeskValue { stated: 2, desk: 1 },
        Family::A => MwClaim::Exact(2),
        Family::B if n == 3 => MwClaim::Exact(2),
        Family::B => MwClaim::Exact(4),
        Family::C => MwClaim::Exact(2),
        Family::D => MwClaim::DConflict {
            table: n - 2,
            corollary: n - 1,
        },
        Family::E6 => MwClaim::Exact(3),
        Family::E7 => MwClaim::Exact(4),
        Family::E8 => MwClaim::Exact(6),
        Family::F4 => MwClaim::Exact(4),
        Family::G2 => MwClaim::Exact(4),
    }
}

/// Empirical `m_W` vs the stated values; in type D the suite passes iff the
/// value matches one of the two conflicting claims and reports which.
pub fn verify_mw(cfg: &Config, out: &mut impl std::io::Write) -> Result<bool> {
    let ty = cfg.ty;
    let poset = BruhatPoset::build_threaded(ty, cfg.max_len, cfg.cap_elements, cfg.threads)?;
    let report = smoothness::empirical_mw(&poset)?;
    let witnesses: Vec<String> = report
        .witnesses
        .iter()
        .take(4)
        .map(|p| p.to_string())
        .collect();
    let (ok, detail) = match stated_mw(ty) {
        MwClaim::Exact(m) => (
            report.value == m,
            format!(
                "empirical {} vs stated {m}; deepest witnesses {witnesses:?}",
                report.value
            ),
        ),
        MwClaim::StatedWithDeskValue { stated, desk } => (
            report.value == desk,
            format!(
                "empirical {} (stated {stated} certifies but has no witness at this rank); deepest witnesses {witnesses:?}",
                report.value
            ),
        ),
        MwClaim::DConflict { table, corollary } => {
            let matches_table = report.value == table;
            let matches_corollary = report.value == corollary;
            let which = if matches_table {
                format!("matches the stated n-2 = {table}; the alternative stated n-1 = {corollary} fails")
            } else if matches_corollary {
                format!("matches the stated n-1 = {corollary}; the alternative stated n-2 = {table} fails")
            } else {
                format!("matches neither n-2 = {table} nor n-1 = {corollary}")
            };
            (
                matches_table || matches_corollary,
                format!(
                    "empirical {} ({which}); deepest witnesses {witnesses:?}",
                    report.value
                ),
            )
        }
    };
    emit(
        &VerifyLine::new(ty, format!("m_W (≤ {})", cfg.max_len), ok).with_detail(detail),
        cfg,
        out,
    );
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(ty: &str, max_len: usize) -> Config {
        Config {
            ty: ty.parse().unwrap(),
            max_len,
            trunc: 40,
            format: OutputFormat::Json,
            cap_elements: 1_000_000,
            threads: 1,
        }
    }

    #[test]
    fn enumerate_g2_record_count() {
        let mut buf = vec![];
        cmd_enumerate(&cfg("G2", 5), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        // Bott coefficients 1,1,1,1,1,2 → 6 nonidentity records plus the
        // identity.
        assert_eq!(text.lines().count(), 7);
        let last = text.lines().last().unwrap();
        assert!(last.contains("\"partition\":\"5\""), "{last}");
    }

    #[test]
    fn factor_known_values() {
        let mut buf = vec![];
        cmd_factor(
            &cfg("B4", 24),
            FactorInput::Partition("7,5,5,3,1".into()),
            &mut buf,
        )
        .unwrap();
        let rec: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(
            rec["word"],
            serde_json::json!([0, 3, 2, 1, 3, 4, 3, 2, 0, 3, 4, 3, 2, 1, 0, 2, 3, 4, 3, 2, 0])
        );
        // A3 word "0" → core (1), bounded (1).
        let mut buf = vec![];
        cmd_factor(&cfg("A3", 12), FactorInput::Word(vec![0]), &mut buf).unwrap();
        let rec: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(rec["core"], serde_json::json!([1]));
        assert_eq!(rec["bounded"], serde_json::json!([1]));
        // A3 bounded "3,3" → s1 s0 s3 s2 s1 s0.
        let mut buf = vec![];
        cmd_factor(&cfg("A3", 12), FactorInput::Bounded(vec![3, 3]), &mut buf).unwrap();
        let rec: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(rec["word"], serde_json::json!([1, 0, 3, 2, 1, 0]));
    }

    #[test]
    fn factor_rejects_non_min_rep() {
        let mut buf = vec![];
        let err = cmd_factor(&cfg("A3", 12), FactorInput::Word(vec![1]), &mut buf).unwrap_err();
        assert_eq!(exit_code_for(&err), EXIT_INVALID_INPUT);
    }

    #[test]
    fn verify_bijection_c2() {
        let mut buf = vec![];
        assert!(verify_bijection(&cfg("C2", 10), &mut buf).unwrap());
    }

    /// Piping enumerate output back through factor reproduces the records.
    #[test]
    fn enumerate_factor_round_trip() {
        let c = cfg("D4", 7);
        let mut buf = vec![];
        cmd_enumerate(&c, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        for line in text.lines() {
            let rec: serde_json::Value = serde_json::from_str(line).unwrap();
            let mut out = vec![];
            cmd_factor(
                &c,
                FactorInput::Partition(rec["partition"].as_str().unwrap().to_string()),
                &mut out,
            )
            .unwrap();
            let back: serde_json::Value = serde_json::from_slice(&out).unwrap();
            assert_eq!(back["word"], rec["word"]);
            assert_eq!(back["length"], rec["length"]);
            assert_eq!(back["partition"], rec["partition"]);
        }
    }

    /// Output is deterministic across repeated runs and thread counts.
    #[test]
    fn enumerate_deterministic_across_threads() {
        let mut single = cfg("B4", 8);
        let mut buf1 = vec![];
        cmd_enumerate(&single, &mut buf1).unwrap();
        single.threads = 4;
        let mut buf4 = vec![];
        cmd_enumerate(&single, &mut buf4).unwrap();
        assert_eq!(buf1, buf4);
    }
}
