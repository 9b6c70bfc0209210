//! Line-delimited JSON corpus of curves with known `E(Q^ab)_tors`.
//!
//! The first non-blank line is a header `{"version": 1, ...}`; each further
//! line is one entry ingested either by j-invariant or by a-invariants.

use std::collections::BTreeMap;

use qab_arith::{parse_rational, Rational};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algorithm::{classification_gate, torsion_over_qab};
use crate::curve::{curve_from_j, RationalCurve};
use crate::group::TorsionGroup;

pub const CORPUS_VERSION: u32 = 1;

/// The corpus shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../data/corpus.jsonl");

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ingestion {
    J(Rational),
    AInvariants([i64; 5]),
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub ingestion: Ingestion,
    pub expected: TorsionGroup,
    pub note: String,
}

impl CorpusEntry {
    pub fn curve(&self) -> crate::Result<RationalCurve> {
        match &self.ingestion {
            Ingestion::J(j) => Ok(curve_from_j(j)),
            Ingestion::AInvariants(a) => RationalCurve::from_ints(*a),
        }
    }
}

#[derive(Deserialize)]
struct Header {
    version: u32,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    label: String,
    j: Option<String>,
    a_invariants: Option<[i64; 5]>,
    expected: String,
    note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Malformed {
    pub line: usize,
    pub message: String,
}

fn parse_entry(line: &str) -> Result<CorpusEntry, String> {
    let raw: RawEntry = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let ingestion = match (raw.j, raw.a_invariants) {
        (Some(j), None) => {
            let j = parse_rational(&j).map_err(|e| format!("j: {e}"))?;
            if j == Rational::from_integer(0.into()) || j == Rational::from_integer(1728.into()) {
                return Err("j = 0 and j = 1728 entries must give a-invariants".into());
            }
            Ingestion::J(j)
        }
        (None, Some(a)) => Ingestion::AInvariants(a),
        _ => return Err("exactly one of \"j\" and \"a_invariants\" is required".into()),
    };
    let expected: TorsionGroup = raw.expected.parse()?;
    if !classification_gate(&expected) {
        return Err(format!("expected group {expected} is not admissible"));
    }
    Ok(CorpusEntry { label: raw.label, ingestion, expected, note: raw.note.unwrap_or_default() })
}

/// Parses a corpus. Bad lines are reported with 1-based line numbers and
/// skipped.
pub fn parse_corpus(text: &str) -> (Vec<CorpusEntry>, Vec<Malformed>) {
    let mut entries = Vec::new();
    let mut bad = Vec::new();
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    let Some((i, first)) = lines.next() else {
        return (entries, bad);
    };
    match serde_json::from_str::<Header>(first) {
        Ok(h) if h.version == CORPUS_VERSION => {}
        Ok(h) => bad.push(Malformed { line: i + 1, message: format!("unsupported corpus version {}", h.version) }),
        Err(e) => bad.push(Malformed { line: i + 1, message: format!("missing header: {e}") }),
    }
    for (i, line) in lines {
        match parse_entry(line) {
            Ok(e) => entries.push(e),
            Err(message) => bad.push(Malformed { line: i + 1, message }),
        }
    }
    (entries, bad)
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryResult {
    pub label: String,
    pub expected: TorsionGroup,
    pub computed: Option<TorsionGroup>,
    pub isogeny_degrees: Vec<u64>,
    pub error: Option<String>,
    pub matched: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub results: Vec<EntryResult>,
    pub malformed: Vec<Malformed>,
    pub matched: usize,
    pub mismatched: usize,
    /// Entries counted by computed group.
    pub per_group: BTreeMap<String, usize>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.mismatched == 0 && self.malformed.is_empty()
    }
}

pub fn evaluate(entry: &CorpusEntry) -> EntryResult {
    let outcome = entry.curve().and_then(|e| torsion_over_qab(&e));
    let (computed, isogeny_degrees, error) = match outcome {
        Ok((t, trace)) => (Some(t), trace.degrees, None),
        Err(e) => (None, Vec::new(), Some(e.to_string())),
    };
    EntryResult {
        label: entry.label.clone(),
        expected: entry.expected,
        matched: computed == Some(entry.expected),
        computed,
        isogeny_degrees,
        error,
    }
}

/// Evaluates every entry on up to `jobs` threads; results are sorted by
/// label.
pub fn run_corpus(entries: &[CorpusEntry], malformed: Vec<Malformed>, jobs: usize) -> CorpusSummary {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool");
    let mut results: Vec<EntryResult> = pool.install(|| entries.par_iter().map(evaluate).collect());
    results.sort_by(|a, b| a.label.cmp(&b.label));
    let matched = results.iter().filter(|r| r.matched).count();
    let mut per_group = BTreeMap::new();
    for r in &results {
        if let Some(t) = r.computed {
            *per_group.entry(t.to_string()).or_insert(0) += 1;
        }
    }
    CorpusSummary { mismatched: results.len() - matched, matched, results, malformed, per_group }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_corpus_parses() {
        let (entries, bad) = parse_corpus(SHIPPED_CORPUS);
        assert!(bad.is_empty(), "{bad:?}");
        assert_eq!(entries.len(), 65);
    }

    #[test]
    fn malformed_lines_are_located() {
        let text = "{\"version\": 1}\n{\"label\": \"x\", \"j\": \"0\", \"expected\": \"0\"}\n\n{\"label\": \"y\", \"j\": \"5\", \"expected\": \"Z/2\"}\n{\"label\": \"z\", \"j\": \"5\", \"expected\": \"0\"}\n";
        let (entries, bad) = parse_corpus(text);
        assert_eq!(entries.len(), 1);
        assert_eq!(bad.iter().map(|m| m.line).collect::<Vec<_>>(), vec![2, 4]);
        assert!(parse_corpus("").0.is_empty());
        assert_eq!(parse_corpus("{\"version\": 7}").1.len(), 1);
    }
}
