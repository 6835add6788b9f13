//! Shared helpers for the integration suites: the golden corpus, report
//! parsing and comparison, and a small deterministic RNG.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub struct CorpusProgram {
    pub name: &'static str,
    pub source: &'static str,
    pub expected: &'static str,
}

macro_rules! corpus_program {
    ($name:literal) => {
        CorpusProgram {
            name: $name,
            source: include_str!(concat!("../corpus/", $name, ".fl")),
            expected: include_str!(concat!("../corpus/", $name, ".expected")),
        }
    };
}

pub const CORPUS: &[CorpusProgram] = &[
    corpus_program!("add_mult"),
    corpus_program!("sub"),
    corpus_program!("div"),
    corpus_program!("ack"),
    corpus_program!("list"),
    corpus_program!("flatten"),
    corpus_program!("merge"),
    corpus_program!("zip"),
    corpus_program!("zip_mutual"),
    corpus_program!("tuple_add"),
    corpus_program!("addord"),
    corpus_program!("fib"),
    corpus_program!("mutual_fgh"),
    corpus_program!("self_apply"),
    corpus_program!("add_one"),
];

/// A report parsed into verdict groups (a function's call lines plus its
/// verdict) and result lines, in emission order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Group {
        name: String,
        verdict: String,
        calls: Vec<String>,
    },
    Result(String),
}

fn verdict_name(line: &str) -> Option<String> {
    for marker in [" passes termination check", " FAILS termination check"] {
        if let Some(at) = line.find(marker) {
            let tail = &line[at + marker.len()..];
            if tail.is_empty() || tail.starts_with(" by lexical order") {
                return Some(line[..at].to_string());
            }
        }
    }
    None
}

pub fn parse_report(text: &str) -> Result<Vec<Item>, String> {
    let mut items = Vec::new();
    let mut pending_calls: Vec<String> = Vec::new();
    for line in text.lines() {
        let line = line.trim_end();
        if line.trim().is_empty() {
            continue;
        }
        if line.starts_with("result: ") {
            if !pending_calls.is_empty() {
                return Err(format!("call lines not followed by a verdict: {pending_calls:?}"));
            }
            items.push(Item::Result(line.to_string()));
            continue;
        }
        if let Some(name) = verdict_name(line) {
            items.push(Item::Group {
                name,
                verdict: line.to_string(),
                calls: std::mem::take(&mut pending_calls),
            });
            continue;
        }
        if line.contains(": ") && line.contains(" -> ") {
            pending_calls.push(line.to_string());
            continue;
        }
        return Err(format!("unrecognized report line: {line:?}"));
    }
    if pending_calls.is_empty() {
        Ok(items)
    } else {
        Err(format!("dangling call lines at end of report: {pending_calls:?}"))
    }
}

/// Compares a run against a published output block. Verdict lines must
/// match exactly and in order for every function the block mentions,
/// call lines per function as multisets, result lines byte-exact and in
/// order. Functions the block does not mention are ignored.
pub fn compare_with_block(actual: &str, expected: &str) -> Result<(), String> {
    let expected_items = parse_report(expected)?;
    let actual_items = parse_report(actual).map_err(|e| format!("bad actual output: {e}"))?;
    let mentioned: BTreeSet<&str> = expected_items
        .iter()
        .filter_map(|item| match item {
            Item::Group { name, .. } => Some(name.as_str()),
            Item::Result(_) => None,
        })
        .collect();
    let relevant: Vec<&Item> = actual_items
        .iter()
        .filter(|item| match item {
            Item::Group { name, .. } => mentioned.contains(name.as_str()),
            Item::Result(_) => true,
        })
        .collect();
    if relevant.len() != expected_items.len() {
        return Err(format!(
            "expected {} report items, got {}\nexpected: {:?}\nactual: {:?}",
            expected_items.len(),
            relevant.len(),
            expected_items,
            relevant
        ));
    }
    for (got, want) in relevant.iter().zip(expected_items.iter()) {
        match (got, want) {
            (
                Item::Group {
                    name: got_name,
                    verdict: got_verdict,
                    calls: got_calls,
                },
                Item::Group {
                    name: want_name,
                    verdict: want_verdict,
                    calls: want_calls,
                },
            ) => {
                if got_name != want_name || got_verdict != want_verdict {
                    return Err(format!(
                        "verdict mismatch: expected {want_verdict:?}, got {got_verdict:?}"
                    ));
                }
                let mut got_sorted = got_calls.clone();
                let mut want_sorted = want_calls.clone();
                got_sorted.sort();
                want_sorted.sort();
                if got_sorted != want_sorted {
                    return Err(format!(
                        "call lines for '{want_name}' differ\nexpected: {want_sorted:?}\ngot: {got_sorted:?}"
                    ));
                }
            }
            (Item::Result(got), Item::Result(want)) => {
                if got != want {
                    return Err(format!("result mismatch: expected {want:?}, got {got:?}"));
                }
            }
            (got, want) => {
                return Err(format!("item kind mismatch: expected {want:?}, got {got:?}"));
            }
        }
    }
    Ok(())
}

pub fn result_lines(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|line| line.starts_with("result: "))
        .collect()
}

/// SplitMix64; deterministic across platforms.
pub struct Rng(pub u64);

impl Rng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform-enough draw from `0..n` for test-sized `n`.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }
}
