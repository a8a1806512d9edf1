//! Oracle transcripts, stored as JSON lines (one query per line).

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{parse_graph, write_graph, Multigraph};
use crate::rational::{fmt_rational, parse_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptEntry {
    /// Position in grid order.
    pub index: usize,
    pub purpose: String,
    /// Grid coordinates that produced this query.
    pub grid_point: Vec<u32>,
    /// The graph handed to the oracle, in the text graph format.
    pub graph: String,
    /// Uniform edge weight of the query, if the oracle takes one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<String>,
    pub answer: String,
    /// What the reduction derived from the answer.
    pub derived: String,
}

impl TranscriptEntry {
    pub fn new(
        index: usize,
        purpose: &str,
        grid_point: Vec<u32>,
        graph: &Multigraph,
        point: Option<&Rational>,
        answer: &Rational,
        derived: &Rational,
    ) -> Self {
        TranscriptEntry {
            index,
            purpose: purpose.to_string(),
            grid_point,
            graph: write_graph(graph),
            point: point.map(fmt_rational),
            answer: fmt_rational(answer),
            derived: fmt_rational(derived),
        }
    }

    pub fn query_graph(&self) -> Result<Multigraph> {
        parse_graph(&self.graph)
    }

    pub fn query_point(&self) -> Result<Option<Rational>> {
        self.point.as_deref().map(parse_rational).transpose()
    }

    pub fn answer_value(&self) -> Result<Rational> {
        parse_rational(&self.answer)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleTranscript {
    entries: Vec<TranscriptEntry>,
}

impl OracleTranscript {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: TranscriptEntry) {
        self.entries.push(entry);
    }

    pub fn entries(&self) -> &[TranscriptEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<()> {
        for e in &self.entries {
            serde_json::to_writer(&mut out, e)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self> {
        let mut entries = Vec::new();
        for line in input.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            entries.push(serde_json::from_str(&line)?);
        }
        Ok(OracleTranscript { entries })
    }

    /// Re-asks every recorded query and returns the indices whose fresh
    /// answer differs from the recorded one.
    pub fn replay<F>(&self, mut ask: F) -> Result<Vec<usize>>
    where
        F: FnMut(&Multigraph, Option<&Rational>) -> Result<Rational>,
    {
        let mut mismatches = Vec::new();
        for e in &self.entries {
            let g = e.query_graph()?;
            let point = e.query_point()?;
            let fresh = ask(&g, point.as_ref()).map_err(|err| Error::Oracle {
                index: e.index,
                source: Box::new(err),
            })?;
            if fresh != e.answer_value()? {
                mismatches.push(e.index);
            }
        }
        Ok(mismatches)
    }
}
