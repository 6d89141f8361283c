//! Reading interaction streams and interning vertex labels.
//!
//! Input is one interaction per line, `source,dest,time,quantity`, comma or
//! tab separated. Lines starting with `#` are comments. A header line is
//! recognised when the first record's time field is not a number.

use std::collections::HashMap;
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use crate::error::{Error, Result};
use crate::types::{Interaction, VertexId};

/// Bijection between external vertex labels and dense indices.
#[derive(Clone, Debug, Default)]
pub struct VertexTable {
    labels: Vec<String>,
    index: HashMap<String, VertexId>,
}

impl VertexTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns the id for `label`, assigning the next free index on first sight.
    pub fn intern(&mut self, label: &str) -> VertexId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = VertexId(self.labels.len() as u32);
        assert!(!id.is_unknown(), "vertex table overflow");
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn get(&self, label: &str) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: VertexId) -> &str {
        if id.is_unknown() {
            return "?";
        }
        self.labels
            .get(id.index())
            .map(String::as_str)
            .unwrap_or("?")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VertexId> {
        (0..self.labels.len() as u32).map(VertexId)
    }
}

/// A source line that was not turned into an interaction.
#[derive(Clone, Debug, PartialEq)]
pub struct Rejection {
    pub line: u64,
    pub reason: String,
}

impl std::fmt::Display for Rejection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "line {}: {}", self.line, self.reason)
    }
}

/// Unparsed interaction fields as they appear in the input.
#[derive(Clone, Debug, PartialEq)]
pub struct RawRecord {
    pub line: u64,
    pub source: String,
    pub dest: String,
    pub time: String,
    pub quantity: String,
}

impl RawRecord {
    pub fn new(line: u64, source: &str, dest: &str, time: &str, quantity: &str) -> Self {
        RawRecord {
            line,
            source: source.to_owned(),
            dest: dest.to_owned(),
            time: time.to_owned(),
            quantity: quantity.to_owned(),
        }
    }
}

/// Result of interning a whole stream.
#[derive(Clone, Debug, Default)]
pub struct Ingested {
    pub vertices: VertexTable,
    pub interactions: Vec<Interaction>,
    pub rejected: Vec<Rejection>,
}

fn parse_number(field: &str, what: &str, line: u64) -> std::result::Result<f64, Rejection> {
    field.trim().parse::<f64>().map_err(|_| Rejection {
        line,
        reason: format!("unparseable {what} {field:?}"),
    })
}

/// Validates one raw record and interns its labels.
///
/// Labels are only interned once the numeric fields have been accepted, so a
/// rejected line never leaves a dangling vertex behind.
pub fn intern_record(
    table: &mut VertexTable,
    raw: &RawRecord,
) -> std::result::Result<Interaction, Rejection> {
    let line = raw.line;
    let source = raw.source.trim();
    let dest = raw.dest.trim();
    if source.is_empty() || dest.is_empty() {
        return Err(Rejection {
            line,
            reason: "empty vertex label".into(),
        });
    }
    let time = parse_number(&raw.time, "time", line)?;
    let quantity = parse_number(&raw.quantity, "quantity", line)?;
    if !time.is_finite() || time < 0.0 {
        return Err(Rejection {
            line,
            reason: format!("time must be a non-negative number, got {time}"),
        });
    }
    if !quantity.is_finite() || quantity <= 0.0 {
        return Err(Rejection {
            line,
            reason: format!("quantity must be strictly positive, got {quantity}"),
        });
    }
    let source = table.intern(source);
    let dest = table.intern(dest);
    Ok(Interaction {
        source,
        dest,
        time,
        quantity,
    })
}

/// Interns every record in order. Bad records are reported and skipped.
pub fn intern_vertices<I>(records: I) -> Ingested
where
    I: IntoIterator<Item = RawRecord>,
{
    let mut out = Ingested::default();
    for raw in records {
        match intern_record(&mut out.vertices, &raw) {
            Ok(r) => out.interactions.push(r),
            Err(rej) => out.rejected.push(rej),
        }
    }
    out
}

fn looks_like_header(time_field: &str) -> bool {
    time_field.trim().parse::<f64>().is_err()
}

/// Reads raw records from a CSV/TSV source.
///
/// Structural problems (wrong field count) come back as [`Rejection`]s in the
/// second vector rather than aborting the read.
pub fn read_raw_records<R: Read>(reader: R) -> Result<(Vec<RawRecord>, Vec<Rejection>)> {
    let mut reader = BufReader::new(reader);
    let delimiter = {
        let buf = reader.fill_buf()?;
        let first_line = buf
            .split(|&b| b == b'\n')
            .find(|l| !l.is_empty() && l[0] != b'#')
            .unwrap_or(&[]);
        if first_line.contains(&b'\t') {
            b'\t'
        } else {
            b','
        }
    };

    let mut csv_reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .comment(Some(b'#'))
        .delimiter(delimiter)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let mut records = Vec::new();
    let mut rejected = Vec::new();
    let mut first = true;
    for row in csv_reader.records() {
        let row = match row {
            Ok(row) => row,
            Err(e) => {
                let line = e.position().map(|p| p.line()).unwrap_or(0);
                rejected.push(Rejection {
                    line,
                    reason: e.to_string(),
                });
                continue;
            }
        };
        let line = row.position().map(|p| p.line()).unwrap_or(0);
        if row.iter().all(|f| f.is_empty()) {
            continue;
        }
        if row.len() != 4 {
            rejected.push(Rejection {
                line,
                reason: format!("expected 4 fields, found {}", row.len()),
            });
            first = false;
            continue;
        }
        if first && looks_like_header(&row[2]) {
            first = false;
            continue;
        }
        first = false;
        records.push(RawRecord::new(line, &row[0], &row[1], &row[2], &row[3]));
    }
    Ok((records, rejected))
}

/// Reads and interns a whole interaction stream.
pub fn read_interactions<R: Read>(reader: R) -> Result<Ingested> {
    let (records, mut structural) = read_raw_records(reader)?;
    let mut ingested = intern_vertices(records);
    structural.append(&mut ingested.rejected);
    structural.sort_by_key(|r| r.line);
    ingested.rejected = structural;
    Ok(ingested)
}

pub fn read_interactions_file(path: impl AsRef<Path>) -> Result<Ingested> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    read_interactions(file)
}

/// Writes interactions in the input format, resolving ids through `table`.
pub fn write_interactions<W: std::io::Write>(
    out: W,
    table: &VertexTable,
    interactions: &[Interaction],
) -> Result<()> {
    let mut w = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(out);
    w.write_record(["source", "dest", "time", "quantity"])?;
    for r in interactions {
        w.write_record([
            table.label(r.source).to_owned(),
            table.label(r.dest).to_owned(),
            r.time.to_string(),
            r.quantity.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
