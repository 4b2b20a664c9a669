//! Interaction record schema and file I/O.

use std::collections::HashSet;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::IngestError;

/// One post. A record is a retweet iff `retweeted_author` is present;
/// no text conventions ("RT @...") are parsed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteractionRecord {
    pub post_id: String,
    pub author_id: String,
    /// UTC seconds.
    pub timestamp: i64,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub retweeted_author: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mentions: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub urls: Vec<String>,
}

impl InteractionRecord {
    pub fn is_retweet(&self) -> bool {
        self.retweeted_author.is_some()
    }
}

/// On-disk encodings for record files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecordFormat {
    /// One JSON object per line.
    LineDelimitedObject,
    /// Tab-separated with a header row; `mentions` and `urls` are
    /// space-separated inside their field.
    DelimitedText,
}

impl FromStr for RecordFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "jsonl" | "line-delimited-object" => Ok(RecordFormat::LineDelimitedObject),
            "tsv" | "delimited-text" => Ok(RecordFormat::DelimitedText),
            other => Err(format!("unknown record format '{other}'")),
        }
    }
}

const DELIMITED_HEADER: [&str; 7] = [
    "post_id",
    "author_id",
    "timestamp",
    "text",
    "retweeted_author",
    "mentions",
    "urls",
];

/// Result of loading a record file. Malformed rows are skipped and counted,
/// never silently dropped.
#[derive(Debug)]
pub struct LoadReport {
    pub records: Vec<InteractionRecord>,
    pub malformed: usize,
    /// Up to the first ten row-level error messages, for diagnostics.
    pub sample_errors: Vec<String>,
}

/// Loads records from `path`, skipping and counting malformed rows.
///
/// A row is malformed if it fails to parse, misses a required field, marks
/// itself as a self-retweet, or repeats an already-seen post id. An
/// unreadable file is fatal, and so is a file where more than half of the
/// rows are malformed.
pub fn load_records(path: &Path, format: RecordFormat) -> Result<LoadReport, IngestError> {
    let file = File::open(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let reader = BufReader::new(file);

    let mut records = Vec::new();
    let mut malformed = 0usize;
    let mut total = 0usize;
    let mut sample_errors = Vec::new();
    let mut seen_ids: HashSet<String> = HashSet::new();

    let mut push = |row: Result<InteractionRecord, String>,
                    line_no: usize,
                    records: &mut Vec<InteractionRecord>,
                    seen: &mut HashSet<String>| {
        total += 1;
        match row.and_then(|r| validate(r, seen)) {
            Ok(record) => {
                seen.insert(record.post_id.clone());
                records.push(record);
            }
            Err(message) => {
                malformed += 1;
                if sample_errors.len() < 10 {
                    sample_errors.push(format!("line {line_no}: {message}"));
                }
            }
        }
    };

    match format {
        RecordFormat::LineDelimitedObject => {
            for (idx, line) in reader.lines().enumerate() {
                let line = line.map_err(|source| IngestError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                if line.trim().is_empty() {
                    continue;
                }
                let row = serde_json::from_str::<InteractionRecord>(&line)
                    .map_err(|e| e.to_string());
                push(row, idx + 1, &mut records, &mut seen_ids);
            }
        }
        RecordFormat::DelimitedText => {
            let mut csv_reader = csv::ReaderBuilder::new()
                .delimiter(b'\t')
                .flexible(true)
                .from_reader(reader);
            for (idx, result) in csv_reader.records().enumerate() {
                let row = result
                    .map_err(|e| e.to_string())
                    .and_then(|row| parse_delimited_row(&row));
                // +2: one for the header, one for zero-based enumeration.
                push(row, idx + 2, &mut records, &mut seen_ids);
            }
        }
    }

    if total > 0 && malformed * 2 > total {
        return Err(IngestError::TooManyMalformed {
            path: path.display().to_string(),
            malformed,
            total,
            sample: sample_errors.join("; "),
        });
    }

    Ok(LoadReport {
        records,
        malformed,
        sample_errors,
    })
}

fn validate(
    record: InteractionRecord,
    seen: &HashSet<String>,
) -> Result<InteractionRecord, String> {
    if record.post_id.is_empty() {
        return Err("empty post_id".into());
    }
    if record.author_id.is_empty() {
        return Err("empty author_id".into());
    }
    if record.retweeted_author.as_deref() == Some(record.author_id.as_str()) {
        return Err("retweeted_author equals author_id".into());
    }
    if seen.contains(&record.post_id) {
        return Err(format!("duplicate post_id '{}'", record.post_id));
    }
    Ok(record)
}

fn parse_delimited_row(row: &csv::StringRecord) -> Result<InteractionRecord, String> {
    if row.len() != DELIMITED_HEADER.len() {
        return Err(format!(
            "expected {} fields, found {}",
            DELIMITED_HEADER.len(),
            row.len()
        ));
    }
    let field = |i: usize| row.get(i).unwrap_or("");
    let timestamp: i64 = field(2)
        .parse()
        .map_err(|_| format!("bad timestamp '{}'", field(2)))?;
    let retweeted_author = match field(4) {
        "" => None,
        other => Some(other.to_string()),
    };
    let split_list = |s: &str| -> Vec<String> {
        s.split_whitespace().map(str::to_string).collect()
    };
    Ok(InteractionRecord {
        post_id: field(0).to_string(),
        author_id: field(1).to_string(),
        timestamp,
        text: field(3).to_string(),
        retweeted_author,
        mentions: split_list(field(5)),
        urls: split_list(field(6)),
    })
}

/// Writes records to `path` in the given format (the inverse of
/// [`load_records`] for well-formed data).
pub fn write_records(
    path: &Path,
    records: &[InteractionRecord],
    format: RecordFormat,
) -> Result<(), IngestError> {
    let file = File::create(path).map_err(|source| IngestError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut writer = BufWriter::new(file);
    let io_err = |source: std::io::Error| IngestError::Io {
        path: path.display().to_string(),
        source,
    };

    match format {
        RecordFormat::LineDelimitedObject => {
            for record in records {
                let line = serde_json::to_string(record).expect("record serializes");
                writeln!(writer, "{line}").map_err(io_err)?;
            }
        }
        RecordFormat::DelimitedText => {
            let mut csv_writer = csv::WriterBuilder::new()
                .delimiter(b'\t')
                .from_writer(writer);
            csv_writer
                .write_record(DELIMITED_HEADER)
                .map_err(|e| IngestError::Io {
                    path: path.display().to_string(),
                    source: std::io::Error::other(e),
                })?;
            for record in records {
                csv_writer
                    .write_record([
                        record.post_id.as_str(),
                        record.author_id.as_str(),
                        &record.timestamp.to_string(),
                        record.text.as_str(),
                        record.retweeted_author.as_deref().unwrap_or(""),
                        &record.mentions.join(" "),
                        &record.urls.join(" "),
                    ])
                    .map_err(|e| IngestError::Io {
                        path: path.display().to_string(),
                        source: std::io::Error::other(e),
                    })?;
            }
            csv_writer.flush().map_err(io_err)?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use tempfile::tempdir;

    fn record(post: &str, author: &str, ts: i64) -> InteractionRecord {
        InteractionRecord {
            post_id: post.into(),
            author_id: author.into(),
            timestamp: ts,
            text: format!("post {post}"),
            retweeted_author: None,
            mentions: vec![],
            urls: vec![],
        }
    }

    #[test]
    fn empty_file_yields_empty_sequence() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        std::fs::write(&path, "").unwrap();
        let report = load_records(&path, RecordFormat::LineDelimitedObject).unwrap();
        assert!(report.records.is_empty());
        assert_eq!(report.malformed, 0);
    }

    #[test]
    fn malformed_rows_are_counted_not_fatal() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("mixed.jsonl");
        let mut lines: Vec<String> = (0..3)
            .map(|i| serde_json::to_string(&record(&format!("p{i}"), "u1", i)).unwrap())
            .collect();
        // Row without author_id.
        lines.insert(1, r#"{"post_id":"px","timestamp":5,"text":"x"}"#.to_string());
        std::fs::write(&path, lines.join("\n")).unwrap();

        let report = load_records(&path, RecordFormat::LineDelimitedObject).unwrap();
        assert_eq!(report.records.len(), 3);
        assert_eq!(report.malformed, 1);
        assert_eq!(report.sample_errors.len(), 1);
    }

    #[test]
    fn majority_malformed_is_fatal() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("bad.jsonl");
        let good = serde_json::to_string(&record("p0", "u1", 0)).unwrap();
        std::fs::write(&path, format!("{good}\nnot json\nnot json either\n")).unwrap();
        let err = load_records(&path, RecordFormat::LineDelimitedObject).unwrap_err();
        assert!(matches!(err, IngestError::TooManyMalformed { .. }));
    }

    #[test]
    fn self_retweet_and_duplicate_ids_are_malformed() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("rows.jsonl");
        let mut selfy = record("p0", "u1", 0);
        selfy.retweeted_author = Some("u1".into());
        let ok = record("p1", "u1", 1);
        let dup = record("p1", "u2", 2);
        let lines = [&selfy, &ok, &dup]
            .iter()
            .map(|r| serde_json::to_string(r).unwrap())
            .collect::<Vec<_>>()
            .join("\n");
        std::fs::write(&path, lines).unwrap();

        let report = load_records(&path, RecordFormat::LineDelimitedObject).unwrap();
        assert_eq!(report.records.len(), 1);
        assert_eq!(report.malformed, 2);
    }

    #[test]
    fn delimited_round_trip_preserves_fields() {
        let dir = tempdir().unwrap();
        let path = dir.path().join("records.tsv");
        let mut r = record("p0", "u1", 42);
        r.retweeted_author = Some("u2".into());
        r.mentions = vec!["u2".into(), "u3".into()];
        r.urls = vec!["https://example.com/a".into()];
        r.text = "testo con \"virgolette\" e tab\tdentro".into();
        let records = vec![r, record("p1", "u2", 43)];

        write_records(&path, &records, RecordFormat::DelimitedText).unwrap();
        let report = load_records(&path, RecordFormat::DelimitedText).unwrap();
        assert_eq!(report.malformed, 0);
        assert_eq!(report.records, records);
    }
}
