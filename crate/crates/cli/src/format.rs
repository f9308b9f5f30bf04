//! JSONL and CSV encodings of classification records.

use std::io::{BufRead, Write};
use std::str::FromStr;

use anyhow::{anyhow, bail, Context};
use fanoclass::int::{rat_parse, rat_to_string};
use fanoclass::{ClassificationRecord, IntMatrix, UnitFractionPartition};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Jsonl,
    Csv,
}

/// Field order here is the on-disk order.
#[derive(Serialize, Deserialize)]
struct JsonRecord {
    d: usize,
    g: u64,
    matrix: Vec<Vec<String>>,
    weights: Vec<String>,
    lambda: String,
    volume: String,
    local_indices: Vec<u64>,
    ufp: Vec<u64>,
}

fn strings(v: &[BigInt]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn parse_big(s: &str) -> anyhow::Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|_| anyhow!("not an integer: {s:?}"))
}

#[allow(clippy::too_many_arguments)]
fn from_parts(
    d: usize,
    g: u64,
    matrix: Vec<Vec<BigInt>>,
    weights: Vec<BigInt>,
    lambda: &str,
    volume: &str,
    local_indices: Vec<u64>,
    ufp: Vec<u64>,
) -> anyhow::Result<ClassificationRecord> {
    Ok(ClassificationRecord {
        d,
        g,
        matrix: IntMatrix::from_big_rows(matrix)?,
        weights,
        lambda: rat_parse(lambda)?,
        volume: parse_big(volume)?,
        local_indices,
        ufp: UnitFractionPartition::new(g, ufp)?,
    })
}

pub fn to_json_line(r: &ClassificationRecord) -> String {
    let j = JsonRecord {
        d: r.d,
        g: r.g,
        matrix: r.matrix.to_rows().iter().map(|row| strings(row)).collect(),
        weights: strings(&r.weights),
        lambda: rat_to_string(&r.lambda),
        volume: r.volume.to_string(),
        local_indices: r.local_indices.clone(),
        ufp: r.ufp.entries().to_vec(),
    };
    serde_json::to_string(&j).expect("records always serialize")
}

pub fn from_json_line(line: &str) -> anyhow::Result<ClassificationRecord> {
    let j: JsonRecord = serde_json::from_str(line)?;
    let matrix = j.matrix.iter().map(|row| row.iter().map(|s| parse_big(s)).collect()).collect::<anyhow::Result<_>>()?;
    let weights = j.weights.iter().map(|s| parse_big(s)).collect::<anyhow::Result<_>>()?;
    from_parts(j.d, j.g, matrix, weights, &j.lambda, &j.volume, j.local_indices, j.ufp)
}

pub const CSV_HEADER: [&str; 8] = ["d", "g", "matrix", "weights", "lambda", "volume", "local_indices", "ufp"];

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn split<T: FromStr>(s: &str) -> anyhow::Result<Vec<T>> {
    s.split_whitespace().map(|x| x.parse().map_err(|_| anyhow!("bad list entry {x:?}"))).collect()
}

/// Matrix rows separated by `;`, entries by spaces.
pub fn csv_fields(r: &ClassificationRecord) -> [String; 8] {
    let m = r.matrix.to_rows().iter().map(|row| join(row)).collect::<Vec<_>>().join(";");
    [
        r.d.to_string(),
        r.g.to_string(),
        m,
        join(&r.weights),
        rat_to_string(&r.lambda),
        r.volume.to_string(),
        join(&r.local_indices),
        join(r.ufp.entries()),
    ]
}

fn from_csv_fields(f: &csv::StringRecord) -> anyhow::Result<ClassificationRecord> {
    if f.len() != CSV_HEADER.len() {
        bail!("expected {} fields, got {}", CSV_HEADER.len(), f.len());
    }
    let matrix = f[2].split(';').map(split::<BigInt>).collect::<anyhow::Result<_>>()?;
    from_parts(f[0].parse()?, f[1].parse()?, matrix, split(&f[3])?, &f[4], &f[5], split(&f[6])?, split(&f[7])?)
}

/// Serializes records in one format. CSV gets a header on a fresh file.
pub struct RecordWriter<W: Write> {
    format: Format,
    out: W,
}

impl<W: Write> RecordWriter<W> {
    pub fn new(format: Format, out: W) -> Self {
        RecordWriter { format, out }
    }

    pub fn header(&mut self) -> anyhow::Result<()> {
        if self.format == Format::Csv {
            let mut w = csv::Writer::from_writer(&mut self.out);
            w.write_record(CSV_HEADER)?;
            w.flush()?;
        }
        Ok(())
    }

    pub fn write(&mut self, r: &ClassificationRecord) -> anyhow::Result<()> {
        match self.format {
            Format::Jsonl => writeln!(self.out, "{}", to_json_line(r))?,
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(&mut self.out);
                w.write_record(csv_fields(r))?;
                w.flush()?;
            }
        }
        Ok(())
    }

    pub fn flush(&mut self) -> anyhow::Result<()> {
        self.out.flush()?;
        Ok(())
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

/// Bytes of one record, exactly as `RecordWriter` writes them.
pub fn encode(format: Format, r: &ClassificationRecord) -> Vec<u8> {
    let mut w = RecordWriter::new(format, Vec::new());
    w.write(r).expect("writing to memory");
    w.into_inner()
}

/// Reads a whole record file. Errors name the offending line.
pub fn read_records(format: Format, input: impl BufRead) -> anyhow::Result<Vec<ClassificationRecord>> {
    let mut out = Vec::new();
    match format {
        Format::Jsonl => {
            for (i, line) in input.lines().enumerate() {
                let line = line?;
                if line.trim().is_empty() {
                    continue;
                }
                out.push(from_json_line(&line).with_context(|| format!("line {}", i + 1))?);
            }
        }
        Format::Csv => {
            let mut rdr = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
            for (i, rec) in rdr.records().enumerate() {
                let rec = rec.with_context(|| format!("line {}", i + 2))?;
                out.push(from_csv_fields(&rec).with_context(|| format!("line {}", i + 2))?);
            }
        }
    }
    Ok(out)
}
