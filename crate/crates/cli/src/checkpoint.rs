//! Append-only progress log for `classify`.
//!
//! The first line identifies the run. Every further line is
//! `g \t ufp_json \t count \t sha256hex \t end_offset` and is written only
//! after the records of that ufp are flushed to the output file; the hash
//! covers exactly the bytes of that ufp's records.

use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub g: u64,
    pub ufp: Vec<u64>,
    pub count: usize,
    pub sha256: String,
    pub end: u64,
}

impl Entry {
    fn line(&self) -> String {
        let ufp = serde_json::to_string(&self.ufp).expect("integer list");
        format!("{}\t{}\t{}\t{}\t{}\n", self.g, ufp, self.count, self.sha256, self.end)
    }

    fn parse(line: &str) -> anyhow::Result<Entry> {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 5 {
            bail!("expected 5 fields");
        }
        Ok(Entry { g: f[0].parse()?, ufp: serde_json::from_str(f[1])?, count: f[2].parse()?, sha256: f[3].to_string(), end: f[4].parse()? })
    }
}

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub struct Checkpoint {
    path: PathBuf,
    file: File,
    pub start: u64,
    pub entries: Vec<Entry>,
}

impl Checkpoint {
    pub fn path(&self) -> &Path {
        &self.path
    }

    /// Opens an existing log for `run_id`, or `None` if there is none.
    pub fn open(path: &Path, run_id: &str) -> anyhow::Result<Option<Checkpoint>> {
        if !path.exists() {
            return Ok(None);
        }
        let lines: Vec<String> = BufReader::new(File::open(path)?).lines().collect::<std::io::Result<_>>()?;
        let header = lines.first().ok_or_else(|| anyhow!("empty checkpoint {}", path.display()))?;
        let (id, start) = header.rsplit_once("\tstart=").ok_or_else(|| anyhow!("bad checkpoint header"))?;
        if id != run_id {
            bail!("checkpoint {} belongs to a different run: {id}", path.display());
        }
        let mut entries = Vec::new();
        for (i, line) in lines.iter().enumerate().skip(1) {
            match Entry::parse(line) {
                Ok(e) => entries.push(e),
                // A torn final line is dropped; anything else is corruption.
                Err(_) if i + 1 == lines.len() => break,
                Err(e) => return Err(e.context(format!("checkpoint line {}", i + 1))),
            }
        }
        let mut text = format!("{header}\n");
        for e in &entries {
            text.push_str(&e.line());
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        let file = OpenOptions::new().append(true).open(path)?;
        Ok(Some(Checkpoint { path: path.to_path_buf(), file, start: start.parse()?, entries }))
    }

    pub fn create(path: &Path, run_id: &str, start: u64) -> anyhow::Result<Checkpoint> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut file = File::create(path)?;
        writeln!(file, "{run_id}\tstart={start}")?;
        file.sync_data()?;
        Ok(Checkpoint { path: path.to_path_buf(), file, start, entries: Vec::new() })
    }

    pub fn end(&self) -> u64 {
        self.entries.last().map_or(self.start, |e| e.end)
    }

    pub fn append(&mut self, e: Entry) -> anyhow::Result<()> {
        self.file.write_all(e.line().as_bytes())?;
        self.file.flush()?;
        self.entries.push(e);
        Ok(())
    }

    pub fn sync(&mut self) -> anyhow::Result<()> {
        self.file.sync_data()?;
        Ok(())
    }

    /// Checks every logged segment of `output` against its hash and cuts off
    /// anything written after the last one.
    pub fn restore_output(&self, output: &Path) -> anyhow::Result<File> {
        let mut f = OpenOptions::new().read(true).write(true).open(output).with_context(|| format!("resuming {}", output.display()))?;
        let len = f.metadata()?.len();
        if len < self.end() {
            bail!("{} is shorter than its checkpoint", output.display());
        }
        let mut pos = self.start;
        f.seek(SeekFrom::Start(pos))?;
        for e in &self.entries {
            let mut buf = vec![0u8; usize::try_from(e.end - pos)?];
            f.read_exact(&mut buf)?;
            if digest(&buf) != e.sha256 {
                bail!("{} does not match its checkpoint at g={} ufp={:?}", output.display(), e.g, e.ufp);
            }
            pos = e.end;
        }
        f.set_len(pos)?;
        f.seek(SeekFrom::End(0))?;
        Ok(f)
    }
}
