//! Duplicate-free collection of byte strings, spilling sorted runs to disk.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Seek, SeekFrom, Write};

use crate::error::Result;

pub struct SpillSet {
    mem: HashSet<Vec<u8>>,
    threshold: usize,
    runs: Vec<File>,
}

impl SpillSet {
    /// Spills once more than `threshold` items are held in memory; `0` never spills.
    pub fn new(threshold: usize) -> Self {
        SpillSet { mem: HashSet::new(), threshold, runs: Vec::new() }
    }

    pub fn insert(&mut self, item: Vec<u8>) -> Result<()> {
        self.mem.insert(item);
        if self.threshold > 0 && self.mem.len() > self.threshold {
            self.spill()?;
        }
        Ok(())
    }

    pub fn spilled_runs(&self) -> usize {
        self.runs.len()
    }

    fn spill(&mut self) -> Result<()> {
        let mut items: Vec<Vec<u8>> = self.mem.drain().collect();
        items.sort_unstable();
        let mut f = tempfile::tempfile()?;
        {
            let mut w = BufWriter::new(&mut f);
            for it in &items {
                w.write_all(&u32::try_from(it.len()).expect("short items").to_be_bytes())?;
                w.write_all(it)?;
            }
            w.flush()?;
        }
        f.seek(SeekFrom::Start(0))?;
        self.runs.push(f);
        Ok(())
    }

    /// Sorted, duplicate-free contents.
    pub fn into_sorted(self) -> Result<SortedIter> {
        let mut mem: Vec<Vec<u8>> = self.mem.into_iter().collect();
        mem.sort_unstable();
        let mut sources: Vec<Source> = self.runs.into_iter().map(|f| Source::Run(BufReader::new(f))).collect();
        sources.push(Source::Mem(mem.into_iter()));
        let mut heap = BinaryHeap::new();
        for (i, s) in sources.iter_mut().enumerate() {
            if let Some(x) = s.next_item()? {
                heap.push(Reverse((x, i)));
            }
        }
        Ok(SortedIter { sources, heap, last: None })
    }
}

enum Source {
    Run(BufReader<File>),
    Mem(std::vec::IntoIter<Vec<u8>>),
}

impl Source {
    fn next_item(&mut self) -> Result<Option<Vec<u8>>> {
        match self {
            Source::Mem(it) => Ok(it.next()),
            Source::Run(r) => {
                let mut len = [0u8; 4];
                match r.read_exact(&mut len) {
                    Ok(()) => {}
                    Err(e) if e.kind() == std::io::ErrorKind::UnexpectedEof => return Ok(None),
                    Err(e) => return Err(e.into()),
                }
                let mut buf = vec![0u8; u32::from_be_bytes(len) as usize];
                r.read_exact(&mut buf)?;
                Ok(Some(buf))
            }
        }
    }
}

/// k-way merge over the runs, dropping repeats.
pub struct SortedIter {
    sources: Vec<Source>,
    heap: BinaryHeap<Reverse<(Vec<u8>, usize)>>,
    last: Option<Vec<u8>>,
}

impl Iterator for SortedIter {
    type Item = Result<Vec<u8>>;

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let Reverse((x, i)) = self.heap.pop()?;
            match self.sources[i].next_item() {
                Ok(Some(y)) => self.heap.push(Reverse((y, i))),
                Ok(None) => {}
                Err(e) => return Some(Err(e)),
            }
            if self.last.as_ref() == Some(&x) {
                continue;
            }
            self.last = Some(x.clone());
            return Some(Ok(x));
        }
    }
}
