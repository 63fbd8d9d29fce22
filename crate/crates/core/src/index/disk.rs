//! On-disk layout.
//!
//! `methods.jsonl` holds one record per line. `names.idx` maps each record
//! ordinal to its line: magic `SQNAMES\0`, u32 version, u64 count, then per
//! record u64 byte offset, u32 line length, u16 name length and the lowercase
//! name bytes. `postings.bin`: magic `SQPOST\0\0`, u32 version, u64 gram
//! count, then per gram its 3 bytes, u32 list length and that many u32
//! ordinals. Integers are little-endian. `frequency.tsv` and `meta.json`
//! complete the set.

use std::collections::BTreeMap;
use std::fs::{self, File, OpenOptions};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use super::{Gram, IndexMeta, NameIndex};
use crate::error::{Error, Result};
use crate::extract::MethodRecord;
use crate::lexicon::FrequencyTable;

pub const FORMAT_VERSION: u32 = 1;
pub const METHODS_FILE: &str = "methods.jsonl";
pub const NAMES_FILE: &str = "names.idx";
pub const POSTINGS_FILE: &str = "postings.bin";
pub const FREQUENCY_FILE: &str = "frequency.tsv";
pub const META_FILE: &str = "meta.json";
const LOCK_FILE: &str = ".build.lock";

const NAMES_MAGIC: &[u8; 8] = b"SQNAMES\0";
const POSTINGS_MAGIC: &[u8; 8] = b"SQPOST\0\0";

pub(super) struct BuildLock(PathBuf);

impl BuildLock {
    pub(super) fn acquire(dir: &Path) -> Result<Self> {
        let path = dir.join(LOCK_FILE);
        match OpenOptions::new().write(true).create_new(true).open(&path) {
            Ok(_) => Ok(BuildLock(path)),
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => Err(Error::Locked {
                path: dir.to_path_buf(),
            }),
            Err(e) => Err(Error::io(path, e)),
        }
    }
}

impl Drop for BuildLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

pub(super) fn remove_outputs(dir: &Path) {
    for f in [METHODS_FILE, NAMES_FILE, POSTINGS_FILE, FREQUENCY_FILE, META_FILE] {
        let _ = fs::remove_file(dir.join(f));
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn finish(mut w: BufWriter<File>, path: &Path) -> Result<()> {
    w.flush().map_err(|e| Error::io(path, e))?;
    w.get_ref().sync_all().map_err(|e| Error::io(path, e))
}

pub(super) fn write(index: &NameIndex, dir: &Path) -> Result<()> {
    let methods_path = dir.join(METHODS_FILE);
    let mut methods = create(&methods_path)?;
    let mut table = Vec::with_capacity(index.records.len());
    let mut offset = 0u64;
    for r in &index.records {
        let mut line = serde_json::to_vec(r).map_err(|e| Error::Json {
            path: methods_path.clone(),
            source: e,
        })?;
        line.push(b'\n');
        methods.write_all(&line).map_err(|e| Error::io(&methods_path, e))?;
        table.push((offset, line.len() as u32, r.name_lower.as_bytes()));
        offset += line.len() as u64;
    }
    finish(methods, &methods_path)?;

    let names_path = dir.join(NAMES_FILE);
    let mut buf = Vec::new();
    buf.extend_from_slice(NAMES_MAGIC);
    buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    buf.extend_from_slice(&(table.len() as u64).to_le_bytes());
    for (off, len, name) in table {
        let name_len = u16::try_from(name.len())
            .map_err(|_| Error::Config(format!("method name longer than 65535 bytes at offset {off}")))?;
        buf.extend_from_slice(&off.to_le_bytes());
        buf.extend_from_slice(&len.to_le_bytes());
        buf.extend_from_slice(&name_len.to_le_bytes());
        buf.extend_from_slice(name);
    }
    fs::write(&names_path, &buf).map_err(|e| Error::io(&names_path, e))?;

    if let Some(postings) = &index.postings {
        let path = dir.join(POSTINGS_FILE);
        let mut buf = Vec::new();
        buf.extend_from_slice(POSTINGS_MAGIC);
        buf.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
        buf.extend_from_slice(&(postings.len() as u64).to_le_bytes());
        for (gram, list) in postings {
            buf.extend_from_slice(gram);
            buf.extend_from_slice(&(list.len() as u32).to_le_bytes());
            for o in list {
                buf.extend_from_slice(&o.to_le_bytes());
            }
        }
        fs::write(&path, &buf).map_err(|e| Error::io(&path, e))?;
    } else {
        let _ = fs::remove_file(dir.join(POSTINGS_FILE));
    }

    let freq_path = dir.join(FREQUENCY_FILE);
    let mut freq = create(&freq_path)?;
    index.frequency.write_tsv(&mut freq).map_err(|e| Error::io(&freq_path, e))?;
    finish(freq, &freq_path)?;

    let meta_path = dir.join(META_FILE);
    let mut meta = serde_json::to_vec_pretty(&index.meta()).expect("meta serializes");
    meta.push(b'\n');
    fs::write(&meta_path, meta).map_err(|e| Error::io(&meta_path, e))
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
    what: &'static str,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8]> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.buf.len());
        let end = end.ok_or_else(|| Error::CorruptIndex(format!("{} is truncated", self.what)))?;
        let s = &self.buf[self.pos..end];
        self.pos = end;
        Ok(s)
    }

    fn u16(&mut self) -> Result<u16> {
        Ok(u16::from_le_bytes(self.take(2)?.try_into().expect("2 bytes")))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().expect("4 bytes")))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().expect("8 bytes")))
    }

    fn header(&mut self, magic: &[u8; 8]) -> Result<u64> {
        if self.take(8)? != magic {
            return Err(Error::CorruptIndex(format!("{} has a bad magic number", self.what)));
        }
        let version = self.u32()?;
        if version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion {
                found: version,
                expected: FORMAT_VERSION,
            });
        }
        self.u64()
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut buf))
        .map_err(|e| Error::io(path, e))?;
    Ok(buf)
}

pub(super) fn load(dir: &Path) -> Result<NameIndex> {
    if dir.join(LOCK_FILE).exists() {
        return Err(Error::Locked { path: dir.to_path_buf() });
    }
    let meta_path = dir.join(META_FILE);
    let meta_text = fs::read_to_string(&meta_path).map_err(|e| Error::io(&meta_path, e))?;
    let meta: IndexMeta = serde_json::from_str(&meta_text).map_err(|source| Error::Json {
        path: meta_path.clone(),
        source,
    })?;
    if meta.format_version != FORMAT_VERSION {
        return Err(Error::UnsupportedVersion {
            found: meta.format_version,
            expected: FORMAT_VERSION,
        });
    }

    let methods_path = dir.join(METHODS_FILE);
    let file = File::open(&methods_path).map_err(|e| Error::io(&methods_path, e))?;
    let mut records = Vec::with_capacity(meta.records as usize);
    let mut offsets = Vec::with_capacity(meta.records as usize);
    let mut offset = 0u64;
    let mut reader = BufReader::new(file);
    let mut line = String::new();
    let mut lineno = 0;
    loop {
        line.clear();
        let n = reader.read_line(&mut line).map_err(|e| Error::io(&methods_path, e))?;
        if n == 0 {
            break;
        }
        lineno += 1;
        let rec: MethodRecord = serde_json::from_str(&line)
            .map_err(|e| Error::parse(&methods_path, lineno, e.to_string()))?;
        offsets.push((offset, n as u32));
        offset += n as u64;
        records.push(rec);
    }
    if records.len() as u64 != meta.records {
        return Err(Error::CorruptIndex(format!(
            "{METHODS_FILE} has {} records, {META_FILE} says {}",
            records.len(),
            meta.records
        )));
    }

    let names = read(&dir.join(NAMES_FILE))?;
    let mut c = Cursor { buf: &names, pos: 0, what: NAMES_FILE };
    let count = c.header(NAMES_MAGIC)?;
    if count != meta.records {
        return Err(Error::CorruptIndex(format!("{NAMES_FILE} count {count} != {}", meta.records)));
    }
    for (i, r) in records.iter().enumerate() {
        let off = c.u64()?;
        let len = c.u32()?;
        let name_len = c.u16()? as usize;
        let name = c.take(name_len)?;
        if (off, len) != offsets[i] || name != r.name_lower.as_bytes() {
            return Err(Error::CorruptIndex(format!("{NAMES_FILE} entry {i} does not match {METHODS_FILE}")));
        }
    }

    let postings_path = dir.join(POSTINGS_FILE);
    let postings = if postings_path.exists() {
        let buf = read(&postings_path)?;
        let mut c = Cursor { buf: &buf, pos: 0, what: POSTINGS_FILE };
        let n = c.header(POSTINGS_MAGIC)?;
        let mut map: BTreeMap<Gram, Vec<u32>> = BTreeMap::new();
        for _ in 0..n {
            let gram: Gram = c.take(3)?.try_into().expect("3 bytes");
            let len = c.u32()? as usize;
            let mut list = Vec::with_capacity(len.min(records.len()));
            for _ in 0..len {
                let o = c.u32()?;
                if o as usize >= records.len() {
                    return Err(Error::CorruptIndex(format!("{POSTINGS_FILE} references record {o}")));
                }
                list.push(o);
            }
            map.insert(gram, list);
        }
        Some(map)
    } else {
        None
    };

    let frequency = FrequencyTable::load(&dir.join(FREQUENCY_FILE))?;
    Ok(NameIndex {
        records,
        postings,
        frequency,
    })
}
