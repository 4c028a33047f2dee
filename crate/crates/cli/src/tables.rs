//! CSV and plain-text table files exchanged between commands.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use socrank_core::{RankedList, UrlId};

use crate::error::{CliError, Result};

pub fn write_csv<I, R>(path: &Path, header: &[&str], rows: I) -> Result<()>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_path(path).map_err(|e| CliError::csv(path, e))?;
    w.write_record(header).map_err(|e| CliError::csv(path, e))?;
    for row in rows {
        w.write_record(row).map_err(|e| CliError::csv(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Tab-separated plot data; fields never contain tabs.
pub fn write_tsv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut text = header.join("\t");
    text.push('\n');
    for row in rows {
        text.push_str(&row.join("\t"));
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn read_records(path: &Path) -> Result<(csv::StringRecord, Vec<csv::StringRecord>)> {
    let mut r = csv::Reader::from_path(path).map_err(|e| CliError::csv(path, e))?;
    let header = r.headers().map_err(|e| CliError::csv(path, e))?.clone();
    let rows = r.records().collect::<std::result::Result<_, _>>().map_err(|e| CliError::csv(path, e))?;
    Ok((header, rows))
}

fn position(path: &Path, line: usize, field: &str) -> Result<u32> {
    match field.parse() {
        Ok(p) if p > 0 => Ok(p),
        _ => Err(CliError::data(path, format!("row {line}: bad rank position {field:?}"))),
    }
}

/// One URL set's results: PRSN, HSN and one MF column per person, rows in
/// display order. URLs are identified by row index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankingTable {
    pub urls: Vec<String>,
    pub prsn: Vec<u32>,
    pub hsn: Vec<u32>,
    pub persons: Vec<String>,
    /// `mf[k][row]` is person k's position for that row's URL.
    pub mf: Vec<Vec<u32>>,
}

const MF_PREFIX: &str = "mf_pos_";

impl RankingTable {
    pub fn read(path: &Path) -> Result<Self> {
        let (header, rows) = read_records(path)?;
        let head: Vec<&str> = header.iter().collect();
        if head.len() < 3 || head[..3] != ["url", "prsn_pos", "hsn_pos"] {
            return Err(CliError::data(path, "header must start with url,prsn_pos,hsn_pos"));
        }
        let mut persons = Vec::new();
        for h in &head[3..] {
            let label = h
                .strip_prefix(MF_PREFIX)
                .ok_or_else(|| CliError::data(path, format!("unexpected column {h:?}")))?;
            persons.push(label.to_owned());
        }
        let mut table = RankingTable {
            urls: Vec::new(),
            prsn: Vec::new(),
            hsn: Vec::new(),
            mf: vec![Vec::new(); persons.len()],
            persons,
        };
        for (i, row) in rows.iter().enumerate() {
            let line = i + 2;
            if row.len() != head.len() {
                return Err(CliError::data(path, format!("row {line}: expected {} fields", head.len())));
            }
            table.urls.push(row[0].to_owned());
            table.prsn.push(position(path, line, &row[1])?);
            table.hsn.push(position(path, line, &row[2])?);
            for (k, col) in table.mf.iter_mut().enumerate() {
                col.push(position(path, line, &row[3 + k])?);
            }
        }
        if table.urls.is_empty() {
            return Err(CliError::data(path, "no ranking rows"));
        }
        Ok(table)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let mut header = vec!["url".to_owned(), "prsn_pos".into(), "hsn_pos".into()];
        header.extend(self.persons.iter().map(|p| format!("{MF_PREFIX}{p}")));
        let header: Vec<&str> = header.iter().map(String::as_str).collect();
        let rows = (0..self.urls.len()).map(|i| {
            let mut row = vec![self.urls[i].clone(), self.prsn[i].to_string(), self.hsn[i].to_string()];
            row.extend(self.mf.iter().map(|col| col[i].to_string()));
            row
        });
        write_csv(path, &header, rows)
    }

    pub fn len(&self) -> usize {
        self.urls.len()
    }

    pub fn is_empty(&self) -> bool {
        self.urls.is_empty()
    }

    fn list(&self, positions: &[u32]) -> RankedList {
        RankedList::from_positions(
            positions
                .iter()
                .enumerate()
                .map(|(i, &p)| (UrlId(i as u32), p))
                .collect(),
        )
        .expect("positions were validated on read")
    }

    pub fn prsn_list(&self) -> RankedList {
        self.list(&self.prsn)
    }

    pub fn hsn_list(&self) -> RankedList {
        self.list(&self.hsn)
    }

    pub fn mf_list(&self, person: usize) -> RankedList {
        self.list(&self.mf[person])
    }

    /// The human-readable view with MF positions joined as `9/12/10/15`.
    pub fn render(&self, title: &str) -> String {
        let mf: Vec<String> = (0..self.len())
            .map(|i| self.mf.iter().map(|c| c[i].to_string()).collect::<Vec<_>>().join("/"))
            .collect();
        let mut rows = vec![vec!["URL".to_owned(), "PRSN".into(), "HSN".into(), "MF".into()]];
        for i in 0..self.len() {
            rows.push(vec![self.urls[i].clone(), self.prsn[i].to_string(), self.hsn[i].to_string(), mf[i].clone()]);
        }
        let mut out = format!("{title}\n");
        out.push_str(&align(&rows));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PersonRow {
    pub set: String,
    pub label: String,
    pub handle: String,
    /// Number of users this person follows.
    pub outdegree: usize,
}

pub fn write_persons(path: &Path, rows: &[PersonRow]) -> Result<()> {
    write_csv(
        path,
        &["set", "label", "handle", "outdegree"],
        rows.iter()
            .map(|r| [r.set.clone(), r.label.clone(), r.handle.clone(), r.outdegree.to_string()]),
    )
}

pub fn read_persons(path: &Path) -> Result<Vec<PersonRow>> {
    let (header, rows) = read_records(path)?;
    if header.iter().collect::<Vec<_>>() != ["set", "label", "handle", "outdegree"] {
        return Err(CliError::data(path, "header must be set,label,handle,outdegree"));
    }
    rows.iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(PersonRow {
                set: r[0].to_owned(),
                label: r[1].to_owned(),
                handle: r[2].to_owned(),
                outdegree: r[3]
                    .parse()
                    .map_err(|_| CliError::data(path, format!("row {}: bad outdegree {:?}", i + 2, &r[3])))?,
            })
        })
        .collect()
}

/// Left-aligns the first column and right-aligns the rest.
pub fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        for (c, cell) in row.iter().enumerate() {
            if c == 0 {
                let _ = write!(out, "{cell:<w$}", w = widths[c]);
            } else {
                let _ = write!(out, "  {cell:>w$}", w = widths[c]);
            }
        }
        out.push('\n');
    }
    out
}
