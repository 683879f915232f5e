//! Text formats for psyquandles, brackets and diagrams.
//!
//! All formats are line based. Blank lines and lines starting with `#` are
//! ignored by the readers; the writers emit no comments and end with a
//! newline. Table entries of psyquandles are 1-based, bracket entries are
//! residues `0..m`.
//!
//! ```text
//! psyquandle          bracket            diagram
//! size 2              ring mod 9         strands 2
//! ut:                 A:                 mode pseudo
//! 2 2                 1 1                word s1 t1 t1
//! 1 1                 8 1
//! ot:                 B:
//! ...                 ...
//! ```
//!
//! A batch file repeats `name <id>` followed by a diagram block.

use std::fmt::Write as _;

use crate::bracket::{Coef, PsyBracket};
use crate::diagram::{tokens_with_columns, BraidWord, Mode};
use crate::error::{Error, Result};
use crate::psyquandle::{Op, OpTable, Psyquandle};
use crate::ring::FiniteRing;

struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Reader<'a> {
    fn new(text: &'a str) -> Self {
        let lines: Vec<_> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim_end()))
            .filter(|(_, l)| !l.trim_start().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        Reader { lines, pos: 0, last_line: text.lines().count().max(1) }
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.lines.get(self.pos).copied()
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        let line = self
            .peek()
            .ok_or_else(|| Error::parse(self.last_line, 1, format!("unexpected end of input, expected {what}")))?;
        self.pos += 1;
        Ok(line)
    }

    fn done(&self) -> bool {
        self.pos >= self.lines.len()
    }

    fn keyword(&mut self, word: &str) -> Result<()> {
        let (no, line) = self.next(&format!("`{word}`"))?;
        if line.trim() != word {
            return Err(Error::parse(no, column_of(line), format!("expected `{word}`")));
        }
        Ok(())
    }

    /// A line `<key> <rest>`; returns the line number, column of `rest` and `rest`.
    fn field(&mut self, key: &str) -> Result<(usize, usize, &'a str)> {
        let (no, line) = self.next(&format!("`{key}`"))?;
        let start = column_of(line) - 1;
        let body = &line[start..];
        match body.strip_prefix(key) {
            Some(rest) if rest.is_empty() || rest.starts_with(char::is_whitespace) => {
                let trimmed = rest.trim_start();
                let column = start + key.len() + (rest.len() - trimmed.len()) + 1;
                Ok((no, column, trimmed))
            }
            _ => Err(Error::parse(no, start + 1, format!("expected `{key}`"))),
        }
    }

    fn number(&mut self, key: &str) -> Result<usize> {
        let (no, column, rest) = self.field(key)?;
        rest.parse().map_err(|_| Error::parse(no, column, format!("expected a number after `{key}`")))
    }

    /// `n` rows of `n` integers, each in `lo..=hi`.
    fn table(&mut self, label: &str, n: usize, lo: u64, hi: u64) -> Result<Vec<Vec<u64>>> {
        self.keyword(&format!("{label}:"))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (no, line) = self.next(&format!("a row of table `{label}`"))?;
            let mut row = Vec::with_capacity(n);
            for (column, tok) in tokens_with_columns(line) {
                let v: u64 = tok.parse().map_err(|_| Error::parse(no, column, format!("`{tok}` is not an entry")))?;
                if v < lo || v > hi {
                    return Err(Error::parse(no, column, format!("entry {v} is outside {lo}..{hi}")));
                }
                if row.len() == n {
                    return Err(Error::parse(no, column, format!("row has more than {n} entries")));
                }
                row.push(v);
            }
            if row.len() < n {
                return Err(Error::parse(no, line.len() + 1, format!("row has {} entries, expected {n}", row.len())));
            }
            rows.push(row);
        }
        Ok(rows)
    }

    fn end(&self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some((no, line)) => Err(Error::parse(no, column_of(line), "unexpected trailing content")),
        }
    }
}

fn column_of(line: &str) -> usize {
    line.len() - line.trim_start().len() + 1
}

/// The four operation tables of a psyquandle file, unvalidated.
pub fn parse_psyquandle_tables(text: &str) -> Result<[OpTable; 4]> {
    let mut r = Reader::new(text);
    r.keyword("psyquandle")?;
    let n = r.number("size")?;
    if n == 0 {
        return Err(Error::parse(1, 1, "size must be at least 1"));
    }
    let mut tables = Vec::with_capacity(4);
    for op in Op::ALL {
        let rows = r.table(op.label(), n, 1, n as u64)?;
        let rows: Vec<Vec<usize>> = rows.into_iter().map(|row| row.into_iter().map(|v| v as usize).collect()).collect();
        tables.push(OpTable::from_rows(&rows)?);
    }
    r.end()?;
    Ok(tables.try_into().expect("four tables"))
}

/// Reads and validates a psyquandle.
pub fn parse_psyquandle(text: &str) -> Result<Psyquandle> {
    let [ut, ot, ub, ob] = parse_psyquandle_tables(text)?;
    Psyquandle::from_tables(ut, ot, ub, ob)
}

pub fn write_psyquandle(q: &Psyquandle) -> String {
    let mut out = format!("psyquandle\nsize {}\n", q.size());
    for (op, rows) in Op::ALL.iter().zip(q.rows()) {
        let _ = writeln!(out, "{}:", op.label());
        write_rows(&mut out, &rows);
    }
    out
}

fn write_rows<T: ToString>(out: &mut String, rows: &[Vec<T>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(T::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// Unvalidated contents of a bracket file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketTables {
    pub ring: FiniteRing,
    /// `A, B, P, S`, rows indexed by the first argument.
    pub tables: [Vec<Vec<u32>>; 4],
}

/// Reads a bracket file whose tables are `n x n`.
pub fn parse_bracket_tables(text: &str, n: usize) -> Result<BracketTables> {
    let mut r = Reader::new(text);
    r.keyword("bracket")?;
    let (no, column, rest) = r.field("ring")?;
    let m: u32 = rest
        .strip_prefix("mod")
        .map(str::trim)
        .and_then(|m| m.parse().ok())
        .ok_or_else(|| Error::parse(no, column, "expected `ring mod <m>`"))?;
    if m < 2 {
        return Err(Error::parse(no, column, "ring modulus must be at least 2"));
    }
    let ring = FiniteRing::new(m)?;
    let mut tables = Vec::with_capacity(4);
    for c in Coef::ALL {
        let rows = r.table(c.label(), n, 0, m as u64 - 1)?;
        tables.push(rows.into_iter().map(|row| row.into_iter().map(|v| v as u32).collect()).collect());
    }
    r.end()?;
    Ok(BracketTables { ring, tables: tables.try_into().expect("four tables") })
}

/// Reads and validates a bracket over `base`.
pub fn parse_bracket(text: &str, base: &Psyquandle) -> Result<PsyBracket> {
    let BracketTables { ring, tables: [a, b, p, s] } = parse_bracket_tables(text, base.size())?;
    PsyBracket::from_tables(base.clone(), ring, a, b, p, s)
}

pub fn write_bracket(b: &PsyBracket) -> String {
    let mut out = format!("bracket\nring mod {}\n", b.ring().modulus());
    for c in Coef::ALL {
        let _ = writeln!(out, "{}:", c.label());
        write_rows(&mut out, &b.rows(c));
    }
    out
}

fn read_diagram(r: &mut Reader<'_>) -> Result<BraidWord> {
    r.keyword("diagram")?;
    let (no, column, rest) = r.field("strands")?;
    let strands: usize = rest.parse().map_err(|_| Error::parse(no, column, "expected a strand count"))?;
    if strands == 0 {
        return Err(Error::parse(no, column, "a braid needs at least one strand"));
    }
    let (no, column, rest) = r.field("mode")?;
    let mode: Mode = rest.parse().map_err(|_| Error::parse(no, column, format!("unknown mode `{rest}`")))?;
    let (no, column, rest) = r.field("word")?;
    BraidWord::parse(rest, strands, mode).map_err(|e| match e {
        Error::Parse { column: c, message, .. } => Error::Parse { line: no, column: column + c - 1, message },
        other => other,
    })
}

pub fn parse_diagram(text: &str) -> Result<BraidWord> {
    let mut r = Reader::new(text);
    let w = read_diagram(&mut r)?;
    r.end()?;
    Ok(w)
}

pub fn write_diagram(w: &BraidWord) -> String {
    let word = w.to_string();
    let sep = if word.is_empty() { "" } else { " " };
    format!("diagram\nstrands {}\nmode {}\nword{sep}{word}\n", w.strands(), w.mode())
}

/// Named diagrams of a batch file, in file order.
pub fn parse_batch(text: &str) -> Result<Vec<(String, BraidWord)>> {
    let mut r = Reader::new(text);
    let mut out = Vec::new();
    while !r.done() {
        let (no, column, name) = r.field("name")?;
        if name.is_empty() || name.contains(char::is_whitespace) {
            return Err(Error::parse(no, column, "expected `name <id>`"));
        }
        out.push((name.to_string(), read_diagram(&mut r)?));
    }
    Ok(out)
}
