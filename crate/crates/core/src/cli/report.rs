//! Line-oriented report format.
//!
//! ```text
//! report   ::= "report" SP command NL body
//! body     ::= { entry | section }
//! entry    ::= key SP "text" [SP rest-of-line] NL
//!            | key SP "ints" { SP integer } NL
//!            | key SP "matrix" SP rows SP cols NL { row NL }
//! section  ::= "begin" SP key NL body "end" NL
//! row      ::= integer { SP integer }
//! key      ::= [a-z0-9_]+
//! ```
//!
//! Leading spaces are indentation and carry no meaning.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactla::FieldMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Text(String),
    Ints(Vec<i64>),
    Matrix {
        rows: usize,
        cols: usize,
        data: Vec<Vec<i64>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Item {
    Entry(String, Value),
    Section(Section),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Section {
    pub name: String,
    pub items: Vec<Item>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Self {
        Section {
            name: name.into(),
            items: Vec::new(),
        }
    }

    pub fn text(&mut self, key: &str, v: impl Into<String>) -> &mut Self {
        let v: String = v.into();
        self.items.push(Item::Entry(key.into(), Value::Text(v.replace('\n', " "))));
        self
    }

    pub fn ints<T: Copy + Into<i64>>(&mut self, key: &str, v: &[T]) -> &mut Self {
        self.items
            .push(Item::Entry(key.into(), Value::Ints(v.iter().map(|&x| x.into()).collect())));
        self
    }

    pub fn int(&mut self, key: &str, v: usize) -> &mut Self {
        self.items.push(Item::Entry(key.into(), Value::Ints(vec![v as i64])));
        self
    }

    /// Stores residues in their balanced form, so `-1` reads as `-1`.
    pub fn matrix(&mut self, key: &str, m: &FieldMatrix) -> &mut Self {
        self.items.push(Item::Entry(
            key.into(),
            Value::Matrix {
                rows: m.rows(),
                cols: m.cols(),
                data: m.signed_rows(),
            },
        ));
        self
    }

    pub fn section(&mut self, s: Section) -> &mut Self {
        self.items.push(Item::Section(s));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.items.iter().find_map(|i| match i {
            Item::Entry(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn get_ints(&self, key: &str) -> Option<&[i64]> {
        match self.get(key) {
            Some(Value::Ints(v)) => Some(v),
            _ => None,
        }
    }

    pub fn get_text(&self, key: &str) -> Option<&str> {
        match self.get(key) {
            Some(Value::Text(v)) => Some(v),
            _ => None,
        }
    }

    pub fn sections<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a Section> + 'a {
        self.items.iter().filter_map(move |i| match i {
            Item::Section(s) if s.name == name => Some(s),
            _ => None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub command: String,
    pub body: Section,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            body: Section::new(""),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("report {}\n", self.command);
        write_items(&mut out, &self.body.items, 0);
        out
    }

    pub fn parse(text: &str) -> Result<Report> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty())
            .collect();
        let Some(&(no, head)) = lines.first() else {
            return Err(perr(1, "empty report"));
        };
        let command = head
            .strip_prefix("report ")
            .ok_or_else(|| perr(no, "expected 'report <command>'"))?;
        let mut at = 1;
        let body = read_items(&lines, &mut at, "")?;
        Ok(Report {
            command: command.into(),
            body,
        })
    }
}

fn write_items(out: &mut String, items: &[Item], depth: usize) {
    let pad = "  ".repeat(depth);
    for item in items {
        match item {
            Item::Entry(k, Value::Text(t)) if t.is_empty() => {
                let _ = writeln!(out, "{pad}{k} text");
            }
            Item::Entry(k, Value::Text(t)) => {
                let _ = writeln!(out, "{pad}{k} text {t}");
            }
            Item::Entry(k, Value::Ints(v)) => {
                let _ = write!(out, "{pad}{k} ints");
                for x in v {
                    let _ = write!(out, " {x}");
                }
                out.push('\n');
            }
            Item::Entry(k, Value::Matrix { rows, cols, data }) => {
                let _ = writeln!(out, "{pad}{k} matrix {rows} {cols}");
                for r in data {
                    let row: Vec<String> = r.iter().map(i64::to_string).collect();
                    let _ = writeln!(out, "{pad}  {}", row.join(" "));
                }
            }
            Item::Section(s) => {
                let _ = writeln!(out, "{pad}begin {}", s.name);
                write_items(out, &s.items, depth + 1);
                let _ = writeln!(out, "{pad}end");
            }
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn valid_key(k: &str) -> bool {
    !k.is_empty() && k.bytes().all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

fn ints(no: usize, toks: &[&str]) -> Result<Vec<i64>> {
    toks.iter()
        .map(|t| t.parse().map_err(|_| perr(no, format!("'{t}' is not an integer"))))
        .collect()
}

fn read_items(lines: &[(usize, &str)], at: &mut usize, name: &str) -> Result<Section> {
    let mut sec = Section::new(name);
    while *at < lines.len() {
        let (no, line) = lines[*at];
        *at += 1;
        if line == "end" {
            if name.is_empty() {
                return Err(perr(no, "'end' without 'begin'"));
            }
            return Ok(sec);
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks[0] == "begin" {
            match toks.as_slice() {
                [_, k] if valid_key(k) => {
                    let inner = read_items(lines, at, k)?;
                    sec.items.push(Item::Section(inner));
                    continue;
                }
                _ => return Err(perr(no, "expected 'begin <key>'")),
            }
        }
        if !valid_key(toks[0]) || toks.len() < 2 {
            return Err(perr(no, "expected '<key> text|ints|matrix ...'"));
        }
        let key = toks[0].to_string();
        let value = match toks[1] {
            "text" => {
                let rest = line[toks[0].len()..].trim_start()["text".len()..].trim_start();
                Value::Text(rest.to_string())
            }
            "ints" => Value::Ints(ints(no, &toks[2..])?),
            "matrix" => {
                let dims = ints(no, &toks[2..])?;
                let [rows, cols] = dims.as_slice() else {
                    return Err(perr(no, "expected 'matrix <rows> <cols>'"));
                };
                let (rows, cols) = (*rows as usize, *cols as usize);
                let mut data = Vec::with_capacity(rows);
                for _ in 0..rows {
                    let Some(&(rno, row)) = lines.get(*at) else {
                        return Err(perr(no, "matrix ends early"));
                    };
                    *at += 1;
                    let r = ints(rno, &row.split_whitespace().collect::<Vec<_>>())?;
                    if r.len() != cols {
                        return Err(perr(rno, format!("expected {cols} entries")));
                    }
                    data.push(r);
                }
                Value::Matrix { rows, cols, data }
            }
            other => return Err(perr(no, format!("unknown value kind '{other}'"))),
        };
        sec.items.push(Item::Entry(key, value));
    }
    if name.is_empty() {
        Ok(sec)
    } else {
        Err(perr(lines.last().map_or(1, |l| l.0), format!("section '{name}' is not closed")))
    }
}
