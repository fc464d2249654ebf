//! Line-oriented text format for explicit (co)sheaf and bisheaf data.
//! The grammar is documented in the repository README.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::{covering_relations, Bisheaf, CellCosheaf, CellSheaf, Relation};
use crate::complex::{Cell, CellComplex};
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldMatrix};

/// Parsed explicit input. Either side may be absent; vertical maps need both.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitInput {
    pub field: Field,
    pub degree: Option<usize>,
    pub base: CellComplex,
    pub sheaf: Option<CellSheaf>,
    pub cosheaf: Option<CellCosheaf>,
    pub vertical: Option<Vec<FieldMatrix>>,
}

impl ExplicitInput {
    pub fn from_bisheaf(b: &Bisheaf, degree: Option<usize>) -> Self {
        ExplicitInput {
            field: b.base().field(),
            degree,
            base: b.base().clone(),
            sheaf: Some(b.sheaf().clone()),
            cosheaf: Some(b.cosheaf().clone()),
            vertical: Some(b.verticals().to_vec()),
        }
    }

    pub fn bisheaf(&self) -> Result<Bisheaf> {
        match (&self.sheaf, &self.cosheaf, &self.vertical) {
            (Some(s), Some(c), Some(v)) => Bisheaf::new(s.clone(), c.clone(), v.clone()),
            _ => Err(Error::InvalidSheaf(
                "a bisheaf needs sheaf, cosheaf and vertical data".into(),
            )),
        }
    }
}

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

struct Line<'a> {
    no: usize,
    tokens: Vec<&'a str>,
}

fn nat(line: &Line, i: usize, what: &str) -> Result<usize> {
    let t = line
        .tokens
        .get(i)
        .ok_or_else(|| perr(line.no, format!("missing {what}")))?;
    t.parse()
        .map_err(|_| perr(line.no, format!("expected {what}, found '{t}'")))
}

fn int(no: usize, t: &str) -> Result<i64> {
    t.parse()
        .map_err(|_| perr(no, format!("expected an integer, found '{t}'")))
}

#[derive(Default)]
struct Side {
    present: bool,
    dims: BTreeMap<usize, usize>,
    maps: BTreeMap<Relation, FieldMatrix>,
}

/// Reads `rows x cols` following a block header, or an `id`/`zero` keyword.
fn block(
    field: Field,
    lines: &[Line],
    at: &mut usize,
    keyword: Option<&str>,
    rows: usize,
    cols: usize,
) -> Result<FieldMatrix> {
    let head = &lines[*at];
    *at += 1;
    match keyword {
        Some("id") => {
            if rows != cols {
                return Err(perr(head.no, format!("'id' needs a square map, not {rows}x{cols}")));
            }
            return Ok(FieldMatrix::identity(field, rows));
        }
        Some("zero") => return Ok(FieldMatrix::zeros(field, rows, cols)),
        Some(k) => return Err(perr(head.no, format!("unexpected '{k}'"))),
        None => {}
    }
    if cols == 0 {
        return Ok(FieldMatrix::zeros(field, rows, 0));
    }
    let mut data = Vec::with_capacity(rows);
    for r in 0..rows {
        let line = lines
            .get(*at)
            .ok_or_else(|| perr(head.no, format!("matrix ends after {r} of {rows} rows")))?;
        if line.tokens.len() != cols || line.tokens[0].parse::<i64>().is_err() {
            return Err(perr(
                line.no,
                format!("expected a row of {cols} integers, found {} tokens", line.tokens.len()),
            ));
        }
        let row: Vec<i64> = line.tokens.iter().map(|t| int(line.no, t)).collect::<Result<_>>()?;
        data.push(row);
        *at += 1;
    }
    FieldMatrix::from_rows_with_cols(field, &data, cols)
}

fn side_of(line: &Line, i: usize) -> Result<bool> {
    match line.tokens.get(i).copied() {
        Some("sheaf") => Ok(true),
        Some("cosheaf") => Ok(false),
        other => Err(perr(
            line.no,
            format!("expected 'sheaf' or 'cosheaf', found {:?}", other.unwrap_or("")),
        )),
    }
}

pub fn parse_explicit(text: &str) -> Result<ExplicitInput> {
    let lines: Vec<Line> = text
        .lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            tokens: l.split('#').next().unwrap_or("").split_whitespace().collect(),
        })
        .filter(|l| !l.tokens.is_empty())
        .collect();
    match lines.first() {
        Some(l) if l.tokens == ["format", "explicit"] => {}
        Some(l) => return Err(perr(l.no, "expected header 'format explicit'")),
        None => return Err(perr(1, "empty input")),
    }
    let mut field: Option<Field> = None;
    let mut degree = None;
    let mut cells: Vec<Cell> = Vec::new();
    let mut base: Option<CellComplex> = None;
    let mut sides = [Side::default(), Side::default()];
    let mut vertical: BTreeMap<usize, FieldMatrix> = BTreeMap::new();

    let mut at = 1;
    while at < lines.len() {
        let line = &lines[at];
        let f = *field.get_or_insert_with(Field::gf2);
        let ensure_base = |base: &mut Option<CellComplex>, cells: &[Cell]| -> Result<CellComplex> {
            if base.is_none() {
                *base = Some(CellComplex::new(f, cells.to_vec()).map_err(|e| perr(line.no, e.to_string()))?);
            }
            Ok(base.clone().expect("base"))
        };
        match line.tokens[0] {
            "field" => {
                if !cells.is_empty() {
                    return Err(perr(line.no, "'field' must precede the cells"));
                }
                let p = nat(line, 1, "a prime")?;
                field = Some(Field::new(p as u64).map_err(|e| perr(line.no, e.to_string()))?);
                at += 1;
            }
            "degree" => {
                degree = Some(nat(line, 1, "a degree")?);
                at += 1;
            }
            "cell" => {
                if base.is_some() {
                    return Err(perr(line.no, "cells must precede stalks and maps"));
                }
                let id = nat(line, 1, "a cell id")?;
                if id != cells.len() {
                    return Err(perr(line.no, format!("expected cell id {}, found {id}", cells.len())));
                }
                let dim = nat(line, 2, "a dimension")?;
                let mut faces = Vec::new();
                let mut signs = Vec::new();
                let mut mode = "";
                for t in &line.tokens[3..] {
                    match *t {
                        "faces" | "signs" => mode = t,
                        _ if mode == "faces" => faces.push(
                            t.parse::<usize>()
                                .map_err(|_| perr(line.no, format!("bad face id '{t}'")))?,
                        ),
                        _ if mode == "signs" => signs.push(int(line.no, t)?),
                        _ => return Err(perr(line.no, format!("unexpected '{t}'"))),
                    }
                }
                if dim == 0 && !faces.is_empty() {
                    return Err(perr(line.no, "a vertex has no faces"));
                }
                if dim > 0 && faces.is_empty() {
                    return Err(perr(line.no, "a positive-dimensional cell needs faces"));
                }
                if signs.is_empty() {
                    signs = if dim == 1 && faces.len() == 2 {
                        vec![-1, 1]
                    } else {
                        vec![1; faces.len()]
                    };
                }
                if signs.len() != faces.len() {
                    return Err(perr(line.no, "one sign per face"));
                }
                let boundary = faces.iter().zip(&signs).map(|(&c, &s)| (c, f.reduce(s))).collect();
                let mut cell = Cell::new(dim, boundary);
                if dim == 1 && faces.len() == 2 {
                    cell.vertices = Some(faces.clone());
                }
                cells.push(cell);
                at += 1;
            }
            "stalk" => {
                ensure_base(&mut base, &cells)?;
                let s = side_of(line, 1)?;
                let id = nat(line, 2, "a cell id")?;
                if id >= cells.len() {
                    return Err(perr(line.no, format!("unknown cell {id}")));
                }
                let dim = nat(line, 3, "a stalk dimension")?;
                let side = &mut sides[usize::from(!s)];
                side.present = true;
                if side.dims.insert(id, dim).is_some() {
                    return Err(perr(line.no, format!("stalk of cell {id} given twice")));
                }
                at += 1;
            }
            "map" => {
                let b = ensure_base(&mut base, &cells)?;
                let s = side_of(line, 1)?;
                let sigma = nat(line, 2, "a cell id")?;
                let tau = nat(line, 3, "a cell id")?;
                if sigma >= b.len() || tau >= b.len() || !b.faces(sigma).any(|x| x == tau) {
                    return Err(perr(line.no, format!("{tau} is not a facet of {sigma}")));
                }
                let keyword = line.tokens.get(4).copied();
                let side = &mut sides[usize::from(!s)];
                side.present = true;
                let ds = side.dims.get(&sigma).copied().unwrap_or(0);
                let dt = side.dims.get(&tau).copied().unwrap_or(0);
                let (rows, cols) = if s { (ds, dt) } else { (dt, ds) };
                let no = line.no;
                let m = block(f, &lines, &mut at, keyword, rows, cols)?;
                if side.maps.insert((sigma, tau), m).is_some() {
                    return Err(perr(no, format!("map {sigma} {tau} given twice")));
                }
            }
            "vertical" => {
                ensure_base(&mut base, &cells)?;
                let id = nat(line, 1, "a cell id")?;
                if id >= cells.len() {
                    return Err(perr(line.no, format!("unknown cell {id}")));
                }
                let keyword = line.tokens.get(2).copied();
                let rows = sides[1].dims.get(&id).copied().unwrap_or(0);
                let cols = sides[0].dims.get(&id).copied().unwrap_or(0);
                let no = line.no;
                let m = block(f, &lines, &mut at, keyword, rows, cols)?;
                if vertical.insert(id, m).is_some() {
                    return Err(perr(no, format!("vertical map of cell {id} given twice")));
                }
            }
            other => return Err(perr(line.no, format!("unknown directive '{other}'"))),
        }
    }
    let field = field.unwrap_or_default();
    let last = lines.last().map(|l| l.no).unwrap_or(1);
    let base = match base {
        Some(b) => b,
        None => CellComplex::new(field, cells).map_err(|e| perr(last, e.to_string()))?,
    };
    let n = base.len();
    let wrap = |e: Error| perr(last, e.to_string());
    let dims = |side: &Side| (0..n).map(|c| side.dims.get(&c).copied().unwrap_or(0)).collect::<Vec<_>>();
    let [sh, co] = sides;
    let sheaf = if sh.present {
        Some(CellSheaf::new(base.clone(), dims(&sh), sh.maps.clone()).map_err(wrap)?)
    } else {
        None
    };
    let cosheaf = if co.present {
        Some(CellCosheaf::new(base.clone(), dims(&co), co.maps.clone()).map_err(wrap)?)
    } else {
        None
    };
    let vertical = if vertical.is_empty() {
        None
    } else {
        let (Some(s), Some(c)) = (&sheaf, &cosheaf) else {
            return Err(perr(last, "vertical maps need both a sheaf and a cosheaf"));
        };
        let v: Vec<FieldMatrix> = (0..n)
            .map(|id| {
                vertical
                    .get(&id)
                    .cloned()
                    .unwrap_or_else(|| FieldMatrix::zeros(field, c.stalk_dim(id), s.stalk_dim(id)))
            })
            .collect();
        if let Some(id) = (0..n).find(|id| !vertical.contains_key(id) && c.stalk_dim(*id) > 0 && s.stalk_dim(*id) > 0) {
            return Err(perr(last, format!("missing vertical map for cell {id}")));
        }
        Bisheaf::new(s.clone(), c.clone(), v.clone()).map_err(wrap)?;
        Some(v)
    };
    Ok(ExplicitInput {
        field,
        degree,
        base,
        sheaf,
        cosheaf,
        vertical,
    })
}

fn write_matrix(out: &mut String, m: &FieldMatrix) {
    if m.cols() == 0 {
        return;
    }
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
}

/// Canonical text form; `parse_explicit` reads it back to an equal value.
pub fn write_explicit(x: &ExplicitInput) -> String {
    let f = x.field;
    let mut out = String::from("format explicit\n");
    let _ = writeln!(out, "field {}", f.p());
    if let Some(k) = x.degree {
        let _ = writeln!(out, "degree {k}");
    }
    for (id, cell) in x.base.cells().iter().enumerate() {
        let _ = write!(out, "cell {id} {}", cell.dim);
        if !cell.boundary.is_empty() {
            let faces: Vec<String> = cell.boundary.iter().map(|(c, _)| c.to_string()).collect();
            let _ = write!(out, " faces {}", faces.join(" "));
            let signs: Vec<i64> = cell.boundary.iter().map(|&(_, s)| f.signed(s)).collect();
            let default: Vec<u32> = if cell.dim == 1 && signs.len() == 2 {
                vec![f.neg(1), 1]
            } else {
                vec![1; signs.len()]
            };
            let actual: Vec<u32> = cell.boundary.iter().map(|&(_, s)| s).collect();
            if actual != default {
                let s: Vec<String> = signs.iter().map(|s| s.to_string()).collect();
                let _ = write!(out, " signs {}", s.join(" "));
            }
        }
        out.push('\n');
    }
    let rels = covering_relations(&x.base);
    if let Some(s) = &x.sheaf {
        for (id, d) in s.stalk_dims().iter().enumerate() {
            let _ = writeln!(out, "stalk sheaf {id} {d}");
        }
        for &(a, b) in &rels {
            let _ = writeln!(out, "map sheaf {a} {b}");
            write_matrix(&mut out, s.map(a, b));
        }
    }
    if let Some(c) = &x.cosheaf {
        for (id, d) in c.stalk_dims().iter().enumerate() {
            let _ = writeln!(out, "stalk cosheaf {id} {d}");
        }
        for &(a, b) in &rels {
            let _ = writeln!(out, "map cosheaf {a} {b}");
            write_matrix(&mut out, c.map(a, b));
        }
    }
    if let Some(v) = &x.vertical {
        for (id, m) in v.iter().enumerate() {
            let _ = writeln!(out, "vertical {id}");
            write_matrix(&mut out, m);
        }
    }
    out
}
