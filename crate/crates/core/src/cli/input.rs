//! Readers for the three input formats. The first non-comment line names the
//! format. Errors carry the 1-based line number.

use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::periodic::{
    cubical_complex, parse_rational, Cube, LiftedSimplex, Origin, PeriodicComplex, Rational,
};
use crate::sheafcore::{parse_explicit, ExplicitInput};

#[derive(Debug, Clone)]
pub enum Input {
    Geometric {
        format: &'static str,
        complex: PeriodicComplex,
    },
    Explicit(ExplicitInput),
}

impl Input {
    pub fn format(&self) -> &'static str {
        match self {
            Input::Geometric { format, .. } => format,
            Input::Explicit(_) => "explicit",
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Input::Geometric { complex, .. } => complex.field(),
            Input::Explicit(x) => x.field,
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

fn lines(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .map(|(i, l)| Line {
            no: i + 1,
            tokens: l.split('#').next().unwrap_or("").split_whitespace().collect(),
        })
        .filter(|l| !l.tokens.is_empty())
        .collect()
}

fn nat(l: &Line, t: &str) -> Result<usize> {
    t.parse()
        .map_err(|_| perr(l.no, format!("expected a natural number, found '{t}'")))
}

fn int(l: &Line, t: &str) -> Result<i64> {
    t.parse()
        .map_err(|_| perr(l.no, format!("expected an integer, found '{t}'")))
}

fn one_arg<'a>(l: &Line<'a>) -> Result<&'a str> {
    match l.tokens.as_slice() {
        [_, x] => Ok(x),
        _ => Err(perr(l.no, format!("'{}' takes exactly one value", l.tokens[0]))),
    }
}

/// Resolves the field: a `field` line in the file, else the command line,
/// else GF(2). Both given and different is an error.
fn pick_field(in_file: Option<(usize, u32)>, cli: Option<u32>) -> Result<Field> {
    match (in_file, cli) {
        (Some((no, a)), Some(b)) if a != b => Err(perr(
            no,
            format!("file asks for GF({a}) but --field asks for GF({b})"),
        )),
        (Some((no, p)), _) => Field::new(p as u64).map_err(|e| perr(no, e.to_string())),
        (None, Some(p)) => Field::new(p as u64).map_err(|e| Error::Config(e.to_string())),
        (None, None) => Ok(Field::gf2()),
    }
}

/// Reads any supported format. `field` is the `--field` value, if given.
pub fn parse_input(text: &str, field: Option<u32>) -> Result<Input> {
    let ls = lines(text);
    let Some(first) = ls.first() else {
        return Err(perr(1, "empty input"));
    };
    match first.tokens.as_slice() {
        ["format", "simplicial"] => Ok(Input::Geometric {
            format: "simplicial",
            complex: parse_simplicial(&ls, field)?,
        }),
        ["format", "cubical"] => Ok(Input::Geometric {
            format: "cubical",
            complex: parse_cubical(&ls, field)?,
        }),
        ["format", "explicit"] => {
            let x = parse_explicit(text)?;
            if let Some(p) = field {
                if p != x.field.p() {
                    return Err(Error::Config(format!(
                        "file asks for GF({}) but --field asks for GF({p})",
                        x.field.p()
                    )));
                }
            }
            Ok(Input::Explicit(x))
        }
        _ => Err(perr(
            first.no,
            "expected 'format simplicial', 'format cubical' or 'format explicit'",
        )),
    }
}

fn parse_simplicial(ls: &[Line], cli_field: Option<u32>) -> Result<PeriodicComplex> {
    let mut field = None;
    let mut d: Option<(usize, usize)> = None;
    let mut coords: Vec<Vec<Rational>> = Vec::new();
    let mut simplices: Vec<(usize, Vec<(usize, Option<Vec<i64>>)>)> = Vec::new();
    for l in &ls[1..] {
        match l.tokens[0] {
            "field" => field = Some((l.no, nat(l, one_arg(l)?)? as u32)),
            "periodic" => {
                if !coords.is_empty() {
                    return Err(perr(l.no, "'periodic' must precede the vertices"));
                }
                d = Some((l.no, nat(l, one_arg(l)?)?));
            }
            "vertex" => {
                let Some((_, d)) = d else {
                    return Err(perr(l.no, "'periodic' must come before the first vertex"));
                };
                let xs = l.tokens[1..]
                    .iter()
                    .map(|t| {
                        parse_rational(t)
                            .ok_or_else(|| perr(l.no, format!("'{t}' is not a rational number")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if xs.len() < d {
                    return Err(perr(l.no, format!("a vertex needs at least {d} coordinates")));
                }
                if let Some(first) = coords.first() {
                    if first.len() != xs.len() {
                        return Err(perr(l.no, format!("expected {} coordinates", first.len())));
                    }
                }
                for x in &xs[..d] {
                    if *x < Rational::from_integer(0) || *x >= Rational::from_integer(1) {
                        return Err(perr(l.no, format!("periodic coordinate {x} outside [0,1)")));
                    }
                }
                coords.push(xs);
            }
            "simplex" => {
                let Some((_, d)) = d else {
                    return Err(perr(l.no, "'periodic' must come before the simplices"));
                };
                if l.tokens.len() < 2 {
                    return Err(perr(l.no, "a simplex needs at least one vertex"));
                }
                let mut s = Vec::new();
                for t in &l.tokens[1..] {
                    let (v, shift) = match t.split_once('@') {
                        Some((v, sh)) => {
                            let sh = sh
                                .split(',')
                                .map(|x| int(l, x))
                                .collect::<Result<Vec<_>>>()?;
                            if sh.len() != d {
                                return Err(perr(l.no, format!("'{t}' needs {d} shifts")));
                            }
                            (v, Some(sh))
                        }
                        None => (*t, None),
                    };
                    let v = nat(l, v)?;
                    if v >= coords.len() {
                        return Err(perr(l.no, format!("unknown vertex {v}")));
                    }
                    s.push((v, shift));
                }
                simplices.push((l.no, s));
            }
            other => return Err(perr(l.no, format!("unknown keyword '{other}'"))),
        }
    }
    let Some((_, d)) = d else {
        return Err(perr(ls[0].no, "missing 'periodic' line"));
    };
    let f = pick_field(field, cli_field)?;
    let explicit = simplices.iter().any(|(_, s)| s.iter().any(|x| x.1.is_some()));
    let located = |no: usize, e: Error| match e {
        Error::Unsupported(_) => e,
        other => perr(no, other.to_string()),
    };
    if explicit {
        let lifted: Vec<LiftedSimplex> = simplices
            .iter()
            .map(|(_, s)| {
                s.iter()
                    .map(|(v, sh)| (*v, sh.clone().unwrap_or_else(|| vec![0; d])))
                    .collect()
            })
            .collect();
        PeriodicComplex::from_lifted_simplices(f, d, coords, &lifted, Origin::Simplicial)
    } else {
        // Validate one simplex at a time so errors point at their line.
        for (no, s) in &simplices {
            let plain: Vec<usize> = s.iter().map(|x| x.0).collect();
            PeriodicComplex::from_simplices_nearest(f, d, coords.clone(), &[plain])
                .map_err(|e| located(*no, e))?;
        }
        let plain: Vec<Vec<usize>> = simplices
            .iter()
            .map(|(_, s)| s.iter().map(|x| x.0).collect())
            .collect();
        PeriodicComplex::from_simplices_nearest(f, d, coords, &plain)
    }
}

fn parse_cubical(ls: &[Line], cli_field: Option<u32>) -> Result<PeriodicComplex> {
    let mut field = None;
    let mut extents: Option<Vec<usize>> = None;
    let mut d: Option<usize> = None;
    let mut cubes: Vec<(usize, Cube)> = Vec::new();
    for l in &ls[1..] {
        match l.tokens[0] {
            "field" => field = Some((l.no, nat(l, one_arg(l)?)? as u32)),
            "extents" => {
                let e = l.tokens[1..]
                    .iter()
                    .map(|t| nat(l, t))
                    .collect::<Result<Vec<_>>>()?;
                if e.is_empty() {
                    return Err(perr(l.no, "'extents' needs at least one axis"));
                }
                extents = Some(e);
            }
            "periodic" => d = Some(nat(l, one_arg(l)?)?),
            "cube" => {
                let Some(n) = extents.as_ref().map(Vec::len) else {
                    return Err(perr(l.no, "'extents' must come before the cubes"));
                };
                let split = l.tokens.iter().position(|t| *t == "axes");
                let (origin, axes) = match split {
                    Some(i) => (&l.tokens[1..i], &l.tokens[i + 1..]),
                    None => (&l.tokens[1..], &l.tokens[..0]),
                };
                if origin.len() != n {
                    return Err(perr(l.no, format!("a cube corner needs {n} coordinates")));
                }
                let origin = origin.iter().map(|t| int(l, t)).collect::<Result<Vec<_>>>()?;
                let axes = axes
                    .iter()
                    .map(|t| match nat(l, t)? {
                        a if (1..=n).contains(&a) => Ok(a - 1),
                        a => Err(perr(l.no, format!("axis {a} outside 1..={n}"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                cubes.push((l.no, Cube { origin, axes }));
            }
            other => return Err(perr(l.no, format!("unknown keyword '{other}'"))),
        }
    }
    let extents = extents.ok_or_else(|| perr(ls[0].no, "missing 'extents' line"))?;
    let d = d.ok_or_else(|| perr(ls[0].no, "missing 'periodic' line"))?;
    let f = pick_field(field, cli_field)?;
    for (no, cube) in &cubes {
        if let Err(e) = cubical_complex(f, &extents, d, std::slice::from_ref(cube)) {
            return Err(match e {
                Error::Unsupported(_) => e,
                other => perr(*no, other.to_string()),
            });
        }
    }
    let all: Vec<Cube> = cubes.into_iter().map(|(_, c)| c).collect();
    cubical_complex(f, &extents, d, &all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{running_example_geometry, RUNNING_EXAMPLE_GEOMETRY};

    #[test]
    fn running_example_file_matches_builder() {
        let Input::Geometric { complex, .. } = parse_input(RUNNING_EXAMPLE_GEOMETRY, None).unwrap()
        else {
            panic!("geometric")
        };
        let built = running_example_geometry(4).unwrap();
        assert_eq!(complex.complex().len(), built.complex().len());
        assert_eq!(complex.coords(), built.coords());
    }

    #[test]
    fn explicit_lifts() {
        let text = "format simplicial\nperiodic 1\nvertex 0 0\nvertex 1/2 0\nsimplex 0 1\nsimplex 1 0@1\n";
        let Input::Geometric { complex, .. } = parse_input(text, Some(3)).unwrap() else {
            panic!("geometric")
        };
        assert_eq!(complex.complex().len(), 4);
        assert_eq!(complex.field().p(), 3);
    }

    #[test]
    fn errors_carry_lines() {
        let bad = "format simplicial\nperiodic 1\nvertex 0 0\nvertex 3/2 0\n";
        assert_eq!(parse_input(bad, None).unwrap_err(), perr(4, "periodic coordinate 3/2 outside [0,1)"));
        let bad = "format simplicial\nperiodic 1\nvertex 0 0\nsimplex 0 7\n";
        assert!(matches!(parse_input(bad, None), Err(Error::Parse { line: 4, .. })));
        let bad = "format simplicial\nperiodic 1\nvertex 0 0\nvertex 1/2 0\n\nsimplex 0 1\n";
        assert!(matches!(parse_input(bad, None), Err(Error::Parse { line: 6, .. })));
        let bad = "format cubical\nextents 2 1\nperiodic 1\ncube 0 0 axes 3\n";
        assert!(matches!(parse_input(bad, None), Err(Error::Parse { line: 4, .. })));
        assert!(matches!(parse_input("# nothing\n", None), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_input("format mesh\n", None), Err(Error::Parse { line: 1, .. })));
        let clash = "format simplicial\nfield 3\nperiodic 1\n";
        assert!(matches!(parse_input(clash, Some(2)), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn cubical_cylinder() {
        let text = "format cubical\nextents 3 1\nperiodic 1\ncube 0 0 axes 1 2\ncube 1 0 axes 1 2\ncube 2 0 axes 1 2\n";
        let Input::Geometric { complex, .. } = parse_input(text, None).unwrap() else {
            panic!("geometric")
        };
        assert_eq!(complex.complex().euler_characteristic(), 0);
        assert_eq!(crate::complex::homology(complex.complex(), 1).unwrap().rank(), 1);
    }

    #[test]
    fn simplicial_torus_is_refused_later_not_here() {
        let text = "format simplicial\nperiodic 2\nvertex 0 0\nvertex 1/3 1/3\n";
        assert!(parse_input(text, None).is_ok());
    }
}
