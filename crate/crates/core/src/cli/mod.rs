//! Command-line front end: configuration, the three commands, exit codes.

mod input;
mod report;

pub use input::{parse_input, Input};
pub use report::{Item, Report, Section, Value};

use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::ChainVector;
use crate::error::{Error, Result};
use crate::exactla::{Field, FieldMatrix};
use crate::isofy::{
    epify, isobisheafify, monofy, oracle_epify, oracle_monofy, OracleLimits, QuotientCosheaf,
    SubSheaf,
};
use crate::periodic::{k_fold_cover, BaseCellulation, PeriodicComplex, Rational};
use crate::sheafcore::{
    circle_walk, is_episheaf, is_monocosheaf, write_explicit, Bisheaf, CellCosheaf, CellSheaf,
    Check, CoverMap, ExplicitInput,
};
use crate::toroidal::{
    analyze_bisheaf, analyze_direction, eigenvalue_diagnostic, lift_toroidal_basis,
    DirectionAnalysis, LocalSystemAnalysis,
};

/// Largest power tried when looking for the order of a monodromy matrix.
const ORDER_SEARCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Analyze,
    Isofy,
    Oracle,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Isofy => "isofy",
            Command::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "toroid", about = "Persistent local systems and toroidal cycles of periodic complexes")]
pub struct Args {
    pub command: Command,
    /// Input file (simplicial, cubical or explicit format).
    pub input: Option<PathBuf>,
    /// Key=value configuration file; flags override it.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub field: Option<u32>,
    #[arg(long)]
    pub degree: Option<usize>,
    /// Periodic directions to analyze, counted from 1.
    #[arg(long, value_delimiter = ',')]
    pub direction: Vec<usize>,
    #[arg(long = "k-fold", value_delimiter = ',')]
    pub k_fold: Vec<usize>,
    /// Number of random instances (oracle) or nonzero to cross-check (isofy).
    #[arg(long)]
    pub oracle: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report file, or output directory for isofy.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JobConfig {
    pub command: Command,
    pub input: Option<PathBuf>,
    pub field: Option<u32>,
    pub degree: Option<usize>,
    /// Counted from 1; empty means all.
    pub directions: Vec<usize>,
    pub k_fold: Vec<usize>,
    pub oracle: Option<usize>,
    pub seed: u64,
    pub out: Option<PathBuf>,
    /// Random oracle instances use circles with at most this many vertices.
    pub oracle_vertices: usize,
    pub oracle_max_dim: usize,
    /// Replace epify/monofy by no-ops in the oracle command. Test hook.
    pub corrupt: bool,
}

impl JobConfig {
    pub fn new(command: Command) -> Self {
        JobConfig {
            command,
            input: None,
            field: None,
            degree: None,
            directions: Vec::new(),
            k_fold: Vec::new(),
            oracle: None,
            seed: 0,
            out: None,
            oracle_vertices: 4,
            oracle_max_dim: 3,
            corrupt: false,
        }
    }

    /// Reads `key = value` lines. Unknown keys are errors.
    pub fn from_kv(text: &str) -> Result<Self> {
        let mut cfg: Option<JobConfig> = None;
        let mut pending: Vec<(usize, String, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: no,
                message: "expected 'key = value'".into(),
            })?;
            let (k, v) = (k.trim().to_string(), v.trim().to_string());
            if k == "command" {
                let c = Command::from_str(&v, true).map_err(|_| Error::Parse {
                    line: no,
                    message: format!("unknown command '{v}'"),
                })?;
                cfg = Some(JobConfig::new(c));
            } else {
                pending.push((no, k, v));
            }
        }
        let mut cfg = cfg.ok_or_else(|| Error::Config("configuration lacks 'command'".into()))?;
        for (no, k, v) in pending {
            cfg.set(&k, &v).map_err(|message| Error::Parse { line: no, message })?;
        }
        Ok(cfg)
    }

    fn set(&mut self, key: &str, v: &str) -> std::result::Result<(), String> {
        fn num<T: std::str::FromStr>(v: &str) -> std::result::Result<T, String> {
            v.parse().map_err(|_| format!("'{v}' is not a number"))
        }
        fn list(v: &str) -> std::result::Result<Vec<usize>, String> {
            v.split(',').filter(|t| !t.trim().is_empty()).map(|t| num(t.trim())).collect()
        }
        match key {
            "input" => self.input = Some(PathBuf::from(v)),
            "field" => self.field = Some(num(v)?),
            "degree" => self.degree = Some(num(v)?),
            "direction" => self.directions = list(v)?,
            "k_fold" => self.k_fold = list(v)?,
            "oracle" => self.oracle = Some(num(v)?),
            "seed" => self.seed = num(v)?,
            "out" => self.out = Some(PathBuf::from(v)),
            "oracle_vertices" => self.oracle_vertices = num(v)?,
            "oracle_max_dim" => self.oracle_max_dim = num(v)?,
            other => return Err(format!("unknown key '{other}'")),
        }
        Ok(())
    }

    /// Configuration from parsed flags, layered over `--config` if given.
    pub fn from_args(a: Args) -> Result<Self> {
        let mut cfg = match &a.config {
            Some(p) => {
                let mut c = JobConfig::from_kv(&std::fs::read_to_string(p)?)?;
                if c.command != a.command {
                    return Err(Error::Config(format!(
                        "configuration is for '{}', not '{}'",
                        c.command.name(),
                        a.command.name()
                    )));
                }
                c.command = a.command;
                c
            }
            None => JobConfig::new(a.command),
        };
        if a.input.is_some() {
            cfg.input = a.input;
        }
        if a.field.is_some() {
            cfg.field = a.field;
        }
        if a.degree.is_some() {
            cfg.degree = a.degree;
        }
        if !a.direction.is_empty() {
            cfg.directions = a.direction;
        }
        if !a.k_fold.is_empty() {
            cfg.k_fold = a.k_fold;
        }
        if a.oracle.is_some() {
            cfg.oracle = a.oracle;
        }
        if let Some(s) = a.seed {
            cfg.seed = s;
        }
        if a.out.is_some() {
            cfg.out = a.out;
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(p) = self.field {
            Field::new(p as u64).map_err(|e| Error::Config(e.to_string()))?;
        }
        if self.degree == Some(0) {
            return Err(Error::Config("degree must be at least 1".into()));
        }
        if self.directions.contains(&0) {
            return Err(Error::Config("directions are counted from 1".into()));
        }
        if self.k_fold.contains(&0) {
            return Err(Error::Config("k-fold values must be at least 1".into()));
        }
        if self.command != Command::Oracle && self.input.is_none() {
            return Err(Error::Config(format!("'{}' needs an input file", self.command.name())));
        }
        Ok(())
    }

    fn k_fold_or_default(&self) -> Vec<usize> {
        if self.k_fold.is_empty() {
            vec![1]
        } else {
            self.k_fold.clone()
        }
    }
}

/// Exit code for an error: 2 for malformed input, 3 for unsupported
/// geometry, 4 for size refusals, 1 otherwise.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Config(_)
        | Error::InvalidPeriodic(_)
        | Error::InvalidSheaf(_)
        | Error::Relation { .. }
        | Error::Square { .. }
        | Error::DimensionMismatch(_)
        | Error::NotPrime(_)
        | Error::FieldMismatch(..) => 2,
        Error::Unsupported(_) | Error::NotACircle(_) => 3,
        Error::TooLarge(_) => 4,
        _ => 1,
    }
}

/// Result of a command: the report, extra files to write, and the exit code.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub report: Report,
    pub files: Vec<(PathBuf, String)>,
    pub exit: i32,
}

pub fn run(cfg: &JobConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cfg.command {
        Command::Oracle => cmd_oracle(cfg),
        Command::Analyze | Command::Isofy => {
            let path = cfg.input.as_ref().expect("validated");
            let text = std::fs::read_to_string(path)?;
            let name = display_name(path);
            let input = parse_input(&text, cfg.field)?;
            if cfg.command == Command::Analyze {
                cmd_analyze(cfg, &name, &input)
            } else {
                cmd_isofy(cfg, &name, &input)
            }
        }
    }
}

fn display_name(p: &Path) -> String {
    p.file_name().map_or_else(|| p.display().to_string(), |s| s.to_string_lossy().into_owned())
}

/// Runs a command and writes its outputs. Returns the process exit code;
/// errors are printed to stderr.
pub fn execute(cfg: &JobConfig) -> i32 {
    let outcome = match run(cfg) {
        Ok(o) => o,
        Err(e) => {
            let loc = match (&e, &cfg.input) {
                (Error::Parse { .. }, Some(p)) => format!("{}: ", p.display()),
                _ => String::new(),
            };
            eprintln!("error: {loc}{e}");
            return exit_code(&e);
        }
    };
    let text = outcome.report.serialize();
    let written = (|| -> Result<()> {
        match (&cfg.out, cfg.command) {
            (Some(dir), Command::Isofy) => {
                std::fs::create_dir_all(dir)?;
                for (name, body) in &outcome.files {
                    std::fs::write(dir.join(name), body)?;
                }
                print!("{text}");
            }
            (Some(path), _) => std::fs::write(path, &text)?,
            (None, _) => print!("{text}"),
        }
        Ok(())
    })();
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    outcome.exit
}

fn dims_of(v: &[usize]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

fn check_text(c: &Check) -> String {
    match c.witness {
        None => "holds".into(),
        Some((s, t)) => format!("fails at {s} <= {t}"),
    }
}

fn rational_text(r: &Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn system_section(sec: &mut Section, input: &Bisheaf, a: &LocalSystemAnalysis) {
    let iso = &a.isobisheaf;
    sec.ints("sheaf_dims", &dims_of(input.sheaf().stalk_dims()))
        .ints("cosheaf_dims", &dims_of(input.cosheaf().stalk_dims()))
        .ints("epi_dims", &dims_of(iso.epi.sheaf().stalk_dims()))
        .ints("mono_dims", &dims_of(iso.mono.cosheaf().stalk_dims()))
        .int("epi_iterations", iso.epi_iterations)
        .int("mono_iterations", iso.mono_iterations)
        .ints(
            "pls_dims",
            &a.pls.stalks.iter().map(|s| s.dim() as i64).collect::<Vec<_>>(),
        )
        .int("pls_rank", a.pls.rank());
    match &a.monodromy {
        Some(m) => {
            sec.int("base_vertex", m.base_vertex)
                .matrix("monodromy", &m.matrix)
                .int("toroidal_rank", m.toroidal_rank());
            match eigenvalue_diagnostic(&m.matrix, ORDER_SEARCH) {
                Ok(Some(k)) => sec.int("monodromy_order", k),
                Ok(None) => sec.text("monodromy_order", format!("none up to {ORDER_SEARCH}")),
                Err(e) => sec.text("monodromy_order", e.to_string()),
            };
        }
        None => {
            sec.text("monodromy", a.note.clone().unwrap_or_default());
        }
    }
}

fn chain_section(name: &str, z: &ChainVector) -> Section {
    let mut s = Section::new(name);
    let f = z.field();
    s.int("degree", z.degree())
        .ints("cells", &z.terms().iter().map(|t| t.0 as i64).collect::<Vec<_>>())
        .ints("coeffs", &z.terms().iter().map(|t| f.signed(t.1)).collect::<Vec<_>>());
    s
}

fn geometric_direction(
    cfg: &JobConfig,
    g: &PeriodicComplex,
    axis: usize,
    degree: usize,
) -> Result<Section> {
    let ks = cfg.k_fold_or_default();
    let a: DirectionAnalysis = analyze_direction(g, axis, degree, None, &ks)?;
    let mut sec = Section::new("direction");
    sec.int("index", axis + 1);
    let b: &BaseCellulation = &a.built.cellulation;
    sec.text(
        "cellulation",
        b.angles.iter().map(rational_text).collect::<Vec<_>>().join(" "),
    )
    .text(
        "artificial_vertex",
        b.artificial.as_ref().map_or("none".into(), rational_text),
    )
    .int(
        "refined_cells",
        a.built.fibers.complex.complex().len() - g.complex().len(),
    )
    .text("cut_fraction", rational_text(&a.built.cut_fraction));
    system_section(&mut sec, &a.built.bisheaf, &a.analysis);
    let m = a.monodromy()?;
    for &k in &ks {
        let cover = k_fold_cover(g, axis, k)?;
        let ca = analyze_direction(&cover, axis, degree, None, &[])?;
        let mut ksec = Section::new("k_fold");
        ksec.int("k", k)
            .int("power_rank", m.powers[&k])
            .int("cover_rank", ca.monodromy()?.toroidal_rank());
        sec.section(ksec);
    }
    let lifted = lift_toroidal_basis(&a, g)?;
    for (z, coords) in lifted.cycles.iter().zip(&lifted.pls_coords) {
        let mut c = chain_section("cycle", z);
        c.ints("pls", coords);
        sec.section(c);
    }
    Ok(sec)
}

fn explicit_direction(cfg: &JobConfig, b: &Bisheaf, index: usize) -> Result<Section> {
    let ks = cfg.k_fold_or_default();
    let a = analyze_bisheaf(b, index - 1, 0, &ks)?;
    let mut sec = Section::new("direction");
    sec.int("index", index);
    system_section(&mut sec, b, &a);
    if let Some(m) = &a.monodromy {
        let walk = circle_walk(b.base(), m.base_vertex)?;
        for &k in &ks {
            let cover = CoverMap::new(b.base().field(), &walk, k)?;
            let ca = analyze_bisheaf(&cover.bisheaf(b)?, index - 1, 0, &[])?;
            let mut ksec = Section::new("k_fold");
            ksec.int("k", k)
                .int("power_rank", m.powers[&k])
                .int("cover_rank", ca.toroidal_rank().unwrap_or(0));
            sec.section(ksec);
        }
    }
    Ok(sec)
}

pub fn cmd_analyze(cfg: &JobConfig, name: &str, input: &Input) -> Result<Outcome> {
    let mut r = Report::new("analyze");
    r.body.text("input", name).text("format", input.format()).int("field", input.field().p() as usize);
    let mut exit = 0;
    match input {
        Input::Geometric { complex: g, .. } => {
            let degree = cfg.degree.unwrap_or(1);
            r.body.int("degree", degree).int("periodic", g.d());
            let dirs: Vec<usize> = if cfg.directions.is_empty() {
                (1..=g.d()).collect()
            } else {
                cfg.directions.clone()
            };
            for i in dirs {
                if i > g.d() {
                    return Err(Error::Config(format!("direction {i} exceeds periodicity {}", g.d())));
                }
                match geometric_direction(cfg, g, i - 1, degree) {
                    Ok(s) => {
                        r.body.section(s);
                    }
                    Err(e) => {
                        let mut s = Section::new("direction");
                        s.int("index", i).text("error", e.to_string());
                        r.body.section(s);
                        if exit == 0 {
                            exit = exit_code(&e);
                        }
                    }
                }
            }
        }
        Input::Explicit(x) => {
            let degree = match (cfg.degree, x.degree) {
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Config(format!("file is in degree {b}, not {a}")))
                }
                (a, b) => a.or(b).unwrap_or(1),
            };
            r.body.int("degree", degree);
            let b = x.bisheaf()?;
            let index = cfg.directions.first().copied().unwrap_or(1);
            r.body.section(explicit_direction(cfg, &b, index)?);
        }
    }
    Ok(Outcome {
        report: r,
        files: Vec::new(),
        exit,
    })
}

fn sheaf_file(x: &ExplicitInput, s: &CellSheaf) -> String {
    write_explicit(&ExplicitInput {
        field: x.field,
        degree: x.degree,
        base: x.base.clone(),
        sheaf: Some(s.clone()),
        cosheaf: None,
        vertical: None,
    })
}

fn cosheaf_file(x: &ExplicitInput, c: &CellCosheaf) -> String {
    write_explicit(&ExplicitInput {
        field: x.field,
        degree: x.degree,
        base: x.base.clone(),
        sheaf: None,
        cosheaf: Some(c.clone()),
        vertical: None,
    })
}

pub fn cmd_isofy(cfg: &JobConfig, name: &str, input: &Input) -> Result<Outcome> {
    let Input::Explicit(x) = input else {
        return Err(Error::Config("isofy takes explicit sheaf or cosheaf input".into()));
    };
    if x.sheaf.is_none() && x.cosheaf.is_none() {
        return Err(Error::Config("input has neither sheaf nor cosheaf data".into()));
    }
    let cross_check = cfg.oracle.unwrap_or(0) > 0;
    let mut r = Report::new("isofy");
    r.body.text("input", name).int("field", x.field.p() as usize);
    let mut files = Vec::new();
    let mut transcript = String::new();
    let mut epi_sheaf = None;
    let mut mono_cosheaf = None;
    if let Some(s) = &x.sheaf {
        let e = epify(s)?;
        let mut sec = Section::new("sheaf");
        sec.ints("input_dims", &dims_of(s.stalk_dims()))
            .ints("epi_dims", &dims_of(e.sub.sheaf().stalk_dims()))
            .int("iterations", e.iterations)
            .text("input_episheaf", check_text(&is_episheaf(s)))
            .text("output_episheaf", check_text(&is_episheaf(e.sub.sheaf())));
        if cross_check {
            let o = oracle_epify(s, &OracleLimits::default())?;
            sec.text("oracle", if o == e.sub { "agrees" } else { "disagrees" });
        }
        transcript.push_str(&format!(
            "epify: {} sweeps; input episheaf {}; output episheaf {}\n",
            e.iterations,
            check_text(&is_episheaf(s)),
            check_text(&is_episheaf(e.sub.sheaf()))
        ));
        files.push((PathBuf::from("epi.sheaf"), sheaf_file(x, e.sub.sheaf())));
        epi_sheaf = Some(e.sub.sheaf().clone());
        r.body.section(sec);
    }
    if let Some(c) = &x.cosheaf {
        let m = monofy(c)?;
        let mut sec = Section::new("cosheaf");
        sec.ints("input_dims", &dims_of(c.stalk_dims()))
            .ints("mono_dims", &dims_of(m.quotient.cosheaf().stalk_dims()))
            .int("iterations", m.iterations)
            .text("input_monocosheaf", check_text(&is_monocosheaf(c)))
            .text("output_monocosheaf", check_text(&is_monocosheaf(m.quotient.cosheaf())));
        if cross_check {
            let o = oracle_monofy(c, &OracleLimits::default())?;
            sec.text("oracle", if o == m.quotient { "agrees" } else { "disagrees" });
        }
        transcript.push_str(&format!(
            "monofy: {} sweeps; input monocosheaf {}; output monocosheaf {}\n",
            m.iterations,
            check_text(&is_monocosheaf(c)),
            check_text(&is_monocosheaf(m.quotient.cosheaf()))
        ));
        files.push((PathBuf::from("mono.cosheaf"), cosheaf_file(x, m.quotient.cosheaf())));
        mono_cosheaf = Some(m.quotient.cosheaf().clone());
        r.body.section(sec);
    }
    if x.vertical.is_some() {
        let iso = isobisheafify(&x.bisheaf()?)?;
        let vertical: Vec<FieldMatrix> = (0..x.base.len()).map(|c| iso.vertical(c).clone()).collect();
        let b = Bisheaf::new(
            epi_sheaf.expect("bisheaf input has a sheaf"),
            mono_cosheaf.expect("bisheaf input has a cosheaf"),
            vertical,
        )?;
        transcript.push_str("isobisheaf: all squares commute\n");
        files.push((
            PathBuf::from("isobisheaf.txt"),
            write_explicit(&ExplicitInput::from_bisheaf(&b, x.degree)),
        ));
        r.body.text("isobisheaf", "squares commute");
    }
    files.push((PathBuf::from("transcript.txt"), transcript));
    Ok(Outcome {
        report: r,
        files,
        exit: 0,
    })
}

fn random_matrix(rng: &mut ChaCha8Rng, f: Field, rows: usize, cols: usize) -> FieldMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.p())).collect();
    FieldMatrix::from_residues(f, rows, cols, data)
}

/// Random stalk dimensions on a circle with `l` vertices, each at most
/// `max_dim`, redrawn until the total fits the oracle.
fn random_dims(rng: &mut ChaCha8Rng, l: usize, max_dim: usize, limits: &OracleLimits) -> Vec<usize> {
    loop {
        let dims: Vec<usize> = (0..2 * l).map(|_| rng.gen_range(0..=max_dim)).collect();
        if dims.iter().sum::<usize>() <= limits.max_total_dim {
            return dims;
        }
    }
}

fn circle(f: Field, l: usize) -> crate::complex::CellComplex {
    let angles = (0..l as i64).map(|m| Rational::new(m, l as i64)).collect();
    BaseCellulation::new(0, angles).expect("at least two vertices").complex(f)
}

/// A random sheaf on a circle with `2..=max_vertices` vertices.
pub fn random_circle_sheaf(
    rng: &mut ChaCha8Rng,
    f: Field,
    max_vertices: usize,
    max_dim: usize,
    limits: &OracleLimits,
) -> Result<CellSheaf> {
    let l = rng.gen_range(2..=max_vertices);
    let base = circle(f, l);
    let dims = random_dims(rng, l, max_dim, limits);
    let maps = crate::sheafcore::covering_relations(&base)
        .into_iter()
        .map(|(s, t)| ((s, t), random_matrix(rng, f, dims[s], dims[t])))
        .collect();
    CellSheaf::new(base, dims, maps)
}

pub fn random_circle_cosheaf(
    rng: &mut ChaCha8Rng,
    f: Field,
    max_vertices: usize,
    max_dim: usize,
    limits: &OracleLimits,
) -> Result<CellCosheaf> {
    let l = rng.gen_range(2..=max_vertices);
    let base = circle(f, l);
    let dims = random_dims(rng, l, max_dim, limits);
    let maps = crate::sheafcore::covering_relations(&base)
        .into_iter()
        .map(|(s, t)| ((s, t), random_matrix(rng, f, dims[t], dims[s])))
        .collect();
    CellCosheaf::new(base, dims, maps)
}

pub fn cmd_oracle(cfg: &JobConfig) -> Result<Outcome> {
    let n = cfg.oracle.unwrap_or(10);
    let limits = OracleLimits::default();
    let f = match cfg.field {
        Some(p) => Field::new(p as u64).map_err(|e| Error::Config(e.to_string()))?,
        None => Field::gf2(),
    };
    if !limits.primes.contains(&f.p()) {
        return Err(Error::TooLarge(format!("oracle supports GF(p) for p in {:?}", limits.primes)));
    }
    if cfg.oracle_vertices < 2 {
        return Err(Error::Config("oracle circles need at least two vertices".into()));
    }
    if 2 * cfg.oracle_vertices > limits.max_cells {
        return Err(Error::TooLarge(format!(
            "circles with {} vertices exceed {} cells",
            cfg.oracle_vertices, limits.max_cells
        )));
    }
    if cfg.oracle_max_dim > limits.max_stalk_dim {
        return Err(Error::TooLarge(format!(
            "stalk dimension {} exceeds {}",
            cfg.oracle_max_dim, limits.max_stalk_dim
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut r = Report::new("oracle");
    r.body
        .int("field", f.p() as usize)
        .int("seed", cfg.seed as usize)
        .int("instances", n)
        .int("max_vertices", cfg.oracle_vertices)
        .int("max_dim", cfg.oracle_max_dim);
    let mut mismatches = Vec::new();
    let (mut sheaf_ok, mut cosheaf_ok) = (0, 0);
    for i in 0..n {
        let s = random_circle_sheaf(&mut rng, f, cfg.oracle_vertices, cfg.oracle_max_dim, &limits)?;
        let got = if cfg.corrupt {
            SubSheaf::full(&s)
        } else {
            epify(&s)?.sub
        };
        if got == oracle_epify(&s, &limits)? {
            sheaf_ok += 1;
        } else {
            let mut m = Section::new("mismatch");
            m.text("kind", "sheaf").int("instance", i).ints("dims", &dims_of(s.stalk_dims()));
            mismatches.push(m);
        }
        let c =
            random_circle_cosheaf(&mut rng, f, cfg.oracle_vertices, cfg.oracle_max_dim, &limits)?;
        let got = if cfg.corrupt {
            QuotientCosheaf::identity(&c)
        } else {
            monofy(&c)?.quotient
        };
        if got == oracle_monofy(&c, &limits)? {
            cosheaf_ok += 1;
        } else {
            let mut m = Section::new("mismatch");
            m.text("kind", "cosheaf").int("instance", i).ints("dims", &dims_of(c.stalk_dims()));
            mismatches.push(m);
        }
    }
    r.body
        .int("sheaf_agree", sheaf_ok)
        .int("cosheaf_agree", cosheaf_ok)
        .int("mismatches", mismatches.len());
    let exit = if mismatches.is_empty() { 0 } else { 1 };
    for m in mismatches {
        r.body.section(m);
    }
    Ok(Outcome {
        report: r,
        files: Vec::new(),
        exit,
    })
}
