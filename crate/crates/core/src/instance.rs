//! Instance files: a line-oriented block format describing a Coxeter
//! system, a building, directions and an experiment grid.
//!
//! See `docs/instance-format.md` for the grammar. Each block opens with a
//! keyword line and closes with `end`; `#` starts a comment; `0` stands for
//! `∞` in Coxeter matrices.

use crate::chamber::{Building, ChamberId, PairScope};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, GroupElement};
use crate::direction::Direction;
use crate::error::{Error, Result};
use sha2::{Digest, Sha256};
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildingSpec {
    Thin,
    Tree {
        q_s: u8,
        q_t: u8,
    },
    GraphProduct {
        orders: Vec<u8>,
        edges: Vec<(usize, usize)>,
    },
    Loaded {
        chambers: usize,
        panels: Vec<Vec<Vec<usize>>>,
        base: usize,
        /// Reject the data unless the building axioms hold.
        verify: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSpec {
    pub id: String,
    /// Steps `(s, k)` from the building base: move to the `k`-th other
    /// chamber of the `s`-panel.
    pub base: Vec<(usize, usize)>,
    pub period: Vec<usize>,
    pub window: usize,
    pub horizon: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentSpec {
    pub check_radius: usize,
    pub scope: PairScope,
    pub oracle_radius: usize,
    /// Bases within this radius, slices of the second radius.
    pub grid: (usize, usize),
    pub classes: Vec<usize>,
    pub margin: usize,
    /// Pairs `(base, y)` with `d(base, y)` given, at most the limit many.
    pub pairs: Vec<(usize, Option<usize>)>,
    pub radii: Vec<usize>,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            check_radius: 2,
            scope: PairScope::All,
            oracle_radius: 3,
            grid: (1, 3),
            classes: vec![1, 2, 3],
            margin: 2,
            pairs: vec![(1, None)],
            radii: vec![2, 3, 4],
        }
    }
}

#[derive(Debug, Clone)]
pub struct InstanceSpec {
    pub id: String,
    pub matrix: CoxeterMatrix,
    pub building: BuildingSpec,
    pub radius: usize,
    pub directions: Vec<DirectionSpec>,
    pub experiment: ExperimentSpec,
    /// SHA-256 of the source text, hex.
    pub fingerprint: String,
}

struct Lines<'a> {
    it: std::iter::Peekable<std::iter::Enumerate<std::str::Lines<'a>>>,
    line: usize,
}

impl<'a> Lines<'a> {
    /// Next non-blank line with comments stripped, split into words.
    fn next(&mut self) -> Option<Vec<&'a str>> {
        for (i, raw) in self.it.by_ref() {
            let text = raw.split('#').next().unwrap_or("");
            let words: Vec<&str> = text.split_whitespace().collect();
            if !words.is_empty() {
                self.line = i + 1;
                return Some(words);
            }
        }
        None
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            msg: msg.into(),
        }
    }

    fn num<T: std::str::FromStr>(&self, w: &str) -> Result<T> {
        w.parse().map_err(|_| self.err(format!("expected a number, got `{w}`")))
    }

    fn nums<T: std::str::FromStr>(&self, ws: &[&str]) -> Result<Vec<T>> {
        ws.iter().map(|w| self.num(w)).collect()
    }

    fn one<T: std::str::FromStr>(&self, words: &[&str]) -> Result<T> {
        match words {
            [_, w] => self.num(w),
            _ => Err(self.err(format!("`{}` takes one value", words[0]))),
        }
    }

    /// Body lines of a block up to its `end`.
    fn block(&mut self, name: &str) -> Result<Vec<(usize, Vec<&'a str>)>> {
        let mut out = Vec::new();
        loop {
            match self.next() {
                None => return Err(self.err(format!("block `{name}` is missing `end`"))),
                Some(w) if w == ["end"] => return Ok(out),
                Some(w) => out.push((self.line, w)),
            }
        }
    }
}

impl InstanceSpec {
    pub fn read(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = Lines {
            it: text.lines().enumerate().peekable(),
            line: 0,
        };
        let mut id = None;
        let mut matrix = None;
        let mut building = None;
        let mut directions: Vec<DirectionSpec> = Vec::new();
        let mut experiment = None;
        while let Some(words) = lines.next() {
            match words[0] {
                "instance" => match words.as_slice() {
                    [_, name] => id = Some(name.to_string()),
                    _ => return Err(lines.err("`instance` takes one name")),
                },
                "coxeter" => matrix = Some(parse_coxeter(&mut lines)?),
                "building" => {
                    let kind = words
                        .get(1)
                        .copied()
                        .ok_or_else(|| lines.err("`building` needs a kind"))?;
                    building = Some(parse_building(&mut lines, kind)?);
                }
                "direction" => {
                    let name = words
                        .get(1)
                        .ok_or_else(|| lines.err("`direction` needs an id"))?
                        .to_string();
                    if directions.iter().any(|d| d.id == name) {
                        return Err(lines.err(format!("duplicate direction `{name}`")));
                    }
                    directions.push(parse_direction(&mut lines, name)?);
                }
                "experiment" => experiment = Some(parse_experiment(&mut lines)?),
                other => return Err(lines.err(format!("unknown block `{other}`"))),
            }
        }
        let missing = |what: &str| Error::Parse {
            line: 0,
            msg: format!("missing `{what}`"),
        };
        let matrix = matrix.ok_or_else(|| missing("coxeter"))?;
        let (building, radius) = building.ok_or_else(|| missing("building"))?;
        let explicit = experiment.is_some();
        let spec = InstanceSpec {
            id: id.ok_or_else(|| missing("instance"))?,
            matrix,
            building,
            radius,
            directions,
            experiment: experiment.unwrap_or_default(),
            fingerprint: hex::encode(Sha256::digest(text.as_bytes())),
        };
        spec.validate(explicit)?;
        Ok(spec)
    }

    fn validate(&self, explicit: bool) -> Result<()> {
        let bad = |msg: String| Err(Error::Parse { line: 0, msg });
        let n = self.matrix.rank();
        for d in &self.directions {
            if let Some(s) = d.period.iter().chain(d.base.iter().map(|(s, _)| s)).find(|&&s| s >= n) {
                return bad(format!("direction `{}` uses generator {s} of a rank-{n} system", d.id));
            }
        }
        let e = &self.experiment;
        let deepest = e
            .radii
            .iter()
            .chain(&e.classes)
            .copied()
            .chain([e.check_radius, e.grid.0])
            .max()
            .unwrap_or(0);
        if explicit && matches!(self.building, BuildingSpec::Loaded { .. }) && deepest > self.radius {
            return bad(format!(
                "experiment radius {deepest} exceeds the truncation radius {}",
                self.radius
            ));
        }
        if explicit && e.check_radius > self.radius {
            return bad(format!(
                "check radius {} exceeds the truncation radius {}",
                e.check_radius, self.radius
            ));
        }
        Ok(())
    }

    pub fn system(&self) -> CoxeterSystem {
        CoxeterSystem::new(self.matrix.clone())
    }

    /// The building, truncated at the declared radius. Tree and graph
    /// product systems must agree with the `coxeter` block.
    pub fn building(&self) -> Result<Building> {
        let b = match &self.building {
            BuildingSpec::Thin => Building::thin(self.system(), self.radius)?,
            BuildingSpec::Tree { q_s, q_t } => Building::tree(*q_s, *q_t, self.radius)?,
            BuildingSpec::GraphProduct { orders, edges } => {
                Building::graph_product(orders.clone(), edges, self.radius)?
            }
            BuildingSpec::Loaded {
                chambers,
                panels,
                base,
                verify,
            } => {
                let load = if *verify {
                    Building::load
                } else {
                    Building::load_unverified
                };
                load(self.system(), *chambers, panels.clone(), *base, self.radius)?
            }
        };
        if b.system().matrix() != &self.matrix {
            return Err(Error::Parse {
                line: 0,
                msg: "the `coxeter` block does not match the building".into(),
            });
        }
        Ok(b)
    }

    pub fn direction_spec(&self, id: &str) -> Result<&DirectionSpec> {
        self.directions
            .iter()
            .find(|d| d.id == id)
            .ok_or_else(|| Error::InvalidDirection(format!("no direction `{id}` in instance `{}`", self.id)))
    }
}

impl DirectionSpec {
    pub fn base_chamber(&self, b: &Building) -> Result<ChamberId> {
        let mut c = b.base();
        for &(s, k) in &self.base {
            let others: Vec<ChamberId> = b.panel(c, s)?.into_iter().filter(|&d| d != c).collect();
            c = *others.get(k).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("direction `{}`: step {s}:{k} leaves the panel", self.id),
            })?;
        }
        Ok(c)
    }

    pub fn period_element(&self, b: &Building) -> Result<GroupElement> {
        b.system().normal_form(&self.period)
    }

    /// The direction, with optional overrides of window and horizon.
    pub fn build(&self, b: &Building, window: Option<usize>, horizon: Option<usize>) -> Result<Direction> {
        Direction::new(
            b,
            self.base_chamber(b)?,
            &self.period_element(b)?,
            window.unwrap_or(self.window),
            horizon.unwrap_or(self.horizon),
        )
    }
}

fn parse_coxeter(lines: &mut Lines) -> Result<CoxeterMatrix> {
    let mut rank = None;
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut at = lines.line;
    for (line, w) in lines.block("coxeter")? {
        lines.line = line;
        at = line;
        match w[0] {
            "rank" => rank = Some(lines.one::<usize>(&w)?),
            "row" => rows.push(lines.nums(&w[1..])?),
            other => return Err(lines.err(format!("unknown coxeter field `{other}`"))),
        }
    }
    lines.line = at;
    let rank = rank.ok_or_else(|| lines.err("coxeter block needs `rank`"))?;
    if rows.len() != rank || rows.iter().any(|r| r.len() != rank) {
        return Err(lines.err(format!("coxeter block needs {rank} rows of {rank} entries")));
    }
    CoxeterMatrix::new(rows).map_err(|e| lines.err(e.to_string()))
}

fn parse_building(lines: &mut Lines, kind: &str) -> Result<(BuildingSpec, usize)> {
    let mut radius = None;
    let mut thickness = None;
    let mut orders = None;
    let mut edges = Vec::new();
    let mut chambers = None;
    let mut panels: Vec<(usize, Vec<Vec<usize>>)> = Vec::new();
    let mut base = 0;
    let mut verify = true;
    for (line, w) in lines.block("building")? {
        lines.line = line;
        match w[0] {
            "radius" => radius = Some(lines.one(&w)?),
            "thickness" => thickness = Some(lines.nums::<u8>(&w[1..])?),
            "orders" => orders = Some(lines.nums::<u8>(&w[1..])?),
            "edge" => match lines.nums::<usize>(&w[1..])?.as_slice() {
                &[i, j] => edges.push((i, j)),
                _ => return Err(lines.err("`edge` takes two vertices")),
            },
            "chambers" => chambers = Some(lines.one(&w)?),
            "base" => base = lines.one(&w)?,
            "verify" => {
                verify = match w.get(1).copied() {
                    Some("yes") => true,
                    Some("no") => false,
                    _ => return Err(lines.err("`verify` takes yes or no")),
                }
            }
            "panel" => {
                let s = lines.num(w.get(1).ok_or_else(|| lines.err("`panel` needs a generator"))?)?;
                let mut parts = Vec::new();
                for part in w[2..].split(|&x| x == "|") {
                    parts.push(lines.nums(part)?);
                }
                panels.push((s, parts));
            }
            other => return Err(lines.err(format!("unknown building field `{other}`"))),
        }
    }
    let radius = radius.ok_or_else(|| lines.err("building block needs `radius`"))?;
    let spec = match kind {
        "thin" => BuildingSpec::Thin,
        "tree" => match thickness.as_deref() {
            Some(&[q_s, q_t]) => BuildingSpec::Tree { q_s, q_t },
            _ => return Err(lines.err("tree needs `thickness <q_s> <q_t>`")),
        },
        "graph-product" => BuildingSpec::GraphProduct {
            orders: orders.ok_or_else(|| lines.err("graph-product needs `orders`"))?,
            edges,
        },
        "loaded" => {
            let chambers = chambers.ok_or_else(|| lines.err("loaded building needs `chambers`"))?;
            panels.sort_by_key(|p| p.0);
            if panels.iter().enumerate().any(|(i, p)| p.0 != i) {
                return Err(lines.err("loaded building needs one `panel` line per generator 0, 1, ..."));
            }
            BuildingSpec::Loaded {
                chambers,
                panels: panels.into_iter().map(|p| p.1).collect(),
                base,
                verify,
            }
        }
        other => return Err(lines.err(format!("unknown building kind `{other}`"))),
    };
    Ok((spec, radius))
}

fn parse_direction(lines: &mut Lines, id: String) -> Result<DirectionSpec> {
    let mut d = DirectionSpec {
        id,
        base: Vec::new(),
        period: Vec::new(),
        window: 2,
        horizon: 10,
    };
    for (line, w) in lines.block("direction")? {
        lines.line = line;
        match w[0] {
            "period" => d.period = lines.nums(&w[1..])?,
            "window" => d.window = lines.one(&w)?,
            "horizon" => d.horizon = lines.one(&w)?,
            "base" => {
                for step in &w[1..] {
                    let (s, k) = step
                        .split_once(':')
                        .ok_or_else(|| lines.err(format!("base step `{step}` is not <s>:<k>")))?;
                    d.base.push((lines.num(s)?, lines.num(k)?));
                }
            }
            other => return Err(lines.err(format!("unknown direction field `{other}`"))),
        }
    }
    if d.period.is_empty() {
        return Err(lines.err(format!("direction `{}` needs a `period`", d.id)));
    }
    Ok(d)
}

fn parse_experiment(lines: &mut Lines) -> Result<ExperimentSpec> {
    let mut e = ExperimentSpec::default();
    for (line, w) in lines.block("experiment")? {
        lines.line = line;
        match w[0] {
            "check" => match w.as_slice() {
                [_, r] => e.check_radius = lines.num(r)?,
                [_, r, "within", k] => {
                    e.check_radius = lines.num(r)?;
                    e.scope = PairScope::Within(lines.num(k)?);
                }
                _ => return Err(lines.err("`check <radius> [within <k>]`")),
            },
            "oracle" => e.oracle_radius = lines.one(&w)?,
            "grid" => match lines.nums::<usize>(&w[1..])?.as_slice() {
                &[a, b] => e.grid = (a, b),
                _ => return Err(lines.err("`grid <base radius> <slice radius>`")),
            },
            "classes" => e.classes = lines.nums(&w[1..])?,
            "margin" => e.margin = lines.one(&w)?,
            "pairs" => {
                e.pairs.clear();
                for p in &w[1..] {
                    e.pairs.push(match p.split_once(':') {
                        Some((d, k)) => (lines.num(d)?, Some(lines.num(k)?)),
                        None => (lines.num(p)?, None),
                    });
                }
            }
            "radii" => {
                e.radii = lines.nums(&w[1..])?;
                if e.radii.windows(2).any(|p| p[0] >= p[1]) {
                    return Err(lines.err("`radii` must increase"));
                }
            }
            other => return Err(lines.err(format!("unknown experiment field `{other}`"))),
        }
    }
    Ok(e)
}
