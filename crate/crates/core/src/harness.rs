//! Command implementations behind the `buildings` binary: each runs a suite
//! on one instance and returns a [`RunReport`].

use crate::bundle::hyperbolicity_gate;
use crate::chamber::{AxiomReport, Building, ChamberId};
use crate::coxeter::oracle::BraidOracle;
use crate::direction::Direction;
use crate::error::{Error, Result};
use crate::instance::{DirectionSpec, InstanceSpec};
use crate::sector::{SectorSlice, TransversalChamber};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::PathBuf;

/// Overrides and output settings shared by all commands.
#[derive(Debug, Clone, Default)]
pub struct Options {
    pub radius: Option<usize>,
    pub window: Option<usize>,
    pub horizon: Option<usize>,
    pub csv: Option<PathBuf>,
    /// Report failures without failing the run.
    pub observe: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Flagged,
    Observed,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flagged => "FLAG",
            Status::Observed => "OBSV",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub checked: usize,
    pub failed: usize,
    /// Undecided within the horizon or stabilization cap.
    pub flagged: usize,
    pub asserted: bool,
    pub notes: Vec<String>,
}

impl CheckLine {
    pub fn new(name: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            checked: 0,
            failed: 0,
            flagged: 0,
            asserted: true,
            notes: Vec::new(),
        }
    }

    fn from_axioms(name: &str, r: &AxiomReport) -> Self {
        let mut line = CheckLine::new(name);
        line.checked = r.checked;
        line.failed = r.violations.len();
        line.notes = r.violations.iter().take(5).map(|v| v.to_string()).collect();
        line
    }

    fn fail(&mut self, note: String) {
        self.failed += 1;
        if self.failed <= 5 {
            self.notes.push(note);
        }
    }

    pub fn status(&self) -> Status {
        if !self.asserted {
            Status::Observed
        } else if self.failed > 0 {
            Status::Fail
        } else if self.flagged > 0 {
            Status::Flagged
        } else {
            Status::Pass
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub command: &'static str,
    pub instance: String,
    pub fingerprint: String,
    pub lines: Vec<CheckLine>,
    pub csv: Vec<PathBuf>,
}

impl RunReport {
    fn new(command: &'static str, spec: &InstanceSpec) -> Self {
        RunReport {
            command,
            instance: spec.id.clone(),
            fingerprint: spec.fingerprint.clone(),
            lines: Vec::new(),
            csv: Vec::new(),
        }
    }

    /// `2` on any asserted failure, `3` if only flagged checks remain, else `0`.
    pub fn exit_code(&self) -> i32 {
        let s: Vec<Status> = self.lines.iter().map(CheckLine::status).collect();
        if s.contains(&Status::Fail) {
            2
        } else if s.contains(&Status::Flagged) {
            3
        } else {
            0
        }
    }

    pub fn line(&self, name: &str) -> Option<&CheckLine> {
        self.lines.iter().find(|l| l.name == name)
    }

    fn finish(mut self, opts: &Options) -> Self {
        if opts.observe {
            for l in &mut self.lines {
                l.asserted = false;
            }
        }
        self
    }
}

impl fmt::Display for RunReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {} sha256:{}", self.command, self.instance, self.fingerprint)?;
        for l in &self.lines {
            writeln!(
                f,
                "{} {:<28} checked={} failed={} flagged={}",
                l.status(),
                l.name,
                l.checked,
                l.failed,
                l.flagged
            )?;
            for n in &l.notes {
                writeln!(f, "    {n}")?;
            }
        }
        for p in &self.csv {
            writeln!(f, "csv {}", p.display())?;
        }
        Ok(())
    }
}

/// Exit status for an error that stopped a command: `4` for bad input,
/// `2` otherwise.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::Io(_)
        | Error::InvalidMatrix(_)
        | Error::InvalidGenerator { .. }
        | Error::MalformedBuilding(_)
        | Error::InvalidDirection(_) => 4,
        _ => 2,
    }
}

/// Failures that mean "not decided within the bounds", not "false".
fn undecided(e: &Error) -> bool {
    matches!(
        e,
        Error::HorizonExhausted(_)
            | Error::Unstabilized(_)
            | Error::NoApartmentWithinHorizon(_)
            | Error::ChartCoverage(_)
    )
}

/// Runs `f`, counting an undecided error as flagged.
fn guarded<T>(line: &mut CheckLine, what: impl fmt::Display, f: impl FnOnce() -> Result<T>) -> Result<Option<T>> {
    match f() {
        Ok(v) => Ok(Some(v)),
        Err(e) if undecided(&e) => {
            line.flagged += 1;
            if line.flagged <= 3 {
                line.notes.push(format!("undecided at {what}: {e}"));
            }
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn write_csv(opts: &Options, name: String, header: &str, mut rows: Vec<String>) -> Result<Option<PathBuf>> {
    let Some(dir) = &opts.csv else { return Ok(None) };
    std::fs::create_dir_all(dir)?;
    rows.sort_by(|a, b| csv_key(a).cmp(&csv_key(b)));
    let mut text = String::from(header);
    text.push('\n');
    for r in rows {
        text.push_str(&r);
        text.push('\n');
    }
    let path = dir.join(name);
    std::fs::write(&path, text)?;
    Ok(Some(path))
}

/// Sort key comparing numeric fields as numbers.
fn csv_key(row: &str) -> Vec<(u64, &str)> {
    row.split(',').map(|f| (f.parse().unwrap_or(u64::MAX), f)).collect()
}

fn directions<'a>(spec: &'a InstanceSpec, only: Option<&str>) -> Result<Vec<&'a DirectionSpec>> {
    match only {
        Some(id) => Ok(vec![spec.direction_spec(id)?]),
        None => Ok(spec.directions.iter().collect()),
    }
}

/// Word problem against the rewriting oracle, building axioms, gate
/// property and retraction contraction.
pub fn cmd_check(spec: &InstanceSpec, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("check", spec);
    let e = &spec.experiment;
    report.lines.push(word_problem(spec, e.oracle_radius)?);
    let b = spec.building()?;
    let radius = opts.radius.unwrap_or(e.check_radius);
    let scope = e.scope;
    report.lines.push(CheckLine::from_axioms(
        "building axioms",
        &b.verify_building_axioms(radius, scope)?,
    ));
    report
        .lines
        .push(CheckLine::from_axioms("gate property", &b.gate_check(radius, scope)?));
    report.lines.push(CheckLine::from_axioms(
        "retraction",
        &b.retraction_check(radius, scope)?,
    ));
    for l in &mut report.lines[1..] {
        l.notes.insert(0, format!("radius {radius}, pairs {scope:?}"));
    }
    Ok(report.finish(opts))
}

/// Normal forms, lengths, inversion sets and right multiplication by
/// generators on a ball, against braid-move rewriting.
pub fn word_problem(spec: &InstanceSpec, radius: usize) -> Result<CheckLine> {
    let w = spec.system();
    let oracle = BraidOracle::new(&w);
    let mut line = CheckLine::new("word problem");
    let expect = oracle.ball(radius);
    let ours: Vec<Vec<usize>> = w.ball(radius)?.iter().map(|g| g.letters()).collect();
    line.checked += 1;
    if ours != expect {
        line.fail(format!(
            "balls of radius {radius} differ: {} vs {} elements",
            ours.len(),
            expect.len()
        ));
    }
    for word in &expect {
        let g = w.normal_form(word)?;
        line.checked += 1;
        if g.letters() != *word || w.length(&g) != word.len() || w.inversion_set(&g).len() != word.len() {
            line.fail(format!("element {word:?}"));
        }
        for s in 0..w.rank() {
            let mut v = word.clone();
            v.push(s);
            line.checked += 1;
            let got = w.multiply(&g, &w.generator(s)?)?;
            if got.letters() != oracle.reduce(&v) {
                line.fail(format!("{word:?} * s{s} = {got}"));
            }
        }
    }
    line.notes.push(format!("radius {radius}, {} elements", expect.len()));
    Ok(line)
}

/// Class counts, the transversal graph and its building axioms, and the
/// sector checks on the grid of the instance.
pub fn cmd_transversal(spec: &InstanceSpec, only: Option<&str>, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("transversal", spec);
    let b = spec.building()?;
    let gate = hyperbolicity_gate(&b)?;
    let e = &spec.experiment;
    let radii: Vec<usize> = match opts.radius {
        Some(r) => (1..=r).collect(),
        None => e.classes.clone(),
    };
    let mut rows = Vec::new();
    for ds in directions(spec, only)? {
        let d = ds.build(&b, opts.window, opts.horizon)?;
        let mut counts = CheckLine::new(format!("classes {}", ds.id));
        let mut seen = Vec::new();
        for &r in &radii {
            let n = d.classes(&b, r)?.len();
            counts.checked += 1;
            seen.push(n);
            rows.push(format!("{},{},{r},{n}", spec.id, ds.id));
        }
        counts.notes.push(format!("R {radii:?} -> {seen:?}"));
        let settled = seen.len() >= 2 && seen[seen.len() - 2] == seen[seen.len() - 1];
        if gate && !settled {
            counts.fail("class count still changing at the largest radius".into());
        }
        counts.asserted = gate;
        report.lines.push(counts);

        let top = radii.iter().copied().max().unwrap_or(1);
        let g = d.transversal_graph(&b, top, e.margin)?;
        let axioms = d.check_transversal_building(&b, &g)?;
        let mut line = CheckLine::from_axioms(&format!("transversal {}", ds.id), &axioms);
        let inner: BTreeSet<usize> = g.vertices.iter().map(|v| v.id).collect();
        let edges: Vec<String> = g
            .edges
            .iter()
            .filter(|(a, c)| inner.contains(a) && inner.contains(c))
            .map(|(a, c)| format!("{a}-{c}"))
            .collect();
        line.notes.insert(0, format!("vertices {:?}", inner));
        line.notes.insert(1, format!("edges {}", edges.join(" ")));
        line.notes.insert(
            2,
            format!(
                "S_eta {:?} matrix {:?}",
                g.eta
                    .generators
                    .iter()
                    .map(|r| r.element().to_string())
                    .collect::<Vec<_>>(),
                g.eta.matrix()
            ),
        );
        if !g.eta.flagged.is_empty() {
            line.notes.insert(
                3,
                format!("orders beyond bound, taken as infinite: {:?}", g.eta.flagged),
            );
        }
        line.notes
            .insert(3, format!("limit classes from the base {:?}", g.limits));
        report.lines.push(line);

        let classes = d.classes(&b, top)?.transversal_chambers();
        report.lines.extend(sector_grid(&b, &d, &ds.id, &classes, e.grid)?);
    }
    if let Some(p) = write_csv(
        opts,
        format!("{}-transversal.csv", spec.id),
        "instance_id,direction_id,R,classes",
        rows,
    )? {
        report.csv.push(p);
    }
    Ok(report.finish(opts))
}

/// Sector against its oracle, the minimality identity and monotonicity
/// `Q(y, ξ) ⊆ Q(x, ξ)` for `y ∈ Q(x, ξ)`, on the bases within `grid.0` of
/// the direction base at slice radius `grid.1`.
pub fn sector_grid(
    b: &Building,
    d: &Direction,
    id: &str,
    classes: &[TransversalChamber],
    grid: (usize, usize),
) -> Result<Vec<CheckLine>> {
    let (reach, radius) = grid;
    let mut eq = CheckLine::new(format!("sector = oracle {id}"));
    let mut min = CheckLine::new(format!("sector minimality {id}"));
    let mut mono = CheckLine::new(format!("sector monotone {id}"));
    let bases = b.ball(d.base(), reach)?;
    let mut slices: BTreeMap<(ChamberId, usize), SectorSlice> = BTreeMap::new();
    for &x in &bases {
        for xi in classes {
            let Some(q) = guarded(&mut eq, x, || d.sector(b, x, xi, radius))? else {
                continue;
            };
            let Some(o) = guarded(&mut eq, x, || d.sector_oracle(b, x, xi, radius))? else {
                continue;
            };
            eq.checked += 1;
            if !q.stabilized || !o.indeterminate.is_empty() {
                eq.flagged += 1;
            }
            let missed: Vec<&ChamberId> = o.chambers.difference(&q.chambers).collect();
            let extra: Vec<&ChamberId> = q
                .chambers
                .difference(&o.chambers)
                .filter(|c| !o.unwitnessed.contains(c))
                .collect();
            if !missed.is_empty() || !extra.is_empty() {
                eq.fail(format!(
                    "x={x} class {}: oracle only {missed:?}, sector only {extra:?}",
                    xi.id
                ));
            } else if q.chambers.iter().any(|c| o.unwitnessed.contains(c)) {
                eq.flagged += 1;
            }
            slices.insert((x, xi.id), q);
        }
        if let Some(m) = guarded(&mut min, x, || d.sector_min(b, x, classes, radius))? {
            min.checked += classes.len();
            min.flagged += m.unstabilized.len();
            for xi in m.identity_failures {
                min.fail(format!("x={x} class {}", xi.id));
            }
        }
    }
    for ((x, k), q) in &slices {
        for y in &q.chambers {
            let Some(qy) = slices.get(&(*y, *k)) else { continue };
            let dy = b.distance(*x, *y)?;
            for z in &qy.chambers {
                if b.distance(*y, *z)? + dy > radius {
                    continue;
                }
                mono.checked += 1;
                if !q.chambers.contains(z) {
                    mono.fail(format!("class {k}: {z} in Q({y}) but not in Q({x})"));
                }
            }
        }
    }
    for l in [&mut eq, &mut min, &mut mono] {
        l.notes.insert(
            0,
            format!(
                "{} bases, {} classes, slice radius {radius}",
                bases.len(),
                classes.len()
            ),
        );
    }
    Ok(vec![eq, min, mono])
}

/// Bundle decomposition and apartment checks on the grid, and symmetric
/// difference profiles over the experiment pairs.
pub fn cmd_bundles(spec: &InstanceSpec, only: Option<&str>, opts: &Options) -> Result<RunReport> {
    let mut report = RunReport::new("bundles", spec);
    let b = spec.building()?;
    let gate = hyperbolicity_gate(&b)?;
    let e = &spec.experiment;
    let radii: Vec<usize> = e
        .radii
        .iter()
        .copied()
        .filter(|&r| opts.radius.is_none_or(|top| r <= top))
        .collect();
    let mut rows = Vec::new();
    for ds in directions(spec, only)? {
        let d = ds.build(&b, opts.window, opts.horizon)?;
        let top = e.classes.iter().copied().max().unwrap_or(1);
        let classes = d.classes(&b, top)?.transversal_chambers();
        report.lines.extend(bundle_grid(&b, &d, &ds.id, &classes, e.grid)?);
        let (line, mut r) = theorem_a(&b, &d, &ds.id, &classes, &e.pairs, &radii, gate)?;
        report.lines.push(line);
        for row in r.iter_mut() {
            row.insert_str(0, &format!("{},", spec.id));
        }
        rows.extend(r);
    }
    if let Some(p) = write_csv(
        opts,
        format!("{}-bundles.csv", spec.id),
        "instance_id,x,y,direction_id,R,diff_xy,diff_yx,stabilized,flagged",
        rows,
    )? {
        report.csv.push(p);
    }
    Ok(report.finish(opts))
}

/// `geo = geo_oracle`, `geo ∩ A = Geo_A`, retraction of bundle members into
/// the chart, and monotonicity of apartment bundles from the direction base.
pub fn bundle_grid(
    b: &Building,
    d: &Direction,
    id: &str,
    classes: &[TransversalChamber],
    grid: (usize, usize),
) -> Result<Vec<CheckLine>> {
    let (reach, radius) = grid;
    let mut eq = CheckLine::new(format!("geo = oracle {id}"));
    let mut apt = CheckLine::new(format!("geo in apartment {id}"));
    let mut ret = CheckLine::new(format!("retraction of rays {id}"));
    let mut mono = CheckLine::new(format!("apartment monotone {id}"));
    let bases = b.ball(d.base(), reach)?;
    for &x in &bases {
        let Some(g) = guarded(&mut eq, x, || d.geo(b, x, classes, radius))? else {
            continue;
        };
        let Some(o) = guarded(&mut eq, x, || d.geo_oracle(b, x, radius))? else {
            continue;
        };
        eq.checked += 1;
        if !g.stabilized || !o.indeterminate.is_empty() {
            eq.flagged += 1;
        }
        if g.chambers != o.chambers {
            let a: Vec<_> = g.chambers.difference(&o.chambers).collect();
            let c: Vec<_> = o.chambers.difference(&g.chambers).collect();
            eq.fail(format!("x={x}: geo only {a:?}, oracle only {c:?}"));
        }
        let Some(chart) = guarded(&mut apt, x, || d.bundle_chart(b, x, radius))? else {
            continue;
        };
        let Some(ga) = guarded(&mut apt, x, || d.geo_apartment(b, x, &chart, radius))? else {
            continue;
        };
        apt.checked += 1;
        let trace: BTreeSet<ChamberId> = g.chambers.iter().copied().filter(|&c| chart.contains(c)).collect();
        if trace != ga {
            apt.fail(format!(
                "x={x}: trace {} chambers, Geo_A {} chambers",
                trace.len(),
                ga.len()
            ));
        }
        for &y in &o.chambers {
            ret.checked += 1;
            let r = chart.retraction(b, x, y)?;
            if !ga.contains(&r) {
                ret.fail(format!("x={x}: {y} retracts to {r} outside Geo_A"));
            }
        }
        if x == d.base() {
            for &y in ga.iter().filter(|&&y| b.distance(x, y).is_ok_and(|k| 2 * k <= radius)) {
                if let Some(m) = guarded(&mut mono, y, || d.monotone_check(b, x, y, &chart, radius))? {
                    mono.checked += m.checked;
                    if !m.missing.is_empty() {
                        mono.fail(format!("x={x} y={y}: {:?}", m.missing));
                    }
                }
            }
        }
    }
    for l in [&mut eq, &mut apt, &mut ret, &mut mono] {
        l.notes
            .insert(0, format!("{} bases, slice radius {radius}", bases.len()));
    }
    Ok(vec![eq, apt, ret, mono])
}

/// Profiles for the direction base against the chambers at the given
/// distances; stabilization is asserted only when `assert` is set.
/// Returns the check line and CSV rows without the instance column.
pub fn theorem_a(
    b: &Building,
    d: &Direction,
    id: &str,
    classes: &[TransversalChamber],
    pairs: &[(usize, Option<usize>)],
    radii: &[usize],
    assert: bool,
) -> Result<(CheckLine, Vec<String>)> {
    let mut line = CheckLine::new(format!("finite differences {id}"));
    line.asserted = assert;
    let x = d.base();
    let mut rows = Vec::new();
    for &(dist, limit) in pairs {
        let sphere: Vec<ChamberId> = b
            .ball(x, dist)?
            .into_iter()
            .filter(|&y| b.distance(x, y).is_ok_and(|k| k == dist))
            .take(limit.unwrap_or(usize::MAX))
            .collect();
        for y in sphere {
            let Some(p) = guarded(&mut line, y, || d.sym_diff_profile(b, x, y, classes, radii))? else {
                continue;
            };
            line.checked += 1;
            for r in &p.rows {
                rows.push(format!(
                    "{x},{y},{id},{},{},{},{},{}",
                    r.radius,
                    r.only_x.len(),
                    r.only_y.len(),
                    r.stabilized,
                    r.flagged
                ));
            }
            if p.rows.iter().any(|r| r.flagged) {
                line.flagged += 1;
            }
            if !p.settled() {
                let sizes: Vec<usize> = p.rows.iter().map(|r| r.only_x.len() + r.only_y.len()).collect();
                line.fail(format!("x={x} y={y}: differences {sizes:?} over R {radii:?}"));
            }
        }
    }
    line.notes
        .insert(0, format!("{} profiles over R {radii:?}", line.checked));
    Ok((line, rows))
}

/// Moussong's test, with the obstruction when it fails.
pub fn cmd_hyperbolic(spec: &InstanceSpec) -> Result<RunReport> {
    let mut report = RunReport::new("hyperbolic", spec);
    let mut line = CheckLine::new("hyperbolic");
    line.checked = 1;
    line.notes.push(match spec.system().hyperbolicity_witness()? {
        None => "true".into(),
        Some(w) => format!("false: {w}"),
    });
    report.lines.push(line);
    Ok(report)
}
