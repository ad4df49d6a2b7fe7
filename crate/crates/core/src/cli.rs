//! The `nanowire` command-line front end.
//!
//! Every subcommand reads its parameters from three layers: built-in
//! defaults, an optional `key = value` file (`--config`, `#` starts a
//! comment) and `--key value` flags, later layers winning. Each successful run
//! writes the fully resolved configuration, its CSV results and, for
//! `vortex-scan`, a gnuplot script into the output directory (`--out`, or
//! `NANOWIRE_OUT`, or the working directory). Floats are written with 17
//! significant digits so that reruns are byte-identical.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Arg, ArgMatches, Command};

use crate::demag::compute_demag_matrix;
use crate::error::{Error, Result};
use crate::field3d::{average_profile, minimize_3d, wire, Descent3dOptions, Field3D, Magnetostatics};
use crate::geometry::CrossSection;
use crate::lemmas::{run_all, LemmaSet, SuiteConfig};
use crate::profile::{
    align_profile, fixed_minimizer, initial_profile, minimize_reduced, DescentOptions, DescentStatus, InitKind,
    ReducedEnergyParams, WallProfile,
};
use crate::vortex::{loglog_slope, verify_bounds, VortexGridOptions, VortexParams};

/// Environment variable naming the default output directory.
pub const OUT_ENV: &str = "NANOWIRE_OUT";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subcommand {
    ComputeMatrix,
    MinimizeProfile,
    Energy3d,
    Minimize3d,
    VortexScan,
    VerifyLemmas,
}

impl Subcommand {
    pub const ALL: [Subcommand; 6] = [
        Subcommand::ComputeMatrix,
        Subcommand::MinimizeProfile,
        Subcommand::Energy3d,
        Subcommand::Minimize3d,
        Subcommand::VortexScan,
        Subcommand::VerifyLemmas,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Subcommand::ComputeMatrix => "compute-matrix",
            Subcommand::MinimizeProfile => "minimize-profile",
            Subcommand::Energy3d => "energy3d",
            Subcommand::Minimize3d => "minimize3d",
            Subcommand::VortexScan => "vortex-scan",
            Subcommand::VerifyLemmas => "verify-lemmas",
        }
    }

    fn about(self) -> &'static str {
        match self {
            Subcommand::ComputeMatrix => "Demag block of a cross section, its eigenvalues and wall-plane rotation",
            Subcommand::MinimizeProfile => "Projected descent for the one-dimensional reduced wall energy",
            Subcommand::Energy3d => "Exchange and magnetostatic energy of a wall field along a diameter ladder",
            Subcommand::Minimize3d => "Minimize the full energy along a diameter ladder",
            Subcommand::VortexScan => "Thick-wire vortex wall energies against their bounds",
            Subcommand::VerifyLemmas => "Randomized checks of the supporting inequalities",
        }
    }

    fn keys(self) -> Vec<Key> {
        let mut keys = Vec::new();
        let geometry = matches!(
            self,
            Subcommand::ComputeMatrix | Subcommand::MinimizeProfile | Subcommand::Energy3d | Subcommand::Minimize3d
        );
        if geometry {
            keys.extend(GEOMETRY_KEYS.iter().copied());
        }
        let own: &[Key] = match self {
            Subcommand::ComputeMatrix => &[key("n", Some("512"), "boundary quadrature nodes")],
            Subcommand::MinimizeProfile => &[
                key("n", Some("1024"), "boundary quadrature nodes when a geometry is given"),
                key("alpha2", None, "smaller demag eigenvalue (instead of a geometry)"),
                key("alpha3", None, "larger demag eigenvalue (instead of a geometry)"),
                key("area", None, "cross-section area |omega| (instead of a geometry)"),
                key("points", Some("4096"), "profile samples"),
                key(
                    "window",
                    Some("auto"),
                    "`lo,hi`, or auto for 40/sqrt(alpha2/|omega|) each side",
                ),
                key("init", Some("perturbed"), "closed-form, perturbed or rotated"),
                key("max-iterations", Some("200000"), "descent step budget"),
                key("tolerance", Some("1e-5"), "projected gradient tolerance"),
            ],
            Subcommand::Energy3d | Subcommand::Minimize3d => &[
                key("n", Some("1024"), "boundary quadrature nodes for the demag block"),
                key("grid", Some("64,8,4"), "cells `nx,ny,nz`"),
                key("d-ladder", Some("0.4,0.2,0.1"), "comma-separated wire diameters d"),
                key(
                    "half-window",
                    Some("auto"),
                    "axial half length, or auto for 6/sqrt(alpha2/|omega|)",
                ),
                key("init", Some("closed-form"), "closed-form, perturbed or rotated"),
                key("max-charges", Some("150000"), "capacity of the direct charge sum"),
            ],
            Subcommand::VortexScan => &[
                key("d-ladder", Some("4,8,16"), "comma-separated side lengths d > 1"),
                key("axial-cells", Some("80"), "axial cells of the magnetostatic grid"),
                key(
                    "transverse-cells",
                    Some("16"),
                    "cells per side of the magnetostatic grid",
                ),
                key("exchange-cells", Some("256"), "cells per side of the exchange lattice"),
                key("max-charges", Some("100000"), "capacity of the direct charge sum"),
            ],
            Subcommand::VerifyLemmas => &[
                key("seed", Some("0"), "random seed"),
                key(
                    "set",
                    Some("all"),
                    "all, or a comma-separated list of A1, A2, A3, L31, L32, L33",
                ),
                key("a1-pairs", Some("50"), "field pairs for A1"),
                key("a2-cases", Some("100"), "random rectangles for A2"),
                key("a3-fields", Some("100"), "random profiles for A3"),
                key("scaling-fields", Some("4"), "fields for L31"),
                key("poincare-fields", Some("6"), "fields for L32"),
                key("averaged-fields", Some("10"), "fields for L33"),
            ],
        };
        keys.extend(own.iter().copied());
        if self == Subcommand::Minimize3d {
            keys.extend([
                key("max-iterations", Some("3000"), "descent step budget"),
                key("tolerance", Some("1e-15"), "relative predicted-decrease tolerance"),
                key("mu", Some("1"), "mass shift of the preconditioner"),
            ]);
        }
        keys
    }

    /// Geometry used when neither the file nor the flags name a shape.
    fn default_geometry(self) -> Option<&'static [(&'static str, &'static str)]> {
        match self {
            // 2:1 rectangle of diameter one
            Subcommand::Energy3d | Subcommand::Minimize3d => Some(&[
                ("shape", "rectangle"),
                ("a", "0.4472135954999579"),
                ("b", "0.22360679774997896"),
            ]),
            _ => None,
        }
    }

    fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|s| s.name() == name)
    }
}

#[derive(Debug, Clone, Copy)]
struct Key {
    name: &'static str,
    default: Option<&'static str>,
    help: &'static str,
}

const fn key(name: &'static str, default: Option<&'static str>, help: &'static str) -> Key {
    Key { name, default, help }
}

const GEOMETRY_KEYS: [Key; 7] = [
    key("shape", None, "disc, ellipse, rectangle or polygon"),
    key("r", None, "disc radius"),
    key("a", None, "ellipse semi-axis or rectangle half-width along y"),
    key("b", None, "ellipse semi-axis or rectangle half-width along z"),
    key("vertices", None, "polygon vertices `y,z;y,z;...`"),
    key("rotation", None, "counterclockwise rotation of the cross section"),
    key("resolution", None, "boundary samples for area and perimeter"),
];

/// A fully resolved invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub subcommand: Subcommand,
    /// Resolved parameters; absent optional keys are left out.
    pub values: BTreeMap<String, String>,
    pub out_dir: PathBuf,
    pub threads: Option<usize>,
}

impl RunConfig {
    fn raw(&self, key: &str) -> Result<&str> {
        self.values
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| Error::Config(format!("missing required parameter `{key}`")))
    }

    fn parse<T: std::str::FromStr>(&self, key: &str, what: &str) -> Result<T> {
        let raw = self.raw(key)?;
        raw.parse()
            .map_err(|_| Error::Config(format!("malformed value `{raw}` for `{key}`: expected {what}")))
    }

    fn float(&self, key: &str) -> Result<f64> {
        self.parse(key, "a number")
    }

    fn count(&self, key: &str) -> Result<usize> {
        self.parse(key, "a non-negative integer")
    }

    fn floats(&self, key: &str) -> Result<Vec<f64>> {
        let raw = self.raw(key)?;
        let items: Vec<&str> = raw.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        if items.is_empty() {
            return Err(Error::Config(format!("`{key}` is empty")));
        }
        items
            .iter()
            .map(|s| {
                s.parse::<f64>()
                    .map_err(|_| Error::Config(format!("malformed value `{s}` in `{key}`: expected a number")))
            })
            .collect()
    }

    fn optional_float(&self, key: &str) -> Result<Option<f64>> {
        match self.values.get(key).map(String::as_str) {
            None | Some("auto") => Ok(None),
            Some(_) => self.float(key).map(Some),
        }
    }

    fn has_geometry(&self) -> bool {
        self.values.contains_key("shape")
    }

    fn cross_section(&self) -> Result<CrossSection> {
        let map: BTreeMap<String, String> = GEOMETRY_KEYS
            .iter()
            .filter_map(|k| self.values.get(k.name).map(|v| (k.name.to_string(), v.clone())))
            .collect();
        CrossSection::from_map(&map)
    }

    /// The resolved configuration as a `key = value` file, in table order.
    pub fn to_key_value(&self) -> String {
        let mut out = format!("# nanowire {}\n", self.subcommand.name());
        for k in self.subcommand.keys() {
            if let Some(v) = self.values.get(k.name) {
                let _ = writeln!(out, "{} = {}", k.name, v);
            }
        }
        out
    }
}

fn global_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("config")
            .long("config")
            .value_name("FILE")
            .global(true)
            .help("key = value parameter file; flags override it"),
    )
    .arg(Arg::new("out").long("out").value_name("DIR").global(true).help(format!(
        "output directory (default: ${OUT_ENV}, else the working directory)"
    )))
    .arg(
        Arg::new("threads")
            .long("threads")
            .value_name("N")
            .global(true)
            .value_parser(clap::value_parser!(usize))
            .help("worker threads (default: all cores)"),
    )
}

/// The clap command tree.
pub fn command() -> Command {
    let mut root = Command::new("nanowire")
        .version(env!("CARGO_PKG_VERSION"))
        .about("Domain walls in ferromagnetic nanowires")
        .subcommand_required(true)
        .arg_required_else_help(true);
    for sub in Subcommand::ALL {
        let mut c = Command::new(sub.name()).about(sub.about());
        for k in sub.keys() {
            let mut help = k.help.to_string();
            if let Some(d) = k.default {
                let _ = write!(help, " [default: {d}]");
            }
            c = c.arg(
                Arg::new(k.name)
                    .long(k.name)
                    .value_name("VALUE")
                    .allow_hyphen_values(true)
                    .help(help),
            );
        }
        root = root.subcommand(c);
    }
    global_args(root)
}

/// Parses `key = value` lines; `#` starts a comment.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`, got `{line}`", lineno + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Resolves parsed arguments into a [`RunConfig`].
pub fn resolve(matches: &ArgMatches) -> Result<RunConfig> {
    let (name, sub_m) = matches
        .subcommand()
        .ok_or_else(|| Error::Config("missing subcommand".into()))?;
    let sub = Subcommand::from_name(name).ok_or_else(|| Error::Config(format!("unknown subcommand `{name}`")))?;
    let keys = sub.keys();
    let mut file_values = BTreeMap::new();
    if let Some(path) = sub_m.get_one::<String>("config") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config file `{path}`: {e}")))?;
        for (k, v) in parse_key_values(&text)? {
            if !keys.iter().any(|key| key.name == k) {
                return Err(Error::Config(format!("unknown key `{k}` in `{path}` for `{name}`")));
            }
            file_values.insert(k, v);
        }
    }
    let mut flag_values = BTreeMap::new();
    for k in &keys {
        if let Some(v) = sub_m.get_one::<String>(k.name) {
            flag_values.insert(k.name.to_string(), v.clone());
        }
    }
    let mut values = BTreeMap::new();
    for k in &keys {
        if let Some(d) = k.default {
            values.insert(k.name.to_string(), d.to_string());
        }
    }
    let shape_given = file_values.contains_key("shape") || flag_values.contains_key("shape");
    if !shape_given {
        if let Some(block) = sub.default_geometry() {
            for (k, v) in block {
                values.insert(k.to_string(), v.to_string());
            }
        }
    }
    values.extend(file_values);
    values.extend(flag_values);
    let out_dir = match sub_m.get_one::<String>("out") {
        Some(p) => PathBuf::from(p),
        None => std::env::var_os(OUT_ENV).map_or_else(|| PathBuf::from("."), PathBuf::from),
    };
    let threads = sub_m.get_one::<usize>("threads").copied();
    if threads == Some(0) {
        return Err(Error::Config("`threads` must be at least 1".into()));
    }
    Ok(RunConfig {
        subcommand: sub,
        values,
        out_dir,
        threads,
    })
}

/// Parses a full argument list (program name first).
pub fn parse_config<I, T>(args: I) -> Result<RunConfig>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = command()
        .try_get_matches_from(args)
        .map_err(|e| Error::Config(e.to_string().trim_end().to_string()))?;
    resolve(&matches)
}

/// Results of one run, not yet written.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutput {
    /// `(file name, contents)` in write order.
    pub files: Vec<(String, String)>,
    /// Human-readable summary for standard output.
    pub summary: String,
    /// Failed checks, reported after the files are written.
    pub failures: Vec<String>,
}

/// Floats with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Renders a header and rows as CSV.
pub fn emit_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::Config("no results to write".into()));
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// Log-log plot of the vortex energy and its bound, reading `csv_name`.
pub fn emit_plot_script(csv_name: &str, slope: Option<f64>) -> String {
    let stem = csv_name.trim_end_matches(".csv");
    let mut s = String::new();
    if let Some(slope) = slope {
        let _ = writeln!(s, "# fitted log-log slope of E(m) against d: {}", fmt_f64(slope));
    }
    let _ = write!(
        s,
        "set terminal pngcairo size 800,600\n\
         set output '{stem}.png'\n\
         set datafile separator ','\n\
         set logscale xy\n\
         set key top left\n\
         set xlabel 'd'\n\
         set ylabel 'energy'\n\
         plot '{csv_name}' every ::1 using 1:13 with linespoints title 'E(m)', \\\n\
         \x20    '' every ::1 using 1:18 with lines dashtype 2 title '150 d^{{5/2}} sqrt(ln d)', \\\n\
         \x20    '' every ::1 using 1:4 with linespoints title 'E_mag(m~)', \\\n\
         \x20    '' every ::1 using 1:14 with lines dashtype 2 title '20 d^4 (1 + ln(L/d)) / L'\n"
    );
    s
}

fn status_name(s: DescentStatus) -> &'static str {
    match s {
        DescentStatus::Converged => "converged",
        DescentStatus::MaxIterations => "max-iterations",
        DescentStatus::Stalled => "stalled",
    }
}

fn compute_matrix(cfg: &RunConfig) -> Result<RunOutput> {
    let cs = cfg.cross_section()?;
    let n = cfg.count("n")?;
    let dm = compute_demag_matrix(&cs, n)?;
    let csv = emit_csv(
        &[
            "m22",
            "m23",
            "m33",
            "alpha2",
            "alpha3",
            "rotation_angle",
            "estimated_error",
            "quad_points",
            "degenerate",
        ],
        &[vec![
            fmt_f64(dm.m22),
            fmt_f64(dm.m23),
            fmt_f64(dm.m33),
            fmt_f64(dm.alpha2),
            fmt_f64(dm.alpha3),
            fmt_f64(dm.rotation_angle),
            fmt_f64(dm.estimated_error),
            dm.quad_points.to_string(),
            dm.degenerate.to_string(),
        ]],
    )?;
    Ok(RunOutput {
        summary: csv.clone(),
        files: vec![("compute-matrix.csv".into(), csv)],
        failures: vec![],
    })
}

fn reduced_params(cfg: &RunConfig) -> Result<ReducedEnergyParams> {
    let explicit = ["alpha2", "alpha3", "area"];
    if cfg.has_geometry() {
        if let Some(k) = explicit.iter().find(|k| cfg.values.contains_key(**k)) {
            return Err(Error::Config(format!(
                "`{k}` conflicts with a geometry block; give one or the other"
            )));
        }
        let cs = cfg.cross_section()?;
        let dm = compute_demag_matrix(&cs, cfg.count("n")?)?;
        return ReducedEnergyParams::from_demag(&dm, &cs);
    }
    if let Some(k) = explicit.iter().find(|k| !cfg.values.contains_key(**k)) {
        return Err(Error::Config(format!(
            "missing required parameter `{k}` (or give a geometry with `shape`)"
        )));
    }
    ReducedEnergyParams::new(cfg.float("area")?, cfg.float("alpha2")?, cfg.float("alpha3")?)
}

fn minimize_profile(cfg: &RunConfig) -> Result<RunOutput> {
    let params = reduced_params(cfg)?;
    let points = cfg.count("points")?;
    if points < 5 {
        return Err(Error::Config(format!("`points` must be at least 5, got {points}")));
    }
    let window = match cfg.raw("window")? {
        "auto" => params.default_window(),
        _ => {
            let w = cfg.floats("window")?;
            if w.len() != 2 || !(w[0] < w[1]) {
                return Err(Error::Config("`window` must be `lo,hi` with lo < hi".into()));
            }
            (w[0], w[1])
        }
    };
    let init = InitKind::parse(cfg.raw("init")?)?;
    let opts = DescentOptions {
        step: None,
        max_iterations: cfg.count("max-iterations")?,
        gradient_tolerance: cfg.float("tolerance")?,
    };
    let start = initial_profile(init, &params, window, points)?;
    let r = minimize_reduced(&params, &start, &opts);
    let reference = fixed_minimizer(&params, window, points)?;
    let distance = align_profile(&r.profile, &reference)?.distance;
    let energy = *r.history.last().expect("history starts with the initial energy");
    let profile_rows: Vec<Vec<String>> = r
        .profile
        .values()
        .iter()
        .enumerate()
        .map(|(i, m)| vec![fmt_f64(r.profile.x(i)), fmt_f64(m[0]), fmt_f64(m[1]), fmt_f64(m[2])])
        .collect();
    let history_rows: Vec<Vec<String>> = r
        .history
        .iter()
        .enumerate()
        .map(|(i, e)| vec![i.to_string(), fmt_f64(*e)])
        .collect();
    let summary_rows = vec![vec![
        status_name(r.status).to_string(),
        r.iterations.to_string(),
        fmt_f64(energy),
        fmt_f64(params.minimal_energy()),
        fmt_f64(r.gradient_norm),
        fmt_f64(distance),
        fmt_f64(params.alpha2),
        fmt_f64(params.alpha3),
        fmt_f64(params.area),
    ]];
    let summary_csv = emit_csv(
        &[
            "status",
            "iterations",
            "energy",
            "minimal_energy",
            "gradient_norm",
            "distance",
            "alpha2",
            "alpha3",
            "area",
        ],
        &summary_rows,
    )?;
    Ok(RunOutput {
        summary: format!(
            "{} after {} steps: energy {:.9}, 4 sqrt(alpha2 |omega|) = {:.9}, aligned distance {:.3e}\n",
            status_name(r.status),
            r.iterations,
            energy,
            params.minimal_energy(),
            distance
        ),
        files: vec![
            (
                "minimize-profile.csv".into(),
                emit_csv(&["x", "m1", "m2", "m3"], &profile_rows)?,
            ),
            (
                "minimize-profile-history.csv".into(),
                emit_csv(&["iteration", "energy"], &history_rows)?,
            ),
            ("minimize-profile-summary.csv".into(), summary_csv),
        ],
        failures: vec![],
    })
}

struct WireSetup {
    cs: CrossSection,
    params: ReducedEnergyParams,
    angle: f64,
    grid: [usize; 3],
    ladder: Vec<f64>,
    half: f64,
    init: InitKind,
    max_charges: usize,
}

fn wire_setup(cfg: &RunConfig) -> Result<WireSetup> {
    let grid = cfg.floats("grid")?;
    if grid.len() != 3 || grid.iter().any(|&v| !(v >= 1.0) || v.fract() != 0.0) {
        return Err(Error::Config(format!(
            "`grid` must be three positive integers `nx,ny,nz`, got `{}`",
            cfg.raw("grid")?
        )));
    }
    let grid = [grid[0] as usize, grid[1] as usize, grid[2] as usize];
    if grid[0] < 3 {
        return Err(Error::Config("`grid` needs nx >= 3".into()));
    }
    let ladder = cfg.floats("d-ladder")?;
    if let Some(d) = ladder.iter().find(|d| !(**d > 0.0) || !d.is_finite()) {
        return Err(Error::Config(format!("`d-ladder` entries must be positive, got {d}")));
    }
    let init = InitKind::parse(cfg.raw("init")?)?;
    let max_charges = cfg.count("max-charges")?;
    let cs = cfg.cross_section()?;
    let dm = compute_demag_matrix(&cs, cfg.count("n")?)?;
    let params = ReducedEnergyParams::from_demag(&dm, &cs)?;
    let half = cfg
        .optional_float("half-window")?
        .unwrap_or(6.0 / params.alpha_omega().sqrt());
    if !(half > 0.0) {
        return Err(Error::Config(format!("`half-window` must be positive, got {half}")));
    }
    Ok(WireSetup {
        cs,
        params,
        angle: dm.wall_plane_angle(),
        grid,
        ladder,
        half,
        init,
        max_charges,
    })
}

impl WireSetup {
    /// Cell-centre samples of the minimizer in the wall plane, and the
    /// slice-constant initial field on the wire of diameter `d`.
    fn fields(&self, d: f64) -> Result<(WallProfile, Field3D)> {
        let domain = wire(&self.cs, d, (-self.half, self.half), self.grid)?;
        let hx = domain.hx();
        let centres = (-self.half + 0.5 * hx, self.half - 0.5 * hx);
        let reference = fixed_minimizer(&self.params, centres, self.grid[0])?.rotated(self.angle);
        let init = initial_profile(self.init, &self.params, centres, self.grid[0])?.rotated(self.angle);
        Ok((reference, Field3D::from_profile(domain, &init)?))
    }
}

const ENERGY_HEADER: [&str; 8] = [
    "d",
    "nx",
    "ny",
    "nz",
    "exchange",
    "magnetostatic",
    "total",
    "total_over_d2",
];

fn energy_row(d: f64, n: [usize; 3], ex: f64, ms: f64) -> Vec<String> {
    vec![
        fmt_f64(d),
        n[0].to_string(),
        n[1].to_string(),
        n[2].to_string(),
        fmt_f64(ex),
        fmt_f64(ms),
        fmt_f64(ex + ms),
        fmt_f64((ex + ms) / (d * d)),
    ]
}

fn energy3d(cfg: &RunConfig) -> Result<RunOutput> {
    let setup = wire_setup(cfg)?;
    let mut rows = Vec::new();
    let mut summary = format!("min E0 = {:.9}\n", setup.params.minimal_energy());
    for &d in &setup.ladder {
        let (_, field) = setup.fields(d)?;
        let mut field = field;
        field.clamp_ends();
        let rep = Magnetostatics::new(&field.grid, setup.max_charges)?.report(&field)?;
        let _ = writeln!(summary, "d = {d}: E/d^2 = {:.9}", rep.total / (d * d));
        rows.push(energy_row(d, rep.n, rep.exchange, rep.magnetostatic));
    }
    Ok(RunOutput {
        files: vec![("energy3d.csv".into(), emit_csv(&ENERGY_HEADER, &rows)?)],
        summary,
        failures: vec![],
    })
}

fn minimize3d(cfg: &RunConfig) -> Result<RunOutput> {
    let setup = wire_setup(cfg)?;
    let opts = Descent3dOptions {
        max_iterations: cfg.count("max-iterations")?,
        mu: cfg.float("mu")?,
        tolerance: cfg.float("tolerance")?,
        max_charges: setup.max_charges,
    };
    let mut header = ENERGY_HEADER.to_vec();
    header.extend(["status", "iterations", "distance"]);
    let mut rows = Vec::new();
    let mut profile_rows = Vec::new();
    let mut summary = format!("min E0 = {:.9}\n", setup.params.minimal_energy());
    for &d in &setup.ladder {
        let (reference, init) = setup.fields(d)?;
        let r = minimize_3d(&init, &opts)?;
        let last = r.history.last().expect("history starts with the initial energy");
        let avg = average_profile(&r.field);
        let distance = avg.align(&reference)?.distance;
        let mut row = energy_row(d, last.n, last.exchange, last.magnetostatic);
        row.extend([
            status_name(r.status).to_string(),
            r.iterations.to_string(),
            fmt_f64(distance),
        ]);
        rows.push(row);
        for (i, m) in avg.values.iter().enumerate() {
            profile_rows.push(vec![
                fmt_f64(d),
                fmt_f64(avg.x(i)),
                fmt_f64(m[0]),
                fmt_f64(m[1]),
                fmt_f64(m[2]),
            ]);
        }
        let _ = writeln!(
            summary,
            "d = {d}: {} after {} steps, E/d^2 = {:.9}, averaged-profile distance {:.3e}",
            status_name(r.status),
            r.iterations,
            last.total / (d * d),
            distance
        );
    }
    Ok(RunOutput {
        files: vec![
            ("minimize3d.csv".into(), emit_csv(&header, &rows)?),
            (
                "minimize3d-profiles.csv".into(),
                emit_csv(&["d", "x", "m1", "m2", "m3"], &profile_rows)?,
            ),
        ],
        summary,
        failures: vec![],
    })
}

const VORTEX_HEADER: [&str; 20] = [
    "d",
    "L",
    "exchange",
    "mag_tilde",
    "mag_m",
    "difference_norm_sq",
    "formal_exchange",
    "exchange_exact",
    "formal_exchange_exact",
    "difference_norm_sq_exact",
    "excluded_volume",
    "charges",
    "energy",
    "bound_mag_tilde",
    "bound_formal_exchange",
    "bound_difference",
    "bound_exchange_difference",
    "bound_total",
    "failed_checks",
    "pass",
];

fn vortex_scan(cfg: &RunConfig) -> Result<RunOutput> {
    let ladder = cfg.floats("d-ladder")?;
    let params = ladder
        .iter()
        .map(|&d| VortexParams::new(d))
        .collect::<Result<Vec<_>>>()?;
    let opts = VortexGridOptions {
        axial_cells: cfg.count("axial-cells")?,
        transverse_cells: cfg.count("transverse-cells")?,
        exchange_cells: cfg.count("exchange-cells")?,
        max_charges: cfg.count("max-charges")?,
    };
    let mut rows = Vec::new();
    let mut failures = Vec::new();
    let mut summary = String::new();
    let mut energies = Vec::new();
    for v in &params {
        let r = verify_bounds(v, &opts)?;
        let failed: Vec<&str> = r.checks.iter().filter(|c| !c.passed()).map(|c| c.name).collect();
        for c in r.checks.iter().filter(|c| !c.passed()) {
            failures.push(format!("d = {}: {} = {} exceeds {}", v.d, c.name, c.measured, c.bound));
        }
        let _ = writeln!(
            summary,
            "d = {}: L = {:.6}, E(m) = {:.6} (bound {:.6}), E_mag(m~) = {:.6} (bound {:.6}), {}",
            v.d,
            v.l,
            r.energy,
            r.bounds.total,
            r.mag_tilde,
            r.bounds.mag_tilde,
            if failed.is_empty() { "pass" } else { "FAIL" }
        );
        energies.push(r.energy);
        rows.push(vec![
            fmt_f64(v.d),
            fmt_f64(v.l),
            fmt_f64(r.exchange),
            fmt_f64(r.mag_tilde),
            fmt_f64(r.mag_m),
            fmt_f64(r.difference_norm_sq),
            fmt_f64(r.formal_exchange),
            fmt_f64(r.exchange_exact),
            fmt_f64(r.formal_exchange_exact),
            fmt_f64(r.difference_norm_sq_exact),
            fmt_f64(r.excluded_volume),
            r.charges.to_string(),
            fmt_f64(r.energy),
            fmt_f64(r.bounds.mag_tilde),
            fmt_f64(r.bounds.formal_exchange),
            fmt_f64(r.bounds.difference),
            fmt_f64(r.bounds.exchange_difference),
            fmt_f64(r.bounds.total),
            failed.join(" "),
            failed.is_empty().to_string(),
        ]);
    }
    let slope = if ladder.len() >= 2 {
        let s = loglog_slope(&ladder, &energies)?;
        let _ = writeln!(summary, "log-log slope of E(m) against d: {s:.4}");
        Some(s)
    } else {
        None
    };
    Ok(RunOutput {
        files: vec![
            ("vortex-scan.csv".into(), emit_csv(&VORTEX_HEADER, &rows)?),
            ("vortex-scan.gp".into(), emit_plot_script("vortex-scan.csv", slope)),
        ],
        summary,
        failures,
    })
}

fn verify_lemmas(cfg: &RunConfig) -> Result<RunOutput> {
    let sets = LemmaSet::parse_list(cfg.raw("set")?)?;
    if sets.is_empty() {
        return Err(Error::Config("`set` selects no lemma".into()));
    }
    let suite = SuiteConfig {
        seed: cfg.parse("seed", "a non-negative integer")?,
        sets,
        a1_pairs: cfg.count("a1-pairs")?,
        a2_cases: cfg.count("a2-cases")?,
        a3_fields: cfg.count("a3-fields")?,
        scaling_fields: cfg.count("scaling-fields")?,
        poincare_fields: cfg.count("poincare-fields")?,
        averaged_fields: cfg.count("averaged-fields")?,
    };
    let checks = run_all(&suite)?;
    let rows: Vec<Vec<String>> = checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                fmt_f64(c.measured),
                fmt_f64(c.bound),
                fmt_f64(c.margin),
                fmt_f64(c.tolerance),
                c.pass.to_string(),
            ]
        })
        .collect();
    let failures: Vec<String> = checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| format!("{}: measured {} against bound {}", c.name, c.measured, c.bound))
        .collect();
    Ok(RunOutput {
        summary: format!("{} checks, {} failed\n", checks.len(), failures.len()),
        files: vec![(
            "verify-lemmas.csv".into(),
            emit_csv(&["name", "measured", "bound", "margin", "tolerance", "pass"], &rows)?,
        )],
        failures,
    })
}

/// Computes every output of a run without touching the filesystem.
pub fn execute(cfg: &RunConfig) -> Result<RunOutput> {
    let run = || match cfg.subcommand {
        Subcommand::ComputeMatrix => compute_matrix(cfg),
        Subcommand::MinimizeProfile => minimize_profile(cfg),
        Subcommand::Energy3d => energy3d(cfg),
        Subcommand::Minimize3d => minimize3d(cfg),
        Subcommand::VortexScan => vortex_scan(cfg),
        Subcommand::VerifyLemmas => verify_lemmas(cfg),
    };
    let mut out = match cfg.threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::Config(format!("cannot start {n} threads: {e}")))?
            .install(run)?,
        None => run()?,
    };
    out.files
        .insert(0, (format!("{}.config", cfg.subcommand.name()), cfg.to_key_value()));
    Ok(out)
}

/// Writes the files of a run into `dir`, creating it if needed.
pub fn write_outputs(dir: &Path, out: &RunOutput) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::with_capacity(out.files.len());
    for (name, contents) in &out.files {
        let path = dir.join(name);
        std::fs::write(&path, contents)?;
        written.push(path);
    }
    Ok(written)
}

/// Runs the command line and returns the process exit code: 0 on success,
/// 1 for usage and input errors, 2 for numerical failures.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let matches = match command().try_get_matches_from(args) {
        Ok(m) => m,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let result = resolve(&matches).and_then(|cfg| {
        let out = execute(&cfg)?;
        let written = write_outputs(&cfg.out_dir, &out)?;
        print!("{}", out.summary);
        for p in written {
            println!("wrote {}", p.display());
        }
        if out.failures.is_empty() {
            Ok(())
        } else {
            Err(Error::Verification(out.failures.join("; ")))
        }
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
