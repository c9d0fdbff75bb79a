use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::thread_pool;
use crate::error::{Error, Result};
use crate::potentials::{
    epd_residual, ernst_residual, invariant_surface_residual, EpdBasis, EpdCombination, ErnstField,
    PotentialSample, SolutionFamily, SurfaceGenerator,
};
use crate::transforms::{Transform, TransformedField};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const CSV_HEADER: &str = "f,g,K,L,resK,resL";

/// The potential a scenario samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Source {
    /// `{"family": "x1", "A": .., "B": .., "C": ..}`
    Family(SolutionFamily),
    /// `{"epd": [{"weight": .., "basis": "log-sum"}, ..]}`
    Epd { epd: EpdCombination },
}

impl Source {
    pub fn validate(&self) -> Result<()> {
        match self {
            Source::Family(fam) => fam.params().validate(),
            Source::Epd { epd } => epd.validate(),
        }
    }

    /// Whether `(f, g)` lies in the region where the source is defined.
    /// Every such region is convex.
    pub fn admits(&self, f: f64, g: f64) -> bool {
        let quadrant = f > 0.0 && g > 0.0;
        let sum = f + g > 0.0;
        match self {
            Source::Family(SolutionFamily::X1(_)) => sum,
            Source::Family(SolutionFamily::X2(_)) => quadrant,
            Source::Epd { epd } => epd.terms.iter().all(|t| match t.basis {
                EpdBasis::LogSum => sum,
                EpdBasis::ArctanRatio => quadrant,
                EpdBasis::Const | EpdBasis::Antisym => true,
            }),
        }
    }
}

impl ErnstField for Source {
    fn sample(&self, f: f64, g: f64) -> Result<PotentialSample> {
        match self {
            Source::Family(fam) => fam.sample(f, g),
            Source::Epd { epd } => epd.sample(f, g),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub f_min: f64,
    pub f_max: f64,
    pub f_count: usize,
    pub g_min: f64,
    pub g_max: f64,
    pub g_count: usize,
}

impl Grid {
    pub fn square(min: f64, max: f64, count: usize) -> Self {
        Grid {
            f_min: min,
            f_max: max,
            f_count: count,
            g_min: min,
            g_max: max,
            g_count: count,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.f_count < 2 || self.g_count < 2 {
            return Err(Error::Config(format!(
                "grid counts must be at least 2, got {}x{}",
                self.f_count, self.g_count
            )));
        }
        let bounds = [self.f_min, self.f_max, self.g_min, self.g_max];
        if bounds.iter().any(|b| !b.is_finite())
            || self.f_min >= self.f_max
            || self.g_min >= self.g_max
        {
            return Err(Error::Config(format!(
                "grid bounds must be finite and increasing: {self:?}"
            )));
        }
        Ok(())
    }

    fn axis(min: f64, max: f64, count: usize, i: usize) -> f64 {
        if i + 1 == count {
            max
        } else {
            min + (max - min) * i as f64 / (count - 1) as f64
        }
    }

    pub fn f_at(&self, i: usize) -> f64 {
        Self::axis(self.f_min, self.f_max, self.f_count, i)
    }

    pub fn g_at(&self, j: usize) -> f64 {
        Self::axis(self.g_min, self.g_max, self.g_count, j)
    }

    pub fn corners(&self) -> [(f64, f64); 4] {
        [
            (self.f_min, self.g_min),
            (self.f_min, self.g_max),
            (self.f_max, self.g_min),
            (self.f_max, self.g_max),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputKind {
    Fields,
    Residuals,
    Invariants,
}

fn default_outputs() -> Vec<OutputKind> {
    vec![
        OutputKind::Fields,
        OutputKind::Residuals,
        OutputKind::Invariants,
    ]
}

fn default_tolerance() -> f64 {
    DEFAULT_TOLERANCE
}

/// A JSON run configuration. Transforms apply left to right as listed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub schema: u32,
    pub source: Source,
    pub grid: Grid,
    #[serde(default)]
    pub transforms: Vec<Transform>,
    #[serde(default = "default_outputs")]
    pub outputs: Vec<OutputKind>,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

impl Scenario {
    pub fn new(source: Source, grid: Grid) -> Self {
        Scenario {
            schema: SCHEMA_VERSION,
            source,
            grid,
            transforms: Vec::new(),
            outputs: default_outputs(),
            tolerance: DEFAULT_TOLERANCE,
        }
    }

    pub fn with_transforms(mut self, transforms: Vec<Transform>) -> Self {
        self.transforms = transforms;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let s: Scenario = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        s.validate()?;
        Ok(s)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Where a grid point is evaluated on the untransformed source.
    pub fn pull_back(&self, f: f64, g: f64) -> (f64, f64) {
        self.transforms
            .iter()
            .rev()
            .fold((f, g), |(f, g), t| match t {
                Transform::CoordinateAction(a) => a.apply(f, g),
                _ => (f, g),
            })
    }

    pub fn validate(&self) -> Result<()> {
        if self.schema != SCHEMA_VERSION {
            return Err(Error::Config(format!(
                "unsupported schema {}, expected {SCHEMA_VERSION}",
                self.schema
            )));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::Config(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        self.source
            .validate()
            .map_err(|e| Error::Config(e.to_string()))?;
        for t in &self.transforms {
            t.validate().map_err(|e| Error::Config(e.to_string()))?;
        }
        self.grid.validate()?;
        // coordinate actions are affine, so the corners decide admissibility
        for (f, g) in self.grid.corners() {
            let (pf, pg) = self.pull_back(f, g);
            if !(f + g > 0.0) || !self.source.admits(pf, pg) {
                return Err(Error::Config(format!(
                    "grid corner (f={f}, g={g}) lies outside the domain of the source"
                )));
            }
        }
        Ok(())
    }

    /// The invariant-surface condition that survives the transform chain, if any.
    fn surviving_generator(&self) -> Option<SurfaceGenerator> {
        match &self.source {
            Source::Family(SolutionFamily::X1(_)) => Some(SurfaceGenerator::X1),
            Source::Family(SolutionFamily::X2(_)) => {
                let unshifted = self.transforms.iter().all(|t| match t {
                    Transform::CoordinateAction(a) => a.shift == 0.0,
                    _ => true,
                });
                unshifted.then_some(SurfaceGenerator::X2)
            }
            Source::Epd { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub f: f64,
    pub g: f64,
    #[serde(rename = "K")]
    pub k: f64,
    #[serde(rename = "L")]
    pub l: f64,
    #[serde(rename = "resK")]
    pub res_k: f64,
    #[serde(rename = "resL")]
    pub res_l: f64,
}

impl FieldRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.f, self.g, self.k, self.l, self.res_k, self.res_l
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    /// max absolute residual, or for `k-positive` the minimum of `K`
    pub value: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSummary {
    pub nodes: usize,
    pub tolerance: f64,
    #[serde(rename = "max_abs_resK")]
    pub max_abs_res_k: f64,
    #[serde(rename = "max_abs_resL")]
    pub max_abs_res_l: f64,
    pub invariant_checks: Vec<InvariantCheck>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioRun {
    pub records: Vec<FieldRecord>,
    pub summary: ScenarioSummary,
}

impl ScenarioRun {
    pub fn csv(&self) -> String {
        let mut out = String::with_capacity(self.records.len() * 150);
        out.push_str(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            let _ = writeln!(out, "{}", r.csv_row());
        }
        out
    }
}

struct NodeOutcome {
    record: FieldRecord,
    surface: Option<f64>,
    epd: Option<f64>,
}

fn evaluate_node(
    scenario: &Scenario,
    field: &TransformedField<Source>,
    generator: Option<SurfaceGenerator>,
    f: f64,
    g: f64,
) -> Result<NodeOutcome> {
    let s = field.sample(f, g)?;
    let (res_k, res_l) = ernst_residual(&s, f, g)?;
    let surface = match generator {
        Some(gen) => {
            let (a, b) = invariant_surface_residual(field, gen, f, g)?;
            Some(a.abs().max(b.abs()))
        }
        None => None,
    };
    let epd = match &scenario.source {
        Source::Epd { epd } => {
            let (pf, pg) = scenario.pull_back(f, g);
            Some(epd_residual(&epd.eval(pf, pg)?, pf, pg)?.abs())
        }
        Source::Family(_) => None,
    };
    Ok(NodeOutcome {
        record: FieldRecord {
            f,
            g,
            k: s.k.value,
            l: s.l.value,
            res_k,
            res_l,
        },
        surface,
        epd,
    })
}

/// Sample the scenario on its grid, rows in parallel.
///
/// Records come back in row-major order (`f` outer, `g` inner) regardless of
/// scheduling, and the first failing node in that order is reported.
pub fn evaluate_scenario(scenario: &Scenario) -> Result<ScenarioRun> {
    scenario.validate()?;
    let field = TransformedField::new(scenario.source.clone(), scenario.transforms.clone())?;
    let generator = scenario.surviving_generator();
    let grid = scenario.grid;
    let pool = thread_pool()?;
    let rows: Vec<Result<Vec<NodeOutcome>>> = pool.install(|| {
        (0..grid.f_count)
            .into_par_iter()
            .map(|i| {
                let f = grid.f_at(i);
                (0..grid.g_count)
                    .map(|j| {
                        let g = grid.g_at(j);
                        evaluate_node(scenario, &field, generator, f, g).map_err(|e| {
                            Error::GridNode {
                                f,
                                g,
                                source: Box::new(e),
                            }
                        })
                    })
                    .collect()
            })
            .collect()
    });

    let mut nodes = Vec::with_capacity(grid.f_count * grid.g_count);
    for row in rows {
        nodes.extend(row?);
    }
    let tol = scenario.tolerance;
    let max_k = nodes
        .iter()
        .fold(0.0f64, |m, n| m.max(n.record.res_k.abs()));
    let max_l = nodes
        .iter()
        .fold(0.0f64, |m, n| m.max(n.record.res_l.abs()));
    let finite = nodes.iter().all(|n| {
        let r = &n.record;
        [r.k, r.l, r.res_k, r.res_l].iter().all(|v| v.is_finite())
    });

    let mut checks = Vec::new();
    if scenario.outputs.contains(&OutputKind::Invariants) {
        let min_k = nodes.iter().fold(f64::INFINITY, |m, n| m.min(n.record.k));
        checks.push(InvariantCheck {
            name: "k-positive".into(),
            value: min_k,
            passed: min_k > 0.0,
        });
        if let Some(gen) = generator {
            let v = nodes.iter().filter_map(|n| n.surface).fold(0.0, f64::max);
            checks.push(InvariantCheck {
                name: format!("{gen:?}-invariant-surface").to_lowercase(),
                value: v,
                passed: v <= tol,
            });
        }
        if matches!(scenario.source, Source::Epd { .. }) {
            let v = nodes.iter().filter_map(|n| n.epd).fold(0.0, f64::max);
            checks.push(InvariantCheck {
                name: "epd-residual".into(),
                value: v,
                passed: v <= tol,
            });
        }
    }
    let passed = finite && max_k <= tol && max_l <= tol && checks.iter().all(|c| c.passed);
    Ok(ScenarioRun {
        records: nodes.into_iter().map(|n| n.record).collect(),
        summary: ScenarioSummary {
            nodes: grid.f_count * grid.g_count,
            tolerance: tol,
            max_abs_res_k: max_k,
            max_abs_res_l: max_l,
            invariant_checks: checks,
            passed,
        },
    })
}

/// Paths written by [`run_scenario`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputFiles {
    pub csv: Option<PathBuf>,
    pub summary: PathBuf,
}

/// Evaluate and write `<stem>.csv` (when fields or residuals are requested)
/// and `<stem>.summary.json` into `dir`.
pub fn run_scenario(
    scenario: &Scenario,
    dir: &Path,
    stem: &str,
) -> Result<(ScenarioRun, OutputFiles)> {
    let run = evaluate_scenario(scenario)?;
    std::fs::create_dir_all(dir)?;
    let wants_csv = scenario
        .outputs
        .iter()
        .any(|o| matches!(o, OutputKind::Fields | OutputKind::Residuals));
    let csv = if wants_csv {
        let path = dir.join(format!("{stem}.csv"));
        std::fs::write(&path, run.csv())?;
        Some(path)
    } else {
        None
    };
    let summary = dir.join(format!("{stem}.summary.json"));
    std::fs::write(&summary, serde_json::to_string_pretty(&run.summary)? + "\n")?;
    Ok((run, OutputFiles { csv, summary }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potentials::FamilyParams;

    fn x1_scenario() -> Scenario {
        Scenario::new(
            Source::Family(SolutionFamily::X1(
                FamilyParams::new(1.0, 1.0, 0.0).unwrap(),
            )),
            Grid::square(0.5, 1.5, 8),
        )
    }

    #[test]
    fn x1_scenario_passes() {
        let run = evaluate_scenario(&x1_scenario()).unwrap();
        assert_eq!(run.records.len(), 64);
        assert!(run.summary.max_abs_res_k <= 1e-10 && run.summary.max_abs_res_l <= 1e-10);
        assert!(run.summary.passed);
        assert_eq!(run.records[1].f, 0.5);
        assert!(run.records[1].g > 0.5);
        let with_x5 = x1_scenario().with_transforms(vec![Transform::X5 { epsilon: 0.3 }]);
        let run = evaluate_scenario(&with_x5).unwrap();
        assert!(run.summary.passed, "{:?}", run.summary);
    }

    #[test]
    fn zero_b_is_rejected_before_evaluation() {
        let text = r#"{"schema":1,"source":{"family":"x1","A":1,"B":0,"C":0},
            "grid":{"f_min":0.5,"f_max":1.5,"f_count":4,"g_min":0.5,"g_max":1.5,"g_count":4}}"#;
        assert!(matches!(Scenario::from_json(text), Err(Error::Config(_))));
    }

    #[test]
    fn config_validation() {
        let mut s = x1_scenario();
        s.grid.f_count = 1;
        assert!(s.validate().is_err());
        let mut s = x1_scenario();
        s.schema = 2;
        assert!(s.validate().is_err());
        let mut s = x1_scenario();
        s.grid = Grid::square(-2.0, 1.0, 4);
        assert!(s.validate().is_err());
        let s = Scenario::new(
            Source::Family(SolutionFamily::X2(
                FamilyParams::new(1.0, 1.0, 0.0).unwrap(),
            )),
            Grid::square(0.0, 1.0, 4),
        );
        assert!(s.validate().is_err());
    }

    #[test]
    fn json_round_trip_and_defaults() {
        let s = x1_scenario().with_transforms(vec![Transform::X5 { epsilon: 0.3 }]);
        assert_eq!(Scenario::from_json(&s.to_json().unwrap()).unwrap(), s);
        let epd = r#"{"schema":1,"source":{"epd":[{"weight":0.7,"basis":"log-sum"}]},
            "grid":{"f_min":0.2,"f_max":1.0,"f_count":3,"g_min":0.2,"g_max":1.0,"g_count":3}}"#;
        let s = Scenario::from_json(epd).unwrap();
        assert_eq!(s.tolerance, DEFAULT_TOLERANCE);
        assert_eq!(s.outputs.len(), 3);
        let run = evaluate_scenario(&s).unwrap();
        assert!(run
            .summary
            .invariant_checks
            .iter()
            .any(|c| c.name == "epd-residual" && c.passed));
    }

    #[test]
    fn csv_layout() {
        let run = evaluate_scenario(&x1_scenario()).unwrap();
        let csv = run.csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        let first: Vec<f64> = lines
            .next()
            .unwrap()
            .split(',')
            .map(|x| x.parse().unwrap())
            .collect();
        assert_eq!(first[..2], [0.5, 0.5]);
        assert_eq!(first[2], run.records[0].k);
        assert_eq!(csv.lines().count(), 65);
    }

    #[test]
    fn failing_node_is_reported() {
        let s = Scenario::new(
            Source::Family(SolutionFamily::X2(
                FamilyParams::new(1.0, 1.0, 0.0).unwrap(),
            )),
            Grid::square(0.5, 1.5, 4),
        );
        let field = TransformedField::new(s.source.clone(), vec![]).unwrap();
        let e = evaluate_node(&s, &field, None, -0.5, 1.0).map_err(|e| Error::GridNode {
            f: -0.5,
            g: 1.0,
            source: Box::new(e),
        });
        let msg = e.err().unwrap().to_string();
        assert!(msg.contains("f=-0.5"), "{msg}");
    }
}
