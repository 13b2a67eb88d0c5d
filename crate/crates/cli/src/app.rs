use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use fuzzycover::{
    measures, ApproximationSpace, Decimal, Degree, Execution, FuzzySet, Grade, GranulationTables,
    NeighborhoodTable, ResidualMode, ThresholdPair,
};

use crate::check::{check_loaded, check_random, CheckReport, RandomBounds};
use crate::error::{CliError, Result};
use crate::generate::{generate, GenSpec};
use crate::ops::{parse_op, regions_of, run_multi, run_single, OpParams};
use crate::report::ResultFile;
use crate::system_file::{load, Loaded, SystemFile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Residual,
    Complement,
}

impl From<ModeArg> for ResidualMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Residual => ResidualMode::Residual,
            ModeArg::Complement => ResidualMode::ComplementCut,
        }
    }
}

/// Approximation operators over fuzzy gamma-covering systems.
#[derive(Debug, Parser)]
#[command(name = "fuzzycover", version)]
pub struct Cli {
    /// Output format (sweep defaults to csv, everything else to json).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// How grade lower approximations measure missing mass.
    #[arg(long, global = true, value_enum, default_value = "residual")]
    pub residual_mode: ModeArg,
    /// Worker threads; 1 evaluates sequentially, 0 uses every core.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ParamArgs {
    #[arg(long)]
    pub alpha: Option<String>,
    #[arg(long)]
    pub beta: Option<String>,
    /// Comma-separated, one per covering.
    #[arg(long, value_delimiter = ',')]
    pub alphas: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    pub betas: Vec<String>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<String>,
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub ks: Vec<String>,
    #[command(flatten)]
    pub no_gamma: NoGamma,
}

/// Gamma belongs to each covering in the file; the flag exists only to be
/// refused with a clear message.
#[derive(Debug, Args)]
pub struct NoGamma {
    #[arg(long, hide = true)]
    pub gamma: Option<String>,
}

impl NoGamma {
    fn refuse(&self) -> Result<()> {
        match &self.gamma {
            Some(_) => Err(CliError::Parameter(
                "--gamma cannot be overridden; each covering's gamma is read from the system file"
                    .into(),
            )),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub file: PathBuf,
    #[arg(long)]
    pub op: String,
    #[arg(long)]
    pub target: String,
    /// Covering for single-covering operators; optional when there is one.
    #[arg(long)]
    pub covering: Option<String>,
    #[command(flatten)]
    pub params: ParamArgs,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that every covering is a fuzzy gamma-covering.
    Validate {
        file: PathBuf,
        #[command(flatten)]
        no_gamma: NoGamma,
    },
    /// Dump gamma-neighborhoods and their sigma-counts.
    Neigh {
        file: PathBuf,
        #[arg(long)]
        covering: Option<String>,
        /// Also report overlap, probability and mass for this target.
        #[arg(long)]
        target: Option<String>,
        #[command(flatten)]
        no_gamma: NoGamma,
    },
    /// Single-covering lower and upper approximations.
    Approx(EvalArgs),
    /// Three- or five-way regions of any operator.
    Regions(EvalArgs),
    /// Multi-granulation approximations over every covering.
    Mg(EvalArgs),
    /// Differential check against the brute-force oracle.
    Check {
        file: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        /// Parameter draws per file when checking a file.
        #[arg(long, default_value_t = 50)]
        rounds: usize,
        #[command(flatten)]
        no_gamma: NoGamma,
    },
    /// Generate a random valid system file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = 3)]
        members: usize,
        /// One value, or one per covering.
        #[arg(long, value_delimiter = ',', default_value = "0.5")]
        gamma: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        targets: usize,
        /// Degrees are multiples of 1/steps.
        #[arg(long, default_value_t = 100)]
        steps: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an operator over a parameter grid.
    Sweep {
        file: PathBuf,
        #[arg(long)]
        op: String,
        #[arg(long)]
        target: String,
        #[arg(long)]
        covering: Option<String>,
        /// `start:stop:step` or a single value.
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        beta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<String>,
        #[command(flatten)]
        no_gamma: NoGamma,
    },
}

struct Ctx {
    format: Option<Format>,
    mode: ResidualMode,
    exec: Execution,
}

fn parse_degree(s: &str, flag: &str) -> Result<Degree> {
    s.parse()
        .map_err(|e| CliError::Parameter(format!("{flag}: {e}")))
}

fn parse_grade(s: &str, flag: &str) -> Result<Grade> {
    s.parse()
        .map_err(|e| CliError::Parameter(format!("{flag}: {e}")))
}

fn pair(a: &str, b: &str) -> Result<ThresholdPair> {
    ThresholdPair::new(parse_degree(a, "--alpha")?, parse_degree(b, "--beta")?)
        .map_err(CliError::param)
}

impl ParamArgs {
    /// Threshold and grade lists; single values are repeated `m` times.
    fn resolve(&self, m: usize, mode: ResidualMode) -> Result<OpParams> {
        self.no_gamma.refuse()?;
        let thresholds = match (
            &self.alpha,
            &self.beta,
            self.alphas.is_empty(),
            self.betas.is_empty(),
        ) {
            (None, None, true, true) => Vec::new(),
            (Some(a), Some(b), true, true) => vec![pair(a, b)?; m],
            (None, None, false, false) => {
                if self.alphas.len() != self.betas.len() {
                    return Err(CliError::Parameter(format!(
                        "--alphas has {} values but --betas has {}",
                        self.alphas.len(),
                        self.betas.len()
                    )));
                }
                self.alphas
                    .iter()
                    .zip(&self.betas)
                    .map(|(a, b)| pair(a, b))
                    .collect::<Result<_>>()?
            }
            (Some(_), None, true, true) | (None, Some(_), true, true) => {
                return Err(CliError::Parameter("--alpha and --beta go together".into()))
            }
            (None, None, _, _) => {
                return Err(CliError::Parameter(
                    "--alphas and --betas go together".into(),
                ))
            }
            _ => {
                return Err(CliError::Parameter(
                    "give either --alpha/--beta or --alphas/--betas, not both".into(),
                ))
            }
        };
        let grades = match (&self.k, self.ks.is_empty()) {
            (None, true) => Vec::new(),
            (Some(k), true) => vec![parse_grade(k, "--k")?; m],
            (None, false) => self
                .ks
                .iter()
                .map(|k| parse_grade(k, "--ks"))
                .collect::<Result<_>>()?,
            (Some(_), false) => {
                return Err(CliError::Parameter(
                    "give either --k or --ks, not both".into(),
                ))
            }
        };
        Ok(OpParams {
            thresholds,
            grades,
            mode,
        })
    }
}

fn pick_covering(loaded: &Loaded, name: Option<&str>) -> Result<usize> {
    let coverings = loaded.system.coverings();
    match name {
        Some(n) => coverings.iter().position(|c| c.name() == n).ok_or_else(|| {
            let known: Vec<&str> = coverings.iter().map(|c| c.name()).collect();
            CliError::Parameter(format!("no covering {n:?}; file defines {known:?}"))
        }),
        None if coverings.len() == 1 => Ok(0),
        None => Err(CliError::Parameter(format!(
            "the file has {} coverings; choose one with --covering",
            coverings.len()
        ))),
    }
}

fn table_for(loaded: &Loaded, i: usize, exec: Execution) -> NeighborhoodTable {
    let space = ApproximationSpace::new(loaded.system.coverings()[i].clone());
    NeighborhoodTable::build_with(&space, exec)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|source| CliError::Io {
            path: PathBuf::from("<stdout>"),
            source,
        })
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output always serializes");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct CoveringVerdict {
    name: String,
    gamma: String,
    valid: bool,
    issues: Vec<String>,
}

#[derive(Serialize)]
struct ValidateOut {
    valid: bool,
    coverings: Vec<CoveringVerdict>,
    targets: Vec<String>,
}

fn cmd_validate(ctx: &Ctx, file: &Path, out: &mut dyn Write) -> Result<()> {
    let doc = SystemFile::read(file)?;
    let checks = doc.check()?;
    let mut verdicts = Vec::new();
    for (c, entry) in checks.iter().zip(&doc.coverings) {
        let r = &c.report;
        let mut issues = Vec::new();
        if r.gamma_not_positive {
            issues.push("gamma must be in (0, 1]".to_string());
        }
        if r.no_members {
            issues.push("covering has no members".to_string());
        }
        for m in &r.empty_members {
            issues.push(format!("member {m} is empty"));
        }
        for u in &r.uncovered {
            issues.push(format!(
                "object {} reaches only {} < gamma {}",
                u.object, u.max_degree, entry.gamma.0
            ));
        }
        verdicts.push(CoveringVerdict {
            name: c.name.clone(),
            gamma: entry.gamma.0.clone(),
            valid: r.is_valid(),
            issues,
        });
    }
    let all_valid = verdicts.iter().all(|v| v.valid);
    let report = ValidateOut {
        valid: all_valid,
        coverings: verdicts,
        targets: doc.targets.iter().map(|t| t.name.clone()).collect(),
    };
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&report),
        Format::Csv => {
            let mut s = String::from("covering,valid,issue\n");
            for v in &report.coverings {
                if v.issues.is_empty() {
                    s.push_str(&format!("{},{},\n", v.name, v.valid));
                }
                for i in &v.issues {
                    s.push_str(&format!("{},{},{}\n", v.name, v.valid, i));
                }
            }
            s
        }
    };
    emit(out, &text)?;
    if !all_valid {
        let bad: Vec<&str> = report
            .coverings
            .iter()
            .filter(|v| !v.valid)
            .map(|v| v.name.as_str())
            .collect();
        return Err(CliError::Validation(format!(
            "invalid coverings: {}",
            bad.join(", ")
        )));
    }
    doc.load().map(|_| ())
}

#[derive(Serialize)]
struct NeighRow {
    object: String,
    qualifiers: Vec<String>,
    degrees: Vec<String>,
    sigma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    overlap: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    probability: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mass: Option<String>,
}

#[derive(Serialize)]
struct NeighOut {
    covering: String,
    gamma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual_mode: Option<String>,
    rows: Vec<NeighRow>,
}

fn cmd_neigh(
    ctx: &Ctx,
    file: &Path,
    covering: Option<&str>,
    target: Option<&str>,
    out: &mut dyn Write,
) -> Result<()> {
    let loaded = load(file)?;
    let target: Option<&FuzzySet> = target.map(|t| loaded.target(t)).transpose()?;
    let indices: Vec<usize> = match covering {
        Some(_) => vec![pick_covering(&loaded, covering)?],
        None => (0..loaded.system.len()).collect(),
    };
    let mut dumps = Vec::new();
    for i in indices {
        let c = &loaded.system.coverings()[i];
        let table = table_for(&loaded, i, ctx.exec);
        let ms = target
            .map(|t| measures(&table, t, ctx.mode))
            .transpose()
            .map_err(CliError::param)?;
        let rows = (0..table.len())
            .map(|x| NeighRow {
                object: table.universe().name(x).to_string(),
                qualifiers: table
                    .qualifiers(x)
                    .iter()
                    .map(|&q| c.members()[q].0.clone())
                    .collect(),
                degrees: table
                    .row(x)
                    .degrees()
                    .iter()
                    .map(|d| d.to_string())
                    .collect(),
                sigma: table.sigma(x).to_string(),
                overlap: ms.as_ref().map(|m| m[x].overlap.to_string()),
                probability: ms.as_ref().map(|m| m[x].probability().to_string()),
                mass: ms.as_ref().map(|m| m[x].mass.to_string()),
            })
            .collect();
        dumps.push(NeighOut {
            covering: c.name().to_string(),
            gamma: c.gamma().to_string(),
            residual_mode: target.map(|_| ctx.mode.as_str().to_string()),
            rows,
        });
    }
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => json(&dumps),
        Format::Csv => {
            let mut s = String::from("covering,object,qualifiers,sigma,degrees");
            if target.is_some() {
                s.push_str(",overlap,probability,mass");
            }
            s.push('\n');
            for d in &dumps {
                for r in &d.rows {
                    s.push_str(&format!(
                        "{},{},{},{},{}",
                        d.covering,
                        r.object,
                        r.qualifiers.join(" "),
                        r.sigma,
                        r.degrees.join(" ")
                    ));
                    if let (Some(o), Some(p), Some(m)) = (&r.overlap, &r.probability, &r.mass) {
                        s.push_str(&format!(",{o},{p},{m}"));
                    }
                    s.push('\n');
                }
            }
            s
        }
    };
    emit(out, &text)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum EvalKind {
    Approx,
    Regions,
    Mg,
}

fn cmd_eval(ctx: &Ctx, kind: EvalKind, a: &EvalArgs, out: &mut dyn Write) -> Result<()> {
    a.params.no_gamma.refuse()?;
    let op = parse_op(&a.op)?;
    match kind {
        EvalKind::Approx if op.is_multi() => {
            return Err(CliError::Parameter(format!(
                "{op} is a multi-granulation operator; use `mg`"
            )))
        }
        EvalKind::Mg if !op.is_multi() => {
            return Err(CliError::Parameter(format!(
                "{op} is a single-covering operator; use `approx`"
            )))
        }
        _ => {}
    }
    let loaded = load(&a.file)?;
    let target = loaded.target(&a.target)?;
    let (result, tables) = if op.is_multi() {
        if a.covering.is_some() {
            return Err(CliError::Parameter(format!(
                "{op} uses every covering; drop --covering"
            )));
        }
        let params = a.params.resolve(loaded.system.len(), ctx.mode)?;
        let g = GranulationTables::build_with(&loaded.system, ctx.exec);
        let r = run_multi(op, &g, target, &params)?;
        (r, g.tables().to_vec())
    } else {
        let i = pick_covering(&loaded, a.covering.as_deref())?;
        let params = a.params.resolve(1, ctx.mode)?;
        if params.thresholds.len() > 1 || params.grades.len() > 1 {
            return Err(CliError::Parameter(format!(
                "{op} takes a single threshold pair and grade"
            )));
        }
        let table = table_for(&loaded, i, ctx.exec);
        let r = run_single(op, &table, target, &params)?;
        (r, vec![table])
    };
    let regions = (kind == EvalKind::Regions).then(|| regions_of(&result));
    let refs: Vec<&NeighborhoodTable> = tables.iter().collect();
    let file = ResultFile::new(
        &result,
        &refs,
        &a.target,
        target,
        ctx.mode,
        regions.as_ref(),
    )?;
    let text = match ctx.format.unwrap_or(Format::Json) {
        Format::Json => file.to_json(),
        Format::Csv => file.to_csv(),
    };
    emit(out, &text)
}

fn cmd_check(
    ctx: &Ctx,
    file: Option<&Path>,
    random: bool,
    seed: u64,
    count: usize,
    rounds: usize,
    out: &mut dyn Write,
) -> Result<()> {
    let report = match (file, random) {
        (Some(_), true) => {
            return Err(CliError::Parameter(
                "give a file or --random, not both".into(),
            ))
        }
        (None, false) => return Err(CliError::Parameter("give a system file or --random".into())),
        (None, true) => check_random(seed, count, RandomBounds::default()),
        (Some(path), false) => {
            let loaded = load(path)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut report = CheckReport::default();
            for r in 0..rounds {
                let part = check_loaded(
                    &loaded,
                    &format!("{} round {r}", path.display()),
                    &mut rng,
                    ctx.exec,
                );
                report.instances = 1;
                report.comparisons += part.comparisons;
                report.boundary_comparisons += part.boundary_comparisons;
                report.mismatches.extend(part.mismatches);
            }
            report
        }
    };
    emit(out, &report.to_json())?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "{} of {} comparisons disagree",
            report.mismatches.len(),
            report.comparisons
        )))
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_gen(
    n: usize,
    m: usize,
    members: usize,
    gamma: &[String],
    seed: u64,
    targets: usize,
    steps: u32,
    dest: Option<&Path>,
    out: &mut dyn Write,
) -> Result<()> {
    let gammas = gamma
        .iter()
        .map(|g| parse_degree(g, "--gamma"))
        .collect::<Result<Vec<_>>>()?;
    let gammas = match gammas.len() {
        1 => vec![gammas[0]; m],
        len if len == m => gammas,
        len => {
            return Err(CliError::Parameter(format!(
                "--gamma has {len} values for {m} coverings"
            )))
        }
    };
    let spec = GenSpec {
        n,
        members,
        gammas,
        targets,
        steps,
    };
    let file = generate(&spec, seed)?;
    match dest {
        Some(path) => file.write(path),
        None => emit(out, &file.to_json()),
    }
}

/// Closed arithmetic progression `start:stop:step`, or one value.
pub fn parse_grid(s: &str) -> Result<Vec<Decimal>> {
    let bad = |why: &str| CliError::Parameter(format!("grid {s:?}: {why}"));
    let num = |t: &str| t.parse::<Decimal>().map_err(|e| bad(&e.to_string()));
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [v] => Ok(vec![num(v)?]),
        [start, stop, step] => {
            let (start, stop, step) = (num(start)?, num(stop)?, num(step)?);
            if step <= Decimal::ZERO {
                return Err(bad("step must be positive"));
            }
            if start > stop {
                return Err(bad("start exceeds stop"));
            }
            let count = (stop.micros() - start.micros()) / step.micros() + 1;
            if count > 100_000 {
                return Err(bad("more than 100000 points"));
            }
            Ok((0..count)
                .map(|i| Decimal::from_micros(start.micros() + i * step.micros()))
                .collect())
        }
        _ => Err(bad("expected start:stop:step")),
    }
}

#[derive(Serialize)]
struct SweepRow {
    alpha: Option<String>,
    beta: Option<String>,
    k: Option<String>,
    lower_size: usize,
    upper_size: usize,
    lower: Vec<String>,
    upper: Vec<String>,
}

#[allow(clippy::too_many_arguments)]
fn cmd_sweep(
    ctx: &Ctx,
    file: &Path,
    op: &str,
    target: &str,
    covering: Option<&str>,
    alpha: Option<&str>,
    beta: Option<&str>,
    k: Option<&str>,
    out: &mut dyn Write,
) -> Result<()> {
    let op = parse_op(op)?;
    let loaded = load(file)?;
    let target_set = loaded.target(target)?;
    let grid_or = |g: Option<&str>, used: bool, flag: &str| -> Result<Vec<Option<Decimal>>> {
        match (g, used) {
            (Some(g), true) => Ok(parse_grid(g)?.into_iter().map(Some).collect()),
            (None, true) => Err(CliError::Parameter(format!("{op} sweep needs {flag}"))),
            (Some(_), false) => Err(CliError::Parameter(format!("{op} does not use {flag}"))),
            (None, false) => Ok(vec![None]),
        }
    };
    let alphas = grid_or(alpha, op.uses_thresholds(), "--alpha")?;
    let betas = grid_or(beta, op.uses_thresholds(), "--beta")?;
    let ks = grid_or(k, op.uses_grades(), "--k")?;
    let to_degree = |d: Decimal, flag: &str| {
        Degree::try_from(d).map_err(|e| CliError::Parameter(format!("{flag}: {e}")))
    };

    let granulation;
    let single;
    let m = if op.is_multi() {
        if covering.is_some() {
            return Err(CliError::Parameter(format!(
                "{op} uses every covering; drop --covering"
            )));
        }
        granulation = Some(GranulationTables::build_with(&loaded.system, ctx.exec));
        single = None;
        loaded.system.len()
    } else {
        let i = pick_covering(&loaded, covering)?;
        single = Some(table_for(&loaded, i, ctx.exec));
        granulation = None;
        1
    };

    let mut rows = Vec::new();
    for a in &alphas {
        for b in &betas {
            if let (Some(a), Some(b)) = (a, b) {
                if b > a {
                    continue;
                }
            }
            let thresholds = match (a, b) {
                (Some(a), Some(b)) => {
                    let p = ThresholdPair::new(to_degree(*a, "--alpha")?, to_degree(*b, "--beta")?)
                        .map_err(CliError::param)?;
                    vec![p; m]
                }
                _ => Vec::new(),
            };
            for k in &ks {
                let params = OpParams {
                    thresholds: thresholds.clone(),
                    grades: k.map(|k| vec![Grade::new(k); m]).unwrap_or_default(),
                    mode: ctx.mode,
                };
                let r = match (&granulation, &single) {
                    (Some(g), _) => run_multi(op, g, target_set, &params)?,
                    (_, Some(t)) => run_single(op, t, target_set, &params)?,
                    _ => unreachable!("one evaluation path is prepared"),
                };
                rows.push(SweepRow {
                    alpha: a.map(|v| v.to_string()),
                    beta: b.map(|v| v.to_string()),
                    k: k.map(|v| v.to_string()),
                    lower_size: r.lower.len(),
                    upper_size: r.upper.len(),
                    lower: r.lower.names(),
                    upper: r.upper.names(),
                });
            }
        }
    }
    let text = match ctx.format.unwrap_or(Format::Csv) {
        Format::Json => json(&rows),
        Format::Csv => {
            let mut s = String::from("alpha,beta,k,lower_size,upper_size,lower,upper\n");
            for r in &rows {
                let cell = |v: &Option<String>| v.clone().unwrap_or_default();
                s.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    cell(&r.alpha),
                    cell(&r.beta),
                    cell(&r.k),
                    r.lower_size,
                    r.upper_size,
                    r.lower.join(" "),
                    r.upper.join(" ")
                ));
            }
            s
        }
    };
    emit(out, &text)
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Result<()> {
    let ctx = Ctx {
        format: cli.format,
        mode: cli.residual_mode.into(),
        exec: if cli.threads == 1 {
            Execution::Sequential
        } else {
            Execution::Parallel
        },
    };
    match &cli.command {
        Command::Validate { file, no_gamma } => {
            no_gamma.refuse()?;
            cmd_validate(&ctx, file, out)
        }
        Command::Neigh {
            file,
            covering,
            target,
            no_gamma,
        } => {
            no_gamma.refuse()?;
            cmd_neigh(&ctx, file, covering.as_deref(), target.as_deref(), out)
        }
        Command::Approx(a) => cmd_eval(&ctx, EvalKind::Approx, a, out),
        Command::Regions(a) => cmd_eval(&ctx, EvalKind::Regions, a, out),
        Command::Mg(a) => cmd_eval(&ctx, EvalKind::Mg, a, out),
        Command::Check {
            file,
            random,
            seed,
            count,
            rounds,
            no_gamma,
        } => {
            no_gamma.refuse()?;
            cmd_check(&ctx, file.as_deref(), *random, *seed, *count, *rounds, out)
        }
        Command::Gen {
            n,
            m,
            members,
            gamma,
            seed,
            targets,
            steps,
            out: dest,
        } => cmd_gen(
            *n,
            *m,
            *members,
            gamma,
            *seed,
            *targets,
            *steps,
            dest.as_deref(),
            out,
        ),
        Command::Sweep {
            file,
            op,
            target,
            covering,
            alpha,
            beta,
            k,
            no_gamma,
        } => {
            no_gamma.refuse()?;
            cmd_sweep(
                &ctx,
                file,
                op,
                target,
                covering.as_deref(),
                alpha.as_deref(),
                beta.as_deref(),
                k.as_deref(),
                out,
            )
        }
    }
}

/// Runs one invocation and returns its exit code. Output goes to `out`,
/// diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut buffer = Vec::new();
    let result = if cli.threads == 1 {
        dispatch(&cli, &mut buffer)
    } else {
        match rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(&cli, &mut buffer)),
            Err(e) => Err(CliError::Parameter(format!("--threads: {e}"))),
        }
    };
    let result = result.and(out.write_all(&buffer).map_err(|source| CliError::Io {
        path: PathBuf::from("<stdout>"),
        source,
    }));
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
