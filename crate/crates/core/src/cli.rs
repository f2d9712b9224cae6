//! `cvrp-feas` command-line front end.
//!
//! Exit status is 0 on success, 1 on domain or I/O errors and 2 on usage
//! errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use crate::encoding::{
    estimate_from_params, estimate_instance, EncodingKind, EstimateOptions, LogMode,
    ResourceEstimate, SizeConvention, DEFAULT_LAYERS,
};
use crate::hardware::{classify, default_profiles, find_profile, load_profiles, HardwareProfile};
use crate::instance::{parse_instance, CvrpInstance, InstanceFlag};
use crate::qubo::{
    build_qubo, decode_routes, read_model, write_model, BruteForce, Penalty, QuboOptions,
    DEFAULT_MAX_VARS,
};
use crate::report::{
    feasibility_diagram, read_params, render_gap_table, render_resource_table, DiagramFormat,
    DiagramPoint, TableFormat, TableOptions, TABLE2_GAPS_CSV, TABLE3_PARAMS_CSV,
};
use crate::value::{impact_estimate, read_gap_records, GapDenominator};

#[derive(Debug, Parser)]
#[command(
    name = "cvrp-feas",
    about = "Quantum resource estimates and hardware feasibility for CVRP instances"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct EncodingArgs {
    #[arg(long, default_value = "hobo")]
    encoding: EncodingKind,
    #[arg(long, default_value = "strict")]
    convention: SizeConvention,
    #[arg(long, default_value_t = DEFAULT_LAYERS)]
    layers: u64,
}

impl EncodingArgs {
    fn options(&self, log_mode: LogMode) -> EstimateOptions {
        EstimateOptions::new(self.encoding)
            .convention(self.convention)
            .log_mode(log_mode)
            .layers(self.layers)
    }
}

#[derive(Debug, Args)]
struct ProfileArgs {
    /// Profile name from the registry.
    #[arg(long)]
    profile: String,
    /// JSON profile registry; the bundled defaults are used otherwise.
    #[arg(long)]
    profiles: Option<PathBuf>,
}

impl ProfileArgs {
    fn resolve(&self) -> Result<HardwareProfile> {
        let registry = match &self.profiles {
            Some(path) => load_profiles(&read(path)?)?,
            None => default_profiles(),
        };
        Ok(find_profile(&registry, &self.profile)?.clone())
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate an instance file and print a summary.
    Parse { file: PathBuf },
    /// Print the resource estimate for one encoding.
    Estimate {
        file: PathBuf,
        #[command(flatten)]
        enc: EncodingArgs,
        #[arg(long, default_value = "real")]
        log_mode: LogMode,
    },
    /// Classify an instance against a hardware profile.
    Classify {
        file: PathBuf,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        enc: EncodingArgs,
        #[arg(long, default_value = "ceil")]
        log_mode: LogMode,
    },
    /// Render the resource table for a `name,n,vehicles,capacity` file.
    Table {
        /// Defaults to the bundled instance list.
        params: Option<PathBuf>,
        #[arg(long, default_value = "table3")]
        convention: SizeConvention,
        #[arg(long, default_value = "real")]
        log_mode: LogMode,
        #[arg(long, default_value_t = DEFAULT_LAYERS)]
        layers: u64,
        #[arg(long, default_value = "text")]
        format: TableFormat,
    },
    /// Render optimality gaps for an `instance,bks,lower_bound` file.
    Gaps {
        /// Defaults to the bundled gap records.
        records: Option<PathBuf>,
        #[arg(long, default_value = "solution")]
        denominator: GapDenominator,
        #[arg(long, default_value = "text")]
        format: TableFormat,
    },
    /// Emit the feasibility map (SVG or CSV) for a params file.
    Diagram {
        params: Option<PathBuf>,
        #[command(flatten)]
        profile: ProfileArgs,
        #[command(flatten)]
        enc: EncodingArgs,
        #[arg(long, default_value = "ceil")]
        log_mode: LogMode,
        /// Inferred from the output extension when omitted.
        #[arg(long)]
        format: Option<DiagramFormat>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export the penalty QUBO of a small instance.
    Qubo {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        qubo: QuboArgs,
    },
    /// Brute-force a model file or a small instance file.
    Solve {
        input: PathBuf,
        #[command(flatten)]
        qubo: QuboArgs,
    },
    /// Fleet savings from a fractional mileage improvement.
    Value {
        #[arg(long)]
        km: f64,
        #[arg(long)]
        delta: f64,
        #[arg(long, default_value_t = 30.0)]
        l100: f64,
        #[arg(long, default_value_t = 1.0)]
        price: f64,
        #[arg(long, default_value_t = 2.6)]
        co2kg: f64,
    },
}

#[derive(Debug, Args)]
struct QuboArgs {
    #[arg(long, default_value = "auto")]
    penalty: Penalty,
    #[arg(long, default_value_t = DEFAULT_MAX_VARS)]
    max_vars: usize,
    /// Leave customer 2-cycles unpenalized.
    #[arg(long)]
    allow_two_cycles: bool,
}

impl QuboArgs {
    fn options(&self) -> QuboOptions {
        QuboOptions {
            penalty: self.penalty,
            eliminate_two_cycles: !self.allow_two_cycles,
            max_vars: self.max_vars,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_instance(path: &Path) -> Result<CvrpInstance> {
    parse_instance(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn write_estimate(out: &mut dyn Write, opts: &EstimateOptions, e: &ResourceEstimate) -> Result<()> {
    writeln!(out, "encoding: {}", e.encoding)?;
    writeln!(out, "convention: {}", opts.convention)?;
    writeln!(out, "log_mode: {}", opts.log_mode)?;
    writeln!(out, "layers: {}", opts.layers)?;
    writeln!(out, "qubits: {}", e.qubits)?;
    writeln!(out, "terms: {:.6e}", e.terms)?;
    writeln!(out, "depth: {}", e.depth)?;
    writeln!(out, "circuit_volume: {:.6e}", e.circuit_volume)?;
    writeln!(out, "measurements: {:.6e}", e.measurements)?;
    writeln!(out, "quantum_volume: {}", e.quantum_volume)?;
    writeln!(out, "error_rate_threshold: {:.3e}", e.error_rate_threshold)?;
    Ok(())
}

fn emit(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => out.write_all(text.as_bytes()).map_err(Into::into),
    }
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Parse { file } => {
            let inst = load_instance(&file)?;
            writeln!(out, "name: {}", inst.name)?;
            writeln!(out, "dimension: {}", inst.dimension)?;
            writeln!(out, "customers: {}", inst.customers)?;
            writeln!(out, "vehicles: {}", inst.vehicles)?;
            writeln!(out, "capacity: {}", inst.capacity)?;
            writeln!(out, "edge_weight_type: {}", inst.weight_kind.keyword())?;
            writeln!(out, "total_demand: {}", inst.total_demand())?;
            writeln!(out, "max_edge_weight: {}", inst.max_edge_weight())?;
            for flag in &inst.flags {
                let InstanceFlag::DemandExceedsCapacity { node, demand } = flag;
                writeln!(out, "warning: node {node} demand {demand} exceeds capacity")?;
            }
        }
        Command::Estimate {
            file,
            enc,
            log_mode,
        } => {
            let inst = load_instance(&file)?;
            let opts = enc.options(log_mode);
            let e = estimate_instance(&inst, &opts)?;
            writeln!(out, "instance: {}", inst.name)?;
            write_estimate(out, &opts, &e)?;
        }
        Command::Classify {
            file,
            profile,
            enc,
            log_mode,
        } => {
            let profile = profile.resolve()?;
            let inst = load_instance(&file)?;
            let opts = enc.options(log_mode);
            let e = estimate_instance(&inst, &opts)?;
            let v = classify(&e, &profile);
            writeln!(out, "instance: {}", inst.name)?;
            writeln!(
                out,
                "profile: {} (n_max={}, d_max={})",
                profile.name, profile.n_max, profile.d_max
            )?;
            write_estimate(out, &opts, &e)?;
            writeln!(out, "qubit_ok: {}", v.qubit_ok)?;
            writeln!(out, "depth_ok: {}", v.depth_ok)?;
            writeln!(out, "qubit_margin: {:.6}", v.qubit_margin)?;
            writeln!(out, "depth_margin: {:.6}", v.depth_margin)?;
            writeln!(
                out,
                "verdict: {}",
                if v.feasible { "feasible" } else { "infeasible" }
            )?;
        }
        Command::Table {
            params,
            convention,
            log_mode,
            layers,
            format,
        } => {
            let text = match params {
                Some(p) => read(&p)?,
                None => TABLE3_PARAMS_CSV.to_string(),
            };
            let opts = TableOptions {
                convention,
                log_mode,
                layers,
            };
            out.write_all(render_resource_table(&read_params(&text)?, &opts, format)?.as_bytes())?;
        }
        Command::Gaps {
            records,
            denominator,
            format,
        } => {
            let text = match records {
                Some(p) => read(&p)?,
                None => TABLE2_GAPS_CSV.to_string(),
            };
            let recs = read_gap_records(&text, denominator)?;
            writeln!(out, "# denominator={denominator}")?;
            out.write_all(render_gap_table(&recs, format).as_bytes())?;
        }
        Command::Diagram {
            params,
            profile,
            enc,
            log_mode,
            format,
            out: out_path,
        } => {
            let profile = profile.resolve()?;
            let text = match params {
                Some(p) => read(&p)?,
                None => TABLE3_PARAMS_CSV.to_string(),
            };
            let opts = enc.options(log_mode);
            let points = read_params(&text)?
                .iter()
                .map(|p| {
                    let e = estimate_from_params(p.n, p.vehicles, p.capacity, 1, &opts)?;
                    Ok(DiagramPoint::from_estimate(p.name.clone(), &e, &profile))
                })
                .collect::<Result<Vec<_>>>()?;
            let format =
                format.unwrap_or_else(|| match out_path.as_ref().and_then(|p| p.extension()) {
                    Some(ext) if ext.eq_ignore_ascii_case("csv") => DiagramFormat::Csv,
                    _ => DiagramFormat::Svg,
                });
            let doc = feasibility_diagram(&points, &profile, format)?;
            emit(out, out_path.as_deref(), &doc)?;
        }
        Command::Qubo {
            file,
            out: out_path,
            qubo,
        } => {
            let inst = load_instance(&file)?;
            let model = build_qubo(&inst, &qubo.options())?;
            let text = write_model(&model);
            match out_path {
                Some(p) => {
                    emit(out, Some(&p), &text)?;
                    let (l, q) = model.count_terms();
                    writeln!(
                        out,
                        "wrote {}: {} variables, {l} linear, {q} quadratic, penalty {}",
                        p.display(),
                        model.num_vars,
                        model.penalty
                    )?;
                }
                None => out.write_all(text.as_bytes())?,
            }
        }
        Command::Solve { input, qubo } => {
            let text = read(&input)?;
            let solver = BruteForce {
                max_vars: qubo.max_vars,
                ..Default::default()
            };
            let is_model = text
                .lines()
                .map(str::trim)
                .find(|l| !l.is_empty() && !l.starts_with('#'))
                .is_some_and(|l| l.starts_with("QUBO"));
            if is_model {
                let model = read_model(&text)?;
                let (x, e) = solver.solve(&model)?;
                writeln!(out, "assignment: {x}")?;
                writeln!(out, "energy: {e}")?;
            } else {
                let inst = parse_instance(&text)
                    .with_context(|| format!("parsing {}", input.display()))?;
                let model = build_qubo(&inst, &qubo.options())?;
                let (x, e) = solver.solve(&model)?;
                let d = decode_routes(&model, &x, &inst)?;
                writeln!(out, "assignment: {x}")?;
                writeln!(out, "energy: {e}")?;
                for (v, r) in d.routes.iter().enumerate() {
                    let path: Vec<String> = r.iter().map(usize::to_string).collect();
                    writeln!(out, "route {v}: {}", path.join(" -> "))?;
                }
                writeln!(out, "cost: {}", d.cost)?;
                if d.is_valid() {
                    writeln!(out, "violations: none")?;
                } else {
                    for viol in &d.violations {
                        writeln!(out, "violation: {viol}")?;
                    }
                }
            }
        }
        Command::Value {
            km,
            delta,
            l100,
            price,
            co2kg,
        } => {
            let e = impact_estimate(km, delta, l100, price, co2kg)?;
            writeln!(out, "baseline_km {}", e.baseline_km)?;
            writeln!(out, "improvement {}", e.improvement)?;
            writeln!(out, "km_saved {}", e.km_saved)?;
            writeln!(out, "litres_saved {}", e.litres_saved)?;
            writeln!(out, "fuel_cost_saved {}", e.fuel_cost_saved)?;
            writeln!(out, "co2_saved_tonnes {}", e.co2_saved_tonnes)?;
        }
    }
    Ok(())
}

/// Runs the CLI with explicit output streams and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match execute(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            1
        }
    }
}

pub fn cli_main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
