//! Command-line front end: every subcommand parses flags, calls the library,
//! and serializes the result. No arithmetic lives here.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gaesim::harness::io::{csv_table, GaeOutput};
use gaesim::harness::{
    generate_streams, parse_trajectories, quant_sweep, report_hw_with, run_variant, FidelityReport,
    PhaseProfile, ReportOptions, SpeedupReport, StreamKind, StreamSpec,
};
use gaesim::{
    compute_advantages, DatapathVariant, GaeParams, LayoutConfig, PipelineConfig, QuantScheme,
    SystolicConfig,
};

#[derive(Parser)]
#[command(
    name = "gaesim",
    version,
    about = "Advantage-estimation datapath experiments and accelerator performance reports"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Json,
    Csv,
}

#[derive(Args)]
struct StreamArgs {
    /// Synthetic stream shape: stationary-normal, drifting-mean,
    /// drifting-scale or heavy-tail.
    #[arg(long, default_value = "stationary-normal")]
    kind: String,

    /// RNG seed (ChaCha8); identical seeds give bit-identical streams.
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Trajectories per batch.
    #[arg(long, default_value_t = 64)]
    traj: usize,

    /// Timesteps per trajectory.
    #[arg(long, default_value_t = 1024)]
    steps: usize,
}

impl StreamArgs {
    fn spec(&self) -> Result<StreamSpec, gaesim::Error> {
        Ok(StreamSpec::new(
            StreamKind::parse(&self.kind)?,
            self.traj,
            self.steps,
            self.seed,
        ))
    }
}

#[derive(Args)]
struct GaeParamArgs {
    /// Discount factor.
    #[arg(long, default_value_t = 0.99)]
    gamma: f64,

    /// Advantage smoothing factor.
    #[arg(long, default_value_t = 0.95)]
    lambda: f64,
}

impl GaeParamArgs {
    fn params(&self) -> Result<GaeParams, gaesim::Error> {
        GaeParams::new(self.gamma, self.lambda)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute advantages and rewards-to-go for a trajectory file.
    Gae {
        /// JSON array of {"rewards": [...], "values": [...], "bootstrap": n}.
        #[arg(long)]
        input: PathBuf,

        #[command(flatten)]
        params: GaeParamArgs,
    },

    /// Run one (or all) of the five datapath variants on synthetic streams.
    Variant {
        /// Variant index 1..=5; omit to run all five.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        variant: Option<u8>,

        #[command(flatten)]
        streams: StreamArgs,

        #[command(flatten)]
        params: GaeParamArgs,

        /// Quantizer bit width.
        #[arg(long, default_value_t = 8)]
        bits: u32,

        /// Quantizer half-range in standardized units.
        #[arg(long, default_value_t = 4.0)]
        range: f64,
    },

    /// Fidelity sweep over quantizer bit widths.
    Sweep {
        #[arg(long, default_value_t = 3)]
        bits_min: u32,

        #[arg(long, default_value_t = 10)]
        bits_max: u32,

        /// Quantizer half-range in standardized units.
        #[arg(long, default_value_t = 4.0)]
        range: f64,

        #[command(flatten)]
        streams: StreamArgs,

        #[command(flatten)]
        params: GaeParamArgs,
    },

    /// Cycle, throughput, and speedup report for the accelerator.
    Hw {
        /// Lookahead depth of the PE feedback loop.
        #[arg(long, default_value_t = 2)]
        k: usize,

        /// Registered depth of the multiply-accumulate feedback path.
        #[arg(long, default_value_t = 2)]
        feedback_latency: u64,

        /// Fetch/dequantize/residual stages ahead of the loop.
        #[arg(long, default_value_t = 4)]
        frontend_latency: u64,

        /// Clock frequency in Hz.
        #[arg(long, default_value_t = 3.0e8)]
        clock: f64,

        /// Systolic rows (PEs).
        #[arg(long, default_value_t = 64)]
        rows: usize,

        #[arg(long, default_value_t = 64)]
        traj: usize,

        #[arg(long, default_value_t = 1024)]
        steps: usize,

        /// Stored element width in bits (8, 16 or 32).
        #[arg(long, default_value_t = 8)]
        bits: u32,
    },

    /// Bandwidth, storage, and BRAM accounting for the memory layout.
    Mem {
        #[arg(long, default_value_t = 64)]
        traj: usize,

        #[arg(long, default_value_t = 1024)]
        steps: usize,

        /// Stored element width in bits (8, 16 or 32).
        #[arg(long, default_value_t = 8)]
        bits: u32,

        /// Result width in bits; defaults to the element width.
        #[arg(long)]
        writeback_bits: Option<u32>,

        /// Keep results in separate banks instead of overwriting in place.
        #[arg(long)]
        separate_banks: bool,

        /// Clock frequency in Hz (for the DRAM bytes/cycle comparison).
        #[arg(long, default_value_t = 3.0e8)]
        clock: f64,
    },

    /// Phase-profile speedup model over the bundled time breakdowns.
    Profile {
        /// Which bundled profile to use: cpu-gpu or cpu.
        #[arg(long, default_value = "cpu-gpu")]
        system: String,

        /// Phase or sub-phase to eliminate entirely (repeatable).
        #[arg(long)]
        eliminate: Vec<String>,

        /// NAME=FACTOR acceleration (repeatable); FACTOR may be "inf".
        #[arg(long, value_parser = parse_factor)]
        factor: Vec<(String, f64)>,
    },
}

fn parse_factor(s: &str) -> Result<(String, f64), String> {
    let (name, factor) = s
        .split_once('=')
        .ok_or_else(|| format!("expected NAME=FACTOR, got '{s}'"))?;
    let factor = match factor {
        "inf" | "infinity" => f64::INFINITY,
        other => other
            .parse::<f64>()
            .map_err(|e| format!("bad factor '{other}': {e}"))?,
    };
    Ok((name.to_string(), factor))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}

type AnyError = Box<dyn std::error::Error>;

fn run(cli: &Cli) -> Result<(), AnyError> {
    let text = match &cli.command {
        Command::Gae { input, params } => {
            let params = params.params()?;
            let trajectories = parse_trajectories(&fs::read_to_string(input)?)?;
            let results = trajectories
                .iter()
                .map(|t| compute_advantages(t, &params))
                .collect::<Result<Vec<_>, _>>()?;
            let output = GaeOutput::new(params.gamma(), params.lambda(), results);
            match cli.format {
                OutputFormat::Json => to_json(&output)?,
                OutputFormat::Csv => output.to_csv()?,
            }
        }

        Command::Variant {
            variant,
            streams,
            params,
            bits,
            range,
        } => {
            let spec = streams.spec()?;
            let batch = generate_streams(&spec)?;
            let scheme = QuantScheme::new(*bits, *range)?;
            let params = params.params()?;
            let variants: Vec<DatapathVariant> = match variant {
                Some(i) => vec![DatapathVariant::from_index(*i)?],
                None => DatapathVariant::all().to_vec(),
            };
            let reports = variants
                .into_iter()
                .map(|v| run_variant(&batch, v, &scheme, &params))
                .collect::<Result<Vec<_>, _>>()?;
            fidelity_output(&reports, cli.format)?
        }

        Command::Sweep {
            bits_min,
            bits_max,
            range,
            streams,
            params,
        } => {
            let spec = streams.spec()?;
            let batch = generate_streams(&spec)?;
            let params = params.params()?;
            let bits: Vec<u32> = (*bits_min..=*bits_max).collect();
            let reports = quant_sweep(&batch, &bits, *range, &params)?;
            fidelity_output(&reports, cli.format)?
        }

        Command::Hw {
            k,
            feedback_latency,
            frontend_latency,
            clock,
            rows,
            traj,
            steps,
            bits,
        } => {
            let pipeline = PipelineConfig::new(*k, *feedback_latency, *frontend_latency, *clock)?;
            let cfg = SystolicConfig::new(*rows, pipeline)?;
            let layout = LayoutConfig::new(*traj, *steps, *bits, *bits, true)?;
            let report = report_hw_with(
                &cfg,
                &layout,
                &gaesim::BramGeometry::default(),
                &ReportOptions::default(),
            );
            match cli.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => csv_table(
                    &gaesim::harness::HwReport::csv_header(),
                    &[report.csv_row()],
                )?,
            }
        }

        Command::Mem {
            traj,
            steps,
            bits,
            writeback_bits,
            separate_banks,
            clock,
        } => {
            let layout = LayoutConfig::new(
                *traj,
                *steps,
                *bits,
                writeback_bits.unwrap_or(*bits),
                !separate_banks,
            )?;
            let report = gaesim::harness::report_mem(
                &layout,
                &gaesim::BramGeometry::default(),
                *clock,
                &ReportOptions::default(),
            );
            match cli.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => csv_table(
                    &gaesim::harness::MemReport::csv_header(),
                    &[report.csv_row()],
                )?,
            }
        }

        Command::Profile {
            system,
            eliminate,
            factor,
        } => {
            let profile = match system.as_str() {
                "cpu-gpu" => PhaseProfile::cpu_gpu(),
                "cpu" => PhaseProfile::cpu_only(),
                other => {
                    return Err(
                        format!("unknown system '{other}' (expected cpu-gpu or cpu)").into(),
                    )
                }
            };
            let mut accelerations: Vec<(String, f64)> = eliminate
                .iter()
                .map(|name| (name.clone(), f64::INFINITY))
                .collect();
            accelerations.extend(factor.iter().cloned());
            if accelerations.is_empty() {
                // Headline analysis: drop the advantage phase entirely.
                accelerations.push(("GAE".to_string(), f64::INFINITY));
            }
            let borrowed: Vec<(&str, f64)> = accelerations
                .iter()
                .map(|(name, f)| (name.as_str(), *f))
                .collect();
            let report = SpeedupReport::build(&profile, &borrowed)?;
            match cli.format {
                OutputFormat::Json => to_json(&report)?,
                OutputFormat::Csv => speedup_csv(&report)?,
            }
        }
    };

    match &cli.out {
        Some(path) => fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, AnyError> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

fn fidelity_output(reports: &[FidelityReport], format: OutputFormat) -> Result<String, AnyError> {
    Ok(match format {
        OutputFormat::Json => to_json(&reports)?,
        OutputFormat::Csv => {
            let header = [
                "label",
                "variant",
                "bits",
                "range",
                "reward_mse",
                "value_mse",
                "advantage_mse",
                "rtg_mse",
            ];
            let rows: Vec<Vec<String>> = reports
                .iter()
                .map(|r| {
                    vec![
                        r.label.clone(),
                        r.variant.to_string(),
                        r.bits.to_string(),
                        r.range.to_string(),
                        r.reward_mse.to_string(),
                        r.value_mse.to_string(),
                        r.advantage_mse.to_string(),
                        r.rtg_mse.to_string(),
                    ]
                })
                .collect();
            csv_table(&header, &rows)?
        }
    })
}

fn speedup_csv(report: &SpeedupReport) -> Result<String, AnyError> {
    let factors = report
        .factors
        .iter()
        .map(|f| {
            if f.eliminated {
                format!("{}=inf", f.name)
            } else {
                format!("{}={}", f.name, f.factor)
            }
        })
        .collect::<Vec<_>>()
        .join(";");
    let header = [
        "system",
        "factors",
        "new_time_fraction",
        "speedup",
        "time_reduction_percent",
        "memory_time_percent",
        "memory_time_claim_percent",
    ];
    let row = vec![
        report.system.clone(),
        factors,
        report.new_time_fraction.to_string(),
        report.speedup.to_string(),
        report.time_reduction_percent.to_string(),
        report.memory_time_percent.to_string(),
        report.memory_time_claim_percent.to_string(),
    ];
    Ok(csv_table(&header, &[row])?)
}
