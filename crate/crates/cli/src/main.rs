//! Batch front-end: loads a rack/traffic config, dispatches subcommands,
//! and writes machine-readable reports plus a stdout summary.

mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use config::{FabricChoice, RunConfig};
use models::{
    chip_increase_fraction, fec_evaluate, iso_performance, latency_budget, power_total, FabricTech,
};
use output::{csv_of, print_table, OutputFormat, Reporter};
use rack_builder::{direct_path_matrix, RackError};
use sim_engine::{run_traced, SimConfig};

#[derive(Parser)]
#[command(
    name = "photonrack",
    version,
    about = "Photonic disaggregated-rack toolkit"
)]
struct Cli {
    /// Configuration file; missing sections fall back to study defaults.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Simulation seed override.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Fabric override: awgr (case A) or wss (case B).
    #[arg(long, global = true, value_enum)]
    fabric: Option<FabricChoice>,

    /// Report output directory.
    #[arg(long, global = true, default_value = "reports")]
    out: PathBuf,

    /// Report format; csv adds summary tables next to the JSON.
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Fold the rack's chips into MCMs under escape-bandwidth parity.
    Pack,
    /// Direct-path bandwidth guarantees of the configured fabric.
    DirectBw,
    /// Run the flow-level simulator.
    Simulate {
        /// Simulated horizon in seconds.
        #[arg(long)]
        horizon: Option<f64>,
        /// Use the constructed worst-case GPU traffic pattern.
        #[arg(long)]
        worst_case_gpu: bool,
        /// Write a line-delimited routing-event trace to this file.
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Fabric power totals.
    Power,
    /// Added-latency budget between two modules.
    Latency {
        #[arg(long, default_value = "photonic")]
        tech: String,
        /// Fiber distance in meters.
        #[arg(long, default_value_t = 4.0)]
        distance: f64,
        /// Relayed hops beyond the direct path.
        #[arg(long, default_value_t = 0)]
        extra_hops: u32,
    },
    /// Iso-performance module counts.
    Iso {
        /// Also report the chip increase of adding compute to a fixed rack.
        #[arg(long)]
        added_chips: Option<u64>,
    },
    /// Link FEC error model.
    Fec {
        #[arg(long)]
        raw_ber: Option<f64>,
    },
    /// Print the effective (defaults-merged) configuration as TOML.
    DumpConfig,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            if is_infeasible(&err) {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Configuration problems (a chip that cannot be packed, a fabric that does
/// not fit its switches) exit 2; everything else is an internal error.
fn is_infeasible(err: &anyhow::Error) -> bool {
    err.chain().any(|cause| {
        matches!(
            cause.downcast_ref::<RackError>(),
            Some(
                RackError::InfeasiblePacking { .. }
                    | RackError::CapacityExceeded { .. }
                    | RackError::TooFewMcmsForWss { .. }
            )
        )
    })
}

fn dispatch(cli: &Cli) -> anyhow::Result<()> {
    let mut config = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::study_defaults(),
    };
    if let Some(seed) = cli.seed {
        config.sim.seed = seed;
    }
    if let Some(fabric) = cli.fabric {
        config.fabric.kind = fabric;
    }
    let out_dir = config.output_dir.clone().unwrap_or_else(|| cli.out.clone());
    let reporter = Reporter::new(out_dir, cli.format);

    match &cli.command {
        Command::Pack => cmd_pack(&config, &reporter),
        Command::DirectBw => cmd_direct_bw(&config, &reporter),
        Command::Simulate {
            horizon,
            worst_case_gpu,
            trace,
        } => cmd_simulate(&mut config, &reporter, *horizon, *worst_case_gpu, trace),
        Command::Power => cmd_power(&config, &reporter),
        Command::Latency {
            tech,
            distance,
            extra_hops,
        } => cmd_latency(&config, &reporter, tech, *distance, *extra_hops),
        Command::Iso { added_chips } => cmd_iso(&config, &reporter, *added_chips),
        Command::Fec { raw_ber } => cmd_fec(&config, &reporter, *raw_ber),
        Command::DumpConfig => {
            println!("{}", config.to_toml());
            Ok(())
        }
    }
}

fn cmd_pack(config: &RunConfig, reporter: &Reporter) -> anyhow::Result<()> {
    let table = config.pack()?;
    let rows: Vec<(String, String)> = table
        .rows
        .iter()
        .map(|r| {
            (
                r.chip_type.to_string(),
                format!("{:>3} per MCM x {:>3} MCMs", r.chips_per_mcm, r.mcm_count),
            )
        })
        .chain(std::iter::once((
            "total".to_string(),
            format!("{} MCMs", table.total_mcms),
        )))
        .collect();
    print_table("MCM packing", &rows);
    let csv = csv_of(
        "chip_type,chips_per_mcm,mcm_count",
        &table
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.chip_type.to_string(),
                    r.chips_per_mcm.to_string(),
                    r.mcm_count.to_string(),
                ]
            })
            .collect::<Vec<_>>(),
    );
    reporter.emit("pack", &table, Some(csv))
}

#[derive(Serialize)]
struct DirectBwReport {
    fabric: FabricChoice,
    mcm_count: usize,
    switch_count: usize,
    unconnected_ports: usize,
    min_wavelengths: Option<u32>,
    max_wavelengths: Option<u32>,
    min_gbps: Option<f64>,
    mean_gbps: Option<f64>,
    /// Per class, the probability that the minimum direct bandwidth covers
    /// the configured demand distribution.
    direct_suffices: std::collections::BTreeMap<sim_engine::FlowClass, f64>,
}

fn cmd_direct_bw(config: &RunConfig, reporter: &Reporter) -> anyhow::Result<()> {
    let plan = config.build_plan(config.fabric.kind)?;
    let matrix = direct_path_matrix(&plan);
    let profile = config.traffic_profile(&plan)?;
    let report = DirectBwReport {
        fabric: config.fabric.kind,
        mcm_count: plan.mcm_count,
        switch_count: plan.switch_count,
        unconnected_ports: plan.unconnected_ports(),
        min_wavelengths: matrix.min_count(),
        max_wavelengths: matrix.max_count(),
        min_gbps: matrix.min_gbps(),
        mean_gbps: matrix
            .mean_count()
            .map(|c| c * plan.switch.gbps_per_wavelength),
        direct_suffices: sim_engine::percentile_feasibility(&matrix, &profile),
    };
    reporter.emit("topology_plan", &plan, None)?;
    print_table(
        "direct path bandwidth",
        &[
            ("fabric".into(), format!("{:?}", report.fabric)),
            ("mcms".into(), report.mcm_count.to_string()),
            ("switches".into(), report.switch_count.to_string()),
            (
                "min direct".into(),
                format!(
                    "{} wavelengths = {} Gbps",
                    report.min_wavelengths.unwrap_or(0),
                    report.min_gbps.unwrap_or(0.0)
                ),
            ),
            (
                "mean direct".into(),
                format!("{:.1} Gbps", report.mean_gbps.unwrap_or(0.0)),
            ),
        ],
    );
    for (class, p) in &report.direct_suffices {
        println!("  direct suffices for {class}: {:.2}%", p * 100.0);
    }
    let csv = csv_of(
        "fabric,mcm_count,switch_count,min_gbps,mean_gbps",
        &[vec![
            format!("{:?}", report.fabric),
            report.mcm_count.to_string(),
            report.switch_count.to_string(),
            report.min_gbps.unwrap_or(0.0).to_string(),
            report.mean_gbps.unwrap_or(0.0).to_string(),
        ]],
    );
    reporter.emit("direct_bw", &report, Some(csv))
}

fn cmd_simulate(
    config: &mut RunConfig,
    reporter: &Reporter,
    horizon: Option<f64>,
    worst_case_gpu: bool,
    trace: &Option<PathBuf>,
) -> anyhow::Result<()> {
    if let Some(horizon) = horizon {
        config.sim.horizon_s = horizon;
    }
    if worst_case_gpu {
        config.traffic.worst_case_gpu = true;
    }
    let plan = config.build_plan(config.fabric.kind)?;
    let profile = config.traffic_profile(&plan)?;
    let sim_config: SimConfig = config.sim_config();
    let (report, events) = run_traced(&plan, &profile, &sim_config)?;

    if let Some(path) = trace {
        let mut lines = String::new();
        for event in &events {
            lines.push_str(&serde_json::to_string(event)?);
            lines.push('\n');
        }
        std::fs::write(path, lines)?;
        println!("trace: {}", path.display());
    }

    let mut rows = vec![
        ("seed".to_string(), report.seed.to_string()),
        ("digest".to_string(), report.config_digest.clone()),
        ("flows".to_string(), report.flows_arrived.to_string()),
        (
            "offered".to_string(),
            format!("{:.1} Gbps", report.offered_gbps),
        ),
        (
            "delivered".to_string(),
            format!("{:.1} Gbps", report.delivered_gbps),
        ),
        (
            "indirect".to_string(),
            format!("{:.2}%", report.indirect_fraction * 100.0),
        ),
        ("fallbacks".to_string(), report.fallback_events.to_string()),
        (
            "violations".to_string(),
            report.capacity_violations.to_string(),
        ),
    ];
    if let Some(stats) = &report.gpu_worst_case {
        rows.push((
            "gpu-gpu delivered".to_string(),
            format!("{:.1} Gbps per GPU MCM", stats.min_gpu_gpu_delivered_gbps),
        ));
        rows.push((
            "per-GPU headroom".to_string(),
            format!("{:.1} GB/s", stats.per_gpu_headroom_gbyte_s),
        ));
    }
    print_table("simulation", &rows);
    reporter.emit("sim_report", &report, Some(report.to_csv_summary()))
}

fn cmd_power(config: &RunConfig, reporter: &Reporter) -> anyhow::Result<()> {
    let plan = config.build_plan(config.fabric.kind)?;
    let model = power_total(
        plan.mcm_count as u64,
        config.mcm.total_wavelengths() as u64,
        plan.switch_count as u64,
        &config.power,
    );
    print_table(
        "fabric power",
        &[
            ("lasers".into(), format!("{:.1} kW", model.laser_w / 1e3)),
            (
                "modulators".into(),
                format!("{:.1} kW", model.modulator_w / 1e3),
            ),
            (
                "receivers".into(),
                format!("{:.1} kW", model.receiver_w / 1e3),
            ),
            ("switches".into(), format!("{:.1} kW", model.switch_w / 1e3)),
            ("total".into(), format!("{:.1} kW", model.total_kw())),
        ],
    );
    let csv = csv_of(
        "laser_w,modulator_w,receiver_w,switch_w,total_w",
        &[vec![
            model.laser_w.to_string(),
            model.modulator_w.to_string(),
            model.receiver_w.to_string(),
            model.switch_w.to_string(),
            model.total_w.to_string(),
        ]],
    );
    reporter.emit("power", &model, Some(csv))
}

fn cmd_latency(
    config: &RunConfig,
    reporter: &Reporter,
    tech: &str,
    distance: f64,
    extra_hops: u32,
) -> anyhow::Result<()> {
    let tech: FabricTech = tech.parse()?;
    let budget = latency_budget(distance, extra_hops, tech, &config.latency);
    print_table(
        "added latency",
        &[
            ("tech".into(), format!("{tech:?}")),
            (
                "propagation".into(),
                format!("{} ns", budget.propagation_ns),
            ),
            ("conversion".into(), format!("{} ns", budget.oeo_ns)),
            ("fec".into(), format!("{} ns", budget.fec_ns)),
            (
                "switch hops".into(),
                format!("{} x {} ns", budget.hops, budget.switch_hop_ns),
            ),
            ("total".into(), format!("{} ns", budget.total_ns)),
        ],
    );
    reporter.emit("latency", &budget, None)
}

fn cmd_iso(
    config: &RunConfig,
    reporter: &Reporter,
    added_chips: Option<u64>,
) -> anyhow::Result<()> {
    let report = iso_performance(&config.iso);
    let mut rows = vec![
        (
            "cpus".to_string(),
            format!("{} -> {}", config.iso.baseline_cpus, report.cpus),
        ),
        (
            "gpus".to_string(),
            format!("{} -> {}", config.iso.baseline_gpus, report.gpus),
        ),
        (
            "memory".to_string(),
            format!(
                "{} -> {}",
                config.iso.baseline_memory_modules, report.memory_modules
            ),
        ),
        (
            "nics".to_string(),
            format!("{} -> {}", config.iso.baseline_nics, report.nics),
        ),
        (
            "total".to_string(),
            format!(
                "{} -> {} ({:.1}% reduction)",
                report.baseline_total,
                report.disaggregated_total,
                report.reduction_fraction * 100.0
            ),
        ),
    ];
    if let Some(added) = added_chips {
        let f = chip_increase_fraction(added, &config.iso);
        rows.push((
            "alt: add compute".to_string(),
            format!("+{added} chips = {:.0}% increase", f * 100.0),
        ));
    }
    print_table("iso-performance", &rows);
    reporter.emit("iso", &report, None)
}

fn cmd_fec(config: &RunConfig, reporter: &Reporter, raw_ber: Option<f64>) -> anyhow::Result<()> {
    let raw = raw_ber.unwrap_or(config.fec.default_raw_ber);
    let model = fec_evaluate(raw);
    print_table(
        "fec",
        &[
            ("raw flit BER".into(), format!("{:e}", model.raw_ber)),
            ("flit failure".into(), format!("{:e}", model.flit_failure)),
            ("latency".into(), format!("{} ns", model.latency_ns)),
            (
                "meets memory target".into(),
                model.meets_memory_target.to_string(),
            ),
        ],
    );
    reporter.emit("fec", &model, None)
}
