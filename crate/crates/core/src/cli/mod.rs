//! Command-line front end. Every subcommand writes one CSV table.
//!
//! Exit codes: 0 success, 1 usage or domain error, 2 solver failure.

pub mod table;

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::model::{AlphaMode, Coupling, Mass, ModelTag, TwoBodyMasses};
use crate::radial::{self, RadialEquation, RadialSolveResult};
use crate::spectra::{self, BoundState1S};
use crate::wavepacket::{self, PacketSpec};
use crate::model::ALPHA_PAPER;
use crate::rsse;

pub use table::{compare_csv, format_number, Cell, Table};

#[derive(Debug, Parser)]
#[command(
    name = "relbound",
    version,
    about = "Hydrogenlike bound states, particle/antiparticle ingredient ratios and free packets",
    long_about = "Hydrogenlike bound states, particle/antiparticle ingredient ratios and free packets.\n\
                  Natural units (hbar = c = 1): masses, energies and inverse lengths share one unit.\n\
                  Output is CSV with a snake_case header."
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Fine-structure constant: paper = 1/137, codata = 1/137.035999084
    #[arg(long, global = true, value_enum, default_value_t = AlphaArg::Paper)]
    pub alpha: AlphaArg,
    /// Significant digits of every number written [1..=17]
    #[arg(long, global = true, default_value_t = 9, value_parser = clap::value_parser!(u8).range(1..=17))]
    pub precision: u8,
    /// Write the CSV here instead of standard output
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<std::path::PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaArg {
    Paper,
    Codata,
}

impl From<AlphaArg> for AlphaMode {
    fn from(a: AlphaArg) -> Self {
        match a {
            AlphaArg::Paper => AlphaMode::Paper,
            AlphaArg::Codata => AlphaMode::Codata,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BoundModel {
    Nonrel,
    Kg,
    Dirac,
}

impl From<BoundModel> for ModelTag {
    fn from(m: BoundModel) -> Self {
        match m {
            BoundModel::Nonrel => ModelTag::NonRelativistic,
            BoundModel::Kg => ModelTag::KleinGordon,
            BoundModel::Dirac => ModelTag::Dirac,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PacketModel {
    Kg,
    Dirac,
}

impl From<PacketModel> for ModelTag {
    fn from(m: PacketModel) -> Self {
        match m {
            PacketModel::Kg => ModelTag::KleinGordon,
            PacketModel::Dirac => ModelTag::Dirac,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Energy,
    Ratio,
    Both,
}

/// Nuclear charge, either as Z or as the coupling Z alpha.
#[derive(Debug, Clone, Copy, Args)]
#[group(required = true, multiple = false)]
pub struct ChargeArgs {
    /// Nuclear charge Z (dimensionless)
    #[arg(long)]
    pub z: Option<f64>,
    /// Coupling Z alpha (dimensionless)
    #[arg(long)]
    pub z_alpha: Option<f64>,
}

impl ChargeArgs {
    fn coupling(&self, alpha: f64) -> Result<Coupling> {
        match (self.z, self.z_alpha) {
            (Some(z), _) => Coupling::new(z, alpha),
            (_, Some(za)) => Coupling::from_z_alpha(za, alpha),
            _ => Err(Error::domain("give --z or --z-alpha")),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// 1S energy, binding energy and ingredient ratio from the closed forms
    Spectrum {
        /// Bound-state model
        #[arg(long, value_enum)]
        model: BoundModel,
        #[command(flatten)]
        charge: ChargeArgs,
        /// Rest mass m0 (mass units)
        #[arg(long, default_value_t = 1.0)]
        m0: f64,
    },
    /// E_1S/m0 and R_1S sampled on a uniform Z alpha grid
    Curve {
        /// Bound-state model
        #[arg(long, value_enum)]
        model: BoundModel,
        /// Columns to emit
        #[arg(long, value_enum, default_value_t = QuantityArg::Both)]
        quantity: QuantityArg,
        /// Number of grid points, endpoints included (>= 2)
        #[arg(long, default_value_t = 101)]
        steps: usize,
        /// Lower end of the Z alpha grid
        #[arg(long, default_value_t = 0.0)]
        za_min: f64,
        /// Upper end of the Z alpha grid [default: 0.5 for kg, 1 for dirac and nonrel]
        #[arg(long)]
        za_max: Option<f64>,
    },
    /// Boosted free packet profile in xi = m0 (z - v t)
    Packet {
        /// Wave equation of the packet
        #[arg(long, value_enum)]
        model: PacketModel,
        /// Boost velocity, |v| < 1 (units of c)
        #[arg(long)]
        v: f64,
        /// Momentum variance sigma in units of m0^2
        #[arg(long, default_value_t = 0.0025)]
        sigma_rel: f64,
        /// Number of xi samples (>= 5)
        #[arg(long, default_value_t = 2001)]
        points: usize,
        /// Lab time (units of 1/m0)
        #[arg(long, default_value_t = 0.0)]
        t: f64,
        /// Half-width of the xi window in standard deviations of rho
        #[arg(long, default_value_t = 8.0)]
        width: f64,
        /// Rest mass m0 (mass units)
        #[arg(long, default_value_t = 1.0)]
        m0: f64,
        /// Append the Klein-Gordon current j (per unit xi)
        #[arg(long)]
        current: bool,
    },
    /// Two-body RSSE state: reduced eigenvalue, binding and total energy
    Rsse {
        /// Nucleus mass (mass units, or `inf` for an inert nucleus)
        #[arg(long)]
        m1: Mass,
        /// Orbiting particle mass (mass units)
        #[arg(long)]
        m2: f64,
        #[command(flatten)]
        charge: ChargeArgs,
        /// Principal quantum number
        #[arg(long, default_value_t = 1)]
        n: u32,
        /// Centre-of-mass momentum (mass units)
        #[arg(long, default_value_t = 0.0)]
        p: f64,
    },
    /// Critical charge where E = 0, or the charge reaching a given binding
    CriticalZ {
        /// Nucleus mass (mass units, or `inf` for an inert nucleus)
        #[arg(long)]
        m1: Mass,
        /// Orbiting particle mass (mass units)
        #[arg(long)]
        m2: f64,
        /// Target binding energy B (mass units); omit for the critical charge
        #[arg(long)]
        binding: Option<f64>,
    },
    /// Shooting-method eigenvalue and radial ratio next to the closed forms
    Oracle {
        /// Radial equation
        #[arg(long, value_enum)]
        model: BoundModel,
        #[command(flatten)]
        charge: ChargeArgs,
        /// Rest (or reduced) mass (mass units)
        #[arg(long, default_value_t = 1.0)]
        m0: f64,
        /// Radial grid points (>= 1000)
        #[arg(long, default_value_t = 20000)]
        points: usize,
    },
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = e.print();
                    0
                }
                _ => {
                    eprintln!("relbound: {}", one_line(&e.to_string()));
                    1
                }
            };
        }
    };
    let digits = cli.global.precision as usize;
    match execute(&cli) {
        Ok(out) => {
            for note in &out.notes {
                eprintln!("relbound: {note}");
            }
            let text = out.table.render(digits);
            let written = match &cli.global.output {
                Some(path) => std::fs::write(path, text.as_bytes()),
                None => std::io::stdout().lock().write_all(text.as_bytes()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("relbound: cannot write output: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("relbound: {e}");
            if e.is_convergence() {
                2
            } else {
                1
            }
        }
    }
}

/// The message part of a clap error, folded onto one line.
fn one_line(text: &str) -> String {
    let words: Vec<&str> = text
        .lines()
        .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
        .map(|l| l.trim())
        .filter(|l| !l.is_empty())
        .collect();
    let joined = words.join(" ");
    joined.trim_start_matches("error: ").to_owned()
}

/// A table plus advisories for the error stream.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub table: Table,
    pub notes: Vec<String>,
}

impl From<Table> for Output {
    fn from(table: Table) -> Self {
        Output { table, notes: Vec::new() }
    }
}

/// Runs a parsed command without touching any stream.
pub fn execute(cli: &Cli) -> Result<Output> {
    let alpha = AlphaMode::from(cli.global.alpha).value();
    match &cli.command {
        Command::Spectrum { model, charge, m0 } => spectrum(*model, charge.coupling(alpha)?, *m0).map(Into::into),
        Command::Curve {
            model,
            quantity,
            steps,
            za_min,
            za_max,
        } => curve(*model, *quantity, *steps, *za_min, *za_max, alpha).map(Into::into),
        Command::Packet {
            model,
            v,
            sigma_rel,
            points,
            t,
            width,
            m0,
            current,
        } => packet((*model).into(), *v, *sigma_rel, *points, *t, *width, *m0, *current),
        Command::Rsse { m1, m2, charge, n, p } => {
            let masses = TwoBodyMasses::new(*m1, *m2)?;
            rsse_state(masses, charge.coupling(alpha)?, *n, *p)
        }
        Command::CriticalZ { m1, m2, binding } => {
            let masses = TwoBodyMasses::new(*m1, *m2)?;
            critical(masses, *binding, alpha)
        }
        Command::Oracle { model, charge, m0, points } => {
            oracle(*model, charge.coupling(alpha)?, *m0, *points).map(Into::into)
        }
    }
}

fn spectrum(model: BoundModel, coupling: Coupling, m0: f64) -> Result<Table> {
    let s = BoundState1S::evaluate(model.into(), coupling, m0)?;
    let mut t = Table::new(vec!["model", "z", "z_alpha", "energy", "binding", "ratio"]);
    t.push(vec![
        s.model.name().into(),
        coupling.z().into(),
        coupling.z_alpha().into(),
        s.energy.into(),
        s.binding.into(),
        s.ratio.into(),
    ]);
    Ok(t)
}

fn curve(
    model: BoundModel,
    quantity: QuantityArg,
    steps: usize,
    za_min: f64,
    za_max: Option<f64>,
    alpha: f64,
) -> Result<Table> {
    let tag = ModelTag::from(model);
    let za_max = za_max.unwrap_or_else(|| tag.critical_z_alpha().unwrap_or(1.0));
    if za_min < 0.0 {
        return Err(Error::domain(format!("--za-min must be >= 0, got {za_min}")));
    }
    let grid = spectra::uniform_grid(za_min, za_max, steps)?;
    // the normalised abscissa puts the model's critical charge at 1
    let (axis, z_ref): (&'static str, f64) = match model {
        BoundModel::Kg => ("z_over_68_5", 0.5 / ALPHA_PAPER),
        _ => ("z_over_137", 1.0 / ALPHA_PAPER),
    };
    let mut header = vec!["z_alpha", axis];
    if quantity != QuantityArg::Ratio {
        header.push("E_over_m0");
    }
    if quantity != QuantityArg::Energy {
        header.push("R");
    }
    let mut t = Table::new(header);
    for za in grid {
        let c = Coupling::from_z_alpha(za, alpha)?;
        let mut row: Vec<Cell> = vec![za.into(), (c.z() / z_ref).into()];
        if quantity != QuantityArg::Ratio {
            let e = match tag {
                ModelTag::NonRelativistic => 1.0 - spectra::nonrel_binding(c, 1, 1.0)?,
                _ => spectra::energy_1s(tag, c, 1.0)?,
            };
            row.push(e.into());
        }
        if quantity != QuantityArg::Energy {
            row.push(spectra::ratio_1s(tag, c)?.into());
        }
        t.push(row);
    }
    Ok(t)
}

#[allow(clippy::too_many_arguments)]
fn packet(
    model: ModelTag,
    v: f64,
    sigma_rel: f64,
    points: usize,
    t: f64,
    width: f64,
    m0: f64,
    current: bool,
) -> Result<Output> {
    let spec = PacketSpec::relative(sigma_rel, v, m0, t)?;
    if current && model != ModelTag::KleinGordon {
        return Err(Error::domain("--current is available for kg packets only"));
    }
    if !(width > 0.0) {
        return Err(Error::domain(format!("--width must be > 0, got {width}")));
    }
    if points < 5 {
        return Err(Error::domain(format!("--points must be >= 5, got {points}")));
    }
    let xi = wavepacket::default_xi_grid(&spec, points, width)?;
    let p = wavepacket::build_packet_with(model, &spec, &xi, &Default::default())?;
    let mut header = vec!["xi", "phi_sq", "chi_sq", "rho"];
    if current {
        header.push("j");
    }
    let mut table = Table::new(header);
    for i in 0..p.xi.len() {
        let mut row: Vec<Cell> = vec![p.xi[i].into(), p.phi_sq[i].into(), p.chi_sq[i].into(), p.rho[i].into()];
        if current {
            row.push(p.j[i].into());
        }
        table.push(row);
    }
    let mut notes = Vec::new();
    if !p.narrow {
        notes.push(format!(
            "sqrt(sigma) = {:.4} m0 is wider than m0/20; closed-form ratios are only indicative",
            sigma_rel.sqrt()
        ));
    }
    Ok(Output { table, notes })
}

fn rsse_state(masses: TwoBodyMasses, coupling: Coupling, n: u32, p: f64) -> Result<Output> {
    let s = rsse::RsseState::evaluate(masses, coupling, n, p)?;
    let mut table = Table::new(vec!["m1", "m2", "z", "n", "epsilon", "binding", "total_energy"]);
    let m1 = match masses.m1() {
        Mass::Finite(m) => Cell::Num(m),
        Mass::Infinite => Cell::Text("inf".into()),
    };
    table.push(vec![
        m1,
        masses.m2().into(),
        coupling.z().into(),
        (n as usize).into(),
        s.epsilon.into(),
        s.binding.into(),
        s.total_energy.into(),
    ]);
    Ok(Output {
        table,
        notes: rsse::applicability_advisory(masses).into_iter().collect(),
    })
}

fn critical(masses: TwoBodyMasses, binding: Option<f64>, alpha: f64) -> Result<Output> {
    let table = match binding {
        None => {
            let mut t = Table::new(vec!["z_c"]);
            t.push(vec![rsse::critical_charge(masses, alpha)?.into()]);
            t
        }
        Some(b) => {
            let mut t = Table::new(vec!["binding", "z"]);
            t.push(vec![b.into(), rsse::charge_for_binding(b, masses, alpha)?.into()]);
            t
        }
    };
    Ok(Output {
        table,
        notes: rsse::applicability_advisory(masses).into_iter().collect(),
    })
}

fn oracle(model: BoundModel, coupling: Coupling, m0: f64, points: usize) -> Result<Table> {
    let tag = ModelTag::from(model);
    let eq = match model {
        BoundModel::Nonrel => RadialEquation::Schrodinger { mu: m0 },
        BoundModel::Kg => RadialEquation::KleinGordon { m0 },
        BoundModel::Dirac => RadialEquation::Dirac { m0 },
    };
    let opts = radial::SolverOptions {
        n_points: points,
        ..Default::default()
    };
    let res: RadialSolveResult = radial::solve_ground(eq, coupling, &opts)?;
    let closed = match model {
        BoundModel::Nonrel => -spectra::nonrel_binding(coupling, 1, m0)?,
        _ => spectra::energy_1s(tag, coupling, m0)?,
    };
    let ratio_radial = radial::ratio_from_radial(&res, tag, m0, coupling)?;
    let ratio_closed = spectra::ratio_1s(tag, coupling)?;
    let mut t = Table::new(vec![
        "model",
        "z_alpha",
        "eigenvalue",
        "closed_form",
        "relative_error",
        "nodes",
        "residual",
        "ratio_radial",
        "ratio_closed",
    ]);
    t.push(vec![
        tag.name().into(),
        coupling.z_alpha().into(),
        res.eigenvalue.into(),
        closed.into(),
        ((res.eigenvalue - closed) / closed).abs().into(),
        res.node_count.into(),
        res.residual.into(),
        ratio_radial.into(),
        ratio_closed.into(),
    ]);
    Ok(t)
}
