use num_complex::Complex64;
use serde::Serialize;

use planewave_core::dirac::{
    averaged_linear_relation, solve_dirac, theta_residual, EMPotentialField, SpinorField, DIRAC_TOLERANCE,
};
use planewave_core::momentum::extract_amplitudes;
use planewave_core::schrodinger::{
    coulomb_radial_potential, radial_grid, solve_eigen, solve_hydrogen_radial, KineticOperator,
    PotentialField,
};
use planewave_core::verify::averaged_vs_pointwise_with;
use planewave_core::{UniformGrid, WaveFunction};

use crate::config::{Problem, RunConfig};
use crate::error::CliError;

/// Hartree to electronvolt.
pub const HARTREE_TO_EV: f64 = 27.211386245988;

pub const TOP_MODES: usize = 5;

/// States to be checked, with everything needed to check them.
#[derive(Debug, Clone)]
pub enum StateSet {
    Scalar {
        potential: PotentialField,
        mass: f64,
        kinetic: KineticOperator,
        states: Vec<WaveFunction>,
    },
    Dirac {
        potential: EMPotentialField,
        mass: f64,
        c: f64,
        states: Vec<SpinorField>,
    },
}

impl StateSet {
    pub fn grid(&self) -> &UniformGrid {
        match self {
            StateSet::Scalar { potential, .. } => potential.grid(),
            StateSet::Dirac { potential, .. } => potential.grid(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            StateSet::Scalar { states, .. } => states.len(),
            StateSet::Dirac { states, .. } => states.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn make_grid(cfg: &RunConfig) -> Result<UniformGrid, CliError> {
    let g = cfg.grid;
    let grid = match cfg.problem {
        Problem::HydrogenRadial => radial_grid(g.n, g.extent),
        _ => UniformGrid::new(g.dim, g.n, g.extent),
    };
    grid.map_err(|e| CliError::Config(format!("grid: {e}")))
}

pub fn scalar_potential(cfg: &RunConfig) -> Result<PotentialField, CliError> {
    let grid = make_grid(cfg)?;
    let p = &cfg.potential;
    let field = match p.name.as_str() {
        "free" => Ok(PotentialField::free(grid)),
        "constant" => PotentialField::constant(grid, p.param("value")),
        "harmonic" => PotentialField::harmonic(grid, p.param("omega"), cfg.mass),
        "box" => PotentialField::square_box(grid, p.param("width"), p.param("height")),
        "well" => {
            let (depth, half) = (p.param("depth"), 0.5 * p.param("width"));
            PotentialField::from_fn(grid, "well", |r| {
                if r[..grid.dim()].iter().all(|x| x.abs() < half) {
                    -depth
                } else {
                    0.0
                }
            })
        }
        "soft-coulomb" => PotentialField::soft_coulomb(grid, p.param("eps")),
        "coulomb" => coulomb_radial_potential(grid),
        other => return Err(CliError::Config(format!("potential: `{other}` is not a scalar potential"))),
    };
    field.map_err(|e| CliError::Config(format!("potential: {e}")))
}

pub fn em_potential(cfg: &RunConfig) -> Result<EMPotentialField, CliError> {
    let grid = make_grid(cfg)?;
    let p = &cfg.potential;
    let field = match p.name.as_str() {
        "dirac-free" => EMPotentialField::free(grid, cfg.charge),
        "dirac-well" => EMPotentialField::square_well(grid, p.param("depth"), p.param("width"), cfg.charge),
        "dirac-constant-A" => EMPotentialField::constant_vector(grid, p.param("a"), cfg.charge),
        other => return Err(CliError::Config(format!("potential: `{other}` is not a Dirac potential"))),
    };
    field.map_err(|e| CliError::Config(format!("potential: {e}")))
}

/// Solve the configured problem.
pub fn solve(cfg: &RunConfig) -> Result<StateSet, CliError> {
    match cfg.problem {
        Problem::Schrodinger => {
            let potential = scalar_potential(cfg)?;
            let sol = solve_eigen(&potential, cfg.mass, cfg.count)?;
            Ok(StateSet::Scalar {
                potential,
                mass: cfg.mass,
                kinetic: sol.kinetic(),
                states: sol.states().to_vec(),
            })
        }
        Problem::HydrogenRadial => {
            make_grid(cfg)?;
            let sol = solve_hydrogen_radial(cfg.grid.n, cfg.grid.extent, cfg.count)?;
            Ok(StateSet::Scalar {
                potential: sol.potential().clone(),
                mass: sol.mass(),
                kinetic: sol.kinetic(),
                states: sol.states().to_vec(),
            })
        }
        Problem::Dirac => {
            let potential = em_potential(cfg)?;
            let sol = solve_dirac(&potential, cfg.mass, cfg.c, cfg.count)?;
            Ok(StateSet::Dirac {
                potential,
                mass: cfg.mass,
                c: cfg.c,
                states: sol.states().to_vec(),
            })
        }
    }
}

/// Empty state set carrying the configured potential, for loading states
/// from a file.
pub fn empty_set(cfg: &RunConfig) -> Result<StateSet, CliError> {
    Ok(match cfg.problem {
        Problem::Schrodinger | Problem::HydrogenRadial => StateSet::Scalar {
            potential: scalar_potential(cfg)?,
            mass: cfg.mass,
            kinetic: if cfg.problem == Problem::HydrogenRadial {
                KineticOperator::ThreePoint
            } else {
                KineticOperator::Spectral
            },
            states: Vec::new(),
        },
        Problem::Dirac => StateSet::Dirac {
            potential: em_potential(cfg)?,
            mass: cfg.mass,
            c: cfg.c,
            states: Vec::new(),
        },
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModeRecord {
    pub mode: usize,
    pub wave_vector: Vec<i64>,
    pub momentum: Vec<f64>,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateRecord {
    pub index: usize,
    pub energy_hartree: f64,
    pub energy_ev: f64,
    pub kinetic_avg: f64,
    pub potential_avg: f64,
    pub total_avg: f64,
    pub relation_residual: f64,
    pub pointwise_max: f64,
    pub pointwise_l2: f64,
    pub averaged_residual: f64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub branch: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binding_energy_hartree: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub binding_energy_ev: Option<f64>,
    pub dominant_modes: Vec<ModeRecord>,
}

fn mode_records(grid: &UniformGrid, weights: &[f64]) -> Vec<ModeRecord> {
    let mut order: Vec<usize> = (0..weights.len()).collect();
    // descending weight, ties to the lower index
    order.sort_by(|&a, &b| weights[b].total_cmp(&weights[a]).then(a.cmp(&b)));
    order
        .into_iter()
        .take(TOP_MODES)
        .map(|k| ModeRecord {
            mode: k,
            wave_vector: grid.wave_vector(k)[..grid.dim()].to_vec(),
            momentum: grid.momentum(k)[..grid.dim()].to_vec(),
            weight: weights[k],
        })
        .collect()
}

/// Check every state of the set.
pub fn evaluate(set: &StateSet) -> Result<Vec<StateRecord>, CliError> {
    match set {
        StateSet::Scalar {
            potential,
            mass,
            kinetic,
            states,
        } => states
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let c = averaged_vs_pointwise_with(s, potential, *mass, *kinetic)?;
                let e = c.breakdown.total_avg;
                let amps = extract_amplitudes(s)?;
                let weights: Vec<f64> = amps.values().iter().map(|a| a.norm_sqr()).collect();
                Ok(StateRecord {
                    index,
                    energy_hartree: e,
                    energy_ev: e * HARTREE_TO_EV,
                    kinetic_avg: c.breakdown.kinetic_avg,
                    potential_avg: c.breakdown.potential_avg,
                    total_avg: e,
                    relation_residual: c.breakdown.relation_residual,
                    pointwise_max: c.residual.pointwise_max,
                    pointwise_l2: c.residual.pointwise_l2,
                    averaged_residual: c.residual.averaged_residual,
                    passed: c.breakdown.passes() && c.residual.passes(e),
                    branch: None,
                    binding_energy_hartree: None,
                    binding_energy_ev: None,
                    dominant_modes: mode_records(s.grid(), &weights),
                })
            })
            .collect(),
        StateSet::Dirac {
            potential,
            mass,
            c,
            states,
        } => states
            .iter()
            .enumerate()
            .map(|(index, s)| {
                let theta = theta_residual(s, potential, *mass, *c)?;
                let lin = averaged_linear_relation(s, potential, *mass, *c)?;
                let e = s.energy().expect("checked by theta_residual");
                let mc2 = mass * c * c;
                let weights: Vec<f64> = s.amplitudes().iter().map(|a| a.norm_squared()).collect();
                let binding = mc2 - e;
                Ok(StateRecord {
                    index,
                    energy_hartree: e,
                    energy_ev: e * HARTREE_TO_EV,
                    kinetic_avg: e - lin.lhs,
                    potential_avg: lin.rhs,
                    total_avg: e,
                    relation_residual: lin.residual,
                    pointwise_max: theta.pointwise_max,
                    pointwise_l2: theta.pointwise_l2,
                    averaged_residual: theta.averaged_residual,
                    passed: lin.passes(*mass, *c) && theta.pointwise_l2 < DIRAC_TOLERANCE * mc2,
                    branch: Some(if e > 0.0 { "positive" } else { "negative" }),
                    binding_energy_hartree: Some(binding),
                    binding_energy_ev: Some(binding * HARTREE_TO_EV),
                    dominant_modes: mode_records(s.grid(), &weights),
                })
            })
            .collect(),
    }
}

pub(crate) fn spinor_components(s: &SpinorField) -> Vec<[Complex64; 4]> {
    s.values().iter().map(|v| [v[0], v[1], v[2], v[3]]).collect()
}
