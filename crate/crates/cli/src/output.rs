//! CSV artifacts: header row, `,` separator, 17 significant digits.

use std::fmt::Write as _;
use std::path::Path;

use num_complex::Complex64;

use planewave_core::dirac::{SpinorField, Spinor4};
use planewave_core::momentum::{extract_amplitudes, hydrogen_a0_closed_form, MomentumDistribution};
use planewave_core::{Representation, UniformGrid, WaveFunction};

use crate::error::CliError;
use crate::run::{spinor_components, StateSet};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        }
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn coordinate_header(dim: usize) -> &'static str {
    if dim == 1 {
        "x"
    } else {
        "x,y,z"
    }
}

pub fn states_csv(set: &StateSet) -> String {
    let grid = *set.grid();
    let dim = grid.dim();
    let mut out = String::new();
    match set {
        StateSet::Scalar { states, .. } => {
            writeln!(out, "{}", states_header(set)).unwrap();
            for (i, s) in states.iter().enumerate() {
                let e = num(s.energy().unwrap_or(f64::NAN));
                for (j, v) in s.values().iter().enumerate() {
                    let r = grid.position(j);
                    let coords: Vec<String> = r[..dim].iter().map(|x| num(*x)).collect();
                    writeln!(out, "{i},{e},{},{},{}", coords.join(","), num(v.re), num(v.im)).unwrap();
                }
            }
        }
        StateSet::Dirac { states, .. } => {
            writeln!(out, "{}", states_header(set)).unwrap();
            for (i, s) in states.iter().enumerate() {
                let e = num(s.energy().unwrap_or(f64::NAN));
                for (j, v) in spinor_components(s).iter().enumerate() {
                    let comps: Vec<String> = v.iter().flat_map(|z| [num(z.re), num(z.im)]).collect();
                    writeln!(out, "{i},{e},{},{}", num(grid.position(j)[0]), comps.join(",")).unwrap();
                }
            }
        }
    }
    out
}

pub fn amplitudes_csv(set: &StateSet) -> Result<String, CliError> {
    let grid = *set.grid();
    let dim = grid.dim();
    let mut out = String::new();
    let mode_cols = |k: usize| -> String {
        if dim == 1 {
            format!("{},{}", grid.wave_number(k), num(grid.momentum(k)[0]))
        } else {
            let w = grid.wave_vector(k);
            format!("{},{},{}", w[0], w[1], w[2])
        }
    };
    match set {
        StateSet::Scalar { states, .. } => {
            let cols = if dim == 1 { "k,p" } else { "kx,ky,kz" };
            writeln!(out, "state,mode,{cols},re,im,weight").unwrap();
            for (i, s) in states.iter().enumerate() {
                let amps = extract_amplitudes(s)?;
                for (k, a) in amps.values().iter().enumerate() {
                    writeln!(out, "{i},{k},{},{},{},{}", mode_cols(k), num(a.re), num(a.im), num(a.norm_sqr()))
                        .unwrap();
                }
            }
        }
        StateSet::Dirac { states, .. } => {
            writeln!(out, "state,mode,k,p,re0,im0,re1,im1,re2,im2,re3,im3,weight").unwrap();
            for (i, s) in states.iter().enumerate() {
                for (k, a) in s.amplitudes().iter().enumerate() {
                    let comps: Vec<String> = a.iter().flat_map(|z| [num(z.re), num(z.im)]).collect();
                    writeln!(out, "{i},{k},{},{},{}", mode_cols(k), comps.join(","), num(a.norm_squared()))
                        .unwrap();
                }
            }
        }
    }
    Ok(out)
}

pub fn momdist_csv(dist: &MomentumDistribution) -> String {
    let mut out = String::from("p,amplitude,density,closed_form,rel_error\n");
    let errors = dist.relative_errors();
    for (i, p) in dist.momenta.iter().enumerate() {
        let closed = hydrogen_a0_closed_form(*p, 1.0).expect("sampled momenta are positive");
        writeln!(
            out,
            "{},{},{},{},{}",
            num(*p),
            num(dist.amplitude[i]),
            num(dist.density[i]),
            num(closed),
            num(errors[i])
        )
        .unwrap();
    }
    out
}

/// Read a states CSV written by [`states_csv`] back into `set`, which
/// carries the potential and grid the states must match.
pub fn load_states(path: &Path, set: &mut StateSet) -> Result<(), CliError> {
    let corrupt = |reason: String| CliError::StateFile {
        path: path.display().to_string(),
        reason,
    };
    let text = std::fs::read_to_string(path).map_err(|e| corrupt(e.to_string()))?;
    let grid = *set.grid();
    let dim = grid.dim();
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| corrupt("empty file".into()))?;
    let value_cols = match set {
        StateSet::Scalar { .. } => 2,
        StateSet::Dirac { .. } => 8,
    };
    let expected_header = states_header(set);
    if header.trim() != expected_header {
        return Err(corrupt(format!("header `{header}` does not match `{expected_header}`")));
    }
    let width = 2 + dim + value_cols;

    let mut rows: Vec<(usize, f64, Vec<f64>)> = Vec::new();
    for (line_no, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != width {
            return Err(corrupt(format!("line {}: expected {width} fields", line_no + 2)));
        }
        let state: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| corrupt(format!("line {}: bad state index", line_no + 2)))?;
        let nums = fields[1..]
            .iter()
            .map(|f| f.trim().parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| corrupt(format!("line {}: bad number", line_no + 2)))?;
        rows.push((state, nums[0], nums[1..].to_vec()));
    }

    let n = grid.len();
    if rows.is_empty() || rows.len() % n != 0 {
        return Err(corrupt(format!("{} rows is not a whole number of {n}-point states", rows.len())));
    }
    let tolerance = 1e-9 * grid.extent();
    for (s, chunk) in rows.chunks(n).enumerate() {
        let energy = chunk[0].1;
        if !energy.is_finite() {
            return Err(corrupt(format!("state {s}: missing energy")));
        }
        let mut values = Vec::with_capacity(n);
        for (j, (index, e, rest)) in chunk.iter().enumerate() {
            if *index != s || *e != energy {
                return Err(corrupt(format!("state {s}: rows out of order or inconsistent energy")));
            }
            let r = grid.position(j);
            if (0..dim).any(|a| (rest[a] - r[a]).abs() > tolerance) {
                return Err(corrupt(format!("state {s}: coordinates do not match the configured grid")));
            }
            values.push(rest[dim..].to_vec());
        }
        push_state(set, grid, values, energy).map_err(|e| corrupt(format!("state {s}: {e}")))?;
    }
    Ok(())
}

fn states_header(set: &StateSet) -> String {
    match set {
        StateSet::Scalar { .. } => format!("state,energy,{},re,im", coordinate_header(set.grid().dim())),
        StateSet::Dirac { .. } => "state,energy,x,re0,im0,re1,im1,re2,im2,re3,im3".to_string(),
    }
}

fn push_state(set: &mut StateSet, grid: UniformGrid, values: Vec<Vec<f64>>, energy: f64) -> Result<(), CliError> {
    match set {
        StateSet::Scalar { states, .. } => {
            let v = values.iter().map(|r| Complex64::new(r[0], r[1])).collect();
            states.push(WaveFunction::new(grid, Representation::Position, v)?.with_energy(energy));
        }
        StateSet::Dirac { states, .. } => {
            let v = values
                .iter()
                .map(|r| {
                    Spinor4::new(
                        Complex64::new(r[0], r[1]),
                        Complex64::new(r[2], r[3]),
                        Complex64::new(r[4], r[5]),
                        Complex64::new(r[6], r[7]),
                    )
                })
                .collect();
            states.push(SpinorField::new(grid, v)?.with_energy(energy));
        }
    }
    Ok(())
}
