//! Seeded random systems. Every generated covering is a gamma-covering by
//! construction: each object gets one member whose degree is drawn from
//! `[gamma, 1]`.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fuzzycover::decimal::SCALE;
use fuzzycover::Degree;

use crate::error::{CliError, Result};
use crate::system_file::{CoveringEntry, DegreeText, NamedVector, SystemFile};

/// Shape of a generated system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSpec {
    pub n: usize,
    pub members: usize,
    /// One gamma per covering.
    pub gammas: Vec<Degree>,
    pub targets: usize,
    /// Degrees are drawn from multiples of `1 / steps`; must divide 10^6.
    pub steps: u32,
}

impl GenSpec {
    pub fn new(n: usize, m: usize, members: usize, gamma: Degree) -> Self {
        GenSpec {
            n,
            members,
            gammas: vec![gamma; m],
            targets: 1,
            steps: 100,
        }
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: &str| Err(CliError::Parameter(msg.to_string()));
        if self.gammas.is_empty() {
            return bad("need at least one covering");
        }
        if self.members == 0 && self.n > 0 {
            return bad("need at least one member per covering");
        }
        if self.steps == 0 || SCALE % i64::from(self.steps) != 0 {
            return bad("steps must divide 1000000");
        }
        if self.gammas.iter().any(|g| g.is_zero()) {
            return bad("gamma must be positive");
        }
        Ok(())
    }
}

fn unit(steps: u32) -> u32 {
    (SCALE / i64::from(steps)) as u32
}

fn draw(rng: &mut ChaCha8Rng, lo_step: u32, steps: u32) -> Degree {
    let k = rng.random_range(lo_step..=steps);
    Degree::from_micros(k * unit(steps)).expect("grid value within [0, 1]")
}

/// Smallest grid index whose value is at least `gamma`.
fn ceil_step(gamma: Degree, steps: u32) -> u32 {
    gamma.micros().div_ceil(unit(steps))
}

fn text(d: Degree) -> DegreeText {
    DegreeText(d.to_string())
}

/// Member degree vectors of one covering.
pub fn covering_degrees(
    rng: &mut ChaCha8Rng,
    n: usize,
    members: usize,
    gamma: Degree,
    steps: u32,
) -> Vec<Vec<Degree>> {
    let mut rows: Vec<Vec<Degree>> = (0..members)
        .map(|_| (0..n).map(|_| draw(rng, 0, steps)).collect())
        .collect();
    let floor = ceil_step(gamma, steps);
    for x in 0..n {
        let j = rng.random_range(0..members);
        rows[j][x] = draw(rng, floor, steps);
    }
    for row in rows.iter_mut() {
        if n > 0 && row.iter().all(|d| d.is_zero()) {
            let x = rng.random_range(0..n);
            row[x] = draw(rng, 1, steps);
        }
    }
    rows
}

pub fn generate(spec: &GenSpec, seed: u64) -> Result<SystemFile> {
    spec.check()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe: Vec<String> = (1..=spec.n).map(|i| format!("x{i}")).collect();
    let coverings = spec
        .gammas
        .iter()
        .enumerate()
        .map(|(i, &gamma)| {
            let rows = covering_degrees(&mut rng, spec.n, spec.members, gamma, spec.steps);
            CoveringEntry {
                name: format!("C{}", i + 1),
                gamma: text(gamma),
                members: rows
                    .into_iter()
                    .enumerate()
                    .map(|(j, r)| NamedVector {
                        name: format!("C{}_{}", i + 1, j + 1),
                        degrees: r.into_iter().map(text).collect(),
                    })
                    .collect(),
                experts: Vec::new(),
            }
        })
        .collect();
    let targets = (0..spec.targets)
        .map(|t| NamedVector {
            name: if spec.targets == 1 {
                "X".to_string()
            } else {
                format!("X{}", t + 1)
            },
            degrees: (0..spec.n)
                .map(|_| text(draw(&mut rng, 0, spec.steps)))
                .collect(),
        })
        .collect();
    Ok(SystemFile {
        universe,
        coverings,
        targets,
    })
}

/// Random shape for differential and property suites: sizes within the
/// given bounds, gammas and grid coarseness drawn per instance.
pub fn random_spec(
    rng: &mut ChaCha8Rng,
    max_n: usize,
    max_m: usize,
    max_members: usize,
) -> GenSpec {
    let steps = *[1u32, 2, 4, 5, 10, 20, 100, 1_000_000]
        .choose(rng)
        .expect("non-empty");
    let gammas = (0..rng.random_range(1..=max_m))
        .map(|_| draw(rng, 1, steps))
        .collect();
    GenSpec {
        n: rng.random_range(1..=max_n),
        members: rng.random_range(1..=max_members),
        gammas,
        targets: 2,
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_file() {
        let spec = GenSpec::new(8, 2, 3, "0.9".parse().unwrap());
        assert_eq!(
            generate(&spec, 42).unwrap().to_json(),
            generate(&spec, 42).unwrap().to_json()
        );
        assert_ne!(generate(&spec, 42).unwrap(), generate(&spec, 43).unwrap());
    }

    #[test]
    fn generated_systems_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..300 {
            let spec = random_spec(&mut rng, 16, 4, 5);
            let file = generate(&spec, seed).unwrap();
            let loaded = file.load().unwrap();
            assert_eq!(loaded.system.len(), spec.gammas.len());
            assert_eq!(loaded.targets.len(), 2);
        }
    }

    #[test]
    fn gamma_one_on_unit_grid_is_crisp() {
        let mut spec = GenSpec::new(6, 3, 4, Degree::ONE);
        spec.steps = 1;
        let loaded = generate(&spec, 1).unwrap().load().unwrap();
        assert!(loaded.system.coverings().iter().all(|c| c.is_crisp()));
        assert!(loaded.targets[0].1.is_crisp());
    }

    #[test]
    fn bad_shapes_are_parameter_errors() {
        let mut spec = GenSpec::new(4, 1, 0, "0.5".parse().unwrap());
        assert_eq!(generate(&spec, 0).unwrap_err().exit_code(), 4);
        spec.members = 2;
        spec.steps = 3;
        assert_eq!(generate(&spec, 0).unwrap_err().exit_code(), 4);
    }
}
