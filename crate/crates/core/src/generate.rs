//! Deterministic instance generation.
//!
//! Spaces are built from distinct points on a small integer grid with the
//! induced L1 distance, scaled by a random denominator, so the metric axioms
//! hold by construction. Laws and random variables use denominators bounded
//! by the profile. Identical seeds yield identical bundles.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::gauges::SequenceSpec;
use crate::instance::InstanceBundle;
use crate::rat::{int, Rat};
use crate::rv::{Law, Piece, RandomVariable};
use crate::space::{FinMetricSpace, SpaceRef};

/// Bounds for one generated bundle.
#[derive(Debug, Clone)]
pub struct GenProfile {
    pub min_points: usize,
    pub max_points: usize,
    pub max_denominator: u64,
    pub laws: usize,
    pub random_variables: usize,
    pub sequences: usize,
    pub max_prefix: usize,
    pub max_cycle: usize,
}

impl GenProfile {
    /// The default profile: up to 6 points, denominators up to 64.
    pub fn small() -> Self {
        GenProfile {
            min_points: 2,
            max_points: 6,
            max_denominator: 64,
            laws: 4,
            random_variables: 4,
            sequences: 2,
            max_prefix: 2,
            max_cycle: 3,
        }
    }

    /// Smaller spaces for vertex-enumeration cross-checks.
    pub fn with_max_points(mut self, max_points: usize) -> Self {
        self.max_points = max_points;
        self.min_points = self.min_points.min(max_points);
        self
    }

    /// A singleton-space profile.
    pub fn minimal() -> Self {
        GenProfile {
            min_points: 1,
            max_points: 1,
            max_denominator: 8,
            laws: 1,
            random_variables: 1,
            sequences: 1,
            max_prefix: 1,
            max_cycle: 1,
        }
    }

    /// Named profile lookup for the CLI.
    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "small" => Ok(Self::small()),
            "minimal" => Ok(Self::minimal()),
            "tiny" => Ok(Self::small().with_max_points(4)),
            "prokhorov" => {
                let mut p = Self::small();
                p.max_points = 12;
                Ok(p)
            }
            _ => Err(Error::InfeasibleProfile(format!("unknown profile {name:?}"))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.min_points == 0 || self.max_points < self.min_points {
            return Err(Error::InfeasibleProfile("point bounds are empty".into()));
        }
        if self.max_points > 16 {
            return Err(Error::InfeasibleProfile(
                "more than 16 points exceeds every evaluator bound".into(),
            ));
        }
        if self.max_denominator == 0 {
            return Err(Error::InfeasibleProfile("zero denominator bound".into()));
        }
        if self.max_cycle == 0 {
            return Err(Error::InfeasibleProfile("cycles must be nonempty".into()));
        }
        Ok(())
    }
}

/// Generates a deterministic instance bundle from a seed.
pub fn generate(seed: u64, profile: &GenProfile) -> Result<InstanceBundle> {
    profile.validate()?;
    let mut rng = ChaCha20Rng::seed_from_u64(seed);

    let space = gen_space(&mut rng, profile)?;
    let mut bundle = InstanceBundle::bare(
        space.clone(),
        seed,
        format!(
            "generated: seed={seed} points={} max_denom={}",
            space.len(),
            profile.max_denominator
        ),
    );

    for k in 0..profile.laws {
        let mut law = gen_law(&mut rng, &space, profile);
        // keep the first law usable as a non-degenerate source
        if k == 0 && space.len() >= 2 {
            let mut tries = 0;
            while law.support_size() < 2 && tries < 32 {
                law = gen_law(&mut rng, &space, profile);
                tries += 1;
            }
            if law.support_size() < 2 {
                law = Law::new(
                    space.clone(),
                    spread_weights(space.len()),
                )?;
            }
        }
        bundle.laws.insert(format!("P{k}"), law);
    }

    for k in 0..profile.random_variables {
        bundle
            .random_variables
            .insert(format!("xi{k}"), gen_rv(&mut rng, &space, profile));
    }

    let rv_names: Vec<String> = bundle.random_variables.keys().cloned().collect();
    for k in 0..profile.sequences {
        let prefix_len = rng.random_range(0..=profile.max_prefix);
        let cycle_len = rng.random_range(1..=profile.max_cycle);
        let pick = |rng: &mut ChaCha20Rng| {
            let name = &rv_names[rng.random_range(0..rv_names.len())];
            bundle.random_variables[name].clone()
        };
        let prefix = (0..prefix_len).map(|_| pick(&mut rng)).collect();
        let cycle = (0..cycle_len).map(|_| pick(&mut rng)).collect();
        bundle
            .sequences
            .insert(format!("seq{k}"), SequenceSpec::new(prefix, cycle)?);
    }

    Ok(bundle)
}

fn spread_weights(n: usize) -> Vec<Rat> {
    let mut w = vec![Rat::new(1.into(), 2.into()); 2];
    w.extend(std::iter::repeat_n(int(0), n - 2));
    w
}

fn gen_space(rng: &mut ChaCha20Rng, profile: &GenProfile) -> Result<SpaceRef> {
    let n = rng.random_range(profile.min_points..=profile.max_points);
    // distinct grid points with L1 distances, scaled by 1/denom
    const GRID: i64 = 8;
    let mut coords: Vec<(i64, i64)> = Vec::with_capacity(n);
    while coords.len() < n {
        let p = (rng.random_range(0..GRID), rng.random_range(0..GRID));
        if !coords.contains(&p) {
            coords.push(p);
        }
    }
    let denom = rng.random_range(1..=8i64);
    let points = (0..n)
        .map(|i| {
            char::from_u32('a' as u32 + i as u32)
                .expect("at most 16 points")
                .to_string()
        })
        .collect();
    let dist = coords
        .iter()
        .map(|&(x1, y1)| {
            coords
                .iter()
                .map(|&(x2, y2)| Rat::new(((x1 - x2).abs() + (y1 - y2).abs()).into(), denom.into()))
                .collect()
        })
        .collect();
    FinMetricSpace::new(points, dist)
}

fn gen_law(rng: &mut ChaCha20Rng, space: &SpaceRef, profile: &GenProfile) -> Law {
    let n = space.len();
    let denom = rng.random_range(1..=profile.max_denominator);
    let mut units = vec![0u64; n];
    for _ in 0..denom {
        units[rng.random_range(0..n)] += 1;
    }
    let weights = units
        .into_iter()
        .map(|u| Rat::new(u.into(), denom.into()))
        .collect();
    Law::new(space.clone(), weights).expect("unit counts sum to the denominator")
}

fn gen_rv(rng: &mut ChaCha20Rng, space: &SpaceRef, profile: &GenProfile) -> RandomVariable {
    let denom = rng.random_range(2..=profile.max_denominator.max(2));
    let pieces_wanted = rng.random_range(1..=6usize);
    let mut cuts: Vec<u64> = vec![0, denom];
    let mut tries = 0;
    while cuts.len() < pieces_wanted + 1 && tries < 64 {
        let c = rng.random_range(1..denom);
        if !cuts.contains(&c) {
            cuts.push(c);
        }
        tries += 1;
    }
    cuts.sort_unstable();
    let pieces = cuts
        .windows(2)
        .map(|w| Piece {
            start: Rat::new(w[0].into(), denom.into()),
            end: Rat::new(w[1].into(), denom.into()),
            point: rng.random_range(0..space.len()),
        })
        .collect();
    RandomVariable::new(space.clone(), pieces).expect("cuts tile the unit interval")
}
