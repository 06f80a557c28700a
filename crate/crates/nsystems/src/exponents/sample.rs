//! Seeded sampling of valid parameter points near a center.
//!
//! Each sample index gets its own RNG stream, so sample i is the same
//! whether 5 or 500 points are requested, and rejected draws never shift
//! later samples.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::nsystem::{build_geometry, validate_params, Params};

use super::{trajectory_exponents, ExponentTuple};

const MAX_ATTEMPTS: u32 = 1000;
const GRID: i64 = 4096;

/// One accepted sample: the perturbed parameters and their spectrum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SamplePoint {
    pub index: u64,
    pub params: Params,
    pub tuple: ExponentTuple,
}

/// Draws `count` valid parameter points with every free coordinate
/// perturbed by at most `radius`, rejecting draws that violate the
/// parameter inequalities.
///
/// Offsets are exact: each coordinate moves by `radius * j / 4096` for an
/// integer `j` drawn from [-4096, 4096]. A center whose neighborhood is so
/// large that some index sees 1000 consecutive rejections is reported as an
/// error rather than silently truncated.
pub fn sample_neighborhood(
    center: &Params,
    radius: &Rat,
    count: usize,
    seed: u64,
) -> Result<Vec<SamplePoint>> {
    if radius.is_negative() {
        return Err(Error::OutsideDomain(format!("radius must be nonnegative, got {radius}")));
    }
    let n = center.n();
    let free = center.free_params();
    let grid = Rat::from_int(GRID);
    let mut samples = Vec::with_capacity(count);
    for index in 0..count as u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(index);
        let mut accepted = None;
        for _ in 0..MAX_ATTEMPTS {
            let slots: Vec<Rat> = free
                .iter()
                .map(|x| {
                    let j = Rat::from_int(rng.gen_range(-GRID..=GRID));
                    x + &(radius * &(j / &grid))
                })
                .collect();
            let (a, rest) = slots.split_at(n - 1);
            let (b, cd) = rest.split_at(n - 1);
            let candidate = match Params::from_parts(n, a.to_vec(), b.to_vec(), cd[0].clone(), cd[1].clone())
            {
                Ok(p) => p,
                Err(_) => continue,
            };
            if validate_params(&candidate)?.valid {
                accepted = Some(candidate);
                break;
            }
        }
        let params = accepted.ok_or_else(|| {
            Error::NeighborhoodTooLarge(format!(
                "no valid point for sample {index} after {MAX_ATTEMPTS} attempts \
                 (radius {radius} around the center leaves the valid region)"
            ))
        })?;
        let tuple = trajectory_exponents(&build_geometry(&params)?);
        samples.push(SamplePoint { index, params, tuple });
    }
    Ok(samples)
}

/// Renders samples as CSV: one row per point, parameters first, then the
/// full spectrum.
pub fn sample_csv(seed: u64, samples: &[SamplePoint], n: usize) -> String {
    let mut header = String::from("n,seed,index,C");
    for k in 2..=n {
        header.push_str(&format!(",A_{k}"));
    }
    header.push_str(",D");
    for k in 2..=n {
        header.push_str(&format!(",B_{k}"));
    }
    for d in 0..n {
        header.push_str(&format!(",What_{d}"));
    }
    for d in 0..n {
        header.push_str(&format!(",W_{d}"));
    }
    let mut out = header;
    out.push('\n');
    for s in samples {
        let p = &s.params;
        let mut row = format!("{n},{seed},{},{}", s.index, p.c());
        for k in 2..=n {
            row.push_str(&format!(",{}", p.a(k)));
        }
        row.push_str(&format!(",{}", p.d()));
        for k in 2..=n {
            row.push_str(&format!(",{}", p.b(k)));
        }
        for w in s.tuple.uniform.iter().chain(s.tuple.ordinary.iter()) {
            row.push_str(&format!(",{w}"));
        }
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nsystem::canonical_params;

    fn default_radius(n: usize) -> Rat {
        Rat::one() / Rat::from_int(1i64 << (n + 3))
    }

    #[test]
    fn radius_zero_returns_center_copies() {
        let p = canonical_params(4).unwrap();
        let samples = sample_neighborhood(&p, &Rat::zero(), 3, 99).unwrap();
        assert_eq!(samples.len(), 3);
        for s in &samples {
            assert_eq!(s.params, p);
        }
    }

    #[test]
    fn sampling_is_reproducible_and_prefix_stable() {
        let p = canonical_params(3).unwrap();
        let r = default_radius(3);
        let a = sample_neighborhood(&p, &r, 10, 12345).unwrap();
        let b = sample_neighborhood(&p, &r, 10, 12345).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.params, y.params);
            assert_eq!(x.tuple, y.tuple);
        }
        let short = sample_neighborhood(&p, &r, 4, 12345).unwrap();
        for (x, y) in short.iter().zip(&a) {
            assert_eq!(x.params, y.params);
        }
        let other_seed = sample_neighborhood(&p, &r, 10, 54321).unwrap();
        assert!(a.iter().zip(&other_seed).any(|(x, y)| x.params != y.params));
    }

    #[test]
    fn sampled_points_are_valid_and_distinct_from_center() {
        let p = canonical_params(5).unwrap();
        let samples = sample_neighborhood(&p, &default_radius(5), 20, 7).unwrap();
        assert_eq!(samples.len(), 20);
        let mut moved = 0;
        for s in &samples {
            assert!(validate_params(&s.params).unwrap().valid);
            if s.params != p {
                moved += 1;
            }
        }
        assert!(moved >= 19, "perturbations should actually move the point");
    }

    #[test]
    fn oversized_radius_is_an_error() {
        let p = canonical_params(3).unwrap();
        let err = sample_neighborhood(&p, &Rat::one(), 5, 1).unwrap_err();
        assert!(matches!(err, Error::NeighborhoodTooLarge(_)), "{err}");
        let err = sample_neighborhood(&p, &Rat::new(-1, 8).unwrap(), 5, 1).unwrap_err();
        assert!(matches!(err, Error::OutsideDomain(_)), "{err}");
    }

    #[test]
    fn csv_shape_and_determinism() {
        let p = canonical_params(3).unwrap();
        let samples = sample_neighborhood(&p, &default_radius(3), 2, 42).unwrap();
        let csv = sample_csv(42, &samples, 3);
        let again = sample_csv(42, &sample_neighborhood(&p, &default_radius(3), 2, 42).unwrap(), 3);
        assert_eq!(csv, again);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(
            lines[0],
            "n,seed,index,C,A_2,A_3,D,B_2,B_3,What_0,What_1,What_2,W_0,W_1,W_2"
        );
        assert!(lines[1].starts_with("3,42,0,"));
        assert_eq!(lines[1].split(',').count(), 15);

        let empty = sample_csv(42, &[], 3);
        assert_eq!(empty.lines().count(), 1);
    }
}
