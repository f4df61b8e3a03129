//! Parallel Severi degree counts.

use rayon::prelude::*;

use tropsev_core::enumeration::{
    assemble_report, candidate_subdivisions, lattice_paths, solve_candidate, stretched_config, PointConfiguration,
    SeveriDegreeReport, Strategy,
};
use tropsev_core::severi::SeveriSpec;
use tropsev_core::{Error, Result};

/// Same result as `count_through_points`, with candidate subdivisions
/// solved in parallel. Solutions keep the candidate order, so the report
/// does not depend on scheduling.
pub fn count_parallel(spec: &SeveriSpec, config: &PointConfiguration, strategy: Strategy) -> Result<SeveriDegreeReport> {
    let mut solutions = Vec::new();
    if strategy != Strategy::PathCount {
        let per_candidate: Vec<_> =
            candidate_subdivisions(spec).par_iter().map(|s| solve_candidate(spec, config, s)).collect();
        for found in per_candidate {
            solutions.extend(found?);
        }
    }
    let paths = if strategy == Strategy::SubdivisionSolve { Vec::new() } else { lattice_paths(spec) };
    assemble_report(spec, config, strategy, solutions, paths)
}

/// Counts through `stretched_config(dim, seed)` for `seed = first, first + 1, …`
/// until a configuration is certified generic.
pub fn count_reseeding(spec: &SeveriSpec, first_seed: u64, strategy: Strategy, attempts: u64) -> Result<SeveriDegreeReport> {
    let mut last = Error::ConfigDegenerate("no attempts".into());
    for seed in first_seed..first_seed.saturating_add(attempts.max(1)) {
        match count_parallel(spec, &stretched_config(spec.dimension(), seed), strategy) {
            Err(e @ Error::ConfigDegenerate(_)) => last = e,
            other => return other,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use tropsev_core::enumeration::count_through_points;
    use tropsev_core::LatticePolygon;

    #[test]
    fn matches_the_serial_count() {
        let spec = SeveriSpec::new(LatticePolygon::standard_triangle(3), 1).unwrap();
        let config = stretched_config(spec.dimension(), 9);
        let a = count_parallel(&spec, &config, Strategy::Both).unwrap();
        let b = count_through_points(&spec, &config, Strategy::Both).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.degree, 12.into());
    }
}
