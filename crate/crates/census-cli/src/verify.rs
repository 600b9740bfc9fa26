//! Thin wrapper over the library's verification suites.

use conic_census::error::{Error, Result};
use conic_census::verify::{
    all_passed, suite_assembly, suite_densities, suite_detectors, suite_hilbert, suite_selberg,
};

pub fn run_suite(name: &str, prime_bound: u64) -> Result<bool> {
    let results = match name {
        "hilbert" => suite_hilbert()?,
        "detectors" => suite_detectors()?,
        "densities" => suite_densities()?,
        "assembly" => suite_assembly(prime_bound)?,
        "selberg" => suite_selberg()?,
        other => {
            return Err(Error::Domain(format!(
                "unknown suite '{other}' (expected hilbert|detectors|densities|assembly|selberg)"
            )))
        }
    };
    for r in &results {
        println!("{}", r.summary_line());
    }
    Ok(all_passed(&results))
}
