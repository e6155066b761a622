//! Lists the essential regions cut by xy = k for k in (k0, k0 + 1) and
//! cross-checks them against the geometric oracle.
//!
//! ```text
//! cargo run --example essential_regions -- 17
//! ```

use hypclass::regions::{oracle_regions, region_count};
use hypclass::{enumerate_regions, RegionType};

fn main() -> hypclass::Result<()> {
    let k0: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(17);
    let set = enumerate_regions(k0)?;
    println!("E({k0}): {} regions", set.len());
    for r in set.iter() {
        println!("  ({}, {})  {}", r.index.n, r.index.n_prime, r.kind);
    }
    for t in [RegionType::T2, RegionType::T3, RegionType::T5, RegionType::T7, RegionType::T8] {
        println!("  {t}: {:?}", set.of_type(t));
    }

    let mid = oracle_regions(k0 as f64 + 0.5)?;
    println!("oracle at {}: agrees = {}", k0 as f64 + 0.5, mid == set.entries);
    println!("count formula: {}", region_count(k0));
    Ok(())
}
