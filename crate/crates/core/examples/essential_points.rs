//! Essential polynomials, essential points and the repeated-point test.
//!
//! ```text
//! cargo run --example essential_points -- 48
//! ```

use hypclass::oracles::goldbach_partitions_oracle;
use hypclass::points::monotonicity_report;
use hypclass::{goldbach_characterization, BigRational, EssentialPolynomial, PrimeCoding, Scalar};

fn main() -> hypclass::Result<()> {
    let alpha: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(48);
    for k0 in [4, 5, 8, 12] {
        println!("P_I,{k0} = {}", EssentialPolynomial::lower(k0)?);
    }
    println!("P_S,7 (alpha=18) = {}", EssentialPolynomial::upper(18, 7)?);

    let c = PrimeCoding::<BigRational>::default_strict(alpha as usize);
    let report = monotonicity_report(&c, alpha)?;
    let first = &report.points[0];
    println!("k0={:>3}  x={:>10.6}  y={:>10.6}", first.k0, first.x.to_f64(), first.y.to_f64());
    // entry k0 compares P_{k0-1} with P_{k0}
    for (p, e) in report.points[1..].iter().zip(&report.entries) {
        println!(
            "k0={:>3}  x={:>10.6}  y={:>10.6}  same x:{:<5} same y:{:<5} ({} prime: {}, {} prime: {})",
            p.k0,
            p.x.to_f64(),
            p.y.to_f64(),
            e.x_repeated,
            e.y_repeated,
            e.k0,
            e.k0_prime,
            alpha - e.k0,
            e.partner_prime
        );
    }
    let found = goldbach_characterization(&c, alpha)?;
    let sieve: Vec<u64> = goldbach_partitions_oracle(alpha)?.iter().map(|p| p.k).collect();
    println!("repeated points at {found:?}; all sieve partitions {sieve:?}");
    Ok(())
}
