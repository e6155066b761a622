//! Builds a coding with continuous (A_T)'' for alpha = 18 and inspects it.
//!
//! ```text
//! cargo run --example goldbach_function -- 18 7
//! ```

use hypclass::construction::{characterization_survives, closed_form_checks, verify_continuity};
use hypclass::{build, is_in_n, GoldbachSpec, HpFloat, Scalar};

fn main() -> hypclass::Result<()> {
    let mut args = std::env::args().skip(1);
    let alpha: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(18);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    println!("admissible alpha up to 60: {:?}", (16..=60).filter(|&a| is_in_n(a)).collect::<Vec<_>>());

    let g = build::<HpFloat>(&GoldbachSpec::random(alpha, seed))?;
    for (i, (sq, p)) in g.squares.iter().zip(&g.provenance).enumerate() {
        println!("xi_{i:<3}^2 = {:<26.18e} {p:?}", sq.to_f64());
    }
    let rep = verify_continuity(&g.coding, alpha, 1e-9)?;
    println!("max junction gap {:.3e}", rep.max_gap);
    println!("closed-form residual {:.3e}", closed_form_checks(&g).max());
    println!("repeated points still at {:?}", characterization_survives(&g)?);
    Ok(())
}
