//! Classifies numbers by the corners of their deformed hyperbola.
//!
//! ```text
//! cargo run --example hyperbolic_classification -- 30
//! ```

use hypclass::hyperbola::scan_curve;
use hypclass::oracles::is_prime_trial;
use hypclass::{classify_number, BigRational, NumberClass, PointKind, PrimeCoding};

fn main() -> hypclass::Result<()> {
    let top: i64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(30);
    let c = PrimeCoding::<BigRational>::default_strict(top as usize + 1);

    for k in 2..=top {
        let kq = BigRational::from_integer(k.into());
        let class = classify_number(&c, &kq)?;
        let vortices: Vec<String> = scan_curve(&c, &kq)?
            .into_iter()
            .filter(|(_, kind)| *kind == PointKind::Vortex)
            .map(|(p, _)| format!("({},{})", p.x, p.y))
            .collect();
        let sieve = if is_prime_trial(k as u64) { "prime" } else { "composite" };
        println!("{k:>4}  {class:?}  sieve={sieve}  vortices: {}", vortices.join(" "));
        assert_eq!(class == NumberClass::Prime, sieve == "prime");
    }

    let k = BigRational::new(15.into(), 2.into());
    println!("15/2 -> {:?}", classify_number(&c, &k)?);
    Ok(())
}
