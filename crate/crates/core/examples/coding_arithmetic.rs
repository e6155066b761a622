//! Transported arithmetic under a prime coding.
//!
//! ```text
//! cargo run --example coding_arithmetic
//! ```

use hypclass::{BigRational, PrimeCoding, Scalar};

fn main() -> hypclass::Result<()> {
    let c = PrimeCoding::<BigRational>::default_strict(12);
    println!("slopes: {}", c.slopes().iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" "));

    let two = c.hat_natural(2)?;
    let three = c.hat_natural(3)?;
    let six = c.hat_natural(6)?;
    println!("2^ = {two}, 3^ = {three}, 6^ = {six}");
    println!("2^ (+) 3^ = {}", c.hat_add(&two, &three)?);
    println!("2^ (x) 3^ = {}  (equals 6^: {})", c.hat_mul(&two, &three)?, c.hat_mul(&two, &three)? == six);
    println!("6^ (-) 2^ = {}", c.hat_sub(&six, &two)?);
    println!("6^ (/) 3^ = {}", c.hat_div(&six, &three)?);

    let x = BigRational::new(17.into(), 4.into());
    let y = c.psi(&x)?;
    println!("psi(17/4) = {y}, psi^-1 back = {}", c.psi_inv(&y)?);

    for k in [2usize, 5, 7] {
        let (l, r) = c.one_sided_slopes(k)?;
        println!("slopes at {k}: left {l}, right {r}");
    }
    println!("identifies primes: {}", c.identifies_primes());
    println!("identity coding identifies primes: {}", PrimeCoding::<BigRational>::identity(12).identifies_primes());

    let f = c.convert::<f64>()?;
    println!("float psi(4.25) = {}", f.psi(&4.25)?.to_f64());
    Ok(())
}
