//! Closed-form areas of the essential regions against quadrature, and the
//! second derivative of the deformed area function.
//!
//! ```text
//! cargo run --example area_calculus
//! ```

use hypclass::areas::hat_area_sum;
use hypclass::oracles::{area_quadrature_oracle, deformed_strip_oracle};
use hypclass::{area_closed, enumerate_regions, hat_at_second_derivative, BigRational, PrimeCoding, Side};

fn main() -> hypclass::Result<()> {
    let (k0, k) = (18u64, 18.5f64);
    println!("{:>3} {:>3} {:>3} {:>22} {:>22} {:>12} {:>12}", "n", "n'", "typ", "closed", "quadrature", "d1", "d2");
    for r in enumerate_regions(k0)?.iter() {
        let (n, m) = (r.index.n, r.index.n_prime);
        let a = area_closed(r.kind, n, m, &k)?;
        let q = area_quadrature_oracle(r.kind, n, m, k)?;
        println!("{n:>3} {m:>3} {:>3} {:>22.17} {:>22.17} {:>12.8} {:>12.8}", r.kind, a.area, q, a.d1, a.d2);
    }

    let c = PrimeCoding::<BigRational>::default_strict(40).convert::<f64>()?;
    let sum = hat_area_sum(&c, k0, &k)? - hat_area_sum(&c, k0, &(k0 as f64))?;
    let strip = deformed_strip_oracle(&c, k0 as f64, k)?;
    println!("deformed area gained over [{k0}, {k}]: {sum:.12} (strip integral {strip:.12})");

    let alpha = 40;
    for kk in [4.5, 9.25, 13.0, 19.5] {
        let v = hat_at_second_derivative(&c, alpha, &kk, Side::Right)?;
        println!("(A_T)''({kk}) = {v:.10}");
    }
    Ok(())
}
