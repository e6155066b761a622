//! Essential points of the scalar construction as u -> 1.
//!
//! ```text
//! cargo run --example scalar_limit -- 18
//! ```

use hypclass::construction::scalar_limit_sweep;
use hypclass::{BigRational, HpFloat};

fn main() -> hypclass::Result<()> {
    let alpha: u64 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(18);
    let hs: Vec<BigRational> = (1..=6).map(|e| BigRational::new(1.into(), 10i64.pow(e).into())).collect();
    let t = scalar_limit_sweep::<HpFloat>(alpha, &hs, &BigRational::from_integer(1.into()))?;
    println!("u,k0,x_k0,y_k0");
    for r in &t.rows {
        println!("{},{},{:.12},{:.12}", r.u, r.k0, r.x_k0, r.y_k0);
    }
    for (h, d) in hs.iter().zip(&t.max_deviation) {
        println!("h = {h:<10} max deviation from 1/2: {d:.3e}");
    }
    println!("deviation / h <= {:.4}", t.slope_bound);
    Ok(())
}
