//! Decision time on equivalent connected pairs over F_3.
//!
//! Run with `cargo run --release --example timing_curve`.

use std::time::{Duration, Instant};

use locequiv::random::{random_connected_graph, random_ops};
use locequiv::{decide_with, DecideOptions, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> locequiv::Result<()> {
    let f = Field::prime(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 10;
    println!("{:>4} {:>12} {:>12} {:>8} {:>8}", "n", "mean", "max", "dim", "checks");
    for n in [10, 20, 30, 40] {
        let (mut total, mut worst) = (Duration::ZERO, Duration::ZERO);
        let (mut dim, mut checks) = (0, 0);
        for _ in 0..trials {
            let g = random_connected_graph(&f, n, 0.2, &mut rng);
            let h = g.apply_sequence(&random_ops(&f, n, 20, &mut rng))?;
            let start = Instant::now();
            let (d, stats) = decide_with(&g, &h, &DecideOptions::default())?;
            let el = start.elapsed();
            assert!(d.is_equivalent());
            total += el;
            worst = worst.max(el);
            dim = dim.max(stats.dims.iter().copied().max().unwrap_or(0));
            checks = checks.max(stats.checks);
        }
        println!("{n:>4} {:>12.2?} {:>12.2?} {dim:>8} {checks:>8}", total / trials, worst);
    }
    Ok(())
}
