//! Nonzero solutions of x^T A x = 0 for 3x3 matrices over odd fields.

use locequiv::analysis::{isotropic_3x3, quadratic_value};
use locequiv::{Fe, Field};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> locequiv::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for q in [3, 5, 7, 9, 25] {
        let f = Field::with_order(q)?;
        let mut m = [[Fe::ZERO; 3]; 3];
        for row in m.iter_mut() {
            for a in row.iter_mut() {
                *a = f.random_nonzero(&mut rng);
            }
        }
        let x = isotropic_3x3(&f, &m)?;
        let shown: Vec<String> = x.iter().map(|&a| f.format(a)).collect();
        println!("q = {q:>2}: x = ({}), x^T A x = {}", shown.join(", "), f.format(quadratic_value(&f, &m, &x)));
    }
    Ok(())
}
