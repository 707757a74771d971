//! Self-equivalences of a graph: Lambda_0, nu(G) and the internal family.

use locequiv::analysis::{analyze, nu_space, nu_space_bruteforce, pen_check};
use locequiv::{Field, LabeledGraph};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> locequiv::Result<()> {
    let f = Field::prime(3)?;
    let one = f.one();
    // two triangles sharing vertex 0
    let bowtie = LabeledGraph::from_edges(&f, 5, &[(0, 1, one), (1, 2, one), (0, 2, one), (0, 3, one), (3, 4, one), (0, 4, one)])?;
    let pc = pen_check(&bowtie)?;
    println!(
        "bowtie: dim nu from simple cycles {}, from closed walks {}, X-projection of Lambda_0 has dim {}",
        nu_space_bruteforce(&bowtie, 4)?.dim(),
        nu_space(&bowtie)?.dim(),
        pc.projection.dim()
    );
    println!("projection equals nu^perp: {}, simple cycles suffice: {}", pc.holds(), pc.simple_cycles_suffice());

    let path = LabeledGraph::from_edges(&f, 6, &[(0, 1, one), (1, 2, one), (2, 3, one), (3, 4, one), (4, 5, one)])?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let report = analyze(&path, 50, &mut rng)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap());
    Ok(())
}
