//! Symmetries of VD: even permutations plus rank-one shifts.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vandermonde::parse::format_matrix;
use vandermonde::scalar::rat;
use vandermonde::symmetry::{decompose_symmetry, is_symmetry, reassemble, sample_symmetry};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = sample_symmetry(4, &mut rng).unwrap();
    print!("sampled:\n{}", format_matrix(&a));
    println!("is a symmetry: {}", is_symmetry(&a, 4).unwrap());
    if let Ok(d) = decompose_symmetry(&a).unwrap() {
        println!("perm {:?} ({:?}), v = {:?}", d.perm, d.parity, d.v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    }

    let odd = reassemble(&[rat(1), rat(0), rat(0)], &[1, 0, 2]);
    println!("odd permutation plus shift: {:?}", decompose_symmetry(&odd).unwrap().err());
}
