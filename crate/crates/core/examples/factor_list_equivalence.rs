//! Decide equivalence when the factors are handed over directly.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vandermonde::equivalence::{equiv_vd_forms, generate_instance, EquivOptions, InstanceMode};
use vandermonde::parse::format_linear_forms;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for mode in [InstanceMode::Equivalent, InstanceMode::Perturbed] {
        let inst = generate_instance(4, 42, mode).unwrap();
        let report = equiv_vd_forms(&inst.factors, 4, &EquivOptions::default(), &mut rng).unwrap();
        println!("{mode:?}: {} after {} closure iterations", report.verdict.as_str(), report.iterations);
        match (&report.witness, &report.reason) {
            (Some(w), _) => print!("witness forms:\n{}", format_linear_forms(&w.forms)),
            (None, Some(r)) => println!("reason: {}", r.code()),
            _ => {}
        }
    }
}
