//! Split a product of affine linear forms back into its factors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vandermonde::equivalence::{factor_linear_forms, DEFAULT_LINE_BUDGET};
use vandermonde::parse_polynomial;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for text in [
        "x1^2 - x2^2",
        "6*x1^2 + 5*x1*x2 + x2^2 - x1 - 1/2*x2",
        "2*x1^2*x2 - 6*x1^2 + 2*x1*x2^2 - 6*x1*x2 - x1*x2*x3 + 3*x1*x3 + 2*x1*x2 - 6*x1 - x2^2*x3 + 3*x2*x3 - x2*x3 + 3*x3",
        "x1^2 + x2^2",
    ] {
        let f = parse_polynomial(text).unwrap();
        match factor_linear_forms(&f, &mut rng, DEFAULT_LINE_BUDGET) {
            Ok(res) => {
                let parts: Vec<String> = res.factors.iter().map(|l| format!("({l})")).collect();
                println!("{text} = {} * {}", res.constant, parts.join(" * "));
            }
            Err(e) => println!("{text}: {e}"),
        }
    }
}
