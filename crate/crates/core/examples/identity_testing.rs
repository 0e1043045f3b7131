//! Zero testing, directly and through the Vandermonde gadget.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vandermonde::equivalence::{pit_gadget, pit_gadget_polynomial, schwartz_zippel_zero_test, ZeroTest};
use vandermonde::vandermonde::vd_evaluate;
use vandermonde::{parse_polynomial, vd, Rational};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for text in ["x1*x2 - x2*x1", "x1^2*x2 - x1*x2^2"] {
        let f = parse_polynomial(text).unwrap().with_nvars(2);
        let g = pit_gadget_polynomial(&f, 2).unwrap();
        println!("{text}\n  gadget equals VD_2: {}", g == vd(2).unwrap());

        // Only black-box access to f from here on.
        let gadget = pit_gadget(|a: &[Rational]| f.evaluate(a).unwrap(), 2).unwrap();
        let diff = |a: &[Rational]| gadget(a) - vd_evaluate(a);
        let degree = 2 + f.degree().max(0) as u64;
        match schwartz_zippel_zero_test(diff, 2, degree, 10, 100 * degree, &mut rng).unwrap() {
            ZeroTest::ProbablyZero { error_bound } => println!("  gadget - VD looks zero (error <= {error_bound:.2e})"),
            ZeroTest::NonzeroWitness { point, value, trial } => {
                let p: Vec<String> = point.iter().map(|x| x.to_string()).collect();
                println!("  gadget - VD = {value} at ({}) on trial {trial}", p.join(", "));
            }
        }
    }
}
