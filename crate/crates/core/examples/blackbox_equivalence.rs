//! Decide equivalence from an expanded polynomial: factor, fix scalars, close.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vandermonde::equivalence::{equiv_vd, generate_instance, EquivOptions, InstanceMode};
use vandermonde::{format_polynomial, parse_polynomial};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let inst = generate_instance(3, 9, InstanceMode::Equivalent).unwrap();
    let f = inst.polynomial();
    println!("f = {}", format_polynomial(&f));
    let report = equiv_vd(&f, &EquivOptions::default(), &mut rng).unwrap();
    println!("verdict: {}", report.verdict.as_str());
    if let Some(w) = &report.witness {
        for (i, l) in w.forms.iter().enumerate() {
            println!("  L{} = {l}", i + 1);
        }
        println!("  checked by {}", w.verification.as_str());
    }

    // Three factors, but matching VD_3 needs an irrational scalar.
    let g = parse_polynomial("x1^2*x2 + 2*x1*x2^2").unwrap();
    let report = equiv_vd(&g, &EquivOptions::default(), &mut rng).unwrap();
    println!("x1*x2*(x1 + 2*x2): {} ({})", report.verdict.as_str(), report.reason.map(|r| r.code()).unwrap_or("-"));
}
