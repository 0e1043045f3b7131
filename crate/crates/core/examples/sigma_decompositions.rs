//! Writing polynomials as combinations of Vandermonde projections.

use vandermonde::scalar::rat;
use vandermonde::sigma::{fischer_decomposition, poly_to_sigma_vd_aff, pow_sym_to_sigma_vd_proj, univariate_to_sigma_vd_proj, vd_degree_obstruction};
use vandermonde::parse_polynomial;

fn main() {
    let coeffs = [rat(2), rat(0), rat(-1), rat(5)];
    let uni = univariate_to_sigma_vd_proj(&coeffs, None, 0).unwrap();
    println!("2 - x^2 + 5x^3: {} proj terms", uni.len());
    for t in &uni.terms {
        let entries: Vec<String> = t.descriptor.forms().iter().map(|l| l.to_string()).collect();
        println!("  {} * VD({})", t.alpha, entries.join(", "));
    }

    let pow = pow_sym_to_sigma_vd_proj(3, 4, None).unwrap();
    println!("x1^4 + x2^4 + x3^4: {} proj terms", pow.len());

    let fischer = fischer_decomposition(3).unwrap();
    println!("x1*x2*x3 as {} cubes:", fischer.len());
    for (c, l) in &fischer {
        println!("  {c} * ({l})^3");
    }

    let f = parse_polynomial("x1*x2 + 3*x3 - 1").unwrap();
    let aff = poly_to_sigma_vd_aff(&f, 6).unwrap();
    println!("x1*x2 + 3*x3 - 1: {} aff terms, re-expands: {}", aff.len(), aff.reconstructs(&f));
    println!("homogeneous obstruction degree: {:?}", vd_degree_obstruction(&f));
}
