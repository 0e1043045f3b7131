//! Restricted evaluation dimension of symmetric polynomials and projections.

use vandermonde::measures::{elementary_symmetric, red, red_leading_monomial_bound, DEFAULT_RED_CAP};
use vandermonde::vandermonde::{expand_projection, Entry, ProjectionClass, VdProjectionDescriptor};
use vandermonde::scalar::rat;
use vandermonde::Field;

fn main() {
    for k in 2..=4 {
        let sym = elementary_symmetric(6, k).unwrap();
        let subset: Vec<usize> = (0..k).collect();
        let r = red(&sym, &subset, DEFAULT_RED_CAP, Field::Rational).unwrap();
        let lm = red_leading_monomial_bound(&sym, &subset).unwrap();
        println!(
            "Sym_6,{k}: red = {} over {} assignments, certified >= {lm}, 2^k - 1 = {}",
            r.dimension,
            r.assignments,
            (1 << k) - 1
        );
    }

    let d = VdProjectionDescriptor::new(
        ProjectionClass::Proj,
        vec![Entry::Var(0), Entry::Var(1), Entry::Const(rat(2)), Entry::Var(2)],
    )
    .unwrap();
    let f = expand_projection(&d);
    let r = red(&f, &[0, 1], DEFAULT_RED_CAP, Field::Prime(2_147_483_647)).unwrap();
    println!("VD(x1, x2, 2, x3) on {{x1, x2}}: red = {} <= 9", r.dimension);
}
