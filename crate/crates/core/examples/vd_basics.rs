//! Build, print and evaluate small Vandermonde polynomials.

use vandermonde::scalar::rat;
use vandermonde::vandermonde::{vd_degree, vd_evaluate};
use vandermonde::{format_polynomial, parse_polynomial, vd};

fn main() {
    for n in 1..=4 {
        let v = vd(n).unwrap();
        println!("VD_{n} (degree {}, {} terms): {}", vd_degree(n), v.num_terms(), format_polynomial(&v));
    }

    let point = [rat(1), rat(3), rat(4)];
    let v3 = vd(3).unwrap();
    println!("VD_3(1, 3, 4) = {} = {}", v3.evaluate(&point).unwrap(), vd_evaluate(&point));

    let text = format_polynomial(&v3);
    println!("parse(format(VD_3)) == VD_3: {}", parse_polynomial(&text).unwrap() == v3);
}
