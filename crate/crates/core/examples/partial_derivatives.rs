//! Dimensions of partial derivative spaces of VD_n, and the fan-in bound.

use vandermonde::measures::{fanin_lower_bound, pderiv_dim, DEFAULT_PDERIV_CAP};
use vandermonde::{vd, Field};

fn main() {
    println!("dim of order-k partials of VD_n");
    println!("n  k=0 k=1 k=2 k=3");
    for n in 2..=5 {
        let v = vd(n).unwrap();
        let row: Vec<String> = (0..=3)
            .map(|k| format!("{:>3}", pderiv_dim(&v, k, DEFAULT_PDERIV_CAP, Field::Rational).unwrap()))
            .collect();
        println!("{n}  {}", row.join(" "));
    }

    for k in [4, 6, 10, 16] {
        println!("fan-in lower bound for Sym_n,{k}: {}", fanin_lower_bound(k).unwrap());
    }
}
