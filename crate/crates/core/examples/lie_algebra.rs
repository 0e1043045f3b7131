//! First-order symmetries, checked structurally and with dual numbers.

use vandermonde::scalar::rat;
use vandermonde::symmetry::{ideal_dimension, lie_bracket, verify_lie_member, LieElement};
use vandermonde::Matrix;

fn main() {
    let a = LieElement::new(vec![rat(1), rat(-2), rat(0)]);
    let b = LieElement::new(vec![rat(3), rat(1), rat(1)]);
    println!("A = v⊗1: {:?}", verify_lie_member(&a.matrix(), 3).unwrap());

    let c = lie_bracket(&a.matrix(), &b.matrix()).unwrap();
    println!("[A, B] by matrices equals the closed form: {}", c == a.bracket(&b).matrix());

    let not_member = Matrix::from_integers(&[vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]);
    println!("diag(1,0,0): {:?}", verify_lie_member(&not_member, 3).unwrap());

    for n in 2..=5 {
        let w: Vec<_> = (0..n).map(|i| rat(i as i64 + 1)).collect();
        let zero_sum: Vec<_> = (0..n).map(|i| rat(if i == 0 { 1 } else if i == 1 { -1 } else { 0 })).collect();
        println!(
            "n = {n}: ideal dimension {} (sum != 0), {} (sum = 0)",
            ideal_dimension(&LieElement::new(w).matrix()).unwrap(),
            ideal_dimension(&LieElement::new(zero_sum).matrix()).unwrap()
        );
    }
}
