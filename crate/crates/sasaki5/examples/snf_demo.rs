//! Smith normal form, cokernels, and the torsion-shape classifier.
//!
//! Run with: cargo run --example snf_demo

use sasaki5::abelian::{classify_torsion_shape, cokernel, smith_normal_form, FiniteAbelianGroup, IntMatrix};

fn main() {
    let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
    let smith = smith_normal_form(&m);
    println!("diagonal of the Smith form: {:?}", smith.diagonal());
    println!("cokernel: {}", cokernel(&m));

    // Which finite groups arise as tors H_2 of a smooth positive Sasakian
    // 5-manifold?  The classifier searches for an extension of a cyclic
    // (or nearly cyclic) quotient by one of the allowed square shapes.
    for orders in [vec![7u64, 7, 7], vec![6, 6, 6, 6], vec![4, 4, 4, 4], vec![30]] {
        let g = FiniteAbelianGroup::from_orders(
            &orders.iter().map(|&n| n.into()).collect::<Vec<_>>(),
        );
        let shape = classify_torsion_shape(&g);
        if shape.witnesses.is_empty() {
            println!("{g}: not admissible");
        }
        for w in &shape.witnesses {
            println!("{g}: admissible via 0 -> {} -> {g} -> {} -> 0", w.subgroup, w.quotient);
        }
    }
}
