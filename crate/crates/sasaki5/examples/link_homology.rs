//! H_2 of Brieskorn-Pham links from the Milnor-fiber monodromy.
//!
//! Run with: cargo run --example link_homology

use sasaki5::links::BPExponents;

fn main() {
    let cases = [
        [6, 6, 2, 5],  // torsion (Z/5)^4
        [10, 10, 2, 3], // torsion (Z/3)^8
        [6, 6, 2, 4],  // double cover used by two quotient families
        [10, 5, 2, 4], // double cover of the fourth (Z/4)^4 family
        [2, 2, 2, 2],  // the quadric link: H_2 = Z
        [2, 2, 2, 7],  // odd exponent: H_2 = 0
    ];
    for a in cases {
        let bp = BPExponents::new(a).expect("exponents >= 2");
        let h2 = bp.link_h2();
        println!(
            "exponents {a:?}: mu = {}, H_2 = {h2}, det(I - h) = {}",
            bp.milnor_number(),
            bp.torsion_order_det()
        );
    }
}
