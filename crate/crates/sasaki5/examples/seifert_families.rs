//! Two independent derivations of the same torsion groups: once as H_2 of
//! a Brieskorn-Pham link via the monodromy, once from a Seifert bundle
//! over a weighted projective plane via the branch-divisor formula
//! tors H_2 = sum (Z/m)^(2g).
//!
//! Run with: cargo run --example seifert_families

use sasaki5::links::{cross_check, BPExponents};
use sasaki5::seifert::{BranchDivisor, SeifertData};
use sasaki5::surface::weighted_p2;

fn main() {
    // (exponents, base weights, branch multiplicity, branch degree)
    let cases = [([6, 6, 2, 5], (1u64, 1, 3), 5u64, 6i64), ([10, 10, 2, 3], (1, 1, 5), 3, 10)];
    for (exponents, (a, b, c), m, deg) in cases {
        let bp = BPExponents::new(exponents).expect("exponents >= 2");
        let link = bp.link_h2();

        let s = weighted_p2(a, b, c).expect("coprime weights");
        let class = s.class(&[deg]).expect("one-dimensional basis");
        let genus = s.genus(&class).expect("integral genus");
        let background = -&s.canonical_class();
        let bundle = SeifertData::new(s, background, vec![BranchDivisor { m, b: 1, class }])
            .expect("valid Seifert data");
        let tors = bundle.tors_h2().expect("branch formula applies");

        println!("exponents {exponents:?} vs bundle over P({a},{b},{c}) branched with m = {m}:");
        println!("  link H_2 = {link}");
        println!("  branch curve genus {genus}, Seifert torsion = {}", tors.group);
        println!("  oracles agree: {}", cross_check(&link, &tors.group));
    }
}
