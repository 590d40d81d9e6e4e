//! Which of the surfaces with nontrivial pi_1 carry smooth Seifert
//! bundles?  Exhaustive residue search on the encoded lattice models, and
//! the exponent obstruction (a local class group larger than the exponent
//! of Weil/Cartier can never be generated by one class) for the rest.
//!
//! Run with: cargo run --example smooth_bundles

use sasaki5::catalog::{exponent_obstruction, smooth_bundle_classes, surface_by_name, table2};

fn main() {
    for name in ["3A2", "A5+A1", "A3+2A1", "4A2"] {
        let s = surface_by_name(name).expect("encoded model");
        let classes = smooth_bundle_classes(&s);
        if classes.is_empty() {
            println!("{name}: no smooth bundle (no class is a unit at every singular point)");
        } else {
            println!(
                "{name}: smooth bundle classes in basis ({}): {classes:?}",
                s.basis.join(", ")
            );
        }
    }
    println!();
    for row in table2() {
        if exponent_obstruction(row) {
            println!(
                "{}: no smooth bundle (local order {:?} exceeds the exponent of Weil/Cartier {:?})",
                row.singularities, row.local_orders, row.weil_mod_pic
            );
        }
    }
}
