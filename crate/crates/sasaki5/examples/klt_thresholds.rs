//! Log-terminality thresholds of plane curve germs by the Newton-polygon
//! test, and the closed-form bound for elliptic-curve pairs.
//!
//! Run with: cargo run --example klt_thresholds

use sasaki5::klt::{klt_bound, newton_klt, Germ, KltOutcome};
use sasaki5::{rat, rint};

/// Largest k/64 for which the polygon test certifies that (C^2, c * germ)
/// is klt.
fn threshold(f: &Germ) -> String {
    let mut best = None;
    for k in 1..64 {
        let c = rat(k, 64);
        match newton_klt(f, &c, 1, 1) {
            Ok(a) if matches!(a.outcome, KltOutcome::Klt) => best = Some(c),
            _ => break,
        }
    }
    best.map_or("none".to_string(), |c| format!("klt for c <= {c} (step 1/64)"))
}

fn main() {
    let cusp = Germ::from_ints(&[(1, 0, 2), (-1, 3, 0)]);
    let node = Germ::from_ints(&[(1, 0, 2), (-1, 2, 0)]);
    let tacnode = Germ::from_ints(&[(1, 0, 2), (-2, 2, 1), (1, 4, 0)]); // (y - x^2)^2
    println!("cusp y^2 - x^3:        {}  (threshold 5/6)", threshold(&cusp));
    println!("node y^2 - x^2:        {}  (threshold 1)", threshold(&node));
    println!("tacnode (y - x^2)^2:   {}  (threshold 1/2)", threshold(&tacnode));

    // Elliptic curve C in the plane with D = (3/n)C/3: the pair
    // ((1 - 1/n)C + D) is klt exactly when min{n/9 + 1/3, n/3} > 1,
    // i.e. for n >= 7.
    for n in 5..=8u64 {
        let b = klt_bound(&rat(9, n as i64), &rat(3, n as i64), n).expect("positive input");
        println!(
            "n = {n}: bound {b} -> c = 1 {}",
            if b > rint(1) { "admissible" } else { "not admissible" }
        );
    }

    // Genus 3 curve C = 2E + 8F on the 4th Hirzebruch surface with
    // coefficient 2/3: local number <= 4/3, multiplicity <= 2/3.
    let b = klt_bound(&rat(4, 3), &rat(2, 3), 3).expect("positive input");
    println!("Hirzebruch case: bound {b} = 3/4 + 1/2 side; c = 2/3 < {b} is klt");
}
