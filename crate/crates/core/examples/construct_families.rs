//! Builds one array from each family and checks it against the closed-form
//! parameters.
//!
//! ```text
//! cargo run --example construct_families
//! ```

use coded_caching::constructions::{
    construct, construct_mn, theorem_params, ConstructionParams, Family,
};
use coded_caching::pda::{params_of, verify_pda};

pub fn main() {
    let p = ConstructionParams::new(3, 2, 2, 1);
    for family in Family::ALL {
        let arr = construct(family, &p, 1_000_000).expect("small parameters");
        let counted = params_of(&arr).expect("uniform columns");
        assert_eq!(counted, theorem_params(family, &p).unwrap());
        println!(
            "{family:<12} {p}  (K,F,Z,S) = {counted}  M/N = {}  R = {}  valid = {}",
            counted.memory_ratio(),
            counted.rate(),
            verify_pda(&arr).valid
        );
    }

    let mn = construct_mn(4, 2).unwrap();
    println!("\nMN PDA for K = 4, t = 2:\n{mn}");

    let special = construct(
        Family::Special,
        &ConstructionParams::special(3, 2, 2),
        1_000,
    )
    .unwrap();
    println!("special family, q = 3, z = 2, m = 2:\n{special}");
}
