//! Memory sharing between the two end points of a family, compared with
//! the general-family scheme at the same memory ratio.

use coded_caching::analysis::{memory_share, MemoryShareSpec, SchemeMetrics};
use coded_caching::constructions::{theorem_params, ConstructionParams, Family};
use num_bigint::BigInt;
use num_rational::BigRational;

fn metrics(z: u32) -> SchemeMetrics {
    let p = theorem_params(Family::General, &ConstructionParams::new(5, z, 3, 2)).unwrap();
    SchemeMetrics::from_params(&p).unwrap()
}

pub fn main() {
    let (lo, hi) = (metrics(1), metrics(4));
    let mid = metrics(3);
    // Weight on `lo` that lands exactly on mid's memory ratio.
    let lambda = (&hi.ratio - &mid.ratio) / (&hi.ratio - &lo.ratio);
    let shared =
        memory_share(&MemoryShareSpec::pair(lo.clone(), hi.clone(), lambda.clone()).unwrap());
    assert_eq!(shared.ratio, mid.ratio);

    let show = |name: &str, m: &SchemeMetrics| {
        println!(
            "{name:<22} M/N = {:<8} R = {:<10} F = {}",
            m.ratio,
            m.rate,
            m.f.as_ref().unwrap()
        );
    };
    show("z = 1", &lo);
    show("z = 4", &hi);
    show(&format!("shared, lambda = {lambda}"), &shared);
    show("z = 3", &mid);

    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let even = memory_share(&MemoryShareSpec::pair(lo, hi, half).unwrap());
    println!(
        "\nequal split: M/N = {}, R = {}, ln F = {:.4}",
        even.ratio, even.rate, even.ln_f
    );
}
