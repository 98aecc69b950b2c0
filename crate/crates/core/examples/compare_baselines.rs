//! Rate and packet-count ratios against the memory-sharing baselines, at
//! and between lattice points.

use coded_caching::analysis::{
    compare_general, compare_special, format_sig15, locate_special, parse_rational, table_iv_rows,
    table_v_rows, OperatingPoint,
};

pub fn main() {
    println!("general family, q = 20, t = 3, lambda = 0.1");
    println!(
        "{:>3}  {:<22} {:<22} advantage",
        "z", "R ratio <", "F ratio <"
    );
    for r in table_iv_rows() {
        println!(
            "{:>3}  {:<22} {:<22} {}",
            r.z,
            format_sig15(r.r_ratio_bound),
            format_sig15(r.f_ratio),
            r.advantage
        );
    }

    println!("\nspecial family, q = 20, lambda = 0.5");
    println!(
        "{:>3}  {:<22} {:<22} exact F ratio",
        "z", "R ratio <", "F ratio ="
    );
    for r in table_v_rows() {
        println!(
            "{:>3}  {:<22} {:<22} {}",
            r.z,
            format_sig15(r.r_ratio_bound),
            format_sig15(r.f_ratio),
            r.f_ratio_actual
        );
    }

    let lambda = parse_rational("0.5").unwrap();
    let target = parse_rational("61/100").unwrap();
    let (z, point) = locate_special(20, &target).unwrap();
    let r = compare_special(20, z, &lambda, point).unwrap();
    println!(
        "\nM/N = {target}: z = {z} ({point:?}), F ratio < {}",
        format_sig15(r.f_ratio)
    );

    let r = compare_general(20, 14, 3, &lambda, OperatingPoint::Between).unwrap();
    println!(
        "general, z between 14 and 15: F ratio < {} (true value {})",
        format_sig15(r.f_ratio),
        r.f_ratio_actual
    );
}
