//! Every scheme reaching K = 405 users at M/N = 2/3, with the packet count
//! and the interval that bounds m.

use coded_caching::analysis::{enumerate_schemes, estimate_m_range, parse_rational};

pub fn main() {
    let ratio = parse_rational("2/3").unwrap();
    let rows = enumerate_schemes(405, &ratio);
    println!("{} schemes for K = 405, M/N = {ratio}", rows.len());
    println!(
        "{:<12} {:>4} {:>3} {:>4}  {:<5} {:>9}  m range",
        "family", "q", "z", "m", "R", "ln F"
    );
    for r in &rows {
        let (lo, hi) = estimate_m_range(r.k, r.q, r.t);
        println!(
            "{:<12} {:>4} {:>3} {:>4}  {:<5} {:>9.4}  ({lo:.1}, {hi:.1})",
            r.family.name(),
            r.q,
            r.z,
            r.m,
            r.rate.to_string(),
            r.ln_f
        );
    }
}
