//! Runs placement, delivery and decoding for the 4-user MN PDA with six
//! files and prints the broadcast trace.

use coded_caching::constructions::construct_mn;
use coded_caching::sim::{decode_and_verify, deliver, place, DemandVector, PacketStore};

pub fn main() {
    let arr = construct_mn(4, 2).unwrap();
    let store = PacketStore::generate(6, arr.rows(), 16, 0).unwrap();
    let cache = place(&arr, &store).unwrap();
    for user in 0..arr.cols() {
        let rows: Vec<usize> = cache.cached_rows(user).iter().map(|j| j + 1).collect();
        println!(
            "user {} caches packets {rows:?} of every file ({} bytes)",
            user + 1,
            cache.bytes_cached(user)
        );
    }

    let demand = DemandVector::new(&[1, 2, 3, 4], 6).unwrap();
    let log = deliver(&arr, &store, &demand).unwrap();
    println!("\ndemand {demand}");
    for t in &log.transmissions {
        println!("  s={}: {}", t.symbol, t.describe(&demand));
    }
    print!("\n{}", log.to_trace());
    println!(
        "rate {} ({} bytes)",
        log.measured_rate(arr.rows()),
        log.bytes_sent()
    );

    let report = decode_and_verify(&arr, &store, &demand, &log).unwrap();
    print!("{report}");
    assert!(report.success);
}
