//! Parses a PDA in the text format, verifies it, then breaks it and shows
//! the violations the verifier reports.

use coded_caching::pda::{emit, parse, verify_document, PdaCell};

const EXAMPLE: &str = "\
# K F Z S
4 6 3 4
* * 1 2
* 1 * 3
* 2 3 *
1 * * 4
2 * 4 *
3 4 * *
";

pub fn main() {
    let doc = parse(EXAMPLE).expect("well-formed");
    println!("header {}: {}", doc.header, verify_document(&doc));

    let mut broken = doc.clone();
    broken.array.set(0, 0, PdaCell::symbol(5).unwrap());
    print!("star at (1,1) replaced by 5: {}", verify_document(&broken));

    let mut clash = doc.clone();
    clash.array.set(1, 1, PdaCell::symbol(2).unwrap());
    print!("symbol 2 twice in column 2: {}", verify_document(&clash));

    print!("\nround trip:\n{}", emit(&doc.array));
    match parse("4 6 3 4\n* * 1\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("short row: {e}"),
    }
}
