//! End-to-end caching scheme driven by a PDA on synthetic file contents.
//!
//! [`place`] fills user caches from the star cells, [`deliver`] broadcasts
//! one XOR per symbol, and [`decode_and_verify`] has every user peel its
//! missing packets off the broadcasts using only its own cache, then compares
//! the reassembled file with the original byte for byte.

mod trace;

use std::fmt;

use num_bigint::BigUint;
use num_rational::BigRational;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::pda::{PdaArray, PdaCell};

pub use trace::TraceError;

/// Packet size used when none is given.
pub const DEFAULT_PACKET_SIZE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimError {
    #[error("the library needs at least one file and a positive packet size")]
    EmptyStore,
    #[error("array has {rows} rows but files are split into {packets} packets")]
    PacketCount { rows: usize, packets: usize },
    #[error("demand has {found} entries, expected one per user ({expected})")]
    DemandLength { expected: usize, found: usize },
    #[error("user {user} demands file {file}, outside [1, {n_files}]")]
    DemandOutOfRange {
        user: usize,
        file: usize,
        n_files: usize,
    },
    #[error(transparent)]
    Trace(#[from] TraceError),
}

/// `N` files of `F` equal packets each, generated from a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PacketStore {
    n_files: usize,
    n_packets: usize,
    packet_size: usize,
    seed: u64,
    data: Vec<u8>,
}

impl PacketStore {
    /// Pseudo-random contents from a ChaCha8 stream seeded with `seed`.
    pub fn generate(
        n_files: usize,
        n_packets: usize,
        packet_size: usize,
        seed: u64,
    ) -> Result<Self, SimError> {
        if n_files == 0 || n_packets == 0 || packet_size == 0 {
            return Err(SimError::EmptyStore);
        }
        let mut data = vec![0u8; n_files * n_packets * packet_size];
        ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut data);
        Ok(PacketStore {
            n_files,
            n_packets,
            packet_size,
            seed,
            data,
        })
    }

    pub fn n_files(&self) -> usize {
        self.n_files
    }

    pub fn n_packets(&self) -> usize {
        self.n_packets
    }

    pub fn packet_size(&self) -> usize {
        self.packet_size
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Packet `row` of `file` (both 0-based).
    pub fn packet(&self, file: usize, row: usize) -> &[u8] {
        let start = (file * self.n_packets + row) * self.packet_size;
        &self.data[start..start + self.packet_size]
    }

    /// The whole file, packets in order.
    pub fn file(&self, file: usize) -> &[u8] {
        let len = self.n_packets * self.packet_size;
        &self.data[file * len..(file + 1) * len]
    }
}

/// One requested file per user. Stored 0-based; constructed and displayed
/// with 1-based file numbers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DemandVector {
    files: Vec<usize>,
}

impl DemandVector {
    pub fn new(one_based: &[usize], n_files: usize) -> Result<Self, SimError> {
        let files = one_based
            .iter()
            .enumerate()
            .map(|(user, &d)| {
                if d == 0 || d > n_files {
                    Err(SimError::DemandOutOfRange {
                        user: user + 1,
                        file: d,
                        n_files,
                    })
                } else {
                    Ok(d - 1)
                }
            })
            .collect::<Result<_, _>>()?;
        Ok(DemandVector { files })
    }

    /// Every user requests the same file (1-based).
    pub fn uniform(users: usize, file: usize, n_files: usize) -> Result<Self, SimError> {
        DemandVector::new(&vec![file; users], n_files)
    }

    /// Each user's file drawn uniformly from `[1, n_files]`.
    pub fn random<R: Rng + ?Sized>(users: usize, n_files: usize, rng: &mut R) -> Self {
        DemandVector {
            files: (0..users).map(|_| rng.gen_range(0..n_files)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.files.len()
    }

    pub fn is_empty(&self) -> bool {
        self.files.is_empty()
    }

    /// 0-based file requested by `user`.
    pub fn file_of(&self, user: usize) -> usize {
        self.files[user]
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.files.iter().map(|d| d + 1).collect()
    }

    fn check(&self, users: usize, n_files: usize) -> Result<(), SimError> {
        if self.files.len() != users {
            return Err(SimError::DemandLength {
                expected: users,
                found: self.files.len(),
            });
        }
        if let Some((user, &d)) = self.files.iter().enumerate().find(|(_, &d)| d >= n_files) {
            return Err(SimError::DemandOutOfRange {
                user: user + 1,
                file: d + 1,
                n_files,
            });
        }
        Ok(())
    }
}

impl fmt::Display for DemandVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.one_based().iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// User caches after placement. Packets are borrowed from the store rather
/// than copied; a user can only read packets of its star rows.
#[derive(Clone, Debug)]
pub struct CacheState<'a> {
    store: &'a PacketStore,
    users: usize,
    star: Vec<bool>,
    rows: Vec<Vec<usize>>,
}

impl<'a> CacheState<'a> {
    pub fn users(&self) -> usize {
        self.users
    }

    /// Star rows of `user`, ascending (0-based).
    pub fn cached_rows(&self, user: usize) -> &[usize] {
        &self.rows[user]
    }

    pub fn contains(&self, user: usize, row: usize) -> bool {
        self.star[row * self.users + user]
    }

    /// Packet `(file, row)` from `user`'s cache, or `None` if not cached.
    pub fn get(&self, user: usize, file: usize, row: usize) -> Option<&'a [u8]> {
        (file < self.store.n_files() && self.contains(user, row))
            .then(|| self.store.packet(file, row))
    }

    /// `N * Z` for a valid PDA.
    pub fn packets_cached(&self, user: usize) -> usize {
        self.store.n_files() * self.rows[user].len()
    }

    pub fn bytes_cached(&self, user: usize) -> usize {
        self.packets_cached(user) * self.store.packet_size()
    }
}

/// Caches packet `j` of every file at user `k` whenever cell `(j, k)` is a star.
pub fn place<'a>(arr: &PdaArray, store: &'a PacketStore) -> Result<CacheState<'a>, SimError> {
    if arr.rows() != store.n_packets() {
        return Err(SimError::PacketCount {
            rows: arr.rows(),
            packets: store.n_packets(),
        });
    }
    let users = arr.cols();
    let star: Vec<bool> = arr.cells().iter().map(|c| c.is_star()).collect();
    let mut rows = vec![Vec::new(); users];
    for (j, k, c) in arr.iter() {
        if c.is_star() {
            rows[k].push(j);
        }
    }
    Ok(CacheState {
        store,
        users,
        star,
        rows,
    })
}

/// A user/row pair contributing to a broadcast (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub user: usize,
    pub row: usize,
}

/// The broadcast for one symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transmission {
    pub symbol: u32,
    /// Contributing cells, ascending by user.
    pub terms: Vec<Term>,
    pub payload: Vec<u8>,
}

impl Transmission {
    /// The XOR as packet names, e.g. `W_{1,4} ⊕ W_{2,2} ⊕ W_{3,1}`.
    pub fn describe(&self, demand: &DemandVector) -> String {
        let names: Vec<String> = self
            .terms
            .iter()
            .map(|t| format!("W_{{{},{}}}", demand.file_of(t.user) + 1, t.row + 1))
            .collect();
        names.join(" ⊕ ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransmissionLog {
    pub packet_size: usize,
    pub transmissions: Vec<Transmission>,
}

impl TransmissionLog {
    pub fn bytes_sent(&self) -> usize {
        self.transmissions.iter().map(|t| t.payload.len()).sum()
    }

    /// Bytes sent over the size of one file, `S/F` for a valid PDA.
    pub fn measured_rate(&self, n_packets: usize) -> BigRational {
        BigRational::new(
            BigUint::from(self.bytes_sent()).into(),
            BigUint::from(n_packets * self.packet_size).into(),
        )
    }

    pub fn find(&self, symbol: u32) -> Option<&Transmission> {
        self.transmissions
            .binary_search_by_key(&symbol, |t| t.symbol)
            .ok()
            .map(|i| &self.transmissions[i])
    }
}

fn xor_into(acc: &mut [u8], packet: &[u8]) {
    for (a, b) in acc.iter_mut().zip(packet) {
        *a ^= b;
    }
}

/// Broadcasts, for each symbol in ascending order, the XOR of the demanded
/// packets at the cells holding it.
pub fn deliver(
    arr: &PdaArray,
    store: &PacketStore,
    demand: &DemandVector,
) -> Result<TransmissionLog, SimError> {
    if arr.rows() != store.n_packets() {
        return Err(SimError::PacketCount {
            rows: arr.rows(),
            packets: store.n_packets(),
        });
    }
    demand.check(arr.cols(), store.n_files())?;
    let mut transmissions = Vec::new();
    for (idx, cells) in arr.symbol_occurrences().into_iter().enumerate() {
        if cells.is_empty() {
            continue;
        }
        let mut terms: Vec<Term> = cells
            .into_iter()
            .map(|(row, user)| Term { user, row })
            .collect();
        terms.sort();
        let mut payload = vec![0u8; store.packet_size()];
        for t in &terms {
            xor_into(&mut payload, store.packet(demand.file_of(t.user), t.row));
        }
        transmissions.push(Transmission {
            symbol: idx as u32 + 1,
            terms,
            payload,
        });
    }
    Ok(TransmissionLog {
        packet_size: store.packet_size(),
        transmissions,
    })
}

/// A packet a user needed for cancellation but did not have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecodeFault {
    /// Packet `(file, needed.row)` of the term is not in the decoder's cache.
    NotCached {
        symbol: u32,
        needed: Term,
        file: usize,
    },
    /// No broadcast carries the symbol of `(user, row)`.
    NoBroadcast { symbol: u32, row: usize },
    /// The broadcast for `symbol` does not list the decoder's own cell.
    NotAddressed { symbol: u32, row: usize },
}

impl fmt::Display for DecodeFault {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecodeFault::NotCached {
                symbol,
                needed,
                file,
            } => write!(
                f,
                "symbol {symbol}: W_{{{},{}}} (term of user {}) is not cached",
                file + 1,
                needed.row + 1,
                needed.user + 1
            ),
            DecodeFault::NoBroadcast { symbol, row } => {
                write!(f, "row {}: no broadcast for symbol {symbol}", row + 1)
            }
            DecodeFault::NotAddressed { symbol, row } => {
                write!(
                    f,
                    "row {}: broadcast {symbol} does not include this cell",
                    row + 1
                )
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UserDecode {
    pub user: usize,
    /// 0-based requested file.
    pub file: usize,
    pub decoded_hash: String,
    pub original_hash: String,
    pub recovered: bool,
    pub faults: Vec<DecodeFault>,
    /// Cache reads made while decoding, all of which succeeded unless
    /// `faults` says otherwise.
    pub cache_reads: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodeReport {
    pub success: bool,
    pub per_user: Vec<UserDecode>,
}

impl fmt::Display for DecodeReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for u in &self.per_user {
            let status = if u.recovered { "ok" } else { "FAILED" };
            writeln!(
                f,
                "user {} file {}: {status} sha256={}",
                u.user + 1,
                u.file + 1,
                &u.decoded_hash[..16]
            )?;
            for fault in &u.faults {
                writeln!(f, "  {fault}")?;
            }
        }
        Ok(())
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Decodes every user's demanded file from its cache and the broadcasts,
/// and compares it with the original.
pub fn decode_and_verify(
    arr: &PdaArray,
    store: &PacketStore,
    demand: &DemandVector,
    log: &TransmissionLog,
) -> Result<DecodeReport, SimError> {
    let cache = place(arr, store)?;
    demand.check(arr.cols(), store.n_files())?;
    let size = store.packet_size();
    let mut per_user = Vec::with_capacity(arr.cols());
    for user in 0..arr.cols() {
        let file = demand.file_of(user);
        let mut decoded = vec![0u8; store.n_packets() * size];
        let mut faults = Vec::new();
        let mut cache_reads = 0;
        for row in 0..arr.rows() {
            let out = &mut decoded[row * size..(row + 1) * size];
            let symbol = match arr.get(row, user) {
                PdaCell::Star => {
                    cache_reads += 1;
                    out.copy_from_slice(cache.get(user, file, row).expect("star rows are cached"));
                    continue;
                }
                PdaCell::Symbol(s) => s.get(),
            };
            let Some(tx) = log.find(symbol) else {
                faults.push(DecodeFault::NoBroadcast { symbol, row });
                continue;
            };
            let own = Term { user, row };
            if !tx.terms.contains(&own) {
                faults.push(DecodeFault::NotAddressed { symbol, row });
                continue;
            }
            out.copy_from_slice(&tx.payload);
            for &term in tx.terms.iter().filter(|&&t| t != own) {
                let needed_file = demand.file_of(term.user);
                cache_reads += 1;
                match cache.get(user, needed_file, term.row) {
                    Some(p) => xor_into(out, p),
                    None => faults.push(DecodeFault::NotCached {
                        symbol,
                        needed: term,
                        file: needed_file,
                    }),
                }
            }
        }
        let original = store.file(file);
        per_user.push(UserDecode {
            user,
            file,
            decoded_hash: sha256_hex(&decoded),
            original_hash: sha256_hex(original),
            recovered: faults.is_empty() && decoded == original,
            faults,
            cache_reads,
        });
    }
    Ok(DecodeReport {
        success: per_user.iter().all(|u| u.recovered),
        per_user,
    })
}

/// Summary of one delivery round.
#[derive(Clone, Debug)]
pub struct RoundOutcome {
    pub log: TransmissionLog,
    pub report: DecodeReport,
}

/// `deliver` followed by `decode_and_verify`.
pub fn run_round(
    arr: &PdaArray,
    store: &PacketStore,
    demand: &DemandVector,
) -> Result<RoundOutcome, SimError> {
    let log = deliver(arr, store, demand)?;
    let report = decode_and_verify(arr, store, demand, &log)?;
    Ok(RoundOutcome { log, report })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE_1: &str = "* * 1 2\n* 1 * 3\n* 2 3 *\n1 * * 4\n2 * 4 *\n3 4 * *";

    fn example() -> PdaArray {
        PdaArray::from_grid_str(EXAMPLE_1).unwrap()
    }

    #[test]
    fn placement_follows_star_rows() {
        let store = PacketStore::generate(6, 6, 8, 0).unwrap();
        let a = example();
        let cache = place(&a, &store).unwrap();
        assert_eq!(cache.cached_rows(0), &[0, 1, 2]);
        assert_eq!(cache.cached_rows(1), &[0, 3, 4]);
        assert_eq!(cache.cached_rows(2), &[1, 3, 5]);
        assert_eq!(cache.cached_rows(3), &[2, 4, 5]);
        assert_eq!(cache.packets_cached(0), 18);
        assert_eq!(cache.get(0, 5, 2), Some(store.packet(5, 2)));
        assert_eq!(cache.get(0, 5, 3), None);
    }

    #[test]
    fn single_column_placement() {
        let store = PacketStore::generate(1, 2, 4, 9).unwrap();
        let a = PdaArray::from_grid_str("*\n1").unwrap();
        let cache = place(&a, &store).unwrap();
        assert_eq!(cache.cached_rows(0), &[0]);
        assert_eq!(cache.packets_cached(0), 1);
    }

    #[test]
    fn smallest_delivery() {
        let store = PacketStore::generate(2, 2, 16, 3).unwrap();
        let a = PdaArray::from_grid_str("* 1\n1 *").unwrap();
        let d = DemandVector::new(&[1, 2], 2).unwrap();
        let log = deliver(&a, &store, &d).unwrap();
        assert_eq!(log.transmissions.len(), 1);
        let mut expected = store.packet(1, 0).to_vec();
        xor_into(&mut expected, store.packet(0, 1));
        assert_eq!(log.transmissions[0].payload, expected);
        assert_eq!(log.transmissions[0].describe(&d), "W_{1,2} ⊕ W_{2,1}");
        assert!(decode_and_verify(&a, &store, &d, &log).unwrap().success);
    }

    #[test]
    fn uniform_demand_is_decodable() {
        let store = PacketStore::generate(6, 6, 32, 1).unwrap();
        let d = DemandVector::uniform(4, 1, 6).unwrap();
        let out = run_round(&example(), &store, &d).unwrap();
        assert!(out.report.success, "{}", out.report);
    }

    #[test]
    fn demand_errors() {
        assert!(matches!(
            DemandVector::new(&[1, 7], 6),
            Err(SimError::DemandOutOfRange {
                user: 2,
                file: 7,
                ..
            })
        ));
        assert!(DemandVector::new(&[0], 6).is_err());
        let store = PacketStore::generate(6, 6, 8, 0).unwrap();
        let short = DemandVector::new(&[1, 2], 6).unwrap();
        assert!(matches!(
            deliver(&example(), &store, &short),
            Err(SimError::DemandLength {
                expected: 4,
                found: 2
            })
        ));
        let wrong_f = PacketStore::generate(6, 5, 8, 0).unwrap();
        let d = DemandVector::new(&[1, 2, 3, 4], 6).unwrap();
        assert!(matches!(
            deliver(&example(), &wrong_f, &d),
            Err(SimError::PacketCount {
                rows: 6,
                packets: 5
            })
        ));
        assert_eq!(PacketStore::generate(0, 1, 1, 0), Err(SimError::EmptyStore));
    }

    #[test]
    fn corrupted_array_reports_missing_cache_terms() {
        let mut a = example();
        a.set(3, 0, PdaCell::symbol(2).unwrap());
        let store = PacketStore::generate(6, 6, 8, 0).unwrap();
        let d = DemandVector::new(&[1, 2, 3, 4], 6).unwrap();
        let out = run_round(&a, &store, &d).unwrap();
        assert!(!out.report.success);
        let user1 = &out.report.per_user[0];
        assert!(!user1.recovered);
        assert!(user1.faults.iter().any(|f| matches!(
            f,
            DecodeFault::NotCached {
                symbol: 2,
                needed: Term { user: 0, row: 4 },
                ..
            }
        )));
    }

    #[test]
    fn special_family_rate_is_s_over_f() {
        use crate::constructions::{construct_special, ConstructionParams};
        let a = construct_special(&ConstructionParams::special(3, 2, 2)).unwrap();
        let store = PacketStore::generate(9, a.rows(), 64, 0).unwrap();
        let d = DemandVector::new(&(1..=9).collect::<Vec<_>>(), 9).unwrap();
        let out = run_round(&a, &store, &d).unwrap();
        assert!(out.report.success);
        assert_eq!(
            out.log.measured_rate(a.rows()),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(out.log.bytes_sent(), 9 * 64);
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = PacketStore::generate(3, 4, 16, 42).unwrap();
        let b = PacketStore::generate(3, 4, 16, 42).unwrap();
        let c = PacketStore::generate(3, 4, 16, 43).unwrap();
        assert_eq!(a, b);
        assert_ne!(a.file(0), c.file(0));
    }
}
