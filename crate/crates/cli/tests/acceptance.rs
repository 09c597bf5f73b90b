//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.

use hardpart_cli::acceptance;
use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let only: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u8> = if only.is_empty() { (1..=7).collect() } else { only };
    let mut ok = true;
    for id in ids {
        let start = Instant::now();
        let o = acceptance::by_id(id).expect("criterion id in 1..=7");
        println!("{} [{:.1}s]", o.line(), start.elapsed().as_secs_f64());
        ok &= o.pass;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
