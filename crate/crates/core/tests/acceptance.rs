//! One line per acceptance criterion; exits non-zero if any fails.

use netcube::selftest::{run_all, SelftestOptions};

fn main() {
    let results = run_all(&SelftestOptions::default());
    for r in &results {
        println!("{}", r.line());
    }
    let passed = results.iter().filter(|r| r.passed).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
