#![no_main]

use clap::Parser;
use libfuzzer_sys::fuzz_target;
use terracini_cli::Cli;

// Parse only; never execute, a valid command line may describe a huge scan.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let args = std::iter::once("terracini").chain(text.split_whitespace());
    let _ = Cli::try_parse_from(args);
});
