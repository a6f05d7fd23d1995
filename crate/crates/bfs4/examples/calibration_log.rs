//! Calibration of the printed structure. Mode `off` uses the table
//! verbatim and fails on the entries that do not typecheck; modes `signs`
//! and `full` normalize those entries, then search sign repairs against
//! the axiom-suite oracle on the generic complete-intersection instance.
//!
//! Run with: cargo run --example calibration_log

use bfs4::bfs::calibrate::{calibrate_structure, CalibrationMode};

fn main() {
    println!("mode off (verbatim printed table):");
    match calibrate_structure(CalibrationMode::Off) {
        Err(e) => println!("{e}\n"),
        Ok(_) => unreachable!("the printed table does not typecheck"),
    }

    println!("mode full (normalize, then search repairs):");
    let cal = calibrate_structure(CalibrationMode::Full).expect("calibration succeeds");
    println!(
        "accepted at repair level {} after {} candidate(s)",
        cal.log.level, cal.log.candidates_tested
    );
    for n in &cal.log.normalizations {
        println!("  normalized {} (printed {:?})", n.location, n.printed);
        println!("    {}", n.note);
    }
    if cal.log.repairs.is_empty() {
        println!("  no sign repairs needed beyond normalization");
    }
    for r in &cal.log.repairs {
        println!("  repair: {r}");
    }
}
