//! The convention auditor: grid searches over the q-power variants of the
//! identities that are sensitive to transcription conventions, with the
//! verbatim baselines recorded alongside the passing corrections.

use qslab::claims::{run_convention_audit, Config, Context};
use qslab::lab::Lab;

fn main() {
    let lab = Lab::builtin().expect("presets load");
    let ctx = Context::new(lab, Config::default()).expect("context");
    let report = run_convention_audit(&ctx);
    for c in &report.claims {
        println!("{}", c.claim_id);
        println!("  identity: {}", c.paper_ref);
        if let Some(n) = &c.recorded {
            println!("  outcome:  {}", n);
        }
        println!();
    }
}
