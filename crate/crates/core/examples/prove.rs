//! Run a theorem proof and a negative control. Pass a theorem id (binary,
//! corollary, base3, base4, genpal, gap, antipal) as the first argument.

use palsum::prover::{ProveOptions, Theorem};

fn main() -> palsum::Result<()> {
    let id = std::env::args().nth(1).unwrap_or_else(|| "genpal".into());
    let theorem: Theorem = id.parse()?;

    let report = theorem.prove(&ProveOptions::default())?;
    print!("{report}");
    println!("elapsed={:.2?}", report.elapsed);

    if let Some(control) = theorem.controls().first() {
        let weak = theorem.prove(&ProveOptions::with_control(control))?;
        println!("control {control}: holds={}", weak.holds);
        if let Some(cx) = &weak.counterexample {
            println!(
                "  counterexample {} ({}) oracle_confirmed={}",
                cx.value, cx.word, cx.oracle_confirmed
            );
        }
    }
    Ok(())
}
