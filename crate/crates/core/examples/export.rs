//! Write a machine in both supported formats and read it back.

use palsum::format::{read_ats, read_native, write_ats, write_native, Machine};
use palsum::generators::gpal_checker;

fn main() -> palsum::Result<()> {
    let m = Machine::from(gpal_checker());
    let native = write_native(&m);
    let ats = write_ats(&m, "gpalChecker");
    println!(
        "native: {} lines, ats: {} lines",
        native.lines().count(),
        ats.lines().count()
    );

    let a = read_native(&native)?;
    let b = read_ats(&ats)?;
    println!("read back: {} / {} states", a.num_states(), b.num_states());
    println!("native text stable: {}", write_native(&a) == native);
    for line in ats.lines().take(6) {
        println!("  {line}");
    }
    Ok(())
}
