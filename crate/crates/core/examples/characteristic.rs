//! Characteristic sequences of formulas and positional indicators.

use autseq::analyses::{indicator, unbordered_characteristic, Anchor, IndicatorKind};
use autseq::logic::Env;
use autseq::seqgen::thue_morse;

fn show(name: &str, values: Vec<u32>) {
    let s: String = values.iter().map(|d| d.to_string()).collect();
    println!("{name:>28}: {s}");
}

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let env = Env::for_sequence(&tm);
    let odd = env.characteristic_str("E m n = 2*m + 1")?;
    show("odd n", odd.prefix(40));

    for anchor in [Anchor::Begin, Anchor::Center, Anchor::End] {
        let s = indicator(&tm, IndicatorKind::Square, anchor)?;
        show(&format!("square {anchor} at i"), s.prefix(40));
    }
    show("unbordered factor of len n", unbordered_characteristic(&tm)?.prefix(40));
    Ok(())
}
