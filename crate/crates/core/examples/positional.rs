//! Squares, palindromes and fractional powers anchored at a position.

use autseq::analyses::{measure, MeasureKind};
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    for spec in [
        "square-count-at:begin",
        "longest-square-at:center",
        "palindrome-count-at:end",
        "longest-palindrome-at:begin",
        "longest-fractional-power-at:end:5/3",
    ] {
        let kind: MeasureKind = spec.parse()?;
        let c = measure(&tm, &kind, None)?;
        let values: Vec<String> = (0..16).map(|n| c.evaluate(n).to_string()).collect();
        println!("{spec:<38} {}", values.join(" "));
    }
    Ok(())
}
