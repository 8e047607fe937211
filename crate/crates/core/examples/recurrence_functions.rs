//! Window functions R, A, S and I, checked against prefix scans.

use autseq::analyses::{measure, MeasureKind};
use autseq::oracle::{brute, PrefixContext};
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let ctx = PrefixContext::new(tm.prefix(10_000));
    for kind in [MeasureKind::RecurrenceR, MeasureKind::AppearanceA, MeasureKind::SeparatorS, MeasureKind::RepetitivityI] {
        let c = measure(&tm, &kind, None)?;
        let values: Vec<String> = (0..=12).map(|n| c.evaluate(n).to_string()).collect();
        let agree = (0..=12).all(|n| brute(&kind, &ctx, n).map(|v| c.evaluate(n).to_string() == v.to_string()).unwrap_or(false));
        println!("{:<16} {}  (prefix scan agrees: {agree})", kind.to_string(), values.join(" "));
    }
    Ok(())
}
