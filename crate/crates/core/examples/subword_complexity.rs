//! Factor complexity as a linear representation, with a linear bound.

use autseq::analyses::{linear_complexity_check, measure, LinearVerdict, MeasureKind};
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    for kind in [MeasureKind::SubwordComplexity, MeasureKind::PalindromeComplexity] {
        let c = measure(&tm, &kind, None)?;
        let values: Vec<String> = (0..24).map(|n| c.evaluate(n).to_string()).collect();
        println!("{kind} (rank {}): {}", c.series.rank(), values.join(" "));
    }
    let c = measure(&tm, &MeasureKind::SubwordComplexity, None)?;
    match linear_complexity_check(&c)? {
        LinearVerdict::Bounded { slope, intercept } => {
            println!("bounded by {slope}·n + {intercept}")
        }
        LinearVerdict::Unbounded => println!("unbounded"),
    }
    Ok(())
}
