//! Orders of consecutive shifts and the permutation complexity.

use autseq::analyses::{measure, permutation_order, MeasureKind};
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let lt = permutation_order(&tm)?;
    println!("shift order automaton: {} states", lt.num_states());
    println!("suffix at 0 below suffix at 1: {}", lt.accepts_values(&[0, 1])?);

    let c = measure(&tm, &MeasureKind::PermutationComplexity, None)?;
    let values: Vec<String> = (0..=16).map(|n| c.evaluate(n).to_string()).collect();
    println!("permutation complexity: {}", values.join(" "));
    Ok(())
}
