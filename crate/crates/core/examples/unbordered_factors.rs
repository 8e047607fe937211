//! Unbordered factors of Thue-Morse: counts, the lengths without any,
//! and relations among the counts.

use autseq::analyses::{
    borderless_lengths_conjecture, check_relations, measure, MeasureKind, CONJECTURED_BORDERLESS_REGEX,
    CONJECTURED_RELATIONS,
};
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let c = measure(&tm, &MeasureKind::UnborderedCount, None)?;
    let values: Vec<String> = (1..=16).map(|n| c.evaluate(n).to_string()).collect();
    println!("f(1..16) = {}", values.join(","));

    let v = borderless_lengths_conjecture(&tm, CONJECTURED_BORDERLESS_REGEX)?;
    println!("lengths with no unbordered factor = {CONJECTURED_BORDERLESS_REGEX}: {}", v.equivalent);

    let f = c.finite_series().expect("finite").to_rat();
    for (rec, ok) in check_relations(&f, &CONJECTURED_RELATIONS)? {
        println!("{:>5}  {rec}", ok);
    }
    Ok(())
}
