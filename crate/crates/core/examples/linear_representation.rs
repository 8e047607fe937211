//! Linear representations: evaluation, reversal and the text format.

use autseq::regseq::{digit_sum, kernel_relations, LinRep};
use autseq::semiring::Nat;

fn main() -> autseq::Result<()> {
    let s2 = digit_sum(2)?;
    let values: Vec<String> = (0..16).map(|n| s2.evaluate(n).to_string()).collect();
    println!("binary digit sum: {}", values.join(" "));

    let text = s2.to_text();
    print!("{text}");
    assert_eq!(LinRep::<Nat>::from_text(&text)?, s2);

    // the same series read most significant digit first
    let msd = s2.reverse();
    println!("reversed, on the digits 1,1,0: {}", msd.evaluate_digits(&[1, 1, 0]));

    let report = kernel_relations(&s2.to_rat().minimize(), 2)?;
    for r in &report.relations {
        println!("{r}");
    }
    Ok(())
}
