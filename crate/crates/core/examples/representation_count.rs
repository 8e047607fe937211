//! Counting representations of n with a nonstandard digit set.

use autseq::regseq::representation_count;

fn main() -> autseq::Result<()> {
    for digits in [&[0, 1][..], &[0, 1, 2], &[-1, 0, 1]] {
        let c = representation_count(digits, 2)?;
        let values: Vec<String> = (0..20).map(|n| c.evaluate(n).to_string()).collect();
        println!("digits {digits:?}: {}", values.join(" "));
    }
    Ok(())
}
