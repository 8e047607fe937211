//! Automatic sequences as automata with output.

use autseq::seqgen::{periodic, thue_morse};
use autseq::Dfao;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let prefix: String = tm.prefix(32).iter().map(|d| d.to_string()).collect();
    println!("Thue-Morse: {prefix}...");
    println!("t(10^9) = {}", tm.evaluate(1_000_000_000));

    let text = tm.to_text();
    print!("{text}");
    assert_eq!(Dfao::from_text(&text)?, tm);

    let p = periodic(2, &[0, 0, 1])?;
    println!("(001)^w as a {}-state automaton: {:?}", p.num_states(), p.prefix(9));
    Ok(())
}
