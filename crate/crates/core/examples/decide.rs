//! Deciding first-order sentences about a sequence.

use autseq::logic::Env;
use autseq::seqgen::thue_morse;

fn main() -> autseq::Result<()> {
    let env = Env::for_sequence(&thue_morse());
    let sentences = [
        ("has a square", "E i E n (n >= 1) & A m < n: x[i+m] = x[i+n+m]"),
        ("has an overlap", "E i E n (n >= 1) & A m <= n: x[i+m] = x[i+n+m]"),
        ("has a cube", "E i E n (n >= 1) & A m < 2*n: x[i+m] = x[i+n+m]"),
        ("every letter recurs", "A n E m (m > n) & x[m] = x[n]"),
    ];
    for (what, src) in sentences {
        let d = env.decide_str(src)?;
        print!("{what}: {}", d.holds);
        if let Some(a) = d.assignment {
            print!("  {a:?}");
        }
        println!();
    }
    Ok(())
}
