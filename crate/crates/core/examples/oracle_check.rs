//! Comparing engine counts with brute force on a prefix.

use autseq::analyses::{measure, MeasureKind};
use autseq::oracle::{brute, PrefixContext};
use autseq::seqgen::thue_morse;
use autseq::Error;

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let ctx = PrefixContext::new(tm.prefix(10_000));
    let kind = MeasureKind::SubwordComplexity;
    let c = measure(&tm, &kind, None)?;
    let mismatches = (0..=ctx.certified())
        .filter(|&n| c.evaluate(n).to_string() != brute(&kind, &ctx, n).unwrap().to_string())
        .count();
    println!("{kind}: {mismatches} mismatches for n <= {}", ctx.certified());

    match brute(&kind, &ctx, ctx.certified() + 1) {
        Err(Error::NotCertified { n, certified }) => println!("n = {n} refused (certified up to {certified})"),
        other => println!("unexpected: {other:?}"),
    }
    Ok(())
}
