//! Recurrence, periodicity, exponents and factor sets.

use autseq::analyses::{factor_set_compare, has_arbitrarily_large_unbordered, has_unbounded_exponent, recurrence_flags};
use autseq::seqgen::{constant, periodic, powers_characteristic, thue_morse};

fn main() -> autseq::Result<()> {
    let tm = thue_morse();
    let named = [
        ("thue-morse", tm.clone()),
        ("(001)^w", periodic(2, &[0, 0, 1])?),
        ("powers of 2", powers_characteristic(2)?),
    ];
    for (name, x) in &named {
        let f = recurrence_flags(x)?;
        println!(
            "{name:<12} recurrent={} uniformly={} ult.periodic={} unbounded exponent={} long unbordered={}",
            f.recurrent,
            f.uniformly_recurrent,
            f.ultimately_periodic,
            has_unbounded_exponent(x)?,
            has_arbitrarily_large_unbordered(x)?
        );
    }

    let swapped = tm.map_outputs(|v| 1 - v);
    println!("t and its complement have the same factors: {}", factor_set_compare(&tm, &swapped)?.equal());
    let r = factor_set_compare(&tm, &constant(2, 0)?)?;
    if let Some(d) = r.distinguishing {
        println!("t vs 000...: factor {:?} of length {} (bound {})", d.factor, d.length, r.bound);
    }
    Ok(())
}
