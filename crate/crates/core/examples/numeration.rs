//! Base-k digit words, least significant digit first.

use autseq::numeration::{decode_lsd, decode_tuple, encode_lsd, encode_tuple};

fn main() -> autseq::Result<()> {
    let w = encode_lsd(27, 3)?;
    println!("27 in base 3, lsd first: {w}");
    assert_eq!(decode_lsd(&w)?, 27);

    // tuples are padded with trailing zeros to a common length
    let t = encode_tuple(&[5, 1], 2)?;
    println!("(5, 1) in base 2: {t} ({} symbols)", t.len());
    assert_eq!(decode_tuple(&t.padded(3))?, vec![5, 1]);
    Ok(())
}
