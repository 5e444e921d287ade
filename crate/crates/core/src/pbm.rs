//! Plain (P1) portable bitmap output: one image row per mask, 1 = black.

use std::io::Write;

use crate::error::Result;
use crate::mask_set::MaskSet;

const LINE: usize = 70;

pub fn write_pbm<W: Write>(set: &MaskSet, mut out: W) -> Result<()> {
    writeln!(out, "P1")?;
    writeln!(out, "# M({},{})", set.s(), set.m())?;
    writeln!(out, "{} {}", set.n(), set.len())?;
    for mask in set.masks() {
        let row = mask.to_string();
        for chunk in row.as_bytes().chunks(LINE) {
            out.write_all(chunk)?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}
