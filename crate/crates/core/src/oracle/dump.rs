//! Debug dump of materialized tables.
//!
//! Layout: three little-endian `u32` header words `(s, d, q)`, then every
//! residue as a little-endian `u16`, row-major (for lines tables, the `d + 1`
//! coefficients of each entry are contiguous).

use std::io::{Read, Write};

use crate::gf::{Fe, Field};

use super::{OracleError, TableLines, TablePoint};
use super::{LinesOracle, PointOracle};

fn write_header<W: Write>(w: &mut W, s: usize, d: usize, q: u32) -> Result<(), OracleError> {
    if q > u16::MAX as u32 {
        return Err(OracleError::ModulusTooLarge(q));
    }
    for v in [s as u32, d as u32, q] {
        w.write_all(&v.to_le_bytes())?;
    }
    Ok(())
}

fn write_values<W: Write>(w: &mut W, values: &[Fe]) -> Result<(), OracleError> {
    for v in values {
        w.write_all(&(v.value() as u16).to_le_bytes())?;
    }
    Ok(())
}

pub fn write_point_table<W: Write>(table: &TablePoint, mut w: W) -> Result<(), OracleError> {
    write_header(&mut w, table.dim(), table.degree(), table.field().modulus())?;
    write_values(&mut w, table.values())
}

pub fn write_lines_table<W: Write>(table: &TableLines, mut w: W) -> Result<(), OracleError> {
    write_header(&mut w, table.dim(), table.degree(), table.field().modulus())?;
    write_values(&mut w, table.coeffs())
}

pub fn read_point_table<R: Read>(mut r: R) -> Result<TablePoint, OracleError> {
    let mut word = [0u8; 4];
    let mut header = [0u32; 3];
    for h in &mut header {
        r.read_exact(&mut word)?;
        *h = u32::from_le_bytes(word);
    }
    let [s, d, q] = header;
    let field = Field::new(q).map_err(|e| OracleError::Format(e.to_string()))?;
    let mut bytes = Vec::new();
    r.read_to_end(&mut bytes)?;
    if bytes.len() % 2 != 0 {
        return Err(OracleError::Format("odd payload length".into()));
    }
    let values = bytes
        .chunks_exact(2)
        .map(|c| {
            let v = u16::from_le_bytes([c[0], c[1]]) as u32;
            if v >= q {
                Err(OracleError::Format(format!("residue {v} not below {q}")))
            } else {
                Ok(field.elem(v as u64))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    TablePoint::from_values(field, s as usize, d as usize, values)
}
