//! Shared on-disk layout for numeric payloads: a single text header line
//! followed by flat 64-bit little-endian floats.
//!
//! Every binary format in this crate (feature dumps, embedding archives,
//! PLDA models, posterior matrices) is built from this primitive so that
//! files are byte-identical across reruns.

use std::io::{self, Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ArchiveError {
    #[error("i/o failure: {0}")]
    Io(#[from] io::Error),
    #[error("missing or unterminated header line")]
    MissingHeader,
    #[error("bad header: expected {expected}, got {got:?}")]
    BadHeader { expected: &'static str, got: String },
    #[error("payload truncated: expected {expected} floats, got {got}")]
    Truncated { expected: usize, got: usize },
}

/// Writes `header` (without trailing newline) then `values` as little-endian f64.
pub fn write_block<W: Write>(mut w: W, header: &str, values: &[f64]) -> Result<(), ArchiveError> {
    w.write_all(header.as_bytes())?;
    w.write_all(b"\n")?;
    let mut buf = Vec::with_capacity(values.len() * 8);
    for v in values {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

/// Reads the header line (up to the first `\n`, newline not included).
pub fn read_header<R: Read>(r: &mut R) -> Result<String, ArchiveError> {
    let mut line = Vec::new();
    let mut byte = [0u8; 1];
    loop {
        match r.read(&mut byte)? {
            0 => return Err(ArchiveError::MissingHeader),
            _ if byte[0] == b'\n' => break,
            _ => line.push(byte[0]),
        }
        if line.len() > 4096 {
            return Err(ArchiveError::MissingHeader);
        }
    }
    String::from_utf8(line).map_err(|_| ArchiveError::MissingHeader)
}

/// Reads exactly `count` little-endian f64 values.
pub fn read_values<R: Read>(r: &mut R, count: usize) -> Result<Vec<f64>, ArchiveError> {
    let mut buf = vec![0u8; count * 8];
    let mut filled = 0;
    while filled < buf.len() {
        match r.read(&mut buf[filled..])? {
            0 => {
                return Err(ArchiveError::Truncated {
                    expected: count,
                    got: filled / 8,
                });
            }
            n => filled += n,
        }
    }
    let values = buf
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(values)
}

/// Splits a header into whitespace-separated fields, checking the field count.
pub fn header_fields(
    header: &str,
    expected: usize,
    what: &'static str,
) -> Result<Vec<String>, ArchiveError> {
    let fields: Vec<String> = header.split_whitespace().map(str::to_owned).collect();
    if fields.len() != expected {
        return Err(ArchiveError::BadHeader {
            expected: what,
            got: header.to_owned(),
        });
    }
    Ok(fields)
}

pub fn parse_usize(field: &str, what: &'static str) -> Result<usize, ArchiveError> {
    field.parse().map_err(|_| ArchiveError::BadHeader {
        expected: what,
        got: field.to_owned(),
    })
}

pub fn parse_f64(field: &str, what: &'static str) -> Result<f64, ArchiveError> {
    field.parse().map_err(|_| ArchiveError::BadHeader {
        expected: what,
        got: field.to_owned(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_block() {
        let mut buf = Vec::new();
        write_block(&mut buf, "3 2", &[1.0, -2.5, 0.0, 1e-300, f64::MAX, 42.0]).unwrap();
        let mut cursor = &buf[..];
        let header = read_header(&mut cursor).unwrap();
        assert_eq!(header, "3 2");
        let values = read_values(&mut cursor, 6).unwrap();
        assert_eq!(values, vec![1.0, -2.5, 0.0, 1e-300, f64::MAX, 42.0]);
    }

    #[test]
    fn truncated_payload_reports_count() {
        let mut buf = Vec::new();
        write_block(&mut buf, "4", &[1.0, 2.0]).unwrap();
        let mut cursor = &buf[..];
        read_header(&mut cursor).unwrap();
        match read_values(&mut cursor, 4) {
            Err(ArchiveError::Truncated { expected: 4, got: 2 }) => {}
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn empty_input_is_missing_header() {
        let mut cursor: &[u8] = &[];
        assert!(matches!(
            read_header(&mut cursor),
            Err(ArchiveError::MissingHeader)
        ));
    }
}
