//! Text forms: `p^e^n[:c0,c1,...,c_{2ne}]` for fields, hex indices for elements.

use std::str::FromStr;

use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// Parsed field description; `modulus` is low-degree-first when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub e: u32,
    pub n: u32,
    pub modulus: Option<Vec<u64>>,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        FieldCtx::build(self.p, self.e, self.n, self.modulus.as_deref())
    }
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("invalid {what}: {s:?}")))
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<FieldSpec> {
        let (head, tail) = match s.split_once(':') {
            Some((h, t)) => (h, Some(t)),
            None => (s, None),
        };
        let parts: Vec<&str> = head.split('^').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("field spec must look like p^e^n, got {s:?}")));
        }
        let p = parse_num(parts[0], "characteristic")?;
        let e = parse_num(parts[1], "exponent e")?;
        let n = parse_num(parts[2], "dimension n")?;
        let modulus = match tail.map(str::trim) {
            None | Some("") => None,
            Some(t) => Some(
                t.split(',')
                    .map(|c| parse_num(c, "modulus coefficient"))
                    .collect::<Result<Vec<u64>>>()?,
            ),
        };
        Ok(FieldSpec { p, e, n, modulus })
    }
}

impl FieldCtx {
    /// Hex form of an element: its index `sum c_i p^i`.
    pub fn to_hex(&self, a: &Elem) -> String {
        format!("{:x}", self.index_of(a))
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        let t = s.trim();
        let t = t.strip_prefix("0x").unwrap_or(t);
        let idx = u64::from_str_radix(t, 16)
            .map_err(|_| Error::Parse(format!("invalid element {s:?}")))?;
        if idx >= self.size() {
            return Err(Error::Parse(format!("element {s:?} out of range for a field of size {}", self.size())));
        }
        Ok(self.from_index(idx))
    }
}
