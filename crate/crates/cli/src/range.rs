use std::ops::RangeInclusive;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RangeError {
    #[error("empty range bound in `{0}`")]
    MissingBound(String),
    #[error("bad range bound `{0}`")]
    BadBound(String),
}

/// Parses an inclusive range written `lo..hi`, `lo..=hi` or a single value.
/// `lo > hi` gives an empty range.
pub fn parse_range<T>(s: &str) -> Result<RangeInclusive<T>, RangeError>
where
    T: FromStr + Copy,
{
    let s = s.trim();
    let bound = |b: &str| -> Result<T, RangeError> {
        let b = b.trim();
        if b.is_empty() {
            return Err(RangeError::MissingBound(s.to_string()));
        }
        b.parse().map_err(|_| RangeError::BadBound(b.to_string()))
    };
    match s.split_once("..") {
        None => {
            let v = bound(s)?;
            Ok(v..=v)
        }
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            Ok(bound(lo)?..=bound(hi)?)
        }
    }
}
