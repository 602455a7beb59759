//! Content-derived identifiers, so re-ingesting the same input mints the same
//! IRIs.

use sha2::{Digest, Sha256};

/// Hex SHA-256 over `parts`, separated by a unit separator so that
/// `["ab", "c"]` and `["a", "bc"]` differ.
pub fn content_hash(parts: &[&str]) -> String {
    let mut h = Sha256::new();
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            h.update([0x1f]);
        }
        h.update(p.as_bytes());
    }
    hex::encode(h.finalize())
}

/// First 16 hex digits of SHA-256 of `s`.
pub fn short_hash(s: &str) -> String {
    let mut out = hex::encode(Sha256::digest(s.as_bytes()));
    out.truncate(16);
    out
}
