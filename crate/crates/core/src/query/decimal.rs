use std::cmp::Ordering;

use crate::rdf::Literal;
use crate::vocab;

/// Exact signed decimal used to compare xsd:integer and xsd:decimal
/// literals without going through floating point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactDecimal {
    negative: bool,
    /// Integer digits without leading zeros.
    int: String,
    /// Fraction digits without trailing zeros.
    frac: String,
}

impl ExactDecimal {
    pub fn parse(lexical: &str) -> Option<Self> {
        let (negative, body) = match lexical.as_bytes().first() {
            Some(b'-') => (true, &lexical[1..]),
            Some(b'+') => (false, &lexical[1..]),
            _ => (false, lexical),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return None;
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
            return None;
        }
        if body.contains('.') && frac.is_empty() {
            return None;
        }
        let int = int.trim_start_matches('0').to_owned();
        let frac = frac.trim_end_matches('0').to_owned();
        let zero = int.is_empty() && frac.is_empty();
        Some(ExactDecimal {
            negative: negative && !zero,
            int,
            frac,
        })
    }

    /// Numeric value of an xsd:integer or xsd:decimal literal.
    pub fn from_literal(lit: &Literal) -> Option<Self> {
        match lit.datatype().as_str() {
            vocab::XSD_INTEGER if !lit.lexical().contains('.') => Self::parse(lit.lexical()),
            vocab::XSD_DECIMAL => Self::parse(lit.lexical()),
            _ => None,
        }
    }

    fn cmp_magnitude(&self, other: &Self) -> Ordering {
        self.int
            .len()
            .cmp(&other.int.len())
            .then_with(|| self.int.cmp(&other.int))
            .then_with(|| self.frac.cmp(&other.frac))
    }
}

impl Ord for ExactDecimal {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.negative, other.negative) {
            (false, true) => Ordering::Greater,
            (true, false) => Ordering::Less,
            (false, false) => self.cmp_magnitude(other),
            (true, true) => other.cmp_magnitude(self),
        }
    }
}

impl PartialOrd for ExactDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d(s: &str) -> ExactDecimal {
        ExactDecimal::parse(s).unwrap()
    }

    #[test]
    fn normalizes_equal_values() {
        assert_eq!(d("10.0"), d("10"));
        assert_eq!(d("-0.0"), d("+0"));
        assert_eq!(d("007.50"), d("7.5"));
        assert!(d("-1.5") < d("-1.25"));
        assert!(d("0.1") > d("0.09"));
        assert!(d(".5") == d("0.5"));
    }

    #[test]
    fn rejects_non_numbers() {
        for s in ["", "-", "1.", "1e3", "abc", "1.2.3"] {
            assert!(ExactDecimal::parse(s).is_none(), "{s}");
        }
    }

    proptest! {
        #[test]
        fn ordering_agrees_with_scaled_integers(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            // a/1000 and b/1000 rendered with three fraction digits.
            let render = |v: i64| format!("{}{}.{:03}", if v < 0 { "-" } else { "" }, v.abs() / 1000, v.abs() % 1000);
            prop_assert_eq!(d(&render(a)).cmp(&d(&render(b))), a.cmp(&b));
        }
    }
}
