//! Tokenization shared by entity extraction and topic detection.

/// A token with its character span in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    /// Case-folded form used for matching.
    pub folded: String,
    /// Character offsets, end exclusive.
    pub start: usize,
    pub end: usize,
}

fn is_joiner(c: char) -> bool {
    matches!(c, '-' | '\'' | '\u{2019}')
}

/// Splits on whitespace and punctuation. Hyphens and apostrophes between two
/// alphanumerics stay inside the word; a trailing possessive `'s` is dropped;
/// `http://` and `https://` URLs are skipped up to the next whitespace.
/// Since `#` is punctuation, `#hallucinations` yields `hallucinations`.
pub fn tokenize(text: &str) -> Vec<Token> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        if url_at(&chars, i) {
            while i < chars.len() && !chars[i].is_whitespace() {
                i += 1;
            }
            continue;
        }
        if !chars[i].is_alphanumeric() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() {
            let c = chars[i];
            let joined = is_joiner(c) && i + 1 < chars.len() && chars[i + 1].is_alphanumeric() && i > start;
            if c.is_alphanumeric() || joined {
                i += 1;
            } else {
                break;
            }
        }
        let mut end = i;
        if end - start > 2 && is_joiner(chars[end - 2]) && chars[end - 2] != '-' && matches!(chars[end - 1], 's' | 'S') {
            end -= 2;
        }
        let folded: String = chars[start..end].iter().collect::<String>().to_lowercase();
        out.push(Token { folded, start, end });
    }
    out
}

fn url_at(chars: &[char], i: usize) -> bool {
    if i > 0 && chars[i - 1].is_alphanumeric() {
        return false;
    }
    let rest = chars[i..].iter().take(8).collect::<String>().to_ascii_lowercase();
    rest.starts_with("http://") || rest.starts_with("https://")
}

/// `http(s)://` substrings up to whitespace, with trailing sentence
/// punctuation removed.
pub fn find_urls(text: &str) -> Vec<String> {
    text.split_whitespace()
        .filter_map(|w| {
            let lower = w.to_ascii_lowercase();
            let at = lower.find("http://").or_else(|| lower.find("https://"))?;
            let url = w[at..].trim_end_matches(['.', ',', ';', ':', '!', '?', ')', ']', '"', '\'']);
            (url.len() > "http://".len()).then(|| url.to_owned())
        })
        .collect()
}

/// Character-offset slice of `text`.
pub fn char_slice(text: &str, start: usize, end: usize) -> String {
    text.chars().skip(start).take(end - start).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(text: &str) -> Vec<String> {
        tokenize(text).into_iter().map(|t| t.folded).collect()
    }

    #[test]
    fn tweet_tokens() {
        let text = "Interesting article on Chopin's #hallucinations: http://bit.ly/y4Gfs5";
        assert_eq!(words(text), ["interesting", "article", "on", "chopin", "hallucinations"]);
        let t = &tokenize(text)[3];
        assert_eq!(char_slice(text, t.start, t.end), "Chopin");
    }

    #[test]
    fn keeps_intra_word_joiners() {
        assert_eq!(words("state-of-the-art don't -x y-"), ["state-of-the-art", "don't", "x", "y"]);
        assert_eq!(words("Bob’s bobs"), ["bob", "bobs"]);
    }

    #[test]
    fn unicode_and_offsets() {
        let text = "Frédéric  Chopin";
        let toks = tokenize(text);
        assert_eq!(toks[0].folded, "frédéric");
        assert_eq!((toks[1].start, toks[1].end), (10, 16));
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn urls_found_and_trimmed() {
        assert_eq!(
            find_urls("see http://bit.ly/y4Gfs5. and (https://a.org/x) or nohttp"),
            ["http://bit.ly/y4Gfs5", "https://a.org/x"]
        );
    }
}
