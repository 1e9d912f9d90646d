use std::collections::BTreeSet;
use std::path::Path;

use sha2::{Digest, Sha256};

use vlcode::langs::FiniteLang;
use vlcode::words::{Alphabet, Word};

use crate::Failure;

/// A parsed language file: `alphabet: s1 s2 …` header, one word per line,
/// `#` comments and blank lines ignored, duplicates rejected.
pub struct Loaded {
    pub lang: FiniteLang,
    pub digest: String,
}

pub fn digest_of(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

pub fn load(path: &Path) -> Result<Loaded, Failure> {
    let bytes = std::fs::read(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    let digest = digest_of(&bytes);
    let text = String::from_utf8(bytes)
        .map_err(|_| Failure::usage(format!("{} is not valid UTF-8", path.display())))?;

    let mut alphabet: Option<Alphabet> = None;
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match &alphabet {
            None => {
                let Some(rest) = line.strip_prefix("alphabet:") else {
                    return Err(Failure::usage(format!(
                        "line {lineno}: expected `alphabet: s1 s2 …` header"
                    )));
                };
                let mut symbols = Vec::new();
                for token in rest.split_whitespace() {
                    let mut chars = token.chars();
                    let (Some(c), None) = (chars.next(), chars.next()) else {
                        return Err(Failure::usage(format!(
                            "line {lineno}: alphabet symbol `{token}` is not a single character"
                        )));
                    };
                    symbols.push(c);
                }
                alphabet = Some(
                    Alphabet::new(symbols)
                        .map_err(|e| Failure::usage(format!("line {lineno}: {e}")))?,
                );
            }
            Some(ab) => {
                let word = Word::parse(line, ab)
                    .map_err(|e| Failure::usage(format!("line {lineno}: {e}")))?;
                if !words.insert(word) {
                    return Err(Failure::usage(format!(
                        "line {lineno}: duplicate word `{line}`"
                    )));
                }
            }
        }
    }
    let Some(alphabet) = alphabet else {
        return Err(Failure::usage("missing `alphabet:` header".to_string()));
    };
    Ok(Loaded {
        lang: FiniteLang::new(alphabet, words),
        digest,
    })
}
