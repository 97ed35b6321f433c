//! Words in Artin generators of a finite-type Artin group.

use serde::{Deserialize, Serialize};

use crate::coxeter::CoxeterSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ArtinLetter {
    /// Generator index, 1-based.
    pub index: usize,
    /// +1 for the generator, -1 for its inverse.
    pub sign: i8,
}

impl ArtinLetter {
    pub fn new(index: usize, sign: i8) -> Self {
        assert!(sign == 1 || sign == -1);
        ArtinLetter { index, sign }
    }

    pub fn inverse(self) -> Self {
        ArtinLetter { index: self.index, sign: -self.sign }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    pub system: CoxeterSystem,
    pub letters: Vec<ArtinLetter>,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum WordError {
    #[error("malformed token {0:?}: expected a nonzero integer")]
    MalformedToken(String),
    #[error("generator index {0} out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("words belong to different Coxeter systems")]
    SystemMismatch,
}

impl BraidWord {
    pub fn identity(system: CoxeterSystem) -> Self {
        BraidWord { system, letters: Vec::new() }
    }

    pub fn from_letters(system: CoxeterSystem, letters: Vec<ArtinLetter>) -> Result<Self, WordError> {
        for l in &letters {
            if l.index < 1 || l.index > system.rank {
                return Err(WordError::OutOfRange(l.index, system.rank));
            }
        }
        Ok(BraidWord { system, letters })
    }

    /// Word from signed generator indices: k encodes sigma_{|k|}^{sign k}.
    pub fn from_signed(system: CoxeterSystem, signed: &[i64]) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(signed.len());
        for &k in signed {
            if k == 0 {
                return Err(WordError::MalformedToken("0".to_string()));
            }
            let index = k.unsigned_abs() as usize;
            if index > system.rank {
                return Err(WordError::OutOfRange(index, system.rank));
            }
            letters.push(ArtinLetter::new(index, k.signum() as i8));
        }
        Ok(BraidWord { system, letters })
    }

    pub fn generator(system: CoxeterSystem, index: usize) -> Self {
        assert!(index >= 1 && index <= system.rank);
        BraidWord { system, letters: vec![ArtinLetter::new(index, 1)] }
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, WordError> {
        if self.system != other.system {
            return Err(WordError::SystemMismatch);
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { system: self.system, letters })
    }

    /// Group inverse: reverse the letters and flip every sign.
    pub fn inverse(&self) -> BraidWord {
        let letters = self.letters.iter().rev().map(|l| l.inverse()).collect();
        BraidWord { system: self.system, letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl std::fmt::Display for BraidWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.letters.iter().map(|l| (l.index as i64 * l.sign as i64).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parse the CLI word grammar: whitespace-separated signed nonzero integers,
/// integer k with |k| <= rank encoding sigma_{|k|}^{sign(k)}. Empty text is
/// the identity word.
pub fn parse_word(text: &str, system: CoxeterSystem) -> Result<BraidWord, WordError> {
    let mut signed = Vec::new();
    for tok in text.split_whitespace() {
        let k: i64 = tok.parse().map_err(|_| WordError::MalformedToken(tok.to_string()))?;
        if k == 0 {
            return Err(WordError::MalformedToken(tok.to_string()));
        }
        signed.push(k);
    }
    BraidWord::from_signed(system, &signed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        let sys = CoxeterSystem::type_a(2);
        let w = parse_word("1 2 -1", sys).unwrap();
        assert_eq!(
            w.letters,
            vec![ArtinLetter::new(1, 1), ArtinLetter::new(2, 1), ArtinLetter::new(1, -1)]
        );
        assert!(parse_word("", sys).unwrap().is_empty());
        assert!(parse_word("  \t\n ", sys).unwrap().is_empty());
        assert_eq!(parse_word("3", sys).unwrap_err(), WordError::OutOfRange(3, 2));
        assert_eq!(parse_word("0", sys).unwrap_err(), WordError::MalformedToken("0".into()));
        assert!(matches!(parse_word("x", sys).unwrap_err(), WordError::MalformedToken(_)));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        let sys = CoxeterSystem::type_a(2);
        let w = parse_word("1 2 -1", sys).unwrap();
        assert_eq!(w.inverse().to_string(), "1 -2 -1");
        assert_eq!(w.inverse().inverse(), w);
    }
}
