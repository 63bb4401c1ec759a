use std::fmt;
use std::str::FromStr;

use crate::error::{MzvError, Result};

use super::Composition;

/// `P` stands for the form dt/t and `Q` for dt/(1-t).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    Q,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::P => Letter::Q,
            Letter::Q => Letter::P,
        }
    }
}

/// A word over `{P, Q}`; the iterated-integral form of an index.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryWord(Vec<Letter>);

impl BinaryWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        BinaryWord(letters)
    }

    pub fn empty() -> Self {
        BinaryWord(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Empty, or starts with `P` and ends with `Q`.
    pub fn is_admissible(&self) -> bool {
        matches!((self.0.first(), self.0.last()), (None, None) | (Some(Letter::P), Some(Letter::Q)))
    }

    /// `P^{s_1-1} Q ... P^{s_d-1} Q` for any composition (admissible or not).
    pub fn encode_any(c: &Composition) -> BinaryWord {
        let mut letters = Vec::with_capacity(c.weight() as usize);
        for &s in c.parts() {
            letters.extend(std::iter::repeat_n(Letter::P, (s - 1) as usize));
            letters.push(Letter::Q);
        }
        BinaryWord(letters)
    }

    /// The word of an admissible composition.
    pub fn encode(c: &Composition) -> Result<BinaryWord> {
        c.check_admissible()?;
        Ok(Self::encode_any(c))
    }

    /// Inverse of [`BinaryWord::encode_any`] on words that are empty or end in `Q`.
    pub fn decode_any(&self) -> Result<Composition> {
        if self.0.last() == Some(&Letter::P) {
            return Err(MzvError::domain(format!(
                "word {self} ends with P at letter {}; expected Q",
                self.0.len()
            )));
        }
        let mut parts = Vec::new();
        let mut run = 1u32;
        for &l in &self.0 {
            match l {
                Letter::P => run += 1,
                Letter::Q => {
                    parts.push(run);
                    run = 1;
                }
            }
        }
        Ok(Composition::from_parts(&parts))
    }

    /// The composition of an admissible word.
    pub fn decode(&self) -> Result<Composition> {
        if !self.is_admissible() {
            let pos = if self.0.first() != Some(&Letter::P) { 1 } else { self.0.len() };
            return Err(MzvError::domain(format!(
                "inadmissible word {self}: offending letter at position {pos}"
            )));
        }
        self.decode_any()
    }

    /// Reverse the word and exchange `P` with `Q`.
    pub fn reverse_swap(&self) -> BinaryWord {
        BinaryWord(self.0.iter().rev().map(|l| l.swap()).collect())
    }

    pub fn split_at(&self, i: usize) -> (BinaryWord, BinaryWord) {
        let (a, b) = self.0.split_at(i);
        (BinaryWord(a.to_vec()), BinaryWord(b.to_vec()))
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                Letter::P => "P",
                Letter::Q => "Q",
            })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = MzvError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .enumerate()
            .map(|(i, ch)| match ch {
                'P' | 'p' => Ok(Letter::P),
                'Q' | 'q' => Ok(Letter::Q),
                _ => Err(MzvError::domain(format!("bad letter {ch:?} at position {}", i + 1))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }
}

/// The dual index: reverse-and-swap of the word. An involution on nonempty
/// admissible compositions that preserves weight.
pub fn dual(c: &Composition) -> Result<Composition> {
    if c.is_empty() {
        return Err(MzvError::domain("dual of the empty index is undefined"));
    }
    BinaryWord::encode(c)?.reverse_swap().decode()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[u32]) -> String {
        BinaryWord::encode(&Composition::from_parts(c)).unwrap().to_string()
    }

    #[test]
    fn encoding_examples() {
        assert_eq!(w(&[2]), "PQ");
        assert_eq!(w(&[3, 2]), "PPQPQ");
        assert_eq!(w(&[2, 1, 1]), "PQQQ");
    }

    #[test]
    fn decode_rejects_inadmissible() {
        let e = "QPQ".parse::<BinaryWord>().unwrap().decode().unwrap_err();
        assert!(e.to_string().contains("position 1"), "{e}");
        let e = "PQP".parse::<BinaryWord>().unwrap().decode().unwrap_err();
        assert!(e.to_string().contains("position 3"), "{e}");
        assert!(BinaryWord::encode(&Composition::from_parts(&[1, 2])).is_err());
    }

    #[test]
    fn dual_examples() {
        let d = |c: &[u32]| dual(&Composition::from_parts(c)).unwrap().into_parts();
        assert_eq!(d(&[2]), vec![2]);
        assert_eq!(d(&[2, 1]), vec![3]);
        assert_eq!(d(&[4]), vec![2, 1, 1]);
        assert_eq!(d(&[3, 1]), vec![3, 1]);
        assert_eq!(d(&[2, 2]), vec![2, 2]);
        assert!(dual(&Composition::from_parts(&[1, 3])).is_err());
        assert!(dual(&Composition::empty()).is_err());
    }
}
