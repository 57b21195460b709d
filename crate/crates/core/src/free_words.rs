//! Words over symmetric alphabets and reduced words in free groups.
//!
//! Two word types live here. [`MonoidWord`] is a plain letter sequence over an
//! [`Alphabet`], never reduced, and is what palindrome predicates look at.
//! [`FreeWord`] is the reduced normal form of an element of the free group
//! `F_n`, stored syllable by syllable (`x_i^α`), and carries the quasi-length
//! [`ql`].

use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// A finite alphabet closed under a formal inverse.
///
/// Letters are dense indices `0..len()`. A letter may be its own inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    inverse: Vec<usize>,
}

impl Alphabet {
    pub fn new(names: Vec<String>, inverse: Vec<usize>) -> Result<Self> {
        if names.len() != inverse.len() {
            return Err(Error::parse("alphabet names and inverse map differ in length"));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name == "1" || name.chars().any(|c| c.is_whitespace() || ";[]".contains(c)) {
                return Err(Error::parse(format!("invalid letter name `{name}`")));
            }
            if names[..i].contains(name) {
                return Err(Error::parse(format!("duplicate letter name `{name}`")));
            }
        }
        for (i, &j) in inverse.iter().enumerate() {
            if j >= names.len() || inverse[j] != i {
                return Err(Error::parse(format!(
                    "inverse map is not an involution at letter `{}`",
                    names[i]
                )));
            }
        }
        Ok(Alphabet { names, inverse })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, letter: usize) -> &str {
        &self.names[letter]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn inverse(&self, letter: usize) -> usize {
        self.inverse[letter]
    }

    pub fn letter(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Parses space-separated letters. `1` (or an empty string) is the empty
    /// word, and `name^k` expands to `|k|` copies of the letter or its inverse.
    pub fn parse_word(&self, text: &str) -> Result<MonoidWord> {
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "1" {
                continue;
            }
            if let Some(letter) = self.letter(token) {
                letters.push(letter);
                continue;
            }
            let (base, exp) = token
                .rsplit_once('^')
                .ok_or_else(|| Error::UnknownLabel(token.to_string()))?;
            let letter = self
                .letter(base)
                .ok_or_else(|| Error::UnknownLabel(token.to_string()))?;
            let exp: i64 = exp
                .parse()
                .map_err(|_| Error::parse(format!("bad exponent in `{token}`")))?;
            let letter = if exp < 0 { self.inverse(letter) } else { letter };
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(MonoidWord::new(letters))
    }

    pub fn format_word(&self, word: &MonoidWord) -> String {
        if word.is_empty() {
            return "1".to_string();
        }
        word.letters()
            .iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Inverse of a word as a group element: reverse it and invert each letter.
    pub fn invert_word(&self, word: &MonoidWord) -> MonoidWord {
        MonoidWord::new(word.letters().iter().rev().map(|&l| self.inverse(l)).collect())
    }
}

/// A finite sequence of letters, not reduced in any sense.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct MonoidWord {
    letters: Vec<usize>,
}

impl MonoidWord {
    pub fn new(letters: Vec<usize>) -> Self {
        MonoidWord { letters }
    }

    pub fn empty() -> Self {
        MonoidWord::default()
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: usize) {
        self.letters.push(letter);
    }

    /// The reverse word `ū`.
    pub fn reverse(&self) -> MonoidWord {
        MonoidWord::new(self.letters.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &MonoidWord) -> MonoidWord {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        MonoidWord::new(letters)
    }

    pub fn is_palindrome(&self) -> bool {
        let n = self.letters.len();
        (0..n / 2).all(|i| self.letters[i] == self.letters[n - 1 - i])
    }
}

impl FromIterator<usize> for MonoidWord {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        MonoidWord::new(iter.into_iter().collect())
    }
}

/// True iff the letter sequence reads the same in both directions.
pub fn is_word_palindrome(word: &MonoidWord) -> bool {
    word.is_palindrome()
}

/// The alphabet `{x_1, x_1^-1, …, x_n, x_n^-1}` of the free group `F_n`.
///
/// Letter `2(i-1)` is `x_i` and letter `2(i-1)+1` is its inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeAlphabet {
    rank: usize,
    alphabet: Alphabet,
}

impl FreeAlphabet {
    pub fn new(rank: usize) -> Self {
        let mut names = Vec::with_capacity(2 * rank);
        let mut inverse = Vec::with_capacity(2 * rank);
        for i in 1..=rank {
            names.push(format!("x{i}"));
            names.push(format!("x{i}^-1"));
            inverse.push(2 * i - 1);
            inverse.push(2 * i - 2);
        }
        FreeAlphabet {
            rank,
            alphabet: Alphabet { names, inverse },
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `(generator, ±1)` for a letter.
    pub fn decode(&self, letter: usize) -> (usize, i64) {
        assert!(letter < 2 * self.rank, "letter {letter} outside F_{}", self.rank);
        (letter / 2 + 1, if letter.is_multiple_of(2) { 1 } else { -1 })
    }

    pub fn encode(&self, generator: usize, sign: i64) -> usize {
        2 * (generator - 1) + usize::from(sign < 0)
    }
}

impl Deref for FreeAlphabet {
    type Target = Alphabet;

    fn deref(&self) -> &Alphabet {
        &self.alphabet
    }
}

/// One syllable `x_generator^exponent` of a reduced word. Generators are
/// numbered from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A reduced word in `F_n`: adjacent syllables use distinct generators and no
/// exponent is zero, so equality of values is equality of group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<Syllable>,
}

// Appends a syllable to an already reduced stack, merging and cancelling.
fn push_syllable(stack: &mut Vec<Syllable>, s: Syllable) {
    if s.exponent == 0 {
        return;
    }
    match stack.last_mut() {
        Some(top) if top.generator == s.generator => {
            top.exponent += s.exponent;
            if top.exponent == 0 {
                stack.pop();
            }
        }
        _ => stack.push(s),
    }
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            syllables: Vec::new(),
        }
    }

    pub fn generator(rank: usize, generator: usize) -> Result<Self> {
        Self::from_syllables(rank, [(generator, 1)])
    }

    /// Builds the reduced word for an arbitrary product of syllables.
    pub fn from_syllables<I>(rank: usize, syllables: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, i64)>,
    {
        let mut stack = Vec::new();
        for (generator, exponent) in syllables {
            if generator == 0 || generator > rank {
                return Err(Error::UnknownLabel(format!("x{generator} in F_{rank}")));
            }
            push_syllable(&mut stack, Syllable { generator, exponent });
        }
        Ok(FreeWord { rank, syllables: stack })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Length as a reduced word in the letters `x_i^{±1}`.
    pub fn letter_length(&self) -> u64 {
        self.syllables.iter().map(|s| s.exponent.unsigned_abs()).sum()
    }

    /// Image in the abelianization `Z^n`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0; self.rank];
        for s in &self.syllables {
            sums[s.generator - 1] += s.exponent;
        }
        sums
    }

    fn check_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: other.rank,
            });
        }
        Ok(())
    }

    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        self.check_rank(other)?;
        let mut stack = self.syllables.clone();
        for &s in &other.syllables {
            push_syllable(&mut stack, s);
        }
        Ok(FreeWord {
            rank: self.rank,
            syllables: stack,
        })
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            syllables: self
                .syllables
                .iter()
                .rev()
                .map(|s| Syllable {
                    generator: s.generator,
                    exponent: -s.exponent,
                })
                .collect(),
        }
    }

    /// `[u, v] = u^-1 v^-1 u v`.
    pub fn commutator(&self, other: &FreeWord) -> Result<FreeWord> {
        self.inverse()
            .multiply(&other.inverse())?
            .multiply(self)?
            .multiply(other)
    }

    pub fn pow(&self, n: i64) -> FreeWord {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut stack = Vec::with_capacity(base.syllables.len() * n.unsigned_abs() as usize);
        for _ in 0..n.unsigned_abs() {
            for &s in &base.syllables {
                push_syllable(&mut stack, s);
            }
        }
        FreeWord {
            rank: self.rank,
            syllables: stack,
        }
    }

    /// Spells the word letter by letter over [`FreeAlphabet`].
    pub fn to_monoid_word(&self) -> MonoidWord {
        let alphabet = FreeAlphabet::new(self.rank);
        self.syllables
            .iter()
            .flat_map(|s| {
                let letter = alphabet.encode(s.generator, s.exponent.signum());
                std::iter::repeat_n(letter, s.exponent.unsigned_abs() as usize)
            })
            .collect()
    }

    /// Parses the textual word syntax: generators `x1, x2, …` (with `x`, `y`,
    /// `z` as aliases of the first three), powers `g^k`, brackets `(…)`,
    /// commutators `[u,v]` and `1` for the identity.
    pub fn parse(rank: usize, text: &str) -> Result<FreeWord> {
        let mut parser = WordParser {
            rank,
            chars: text.chars().collect(),
            pos: 0,
        };
        let word = parser.product()?;
        parser.skip_ws();
        if parser.pos != parser.chars.len() {
            return Err(Error::parse(format!(
                "unexpected `{}` in word `{text}`",
                parser.chars[parser.pos]
            )));
        }
        Ok(word)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return f.write_str("1");
        }
        for (i, s) in self.syllables.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "x{}", s.generator)?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

struct WordParser {
    rank: usize,
    chars: Vec<char>,
    pos: usize,
}

impl WordParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            other => Err(Error::parse(format!("expected `{c}`, found {other:?}"))),
        }
    }

    fn product(&mut self) -> Result<FreeWord> {
        let mut acc = FreeWord::identity(self.rank);
        while let Some(c) = self.peek() {
            if matches!(c, ']' | ')' | ',' | ';') {
                break;
            }
            let factor = self.factor()?;
            acc = acc.multiply(&factor)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<FreeWord> {
        let atom = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let n = self.integer()?;
            return Ok(atom.pow(n));
        }
        Ok(atom)
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-' | '+')) {
            self.pos += 1;
        }
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        digits
            .parse()
            .map_err(|_| Error::parse(format!("expected an integer, found `{digits}`")))
    }

    fn atom(&mut self) -> Result<FreeWord> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.product()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.product()?;
                self.expect(',')?;
                let v = self.product()?;
                self.expect(']')?;
                u.commutator(&v)
            }
            Some('1') => {
                self.pos += 1;
                if self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    return Err(Error::parse("identity `1` followed by other characters"));
                }
                Ok(FreeWord::identity(self.rank))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                let generator = match name.as_str() {
                    "x" => 1,
                    "y" => 2,
                    "z" => 3,
                    _ => name
                        .strip_prefix('x')
                        .and_then(|d| d.parse::<usize>().ok())
                        .ok_or_else(|| Error::UnknownLabel(name.clone()))?,
                };
                FreeWord::generator(self.rank, generator)
            }
            other => Err(Error::parse(format!("unexpected {other:?} in word"))),
        }
    }
}

/// Reduces a letter sequence over the free alphabet to its normal form.
pub fn reduce(alphabet: &FreeAlphabet, word: &MonoidWord) -> FreeWord {
    let mut stack = Vec::new();
    for &letter in word.letters() {
        let (generator, exponent) = alphabet.decode(letter);
        push_syllable(&mut stack, Syllable { generator, exponent });
    }
    FreeWord {
        rank: alphabet.rank(),
        syllables: stack,
    }
}

/// `tr(m)`: the residue of `m` mod 3 mapped into `{-1, 0, 1}`.
pub fn tr(m: i64) -> i64 {
    match m.rem_euclid(3) {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

/// Quasi-length: the sum of `tr` over the exponents of the reduced word.
pub fn ql(word: &FreeWord) -> i64 {
    word.syllables().iter().map(|s| tr(s.exponent)).sum()
}

/// `ql` of an arbitrary letter sequence, taken on its reduced form.
pub fn ql_of_word(alphabet: &FreeAlphabet, word: &MonoidWord) -> i64 {
    ql(&reduce(alphabet, word))
}

pub fn free_multiply(u: &FreeWord, v: &FreeWord) -> Result<FreeWord> {
    u.multiply(v)
}

pub fn free_invert(u: &FreeWord) -> FreeWord {
    u.inverse()
}

pub fn free_commutator(u: &FreeWord, v: &FreeWord) -> Result<FreeWord> {
    u.commutator(v)
}
