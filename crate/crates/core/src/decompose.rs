//! Palindromic decompositions in `F_2 ≀ S_3`.
//!
//! The generating set is `{x, y, s1, s2, c}` (closed under inverses), where
//! `x, y` generate the copy of `F_2` at the identity coordinate and
//! `c = s1·s2`. Every element `(f_1, …, f_6) s` with
//! `f_i = x^{α_i} y^{β_i} g_i`, `g_i ∈ F_2'`, is written as
//!
//! * six palindromes `u x^{α_i} ū` and six palindromes `u y^{β_i} ū`, where
//!   `u` spells the coordinate's `S_3` element in `s1, s2`;
//! * six palindromes `w_i w̄_i`, where `w_i` spells `g_i` using the relator
//!   `r = c s1 s2 s1 s2` so that `w̄_i` evaluates to the identity;
//! * at most one palindrome for the top element.
//!
//! Every certificate is checked by evaluating its factors in the wreath
//! product before it is returned.

use std::sync::{Arc, LazyLock};

use crate::error::{Error, Result};
use crate::finite_groups::FiniteGroup;
use crate::free_words::{Alphabet, FreeWord, MonoidWord};
use crate::wreath::{WreathElement, WreathGroup};

/// Bound on the number of palindromic factors for any element.
pub const PALINDROME_BOUND: usize = 20;

const X: usize = 0;
const X_INV: usize = 1;
const Y: usize = 2;
const Y_INV: usize = 3;
const S1: usize = 4;
const S2: usize = 5;
const C: usize = 6;
const C_INV: usize = 7;

struct Setting {
    alphabet: Alphabet,
    wreath: WreathGroup,
    images: Vec<WreathElement>,
    conjugators: ConjugatorTable,
    relator: MonoidWord,
    relator_inv: MonoidWord,
}

static SETTING: LazyLock<Setting> = LazyLock::new(|| {
    let alphabet = Alphabet::new(
        ["x", "x^-1", "y", "y^-1", "s1", "s2", "c", "c^-1"]
            .map(String::from)
            .to_vec(),
        vec![X_INV, X, Y_INV, Y, S1, S2, C_INV, C],
    )
    .expect("valid alphabet");
    let s3 = Arc::new(FiniteGroup::sym3_fink());
    let wreath = WreathGroup::new(2, s3.clone()).expect("rank 2");
    let letter = |name: &str| s3.element_by_name(name).expect("S3 label");
    let gen = |g: usize, e: i64| wreath.embed(0, FreeWord::from_syllables(2, [(g, e)]).unwrap()).unwrap();
    let top = |name: &str| wreath.top_element(letter(name)).unwrap();
    let images = vec![
        gen(1, 1),
        gen(1, -1),
        gen(2, 1),
        gen(2, -1),
        top("s1"),
        top("s2"),
        top("c"),
        top("c^-1"),
    ];
    let relator = MonoidWord::new(vec![C, S1, S2, S1, S2]);
    let relator_inv = alphabet.invert_word(&relator);
    let conjugators = ConjugatorTable::new(&wreath);
    let setting = Setting {
        alphabet,
        wreath,
        images,
        conjugators,
        relator,
        relator_inv,
    };

    // r = 1 in S_3 while its reversal is not; the cancellation relies on both.
    let id = setting.wreath.identity();
    assert_eq!(setting.eval(&setting.relator), id);
    assert_ne!(setting.eval(&setting.relator.reverse()), id);
    for (coord, u) in setting.conjugators.words.iter().enumerate() {
        let k = setting.wreath.coordinate_element(coord);
        assert_eq!(setting.eval(u), setting.wreath.top_element(k).unwrap());
        let back = setting.eval(&u.reverse());
        assert_eq!(back, setting.wreath.invert(&setting.eval(u)).unwrap());
    }
    setting
});

impl Setting {
    fn eval(&self, word: &MonoidWord) -> WreathElement {
        word.letters().iter().fold(self.wreath.identity(), |acc, &l| {
            self.wreath.multiply(&acc, &self.images[l]).unwrap()
        })
    }
}

/// `F_2 ≀ S_3`, coordinates indexed by the ids of [`FiniteGroup::sym3_fink`].
pub fn fink_wreath() -> &'static WreathGroup {
    &SETTING.wreath
}

/// The letters `x, x^-1, y, y^-1, s1, s2, c, c^-1`.
pub fn fink_alphabet() -> &'static Alphabet {
    &SETTING.alphabet
}

/// Evaluates a word over [`fink_alphabet`] by multiplying letter images.
pub fn evaluate_word(word: &MonoidWord) -> Result<WreathElement> {
    if let Some(&bad) = word.letters().iter().find(|&&l| l >= SETTING.images.len()) {
        return Err(Error::UnknownLabel(format!("letter #{bad}")));
    }
    Ok(SETTING.eval(word))
}

/// For each coordinate, a word `u` in `s1, s2` spelling its `S_3` element.
/// Since `s1, s2` are involutions, `ū` evaluates to `u^-1`, so `u z ū` is a
/// palindrome whenever `z` is.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugatorTable {
    words: Vec<MonoidWord>,
}

impl ConjugatorTable {
    fn new(wreath: &WreathGroup) -> Self {
        let s3 = wreath.top_group();
        let spelled = [
            ("1", vec![]),
            ("s1", vec![S1]),
            ("s2", vec![S2]),
            ("c", vec![S1, S2]),
            ("c^-1", vec![S2, S1]),
            ("s1 s2 s1", vec![S1, S2, S1]),
        ];
        let mut words = vec![MonoidWord::empty(); wreath.coordinates()];
        for (name, letters) in spelled {
            let k = s3.element_by_name(name).expect("S3 element");
            words[wreath.coordinate_of(k)] = MonoidWord::new(letters);
        }
        ConjugatorTable { words }
    }

    pub fn word(&self, coord: usize) -> &MonoidWord {
        &self.words[coord]
    }
}

pub fn conjugator_table() -> &'static ConjugatorTable {
    &SETTING.conjugators
}

/// `f_i = x^{α_i} y^{β_i} g_i` for every coordinate, plus the top element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianSplit {
    /// `[α_i, β_i]` per coordinate.
    pub exponents: Vec<[i64; 2]>,
    /// `g_i`, each with zero exponent sums.
    pub derived_parts: Vec<FreeWord>,
    pub top: usize,
}

impl AbelianSplit {
    /// Multiplies the parts back together.
    pub fn reconstruct(&self) -> Result<WreathElement> {
        let base = self
            .exponents
            .iter()
            .zip(&self.derived_parts)
            .map(|(&[a, b], g)| FreeWord::from_syllables(2, [(1, a), (2, b)])?.multiply(g))
            .collect::<Result<Vec<_>>>()?;
        fink_wreath().element(base, self.top)
    }
}

pub fn split_abelian_commutator(g: &WreathElement) -> Result<AbelianSplit> {
    fink_wreath().check(g)?;
    let mut exponents = Vec::with_capacity(g.base().len());
    let mut derived_parts = Vec::with_capacity(g.base().len());
    for f in g.base() {
        let sums = f.exponent_sums();
        let (a, b) = (sums[0], sums[1]);
        let head = FreeWord::from_syllables(2, [(2, -b), (1, -a)])?;
        exponents.push([a, b]);
        derived_parts.push(head.multiply(f)?);
    }
    Ok(AbelianSplit {
        exponents,
        derived_parts,
        top: g.top(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FreeLetter {
    X,
    Y,
}

/// `u z^e ū` with `u` the conjugator of `coord`: a palindrome evaluating to
/// `z^e` at that coordinate. Empty for `e = 0`.
pub fn coordinate_power_palindrome(coord: usize, letter: FreeLetter, exponent: i64) -> MonoidWord {
    if exponent == 0 {
        return MonoidWord::empty();
    }
    let l = match (letter, exponent > 0) {
        (FreeLetter::X, true) => X,
        (FreeLetter::X, false) => X_INV,
        (FreeLetter::Y, true) => Y,
        (FreeLetter::Y, false) => Y_INV,
    };
    let u = conjugator_table().word(coord);
    let core: MonoidWord = std::iter::repeat_n(l, exponent.unsigned_abs() as usize).collect();
    u.concat(&core).concat(&u.reverse())
}

// Spells x^{a_1} y^{b_1} … x^{a_t} y^{b_t} as r x^{a_1} r^-1 y^{b_1} … .
fn relator_spelling(g: &FreeWord) -> MonoidWord {
    let s = &*SETTING;
    let mut out = MonoidWord::empty();
    let push_power = |out: &mut MonoidWord, pos: usize, neg: usize, e: i64| {
        let l = if e > 0 { pos } else { neg };
        for _ in 0..e.unsigned_abs() {
            out.push(l);
        }
    };
    for syl in g.syllables() {
        if syl.generator == 1 {
            out = out.concat(&s.relator);
            push_power(&mut out, X, X_INV, syl.exponent);
            out = out.concat(&s.relator_inv);
        } else {
            push_power(&mut out, Y, Y_INV, syl.exponent);
        }
    }
    out
}

/// The palindrome `w_i w̄_i` for `g_i ∈ F_2'` at `coord`, where
/// `w_i = u (r x^{a_1} r^-1 y^{b_1} …) ū`.
///
/// Both halves are evaluated: `w_i` must give `g_i` at `coord` and `w̄_i` must
/// give the identity. A failure of the second check is reported as
/// [`Error::Invariant`] with the offending word.
pub fn derived_part_palindrome(coord: usize, g: &FreeWord) -> Result<MonoidWord> {
    let s = &*SETTING;
    if coord >= s.wreath.coordinates() {
        return Err(Error::GroupMismatch(format!("coordinate {coord} out of range")));
    }
    if g.rank() != 2 {
        return Err(Error::RankMismatch {
            left: 2,
            right: g.rank(),
        });
    }
    if g.exponent_sums().iter().any(|&e| e != 0) {
        return Err(Error::GroupMismatch(format!(
            "`{g}` is not in the derived subgroup of F_2"
        )));
    }
    if g.is_identity() {
        return Ok(MonoidWord::empty());
    }
    let u = s.conjugators.word(coord);
    let w = u.concat(&relator_spelling(g)).concat(&u.reverse());
    let w_bar = w.reverse();
    if s.eval(&w_bar) != s.wreath.identity() {
        return Err(Error::Invariant(format!(
            "reversed spelling of `{g}` at coordinate {coord} is not trivial: {}",
            s.alphabet.format_word(&w_bar)
        )));
    }
    if s.eval(&w) != s.wreath.embed(coord, g.clone())? {
        return Err(Error::Invariant(format!(
            "spelling of `{g}` at coordinate {coord} evaluates incorrectly: {}",
            s.alphabet.format_word(&w)
        )));
    }
    Ok(w.concat(&w_bar))
}

/// At most one palindrome for an element of `S_3`: every non-identity
/// element is a generator letter or `s1 s2 s1`.
pub fn top_palindromes(k: usize) -> Vec<MonoidWord> {
    let s3 = fink_wreath().top_group();
    let table = [
        ("s1", vec![S1]),
        ("s2", vec![S2]),
        ("c", vec![C]),
        ("c^-1", vec![C_INV]),
        ("s1 s2 s1", vec![S1, S2, S1]),
    ];
    table
        .into_iter()
        .find(|(name, _)| s3.element_by_name(name).unwrap() == k)
        .map(|(_, letters)| vec![MonoidWord::new(letters)])
        .unwrap_or_default()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionCertificate {
    pub target: WreathElement,
    pub factors: Vec<MonoidWord>,
    pub factor_count: usize,
}

/// Checks recomputed from a certificate's factors.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Verification {
    pub factors_palindromic: bool,
    pub product_matches_target: bool,
    pub within_bound: bool,
}

impl Verification {
    pub fn all(&self) -> bool {
        self.factors_palindromic && self.product_matches_target && self.within_bound
    }
}

impl DecompositionCertificate {
    pub fn verify(&self) -> Result<Verification> {
        let wreath = fink_wreath();
        let evaluated = self.factors.iter().map(evaluate_word).collect::<Result<Vec<_>>>()?;
        let product = wreath.product(&evaluated)?;
        Ok(Verification {
            factors_palindromic: self.factors.iter().all(MonoidWord::is_palindrome),
            product_matches_target: product == self.target,
            within_bound: self.factor_count == self.factors.len() && self.factor_count <= PALINDROME_BOUND,
        })
    }

    pub fn factor_strings(&self) -> Vec<String> {
        self.factors.iter().map(|f| fink_alphabet().format_word(f)).collect()
    }
}

/// Writes `g` as a verified product of at most [`PALINDROME_BOUND`] palindromes.
pub fn decompose(g: &WreathElement) -> Result<DecompositionCertificate> {
    let split = split_abelian_commutator(g)?;
    let mut factors = Vec::new();
    for (letter, column) in [(FreeLetter::X, 0), (FreeLetter::Y, 1)] {
        for (coord, e) in split.exponents.iter().enumerate() {
            let p = coordinate_power_palindrome(coord, letter, e[column]);
            if !p.is_empty() {
                factors.push(p);
            }
        }
    }
    for (coord, part) in split.derived_parts.iter().enumerate() {
        let p = derived_part_palindrome(coord, part)?;
        if !p.is_empty() {
            factors.push(p);
        }
    }
    factors.extend(top_palindromes(split.top));

    let cert = DecompositionCertificate {
        target: g.clone(),
        factor_count: factors.len(),
        factors,
    };
    let check = cert.verify()?;
    if !check.all() {
        return Err(Error::Invariant(format!(
            "decomposition of {} failed verification: {check:?}",
            fink_wreath().format(g)
        )));
    }
    Ok(cert)
}
