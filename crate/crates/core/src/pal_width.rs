//! Exact palindromic length and width of finite groups.
//!
//! Both palindrome notions reduce to one object: the set of pairs
//! `(ρ(w), ρ(w̄))` over all words `w` in the generator alphabet. Appending a
//! letter `a` to `w` sends the pair `(g, h)` to `(g·a, a·h)`, so the set is the
//! orbit of `(1, 1)` under those moves and a BFS over at most `|G|²` states
//! finds it.
//!
//! * Word palindromes are `u ū` and `u a ū`, with values `g·h` and `g·a·h`.
//! * Group palindromes are elements `g` with `(g, g)` reachable.
//!
//! Lengths then come from layering products of the palindrome set.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_groups::FiniteGroup;

/// Default ceiling on `|G|²`, the number of pair states.
pub const DEFAULT_STATE_CAP: usize = 4_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Notion {
    /// Some word spelling the element reads the same both ways.
    Word,
    /// Some word spelling the element has a reversal with the same value.
    Group,
}

impl FromStr for Notion {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "word" => Ok(Notion::Word),
            "group" => Ok(Notion::Group),
            _ => Err(Error::parse(format!("unknown notion `{s}` (expected word|group)"))),
        }
    }
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Word => "word",
            Notion::Group => "group",
        })
    }
}

/// All pairs `(ρ(w), ρ(w̄))`.
#[derive(Debug, Clone)]
pub struct ReachablePairs<'g> {
    group: &'g FiniteGroup,
    reached: Vec<bool>,
    count: usize,
}

impl<'g> ReachablePairs<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn contains(&self, g: usize, h: usize) -> bool {
        self.reached[g * self.group.order() + h]
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.group.order();
        self.reached
            .iter()
            .enumerate()
            .filter(|(_, &r)| r)
            .map(move |(i, _)| (i / n, i % n))
    }
}

pub fn reachable_pairs(group: &FiniteGroup, state_cap: usize) -> Result<ReachablePairs<'_>> {
    let n = group.order();
    let states = n as u128 * n as u128;
    if states > state_cap as u128 {
        return Err(Error::CapExceeded {
            what: "pair-state search (|G|^2)",
            needed: states,
            cap: state_cap as u128,
        });
    }
    let mut reached = vec![false; n * n];
    let start = group.identity() * n + group.identity();
    reached[start] = true;
    let mut count = 1;
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        let (g, h) = (state / n, state % n);
        for &a in group.generators() {
            let next = group.mul(g, a) * n + group.mul(a, h);
            if !reached[next] {
                reached[next] = true;
                count += 1;
                queue.push_back(next);
            }
        }
    }
    Ok(ReachablePairs { group, reached, count })
}

/// Sorted list of palindromic elements under the given notion; always
/// contains the identity.
pub fn palindrome_elements(pairs: &ReachablePairs<'_>, notion: Notion) -> Vec<usize> {
    let group = pairs.group();
    let mut member = vec![false; group.order()];
    member[group.identity()] = true;
    match notion {
        Notion::Word => {
            for (g, h) in pairs.iter() {
                member[group.mul(g, h)] = true;
                for &a in group.generators() {
                    member[group.mul(group.mul(g, a), h)] = true;
                }
            }
        }
        Notion::Group => {
            for (g, m) in member.iter_mut().enumerate() {
                *m |= pairs.contains(g, g);
            }
        }
    }
    (0..group.order()).filter(|&g| member[g]).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WidthReport {
    pub notion: Notion,
    pub order: usize,
    pub width: usize,
    pub palindrome_count: usize,
    /// `|S_k|` for `S_0 = {1}`, `S_{k+1} = S_k · P`, up to `k = width`.
    pub layers: Vec<usize>,
    pub palindrome_elements: Vec<usize>,
    /// Palindromic length of every element, indexed by element id.
    pub lengths: Vec<usize>,
}

impl WidthReport {
    pub fn length(&self, g: usize) -> usize {
        self.lengths[g]
    }
}

pub fn palindromic_width(group: &FiniteGroup, notion: Notion, state_cap: usize) -> Result<WidthReport> {
    let pairs = reachable_pairs(group, state_cap)?;
    let palindromes = palindrome_elements(&pairs, notion);
    Ok(width_from_palindromes(group, notion, palindromes))
}

/// Layers a precomputed palindrome set over the group.
pub fn width_from_palindromes(group: &FiniteGroup, notion: Notion, palindromes: Vec<usize>) -> WidthReport {
    let cover = group.product_set_layers(&palindromes);
    // Generators are one-letter palindromes, so the cover always reaches G.
    let lengths: Vec<usize> = cover
        .lengths
        .iter()
        .map(|l| l.expect("palindromes generate the group"))
        .collect();
    WidthReport {
        notion,
        order: group.order(),
        width: lengths.iter().copied().max().unwrap_or(0),
        palindrome_count: palindromes.len(),
        layers: cover.layer_sizes,
        palindrome_elements: palindromes,
        lengths,
    }
}

pub fn palindromic_length(group: &FiniteGroup, notion: Notion, g: usize, state_cap: usize) -> Result<usize> {
    if g >= group.order() {
        return Err(Error::parse(format!(
            "element {g} outside a group of order {}",
            group.order()
        )));
    }
    Ok(palindromic_width(group, notion, state_cap)?.length(g))
}
