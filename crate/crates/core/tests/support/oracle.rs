//! Brute-force palindromic width, written without the pair-BFS or the
//! product-set layering of the library.
//!
//! * Word palindromes are grown outside-in: the values of palindromes of
//!   length `L + 2` are `a · v · a` for `v` a value of length `L`.
//! * Group palindromes come from the per-length sets of `(ρ(w), ρ(w̄))`,
//!   grown by prepending letters.
//! * Lengths come from a BFS that multiplies by palindromes on the left.
//!
//! Both length chains are deterministic functions of their previous term on a
//! finite state space, so they are eventually periodic; iteration stops once a
//! term repeats.
//!
//! For tiny groups, [`literal_word_palindromes`] enumerates every word up to a
//! length bound and tests palindromicity letter by letter.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use palwidth_core::FiniteGroup;

pub type Set = BTreeSet<usize>;

fn letters(g: &FiniteGroup) -> Vec<usize> {
    g.generators().to_vec()
}

/// Union over all lengths of the values of word palindromes.
pub fn word_palindromes(g: &FiniteGroup) -> Set {
    let gens = letters(g);
    let mut all = Set::new();
    for start in [Set::from([g.identity()]), gens.iter().copied().collect::<Set>()] {
        let mut seen: HashSet<Set> = HashSet::new();
        let mut layer = start;
        while seen.insert(layer.clone()) {
            all.extend(layer.iter().copied());
            layer = layer
                .iter()
                .flat_map(|&v| gens.iter().map(move |&a| (a, v)))
                .map(|(a, v)| g.mul(g.mul(a, v), a))
                .collect();
        }
    }
    all
}

/// Elements `x` with a word `w` such that `ρ(w) = ρ(w̄) = x`.
pub fn group_palindromes(g: &FiniteGroup) -> Set {
    let gens = letters(g);
    let mut seen: HashSet<BTreeSet<(usize, usize)>> = HashSet::new();
    let mut layer = BTreeSet::from([(g.identity(), g.identity())]);
    let mut out = Set::new();
    while seen.insert(layer.clone()) {
        out.extend(layer.iter().filter(|(x, y)| x == y).map(|(x, _)| *x));
        layer = layer
            .iter()
            .flat_map(|&(x, y)| gens.iter().map(move |&a| (g.mul(a, x), g.mul(y, a))))
            .collect();
    }
    out
}

/// Minimal number of palindrome factors for every element.
pub fn lengths(g: &FiniteGroup, palindromes: &Set) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.order()];
    dist[g.identity()] = Some(0);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &p in palindromes {
            let y = g.mul(p, x);
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

pub fn width(g: &FiniteGroup, palindromes: &Set) -> usize {
    lengths(g, palindromes)
        .into_iter()
        .map(|d| d.expect("palindromes generate"))
        .max()
        .unwrap_or(0)
}

/// Values of all letter-palindromes of length at most `max_len`, found by
/// listing every word and comparing it with its reversal.
pub fn literal_word_palindromes(g: &FiniteGroup, max_len: usize) -> Set {
    let k = g.generators().len();
    let mut out = Set::from([g.identity()]);
    let mut word: Vec<usize> = Vec::new();
    for len in 1..=max_len {
        let total = k.pow(len as u32);
        for mut code in 0..total {
            word.clear();
            for _ in 0..len {
                word.push(code % k);
                code /= k;
            }
            if word.iter().eq(word.iter().rev()) {
                let value = word.iter().fold(g.identity(), |acc, &i| g.mul(acc, g.generators()[i]));
                out.insert(value);
            }
        }
    }
    out
}

/// Values `x` with some word of length at most `max_len` satisfying
/// `ρ(w) = ρ(w̄) = x`, by listing every word.
pub fn literal_group_palindromes(g: &FiniteGroup, max_len: usize) -> Set {
    let k = g.generators().len();
    let mut out = Set::from([g.identity()]);
    let mut word: Vec<usize> = Vec::new();
    let eval = |w: &mut dyn Iterator<Item = &usize>| w.fold(g.identity(), |acc, &i| g.mul(acc, g.generators()[i]));
    for len in 1..=max_len {
        let total = k.pow(len as u32);
        for mut code in 0..total {
            word.clear();
            for _ in 0..len {
                word.push(code % k);
                code /= k;
            }
            let fwd = eval(&mut word.iter());
            if fwd == eval(&mut word.iter().rev()) {
                out.insert(fwd);
            }
        }
    }
    out
}
