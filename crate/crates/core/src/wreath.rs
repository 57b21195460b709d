//! The restricted wreath product `F_n ≀ K` for a finite group `K`.
//!
//! An element is `(f_{k_1}, …, f_{k_l}) k`: one reduced free word per element
//! of `K` plus a top element. Coordinates are ordered with the identity of `K`
//! first and the remaining elements by id. `K` acts on the base by
//! `(k·f)_x = f_{k^-1 x}`, which gives the product
//!
//! ```text
//! (f, k)(f', k') = (x ↦ f_x · f'_{k^-1 x}, k k').
//! ```

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_groups::FiniteGroup;
use crate::free_words::{ql, FreeWord};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WreathGroup {
    rank: usize,
    top: Arc<FiniteGroup>,
    coord_element: Vec<usize>,
    coord_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    base: Vec<FreeWord>,
    top: usize,
}

impl WreathElement {
    pub fn base(&self) -> &[FreeWord] {
        &self.base
    }

    /// Element id of the top component in `K`.
    pub fn top(&self) -> usize {
        self.top
    }
}

impl WreathGroup {
    pub fn new(rank: usize, top: Arc<FiniteGroup>) -> Result<Self> {
        if rank == 0 {
            return Err(Error::RankTooSmall(0));
        }
        let mut coord_element = vec![top.identity()];
        coord_element.extend((0..top.order()).filter(|&k| k != top.identity()));
        let mut coord_of = vec![0; top.order()];
        for (i, &k) in coord_element.iter().enumerate() {
            coord_of[k] = i;
        }
        Ok(WreathGroup {
            rank,
            top: top.clone(),
            coord_element,
            coord_of,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn top_group(&self) -> &FiniteGroup {
        &self.top
    }

    /// `l = |K|`, the number of base coordinates.
    pub fn coordinates(&self) -> usize {
        self.coord_element.len()
    }

    pub fn coordinate_element(&self, coord: usize) -> usize {
        self.coord_element[coord]
    }

    pub fn coordinate_of(&self, k: usize) -> usize {
        self.coord_of[k]
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            base: vec![FreeWord::identity(self.rank); self.coordinates()],
            top: self.top.identity(),
        }
    }

    /// Builds an element from its parts, checking shapes and ranks.
    pub fn element(&self, base: Vec<FreeWord>, top: usize) -> Result<WreathElement> {
        let g = WreathElement { base, top };
        self.check(&g)?;
        Ok(g)
    }

    /// The base element with `word` at one coordinate and trivial top.
    pub fn embed(&self, coord: usize, word: FreeWord) -> Result<WreathElement> {
        if coord >= self.coordinates() {
            return Err(Error::GroupMismatch(format!("coordinate {coord} out of range")));
        }
        let mut g = self.identity();
        g.base[coord] = word;
        self.check(&g)?;
        Ok(g)
    }

    /// The element `k` of the top group.
    pub fn top_element(&self, k: usize) -> Result<WreathElement> {
        let mut g = self.identity();
        g.top = k;
        self.check(&g)?;
        Ok(g)
    }

    pub fn check(&self, g: &WreathElement) -> Result<()> {
        if g.base.len() != self.coordinates() {
            return Err(Error::GroupMismatch(format!(
                "{} base coordinates, expected {}",
                g.base.len(),
                self.coordinates()
            )));
        }
        if g.top >= self.top.order() {
            return Err(Error::GroupMismatch(format!("top element {} out of range", g.top)));
        }
        if let Some(w) = g.base.iter().find(|w| w.rank() != self.rank) {
            return Err(Error::RankMismatch {
                left: self.rank,
                right: w.rank(),
            });
        }
        Ok(())
    }

    /// `(k·f)_x = f_{k^-1 x}` on base tuples indexed by coordinate.
    pub fn act(&self, k: usize, base: &[FreeWord]) -> Vec<FreeWord> {
        let k_inv = self.top.inv(k);
        (0..self.coordinates())
            .map(|i| {
                let x = self.coord_element[i];
                base[self.coord_of[self.top.mul(k_inv, x)]].clone()
            })
            .collect()
    }

    pub fn multiply(&self, g: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
        self.check(g)?;
        self.check(h)?;
        let moved = self.act(g.top, &h.base);
        let base = g
            .base
            .iter()
            .zip(&moved)
            .map(|(a, b)| a.multiply(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(WreathElement {
            base,
            top: self.top.mul(g.top, h.top),
        })
    }

    /// `(f, k)^-1 = (k^-1 · f^-1, k^-1)`.
    pub fn invert(&self, g: &WreathElement) -> Result<WreathElement> {
        self.check(g)?;
        let k_inv = self.top.inv(g.top);
        let inverted: Vec<FreeWord> = g.base.iter().map(FreeWord::inverse).collect();
        Ok(WreathElement {
            base: self.act(k_inv, &inverted),
            top: k_inv,
        })
    }

    /// `[g, h] = g^-1 h^-1 g h`.
    pub fn commutator(&self, g: &WreathElement, h: &WreathElement) -> Result<WreathElement> {
        let gi = self.invert(g)?;
        let hi = self.invert(h)?;
        let left = self.multiply(&gi, &hi)?;
        let right = self.multiply(g, h)?;
        self.multiply(&left, &right)
    }

    pub fn product<'a>(&self, factors: impl IntoIterator<Item = &'a WreathElement>) -> Result<WreathElement> {
        factors
            .into_iter()
            .try_fold(self.identity(), |acc, f| self.multiply(&acc, f))
    }

    /// `q_j = (a_j, 1, …, 1)` with `a_j = x_2^{-3j} x_1^{-3j} (x_2 x_1)^{3j}`.
    pub fn q_sequence(&self, j: u64) -> Result<WreathElement> {
        if self.rank < 2 {
            return Err(Error::RankTooSmall(self.rank));
        }
        let e = 3 * j as i64;
        let x2x1 = FreeWord::from_syllables(self.rank, [(2, 1), (1, 1)])?;
        let a = FreeWord::from_syllables(self.rank, [(2, -e), (1, -e)])?.multiply(&x2x1.pow(e))?;
        self.embed(0, a)
    }

    /// Writes `[w_1; …; w_l] k`, with `k` named by the top group's labels.
    pub fn format(&self, g: &WreathElement) -> String {
        let coords: Vec<String> = g.base.iter().map(ToString::to_string).collect();
        format!("[{}] {}", coords.join("; "), self.top.element_name(g.top))
    }

    /// Reads the format written by [`WreathGroup::format`]. Coordinates may
    /// use the full free-word syntax, e.g. `[ [x,y]; 1; 1; 1; 1; 1 ] 1`.
    pub fn parse(&self, text: &str) -> Result<WreathElement> {
        let text = text.trim();
        let body = text
            .strip_prefix('[')
            .ok_or_else(|| Error::parse("wreath element must start with `[`"))?;
        let mut depth = 0usize;
        let mut close = None;
        let mut cuts = Vec::new();
        for (i, ch) in body.char_indices() {
            match ch {
                '[' | '(' => depth += 1,
                ']' | ')' if depth > 0 => depth -= 1,
                ']' => {
                    close = Some(i);
                    break;
                }
                ';' if depth == 0 => cuts.push(i),
                _ => {}
            }
        }
        let close = close.ok_or_else(|| Error::parse("unterminated `[` in wreath element"))?;
        let mut pieces = Vec::new();
        let mut start = 0;
        for cut in cuts {
            pieces.push(&body[start..cut]);
            start = cut + 1;
        }
        pieces.push(&body[start..close]);
        if pieces.len() != self.coordinates() {
            return Err(Error::parse(format!(
                "expected {} coordinates, found {}",
                self.coordinates(),
                pieces.len()
            )));
        }
        let base = pieces
            .into_iter()
            .map(|p| FreeWord::parse(self.rank, p))
            .collect::<Result<Vec<_>>>()?;
        let top_text = body[close + 1..].trim();
        if top_text.is_empty() {
            return Err(Error::parse("missing top element after `]`"));
        }
        let top = self.top.element_by_name(top_text)?;
        Ok(WreathElement { base, top })
    }
}

/// `Δ(g) = Σ ql(f_{k_i})` over the base coordinates.
pub fn delta(g: &WreathElement) -> i64 {
    g.base.iter().map(ql).sum()
}

/// A commutator-length lower bound read off from `Δ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CommutatorCertificate {
    pub delta: i64,
    pub coordinates: usize,
    /// If the element lies in the derived subgroup it is not a product of
    /// fewer than this many commutators.
    pub lower_bound: u64,
}

/// Bound on `|Δ|` for a product of `m` commutators: `3l(6m - 1)`.
pub fn product_bound(coordinates: usize, m: u64) -> i128 {
    3 * coordinates as i128 * (6 * m as i128 - 1)
}

/// Returns the largest `m_min` such that `|Δ(g)| > 3l(6(m_min-1) - 1)`, that
/// is one more than the largest commutator count the product bound rules
/// out. `None` when `|Δ(g)| ≤ 15l`, where the bound says nothing.
pub fn certify_cw_lower_bound(group: &WreathGroup, g: &WreathElement) -> Option<CommutatorCertificate> {
    let d = delta(g);
    let l = group.coordinates() as u128;
    // 3l(6m - 1) < |Δ|  ⇔  m ≤ (|Δ| + 3l - 1) / 18l
    let excluded = (d.unsigned_abs() as u128 + 3 * l - 1) / (18 * l);
    if excluded == 0 {
        return None;
    }
    Some(CommutatorCertificate {
        delta: d,
        coordinates: group.coordinates(),
        lower_bound: excluded as u64 + 1,
    })
}
