//! Finite groups given by multiplication tables.
//!
//! Every [`FiniteGroup`] carries a labelled symmetric generating set: an
//! [`Alphabet`] of generator labels together with the element each label
//! denotes. Words over that alphabet evaluate into the group through
//! [`FiniteGroup::evaluate`], the homomorphism `ρ: A* → G`.

use std::collections::{BTreeSet, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::free_words::{Alphabet, MonoidWord};

/// Limits applied while constructing groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupOptions {
    /// Tables up to this order get an exhaustive associativity check; larger
    /// ones are spot-checked on random triples.
    pub verify_cap: usize,
    /// Hard ceiling on the order of any constructed group.
    pub max_order: usize,
}

impl Default for GroupOptions {
    fn default() -> Self {
        GroupOptions {
            verify_cap: 512,
            max_order: 4096,
        }
    }
}

const SPOT_CHECKS: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<usize>,
    alphabet: Alphabet,
    gen_elements: Vec<usize>,
    names: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from an explicit table, `table[a][b] = a·b`.
    ///
    /// Generators whose inverse is not listed get an extra `label^-1` letter,
    /// so the resulting generating set is always symmetric.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        generators: Vec<(String, usize)>,
        options: &GroupOptions,
    ) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        check_order(order, options)?;
        let mut flat = Vec::with_capacity(order * order);
        for (a, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidGroup(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &v in row {
                if v >= order {
                    return Err(Error::InvalidGroup(format!("entry {v} out of range in row {a}")));
                }
                flat.push(v as u32);
            }
        }
        Self::build(order, flat, generators, None, options)
    }

    pub(crate) fn from_fn(
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        generators: Vec<(String, usize)>,
        names: Option<Vec<String>>,
        options: &GroupOptions,
    ) -> Result<Self> {
        check_order(order, options)?;
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                table.push(mul(a, b) as u32);
            }
        }
        Self::build(order, table, generators, names, options)
    }

    fn build(
        order: usize,
        table: Vec<u32>,
        generators: Vec<(String, usize)>,
        names: Option<Vec<String>>,
        options: &GroupOptions,
    ) -> Result<Self> {
        let at = |a: usize, b: usize| table[a * order + b] as usize;

        // Latin square rows and columns.
        let mut seen = vec![0usize; order];
        for (stamp, a) in (1..).zip(0..order) {
            for b in 0..order {
                let v = at(a, b);
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("row {a} repeats element {v}")));
                }
                seen[v] = stamp;
            }
        }
        seen.fill(0);
        for (stamp, b) in (1..).zip(0..order) {
            for a in 0..order {
                let v = at(a, b);
                if seen[v] == stamp {
                    return Err(Error::InvalidGroup(format!("column {b} repeats element {v}")));
                }
                seen[v] = stamp;
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or_else(|| Error::InvalidGroup("no two-sided identity".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for (a, slot) in inverse.iter_mut().enumerate() {
            let b = (0..order).find(|&b| at(a, b) == identity).unwrap();
            if at(b, a) != identity {
                return Err(Error::InvalidGroup(format!("element {a} has no two-sided inverse")));
            }
            *slot = b;
        }

        if order <= options.verify_cap {
            for a in 0..order {
                for b in 0..order {
                    let ab = at(a, b);
                    for c in 0..order {
                        if at(ab, c) != at(a, at(b, c)) {
                            return Err(Error::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})")));
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            for _ in 0..SPOT_CHECKS {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if at(at(a, b), c) != at(a, at(b, c)) {
                    return Err(Error::InvalidGroup(format!("associativity fails on ({a}, {b}, {c})")));
                }
            }
        }

        let (alphabet, gen_elements) = symmetrize(generators, &inverse, order)?;
        let mut group = FiniteGroup {
            order,
            table,
            identity,
            inverse,
            alphabet,
            gen_elements,
            names: Vec::new(),
        };
        let reached = group.subgroup_generated(&group.gen_elements);
        if reached.len() != order {
            return Err(Error::InvalidGroup(format!(
                "generators reach only {} of {order} elements",
                reached.len()
            )));
        }
        group.names = match names {
            Some(names) => names,
            None => group.shortlex_names(),
        };
        Ok(group)
    }

    // Shortest word per element, ties broken by generator order.
    fn shortlex_names(&self) -> Vec<String> {
        let mut names: Vec<Option<String>> = vec![None; self.order];
        names[self.identity] = Some("1".to_string());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for (letter, &a) in self.gen_elements.iter().enumerate() {
                let h = self.mul(g, a);
                if names[h].is_none() {
                    let label = self.alphabet.name(letter);
                    names[h] = Some(if g == self.identity {
                        label.to_string()
                    } else {
                        format!("{} {label}", names[g].as_ref().unwrap())
                    });
                    queue.push_back(h);
                }
            }
        }
        names.into_iter().map(Option::unwrap).collect()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `[a, b] = a^-1 b^-1 a b`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        let ab = self.mul(a, b);
        let ba = self.mul(b, a);
        self.mul(self.inv(ba), ab)
    }

    pub fn pow(&self, a: usize, n: i64) -> usize {
        let base = if n < 0 { self.inv(a) } else { a };
        (0..n.unsigned_abs()).fold(self.identity, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != self.identity {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Element denoted by each generator letter, indexed by letter.
    pub fn generators(&self) -> &[usize] {
        &self.gen_elements
    }

    pub fn element_name(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// Reads an element written as a word over the generator labels.
    pub fn element_by_name(&self, text: &str) -> Result<usize> {
        self.evaluate(&self.alphabet.parse_word(text)?)
    }

    /// The evaluation homomorphism `ρ` from words over the generator labels.
    pub fn evaluate(&self, word: &MonoidWord) -> Result<usize> {
        word.letters().iter().try_fold(self.identity, |acc, &letter| {
            let a = *self
                .gen_elements
                .get(letter)
                .ok_or_else(|| Error::UnknownLabel(format!("letter #{letter}")))?;
            Ok(self.mul(acc, a))
        })
    }

    /// Sorted element list of `⟨elements⟩`.
    pub fn subgroup_generated(&self, elements: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.order];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(g) = queue.pop_front() {
            for &a in elements {
                let h = self.mul(g, a);
                if !member[h] {
                    member[h] = true;
                    queue.push_back(h);
                }
            }
        }
        (0..self.order).filter(|&g| member[g]).collect()
    }

    /// Smallest normal subgroup containing `elements`.
    pub fn normal_closure(&self, elements: &[usize]) -> Vec<usize> {
        let conjugates: BTreeSet<usize> = elements
            .iter()
            .flat_map(|&a| (0..self.order).map(move |g| (a, g)))
            .map(|(a, g)| self.mul(self.mul(self.inv(g), a), g))
            .collect();
        self.subgroup_generated(&conjugates.into_iter().collect::<Vec<_>>())
    }

    /// Covers the group by powers of a subset `set ∋ 1` closed under inverses:
    /// `lengths[g]` is the least `k` with `g ∈ set^k`, `None` outside the
    /// generated subgroup. `layer_sizes[k] = |set^k|`.
    pub fn product_set_layers(&self, set: &[usize]) -> CoverLayers {
        let mut lengths = vec![None; self.order];
        lengths[self.identity] = Some(0);
        let mut frontier = vec![self.identity];
        let mut layer_sizes = vec![1];
        let mut covered = 1;
        let mut k = 0;
        while !frontier.is_empty() {
            k += 1;
            let mut next = Vec::new();
            for &g in &frontier {
                for &p in set {
                    let h = self.mul(g, p);
                    if lengths[h].is_none() {
                        lengths[h] = Some(k);
                        next.push(h);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            covered += next.len();
            layer_sizes.push(covered);
            frontier = next;
        }
        CoverLayers { lengths, layer_sizes }
    }

    /// The derived subgroup `G'`, as a sorted element list.
    pub fn commutator_subgroup(&self) -> Vec<usize> {
        self.subgroup_generated(&self.commutator_set())
    }

    fn commutator_set(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = (0..self.order)
            .flat_map(|a| (0..self.order).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator(a, b))
            .collect();
        set.into_iter().collect()
    }

    /// Largest commutator length over `G'`; 0 when `G'` is trivial.
    pub fn commutator_width(&self) -> usize {
        let layers = self.product_set_layers(&self.commutator_set());
        layers.lengths.iter().flatten().copied().max().unwrap_or(0)
    }

    pub fn cyclic(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("cyclic group of order 0".into()));
        }
        let options = GroupOptions::default();
        let generators = if m == 1 { vec![] } else { vec![("a".to_string(), 1)] };
        Self::from_fn(m, |a, b| (a + b) % m, generators, None, &options)
    }

    /// Dihedral group of order `2m`: element `r^i s^e` has id `i + m·e`.
    /// Generated by the rotation `r` and the reflection `s`.
    pub fn dihedral(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidGroup("dihedral group with m = 0".into()));
        }
        let options = GroupOptions::default();
        let mul = |a: usize, b: usize| {
            let (i, e) = (a % m, a / m);
            let (j, f) = (b % m, b / m);
            let rot = if e == 0 { (i + j) % m } else { (i + m - j) % m };
            rot + m * ((e + f) % 2)
        };
        let mut generators = Vec::new();
        if m > 1 {
            generators.push(("r".to_string(), 1));
        }
        generators.push(("s".to_string(), m));
        Self::from_fn(2 * m, mul, generators, None, &options)
    }

    /// `S_3` with generating set `{s1, s2, c, c^-1}` where `c = s1·s2`.
    ///
    /// Element ids are `0 = 1, 1 = s1, 2 = s2, 3 = c, 4 = c^-1, 5 = s1 s2 s1`.
    pub fn sym3_fink() -> Self {
        // Permutations of {0,1,2}; (p·q)(i) = p(q(i)).
        let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
        let e = [0, 1, 2];
        let s1 = [1, 0, 2];
        let s2 = [0, 2, 1];
        let c = compose(s1, s2);
        let c_inv = compose(s2, s1);
        let s1s2s1 = compose(c, s1);
        let elements = [e, s1, s2, c, c_inv, s1s2s1];
        let index = |p: [usize; 3]| elements.iter().position(|&q| q == p).unwrap();
        let names = ["1", "s1", "s2", "c", "c^-1", "s1 s2 s1"].map(String::from).to_vec();
        let generators = vec![
            ("s1".to_string(), 1),
            ("s2".to_string(), 2),
            ("c".to_string(), 3),
            ("c^-1".to_string(), 4),
        ];
        Self::from_fn(
            6,
            |a, b| index(compose(elements[a], elements[b])),
            generators,
            Some(names),
            &GroupOptions::default(),
        )
        .expect("S3 table is a group")
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<Self> {
        Self::direct_product_with(g, h, &GroupOptions::default())
    }

    /// `G × H` with id `g·|H| + h`. The generating set is the union of the
    /// embedded factor generating sets; labels of `H` that clash with labels
    /// of `G` are replaced by fresh single letters.
    pub fn direct_product_with(g: &FiniteGroup, h: &FiniteGroup, options: &GroupOptions) -> Result<Self> {
        let order = g.order.checked_mul(h.order).ok_or(Error::CapExceeded {
            what: "direct product order",
            needed: g.order as u128 * h.order as u128,
            cap: options.max_order as u128,
        })?;
        check_order(order, options)?;
        let hn = h.order;

        let mut used: BTreeSet<String> = g.alphabet.names().iter().cloned().collect();
        let mut h_names: Vec<Option<String>> = vec![None; h.alphabet.len()];
        for letter in 0..h.alphabet.len() {
            if h_names[letter].is_some() {
                continue;
            }
            let partner = h.alphabet.inverse(letter);
            let clash = used.contains(h.alphabet.name(letter)) || used.contains(h.alphabet.name(partner));
            if clash {
                let fresh = fresh_letter(&used, h.alphabet.names());
                used.insert(fresh.clone());
                if partner != letter {
                    used.insert(format!("{fresh}^-1"));
                    h_names[partner] = Some(format!("{fresh}^-1"));
                }
                h_names[letter] = Some(fresh);
            } else {
                used.insert(h.alphabet.name(letter).to_string());
                used.insert(h.alphabet.name(partner).to_string());
                h_names[letter] = Some(h.alphabet.name(letter).to_string());
                h_names[partner] = Some(h.alphabet.name(partner).to_string());
            }
        }

        let mut generators: Vec<(String, usize)> = g
            .alphabet
            .names()
            .iter()
            .zip(&g.gen_elements)
            .map(|(name, &a)| (name.clone(), a * hn + h.identity))
            .collect();
        generators.extend(
            h_names
                .into_iter()
                .zip(&h.gen_elements)
                .map(|(name, &b)| (name.unwrap(), g.identity * hn + b)),
        );
        Self::from_fn(
            order,
            |x, y| g.mul(x / hn, y / hn) * hn + h.mul(x % hn, y % hn),
            generators,
            None,
            options,
        )
    }
}

/// Result of [`FiniteGroup::product_set_layers`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverLayers {
    pub lengths: Vec<Option<usize>>,
    pub layer_sizes: Vec<usize>,
}

fn check_order(order: usize, options: &GroupOptions) -> Result<()> {
    if order > options.max_order {
        return Err(Error::CapExceeded {
            what: "group order",
            needed: order as u128,
            cap: options.max_order as u128,
        });
    }
    Ok(())
}

fn fresh_letter(used: &BTreeSet<String>, avoid: &[String]) -> String {
    let taken = |s: &str| used.contains(s) || avoid.iter().any(|a| a == s);
    ('a'..='z')
        .map(String::from)
        .chain((1..).map(|i| format!("g{i}")))
        .find(|s| !taken(s) && !taken(&format!("{s}^-1")))
        .unwrap()
}

// Pairs each labelled generator with a label for its inverse, adding
// `label^-1` letters where the inverse is missing.
fn symmetrize(generators: Vec<(String, usize)>, inverse: &[usize], order: usize) -> Result<(Alphabet, Vec<usize>)> {
    let mut names: Vec<String> = Vec::new();
    let mut elements: Vec<usize> = Vec::new();
    for (name, a) in generators {
        if a >= order {
            return Err(Error::InvalidGroup(format!("generator `{name}` = {a} is out of range")));
        }
        names.push(name);
        elements.push(a);
    }
    let n = names.len();
    let mut partner: Vec<Option<usize>> = vec![None; n];
    let mut extra: Vec<(String, usize, usize)> = Vec::new();
    for i in 0..n {
        if partner[i].is_some() {
            continue;
        }
        let target = inverse[elements[i]];
        if target == elements[i] {
            partner[i] = Some(i);
            continue;
        }
        match (0..n).find(|&j| j != i && partner[j].is_none() && elements[j] == target) {
            Some(j) => {
                partner[i] = Some(j);
                partner[j] = Some(i);
            }
            None => {
                let idx = n + extra.len();
                partner[i] = Some(idx);
                extra.push((format!("{}^-1", names[i]), target, i));
            }
        }
    }
    let mut inv_map: Vec<usize> = partner.into_iter().map(Option::unwrap).collect();
    for (name, a, of) in extra {
        names.push(name);
        elements.push(a);
        inv_map.push(of);
    }
    let alphabet = Alphabet::new(names, inv_map).map_err(|e| Error::InvalidGroup(e.to_string()))?;
    Ok((alphabet, elements))
}

/// Searches for an isomorphism `G → H`; returns the element map if found.
///
/// Images of a small generating set of `G` are chosen among elements of `H`
/// with matching orders, extended along a spanning tree of the Cayley graph,
/// and then checked to be a bijective homomorphism.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let h_order_of: Vec<usize> = (0..h.order()).map(|b| h.element_order(b)).collect();
    let mut g_orders: Vec<usize> = (0..g.order()).map(|a| g.element_order(a)).collect();
    let mut h_orders = h_order_of.clone();
    g_orders.sort_unstable();
    h_orders.sort_unstable();
    if g_orders != h_orders {
        return None;
    }

    // Greedy small generating set of G.
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![g.identity()];
    for a in g.generators().iter().copied().chain(0..g.order()) {
        if span.len() == g.order() {
            break;
        }
        if span.binary_search(&a).is_err() {
            gens.push(a);
            span = g.subgroup_generated(&gens);
        }
    }
    let gen_orders: Vec<usize> = gens.iter().map(|&a| g.element_order(a)).collect();

    // Spanning tree: parent[e] = (p, k) with e = p · gens[k].
    let mut bfs_order = vec![g.identity()];
    let mut parent = vec![None; g.order()];
    let mut seen = vec![false; g.order()];
    seen[g.identity()] = true;
    let mut i = 0;
    while i < bfs_order.len() {
        let x = bfs_order[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            if !seen[y] {
                seen[y] = true;
                parent[y] = Some((x, k));
                bfs_order.push(y);
            }
        }
        i += 1;
    }

    let candidates: Vec<Vec<usize>> = gen_orders
        .iter()
        .map(|&o| (0..h.order()).filter(|&b| h_order_of[b] == o).collect())
        .collect();

    let mut images = vec![0usize; gens.len()];
    let mut map = vec![0usize; g.order()];
    let mut hit = vec![false; h.order()];

    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        bfs_order: &[usize],
        parent: &[Option<(usize, usize)>],
        images: &mut Vec<usize>,
        map: &mut Vec<usize>,
        hit: &mut Vec<bool>,
    ) -> bool {
        if depth == gens.len() {
            map[g.identity()] = h.identity();
            for &e in &bfs_order[1..] {
                let (p, k) = parent[e].unwrap();
                map[e] = h.mul(map[p], images[k]);
            }
            hit.fill(false);
            for &v in map.iter() {
                if hit[v] {
                    return false;
                }
                hit[v] = true;
            }
            return (0..g.order()).all(|x| {
                gens.iter()
                    .zip(images.iter())
                    .all(|(&s, &t)| map[g.mul(x, s)] == h.mul(map[x], t))
            });
        }
        for &c in &candidates[depth] {
            images[depth] = c;
            if search(depth + 1, g, h, gens, candidates, bfs_order, parent, images, map, hit) {
                return true;
            }
        }
        false
    }

    if search(
        0,
        g,
        h,
        &gens,
        &candidates,
        &bfs_order,
        &parent,
        &mut images,
        &mut map,
        &mut hit,
    ) {
        Some(map)
    } else {
        None
    }
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    find_isomorphism(g, h).is_some()
}
