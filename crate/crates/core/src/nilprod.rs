//! 2-nilpotent products of finite abelian groups.
//!
//! For abelian `A_1, …, A_s` the second nilpotent product is the central
//! extension of `A_1 × … × A_s` by `⊕_{i<j} A_i ⊗ A_j`. Elements are tuples
//! `(a_1, …, a_s; t_{ij})` multiplied by
//!
//! ```text
//! (a; t)(a'; t') = (a + a'; t_{ij} + t'_{ij} - a'_i ⊗ a_j)
//! ```
//!
//! With `[g, h] = g^-1 h^-1 g h` this gives `[a_i, a_j] = a_i ⊗ a_j` for
//! `i < j`, so the tensor part is exactly the Cartesian subgroup.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_groups::{FiniteGroup, GroupOptions};
use crate::pal_width::{palindromic_width, Notion};

/// `Z_{m_1} × … × Z_{m_r}`, one generator per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianSpec {
    pub moduli: Vec<u64>,
}

impl AbelianSpec {
    pub fn new(moduli: impl Into<Vec<u64>>) -> Self {
        AbelianSpec { moduli: moduli.into() }
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    fn validate(&self) -> Result<()> {
        if self.moduli.contains(&0) {
            return Err(Error::InvalidGroup("abelian factor with modulus 0".into()));
        }
        Ok(())
    }

    /// The group itself, generated by `a1, a2, …` and their inverses.
    pub fn group(&self, options: &GroupOptions) -> Result<FiniteGroup> {
        self.validate()?;
        let radix = Radix::new(self.moduli.clone());
        check_cap(radix.size(), options)?;
        let n = radix.size() as usize;
        let generators = (0..self.moduli.len())
            .filter(|&p| self.moduli[p] > 1)
            .map(|p| (format!("a{}", p + 1), radix.unit(p)))
            .collect();
        FiniteGroup::from_fn(
            n,
            |x, y| {
                let (a, b) = (radix.decode(x), radix.decode(y));
                let sum: Vec<u64> = a
                    .iter()
                    .zip(&b)
                    .zip(&self.moduli)
                    .map(|((u, v), m)| (u + v) % m)
                    .collect();
                radix.encode(&sum)
            },
            generators,
            None,
            options,
        )
    }
}

// Mixed-radix encoding, least significant coordinate first.
#[derive(Debug, Clone, PartialEq, Eq)]
struct Radix {
    moduli: Vec<u64>,
}

impl Radix {
    fn new(moduli: Vec<u64>) -> Self {
        Radix { moduli }
    }

    fn size(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    fn encode(&self, coords: &[u64]) -> usize {
        let mut id = 0usize;
        for (c, m) in coords.iter().zip(&self.moduli).rev() {
            id = id * *m as usize + *c as usize;
        }
        id
    }

    fn decode(&self, mut id: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&m| {
                let c = (id % m as usize) as u64;
                id /= m as usize;
                c
            })
            .collect()
    }

    fn unit(&self, p: usize) -> usize {
        let mut v = vec![0; self.moduli.len()];
        v[p] = 1 % self.moduli[p];
        self.encode(&v)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn check_cap(order: u128, options: &GroupOptions) -> Result<()> {
    if order > options.max_order as u128 {
        return Err(Error::CapExceeded {
            what: "nilpotent product order",
            needed: order,
            cap: options.max_order as u128,
        });
    }
    Ok(())
}

/// `A ⊗ B` for `A = ⊕ Z_{m_p}`, `B = ⊕ Z_{n_q}`: basis `a_p ⊗ b_q` of order
/// `gcd(m_p, n_q)`, stored row-major in `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorComponent {
    left: Vec<u64>,
    right: Vec<u64>,
    moduli: Vec<u64>,
}

impl TensorComponent {
    pub fn new(left: &AbelianSpec, right: &AbelianSpec) -> Self {
        let moduli = left
            .moduli
            .iter()
            .flat_map(|&m| right.moduli.iter().map(move |&n| gcd(m, n)))
            .collect();
        TensorComponent {
            left: left.moduli.clone(),
            right: right.moduli.clone(),
            moduli,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> u128 {
        self.moduli.iter().map(|&m| m as u128).product()
    }

    /// `a ⊗ b` in basis coordinates.
    pub fn tensor(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let r = self.right.len();
        self.moduli
            .iter()
            .enumerate()
            .map(|(k, &g)| {
                let (p, q) = (k / r, k % r);
                ((a[p] % g) * (b[q] % g)) % g
            })
            .collect()
    }
}

/// A 2-nilpotent product of finite abelian groups with its multiplication
/// table.
#[derive(Debug, Clone)]
pub struct NilProduct {
    factors: Vec<AbelianSpec>,
    tensors: Vec<(usize, usize, TensorComponent)>,
    radix: Radix,
    factor_offset: Vec<usize>,
    tensor_offset: Vec<usize>,
    group: FiniteGroup,
}

/// `A(2)B` for abelian `A` and `B`.
pub fn nilprod2(a: &AbelianSpec, b: &AbelianSpec, options: &GroupOptions) -> Result<NilProduct> {
    nilprod2_multi(&[a.clone(), b.clone()], options)
}

/// `(2){A_1, …, A_s}` with pairwise tensor cocycles.
pub fn nilprod2_multi(specs: &[AbelianSpec], options: &GroupOptions) -> Result<NilProduct> {
    if specs.is_empty() {
        return Err(Error::InvalidGroup("nilpotent product of no factors".into()));
    }
    for s in specs {
        s.validate()?;
    }
    let mut moduli = Vec::new();
    let mut factor_offset = Vec::new();
    for s in specs {
        factor_offset.push(moduli.len());
        moduli.extend_from_slice(&s.moduli);
    }
    let mut tensors = Vec::new();
    let mut tensor_offset = Vec::new();
    for i in 0..specs.len() {
        for j in i + 1..specs.len() {
            let t = TensorComponent::new(&specs[i], &specs[j]);
            tensor_offset.push(moduli.len());
            moduli.extend_from_slice(t.moduli());
            tensors.push((i, j, t));
        }
    }
    let radix = Radix::new(moduli);
    check_cap(radix.size(), options)?;
    let n = radix.size() as usize;

    let letters = |i: usize| -> String {
        let c = (b'a' + (i % 26) as u8) as char;
        if i < 26 {
            c.to_string()
        } else {
            format!("{c}{}", i / 26)
        }
    };
    let mut generators = Vec::new();
    for (i, s) in specs.iter().enumerate() {
        for p in 0..s.moduli.len() {
            if s.moduli[p] > 1 {
                generators.push((format!("{}{}", letters(i), p + 1), radix.unit(factor_offset[i] + p)));
            }
        }
    }

    let decoded: Vec<Vec<u64>> = (0..n).map(|id| radix.decode(id)).collect();
    let slice = |v: &[u64], i: usize| -> Vec<u64> {
        let off = factor_offset[i];
        v[off..off + specs[i].moduli.len()].to_vec()
    };
    let mul = |x: usize, y: usize| -> usize {
        let (u, v) = (&decoded[x], &decoded[y]);
        let mut out: Vec<u64> = u
            .iter()
            .zip(v)
            .zip(&radix.moduli)
            .map(|((a, b), m)| (a + b) % m)
            .collect();
        for ((i, j, t), &off) in tensors.iter().zip(&tensor_offset) {
            let cross = t.tensor(&slice(v, *i), &slice(u, *j));
            for (k, c) in cross.into_iter().enumerate() {
                let m = t.moduli[k];
                out[off + k] = (out[off + k] + m - c) % m;
            }
        }
        radix.encode(&out)
    };
    let group = FiniteGroup::from_fn(n, mul, generators, None, options)?;
    Ok(NilProduct {
        factors: specs.to_vec(),
        tensors,
        radix,
        factor_offset,
        tensor_offset,
        group,
    })
}

impl NilProduct {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn factors(&self) -> &[AbelianSpec] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Coordinates of an element: factor parts, then tensor parts.
    pub fn decode(&self, id: usize) -> Vec<u64> {
        self.radix.decode(id)
    }

    /// The element `(0, …, a, …, 0; 0)` with `a` in factor `i`.
    pub fn embed_factor(&self, i: usize, a: &[u64]) -> usize {
        let mut v = vec![0; self.radix.moduli.len()];
        for (p, &c) in a.iter().enumerate() {
            v[self.factor_offset[i] + p] = c % self.factors[i].moduli[p];
        }
        self.radix.encode(&v)
    }

    /// The element `(0; t)` with `t` in the `(i, j)` tensor block.
    pub fn embed_tensor(&self, i: usize, j: usize, t: &[u64]) -> usize {
        let block = self
            .tensors
            .iter()
            .position(|(a, b, _)| (*a, *b) == (i, j))
            .expect("tensor block exists for i < j");
        let mut v = vec![0; self.radix.moduli.len()];
        let comp = &self.tensors[block].2;
        for (k, &c) in t.iter().enumerate() {
            v[self.tensor_offset[block] + k] = c % comp.moduli[k];
        }
        self.radix.encode(&v)
    }

    pub fn tensor_component(&self, i: usize, j: usize) -> Option<&TensorComponent> {
        self.tensors
            .iter()
            .find(|(a, b, _)| (*a, *b) == (i, j))
            .map(|(_, _, t)| t)
    }

    fn factor_vectors(&self, i: usize) -> Vec<Vec<u64>> {
        Radix::new(self.factors[i].moduli.clone());
        let r = Radix::new(self.factors[i].moduli.clone());
        (0..r.size() as usize).map(|id| r.decode(id)).collect()
    }

    /// Ids of the embedded copy of `A_i`.
    pub fn factor_elements(&self, i: usize) -> Vec<usize> {
        let mut ids: Vec<usize> = self.factor_vectors(i).iter().map(|a| self.embed_factor(i, a)).collect();
        ids.sort_unstable();
        ids
    }

    /// Ids whose factor parts all vanish: the central tensor component.
    pub fn tensor_elements(&self) -> Vec<usize> {
        let factor_len = self.factor_offset.last().unwrap() + self.factors.last().unwrap().moduli.len();
        (0..self.order())
            .filter(|&id| self.decode(id)[..factor_len].iter().all(|&c| c == 0))
            .collect()
    }

    /// `[A_i, A_j]` for all `i ≠ j`, generated inside the table.
    pub fn cartesian_subgroup(&self) -> Vec<usize> {
        let mut comms = BTreeSet::new();
        for i in 0..self.factors.len() {
            for j in 0..self.factors.len() {
                if i == j {
                    continue;
                }
                for &a in &self.factor_elements(i) {
                    for &b in &self.factor_elements(j) {
                        comms.insert(self.group.commutator(a, b));
                    }
                }
            }
        }
        self.group.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    /// `C_i`: elements of `A_i` whose tensor with every other factor vanishes,
    /// computed from the tensor moduli alone. Sorted ids.
    pub fn centralizer_factors(&self) -> Vec<Vec<usize>> {
        (0..self.factors.len())
            .map(|i| {
                let divisors = self.centralizer_divisors(i);
                let mut ids: Vec<usize> = self
                    .factor_vectors(i)
                    .iter()
                    .filter(|a| a.iter().zip(&divisors).all(|(c, d)| c % d == 0))
                    .map(|a| self.embed_factor(i, a))
                    .collect();
                ids.sort_unstable();
                ids
            })
            .collect()
    }

    // a ∈ C_i iff each coordinate a_p is divisible by the lcm of
    // gcd(m_p, n_q) over all components n_q of the other factors.
    fn centralizer_divisors(&self, i: usize) -> Vec<u64> {
        self.factors[i]
            .moduli
            .iter()
            .map(|&m| {
                self.factors
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != i)
                    .flat_map(|(_, f)| f.moduli.iter())
                    .fold(1, |acc, &n| lcm(acc, gcd(m, n)))
            })
            .collect()
    }

    /// `C_i` found by testing commutation in the multiplication table.
    pub fn table_centralizers(&self) -> Vec<Vec<usize>> {
        (0..self.factors.len())
            .map(|i| {
                let others: Vec<usize> = (0..self.factors.len())
                    .filter(|&k| k != i)
                    .flat_map(|k| self.factor_elements(k))
                    .collect();
                self.factor_elements(i)
                    .into_iter()
                    .filter(|&a| others.iter().all(|&b| self.group.mul(a, b) == self.group.mul(b, a)))
                    .collect()
            })
            .collect()
    }

    /// `m_i`: number of distinct nontrivial images of the generators of `A_i`
    /// in `A_i / C_i`.
    pub fn quotient_generator_counts(&self) -> Vec<usize> {
        (0..self.factors.len())
            .map(|i| {
                let divisors = self.centralizer_divisors(i);
                let k = divisors.len();
                let images: BTreeSet<Vec<u64>> = (0..k)
                    .filter(|&p| self.factors[i].moduli[p] > 1)
                    .map(|p| (0..k).map(|q| u64::from(p == q) % divisors[q]).collect::<Vec<_>>())
                    .filter(|v| v.iter().any(|&c| c != 0))
                    .collect();
                images.len()
            })
            .collect()
    }

    /// Runs the structural checks exhaustively on the multiplication table.
    pub fn check_properties(&self) -> NilProdChecks {
        let g = &self.group;
        let s = self.factors.len();
        let factor_sets: Vec<Vec<usize>> = (0..s).map(|i| self.factor_elements(i)).collect();
        let cartesian = self.cartesian_subgroup();
        let is_trivial = |set: &[usize]| set.iter().all(|&x| x == g.identity());
        let intersect = |a: &[usize], b: &[usize]| -> Vec<usize> {
            a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect()
        };

        // a_1 · … · a_s · w hits every element exactly once.
        let normal_form_unique = {
            let mut products = vec![g.identity()];
            for set in &factor_sets {
                products = products
                    .iter()
                    .flat_map(|&p| set.iter().map(move |&a| g.mul(p, a)))
                    .collect();
            }
            let mut hit = vec![false; g.order()];
            let mut ok = products.len() * cartesian.len() == g.order();
            for &p in &products {
                for &w in &cartesian {
                    let x = g.mul(p, w);
                    ok &= !hit[x];
                    hit[x] = true;
                }
            }
            ok
        };

        let factor_intersections_trivial = (0..s).all(|i| {
            let rest: Vec<usize> = (0..s)
                .filter(|&k| k != i)
                .flat_map(|k| factor_sets[k].iter().copied())
                .collect();
            let closure = g.normal_closure(&rest);
            let own_closure = g.normal_closure(&factor_sets[i]);
            let rest_span = g.subgroup_generated(&rest);
            is_trivial(&intersect(&factor_sets[i], &closure)) && is_trivial(&intersect(&rest_span, &own_closure))
        });

        let union: Vec<usize> = factor_sets.iter().flatten().copied().collect();
        let triple_commutators_vanish = union.iter().all(|&a| {
            union.iter().all(|&b| {
                let ab = g.commutator(a, b);
                union.iter().all(|&c| g.commutator(ab, c) == g.identity())
            })
        });

        let centralizers = self.centralizer_factors();
        let centralizers_match_table = centralizers == self.table_centralizers();
        let centralizers_normal = centralizers.iter().all(|c| {
            c.iter()
                .all(|&x| (0..g.order()).all(|y| c.binary_search(&g.mul(g.mul(g.inv(y), x), y)).is_ok()))
        });
        let centralizer_span = g.subgroup_generated(&centralizers.concat());
        let centralizers_meet_cartesian_trivially = is_trivial(&intersect(&centralizer_span, &cartesian));

        let cartesian_is_tensor = cartesian == self.tensor_elements();

        let mut commutator_pairing = true;
        let mut bilinear = true;
        for (i, j, t) in &self.tensors {
            let av = self.factor_vectors(*i);
            let bv = self.factor_vectors(*j);
            for a in &av {
                let ga = self.embed_factor(*i, a);
                for b in &bv {
                    let gb = self.embed_factor(*j, b);
                    let c = g.commutator(ga, gb);
                    commutator_pairing &= c == self.embed_tensor(*i, *j, &t.tensor(a, b));
                    for a2 in &av {
                        let ga2 = self.embed_factor(*i, a2);
                        let lhs = g.commutator(g.mul(ga, ga2), gb);
                        let rhs = g.mul(c, g.commutator(ga2, gb));
                        bilinear &= lhs == rhs;
                    }
                }
            }
        }

        NilProdChecks {
            normal_form_unique,
            factor_intersections_trivial,
            triple_commutators_vanish,
            centralizers_match_table,
            centralizers_normal,
            centralizers_meet_cartesian_trivially,
            cartesian_is_tensor,
            commutator_pairing,
            bilinear,
        }
    }

    /// Word-notion bounds with the exact width of the product filled in.
    pub fn analyze(&self, state_cap: usize, options: &GroupOptions) -> Result<BoundReport> {
        let widths = self
            .factors
            .iter()
            .map(|f| Ok(palindromic_width(&f.group(options)?, Notion::Word, state_cap)?.width))
            .collect::<Result<Vec<_>>>()?;
        let mut report = width_bounds(&widths, &self.quotient_generator_counts());
        report.exact = Some(palindromic_width(&self.group, Notion::Word, state_cap)?.width);
        Ok(report)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NilProdChecks {
    pub normal_form_unique: bool,
    pub factor_intersections_trivial: bool,
    pub triple_commutators_vanish: bool,
    pub centralizers_match_table: bool,
    pub centralizers_normal: bool,
    pub centralizers_meet_cartesian_trivially: bool,
    pub cartesian_is_tensor: bool,
    pub commutator_pairing: bool,
    pub bilinear: bool,
}

impl NilProdChecks {
    pub fn all(&self) -> bool {
        self.normal_form_unique
            && self.factor_intersections_trivial
            && self.triple_commutators_vanish
            && self.centralizers_match_table
            && self.centralizers_normal
            && self.centralizers_meet_cartesian_trivially
            && self.cartesian_is_tensor
            && self.commutator_pairing
            && self.bilinear
    }
}

/// Which upper bound applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// `Σ pw(A_i) + 3 Σ m_i`.
    General,
    /// Some factor is central (`m_k = 0`) and splits off as a direct factor.
    DirectFactor,
    /// Single factor: the product is the factor itself.
    Single,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<usize>,
    pub component_widths: Vec<usize>,
    pub m: Vec<usize>,
    pub branch: Branch,
}

impl BoundReport {
    pub fn contains(&self, width: usize) -> bool {
        self.lower <= width && width <= self.upper
    }
}

/// Palindromic width bounds for a nilpotent product from the factor widths
/// and the quotient generator counts `m_i`.
pub fn width_bounds(component_widths: &[usize], m: &[usize]) -> BoundReport {
    assert_eq!(component_widths.len(), m.len(), "one m_i per factor");
    let lower = component_widths.iter().copied().max().unwrap_or(0);
    let (upper, branch) = upper_bound(component_widths, m);
    BoundReport {
        lower,
        upper,
        exact: None,
        component_widths: component_widths.to_vec(),
        m: m.to_vec(),
        branch,
    }
}

fn upper_bound(widths: &[usize], m: &[usize]) -> (usize, Branch) {
    match widths.len() {
        0 => (0, Branch::Single),
        1 => (widths[0], Branch::Single),
        _ => match m.iter().position(|&mi| mi == 0) {
            Some(k) => {
                let rest_w: Vec<usize> = widths
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != k)
                    .map(|(_, &w)| w)
                    .collect();
                let rest_m: Vec<usize> = m.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, &v)| v).collect();
                (widths[k] + upper_bound(&rest_w, &rest_m).0, Branch::DirectFactor)
            }
            None => (
                widths.iter().sum::<usize>() + 3 * m.iter().sum::<usize>(),
                Branch::General,
            ),
        },
    }
}

/// `lower ≤ oracle_width ≤ upper` for the product's bounds.
pub fn check_sandwich(
    product: &NilProduct,
    oracle_width: usize,
    state_cap: usize,
    options: &GroupOptions,
) -> Result<bool> {
    Ok(product.analyze(state_cap, options)?.contains(oracle_width))
}
