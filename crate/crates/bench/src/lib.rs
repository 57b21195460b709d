//! Shared fixtures for the criterion benches.

use palwidth_core::{FiniteGroup, GroupOptions};

/// Groups of increasing order used by the width benches.
pub fn width_fixtures() -> Vec<(String, FiniteGroup)> {
    let opts = GroupOptions::default();
    let mut out = Vec::new();
    for m in [6, 12, 24] {
        out.push((format!("cyclic({m})"), FiniteGroup::cyclic(m).unwrap()));
    }
    for m in [5, 10, 20] {
        out.push((format!("dihedral({m})"), FiniteGroup::dihedral(m).unwrap()));
    }
    let c4 = FiniteGroup::cyclic(4).unwrap();
    let c6 = FiniteGroup::cyclic(6).unwrap();
    out.push((
        "Z4xZ6".into(),
        FiniteGroup::direct_product_with(&c4, &c6, &opts).unwrap(),
    ));
    out
}
