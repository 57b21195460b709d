//! JSON group specifications, the input format of the command-line tool.
//!
//! ```json
//! {"kind": "direct_product", "factors": [{"kind": "cyclic", "m": 4}, {"kind": "sym3_fink"}]}
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::finite_groups::{FiniteGroup, GroupOptions};
use crate::nilprod::{self, AbelianSpec};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    Cyclic {
        m: usize,
    },
    Dihedral {
        m: usize,
    },
    Sym3Fink,
    /// Left-folded product of one or more factors.
    DirectProduct {
        factors: Vec<GroupSpec>,
    },
    Table {
        table: Vec<Vec<usize>>,
        generators: Vec<GeneratorSpec>,
    },
    /// 2-nilpotent product of finite abelian groups.
    Nilprod {
        factors: Vec<AbelianSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub label: String,
    pub element: usize,
}

impl GroupSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(format!("group spec: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("group spec serializes")
    }

    pub fn build(&self, options: &GroupOptions) -> Result<FiniteGroup> {
        let group = match self {
            GroupSpec::Cyclic { m } => FiniteGroup::cyclic(*m)?,
            GroupSpec::Dihedral { m } => FiniteGroup::dihedral(*m)?,
            GroupSpec::Sym3Fink => FiniteGroup::sym3_fink(),
            GroupSpec::DirectProduct { factors } => {
                let (first, rest) = factors
                    .split_first()
                    .ok_or_else(|| Error::InvalidGroup("direct product of no factors".into()))?;
                let mut acc = first.build(options)?;
                for factor in rest {
                    acc = FiniteGroup::direct_product_with(&acc, &factor.build(options)?, options)?;
                }
                acc
            }
            GroupSpec::Table { table, generators } => FiniteGroup::from_table(
                table.clone(),
                generators.iter().map(|g| (g.label.clone(), g.element)).collect(),
                options,
            )?,
            GroupSpec::Nilprod { factors } => nilprod::nilprod2_multi(factors, options)?.into_group(),
        };
        if group.order() > options.max_order {
            return Err(Error::CapExceeded {
                what: "group order",
                needed: group.order() as u128,
                cap: options.max_order as u128,
            });
        }
        Ok(group)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_kind() {
        let opts = GroupOptions::default();
        let spec = GroupSpec::from_json(r#"{"kind":"cyclic","m":4}"#).unwrap();
        assert_eq!(spec.build(&opts).unwrap().order(), 4);
        let spec = GroupSpec::from_json(r#"{"kind":"sym3_fink"}"#).unwrap();
        assert_eq!(spec, GroupSpec::Sym3Fink);
        let spec = GroupSpec::from_json(
            r#"{"kind":"direct_product","factors":[{"kind":"cyclic","m":2},{"kind":"dihedral","m":3}]}"#,
        )
        .unwrap();
        assert_eq!(spec.build(&opts).unwrap().order(), 12);
        let spec =
            GroupSpec::from_json(r#"{"kind":"table","table":[[0,1],[1,0]],"generators":[{"label":"t","element":1}]}"#)
                .unwrap();
        assert_eq!(spec.build(&opts).unwrap().alphabet().names(), ["t"]);
        let spec = GroupSpec::from_json(r#"{"kind":"nilprod","factors":[{"moduli":[2]},{"moduli":[2]}]}"#).unwrap();
        assert_eq!(spec.build(&opts).unwrap().order(), 8);
    }

    #[test]
    fn round_trips() {
        let spec = GroupSpec::DirectProduct {
            factors: vec![GroupSpec::Cyclic { m: 4 }, GroupSpec::Sym3Fink],
        };
        assert_eq!(GroupSpec::from_json(&spec.to_json()).unwrap(), spec);
    }

    #[test]
    fn rejects_garbage() {
        assert!(GroupSpec::from_json(r#"{"kind":"klein"}"#).is_err());
        assert!(GroupSpec::from_json(r#"{"kind":"cyclic"}"#).is_err());
        let empty = GroupSpec::DirectProduct { factors: vec![] };
        assert!(empty.build(&GroupOptions::default()).is_err());
    }
}
