//! Report assembly for each subcommand. Every verification flag is
//! recomputed here from the result it describes.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use palwidth_core::decompose::{self as dec, fink_alphabet, fink_wreath};
use palwidth_core::group_spec::GroupSpec;
use palwidth_core::nilprod::{self, AbelianSpec};
use palwidth_core::pal_width::{palindrome_elements, palindromic_width, reachable_pairs};
use palwidth_core::wreath::{certify_cw_lower_bound, delta, product_bound};
use palwidth_core::{Error, FiniteGroup, GroupOptions, Notion, Result, WreathGroup};

use crate::GlobalArgs;

#[derive(Debug, Serialize)]
pub struct Report {
    command: Value,
    input_digest: String,
    result: Value,
    verification: BTreeMap<&'static str, bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wall_time_ms: Option<f64>,
}

impl Report {
    fn new(command: Value, input: &[u8], result: Value, verification: BTreeMap<&'static str, bool>) -> Self {
        Report {
            command,
            input_digest: hex::encode(Sha256::digest(input)),
            result,
            verification,
            wall_time_ms: None,
        }
    }

    pub fn set_wall_time(&mut self, elapsed: Duration) {
        self.wall_time_ms = Some(elapsed.as_secs_f64() * 1e3);
    }

    pub fn verified(&self) -> bool {
        self.verification.values().all(|&v| v)
    }

    pub fn render(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("report serializes")
        } else {
            serde_json::to_string(self).expect("report serializes")
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn utf8(bytes: &[u8]) -> Result<&str> {
    std::str::from_utf8(bytes).map_err(|e| Error::Parse(format!("input is not UTF-8: {e}")))
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("result serializes")
}

pub fn pw(spec_path: &Path, notion: Notion, global: &GlobalArgs) -> Result<Report> {
    let bytes = read(spec_path)?;
    let spec = GroupSpec::from_json(utf8(&bytes)?)?;
    let group = spec.build(&GroupOptions::default())?;
    let report = palindromic_width(&group, notion, global.cap)?;

    let pairs = reachable_pairs(&group, global.cap)?;
    let word = palindrome_elements(&pairs, Notion::Word);
    let group_pal = palindrome_elements(&pairs, Notion::Group);
    let length_one: Vec<usize> = (0..group.order())
        .filter(|&g| g == group.identity() || report.length(g) == 1)
        .collect();
    let mut verification = BTreeMap::new();
    verification.insert("identity_length_zero", report.length(group.identity()) == 0);
    verification.insert(
        "lengths_within_width",
        report.lengths.iter().all(|&l| l <= report.width),
    );
    verification.insert(
        "palindromes_are_length_at_most_one",
        length_one == report.palindrome_elements,
    );
    verification.insert(
        "word_palindromes_within_group_palindromes",
        word.iter().all(|g| group_pal.binary_search(g).is_ok()),
    );
    verification.insert("layers_cover_group", report.layers.last() == Some(&group.order()));

    let names: Vec<&str> = (0..group.order()).map(|g| group.element_name(g)).collect();
    let result = json!({
        "group": serde_json::from_str::<Value>(&spec.to_json()).expect("spec is JSON"),
        "generators": group.alphabet().names(),
        "element_names": names,
        "width_report": to_value(&report),
    });
    let command = json!({ "name": "pw", "spec": spec_path.display().to_string(), "notion": notion });
    Ok(Report::new(command, &bytes, result, verification))
}

pub fn qh(element: Option<&str>, q_index: Option<u64>, group_path: Option<&Path>, rank: usize) -> Result<Report> {
    let (top, group_bytes) = match group_path {
        Some(p) => {
            let bytes = read(p)?;
            (
                GroupSpec::from_json(utf8(&bytes)?)?.build(&GroupOptions::default())?,
                bytes,
            )
        }
        None => (FiniteGroup::sym3_fink(), GroupSpec::Sym3Fink.to_json().into_bytes()),
    };
    let wreath = WreathGroup::new(rank, Arc::new(top))?;
    let g = match (element, q_index) {
        (Some(text), _) => wreath.parse(text)?,
        (None, Some(j)) if j >= 1 => wreath.q_sequence(j)?,
        (None, _) => return Err(Error::Parse("--q-index must be at least 1".into())),
    };
    let text = wreath.format(&g);
    let d = delta(&g);
    let cert = certify_cw_lower_bound(&wreath, &g);
    let l = wreath.coordinates();

    let top_derived = wreath.top_group().commutator_subgroup();
    let sums = g.base().iter().fold(vec![0i64; rank], |mut acc, f| {
        for (a, s) in acc.iter_mut().zip(f.exponent_sums()) {
            *a += s;
        }
        acc
    });
    let derived_member = sums.iter().all(|&s| s == 0) && top_derived.binary_search(&g.top()).is_ok();

    let reparsed = wreath.parse(&text)?;
    let mut verification = BTreeMap::new();
    verification.insert("element_round_trips", reparsed == g && wreath.format(&reparsed) == text);
    verification.insert("delta_recomputed", delta(&reparsed) == d);
    let threshold_ok = match &cert {
        Some(c) => {
            let ad = d.unsigned_abs() as i128;
            c.lower_bound >= 2 && product_bound(l, c.lower_bound - 1) < ad && ad <= product_bound(l, c.lower_bound)
        }
        None => d.unsigned_abs() as i128 <= product_bound(l, 1),
    };
    verification.insert("certificate_matches_threshold", threshold_ok);

    let result = json!({
        "element": text,
        "coordinates": l,
        "delta": d,
        "certificate": cert.as_ref().map(to_value),
        "derived_subgroup_member": derived_member,
    });
    let command = json!({
        "name": "qh",
        "element": element,
        "q_index": q_index,
        "group": group_path.map(|p| p.display().to_string()),
        "rank": rank,
    });
    let mut input = group_bytes;
    input.push(b'\n');
    input.extend_from_slice(text.as_bytes());
    Ok(Report::new(command, &input, result, verification))
}

pub fn decompose(element: &str) -> Result<Report> {
    let wreath = fink_wreath();
    let g = wreath.parse(element)?;
    let cert = dec::decompose(&g)?;
    let check = cert.verify()?;
    let factors: Vec<Value> = cert
        .factors
        .iter()
        .map(|f| json!({ "word": fink_alphabet().format_word(f), "palindrome": f.is_palindrome() }))
        .collect();
    let text = wreath.format(&g);
    let mut verification = BTreeMap::new();
    verification.insert("factors_palindromic", check.factors_palindromic);
    verification.insert("product_matches_target", check.product_matches_target);
    verification.insert("within_bound", check.within_bound);
    verification.insert("target_round_trips", wreath.parse(&text)? == g);
    let result = json!({
        "target": text,
        "factor_count": cert.factor_count,
        "bound": dec::PALINDROME_BOUND,
        "factors": factors,
    });
    let command = json!({ "name": "decompose", "element": element });
    Ok(Report::new(command, text.as_bytes(), result, verification))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum NilprodInput {
    Wrapped { factors: Vec<AbelianSpec> },
    Bare(Vec<AbelianSpec>),
}

pub fn nilprod(specs_path: &Path, global: &GlobalArgs) -> Result<Report> {
    let bytes = read(specs_path)?;
    let input: NilprodInput =
        serde_json::from_slice(&bytes).map_err(|e| Error::Parse(format!("nilprod specs: {e}")))?;
    let factors = match input {
        NilprodInput::Wrapped { factors } | NilprodInput::Bare(factors) => factors,
    };
    let options = GroupOptions::default();
    let product = nilprod::nilprod2_multi(&factors, &options)?;
    let bounds = product.analyze(global.cap, &options)?;
    let checks = product.check_properties();

    let mut verification = BTreeMap::new();
    verification.insert("normal_form_unique", checks.normal_form_unique);
    verification.insert("factor_intersections_trivial", checks.factor_intersections_trivial);
    verification.insert("triple_commutators_vanish", checks.triple_commutators_vanish);
    verification.insert("centralizers_match_table", checks.centralizers_match_table);
    verification.insert("centralizers_normal", checks.centralizers_normal);
    verification.insert(
        "centralizers_meet_cartesian_trivially",
        checks.centralizers_meet_cartesian_trivially,
    );
    verification.insert("cartesian_is_tensor", checks.cartesian_is_tensor);
    verification.insert("commutator_pairing", checks.commutator_pairing);
    verification.insert("bilinear", checks.bilinear);
    verification.insert("lower_le_upper", bounds.lower <= bounds.upper);
    verification.insert("exact_within_bounds", bounds.exact.is_some_and(|w| bounds.contains(w)));

    let centralizer_orders: Vec<usize> = product.centralizer_factors().iter().map(Vec::len).collect();
    let result = json!({
        "factors": factors,
        "order": product.order(),
        "centralizer_orders": centralizer_orders,
        "bounds": to_value(&bounds),
    });
    let command = json!({ "name": "nilprod", "specs": specs_path.display().to_string() });
    Ok(Report::new(command, &bytes, result, verification))
}
