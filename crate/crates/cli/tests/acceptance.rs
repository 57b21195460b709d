//! Acceptance criteria, one PASS/FAIL line each. Run with `--nocapture` to
//! see the table; the test fails if any criterion fails.

#[path = "../../core/tests/support/oracle.rs"]
mod oracle;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use palwidth_core::decompose::{decompose, fink_wreath};
use palwidth_core::free_words::{free_commutator, free_invert, free_multiply, ql, reduce, tr};
use palwidth_core::nilprod::{nilprod2, AbelianSpec, Branch};
use palwidth_core::pal_width::{palindromic_width, DEFAULT_STATE_CAP};
use palwidth_core::wreath::{certify_cw_lower_bound, delta, product_bound};
use palwidth_core::{
    FiniteGroup, FreeAlphabet, FreeWord, GroupOptions, MonoidWord, Notion, WreathElement, WreathGroup,
};

const SEED: u64 = 0x5eed_2024;

// Time limits per criterion.
const LIMIT_QUASI_LENGTH: Duration = Duration::from_secs(10);
const LIMIT_DELTA: Duration = Duration::from_secs(30);
const LIMIT_UNBOUNDED: Duration = Duration::from_secs(5);
const LIMIT_DECOMPOSE: Duration = Duration::from_secs(60);
const LIMIT_WIDTH: Duration = Duration::from_secs(120);
const LIMIT_NILPROD: Duration = Duration::from_secs(120);
const LIMIT_CLI: Duration = Duration::from_secs(120);

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> FreeWord {
    let len = rng.gen_range(0..=max_len);
    let letters = (0..len).map(|_| rng.gen_range(0..2 * rank)).collect();
    reduce(&FreeAlphabet::new(rank), &MonoidWord::new(letters))
}

fn random_element(rng: &mut ChaCha8Rng, w: &WreathGroup, max_len: usize) -> WreathElement {
    let base = (0..w.coordinates())
        .map(|_| random_word(rng, w.rank(), max_len))
        .collect();
    let top = rng.gen_range(0..w.top_group().order());
    w.element(base, top).unwrap()
}

fn f2_s3() -> WreathGroup {
    WreathGroup::new(2, Arc::new(FiniteGroup::sym3_fink())).unwrap()
}

fn quasi_length() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..10_000 {
        let m: i64 = rng.gen_range(-1_000_000_000..=1_000_000_000);
        let n: i64 = rng.gen_range(-1_000_000_000..=1_000_000_000);
        let s = tr(m + n);
        if !(tr(m) + tr(n) - 3 <= s && s <= tr(m) + tr(n) + 3) || tr(-m) != -tr(m) {
            return Err(format!("tr inequality fails at ({m}, {n})"));
        }
    }
    for _ in 0..5_000 {
        let rank = rng.gen_range(2..=4);
        let f = random_word(&mut rng, rank, 60);
        let g = random_word(&mut rng, rank, 60);
        let fg = ql(&free_multiply(&f, &g).unwrap());
        if !(ql(&f) + ql(&g) - 3 <= fg && fg <= ql(&f) + ql(&g) + 3) {
            return Err(format!("ql(fg) out of range for {f}, {g}"));
        }
        if ql(&free_invert(&g)) != -ql(&g) {
            return Err(format!("ql(g^-1) != -ql(g) for {g}"));
        }
        let c = ql(&free_commutator(&f, &g).unwrap());
        if !(-9..=9).contains(&c) {
            return Err(format!("ql([f,g]) = {c} for {f}, {g}"));
        }
    }
    Ok(())
}

fn delta_suite() -> Result<(), String> {
    let w = f2_s3();
    let l = w.coordinates() as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    for _ in 0..2_000 {
        let g = random_element(&mut rng, &w, 12);
        let h = random_element(&mut rng, &w, 12);
        let gh = w.multiply(&g, &h).unwrap();
        if (delta(&gh) - delta(&g) - delta(&h)).abs() > 3 * l {
            return Err("product defect above 3l".into());
        }
        if (delta(&g) + delta(&w.invert(&g).unwrap())).abs() > 3 * l {
            return Err("inverse defect above 3l".into());
        }
        if delta(&w.commutator(&g, &h).unwrap()).abs() > 15 * l {
            return Err("commutator above 15l".into());
        }
    }
    for j in 1..=100u64 {
        if delta(&w.q_sequence(j).unwrap()) != 6 * j as i64 {
            return Err(format!("delta(q_{j}) != {}", 6 * j));
        }
    }
    for m in 1..=5u64 {
        for _ in 0..200 {
            let comms: Vec<WreathElement> = (0..m)
                .map(|_| {
                    let g = random_element(&mut rng, &w, 12);
                    let h = random_element(&mut rng, &w, 12);
                    w.commutator(&g, &h).unwrap()
                })
                .collect();
            let d = delta(&w.product(&comms).unwrap());
            if d.unsigned_abs() as i128 > product_bound(w.coordinates(), m) {
                return Err(format!("product of {m} commutators has delta {d}"));
            }
        }
    }
    Ok(())
}

fn unboundedness() -> Result<(), String> {
    let w = f2_s3();
    let mut last = 0;
    let mut first_over_ten = None;
    for j in 1..=700u64 {
        let m = certify_cw_lower_bound(&w, &w.q_sequence(j).unwrap()).map_or(0, |c| c.lower_bound);
        if m < last {
            return Err(format!("m_min decreases at j = {j}"));
        }
        last = m;
        if m > 10 && first_over_ten.is_none() {
            first_over_ten = Some(j);
        }
    }
    match first_over_ten {
        Some(178) => Ok(()),
        other => Err(format!("first j with m_min > 10 is {other:?}, expected 178")),
    }
}

fn decomposition_suite() -> Result<(), String> {
    let w = fink_wreath();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut max_count = 0;
    let mut done = 0;
    while done < 1_000 {
        let g = random_element(&mut rng, w, 24);
        if g.base().iter().any(|f| f.letter_length() > 12) {
            continue;
        }
        let cert = decompose(&g).map_err(|e| e.to_string())?;
        let v = cert.verify().map_err(|e| e.to_string())?;
        if !v.all() || cert.factor_count > 19 {
            return Err(format!("{} -> {v:?}, {} factors", w.format(&g), cert.factor_count));
        }
        max_count = max_count.max(cert.factor_count);
        done += 1;
    }
    let single = decompose(&w.parse("[ [x,y]; 1; 1; 1; 1; 1 ] 1").unwrap()).map_err(|e| e.to_string())?;
    if single.factor_count != 1 {
        return Err(format!("([x,y],1,...) used {} factors", single.factor_count));
    }
    println!("    largest factor count seen: {max_count}");
    Ok(())
}

fn width_suite() -> Result<(), String> {
    let mut groups = Vec::new();
    for m in 2..=8 {
        groups.push((format!("Z{m}"), FiniteGroup::cyclic(m).unwrap()));
    }
    for m in 2..=8 {
        for n in m..=8 {
            let g = FiniteGroup::direct_product(&FiniteGroup::cyclic(m).unwrap(), &FiniteGroup::cyclic(n).unwrap())
                .unwrap();
            groups.push((format!("Z{m}xZ{n}"), g));
        }
    }
    for m in 3..=6 {
        groups.push((format!("D{m}"), FiniteGroup::dihedral(m).unwrap()));
    }
    groups.push(("S3".into(), FiniteGroup::sym3_fink()));
    let mut cross_checked = 0;
    for (name, g) in &groups {
        let word = palindromic_width(g, Notion::Word, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
        let group = palindromic_width(g, Notion::Group, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?;
        if g.order() <= 24 {
            let pw = oracle::word_palindromes(g);
            let lengths: Vec<usize> = oracle::lengths(g, &pw).into_iter().map(Option::unwrap).collect();
            if lengths != word.lengths || pw.iter().copied().collect::<Vec<_>>() != word.palindrome_elements {
                return Err(format!("{name}: library and oracle disagree"));
            }
            cross_checked += 1;
        }
        if g.is_abelian() && group.width != 1 {
            return Err(format!("{name}: group-notion width {}", group.width));
        }
        if !word
            .palindrome_elements
            .iter()
            .all(|x| group.palindrome_elements.binary_search(x).is_ok())
        {
            return Err(format!("{name}: P_word not inside P_group"));
        }
    }
    println!(
        "    {} groups, {cross_checked} cross-checked against the oracle",
        groups.len()
    );
    Ok(())
}

fn nilprod_suite() -> Result<(), String> {
    let opts = GroupOptions::default();
    let d4 = FiniteGroup::dihedral(4).unwrap();
    let z2 = AbelianSpec::new([2]);
    let np = nilprod2(&z2, &z2, &opts).map_err(|e| e.to_string())?;
    if !palwidth_core::finite_groups::is_isomorphic(np.group(), &d4) {
        return Err("Z2(2)Z2 is not dihedral of order 8".into());
    }
    let factors = [
        AbelianSpec::new([2]),
        AbelianSpec::new([3]),
        AbelianSpec::new([4]),
        AbelianSpec::new([2, 2]),
    ];
    for a in &factors {
        for b in &factors {
            let np = nilprod2(a, b, &opts).map_err(|e| e.to_string())?;
            let checks = np.check_properties();
            if !checks.all() {
                return Err(format!("{a:?} (2) {b:?}: {checks:?}"));
            }
            let report = np.analyze(DEFAULT_STATE_CAP, &opts).map_err(|e| e.to_string())?;
            let g = np.group();
            let exact = oracle::width(g, &oracle::word_palindromes(g));
            let branch_ok = (report.branch == Branch::DirectFactor) == report.m.contains(&0);
            if report.exact != Some(exact) || !report.contains(exact) || !branch_ok {
                return Err(format!("{a:?} (2) {b:?}: {report:?}, oracle {exact}"));
            }
        }
    }
    Ok(())
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_palwidth"))
        .args(args)
        .env_remove("PALWIDTH_STATE_CAP")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {:?}", out.status.code()));
    }
    Ok(out.stdout)
}

fn report(args: &[&str]) -> Result<Value, String> {
    let first = cli(args)?;
    if cli(args)? != first {
        return Err(format!("{args:?} is not deterministic"));
    }
    let v: Value = serde_json::from_slice(&first).map_err(|e| e.to_string())?;
    if !v["verification"]
        .as_object()
        .is_some_and(|m| m.values().all(|x| x == true))
    {
        return Err(format!("{args:?}: verification flags not all true"));
    }
    Ok(v)
}

fn cli_round_trips() -> Result<(), String> {
    let dir = std::env::temp_dir().join(format!("palwidth-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let tmp = |name: &str| dir.join(name).display().to_string();

    // pw: the echoed canonical spec reproduces the same result.
    for spec in [
        "cyclic2.json",
        "z4xz4.json",
        "sym3.json",
        "dihedral4.json",
        "table_z3.json",
    ] {
        for notion in ["word", "group"] {
            let r = report(&["pw", &fixture(spec), "--notion", notion])?;
            let canon = serde_json::to_string(&r["result"]["group"]).unwrap();
            let path = tmp(spec);
            std::fs::write(&path, &canon).map_err(|e| e.to_string())?;
            let again = report(&["pw", &path, "--notion", notion])?;
            if again["result"] != r["result"] || serde_json::to_string(&again["result"]["group"]).unwrap() != canon {
                return Err(format!("pw {spec} does not round-trip"));
            }
        }
    }

    // qh and decompose: the echoed element text is a fixed point.
    let elements = [
        "[1; 1; 1; 1; 1; 1] 1",
        "[ [x,y]; 1; 1; 1; 1; 1 ] 1",
        "[x^2 y; y^-1 x; 1; [x,y]^2; x; y^5] s1",
        "[x1^-3 x2; 1; x2^7; 1; 1; x1] c^-1",
    ];
    for text in elements {
        let q = report(&["qh", text])?;
        let canon = q["result"]["element"].as_str().unwrap().to_string();
        let q2 = report(&["qh", &canon])?;
        if q2["result"] != q["result"] {
            return Err(format!("qh `{text}` does not round-trip"));
        }
        let d = report(&["decompose", text])?;
        let canon = d["result"]["target"].as_str().unwrap().to_string();
        let d2 = report(&["decompose", &canon])?;
        if d2["result"] != d["result"] || d2["input_digest"] != d["input_digest"] {
            return Err(format!("decompose `{text}` does not round-trip"));
        }
    }
    for j in ["1", "60"] {
        let q = report(&["qh", "--q-index", j])?;
        let q2 = report(&["qh", q["result"]["element"].as_str().unwrap()])?;
        if q2["result"] != q["result"] {
            return Err(format!("q_{j} text does not round-trip"));
        }
    }

    // nilprod: the echoed factor list reproduces the same result.
    for specs in [
        "nilprod_z2_z2.json",
        "nilprod_bare.json",
        "nilprod_z4_v4.json",
        "nilprod_z2_z3.json",
    ] {
        let r = report(&["nilprod", &fixture(specs)])?;
        let path = tmp(specs);
        let canon = serde_json::to_string(&serde_json::json!({ "factors": r["result"]["factors"] })).unwrap();
        std::fs::write(&path, canon).map_err(|e| e.to_string())?;
        if report(&["nilprod", &path])?["result"] != r["result"] {
            return Err(format!("nilprod {specs} does not round-trip"));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(())
}

#[test]
fn acceptance() {
    type Check = fn() -> Result<(), String>;
    let criteria: [(&str, Duration, Check); 7] = [
        ("1 quasi-length inequalities", LIMIT_QUASI_LENGTH, quasi_length),
        ("2 delta bounds over F2 wr S3", LIMIT_DELTA, delta_suite),
        ("3 unbounded certificates along q_j", LIMIT_UNBOUNDED, unboundedness),
        ("4 palindromic decompositions", LIMIT_DECOMPOSE, decomposition_suite),
        ("5 width oracle", LIMIT_WIDTH, width_suite),
        ("6 nilpotent products", LIMIT_NILPROD, nilprod_suite),
        ("7 CLI round trips", LIMIT_CLI, cli_round_trips),
    ];
    let mut failures = Vec::new();
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match &outcome {
            Ok(()) => println!("PASS  criterion {name} ({elapsed:.2?})"),
            Err(why) => {
                println!("FAIL  criterion {name} ({elapsed:.2?}): {why}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
