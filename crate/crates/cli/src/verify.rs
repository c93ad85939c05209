use std::str::FromStr;

use anyhow::bail;
use clap::ValueEnum;
use num_traits::Signed;
use serde::Serialize;
use serde_json::json;
use toric_core::catalog::full_catalog;
use toric_core::toric::{
    check_cone_bipyramid, check_dehn_sommerville, check_g_cascade, check_monotonicity, check_ubt,
    kalai_identity_sides, IntervalTable,
};
use toric_core::verma::{check_reciprocity, check_verma_vs_polar, polar_g, truncated_inequality_with};
use toric_core::{Error, FaceLattice};

use crate::input::load;

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Suite {
    Ds,
    Reciprocity,
    Monotonicity,
    Ubt,
    KalaiIdentity,
    Cascade,
    ConeBipyramid,
    Verma,
    Truncated,
}

#[derive(Clone, Debug)]
pub enum FaceSelector {
    All,
    Dim(i32),
}

impl FromStr for FaceSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(FaceSelector::All);
        }
        s.strip_prefix("dim=")
            .and_then(|k| k.parse().ok())
            .map(FaceSelector::Dim)
            .ok_or_else(|| format!("expected `all` or `dim=k`, got {s:?}"))
    }
}

#[derive(Serialize)]
struct Instance {
    name: String,
    pass: bool,
    detail: String,
}

fn check(suite: Suite, l: &FaceLattice, faces: &FaceSelector) -> anyhow::Result<(bool, String)> {
    let d = l.dim();
    Ok(match suite {
        Suite::Ds => (check_dehn_sommerville(l)?, String::new()),
        Suite::Reciprocity => {
            if l.is_empty_polytope() {
                return Ok((true, "vacuous for the empty polytope".into()));
            }
            let (a, b) = (check_reciprocity(l), check_reciprocity(&l.dual()));
            (a.is_zero() && b.is_zero(), format!("primal {a}, dual {b}"))
        }
        Suite::Monotonicity => {
            let table = IntervalTable::full(l);
            let chosen: Vec<usize> = match faces {
                FaceSelector::All => (0..l.len()).collect(),
                FaceSelector::Dim(k) => l.faces_of_dim(*k).collect(),
            };
            let bad: Vec<usize> = chosen.iter().copied().filter(|&f| !check_monotonicity(&table, f)).collect();
            (bad.is_empty(), format!("{} faces, failing {:?}", chosen.len(), bad))
        }
        Suite::Ubt => (check_ubt(l)?, String::new()),
        Suite::KalaiIdentity => {
            let table = IntervalTable::full(l);
            let mut bad = Vec::new();
            for k in 0..=d.max(0) as i64 {
                let (lhs, rhs) = kalai_identity_sides(l, &table, k)?;
                if lhs != rhs {
                    bad.push(format!("k={k}: {lhs} vs {rhs}"));
                }
            }
            (bad.is_empty(), bad.join("; "))
        }
        Suite::Cascade => (check_g_cascade(l)?, String::new()),
        Suite::ConeBipyramid => (check_cone_bipyramid(l)?, String::new()),
        Suite::Verma => {
            if l.is_empty_polytope() {
                return Ok((true, "vacuous for the empty polytope".into()));
            }
            let rep = check_verma_vs_polar(l)?;
            (rep.agrees, format!("({}) vs ({})", rep.top.join(","), rep.polar_top.join(",")))
        }
        Suite::Truncated => {
            if l.is_empty_polytope() {
                return Ok((true, "vacuous for the empty polytope".into()));
            }
            let table = IntervalTable::full(l);
            let polar = polar_g(l);
            let mut values = Vec::new();
            let mut ok = true;
            for k in 0..=(d / 2) as i64 {
                for s in 0..=d as i64 {
                    let v = truncated_inequality_with(l, &table, &polar, k, s);
                    ok &= !v.is_negative();
                    values.push(format!("({k},{s})={v}"));
                }
            }
            (ok, values.join(" "))
        }
    })
}

pub fn run(suite: Suite, input: Option<&str>, all: bool, faces: &FaceSelector, json: bool) -> anyhow::Result<bool> {
    let targets: Vec<(String, FaceLattice)> = match (input, all) {
        (Some(_), true) => bail!(Error::InvalidInput("give either an input or --all, not both".into())),
        (None, false) => bail!(Error::InvalidInput("nothing to verify: give an input or --all".into())),
        (Some(src), false) => {
            let loaded = load(src)?;
            vec![(loaded.name.clone(), loaded.lattice())]
        }
        (None, true) => full_catalog()?.into_iter().map(|e| (e.name.clone(), e.lattice().clone())).collect(),
    };
    let name = suite.to_possible_value().expect("not skipped").get_name().to_string();
    let mut results = Vec::new();
    for (target, lattice) in &targets {
        let (pass, detail) = match check(suite, lattice, faces) {
            Ok(r) => r,
            // an instance the suite cannot handle counts against it
            Err(e) => (false, format!("error: {e:#}")),
        };
        if !json {
            let sep = if detail.is_empty() { "" } else { ": " };
            println!("{} {name} {target}{sep}{detail}", if pass { "PASS" } else { "FAIL" });
        }
        results.push(Instance { name: target.clone(), pass, detail });
    }
    let ok = results.iter().all(|r| r.pass);
    if json {
        let value = json!({ "suite": name, "pass": ok, "results": results });
        println!("{}", serde_json::to_string_pretty(&value)?);
    } else {
        println!("{name}: {} of {} passed", results.iter().filter(|r| r.pass).count(), results.len());
    }
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn face_selectors() {
        assert!(matches!("all".parse::<FaceSelector>(), Ok(FaceSelector::All)));
        assert!(matches!("dim=2".parse::<FaceSelector>(), Ok(FaceSelector::Dim(2))));
        assert!("dim=".parse::<FaceSelector>().is_err());
        assert!("faces".parse::<FaceSelector>().is_err());
    }
}
