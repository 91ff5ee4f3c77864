//! Slide planning and linking-number bookkeeping.
//!
//! A solution X of MX = V turns into a sequence of slides: entry X[i]
//! demands |X[i]| slides over the i-th surgery component, oriented against
//! the sign of X[i]. Applying the whole plan drives the slid curve's
//! linking vector to zero. The ledger tracks every relevant S³ linking
//! number under the algebraic update rule, so a diagram produced by the
//! corresponding band slides can be checked against it pair by pair.

use crate::diagram::{band_slide, linking_number_s3, BandSpec, Diagram, Role};
use crate::error::Error;
use crate::homlin::{linking_vector, FramedLinkData, LinkingVector, SolutionVector};
use crate::jsonint::bigint_to_number;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{Map, Value};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideStep {
    pub index: usize,
    pub component: String,
    /// +1 uses the surgery component's push-off as-is, -1 the reversed one.
    pub orient: i32,
}

/// Ordered slide sequence realizing a solution vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlidePlan {
    pub steps: Vec<SlideStep>,
    pub source_x: Vec<BigInt>,
}

impl Serialize for SlidePlan {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut list = Vec::with_capacity(self.steps.len());
        for st in &self.steps {
            let mut m = Map::new();
            m.insert("component".into(), Value::String(st.component.clone()));
            m.insert("orient".into(), Value::from(st.orient));
            list.push(Value::Object(m));
        }
        Value::Array(list).serialize(s)
    }
}

/// Builds the slide sequence for a solution: ascending component index,
/// X[i] > 0 giving X[i] reversed slides, X[i] < 0 giving |X[i]| plain ones.
pub fn slide_plan(x: &SolutionVector, names: &[String]) -> Result<SlidePlan, Error> {
    if x.x.len() != names.len() {
        return Err(Error::dimension(format!(
            "solution has {} entries but there are {} surgery components",
            x.x.len(),
            names.len()
        )));
    }
    let mut steps = Vec::new();
    for (i, xi) in x.x.iter().enumerate() {
        if xi.is_zero() {
            continue;
        }
        let orient = if xi.is_positive() { -1 } else { 1 };
        let count = xi.abs().to_usize().ok_or_else(|| {
            Error::validation(format!(
                "solution entry {xi} is too large to realize as slides"
            ))
        })?;
        for _ in 0..count {
            steps.push(SlideStep {
                index: i,
                component: names[i].clone(),
                orient,
            });
        }
    }
    Ok(SlidePlan {
        steps,
        source_x: x.x.clone(),
    })
}

fn pair_key(a: &str, b: &str) -> (String, String) {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// All S³ linking numbers of a diagram, keyed by sorted name pairs.
pub fn lk_table(d: &Diagram) -> Result<BTreeMap<(String, String), BigInt>, Error> {
    let mut out = BTreeMap::new();
    for (i, a) in d.components.iter().enumerate() {
        for b in &d.components[i + 1..] {
            let v = linking_number_s3(d, &a.name, &b.name)?;
            out.insert(pair_key(&a.name, &b.name), BigInt::from(v));
        }
    }
    Ok(out)
}

/// Linking vectors of everything worth watching while `exclude` slides:
/// each surgery component contributes its linking-matrix column (framing on
/// the diagonal), each other knot component its measured linking vector.
pub fn tracked_vectors(
    d: &Diagram,
    link: &FramedLinkData,
    exclude: &str,
) -> Result<Vec<LinkingVector>, Error> {
    let mut out = Vec::new();
    for (j, name) in link.names.iter().enumerate() {
        out.push(LinkingVector {
            owner: name.clone(),
            v: link.matrix.col(j),
        });
    }
    for c in &d.components {
        if c.role == Role::Knot && c.name != exclude {
            out.push(linking_vector(d, link, &c.name)?);
        }
    }
    Ok(out)
}

/// Running linking-number state of a slide sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ledger {
    pub owner: String,
    pub names: Vec<String>,
    /// lk(owner, names[i]) after the applied steps.
    pub v_current: Vec<BigInt>,
    /// pairwise S³ linking numbers, sorted-name keys
    pub lk_s3: BTreeMap<(String, String), BigInt>,
    pub steps_applied: usize,
}

impl Serialize for Ledger {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = Map::new();
        m.insert("owner".into(), Value::String(self.owner.clone()));
        m.insert(
            "names".into(),
            Value::Array(self.names.iter().cloned().map(Value::String).collect()),
        );
        m.insert(
            "v_current".into(),
            Value::Array(
                self.v_current
                    .iter()
                    .map(|x| Value::Number(bigint_to_number(x)))
                    .collect(),
            ),
        );
        let mut pairs = Vec::new();
        for ((a, b), v) in &self.lk_s3 {
            let mut e = Map::new();
            e.insert(
                "pair".into(),
                Value::Array(vec![Value::String(a.clone()), Value::String(b.clone())]),
            );
            e.insert("lk".into(), Value::Number(bigint_to_number(v)));
            pairs.push(Value::Object(e));
        }
        m.insert("lk_s3".into(), Value::Array(pairs));
        m.insert("steps_applied".into(), Value::from(self.steps_applied));
        Value::Object(m).serialize(s)
    }
}

/// Plays a plan through the algebraic update rule: each step of orientation
/// s over component i adds s times column i of the linking matrix to the
/// owner's linking vector, and s times V_C[i] to lk(owner, C) for every
/// tracked curve C. Steps are not applied to any diagram here.
pub fn apply_plan_ledger(
    plan: &SlidePlan,
    link: &FramedLinkData,
    v_k: &LinkingVector,
    tracked: &[LinkingVector],
    lk_s3: BTreeMap<(String, String), BigInt>,
) -> Result<Ledger, Error> {
    let n = link.n();
    if v_k.v.len() != n {
        return Err(Error::dimension(format!(
            "linking vector has {} entries, matrix is {n}x{n}",
            v_k.v.len()
        )));
    }
    for t in tracked {
        if t.v.len() != n {
            return Err(Error::dimension(format!(
                "tracked vector for {} has {} entries, matrix is {n}x{n}",
                t.owner,
                t.v.len()
            )));
        }
        if t.owner == v_k.owner {
            return Err(Error::validation(format!(
                "tracked curve {} is the slid curve itself",
                t.owner
            )));
        }
        if !lk_s3.contains_key(&pair_key(&v_k.owner, &t.owner)) {
            return Err(Error::validation(format!(
                "no initial linking number for pair ({}, {})",
                v_k.owner, t.owner
            )));
        }
    }
    for step in &plan.steps {
        if step.orient != 1 && step.orient != -1 {
            return Err(Error::validation(format!(
                "step orientation must be 1 or -1, got {}",
                step.orient
            )));
        }
        if step.index >= n {
            return Err(Error::validation(format!(
                "step index {} out of range for {n} surgery components",
                step.index
            )));
        }
        if step.component != link.names[step.index] {
            return Err(Error::validation(format!(
                "step names component {} but index {} is {}",
                step.component, step.index, link.names[step.index]
            )));
        }
    }

    let mut v = v_k.v.clone();
    let mut lk = lk_s3;
    for step in &plan.steps {
        let s = BigInt::from(step.orient);
        for (j, vj) in v.iter_mut().enumerate() {
            *vj += &s * link.matrix.get(j, step.index);
        }
        for t in tracked {
            let entry = lk
                .get_mut(&pair_key(&v_k.owner, &t.owner))
                .expect("checked above");
            *entry += &s * &t.v[step.index];
        }
    }
    Ok(Ledger {
        owner: v_k.owner.clone(),
        names: link.names.clone(),
        v_current: v,
        lk_s3: lk,
        steps_applied: plan.steps.len(),
    })
}

/// Realizes a plan as band slides on the diagram. `bands` gives one band
/// per step, or nothing at all for default bands throughout.
pub fn apply_plan_diagram(
    plan: &SlidePlan,
    d: &Diagram,
    k: &str,
    bands: &[BandSpec],
) -> Result<Diagram, Error> {
    if !bands.is_empty() && bands.len() != plan.steps.len() {
        return Err(Error::validation(format!(
            "{} bands supplied for {} slide steps",
            bands.len(),
            plan.steps.len()
        )));
    }
    let default = BandSpec::default_band();
    let mut cur = d.clone();
    for (si, step) in plan.steps.iter().enumerate() {
        let band = if bands.is_empty() {
            &default
        } else {
            &bands[si]
        };
        cur = band_slide(&cur, k, &step.component, step.orient, band)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub pair: (String, String),
    #[serde(with = "crate::jsonint::big")]
    pub ledger: BigInt,
    #[serde(with = "crate::jsonint::big")]
    pub diagram: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum VerifyOutcome {
    Pass { checked: usize, skipped: usize },
    Discrepancy { mismatches: Vec<Mismatch> },
}

/// Recomputes every linking number the ledger claims to know from the
/// diagram and compares. Entries naming components absent from the diagram
/// are skipped, not failed.
pub fn verify_ledger(d: &Diagram, ledger: &Ledger) -> Result<VerifyOutcome, Error> {
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut mismatches = Vec::new();
    let owner_present = d.component(&ledger.owner).is_some();
    for (i, name) in ledger.names.iter().enumerate() {
        if !owner_present || d.component(name).is_none() {
            skipped += 1;
            continue;
        }
        let got = BigInt::from(linking_number_s3(d, &ledger.owner, name)?);
        checked += 1;
        if got != ledger.v_current[i] {
            mismatches.push(Mismatch {
                pair: pair_key(&ledger.owner, name),
                ledger: ledger.v_current[i].clone(),
                diagram: got,
            });
        }
    }
    for ((a, b), want) in &ledger.lk_s3 {
        if d.component(a).is_none() || d.component(b).is_none() {
            skipped += 1;
            continue;
        }
        let got = BigInt::from(linking_number_s3(d, a, b)?);
        checked += 1;
        if got != *want {
            mismatches.push(Mismatch {
                pair: (a.clone(), b.clone()),
                ledger: want.clone(),
                diagram: got,
            });
        }
    }
    if mismatches.is_empty() {
        Ok(VerifyOutcome::Pass { checked, skipped })
    } else {
        Ok(VerifyOutcome::Discrepancy { mismatches })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{Component, Crossing};
    use crate::homlin::{linking_matrix, solve_integer_system, IntMat};

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn bigs(v: &[i64]) -> Vec<BigInt> {
        v.iter().copied().map(BigInt::from).collect()
    }

    /// Knot K linking the first of three 1-framed unknots once, negatively.
    pub(crate) fn three_unknots_diagram() -> Diagram {
        let d = Diagram {
            components: vec![
                Component {
                    name: "K".into(),
                    role: Role::Knot,
                    framing: None,
                    edges: vec![1, 2],
                },
                Component {
                    name: "L1".into(),
                    role: Role::Surgery,
                    framing: Some(1),
                    edges: vec![3, 4],
                },
                Component {
                    name: "L2".into(),
                    role: Role::Surgery,
                    framing: Some(1),
                    edges: vec![5],
                },
                Component {
                    name: "L3".into(),
                    role: Role::Surgery,
                    framing: Some(1),
                    edges: vec![6],
                },
            ],
            crossings: vec![
                Crossing {
                    over_in: 1,
                    over_out: 2,
                    under_in: 3,
                    under_out: 4,
                    sign: -1,
                },
                Crossing {
                    over_in: 4,
                    over_out: 3,
                    under_in: 2,
                    under_out: 1,
                    sign: -1,
                },
            ],
        };
        d.validate().expect("fixture is valid");
        d
    }

    #[test]
    fn plan_orients_against_solution_signs() {
        let x = SolutionVector {
            x: bigs(&[-1, 2, 0]),
            kernel_basis: vec![],
        };
        let names: Vec<String> = ["L1", "L2", "L3"].iter().map(|s| s.to_string()).collect();
        let plan = slide_plan(&x, &names).unwrap();
        let flat: Vec<(usize, i32)> = plan.steps.iter().map(|s| (s.index, s.orient)).collect();
        assert_eq!(flat, vec![(0, 1), (1, -1), (1, -1)]);
        assert_eq!(
            serde_json::to_string(&plan).unwrap(),
            r#"[{"component":"L1","orient":1},{"component":"L2","orient":-1},{"component":"L2","orient":-1}]"#
        );
    }

    #[test]
    fn ledger_drives_linking_vector_to_zero() {
        let m = IntMat::identity(3);
        let names: Vec<String> = ["L1", "L2", "L3"].iter().map(|s| s.to_string()).collect();
        let link = FramedLinkData {
            names: names.clone(),
            matrix: m.clone(),
        };
        let v_k = LinkingVector {
            owner: "K".into(),
            v: bigs(&[-1, 2, 0]),
        };
        let x = solve_integer_system(&m, &v_k.v).unwrap().unwrap();
        let plan = slide_plan(&x, &names).unwrap();

        // a second null-homologous knot rides along
        let tracked = vec![LinkingVector {
            owner: "Kt".into(),
            v: bigs(&[-1, 0, 0]),
        }];
        let mut lk0 = BTreeMap::new();
        lk0.insert(("K".to_string(), "Kt".to_string()), big(-1));
        let ledger = apply_plan_ledger(&plan, &link, &v_k, &tracked, lk0).unwrap();

        assert!(ledger.v_current.iter().all(|x| x.is_zero()));
        // lk in the surgered manifold: lk_s3 - X^T V_Kt = -1 - 1 = -2
        assert_eq!(ledger.lk_s3[&("K".to_string(), "Kt".to_string())], big(-2));
        assert_eq!(ledger.steps_applied, 3);
    }

    #[test]
    fn ledger_requires_initial_pair_entries() {
        let m = IntMat::identity(1);
        let link = FramedLinkData {
            names: vec!["L".into()],
            matrix: m,
        };
        let v_k = LinkingVector {
            owner: "K".into(),
            v: bigs(&[1]),
        };
        let plan = SlidePlan {
            steps: vec![],
            source_x: vec![],
        };
        let tracked = vec![LinkingVector {
            owner: "C".into(),
            v: bigs(&[0]),
        }];
        let err = apply_plan_ledger(&plan, &link, &v_k, &tracked, BTreeMap::new());
        assert!(err.is_err());
    }

    #[test]
    fn diagram_and_ledger_agree_after_sliding() {
        let d = three_unknots_diagram();
        let link = linking_matrix(&d).unwrap();
        assert_eq!(link.names, vec!["L1", "L2", "L3"]);
        let v_k = linking_vector(&d, &link, "K").unwrap();
        assert_eq!(v_k.v, bigs(&[-1, 0, 0]));

        let x = solve_integer_system(&link.matrix, &v_k.v).unwrap().unwrap();
        let plan = slide_plan(&x, &link.names).unwrap();
        assert_eq!(plan.steps.len(), 1);

        let tracked = tracked_vectors(&d, &link, "K").unwrap();
        let ledger =
            apply_plan_ledger(&plan, &link, &v_k, &tracked, lk_table(&d).unwrap()).unwrap();
        assert!(ledger.v_current.iter().all(|x| x.is_zero()));

        let slid = apply_plan_diagram(&plan, &d, "K", &[]).unwrap();
        assert_eq!(linking_number_s3(&slid, "K", "L1").unwrap(), 0);
        match verify_ledger(&slid, &ledger).unwrap() {
            VerifyOutcome::Pass { checked, skipped } => {
                assert_eq!(checked, 3 + 6);
                assert_eq!(skipped, 0);
            }
            VerifyOutcome::Discrepancy { mismatches } => {
                panic!("unexpected mismatches: {mismatches:?}")
            }
        }
    }

    #[test]
    fn tampered_ledger_is_caught() {
        let d = three_unknots_diagram();
        let link = linking_matrix(&d).unwrap();
        let v_k = linking_vector(&d, &link, "K").unwrap();
        let ledger = Ledger {
            owner: "K".into(),
            names: link.names.clone(),
            v_current: {
                let mut v = v_k.v.clone();
                v[0] += 5;
                v
            },
            lk_s3: BTreeMap::new(),
            steps_applied: 0,
        };
        match verify_ledger(&d, &ledger).unwrap() {
            VerifyOutcome::Discrepancy { mismatches } => {
                assert_eq!(mismatches.len(), 1);
                assert_eq!(mismatches[0].ledger, big(4));
                assert_eq!(mismatches[0].diagram, big(-1));
            }
            other => panic!("expected a discrepancy, got {other:?}"),
        }
    }

    #[test]
    fn band_count_must_match_steps() {
        let d = three_unknots_diagram();
        let plan = SlidePlan {
            steps: vec![
                SlideStep {
                    index: 0,
                    component: "L1".into(),
                    orient: 1,
                },
                SlideStep {
                    index: 1,
                    component: "L2".into(),
                    orient: 1,
                },
            ],
            source_x: bigs(&[-1, -1, 0]),
        };
        let err = apply_plan_diagram(&plan, &d, "K", &[BandSpec::default_band()]);
        assert!(err.is_err());
    }
}
