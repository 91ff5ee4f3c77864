//! Oriented link diagrams with signed crossings.
//!
//! A diagram is purely combinatorial: components carry ordered edge cycles,
//! crossings record which edges enter and leave each strand plus an explicit
//! sign. No planar embedding is stored and none is checked; every
//! computation downstream consumes only signs and component membership.

mod rewrite;

pub use rewrite::{band_slide, push_off, BandDir, BandSpec};

use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};

pub type EdgeId = i64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Surgery,
    Knot,
}

/// One crossing; `sign` is +1 when rotating the under-strand direction a
/// quarter turn counterclockwise aligns it with the over-strand direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crossing {
    pub over_in: EdgeId,
    pub over_out: EdgeId,
    pub under_in: EdgeId,
    pub under_out: EdgeId,
    pub sign: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub role: Role,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub framing: Option<i64>,
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct Diagram {
    pub components: Vec<Component>,
    pub crossings: Vec<Crossing>,
}

/// Where one edge terminates: the crossing index and the strand it feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Strand {
    Over,
    Under,
}

impl Crossing {
    pub(crate) fn out_edge(&self, s: Strand) -> EdgeId {
        match s {
            Strand::Over => self.over_out,
            Strand::Under => self.under_out,
        }
    }

    pub(crate) fn set_in_edge(&mut self, s: Strand, e: EdgeId) {
        match s {
            Strand::Over => self.over_in = e,
            Strand::Under => self.under_in = e,
        }
    }
}

impl Diagram {
    pub fn component(&self, name: &str) -> Option<&Component> {
        self.components.iter().find(|c| c.name == name)
    }

    pub(crate) fn component_mut(&mut self, name: &str) -> Option<&mut Component> {
        self.components.iter_mut().find(|c| c.name == name)
    }

    /// Owner component of each edge id.
    pub(crate) fn edge_owners(&self) -> BTreeMap<EdgeId, usize> {
        let mut owners = BTreeMap::new();
        for (ci, c) in self.components.iter().enumerate() {
            for &e in &c.edges {
                owners.insert(e, ci);
            }
        }
        owners
    }

    /// Crossing index and strand consuming each edge (its terminus).
    pub(crate) fn in_slots(&self) -> BTreeMap<EdgeId, (usize, Strand)> {
        let mut slots = BTreeMap::new();
        for (xi, x) in self.crossings.iter().enumerate() {
            slots.insert(x.over_in, (xi, Strand::Over));
            slots.insert(x.under_in, (xi, Strand::Under));
        }
        slots
    }

    pub fn max_edge_id(&self) -> EdgeId {
        self.components
            .iter()
            .flat_map(|c| c.edges.iter().copied())
            .max()
            .unwrap_or(0)
    }

    /// Checks every structural invariant. Valid diagrams are exactly the
    /// ones every other operation in this crate accepts.
    pub fn validate(&self) -> Result<(), Error> {
        let mut names = BTreeSet::new();
        for c in &self.components {
            if c.name.is_empty() {
                return Err(Error::validation("component with empty name".to_string()));
            }
            if !names.insert(c.name.clone()) {
                return Err(Error::validation(format!(
                    "duplicate component name {}",
                    c.name
                )));
            }
            match c.role {
                Role::Surgery if c.framing.is_none() => {
                    return Err(Error::validation(format!(
                        "surgery component {} has no framing",
                        c.name
                    )));
                }
                Role::Knot if c.framing.is_some() => {
                    return Err(Error::validation(format!(
                        "knot component {} must not carry a framing",
                        c.name
                    )));
                }
                _ => {}
            }
            if c.edges.is_empty() {
                return Err(Error::validation(format!(
                    "component {} has no edges",
                    c.name
                )));
            }
        }

        // edge ids: positive, globally unique across component cycles
        let mut owners: BTreeMap<EdgeId, &str> = BTreeMap::new();
        for c in &self.components {
            for &e in &c.edges {
                if e <= 0 {
                    return Err(Error::validation(format!(
                        "component {} lists non-positive edge id {e}",
                        c.name
                    )));
                }
                if let Some(prev) = owners.insert(e, &c.name) {
                    return Err(Error::validation(format!(
                        "edge {e} appears in both {prev} and {}",
                        c.name
                    )));
                }
            }
        }

        // slot occurrence counts: each edge exactly once as an in slot and
        // once as an out slot, or not at all
        let mut in_count: BTreeMap<EdgeId, usize> = BTreeMap::new();
        let mut out_count: BTreeMap<EdgeId, usize> = BTreeMap::new();
        for x in &self.crossings {
            if x.sign != 1 && x.sign != -1 {
                return Err(Error::validation(format!(
                    "crossing {x:?} has sign {}, expected 1 or -1",
                    x.sign
                )));
            }
            for e in [x.over_in, x.under_in] {
                *in_count.entry(e).or_default() += 1;
            }
            for e in [x.over_out, x.under_out] {
                *out_count.entry(e).or_default() += 1;
            }
            for e in [x.over_in, x.over_out, x.under_in, x.under_out] {
                if !owners.contains_key(&e) {
                    return Err(Error::validation(format!(
                        "crossing {x:?} references edge {e} which belongs to no component"
                    )));
                }
            }
            // each strand stays on one component
            if owners[&x.over_in] != owners[&x.over_out] {
                return Err(Error::validation(format!(
                    "crossing {x:?}: over strand jumps components"
                )));
            }
            if owners[&x.under_in] != owners[&x.under_out] {
                return Err(Error::validation(format!(
                    "crossing {x:?}: under strand jumps components"
                )));
            }
        }
        for &e in owners.keys() {
            let i = in_count.get(&e).copied().unwrap_or(0);
            let o = out_count.get(&e).copied().unwrap_or(0);
            let total = i + o;
            if !(i == 1 && o == 1 || total == 0) {
                return Err(Error::validation(format!(
                    "edge {e} appears {total} times in crossings (expected once in, once out, or never)"
                )));
            }
        }

        // traversal: each component's listed cycle must follow crossing slots
        let slots = self.in_slots();
        for c in &self.components {
            let m = c.edges.len();
            let distinct: BTreeSet<EdgeId> = c.edges.iter().copied().collect();
            if distinct.len() != m {
                return Err(Error::validation(format!(
                    "component {} repeats an edge in its cycle",
                    c.name
                )));
            }
            let crossing_free = in_count.get(&c.edges[0]).copied().unwrap_or(0) == 0;
            if crossing_free {
                if m != 1 {
                    return Err(Error::validation(format!(
                        "component {} has {m} edges but none meet a crossing",
                        c.name
                    )));
                }
                continue;
            }
            for i in 0..m {
                let e = c.edges[i];
                let expected = c.edges[(i + 1) % m];
                let Some(&(xi, s)) = slots.get(&e) else {
                    return Err(Error::validation(format!(
                        "edge {e} of component {} does not terminate at any crossing",
                        c.name
                    )));
                };
                let succ = self.crossings[xi].out_edge(s);
                if succ != expected {
                    return Err(Error::validation(format!(
                        "component {}: edge {e} continues as {succ} but the cycle lists {expected}",
                        c.name
                    )));
                }
            }
        }

        // mutual crossing parity: distinct components must share an even
        // number of crossings, otherwise the linking number is not an integer
        let owner_idx = self.edge_owners();
        let mut mutual: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for x in &self.crossings {
            let a = owner_idx[&x.over_in];
            let b = owner_idx[&x.under_in];
            if a != b {
                *mutual.entry((a.min(b), a.max(b))).or_default() += 1;
            }
        }
        for ((a, b), count) in mutual {
            if count % 2 != 0 {
                return Err(Error::validation(format!(
                    "components {} and {} share {count} crossings; a closed diagram needs an even count",
                    self.components[a].name, self.components[b].name
                )));
            }
        }

        Ok(())
    }

    /// Canonical ordering: components sorted by name, crossings by
    /// (over_in, under_in). In-slot edges are globally distinct on valid
    /// diagrams, so the crossing order is total.
    pub fn canonicalize(&mut self) {
        self.components.sort_by(|a, b| a.name.cmp(&b.name));
        self.crossings.sort_by_key(|x| (x.over_in, x.under_in));
    }

    /// Canonical serialization: sorted as per `canonicalize`, two-space
    /// indentation, no trailing whitespace.
    pub fn to_canonical_string(&self) -> String {
        let mut d = self.clone();
        d.canonicalize();
        serde_json::to_string_pretty(&d).expect("diagram serializes")
    }
}

/// Parses, validates, and canonicalizes a diagram file.
pub fn parse_diagram(text: &str) -> Result<Diagram, Error> {
    let mut d: Diagram =
        serde_json::from_str(text).map_err(|e| Error::parse(format!("diagram JSON: {e}")))?;
    d.validate()?;
    d.canonicalize();
    Ok(d)
}

/// Sum of signs of self-crossings of component `c`.
pub fn writhe(d: &Diagram, c: &str) -> Result<i64, Error> {
    let owners = d.edge_owners();
    let ci = d
        .components
        .iter()
        .position(|comp| comp.name == c)
        .ok_or_else(|| Error::validation(format!("unknown component {c}")))?;
    Ok(d.crossings
        .iter()
        .filter(|x| owners[&x.over_in] == ci && owners[&x.under_in] == ci)
        .map(|x| x.sign as i64)
        .sum())
}

/// S³ linking number of two distinct components: half the sum of the signs
/// of their mutual crossings.
pub fn linking_number_s3(d: &Diagram, a: &str, b: &str) -> Result<i64, Error> {
    if a == b {
        return Err(Error::validation(format!(
            "linking number needs two distinct components, got {a} twice (use writhe for self-crossings)"
        )));
    }
    let ai = d
        .components
        .iter()
        .position(|c| c.name == a)
        .ok_or_else(|| Error::validation(format!("unknown component {a}")))?;
    let bi = d
        .components
        .iter()
        .position(|c| c.name == b)
        .ok_or_else(|| Error::validation(format!("unknown component {b}")))?;
    let owners = d.edge_owners();
    let total: i64 = d
        .crossings
        .iter()
        .filter(|x| {
            let o = owners[&x.over_in];
            let u = owners[&x.under_in];
            (o == ai && u == bi) || (o == bi && u == ai)
        })
        .map(|x| x.sign as i64)
        .sum();
    debug_assert!(total % 2 == 0, "validated diagrams have even mutual sums");
    Ok(total / 2)
}
