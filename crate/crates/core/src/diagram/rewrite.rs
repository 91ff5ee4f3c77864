//! Diagram rewrites: push-offs realizing framings, and band-sum slides.
//!
//! Both rewrites are purely combinatorial. A push-off duplicates a surgery
//! component's traversal (blackboard parallel), then winds the copy around
//! the original until their linking number equals the framing; each winding
//! shows up as one kink on the copy plus two mutual crossings. A band slide
//! then merges a knot component with the (possibly reversed) copy along a
//! band whose two antiparallel strands pass over every edge listed in the
//! band route.

use super::{Component, Crossing, Diagram, EdgeId, Role, Strand};
use crate::error::Error;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BandDir {
    L2R,
    R2L,
}

/// Where a band attaches and which edges it crosses over.
///
/// Edge ids refer to the diagram state after the push-off (original ids
/// survive the push-off; an id that gets subdivided keeps naming its first
/// segment). `None` endpoints pick the lowest edge id on the respective
/// component, which makes the default band deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub from_edge: Option<EdgeId>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub to_edge: Option<EdgeId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub over: Vec<(EdgeId, BandDir)>,
}

impl BandSpec {
    pub fn default_band() -> Self {
        BandSpec::default()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum GKind {
    /// copy-of-over strand crossing the original under strand
    CopyOverOrig,
    /// original over strand crossing the copy-of-under strand
    OrigOverCopy,
    /// two copy strands crossing each other
    CopyCopy,
}

#[derive(Default)]
struct GadgetSlots {
    over_in: Option<EdgeId>,
    over_out: Option<EdgeId>,
    under_in: Option<EdgeId>,
    under_out: Option<EdgeId>,
    sign: i32,
}

impl GadgetSlots {
    fn fill(&mut self, s: Strand, input: EdgeId, output: EdgeId) {
        match s {
            Strand::Over => {
                self.over_in = Some(input);
                self.over_out = Some(output);
            }
            Strand::Under => {
                self.under_in = Some(input);
                self.under_out = Some(output);
            }
        }
    }

    fn build(&self) -> Result<Crossing, Error> {
        match (self.over_in, self.over_out, self.under_in, self.under_out) {
            (Some(oi), Some(oo), Some(ui), Some(uo)) => Ok(Crossing {
                over_in: oi,
                over_out: oo,
                under_in: ui,
                under_out: uo,
                sign: self.sign,
            }),
            _ => Err(Error::internal(
                "push-off gadget crossing left partially wired".to_string(),
            )),
        }
    }
}

fn fresh_name(d: &Diagram, base: &str) -> String {
    let candidate = format!("{base}~");
    if d.component(&candidate).is_none() {
        return candidate;
    }
    let mut k = 2;
    loop {
        let candidate = format!("{base}~{k}");
        if d.component(&candidate).is_none() {
            return candidate;
        }
        k += 1;
    }
}

/// Subdivides `seg`, returning the fresh second half. The unique in-slot
/// referencing `seg` is rewired to the new edge, and the owner's cycle
/// gains the new edge right after `seg`. Cutting a crossing-free circle
/// once leaves a single arc, so the edge itself comes back unchanged.
fn split_edge(d: &mut Diagram, seg: EdgeId, next_id: &mut EdgeId) -> Result<EdgeId, Error> {
    if !d
        .crossings
        .iter()
        .any(|x| x.over_in == seg || x.under_in == seg)
    {
        return Ok(seg);
    }
    let g = *next_id;
    *next_id += 1;
    if let Some(x) = d.crossings.iter_mut().find(|x| x.over_in == seg) {
        x.over_in = g;
    } else if let Some(x) = d.crossings.iter_mut().find(|x| x.under_in == seg) {
        x.under_in = g;
    }
    let comp = d
        .components
        .iter_mut()
        .find(|c| c.edges.contains(&seg))
        .ok_or_else(|| Error::internal(format!("split target edge {seg} has no owner")))?;
    let pos = comp
        .edges
        .iter()
        .position(|&e| e == seg)
        .expect("just found");
    comp.edges.insert(pos + 1, g);
    Ok(g)
}

/// Reverses the orientation of one component in place: the edge cycle runs
/// backwards, crossings met by exactly one of its strands flip sign and
/// swap that strand's in/out, crossings met by both strands keep their sign
/// and swap both.
fn reverse_component(d: &mut Diagram, name: &str) {
    let owners = d.edge_owners();
    let ci = d
        .components
        .iter()
        .position(|c| c.name == name)
        .expect("component exists");
    for x in d.crossings.iter_mut() {
        let over_on = owners[&x.over_in] == ci;
        let under_on = owners[&x.under_in] == ci;
        if over_on {
            std::mem::swap(&mut x.over_in, &mut x.over_out);
        }
        if under_on {
            std::mem::swap(&mut x.under_in, &mut x.under_out);
        }
        if over_on != under_on {
            x.sign = -x.sign;
        }
    }
    d.component_mut(name).expect("exists").edges.reverse();
}

/// Adds one full winding of the copy around the original, splicing at the
/// given edges. Produces two mutual crossings plus one kink on the copy,
/// all of sign `s`; returns the new splice edges for the next winding.
fn add_twist(
    d: &mut Diagram,
    cur_c: EdgeId,
    cur_copy: EdgeId,
    s: i32,
    next_id: &mut EdgeId,
) -> (EdgeId, EdgeId) {
    let mut alloc = || {
        let id = *next_id;
        *next_id += 1;
        id
    };
    let n1 = alloc();
    let k1 = alloc();
    let k2 = alloc();
    let k3 = alloc();

    // If the splice edge has a terminus, the winding exits through a fresh
    // edge rewired into it; a crossing-free edge instead loops straight
    // back into itself.
    let find_term = |d: &Diagram, e: EdgeId| -> Option<(usize, Strand)> {
        d.crossings.iter().enumerate().find_map(|(i, x)| {
            if x.over_in == e {
                Some((i, Strand::Over))
            } else if x.under_in == e {
                Some((i, Strand::Under))
            } else {
                None
            }
        })
    };
    let c_term = find_term(d, cur_c);
    let copy_term = find_term(d, cur_copy);
    let c_exit = if c_term.is_some() { alloc() } else { cur_c };
    let copy_exit = if copy_term.is_some() {
        alloc()
    } else {
        cur_copy
    };
    if let Some((i, st)) = c_term {
        d.crossings[i].set_in_edge(st, c_exit);
    }
    if let Some((i, st)) = copy_term {
        d.crossings[i].set_in_edge(st, copy_exit);
    }

    d.crossings.push(Crossing {
        over_in: cur_c,
        over_out: n1,
        under_in: k1,
        under_out: k2,
        sign: s,
    });
    d.crossings.push(Crossing {
        over_in: k2,
        over_out: k3,
        under_in: n1,
        under_out: c_exit,
        sign: s,
    });
    d.crossings.push(Crossing {
        over_in: k3,
        over_out: copy_exit,
        under_in: cur_copy,
        under_out: k1,
        sign: s,
    });

    let owner_of = |d: &Diagram, e: EdgeId| {
        d.components
            .iter()
            .position(|c| c.edges.contains(&e))
            .expect("edge has owner")
    };
    let mut c_new = vec![n1];
    if c_exit != cur_c {
        c_new.push(c_exit);
    }
    let mut copy_new = vec![k1, k2, k3];
    if copy_exit != cur_copy {
        copy_new.push(copy_exit);
    }
    let ci = owner_of(d, cur_c);
    let pos = d.components[ci]
        .edges
        .iter()
        .position(|&e| e == cur_c)
        .expect("found");
    d.components[ci].edges.splice(pos + 1..pos + 1, c_new);
    let ci = owner_of(d, cur_copy);
    let pos = d.components[ci]
        .edges
        .iter()
        .position(|&e| e == cur_copy)
        .expect("found");
    d.components[ci].edges.splice(pos + 1..pos + 1, copy_new);

    (c_exit, copy_exit)
}

/// Adds a parallel copy of surgery component `c` realizing its framing:
/// the copy follows `c`'s traversal crossing everything `c` crosses, then
/// winds around `c` once per unit of (framing − writhe). With `orient` −1
/// the copy is reversed afterwards. Returns the enlarged diagram and the
/// copy's name.
pub fn push_off(d: &Diagram, c: &str, orient: i32) -> Result<(Diagram, String), Error> {
    if orient != 1 && orient != -1 {
        return Err(Error::validation(format!(
            "orient must be 1 or -1, got {orient}"
        )));
    }
    let comp = d
        .component(c)
        .ok_or_else(|| Error::validation(format!("unknown component {c}")))?;
    if comp.role != Role::Surgery {
        return Err(Error::validation(format!("{c} is not a surgery component")));
    }
    let p = comp
        .framing
        .ok_or_else(|| Error::validation(format!("surgery component {c} has no framing")))?;
    let w = super::writhe(d, c)?;
    let copy_name = fresh_name(d, c);
    let cycle = comp.edges.clone();
    let m = cycle.len();

    let owners = d.edge_owners();
    let ci = d
        .components
        .iter()
        .position(|x| x.name == c)
        .expect("component exists");
    let in_slots = d.in_slots();

    let mut out = d.clone();
    let mut next_id = d.max_edge_id() + 1;

    // which gadget crossings each original crossing spawns
    let mut gadgets: BTreeMap<(usize, GKind), GadgetSlots> = BTreeMap::new();
    for (xi, x) in d.crossings.iter().enumerate() {
        let over_on = owners[&x.over_in] == ci;
        let under_on = owners[&x.under_in] == ci;
        let mut add = |k: GKind| {
            gadgets.insert(
                (xi, k),
                GadgetSlots {
                    sign: x.sign,
                    ..GadgetSlots::default()
                },
            );
        };
        if over_on && under_on {
            add(GKind::CopyOverOrig);
            add(GKind::OrigOverCopy);
            add(GKind::CopyCopy);
        } else if over_on {
            add(GKind::CopyOverOrig);
        } else if under_on {
            add(GKind::OrigOverCopy);
        }
    }

    let crossing_free = !in_slots.contains_key(&cycle[0]);

    let copy_cycle: Vec<EdgeId>;
    if crossing_free {
        copy_cycle = vec![next_id];
        next_id += 1;
    } else {
        // track edges paralleling each original edge of the cycle
        let fs: Vec<EdgeId> = (0..m)
            .map(|_| {
                let id = next_id;
                next_id += 1;
                id
            })
            .collect();
        let mut walk: Vec<EdgeId> = Vec::new();
        for i in 0..m {
            walk.push(fs[i]);
            let &(xi, role) = in_slots
                .get(&cycle[i])
                .expect("edge on a crossing-bearing component has a terminus");
            let x = &d.crossings[xi];
            let self_crossing = owners[&x.over_in] == ci && owners[&x.under_in] == ci;
            // gadget visits of the copy strand paralleling this passage,
            // in order along the strand
            let visits: Vec<(GKind, Strand)> = match (role, self_crossing) {
                (Strand::Over, true) => {
                    vec![
                        (GKind::CopyCopy, Strand::Over),
                        (GKind::CopyOverOrig, Strand::Over),
                    ]
                }
                (Strand::Under, true) => {
                    vec![
                        (GKind::OrigOverCopy, Strand::Under),
                        (GKind::CopyCopy, Strand::Under),
                    ]
                }
                (Strand::Over, false) => vec![(GKind::CopyOverOrig, Strand::Over)],
                (Strand::Under, false) => vec![(GKind::OrigOverCopy, Strand::Under)],
            };
            let mut cur = fs[i];
            let last = visits.len() - 1;
            for (vi, (kind, side)) in visits.into_iter().enumerate() {
                let output = if vi == last {
                    fs[(i + 1) % m]
                } else {
                    let id = next_id;
                    next_id += 1;
                    walk.push(id);
                    id
                };
                gadgets
                    .get_mut(&(xi, kind))
                    .expect("gadget exists for this passage")
                    .fill(side, cur, output);
                cur = output;
            }
        }
        copy_cycle = walk;
    }

    // insertions along original edges: the original under-strand's exit is
    // crossed by the copy-of-over just after the crossing, the original
    // over-strand's entry by the copy-of-under just before it
    let mut start_ins: BTreeMap<EdgeId, usize> = BTreeMap::new();
    let mut end_ins: BTreeMap<EdgeId, usize> = BTreeMap::new();
    for (xi, x) in d.crossings.iter().enumerate() {
        if owners[&x.over_in] == ci {
            start_ins.insert(x.under_out, xi);
        }
        if owners[&x.under_in] == ci {
            end_ins.insert(x.over_in, xi);
        }
    }
    let mut chain_last: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();
    let comp_count = out.components.len();
    for comp_idx in 0..comp_count {
        let edges = out.components[comp_idx].edges.clone();
        for &e in &edges {
            let mut passages: Vec<(usize, GKind, Strand)> = Vec::new();
            if let Some(&xi) = start_ins.get(&e) {
                passages.push((xi, GKind::CopyOverOrig, Strand::Under));
            }
            if let Some(&xi) = end_ins.get(&e) {
                passages.push((xi, GKind::OrigOverCopy, Strand::Over));
            }
            if passages.is_empty() {
                continue;
            }
            let mut cur = e;
            let mut seg: Vec<EdgeId> = Vec::new();
            for (xi, kind, side) in passages {
                let g = next_id;
                next_id += 1;
                seg.push(g);
                gadgets
                    .get_mut(&(xi, kind))
                    .expect("gadget exists for this insertion")
                    .fill(side, cur, g);
                cur = g;
            }
            // rewire the old terminus of e to the final segment, then put
            // the new segments into the owner's cycle
            let &(ti, ts) = in_slots.get(&e).expect("split edges have termini");
            out.crossings[ti].set_in_edge(ts, cur);
            let pos = out.components[comp_idx]
                .edges
                .iter()
                .position(|&x| x == e)
                .expect("edge in owner cycle");
            out.components[comp_idx]
                .edges
                .splice(pos + 1..pos + 1, seg.iter().copied());
            chain_last.insert(e, cur);
        }
    }

    for ((xi, kind), slots) in &gadgets {
        let _ = (xi, kind);
        out.crossings.push(slots.build()?);
    }

    out.components.push(Component {
        name: copy_name.clone(),
        role: Role::Knot,
        framing: None,
        edges: copy_cycle.clone(),
    });

    // wind until the S³ linking number of (c, copy) equals the framing
    let t = p - w;
    let s = if t >= 0 { 1 } else { -1 };
    let mut cur_c = chain_last.get(&cycle[0]).copied().unwrap_or(cycle[0]);
    let mut cur_copy = copy_cycle[0];
    for _ in 0..t.abs() {
        let (nc, ncopy) = add_twist(&mut out, cur_c, cur_copy, s, &mut next_id);
        cur_c = nc;
        cur_copy = ncopy;
    }

    if orient == -1 {
        reverse_component(&mut out, &copy_name);
    }

    out.validate()
        .map_err(|e| Error::internal(format!("push-off produced an invalid diagram: {e}")))?;
    out.canonicalize();
    Ok((out, copy_name))
}

fn dir_sign(dir: BandDir) -> i32 {
    match dir {
        BandDir::L2R => 1,
        BandDir::R2L => -1,
    }
}

/// Slides knot component `k` over surgery component `c`: forms the push-off
/// for `orient`, then replaces `k` and the copy by their band sum. The two
/// band strands are antiparallel and pass over every edge listed in
/// `band.over`, so their crossings with any component cancel in pairs. The
/// merged component keeps the name `k`.
pub fn band_slide(
    d: &Diagram,
    k: &str,
    c: &str,
    orient: i32,
    band: &BandSpec,
) -> Result<Diagram, Error> {
    let kc = d
        .component(k)
        .ok_or_else(|| Error::validation(format!("unknown component {k}")))?;
    if kc.role != Role::Knot {
        return Err(Error::validation(format!("{k} is not a knot component")));
    }
    if k == c {
        return Err(Error::validation(
            "cannot slide a component over itself".to_string(),
        ));
    }

    let (mut out, copy_name) = push_off(d, c, orient)?;

    let k_edges = out.component(k).expect("survives push-off").edges.clone();
    let copy_edges = out
        .component(&copy_name)
        .expect("just created")
        .edges
        .clone();
    let from_edge = band
        .from_edge
        .unwrap_or_else(|| *k_edges.iter().min().expect("non-empty"));
    let to_edge = band
        .to_edge
        .unwrap_or_else(|| *copy_edges.iter().min().expect("non-empty"));
    if !k_edges.contains(&from_edge) {
        return Err(Error::validation(format!(
            "band start {from_edge} is not an edge of {k}"
        )));
    }
    if !copy_edges.contains(&to_edge) {
        return Err(Error::validation(format!(
            "band end {to_edge} is not an edge of the push-off {copy_name}"
        )));
    }
    let all_edges = out.edge_owners();
    for &(e, _) in &band.over {
        if !all_edges.contains_key(&e) {
            return Err(Error::validation(format!(
                "band passes over unknown edge {e}"
            )));
        }
        if e == from_edge || e == to_edge {
            return Err(Error::validation(format!(
                "band passes over its own attachment edge {e}"
            )));
        }
    }

    let pre_slots = out.in_slots();
    let term_from = pre_slots.get(&from_edge).copied();
    let term_to = pre_slots.get(&to_edge).copied();

    let mut next_id = out.max_edge_id() + 1;
    let mut cur_seg: BTreeMap<EdgeId, EdgeId> = BTreeMap::new();

    // strand from k to the copy, passing over the listed edges in order
    let mut strand_a: Vec<EdgeId> = Vec::new();
    let mut cur_band = from_edge;
    for &(e, dir) in &band.over {
        let seg = cur_seg.get(&e).copied().unwrap_or(e);
        let g = split_edge(&mut out, seg, &mut next_id)?;
        let b_out = next_id;
        next_id += 1;
        out.crossings.push(Crossing {
            over_in: cur_band,
            over_out: b_out,
            under_in: seg,
            under_out: g,
            sign: dir_sign(dir),
        });
        cur_seg.insert(e, g);
        strand_a.push(b_out);
        cur_band = b_out;
    }
    let end_a = cur_band;
    if let Some((xi, s)) = term_to {
        out.crossings[xi].set_in_edge(s, end_a);
    }

    // return strand, antiparallel: same edges in reverse, opposite signs
    let mut strand_b: Vec<EdgeId> = Vec::new();
    let mut cur_band = to_edge;
    for &(e, dir) in band.over.iter().rev() {
        let seg = cur_seg.get(&e).copied().unwrap_or(e);
        let g = split_edge(&mut out, seg, &mut next_id)?;
        let b_out = next_id;
        next_id += 1;
        out.crossings.push(Crossing {
            over_in: cur_band,
            over_out: b_out,
            under_in: seg,
            under_out: g,
            sign: -dir_sign(dir),
        });
        cur_seg.insert(e, g);
        strand_b.push(b_out);
        cur_band = b_out;
    }
    let end_b = cur_band;
    if let Some((xi, s)) = term_from {
        out.crossings[xi].set_in_edge(s, end_b);
    }

    // merge the cycles: k up to the attachment, over to the copy, all the
    // way around it, and back
    let k_cycle = out.component(k).expect("exists").edges.clone();
    let copy_cycle = out.component(&copy_name).expect("exists").edges.clone();
    let i = k_cycle
        .iter()
        .position(|&e| e == from_edge)
        .expect("validated above");
    let j = copy_cycle
        .iter()
        .position(|&e| e == to_edge)
        .expect("validated above");
    let mut merged: Vec<EdgeId> = Vec::new();
    merged.extend_from_slice(&k_cycle[..=i]);
    merged.extend_from_slice(&strand_a);
    merged.extend_from_slice(&copy_cycle[j + 1..]);
    merged.extend_from_slice(&copy_cycle[..=j]);
    merged.extend_from_slice(&strand_b);
    merged.extend_from_slice(&k_cycle[i + 1..]);

    out.components.retain(|c| c.name != copy_name);
    out.component_mut(k).expect("exists").edges = merged;

    // fuse attachment turns: an edge no crossing consumes continues
    // straight into its successor, so the two are one edge
    loop {
        let cycle = out.component(k).expect("exists").edges.clone();
        if cycle.len() <= 1 {
            break;
        }
        let slots = out.in_slots();
        let Some(pos) = cycle.iter().position(|e| !slots.contains_key(e)) else {
            break;
        };
        let x = cycle[pos];
        let y = cycle[(pos + 1) % cycle.len()];
        if let Some(&(xi, s)) = slots.get(&y) {
            out.crossings[xi].set_in_edge(s, x);
        }
        out.component_mut(k)
            .expect("exists")
            .edges
            .retain(|&e| e != y);
    }

    out.validate()
        .map_err(|e| Error::internal(format!("band slide produced an invalid diagram: {e}")))?;
    out.canonicalize();
    Ok(out)
}
