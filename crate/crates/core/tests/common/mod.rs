//! Randomized constructions shared by the integration suites.
//!
//! Diagrams are built to order: pick the linking numbers first, then thread
//! component cycles through the planned crossings. Validity is by
//! construction (every edge consumed and produced exactly once, mutual
//! crossing counts even), and nothing here depends on the code under test.

// index loops mirror the matrix formulas they implement
#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use surlink::diagram::{Component, Crossing, Diagram, Role};
use surlink::homlin::IntMat;

pub fn random_symmetric(rng: &mut impl Rng, n: usize, bound: i64) -> IntMat {
    let mut m = IntMat::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let v = BigInt::from(rng.gen_range(-bound..=bound));
            m.set(i, j, v.clone());
            m.set(j, i, v);
        }
    }
    m
}

/// Product of elementary row operations: unimodular by construction.
pub fn random_unimodular(rng: &mut impl Rng, n: usize, ops: usize) -> IntMat {
    let mut q = IntMat::identity(n);
    for _ in 0..ops {
        match rng.gen_range(0..3u8) {
            0 => {
                let r = rng.gen_range(0..n);
                let s = rng.gen_range(0..n);
                if r != s {
                    let c = BigInt::from(rng.gen_range(-2i64..=2));
                    q.row_sub_mul(r, s, &c);
                }
            }
            1 => {
                let r = rng.gen_range(0..n);
                let s = rng.gen_range(0..n);
                q.swap_rows(r, s);
            }
            _ => {
                let r = rng.gen_range(0..n);
                q.negate_row(r);
            }
        }
    }
    q
}

/// Symmetric singular matrix with a known kernel vector: a random symmetric
/// block bordered by a dependent row and column. Returns (matrix, kernel z).
pub fn bordered_singular(rng: &mut impl Rng, size: usize) -> (IntMat, Vec<BigInt>) {
    assert!(size >= 2);
    let m = size - 1;
    let a = random_symmetric(rng, m, 3);
    let u: Vec<BigInt> = (0..m)
        .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
        .collect();
    let au = a.mul_vec(&u).expect("sizes match");
    let uau: BigInt = u.iter().zip(&au).map(|(x, y)| x * y).sum();
    let mut full = IntMat::zero(size, size);
    for i in 0..m {
        for j in 0..m {
            full.set(i, j, a.get(i, j).clone());
        }
        full.set(i, m, au[i].clone());
        full.set(m, i, au[i].clone());
    }
    full.set(m, m, uau);
    let mut z = u;
    z.push(BigInt::from(-1));
    (full, z)
}

/// A surgery presentation with one tracked knot whose linking vector is
/// solvable by construction (V = M·X for a chosen X).
pub struct DesignedLink {
    pub diagram: Diagram,
    pub x: Vec<i64>,
}

struct Draft {
    sign: i32,
    over_in: i64,
    over_out: i64,
    under_in: i64,
    under_out: i64,
}

/// Component 0 is the knot K, components 1..=n the surgery curves L1..Ln.
pub fn random_solvable_link(rng: &mut impl Rng, n: usize) -> DesignedLink {
    let framings: Vec<i64> = (0..n).map(|_| rng.gen_range(-3i64..=3)).collect();
    let mut lk = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let t = rng.gen_range(-2i64..=2);
            lk[i][j] = t;
            lk[j][i] = t;
        }
    }
    let mut x: Vec<i64> = (0..n).map(|_| rng.gen_range(-2i64..=2)).collect();
    if x.iter().all(|&c| c == 0) {
        x[rng.gen_range(0..n)] = if rng.gen_bool(0.5) { 1 } else { -1 };
    }
    let v: Vec<i64> = (0..n)
        .map(|i| {
            framings[i] * x[i]
                + (0..n)
                    .filter(|&j| j != i)
                    .map(|j| lk[i][j] * x[j])
                    .sum::<i64>()
        })
        .collect();

    // crossing plan: comp 0 is K, comps 1..=n are the surgery curves
    let mut drafts: Vec<Draft> = Vec::new();
    let mut events: Vec<Vec<(usize, bool)>> = vec![Vec::new(); n + 1];
    let add_pair = |drafts: &mut Vec<Draft>,
                    events: &mut Vec<Vec<(usize, bool)>>,
                    a: usize,
                    b: usize,
                    s1: i32,
                    s2: i32| {
        for (over, under, s) in [(a, b, s1), (b, a, s2)] {
            let di = drafts.len();
            drafts.push(Draft {
                sign: s,
                over_in: 0,
                over_out: 0,
                under_in: 0,
                under_out: 0,
            });
            events[over].push((di, true));
            events[under].push((di, false));
        }
    };
    for i in 0..n {
        for j in i + 1..n {
            let t = lk[i][j];
            for _ in 0..t.abs() {
                add_pair(
                    &mut drafts,
                    &mut events,
                    i + 1,
                    j + 1,
                    t.signum() as i32,
                    t.signum() as i32,
                );
            }
            if rng.gen_bool(0.3) {
                add_pair(&mut drafts, &mut events, i + 1, j + 1, 1, -1);
            }
        }
        let t = v[i];
        for _ in 0..t.abs() {
            add_pair(
                &mut drafts,
                &mut events,
                0,
                i + 1,
                t.signum() as i32,
                t.signum() as i32,
            );
        }
        if rng.gen_bool(0.3) {
            add_pair(&mut drafts, &mut events, 0, i + 1, 1, -1);
        }
    }
    // occasional kinks; framing is explicit so the writhe is free
    for c in 0..=n {
        if rng.gen_bool(0.25) {
            let di = drafts.len();
            drafts.push(Draft {
                sign: if rng.gen_bool(0.5) { 1 } else { -1 },
                over_in: 0,
                over_out: 0,
                under_in: 0,
                under_out: 0,
            });
            events[c].push((di, true));
            events[c].push((di, false));
        }
    }

    // thread each component through its events in a random cyclic order
    let mut next_edge = 1i64;
    let mut components = Vec::with_capacity(n + 1);
    for (c, evs) in events.iter_mut().enumerate() {
        evs.shuffle(rng);
        let k = evs.len().max(1);
        let edges: Vec<i64> = (0..k).map(|t| next_edge + t as i64).collect();
        next_edge += k as i64;
        for (t, &(di, over)) in evs.iter().enumerate() {
            let e_in = edges[t];
            let e_out = edges[(t + 1) % k];
            if over {
                drafts[di].over_in = e_in;
                drafts[di].over_out = e_out;
            } else {
                drafts[di].under_in = e_in;
                drafts[di].under_out = e_out;
            }
        }
        let (name, role, framing) = if c == 0 {
            ("K".to_string(), Role::Knot, None)
        } else {
            (format!("L{c}"), Role::Surgery, Some(framings[c - 1]))
        };
        components.push(Component {
            name,
            role,
            framing,
            edges,
        });
    }
    let mut diagram = Diagram {
        components,
        crossings: drafts
            .into_iter()
            .map(|d| Crossing {
                over_in: d.over_in,
                over_out: d.over_out,
                under_in: d.under_in,
                under_out: d.under_out,
                sign: d.sign,
            })
            .collect(),
    };
    diagram.validate().expect("constructed diagram is valid");
    diagram.canonicalize();
    DesignedLink { diagram, x }
}
