//! Built-in graphs: ADE families, an elliptic vertex, and two non-elliptic
//! examples with known invariants.

use alloc::format;

use crate::graph::{GraphBuilder, PlumbingGraph};

/// One vertex `a` with the given decoration.
pub fn single(euler: i64, genus: u32) -> PlumbingGraph {
    PlumbingGraph::builder().vertex("a", euler, genus).build().expect("valid for euler <= -1")
}

/// Single vertex with `e = -1`, `g = 1`.
pub fn elliptic() -> PlumbingGraph {
    single(-1, 1).with_name("elliptic")
}

/// Chain `a1 - … - an` of `(-2)`-curves.
pub fn a_n(n: usize) -> PlumbingGraph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new().name(format!("A{n}"));
    for i in 1..=n {
        b.add_vertex(&format!("a{i}"), -2, 0);
    }
    for i in 1..n {
        b.add_edge(&format!("a{i}"), &format!("a{}", i + 1));
    }
    b.build().expect("A_n is negative definite")
}

/// `D_n`, `n ≥ 4`: chain `d1 … d(n-1)` with `dn` attached to `d(n-2)`.
pub fn d_n(n: usize) -> PlumbingGraph {
    assert!(n >= 4);
    let mut b = GraphBuilder::new().name(format!("D{n}"));
    for i in 1..=n {
        b.add_vertex(&format!("d{i}"), -2, 0);
    }
    for i in 1..(n - 1) {
        b.add_edge(&format!("d{i}"), &format!("d{}", i + 1));
    }
    b.add_edge(&format!("d{}", n - 2), &format!("d{n}"));
    b.build().expect("D_n is negative definite")
}

/// `E_6`, `E_7`, `E_8`: chain `e1 … e(n-1)` with `en` attached to `e3`.
pub fn e_n(n: usize) -> PlumbingGraph {
    assert!((6..=8).contains(&n));
    let mut b = GraphBuilder::new().name(format!("E{n}"));
    for i in 1..=n {
        b.add_vertex(&format!("e{i}"), -2, 0);
    }
    for i in 1..(n - 1) {
        b.add_edge(&format!("e{i}"), &format!("e{}", i + 1));
    }
    b.add_edge("e3", &format!("e{n}"));
    b.build().expect("E_n is negative definite")
}

/// A Gorenstein, non-elliptic graph with `min χ = -1`.
///
/// Chain `e1 u1 c1 c2 c3 c4 u2 e2` with weights
/// `-2 -1 -7 -3 -3 -7 -1 -2`, plus `(-3)`-leaves `l1` under `u1` and `l2`
/// under `u2`.
pub fn dpp() -> PlumbingGraph {
    let chain = [("e1", -2), ("u1", -1), ("c1", -7), ("c2", -3), ("c3", -3), ("c4", -7), ("u2", -1), ("e2", -2)];
    let mut b = GraphBuilder::new().name("dpp");
    for (id, e) in chain {
        b.add_vertex(id, e, 0);
    }
    b.add_vertex("l1", -3, 0);
    b.add_vertex("l2", -3, 0);
    for w in chain.windows(2) {
        b.add_edge(w[0].0, w[1].0);
    }
    b.add_edge("u1", "l1");
    b.add_edge("u2", "l2");
    b.build().expect("dpp graph is negative definite")
}

/// Star-shaped family: a node `e0` with `n` arms `e0 - a_i - v_i`, where
/// each `(-1)`-vertex `v_i` carries two leaves `b_i`, `c_i`. Every vertex
/// other than the `v_i` (including `e0`) has weight `-big_n`.
pub fn star(n: usize, big_n: i64) -> PlumbingGraph {
    assert!(n >= 1);
    let mut b = GraphBuilder::new().name(format!("star-{n}-{big_n}"));
    b.add_vertex("e0", -big_n, 0);
    for i in 1..=n {
        b.add_vertex(&format!("a{i}"), -big_n, 0);
        b.add_vertex(&format!("v{i}"), -1, 0);
        b.add_vertex(&format!("b{i}"), -big_n, 0);
        b.add_vertex(&format!("c{i}"), -big_n, 0);
    }
    for i in 1..=n {
        b.add_edge("e0", &format!("a{i}"));
        b.add_edge(&format!("a{i}"), &format!("v{i}"));
        b.add_edge(&format!("v{i}"), &format!("b{i}"));
        b.add_edge(&format!("v{i}"), &format!("c{i}"));
    }
    b.build().expect("star graph is negative definite for large N")
}

/// Looks up an ADE graph by name: `A<n>`, `D<n>`, `E6`, `E7`, `E8` (case-insensitive).
pub fn ade(name: &str) -> Option<PlumbingGraph> {
    let (family, rank) = name.split_at(1.min(name.len()));
    let rank: usize = rank.parse().ok()?;
    match family {
        "A" | "a" if rank >= 1 => Some(a_n(rank)),
        "D" | "d" if rank >= 4 => Some(d_n(rank)),
        "E" | "e" if (6..=8).contains(&rank) => Some(e_n(rank)),
        _ => None,
    }
}
