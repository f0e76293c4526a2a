use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kripke::{Logic, PointedFrame};

/// Parameterized frame families.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FrameFamily {
    /// `n` mutually accessible worlds.
    Cluster(usize),
    /// Reflexive, transitive chain of `n + 1` worlds.
    ReflChain(usize),
    /// Strict transitive chain of `n + 1` worlds.
    IrreflChain(usize),
    /// A root with `k` leaves.
    Fork(usize),
    /// An `n`-cluster seeing one further world; reflexive and transitive.
    F1(usize),
    /// A root with `n` successors; reflexive and transitive.
    F2(usize),
    /// A root, `n` middle worlds and a top world seen by all of them;
    /// reflexive and transitive.
    F3(usize),
    /// Strict transitive frame: chain `t0 → … → tn → sm → … → s1` plus
    /// `k` worlds `u_i` with `t0 → u_i → sm`.
    Fnm { n: usize, m: usize, k: usize },
    /// Worlds `n, n-1, …, 0`, each seeing the next; rooted at `n`.
    AltChain(usize),
}

fn ids(n: usize) -> Vec<String> {
    (0..n).map(|i| i.to_string()).collect()
}

/// Adds all pairs `(a, c)` for `(a, b), (b, c)` until closed.
fn transitive_closure(n: usize, edges: &mut Vec<(usize, usize)>) {
    let mut reach = vec![vec![false; n]; n];
    for &(a, b) in edges.iter() {
        reach[a][b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if reach[i][k] {
                for j in 0..n {
                    if reach[k][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    edges.clear();
    for (i, row) in reach.iter().enumerate() {
        for (j, &r) in row.iter().enumerate() {
            if r {
                edges.push((i, j));
            }
        }
    }
}

fn build(name: &str, worlds: Vec<String>, mut edges: Vec<(usize, usize)>, reflexive: bool, root: usize) -> Result<PointedFrame> {
    let n = worlds.len();
    if reflexive {
        edges.extend((0..n).map(|i| (i, i)));
    }
    transitive_closure(n, &mut edges);
    let named: Vec<(String, String)> = edges
        .into_iter()
        .map(|(a, b)| (worlds[a].clone(), worlds[b].clone()))
        .collect();
    PointedFrame::new(name, &worlds, &named, &worlds[root])
}

fn need(ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParams(what.to_string()))
    }
}

/// The frame of the given family, with reflexive and transitive edges
/// added where the family calls for them.
pub fn make_frame(family: FrameFamily) -> Result<PointedFrame> {
    let name = family.to_string();
    match family {
        FrameFamily::Cluster(n) => {
            need(n >= 1, "a cluster needs at least one world")?;
            let edges = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            build(&name, ids(n), edges, true, 0)
        }
        FrameFamily::ReflChain(n) => build(&name, ids(n + 1), (1..=n).map(|i| (i - 1, i)).collect(), true, 0),
        FrameFamily::IrreflChain(n) => build(&name, ids(n + 1), (1..=n).map(|i| (i - 1, i)).collect(), false, 0),
        FrameFamily::Fork(k) => build(&name, ids(k + 1), (1..=k).map(|i| (0, i)).collect(), false, 0),
        FrameFamily::F1(n) => {
            need(n >= 1, "f1 needs a nonempty cluster")?;
            let mut worlds = ids(n);
            worlds.push("b".into());
            let mut edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
            edges.push((0, n));
            build(&name, worlds, edges, true, 0)
        }
        FrameFamily::F2(n) => build(&name, ids(n + 1), (1..=n).map(|i| (0, i)).collect(), true, 0),
        FrameFamily::F3(n) => {
            let mut worlds = ids(n + 1);
            worlds.push("t".into());
            let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
            edges.extend((1..=n).map(|i| (i, n + 1)));
            build(&name, worlds, edges, true, 0)
        }
        FrameFamily::Fnm { n, m, k } => {
            need(m >= 1, "f_nm needs m ≥ 1")?;
            // t0..tn, then sm..s1, then u0..u(k-1)
            let mut worlds: Vec<String> = (0..=n).map(|i| format!("t{i}")).collect();
            worlds.extend((1..=m).rev().map(|i| format!("s{i}")));
            worlds.extend((0..k).map(|i| format!("u{i}")));
            let chain = n + 1 + m;
            let mut edges: Vec<(usize, usize)> = (1..chain).map(|i| (i - 1, i)).collect();
            let sm = n + 1;
            for u in chain..chain + k {
                edges.push((0, u));
                edges.push((u, sm));
            }
            build(&name, worlds, edges, false, 0)
        }
        FrameFamily::AltChain(n) => {
            let worlds = ids(n + 1);
            let edges: Vec<(String, String)> = (1..=n).map(|i| (i.to_string(), (i - 1).to_string())).collect();
            PointedFrame::new(&name, &worlds, &edges, &n.to_string())
        }
    }
}

impl fmt::Display for FrameFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameFamily::Cluster(n) => write!(f, "cluster{n}"),
            FrameFamily::ReflChain(n) => write!(f, "rchain{n}"),
            FrameFamily::IrreflChain(n) => write!(f, "chain{n}"),
            FrameFamily::Fork(k) => write!(f, "fork{k}"),
            FrameFamily::F1(n) => write!(f, "f1_{n}"),
            FrameFamily::F2(n) => write!(f, "f2_{n}"),
            FrameFamily::F3(n) => write!(f, "f3_{n}"),
            FrameFamily::Fnm { n, m, k } => write!(f, "fnm_{n}_{m}_{k}"),
            FrameFamily::AltChain(n) => write!(f, "alt{n}"),
        }
    }
}

/// Parses `name(a,b,…)`, e.g. `fork(3)` or `f_nm(1,2,2)`.
impl FromStr for FrameFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<FrameFamily> {
        let bad = || Error::InvalidParams(format!("unknown frame family `{s}`"));
        let (name, rest) = s.trim().split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|a| a.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Ok(match (name.trim(), nums.as_slice()) {
            ("cluster", [n]) => FrameFamily::Cluster(*n),
            ("refl_chain", [n]) => FrameFamily::ReflChain(*n),
            ("irrefl_chain", [n]) => FrameFamily::IrreflChain(*n),
            ("fork", [k]) => FrameFamily::Fork(*k),
            ("f1", [n]) => FrameFamily::F1(*n),
            ("f2", [n]) => FrameFamily::F2(*n),
            ("f3", [n]) => FrameFamily::F3(*n),
            ("f_nm", [n, m, k]) => FrameFamily::Fnm { n: *n, m: *m, k: *k },
            ("alt_chain", [n]) => FrameFamily::AltChain(*n),
            _ => return Err(bad()),
        })
    }
}

/// Built-in logics.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogicName {
    /// Clusters of sizes `1..=n`.
    Eq(usize),
    /// Strict chains of lengths `0..=n`.
    Lo(usize),
    /// The 3-leaf fork at its root, quasi-normal.
    L13,
    /// The `k`-leaf fork at its root, quasi-normal.
    Fork(usize),
}

impl FromStr for LogicName {
    type Err = Error;

    /// `EQ2`, `LO3`, `L13`, `FORK2` (case-insensitive).
    fn from_str(s: &str) -> Result<LogicName> {
        let bad = || Error::InvalidParams(format!("unknown logic `{s}`"));
        let up = s.trim().to_ascii_uppercase();
        if up == "L13" {
            return Ok(LogicName::L13);
        }
        let num = |prefix: &str| -> Option<usize> { up.strip_prefix(prefix)?.parse().ok() };
        if let Some(n) = num("EQ") {
            Ok(LogicName::Eq(n))
        } else if let Some(n) = num("LO") {
            Ok(LogicName::Lo(n))
        } else if let Some(k) = num("FORK") {
            Ok(LogicName::Fork(k))
        } else {
            Err(bad())
        }
    }
}

/// The logic with the given name.
pub fn make_logic(name: LogicName) -> Result<Logic> {
    match name {
        LogicName::Eq(n) => {
            need(n >= 1, "EQ(n) needs n ≥ 1")?;
            let frames = (1..=n)
                .map(|i| make_frame(FrameFamily::Cluster(i)))
                .collect::<Result<Vec<_>>>()?;
            Logic::new(&format!("EQ{n}"), frames, true)
        }
        LogicName::Lo(n) => {
            need(n >= 1, "LO(n) needs n ≥ 1")?;
            let frames = (0..=n)
                .map(|i| make_frame(FrameFamily::IrreflChain(i)))
                .collect::<Result<Vec<_>>>()?;
            Logic::new(&format!("LO{n}"), frames, true)
        }
        LogicName::L13 => Ok(Logic::singleton(make_frame(FrameFamily::Fork(3))?).renamed("L13")),
        LogicName::Fork(k) => {
            need(k >= 1, "FORK(k) needs k ≥ 1")?;
            Ok(Logic::singleton(make_frame(FrameFamily::Fork(k))?).renamed(&format!("FORK{k}")))
        }
    }
}
