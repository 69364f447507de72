//! Bipartite ribbon graphs read off a permutation triple.

use std::fmt::Write;

use super::{genus, PermTriple};

/// Black vertices are cycles of `sigma0`, white vertices cycles of `sigma1`, faces cycles of
/// `sigma_inf`. Point `i` is the edge between the black and white cycles containing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dessin {
    pub black: Vec<Vec<usize>>,
    pub white: Vec<Vec<usize>>,
    pub faces: Vec<Vec<usize>>,
    /// `(black, white)` endpoints of each point.
    pub edges: Vec<(usize, usize)>,
    /// `None` for disconnected input.
    pub genus: Option<u32>,
}

fn orders(cs: &[Vec<usize>]) -> Vec<u32> {
    let mut v: Vec<u32> = cs.iter().map(|c| c.len() as u32).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

fn owner(cycles: &[Vec<usize>], n: usize) -> Vec<usize> {
    let mut own = vec![0; n];
    for (k, c) in cycles.iter().enumerate() {
        for &x in c {
            own[x] = k;
        }
    }
    own
}

impl Dessin {
    pub fn black_orders(&self) -> Vec<u32> {
        orders(&self.black)
    }

    pub fn white_orders(&self) -> Vec<u32> {
        orders(&self.white)
    }

    pub fn face_orders(&self) -> Vec<u32> {
        orders(&self.faces)
    }
}

pub fn dessin(t: &PermTriple) -> Dessin {
    let n = t.degree();
    let black = t.sigma0.cycles();
    let white = t.sigma1.cycles();
    let faces = t.sigma_inf.cycles();
    let (ob, ow) = (owner(&black, n), owner(&white, n));
    let edges = (0..n).map(|i| (ob[i], ow[i])).collect();
    let genus = if t.is_transitive() { genus(t).ok() } else { None };
    Dessin { black, white, faces, edges, genus }
}

fn join_orders(v: &[u32]) -> String {
    v.iter().map(u32::to_string).collect::<Vec<_>>().join("+")
}

/// Graphviz text. Edges around each black vertex are listed in cyclic order.
pub fn emit_dot(d: &Dessin) -> String {
    let mut s = String::from("graph dessin {\n");
    let _ = writeln!(s, "  graph [label=\"faces: {}\"];", join_orders(&d.face_orders()));
    for (k, c) in d.black.iter().enumerate() {
        let _ = writeln!(s, "  black{k} [shape=circle,style=filled,fillcolor=black,fontcolor=white,label=\"{}\"];", c.len());
    }
    for (k, c) in d.white.iter().enumerate() {
        let _ = writeln!(s, "  white{k} [shape=circle,label=\"{}\"];", c.len());
    }
    for c in &d.black {
        for &x in c {
            let (b, w) = d.edges[x];
            let _ = writeln!(s, "  black{b} -- white{w} [label=\"{}\"];", x + 1);
        }
    }
    s.push_str("}\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monodromy::Permutation;

    #[test]
    fn quadratic_dessin() {
        let s = Permutation::from_cycles(2, &[vec![1, 2]]).unwrap();
        let t = PermTriple::new(s.clone(), Permutation::identity(2), s).unwrap();
        let d = dessin(&t);
        assert_eq!(d.black_orders(), vec![2]);
        assert_eq!(d.white_orders(), vec![1, 1]);
        assert_eq!(d.face_orders(), vec![2]);
        assert_eq!(d.edges.len(), 2);
        let dot = emit_dot(&d);
        assert!(dot.contains("black0 -- white1 [label=\"2\"];"));
        assert_eq!(dot, emit_dot(&dessin(&t)));
    }
}
