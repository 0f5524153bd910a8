//! Half and full meanders, their components, and the combinatorial index
//! `2 * cycles + (paths with 0 or 2 distinct tail endpoints)`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::seaweed::SeaweedDescriptor;

/// Vertices `1..=vertex_count` on a line with non-crossing top and bottom
/// arcs. Each vertex carries at most one arc per side.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meander {
    pub vertex_count: usize,
    /// Arcs as `(low, high)`, sorted.
    pub top_arcs: Vec<(usize, usize)>,
    pub bottom_arcs: Vec<(usize, usize)>,
    pub tail: BTreeSet<usize>,
    pub aftertail: BTreeSet<usize>,
}

/// Nested arcs `{l+t, r-t}` inside each consecutive block of `parts`,
/// starting at vertex `first`.
pub fn block_arcs(parts: &[usize], first: usize) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    let mut lo = first;
    for &p in parts {
        let hi = lo + p - 1;
        for t in 0..p / 2 {
            arcs.push((lo + t, hi - t));
        }
        lo += p;
    }
    arcs.sort_unstable();
    arcs
}

impl Meander {
    /// A meander with no tail data, as used for residual fractional forms.
    pub fn from_parts(vertex_count: usize, top: &[usize], bottom: &[usize]) -> Self {
        Self {
            vertex_count,
            top_arcs: block_arcs(top, 1),
            bottom_arcs: block_arcs(bottom, 1),
            tail: BTreeSet::new(),
            aftertail: BTreeSet::new(),
        }
    }

    fn partners(&self, arcs: &[(usize, usize)]) -> Vec<Option<usize>> {
        let mut partner = vec![None; self.vertex_count + 1];
        for &(a, b) in arcs {
            partner[a] = Some(b);
            partner[b] = Some(a);
        }
        partner
    }

    pub fn top_partners(&self) -> Vec<Option<usize>> {
        self.partners(&self.top_arcs)
    }

    pub fn bottom_partners(&self) -> Vec<Option<usize>> {
        self.partners(&self.bottom_arcs)
    }

    pub fn degree(&self, v: usize) -> usize {
        let on = |arcs: &[(usize, usize)]| arcs.iter().filter(|&&(a, b)| a == v || b == v).count();
        on(&self.top_arcs) + on(&self.bottom_arcs)
    }

    /// Arcs with their orientation: top arcs run from the higher vertex to
    /// the lower, bottom arcs from the lower to the higher.
    pub fn oriented_edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = self
            .top_arcs
            .iter()
            .map(|&(a, b)| (b, a))
            .chain(self.bottom_arcs.iter().copied())
            .collect();
        edges.sort_unstable();
        edges
    }
}

/// `T_a = {i : sum(a) < i <= n}`; tail is the symmetric difference of the two
/// such sets, aftertail their intersection.
fn tails(d: &SeaweedDescriptor) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let n = d.n();
    let ta: BTreeSet<usize> = (d.top().total() + 1..=n).collect();
    let tb: BTreeSet<usize> = (d.bottom().total() + 1..=n).collect();
    (
        ta.symmetric_difference(&tb).copied().collect(),
        ta.intersection(&tb).copied().collect(),
    )
}

pub fn build_meander(d: &SeaweedDescriptor) -> Meander {
    let (tail, aftertail) = tails(d);
    Meander {
        vertex_count: d.n(),
        top_arcs: block_arcs(d.top().parts(), 1),
        bottom_arcs: block_arcs(d.bottom().parts(), 1),
        tail,
        aftertail,
    }
}

pub fn build_full_meander(d: &SeaweedDescriptor) -> Meander {
    let size = d.matrix_size();
    let (top, bottom) = d.full_compositions();
    let (tail, aftertail) = tails(d);
    let mirror = |set: BTreeSet<usize>| -> BTreeSet<usize> {
        set.iter().flat_map(|&v| [v, size + 1 - v]).collect()
    };
    Meander {
        vertex_count: size,
        top_arcs: block_arcs(top.parts(), 1),
        bottom_arcs: block_arcs(bottom.parts(), 1),
        tail: mirror(tail),
        aftertail: mirror(aftertail),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Cycle,
    Path,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentInfo {
    pub vertices: Vec<usize>,
    pub kind: ComponentKind,
    /// Degree-at-most-one vertices; an isolated vertex is its own single endpoint.
    pub endpoints: Vec<usize>,
    /// Distinct endpoints lying in the tail.
    pub tail_endpoint_count: usize,
}

impl ComponentInfo {
    /// Counts toward the `P~` term of the index formula.
    pub fn is_index_path(&self) -> bool {
        self.kind == ComponentKind::Path && self.tail_endpoint_count != 1
    }
}

/// Connected components ordered by smallest vertex.
pub fn components(m: &Meander) -> Vec<ComponentInfo> {
    let top = m.top_partners();
    let bottom = m.bottom_partners();
    let mut seen = vec![false; m.vertex_count + 1];
    let mut out = Vec::new();
    for start in 1..=m.vertex_count {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        let mut vertices = Vec::new();
        seen[start] = true;
        while let Some(v) = stack.pop() {
            vertices.push(v);
            for w in [top[v], bottom[v]].into_iter().flatten() {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        vertices.sort_unstable();
        let degree = |v: usize| top[v].is_some() as usize + bottom[v].is_some() as usize;
        let endpoints: Vec<usize> = vertices.iter().copied().filter(|&v| degree(v) <= 1).collect();
        let kind = if endpoints.is_empty() {
            ComponentKind::Cycle
        } else {
            ComponentKind::Path
        };
        let tail_endpoint_count = endpoints.iter().filter(|v| m.tail.contains(v)).count();
        out.push(ComponentInfo {
            vertices,
            kind,
            endpoints,
            tail_endpoint_count,
        });
    }
    out
}

/// Index from the component census of a meander (with its tail).
pub fn index_of_meander(m: &Meander) -> usize {
    components(m)
        .iter()
        .map(|c| match c.kind {
            ComponentKind::Cycle => 2,
            ComponentKind::Path if c.is_index_path() => 1,
            ComponentKind::Path => 0,
        })
        .sum()
}

pub fn index_via_meander(d: &SeaweedDescriptor) -> usize {
    index_of_meander(&build_meander(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(text: &str) -> SeaweedDescriptor {
        text.parse().unwrap()
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn tails_of_worked_examples() {
        let m = build_meander(&d("C16 2|3 / 1|6"));
        assert_eq!(m.tail, set(&[6, 7]));
        assert_eq!(m.aftertail, set(&[8]));

        let m = build_meander(&d("C36 5|10 / 2|4|3|1|1"));
        assert_eq!(m.tail, set(&[12, 13, 14, 15]));
        assert_eq!(m.aftertail, set(&[16, 17, 18]));

        let m = build_meander(&d("C2 - / -"));
        assert!(m.tail.is_empty());
        assert_eq!(m.aftertail, set(&[1]));
        assert!(m.top_arcs.is_empty() && m.bottom_arcs.is_empty());
    }

    #[test]
    fn half_meander_arcs_of_c16() {
        let m = build_meander(&d("C16 2|3 / 1|6"));
        assert_eq!(m.top_arcs, vec![(1, 2), (3, 5)]);
        assert_eq!(m.bottom_arcs, vec![(2, 7), (3, 6), (4, 5)]);
    }

    #[test]
    fn full_meander_of_c14() {
        let m = build_full_meander(&d("C14 7 / 1|2"));
        assert_eq!(m.top_arcs, vec![(1, 7), (2, 6), (3, 5), (8, 14), (9, 13), (10, 12)]);
        assert_eq!(m.bottom_arcs, vec![(2, 3), (4, 11), (5, 10), (6, 9), (7, 8), (12, 13)]);
    }

    #[test]
    fn full_meander_central_arcs() {
        let m = build_full_meander(&d("C16 2|3 / 1|6"));
        assert!(m.bottom_arcs.contains(&(8, 9)));
        assert_eq!(m.aftertail, set(&[8, 9]));
        let m = build_full_meander(&d("C2 - / -"));
        assert_eq!(m.top_arcs, vec![(1, 2)]);
        assert_eq!(m.bottom_arcs, vec![(1, 2)]);
    }

    #[test]
    fn components_of_c36() {
        let comps = components(&build_meander(&d("C36 5|10 / 2|4|3|1|1")));
        let find = |v: usize| comps.iter().find(|c| c.vertices.contains(&v)).unwrap();
        assert_eq!(find(1).vertices, vec![1, 2, 4, 5]);
        assert_eq!(find(1).kind, ComponentKind::Cycle);
        for (v, members, tails) in [
            (10, vec![10, 11], 0),
            (16, vec![16], 0),
            (17, vec![17], 0),
            (18, vec![18], 0),
            (13, vec![8, 13], 1),
            (15, vec![3, 6, 15], 1),
            (14, vec![7, 9, 12, 14], 2),
        ] {
            let c = find(v);
            assert_eq!(c.vertices, members);
            assert_eq!(c.kind, ComponentKind::Path);
            assert_eq!(c.tail_endpoint_count, tails, "component of v{v}");
        }
        assert_eq!(comps.len(), 8);
    }

    #[test]
    fn isolated_vertex_is_a_path() {
        let m = Meander::from_parts(1, &[], &[]);
        let comps = components(&m);
        assert_eq!(comps[0].kind, ComponentKind::Path);
        assert_eq!(comps[0].endpoints, vec![1]);
    }

    #[test]
    fn full_meander_cycle_of_c14() {
        let comps = components(&build_full_meander(&d("C14 7 / 1|2")));
        let cycles: Vec<_> = comps.iter().filter(|c| c.kind == ComponentKind::Cycle).collect();
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].vertices, vec![2, 3, 5, 6, 9, 10, 12, 13]);
    }

    #[test]
    fn index_examples() {
        assert_eq!(index_via_meander(&d("C36 5|10 / 2|4|3|1|1")), 7);
        assert_eq!(index_via_meander(&d("C12 3|2|1 / 1|3")), 1);
        assert_eq!(index_via_meander(&d("C2 - / -")), 1);
        assert_eq!(index_via_meander(&d("C16 2|3 / 1|6")), 1);
        assert_eq!(index_via_meander(&d("C14 7 / 1|2")), 1);
    }

    #[test]
    fn oriented_edges_follow_side() {
        let m = build_full_meander(&d("C2 - / -"));
        assert_eq!(m.oriented_edges(), vec![(1, 2), (2, 1)]);
    }
}
