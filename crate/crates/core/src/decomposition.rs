//! Splits the full meander's vertices into one component per homotopy-type
//! entry, cuts each component into consecutive blocks of its size, and reads
//! off the core blocks `I x I` and the oriented peak blocks `I x J`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SeaweedError, Side};
use crate::meander::{self, Meander};
use crate::seaweed::SeaweedDescriptor;
use crate::winding;

/// Consecutive vertices `start..start + len`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct VertexBlock {
    pub start: usize,
    pub len: usize,
}

impl VertexBlock {
    pub fn end(&self) -> usize {
        self.start + self.len - 1
    }

    pub fn contains(&self, v: usize) -> bool {
        (self.start..=self.end()).contains(&v)
    }

    pub fn vertices(&self) -> impl Iterator<Item = usize> {
        self.start..self.start + self.len
    }
}

impl fmt::Display for VertexBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.len == 1 {
            write!(f, "{{{}}}", self.start)
        } else {
            write!(f, "{{{}..{}}}", self.start, self.end())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentRole {
    Tail,
    Aftertail,
    Deleted,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompComponent {
    pub role: ComponentRole,
    pub size: usize,
    pub half_vertices: BTreeSet<usize>,
    pub full_vertices: BTreeSet<usize>,
    pub blocks: Vec<VertexBlock>,
}

impl DecompComponent {
    pub fn block_of(&self, v: usize) -> Option<VertexBlock> {
        self.blocks.iter().copied().find(|b| b.contains(v))
    }
}

/// `I x J` for an edge `I -> J` of the oriented component meander.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PeakEdge {
    pub source: VertexBlock,
    pub target: VertexBlock,
    pub side: Side,
}

impl PeakEdge {
    /// `(i_r, j_r)` pairing the blocks' vertices in ascending order.
    pub fn diagonal(&self) -> impl Iterator<Item = (usize, usize)> {
        self.source.vertices().zip(self.target.vertices())
    }
}

fn cut_into_blocks(vertices: &BTreeSet<usize>, size: usize) -> Result<Vec<VertexBlock>> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for &v in vertices {
        match runs.last_mut() {
            Some((start, len)) if *start + *len == v => *len += 1,
            _ => runs.push((v, 1)),
        }
    }
    let mut blocks = Vec::new();
    for (start, len) in runs {
        if len % size != 0 {
            return Err(SeaweedError::Inconsistent(format!(
                "run of {len} vertices from {start} is not a multiple of component size {size}"
            )));
        }
        blocks.extend((0..len / size).map(|k| VertexBlock {
            start: start + k * size,
            len: size,
        }));
    }
    Ok(blocks)
}

/// Components in the order: deletions (signature order), blue terminal
/// blocks (left to right), then the aftertail component if present.
pub fn decompose(d: &SeaweedDescriptor) -> Result<Vec<DecompComponent>> {
    let n = d.n();
    let size = d.matrix_size();
    let with_mirrors =
        |half: &BTreeSet<usize>| half.iter().flat_map(|&v| [v, size + 1 - v]).collect::<BTreeSet<_>>();

    let mut out = Vec::new();
    let mut push = |role, size: usize, half_vertices: BTreeSet<usize>, full_vertices| -> Result<()> {
        let blocks = cut_into_blocks(&full_vertices, size)?;
        out.push(DecompComponent {
            role,
            size,
            half_vertices,
            full_vertices,
            blocks,
        });
        Ok(())
    };

    for record in winding::deletion_records(d)? {
        let full = with_mirrors(&record.vertices);
        push(ComponentRole::Deleted, record.size, record.vertices, full)?;
    }

    let terminal = winding::terminal_blocks(d);
    for block in terminal.blue {
        let full = with_mirrors(&block.vertices);
        push(ComponentRole::Tail, block.size, block.vertices, full)?;
    }

    let half: BTreeSet<usize> = terminal.aftertail.into_iter().flatten().collect();
    if !half.is_empty() {
        let red = 2 * half.len();
        let central: BTreeSet<usize> = (n + 1 - half.len()..=n + half.len()).collect();
        if with_mirrors(&half) != central {
            return Err(SeaweedError::Inconsistent(format!(
                "aftertail classes {half:?} are not the central interval"
            )));
        }
        push(ComponentRole::Aftertail, red, half, central)?;
    }

    let covered: usize = out.iter().map(|c| c.blocks.len() * c.size).sum();
    if covered != size {
        return Err(SeaweedError::Inconsistent(format!(
            "decomposition covers {covered} of {size} vertices"
        )));
    }
    Ok(out)
}

pub fn core_set(comp: &DecompComponent) -> Vec<(VertexBlock, VertexBlock)> {
    comp.blocks.iter().map(|&b| (b, b)).collect()
}

/// Peak edges of one component. Top arcs run from the higher block to the
/// lower, bottom arcs from the lower block to the higher; arcs inside one
/// block contribute nothing. Aftertail components have no peaks.
pub fn peak_set(comp: &DecompComponent, full: &Meander) -> Result<Vec<PeakEdge>> {
    if comp.role == ComponentRole::Aftertail {
        return Ok(Vec::new());
    }
    let mut edges: BTreeMap<(VertexBlock, VertexBlock), (VertexBlock, Side)> = BTreeMap::new();
    let sides = [(Side::Top, &full.top_arcs), (Side::Bottom, &full.bottom_arcs)];
    for (side, arcs) in sides {
        for &(lo, hi) in arcs {
            let (Some(a), Some(b)) = (comp.block_of(lo), comp.block_of(hi)) else {
                continue;
            };
            if a == b {
                continue;
            }
            let source = if side == Side::Top { b } else { a };
            let key = (a.min(b), a.max(b));
            match edges.get(&key) {
                Some(&(s, sd)) if s != source || sd != side => {
                    return Err(SeaweedError::Inconsistent(format!(
                        "blocks {} and {} are joined by arcs of mixed side or direction",
                        key.0, key.1
                    )));
                }
                _ => {
                    edges.insert(key, (source, side));
                }
            }
        }
    }
    let mut peaks: Vec<PeakEdge> = edges
        .into_iter()
        .map(|((a, b), (source, side))| PeakEdge {
            source,
            target: if source == a { b } else { a },
            side,
        })
        .collect();
    peaks.sort();
    Ok(peaks)
}

/// Everything downstream needs about one component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentBlocks {
    pub component: DecompComponent,
    pub core: Vec<(VertexBlock, VertexBlock)>,
    pub peaks: Vec<PeakEdge>,
}

pub fn component_blocks(d: &SeaweedDescriptor) -> Result<Vec<ComponentBlocks>> {
    let full = meander::build_full_meander(d);
    decompose(d)?
        .into_iter()
        .map(|component| {
            Ok(ComponentBlocks {
                core: core_set(&component),
                peaks: peak_set(&component, &full)?,
                component,
            })
        })
        .collect()
}
