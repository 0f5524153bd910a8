//! Winding-down of a fractional form `top / bottom` by the five moves
//! P, B, R, C(c), F, with tracking of which original vertices each live
//! position stands for.
//!
//! Positions are folded as follows when `a1 >= b1`: with
//! `d = min(b1, a1 - b1)`, position `i` is merged into position `a1 + 1 - i`
//! for `i = 1..=d` and the first `d` positions are dropped. `C(c)` deletes the
//! first `c` positions outright and `F` only swaps the two rows.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SeaweedError};
use crate::meander;
use crate::seaweed::SeaweedDescriptor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MoveTag {
    /// Pure contraction, `a1 > 2 b1`.
    P,
    /// Block elimination, `a1 = 2 b1`.
    B,
    /// Rotation contraction, `b1 < a1 < 2 b1`.
    R,
    /// Component deletion, `a1 = b1`.
    C,
    /// Flip, `a1 < b1` (or an empty top).
    F,
}

/// A move with the parameter in force when it was applied: `b1` for P and B,
/// `a1 - b1` for R, `c` for C, `b1` for F.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    pub tag: MoveTag,
    pub parameter: usize,
}

impl Move {
    /// Positions that disappear under this move.
    pub fn class_loss(&self) -> usize {
        match self.tag {
            MoveTag::F => 0,
            _ => self.parameter,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.tag {
            MoveTag::P => f.write_str("P"),
            MoveTag::B => f.write_str("B"),
            MoveTag::R => f.write_str("R"),
            MoveTag::C => write!(f, "C({})", self.parameter),
            MoveTag::F => f.write_str("F"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature(pub Vec<Move>);

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|m| write!(f, "{m}"))
    }
}

/// Live positions of a partially wound meander; `classes[k]` holds the
/// original vertices identified into position `k + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FractionalForm {
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub classes: Vec<BTreeSet<usize>>,
}

impl FractionalForm {
    pub fn from_descriptor(d: &SeaweedDescriptor) -> Self {
        Self {
            top: d.top().parts().to_vec(),
            bottom: d.bottom().parts().to_vec(),
            classes: (1..=d.n()).map(|v| BTreeSet::from([v])).collect(),
        }
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn is_terminal(&self) -> bool {
        self.bottom.is_empty()
    }

    /// The seaweed whose meander this form describes, or `None` once every
    /// position is gone.
    pub fn residual_descriptor(&self) -> Option<SeaweedDescriptor> {
        if self.classes.is_empty() {
            return None;
        }
        SeaweedDescriptor::new(self.classes.len(), self.top.clone(), self.bottom.clone()).ok()
    }

    fn fold(&mut self, a1: usize, d: usize) {
        for i in 0..d {
            let merged = std::mem::take(&mut self.classes[i]);
            self.classes[a1 - 1 - i].extend(merged);
        }
        self.classes.drain(..d);
    }

    /// Applies the single move dictated by `a1` versus `b1`; `None` when the
    /// bottom is already empty. When `a1 = b1` and the deletion would be
    /// followed at once by a flip, the flip is taken first.
    pub fn wind_step(&self) -> Option<(Move, FractionalForm)> {
        if self.is_terminal() {
            return None;
        }
        let mut next = self.clone();
        let b1 = self.bottom[0];
        let Some(&a1) = self.top.first().filter(|&&a1| a1 >= b1) else {
            std::mem::swap(&mut next.top, &mut next.bottom);
            return Some((Move { tag: MoveTag::F, parameter: b1 }, next));
        };
        let mv = if a1 == b1 {
            if self.bottom.len() > 1 && self.top.get(1).map_or(true, |&a2| a2 < self.bottom[1]) {
                std::mem::swap(&mut next.top, &mut next.bottom);
                return Some((Move { tag: MoveTag::F, parameter: b1 }, next));
            }
            next.classes.drain(..a1);
            next.top.remove(0);
            next.bottom.remove(0);
            return Some((Move { tag: MoveTag::C, parameter: a1 }, next));
        } else if a1 > 2 * b1 {
            next.top.splice(0..1, [a1 - 2 * b1, b1]);
            next.bottom.remove(0);
            Move { tag: MoveTag::P, parameter: b1 }
        } else if a1 == 2 * b1 {
            next.top[0] = b1;
            next.bottom.remove(0);
            Move { tag: MoveTag::B, parameter: b1 }
        } else {
            next.top[0] = b1;
            next.bottom[0] = 2 * b1 - a1;
            Move { tag: MoveTag::R, parameter: a1 - b1 }
        };
        next.fold(a1, b1.min(a1 - b1));
        Some((mv, next))
    }
}

impl fmt::Display for FractionalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |parts: &[usize]| {
            if parts.is_empty() {
                "-".to_string()
            } else {
                parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|")
            }
        };
        write!(f, "{} / {}", show(&self.top), show(&self.bottom))
    }
}

/// Every intermediate form of a winding-down, starting with the initial one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindingTrace {
    pub forms: Vec<FractionalForm>,
    pub moves: Vec<Move>,
}

impl WindingTrace {
    pub fn terminal(&self) -> &FractionalForm {
        self.forms.last().expect("trace always holds the initial form")
    }
}

pub fn wind_down(d: &SeaweedDescriptor) -> WindingTrace {
    let mut forms = vec![FractionalForm::from_descriptor(d)];
    let mut moves = Vec::new();
    while let Some((mv, next)) = forms.last().and_then(FractionalForm::wind_step) {
        moves.push(mv);
        forms.push(next);
    }
    WindingTrace { forms, moves }
}

pub fn signature(d: &SeaweedDescriptor) -> Signature {
    Signature(wind_down(d).moves)
}

/// `H_C(deleted..., blue..., red)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HomotopyType {
    pub deleted: Vec<usize>,
    pub blue: Vec<usize>,
    pub red: usize,
}

impl fmt::Display for HomotopyType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[usize]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "H_C({}; {}; {})", list(&self.deleted), list(&self.blue), self.red)
    }
}

pub fn homotopy_type_of(trace: &WindingTrace) -> HomotopyType {
    let deleted = trace
        .moves
        .iter()
        .filter(|m| m.tag == MoveTag::C)
        .map(|m| m.parameter)
        .collect();
    let last = trace.terminal();
    let blue_total: usize = last.top.iter().sum();
    HomotopyType {
        deleted,
        blue: last.top.clone(),
        red: 2 * (last.class_count() - blue_total),
    }
}

pub fn homotopy_type(d: &SeaweedDescriptor) -> HomotopyType {
    homotopy_type_of(&wind_down(d))
}

pub fn index_via_homotopy(h: &HomotopyType) -> usize {
    h.deleted.iter().sum::<usize>() + h.blue.iter().map(|c| c / 2).sum::<usize>() + h.red / 2
}

/// The four index-one homotopy types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum IndexOneCase {
    /// Blue 1s with a single blue 2.
    #[serde(rename = "1a")]
    BlueTwo,
    /// Blue 1s with a single blue 3.
    #[serde(rename = "1b")]
    BlueThree,
    /// Blue 1s and red 2.
    #[serde(rename = "2")]
    RedTwo,
    /// One deleted 1 followed by blue 1s.
    #[serde(rename = "3")]
    DeletedOne,
}

impl IndexOneCase {
    pub fn label(&self) -> &'static str {
        match self {
            IndexOneCase::BlueTwo => "1a",
            IndexOneCase::BlueThree => "1b",
            IndexOneCase::RedTwo => "2",
            IndexOneCase::DeletedOne => "3",
        }
    }
}

impl fmt::Display for IndexOneCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub fn classify_index_one(h: &HomotopyType) -> Option<IndexOneCase> {
    let others: Vec<usize> = h.blue.iter().copied().filter(|&c| c != 1).collect();
    match (h.deleted.as_slice(), others.as_slice(), h.red) {
        ([], [2], 0) => Some(IndexOneCase::BlueTwo),
        ([], [3], 0) => Some(IndexOneCase::BlueThree),
        ([], [], 2) => Some(IndexOneCase::RedTwo),
        ([1], [], 0) => Some(IndexOneCase::DeletedOne),
        _ => None,
    }
}

/// Original vertices removed by one `C(c)` move.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeletionRecord {
    /// Position of the move in the signature.
    pub move_index: usize,
    pub vertices: BTreeSet<usize>,
    pub size: usize,
}

/// A terminal top block and the original vertices its positions stand for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalBlock {
    pub size: usize,
    pub vertices: BTreeSet<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalPartition {
    pub blue: Vec<TerminalBlock>,
    /// Leftover positions beyond the blue blocks.
    pub aftertail: Vec<BTreeSet<usize>>,
}

/// Replays the winding and reports each deleted vertex set. Fails if a
/// deleted set is not a union of whole half-meander components.
pub fn deletion_records(d: &SeaweedDescriptor) -> Result<Vec<DeletionRecord>> {
    let trace = wind_down(d);
    let comps = meander::components(&meander::build_meander(d));
    let mut records = Vec::new();
    for (k, mv) in trace.moves.iter().enumerate() {
        if mv.tag != MoveTag::C {
            continue;
        }
        let vertices: BTreeSet<usize> =
            trace.forms[k].classes[..mv.parameter].iter().flatten().copied().collect();
        for c in &comps {
            let inside = c.vertices.iter().filter(|v| vertices.contains(v)).count();
            if inside != 0 && inside != c.vertices.len() {
                return Err(SeaweedError::Inconsistent(format!(
                    "C({}) at step {} splits the component {:?}",
                    mv.parameter, k, c.vertices
                )));
            }
        }
        records.push(DeletionRecord {
            move_index: k,
            vertices,
            size: mv.parameter,
        });
    }
    Ok(records)
}

pub fn terminal_blocks(d: &SeaweedDescriptor) -> TerminalPartition {
    let trace = wind_down(d);
    let last = trace.terminal();
    let mut classes = last.classes.iter();
    let blue = last
        .top
        .iter()
        .map(|&size| TerminalBlock {
            size,
            vertices: classes.by_ref().take(size).flatten().copied().collect(),
        })
        .collect();
    TerminalPartition {
        blue,
        aftertail: classes.cloned().collect(),
    }
}
