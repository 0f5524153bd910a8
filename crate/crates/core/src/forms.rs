//! Regular one-forms built from core and peak blocks, and the contact forms
//! with their kernel generators on index-one seaweeds.
//!
//! Dot rules, all restricted to `i + j <= 2n + 1`:
//! * tail component of size `c`: a triangle of height `floor(c/2)` in the
//!   upper-left corner of each core block, plus the diagonal of each peak;
//! * aftertail component of size `c`: a triangle of height `c/2` in its one
//!   core block;
//! * deleted component of size `c`: every core-block entry on or above the
//!   block antidiagonal, plus the diagonal of each peak.
//!
//! A triangle of height `h` is the set of local positions `(r, s)`, 1-based,
//! with `r + s <= h + 1`.

use std::collections::BTreeMap;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::decomposition::{self, ComponentRole, VertexBlock};
use crate::error::{Result, SeaweedError};
use crate::meander::{self, ComponentKind};
use crate::seaweed::{AlgebraElement, MatrixLocation, OneForm, Rational, SeaweedDescriptor};
use crate::winding::{self, IndexOneCase};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DotRole {
    Core,
    Peak,
}

/// Where a summand came from: component index in the decomposition and the
/// kind of block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DotPlacement {
    pub location: MatrixLocation,
    pub component: usize,
    pub role: DotRole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularForm {
    pub form: OneForm,
    /// One entry per summand, sorted by location.
    pub dots: Vec<DotPlacement>,
}

fn triangle(block: VertexBlock, height: usize) -> impl Iterator<Item = MatrixLocation> {
    (1..=height).flat_map(move |r| {
        (1..=height + 1 - r).map(move |s| MatrixLocation::new(block.start + r - 1, block.start + s - 1))
    })
}

pub fn dougherty_form(d: &SeaweedDescriptor) -> Result<RegularForm> {
    let n = d.n();
    let mut dots: BTreeMap<MatrixLocation, DotPlacement> = BTreeMap::new();
    for (id, comp) in decomposition::component_blocks(d)?.into_iter().enumerate() {
        let c = comp.component.size;
        let height = match comp.component.role {
            ComponentRole::Tail => c / 2,
            ComponentRole::Aftertail => c / 2,
            ComponentRole::Deleted => c,
        };
        let core = comp
            .core
            .iter()
            .flat_map(|&(block, _)| triangle(block, height))
            .map(|location| (location, DotRole::Core));
        let peaks = comp
            .peaks
            .iter()
            .flat_map(|p| p.diagonal())
            .map(|(i, j)| (MatrixLocation::new(i, j), DotRole::Peak));
        for (location, role) in core.chain(peaks) {
            if !location.is_on_or_above_antidiagonal(n) {
                continue;
            }
            if let Some(prev) = dots.insert(location, DotPlacement { location, component: id, role }) {
                return Err(SeaweedError::Inconsistent(format!(
                    "dot {} placed twice (components {} and {id})",
                    location, prev.component
                )));
            }
        }
    }
    let form = OneForm::from_locations(d, dots.keys().copied())?;
    Ok(RegularForm {
        form,
        dots: dots.into_values().collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerator {
    pub element: AlgebraElement,
    pub case: IndexOneCase,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContactForm {
    pub regular: RegularForm,
    pub kernel: KernelGenerator,
}

fn unit(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

/// Alternating diagonal sum along the unique cycle of the full meander,
/// starting from its smallest vertex with coefficient `+1`.
pub fn case1_kernel(d: &SeaweedDescriptor) -> Result<KernelGenerator> {
    let h = winding::homotopy_type(d);
    let case = winding::classify_index_one(&h)
        .filter(|c| matches!(c, IndexOneCase::BlueTwo | IndexOneCase::BlueThree))
        .ok_or_else(|| SeaweedError::Inconsistent(format!("{h} is not a single-cycle type")))?;
    let full = meander::build_full_meander(d);
    let cycles: Vec<_> = meander::components(&full)
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Cycle)
        .collect();
    let [cycle] = cycles.as_slice() else {
        return Err(SeaweedError::Inconsistent(format!(
            "expected one cycle in the full meander, found {}",
            cycles.len()
        )));
    };
    let top = full.top_partners();
    let bottom = full.bottom_partners();
    let start = cycle.vertices[0];
    let mut walk = vec![start];
    let mut on_top = true;
    let mut v = start;
    loop {
        let next = if on_top { top[v] } else { bottom[v] };
        v = next.ok_or_else(|| SeaweedError::Inconsistent(format!("cycle broken at vertex {v}")))?;
        on_top = !on_top;
        if v == start {
            break;
        }
        walk.push(v);
    }
    let element = AlgebraElement::from_terms(
        d.n(),
        walk.iter().enumerate().map(|(j, &v)| {
            let sign = if j % 2 == 0 { 1 } else { -1 };
            (MatrixLocation::new(v, v), unit(sign))
        }),
    );
    Ok(KernelGenerator { element, case })
}

/// `e*_{n,n}` plus every oriented full-meander edge with an endpoint `<= n-1`.
pub fn case2_form(d: &SeaweedDescriptor) -> Result<OneForm> {
    let n = d.n();
    let full = meander::build_full_meander(d);
    let locations = std::iter::once(MatrixLocation::new(n, n)).chain(
        full.oriented_edges()
            .into_iter()
            .filter(|&(i, j)| i + 1 <= n || j + 1 <= n)
            .map(|(i, j)| MatrixLocation::new(i, j)),
    );
    OneForm::from_locations(d, locations)
}

pub fn case2_kernel(d: &SeaweedDescriptor) -> KernelGenerator {
    let n = d.n();
    KernelGenerator {
        element: AlgebraElement::from_terms(
            n,
            [
                (MatrixLocation::new(n, n), unit(1)),
                (MatrixLocation::new(n + 1, n + 1), unit(-1)),
            ],
        ),
        case: IndexOneCase::RedTwo,
    }
}

/// The half-meander path with no endpoint in the tail.
fn untailed_path(d: &SeaweedDescriptor) -> Result<Vec<usize>> {
    let paths: Vec<_> = meander::components(&meander::build_meander(d))
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Path && c.tail_endpoint_count == 0)
        .collect();
    match paths.as_slice() {
        [p] => Ok(p.vertices.clone()),
        _ => Err(SeaweedError::Inconsistent(format!(
            "expected one untailed path, found {}",
            paths.len()
        ))),
    }
}

/// Diagonal entries on the untailed path plus every oriented full-meander
/// edge with an endpoint `<= n`.
pub fn case3_form(d: &SeaweedDescriptor) -> Result<OneForm> {
    let n = d.n();
    let path = untailed_path(d)?;
    let full = meander::build_full_meander(d);
    let locations = path.iter().map(|&v| MatrixLocation::new(v, v)).chain(
        full.oriented_edges()
            .into_iter()
            .filter(|&(i, j)| i <= n || j <= n)
            .map(|(i, j)| MatrixLocation::new(i, j)),
    );
    OneForm::from_locations(d, locations)
}

pub fn case3_kernel(d: &SeaweedDescriptor) -> Result<KernelGenerator> {
    let size = d.matrix_size();
    let path = untailed_path(d)?;
    let element = AlgebraElement::from_terms(
        d.n(),
        path.iter().flat_map(|&v| {
            [
                (MatrixLocation::new(v, v), unit(1)),
                (MatrixLocation::new(size + 1 - v, size + 1 - v), unit(-1)),
            ]
        }),
    );
    Ok(KernelGenerator {
        element,
        case: IndexOneCase::DeletedOne,
    })
}

/// The regular form together with its predicted kernel generator, for
/// index-one seaweeds. In cases 2 and 3 the closed-form expression must
/// agree with the block construction.
pub fn contact_form(d: &SeaweedDescriptor) -> Result<ContactForm> {
    let index = meander::index_via_meander(d);
    if index != 1 {
        return Err(SeaweedError::IndexNotOne { index });
    }
    let h = winding::homotopy_type(d);
    let case = winding::classify_index_one(&h)
        .ok_or_else(|| SeaweedError::Inconsistent(format!("index one but {h} is unclassified")))?;
    let regular = dougherty_form(d)?;
    let (closed_form, kernel) = match case {
        IndexOneCase::BlueTwo | IndexOneCase::BlueThree => (None, case1_kernel(d)?),
        IndexOneCase::RedTwo => (Some(case2_form(d)?), case2_kernel(d)),
        IndexOneCase::DeletedOne => (Some(case3_form(d)?), case3_kernel(d)?),
    };
    if let Some(explicit) = closed_form {
        if explicit != regular.form {
            return Err(SeaweedError::Inconsistent(format!(
                "case {case} closed form {explicit} differs from block construction {}",
                regular.form
            )));
        }
    }
    if !kernel.element.is_member_of(d) {
        return Err(SeaweedError::Inconsistent(format!(
            "kernel generator {} is not in the seaweed",
            kernel.element
        )));
    }
    Ok(ContactForm { regular, kernel })
}

/// `phi(h)`: `k/4` for a cycle of length `k`, `1` in case 2, `|V(P)|` in case 3.
pub fn expected_phi_of_kernel(d: &SeaweedDescriptor, case: IndexOneCase) -> Result<Rational> {
    Ok(match case {
        IndexOneCase::BlueTwo | IndexOneCase::BlueThree => {
            let k = case1_kernel(d)?.element.entries().count();
            Rational::new((k as i64).into(), 4.into())
        }
        IndexOneCase::RedTwo => Rational::one(),
        IndexOneCase::DeletedOne => unit(untailed_path(d)?.len() as i64),
    })
}
