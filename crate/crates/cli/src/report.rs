//! JSON shapes emitted by the command line. Rationals are `"p/q"` strings.

use std::time::Instant;

use serde::Serialize;

use seaweed_core::forms::{self, DotRole};
use seaweed_core::meander::index_via_meander;
use seaweed_core::seaweed::rational_string;
use seaweed_core::verify::{self, VerificationReport};
use seaweed_core::winding::{self, HomotopyType};
use seaweed_core::{MatrixLocation, OneForm, Result, SeaweedDescriptor, SeaweedError};

#[derive(Clone, Debug, Serialize)]
pub struct IndexValues {
    pub meander: usize,
    pub homotopy: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<usize>,
    pub agree: bool,
}

impl IndexValues {
    pub fn compute(d: &SeaweedDescriptor, oracle: Option<(usize, i64, u64)>) -> Self {
        let meander = index_via_meander(d);
        let homotopy = winding::index_via_homotopy(&winding::homotopy_type(d));
        let oracle = oracle.map(|(trials, bound, seed)| verify::index_oracle(d, trials, bound, seed));
        Self {
            meander,
            homotopy,
            oracle,
            agree: meander == homotopy && oracle.map_or(true, |o| o == meander),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HomotopyJson {
    pub deleted: Vec<usize>,
    pub blue: Vec<usize>,
    pub red: usize,
    pub display: String,
}

impl From<&HomotopyType> for HomotopyJson {
    fn from(h: &HomotopyType) -> Self {
        Self {
            deleted: h.deleted.clone(),
            blue: h.blue.clone(),
            red: h.red,
            display: h.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DotJson {
    pub location: [usize; 2],
    pub component: usize,
    pub role: DotRole,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormJson {
    /// `"contact"` on index-one seaweeds, `"regular"` otherwise.
    pub kind: &'static str,
    pub display: String,
    pub locations: Vec<[usize; 2]>,
    pub dots: Vec<DotJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_generator: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_phi_of_kernel: Option<String>,
}

pub struct BuiltForm {
    pub json: FormJson,
    pub form: OneForm,
}

fn pair(l: MatrixLocation) -> [usize; 2] {
    [l.row, l.col]
}

/// The contact form when the index is one, else the general regular form
/// (only if `general` is set).
pub fn build_form(d: &SeaweedDescriptor, general: bool) -> Result<BuiltForm> {
    let index = index_via_meander(d);
    let (regular, kernel) = match forms::contact_form(d) {
        Ok(cf) => (cf.regular, Some(cf.kernel)),
        Err(SeaweedError::IndexNotOne { .. }) if general => (forms::dougherty_form(d)?, None),
        Err(e) => return Err(e),
    };
    let expected = match &kernel {
        Some(k) => Some(rational_string(&forms::expected_phi_of_kernel(d, k.case)?)),
        None => None,
    };
    let json = FormJson {
        kind: if index == 1 { "contact" } else { "regular" },
        display: regular.form.to_string(),
        locations: regular.form.locations().into_iter().map(pair).collect(),
        dots: regular
            .dots
            .iter()
            .map(|p| DotJson {
                location: pair(p.location),
                component: p.component,
                role: p.role,
            })
            .collect(),
        case: kernel.as_ref().map(|k| k.case.label()),
        kernel_generator: kernel.as_ref().map(|k| k.element.to_string()),
        expected_phi_of_kernel: expected,
    };
    Ok(BuiltForm {
        json,
        form: regular.form,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub combinatorics_ms: f64,
    pub verification_ms: f64,
    pub oracle_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seaweed: String,
    pub n: usize,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub dimension: usize,
    pub index: IndexValues,
    pub signature: String,
    pub homotopy_type: HomotopyJson,
    pub contact_case: Option<&'static str>,
    pub form: FormJson,
    pub verification: VerificationReport,
    /// Contact certified: the exact check and the bordered determinant agree
    /// and the kernel matches the predicted generator.
    pub certified: bool,
    pub timing: Timing,
}

impl Report {
    pub fn is_consistent(&self) -> bool {
        self.index.agree
            && self.verification.oracles_agree
            && self.verification.is_regular
            && self.verification.kernel_dimension == self.index.meander
    }
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1000.0
}

pub fn build_report(d: &SeaweedDescriptor, trials: usize, bound: i64, seed: u64) -> Result<Report> {
    let t0 = Instant::now();
    let h = winding::homotopy_type(d);
    let signature = winding::signature(d).to_string();
    let built = build_form(d, true)?;
    let combinatorics_ms = ms(t0);

    let t1 = Instant::now();
    let verification = verify::is_contact_form(d, &built.form);
    let predicted = built.json.kernel_generator.as_deref();
    let kernel_matches = match (predicted, verification.kernel_basis.as_slice()) {
        (Some(p), [k]) => {
            let negated = k.scale(&(-seaweed_core::Rational::from_integer(1.into())));
            p == k.to_string() || p == negated.to_string()
        }
        _ => false,
    };
    let certified = verification.is_contact && verification.oracles_agree && kernel_matches;
    let verification_ms = ms(t1);

    let t2 = Instant::now();
    let index = IndexValues::compute(d, Some((trials, bound, seed)));
    let oracle_ms = ms(t2);

    Ok(Report {
        seaweed: d.to_string(),
        n: d.n(),
        top: d.top().parts().to_vec(),
        bottom: d.bottom().parts().to_vec(),
        dimension: d.dimension(),
        index,
        signature,
        homotopy_type: HomotopyJson::from(&h),
        contact_case: winding::classify_index_one(&h).map(|c| c.label()),
        form: built.json,
        verification,
        certified,
        timing: Timing {
            combinatorics_ms,
            verification_ms,
            oracle_ms,
        },
    })
}

/// One line of `enumerate` output.
#[derive(Clone, Debug, Serialize)]
pub struct EnumerationLine {
    pub seaweed: String,
    pub top: Vec<usize>,
    pub bottom: Vec<usize>,
    pub dimension: usize,
    pub index: usize,
    pub signature: String,
    pub homotopy_type: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_regular: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_contact: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi_of_kernel: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bordered_oracle: Option<bool>,
}

pub struct Enumerated {
    pub line: EnumerationLine,
    pub consistent: bool,
}

pub fn enumeration_line(d: &SeaweedDescriptor, check: bool) -> Result<Enumerated> {
    let h = winding::homotopy_type(d);
    let index = index_via_meander(d);
    let mut consistent = winding::index_via_homotopy(&h) == index;
    let mut line = EnumerationLine {
        seaweed: d.to_string(),
        top: d.top().parts().to_vec(),
        bottom: d.bottom().parts().to_vec(),
        dimension: d.dimension(),
        index,
        signature: winding::signature(d).to_string(),
        homotopy_type: h.to_string(),
        is_regular: None,
        is_contact: None,
        phi_of_kernel: None,
        bordered_oracle: None,
    };
    if check {
        let built = build_form(d, true)?;
        let v = verify::is_contact_form(d, &built.form);
        consistent &= v.is_regular && v.oracles_agree && (index != 1 || v.is_contact);
        line.is_regular = Some(v.is_regular);
        line.is_contact = Some(v.is_contact);
        line.phi_of_kernel = v.phi_of_kernel.as_ref().map(rational_string);
        line.bordered_oracle = v.bordered_oracle;
    }
    Ok(Enumerated { line, consistent })
}
