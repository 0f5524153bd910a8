mod common;

use common::{d, descriptor, random_element};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seaweed_core::decomposition::{self, ComponentRole};
use seaweed_core::meander::{self, build_full_meander, build_meander};
use seaweed_core::verify::{self, kirillov_matrix, random_form};
use seaweed_core::winding::{self, MoveTag};
use seaweed_core::{forms, MatrixLocation, Rational, SeaweedDescriptor};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn full_compositions_are_palindromes(d in descriptor(10)) {
        let (top, bottom) = d.full_compositions();
        for c in [&top, &bottom] {
            prop_assert!(c.is_palindrome());
            prop_assert_eq!(c.total(), 2 * d.n());
            let mut rev = c.parts().to_vec();
            rev.reverse();
            prop_assert_eq!(rev.as_slice(), c.parts());
        }
    }

    #[test]
    fn admissibility_is_mirror_symmetric(d in descriptor(8)) {
        let size = d.matrix_size();
        for row in 1..=size {
            for col in 1..=size {
                let loc = MatrixLocation::new(row, col);
                prop_assert_eq!(d.is_admissible(loc), d.is_admissible(loc.mirror(d.n())));
            }
        }
    }

    #[test]
    fn dimension_counts_basis(d in descriptor(8)) {
        let adm = d.admissible_locations();
        let anti = adm.iter().filter(|l| l.row + l.col == d.matrix_size() + 1).count();
        prop_assert_eq!(d.dimension(), (adm.len() + anti) / 2);
        prop_assert_eq!(d.chevalley_basis().len(), d.dimension());
    }

    #[test]
    fn brackets_stay_in_the_seaweed(d in descriptor(8), seed in any::<u64>()) {
        let basis = d.chevalley_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..200 {
            let x = basis[rng.gen_range(0..basis.len())].to_element(d.n());
            let y = basis[rng.gen_range(0..basis.len())].to_element(d.n());
            prop_assert!(x.bracket(&y).unwrap().is_member_of(&d));
        }
    }

    #[test]
    fn kirillov_pairing_is_bilinear_and_alternating(d in descriptor(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&d, 50, &mut rng);
        let pair = |x: &seaweed_core::AlgebraElement, y: &seaweed_core::AlgebraElement| {
            f.evaluate(&x.bracket(y).unwrap())
        };
        let (x, y, z) = (random_element(&d, &mut rng), random_element(&d, &mut rng), random_element(&d, &mut rng));
        let s = Rational::from_integer(rng.gen_range(-9i64..=9).into());
        let sx_plus_z = x.scale(&s).add(&z).unwrap();
        prop_assert_eq!(pair(&sx_plus_z, &y), &s * pair(&x, &y) + pair(&z, &y));
        prop_assert_eq!(pair(&x, &y), -pair(&y, &x));
        prop_assert!(pair(&x, &x).is_zero());
    }

    #[test]
    fn kirillov_matrix_is_skew_with_even_rank(d in descriptor(6), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&d, 1000, &mut rng);
        let m = kirillov_matrix(&d, &f);
        prop_assert!(m.is_skew());
        let rk = verify::rank_and_kernel(&m);
        prop_assert_eq!(rk.rank % 2, 0);
        prop_assert_eq!(rk.rank + rk.kernel.len(), d.dimension());
        let a = rng.gen_range(0..m.dimension());
        let b = rng.gen_range(0..m.dimension());
        let direct = f.evaluate(&m.basis()[a].to_element(d.n()).bracket(&m.basis()[b].to_element(d.n())).unwrap());
        prop_assert_eq!(m.entry(a, b), direct);
    }

    #[test]
    fn kernel_vectors_pair_to_zero(d in descriptor(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_form(&d, 20, &mut rng);
        let m = kirillov_matrix(&d, &f);
        let rk = verify::rank_and_kernel(&m);
        for h in verify::kernel_elements(&m, &rk) {
            prop_assert!(h.is_member_of(&d));
            for _ in 0..100 {
                let y = random_element(&d, &mut rng);
                prop_assert!(f.evaluate(&h.bracket(&y).unwrap()).is_zero());
            }
        }
    }

    #[test]
    fn contact_check_matches_bordered_determinant(d in descriptor(5), seed in any::<u64>(), sparse in any::<bool>()) {
        prop_assume!(d.dimension() % 2 == 1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = if sparse {
            forms::dougherty_form(&d).unwrap().form
        } else {
            random_form(&d, 3, &mut rng)
        };
        let report = verify::is_contact_form(&d, &f);
        prop_assert_eq!(Some(report.is_contact), report.bordered_oracle);
        prop_assert_eq!(verify::bordered_contact_oracle(&d, &f).unwrap(), report.is_contact);
        if report.is_contact {
            prop_assert_eq!(report.kernel_dimension, 1);
            prop_assert!(!report.phi_of_kernel.unwrap().is_zero());
        }
    }

    #[test]
    fn meander_degrees_and_mirror(d in descriptor(10)) {
        let half = build_meander(&d);
        for arcs in [&half.top_arcs, &half.bottom_arcs] {
            let mut ends: Vec<usize> = arcs.iter().flat_map(|&(a, b)| [a, b]).collect();
            let total = ends.len();
            ends.sort_unstable();
            ends.dedup();
            prop_assert_eq!(ends.len(), total);
        }
        let top = half.top_partners();
        let bottom = half.bottom_partners();
        for &v in &half.aftertail {
            prop_assert!(top[v].is_none() && bottom[v].is_none());
        }
        let full = build_full_meander(&d);
        let size = full.vertex_count;
        let mirror = |arcs: &Vec<(usize, usize)>| {
            let mut m: Vec<(usize, usize)> = arcs.iter().map(|&(a, b)| (size + 1 - b, size + 1 - a)).collect();
            m.sort_unstable();
            m
        };
        prop_assert_eq!(&mirror(&full.top_arcs), &full.top_arcs);
        prop_assert_eq!(&mirror(&full.bottom_arcs), &full.bottom_arcs);
        for c in meander::components(&full) {
            if c.kind == meander::ComponentKind::Cycle {
                prop_assert_eq!(c.vertices.len() % 2, 0);
            }
        }
    }

    #[test]
    fn winding_bookkeeping(d in descriptor(10)) {
        let trace = winding::wind_down(&d);
        prop_assert!(trace.terminal().is_terminal());
        for (k, mv) in trace.moves.iter().enumerate() {
            let (before, after) = (&trace.forms[k], &trace.forms[k + 1]);
            prop_assert_eq!(before.class_count() - after.class_count(), mv.class_loss());
            let size = |f: &winding::FractionalForm| f.top.iter().sum::<usize>() + f.bottom.iter().sum::<usize>();
            if mv.tag == MoveTag::F {
                prop_assert_eq!(size(before), size(after));
                if k > 0 {
                    prop_assert_ne!(trace.moves[k - 1].tag, MoveTag::F);
                }
            } else {
                prop_assert!(size(after) < size(before) || after.class_count() < before.class_count());
            }
        }
        let h = winding::homotopy_type_of(&trace);
        prop_assert_eq!(winding::index_via_homotopy(&h), meander::index_via_meander(&d));
    }

    #[test]
    fn decomposition_blocks(d in descriptor(8)) {
        let n = d.n();
        let full = build_full_meander(&d);
        let comps = decomposition::component_blocks(&d).unwrap();
        let covered: usize = comps.iter().map(|c| c.component.size * c.component.blocks.len()).sum();
        prop_assert_eq!(covered, 2 * n);
        for c in &comps {
            let comp = &c.component;
            if comp.role == ComponentRole::Tail {
                for b in comp.blocks.iter().filter(|b| b.end() <= n) {
                    prop_assert!(b.vertices().any(|v| comp.half_vertices.contains(&v)));
                }
            }
            for p in &c.peaks {
                prop_assert_eq!(p.source.len, comp.size);
                prop_assert_eq!(p.target.len, comp.size);
                let arcs: Vec<(usize, usize)> = full.top_arcs.iter().chain(&full.bottom_arcs).copied()
                    .filter(|&(a, b)| (p.source.contains(a) && p.target.contains(b)) || (p.source.contains(b) && p.target.contains(a)))
                    .map(|(a, b)| if p.source.contains(a) { (a, b) } else { (b, a) })
                    .collect();
                let aligned = arcs.iter().all(|&(s, t)| s - p.source.start == t - p.target.start);
                let reversed = arcs.iter().all(|&(s, t)| s - p.source.start == p.target.end() - t);
                prop_assert!(aligned || reversed, "peak {:?} arcs {:?}", p, arcs);
                prop_assert_eq!(p.diagonal().count(), comp.size);
            }
        }
    }

    #[test]
    fn dougherty_locations_are_valid(d in descriptor(8)) {
        let f = forms::dougherty_form(&d).unwrap();
        for loc in f.form.locations() {
            prop_assert!(d.is_admissible(loc));
            prop_assert!(loc.row + loc.col <= d.matrix_size() + 1);
        }
        prop_assert_eq!(f.dots.len(), f.form.len());
    }

    #[test]
    fn notation_round_trips(d in descriptor(12)) {
        let again: SeaweedDescriptor = d.to_string().parse().unwrap();
        prop_assert_eq!(again, d);
    }
}

#[test]
fn c36_panel_counts() {
    let trace = winding::wind_down(&d("C36 5|10 / 2|4|3|1|1"));
    let counts: Vec<usize> = trace.forms.iter().map(|f| f.class_count()).collect();
    assert_eq!(counts, vec![18, 16, 16, 15, 15, 13, 12, 9, 8, 7]);
}
