use deriv::*;
use gf2core::{BitMatrix, BitVector, RowSpace};
use liesuper::*;
use proptest::prelude::*;
use superfunc::Family;

fn fam(tag: &str, a: usize, b: usize) -> Family {
    Family::h(tag, a, b).unwrap()
}

fn built(f: Family) -> FamilyAlgebra {
    build_algebra(f).unwrap()
}

fn families(sizes: std::ops::RangeInclusive<usize>) -> Vec<Family> {
    let mut out = Vec::new();
    for n in sizes {
        for a in 0..=n {
            let b = n - a;
            let tags: &[&str] = match (a % 2 == 0 && a > 0, b % 2 == 0 && b > 0) {
                (true, true) => &["PiPi", "PiI", "IPi", "II"],
                (true, false) | (false, true) => &["Pi", "I"],
                (false, false) => &["Pi"],
            };
            out.extend(tags.iter().map(|t| fam(t, a, b)));
        }
        if n % 2 == 0 {
            out.push(Family::le(n / 2).unwrap());
        }
    }
    out
}

/// Families whose bracket admits a squaring satisfying JIS.
fn lie_families(sizes: std::ops::RangeInclusive<usize>) -> Vec<Family> {
    families(sizes).into_iter().filter(|&f| verify_axioms(&built(f).alg).passed()).collect()
}

/// Counts derivations by trying every linear map.
fn brute_force_dim(g: &StructureConstants) -> usize {
    let n = g.dim();
    let mut count = 0u64;
    for bits in 0u64..(1 << (n * n)) {
        let m = BitMatrix::from_fn(n, n, |k, l| bits >> (k * n + l) & 1 == 1);
        if derivation_defect(g, &m).is_none() {
            count += 1;
        }
    }
    count.trailing_zeros() as usize
}

fn random_table(n: usize, parities: &[bool], bits: &[bool]) -> StructureConstants {
    let basis = (0..n).map(|i| BasisElement::new(format!("e{i}"), Parity::from_bit(parities[i]), 0, vec![])).collect();
    let mut g = StructureConstants::abelian(basis);
    let mut it = bits.iter().copied().cycle();
    for i in 0..n {
        for j in i + 1..n {
            let p = g.parity(i) + g.parity(j);
            let v = BitVector::from_indices(n, (0..n).filter(|&k| g.parity(k) == p && it.next().unwrap()));
            g.set_bracket(i, j, v);
        }
        if g.parity(i).is_odd() {
            let v = BitVector::from_indices(n, (0..n).filter(|&k| !g.parity(k).is_odd() && it.next().unwrap()));
            g.set_square(i, v);
        }
    }
    g
}

fn witt_1_2() -> StructureConstants {
    let binom = |n: i32, k: i32| -> u32 {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        let mut r: u64 = 1;
        for i in 0..k as u64 {
            r = r * (n as u64 - i) / (i + 1);
        }
        (r % 2) as u32
    };
    let basis = (0..4).map(|a| BasisElement::new(format!("x{a}d"), Parity::Even, a - 1, vec![])).collect();
    let mut g = StructureConstants::abelian(basis);
    for a in 0..4i32 {
        for b in a + 1..4i32 {
            let c = a + b - 1;
            if (0..4).contains(&c) && (binom(c, a) + binom(c, b)) % 2 == 1 {
                g.set_bracket(a as usize, b as usize, BitVector::unit(4, c as usize));
            }
        }
    }
    g
}

#[test]
fn abelian_algebra_has_every_linear_map() {
    let basis = (0..2).map(|i| BasisElement::new(format!("a{i}"), Parity::Even, 0, vec![])).collect();
    let g = StructureConstants::abelian(basis);
    assert_eq!(derivation_space_naive(&g).unwrap().dim_all(), 4);
    assert_eq!(derivation_space_blocked(&g, false).unwrap().dim_all(), 4);
    assert_eq!(brute_force_dim(&g), 4);
}

#[test]
fn witt_derivations_match_brute_force() {
    let g = witt_1_2();
    assert!(verify_axioms(&g).passed());
    let ds = derivation_space_blocked(&g, false).unwrap();
    assert_eq!(ds.dim_all(), brute_force_dim(&g));
    assert_eq!(ds, derivation_space_naive(&g).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]
    #[test]
    fn solvers_match_brute_force(par in proptest::collection::vec(any::<bool>(), 3), bits in proptest::collection::vec(any::<bool>(), 40)) {
        let g = random_table(3, &par, &bits);
        let naive = derivation_space_naive(&g).unwrap();
        let blocked = derivation_space_blocked(&g, false).unwrap();
        prop_assert_eq!(naive.dim_all(), brute_force_dim(&g));
        prop_assert_eq!(&naive, &blocked);
        for d in naive.all_maps(&g) {
            prop_assert!(is_derivation(&g, &d));
        }
    }
}

#[test]
fn solvers_agree_up_to_five_indeterminates() {
    for f in families(4..=5) {
        let g = built(f).alg;
        let naive = derivation_space_naive(&g).unwrap();
        let blocked = derivation_space_blocked(&g, false).unwrap();
        assert_eq!(naive, blocked, "{}", f.label());
        assert_eq!(blocked, derivation_space_blocked(&g, true).unwrap(), "{}", f.label());
        for d in blocked.all_maps(&g) {
            assert!(is_derivation(&g, &d), "{}", f.label());
        }
    }
}

#[test]
fn outer_inventory_of_pi_0_4() {
    let g = built(fam("Pi", 0, 4)).alg;
    let ds = derivation_space_blocked(&g, false).unwrap();
    assert_eq!(ds.inner_defect, 0);
    assert_eq!(ds.dim_outer(), 7);
    let mut degrees: Vec<i32> = ds.outer_summary().iter().flat_map(|(k, c)| std::iter::repeat(k.degree()).take(*c)).collect();
    degrees.sort();
    assert_eq!(degrees, vec![-2, 0, 0, 0, 0, 0, 2]);
    let mut weights: Vec<Vec<i32>> = ds.outer_summary().iter().filter(|(k, _)| k.degree() == 0).map(|(k, _)| k.weight().to_vec()).collect();
    weights.sort();
    assert_eq!(weights, vec![vec![-2, 0], vec![0, -2], vec![0, 0], vec![0, 2], vec![2, 0]]);
    assert!(ds.outer_summary().iter().all(|(k, _)| k.parity == Parity::Even));
}

#[test]
fn outer_inventories_of_other_small_cases() {
    let count = |f: Family| derivation_space_blocked(&built(f).alg, false).unwrap().dim_outer();
    assert_eq!(count(fam("I", 0, 4)), 6);
    assert_eq!(count(fam("I", 4, 0)), 6);
    assert_eq!(count(fam("Pi", 4, 0)), 7);
    assert_eq!(count(fam("PiPi", 2, 2)), 7);
    let le = built(Family::le(2).unwrap()).alg;
    let ds = derivation_space_blocked(&le, false).unwrap();
    assert_eq!(ds.dim_outer(), 7);
    for (k, _) in ds.outer_summary() {
        let expect_odd = k.degree() != 0 || k.weight().iter().any(|&w| w != 0);
        assert_eq!(k.parity.is_odd(), expect_odd, "{k:?}");
    }
}

#[test]
fn mixed_families_have_non_derivation_inner_maps() {
    for f in [fam("II", 2, 2), fam("PiI", 2, 2), fam("IPi", 2, 2), fam("Pi", 1, 3), fam("Pi", 3, 1)] {
        let g = built(f).alg;
        assert!(!verify_axioms(&g).passed(), "{}", f.label());
        let ds = derivation_space_blocked(&g, false).unwrap();
        assert!(ds.inner_defect > 0, "{}", f.label());
    }
}

#[test]
fn pi_0_6_has_an_extra_class_in_degree_minus_two() {
    let fa = built(fam("Pi", 0, 6));
    let g = &fa.alg;
    let ds = derivation_space_blocked(g, true).unwrap();
    assert_eq!(ds.dim_outer(), 9);
    let per_degree = |d: i32| ds.outer_summary().iter().filter(|(k, _)| k.degree() == d).map(|(_, c)| c).sum::<usize>();
    assert_eq!((per_degree(-2), per_degree(0), per_degree(4)), (1, 7, 1));
    let gens = closed_form_generators(&fa).unwrap();
    let span = RowSpace::span(g.dim() * g.dim(), g.ad_vectors().into_iter().chain(gens.iter().map(|c| c.map.flat())));
    let all = ds.all_space();
    assert!(span.is_subspace_of(&all));
    assert_eq!(all.dim() - span.dim(), 1);
}

#[test]
fn closed_forms_span_the_derivations_of_lie_families() {
    let mut fams = lie_families(4..=5);
    fams.push(fam("Pi", 0, 7));
    for f in fams {
        let fa = built(f);
        let g = &fa.alg;
        let gens = closed_form_generators(&fa).unwrap();
        for c in &gens {
            assert!(is_derivation(g, &c.map), "{} {}", f.label(), c.label);
            assert!(!c.extrapolated);
        }
        let ds = derivation_space_blocked(g, true).unwrap();
        let span = RowSpace::span(g.dim() * g.dim(), g.ad_vectors().into_iter().chain(gens.iter().map(|c| c.map.flat())));
        assert_eq!(span, ds.all_space(), "{}", f.label());
    }
}

#[test]
fn closed_form_shifts() {
    let fa = built(fam("Pi", 0, 4));
    let gens = closed_form_generators(&fa).unwrap();
    let top = gens.iter().find(|c| c.label == "D^(2)").unwrap();
    assert_eq!((top.map.degree, top.map.weight_shift.clone()), (2, vec![0, 0]));
    assert!(is_derivation(&fa.alg, &top.map));

    let fa = built(fam("Pi", 0, 6));
    let gens = closed_form_generators(&fa).unwrap();
    let d = gens.iter().find(|c| c.label == "D_xi1^(0)").unwrap();
    assert_eq!((d.map.degree, d.map.weight_shift.clone()), (0, vec![2, 0, 0]));

    let fa = built(fam("I", 0, 4));
    let gens = closed_form_generators(&fa).unwrap();
    let d = gens.iter().find(|c| c.label == "D_th1^(0)").unwrap();
    assert_eq!(d.map.degree, 0);
    assert!(is_derivation(&fa.alg, &d.map));

    let fa = built(Family::le(2).unwrap());
    for c in closed_form_generators(&fa).unwrap() {
        let odd = c.label.starts_with("D_q") || c.label.starts_with("D_pi") || c.label.starts_with("D^(");
        assert_eq!(c.map.parity.is_odd(), odd, "{}", c.label);
    }
}

#[test]
fn nis_preservation() {
    let fa = built(fam("Pi", 0, 5));
    assert!(preserves_nis(&LinearMap::zero(&fa.alg), &fa.form, &fa.alg));
    let gens = closed_form_generators(&fa).unwrap();
    let euler = gens.iter().find(|c| c.label == "D_0^(0)").unwrap();
    assert!(!preserves_nis(&euler.map, &fa.form, &fa.alg));

    let fa = built(fam("Pi", 0, 4));
    let gens = closed_form_generators(&fa).unwrap();
    let top = gens.iter().find(|c| c.label == "D^(2)").unwrap();
    assert!(preserves_nis(&top.map, &fa.form, &fa.alg));
    for f in lie_families(4..=5) {
        let fa = built(f);
        for i in 0..fa.alg.dim() {
            let ad = LinearMap::ad(&fa.alg, &fa.alg.unit(i)).unwrap();
            assert!(preserves_nis(&ad, &fa.form, &fa.alg), "{}", f.label());
        }
    }
}

#[test]
fn basis_condition_gives_extra_condition_on_all_odd_elements() {
    let fa = built(fam("Pi", 0, 4));
    let g = &fa.alg;
    let odd = g.odd_indices();
    let ds = derivation_space_blocked(g, false).unwrap();
    let mut maps = ds.all_maps(g);
    maps.extend(closed_form_generators(&fa).unwrap().into_iter().map(|c| c.map));
    for d in maps.iter().filter(|d| preserves_nis(d, &fa.form, g)) {
        for mask in 1u32..(1 << odd.len()) {
            let f = BitVector::from_indices(g.dim(), (0..odd.len()).filter(|&b| mask >> b & 1 == 1).map(|b| odd[b]));
            assert!(!fa.form.eval(&d.apply(&f), &f));
        }
    }
}

#[test]
fn cohomology_classes() {
    let fa = built(fam("Pi", 0, 6));
    let g = &fa.alg;
    let gens = closed_form_generators(&fa).unwrap();
    let d1 = &gens.iter().find(|c| c.label == "D_xi1^(0)").unwrap().map;
    let d2 = &gens.iter().find(|c| c.label == "D_xi2^(0)").unwrap().map;
    assert!(cohomology_equal(d1, d1, g).unwrap());
    let (d, ad) = gens
        .iter()
        .find_map(|c| {
            (0..g.dim())
                .map(|y| LinearMap::ad(g, &g.unit(y)).unwrap())
                .find(|ad| !ad.is_zero() && ad.key() == c.map.key())
                .map(|ad| (&c.map, ad))
        })
        .unwrap();
    let shifted = d.add(&ad).unwrap();
    assert!(cohomology_equal(d, &shifted, g).unwrap());
    assert!(matches!(cohomology_equal(d1, d2, g), Err(DerivError::ShiftMismatch(..))));
    let e1 = &gens.iter().find(|c| c.label == "D_0^(0)").unwrap().map;
    assert!(!cohomology_equal(e1, &LinearMap::zero(g), g).unwrap());
}

#[test]
fn non_homogeneous_maps_are_rejected() {
    let g = built(fam("Pi", 0, 4)).alg;
    let mut m = BitMatrix::zeros(g.dim(), g.dim());
    m.set(0, 0, true);
    m.set(3, 0, true);
    assert!(matches!(LinearMap::from_matrix(&g, m), Err(DerivError::NotHomogeneous(..))));
}

#[test]
fn bench_records_count_blocks() {
    let g = built(fam("Pi", 0, 4)).alg;
    let (naive, a) = bench_family("h_Pi(0|4)", &g, SolverPath::Naive).unwrap();
    let (blocked, b) = bench_family("h_Pi(0|4)", &g, SolverPath::Blocked).unwrap();
    assert_eq!(a, b);
    assert_eq!(naive.systems, 1);
    assert_eq!(blocked.blocks, GradedBlocks::new(&g).len());
    assert_eq!(blocked.derivations, 21);
    assert!(blocked.to_string().starts_with("h_Pi(0|4),14,blocked,"));
}
