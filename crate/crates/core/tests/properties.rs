mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{
    characteristic_residues, congruent, float_signature, lattice, quadratic, random_standard_unimodular,
    random_symmetric, random_unimodular_change, CERTIFIED,
};
use spinc4::atlas::{cp2bar, s1xs3, ManifoldData};
use spinc4::expr::parse;
use spinc4::lattice::LatticeVector;
use spinc4::obstruction::{embedding_obstructed, hitchin_thorpe, yamabe_value, SurfaceCandidate};
use spinc4::spinc::{c1_squared, c_matrix, condition_star, dirac_index, SpinCStructure};

fn canonical(m: &ManifoldData) -> SpinCStructure {
    SpinCStructure::canonical(m).unwrap()
}

fn build(picks: &[usize]) -> ManifoldData {
    let parts: Vec<ManifoldData> = picks.iter().map(|&i| CERTIFIED[i].build()).collect();
    ManifoldData::connected_sum_all(&parts)
}

fn picks(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..CERTIFIED.len(), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn signature_is_a_congruence_invariant(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_symmetric(n, 4, &mut rng);
        let p = random_unimodular_change(n, &mut rng);
        prop_assert_eq!(lattice(&q).inertia(), lattice(&congruent(&q, &p)).inertia());
    }

    #[test]
    fn signature_matches_eigenvalue_signs(seed in any::<u64>(), n in 1usize..=8) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let q = random_symmetric(n, 6, &mut rng);
        prop_assert_eq!(lattice(&q).signature(), float_signature(&q));
    }

    #[test]
    fn unimodular_determinant_survives_basis_change(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_standard_unimodular(&mut rng);
        let q = congruent(&base, &random_unimodular_change(base.len(), &mut rng));
        prop_assert!(lattice(&q).is_unimodular());
    }

    #[test]
    fn characteristic_squares_are_congruent_to_signature(
        seed in any::<u64>(),
        shift in prop::collection::vec(-5i64..=5, 8),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = random_standard_unimodular(&mut rng);
        let q = congruent(&base, &random_unimodular_change(base.len(), &mut rng));
        let residues = characteristic_residues(&q);
        let c: Vec<i64> = residues[0].iter().zip(&shift).map(|(x, s)| x + 2 * s).collect();
        let l = lattice(&q);
        prop_assert!(l.is_characteristic(&LatticeVector::new(c.clone())).unwrap());
        prop_assert_eq!((quadratic(&q, &c) - l.signature()).rem_euclid(8), 0);
    }

    #[test]
    fn connected_sum_is_associative_and_commutative(a in picks(1..=2), b in picks(1..=2), c in picks(1..=2)) {
        let (ma, mb, mc) = (build(&a), build(&b), build(&c));
        let left = ma.connected_sum(&mb).connected_sum(&mc);
        let right = ma.connected_sum(&mb.connected_sum(&mc));
        let swapped = mc.connected_sum(&ma).connected_sum(&mb);
        for x in [&right, &swapped] {
            prop_assert_eq!(x.euler(), left.euler());
            prop_assert_eq!(x.signature(), left.signature());
            prop_assert_eq!(x.b1(), left.b1());
            prop_assert_eq!(dirac_index(x, &canonical(x)).unwrap(), dirac_index(&left, &canonical(&left)).unwrap());
            prop_assert_eq!(condition_star(x, &canonical(x)).unwrap(), condition_star(&left, &canonical(&left)).unwrap());
        }
        prop_assert_eq!(&left, &right);
    }

    #[test]
    fn characteristic_numbers_add(a in picks(1..=3), b in picks(1..=3)) {
        let (ma, mb) = (build(&a), build(&b));
        let m = ma.connected_sum(&mb);
        prop_assert_eq!(m.euler(), ma.euler() + mb.euler() - 2);
        prop_assert_eq!(m.signature(), ma.signature() + mb.signature());
        let sq = |x: &ManifoldData| c1_squared(x, &canonical(x)).unwrap();
        prop_assert_eq!(sq(&m), sq(&ma) + sq(&mb));
        let idx = |x: &ManifoldData| dirac_index(x, &canonical(x)).unwrap();
        prop_assert_eq!(idx(&m), idx(&ma) + idx(&mb));
    }

    #[test]
    fn c_matrix_is_block_diagonal(a in picks(1..=2), b in picks(1..=2)) {
        let (ma, mb) = (build(&a), build(&b));
        let m = ma.connected_sum(&mb);
        let (c, ca, cb) = (
            c_matrix(&m, &canonical(&m)).unwrap(),
            c_matrix(&ma, &canonical(&ma)).unwrap(),
            c_matrix(&mb, &canonical(&mb)).unwrap(),
        );
        let na = ma.b1();
        for i in 0..m.b1() {
            for j in 0..m.b1() {
                let expected = match (i < na, j < na) {
                    (true, true) => ca.get(i, j),
                    (false, false) => cb.get(i - na, j - na),
                    _ => 0,
                };
                prop_assert_eq!(c.get(i, j), expected);
            }
        }
    }

    #[test]
    fn certified_sums_satisfy_star(p in picks(1..=5)) {
        let m = build(&p);
        prop_assert!(condition_star(&m, &canonical(&m)).unwrap().holds);
    }

    #[test]
    fn hitchin_thorpe_matches_inequality(r in 0usize..40, s in 0usize..6, k3s in 0usize..3) {
        let mut parts = vec![spinc4::atlas::k3(); k3s];
        parts.extend(std::iter::repeat_n(cp2bar(), r));
        parts.extend(std::iter::repeat_n(s1xs3(), s));
        let x = ManifoldData::connected_sum_all(&parts);
        let (k, r, s) = (k3s as i64, r as i64, s as i64);
        let parts_count = k + r + s;
        let chi = if parts_count == 0 { 2 } else { 24 * k + 3 * r - 2 * (parts_count - 1) };
        let tau = -16 * k - r;
        prop_assert_eq!(x.euler(), chi);
        prop_assert_eq!(x.signature(), tau);
        prop_assert_eq!(hitchin_thorpe(&x), 3 * tau.abs() <= 2 * chi);
    }

    #[test]
    fn adjunction_is_monotone(
        n in 0i64..100, g in 1u32..40, p in -50i64..50,
        dn in 0i64..20, dg in 0u32..40, dp in 0i64..20,
    ) {
        let m = spinc4::atlas::k3().repeated(2);
        let s = canonical(&m);
        let cand = |n, g, p| SurfaceCandidate { self_intersection: n, genus: g, pairing: p };
        let before = embedding_obstructed(&m, &s, &cand(n, g, p)).unwrap();
        let after = embedding_obstructed(&m, &s, &cand(n + dn, g.saturating_sub(dg).max(1), p - dp)).unwrap();
        prop_assert!(!before || after);
    }

    #[test]
    fn yamabe_is_permutation_invariant(p in picks(2..=3)) {
        let m = build(&p);
        let mut rev = p.clone();
        rev.reverse();
        let mr = build(&rev);
        let n1 = cp2bar();
        let y = yamabe_value(&m, &canonical(&m), &n1, true).unwrap();
        prop_assert_eq!(y, yamabe_value(&mr, &canonical(&mr), &n1, true).unwrap());
        let zero = p.iter().all(|&i| {
            let g = CERTIFIED[i].build();
            c1_squared(&g, &canonical(&g)).unwrap() == 0
        });
        prop_assert_eq!(y.is_zero(), zero);
    }

    #[test]
    fn expression_printing_round_trips(
        terms in prop::collection::vec((1u32..5, 0usize..7, 1u32..9, 1u32..9), 1..6),
    ) {
        let text: Vec<String> = terms
            .iter()
            .map(|&(k, kind, g, gp)| {
                let gen = match kind {
                    0 => "K3".to_string(),
                    1 => format!("SP({g},{gp})"),
                    2 => "CP2".into(),
                    3 => "~CP2".into(),
                    4 => "S1xS3".into(),
                    5 => "S4".into(),
                    _ => format!("@f{g}.json"),
                };
                format!("{k} * {gen}")
            })
            .collect();
        let e = parse(&text.join("  #  ")).unwrap();
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed).unwrap(), e);
    }
}
