use std::collections::HashMap;

use proptest::prelude::*;

use super::*;

fn field(p: u64, e: u32, n: u32) -> FieldCtx {
    FieldCtx::build(p, e, n, None).unwrap()
}

fn from_indices(ctx: &FieldCtx, k: usize, idx: &[u64]) -> FMatrix {
    let data = idx.iter().map(|&i| ctx.from_index(i % ctx.size())).collect();
    FMatrix::new(ctx, ctx.degree(), k, k, data).unwrap()
}

/// det(tI - M) for a scalar t, by plain elimination.
fn det_shifted(m: &FMatrix, t: &Elem) -> Elem {
    let ctx = m.ctx();
    let n = m.rows();
    let shifted = FMatrix::from_fn(ctx, ctx.degree(), n, n, |i, j| {
        let a = ctx.neg(m.get(i, j));
        if i == j {
            ctx.add(&a, t)
        } else {
            a
        }
    })
    .unwrap();
    shifted.det().unwrap()
}

fn eval_poly_at_matrix(f: &FPoly, m: &FMatrix) -> FMatrix {
    let ctx = m.ctx();
    let n = m.rows();
    let mut acc = FMatrix::zero(ctx, m.sub_deg(), n, n);
    for c in f.coeffs().iter().rev() {
        acc = (&acc * m).add(&FMatrix::identity(ctx, m.sub_deg(), n).scale(c)).unwrap();
    }
    acc
}

#[test]
fn construction_checks_subfield() {
    let ctx = field(2, 1, 2);
    let g = ctx.generator();
    assert_eq!(
        FMatrix::new(&ctx, 2, 1, 1, vec![g.clone()]).unwrap_err(),
        Error::NotInSubfield(2)
    );
    assert!(FMatrix::new(&ctx, 4, 1, 1, vec![g]).is_ok());
    assert!(matches!(FMatrix::new(&ctx, 3, 1, 1, vec![ctx.one()]), Err(Error::NonDivisibleDegrees { .. })));
    assert!(matches!(FMatrix::new(&ctx, 4, 2, 2, vec![ctx.one()]), Err(Error::ShapeMismatch(_))));
}

#[test]
fn shape_errors() {
    let ctx = field(3, 1, 1);
    let a = FMatrix::zero(&ctx, 2, 2, 3);
    let b = FMatrix::zero(&ctx, 2, 2, 3);
    assert!(matches!(a.checked_mul(&b), Err(Error::ShapeMismatch(_))));
    assert!(matches!(a.inverse(), Err(Error::ShapeMismatch(_))));
    assert_eq!(FMatrix::zero(&ctx, 2, 2, 2).inverse().unwrap_err(), Error::Singular);
}

#[test]
fn group_orders() {
    let caps = BruteCaps::default();
    let f4 = field(2, 1, 1);
    assert_eq!(general_linear_group(&f4, 1, 2, &caps).unwrap().len(), 6);
    assert_eq!(general_linear_group(&f4, 2, 2, &caps).unwrap().len(), 180);
    assert_eq!(general_linear_group(&f4, 1, 3, &caps).unwrap().len(), 168);
    assert_eq!(gl_order(4, 3), 181_440);
    assert!(matches!(
        general_linear_group(&f4, 2, 4, &caps),
        Err(Error::CapExceeded { .. })
    ));
    let f16 = field(2, 1, 2);
    assert!(matches!(
        general_linear_group(&f16, 4, 2, &caps),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn charpoly_matches_pointwise_determinant() {
    let ctx = field(3, 1, 1);
    let m = from_indices(&ctx, 3, &[1, 5, 0, 7, 2, 3, 8, 0, 4]);
    let cp = m.charpoly().unwrap();
    assert_eq!(cp.degree(), Some(3));
    for t in ctx.elements() {
        assert_eq!(cp.eval(&t), det_shifted(&m, &t));
    }
}

#[test]
fn conjugacy_certificate_matches_brute_orbits_2x2_over_f4() {
    let ctx = field(2, 1, 1);
    let caps = BruteCaps::default();
    let group = general_linear_group(&ctx, 2, 2, &caps).unwrap();
    let inverses: Vec<FMatrix> = group.iter().map(|s| s.inverse().unwrap()).collect();
    let all: Vec<FMatrix> = (0..256u64)
        .map(|i| from_indices(&ctx, 2, &[i & 3, (i >> 2) & 3, (i >> 4) & 3, (i >> 6) & 3]))
        .collect();
    let mut class_of: HashMap<FMatrix, usize> = HashMap::new();
    let mut classes = 0;
    for m in &all {
        if class_of.contains_key(m) {
            continue;
        }
        for (s, si) in group.iter().zip(&inverses) {
            class_of.insert(&(s * m) * si, classes);
        }
        classes += 1;
    }
    // 4 scalar, 4*3 diagonalizable with distinct eigenvalues / 2, 4 Jordan, irreducible: (16-4)/2
    assert_eq!(classes, 4 + 6 + 4 + 6);
    let ifs: Vec<InvariantFactors> = all.iter().map(|m| m.invariant_factors().unwrap()).collect();
    for i in (0..256).step_by(3) {
        for j in 0..256 {
            assert_eq!(ifs[i] == ifs[j], class_of[&all[i]] == class_of[&all[j]], "{:?} {:?}", all[i], all[j]);
        }
    }
}

#[test]
fn conjugacy_search_finds_witness() {
    let ctx = field(2, 1, 1);
    let caps = BruteCaps::default();
    let m0 = from_indices(&ctx, 2, &[1, 2, 0, 1]);
    let s = from_indices(&ctx, 2, &[2, 1, 1, 0]);
    let m1 = &(&s * &m0) * &s.inverse().unwrap();
    let w = conjugacy_search(&m0, &m1, &caps).unwrap().unwrap();
    assert_eq!(&w * &m0, &m1 * &w);
    assert!(conjugacy_test(&m0, &m1).unwrap());
    let id = FMatrix::identity(&ctx, 2, 2);
    assert!(!conjugacy_test(&m0, &id).unwrap());
    assert!(conjugacy_search(&m0, &id, &caps).unwrap().is_none());
}

#[test]
fn congruence_oracle_recovers_transform() {
    let ctx = field(2, 1, 1);
    let caps = BruteCaps::default();
    let c1 = from_indices(&ctx, 2, &[1, 2, 0, 3]);
    let t0 = from_indices(&ctx, 2, &[3, 1, 0, 2]);
    let c0 = &(&t0 * &c1) * &t0.star();
    let t = congruence_oracle(&c0, &c1, &caps).unwrap().unwrap();
    assert_eq!(&(&t * &c1) * &t.star(), c0);
    let group = general_linear_group(&ctx, 2, 2, &caps).unwrap();
    assert_eq!(congruence_orbit_min(&group, &c0), congruence_orbit_min(&group, &c1));
    // rank is a congruence invariant
    let zero = FMatrix::zero(&ctx, 2, 2, 2);
    assert!(congruence_oracle(&zero, &c1, &caps).unwrap().is_none());
}

#[test]
fn text_round_trip() {
    let ctx = field(3, 1, 1);
    let m = from_indices(&ctx, 2, &[1, 8, 0, 4]);
    assert_eq!(m.to_text(), "1,8;0,4");
    assert_eq!(FMatrix::parse(&ctx, 2, &m.to_text()).unwrap(), m);
    assert!(FMatrix::parse(&ctx, 2, "1,2;3").is_err());
}

#[test]
fn star_is_involutive_antihomomorphism() {
    let ctx = field(3, 1, 1);
    let a = from_indices(&ctx, 2, &[1, 5, 7, 2]);
    let b = from_indices(&ctx, 2, &[3, 0, 6, 8]);
    assert_eq!(a.star().star(), a);
    assert_eq!((&a * &b).star(), &b.star() * &a.star());
}

fn square(k: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..1 << 20, k * k)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn inverse_and_determinant(idx in square(3), jdx in square(3)) {
        let ctx = field(2, 1, 2);
        let a = from_indices(&ctx, 3, &idx);
        let b = from_indices(&ctx, 3, &jdx);
        let da = a.det().unwrap();
        let db = b.det().unwrap();
        prop_assert_eq!((&a * &b).det().unwrap(), ctx.mul(&da, &db));
        prop_assert_eq!(da.is_zero(), a.rank() < 3);
        match a.inverse() {
            Ok(inv) => prop_assert_eq!(&a * &inv, FMatrix::identity(&ctx, 4, 3)),
            Err(e) => { prop_assert_eq!(e, Error::Singular); prop_assert!(da.is_zero()); }
        }
    }

    #[test]
    fn kernel_dimension_and_membership(idx in prop::collection::vec(0u64..9, 12)) {
        let ctx = field(3, 1, 1);
        let m = FMatrix::new(&ctx, 2, 3, 4, idx.iter().map(|&i| ctx.from_index(i)).collect()).unwrap();
        let ker = m.kernel();
        prop_assert_eq!(ker.len(), 4 - m.rank());
        for v in &ker {
            prop_assert!(m.apply(v).iter().all(Elem::is_zero));
        }
        for v in m.left_kernel() {
            prop_assert!(m.transpose().apply(&v).iter().all(Elem::is_zero));
        }
    }

    #[test]
    fn invariant_factors_are_consistent(idx in square(3)) {
        let ctx = field(3, 1, 1);
        let m = from_indices(&ctx, 3, &idx);
        let inv = m.invariant_factors().unwrap();
        prop_assert!(inv.divisibility_chain_holds());
        prop_assert_eq!(inv.total_degree(), 3);
        let product = inv.factors.iter().fold(FPoly::one(&ctx), |acc, f| acc.mul(f));
        prop_assert_eq!(product, m.charpoly().unwrap());
        // the largest factor is the minimal polynomial
        let minpoly = inv.factors.last().unwrap();
        prop_assert!(eval_poly_at_matrix(minpoly, &m).is_zero());
    }

    #[test]
    fn invariant_factors_are_similarity_invariant(idx in square(3), sdx in square(3)) {
        let ctx = field(2, 1, 2);
        let m = from_indices(&ctx, 3, &idx);
        let s = from_indices(&ctx, 3, &sdx);
        if let Ok(si) = s.inverse() {
            let conj = &(&s * &m) * &si;
            prop_assert!(conjugacy_test(&m, &conj).unwrap());
        }
    }
}

#[test]
fn wall_lemma_gl2_f4() {
    let ctx = field(2, 1, 1);
    let group = general_linear_group(&ctx, 2, 2, &BruteCaps::default()).unwrap();
    let image: std::collections::HashSet<FMatrix> =
        group.iter().map(|c| &c.star() * &c.inverse().unwrap()).collect();
    for a in &group {
        let passes = conjugacy_test(&a.star(), &a.inverse().unwrap()).unwrap();
        assert_eq!(passes, image.contains(a), "{a:?}");
    }
}

#[test]
fn congruence_classes_match_conjugacy_of_star_ratio_gl2_f4() {
    // exhaustive over all pairs, organised by classes on both sides
    let ctx = field(2, 1, 1);
    let group = general_linear_group(&ctx, 2, 2, &BruteCaps::default()).unwrap();
    let mut by_orbit: HashMap<FMatrix, InvariantFactors> = HashMap::new();
    let mut by_factors: HashMap<Vec<Vec<String>>, FMatrix> = HashMap::new();
    for c in &group {
        let orbit = congruence_orbit_min(&group, c);
        let inv = (&c.star() * &c.inverse().unwrap()).invariant_factors().unwrap();
        assert_eq!(by_orbit.entry(orbit.clone()).or_insert(inv.clone()), &inv);
        assert_eq!(by_factors.entry(inv.to_hex()).or_insert(orbit.clone()), &orbit);
    }
    assert_eq!(by_orbit.len(), by_factors.len());
}

#[test]
fn invariant_factor_examples() {
    let ctx = field(3, 1, 1);
    let c = ctx.from_index(5);
    let lin = FPoly::linear(&ctx, &c);
    let scalar = FMatrix::diagonal(&ctx, 2, &[c.clone(), c.clone()]).unwrap();
    assert_eq!(scalar.invariant_factors().unwrap().factors, vec![lin.clone(), lin.clone()]);
    let one = FPoly::linear(&ctx, &ctx.one());
    assert_eq!(FMatrix::identity(&ctx, 2, 2).invariant_factors().unwrap().factors, vec![one.clone(), one]);
    let jordan = FMatrix::from_rows(&ctx, 2, &[vec![c.clone(), ctx.zero()], vec![ctx.one(), c.clone()]]).unwrap();
    assert_eq!(jordan.invariant_factors().unwrap().factors, vec![lin.mul(&lin)]);
    assert_eq!(FMatrix::zero(&ctx, 2, 3, 3).rank(), 0);
    assert_eq!(FMatrix::identity(&ctx, 2, 3).inverse().unwrap(), FMatrix::identity(&ctx, 2, 3));
}
