use std::collections::HashSet;

use proptest::prelude::*;

use super::*;

fn field(p: u64, e: u32, n: u32) -> FieldCtx {
    FieldCtx::build(p, e, n, None).unwrap()
}

fn lp(ctx: &FieldCtx, idx: &[u64]) -> LinPoly {
    LinPoly::new(ctx, idx.iter().map(|&i| ctx.from_index(i % ctx.size())).collect()).unwrap()
}

fn brute_kernel_size(l: &LinPoly) -> u64 {
    l.ctx().elements().filter(|v| l.eval(v).is_zero()).count() as u64
}

#[test]
fn trivial_evaluations() {
    let ctx = field(2, 1, 2);
    let zero = LinPoly::zero(&ctx);
    let id = LinPoly::identity(&ctx);
    let frob = LinPoly::monomial(&ctx, 1, ctx.one());
    for v in ctx.elements() {
        assert!(zero.eval(&v).is_zero());
        assert_eq!(id.eval(&v), v);
        assert_eq!(frob.eval(&v), ctx.frob_q2(&v));
    }
    for v in ctx.k_elements() {
        assert_eq!(frob.eval(&v), v);
    }
    let other = field(2, 1, 2);
    assert_eq!(id.try_eval(&other.one()), Err(Error::MixedContexts));
    assert!(matches!(LinPoly::new(&ctx, vec![ctx.one(); 3]), Err(Error::PolyDegree(_))));
}

#[test]
fn adjoint_closed_form_n2() {
    // L = a x^{q^2} + b x  gives  L* = b^{q^3} x^{q^2} + a^q x
    let ctx = field(2, 1, 2);
    for a in ctx.elements() {
        for b in ctx.elements() {
            let l = LinPoly::new(&ctx, vec![b.clone(), a.clone()]).unwrap();
            let want = LinPoly::new(&ctx, vec![ctx.frob_q(&a), ctx.frobenius(&b, 3)]).unwrap();
            assert_eq!(l.adjoint(), want);
        }
    }
}

#[test]
fn adjoint_identity_exhaustive_f16() {
    let ctx = field(2, 1, 2);
    let elems: Vec<Elem> = ctx.elements().collect();
    for l in LinPoly::enumerate_all(&ctx).step_by(17) {
        let la = l.adjoint();
        for u in &elems {
            for v in &elems {
                let lhs = ctx.trace(&ctx.mul(u, &la.eval(&ctx.frob_q(v))));
                let rhs = ctx.frob_q(&ctx.trace(&ctx.mul(v, &l.eval(&ctx.frob_q(u)))));
                assert_eq!(lhs, rhs);
            }
        }
    }
}

#[test]
fn adjoint_identity_f81_sample() {
    let ctx = field(3, 1, 2);
    let elems: Vec<Elem> = ctx.elements().collect();
    let l = lp(&ctx, &[5, 40]);
    let la = l.adjoint();
    for u in &elems {
        for v in elems.iter().step_by(4) {
            let lhs = ctx.trace(&ctx.mul(u, &la.eval(&ctx.frob_q(v))));
            let rhs = ctx.frob_q(&ctx.trace(&ctx.mul(v, &l.eval(&ctx.frob_q(u)))));
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn adjoint_is_involutive_and_semilinear() {
    for ctx in [field(2, 1, 2), field(2, 1, 3), field(3, 1, 2), field(2, 2, 2)] {
        let k = ctx.k_elements();
        for (t, l) in LinPoly::enumerate_all(&ctx).step_by(997).take(40).enumerate() {
            assert_eq!(l.adjoint().adjoint(), l);
            let alpha = &k[t % k.len()];
            assert_eq!(l.scale(alpha).adjoint(), l.adjoint().scale(&ctx.frob_q(alpha)));
        }
    }
}

#[test]
fn coefficient_vectors_determine_maps() {
    let ctx = field(2, 1, 2);
    let elems: Vec<Elem> = ctx.elements().collect();
    let mut seen = HashSet::new();
    for l in LinPoly::enumerate_all(&ctx) {
        let table: Vec<Elem> = elems.iter().map(|v| l.eval(v)).collect();
        assert!(seen.insert(table));
    }
    assert_eq!(seen.len(), 256);
}

#[test]
fn compose_and_combine_examples() {
    let ctx = field(2, 1, 3);
    let l = lp(&ctx, &[3, 17, 40]);
    assert_eq!(LinPoly::identity(&ctx).compose(&l).unwrap(), l);
    let up = LinPoly::monomial(&ctx, 1, ctx.one());
    let down = LinPoly::monomial(&ctx, 2, ctx.one());
    assert_eq!(up.compose(&down).unwrap(), LinPoly::identity(&ctx));
    assert!(LinPoly::combine(&l, &ctx.one(), &l, &ctx.from_int(-1)).unwrap().is_zero());
    assert!(l.sub(&l).unwrap().is_zero());
}

#[test]
fn kernel_examples() {
    let ctx = field(3, 1, 2);
    assert_eq!(LinPoly::zero(&ctx).kernel().0, 2);
    assert_eq!(LinPoly::identity(&ctx).kernel().0, 0);
    let l = LinPoly::monomial(&ctx, 1, ctx.one()).sub(&LinPoly::identity(&ctx)).unwrap();
    let (dim, basis) = l.kernel();
    assert_eq!(dim, 1);
    assert!(ctx.in_k(&basis[0]) && !basis[0].is_zero());
}

#[test]
fn matrix_examples() {
    let ctx = field(2, 1, 3);
    let b = VectorBasis::standard(&ctx);
    assert_eq!(LinPoly::identity(&ctx).to_matrix(&b).unwrap(), FMatrix::identity(&ctx, 2, 3));
    assert!(LinPoly::zero(&ctx).to_matrix(&b).unwrap().is_zero());
}

#[test]
fn rank_nullity_against_enumeration_f16() {
    let ctx = field(2, 1, 2);
    let b = VectorBasis::standard(&ctx);
    for l in LinPoly::enumerate_all(&ctx) {
        let (dim, basis) = l.kernel();
        assert_eq!(brute_kernel_size(&l), 4u64.pow(dim as u32));
        assert!(basis.iter().all(|v| l.eval(v).is_zero()));
        assert_eq!(l.to_matrix(&b).unwrap().rank(), 2 - dim);
        assert_eq!(l.image().len(), 2 - dim);
        assert_eq!(l.adjoint().kernel().0, dim);
    }
}

#[test]
fn text_round_trip() {
    let ctx = field(3, 1, 2);
    let l = lp(&ctx, &[0x1f, 3]);
    assert_eq!(l.to_text(), "1f,3");
    assert_eq!(LinPoly::parse(&ctx, &l.to_text()).unwrap(), l);
    assert_eq!(LinPoly::parse(&ctx, "2").unwrap(), lp(&ctx, &[2, 0]));
    assert!(LinPoly::parse(&ctx, "1,2,3").is_err());
}

fn coeffs(n: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(any::<u64>(), n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative_and_evaluates(a in coeffs(3), b in coeffs(3), c in coeffs(3), v in any::<u64>()) {
        let ctx = field(2, 1, 3);
        let (la, lb, lc) = (lp(&ctx, &a), lp(&ctx, &b), lp(&ctx, &c));
        let v = ctx.from_index(v % ctx.size());
        let ab = la.compose(&lb).unwrap();
        prop_assert_eq!(ab.eval(&v), la.eval(&lb.eval(&v)));
        prop_assert_eq!(ab.compose(&lc).unwrap(), la.compose(&lb.compose(&lc).unwrap()).unwrap());
    }

    #[test]
    fn eval_is_k_linear(a in coeffs(2), u in any::<u64>(), v in any::<u64>(), s in 0usize..9) {
        let ctx = field(3, 1, 2);
        let l = lp(&ctx, &a);
        let u = ctx.from_index(u % ctx.size());
        let v = ctx.from_index(v % ctx.size());
        let s = &ctx.k_elements()[s];
        prop_assert_eq!(l.eval(&ctx.add(&u, &ctx.mul(s, &v))), ctx.add(&l.eval(&u), &ctx.mul(s, &l.eval(&v))));
    }

    #[test]
    fn matrix_application_matches_eval(a in coeffs(3), v in any::<u64>()) {
        let ctx = field(3, 1, 3);
        let l = lp(&ctx, &a);
        let b = VectorBasis::standard(&ctx);
        let m = l.to_matrix(&b).unwrap();
        let v = ctx.from_index(v % ctx.size());
        prop_assert_eq!(b.combine(&m.apply(&b.coords(&v))), l.eval(&v));
        prop_assert_eq!(m.rank() + l.kernel().0, 3);
    }
}
