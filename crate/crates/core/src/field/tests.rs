use super::*;

fn field(p: u64, e: u32, n: u32) -> FieldCtx {
    FieldCtx::build(p, e, n, None).unwrap()
}

#[test]
fn sizes() {
    assert_eq!(field(2, 1, 1).size(), 4);
    assert_eq!(field(3, 1, 2).size(), 81);
    assert_eq!(field(2, 2, 1).size(), 16);
    assert_eq!(FieldCtx::build(4, 1, 1, None).unwrap_err(), Error::NotPrime(4));
}

#[test]
fn modulus_validation() {
    // x^2 + 1 = (x + 1)^2 over F_2
    assert_eq!(
        FieldCtx::build(2, 1, 1, Some(&[1, 0, 1])).unwrap_err(),
        Error::ReducibleModulus(2)
    );
    assert!(matches!(
        FieldCtx::build(2, 1, 1, Some(&[1, 1, 0, 1])),
        Err(Error::DegreeMismatch { expected: 2, found: 3 })
    ));
    let ctx = FieldCtx::build(2, 1, 2, Some(&[1, 1, 0, 0, 1])).unwrap();
    assert_eq!(ctx.modulus(), &[1, 1, 0, 0, 1]);
    assert!(matches!(FieldCtx::build(2, 32, 1, None), Err(Error::Overflow(_))));
}

#[test]
fn default_modulus_and_generator() {
    let ctx = field(2, 1, 2);
    assert_eq!(ctx.modulus(), &[1, 0, 0, 1, 1]);
    let g = ctx.generator();
    assert_eq!(ctx.order(&g).unwrap(), 15);
    // every lexicographically smaller nonzero element has smaller order
    for u in ctx.elements().filter(|u| !u.is_zero() && *u < g) {
        assert!(ctx.order(&u).unwrap() < 15);
    }
}

#[test]
fn arithmetic_laws_f4() {
    let ctx = field(2, 1, 1);
    let g = ctx.generator();
    assert_eq!(ctx.mul(&g, &ctx.inv(&g).unwrap()), ctx.one());
    for u in ctx.elements() {
        assert!(ctx.add(&u, &u).is_zero());
        assert_eq!(ctx.pow(&u, ctx.size() as u128), u);
    }
}

#[test]
fn field_axioms_exhaustive_small() {
    for ctx in [field(2, 1, 2), field(3, 1, 1), field(5, 1, 1)] {
        let elems: Vec<Elem> = ctx.elements().collect();
        for a in &elems {
            assert_eq!(ctx.pow(a, ctx.size() as u128), *a);
            if !a.is_zero() {
                assert_eq!(ctx.mul(a, &ctx.inv(a).unwrap()), ctx.one());
            }
            for b in &elems {
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.sub(&ctx.add(a, b), b), *a);
                for c in elems.iter().step_by(3) {
                    assert_eq!(
                        ctx.mul(a, &ctx.add(b, c)),
                        ctx.add(&ctx.mul(a, b), &ctx.mul(a, c))
                    );
                }
            }
        }
    }
}

#[test]
fn checked_ops_report_errors() {
    let a = field(2, 1, 1);
    let b = field(2, 1, 1);
    assert_eq!(a.try_binary(BinOp::Add, &a.one(), &b.one()), Err(Error::MixedContexts));
    assert_eq!(a.try_binary(BinOp::Div, &a.one(), &a.zero()), Err(Error::DivisionByZero));
    assert_eq!(a.try_binary(BinOp::Mul, &a.one(), &a.one()), Ok(a.one()));
    assert_eq!(a.try_pow(&b.one(), 3), Err(Error::MixedContexts));
}

#[test]
fn frobenius_orbits() {
    let ctx = field(2, 1, 1);
    for u in ctx.elements() {
        assert_eq!(ctx.frobenius(&u, 2), u);
        assert_eq!(ctx.frob_q(&ctx.frob_q(&u)), ctx.frob_q2(&u));
        assert_eq!(ctx.frobenius(&ctx.frobenius(&u, 1), -1), u);
    }
    assert!(ctx.frobenius(&ctx.zero(), 5).is_zero());
    let ctx = field(3, 1, 2);
    for u in ctx.elements() {
        assert_eq!(ctx.frobenius(&u, ctx.degree() as i64), u);
        assert_eq!(ctx.frobenius(&u, 1), ctx.pow(&u, 3));
    }
}

#[test]
fn trace_and_norm_f4() {
    let ctx = field(2, 1, 1);
    assert!(ctx.rel_trace(&ctx.one(), 2, 1).unwrap().is_zero());
    assert!(ctx.rel_trace(&ctx.zero(), 2, 1).unwrap().is_zero());
    for u in ctx.elements().filter(|u| !u.is_zero()) {
        assert_eq!(ctx.rel_norm(&u, 2, 1).unwrap(), ctx.one());
    }
    assert!(matches!(
        ctx.rel_trace(&ctx.one(), 2, 3),
        Err(Error::NonDivisibleDegrees { .. })
    ));
}

#[test]
fn trace_norm_homomorphisms_and_transitivity() {
    let ctx = field(2, 1, 3); // F_64, degrees 1,2,3,6
    let elems: Vec<Elem> = ctx.elements().collect();
    for u in &elems {
        let via_2 = ctx.rel_trace(&ctx.rel_trace(u, 6, 2).unwrap(), 2, 1).unwrap();
        let via_3 = ctx.rel_trace(&ctx.rel_trace(u, 6, 3).unwrap(), 3, 1).unwrap();
        let direct = ctx.rel_trace(u, 6, 1).unwrap();
        assert_eq!(via_2, direct);
        assert_eq!(via_3, direct);
        assert_eq!(ctx.trace(u), ctx.rel_trace(u, 6, 2).unwrap());
        assert_eq!(ctx.abs_trace(u), direct.coords()[0]);
        for v in elems.iter().step_by(5) {
            assert_eq!(
                ctx.rel_trace(&ctx.add(u, v), 6, 2).unwrap(),
                ctx.add(&ctx.rel_trace(u, 6, 2).unwrap(), &ctx.rel_trace(v, 6, 2).unwrap())
            );
            assert_eq!(
                ctx.rel_norm(&ctx.mul(u, v), 6, 2).unwrap(),
                ctx.mul(&ctx.rel_norm(u, 6, 2).unwrap(), &ctx.rel_norm(v, 6, 2).unwrap())
            );
        }
    }
}

#[test]
fn subfields_are_frobenius_fixed_sets() {
    let ctx = field(2, 1, 3);
    for k in [1usize, 2, 3, 6] {
        let mut fixed: Vec<Elem> = ctx.elements().filter(|u| ctx.in_subfield(u, k)).collect();
        fixed.sort();
        assert_eq!(fixed.len() as u64, ctx.subfield_size(k));
        let mut listed = ctx.subfield_elements(k);
        listed.sort();
        assert_eq!(listed, fixed);
    }
}

#[test]
fn q_power_is_nontrivial_involution_on_k() {
    for ctx in [field(2, 1, 2), field(3, 1, 1), field(2, 2, 1)] {
        let k = ctx.k_elements();
        assert!(k.iter().all(|t| ctx.frob_q(&ctx.frob_q(t)) == *t));
        assert!(k.iter().any(|t| ctx.frob_q(t) != *t));
    }
}

#[test]
fn linear_forms_are_trace_forms() {
    // alpha -> Tr(alpha * .) is injective
    let ctx = field(2, 1, 2);
    let elems: Vec<Elem> = ctx.elements().collect();
    let mut seen = std::collections::HashSet::new();
    for alpha in &elems {
        let table: Vec<Elem> = elems.iter().map(|u| ctx.trace(&ctx.mul(alpha, u))).collect();
        assert!(seen.insert(table));
    }
}

#[test]
fn pow_reduces_large_exponents() {
    let ctx = field(3, 1, 1);
    let g = ctx.generator();
    let big = (ctx.size() as u128 - 1) * 1_000_003 + 5;
    assert_eq!(ctx.pow(&g, big), ctx.pow(&g, 5));
    assert_eq!(ctx.pow(&ctx.zero(), 0), ctx.one());
}

#[test]
fn unit_circle_is_norm_one_group() {
    for ctx in [field(2, 1, 2), field(3, 1, 1), field(2, 2, 1)] {
        let q = ctx.q() as u128;
        let u = ctx.unit_circle();
        assert_eq!(u.len() as u128, q + 1);
        let mut seen = std::collections::HashSet::new();
        for x in &u {
            assert!(seen.insert(x.clone()));
            assert_eq!(ctx.pow(x, q + 1), ctx.one());
        }
        let brute = ctx.k_elements().iter().filter(|t| !t.is_zero() && ctx.pow(t, q + 1) == ctx.one()).count();
        assert_eq!(brute as u128, q + 1);
    }
}
