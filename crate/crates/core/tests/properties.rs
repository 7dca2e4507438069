//! Randomized algebraic laws for fields, group rings, cyclotomic carriers,
//! permanents and interpolation.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use permcount::group_ring::eval_trace_character;
use permcount::oracle::{evaluate, interpolate_values};
use permcount::{permanent_naive, permanent_ryser, Config, CycloElem, FieldCtx, FieldElem, GroupRingElem, RingMatrix};
use proptest::prelude::*;

/// Fields exercised by the randomized laws, as (p, r).
const FIELDS: [(u32, u32); 9] = [(2, 1), (3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2), (2, 4), (5, 2)];

fn fields() -> &'static [Arc<FieldCtx>] {
    static CELL: OnceLock<Vec<Arc<FieldCtx>>> = OnceLock::new();
    CELL.get_or_init(|| {
        FIELDS
            .iter()
            .map(|&(p, r)| Arc::new(FieldCtx::build(p, r, None).unwrap()))
            .collect()
    })
}

fn any_field() -> impl Strategy<Value = Arc<FieldCtx>> {
    (0..FIELDS.len()).prop_map(|i| fields()[i].clone())
}

fn elems(ctx: &Arc<FieldCtx>, k: usize) -> impl Strategy<Value = Vec<FieldElem>> {
    let ctx = ctx.clone();
    prop::collection::vec(0..ctx.q(), k).prop_map(move |codes| codes.into_iter().map(|c| ctx.elem(c)).collect())
}

fn field_with(k: usize) -> impl Strategy<Value = (Arc<FieldCtx>, Vec<FieldElem>)> {
    any_field().prop_flat_map(move |ctx| (Just(ctx.clone()), elems(&ctx, k)))
}

fn group_ring_elem(ctx: &Arc<FieldCtx>, m: usize) -> impl Strategy<Value = GroupRingElem> {
    let ctx = ctx.clone();
    prop::collection::vec((prop::collection::vec(0..ctx.q(), m), -20i64..=20), 0..6).prop_map(move |terms| {
        let terms = terms
            .into_iter()
            .map(|(codes, c)| (codes.into_iter().map(|x| ctx.elem(x)).collect(), BigInt::from(c)));
        GroupRingElem::from_terms(&ctx, m, terms).unwrap()
    })
}

fn group_ring_triple() -> impl Strategy<Value = (GroupRingElem, GroupRingElem, GroupRingElem)> {
    (any_field(), 1usize..=2).prop_flat_map(|(ctx, m)| {
        (
            group_ring_elem(&ctx, m),
            group_ring_elem(&ctx, m),
            group_ring_elem(&ctx, m),
        )
    })
}

fn cyclo_elem(order: usize) -> impl Strategy<Value = CycloElem> {
    prop::collection::vec((-30i64..=30).prop_map(BigInt::from), order).prop_map(CycloElem::from_coeffs)
}

fn int_matrix(max_n: usize) -> impl Strategy<Value = RingMatrix<BigInt>> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-9i64..=9, n * n)
            .prop_map(move |v| RingMatrix::new(n, v.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

fn group_ring_matrix(max_n: usize) -> impl Strategy<Value = RingMatrix<GroupRingElem>> {
    (any_field(), 1..=max_n).prop_flat_map(|(ctx, n)| {
        prop::collection::vec(group_ring_elem(&ctx, 1), n * n).prop_map(move |v| RingMatrix::new(n, v).unwrap())
    })
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms((ctx, v) in field_with(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(ctx.add(a, b), ctx.add(b, a));
        prop_assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
        prop_assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
        prop_assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
        prop_assert_eq!(ctx.mul(a, ctx.add(b, c)), ctx.add(ctx.mul(a, b), ctx.mul(a, c)));
        prop_assert_eq!(ctx.add(a, FieldElem::ZERO), a);
        prop_assert_eq!(ctx.mul(a, FieldElem::ONE), a);
        prop_assert_eq!(ctx.add(a, ctx.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(ctx.sub(a, b), ctx.add(a, ctx.neg(b)));
        if a.is_zero() {
            prop_assert!(ctx.inv(a).is_err());
        } else {
            prop_assert_eq!(ctx.mul(a, ctx.inv(a).unwrap()), FieldElem::ONE);
            prop_assert_eq!(ctx.pow(a, ctx.q() as i64 - 1), FieldElem::ONE);
            prop_assert_eq!(ctx.omega_pow(ctx.log(a).unwrap() as i64), a);
        }
        // Frobenius is additive and the trace is F_p-linear
        let p = ctx.p() as i64;
        prop_assert_eq!(ctx.pow(ctx.add(a, b), p), ctx.add(ctx.pow(a, p), ctx.pow(b, p)));
        prop_assert_eq!(ctx.trace(ctx.add(a, b)), (ctx.trace(a) + ctx.trace(b)) % ctx.p());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn group_ring_axioms((a, b, c) in group_ring_triple()) {
        let add = |x: &GroupRingElem, y: &GroupRingElem| x.try_add(y).unwrap();
        let mul = |x: &GroupRingElem, y: &GroupRingElem| x.try_mul(y).unwrap();
        prop_assert_eq!(add(&a, &b), add(&b, &a));
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(add(&add(&a, &b), &c), add(&a, &add(&b, &c)));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        let one = GroupRingElem::one(a.field(), a.arity()).unwrap();
        prop_assert_eq!(mul(&a, &one), a.clone());
        prop_assert!(a.try_sub(&a).unwrap().is_zero());
        prop_assert_eq!(a.total_mass() * b.total_mass(), mul(&a, &b).total_mass());
        prop_assert_eq!(a.constant_term_of_product(&b).unwrap(), mul(&a, &b).constant_term());
    }

    #[test]
    fn cyclotomic_axioms(
        (a, b, c) in (1usize..=12).prop_flat_map(|n| (cyclo_elem(n), cyclo_elem(n), cyclo_elem(n)))
    ) {
        let add = |x: &CycloElem, y: &CycloElem| x.try_add(y).unwrap();
        let mul = |x: &CycloElem, y: &CycloElem| x.try_mul(y).unwrap();
        prop_assert_eq!(mul(&a, &b), mul(&b, &a));
        prop_assert_eq!(mul(&mul(&a, &b), &c), mul(&a, &mul(&b, &c)));
        prop_assert_eq!(mul(&a, &add(&b, &c)), add(&mul(&a, &b), &mul(&a, &c)));
        prop_assert_eq!(mul(&a, &CycloElem::one(a.order())), a.clone());
        prop_assert_eq!(mul(&a, &b).conj(), mul(&a.conj(), &b.conj()));
        prop_assert_eq!(mul(&a, &b).sum_of_coeffs(), a.sum_of_coeffs() * b.sum_of_coeffs());
    }

    #[test]
    fn trace_character_is_a_ring_homomorphism(
        (a, b) in any_field().prop_flat_map(|ctx| (group_ring_elem(&ctx, 1), group_ring_elem(&ctx, 1)))
    ) {
        let ctx = a.field().clone();
        let phi = |x: &GroupRingElem| eval_trace_character(&ctx, x).unwrap();
        prop_assert_eq!(phi(&a.try_add(&b).unwrap()), phi(&a).try_add(&phi(&b)).unwrap());
        prop_assert_eq!(phi(&a.try_mul(&b).unwrap()), phi(&a).try_mul(&phi(&b)).unwrap());
        prop_assert_eq!(phi(&GroupRingElem::one(&ctx, 1).unwrap()), CycloElem::one(ctx.p() as usize));
    }

    #[test]
    fn ryser_matches_naive_on_integers(m in int_matrix(7)) {
        let cfg = Config::default();
        prop_assert_eq!(permanent_ryser(&m, &cfg).unwrap(), permanent_naive(&m, &cfg.guards).unwrap());
    }

    #[test]
    fn permanent_is_multilinear_in_rows(
        (m, row, k, other) in int_matrix(6).prop_flat_map(|m| {
            let n = m.dim();
            (Just(m), 0..n, -5i64..=5, prop::collection::vec(-9i64..=9, n))
        })
    ) {
        let cfg = Config::default();
        let per = |x: &RingMatrix<BigInt>| permanent_ryser(x, &cfg).unwrap();
        let k = BigInt::from(k);
        prop_assert_eq!(per(&m.scale_row(row, &k)), &k * per(&m));
        // additivity in one row: replace row by row + other
        let n = m.dim();
        let other: Vec<BigInt> = other.into_iter().map(BigInt::from).collect();
        let replaced = |f: &dyn Fn(usize) -> BigInt| {
            RingMatrix::from_fn(n, |i, j| if i == row { f(j) } else { m.get(i, j).clone() }).unwrap()
        };
        let summed = replaced(&|j| m.get(row, j) + &other[j]);
        let swapped = replaced(&|j| other[j].clone());
        prop_assert_eq!(per(&summed), per(&m) + per(&swapped));
    }

    #[test]
    fn permanent_ignores_row_and_column_order(
        (m, rows, cols) in int_matrix(7).prop_flat_map(|m| {
            let n = m.dim();
            (Just(m), permutation(n), permutation(n))
        })
    ) {
        let cfg = Config::default();
        let moved = m.permute_rows(&rows).permute_cols(&cols);
        prop_assert_eq!(permanent_ryser(&moved, &cfg).unwrap(), permanent_ryser(&m, &cfg).unwrap());
    }

    #[test]
    fn parallel_ryser_is_bit_identical(m in int_matrix(8)) {
        let seq = permanent_ryser(&m, &Config::with_threads(1)).unwrap();
        for t in [2, 8] {
            prop_assert_eq!(&permanent_ryser(&m, &Config::with_threads(t)).unwrap(), &seq);
        }
    }

    #[test]
    fn interpolation_inverts_evaluation(
        (ctx, coeffs) in any_field()
            .prop_filter("needs q >= 3", |ctx| ctx.q() >= 3)
            .prop_flat_map(|ctx| { let k = ctx.q() as usize - 2; (Just(ctx.clone()), elems(&ctx, k)) })
    ) {
        let values = evaluate(&ctx, &coeffs);
        prop_assert_eq!(interpolate_values(&ctx, &values).coeffs, coeffs);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ryser_matches_naive_on_group_rings(m in group_ring_matrix(5)) {
        let cfg = Config::default();
        let ryser = permanent_ryser(&m, &cfg).unwrap();
        prop_assert_eq!(&ryser, &permanent_naive(&m, &cfg.guards).unwrap());
        for t in [2, 8] {
            prop_assert_eq!(&permanent_ryser(&m, &Config::with_threads(t)).unwrap(), &ryser);
        }
    }
}
