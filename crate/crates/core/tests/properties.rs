use harmonic_core::exact_arith::{binomial_general, harmonic, int, ratio, rising_factorial};
use harmonic_core::hyperg::{
    andrews_lhs, andrews_rhs, simplex_sum, simplex_sum_naive, whipple_rhs, AndrewsInstance,
};
use harmonic_core::identities::IdentityInstance;
use harmonic_core::{seed_x, Dual, EvalError, Evaluator, Rational, Scalar};
use proptest::prelude::*;

const PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

fn small_rational() -> impl Strategy<Value = Rational> {
    (-3i64..=3, prop::sample::select(PRIMES.to_vec())).prop_map(|(p, q)| ratio(p, q))
}

fn any_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(p, q)| ratio(p, q))
}

fn dual() -> impl Strategy<Value = Dual> {
    (any_rational(), any_rational()).prop_map(|(v, d)| Dual::new(v, d))
}

/// Both sides, or `None` if either hits a zero factor.
fn applicable<T>(l: Result<T, EvalError>, r: Result<T, EvalError>) -> Option<(T, T)> {
    match (l, r) {
        (Ok(l), Ok(r)) => Some((l, r)),
        (l, r) => {
            for e in [l.err(), r.err()].into_iter().flatten() {
                assert!(e.is_inapplicable(), "unexpected error {e}");
            }
            None
        }
    }
}

fn identity_instance(max_m: usize, max_n: usize, max_p: u64) -> impl Strategy<Value = IdentityInstance> {
    (1..=max_m).prop_flat_map(move |m| {
        let w = 2 * m + 2;
        (0..=w, 0..=max_n, prop::collection::vec(0..=max_p, w))
            .prop_map(move |(v, n, p)| IdentityInstance::new(m, v, n, p).unwrap())
    })
}

proptest! {
    #[test]
    fn dual_ring_laws(a in dual(), b in dual(), c in dual()) {
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!(a.clone() - a.clone(), Dual::constant(int(0)));
    }

    #[test]
    fn leibniz_and_quotient(a in dual(), b in dual()) {
        let p = a.clone() * b.clone();
        prop_assert_eq!(&p.deriv, &(&a.value * &b.deriv + &a.deriv * &b.value));
        match a.try_div(&b) {
            Ok(q) => prop_assert_eq!(q * b.clone(), a),
            Err(e) => {
                prop_assert!(matches!(e, EvalError::ZeroValueDivisor));
                prop_assert_eq!(b.value, int(0));
            }
        }
    }

    #[test]
    fn polynomial_derivative(coeffs in prop::collection::vec(any_rational(), 1..6)) {
        // D Σ c_k x^k = c_1
        let x = seed_x();
        let mut power = Dual::constant(int(1));
        let mut total = Dual::constant(int(0));
        for c in &coeffs {
            total = total + power.scale(c);
            power = power * x.clone();
        }
        prop_assert_eq!(total.deriv, coeffs.get(1).cloned().unwrap_or_else(|| int(0)));
        prop_assert_eq!(total.value, coeffs[0].clone());
    }

    #[test]
    fn rising_factorial_splits(x in any_rational(), m in 0usize..=8, n in 0usize..=8) {
        let whole = rising_factorial(&x, m + n);
        prop_assert_eq!(whole, rising_factorial(&x, m) * rising_factorial(&x.shift(m as i64), n));
        let d = Dual::new(x.clone(), int(1));
        let whole = rising_factorial(&d, m + n);
        prop_assert_eq!(whole, rising_factorial(&d, m) * rising_factorial(&d.shift(m as i64), n));
    }

    #[test]
    fn generalized_pascal(a in any_rational(), k in 1usize..=10) {
        let lhs = binomial_general(&a, k);
        let below = a.shift(-1);
        prop_assert_eq!(lhs, binomial_general(&below, k) + binomial_general(&below, k - 1));
    }

    #[test]
    fn harmonic_recurrence(n in 1usize..=300) {
        prop_assert_eq!(harmonic(n), harmonic(n - 1) + ratio(1, n as i64));
    }

    #[test]
    fn andrews_random_instances(
        m in 1usize..=3,
        n in 0usize..=6,
        a in small_rational(),
        p in prop::collection::vec(small_rational(), 8),
    ) {
        let inst = AndrewsInstance::new(a, p[..2 * m + 2].to_vec(), n).unwrap();
        if let Some((l, r)) = applicable(andrews_lhs(&inst), andrews_rhs(&inst)) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn andrews_depth_one_is_whipple(n in 0usize..=6, a in small_rational(), p in prop::collection::vec(small_rational(), 4)) {
        let inst = AndrewsInstance::new(a.clone(), p.clone(), n).unwrap();
        let p4: [Rational; 4] = p.try_into().unwrap();
        if let Some((l, r)) = applicable(andrews_rhs(&inst), whipple_rhs(&a, &p4, n)) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn degenerate_simplex_drops_a_level(
        m in 2usize..=3,
        n in 0usize..=5,
        a in small_rational(),
        p1 in small_rational(),
        rest in prop::collection::vec(small_rational(), 6),
    ) {
        // P_1 + P_2 = 1 + a pins i_1 = 0 and cancels a numerator/denominator pair
        let p2 = a.shift(1) - p1.clone();
        let mut p = vec![p1, p2];
        p.extend_from_slice(&rest[..2 * m]);
        let full = AndrewsInstance::new(a.clone(), p.clone(), n).unwrap();
        let reduced = AndrewsInstance::new(a, p[2..].to_vec(), n).unwrap();
        if let Some((full_l, red_l)) = applicable(andrews_lhs(&full), andrews_lhs(&reduced)) {
            prop_assert_eq!(full_l, red_l);
        }
        if let Some((full_r, red_r)) = applicable(andrews_rhs(&full), andrews_rhs(&reduced)) {
            prop_assert_eq!(full_r, red_r);
        }
    }

    #[test]
    fn simplex_chain_matches_naive(
        m in 1usize..=3,
        n in 0usize..=4,
        a in small_rational(),
        p in prop::collection::vec(small_rational(), 8),
    ) {
        let p = &p[..2 * m + 2];
        match (simplex_sum(&a, p, n), simplex_sum_naive(&a, p, n)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(x), Err(y)) => prop_assert!(x.is_inapplicable() && y.is_inapplicable()),
            (x, y) => prop_assert!(false, "chain {:?} vs naive {:?}", x, y),
        }
    }

    #[test]
    fn theorem_equality_sampled(inst in identity_instance(3, 8, 3)) {
        let ev = Evaluator::new();
        if let Some((l, r)) = applicable(Ok(ev.theorem_lhs(&inst)), ev.theorem_rhs(&inst)) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn derivation_oracle_sampled(inst in identity_instance(2, 6, 2)) {
        let ev = Evaluator::new();
        let x = seed_x();
        if let Some((pre_l, pre_r)) = applicable(ev.pre_identity_lhs(&inst, &x), ev.pre_identity_rhs(&inst, &x)) {
            prop_assert_eq!(pre_l.value, int(0));
            prop_assert_eq!(pre_r.value, int(0));
            prop_assert_eq!(pre_l.deriv, ev.theorem_lhs(&inst));
            prop_assert_eq!(Ok(pre_r.deriv), ev.theorem_rhs(&inst));
        }
    }

    #[test]
    fn pre_identity_holds_off_zero(inst in identity_instance(2, 4, 2), x in small_rational()) {
        let ev = Evaluator::new();
        if let Some((l, r)) = applicable(ev.pre_identity_lhs(&inst, &x), ev.pre_identity_rhs(&inst, &x)) {
            prop_assert_eq!(l, r);
        }
    }

    #[test]
    fn proposition_matches_theorem(inst in identity_instance(2, 6, 2)) {
        let ev = Evaluator::new();
        if let Some((p, t)) = applicable(ev.proposition_rhs(&inst), ev.theorem_rhs(&inst)) {
            prop_assert_eq!(p, t);
        }
    }
}
