//! Seeded pseudo-random rational instances for the Whipple and Andrews
//! families, filtered for applicability before they enter a sweep.

use std::ops::RangeInclusive;

use harmonic_core::exact_arith::ratio;
use harmonic_core::identities::Case;
use harmonic_core::{Evaluator, Rational, Verdict};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DENOMINATOR_PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

/// Draw bounds for generated instances.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub seed: u64,
    pub count: usize,
    pub n: RangeInclusive<usize>,
    /// Andrews depth; ignored for Whipple.
    pub m: RangeInclusive<usize>,
    /// Numerators are drawn from `±1..=numerator_bound`.
    pub numerator_bound: i64,
}

impl Default for RandomSpec {
    fn default() -> Self {
        RandomSpec { seed: 0, count: 50, n: 0..=6, m: 1..=3, numerator_bound: 3 }
    }
}

/// Accepted cases plus how many draws were discarded as inapplicable.
#[derive(Clone, Debug, Default)]
pub struct Generated {
    pub cases: Vec<Case>,
    pub skipped: usize,
}

/// Nonzero numerator: a zero parameter collapses the series to 1.
fn draw_rational(rng: &mut ChaCha8Rng, bound: i64) -> Rational {
    let p = rng.gen_range(1..=bound) * if rng.gen() { 1 } else { -1 };
    let q = *DENOMINATOR_PRIMES.choose(rng).expect("nonempty");
    ratio(p, q)
}

fn draw_case(rng: &mut ChaCha8Rng, spec: &RandomSpec, andrews: bool) -> Case {
    let n = rng.gen_range(spec.n.clone());
    let a = draw_rational(rng, spec.numerator_bound);
    if andrews {
        let m = rng.gen_range(spec.m.clone());
        let p = (0..2 * m + 2).map(|_| draw_rational(rng, spec.numerator_bound)).collect();
        Case::Andrews(harmonic_core::hyperg::AndrewsInstance::new(a, p, n).expect("arity 2m+2"))
    } else {
        let p = std::array::from_fn(|_| draw_rational(rng, spec.numerator_bound));
        Case::Whipple { a, p, n }
    }
}

/// Draw `spec.count` applicable instances, test-evaluating each draw and
/// discarding those with a zero factor. Gives up after `1000 * count`
/// draws, returning what it has.
pub fn random_cases(spec: &RandomSpec, andrews: bool) -> Generated {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let ev = Evaluator::new();
    let mut out = Generated::default();
    if spec.n.is_empty() || (andrews && (spec.m.is_empty() || *spec.m.start() == 0)) {
        return out;
    }
    let budget = spec.count.saturating_mul(1000);
    let mut draws = 0;
    while out.cases.len() < spec.count && draws < budget {
        draws += 1;
        let case = draw_case(&mut rng, spec, andrews);
        if ev.evaluate(&case).verdict == Verdict::Inapplicable {
            out.skipped += 1;
        } else {
            out.cases.push(case);
        }
    }
    out
}

/// Every `(a, P)` with entries from `grid`, for each `n` and depth `m`.
pub fn grid_cases(
    grid: &[Rational],
    n: RangeInclusive<usize>,
    m: RangeInclusive<usize>,
    andrews: bool,
) -> Vec<Case> {
    let depths: Vec<usize> = if andrews { m.filter(|&m| m >= 1).collect() } else { vec![1] };
    let mut out = Vec::new();
    for m in depths {
        let width = 2 * m + 2;
        for tuple in product(grid, width + 1) {
            let (a, p) = (tuple[0].clone(), tuple[1..].to_vec());
            for n in n.clone() {
                out.push(if andrews {
                    Case::Andrews(
                        harmonic_core::hyperg::AndrewsInstance::new(a.clone(), p.clone(), n)
                            .expect("arity 2m+2"),
                    )
                } else {
                    Case::Whipple { a: a.clone(), p: p.clone().try_into().expect("four"), n }
                });
            }
        }
    }
    out
}

fn product(grid: &[Rational], len: usize) -> Vec<Vec<Rational>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<Rational>| {
                grid.iter().map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x.clone());
                    t
                })
            })
            .collect();
    }
    out
}
