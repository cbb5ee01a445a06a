//! End-to-end checks of the whole pipeline against independent oracles.
//!
//! Each criterion is timed against a fixed budget and reports a one-line
//! verdict. The suite backs both the `selftest` subcommand and the
//! `acceptance` integration test.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::klbgg::{compute_kl_table, KLPolynomial, KlCache};
use crate::kostant::{
    cone_points, simple_character_bgg, takiff_verma_character, weyl_character_formula,
    PartitionCache, PartitionRegistry,
};
use crate::rootdata::{parse_rational, rat, Rational, RootSystem, RootVector, Weight};
use crate::takiffmult::{takiff_mult, takiff_mult_series, takiff_mult_via};
use crate::weyl::{
    all_elements, bruhat_leq, minimal_levi_reduction, phi_mu, prefix_pairings_nonzero,
    CoxeterGroup, LeviDatum, WeylElement,
};

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub elapsed: Duration,
    pub limit: Duration,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "criterion {} {}: {} ({:.2} s, limit {} s) {}",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

const CRITERIA: [(u8, &str, u64, Check); 8] = [
    (
        1,
        "sl2 Takiff series against character peeling",
        1,
        sl2_series,
    ),
    (
        2,
        "mu=0 character identity in A2 and B2",
        30,
        character_identity,
    ),
    (
        3,
        "KL orientation: BGG inversion equals Weyl character formula",
        30,
        orientation_pin,
    ),
    (4, "KL engine exhaustive over W(A3)", 120, kl_engine),
    (5, "partition identities", 30, partition_identities),
    (6, "minimal Levi reduction", 60, levi_reduction),
    (7, "generic-mu closed form p(-nu)", 10, generic_closed_form),
    (8, "structural properties", 30, structural),
];

/// Ids of all criteria, in order.
pub fn criterion_ids() -> Vec<u8> {
    CRITERIA.iter().map(|c| c.0).collect()
}

/// Runs a single criterion; `None` for an unknown id.
pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    let &(id, name, secs, check) = CRITERIA.iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let outcome = check();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(secs);
    let (ok, mut detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > limit {
        detail.push_str(" [over time budget]");
    }
    Some(CriterionReport {
        id,
        name,
        passed: ok && elapsed <= limit,
        elapsed,
        limit,
        detail,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    criterion_ids()
        .into_iter()
        .filter_map(run_criterion)
        .collect()
}

fn rs(t: &str) -> RootSystem {
    RootSystem::new(&t.parse().expect("valid type"))
}

fn weight(rs: &RootSystem, coords: &[i64]) -> Weight {
    debug_assert_eq!(rs.torus_rank(), 0);
    Weight::from_ints(coords)
}

fn fail(msgs: &mut Vec<String>, msg: String) {
    if msgs.len() < 5 {
        msgs.push(msg);
    }
}

fn verdict(problems: Vec<String>, ok_detail: String) -> Result<(bool, String)> {
    if problems.is_empty() {
        Ok((true, ok_detail))
    } else {
        Ok((false, problems.join("; ")))
    }
}

/// Multiplicities of simple sl2 modules in `sum_{m>=0} ch M(-2m)`, by
/// repeatedly removing the character of the simple module at the highest
/// remaining weight. Returns `(c, multiplicity)` for `c = 0, -2, ...` down to
/// depth `depth`.
fn sl2_peeling_oracle(depth: usize) -> Vec<(i64, u64)> {
    // depth k of the Takiff Verma module is spanned by f^a fbar^b, a + b = k
    let mut rem: Vec<i64> = (0..=depth).map(|k| k as i64 + 1).collect();
    let mut out = Vec::new();
    for k in 0..=depth {
        let m = rem[k];
        assert!(m >= 0, "peeling went negative");
        if m == 0 {
            continue;
        }
        let c = -2 * k as i64;
        out.push((c, m as u64));
        let len = if c >= 0 { c as usize + 1 } else { usize::MAX };
        for j in 0..len.min(depth + 1 - k) {
            rem[k + j] -= m;
        }
    }
    out
}

fn sl2_series() -> Result<(bool, String)> {
    let r = rs("A1");
    let kl = KlCache::new();
    let parts = PartitionRegistry::new();
    let zero = weight(&r, &[0]);
    let h = 20;
    let series = takiff_mult_series(&zero, &zero, h, &r, &parts, &kl)?;
    let got: Vec<(i64, u64)> = series
        .iter()
        .map(|e| (-2 * e.offset.0[0], e.value))
        .collect();
    let want = sl2_peeling_oracle(h as usize);
    let mut problems = Vec::new();
    if got != want {
        fail(
            &mut problems,
            format!("series {got:?} differs from oracle {want:?}"),
        );
    }
    let head: Vec<u64> = got.iter().filter(|(c, _)| *c >= -20).map(|x| x.1).collect();
    let mut expected_head = vec![1u64; 11];
    expected_head[1] = 2;
    if head != expected_head {
        fail(&mut problems, format!("values at c = 0..-20 are {head:?}"));
    }
    if got.len() < 10 {
        fail(&mut problems, format!("only {} simple factors", got.len()));
    }
    verdict(
        problems,
        format!(
            "{} factors down to c = {}, first values {:?}",
            got.len(),
            -2 * h as i64,
            &head[..3]
        ),
    )
}

/// First integral weight in a small box satisfying `pred`, in a fixed order.
fn find_weight(rs: &RootSystem, pred: impl Fn(&Weight) -> bool) -> Weight {
    let n = rs.rank();
    let mut pts = Vec::new();
    let mut cur = vec![-3i64; n];
    loop {
        pts.push(cur.clone());
        let mut i = 0;
        while i < n && cur[i] == 3 {
            cur[i] = -3;
            i += 1;
        }
        if i == n {
            break;
        }
        cur[i] += 1;
    }
    pts.sort_by_key(|p| (p.iter().map(|x| x.abs()).sum::<i64>(), p.clone()));
    pts.into_iter()
        .map(|p| weight(rs, &p))
        .find(|w| pred(w))
        .expect("a weight in the box")
}

/// Pairings of `lambda + rho` with all positive coroots.
fn shifted_pairings(rs: &RootSystem, lambda: &Weight) -> Vec<Rational> {
    let shifted = lambda.add(rs.rho());
    rs.positive_coroots()
        .iter()
        .map(|c| rs.pair_with_coroot(&shifted, c))
        .collect()
}

fn character_identity() -> Result<(bool, String)> {
    let h = 10;
    let mut problems = Vec::new();
    let mut checked = Vec::new();
    for t in ["A2", "B2"] {
        let r = rs(t);
        let kl = KlCache::new();
        let parts = PartitionRegistry::new();
        let cache = PartitionCache::for_root_system(&r);
        let full = LeviDatum::full(&r);
        let regular_nondominant = find_weight(&r, |w| {
            let p = shifted_pairings(&r, w);
            p.iter().all(|x| !x.is_zero()) && p.iter().any(|x| x < &rat(0))
        });
        let singular = find_weight(&r, |w| shifted_pairings(&r, w).iter().any(|x| x.is_zero()));
        for lambda in [r.zero_weight(), regular_nondominant, singular] {
            let target = takiff_verma_character(&lambda, h, &cache);
            let mut sum: BTreeMap<RootVector, u64> = BTreeMap::new();
            for e in takiff_mult_series(&lambda, &r.zero_weight(), h, &r, &parts, &kl)? {
                let depth = e.offset.height() as u32;
                let ch = simple_character_bgg(&e.lambda2, h - depth, &full, &r, &cache, &kl)?;
                for (k, d) in ch.dims {
                    *sum.entry(k.sub(&e.offset)).or_insert(0) += e.value * d;
                }
            }
            if sum != target.dims {
                let diff = target.dims.iter().find(|(k, v)| sum.get(*k) != Some(v));
                fail(
                    &mut problems,
                    format!("{t} lambda {lambda}: first mismatch at {diff:?}"),
                );
            }
            checked.push(format!("{t}:{lambda}"));
        }
    }
    verdict(problems, format!("lambda in {}", checked.join(" ")))
}

fn orientation_pin() -> Result<(bool, String)> {
    let h = 10;
    let mut problems = Vec::new();
    let mut count = 0;
    for t in ["A2", "B2"] {
        let r = rs(t);
        let kl = KlCache::new();
        let cache = PartitionCache::for_root_system(&r);
        let full = LeviDatum::full(&r);
        for a in 0..=3i64 {
            for b in 0..=3 - a {
                let lambda = weight(&r, &[a, b]);
                let via_kl = simple_character_bgg(&lambda, h, &full, &r, &cache, &kl)?;
                let weyl = weyl_character_formula(&lambda, h, &r, &cache)?;
                if via_kl != weyl {
                    fail(
                        &mut problems,
                        format!("{t} lambda {lambda}: KL inversion disagrees with Weyl formula"),
                    );
                }
                count += 1;
            }
        }
    }
    verdict(problems, format!("{count} dominant weights"))
}

fn kl_engine() -> Result<(bool, String)> {
    let r = rs("A3");
    let g = CoxeterGroup::new(r.cartan_matrix())?;
    let table = compute_kl_table(&g);
    let n = g.order();
    let w0 = g.longest();
    let elements: Vec<WeylElement> = g.elements().collect();
    let mut problems = Vec::new();
    let mut one_plus_q = 0;
    let mul_w0 = |x: usize| {
        g.index_of(&elements[w0].mul(&elements[x], r.cartan_matrix()))
            .expect("in group")
    };
    let w0x: Vec<usize> = (0..n).map(mul_w0).collect();
    for w in 0..n {
        for x in 0..n {
            let p = table.get(x, w);
            let leq = bruhat_leq(&elements[x], &elements[w], r.cartan_matrix());
            if leq != g.leq(x, w) {
                fail(
                    &mut problems,
                    format!("Bruhat tables disagree at ({x}, {w})"),
                );
            }
            if !leq {
                if !p.is_zero() {
                    fail(
                        &mut problems,
                        format!("P nonzero off the Bruhat interval at ({x}, {w})"),
                    );
                }
            } else {
                if p.coeff(0) != 1 {
                    fail(
                        &mut problems,
                        format!("constant term {} at ({x}, {w})", p.coeff(0)),
                    );
                }
                let (lx, lw) = (g.length(x), g.length(w));
                if x != w && p.degree().is_some_and(|d| 2 * d + 1 > lw - lx) {
                    fail(
                        &mut problems,
                        format!("degree bound fails at ({x}, {w}): {p}"),
                    );
                }
                if p == KLPolynomial::from_coeffs(vec![1, 1]) {
                    one_plus_q += 1;
                }
            }
            // sum_{x<=z<=w} (-1)^{l(x)+l(z)} P_{x,z} P_{w0 w, w0 z} = delta
            let mut acc = KLPolynomial::zero();
            for z in 0..n {
                if g.leq(x, z) && g.leq(z, w) {
                    let term = table.get(x, z).mul(&table.get(w0x[w], w0x[z]));
                    acc = if (g.length(x) + g.length(z)).is_multiple_of(2) {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
            }
            let want = if x == w {
                KLPolynomial::one()
            } else {
                KLPolynomial::zero()
            };
            if acc != want {
                fail(
                    &mut problems,
                    format!("inversion identity fails at ({x}, {w}): {acc}"),
                );
            }
        }
    }
    if one_plus_q == 0 {
        fail(&mut problems, "no pair with P = 1 + q".into());
    }
    verdict(
        problems,
        format!("{} pairs, {one_plus_q} with P = 1 + q", n * n),
    )
}

/// Tallies every multiset of `roots` with height at most `h` by its sum.
fn brute_force_partitions(roots: &[RootVector], h: i64) -> HashMap<RootVector, u64> {
    let n = roots[0].len();
    let mut out = HashMap::new();
    let mut stack = vec![(0usize, RootVector::zero(n))];
    while let Some((k, v)) = stack.pop() {
        if k == roots.len() {
            *out.entry(v).or_insert(0) += 1;
            continue;
        }
        let mut cur = v;
        while cur.height() <= h {
            stack.push((k + 1, cur.clone()));
            cur = cur.add(&roots[k]);
        }
    }
    out
}

fn partition_identities() -> Result<(bool, String)> {
    let mut problems = Vec::new();
    let mut checked = 0usize;
    for t in ["A2", "B2"] {
        let r = rs(t);
        let cache = PartitionCache::for_root_system(&r);
        let pts = cone_points(r.rank(), 15);
        for gamma in &pts {
            let chi = gamma.neg();
            let mut conv = 0u64;
            for a in &pts {
                let b = gamma.sub(a);
                if b.is_nonneg() {
                    conv += cache.p(&a.neg()) * cache.p(&b.neg());
                }
            }
            if conv != cache.p2(&chi) {
                fail(
                    &mut problems,
                    format!("{t}: p*p = {conv} but p2 = {} at {chi}", cache.p2(&chi)),
                );
            }
            checked += 1;
        }
    }
    for t in ["A2", "B2", "G2"] {
        let r = rs(t);
        let cache = PartitionCache::for_root_system(&r);
        let brute = brute_force_partitions(r.positive_roots(), 8);
        for gamma in cone_points(r.rank(), 8) {
            let want = brute.get(&gamma).copied().unwrap_or(0);
            if cache.p(&gamma.neg()) != want {
                fail(
                    &mut problems,
                    format!(
                        "{t}: p({}) = {} but brute force gives {want}",
                        gamma.neg(),
                        cache.p(&gamma.neg())
                    ),
                );
            }
            checked += 1;
        }
    }
    verdict(problems, format!("{checked} offsets"))
}

const RATIONALS: [&str; 11] = [
    "0", "0", "0", "1", "-1", "2", "-2", "1/2", "-1/2", "1/3", "-3/2",
];

/// Small integers make root hyperplanes through `mu` likely, so that most
/// samples need a nontrivial reduction.
const SMALL: [&str; 7] = ["0", "1", "-1", "2", "-2", "1/2", "-1/2"];

fn random_weight(r: &RootSystem, rng: &mut ChaCha8Rng) -> Weight {
    random_weight_from(r, rng, &RATIONALS)
}

fn random_weight_from(r: &RootSystem, rng: &mut ChaCha8Rng, pool: &[&str]) -> Weight {
    let coords = (0..r.rank())
        .map(|_| parse_rational(pool.choose(rng).expect("nonempty")).expect("valid"))
        .collect();
    let central = (0..r.torus_rank()).map(|_| rat(0)).collect();
    Weight::new(coords, central)
}

fn levi_reduction() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut problems = Vec::new();
    let mut lengths: BTreeMap<usize, usize> = BTreeMap::new();
    for t in ["B2", "A3"] {
        let r = rs(t);
        let group = all_elements(&r)?;
        for _ in 0..100 {
            let mu = random_weight_from(&r, &mut rng, &SMALL);
            let red = minimal_levi_reduction(&mu, &r);
            let image = red.w.apply(&mu, &r);
            if image != red.mu_prime || !phi_mu(&image, &r).is_standard() {
                fail(
                    &mut problems,
                    format!("{t} mu {mu}: w(mu) does not have a standard centraliser"),
                );
            }
            if !prefix_pairings_nonzero(&red.w, &mu, &r) {
                fail(
                    &mut problems,
                    format!("{t} mu {mu}: prefix condition fails for w = {}", red.w),
                );
            }
            let best = group
                .iter()
                .filter(|w| phi_mu(&w.apply(&mu, &r), &r).is_standard())
                .map(|w| w.length())
                .min()
                .expect("some element works");
            if best != red.w.length() {
                fail(
                    &mut problems,
                    format!(
                        "{t} mu {mu}: length {} but minimum is {best}",
                        red.w.length()
                    ),
                );
            }
            *lengths.entry(best).or_insert(0) += 1;
        }
    }
    verdict(problems, format!("200 samples, lengths {lengths:?}"))
}

fn generic_closed_form() -> Result<(bool, String)> {
    let r = rs("A2");
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let kl = KlCache::new();
    let parts = PartitionRegistry::new();
    let ambient = PartitionCache::for_root_system(&r);
    let mu = weight(&r, &[1, 2]);
    debug_assert!(phi_mu(&mu, &r).rank() == 0);
    let mut problems = Vec::new();
    let (mut agree, mut total, mut delta) = (0, 0, 0);
    for _ in 0..10 {
        let lambda = random_weight(&r, &mut rng);
        for nu in cone_points(r.rank(), 8) {
            let lambda2 = lambda.sub(&r.root_to_weight(&nu));
            let rep = takiff_mult(&lambda, &mu, &lambda2, &mu, &r, &parts, &kl)?;
            if !rep.w_used.is_identity() {
                fail(
                    &mut problems,
                    format!("w = {} for a regular mu", rep.w_used),
                );
            }
            let want = ambient.p(&nu.neg());
            total += 1;
            if rep.value == want {
                agree += 1;
            } else {
                fail(
                    &mut problems,
                    format!(
                        "lambda {lambda}, nu {nu}: value {} but p(-nu) = {want}",
                        rep.value
                    ),
                );
            }
            if rep.value == u64::from(nu.height() == 0) {
                delta += 1;
            }
        }
    }
    let summary = format!("{agree}/{total} agree with p(-nu); {delta}/{total} equal delta_(nu,0)");
    if problems.is_empty() {
        Ok((true, summary))
    } else {
        Ok((false, format!("{summary}; e.g. {}", problems.join("; "))))
    }
}

fn structural() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut problems = Vec::new();
    let mut counts = [0usize; 4];
    for t in ["A1", "A2", "B2"] {
        let r = rs(t);
        let kl = KlCache::new();
        let parts = PartitionRegistry::new();
        for _ in 0..50 {
            let lambda = random_weight(&r, &mut rng);
            let mu = random_weight(&r, &mut rng);
            let v = takiff_mult(&lambda, &mu, &lambda, &mu, &r, &parts, &kl)?.value;
            if v != 1 {
                fail(
                    &mut problems,
                    format!("{t}: self-multiplicity {v} at ({lambda}, {mu})"),
                );
            }
            counts[0] += 1;
            let mu2 = random_weight(&r, &mut rng);
            if mu2 != mu {
                let lambda2 = lambda.sub(&r.root_to_weight(&RootVector::unit(r.rank(), 0)));
                let v = takiff_mult(&lambda, &mu, &lambda2, &mu2, &r, &parts, &kl)?.value;
                if v != 0 {
                    fail(&mut problems, format!("{t}: {v} for mu {mu} != mu' {mu2}"));
                }
                counts[1] += 1;
            }
            // lambda - lambda' outside the positive cone: either a root-lattice
            // vector with a negative coordinate or a non-lattice shift
            let offsets = [
                r.root_to_weight(&RootVector::unit(r.rank(), r.rank() - 1).neg()),
                r.root_to_weight(
                    &RootVector::unit(r.rank(), 0)
                        .scale(2)
                        .sub(&RootVector::unit(r.rank(), r.rank() - 1).scale(3)),
                ),
                Weight::new(
                    vec![parse_rational("1/2").expect("valid"); r.rank()],
                    vec![],
                ),
            ];
            for off in offsets {
                let lambda2 = lambda.sub(&off);
                if r.weight_sub(&lambda, &lambda2)
                    .is_some_and(|d| d.is_nonneg())
                {
                    continue;
                }
                let v = takiff_mult(&lambda, &mu, &lambda2, &mu, &r, &parts, &kl)?.value;
                if v != 0 {
                    fail(
                        &mut problems,
                        format!("{t}: {v} at lambda {lambda}, lambda' {lambda2}, mu {mu}"),
                    );
                }
                counts[2] += 1;
            }
        }
    }
    // the two minimal reductions of mu = (1,-1) in A2
    let r = rs("A2");
    let kl = KlCache::new();
    let parts = PartitionRegistry::new();
    let mu = weight(&r, &[1, -1]);
    let s1 = WeylElement::from_word(r.cartan_matrix(), &[0])?;
    let s2 = WeylElement::from_word(r.cartan_matrix(), &[1])?;
    let red = minimal_levi_reduction(&mu, &r);
    if red.w.length() != 1 {
        fail(
            &mut problems,
            format!("minimal length {} for mu = (1,-1)", red.w.length()),
        );
    }
    let offsets: Vec<RootVector> = [
        [0, 0],
        [1, 0],
        [0, 1],
        [1, 1],
        [2, 1],
        [1, 2],
        [2, 2],
        [3, 1],
        [-1, 0],
        [0, -1],
        [3, 3],
    ]
    .iter()
    .map(|v| RootVector(v.to_vec()))
    .collect();
    for _ in 0..20 {
        let lambda = random_weight(&r, &mut rng);
        let off = offsets.choose(&mut rng).expect("nonempty");
        let lambda2 = lambda.sub(&r.root_to_weight(off));
        let a = takiff_mult_via(&s1, &lambda, &mu, &lambda2, &r, &parts, &kl)?.value;
        let b = takiff_mult_via(&s2, &lambda, &mu, &lambda2, &r, &parts, &kl)?.value;
        if a != b {
            fail(
                &mut problems,
                format!("w = s1 gives {a}, w = s2 gives {b} at lambda {lambda}, offset {off}"),
            );
        }
        counts[3] += 1;
    }
    verdict(
        problems,
        format!(
            "self {} / block {} / support {} / tie-break {}",
            counts[0], counts[1], counts[2], counts[3]
        ),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peeling_oracle_head() {
        let o = sl2_peeling_oracle(4);
        assert_eq!(o, vec![(0, 1), (-2, 2), (-4, 1), (-6, 1), (-8, 1)]);
    }

    #[test]
    fn found_weights_have_the_requested_shape() {
        let r = rs("B2");
        let w = find_weight(&r, |w| shifted_pairings(&r, w).iter().any(|x| x.is_zero()));
        assert!(shifted_pairings(&r, &w).iter().any(|x| x.is_zero()));
    }

    #[test]
    fn unknown_criterion() {
        assert!(run_criterion(0).is_none());
        assert_eq!(criterion_ids(), (1..=8).collect::<Vec<u8>>());
    }
}
