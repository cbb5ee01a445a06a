//! Kostant's partition function, its two-coloured convolution and truncated
//! formal characters.
//!
//! Sign convention: `p(chi)` counts the ways to write `-chi` as a sum of
//! positive roots, so `p` is supported on the negative cone. Character offsets
//! are likewise nonpositive root-lattice vectors relative to the highest
//! weight, and a character truncated at height `H` holds every offset of
//! depth (minus height) at most `H`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, RwLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::klbgg::{self, KlCache};
use crate::rootdata::{RootSystem, RootVector, Weight};
use crate::weyl::{CoxeterGroup, LeviDatum};

/// Memoised partition counts for a fixed list of positive roots.
#[derive(Debug)]
pub struct PartitionCache {
    roots: Vec<RootVector>,
    memo: RwLock<HashMap<(usize, RootVector), u64>>,
}

impl PartitionCache {
    pub fn new(roots: Vec<RootVector>) -> Self {
        PartitionCache {
            roots,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn for_root_system(rs: &RootSystem) -> Self {
        Self::new(rs.positive_roots().to_vec())
    }

    pub fn for_levi(ld: &LeviDatum) -> Self {
        Self::new(ld.positive_roots().to_vec())
    }

    pub fn roots(&self) -> &[RootVector] {
        &self.roots
    }

    /// Number of multisets of the roots summing to `gamma`.
    pub fn count(&self, gamma: &RootVector) -> u64 {
        if !gamma.is_nonneg() {
            return 0;
        }
        self.count_prefix(self.roots.len(), gamma)
    }

    // ways to write gamma with roots[..k]: strip the multiplicity of roots[k-1]
    fn count_prefix(&self, k: usize, gamma: &RootVector) -> u64 {
        if gamma.is_zero() {
            return 1;
        }
        if k == 0 {
            return 0;
        }
        let key = (k, gamma.clone());
        if let Some(&v) = self.memo.read().expect("partition memo poisoned").get(&key) {
            return v;
        }
        let beta = &self.roots[k - 1];
        let mut total: u64 = 0;
        let mut rest = gamma.clone();
        while rest.is_nonneg() {
            total = total
                .checked_add(self.count_prefix(k - 1, &rest))
                .expect("partition count overflows u64");
            rest = rest.sub(beta);
        }
        self.memo
            .write()
            .expect("partition memo poisoned")
            .insert(key, total);
        total
    }

    /// Kostant's partition function `p(chi)`.
    pub fn p(&self, chi: &RootVector) -> u64 {
        self.count(&chi.neg())
    }

    /// `p2 = p * p`, the dimension of a Takiff Verma weight space.
    pub fn p2(&self, chi: &RootVector) -> u64 {
        if !chi.is_nonpos() {
            return 0;
        }
        box_points(&chi.neg())
            .iter()
            .map(|g| {
                let a = self.count(g);
                if a == 0 {
                    return 0;
                }
                a.checked_mul(self.count(&chi.neg().sub(g)))
                    .expect("p2 overflows u64")
            })
            .fold(0u64, |acc, v| acc.checked_add(v).expect("p2 overflows u64"))
    }

    pub fn len(&self) -> usize {
        self.memo.read().expect("partition memo poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shared partition caches keyed by their root list, so that each Levi
/// subsystem met along the way keeps its memo.
#[derive(Debug, Default)]
pub struct PartitionRegistry {
    caches: Mutex<HashMap<Vec<RootVector>, Arc<PartitionCache>>>,
}

impl PartitionRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, roots: &[RootVector]) -> Arc<PartitionCache> {
        let mut caches = self.caches.lock().expect("partition registry poisoned");
        caches
            .entry(roots.to_vec())
            .or_insert_with(|| Arc::new(PartitionCache::new(roots.to_vec())))
            .clone()
    }

    pub fn for_levi(&self, ld: &LeviDatum) -> Arc<PartitionCache> {
        self.get(ld.positive_roots())
    }

    pub fn for_root_system(&self, rs: &RootSystem) -> Arc<PartitionCache> {
        self.get(rs.positive_roots())
    }
}

pub fn kostant_p(chi: &RootVector, cache: &PartitionCache) -> u64 {
    cache.p(chi)
}

pub fn kostant_p2(chi: &RootVector, cache: &PartitionCache) -> u64 {
    cache.p2(chi)
}

/// Lattice points `0 <= g <= upper` coordinatewise.
fn box_points(upper: &RootVector) -> Vec<RootVector> {
    let mut out = vec![RootVector::zero(upper.len())];
    for (i, &u) in upper.0.iter().enumerate() {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=u).map(move |k| {
                    let mut w = v.clone();
                    w.0[i] = k;
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonnegative vectors of `n` coordinates with coordinate sum at most `h`,
/// ordered by sum then lexicographically descending.
pub fn cone_points(n: usize, h: u32) -> Vec<RootVector> {
    fn rec(n: usize, left: i64, prefix: &mut Vec<i64>, out: &mut Vec<RootVector>) {
        if prefix.len() == n {
            out.push(RootVector(prefix.clone()));
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(n, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, h as i64, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| v.root_order_key());
    out
}

/// A formal character truncated at a depth below the highest weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub base: Weight,
    pub truncation_height: u32,
    pub dims: BTreeMap<RootVector, u64>,
}

#[derive(Serialize)]
struct CharacterEntry<'a> {
    offset: &'a RootVector,
    dim: u64,
}

#[derive(Serialize)]
struct CharacterDoc<'a> {
    base: &'a Weight,
    #[serde(rename = "H")]
    h: u32,
    entries: Vec<CharacterEntry<'a>>,
}

impl Character {
    pub fn dim(&self, offset: &RootVector) -> u64 {
        self.dims.get(offset).copied().unwrap_or(0)
    }

    /// Entries ordered by depth, then offset.
    pub fn entries(&self) -> Vec<(&RootVector, u64)> {
        let mut v: Vec<(&RootVector, u64)> = self.dims.iter().map(|(k, &d)| (k, d)).collect();
        v.sort_by(|a, b| (-a.0.height(), a.0).cmp(&(-b.0.height(), b.0)));
        v
    }

    /// Sum of all recorded dimensions.
    pub fn total(&self) -> u64 {
        self.dims.values().sum()
    }

    /// The same character cut down to a smaller height.
    pub fn truncate(&self, h: u32) -> Character {
        let dims = self
            .dims
            .iter()
            .filter(|(k, _)| -k.height() <= h as i64)
            .map(|(k, &v)| (k.clone(), v))
            .collect();
        Character {
            base: self.base.clone(),
            truncation_height: h.min(self.truncation_height),
            dims,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let doc = CharacterDoc {
            base: &self.base,
            h: self.truncation_height,
            entries: self
                .entries()
                .into_iter()
                .map(|(offset, dim)| CharacterEntry { offset, dim })
                .collect(),
        };
        serde_json::to_value(doc).expect("character serialises")
    }
}

/// Signed accumulator for characters.
#[derive(Clone, Debug, Default)]
pub(crate) struct CharacterSum {
    pub(crate) dims: BTreeMap<RootVector, i128>,
}

impl CharacterSum {
    pub(crate) fn add(&mut self, offset: RootVector, v: i128) {
        if v == 0 {
            return;
        }
        let e = self.dims.entry(offset).or_insert(0);
        *e += v;
    }

    pub(crate) fn into_character(self, base: Weight, h: u32) -> Result<Character> {
        let mut dims = BTreeMap::new();
        for (k, v) in self.dims {
            if v < 0 {
                return Err(Error::Inconsistent(format!(
                    "negative multiplicity {v} at offset {k}"
                )));
            }
            if v > 0 {
                dims.insert(
                    k,
                    u64::try_from(v)
                        .map_err(|_| Error::Inconsistent("dimension overflow".into()))?,
                );
            }
        }
        Ok(Character {
            base,
            truncation_height: h,
            dims,
        })
    }
}

fn character_from(lambda: &Weight, h: u32, n: usize, f: impl Fn(&RootVector) -> u64) -> Character {
    let dims = cone_points(n, h)
        .into_iter()
        .map(|g| g.neg())
        .filter_map(|chi| {
            let d = f(&chi);
            (d > 0).then_some((chi, d))
        })
        .collect();
    Character {
        base: lambda.clone(),
        truncation_height: h,
        dims,
    }
}

/// Character of the Verma module with highest weight `lambda` for the
/// positive roots held by `cache`.
pub fn verma_character(lambda: &Weight, h: u32, cache: &PartitionCache) -> Character {
    character_from(lambda, h, lambda.coroot_coords.len(), |chi| cache.p(chi))
}

/// Character of the Takiff Verma module `M_{lambda,mu}` (independent of `mu`).
pub fn takiff_verma_character(lambda: &Weight, h: u32, cache: &PartitionCache) -> Character {
    character_from(lambda, h, lambda.coroot_coords.len(), |chi| cache.p2(chi))
}

/// The same character as [`takiff_verma_character`], assembled as the sum
/// over `m` in `Z_{>=0}^{Phi+}` of ordinary Verma characters with highest
/// weight `lambda - sum m_k alpha_k`.
pub fn takiff_verma_character_by_shifts(
    lambda: &Weight,
    h: u32,
    cache: &PartitionCache,
) -> Character {
    let n = lambda.coroot_coords.len();
    let roots = cache.roots().to_vec();
    let mut shifts = Vec::new();
    fn rec(roots: &[RootVector], k: usize, cur: RootVector, h: i64, out: &mut Vec<RootVector>) {
        if k == roots.len() {
            out.push(cur);
            return;
        }
        let mut v = cur;
        while v.height() <= h {
            rec(roots, k + 1, v.clone(), h, out);
            v = v.add(&roots[k]);
        }
    }
    rec(&roots, 0, RootVector::zero(n), h as i64, &mut shifts);
    let mut sum = CharacterSum::default();
    for s in shifts {
        let left = h - s.height() as u32;
        for g in cone_points(n, left) {
            let d = cache.p(&g.neg());
            sum.add(s.add(&g).neg(), d as i128);
        }
    }
    sum.into_character(lambda.clone(), h)
        .expect("all terms are nonnegative")
}

/// Weight multiplicities of the finite-dimensional simple module by the
/// alternating Kostant sum `m(nu) = sum_w (-1)^l(w) p(nu - w.lambda)`.
pub fn weyl_character_formula(
    lambda: &Weight,
    h: u32,
    rs: &RootSystem,
    cache: &PartitionCache,
) -> Result<Character> {
    rs.check_weight(lambda)?;
    if !rs.is_dominant_integral(lambda) {
        return Err(Error::NotDominantIntegral(lambda.to_string()));
    }
    let group = CoxeterGroup::new(rs.cartan_matrix())?;
    let shifted: Vec<(RootVector, bool)> = group
        .elements()
        .map(|w| {
            let d = rs
                .weight_sub(&w.dot(lambda, rs), lambda)
                .expect("integral weight");
            (d, w.length() % 2 == 0)
        })
        .collect();
    let mut sum = CharacterSum::default();
    for g in cone_points(rs.rank(), h) {
        let offset = g.neg();
        let mut m: i128 = 0;
        for (d, even) in &shifted {
            let v = cache.p(&offset.sub(d)) as i128;
            m += if *even { v } else { -v };
        }
        sum.add(offset, m);
    }
    sum.into_character(lambda.clone(), h)
}

/// Character of the simple module `L(lambda)` over the subsystem `sys`,
/// by inverting the unitriangular decomposition matrix of the dot-orbit
/// below `lambda`. `cache` must hold the positive roots of `sys`.
pub fn simple_character_bgg(
    lambda: &Weight,
    h: u32,
    sys: &LeviDatum,
    rs: &RootSystem,
    cache: &PartitionCache,
    kl: &KlCache,
) -> Result<Character> {
    let dm = klbgg::decomposition_matrix(lambda, sys, rs, kl)?;
    let top = dm.weights.len() - 1;
    let inv = dm.inverse();
    let mut sum = CharacterSum::default();
    for (j, eta) in dm.weights.iter().enumerate() {
        let coef = inv[top][j];
        if coef == 0 {
            continue;
        }
        let shift = rs.weight_sub(eta, lambda).expect("orbit below lambda");
        let depth = -shift.height();
        if depth > h as i64 {
            continue;
        }
        for g in cone_points(rs.rank(), h - depth as u32) {
            let d = cache.p(&g.neg());
            if d > 0 {
                sum.add(shift.sub(&g), coef * d as i128);
            }
        }
    }
    sum.into_character(lambda.clone(), h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_weight;

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(&t.parse().unwrap())
    }

    /// Every vector m in Z_{>=0}^{roots} of weighted height <= h, tallied by
    /// its sum.
    fn brute_force_counts(roots: &[RootVector], h: i64) -> HashMap<RootVector, u64> {
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

    #[test]
    fn small_values() {
        let a2 = rs("A2");
        let pc = PartitionCache::for_root_system(&a2);
        assert_eq!(pc.p(&RootVector(vec![0, 0])), 1);
        assert_eq!(pc.p(&RootVector(vec![-1, -1])), 2);
        assert_eq!(pc.p(&RootVector(vec![1, 0])), 0);
        assert_eq!(pc.p2(&RootVector(vec![0, 0])), 1);
        // theta or theta', and two colours each for alpha_1 and alpha_2
        assert_eq!(pc.p2(&RootVector(vec![-1, -1])), 6);
        let a1 = PartitionCache::for_root_system(&rs("A1"));
        for n in 0..10 {
            assert_eq!(a1.p2(&RootVector(vec![-n])), n as u64 + 1);
        }
    }

    #[test]
    fn recursion_matches_brute_force() {
        for t in ["A2", "B2", "G2", "A3"] {
            let r = rs(t);
            let pc = PartitionCache::for_root_system(&r);
            let oracle = brute_force_counts(r.positive_roots(), 8);
            for g in cone_points(r.rank(), 8) {
                assert_eq!(
                    pc.count(&g),
                    oracle.get(&g).copied().unwrap_or(0),
                    "{t} {g}"
                );
            }
        }
    }

    #[test]
    fn p2_matches_two_coloured_count() {
        for t in ["A2", "B2"] {
            let r = rs(t);
            let pc = PartitionCache::for_root_system(&r);
            let doubled: Vec<RootVector> = r
                .positive_roots()
                .iter()
                .chain(r.positive_roots())
                .cloned()
                .collect();
            let oracle = brute_force_counts(&doubled, 9);
            for g in cone_points(r.rank(), 9) {
                assert_eq!(
                    pc.p2(&g.neg()),
                    oracle.get(&g).copied().unwrap_or(0),
                    "{t} {g}"
                );
            }
        }
    }

    #[test]
    fn verma_characters() {
        let a1 = rs("A1");
        let pc = PartitionCache::for_root_system(&a1);
        let ch = verma_character(&Weight::from_ints(&[7]), 5, &pc);
        assert_eq!(ch.dims.len(), 6);
        assert!(ch.dims.values().all(|&d| d == 1));
        let a2 = rs("A2");
        let pc = PartitionCache::for_root_system(&a2);
        let ch = verma_character(&a2.zero_weight(), 4, &pc);
        assert_eq!(ch.dim(&RootVector(vec![-1, -1])), 2);
        assert_eq!(ch.dim(&RootVector(vec![0, 0])), 1);
    }

    #[test]
    fn takiff_verma_two_ways() {
        for t in ["A1", "A2", "B2"] {
            let r = rs(t);
            let pc = PartitionCache::for_root_system(&r);
            let lam = r.zero_weight();
            let h = if t == "B2" { 8 } else { 12 };
            assert_eq!(
                takiff_verma_character(&lam, h, &pc),
                takiff_verma_character_by_shifts(&lam, h, &pc),
                "{t}"
            );
        }
    }

    #[test]
    fn weyl_formula_examples() {
        let a1 = rs("A1");
        let pc = PartitionCache::for_root_system(&a1);
        let ch = weyl_character_formula(&Weight::from_ints(&[2]), 10, &a1, &pc).unwrap();
        let offs: Vec<i64> = ch.entries().iter().map(|(k, _)| k.0[0]).collect();
        assert_eq!(offs, vec![0, -1, -2]);
        let triv = weyl_character_formula(&a1.zero_weight(), 10, &a1, &pc).unwrap();
        assert_eq!(triv.dims.len(), 1);
        let a2 = rs("A2");
        let pc = PartitionCache::for_root_system(&a2);
        let adj = weyl_character_formula(&Weight::from_ints(&[1, 1]), 3, &a2, &pc).unwrap();
        // the lowest weight -theta sits at depth 4
        assert_eq!(adj.total(), 7);
        assert_eq!(
            weyl_character_formula(&Weight::from_ints(&[1, 1]), 4, &a2, &pc)
                .unwrap()
                .total(),
            8
        );
        assert_eq!(adj.dim(&RootVector(vec![-1, -1])), 2);
        let b2 = rs("B2");
        let pc = PartitionCache::for_root_system(&b2);
        // 5-dim vector representation of so(5): highest weight is the first fundamental weight
        let vec5 = weyl_character_formula(&Weight::from_ints(&[1, 0]), 10, &b2, &pc).unwrap();
        assert_eq!(vec5.total(), 5);
        assert!(weyl_character_formula(&Weight::from_ints(&[-1, 0]), 3, &b2, &pc).is_err());
        assert!(
            weyl_character_formula(&parse_weight("1/2,0", 2, 0).unwrap(), 3, &b2, &pc).is_err()
        );
    }

    #[test]
    fn truncation_is_monotone() {
        let b2 = rs("B2");
        let pc = PartitionCache::for_root_system(&b2);
        let lam = b2.zero_weight();
        let big = takiff_verma_character(&lam, 10, &pc);
        for h in 0..10 {
            assert_eq!(takiff_verma_character(&lam, h, &pc), big.truncate(h));
        }
    }
}
