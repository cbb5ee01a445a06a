use std::collections::{HashMap, HashSet, VecDeque};

use num_traits::Zero;

use super::cache::KlCache;
use crate::error::{Error, Result};
use crate::rootdata::{Rational, RootSystem, RootVector, Weight};
use crate::weyl::LeviDatum;

/// `Phi_[nu] = { beta in sys : <nu + rho_sys, beta^vee> in Z }`.
pub fn integral_subsystem(nu: &Weight, sys: &LeviDatum, rs: &RootSystem) -> LeviDatum {
    let shifted = nu.add(sys.rho_levi());
    let roots = sys
        .positive_roots()
        .iter()
        .zip(sys.positive_coroots())
        .filter(|(_, c)| rs.pair_with_coroot(&shifted, c).is_integer())
        .map(|(r, _)| r.clone());
    LeviDatum::from_positive_roots(rs, roots)
}

/// `s_i . eta = s_i(eta + rho) - rho` for the i-th simple root of `sub`.
fn dot_reflect(sub: &LeviDatum, i: usize, eta: &Weight, rho: &Weight, rs: &RootSystem) -> Weight {
    sub.reflect(i, &eta.add(rho), rs).sub(rho)
}

/// The orbit of `nu` under the integral Weyl group of `nu` in `sys`, for the
/// dot action shifted by `rho_sys`.
pub fn dot_orbit(nu: &Weight, sys: &LeviDatum, rs: &RootSystem) -> Vec<Weight> {
    let int = integral_subsystem(nu, sys, rs);
    let rho = sys.rho_levi();
    let mut seen: HashSet<Weight> = HashSet::from([nu.clone()]);
    let mut out = vec![nu.clone()];
    let mut queue = VecDeque::from([nu.clone()]);
    while let Some(eta) = queue.pop_front() {
        for i in 0..int.rank() {
            let next = dot_reflect(&int, i, &eta, rho, rs);
            if seen.insert(next.clone()) {
                out.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    out
}

fn check_system(nu: &Weight, rs: &RootSystem, sys: &LeviDatum) -> Result<()> {
    rs.check_weight(nu)?;
    if sys.rho_levi().coroot_coords.len() != rs.rank() {
        return Err(Error::Dimension(
            "subsystem belongs to a different root system".into(),
        ));
    }
    Ok(())
}

/// `[M(nu) : L(nu2)]` in category O of the (sub)system `sys`.
///
/// With `nu_a` the antidominant point of the dot-orbit and `nu = x . nu_a`,
/// `nu2 = y . nu_a` for `x`, `y` longest in their cosets modulo the
/// stabiliser of `nu_a`, the multiplicity is `P_{y,x}(1)` computed in the
/// integral Weyl group.
pub fn bgg_mult(
    nu: &Weight,
    nu2: &Weight,
    sys: &LeviDatum,
    rs: &RootSystem,
    kl: &KlCache,
) -> Result<u64> {
    check_system(nu, rs, sys)?;
    check_system(nu2, rs, sys)?;
    if nu == nu2 {
        return Ok(1);
    }
    let Some(diff) = rs.weight_sub(nu, nu2) else {
        return Ok(0);
    };
    if !sys.in_positive_cone(&diff) {
        return Ok(0);
    }
    let int = integral_subsystem(nu, sys, rs);
    if int.rank() == 0 {
        return Ok(0);
    }
    let rho = sys.rho_levi();
    let mut anti = nu.clone();
    'descend: loop {
        for (i, c) in int.simple_coroots().iter().enumerate() {
            if rs.pair_with_coroot(&anti.add(rho), c) > Rational::zero() {
                anti = dot_reflect(&int, i, &anti, rho, rs);
                continue 'descend;
            }
        }
        break;
    }
    let entry = kl.group(int.cartan_matrix_levi())?;
    let g = entry.group();
    let mut images: Vec<Weight> = Vec::with_capacity(g.order());
    images.push(anti);
    for w in 1..g.order() {
        let s = g.word(w)[0];
        let v = g.left_mul(s, w);
        let img = dot_reflect(&int, s, &images[v], rho, rs);
        images.push(img);
    }
    let longest_with = |target: &Weight| {
        (0..g.order())
            .filter(|&u| images[u] == *target)
            .max_by_key(|&u| g.length(u))
    };
    let x = longest_with(nu)
        .ok_or_else(|| Error::Inconsistent("weight missing from its own orbit".into()))?;
    let Some(y) = longest_with(nu2) else {
        return Ok(0);
    };
    let value = kl.kl(&entry, y, x).eval_at_one();
    u64::try_from(value).map_err(|_| Error::Inconsistent(format!("negative KL value {value}")))
}

/// Multiplicities `[M(eta_i) : L(eta_j)]` over the dot-orbit below a seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionMatrix {
    /// Orbit points `<=` the seed, deepest first; the seed is last.
    pub weights: Vec<Weight>,
    /// `entries[i][j] = [M(weights[i]) : L(weights[j])]`, lower unitriangular.
    pub entries: Vec<Vec<u64>>,
}

impl DecompositionMatrix {
    pub fn size(&self) -> usize {
        self.weights.len()
    }

    /// Inverse by forward substitution.
    pub fn inverse(&self) -> Vec<Vec<i128>> {
        let n = self.size();
        let mut inv = vec![vec![0i128; n]; n];
        for i in 0..n {
            inv[i][i] = 1;
            for j in (0..i).rev() {
                let mut acc = 0i128;
                for k in j + 1..=i {
                    acc += self.entries[k][j] as i128 * inv[i][k];
                }
                inv[i][j] = -acc;
            }
        }
        inv
    }
}

pub fn decomposition_matrix(
    seed: &Weight,
    sys: &LeviDatum,
    rs: &RootSystem,
    kl: &KlCache,
) -> Result<DecompositionMatrix> {
    check_system(seed, rs, sys)?;
    let mut below: Vec<(RootVector, Weight)> = dot_orbit(seed, sys, rs)
        .into_iter()
        .filter(|eta| sys.weight_leq(eta, seed, rs))
        .map(|eta| {
            (
                rs.weight_sub(&eta, seed).expect("orbit point below seed"),
                eta,
            )
        })
        .collect();
    below.sort_by(|a, b| (a.0.height(), &a.0).cmp(&(b.0.height(), &b.0)));
    let weights: Vec<Weight> = below.into_iter().map(|(_, w)| w).collect();
    let n = weights.len();
    let mut memo: HashMap<(usize, usize), u64> = HashMap::new();
    let mut entries = vec![vec![0u64; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let v = bgg_mult(&weights[i], &weights[j], sys, rs, kl)?;
            memo.insert((i, j), v);
            entries[i][j] = v;
        }
    }
    Ok(DecompositionMatrix { weights, entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::parse_weight;

    fn rs(t: &str) -> RootSystem {
        RootSystem::new(&t.parse().unwrap())
    }

    #[test]
    fn integral_subsystems() {
        let a2 = rs("A2");
        let full = LeviDatum::full(&a2);
        assert_eq!(
            integral_subsystem(&Weight::from_ints(&[3, -7]), &full, &a2)
                .positive_roots()
                .len(),
            3
        );
        let a1 = rs("A1");
        let half = parse_weight("1/2", 1, 0).unwrap();
        assert_eq!(
            integral_subsystem(&half, &LeviDatum::full(&a1), &a1).rank(),
            0
        );
        // <nu+rho, a1> = 1, <nu+rho, a2> = 1/2, <nu+rho, theta> = 3/2
        let nu = parse_weight("0,-1/2", 2, 0).unwrap();
        let int = integral_subsystem(&nu, &full, &a2);
        assert_eq!(int.positive_roots(), &[RootVector(vec![1, 0])]);
    }

    #[test]
    fn sl2_multiplicities() {
        let a1 = rs("A1");
        let sys = LeviDatum::full(&a1);
        let kl = KlCache::new();
        let w = |c: i64| Weight::from_ints(&[c]);
        assert_eq!(bgg_mult(&w(0), &w(0), &sys, &a1, &kl).unwrap(), 1);
        assert_eq!(bgg_mult(&w(0), &w(-2), &sys, &a1, &kl).unwrap(), 1);
        assert_eq!(bgg_mult(&w(0), &w(-4), &sys, &a1, &kl).unwrap(), 0);
        assert_eq!(bgg_mult(&w(-2), &w(0), &sys, &a1, &kl).unwrap(), 0);
        for c in [-3, -5] {
            assert_eq!(bgg_mult(&w(-1), &w(c), &sys, &a1, &kl).unwrap(), 0);
        }
        assert_eq!(bgg_mult(&w(-1), &w(-1), &sys, &a1, &kl).unwrap(), 1);
        let half = parse_weight("1/2", 1, 0).unwrap();
        let lower = parse_weight("-7/2", 1, 0).unwrap();
        assert_eq!(bgg_mult(&half, &lower, &sys, &a1, &kl).unwrap(), 0);
        assert!(bgg_mult(&Weight::from_ints(&[0, 0]), &w(0), &sys, &a1, &kl).is_err());
    }

    #[test]
    fn decomposition_matrices() {
        let a1 = rs("A1");
        let kl = KlCache::new();
        let dm = decomposition_matrix(&Weight::from_ints(&[-1]), &LeviDatum::full(&a1), &a1, &kl)
            .unwrap();
        assert_eq!(dm.entries, vec![vec![1]]);
        let dm = decomposition_matrix(&Weight::from_ints(&[3]), &LeviDatum::full(&a1), &a1, &kl)
            .unwrap();
        assert_eq!(
            dm.weights,
            vec![Weight::from_ints(&[-5]), Weight::from_ints(&[3])]
        );
        assert_eq!(dm.entries, vec![vec![1, 0], vec![1, 1]]);
        let a2 = rs("A2");
        let sys = LeviDatum::full(&a2);
        let dm = decomposition_matrix(&a2.zero_weight(), &sys, &a2, &kl).unwrap();
        assert_eq!(dm.size(), 6);
        let inv = dm.inverse();
        for i in 0..6 {
            for j in 0..6 {
                let expected = rs_bruhat_indicator(&a2, &dm.weights[i], &dm.weights[j]);
                assert_eq!(dm.entries[i][j], expected, "{i} {j}");
                let prod: i128 = (0..6).map(|k| dm.entries[i][k] as i128 * inv[k][j]).sum();
                assert_eq!(prod, (i == j) as i128);
            }
        }
        // one wall: <lambda+rho, alpha_1> = 0
        let singular = Weight::from_ints(&[-1, 2]);
        let dm = decomposition_matrix(&singular, &sys, &a2, &kl).unwrap();
        assert_eq!(dm.size(), 3);
        for i in 0..3 {
            assert_eq!(dm.entries[i][i], 1);
            for j in i + 1..3 {
                assert_eq!(dm.entries[i][j], 0);
            }
        }
    }

    /// In A2 every KL polynomial is 1, so [M(x.-2rho) : L(y.-2rho)] is the
    /// Bruhat indicator, which for dot-orbit points of 0 is the root order.
    fn rs_bruhat_indicator(rs: &RootSystem, a: &Weight, b: &Weight) -> u64 {
        rs.weight_leq(b, a) as u64
    }
}
