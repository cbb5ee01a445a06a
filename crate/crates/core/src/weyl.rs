//! Weyl groups: elements with canonical reduced words, the plain, dot and
//! `2rho`-shifted actions, Bruhat order, root subsystems (`Phi_mu` and friends)
//! and the minimal-length reduction to a standard Levi.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::OnceLock;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootdata::{
    classify_cartan_matrix, rat, CartanType, Rational, RootSystem, RootVector, Weight,
};

/// Refuse to enumerate groups larger than this.
pub const MAX_GROUP_ORDER: usize = 200_000;

/// An element of a finite Weyl group, carried as its lexicographically
/// smallest reduced word (0-based generator indices) together with its action
/// on simple-root coordinates. Equality is by action.
#[derive(Clone, Debug)]
pub struct WeylElement {
    word: Vec<usize>,
    rank: usize,
    // column j = w(alpha_j), row-major
    matrix: Vec<i64>,
    inverse: Vec<i64>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

fn identity(n: usize) -> Vec<i64> {
    let mut m = vec![0; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

/// `s_i * m`: reflect every column.
fn left_reflect(cartan: &[Vec<i64>], i: usize, m: &mut [i64]) {
    let n = cartan.len();
    for j in 0..n {
        let p: i64 = (0..n).map(|k| cartan[i][k] * m[k * n + j]).sum();
        m[i * n + j] -= p;
    }
}

/// `m * s_i`: column j becomes `m(alpha_j) - a_ij m(alpha_i)`.
fn right_reflect(cartan: &[Vec<i64>], i: usize, m: &mut [i64]) {
    let n = cartan.len();
    for j in 0..n {
        let a = cartan[i][j];
        if j == i || a == 0 {
            continue;
        }
        for r in 0..n {
            m[r * n + j] -= a * m[r * n + i];
        }
    }
    for r in 0..n {
        m[r * n + i] = -m[r * n + i];
    }
}

fn column_negative(m: &[i64], n: usize, j: usize) -> bool {
    (0..n).any(|r| m[r * n + j] < 0)
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement {
            word: Vec::new(),
            rank,
            matrix: identity(rank),
            inverse: identity(rank),
        }
    }

    /// Builds the element represented by `word` (any word, reduced or not) and
    /// stores its canonical reduced word.
    pub fn from_word(cartan: &[Vec<i64>], word: &[usize]) -> Result<Self> {
        let n = cartan.len();
        if let Some(&bad) = word.iter().find(|&&i| i >= n) {
            return Err(Error::InvalidWord(format!(
                "generator {} out of range 1..={n}",
                bad + 1
            )));
        }
        let mut m = identity(n);
        let mut inv = identity(n);
        for &i in word.iter().rev() {
            left_reflect(cartan, i, &mut m);
            right_reflect(cartan, i, &mut inv);
        }
        Ok(Self::canonical(cartan, m, inv))
    }

    fn canonical(cartan: &[Vec<i64>], matrix: Vec<i64>, inverse: Vec<i64>) -> Self {
        let n = cartan.len();
        let mut word = Vec::new();
        let mut m = matrix.clone();
        let mut inv = inverse.clone();
        // strip the smallest left descent until the identity is reached
        while let Some(i) = (0..n).find(|&i| column_negative(&inv, n, i)) {
            word.push(i);
            left_reflect(cartan, i, &mut m);
            right_reflect(cartan, i, &mut inv);
        }
        WeylElement {
            word,
            rank: n,
            matrix,
            inverse,
        }
    }

    /// Canonical reduced word, 0-based.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Canonical reduced word with 1-based generator indices.
    pub fn word_one_based(&self) -> Vec<usize> {
        self.word.iter().map(|i| i + 1).collect()
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn inverse(&self, cartan: &[Vec<i64>]) -> WeylElement {
        Self::canonical(cartan, self.inverse.clone(), self.matrix.clone())
    }

    /// `self * other`.
    pub fn mul(&self, other: &WeylElement, cartan: &[Vec<i64>]) -> WeylElement {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        WeylElement::from_word(cartan, &word).expect("same group")
    }

    pub fn is_left_descent(&self, i: usize) -> bool {
        column_negative(&self.inverse, self.rank, i)
    }

    pub fn is_right_descent(&self, i: usize) -> bool {
        column_negative(&self.matrix, self.rank, i)
    }

    /// `s_i * self`.
    pub fn left_mul(&self, cartan: &[Vec<i64>], i: usize) -> WeylElement {
        let mut m = self.matrix.clone();
        let mut inv = self.inverse.clone();
        left_reflect(cartan, i, &mut m);
        right_reflect(cartan, i, &mut inv);
        Self::canonical(cartan, m, inv)
    }

    /// Action on a vector in simple-root coordinates.
    pub fn apply_root(&self, beta: &RootVector) -> RootVector {
        let n = self.rank;
        RootVector(
            (0..n)
                .map(|r| (0..n).map(|c| self.matrix[r * n + c] * beta.0[c]).sum())
                .collect(),
        )
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, positive_roots: &[RootVector]) -> usize {
        positive_roots
            .iter()
            .filter(|b| self.apply_root(b).is_nonpos())
            .count()
    }

    /// Plain linear action on weights; central coordinates are fixed.
    pub fn apply(&self, lambda: &Weight, rs: &RootSystem) -> Weight {
        self.word
            .iter()
            .rev()
            .fold(lambda.clone(), |acc, &i| rs.reflect(i, &acc))
    }

    /// `w(lambda + rho) - rho`.
    pub fn dot(&self, lambda: &Weight, rs: &RootSystem) -> Weight {
        self.apply(&lambda.add(rs.rho()), rs).sub(rs.rho())
    }

    /// `w(lambda + 2 rho) - 2 rho`.
    pub fn dot2(&self, lambda: &Weight, rs: &RootSystem) -> Weight {
        let two_rho = rs.rho().scale(&rat(2));
        self.apply(&lambda.add(&two_rho), rs).sub(&two_rho)
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        let parts: Vec<String> = self.word.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", parts.join(if self.rank > 9 { "." } else { "" }))
    }
}

/// Parses a word such as `2132`, `2.1.3.2` or `e` into 0-based indices.
pub fn parse_word(text: &str, rank: usize) -> Result<Vec<usize>> {
    let text = text.trim();
    if text.is_empty() || text == "e" {
        return Ok(Vec::new());
    }
    let tokens: Vec<&str> = if text.contains(['.', ',']) {
        text.split(['.', ',']).collect()
    } else {
        text.split("").filter(|s| !s.is_empty()).collect()
    };
    tokens
        .iter()
        .enumerate()
        .map(|(k, tok)| match tok.trim().parse::<usize>() {
            Ok(i) if (1..=rank).contains(&i) => Ok(i - 1),
            _ => Err(Error::InvalidWord(format!(
                "`{tok}` at position {} (rank {rank})",
                k + 1
            ))),
        })
        .collect()
}

/// `x <= w` in Bruhat order. Recurses on the first letter `s` of `w`:
/// `x <= w` iff `min(x, s x) <= s w`, which is the subword property.
pub fn bruhat_leq(x: &WeylElement, w: &WeylElement, cartan: &[Vec<i64>]) -> bool {
    if x.length() > w.length() {
        return false;
    }
    let mut x = x.clone();
    let mut w = w.clone();
    loop {
        if w.is_identity() {
            return x.is_identity();
        }
        if x.length() > w.length() {
            return false;
        }
        let s = w.word[0];
        if x.is_left_descent(s) {
            x = x.left_mul(cartan, s);
        }
        w = w.left_mul(cartan, s);
    }
}

/// A finite Coxeter group given by a Cartan matrix, fully enumerated.
#[derive(Debug)]
pub struct CoxeterGroup {
    cartan: Vec<Vec<i64>>,
    matrices: Vec<Vec<i64>>,
    inverses: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, u32>,
    lengths: Vec<u32>,
    left: Vec<Vec<u32>>,
    right: Vec<Vec<u32>>,
    words: Vec<Vec<usize>>,
    inverse_of: Vec<u32>,
    bruhat: OnceLock<Vec<Vec<u64>>>,
}

impl CoxeterGroup {
    pub fn new(cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let cartan = cartan.to_vec();
        let mut matrices = vec![identity(n)];
        let mut inverses = vec![identity(n)];
        let mut index: HashMap<Vec<i64>, u32> = HashMap::new();
        index.insert(identity(n), 0);
        let mut lengths = vec![0u32];
        let mut left: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut k = 0;
        while k < matrices.len() {
            for s in 0..n {
                let mut m = matrices[k].clone();
                left_reflect(&cartan, s, &mut m);
                let id = match index.get(&m) {
                    Some(&id) => id,
                    None => {
                        if matrices.len() >= MAX_GROUP_ORDER {
                            return Err(Error::GroupTooLarge {
                                limit: MAX_GROUP_ORDER,
                            });
                        }
                        let mut inv = inverses[k].clone();
                        right_reflect(&cartan, s, &mut inv);
                        let id = matrices.len() as u32;
                        index.insert(m.clone(), id);
                        matrices.push(m);
                        inverses.push(inv);
                        lengths.push(lengths[k] + 1);
                        id
                    }
                };
                left[s].push(id);
            }
            k += 1;
        }
        let size = matrices.len();
        let right: Vec<Vec<u32>> = (0..n)
            .map(|s| {
                (0..size)
                    .map(|w| {
                        let mut m = matrices[w].clone();
                        right_reflect(&cartan, s, &mut m);
                        index[&m]
                    })
                    .collect()
            })
            .collect();
        // BFS order is by nondecreasing length
        let mut words: Vec<Vec<usize>> = vec![Vec::new(); size];
        let mut inverse_of = vec![0u32; size];
        for w in 1..size {
            let s = (0..n)
                .find(|&s| lengths[left[s][w] as usize] < lengths[w])
                .expect("nonidentity element has a left descent");
            let v = left[s][w] as usize;
            let mut word = vec![s];
            word.extend_from_slice(&words[v]);
            words[w] = word;
            inverse_of[w] = right[s][inverse_of[v] as usize];
        }
        Ok(CoxeterGroup {
            cartan,
            matrices,
            inverses,
            index,
            lengths,
            left,
            right,
            words,
            inverse_of,
            bruhat: OnceLock::new(),
        })
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn order(&self) -> usize {
        self.matrices.len()
    }

    /// Stable identity of the Coxeter datum.
    pub fn fingerprint(&self) -> String {
        fingerprint(&self.cartan)
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w] as usize
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// Index of `s * w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s][w] as usize
    }

    /// Index of `w * s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[s][w] as usize
    }

    pub fn inverse_index(&self, w: usize) -> usize {
        self.inverse_of[w] as usize
    }

    pub fn is_left_descent(&self, s: usize, w: usize) -> bool {
        self.lengths[self.left[s][w] as usize] < self.lengths[w]
    }

    pub fn longest(&self) -> usize {
        self.order() - 1
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).map(|&i| i as usize)
    }

    pub fn index_of_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &s in word.iter().rev() {
            if s >= self.rank() {
                return Err(Error::InvalidWord(format!(
                    "generator {} out of range",
                    s + 1
                )));
            }
            w = self.left_mul(s, w);
        }
        Ok(w)
    }

    pub fn element(&self, w: usize) -> WeylElement {
        WeylElement {
            word: self.words[w].clone(),
            rank: self.rank(),
            matrix: self.matrices[w].clone(),
            inverse: self.inverses[w].clone(),
        }
    }

    /// All elements, by nondecreasing length.
    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.order()).map(|w| self.element(w))
    }

    fn bruhat_table(&self) -> &Vec<Vec<u64>> {
        self.bruhat.get_or_init(|| {
            let size = self.order();
            let blocks = size.div_ceil(64);
            let mut rows: Vec<Vec<u64>> = Vec::with_capacity(size);
            let mut first = vec![0u64; blocks];
            first[0] |= 1;
            rows.push(first);
            for w in 1..size {
                let s = self.words[w][0];
                let v = self.left_mul(s, w);
                let mut row = vec![0u64; blocks];
                for x in 0..size {
                    let sx = self.left_mul(s, x);
                    let m = if self.lengths[sx] < self.lengths[x] {
                        sx
                    } else {
                        x
                    };
                    if rows[v][m / 64] >> (m % 64) & 1 == 1 {
                        row[x / 64] |= 1 << (x % 64);
                    }
                }
                rows.push(row);
            }
            rows
        })
    }

    /// Bruhat order by index.
    pub fn leq(&self, x: usize, w: usize) -> bool {
        self.bruhat_table()[w][x / 64] >> (x % 64) & 1 == 1
    }
}

/// Canonical string identity of a Cartan matrix.
pub fn fingerprint(cartan: &[Vec<i64>]) -> String {
    if cartan.is_empty() {
        return "empty".into();
    }
    cartan
        .iter()
        .map(|row| {
            row.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect::<Vec<_>>()
        .join(";")
}

pub fn all_elements(rs: &RootSystem) -> Result<Vec<WeylElement>> {
    Ok(CoxeterGroup::new(rs.cartan_matrix())?.elements().collect())
}

/// A root subsystem of `Phi`, positive part inherited from `Phi+`, with its
/// simple system and the data needed to act on weights of the ambient algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviDatum {
    positive_roots: Vec<RootVector>,
    positive_coroots: Vec<RootVector>,
    simple_system: Vec<RootVector>,
    simple_coroots: Vec<RootVector>,
    simple_weights: Vec<Weight>,
    is_standard: bool,
    rho_levi: Weight,
    cartan_matrix_levi: Vec<Vec<i64>>,
    ambient_rank: usize,
    ambient_torus_rank: usize,
}

impl LeviDatum {
    /// The subsystem whose positive roots are `roots` (a subset of `Phi+`
    /// forming the positive part of a root subsystem).
    pub fn from_positive_roots(
        rs: &RootSystem,
        roots: impl IntoIterator<Item = RootVector>,
    ) -> Self {
        let mut positive_roots: Vec<RootVector> = roots
            .into_iter()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        positive_roots.sort_by_key(|r| r.root_order_key());
        let positive_coroots: Vec<RootVector> = positive_roots
            .iter()
            .map(|r| rs.coroot(r).expect("subsystem roots are roots"))
            .collect();
        let set: BTreeSet<&RootVector> = positive_roots.iter().collect();
        let pair = |gamma: &RootVector, coroot: &RootVector| -> i64 {
            let w = rs.root_to_weight(gamma);
            let v = rs.pair_with_coroot(&w, coroot);
            i64::try_from(v.to_integer()).expect("root pairings are small integers")
        };
        // beta is simple iff s_beta permutes the other positive roots
        let mut simple_system = Vec::new();
        let mut simple_coroots = Vec::new();
        for (beta, bc) in positive_roots.iter().zip(&positive_coroots) {
            let simple = positive_roots.iter().filter(|g| *g != beta).all(|g| {
                let image = g.sub(&beta.scale(pair(g, bc)));
                set.contains(&image)
            });
            if simple {
                simple_system.push(beta.clone());
                simple_coroots.push(bc.clone());
            }
        }
        let k = simple_system.len();
        let cartan_matrix_levi = (0..k)
            .map(|i| {
                (0..k)
                    .map(|j| pair(&simple_system[j], &simple_coroots[i]))
                    .collect()
            })
            .collect();
        let simple_weights = simple_system.iter().map(|b| rs.root_to_weight(b)).collect();
        let mut two_rho = rs.zero_weight();
        for beta in &positive_roots {
            two_rho = two_rho.add(&rs.root_to_weight(beta));
        }
        let rho_levi = two_rho.scale(&Rational::new(1.into(), 2.into()));
        let is_standard = simple_system.iter().all(|b| b.height() == 1);
        LeviDatum {
            positive_roots,
            positive_coroots,
            simple_system,
            simple_coroots,
            simple_weights,
            is_standard,
            rho_levi,
            cartan_matrix_levi,
            ambient_rank: rs.rank(),
            ambient_torus_rank: rs.torus_rank(),
        }
    }

    /// The whole root system viewed as a subsystem of itself.
    pub fn full(rs: &RootSystem) -> Self {
        Self::from_positive_roots(rs, rs.positive_roots().iter().cloned())
    }

    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[RootVector] {
        &self.positive_coroots
    }

    /// All roots, positive then negative.
    pub fn roots(&self) -> Vec<RootVector> {
        self.positive_roots
            .iter()
            .cloned()
            .chain(self.positive_roots.iter().map(|r| r.neg()))
            .collect()
    }

    pub fn simple_system(&self) -> &[RootVector] {
        &self.simple_system
    }

    pub fn simple_coroots(&self) -> &[RootVector] {
        &self.simple_coroots
    }

    pub fn is_standard(&self) -> bool {
        self.is_standard
    }

    pub fn rho_levi(&self) -> &Weight {
        &self.rho_levi
    }

    pub fn cartan_matrix_levi(&self) -> &[Vec<i64>] {
        &self.cartan_matrix_levi
    }

    pub fn rank(&self) -> usize {
        self.simple_system.len()
    }

    pub fn contains(&self, beta: &RootVector) -> bool {
        self.positive_roots.contains(beta) || self.positive_roots.contains(&beta.neg())
    }

    /// Type of the subsystem as a reductive algebra of the ambient rank, e.g.
    /// `A1+T1`.
    pub fn cartan_type(&self) -> CartanType {
        CartanType {
            components: classify_cartan_matrix(&self.cartan_matrix_levi),
            torus_rank: self.ambient_rank - self.rank() + self.ambient_torus_rank,
        }
    }

    /// Reflection in the i-th simple root of the subsystem, on ambient weights.
    pub fn reflect(&self, i: usize, lambda: &Weight, rs: &RootSystem) -> Weight {
        let c = rs.pair_with_coroot(lambda, &self.simple_coroots[i]);
        if c.is_zero() {
            return lambda.clone();
        }
        lambda.sub(&self.simple_weights[i].scale(&c))
    }

    /// Dot action of the i-th simple reflection, shifted by the subsystem's
    /// own `rho`.
    pub fn dot_reflect(&self, i: usize, lambda: &Weight, rs: &RootSystem) -> Weight {
        self.reflect(i, &lambda.add(&self.rho_levi), rs)
            .sub(&self.rho_levi)
    }

    /// Dot action of a word in the subsystem's simple reflections.
    pub fn dot_word(&self, word: &[usize], lambda: &Weight, rs: &RootSystem) -> Weight {
        word.iter()
            .rev()
            .fold(lambda.clone(), |acc, &i| self.dot_reflect(i, &acc, rs))
    }

    /// Coefficients of a root-lattice vector in the simple system, if it lies
    /// in their rational span.
    pub fn simple_coordinates(&self, v: &RootVector) -> Option<Vec<Rational>> {
        let cols: Vec<Vec<Rational>> = self
            .simple_system
            .iter()
            .map(|b| b.0.iter().map(|&c| rat(c)).collect())
            .collect();
        let target: Vec<Rational> = v.0.iter().map(|&c| rat(c)).collect();
        linalg::solve_in_span(&cols, &target)
    }

    /// Whether `v` lies in the integer span of the subsystem.
    pub fn in_root_lattice(&self, v: &RootVector) -> bool {
        self.simple_coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }

    /// Whether `v` lies in the nonnegative integer span of the subsystem.
    pub fn in_positive_cone(&self, v: &RootVector) -> bool {
        self.simple_coordinates(v)
            .is_some_and(|c| c.iter().all(|x| x.is_integer() && *x >= Rational::zero()))
    }

    /// `eta2 <= eta` in the subsystem's root order.
    pub fn weight_leq(&self, eta2: &Weight, eta: &Weight, rs: &RootSystem) -> bool {
        rs.weight_sub(eta, eta2)
            .is_some_and(|d| self.in_positive_cone(&d))
    }

    /// Image of the root set under `w`, as a set of all roots.
    pub fn root_set(&self) -> BTreeSet<RootVector> {
        self.roots().into_iter().collect()
    }
}

/// `Phi_mu = { beta : mu(h_beta) = 0 }`.
pub fn phi_mu(mu: &Weight, rs: &RootSystem) -> LeviDatum {
    let roots = rs
        .positive_roots()
        .iter()
        .zip(rs.positive_coroots())
        .filter(|(_, c)| rs.pair_with_coroot(mu, c).is_zero())
        .map(|(r, _)| r.clone());
    LeviDatum::from_positive_roots(rs, roots)
}

pub fn is_standard_levi(ld: &LeviDatum) -> bool {
    ld.is_standard()
}

fn is_standard_for(mu: &Weight, rs: &RootSystem) -> bool {
    // Phi_mu is standard iff each of its positive roots is a combination of
    // simple roots that themselves lie in Phi_mu
    rs.positive_roots()
        .iter()
        .zip(rs.positive_coroots())
        .all(|(r, c)| {
            !rs.pair_with_coroot(mu, c).is_zero()
                || r.0
                    .iter()
                    .enumerate()
                    .all(|(i, &k)| k == 0 || mu.coroot_coords[i].is_zero())
        })
}

#[derive(Clone, Debug)]
pub struct LeviReduction {
    pub w: WeylElement,
    pub mu_prime: Weight,
    pub levi: LeviDatum,
}

/// Finds `w` of minimal length with `Phi_{w(mu)}` standard, breaking ties by
/// lexicographically smallest reduced word. Breadth-first over the orbit of
/// `mu`; the orbit distance of a point is the minimal length of an element
/// carrying `mu` there.
pub fn minimal_levi_reduction(mu: &Weight, rs: &RootSystem) -> LeviReduction {
    let n = rs.rank();
    let mut dist: HashMap<Weight, usize> = HashMap::new();
    dist.insert(mu.clone(), 0);
    let mut level = vec![mu.clone()];
    let mut d = 0;
    let targets = loop {
        let hits: Vec<Weight> = level
            .iter()
            .filter(|x| is_standard_for(x, rs))
            .cloned()
            .collect();
        if !hits.is_empty() {
            break hits;
        }
        let mut next = Vec::new();
        for x in &level {
            for i in 0..n {
                let y = rs.reflect(i, x);
                if !dist.contains_key(&y) {
                    dist.insert(y.clone(), d + 1);
                    next.push(y);
                }
            }
        }
        assert!(
            !next.is_empty(),
            "some orbit point has a standard centraliser"
        );
        level = next;
        d += 1;
    };
    // For a target t = w(mu), read the word of w = s_{i_d} ... s_{i_1} from
    // the left: i_d is the smallest i with s_i(t) one step closer to mu.
    let best = targets
        .iter()
        .map(|t| {
            let mut word = Vec::with_capacity(d);
            let mut cur = t.clone();
            for k in (0..d).rev() {
                let i = (0..n)
                    .find(|&i| dist.get(&rs.reflect(i, &cur)) == Some(&k))
                    .expect("a shortest path exists");
                word.push(i);
                cur = rs.reflect(i, &cur);
            }
            (word, t.clone())
        })
        .min_by(|a, b| a.0.cmp(&b.0))
        .expect("targets nonempty");
    let (word, mu_prime) = best;
    let w = WeylElement::from_word(rs.cartan_matrix(), &word).expect("valid word");
    debug_assert_eq!(w.word(), word.as_slice());
    let levi = phi_mu(&mu_prime, rs);
    LeviReduction { w, mu_prime, levi }
}

/// Whether the reduced word `s_{i_n} ... s_{i_1}` of `w` satisfies
/// `((s_{i_{k-1}} ... s_{i_1}) mu)(h_{alpha_{i_k}}) != 0` for every k.
pub fn prefix_pairings_nonzero(w: &WeylElement, mu: &Weight, rs: &RootSystem) -> bool {
    let mut cur = mu.clone();
    for &i in w.word().iter().rev() {
        if cur.coroot_coords[i].is_zero() {
            return false;
        }
        cur = rs.reflect(i, &cur);
    }
    true
}

/// `w(Phi')` as a set of roots.
pub fn transform_roots(w: &WeylElement, ld: &LeviDatum) -> BTreeSet<RootVector> {
    ld.roots().iter().map(|r| w.apply_root(r)).collect()
}
