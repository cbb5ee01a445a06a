//! Root data of reductive Lie algebras: Cartan types, root systems with
//! coroots, weights in simple-coroot coordinates and the root-lattice order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg;

pub type Rational = num_rational::BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Formats a rational as `p/q`, or `p` when integral.
pub fn fmt_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn parse_rational(token: &str) -> Option<Rational> {
    let token = token.trim();
    if token.is_empty() {
        return None;
    }
    let (num, den) = match token.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (token, "1"),
    };
    let num = BigInt::from_str(num).ok()?;
    let den = BigInt::from_str(den).ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::B => 'B',
            Family::C => 'C',
            Family::D => 'D',
            Family::E => 'E',
            Family::F => 'F',
            Family::G => 'G',
        }
    }

    fn rank_ok(self, rank: usize) -> bool {
        match self {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 3,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SimpleComponent {
    pub family: Family,
    pub rank: usize,
}

impl SimpleComponent {
    /// Cartan matrix with `m[i][j] = <alpha_j, alpha_i^vee>`, Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            m[i][j] = -1;
            m[j][i] = -1;
        };
        match self.family {
            Family::A | Family::B | Family::C | Family::F | Family::G => {
                for i in 1..n {
                    link(i - 1, i);
                }
            }
            Family::D => {
                for i in 1..n - 1 {
                    link(i - 1, i);
                }
                link(n - 3, n - 1);
            }
            Family::E => {
                link(0, 2);
                link(1, 3);
                for i in 3..n {
                    link(i - 1, i);
                }
            }
        }
        match self.family {
            // alpha_n short
            Family::B => m[n - 1][n - 2] = -2,
            // alpha_n long
            Family::C => m[n - 2][n - 1] = -2,
            // alpha_1, alpha_2 long; alpha_3, alpha_4 short
            Family::F => m[2][1] = -2,
            // alpha_1 short, alpha_2 long
            Family::G => m[0][1] = -3,
            _ => {}
        }
        m
    }
}

impl fmt::Display for SimpleComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// A reductive type: simple components plus a central torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CartanType {
    pub components: Vec<SimpleComponent>,
    pub torus_rank: usize,
}

impl CartanType {
    pub fn semisimple_rank(&self) -> usize {
        self.components.iter().map(|c| c.rank).sum()
    }

    /// Block-diagonal Cartan matrix of the semisimple part.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.semisimple_rank();
        let mut m = vec![vec![0i64; n]; n];
        let mut offset = 0;
        for comp in &self.components {
            let block = comp.cartan_matrix();
            for (i, row) in block.iter().enumerate() {
                for (j, &v) in row.iter().enumerate() {
                    m[offset + i][offset + j] = v;
                }
            }
            offset += comp.rank;
        }
        m
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (ss, torus) = match text.find(['+']) {
            Some(pos) => (&text[..pos], Some(&text[pos + 1..])),
            None => (text, None),
        };
        let torus_rank = match torus {
            None => 0,
            Some(t) => {
                let digits = t.strip_prefix(['T', 't']).ok_or_else(|| {
                    Error::Parse(format!("expected `T<k>` torus suffix, found `{t}`"))
                })?;
                digits
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("invalid torus rank in `{t}`")))?
            }
        };
        let mut components = Vec::new();
        if !ss.is_empty() {
            for token in ss.split(['x', 'X']) {
                let mut chars = token.chars();
                let letter = chars
                    .next()
                    .ok_or_else(|| Error::Parse(format!("empty component in `{text}`")))?;
                let family = match letter.to_ascii_uppercase() {
                    'A' => Family::A,
                    'B' => Family::B,
                    'C' => Family::C,
                    'D' => Family::D,
                    'E' => Family::E,
                    'F' => Family::F,
                    'G' => Family::G,
                    _ => return Err(Error::UnknownFamily(token.to_string())),
                };
                let rank: usize = chars
                    .as_str()
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid rank in `{token}`")))?;
                if !family.rank_ok(rank) {
                    return Err(Error::RankOutOfBounds(token.to_string()));
                }
                components.push(SimpleComponent { family, rank });
            }
        } else if torus_rank == 0 {
            return Err(Error::Parse("empty Cartan type".into()));
        }
        Ok(CartanType {
            components,
            torus_rank,
        })
    }
}

pub fn parse_cartan_type(text: &str) -> Result<CartanType> {
    text.parse()
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.components.iter().map(|c| c.to_string()).collect();
        match (names.is_empty(), self.torus_rank) {
            (true, k) => write!(f, "T{k}"),
            (false, 0) => write!(f, "{}", names.join("x")),
            (false, k) => write!(f, "{}+T{k}", names.join("x")),
        }
    }
}

/// Identifies the simple components of a Cartan matrix. Components are
/// reported in order of their smallest node.
pub fn classify_cartan_matrix(m: &[Vec<i64>]) -> Vec<SimpleComponent> {
    let n = m.len();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut nodes = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < nodes.len() {
            let i = nodes[k];
            for j in 0..n {
                if j != i && m[i][j] != 0 && !seen[j] {
                    seen[j] = true;
                    nodes.push(j);
                }
            }
            k += 1;
        }
        out.push(classify_component(m, &nodes));
    }
    out
}

fn classify_component(m: &[Vec<i64>], nodes: &[usize]) -> SimpleComponent {
    let r = nodes.len();
    let nbrs = |i: usize| -> Vec<usize> {
        nodes
            .iter()
            .copied()
            .filter(|&j| j != i && m[i][j] != 0)
            .collect()
    };
    let comp = |family| SimpleComponent { family, rank: r };
    if r == 1 {
        return comp(Family::A);
    }
    let mut multiple = None;
    for &i in nodes {
        for j in nbrs(i) {
            let bond = m[i][j] * m[j][i];
            if bond > 1 {
                multiple = Some((i, j, bond));
            }
        }
    }
    if let Some((i, j, bond)) = multiple {
        if bond == 3 {
            return comp(Family::G);
        }
        if r == 2 {
            return comp(Family::B);
        }
        let (di, dj) = (nbrs(i).len(), nbrs(j).len());
        if di == 2 && dj == 2 {
            return comp(Family::F);
        }
        // end node of the double bond
        let (end, other) = if di == 1 { (i, j) } else { (j, i) };
        return if m[end][other] == -2 {
            comp(Family::B)
        } else {
            comp(Family::C)
        };
    }
    let Some(&branch) = nodes.iter().find(|&&i| nbrs(i).len() == 3) else {
        return comp(Family::A);
    };
    let mut legs: Vec<usize> = nbrs(branch)
        .into_iter()
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            loop {
                let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                match next.as_slice() {
                    [nx] => {
                        prev = cur;
                        cur = *nx;
                        len += 1;
                    }
                    _ => break len,
                }
            }
        })
        .collect();
    legs.sort_unstable();
    match legs.as_slice() {
        [1, 1, _] => comp(Family::D),
        [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => comp(Family::E),
        _ => unreachable!("not a finite-type Dynkin diagram"),
    }
}

/// An integer vector in the simple-root basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootVector(pub Vec<i64>);

impl RootVector {
    pub fn zero(n: usize) -> Self {
        RootVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        RootVector(v)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the coefficients.
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_nonpos(&self) -> bool {
        self.0.iter().all(|&c| c <= 0)
    }

    pub fn add(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &RootVector) -> RootVector {
        RootVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> RootVector {
        RootVector(self.0.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> RootVector {
        RootVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Ordering used for positive-root lists: by height, then `alpha_1`
    /// before `alpha_2` and so on.
    pub(crate) fn root_order_key(&self) -> (i64, std::cmp::Reverse<Vec<i64>>) {
        (self.height(), std::cmp::Reverse(self.0.clone()))
    }
}

impl fmt::Display for RootVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for RootVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

/// A point of the dual Cartan: pairings with the simple coroots, followed by
/// coordinates on the central torus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coroot_coords: Vec<Rational>,
    pub central_coords: Vec<Rational>,
}

impl Weight {
    pub fn zero(rank: usize, torus_rank: usize) -> Self {
        Weight {
            coroot_coords: vec![Rational::zero(); rank],
            central_coords: vec![Rational::zero(); torus_rank],
        }
    }

    pub fn new(coroot_coords: Vec<Rational>, central_coords: Vec<Rational>) -> Self {
        Weight {
            coroot_coords,
            central_coords,
        }
    }

    pub fn from_ints(coroot: &[i64]) -> Self {
        Weight {
            coroot_coords: coroot.iter().map(|&c| rat(c)).collect(),
            central_coords: Vec::new(),
        }
    }

    pub fn add(&self, other: &Weight) -> Weight {
        Weight {
            coroot_coords: self
                .coroot_coords
                .iter()
                .zip(&other.coroot_coords)
                .map(|(a, b)| a + b)
                .collect(),
            central_coords: self
                .central_coords
                .iter()
                .zip(&other.central_coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Weight) -> Weight {
        Weight {
            coroot_coords: self
                .coroot_coords
                .iter()
                .zip(&other.coroot_coords)
                .map(|(a, b)| a - b)
                .collect(),
            central_coords: self
                .central_coords
                .iter()
                .zip(&other.central_coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &Rational) -> Weight {
        Weight {
            coroot_coords: self.coroot_coords.iter().map(|a| a * k).collect(),
            central_coords: self.central_coords.iter().map(|a| a * k).collect(),
        }
    }

    /// Rational strings, coroot coordinates followed by central coordinates.
    pub fn to_strings(&self) -> Vec<String> {
        self.coroot_coords
            .iter()
            .chain(&self.central_coords)
            .map(fmt_rational)
            .collect()
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: Vec<String> = self.coroot_coords.iter().map(fmt_rational).collect();
        write!(f, "{}", c.join(","))?;
        if !self.central_coords.is_empty() {
            let z: Vec<String> = self.central_coords.iter().map(fmt_rational).collect();
            write!(f, ";{}", z.join(","))?;
        }
        Ok(())
    }
}

impl Serialize for Weight {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

/// Parses `c1,c2,...[;z1,...]`. Error messages name the 1-based position of
/// the offending token.
pub fn parse_weight(text: &str, rank: usize, torus_rank: usize) -> Result<Weight> {
    let (ss, central) = match text.split_once(';') {
        Some((a, b)) => (a, Some(b)),
        None => (text, None),
    };
    let parse_list = |s: &str, offset: usize| -> Result<Vec<Rational>> {
        if s.trim().is_empty() {
            return Ok(Vec::new());
        }
        s.split(',')
            .enumerate()
            .map(|(k, tok)| {
                parse_rational(tok).ok_or_else(|| {
                    Error::Parse(format!(
                        "invalid rational `{}` at position {}",
                        tok.trim(),
                        offset + k + 1
                    ))
                })
            })
            .collect()
    };
    let coroot = parse_list(ss, 0)?;
    let central = match central {
        Some(c) => parse_list(c, coroot.len())?,
        None => Vec::new(),
    };
    if coroot.len() != rank {
        return Err(Error::Parse(format!(
            "expected {rank} coroot coordinates, found {} in `{text}`",
            coroot.len()
        )));
    }
    let central = if central.is_empty() && torus_rank > 0 {
        vec![Rational::zero(); torus_rank]
    } else {
        central
    };
    if central.len() != torus_rank {
        return Err(Error::Parse(format!(
            "expected {torus_rank} central coordinates, found {} in `{text}`",
            central.len()
        )));
    }
    Ok(Weight::new(coroot, central))
}

/// A finite root system with its coroots, plus a central torus.
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    inverse_cartan: Vec<Vec<Rational>>,
    positive_roots: Vec<RootVector>,
    positive_coroots: Vec<RootVector>,
    index: HashMap<RootVector, usize>,
    rho: Weight,
}

impl RootSystem {
    pub fn new(cartan_type: &CartanType) -> Self {
        Self::with_matrix(cartan_type.clone(), cartan_type.cartan_matrix())
    }

    /// Builds the root system of an arbitrary finite-type Cartan matrix
    /// (`m[i][j] = <alpha_j, alpha_i^vee>`).
    pub fn from_cartan_matrix(m: Vec<Vec<i64>>, torus_rank: usize) -> Self {
        let ct = CartanType {
            components: classify_cartan_matrix(&m),
            torus_rank,
        };
        Self::with_matrix(ct, m)
    }

    fn with_matrix(cartan_type: CartanType, cartan: Vec<Vec<i64>>) -> Self {
        let n = cartan.len();
        let positive_roots = positive_roots_by_strings(&cartan);
        let coroot_of = coroots_by_reflection(&cartan);
        let positive_coroots = positive_roots
            .iter()
            .map(|r| {
                coroot_of
                    .get(r)
                    .cloned()
                    .expect("reflection closure reaches every positive root")
            })
            .collect();
        let index = positive_roots
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, r)| (r, i))
            .collect();
        let rho = Weight {
            coroot_coords: vec![rat(1); n],
            central_coords: vec![Rational::zero(); cartan_type.torus_rank],
        };
        let inverse_cartan = linalg::inverse(&cartan);
        RootSystem {
            cartan_type,
            cartan,
            inverse_cartan,
            positive_roots,
            positive_coroots,
            index,
            rho,
        }
    }

    pub fn cartan_type(&self) -> &CartanType {
        &self.cartan_type
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn torus_rank(&self) -> usize {
        self.cartan_type.torus_rank
    }

    /// Positive roots, ordered by height.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.positive_roots
    }

    pub fn positive_coroots(&self) -> &[RootVector] {
        &self.positive_coroots
    }

    pub fn simple_root(&self, i: usize) -> RootVector {
        RootVector::unit(self.rank(), i)
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn zero_weight(&self) -> Weight {
        Weight::zero(self.rank(), self.torus_rank())
    }

    pub fn is_root(&self, beta: &RootVector) -> bool {
        self.index.contains_key(beta) || self.index.contains_key(&beta.neg())
    }

    pub fn positive_index(&self, beta: &RootVector) -> Option<usize> {
        self.index.get(beta).copied()
    }

    /// The coroot of any root (positive or negative), in the simple-coroot basis.
    pub fn coroot(&self, beta: &RootVector) -> Option<RootVector> {
        if let Some(&i) = self.index.get(beta) {
            Some(self.positive_coroots[i].clone())
        } else {
            self.index
                .get(&beta.neg())
                .map(|&i| self.positive_coroots[i].neg())
        }
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.coroot_coords.len() != self.rank() || w.central_coords.len() != self.torus_rank() {
            return Err(Error::Dimension(format!(
                "weight `{w}` has shape ({}, {}) but the root system has rank {} and torus rank {}",
                w.coroot_coords.len(),
                w.central_coords.len(),
                self.rank(),
                self.torus_rank()
            )));
        }
        Ok(())
    }

    /// `<lambda, coroot>` for a coroot given in the simple-coroot basis.
    pub fn pair_with_coroot(&self, lambda: &Weight, coroot: &RootVector) -> Rational {
        let mut acc = Rational::zero();
        for (c, l) in coroot.0.iter().zip(&lambda.coroot_coords) {
            if *c != 0 {
                acc += l * rat(*c);
            }
        }
        acc
    }

    /// `lambda(h_beta) = <lambda, beta^vee>`.
    pub fn pairing(&self, lambda: &Weight, beta: &RootVector) -> Result<Rational> {
        let cor = self
            .coroot(beta)
            .ok_or_else(|| Error::NotARoot(beta.to_string()))?;
        Ok(self.pair_with_coroot(lambda, &cor))
    }

    /// A root-lattice element as a weight (through the Cartan matrix columns).
    pub fn root_to_weight(&self, beta: &RootVector) -> Weight {
        let n = self.rank();
        let coroot_coords = (0..n)
            .map(|i| rat((0..n).map(|j| self.cartan[i][j] * beta.0[j]).sum()))
            .collect();
        Weight {
            coroot_coords,
            central_coords: vec![Rational::zero(); self.torus_rank()],
        }
    }

    /// Coordinates of the semisimple part of `lambda` in the simple-root basis.
    pub fn root_coordinates(&self, lambda: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|i| {
                let mut acc = Rational::zero();
                for j in 0..n {
                    acc += &self.inverse_cartan[i][j] * &lambda.coroot_coords[j];
                }
                acc
            })
            .collect()
    }

    /// `lambda - lambda2` as a root-lattice element, if it is one (central
    /// coordinates equal, simple-root coordinates integral).
    pub fn weight_sub(&self, lambda: &Weight, lambda2: &Weight) -> Option<RootVector> {
        if lambda.central_coords != lambda2.central_coords {
            return None;
        }
        let coords = self.root_coordinates(&lambda.sub(lambda2));
        let mut out = Vec::with_capacity(coords.len());
        for c in coords {
            if !c.is_integer() {
                return None;
            }
            out.push(i64::try_from(c.to_integer()).ok()?);
        }
        Some(RootVector(out))
    }

    /// `lambda2 <= lambda` in the root order.
    pub fn weight_leq(&self, lambda2: &Weight, lambda: &Weight) -> bool {
        self.weight_sub(lambda, lambda2)
            .is_some_and(|d| d.is_nonneg())
    }

    /// Simple reflection `s_i` on weights.
    pub fn reflect(&self, i: usize, lambda: &Weight) -> Weight {
        let c = lambda.coroot_coords[i].clone();
        if c.is_zero() {
            return lambda.clone();
        }
        let mut out = lambda.clone();
        for (k, v) in out.coroot_coords.iter_mut().enumerate() {
            let a = self.cartan[k][i];
            if a != 0 {
                *v -= &c * rat(a);
            }
        }
        out
    }

    /// Simple reflection `s_i` on root-lattice vectors.
    pub fn reflect_root(&self, i: usize, beta: &RootVector) -> RootVector {
        let p: i64 = (0..self.rank())
            .map(|j| self.cartan[i][j] * beta.0[j])
            .sum();
        let mut out = beta.clone();
        out.0[i] -= p;
        out
    }

    pub fn is_dominant_integral(&self, lambda: &Weight) -> bool {
        lambda
            .coroot_coords
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

/// Positive roots from the simple roots by alpha-strings: for `beta` and a
/// simple `alpha_i`, with `p` the largest `k` such that `beta - k alpha_i` is a
/// root, `beta + alpha_i` is a root iff `p - <beta, alpha_i^vee> > 0`.
fn positive_roots_by_strings(cartan: &[Vec<i64>]) -> Vec<RootVector> {
    let n = cartan.len();
    let mut all: BTreeSet<RootVector> = BTreeSet::new();
    let mut level: Vec<RootVector> = (0..n).map(|i| RootVector::unit(n, i)).collect();
    while !level.is_empty() {
        all.extend(level.iter().cloned());
        let mut next = BTreeSet::new();
        for beta in &level {
            for i in 0..n {
                let pair: i64 = (0..n).map(|j| cartan[i][j] * beta.0[j]).sum();
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down.0[i] -= 1;
                    if all.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                if p - pair > 0 {
                    let mut up = beta.clone();
                    up.0[i] += 1;
                    next.insert(up);
                }
            }
        }
        level = next.into_iter().collect();
    }
    let mut roots: Vec<RootVector> = all.into_iter().collect();
    roots.sort_by_key(|r| r.root_order_key());
    roots
}

/// Pairs each positive root with its coroot by reflecting `(alpha_i, alpha_i^vee)`.
fn coroots_by_reflection(cartan: &[Vec<i64>]) -> HashMap<RootVector, RootVector> {
    let n = cartan.len();
    let mut out = HashMap::new();
    let mut queue: Vec<(RootVector, RootVector)> = (0..n)
        .map(|i| (RootVector::unit(n, i), RootVector::unit(n, i)))
        .collect();
    while let Some((root, coroot)) = queue.pop() {
        if out.contains_key(&root) {
            continue;
        }
        out.insert(root.clone(), coroot.clone());
        for j in 0..n {
            let a: i64 = (0..n).map(|k| cartan[j][k] * root.0[k]).sum();
            let b: i64 = (0..n).map(|k| cartan[k][j] * coroot.0[k]).sum();
            let mut r2 = root.clone();
            r2.0[j] -= a;
            let mut c2 = coroot.clone();
            c2.0[j] -= b;
            if r2.is_nonneg() && !r2.is_zero() && !out.contains_key(&r2) {
                queue.push((r2, c2));
            }
        }
    }
    out
}

pub fn build_root_system(ct: &CartanType) -> RootSystem {
    RootSystem::new(ct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(&s.parse().unwrap())
    }

    #[test]
    fn parse_examples() {
        let a2: CartanType = "A2".parse().unwrap();
        assert_eq!(
            a2.components,
            vec![SimpleComponent {
                family: Family::A,
                rank: 2
            }]
        );
        assert_eq!(a2.torus_rank, 0);
        let t: CartanType = "A1xA1+T1".parse().unwrap();
        assert_eq!(t.components.len(), 2);
        assert_eq!(t.torus_rank, 1);
        assert_eq!("b2xa1".parse::<CartanType>().unwrap().to_string(), "B2xA1");
        assert!(
            matches!("H3".parse::<CartanType>(), Err(Error::UnknownFamily(tok)) if tok == "H3")
        );
        assert!(
            matches!("B1".parse::<CartanType>(), Err(Error::RankOutOfBounds(tok)) if tok == "B1")
        );
        assert!("E9".parse::<CartanType>().is_err());
        assert!("A2+X1".parse::<CartanType>().is_err());
        assert!("".parse::<CartanType>().is_err());
    }

    #[test]
    fn root_counts() {
        let table = [
            ("A1", 1),
            ("A2", 3),
            ("A3", 6),
            ("A4", 10),
            ("B2", 4),
            ("B3", 9),
            ("B4", 16),
            ("C3", 9),
            ("C4", 16),
            ("D3", 6),
            ("D4", 12),
            ("G2", 6),
            ("F4", 24),
            ("E6", 36),
            ("E7", 63),
            ("E8", 120),
            ("A2xB2+T2", 7),
        ];
        for (t, count) in table {
            assert_eq!(rs(t).positive_roots().len(), count, "{t}");
        }
    }

    #[test]
    fn a2_roots_and_pairings() {
        let a2 = rs("A2");
        let roots: Vec<_> = a2.positive_roots().iter().map(|r| r.0.clone()).collect();
        assert_eq!(roots, vec![vec![1, 0], vec![0, 1], vec![1, 1]]);
        let lam = Weight::from_ints(&[1, 0]);
        assert_eq!(a2.pairing(&lam, &RootVector(vec![1, 1])).unwrap(), rat(1));
        assert!(a2.pairing(&lam, &RootVector(vec![2, 1])).is_err());
        let a1 = rs("A1");
        assert_eq!(
            a1.pairing(&Weight::from_ints(&[3]), &RootVector(vec![1]))
                .unwrap(),
            rat(3)
        );
        assert_eq!(a1.rho().coroot_coords, vec![rat(1)]);
    }

    #[test]
    fn b2_long_root_coroot() {
        let b2 = rs("B2");
        let long = RootVector(vec![1, 2]);
        let cor = b2.coroot(&long).unwrap();
        assert_eq!(cor, RootVector(vec![1, 1]));
        let lam = Weight::from_ints(&[1, 1]);
        assert_eq!(b2.pairing(&lam, &long).unwrap(), rat(2));
        assert_eq!(
            b2.coroot(&RootVector(vec![1, 1])).unwrap(),
            RootVector(vec![2, 1])
        );
    }

    #[test]
    fn every_root_pairs_to_two_with_itself() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4", "E6"] {
            let r = rs(t);
            for beta in r.positive_roots() {
                assert_eq!(
                    r.pairing(&r.root_to_weight(beta), beta).unwrap(),
                    rat(2),
                    "{t} {beta}"
                );
            }
        }
    }

    #[test]
    fn rho_is_half_sum() {
        for t in ["A3", "B2", "C3", "G2", "F4", "D4"] {
            let r = rs(t);
            let mut two_rho = r.zero_weight();
            for beta in r.positive_roots() {
                two_rho = two_rho.add(&r.root_to_weight(beta));
            }
            assert_eq!(two_rho, r.rho().scale(&rat(2)), "{t}");
        }
    }

    #[test]
    fn reflection_orbit_of_simple_roots_is_the_root_set() {
        for t in ["A3", "B3", "G2", "F4"] {
            let r = rs(t);
            let mut seen: BTreeSet<RootVector> = (0..r.rank()).map(|i| r.simple_root(i)).collect();
            let mut stack: Vec<RootVector> = seen.iter().cloned().collect();
            while let Some(b) = stack.pop() {
                for i in 0..r.rank() {
                    let c = r.reflect_root(i, &b);
                    if seen.insert(c.clone()) {
                        stack.push(c);
                    }
                }
            }
            let expected: BTreeSet<RootVector> = r
                .positive_roots()
                .iter()
                .flat_map(|b| [b.clone(), b.neg()])
                .collect();
            assert_eq!(seen, expected, "{t}");
        }
    }

    #[test]
    fn weight_order() {
        let a2 = rs("A2");
        let lam = Weight::from_ints(&[3, -1]);
        assert!(a2.weight_leq(&lam, &lam));
        assert_eq!(a2.weight_sub(&lam, &lam), Some(RootVector(vec![0, 0])));
        let d = a2.root_to_weight(&RootVector(vec![1, 2]));
        assert!(a2.weight_leq(&lam.sub(&d), &lam));
        assert!(!a2.weight_leq(&lam, &lam.sub(&d)));
        let half = a2
            .root_to_weight(&RootVector(vec![1, 0]))
            .scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(a2.weight_sub(&lam, &lam.sub(&half)), None);
        let t = rs("A1+T1");
        let a = parse_weight("0;1", 1, 1).unwrap();
        let b = parse_weight("2;0", 1, 1).unwrap();
        assert_eq!(t.weight_sub(&b, &a), None);
    }

    #[test]
    fn weight_parsing() {
        let w = parse_weight("1,-1/2;2/3", 2, 1).unwrap();
        assert_eq!(w.to_string(), "1,-1/2;2/3");
        let err = parse_weight("1,x", 2, 0).unwrap_err();
        assert!(err.to_string().contains("position 2"), "{err}");
        assert!(parse_weight("1,2,3", 2, 0).is_err());
        assert!(parse_weight("1/0", 1, 0).is_err());
        assert_eq!(parse_weight("5", 1, 2).unwrap().central_coords.len(), 2);
    }

    #[test]
    fn classification() {
        for t in [
            "A3", "B3", "C3", "D4", "D5", "E6", "E7", "E8", "F4", "G2", "B2", "A1",
        ] {
            let ct: CartanType = t.parse().unwrap();
            assert_eq!(
                classify_cartan_matrix(&ct.cartan_matrix()),
                ct.components,
                "{t}"
            );
        }
    }
}
