use std::fmt;

use crate::weyl::CoxeterGroup;

/// Integer polynomial in `q`, dense from degree 0, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct KLPolynomial(Vec<i64>);

impl KLPolynomial {
    pub fn zero() -> Self {
        KLPolynomial(Vec::new())
    }

    pub fn one() -> Self {
        KLPolynomial(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> Self {
        while c.last() == Some(&0) {
            c.pop();
        }
        KLPolynomial(c)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn eval_at_one(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        Self::from_coeffs((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    /// `c * q^k * self`.
    pub fn shifted(&self, k: usize, c: i64) -> Self {
        if self.is_zero() || c == 0 {
            return Self::zero();
        }
        let mut v = vec![0; k];
        v.extend(self.0.iter().map(|a| a * c));
        Self::from_coeffs(v)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut v = vec![0; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::from_coeffs(v)
    }
}

impl fmt::Display for KLPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (k, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = match (c, k) {
                (1, 1..) => String::new(),
                (-1, 1..) => "-".to_string(),
                _ => c.to_string(),
            };
            terms.push(match k {
                0 => coef,
                1 => format!("{coef}q"),
                _ => format!("{coef}q^{k}"),
            });
        }
        write!(f, "{}", terms.join(" + ").replace("+ -", "- "))
    }
}

/// All `P_{x,w}` of a finite Coxeter group.
#[derive(Debug)]
pub struct KlTable {
    size: usize,
    polys: Vec<Option<KLPolynomial>>,
}

impl KlTable {
    pub fn get(&self, x: usize, w: usize) -> KLPolynomial {
        self.polys[x * self.size + w].clone().unwrap_or_default()
    }

    /// Coefficient of `q^{(l(w)-l(x)-1)/2}` in `P_{x,w}`, or 0.
    pub fn mu(&self, g: &CoxeterGroup, x: usize, w: usize) -> i64 {
        let (lx, lw) = (g.length(x), g.length(w));
        if lx >= lw || (lw - lx).is_multiple_of(2) {
            return 0;
        }
        self.polys[x * self.size + w]
            .as_ref()
            .map_or(0, |p| p.coeff((lw - lx - 1) / 2))
    }
}

/// The classical recursion: for a left descent `s` of `w` and `v = s w`,
/// `P_{x,w} = q^{1-c} P_{sx,v} + q^c P_{x,v}
///            - sum_{z < v, sz < z} mu(z,v) q^{(l(w)-l(z))/2} P_{x,z}`
/// with `c = 1` if `sx < x` and `c = 0` otherwise.
pub fn compute_kl_table(g: &CoxeterGroup) -> KlTable {
    let size = g.order();
    let mut polys: Vec<Option<KLPolynomial>> = vec![None; size * size];
    let mut mu_lists: Vec<Vec<(usize, i64)>> = vec![Vec::new(); size];
    let at = |polys: &Vec<Option<KLPolynomial>>, x: usize, w: usize| -> KLPolynomial {
        polys[x * size + w].clone().unwrap_or_default()
    };
    for w in 0..size {
        if w == 0 {
            polys[0] = Some(KLPolynomial::one());
            continue;
        }
        let s = g.word(w)[0];
        let v = g.left_mul(s, w);
        let lw = g.length(w);
        let corrections: Vec<(usize, i64)> = mu_lists[v]
            .iter()
            .copied()
            .filter(|&(z, _)| g.is_left_descent(s, z))
            .collect();
        for x in 0..size {
            if !g.leq(x, w) {
                continue;
            }
            let sx = g.left_mul(s, x);
            let a = at(&polys, sx, v);
            let b = at(&polys, x, v);
            let mut val = if g.length(sx) < g.length(x) {
                a.add(&b.shifted(1, 1))
            } else {
                a.shifted(1, 1).add(&b)
            };
            for &(z, m) in &corrections {
                if g.leq(x, z) {
                    let lz = g.length(z);
                    val = val.sub(&at(&polys, x, z).shifted((lw - lz) / 2, m));
                }
            }
            polys[x * size + w] = Some(val);
        }
        for x in 0..size {
            let lx = g.length(x);
            if x == w || lx >= lw || (lw - lx).is_multiple_of(2) {
                continue;
            }
            if let Some(p) = &polys[x * size + w] {
                let m = p.coeff((lw - lx - 1) / 2);
                if m != 0 {
                    mu_lists[w].push((x, m));
                }
            }
        }
    }
    KlTable { size, polys }
}
