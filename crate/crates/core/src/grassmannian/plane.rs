//! Canonical echelon bases of big-cell planes.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::scalar::{factorial, one};
use crate::exact::{Scalar, ZSeries};

/// A big-cell plane `W` known through `v_0, ..., v_N` with `v_n = z^n + (negative powers)`,
/// all trusted down to a common floor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plane {
    basis: Vec<ZSeries>,
    floor: i64,
}

impl Plane {
    /// Canonical basis of the span of `gens` up to degree `depth`.
    ///
    /// Errors with `NotBigCell` when the span meets the negative powers and with
    /// `UnderdeterminedAtDepth` when some degree `0..=depth` is not reached.
    pub fn from_generators(gens: &[ZSeries], depth: usize) -> Result<Self> {
        let mut pivots: BTreeMap<i64, ZSeries> = BTreeMap::new();
        for g in gens {
            let mut g = g.clone();
            while let Some(d) = g.degree() {
                if d < 0 {
                    return Err(Error::NotBigCell(format!(
                        "span contains an element of degree {d}"
                    )));
                }
                let lead = g.leading().cloned().expect("nonzero series");
                match pivots.get(&d) {
                    Some(v) => g = g.sub(&v.scale(&lead)),
                    None => {
                        pivots.insert(d, g.scale(&lead.recip()));
                        break;
                    }
                }
            }
        }
        let mut basis = Vec::with_capacity(depth + 1);
        for n in 0..=depth as i64 {
            let Some(mut v) = pivots.remove(&n) else {
                return Err(Error::UnderdeterminedAtDepth(format!(
                    "no generator reaches degree {n}"
                )));
            };
            for (k, w) in basis.iter().enumerate().rev() {
                let c = v.coeff(k as i64);
                if !c.is_zero() {
                    v = v.sub(&ZSeries::scale(w, &c));
                }
            }
            basis.push(v);
        }
        let floor = basis.iter().map(ZSeries::floor).max().unwrap_or(0);
        let basis = basis.into_iter().map(|v| v.truncate(floor)).collect();
        Ok(Plane { basis, floor })
    }

    /// `L_+ = span{z^n}`.
    pub fn standard(depth: usize, floor: i64) -> Self {
        let basis = (0..=depth as i64)
            .map(|n| ZSeries::monomial(n, one(), floor))
            .collect();
        Plane { basis, floor }
    }

    pub fn depth(&self) -> usize {
        self.basis.len() - 1
    }

    /// Lowest exponent trusted in every basis vector.
    pub fn floor(&self) -> i64 {
        self.floor
    }

    pub fn basis(&self) -> &[ZSeries] {
        &self.basis
    }

    pub fn vector(&self, n: usize) -> &ZSeries {
        &self.basis[n]
    }

    /// `g` minus its projection onto `W` along the negative powers; `None` when
    /// `deg g` exceeds the depth. The result holds only negative powers.
    pub fn reduce(&self, g: &ZSeries) -> Option<ZSeries> {
        let Some(d) = g.degree() else {
            return Some(g.negative_part());
        };
        if d > self.depth() as i64 {
            return None;
        }
        let mut r = g.negative_part();
        for e in g.floor().max(0)..=d {
            let c = g.coeff(e);
            if !c.is_zero() {
                r = r.sub(&self.basis[e as usize].negative_part().scale(&c));
            }
        }
        Some(r)
    }

    /// Whether both planes agree on their common depth and trusted window.
    pub fn agrees_with(&self, other: &Plane) -> bool {
        self.basis
            .iter()
            .zip(&other.basis)
            .all(|(a, b)| a.agrees_with(b))
    }

    /// The first `depth + 1` basis vectors.
    pub fn truncate_depth(&self, depth: usize) -> Self {
        let basis: Vec<ZSeries> = self.basis.iter().take(depth + 1).cloned().collect();
        Plane {
            basis,
            floor: self.floor,
        }
    }
}

#[derive(Serialize, Deserialize)]
struct PlaneRepr {
    depth: usize,
    floor_exp: i64,
    basis: Vec<ZSeries>,
}

impl Serialize for Plane {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PlaneRepr {
            depth: self.depth(),
            floor_exp: self.floor,
            basis: self.basis.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Plane {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = PlaneRepr::deserialize(d)?;
        let gens: Vec<ZSeries> = r.basis.iter().map(|v| v.truncate(r.floor_exp)).collect();
        Plane::from_generators(&gens, r.depth).map_err(serde::de::Error::custom)
    }
}

/// The plane spanned by `z^n + n z^(n-2)`, `n >= 0`, whose spectral algebra is the constants.
pub fn example_4_5(depth: usize) -> Plane {
    let floor = -2 * depth as i64 - 2;
    let gens: Vec<ZSeries> = (0..=depth as i64)
        .map(|n| ZSeries::from_int_terms(&[(n, 1), (n - 2, n)], floor))
        .collect();
    Plane::from_generators(&gens, depth).expect("triangular generators")
}

/// The rank-two plane `C[z^2] + C[z^2] g` with `g = z + sum_{k>=1} z^(1-2k)/k!`.
pub fn rank_two_example(depth: usize) -> Plane {
    let floor = -2 * depth as i64 - 2;
    let mut gens = Vec::with_capacity(depth + 1);
    for n in 0..=depth as i64 {
        if n % 2 == 0 {
            gens.push(ZSeries::monomial(n, one(), floor));
        } else {
            let mut terms = vec![(n, Scalar::one())];
            let mut k = 1;
            while n - 2 * k >= floor {
                terms.push((n - 2 * k, factorial(k as u64).recip()));
                k += 1;
            }
            gens.push(ZSeries::from_terms(&terms, floor));
        }
    }
    Plane::from_generators(&gens, depth).expect("triangular generators")
}
