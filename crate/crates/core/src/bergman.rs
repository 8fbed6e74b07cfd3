//! Bergman fans, Minkowski weights on them, and CSM cycles.
//!
//! Cones of the fan are chains of proper nonempty flats, stored as increasing
//! lists of indices into the [`FlatLattice`]. Rays live in `Z^E / Z(1,..,1)`,
//! represented with the last coordinate pinned to zero.

use std::collections::BTreeMap;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::linalg;
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A chain of proper nonempty flats, strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize)]
pub struct FlatChain(Vec<usize>);

impl FlatChain {
    pub fn empty() -> Self {
        FlatChain(Vec::new())
    }

    /// Wraps lattice indices; they must already be increasing.
    pub fn from_indices(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        FlatChain(indices)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The facet obtained by dropping the flat at position `pos`.
    pub fn without(&self, pos: usize) -> FlatChain {
        let mut v = self.0.clone();
        v.remove(pos);
        FlatChain(v)
    }
}

/// A vector of `N = Z^E / Z(1,..,1)` with its last coordinate pinned to zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeVector {
    coords: Vec<i64>,
}

impl LatticeVector {
    pub fn from_coords(coords: Vec<i64>) -> Self {
        let shift = coords.last().copied().unwrap_or(0);
        LatticeVector {
            coords: coords.into_iter().map(|c| c - shift).collect(),
        }
    }

    /// `u_S`, the image of the indicator vector of `S`.
    pub fn of_subset(n: usize, s: Subset) -> Self {
        Self::from_coords((0..n).map(|i| s.contains(i) as i64).collect())
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &LatticeVector) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> LatticeVector {
        LatticeVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }
}

/// Scalars a Minkowski weight can carry: integers for CSM cycles, rationals
/// inside the intersection engine.
pub trait Weight:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn to_rational(&self) -> BigRational;
    fn from_i64(v: i64) -> Self;
}

impl Weight for i64 {
    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn from_i64(v: i64) -> Self {
        v
    }
}

impl Weight for BigRational {
    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn from_i64(v: i64) -> Self {
        linalg::rational(v)
    }
}

/// A weight on the `dim`-dimensional cones of a Bergman fan. Only nonzero
/// entries are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkowskiWeight<T = i64> {
    dim: usize,
    weights: BTreeMap<FlatChain, T>,
}

impl<T: Weight> MinkowskiWeight<T> {
    pub fn new(dim: usize, weights: impl IntoIterator<Item = (FlatChain, T)>) -> Self {
        let weights = weights
            .into_iter()
            .filter(|(c, w)| {
                assert_eq!(c.len(), dim, "chain length must match the dimension");
                !w.is_zero()
            })
            .collect();
        MinkowskiWeight { dim, weights }
    }

    pub fn zero(dim: usize) -> Self {
        MinkowskiWeight {
            dim,
            weights: BTreeMap::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, chain: &FlatChain) -> T {
        self.weights.get(chain).cloned().unwrap_or_else(T::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FlatChain, &T)> {
        self.weights.iter()
    }

    /// Number of cones with nonzero weight.
    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn map<U: Weight>(&self, f: impl Fn(&T) -> U) -> MinkowskiWeight<U> {
        MinkowskiWeight::new(self.dim, self.weights.iter().map(|(c, w)| (c.clone(), f(w))))
    }

    pub fn to_rational(&self) -> MinkowskiWeight<BigRational> {
        self.map(Weight::to_rational)
    }

    pub fn scaled(&self, k: &T) -> Self {
        self.map(|w| w.clone() * k.clone())
    }

    /// Entrywise sum; both weights must have the same dimension.
    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let mut weights = self.weights.clone();
        for (c, w) in &other.weights {
            let e = weights.entry(c.clone()).or_insert_with(T::zero);
            *e = e.clone() + w.clone();
        }
        MinkowskiWeight::new(self.dim, weights)
    }

    /// The weight of the vertex, defined for 0-dimensional weights only.
    pub fn vertex_weight(&self) -> Result<T> {
        if self.dim != 0 {
            return Err(Error::Dimension {
                expected: 0,
                found: self.dim,
            });
        }
        Ok(self.get(&FlatChain::empty()))
    }
}

/// The Bergman fan of a loopless matroid.
#[derive(Debug)]
pub struct BergmanFan {
    lattice: FlatLattice,
    /// `above[i]`: proper flats strictly containing flat `i`.
    above: Vec<Vec<usize>>,
}

impl BergmanFan {
    pub fn new(m: &Matroid) -> Result<Self> {
        if !m.is_loopless() {
            return Err(Error::Loop(m.loops().to_vec()));
        }
        if m.n() == 0 {
            return Err(Error::InvalidInput("the empty matroid has no Bergman fan".into()));
        }
        let lattice = FlatLattice::new(m);
        let top = lattice.top();
        let above = (0..lattice.len())
            .map(|i| {
                (i + 1..top)
                    .filter(|&j| lattice.flat(i).is_proper_subset(lattice.flat(j)))
                    .collect()
            })
            .collect();
        Ok(BergmanFan { lattice, above })
    }

    pub fn lattice(&self) -> &FlatLattice {
        &self.lattice
    }

    pub fn n(&self) -> usize {
        self.lattice.n()
    }

    /// Dimension of the fan, one less than the rank.
    pub fn d(&self) -> usize {
        self.lattice.rank() - 1
    }

    /// Lattice indices of the proper nonempty flats.
    pub fn proper_flats(&self) -> std::ops::Range<usize> {
        1..self.lattice.top()
    }

    pub fn is_proper_flat(&self, i: usize) -> bool {
        i > 0 && i < self.lattice.top()
    }

    /// Proper flats strictly above flat `i` (for `i = 0`, all proper flats).
    pub fn above(&self, i: usize) -> &[usize] {
        &self.above[i]
    }

    pub fn ray(&self, flat: usize) -> LatticeVector {
        LatticeVector::of_subset(self.n(), self.lattice.flat(flat))
    }

    /// All chains of `k` proper nonempty flats.
    pub fn chains(&self, k: usize) -> Result<Vec<FlatChain>> {
        if k > self.d() {
            return Err(Error::InvalidInput(format!(
                "chain length {k} exceeds the fan dimension {}",
                self.d()
            )));
        }
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        self.extend_chains(self.lattice.bottom(), k, &mut current, &mut out);
        Ok(out)
    }

    fn extend_chains(&self, last: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<FlatChain>) {
        if current.len() == k {
            out.push(FlatChain(current.clone()));
            return;
        }
        for &next in &self.above[last] {
            current.push(next);
            self.extend_chains(next, k, current, out);
            current.pop();
        }
    }

    /// Weight 1 on every maximal cone.
    pub fn fundamental_class(&self) -> MinkowskiWeight<i64> {
        let d = self.d();
        MinkowskiWeight::new(d, self.chains(d).unwrap().into_iter().map(|c| (c, 1)))
    }

    /// `(-1)^(d-k)` times the product of `beta(M|F_{i+1} / F_i)` along the
    /// chain completed by the empty set and the ground set.
    pub fn csm_weight(&self, chain: &FlatChain) -> Result<i64> {
        let d = self.d();
        let k = chain.len();
        if k > d {
            return Err(Error::InvalidInput(format!("chain {chain:?} is too long")));
        }
        let mut steps = Vec::with_capacity(k + 2);
        steps.push(self.lattice.bottom());
        for &f in chain.indices() {
            if !self.is_proper_flat(f) || !self.lattice.leq(*steps.last().unwrap(), f) || f == *steps.last().unwrap() {
                return Err(Error::InvalidFlat(self.lattice.flat(f).to_vec()));
            }
            steps.push(f);
        }
        steps.push(self.lattice.top());
        let mut w: i64 = if (d - k) % 2 == 0 { 1 } else { -1 };
        for pair in steps.windows(2) {
            let b = self.lattice.interval_beta(pair[0], pair[1]);
            if b == 0 {
                return Ok(0);
            }
            w = w.checked_mul(b).expect("CSM weight overflow");
        }
        Ok(w)
    }

    /// The `k`-dimensional CSM cycle.
    pub fn csm_cycle(&self, k: usize) -> Result<MinkowskiWeight<i64>> {
        let chains = self.chains(k)?;
        let weights = chains
            .into_par_iter()
            .map(|c| self.csm_weight(&c).map(|w| (c, w)))
            .collect::<Result<Vec<_>>>()?;
        Ok(MinkowskiWeight::new(k, weights))
    }

    /// For each facet `tau` of the support, the pair
    /// `(sum of w(sigma) phi(u_F), sum of w(sigma) e_F)` over the cones
    /// `sigma = tau + F`. `phi` gives the value on each ray.
    pub(crate) fn facet_sums<T: Weight>(
        &self,
        w: &MinkowskiWeight<T>,
        phi: impl Fn(usize) -> T,
    ) -> BTreeMap<FlatChain, (T, Vec<T>)> {
        let n = self.n();
        let mut acc: BTreeMap<FlatChain, (T, Vec<T>)> = BTreeMap::new();
        for (sigma, weight) in w.iter() {
            for pos in 0..sigma.len() {
                let f = sigma.indices()[pos];
                let entry = acc
                    .entry(sigma.without(pos))
                    .or_insert_with(|| (T::zero(), vec![T::zero(); n]));
                entry.0 = entry.0.clone() + weight.clone() * phi(f);
                for e in self.lattice.flat(f).iter() {
                    entry.1[e] = entry.1[e].clone() + weight.clone();
                }
            }
        }
        acc
    }

    /// The balancing condition: around every codimension-one face `tau`,
    /// `sum w(sigma) u_{sigma - tau}` lies in the span of the rays of `tau`.
    pub fn check_balanced<T: Weight>(&self, w: &MinkowskiWeight<T>) -> bool {
        if w.dim() == 0 {
            return true;
        }
        let n = self.n();
        let canonical = |v: &[BigRational]| -> Vec<BigRational> {
            let last = v[n - 1].clone();
            v.iter().map(|x| x - &last).collect()
        };
        self.facet_sums(w, |_| T::zero()).into_iter().all(|(tau, (_, v))| {
            let v: Vec<BigRational> = canonical(&v.iter().map(Weight::to_rational).collect::<Vec<_>>());
            let columns: Vec<Vec<BigRational>> = tau
                .indices()
                .iter()
                .map(|&g| {
                    self.ray(g)
                        .coords()
                        .iter()
                        .map(|&c| linalg::rational(c))
                        .collect()
                })
                .collect();
            linalg::in_span(&columns, &v)
        })
    }
}

/// Convenience wrapper: `csm_k(M)`.
pub fn csm_cycle(m: &Matroid, k: usize) -> Result<MinkowskiWeight<i64>> {
    BergmanFan::new(m)?.csm_cycle(k)
}
