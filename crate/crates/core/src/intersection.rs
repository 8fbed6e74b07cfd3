//! Intersection products of CSM cycles.
//!
//! A piecewise linear function on the Bergman fan acts on Minkowski weights by
//! the usual Weil divisor rule. Every Minkowski weight is obtained by applying a
//! combination of products of basis functions to the fundamental class; with
//! such a lift in hand, products of weights become iterated divisor actions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::bergman::{BergmanFan, LatticeVector, MinkowskiWeight, Weight};
use crate::error::{Error, Result};
use crate::linalg::{self, PivotOrder};
use crate::matroid::Matroid;
use crate::subset::Subset;

/// A function on the fan, linear on every cone, given by its values on the
/// rays `u_F`.
#[derive(Debug, Clone, PartialEq)]
pub struct PLFunction<T = BigRational> {
    /// Indexed by lattice position; the entries for the empty set and the
    /// ground set are unused and kept at zero.
    values: Vec<T>,
}

impl<T: Weight> PLFunction<T> {
    pub fn zero(fan: &BergmanFan) -> Self {
        PLFunction {
            values: vec![T::zero(); fan.lattice().len()],
        }
    }

    /// Builds a function from ray values keyed by flat.
    pub fn from_values(fan: &BergmanFan, values: impl IntoIterator<Item = (Subset, T)>) -> Result<Self> {
        let mut phi = Self::zero(fan);
        for (flat, v) in values {
            let i = proper_flat_index(fan, flat)?;
            phi.values[i] = v;
        }
        Ok(phi)
    }

    /// The function that is 1 on `u_F` and 0 on every other ray.
    pub fn basis(fan: &BergmanFan, flat: Subset) -> Result<Self> {
        Self::from_values(fan, [(flat, T::one())])
    }

    pub fn value_at_ray(&self, flat_index: usize) -> &T {
        &self.values[flat_index]
    }

    /// Evaluates at a point of the support of the fan. Returns `None` when
    /// the point lies outside every cone.
    pub fn evaluate(&self, fan: &BergmanFan, v: &LatticeVector) -> Option<T> {
        let mut levels: Vec<i64> = v.coords().to_vec();
        levels.sort_unstable();
        levels.dedup();
        let mut total = T::zero();
        for pair in levels.windows(2) {
            let upper: Subset = (0..fan.n()).filter(|&i| v.coords()[i] >= pair[1]).collect();
            let idx = fan.lattice().index_of(upper)?;
            total = total + T::from_i64(pair[1] - pair[0]) * self.values[idx].clone();
        }
        Some(total)
    }
}

/// `basis_pl(F)` for a flat given as a subset.
pub fn basis_pl(fan: &BergmanFan, flat: Subset) -> Result<PLFunction> {
    PLFunction::basis(fan, flat)
}

fn proper_flat_index(fan: &BergmanFan, flat: Subset) -> Result<usize> {
    match fan.lattice().index_of(flat) {
        Some(i) if fan.is_proper_flat(i) => Ok(i),
        _ => Err(Error::InvalidFlat(flat.to_vec())),
    }
}

/// The intersection `phi . W`.
pub fn divisor_apply<T: Weight>(
    fan: &BergmanFan,
    phi: &PLFunction<T>,
    w: &MinkowskiWeight<T>,
) -> Result<MinkowskiWeight<T>> {
    apply_with(fan, |f| phi.values[f].clone(), w)
}

fn apply_with<T: Weight>(
    fan: &BergmanFan,
    phi: impl Fn(usize) -> T,
    w: &MinkowskiWeight<T>,
) -> Result<MinkowskiWeight<T>> {
    if w.dim() == 0 {
        return Err(Error::Dimension {
            expected: 1,
            found: 0,
        });
    }
    let lattice = fan.lattice();
    let ground = Subset::full(fan.n());
    let mut out = Vec::new();
    for (tau, (direct, v)) in fan.facet_sums(w, &phi) {
        // v is constant on the layers G_1, G_2 - G_1, ..., E - G_j exactly
        // when it lies in the span of the rays of tau.
        let mut inner = Subset::EMPTY;
        let mut layer_values = Vec::with_capacity(tau.len() + 1);
        for outer in tau.indices().iter().map(|&g| lattice.flat(g)).chain([ground]) {
            let mut layer = outer.difference(inner).iter();
            let first = layer.next().expect("chains are strict");
            let value = v[first].clone();
            if layer.any(|e| v[e] != value) {
                return Err(Error::BalancingViolation(tau.indices().to_vec()));
            }
            layer_values.push(value);
            inner = outer;
        }
        let mut correction = T::zero();
        for (m, &g) in tau.indices().iter().enumerate() {
            let a = layer_values[m].clone() - layer_values[m + 1].clone();
            correction = correction + a * phi(g);
        }
        out.push((tau, direct - correction));
    }
    Ok(MinkowskiWeight::new(w.dim() - 1, out))
}

/// A product of basis functions whose flats form a chain. Stored as a
/// non-decreasing list of lattice indices, so repeated flats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChainMonomial(Vec<usize>);

impl ChainMonomial {
    pub fn one() -> Self {
        ChainMonomial(Vec::new())
    }

    pub fn new(fan: &BergmanFan, mut flats: Vec<usize>) -> Result<Self> {
        flats.sort_unstable();
        for &f in &flats {
            if !fan.is_proper_flat(f) {
                return Err(Error::InvalidFlat(fan.lattice().flat(f).to_vec()));
            }
        }
        for pair in flats.windows(2) {
            if pair[0] != pair[1] && !fan.lattice().leq(pair[0], pair[1]) {
                return Err(Error::InvalidInput("monomial support is not a chain".into()));
            }
        }
        Ok(ChainMonomial(flats))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn flats(&self) -> &[usize] {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainMonomialCombination {
    degree: usize,
    terms: Vec<(BigRational, ChainMonomial)>,
}

impl ChainMonomialCombination {
    pub fn new(degree: usize, terms: impl IntoIterator<Item = (BigRational, ChainMonomial)>) -> Self {
        let mut merged: BTreeMap<ChainMonomial, BigRational> = BTreeMap::new();
        for (c, m) in terms {
            assert_eq!(m.degree(), degree, "mixed degrees in a combination");
            *merged.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        ChainMonomialCombination { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &[(BigRational, ChainMonomial)] {
        &self.terms
    }
}

/// Applies the basis functions of `monomial` one after another.
pub fn apply_monomial<T: Weight>(
    fan: &BergmanFan,
    monomial: &ChainMonomial,
    w: &MinkowskiWeight<T>,
) -> Result<MinkowskiWeight<T>> {
    let mut current = w.clone();
    for &f in monomial.flats() {
        current = apply_basis(fan, f, &current)?;
    }
    Ok(current)
}

fn apply_basis<T: Weight>(fan: &BergmanFan, flat: usize, w: &MinkowskiWeight<T>) -> Result<MinkowskiWeight<T>> {
    apply_with(fan, |f| if f == flat { T::one() } else { T::zero() }, w)
}

pub fn apply_combination<T: Weight>(
    fan: &BergmanFan,
    combination: &ChainMonomialCombination,
    w: &MinkowskiWeight<T>,
) -> Result<MinkowskiWeight<BigRational>> {
    if combination.degree() > w.dim() {
        return Err(Error::Dimension {
            expected: combination.degree(),
            found: w.dim(),
        });
    }
    let mut total = MinkowskiWeight::zero(w.dim() - combination.degree());
    for (c, m) in combination.terms() {
        let image = apply_monomial(fan, m, w)?.to_rational();
        total = total.plus(&image.scaled(c));
    }
    Ok(total)
}

/// Every nonzero chain monomial of the given degree together with its
/// action on the fundamental class. Shared prefixes are applied once.
fn monomial_images(fan: &BergmanFan, degree: usize) -> Result<Vec<(ChainMonomial, MinkowskiWeight<i64>)>> {
    fn walk(
        fan: &BergmanFan,
        remaining: usize,
        current: &MinkowskiWeight<i64>,
        seq: &mut Vec<usize>,
        out: &mut Vec<(ChainMonomial, MinkowskiWeight<i64>)>,
    ) -> Result<()> {
        if remaining == 0 {
            out.push((ChainMonomial(seq.clone()), current.clone()));
            return Ok(());
        }
        let candidates: Vec<usize> = match seq.last() {
            None => fan.proper_flats().collect(),
            Some(&last) => std::iter::once(last).chain(fan.above(last).iter().copied()).collect(),
        };
        for f in candidates {
            let next = apply_basis(fan, f, current)?;
            if next.is_zero() {
                continue;
            }
            seq.push(f);
            walk(fan, remaining - 1, &next, seq, out)?;
            seq.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(fan, degree, &fan.fundamental_class(), &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Finds a combination of chain monomials sending the fundamental class to
/// `w`.
pub fn lift<T: Weight>(fan: &BergmanFan, w: &MinkowskiWeight<T>, order: PivotOrder) -> Result<ChainMonomialCombination> {
    let k = w.dim();
    let d = fan.d();
    if k > d {
        return Err(Error::Dimension { expected: d, found: k });
    }
    let images = monomial_images(fan, d - k)?;
    let chains = fan.chains(k)?;
    let rows: Vec<Vec<BigRational>> = chains
        .iter()
        .map(|c| images.iter().map(|(_, img)| linalg::rational(img.get(c))).collect())
        .collect();
    let rhs: Vec<BigRational> = chains.iter().map(|c| w.get(c).to_rational()).collect();
    let x = linalg::solve(&rows, &rhs, images.len(), order).ok_or(Error::LiftFailure(k))?;
    Ok(ChainMonomialCombination::new(
        d - k,
        x.into_iter().zip(images).map(|(c, (m, _))| (c, m)),
    ))
}

/// Exponents `(k_1, ..., k_d)` of the product `csm_{d-1}^{k_1} ... csm_0^{k_d}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ChernExponents(Vec<usize>);

impl ChernExponents {
    pub fn new(k: Vec<usize>) -> Self {
        ChernExponents(k)
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    /// `sum i * k_i`, which must equal the fan dimension.
    pub fn weighted_degree(&self) -> usize {
        self.0.iter().enumerate().map(|(i, &k)| (i + 1) * k).sum()
    }

    /// All exponent vectors with weighted degree `d`, in lexicographically
    /// decreasing order (so `c_1^d` comes first).
    pub fn all(d: usize) -> Vec<ChernExponents> {
        fn fill(i: usize, d: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<ChernExponents>) {
            if i > d {
                if left == 0 {
                    out.push(ChernExponents(cur.clone()));
                }
                return;
            }
            for k in (0..=left / i).rev() {
                cur.push(k);
                fill(i + 1, d, left - k * i, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        fill(1, d, d, &mut Vec::with_capacity(d), &mut out);
        out
    }

    /// The codimensions of the factors, in definition order: `k_i` copies of `i`.
    fn factor_codims(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(i, &k)| std::iter::repeat(i + 1).take(k))
            .collect()
    }
}

impl fmt::Display for ChernExponents {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| k.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ChernOptions {
    /// Position in the factor list of the factor kept as a cycle; by default
    /// the first factor of largest dimension.
    pub carrier: Option<usize>,
    pub pivot: PivotOrder,
}

/// The Chern number `w(csm_{d-1}^{k_1} ... csm_0^{k_d})`.
pub fn chern_number(m: &Matroid, e: &ChernExponents) -> Result<i64> {
    chern_number_with(&BergmanFan::new(m)?, e, ChernOptions::default())
}

pub fn chern_number_with(fan: &BergmanFan, e: &ChernExponents, options: ChernOptions) -> Result<i64> {
    let d = fan.d();
    if e.as_slice().len() != d || e.weighted_degree() != d {
        return Err(Error::InvalidExponents {
            exponents: e.as_slice().to_vec(),
            d,
        });
    }
    if d == 0 {
        return fan.csm_cycle(0)?.vertex_weight();
    }
    let codims = e.factor_codims();
    let carrier = match options.carrier {
        Some(c) if c < codims.len() => c,
        Some(c) => return Err(Error::InvalidInput(format!("carrier index {c} out of range"))),
        None => (0..codims.len()).min_by_key(|&i| (codims[i], i)).unwrap(),
    };
    let mut current = fan.csm_cycle(d - codims[carrier])?.to_rational();
    let mut lifts: HashMap<usize, ChainMonomialCombination> = HashMap::new();
    for (i, &c) in codims.iter().enumerate() {
        if i == carrier {
            continue;
        }
        if !lifts.contains_key(&c) {
            let lifted = lift(fan, &fan.csm_cycle(d - c)?, options.pivot)?;
            lifts.insert(c, lifted);
        }
        current = apply_combination(fan, &lifts[&c], &current)?;
    }
    let value = current.vertex_weight()?;
    assert!(linalg::is_integer(&value), "Chern number {value} is not an integer");
    Ok(value.to_integer().to_i64().expect("Chern number overflows i64"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bergman::FlatChain;
    use crate::corpus;
    use num_traits::One;
    use proptest::prelude::*;

    fn q(v: i64) -> BigRational {
        linalg::rational(v)
    }

    fn binom(n: i64, k: i64) -> i64 {
        if k < 0 || n < 0 || k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn set(v: &[usize]) -> Subset {
        v.iter().copied().collect()
    }

    #[test]
    fn basis_function_values() {
        let fan = BergmanFan::new(&Matroid::uniform(3, 4).unwrap()).unwrap();
        let f = set(&[0, 1]);
        let phi = basis_pl(&fan, f).unwrap();
        let n = fan.n();
        assert_eq!(phi.evaluate(&fan, &LatticeVector::of_subset(n, f)), Some(q(1)));
        assert_eq!(phi.evaluate(&fan, &LatticeVector::of_subset(n, set(&[1, 2]))), Some(q(0)));
        let point = LatticeVector::of_subset(n, set(&[0])).add(&LatticeVector::of_subset(n, f));
        assert_eq!(phi.evaluate(&fan, &point), Some(q(1)));
        let outside = LatticeVector::of_subset(n, set(&[0])).add(&LatticeVector::of_subset(n, set(&[1])));
        assert_eq!(phi.evaluate(&fan, &outside), Some(q(1)));
        assert!(matches!(basis_pl(&fan, Subset::full(4)), Err(Error::InvalidFlat(_))));
        assert!(matches!(basis_pl(&fan, Subset::EMPTY), Err(Error::InvalidFlat(_))));
        let fano = BergmanFan::new(&corpus::fano()).unwrap();
        assert!(matches!(basis_pl(&fano, set(&[0, 1])), Err(Error::InvalidFlat(_))));
        let far = LatticeVector::of_subset(7, set(&[0])).add(&LatticeVector::of_subset(7, set(&[1])));
        assert_eq!(basis_pl(&fano, set(&[0])).unwrap().evaluate(&fano, &far), None);
    }

    #[test]
    fn zero_function_gives_zero() {
        for m in [corpus::fano(), Matroid::uniform(4, 5).unwrap()] {
            let fan = BergmanFan::new(&m).unwrap();
            for k in 1..=fan.d() {
                let w = fan.csm_cycle(k).unwrap().to_rational();
                assert!(divisor_apply(&fan, &PLFunction::zero(&fan), &w).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn divisor_images_are_balanced() {
        for m in [corpus::fano(), corpus::non_pappus(), Matroid::uniform(4, 6).unwrap()] {
            let fan = BergmanFan::new(&m).unwrap();
            for k in 1..=fan.d() {
                let w = fan.csm_cycle(k).unwrap();
                for f in fan.proper_flats() {
                    let image = apply_basis(&fan, f, &w).unwrap();
                    assert!(fan.check_balanced(&image));
                }
            }
        }
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        let fan = BergmanFan::new(&Matroid::uniform(3, 4).unwrap()).unwrap();
        let w = MinkowskiWeight::new(1, [(FlatChain::from_indices(vec![1]), 1i64)]);
        let phi = PLFunction::<i64>::basis(&fan, set(&[0])).unwrap();
        assert!(matches!(divisor_apply(&fan, &phi, &w), Err(Error::BalancingViolation(_))));
        assert!(matches!(lift(&fan, &w, PivotOrder::Natural), Err(Error::LiftFailure(1))));
        let point = MinkowskiWeight::new(0, [(FlatChain::empty(), 1i64)]);
        assert!(matches!(divisor_apply(&fan, &phi, &point), Err(Error::Dimension { .. })));
    }

    #[test]
    fn uniform_self_intersection_of_csm1() {
        let fan = BergmanFan::new(&Matroid::uniform(3, 4).unwrap()).unwrap();
        let csm1 = fan.csm_cycle(1).unwrap().to_rational();
        let combo = lift(&fan, &csm1, PivotOrder::Natural).unwrap();
        assert_eq!(combo.degree(), 1);
        let phi = PLFunction::from_values(
            &fan,
            combo.terms().iter().map(|(c, m)| (fan.lattice().flat(m.flats()[0]), c.clone())),
        )
        .unwrap();
        let image = divisor_apply(&fan, &phi, &csm1).unwrap();
        assert_eq!(image.vertex_weight().unwrap(), q(1));
    }

    #[test]
    fn lift_of_top_cycle_is_trivial() {
        for m in [corpus::fano(), Matroid::uniform(4, 5).unwrap()] {
            let fan = BergmanFan::new(&m).unwrap();
            let combo = lift(&fan, &fan.csm_cycle(fan.d()).unwrap(), PivotOrder::Natural).unwrap();
            assert_eq!(combo.terms(), &[(BigRational::one(), ChainMonomial::one())]);
        }
    }

    #[test]
    fn lifts_reproduce_their_weights() {
        for m in [Matroid::uniform(3, 4).unwrap(), corpus::fano(), corpus::braid(), Matroid::uniform(4, 6).unwrap()] {
            let fan = BergmanFan::new(&m).unwrap();
            for k in 0..=fan.d() {
                let w = fan.csm_cycle(k).unwrap();
                for order in [PivotOrder::Natural, PivotOrder::Reversed] {
                    let combo = lift(&fan, &w, order).unwrap();
                    let back = apply_combination(&fan, &combo, &fan.fundamental_class()).unwrap();
                    assert_eq!(back, w.to_rational());
                }
            }
        }
    }

    #[test]
    fn fano_second_chern_class() {
        let fan = BergmanFan::new(&corpus::fano()).unwrap();
        let combo = lift(&fan, &fan.csm_cycle(0).unwrap(), PivotOrder::Natural).unwrap();
        let w = apply_combination(&fan, &combo, &fan.csm_cycle(2).unwrap()).unwrap();
        assert_eq!(w.vertex_weight().unwrap(), q(3));
    }

    #[test]
    fn rank_three_examples() {
        let e20 = ChernExponents::new(vec![2, 0]);
        let e01 = ChernExponents::new(vec![0, 1]);
        let fano = corpus::fano();
        assert_eq!(chern_number(&fano, &e20).unwrap(), 9);
        assert_eq!(chern_number(&fano, &e01).unwrap(), 3);
        let u37 = Matroid::uniform(3, 7).unwrap();
        assert_eq!(chern_number(&u37, &e20).unwrap(), 16);
        assert_eq!(chern_number(&u37, &e01).unwrap(), 10);
    }

    #[test]
    fn uniform_matroids_match_binomial_products() {
        for (r, n) in [(2, 3), (2, 5), (3, 4), (3, 6), (4, 5), (4, 6)] {
            let m = Matroid::uniform(r, n).unwrap();
            let d = r - 1;
            for e in ChernExponents::all(d) {
                let sign = if d % 2 == 0 { 1 } else { -1 };
                let expected = e.as_slice().iter().enumerate().fold(sign, |acc, (i, &k)| {
                    let i = (i + 1) as i64;
                    acc * binom(n as i64 - (d as i64 - i) - 2, i).pow(k as u32)
                });
                assert_eq!(chern_number(&m, &e).unwrap(), expected, "U({r},{n}) {e}");
            }
        }
        let u46 = Matroid::uniform(4, 6).unwrap();
        assert_eq!(chern_number(&u46, &ChernExponents::new(vec![3, 0, 0])).unwrap(), -8);
    }

    #[test]
    fn exponent_enumeration() {
        let all: Vec<String> = ChernExponents::all(3).iter().map(|e| e.to_string()).collect();
        assert_eq!(all, ["(3,0,0)", "(1,1,0)", "(0,0,1)"]);
        assert_eq!(ChernExponents::all(4).len(), 5);
        assert_eq!(ChernExponents::all(0), vec![ChernExponents::new(vec![])]);
    }

    #[test]
    fn invalid_exponents_and_trivial_rank() {
        let fano = corpus::fano();
        assert!(matches!(
            chern_number(&fano, &ChernExponents::new(vec![1, 1])),
            Err(Error::InvalidExponents { .. })
        ));
        assert!(matches!(
            chern_number(&fano, &ChernExponents::new(vec![2])),
            Err(Error::InvalidExponents { .. })
        ));
        let u11 = Matroid::uniform(1, 1).unwrap();
        assert_eq!(chern_number(&u11, &ChernExponents::new(vec![])).unwrap(), 1);
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(chern_number(&u13, &ChernExponents::new(vec![])).unwrap(), 1);
    }

    #[test]
    fn carrier_and_pivot_do_not_matter() {
        for m in [corpus::non_fano(), corpus::braid(), Matroid::uniform(4, 6).unwrap()] {
            let fan = BergmanFan::new(&m).unwrap();
            for e in ChernExponents::all(fan.d()) {
                let base = chern_number_with(&fan, &e, ChernOptions::default()).unwrap();
                let factors = e.factor_codims().len();
                for carrier in 0..factors {
                    for pivot in [PivotOrder::Natural, PivotOrder::Reversed] {
                        let opts = ChernOptions {
                            carrier: Some(carrier),
                            pivot,
                        };
                        assert_eq!(chern_number_with(&fan, &e, opts).unwrap(), base);
                    }
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]
        #[test]
        fn relabeling_invariance(perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
            let m = corpus::non_pappus();
            let p = m.permute(&perm).unwrap();
            for e in ChernExponents::all(2) {
                prop_assert_eq!(chern_number(&m, &e).unwrap(), chern_number(&p, &e).unwrap());
            }
        }
    }
}
