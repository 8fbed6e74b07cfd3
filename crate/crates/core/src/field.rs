//! Small finite fields, enough to coordinatize the projective planes `PG(2, q)`
//! that fit in a [`Subset`](crate::Subset).

use crate::error::{Error, Result};

/// `GF(q)` with elements `0..q`, each read as the base-`p` digits of a
/// polynomial in the field generator.
#[derive(Debug, Clone)]
pub struct FiniteField {
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
}

/// Low-order coefficients of the monic modulus `x^k + c_{k-1} x^{k-1} + .. + c_0`.
fn modulus(q: usize) -> Option<(usize, usize, &'static [usize])> {
    match q {
        2 | 3 | 5 | 7 => Some((q, 1, &[0])),
        // x^2 + x + 1 over GF(2)
        4 => Some((2, 2, &[1, 1])),
        // x^3 + x + 1 over GF(2)
        8 => Some((2, 3, &[1, 1, 0])),
        // x^2 + 1 over GF(3)
        9 => Some((3, 2, &[1, 0])),
        _ => None,
    }
}

impl FiniteField {
    pub fn new(q: usize) -> Result<Self> {
        let (p, k, low) = modulus(q).ok_or(Error::UnsupportedOrder(q as u64))?;
        let digits = |mut x: usize| {
            let mut d = vec![0; k];
            for slot in d.iter_mut() {
                *slot = x % p;
                x /= p;
            }
            d
        };
        let undigits = |d: &[usize]| d.iter().rev().fold(0, |acc, &c| acc * p + c);

        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&sum) as u16;

                let mut prod = vec![0usize; 2 * k - 1];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // reduce using x^k = -(c_{k-1} x^{k-1} + .. + c_0)
                for deg in (k..prod.len()).rev() {
                    let lead = prod[deg];
                    if lead == 0 {
                        continue;
                    }
                    prod[deg] = 0;
                    for (i, c) in low.iter().enumerate() {
                        let sub = lead * c % p;
                        let slot = &mut prod[deg - k + i];
                        *slot = (*slot + p - sub) % p;
                    }
                }
                mul[a * q + b] = undigits(&prod[..k]) as u16;
            }
        }
        Ok(FiniteField { q, add, mul })
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn dot(&self, a: &[usize; 3], b: &[usize; 3]) -> usize {
        (0..3).fold(0, |acc, i| self.add(acc, self.mul(a[i], b[i])))
    }
}
