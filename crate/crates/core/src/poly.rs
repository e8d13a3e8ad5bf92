//! Dense univariate polynomials with big-integer coefficients.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Coefficients in ascending degree order; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k)
                .collect(),
        )
    }

    /// Multiplicity of the root at zero.
    pub fn zero_order(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides out `x^zero_order`.
    pub fn strip_zero_root(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs[self.zero_order()..].to_vec(),
        }
    }

    pub fn content(&self) -> BigUint {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
            .magnitude()
            .clone()
    }

    /// Divides by the (positive) content, so signs are preserved.
    pub fn primitive_part(&self) -> Self {
        let g = BigInt::from(self.content());
        if g.is_zero() || g.is_one() {
            return self.clone();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| c / &g).collect(),
        }
    }

    fn neg(&self) -> Self {
        IntPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Pseudo-remainder of `self` by `divisor`, together with the sign of
    /// the multiplier `lc(divisor)^steps` that was applied to `self`.
    ///
    /// # Panics
    /// If `divisor` is zero.
    pub fn pseudo_rem(&self, divisor: &IntPoly) -> (IntPoly, Ordering) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        let mut steps = 0u32;
        while rem.len() > dd && !rem.is_empty() {
            let top = rem.len() - 1;
            let lead = rem[top].clone();
            let shift = top - dd;
            for c in rem.iter_mut() {
                *c *= lc;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &lead * d;
            }
            steps += 1;
            debug_assert!(rem[top].is_zero());
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        let sign = if lc.is_negative() && steps % 2 == 1 {
            Ordering::Less
        } else {
            Ordering::Greater
        };
        (IntPoly::new(rem), sign)
    }

    /// Exact quotient over the integers, or `None` if `divisor` does not divide `self` in Z[x].
    pub fn exact_div(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        let lc = divisor.leading().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if rem.is_empty() {
                Some(IntPoly::zero())
            } else {
                None
            };
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let (q, r) = rem[top].div_rem(lc);
            if !r.is_zero() {
                return None;
            }
            let shift = top - dd;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[shift + j] -= &q * d;
            }
            quot[shift] = q;
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        if rem.is_empty() {
            Some(IntPoly::new(quot))
        } else {
            None
        }
    }

    /// Primitive gcd with positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &IntPoly) -> IntPoly {
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let (r, _) = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        if a.leading().is_some_and(Signed::is_negative) {
            a.neg()
        } else {
            a
        }
    }

    /// `self / gcd(self, self')`, primitive; same distinct roots, all simple.
    pub fn square_free_part(&self) -> IntPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.primitive_part();
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.primitive_part();
        }
        self.exact_div(&g)
            .expect("gcd of a primitive polynomial divides it over Z")
            .primitive_part()
    }

    /// Sign of the value at the rational point `x`, computed without fractions.
    pub fn sign_at(&self, x: &BigRational) -> Ordering {
        let Some(deg) = self.degree() else {
            return Ordering::Equal;
        };
        // den^deg * p(num/den) = sum c_k num^k den^(deg-k), den > 0
        let (num, den) = (x.numer(), x.denom());
        let mut den_pow = BigInt::one();
        let mut acc = self.coeffs[deg].clone();
        for k in (0..deg).rev() {
            den_pow *= den;
            acc = acc * num + &self.coeffs[k] * &den_pow;
        }
        acc.sign_ordering()
    }

    /// Sign of `p(x)` as `x -> +inf` (`positive`) or `-inf`.
    pub fn sign_at_infinity(&self, positive: bool) -> Ordering {
        match (self.leading(), self.degree()) {
            (Some(lc), Some(d)) => {
                let s = lc.sign_ordering();
                if !positive && d % 2 == 1 {
                    s.reverse()
                } else {
                    s
                }
            }
            _ => Ordering::Equal,
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }
}

trait SignOrdering {
    fn sign_ordering(&self) -> Ordering;
}

impl SignOrdering for BigInt {
    fn sign_ordering(&self) -> Ordering {
        self.cmp(&BigInt::zero())
    }
}
