//! Exact arithmetic in the cyclotomic field Q(zeta_8).
//!
//! Elements are stored as `c0 + c1*z + c2*z^2 + c3*z^3` with `z` a primitive
//! eighth root of unity, so `z^2 = i` and `z^4 = -1`. This field hosts the
//! exact values needed at `q = i`: the deformation parameter itself and the
//! half-weights `q^{1/2} = z` entering coproducts.
//!
//! Coefficients are rationals over `i128`. The workspace profile keeps
//! overflow checks on, so running past the integer capacity panics loudly
//! instead of corrupting results; all exact-backend computations in this
//! crate stay far below that bound.

use num_complex::Complex64 as C64;
use num_rational::Ratio;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

pub type Q = Ratio<i128>;

/// An element of Q(zeta_8).
#[derive(Clone, PartialEq, Eq)]
pub struct ExactCyc8 {
    /// Coefficients of 1, z, z^2, z^3.
    pub c: [Q; 4],
}

#[inline]
fn q0() -> Q {
    Ratio::from_integer(0)
}

impl ExactCyc8 {
    pub fn new(c0: Q, c1: Q, c2: Q, c3: Q) -> Self {
        ExactCyc8 { c: [c0, c1, c2, c3] }
    }

    pub fn zero() -> Self {
        ExactCyc8 { c: [q0(), q0(), q0(), q0()] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i128) -> Self {
        ExactCyc8 { c: [Ratio::from_integer(n), q0(), q0(), q0()] }
    }

    pub fn from_ratio(num: i128, den: i128) -> Self {
        ExactCyc8 { c: [Ratio::new(num, den), q0(), q0(), q0()] }
    }

    /// The imaginary unit `i = z^2`.
    pub fn i() -> Self {
        ExactCyc8 { c: [q0(), q0(), Ratio::from_integer(1), q0()] }
    }

    /// The primitive eighth root `z = e^{i pi/4}`.
    pub fn zeta() -> Self {
        ExactCyc8 { c: [q0(), Ratio::from_integer(1), q0(), q0()] }
    }

    /// `z^k` for any integer exponent.
    pub fn zeta_pow(k: i64) -> Self {
        let k = k.rem_euclid(8) as usize;
        let mut c = [q0(), q0(), q0(), q0()];
        let one = Ratio::from_integer(1i128);
        if k < 4 {
            c[k] = one;
        } else {
            c[k - 4] = -one;
        }
        ExactCyc8 { c }
    }

    /// Gaussian rational `a + b i`.
    pub fn gauss(a: Q, b: Q) -> Self {
        ExactCyc8 { c: [a, q0(), b, q0()] }
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|x| *x.numer() == 0)
    }

    /// True when the element lies in Q (no root-of-unity content).
    pub fn is_rational(&self) -> bool {
        *self.c[1].numer() == 0 && *self.c[2].numer() == 0 && *self.c[3].numer() == 0
    }

    pub fn rational_part(&self) -> Q {
        self.c[0]
    }

    /// Complex conjugation: `z -> z^{-1}`.
    pub fn conj(&self) -> Self {
        // conj(c0 + c1 z + c2 z^2 + c3 z^3) = c0 - c3 z - c2 z^2 - c1 z^3
        ExactCyc8 { c: [self.c[0], -self.c[3], -self.c[2], -self.c[1]] }
    }

    /// Galois action `z -> z^k` for odd `k`.
    fn galois(&self, k: usize) -> Self {
        let mut out = Self::zero();
        for (j, cj) in self.c.iter().enumerate() {
            if *cj.numer() == 0 {
                continue;
            }
            let mut t = Self::zeta_pow((k * j) as i64);
            for x in t.c.iter_mut() {
                *x *= cj;
            }
            out += t;
        }
        out
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero in Q(zeta_8)");
        let g3 = self.galois(3);
        let g5 = self.galois(5);
        let g7 = self.galois(7);
        let cof = &(&g3 * &g5) * &g7;
        let norm = self * &cof;
        debug_assert!(norm.is_rational(), "field norm must be rational");
        let n = norm.c[0];
        let mut out = cof;
        for x in out.c.iter_mut() {
            *x /= n;
        }
        out
    }

    /// Embedding into complex doubles.
    pub fn to_c64(&self) -> C64 {
        let f = |q: &Q| (*q.numer() as f64) / (*q.denom() as f64);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let (c0, c1, c2, c3) = (f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3]));
        C64::new(c0 + (c1 - c3) * s, c2 + (c1 + c3) * s)
    }
}

impl Add for &ExactCyc8 {
    type Output = ExactCyc8;
    fn add(self, rhs: &ExactCyc8) -> ExactCyc8 {
        ExactCyc8 {
            c: [
                self.c[0] + rhs.c[0],
                self.c[1] + rhs.c[1],
                self.c[2] + rhs.c[2],
                self.c[3] + rhs.c[3],
            ],
        }
    }
}

impl Sub for &ExactCyc8 {
    type Output = ExactCyc8;
    fn sub(self, rhs: &ExactCyc8) -> ExactCyc8 {
        ExactCyc8 {
            c: [
                self.c[0] - rhs.c[0],
                self.c[1] - rhs.c[1],
                self.c[2] - rhs.c[2],
                self.c[3] - rhs.c[3],
            ],
        }
    }
}

impl Mul for &ExactCyc8 {
    type Output = ExactCyc8;
    fn mul(self, rhs: &ExactCyc8) -> ExactCyc8 {
        let mut c = [q0(), q0(), q0(), q0()];
        for i in 0..4 {
            if *self.c[i].numer() == 0 {
                continue;
            }
            for j in 0..4 {
                if *rhs.c[j].numer() == 0 {
                    continue;
                }
                let p = self.c[i] * rhs.c[j];
                let k = i + j;
                if k < 4 {
                    c[k] += p;
                } else {
                    c[k - 4] -= p;
                }
            }
        }
        ExactCyc8 { c }
    }
}

impl Div for &ExactCyc8 {
    type Output = ExactCyc8;
    fn div(self, rhs: &ExactCyc8) -> ExactCyc8 {
        self * &rhs.inv()
    }
}

impl Neg for &ExactCyc8 {
    type Output = ExactCyc8;
    fn neg(self) -> ExactCyc8 {
        ExactCyc8 { c: [-self.c[0], -self.c[1], -self.c[2], -self.c[3]] }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for ExactCyc8 {
            type Output = ExactCyc8;
            fn $m(self, rhs: ExactCyc8) -> ExactCyc8 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for ExactCyc8 {
    type Output = ExactCyc8;
    fn neg(self) -> ExactCyc8 {
        -&self
    }
}

impl AddAssign for ExactCyc8 {
    fn add_assign(&mut self, rhs: ExactCyc8) {
        for k in 0..4 {
            self.c[k] += rhs.c[k];
        }
    }
}

impl SubAssign for ExactCyc8 {
    fn sub_assign(&mut self, rhs: ExactCyc8) {
        for k in 0..4 {
            self.c[k] -= rhs.c[k];
        }
    }
}

impl MulAssign for ExactCyc8 {
    fn mul_assign(&mut self, rhs: ExactCyc8) {
        *self = &*self * &rhs;
    }
}

fn fmt_cyc(x: &ExactCyc8, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let names = ["", "*z", "*i", "*z^3"];
    let mut first = true;
    for (k, c) in x.c.iter().enumerate() {
        if *c.numer() == 0 {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        write!(f, "{}{}", c, names[k])?;
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Debug for ExactCyc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cyc(self, f)
    }
}

impl fmt::Display for ExactCyc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_cyc(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn small() -> impl Strategy<Value = ExactCyc8> {
        let q = (-6i128..=6, 1i128..=4).prop_map(|(n, d)| Ratio::new(n, d));
        [q.clone(), q.clone(), q.clone(), q].prop_map(|c| ExactCyc8 { c })
    }

    proptest! {
        #[test]
        fn field_axioms(a in small(), b in small(), c in small()) {
            // associativity and distributivity
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            // inverse
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv(), ExactCyc8::one());
            }
        }

        #[test]
        fn embedding_homomorphism(a in small(), b in small()) {
            let lhs = (&a * &b).to_c64();
            let rhs = a.to_c64() * b.to_c64();
            let scale = rhs.norm().max(1.0);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale);
            let ls = (&a + &b).to_c64();
            let rs = a.to_c64() + b.to_c64();
            prop_assert!((ls - rs).norm() <= 1e-12 * rs.norm().max(1.0));
        }

        #[test]
        fn conj_matches_embedding(a in small()) {
            let d = a.conj().to_c64() - a.to_c64().conj();
            prop_assert!(d.norm() <= 1e-12);
        }
    }

    #[test]
    fn zeta_powers() {
        let z = ExactCyc8::zeta();
        let mut p = ExactCyc8::one();
        for k in 0..16 {
            assert_eq!(p, ExactCyc8::zeta_pow(k));
            p = &p * &z;
        }
        assert_eq!(&ExactCyc8::i() * &ExactCyc8::i(), ExactCyc8::from_int(-1));
    }

    #[test]
    fn embedding_products_small_chain() {
        // products of up to 10 small factors stay within 1e-12 relative
        let factors = [
            ExactCyc8::zeta(),
            ExactCyc8::gauss(Ratio::new(1, 2), Ratio::new(-1, 2)),
            ExactCyc8::from_ratio(3, 4),
            ExactCyc8::zeta_pow(3),
            ExactCyc8::gauss(Ratio::new(2, 1), Ratio::new(1, 3)),
            ExactCyc8::i(),
            ExactCyc8::from_int(2),
            ExactCyc8::zeta_pow(5),
            ExactCyc8::gauss(Ratio::new(-1, 2), Ratio::new(1, 2)),
            ExactCyc8::zeta_pow(7),
        ];
        let mut ex = ExactCyc8::one();
        let mut fl = C64::new(1.0, 0.0);
        for f in &factors {
            ex = &ex * f;
            fl *= f.to_c64();
        }
        assert!((ex.to_c64() - fl).norm() <= 1e-12 * fl.norm().max(1.0));
    }
}
