//! Representations of `sl_q(2)`: weight-basis irreps, coproducts, Casimir
//! operators and Lax operators, over the exact backend at `q = i` and the
//! float backend elsewhere.
//!
//! Conventions (fixed throughout the crate):
//! * basis vectors of the `r`-dimensional irrep are ordered top weight first,
//!   `k v_i = q^{2i} v_i` with `i = j, j-1, ..., -j` and `j = (r-1)/2`;
//! * `f` lowers with unit coefficient, `e v_i = [j-i][j+i+1] v_{i+1}`;
//! * `Delta[x] = x (x) k^{-1/2} + k^{1/2} (x) x` for `x = e, f`, and
//!   `Delta[k] = k (x) k`;
//! * the Casimir is `c = f e + (q k + q^{-1} k^{-1})/(q - q^{-1})^2`, with
//!   eigenvalue `(q^r + q^{-r})/(q - q^{-1})^2` on the `r`-dimensional irrep.

use crate::numlin::cyc::ExactCyc8;
use crate::numlin::mat::CMat;
use crate::numlin::scalar::Scalar;
use crate::{Error, Result};
use num_complex::Complex64 as C64;

/// Deformation parameter: an exact or floating root of unity, or generic.
#[derive(Clone, Debug, PartialEq)]
pub enum QParam {
    /// `q = i` on the exact cyclotomic backend (phase `pi/2`).
    ExactI,
    /// `q = e^{i pi a / b}` on the float backend.
    Root { a: i64, b: i64 },
    /// `q = e^gamma`, generic deformation on the float backend.
    Generic { gamma: C64 },
}

impl QParam {
    pub fn q_c64(&self) -> C64 {
        match self {
            QParam::ExactI => C64::new(0.0, 1.0),
            QParam::Root { a, b } => (C64::i() * std::f64::consts::PI * (*a as f64) / (*b as f64)).exp(),
            QParam::Generic { gamma } => gamma.exp(),
        }
    }

    /// Spectral weight `q^u`.
    pub fn q_pow(&self, u: f64) -> C64 {
        match self {
            QParam::ExactI => (C64::i() * std::f64::consts::FRAC_PI_2 * u).exp(),
            QParam::Root { a, b } => {
                (C64::i() * std::f64::consts::PI * (*a as f64) / (*b as f64) * u).exp()
            }
            QParam::Generic { gamma } => (gamma * u).exp(),
        }
    }

    /// Dimension truncation at a root of unity: `N = n` for odd `n`,
    /// `n/2` for even `n`, where `q^n = 1` primitively. `None` when generic.
    pub fn root_bound(&self) -> Option<usize> {
        match self {
            QParam::ExactI => Some(2),
            QParam::Root { a, b } => {
                let g = gcd(a.unsigned_abs(), 2 * b.unsigned_abs());
                let n = (2 * b.unsigned_abs() / g) as usize;
                Some(if n % 2 == 1 { n } else { n / 2 })
            }
            QParam::Generic { .. } => None,
        }
    }

    /// q = +-1 is outside the domain of the deformed Casimir.
    pub fn check_deformed(&self) -> Result<()> {
        let q = self.q_c64();
        if (q - C64::new(1.0, 0.0)).norm() < 1e-12 || (q + C64::new(1.0, 0.0)).norm() < 1e-12 {
            return Err(Error::QUnit);
        }
        Ok(())
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// A concrete representation: generator matrices over scalar backend `T`.
#[derive(Clone)]
pub struct RepSpec<T: Scalar> {
    pub label: String,
    pub dim: usize,
    pub q: QParam,
    /// `q` and `q^{1/2}` as backend scalars.
    pub q_scalar: T,
    pub qh_scalar: T,
    pub e: CMat<T>,
    pub f: CMat<T>,
    pub k_half: CMat<T>,
}

impl<T: Scalar> RepSpec<T> {
    pub fn k(&self) -> CMat<T> {
        self.k_half.matmul(&self.k_half)
    }

    pub fn k_half_inv(&self) -> CMat<T> {
        invert_diagonal(&self.k_half)
    }

    pub fn k_inv(&self) -> CMat<T> {
        let kh = self.k_half_inv();
        kh.matmul(&kh)
    }

    /// Residuals of the three defining algebra relations:
    /// `[e,f] = (k - k^{-1})/(q - q^{-1})`, `q^2 e k = k e`, `f k = q^2 k f`.
    pub fn algebra_residual(&self) -> f64 {
        let q = &self.q_scalar;
        let qinv = T::one().div(q);
        let denom = q.sub(&qinv);
        let k = self.k();
        let kinv = self.k_inv();
        let lhs = self.e.matmul(&self.f).sub(&self.f.matmul(&self.e));
        let rhs = k.sub(&kinv).scale(&T::one().div(&denom));
        let r1 = lhs.sub(&rhs).max_abs();
        let q2 = q.mul(q);
        let r2 = self.e.matmul(&k).scale(&q2).sub(&k.matmul(&self.e)).max_abs();
        let r3 = self.f.matmul(&k).sub(&k.matmul(&self.f).scale(&q2)).max_abs();
        r1.max(r2).max(r3)
    }
}

fn invert_diagonal<T: Scalar>(m: &CMat<T>) -> CMat<T> {
    // k^{1/2} is diagonal in every representation this crate builds
    let mut out = CMat::zeros(m.rows, m.cols).unwrap();
    for d in 0..m.rows {
        out[(d, d)] = T::one().div(&m[(d, d)]);
    }
    out
}

fn spow<T: Scalar>(base: &T, k: i64) -> T {
    let mut acc = T::one();
    let b = if k >= 0 { base.clone() } else { T::one().div(base) };
    for _ in 0..k.unsigned_abs() {
        acc = acc.mul(&b);
    }
    acc
}

/// q-number `[x] = (q^x - q^{-x})/(q - q^{-1})` built from powers of
/// `q^{1/2}` so half-integer weights stay inside the scalar backend;
/// `twice_x` is `2x`.
fn qnum<T: Scalar>(qh: &T, twice_x: i64) -> T {
    // q^x = qh^{2x} = qh^{twice_x}
    let num = spow(qh, twice_x).sub(&spow(qh, -twice_x));
    let den = spow(qh, 2).sub(&spow(qh, -2));
    num.div(&den)
}

fn build_generators<T: Scalar>(qh: &T, r: usize) -> (CMat<T>, CMat<T>, CMat<T>) {
    let tj = (r - 1) as i64; // twice the spin
    let mut e = CMat::zeros(r, r).unwrap();
    let mut f = CMat::zeros(r, r).unwrap();
    let mut kh = CMat::zeros(r, r).unwrap();
    for row in 0..r {
        let ti = tj - 2 * row as i64; // twice the weight of this row
        kh[(row, row)] = spow(qh, ti);
        if row + 1 < r {
            f[(row + 1, row)] = T::one();
            let ti1 = tj - 2 * (row as i64 + 1);
            let alpha = qnum(qh, tj - ti1).mul(&qnum(qh, tj + ti1 + 2));
            e[(row, row + 1)] = alpha;
        }
    }
    (e, f, kh)
}

/// The `r`-dimensional irrep on the exact backend at `q = i`.
pub fn make_rep_vr_exact(r: usize) -> Result<RepSpec<ExactCyc8>> {
    if r > 2 {
        return Err(Error::DimExceedsRootBound { dim: r, bound: 2 });
    }
    let qh = ExactCyc8::zeta();
    let (e, f, k_half) = build_generators(&qh, r);
    Ok(RepSpec {
        label: format!("V{r}"),
        dim: r,
        q: QParam::ExactI,
        q_scalar: ExactCyc8::i(),
        qh_scalar: qh,
        e,
        f,
        k_half,
    })
}

/// The `r`-dimensional irrep on the float backend.
pub fn make_rep_vr(q: QParam, r: usize) -> Result<RepSpec<C64>> {
    if let Some(bound) = q.root_bound() {
        if r > bound {
            return Err(Error::DimExceedsRootBound { dim: r, bound });
        }
    }
    let qv = q.q_c64();
    let qh = match &q {
        QParam::ExactI => (C64::i() * std::f64::consts::FRAC_PI_4).exp(),
        QParam::Root { a, b } => {
            (C64::i() * std::f64::consts::PI * (*a as f64) / (2.0 * *b as f64)).exp()
        }
        QParam::Generic { gamma } => (gamma / 2.0).exp(),
    };
    let (e, f, k_half) = build_generators(&qh, r);
    Ok(RepSpec {
        label: format!("V{r}"),
        dim: r,
        q,
        q_scalar: qv,
        qh_scalar: qh,
        e,
        f,
        k_half,
    })
}

/// Tensor-product representation via the coproduct
/// `Delta[x] = x (x) k^{-1/2} + k^{1/2} (x) x`.
pub fn coproduct<T: Scalar>(a: &RepSpec<T>, b: &RepSpec<T>) -> Result<RepSpec<T>> {
    if a.q != b.q {
        return Err(Error::QMismatch);
    }
    let bkinv = b.k_half_inv();
    let e = a.e.kron(&bkinv)?.add(&a.k_half.kron(&b.e)?);
    let f = a.f.kron(&bkinv)?.add(&a.k_half.kron(&b.f)?);
    let k_half = a.k_half.kron(&b.k_half)?;
    Ok(RepSpec {
        label: format!("{}(x){}", a.label, b.label),
        dim: a.dim * b.dim,
        q: a.q.clone(),
        q_scalar: a.q_scalar.clone(),
        qh_scalar: a.qh_scalar.clone(),
        e,
        f,
        k_half,
    })
}

/// `n`-fold coproduct power of a representation.
pub fn nfold<T: Scalar>(rep: &RepSpec<T>, n: usize) -> Result<RepSpec<T>> {
    assert!(n >= 1);
    let mut acc = rep.clone();
    for _ in 1..n {
        acc = coproduct(&acc, rep)?;
    }
    Ok(acc)
}

/// The quadratic Casimir `c = f e + (q k + q^{-1} k^{-1})/(q - q^{-1})^2`.
pub fn casimir<T: Scalar>(rep: &RepSpec<T>) -> Result<CMat<T>> {
    rep.q.check_deformed()?;
    let q = &rep.q_scalar;
    let qinv = T::one().div(q);
    let d = q.sub(&qinv);
    let d2inv = T::one().div(&d.mul(&d));
    let k = rep.k();
    let kinv = rep.k_inv();
    let fe = rep.f.matmul(&rep.e);
    Ok(fe.add(&k.scale(q).add(&kinv.scale(&qinv)).scale(&d2inv)))
}

/// Casimir eigenvalue `(q^r + q^{-r})/(q - q^{-1})^2` on the `r`-dim irrep.
pub fn casimir_eigenvalue(q: &QParam, r: i64) -> C64 {
    let qv = q.q_c64();
    (qv.powi(r as i32) + qv.powi(-(r as i32))) / (qv - qv.inv()).powi(2)
}

/// Lax operator blocks: `L(u) = q^u L_+ - q^{-u} L_-` as a 2x2 matrix of
/// operators on the representation space.
pub struct LaxBlocks {
    pub blocks: [[CMat<C64>; 2]; 2],
}

pub fn lax_l(rep: &RepSpec<C64>, u: f64) -> LaxBlocks {
    let q = rep.q_scalar;
    let qh = rep.qh_scalar;
    let s = rep.q.q_pow(u);
    let sinv = s.inv();
    let gf = (q * q - 1.0) / (qh * qh * qh);
    let ge = (1.0 - q * q) / qh;
    let kh = rep.k_half.clone();
    let khi = rep.k_half_inv();
    let l11 = kh.scale(&s).sub(&khi.scale(&sinv));
    let l12 = rep.f.scale(&(s * gf));
    let l21 = rep.e.scale(&(-sinv * ge));
    let l22 = khi.scale(&s).sub(&kh.scale(&sinv));
    LaxBlocks { blocks: [[l11, l12], [l21, l22]] }
}

/// Residual of the RLL relation
/// `R(u-v) L1(u) L2(v) = L2(v) L1(u) R(u-v)` where `R` acts on the tensor
/// square of `rep`'s space (unchecked R, i.e. `P Rcheck`).
pub fn rll_residual(rep: &RepSpec<C64>, r_of: &dyn Fn(f64) -> CMat<C64>, u: f64, v: f64) -> f64 {
    let lu = lax_l(rep, u);
    let lv = lax_l(rep, v);
    let r = r_of(u - v);
    let d = rep.dim;
    let id = CMat::<C64>::identity(d).unwrap();
    let place1 = |m: &CMat<C64>| m.kron(&id).unwrap();
    let place2 = |m: &CMat<C64>| id.kron(m).unwrap();
    let mut worst = 0.0f64;
    for a in 0..2 {
        for b in 0..2 {
            let mut lhs = CMat::<C64>::zeros(d * d, d * d).unwrap();
            let mut rhs = lhs.clone();
            for c in 0..2 {
                lhs = lhs.add(&place1(&lu.blocks[a][c]).matmul(&place2(&lv.blocks[c][b])));
                rhs = rhs.add(&place2(&lv.blocks[a][c]).matmul(&place1(&lu.blocks[c][b])));
            }
            let l = r.matmul(&lhs);
            let rr = rhs.matmul(&r);
            worst = worst.max(l.sub(&rr).max_abs() / l.max_abs().max(1.0));
        }
    }
    worst
}

/// The swap operator on `V (x) V` for `V` of dimension `d`.
pub fn swap_operator<T: Scalar>(d: usize) -> Result<CMat<T>> {
    let mut p = CMat::zeros(d * d, d * d)?;
    for a in 0..d {
        for b in 0..d {
            p[(b * d + a, a * d + b)] = T::one();
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::eig::eig_dense;

    fn hn1_matrix() -> CMat<ExactCyc8> {
        let i = ExactCyc8::i();
        let one = ExactCyc8::one();
        let mut m = CMat::zeros(4, 4).unwrap();
        m[(1, 1)] = i.clone();
        m[(1, 2)] = one.clone();
        m[(2, 1)] = one;
        m[(2, 2)] = -&i;
        m
    }

    #[test]
    fn algebra_relations_exact_at_q_i() {
        let v2 = make_rep_vr_exact(2).unwrap();
        assert_eq!(v2.algebra_residual(), 0.0);
        let v22 = coproduct(&v2, &v2).unwrap();
        assert_eq!(v22.algebra_residual(), 0.0);
        let v4 = nfold(&v2, 4).unwrap();
        assert_eq!(v4.algebra_residual(), 0.0);
    }

    #[test]
    fn algebra_relations_generic() {
        let q = QParam::Generic { gamma: C64::new(0.23, 0.31) };
        for r in 2..=4 {
            let rep = make_rep_vr(q.clone(), r).unwrap();
            assert!(rep.algebra_residual() <= 1e-10, "r = {r}");
        }
        let rep = coproduct(
            &make_rep_vr(q.clone(), 3).unwrap(),
            &make_rep_vr(q, 2).unwrap(),
        )
        .unwrap();
        assert!(rep.algebra_residual() <= 1e-10);
    }

    #[test]
    fn k_matrix_of_v2_at_q_i() {
        let v2 = make_rep_vr_exact(2).unwrap();
        let k = v2.k();
        assert_eq!(k[(0, 0)], ExactCyc8::i());
        assert_eq!(k[(1, 1)], -&ExactCyc8::i());
    }

    #[test]
    fn casimir_eigenvalues_match_formula() {
        // On V2 at q = i both routes give 1/2. (The operator value is
        // normative; see the decisions ledger on the spec's worked example.)
        let v2 = make_rep_vr_exact(2).unwrap();
        let c = casimir(&v2).unwrap();
        let half = ExactCyc8::from_ratio(1, 2);
        assert_eq!(c[(0, 0)], half);
        assert_eq!(c[(1, 1)], half);
        assert!(c[(0, 1)].is_zero() && c[(1, 0)].is_zero());
        let formula = casimir_eigenvalue(&QParam::ExactI, 2);
        assert!((formula - C64::new(0.5, 0.0)).norm() < 1e-14);

        // q = e^{i pi/3}: c_3 = 2/3, c_5 = c_1 = -1/3 (the merging condition)
        let q = QParam::Root { a: 1, b: 3 };
        assert!((casimir_eigenvalue(&q, 3) - C64::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((casimir_eigenvalue(&q, 5) - C64::new(-1.0 / 3.0, 0.0)).norm() < 1e-12);
        assert!((casimir_eigenvalue(&q, 1) - C64::new(-1.0 / 3.0, 0.0)).norm() < 1e-12);
        let v3 = make_rep_vr(q, 3).unwrap();
        let c3 = casimir(&v3).unwrap();
        for d in 0..3 {
            assert!((c3[(d, d)] - C64::new(2.0 / 3.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn root_bound_enforced() {
        assert!(make_rep_vr_exact(3).is_err());
        assert!(make_rep_vr(QParam::Root { a: 1, b: 3 }, 4).is_err());
        assert!(make_rep_vr(QParam::Root { a: 1, b: 3 }, 3).is_ok());
        assert!(make_rep_vr(QParam::Generic { gamma: C64::new(0.1, 0.2) }, 7).is_ok());
    }

    #[test]
    fn coproduct_k_weights_at_q_i() {
        let v2 = make_rep_vr_exact(2).unwrap();
        let v22 = coproduct(&v2, &v2).unwrap();
        let k = v22.k();
        assert_eq!(k[(0, 0)], -&ExactCyc8::one());
        assert_eq!(k[(1, 1)], ExactCyc8::one());
        assert_eq!(k[(2, 2)], ExactCyc8::one());
        assert_eq!(k[(3, 3)], -&ExactCyc8::one());
    }

    #[test]
    fn coassociativity_exact() {
        let v2 = make_rep_vr_exact(2).unwrap();
        let left = coproduct(&coproduct(&v2, &v2).unwrap(), &v2).unwrap();
        let right = coproduct(&v2, &coproduct(&v2, &v2).unwrap()).unwrap();
        assert_eq!(left.e, right.e);
        assert_eq!(left.f, right.f);
        assert_eq!(left.k_half, right.k_half);
    }

    #[test]
    fn casimir_of_tensor_square_is_nilpotent_jordan_block() {
        let v2 = make_rep_vr_exact(2).unwrap();
        let v22 = coproduct(&v2, &v2).unwrap();
        let c = casimir(&v22).unwrap();
        assert_eq!(c, hn1_matrix());
        let c2 = c.matmul(&c);
        assert!(c2.entries().iter().all(|x| x.is_zero()), "c^2 = 0");
        assert!(!c.entries().iter().all(|x| x.is_zero()), "c != 0");
    }

    #[test]
    fn casimir_commutes_with_generators() {
        let q = QParam::Generic { gamma: C64::new(0.1, 0.4) };
        let rep = coproduct(
            &make_rep_vr(q.clone(), 2).unwrap(),
            &make_rep_vr(q, 3).unwrap(),
        )
        .unwrap();
        let c = casimir(&rep).unwrap();
        for g in [&rep.e, &rep.f, &rep.k_half] {
            assert!(c.commutator(g).max_abs() <= 1e-10);
        }
    }

    #[test]
    fn fusion_spectrum_generic_q() {
        let q = QParam::Generic { gamma: C64::new(0.13, 0.27) };
        let (r1, r2) = (2usize, 3usize);
        let rep = coproduct(
            &make_rep_vr(q.clone(), r1).unwrap(),
            &make_rep_vr(q.clone(), r2).unwrap(),
        )
        .unwrap();
        let c = casimir(&rep).unwrap();
        let d = eig_dense(&c).unwrap();
        assert!(d.residual <= 1e-9);
        let mut expected: Vec<C64> = Vec::new();
        let mut r = (r1 as i64 - r2 as i64).abs() + 1;
        while r <= (r1 + r2 - 1) as i64 {
            for _ in 0..r {
                expected.push(casimir_eigenvalue(&q, r));
            }
            r += 2;
        }
        let mut got = d.values.clone();
        let key = |z: &C64| (z.re, z.im);
        got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        expected.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
        for (g, e) in got.iter().zip(&expected) {
            assert!((g - e).norm() <= 1e-9, "{g} vs {e}");
        }
    }

    #[test]
    fn lax_entry_structure() {
        let gamma = C64::new(0.2, 0.5);
        let q = QParam::Generic { gamma };
        let rep = make_rep_vr(q.clone(), 2).unwrap();
        let u = 0.7;
        let lax = lax_l(&rep, u);
        let qv = q.q_c64();
        let qh = (gamma / 2.0).exp();
        let gf = (qv * qv - 1.0) / (qh * qh * qh);
        let expect = rep.f.scale(&(q.q_pow(u) * gf));
        assert!(lax.blocks[0][1].sub(&expect).max_abs() < 1e-12);
        // at u = 0: L = L_+ - L_-
        let l0 = lax_l(&rep, 0.0);
        let l11 = rep.k_half.sub(&rep.k_half_inv());
        assert!(l0.blocks[0][0].sub(&l11).max_abs() < 1e-12);
    }

    #[test]
    fn rll_fundamental() {
        // fundamental solution at generic q: Rcheck = I + q(1-w)/(1-w q^2)(c - c3 I),
        // w = q^{2u}; R = P Rcheck
        let gamma = C64::new(0.2, 0.3);
        let q = QParam::Generic { gamma };
        let rep = make_rep_vr(q.clone(), 2).unwrap();
        let pair = coproduct(&rep, &rep).unwrap();
        let c = casimir(&pair).unwrap();
        let qv = q.q_c64();
        let c3 = casimir_eigenvalue(&q, 3);
        let id4 = CMat::<C64>::identity(4).unwrap();
        let swap = swap_operator::<C64>(2).unwrap();
        let q2 = q.clone();
        let r_of = move |x: f64| {
            let w = q2.q_pow(2.0 * x);
            let coeff = qv * (1.0 - w) / (1.0 - w * qv * qv);
            let rc = id4.add(&c.sub(&id4.scale(&c3)).scale(&coeff));
            swap.matmul(&rc)
        };
        for (u, v) in [(0.3, 0.8), (1.1, -0.4), (-0.6, 0.9), (0.05, 2.0), (1.7, 1.2)] {
            let r = rll_residual(&rep, &r_of, u, v);
            assert!(r <= 1e-9, "RLL residual {r} at ({u},{v})");
        }
    }
}
