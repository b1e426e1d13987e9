//! Projector bases underlying the catalog families.
//!
//! * 4x4 sector: the nilpotent Casimir on `V2 (x) V2` at `q = i`.
//! * 8x8 sector: the eight invariant projectors on `V2 (x) I4`, built
//!   exactly from words in the two neighbor Casimirs plus the kernel
//!   vectors of the raising generator; the two 2-dimensional blocks in the
//!   odd sector are ordered by a self-check against the composite-Lax
//!   relation so the deformation direction below is well defined.
//! * 16x16 sector: the 32 projectors re-exported from `projlib`.

use crate::numlin::cyc::ExactCyc8;
use crate::numlin::mat::{nullspace_exact, solve_exact, CMat};

use crate::projlib::{projectors_q_i_32, Eps, ProjKind, ProjLabel};
use crate::qrep::{casimir, coproduct, make_rep_vr_exact, nfold};
use num_complex::Complex64 as C64;
use once_cell::sync::Lazy;

/// The 4x4 Casimir at `q = i` (float embedding) and identity.
pub struct Basis22 {
    pub c22: CMat<C64>,
    pub c22_exact: CMat<ExactCyc8>,
}

pub static BASIS22: Lazy<Basis22> = Lazy::new(|| {
    let v2 = make_rep_vr_exact(2).unwrap();
    let pair = coproduct(&v2, &v2).unwrap();
    let c = casimir(&pair).unwrap();
    Basis22 { c22: c.to_c64(), c22_exact: c }
});

/// Labels of the eight projectors on `V2 (x) I4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum P24 {
    T11,
    T22,
    T12,
    T21,
    P11,
    P22,
    P12,
    P21,
}

pub const P24_ALL: [P24; 8] = [P24::T11, P24::T22, P24::T12, P24::T21, P24::P11, P24::P22, P24::P12, P24::P21];

impl P24 {
    pub fn name(self) -> &'static str {
        match self {
            P24::T11 => "Pt11",
            P24::T22 => "Pt22",
            P24::T12 => "Pt12",
            P24::T21 => "Pt21",
            P24::P11 => "P11",
            P24::P22 => "P22",
            P24::P12 => "P12",
            P24::P21 => "P21",
        }
    }
}

pub struct Basis24 {
    exact: Vec<(P24, CMat<ExactCyc8>)>,
    float: Vec<(P24, CMat<C64>)>,
    /// `P11 + P22 + i P12 - i P21`, the invariant combination that can be
    /// added to several families with an arbitrary coefficient function.
    pub sigma: CMat<C64>,
}

impl Basis24 {
    pub fn exact(&self, l: P24) -> &CMat<ExactCyc8> {
        &self.exact.iter().find(|(k, _)| *k == l).unwrap().1
    }
    pub fn float(&self, l: P24) -> &CMat<C64> {
        &self.float.iter().find(|(k, _)| *k == l).unwrap().1
    }
}

fn build_basis24() -> Basis24 {
    let v2 = make_rep_vr_exact(2).unwrap();
    let rep3 = nfold(&v2, 3).unwrap();
    let pair = coproduct(&v2, &v2).unwrap();
    let c22 = casimir(&pair).unwrap();
    let id2: CMat<ExactCyc8> = CMat::identity(2).unwrap();
    let c12 = c22.kron(&id2).unwrap();
    let c23 = id2.kron(&c22).unwrap();
    let a = c12.add(&c23);
    let b = c12.matmul(&c23);
    let bp = c23.matmul(&c12);
    let q = b.add(&bp);
    let i = ExactCyc8::i();
    let half = ExactCyc8::from_ratio(1, 2);
    let diff = b.sub(&bp).scale(&i);
    let p12 = a.neg().add(&diff).scale(&half);
    let p21 = a.neg().sub(&diff).scale(&half);
    let p11 = p12.matmul(&p21);
    let p22 = p21.matmul(&p12);
    debug_assert_eq!(p11.add(&p22), q);

    // odd-sector blocks: kernel of e within the k = -i weight space
    let k3 = rep3.k();
    let mut stack = CMat::<ExactCyc8>::zeros(16, 8).unwrap();
    for r in 0..8 {
        for c in 0..8 {
            stack[(r, c)] = rep3.e[(r, c)].clone();
            let mut kc = k3[(r, c)].clone();
            if r == c {
                kc = &kc + &ExactCyc8::i();
            }
            stack[(r + 8, c)] = kc;
        }
    }
    let tops = nullspace_exact(&stack);
    assert_eq!(tops.len(), 2, "two odd-sector highest vectors expected");

    let build_tilde = |t1: &[ExactCyc8], t2: &[ExactCyc8]| -> Vec<(P24, CMat<ExactCyc8>)> {
        let f1 = rep3.f.apply(t1);
        let f2 = rep3.f.apply(t2);
        // complete the block basis with the image of q
        let mut cols: Vec<Vec<ExactCyc8>> = vec![t1.to_vec(), f1, t2.to_vec(), f2];
        // pick 4 independent columns of q exactly via incremental rref rank
        for c in 0..8 {
            if cols.len() == 8 {
                break;
            }
            let col: Vec<ExactCyc8> = (0..8).map(|r| q[(r, c)].clone()).collect();
            let mut probe = CMat::<ExactCyc8>::zeros(8, cols.len() + 1).unwrap();
            for (j, v) in cols.iter().chain(std::iter::once(&col)).enumerate() {
                for r in 0..8 {
                    probe[(r, j)] = v[r].clone();
                }
            }
            if nullspace_exact(&probe).is_empty() {
                cols.push(col);
            }
        }
        assert_eq!(cols.len(), 8);
        let basis = CMat::from_fn(8, 8, |r, c| cols[c][r].clone()).unwrap();
        // dual rows: inverse of the basis matrix
        let rhs: Vec<Vec<ExactCyc8>> = (0..8)
            .map(|k| {
                (0..8)
                    .map(|r| if r == k { ExactCyc8::one() } else { ExactCyc8::zero() })
                    .collect()
            })
            .collect();
        let inv_cols = solve_exact(&basis, &rhs).expect("block basis invertible");
        // dual of basis vector j is row j of the inverse
        let dual = |j: usize| -> Vec<ExactCyc8> { (0..8).map(|c| inv_cols[c][j].clone()).collect() };
        let block = |idx: usize| -> [Vec<ExactCyc8>; 2] {
            [cols[2 * idx].clone(), cols[2 * idx + 1].clone()]
        };
        let mut out = Vec::new();
        for (li, bi) in [(1usize, 0usize), (2, 1)] {
            for (lj, bj) in [(1usize, 0usize), (2, 1)] {
                let mut m = CMat::<ExactCyc8>::zeros(8, 8).unwrap();
                for t in 0..2 {
                    let ket = &block(bi)[t];
                    let bra = dual(2 * bj + t);
                    m = m.add(&CMat::outer(ket, &bra).unwrap());
                }
                let label = match (li, lj) {
                    (1, 1) => P24::T11,
                    (1, 2) => P24::T12,
                    (2, 1) => P24::T21,
                    _ => P24::T22,
                };
                out.push((label, m));
            }
        }
        out
    };

    // fix the odd-block order by the composite-Lax deformation check:
    // D = T11 - T22 + P11 - P22 (the u0 = 0 deformation direction) must
    // satisfy the composite relation; the opposite order flips its sign
    // pattern against the P-sector and fails.
    let mut tilde = build_tilde(&tops[0], &tops[1]);
    {
        let t11 = tilde.iter().find(|(l, _)| *l == P24::T11).unwrap().1.to_c64();
        let t22 = tilde.iter().find(|(l, _)| *l == P24::T22).unwrap().1.to_c64();
        let d = t11
            .sub(&t22)
            .add(&p11.to_c64())
            .sub(&p22.to_c64());
        if comp1_residual_at(&d, 0.5) > 1e-9 {
            tilde = build_tilde(&tops[1], &tops[0]);
            let t11 = tilde.iter().find(|(l, _)| *l == P24::T11).unwrap().1.to_c64();
            let t22 = tilde.iter().find(|(l, _)| *l == P24::T22).unwrap().1.to_c64();
            let d = t11.sub(&t22).add(&p11.to_c64()).sub(&p22.to_c64());
            assert!(
                comp1_residual_at(&d, 0.5) <= 1e-9,
                "odd-sector block ordering could not be fixed"
            );
        }
    }

    let mut exact = tilde;
    exact.push((P24::P11, p11));
    exact.push((P24::P22, p22));
    exact.push((P24::P12, p12));
    exact.push((P24::P21, p21));
    exact.sort_by_key(|(l, _)| *l);
    let float: Vec<(P24, CMat<C64>)> = exact.iter().map(|(l, m)| (*l, m.to_c64())).collect();
    let get = |l: P24| -> CMat<C64> { float.iter().find(|(k, _)| *k == l).unwrap().1.clone() };
    let sigma = get(P24::P11)
        .add(&get(P24::P22))
        .add(&get(P24::P12).scale(&C64::i()))
        .sub(&get(P24::P21).scale(&C64::i()));
    Basis24 { exact, float, sigma }
}

/// Residual of the constant deformation direction `d` under the shifted
/// composite-Lax relation at `u0 = 0` (used only to orient the odd blocks).
fn comp1_residual_at(d: &CMat<C64>, u: f64) -> f64 {
    let (xl, xr) = composite_lax_operators(u, 0.0);
    // the relation holds in the flipped composition order; equivalently on
    // the transpose of catalog-oriented matrices (see ybecheck); the
    // constant direction is symmetric enough to check directly transposed
    let m = d.transpose();
    let lhs = m.matmul(&xl);
    let rhs = xr.matmul(&m);
    lhs.sub(&rhs).max_abs()
}

/// The two operator brackets of the shifted composite-Lax relation for the
/// lowering generator on `V2 (x) V2 (x) V2` at `q = i`: returns `(X_L, X_R)`
/// such that solutions satisfy `M X_L = X_R M` (in the flipped composition
/// order; catalog matrices enter transposed).
pub fn composite_lax_operators(u: f64, u0: f64) -> (CMat<C64>, CMat<C64>) {
    let (f1, _e1, kh, khi) = single_site_ops();
    let s = (u / 2.0).exp();
    let s0 = (u0 / 2.0).exp();
    let t3 = |a: &CMat<C64>, b: &CMat<C64>, c: &CMat<C64>| -> CMat<C64> {
        a.kron(b).unwrap().kron(c).unwrap()
    };
    let a_ = t3(&f1, &kh, &kh);
    let b_ = t3(&khi, &f1, &kh);
    let c_ = t3(&khi, &khi, &f1);
    let sc = |x: f64| C64::new(x, 0.0);
    let xl = a_
        .scale(&sc(s * s0))
        .add(&b_.scale(&sc(s0 / s)))
        .add(&c_.scale(&sc(1.0 / (s * s0))));
    let xr = c_
        .scale(&sc(s * s0))
        .add(&b_.scale(&sc(1.0 / (s * s0))))
        .add(&a_.scale(&sc(s0 / s)));
    (xl, xr)
}

/// The unshifted three-site relation for the lowering generator containing
/// the coproduct (`jc`-type): returns `(X_L, X_R)` for the `w = u + u0`
/// extension derived from the composite Lax expansion.
pub fn composite_jc_operators(u: f64, u0: f64) -> (CMat<C64>, CMat<C64>) {
    let (f1, e1, kh, khi) = single_site_ops();
    let s = (u / 2.0).exp();
    let s0 = (u0 / 2.0).exp();
    let t3 = |a: &CMat<C64>, b: &CMat<C64>, c: &CMat<C64>| -> CMat<C64> {
        a.kron(b).unwrap().kron(c).unwrap()
    };
    // Delta[f] on two sites
    let df = f1.kron(&khi).unwrap().add(&kh.kron(&f1).unwrap());
    let q = C64::i();
    let gf = -(1.0 - q * q) * (1.0 - q * q) / (q * q); // -(1-q^2)^2/q^2
    let fef = t3(&f1, &e1, &f1).scale(&gf);
    let sc = |x: f64| C64::new(x, 0.0);
    let xl = {
        let hi = t3(&kh, &f1, &kh).add(&t3(&f1, &khi, &kh)).scale(&sc(s * s0));
        let mid = t3(&kh, &khi, &f1)
            .add(&t3(&f1, &kh, &khi))
            .add(&fef)
            .scale(&sc(s / s0));
        let lo = khi.kron(&df).unwrap().scale(&sc(1.0 / (s * s0)));
        hi.add(&mid).add(&lo)
    };
    let xr = {
        let lo = df.kron(&kh).unwrap().scale(&sc(1.0 / (s * s0)));
        let hi = t3(&f1, &kh, &khi)
            .add(&t3(&kh, &khi, &f1))
            .add(&fef)
            .scale(&sc(s * s0));
        let mid = khi.kron(&df).unwrap().scale(&sc(s / s0));
        lo.add(&hi).add(&mid)
    };
    (xl, xr)
}

fn single_site_ops() -> (CMat<C64>, CMat<C64>, CMat<C64>, CMat<C64>) {
    let v2 = make_rep_vr_exact(2).unwrap();
    let f1 = v2.f.to_c64();
    let e1 = v2.e.to_c64();
    let kh = v2.k_half.to_c64();
    let khi = v2.k_half_inv().to_c64();
    (f1, e1, kh, khi)
}

pub static BASIS24: Lazy<Basis24> = Lazy::new(build_basis24);

/// Float embedding of the 32-projector basis, keyed by label.
pub struct Basis44 {
    pub float: Vec<(ProjLabel, CMat<C64>)>,
}

impl Basis44 {
    pub fn get(&self, kind: ProjKind, i: u8, eps: Eps, j: u8, eta: Eps) -> &CMat<C64> {
        let l = ProjLabel::new(kind, i, eps, j, eta);
        &self.float.iter().find(|(k, _)| *k == l).unwrap().1
    }
}

pub static BASIS44: Lazy<Basis44> = Lazy::new(|| Basis44 {
    float: projectors_q_i_32()
        .set
        .entries
        .iter()
        .map(|(l, m)| (*l, m.to_c64()))
        .collect(),
});

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis24_products_and_completeness() {
        let b = &*BASIS24;
        // P^{ij} P^{kl} = delta_{jk} P^{il} within each 2x2 sector
        let idx = |l: P24| -> (u8, u8, bool) {
            match l {
                P24::T11 => (1, 1, true),
                P24::T12 => (1, 2, true),
                P24::T21 => (2, 1, true),
                P24::T22 => (2, 2, true),
                P24::P11 => (1, 1, false),
                P24::P12 => (1, 2, false),
                P24::P21 => (2, 1, false),
                P24::P22 => (2, 2, false),
            }
        };
        for la in P24_ALL {
            for lb in P24_ALL {
                let (i1, j1, t1) = idx(la);
                let (i2, j2, t2) = idx(lb);
                let prod = b.exact(la).matmul(b.exact(lb));
                if t1 == t2 && j1 == i2 {
                    let lc = P24_ALL
                        .into_iter()
                        .find(|l| idx(*l) == (i1, j2, t1))
                        .unwrap();
                    assert_eq!(&prod, b.exact(lc), "{:?} {:?}", la, lb);
                } else {
                    assert!(prod.entries().iter().all(|x| x.is_zero()), "{la:?} {lb:?}");
                }
            }
        }
        let sum = b
            .exact(P24::T11)
            .add(b.exact(P24::T22))
            .add(b.exact(P24::P11))
            .add(b.exact(P24::P22));
        assert_eq!(sum, CMat::identity(8).unwrap());
    }

    #[test]
    fn basis24_invariance() {
        let v2 = make_rep_vr_exact(2).unwrap();
        let rep3 = nfold(&v2, 3).unwrap();
        let k = rep3.k();
        let b = &*BASIS24;
        for l in P24_ALL {
            for g in [&rep3.e, &rep3.f, &k] {
                assert!(
                    b.exact(l).commutator(g).entries().iter().all(|x| x.is_zero()),
                    "{l:?}"
                );
            }
        }
    }

    #[test]
    fn composite_solution_matches_displayed_expansion() {
        // (Rc22(u) (x) I)(I (x) Rc22(u)) expands with the displayed
        // coefficients of the spectral XX solution
        let b = &*BASIS24;
        let c22 = &BASIS22.c22;
        let id2 = CMat::<C64>::identity(2).unwrap();
        let id4 = CMat::<C64>::identity(4).unwrap();
        let r22 = |u: f64| -> CMat<C64> {
            let coeff = C64::i() * (1.0 - u.exp()) / (1.0 + u.exp());
            id4.add(&c22.scale(&coeff))
        };
        for u in [0.45, -0.8] {
            let comp = r22(u).kron(&id2).unwrap().matmul(&id2.kron(&r22(u)).unwrap());
            let eu = u.exp();
            let denom = 2.0 * (1.0 + eu) * (1.0 + eu);
            let c_diag = C64::new((1.0 + 6.0 * eu + eu * eu) / denom, 0.0);
            let c12 = C64::i() * (eu - 1.0) * (1.0 + 3.0 * eu) / denom;
            let c21 = C64::i() * (eu - 1.0) * (3.0 + eu) / denom;
            let recon = b
                .float(P24::T11)
                .add(b.float(P24::T22))
                .add(&b.float(P24::P11).add(b.float(P24::P22)).scale(&c_diag))
                .add(&b.float(P24::P12).scale(&c12))
                .add(&b.float(P24::P21).scale(&c21));
            assert!(
                comp.sub(&recon).max_abs() < 1e-13,
                "u = {u}: {}",
                comp.sub(&recon).max_abs()
            );
        }
    }
}
