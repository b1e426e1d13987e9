//! Projection operators: Casimir-polynomial projectors at generic `q`,
//! closed forms for spectra containing indecomposable blocks, split-Casimir
//! reconstruction of mixing projectors, and the explicit 32-operator set on
//! the fourfold tensor power of the fundamental representation at `q = i`.

pub mod qi32;

pub use qi32::{projectors_q_i_32, Qi32};

use crate::numlin::mat::CMat;
use crate::numlin::scalar::Scalar;
use crate::{Error, Result};
use num_complex::Complex64 as C64;

/// Sign label of an indecomposable block (the `k`-eigenvalue pattern).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn flip(self) -> Eps {
        match self {
            Eps::Plus => Eps::Minus,
            Eps::Minus => Eps::Plus,
        }
    }
    pub fn as_char(self) -> char {
        match self {
            Eps::Plus => '+',
            Eps::Minus => '-',
        }
    }
}

/// Label of one projector in a [`ProjectorSet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProjKind {
    Plain,
    Primed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjLabel {
    pub kind: ProjKind,
    pub i: u8,
    pub eps: Eps,
    pub j: u8,
    pub eta: Eps,
}

impl ProjLabel {
    pub fn new(kind: ProjKind, i: u8, eps: Eps, j: u8, eta: Eps) -> Self {
        ProjLabel { kind, i, eps, j, eta }
    }

    pub fn name(&self) -> String {
        let p = match self.kind {
            ProjKind::Plain => "P",
            ProjKind::Primed => "Pp",
        };
        format!("{}{}{}_{}{}", p, self.i, self.j, self.eps.as_char(), self.eta.as_char())
    }
}

/// A labeled collection of matrices acting on one space.
#[derive(Clone)]
pub struct ProjectorSet<T: Scalar> {
    pub dim: usize,
    pub entries: Vec<(ProjLabel, CMat<T>)>,
}

impl<T: Scalar> ProjectorSet<T> {
    pub fn get(&self, label: &ProjLabel) -> Option<&CMat<T>> {
        self.entries.iter().find(|(l, _)| l == label).map(|(_, m)| m)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// JSON document: label -> row-major entries as 17-significant-digit
    /// decimal string pairs (re, im) of the complex embedding.
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::json;
        let entries: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(l, m)| {
                let rows: Vec<Vec<[String; 2]>> = (0..m.rows)
                    .map(|i| {
                        (0..m.cols)
                            .map(|j| {
                                let z = m[(i, j)].to_c64();
                                [format!("{:.16e}", z.re), format!("{:.16e}", z.im)]
                            })
                            .collect()
                    })
                    .collect();
                json!({ "label": l.name(), "matrix": rows })
            })
            .collect();
        json!({ "dim": self.dim, "count": self.entries.len(), "entries": entries })
    }
}

/// One block of a spectral decomposition with indecomposable content.
#[derive(Clone, Debug)]
pub enum Block {
    /// Irreducible block: `c` acts as the scalar `c_r`.
    Irrep { label: String, c: C64 },
    /// Indecomposable block: `c = c_i + nilpotent`, with `c'` the scale of
    /// the nilpotent part (the coefficient of the primed projector in `c`).
    Indecomposable { label: String, c: C64, c_prime: C64 },
}

impl Block {
    pub fn c_value(&self) -> C64 {
        match self {
            Block::Irrep { c, .. } | Block::Indecomposable { c, .. } => *c,
        }
    }
    pub fn label(&self) -> &str {
        match self {
            Block::Irrep { label, .. } | Block::Indecomposable { label, .. } => label,
        }
    }
}

/// Named projectors from the indecomposable-aware constructions.
#[derive(Clone)]
pub struct NamedProjectors {
    pub entries: Vec<(String, CMat<C64>)>,
}

impl NamedProjectors {
    pub fn get(&self, name: &str) -> Option<&CMat<C64>> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, m)| m)
    }
}

/// Relative spectral-gap threshold below which the plain polynomial
/// construction is refused (denominators amplify roundoff past 1e-2).
pub const DEGENERACY_THRESHOLD: f64 = 1e-8;

/// Spectral projectors `P_r = prod_{p != r} (c - c_p)/(c_r - c_p)` for a
/// diagonalizable operator with the given distinct eigenvalues.
pub fn projectors_generic(c: &CMat<C64>, eigs: &[(String, C64)]) -> Result<NamedProjectors> {
    c.require_square()?;
    let scale = eigs.iter().map(|(_, v)| v.norm()).fold(0.0, f64::max).max(1.0);
    for (a, (_, va)) in eigs.iter().enumerate() {
        for (_, vb) in eigs.iter().skip(a + 1) {
            let gap = (va - vb).norm();
            if gap < DEGENERACY_THRESHOLD * scale {
                return Err(Error::DegenerateSpectrum { gap });
            }
        }
    }
    let n = c.rows;
    let id = CMat::<C64>::identity(n)?;
    let mut out = Vec::new();
    for (name, cr) in eigs {
        let mut p = id.clone();
        for (_, cp) in eigs {
            if cp == cr {
                continue;
            }
            p = p.matmul(&c.sub(&id.scale(cp)).scale(&(cr - cp).inv()));
        }
        out.push((name.clone(), p));
    }
    Ok(NamedProjectors { entries: out })
}

/// Projectors for a spectrum containing indecomposable blocks with pairwise
/// distinct Casimir eigenvalues across blocks.
///
/// For each irrep block the interpolation polynomial has simple zeros at the
/// other irrep eigenvalues and double zeros at every indecomposable
/// eigenvalue; for an indecomposable block the plain projector additionally
/// carries a linear factor enforcing unit value and vanishing derivative,
/// and the primed projector is `(c - c_I)/c'_I` times the normalized
/// product of the remaining factors.
pub fn projectors_indecomposable(c: &CMat<C64>, blocks: &[Block]) -> Result<NamedProjectors> {
    c.require_square()?;
    let scale = blocks.iter().map(|b| b.c_value().norm()).fold(0.0, f64::max).max(1.0);
    for (a, ba) in blocks.iter().enumerate() {
        for bb in blocks.iter().skip(a + 1) {
            let gap = (ba.c_value() - bb.c_value()).norm();
            if gap < DEGENERACY_THRESHOLD * scale {
                return Err(Error::DegenerateSpectrum { gap });
            }
        }
    }
    let n = c.rows;
    let id = CMat::<C64>::identity(n)?;
    let factor = |x: C64| c.sub(&id.scale(&x));
    let mut out = Vec::new();
    for (k, blk) in blocks.iter().enumerate() {
        let ck = blk.c_value();
        // normalized product over the other blocks
        let mut g = id.clone();
        let mut log_deriv = C64::new(0.0, 0.0);
        for (m, other) in blocks.iter().enumerate() {
            if m == k {
                continue;
            }
            let cm = other.c_value();
            let base = factor(cm).scale(&(ck - cm).inv());
            match other {
                Block::Irrep { .. } => {
                    g = g.matmul(&base);
                    log_deriv += (ck - cm).inv();
                }
                Block::Indecomposable { .. } => {
                    g = g.matmul(&base).matmul(&base);
                    log_deriv += 2.0 * (ck - cm).inv();
                }
            }
        }
        match blk {
            Block::Irrep { label, .. } => out.push((format!("P_{label}"), g)),
            Block::Indecomposable { label, c_prime, .. } => {
                // linear factor L(c) = 1 - log_deriv (c - c_k): value 1,
                // kills the first-order term of g at c_k
                let lin = id.sub(&factor(ck).scale(&log_deriv));
                out.push((format!("P_{label}"), lin.matmul(&g)));
                let primed = factor(ck).scale(&c_prime.inv()).matmul(&g);
                out.push((format!("Pp_{label}"), primed));
            }
        }
    }
    Ok(NamedProjectors { entries: out })
}

/// Split-Casimir reconstruction data: eigenvalues of the root operator per
/// diagonal projector, and the normalization scalars of the off-diagonal
/// part `c_0 = sum_{i != j} c_{ij} P^{ij}`.
pub struct SplitCasimirSpec {
    pub diag: Vec<(String, C64)>,
    pub offdiag: Vec<(usize, usize, C64)>,
}

/// Builds diagonal projectors from a non-degenerate root operator by
/// polynomial interpolation and mixing projectors as
/// `P^{ij} = P^i c_0 P^j / c_{ij}`.
pub fn split_casimir_projectors(
    c_root: &CMat<C64>,
    c_offdiag: &CMat<C64>,
    spec: &SplitCasimirSpec,
) -> Result<NamedProjectors> {
    let diag = projectors_generic(c_root, &spec.diag)?;
    let mut out = diag.entries.clone();
    for (i, j, cij) in &spec.offdiag {
        let pi = &diag.entries[*i].1;
        let pj = &diag.entries[*j].1;
        let name = format!("P_{}_{}", diag.entries[*i].0, diag.entries[*j].0);
        let m = pi.matmul(c_offdiag).matmul(pj).scale(&cij.inv());
        out.push((name, m));
    }
    Ok(NamedProjectors { entries: out })
}

/// Exact split-Casimir reconstruction over an arbitrary scalar backend:
/// `P^{ij} = P^i c_0 P^j / c_{ij}` with caller-supplied diagonal projectors.
pub fn split_casimir_mixing_exact<T: Scalar>(
    p_i: &CMat<T>,
    c0: &CMat<T>,
    p_j: &CMat<T>,
    c_ij: &T,
) -> CMat<T> {
    p_i.matmul(c0).matmul(p_j).scale(&T::one().div(c_ij))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::eig::eig_dense;
    use crate::qrep::{casimir, casimir_eigenvalue, coproduct, make_rep_vr, QParam};
    use num_complex::Complex64 as C64;

    fn rank(m: &CMat<C64>) -> usize {
        let d = eig_dense(m).unwrap();
        d.values.iter().filter(|v| v.norm() > 1e-6).count()
    }

    #[test]
    fn generic_projectors_v2v2() {
        let q = QParam::Generic { gamma: C64::new(0.3, 0.2) };
        let v2 = make_rep_vr(q.clone(), 2).unwrap();
        let rep = coproduct(&v2, &v2).unwrap();
        let c = casimir(&rep).unwrap();
        let eigs = vec![
            ("1".to_string(), casimir_eigenvalue(&q, 1)),
            ("3".to_string(), casimir_eigenvalue(&q, 3)),
        ];
        let ps = projectors_generic(&c, &eigs).unwrap();
        let p1 = ps.get("1").unwrap();
        let p3 = ps.get("3").unwrap();
        assert_eq!(rank(p1), 1);
        assert_eq!(rank(p3), 3);
        // idempotent, orthogonal, complete
        assert!(p1.matmul(p1).sub(p1).max_abs() < 1e-10);
        assert!(p3.matmul(p3).sub(p3).max_abs() < 1e-10);
        assert!(p1.matmul(p3).max_abs() < 1e-10);
        let sum = p1.add(p3);
        assert!(sum.sub(&CMat::identity(4).unwrap()).max_abs() < 1e-10);
    }

    #[test]
    fn generic_projectors_v3v3() {
        let q = QParam::Generic { gamma: C64::new(0.3, 0.2) };
        let v3 = make_rep_vr(q.clone(), 3).unwrap();
        let rep = coproduct(&v3, &v3).unwrap();
        let c = casimir(&rep).unwrap();
        let eigs: Vec<(String, C64)> = [1i64, 3, 5]
            .iter()
            .map(|r| (r.to_string(), casimir_eigenvalue(&q, *r)))
            .collect();
        let ps = projectors_generic(&c, &eigs).unwrap();
        let mut sum = CMat::<C64>::zeros(9, 9).unwrap();
        for (r, expect_rank) in [(1usize, 1usize), (3, 3), (5, 5)] {
            let p = ps.get(&r.to_string()).unwrap();
            assert_eq!(rank(p), expect_rank);
            sum = sum.add(p);
        }
        assert!(sum.sub(&CMat::identity(9).unwrap()).max_abs() < 1e-9);
    }

    #[test]
    fn single_eigenvalue_gives_identity() {
        let c = CMat::<C64>::identity(3).unwrap().scale(&C64::new(0.7, 0.0));
        let ps = projectors_generic(&c, &[("only".into(), C64::new(0.7, 0.0))]).unwrap();
        assert!(ps.get("only").unwrap().sub(&CMat::identity(3).unwrap()).max_abs() < 1e-12);
    }

    #[test]
    fn degenerate_input_rejected() {
        let c = CMat::<C64>::identity(2).unwrap();
        let eigs = vec![
            ("a".to_string(), C64::new(1.0, 0.0)),
            ("b".to_string(), C64::new(1.0, 1e-12)),
        ];
        assert!(matches!(
            projectors_generic(&c, &eigs),
            Err(Error::DegenerateSpectrum { .. })
        ));
        let blocks = vec![
            Block::Irrep { label: "a".into(), c: C64::new(1.0, 0.0) },
            Block::Indecomposable { label: "b".into(), c: C64::new(1.0, 1e-12), c_prime: C64::new(1.0, 0.0) },
        ];
        assert!(matches!(
            projectors_indecomposable(&c, &blocks),
            Err(Error::DegenerateSpectrum { .. })
        ));
    }

    #[test]
    fn single_indecomposable_block() {
        // S = I alone: P_I = 1, Pp_I = (c - c_I)/c'_I
        // model: 2x2 Jordan block with eigenvalue 0.3, nilpotent scale 2
        let mut c = CMat::<C64>::zeros(2, 2).unwrap();
        c[(0, 0)] = C64::new(0.3, 0.0);
        c[(1, 1)] = C64::new(0.3, 0.0);
        c[(0, 1)] = C64::new(2.0, 0.0);
        let blocks = vec![Block::Indecomposable {
            label: "I".into(),
            c: C64::new(0.3, 0.0),
            c_prime: C64::new(2.0, 0.0),
        }];
        let ps = projectors_indecomposable(&c, &blocks).unwrap();
        assert!(ps.get("P_I").unwrap().sub(&CMat::identity(2).unwrap()).max_abs() < 1e-12);
        let pp = ps.get("Pp_I").unwrap();
        // Pp has a single unit entry at (0,1) and squares to zero
        assert!((pp[(0, 1)] - C64::new(1.0, 0.0)).norm() < 1e-12);
        assert!(pp.matmul(pp).max_abs() < 1e-12);
    }

    #[test]
    fn v3v3_at_sixth_root_structure() {
        // V3 (x) V3 at q = e^{i pi/3}: I(c=-1/3, c'=1) + V3(c=2/3);
        // c = -1/3 P_I + Pp_I + 2/3 P_3 must reassemble.
        let q = QParam::Root { a: 1, b: 3 };
        let v3 = make_rep_vr(q.clone(), 3).unwrap();
        let rep = coproduct(&v3, &v3).unwrap();
        let c = casimir(&rep).unwrap();
        let blocks = vec![
            Block::Indecomposable { label: "I6".into(), c: C64::new(-1.0 / 3.0, 0.0), c_prime: C64::new(1.0, 0.0) },
            Block::Irrep { label: "3".into(), c: C64::new(2.0 / 3.0, 0.0) },
        ];
        let ps = projectors_indecomposable(&c, &blocks).unwrap();
        let pi = ps.get("P_I6").unwrap();
        let ppi = ps.get("Pp_I6").unwrap();
        let p3 = ps.get("P_3").unwrap();
        let id = CMat::<C64>::identity(9).unwrap();
        // P_3 = ((c - c_I)/(c_3 - c_I))^2
        let base = c.sub(&id.scale(&C64::new(-1.0 / 3.0, 0.0))).scale(&C64::new(1.0, 0.0).inv());
        let p3_direct = base.matmul(&base);
        assert!(p3.sub(&p3_direct).max_abs() < 1e-9);
        // completeness and idempotency
        assert!(pi.add(p3).sub(&id).max_abs() < 1e-9);
        assert!(pi.matmul(pi).sub(pi).max_abs() < 1e-9);
        assert!(p3.matmul(p3).sub(p3).max_abs() < 1e-9);
        assert!(ppi.matmul(ppi).max_abs() < 1e-9, "primed projector is nilpotent");
        // reassembly of the Casimir
        let re = pi.scale(&C64::new(-1.0 / 3.0, 0.0)).add(ppi).add(&p3.scale(&C64::new(2.0 / 3.0, 0.0)));
        assert!(re.sub(&c).max_abs() < 1e-9);
    }

    #[test]
    fn split_casimir_two_point() {
        // n=2 toy: c_root = rho on block 1, -rho on block 2:
        // P1 = (c_root + rho)/(2 rho)
        let rho = C64::new(0.8, 0.0);
        let mut c_root = CMat::<C64>::zeros(4, 4).unwrap();
        for d in 0..2 {
            c_root[(d, d)] = rho;
            c_root[(d + 2, d + 2)] = -rho;
        }
        // c0 swaps the two blocks with weights c12, c21
        let (c12, c21) = (C64::new(0.0, 2.0), C64::new(3.0, 0.0));
        let mut c0 = CMat::<C64>::zeros(4, 4).unwrap();
        for d in 0..2 {
            c0[(d, d + 2)] = c12;
            c0[(d + 2, d)] = c21;
        }
        let spec = SplitCasimirSpec {
            diag: vec![("1".into(), rho), ("2".into(), -rho)],
            offdiag: vec![(0, 1, c12), (1, 0, c21)],
        };
        let ps = split_casimir_projectors(&c_root, &c0, &spec).unwrap();
        let p1 = ps.get("1").unwrap();
        let id = CMat::<C64>::identity(4).unwrap();
        let direct = c_root.add(&id.scale(&rho)).scale(&(2.0 * rho).inv());
        assert!(p1.sub(&direct).max_abs() < 1e-12);
        // mixing projectors: P12 P21 = P11
        let p12 = ps.get("P_1_2").unwrap();
        let p21 = ps.get("P_2_1").unwrap();
        assert!(p12.matmul(p21).sub(p1).max_abs() < 1e-12);
    }

    #[test]
    fn polynomial_impossibility_witness() {
        // cbar = sum c_ij P^ij on two isomorphic 2-dim blocks; every
        // polynomial p(cbar) = sum A_ij P^ij satisfies
        // A11 - A22 = A12 (c11 - c22)/c12.
        let (c11, c12, c21, c22) = (
            C64::new(0.4, 0.1),
            C64::new(1.3, -0.2),
            C64::new(-0.7, 0.5),
            C64::new(-0.9, 0.3),
        );
        // P^ij = E_ij (x) I2 in a 4-dim space
        let mut basis = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = CMat::<C64>::zeros(4, 4).unwrap();
                for d in 0..2 {
                    m[(i * 2 + d, j * 2 + d)] = C64::new(1.0, 0.0);
                }
                basis.push(m);
            }
        }
        let cbar = basis[0]
            .scale(&c11)
            .add(&basis[1].scale(&c12))
            .add(&basis[2].scale(&c21))
            .add(&basis[3].scale(&c22));
        let mut p = CMat::<C64>::identity(4).unwrap();
        for _ in 0..6 {
            p = p.matmul(&cbar);
            // read off A_ij from block entries
            let a11 = p[(0, 0)];
            let a12 = p[(0, 2)];
            let a22 = p[(2, 2)];
            let lhs = a11 - a22;
            let rhs = a12 * (c11 - c22) / c12;
            assert!((lhs - rhs).norm() < 1e-9 * p.max_abs().max(1.0));
        }
    }
}
