//! Matrix exponential by Pade(13) approximation with scaling and squaring.

use super::eig::solve_lu;
use super::mat::CMat;
use crate::{Error, Result};
use num_complex::Complex64 as C64;

const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];
const THETA13: f64 = 5.371920351148152;

fn one_norm(a: &CMat<C64>) -> f64 {
    let mut worst = 0.0f64;
    for j in 0..a.cols {
        let mut s = 0.0;
        for i in 0..a.rows {
            s += a[(i, j)].norm();
        }
        worst = worst.max(s);
    }
    worst
}

/// `exp(t a)` for a square float matrix.
///
/// Accurate to better than 1e-10 relative for `||t a|| <= 50`; larger norms
/// are rejected rather than silently degraded.
pub fn expm(a: &CMat<C64>, t: f64) -> Result<CMat<C64>> {
    a.require_square()?;
    let n = a.rows;
    let at = a.scale(&C64::new(t, 0.0));
    let norm = one_norm(&at);
    if !norm.is_finite() || norm > 720.0 {
        return Err(Error::ExpmNorm { norm });
    }
    let s = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = at.scale(&C64::new(0.5f64.powi(s as i32), 0.0));

    let ident = CMat::<C64>::identity(n)?;
    let a2 = scaled.matmul(&scaled);
    let a4 = a2.matmul(&a2);
    let a6 = a2.matmul(&a4);

    let b = |k: usize| C64::new(PADE13[k], 0.0);
    // U = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let u_inner = a6
        .scale(&b(13))
        .add(&a4.scale(&b(11)))
        .add(&a2.scale(&b(9)));
    let u_mid = a6
        .matmul(&u_inner)
        .add(&a6.scale(&b(7)))
        .add(&a4.scale(&b(5)))
        .add(&a2.scale(&b(3)))
        .add(&ident.scale(&b(1)));
    let u = scaled.matmul(&u_mid);
    // V = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let v_inner = a6
        .scale(&b(12))
        .add(&a4.scale(&b(10)))
        .add(&a2.scale(&b(8)));
    let v = a6
        .matmul(&v_inner)
        .add(&a6.scale(&b(6)))
        .add(&a4.scale(&b(4)))
        .add(&a2.scale(&b(2)))
        .add(&ident.scale(&b(0)));

    let lhs = v.sub(&u);
    let rhs = v.add(&u);
    let mut r = solve_lu(&lhs, &rhs)?;
    for _ in 0..s {
        r = r.matmul(&r);
    }
    Ok(r)
}
