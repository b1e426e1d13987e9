use faer::linalg::solvers::Solve;
use num_complex::Complex64 as C64;
use ybtk::rcat::{find_family, Params};

fn main() {
    let xx = find_family("F_R44_XX").unwrap();
    let prod = find_family("F_R44_prod").unwrap();
    let e = Params::new();
    let u = 0.35;
    let a = xx.eval(u, &e).unwrap();
    let b = prod.eval(2.0 * u, &e).unwrap();
    let q = ybtk::projlib::projectors_q_i_32();
    // least squares via normal equations on the 32-dim basis
    let basis: Vec<Vec<C64>> = q.set.entries.iter()
        .map(|(_, m)| { let mf = m.to_c64(); (0..256).map(|k| mf[(k/16, k%16)]).collect() })
        .collect();
    let gram = faer::Mat::from_fn(32, 32, |i, j| {
        basis[i].iter().zip(&basis[j]).map(|(x, y)| x.conj() * y).sum::<C64>()
    });
    let proj = |m: &ybtk::CMat<C64>| -> Vec<C64> {
        let rhs = faer::Mat::from_fn(32, 1, |i, _| {
            basis[i].iter().enumerate().map(|(k, x)| x.conj() * m[(k/16, k%16)]).sum::<C64>()
        });
        let sol = gram.partial_piv_lu().solve(rhs);
        (0..32).map(|i| sol[(i, 0)]).collect()
    };
    let ca = proj(&a);
    let cb = proj(&b);
    for (k, (l, _)) in q.set.entries.iter().enumerate() {
        if (ca[k] - cb[k]).norm() > 1e-9 {
            println!("{:10} xx: {:.4}{:+.4}i   prod: {:.4}{:+.4}i", l.name(), ca[k].re, ca[k].im, cb[k].re, cb[k].im);
        }
    }
}
