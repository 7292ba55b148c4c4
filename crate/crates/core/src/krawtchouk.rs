//! Explicit modules for `U(sl2)` and the Krawtchouk algebra `K_ω`.
//!
//! Modules are written in the basis `v_0, ..., v_n`; column `i` of each matrix
//! is the image of `v_i`.

use crate::error::{Error, Result};
use crate::exactlin::Matrix;
use crate::rational::Rational;
use crate::report::Check;

/// Images of `E, F, H` on an `(n+1)`-dimensional module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sl2Triple {
    pub e: Matrix,
    pub f: Matrix,
    pub h: Matrix,
    pub n: usize,
}

/// Images of `A, B, C` on a `K_ω`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepTriple {
    pub a: Matrix,
    pub b: Matrix,
    pub c: Matrix,
    pub omega: Rational,
}

impl RepTriple {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn zero(dim: usize, omega: Rational) -> Self {
        RepTriple {
            a: Matrix::zeros(dim, dim),
            b: Matrix::zeros(dim, dim),
            c: Matrix::zeros(dim, dim),
            omega,
        }
    }
}

impl Sl2Triple {
    pub fn dim(&self) -> usize {
        self.e.rows()
    }
}

fn half() -> Rational {
    Rational::new(1, 2)
}

fn check_n(n: i64) -> Result<usize> {
    usize::try_from(n).map_err(|_| Error::Domain(format!("module label n = {n} is negative")))
}

/// The irreducible module `L_n`: `E v_i = (n-i+1) v_{i-1}`,
/// `F v_i = (i+1) v_{i+1}`, `H v_i = (n-2i) v_i`.
pub fn u_sl2_module(n: i64) -> Result<Sl2Triple> {
    let n = check_n(n)?;
    let d = n + 1;
    let mut e = Matrix::zeros(d, d);
    let mut f = Matrix::zeros(d, d);
    let mut h = Matrix::zeros(d, d);
    for i in 0..d {
        if i > 0 {
            e.set(i - 1, i, Rational::from(n - i + 1));
        }
        if i < n {
            f.set(i + 1, i, Rational::from(i + 1));
        }
        h.set(i, i, Rational::from_int(n as i64 - 2 * i as i64));
    }
    let t = Sl2Triple { e, f, h, n };
    sl2_check_or_err(&t)?;
    Ok(t)
}

/// Tridiagonal `A` and diagonal `B` with
/// `α_i = (2i-n)ω/2`, `β_i = (i+1)(1-ω)/2`, `γ_i = (n-i+1)(1+ω)/2`, `θ_i = n/2 - i`.
pub fn k_module(n: i64, omega: &Rational) -> Result<RepTriple> {
    let n = check_n(n)?;
    let d = n + 1;
    let one = Rational::one();
    let alpha = |i: usize| Rational::from_int(2 * i as i64 - n as i64) * omega * half();
    let beta = |i: usize| Rational::from(i + 1) * (&one - omega) * half();
    let gamma = |i: usize| Rational::from(n - i + 1) * (&one + omega) * half();
    let mut a = Matrix::zeros(d, d);
    let mut b = Matrix::zeros(d, d);
    let mut c = Matrix::zeros(d, d);
    for i in 0..d {
        a.set(i, i, alpha(i));
        b.set(i, i, Rational::from(n) * half() - Rational::from(i));
        if i < n {
            a.set(i + 1, i, beta(i));
            c.set(i + 1, i, beta(i));
        }
        if i > 0 {
            a.set(i - 1, i, gamma(i));
            c.set(i - 1, i, -gamma(i));
        }
    }
    let r = RepTriple {
        a,
        b,
        c,
        omega: omega.clone(),
    };
    relation_check_or_err(&r)?;
    Ok(r)
}

/// Diagonal `A` and tridiagonal `B`; the roles of the generators in
/// [`k_module`] exchanged, with `C` negated.
pub fn k_module_twisted(n: i64, omega: &Rational) -> Result<RepTriple> {
    let n = check_n(n)?;
    let d = n + 1;
    let one = Rational::one();
    let mut a = Matrix::zeros(d, d);
    let mut b = Matrix::zeros(d, d);
    let mut c = Matrix::zeros(d, d);
    for i in 0..d {
        a.set(i, i, Rational::from(n) * half() - Rational::from(i));
        b.set(i, i, Rational::from_int(2 * i as i64 - n as i64) * omega * half());
        if i < n {
            let beta = Rational::from(i + 1) * (&one - omega) * half();
            b.set(i + 1, i, beta.clone());
            c.set(i + 1, i, -beta);
        }
        if i > 0 {
            let gamma = Rational::from(n - i + 1) * (&one + omega) * half();
            b.set(i - 1, i, gamma.clone());
            c.set(i - 1, i, gamma);
        }
    }
    let r = RepTriple {
        a,
        b,
        c,
        omega: omega.clone(),
    };
    relation_check_or_err(&r)?;
    Ok(r)
}

/// `A ↦ ((1+ω)/2)E + ((1-ω)/2)F - (ω/2)H`, `B ↦ H/2`,
/// `C ↦ -((1+ω)/2)E + ((1-ω)/2)F`.
pub fn zeta_apply(t: &Sl2Triple, omega: &Rational) -> RepTriple {
    let one = Rational::one();
    let p = (&one + omega) * half();
    let m = (&one - omega) * half();
    let e = t.e.scale(&p);
    let f = t.f.scale(&m);
    let a = e.add(&f).unwrap().sub(&t.h.scale(&(omega * half()))).unwrap();
    let b = t.h.scale(&half());
    let c = f.sub(&e).unwrap();
    RepTriple {
        a,
        b,
        c,
        omega: omega.clone(),
    }
}

/// `E ↦ (A + ωB - C)/(1+ω)`, `F ↦ (A + ωB + C)/(1-ω)`, `H ↦ 2B`.
pub fn zeta_inverse_apply(r: &RepTriple) -> Result<Sl2Triple> {
    let one = Rational::one();
    let (Some(ip), Some(im)) = ((&one + &r.omega).recip(), (&one - &r.omega).recip()) else {
        return Err(Error::Singular(format!(
            "ω = {} has ω² = 1, so ζ is not invertible",
            r.omega
        )));
    };
    let s = r.a.add(&r.b.scale(&r.omega))?;
    let e = s.sub(&r.c)?.scale(&ip);
    let f = s.add(&r.c)?.scale(&im);
    let h = r.b.scale(&Rational::from_int(2));
    Ok(Sl2Triple {
        n: r.dim().saturating_sub(1),
        e,
        f,
        h,
    })
}

fn same_square(ms: &[&Matrix]) -> Result<()> {
    let n = ms[0].rows();
    if ms.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::Shape("generator images must be square of equal size".into()));
    }
    Ok(())
}

fn relation(name: &str, lhs: &Matrix, rhs: &Matrix) -> Check {
    match lhs.first_mismatch(rhs) {
        None => Check::pass(name),
        Some((i, j)) => Check::fail(
            name,
            format!("entry ({i}, {j}): left side {} but right side {}", lhs[(i, j)], rhs[(i, j)]),
        ),
    }
}

/// Checks the defining relations, optionally in the opposite algebra
/// (every product `XY` read as `YX`).
fn k_relations(a: &Matrix, b: &Matrix, c: &Matrix, omega: &Rational, opposite: bool) -> Result<Vec<Check>> {
    same_square(&[a, b, c])?;
    let mul = |x: &Matrix, y: &Matrix| if opposite { y.mul(x) } else { x.mul(y) };
    let two = Rational::from_int(2);
    let comm = |x: &Matrix, y: &Matrix| -> Result<Matrix> { mul(x, y)?.sub(&mul(y, x)?) };
    let r1 = {
        let aa = mul(a, a)?;
        mul(&aa, b)?
            .sub(&mul(&mul(a, b)?, a)?.scale(&two))?
            .add(&mul(b, &aa)?)?
    };
    let r2 = {
        let bb = mul(b, b)?;
        mul(&bb, a)?
            .sub(&mul(&mul(b, a)?, b)?.scale(&two))?
            .add(&mul(a, &bb)?)?
    };
    let b_wa = b.add(&a.scale(omega))?;
    let a_wb = a.add(&b.scale(omega))?;
    Ok(vec![
        relation("A²B - 2ABA + BA² = B + ωA", &r1, &b_wa),
        relation("B²A - 2BAB + AB² = A + ωB", &r2, &a_wb),
        relation("[A,B] = C", &comm(a, b)?, c),
        relation("[A,C] = B + ωA", &comm(a, c)?, &b_wa),
        relation("[C,B] = A + ωB", &comm(c, b)?, &a_wb),
    ])
}

/// Every defining relation of `K_ω` evaluated on `r`; the first failing
/// check carries a witness entry.
pub fn relation_check(r: &RepTriple) -> Result<Vec<Check>> {
    k_relations(&r.a, &r.b, &r.c, &r.omega, false)
}

fn relation_check_or_err(r: &RepTriple) -> Result<()> {
    if let Some(c) = relation_check(r)?.into_iter().find(|c| !c.passed) {
        return Err(Error::Verification(format!(
            "{}: {}",
            c.name,
            c.detail.unwrap_or_default()
        )));
    }
    Ok(())
}

/// `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
pub fn sl2_relation_check(t: &Sl2Triple) -> Result<Vec<Check>> {
    same_square(&[&t.e, &t.f, &t.h])?;
    let two = Rational::from_int(2);
    Ok(vec![
        relation("[H,E] = 2E", &t.h.commutator(&t.e)?, &t.e.scale(&two)),
        relation("[H,F] = -2F", &t.h.commutator(&t.f)?, &t.f.scale(&-two.clone())),
        relation("[E,F] = H", &t.e.commutator(&t.f)?, &t.h),
    ])
}

pub(crate) fn sl2_check_or_err(t: &Sl2Triple) -> Result<()> {
    if let Some(c) = sl2_relation_check(t)?.into_iter().find(|c| !c.passed) {
        return Err(Error::Verification(format!(
            "{}: {}",
            c.name,
            c.detail.unwrap_or_default()
        )));
    }
    Ok(())
}

/// `(A, B, C) ↦ (B, A, -C)`.
pub fn swap_twist(r: &RepTriple) -> Result<RepTriple> {
    relation_check_or_err(r)?;
    let out = RepTriple {
        a: r.b.clone(),
        b: r.a.clone(),
        c: r.c.neg(),
        omega: r.omega.clone(),
    };
    relation_check_or_err(&out)?;
    Ok(out)
}

fn primitive(x: &Matrix, y: &Matrix) -> Matrix {
    x.kron(&Matrix::identity(y.rows()))
        .add(&Matrix::identity(x.rows()).kron(y))
        .expect("same shape")
}

/// The module `r1 ⊗ r2` under `X ↦ X ⊗ 1 + 1 ⊗ X`.
pub fn tensor_rep(r1: &RepTriple, r2: &RepTriple) -> Result<RepTriple> {
    if r1.omega != r2.omega {
        return Err(Error::Domain(format!(
            "cannot tensor modules with ω = {} and ω = {}",
            r1.omega, r2.omega
        )));
    }
    Ok(RepTriple {
        a: primitive(&r1.a, &r2.a),
        b: primitive(&r1.b, &r2.b),
        c: primitive(&r1.c, &r2.c),
        omega: r1.omega.clone(),
    })
}

pub fn tensor_sl2(t1: &Sl2Triple, t2: &Sl2Triple) -> Sl2Triple {
    Sl2Triple {
        e: primitive(&t1.e, &t2.e),
        f: primitive(&t1.f, &t2.f),
        h: primitive(&t1.h, &t2.h),
        n: t1.n + t2.n,
    }
}

/// An invertible `X` with `X A_1 = A_2 X` and `X B_1 = B_2 X`, or `None`.
///
/// The commutant system is solved exactly; its basis solutions are tried in
/// order and the first invertible one is returned.
pub fn intertwiner(r1: &RepTriple, r2: &RepTriple) -> Result<Option<Matrix>> {
    let n = r1.dim();
    if r2.dim() != n {
        return Err(Error::Shape(format!(
            "modules of dimension {n} and {} cannot be isomorphic",
            r2.dim()
        )));
    }
    // Unknown X_{ij} sits at index i*n + j.
    let mut rows = Vec::with_capacity(2 * n * n);
    for (g1, g2) in [(&r1.a, &r2.a), (&r1.b, &r2.b)] {
        for i in 0..n {
            for j in 0..n {
                // (X G1 - G2 X)_{ij} = sum_k X_{ik} G1_{kj} - G2_{ik} X_{kj}
                let mut row = vec![Rational::zero(); n * n];
                for k in 0..n {
                    row[i * n + k] += g1.get(k, j);
                    row[k * n + j] -= g2.get(i, k);
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows(&rows)?;
    for sol in system.kernel_basis() {
        let x = Matrix::new(n, n, sol)?;
        if x.rank() == n {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

/// Counit, antipode and antipode-squared checks at the level of `r`.
pub fn hopf_generator_checks(r: &RepTriple) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let z = Matrix::zeros(1, 1);
    let counit_ok = k_relations(&z, &z, &z, &r.omega, false)?.iter().all(|c| c.passed);
    checks.push(Check::expect("counit triple satisfies the relations", counit_ok, || {
        "zero triple violates a relation".into()
    }));
    let (sa, sb, sc) = (r.a.neg(), r.b.neg(), r.c.neg());
    let anti = k_relations(&sa, &sb, &sc, &r.omega, true)?;
    let bad = anti.iter().find(|c| !c.passed);
    checks.push(Check::expect(
        "antipode image satisfies the opposite relations",
        bad.is_none(),
        || format!("{}: {}", bad.unwrap().name, bad.unwrap().detail.clone().unwrap_or_default()),
    ));
    checks.push(Check::expect(
        "antipode squared is the identity",
        sa.neg() == r.a && sb.neg() == r.b && sc.neg() == r.c,
        || "S(S(X)) differs from X".into(),
    ));
    Ok(checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::report::all_passed;

    fn omegas() -> Vec<Rational> {
        let mut v = vec![rat(0, 1), rat(1, 2), rat(-1, 2), rat(1, 1), rat(-1, 1)];
        v.extend((3..=7).map(|q| Rational::one() - rat(2, q)));
        v
    }

    #[test]
    fn sl2_examples() {
        let t = u_sl2_module(0).unwrap();
        assert!(t.e.is_zero() && t.f.is_zero() && t.h.is_zero());
        assert_eq!(u_sl2_module(1).unwrap().h, Matrix::from_ints(&[&[1, 0], &[0, -1]]));
        let f = u_sl2_module(2).unwrap().f;
        assert_eq!(f, Matrix::from_ints(&[&[0, 0, 0], &[1, 0, 0], &[0, 2, 0]]));
        assert!(matches!(u_sl2_module(-1), Err(Error::Domain(_))));
    }

    #[test]
    fn k_module_examples() {
        let r = k_module(1, &rat(1, 3)).unwrap();
        let a = Matrix::from_rows(&[vec![rat(-1, 6), rat(2, 3)], vec![rat(1, 3), rat(1, 6)]]).unwrap();
        assert_eq!(r.a, a);
        assert_eq!(r.b, Matrix::diagonal(&[rat(1, 2), rat(-1, 2)]));
        let z = k_module(0, &rat(5, 7)).unwrap();
        assert!(z.a.is_zero() && z.b.is_zero() && z.c.is_zero());
        let r = k_module(2, &rat(0, 1)).unwrap();
        assert_eq!(r.a.diagonal_entries(), vec![Rational::zero(); 3]);
        assert_eq!((r.a[(1, 0)].clone(), r.a[(2, 1)].clone()), (rat(1, 2), rat(1, 1)));
        assert_eq!((r.a[(0, 1)].clone(), r.a[(1, 2)].clone()), (rat(1, 1), rat(1, 2)));
        assert!(matches!(k_module(-2, &rat(0, 1)), Err(Error::Domain(_))));
    }

    #[test]
    fn twisted_examples() {
        let r = k_module_twisted(1, &rat(1, 3)).unwrap();
        assert_eq!(r.a, Matrix::diagonal(&[rat(1, 2), rat(-1, 2)]));
        let b = Matrix::from_rows(&[vec![rat(-1, 6), rat(2, 3)], vec![rat(1, 3), rat(1, 6)]]).unwrap();
        assert_eq!(r.b, b);
        let z = k_module_twisted(0, &rat(1, 3)).unwrap();
        assert!(z.a.is_zero() && z.b.is_zero() && z.c.is_zero());
        for n in [1, 2] {
            let w = rat(1, 3);
            let x = intertwiner(&k_module(n, &w).unwrap(), &k_module_twisted(n, &w).unwrap())
                .unwrap()
                .expect("isomorphic");
            assert_eq!(x.rank(), (n + 1) as usize);
        }
    }

    #[test]
    fn relations_hold_for_all_tested_modules() {
        for w in omegas() {
            for n in 0..=10 {
                let r = k_module(n, &w).unwrap();
                assert!(all_passed(&relation_check(&r).unwrap()), "n={n} ω={w}");
                let t = k_module_twisted(n, &w).unwrap();
                assert!(all_passed(&relation_check(&t).unwrap()));
                assert_eq!(zeta_apply(&u_sl2_module(n).unwrap(), &w), r);
                assert_eq!(swap_twist(&r).unwrap(), t);
            }
        }
    }

    #[test]
    fn relation_check_examples() {
        let one_dim = RepTriple {
            a: Matrix::diagonal(&[rat(3, 4)]),
            b: Matrix::diagonal(&[rat(-3, 4)]),
            c: Matrix::zeros(1, 1),
            omega: Rational::one(),
        };
        assert!(all_passed(&relation_check(&one_dim).unwrap()));
        let bad = RepTriple {
            a: Matrix::from_ints(&[&[0, 1], &[0, 0]]),
            b: Matrix::identity(2),
            c: Matrix::zeros(2, 2),
            omega: rat(1, 2),
        };
        let checks = relation_check(&bad).unwrap();
        assert!(!checks[0].passed);
        assert!(checks[0].detail.as_ref().unwrap().contains("entry"));
        let mut mis = bad.clone();
        mis.c = Matrix::zeros(3, 3);
        assert!(matches!(relation_check(&mis), Err(Error::Shape(_))));
    }

    #[test]
    fn zeta_examples() {
        let t = u_sl2_module(1).unwrap();
        let r = zeta_apply(&t, &rat(1, 3));
        assert_eq!(r.b, Matrix::diagonal(&[rat(1, 2), rat(-1, 2)]));
        for n in 0..6 {
            let r = zeta_apply(&u_sl2_module(n).unwrap(), &rat(2, 5));
            assert!(r.c.diagonal_entries().iter().all(Rational::is_zero));
        }
        let back = zeta_inverse_apply(&k_module(1, &rat(1, 3)).unwrap()).unwrap();
        assert_eq!(back.h, Matrix::from_ints(&[&[1, 0], &[0, -1]]));
        let r = k_module(3, &rat(1, 2)).unwrap();
        assert_eq!(zeta_apply(&zeta_inverse_apply(&r).unwrap(), &rat(1, 2)), r);
        assert!(matches!(
            zeta_inverse_apply(&k_module(1, &rat(1, 1)).unwrap()),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn zeta_round_trips() {
        for w in omegas().into_iter().filter(|w| w.abs() != Rational::one()) {
            for n in 0..=10 {
                let t = u_sl2_module(n).unwrap();
                let back = zeta_inverse_apply(&zeta_apply(&t, &w)).unwrap();
                assert_eq!(back, t);
                assert!(all_passed(&sl2_relation_check(&back).unwrap()));
            }
        }
    }

    #[test]
    fn swap_twist_properties() {
        let r = k_module(3, &rat(1, 5)).unwrap();
        assert_eq!(swap_twist(&swap_twist(&r).unwrap()).unwrap(), r);
        let z = RepTriple::zero(2, rat(1, 5));
        assert_eq!(swap_twist(&z).unwrap(), z);
    }

    #[test]
    fn tensor_examples() {
        let w = rat(1, 3);
        let l0 = k_module(0, &w).unwrap();
        assert_eq!(tensor_rep(&l0, &l0).unwrap(), RepTriple::zero(1, w.clone()));
        let l1 = k_module(1, &w).unwrap();
        let t = tensor_rep(&l1, &l1).unwrap();
        assert_eq!(t.b, Matrix::diagonal(&[rat(1, 1), rat(0, 1), rat(0, 1), rat(-1, 1)]));
        let t12 = tensor_rep(&l1, &k_module(2, &w).unwrap()).unwrap();
        assert!(all_passed(&relation_check(&t12).unwrap()));
        assert!(matches!(
            tensor_rep(&l1, &k_module(1, &rat(1, 2)).unwrap()),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn tensor_associativity() {
        let w = rat(1, 3);
        let ms: Vec<RepTriple> = (0..=3).map(|n| k_module(n, &w).unwrap()).collect();
        for x in &ms {
            for y in &ms {
                for z in &ms {
                    let left = tensor_rep(&tensor_rep(x, y).unwrap(), z).unwrap();
                    let right = tensor_rep(x, &tensor_rep(y, z).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn intertwiner_examples() {
        let r = k_module(2, &rat(1, 3)).unwrap();
        let x = intertwiner(&r, &r).unwrap().unwrap();
        // Schur: a nonzero scalar matrix.
        assert!(x.is_diagonal());
        let l1 = k_module(1, &rat(1, 3)).unwrap();
        let l0l0 = RepTriple::zero(2, rat(1, 3));
        assert_eq!(intertwiner(&l1, &l0l0).unwrap(), None);
    }

    #[test]
    fn hopf_examples() {
        for w in omegas() {
            let r = k_module(2, &w).unwrap();
            assert!(all_passed(&hopf_generator_checks(&r).unwrap()));
        }
    }

    #[test]
    fn equal_traces_at_omega_minus_one() {
        let w = rat(-1, 1);
        for n in 0..=6 {
            for r in [k_module(n, &w).unwrap(), k_module_twisted(n, &w).unwrap()] {
                assert!(all_passed(&relation_check(&r).unwrap()));
                assert_eq!(r.a.trace(), r.b.trace());
            }
        }
        let l1 = k_module(1, &w).unwrap();
        let t = tensor_rep(&l1, &k_module(2, &w).unwrap()).unwrap();
        assert_eq!(t.a.trace(), t.b.trace());
    }
}
