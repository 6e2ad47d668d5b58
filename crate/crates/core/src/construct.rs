//! Generators for isoclinic pairs and random test instances.
//!
//! The central family lives in `H_{m+n}(K)`:
//!
//! ```text
//! p = [[I_m, 0], [0, 0]]
//! q = [[s·I_m, r·u], [r·u*, (1−s)·u*u]],   r = √(s(1−s)),  u u* = I_m
//! ```
//!
//! for which `{p,q,p} = s·p` and `{q,p,q} = s·q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::division_ring::{Hypercomplex, Ring};
use crate::error::{Error, Result};
use crate::jordan::linalg::{from_real_representation, real_representation};
use crate::jordan::{JordanElement, KMatrix};
use crate::logic::Projection;
use crate::scalar::Scalar;
use crate::tol::{negligible, EPS_PROJ};

/// Deterministic generator used by every seeded routine in the crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Debug)]
pub struct ConstructionSpec<T> {
    pub ring: Ring,
    pub m: usize,
    pub n: usize,
    pub s: T,
    /// `m × n` with `u u* = I_m`.
    pub u: KMatrix<T>,
    /// Optional unitary in `M_{m+n}(K)`; the pair becomes `(w*pw, w*qw)`.
    pub w: Option<KMatrix<T>>,
}

impl<T: Scalar> ConstructionSpec<T> {
    pub fn new(ring: Ring, s: T, u: KMatrix<T>) -> Self {
        Self { ring, m: u.rows(), n: u.cols(), s, u, w: None }
    }

    pub fn with_conjugator(mut self, w: KMatrix<T>) -> Self {
        self.w = Some(w);
        self
    }

    pub fn validate(&self) -> Result<()> {
        let (m, n) = (self.m, self.n);
        if m == 0 || m > n {
            return Err(Error::Construction(format!("need 1 ≤ m ≤ n, got m={m}, n={n}")));
        }
        if self.u.ring() != self.ring || self.u.rows() != m || self.u.cols() != n {
            return Err(Error::Construction(format!("u must be an {m}x{n} matrix over {}", self.ring)));
        }
        if self.ring == Ring::Octonion && (m, n) != (1, 2) {
            return Err(Error::Construction("octonionic pairs need m = 1, n = 2".into()));
        }
        if self.s < T::zero() || self.s > T::one() {
            return Err(Error::Construction("s must lie in [0, 1]".into()));
        }
        let uu = self.u.mul(&self.u.adjoint())?;
        let defect = uu.sub(&KMatrix::identity(self.ring, m))?.frobenius2();
        if !negligible(&defect, &T::one(), EPS_PROJ) {
            return Err(Error::Construction(format!(
                "u u* differs from I_m by {:.3e}",
                defect.to_f64().sqrt()
            )));
        }
        if let Some(w) = &self.w {
            if !self.ring.is_associative() {
                return Err(Error::Construction("conjugation needs associative coordinates".into()));
            }
            let k = m + n;
            if w.ring() != self.ring || w.rows() != k || w.cols() != k {
                return Err(Error::Construction(format!("w must be {k}x{k} over {}", self.ring)));
            }
            let d = w.adjoint().mul(w)?.sub(&KMatrix::identity(self.ring, k))?.frobenius2();
            if !negligible(&d, &T::one(), EPS_PROJ) {
                return Err(Error::Construction("w is not unitary".into()));
            }
        }
        Ok(())
    }
}

/// `√(s(1−s))`, which must be representable in the scalar type.
fn off_diagonal_weight<T: Scalar>(s: &T) -> Result<T> {
    let v = s.clone() * (T::one() - s.clone());
    v.sqrt().ok_or_else(|| {
        Error::Construction(format!(
            "√(s(1−s)) is not representable for s = {}; use floating mode",
            s.to_json()
        ))
    })
}

pub fn build_pair<T: Scalar>(spec: &ConstructionSpec<T>) -> Result<(Projection<T>, Projection<T>)> {
    spec.validate()?;
    let (ring, m, n) = (spec.ring, spec.m, spec.n);
    let s = spec.s.clone();
    let r = off_diagonal_weight(&s)?;
    let one_s = T::one() - s.clone();
    let u = &spec.u;
    let uh = u.adjoint();
    let utu = uh.mul(u)?;
    let k = m + n;
    let p = KMatrix::from_fn(ring, k, k, |i, j| {
        if i == j && i < m {
            Hypercomplex::one(ring)
        } else {
            Hypercomplex::zero(ring)
        }
    });
    let q = KMatrix::from_fn(ring, k, k, |i, j| match (i < m, j < m) {
        (true, true) if i == j => Hypercomplex::real(ring, s.clone()),
        (true, true) => Hypercomplex::zero(ring),
        (true, false) => u.get(i, j - m).scale(&r),
        (false, true) => uh.get(i - m, j).scale(&r),
        (false, false) => utu.get(i - m, j - m).scale(&one_s),
    });
    let mut p = Projection::from_matrix(p)?;
    let mut q = Projection::from_matrix(q)?;
    if let Some(w) = &spec.w {
        p = p.conjugate_by(std::slice::from_ref(w))?;
        q = q.conjugate_by(std::slice::from_ref(w))?;
    }
    Ok((p, q))
}

fn gaussian_entry<R: Rng + ?Sized>(ring: Ring, rng: &mut R) -> Hypercomplex<f64> {
    let c: Vec<f64> = (0..ring.dim()).map(|_| rng.sample(StandardNormal)).collect();
    Hypercomplex::new(ring, c).expect("coordinate count matches ring")
}

/// `Σ_k x_k conj(y_k)`, the inner product for which `u u* = I` means
/// orthonormal rows.
fn row_inner(x: &[Hypercomplex<f64>], y: &[Hypercomplex<f64>]) -> Hypercomplex<f64> {
    let ring = x[0].ring();
    x.iter().zip(y).fold(Hypercomplex::zero(ring), |acc, (a, b)| &acc + &(a * &b.conj()))
}

/// Random `m × n` matrix with orthonormal rows, by Gram–Schmidt on Gaussian
/// rows. Associative rings only.
pub fn random_isometry_with<T: Scalar, R: Rng + ?Sized>(
    ring: Ring,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<KMatrix<T>> {
    if m > n || m == 0 {
        return Err(Error::Construction(format!("need 1 ≤ m ≤ n, got m={m}, n={n}")));
    }
    if !ring.is_associative() {
        return Err(Error::Unsupported("random isometries need associative coordinates".into()));
    }
    let mut rows: Vec<Vec<Hypercomplex<f64>>> = Vec::with_capacity(m);
    while rows.len() < m {
        let mut x: Vec<_> = (0..n).map(|_| gaussian_entry(ring, rng)).collect();
        for _ in 0..2 {
            for y in &rows {
                let c = row_inner(&x, y);
                for (xk, yk) in x.iter_mut().zip(y) {
                    *xk = &*xk - &(&c * yk);
                }
            }
        }
        let norm = f64::sqrt(*row_inner(&x, &x).re());
        if norm < 1e-6 {
            continue;
        }
        rows.push(x.iter().map(|v| v.scale(&(1.0 / norm))).collect());
    }
    Ok(KMatrix::from_fn(ring, m, n, |i, j| rows[i][j].cast()))
}

pub fn random_isometry<T: Scalar>(ring: Ring, m: usize, n: usize, seed: u64) -> Result<KMatrix<T>> {
    random_isometry_with(ring, m, n, &mut rng_from_seed(seed))
}

pub fn random_unitary_with<T: Scalar, R: Rng + ?Sized>(ring: Ring, n: usize, rng: &mut R) -> Result<KMatrix<T>> {
    random_isometry_with(ring, n, n, rng)
}

/// Exact unitary by the Cayley transform `(I − A)(I + A)⁻¹` of a random
/// skew-Hermitian `A` with small integer entries.
pub fn rational_unitary_with<T: Scalar, R: Rng + ?Sized>(ring: Ring, n: usize, rng: &mut R) -> Result<KMatrix<T>> {
    if !ring.is_associative() {
        return Err(Error::Unsupported("Cayley transforms need associative coordinates".into()));
    }
    let d = ring.dim();
    let mut a = KMatrix::<T>::zeros(ring, n, n);
    for i in 0..n {
        // Diagonal of a skew-Hermitian matrix is purely imaginary.
        let mut c = vec![T::zero(); d];
        for x in c.iter_mut().skip(1) {
            *x = T::from_ratio(rng.random_range(-2..=2), 1);
        }
        a.set(i, i, Hypercomplex::new(ring, c)?);
        for j in i + 1..n {
            let c: Vec<T> = (0..d).map(|_| T::from_ratio(rng.random_range(-2..=2), 1)).collect();
            let x = Hypercomplex::new(ring, c)?;
            a.set(j, i, -x.conj());
            a.set(i, j, x);
        }
    }
    let id = KMatrix::identity(ring, n);
    let plus = real_representation(&id.add(&a)?)?;
    let inv = from_real_representation(ring, &plus.inverse(0.0)?);
    id.sub(&a)?.mul(&inv)
}

/// First `m` rows of a Cayley unitary: an isometry with exact entries when
/// `T` is exact.
pub fn rational_isometry_with<T: Scalar, R: Rng + ?Sized>(
    ring: Ring,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<KMatrix<T>> {
    if m > n || m == 0 {
        return Err(Error::Construction(format!("need 1 ≤ m ≤ n, got m={m}, n={n}")));
    }
    let w = rational_unitary_with::<T, _>(ring, n, rng)?;
    Ok(KMatrix::from_fn(ring, m, n, |i, j| w.get(i, j).clone()))
}

/// `u* u` for an isometry `u`: the projection onto its row space.
pub fn projection_from_isometry<T: Scalar>(u: &KMatrix<T>) -> Result<Projection<T>> {
    Projection::from_matrix(u.adjoint().mul(u)?)
}

/// Random rank-`k` projection in `H_n(K)`; `k = 0` gives zero.
pub fn random_projection_with<T: Scalar, R: Rng + ?Sized>(
    ring: Ring,
    n: usize,
    k: usize,
    rng: &mut R,
) -> Result<Projection<T>> {
    if k == 0 {
        return Projection::from_matrix(KMatrix::zeros(ring, n, n));
    }
    projection_from_isometry(&random_isometry_with(ring, k, n, rng)?)
}

/// Unit row `(u1, u2)` over O. Exact scalars get `(a/c·e_i, ±b/c·e_j)` from
/// a Pythagorean triple; floats a normalised Gaussian row.
pub fn random_octonion_row_with<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> KMatrix<T> {
    let ring = Ring::Octonion;
    if T::EXACT {
        const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (7, 24, 25)];
        let (a, b, c) = TRIPLES[rng.random_range(0..TRIPLES.len())];
        let sign = if rng.random_bool(0.5) { 1 } else { -1 };
        let u1 = Hypercomplex::unit(ring, rng.random_range(0..8)).scale(&T::from_ratio(a, c));
        let u2 = Hypercomplex::unit(ring, rng.random_range(0..8)).scale(&T::from_ratio(sign * b, c));
        return KMatrix::new(ring, 1, 2, vec![u1, u2]).expect("1x2 row");
    }
    let x = [gaussian_entry(ring, rng), gaussian_entry(ring, rng)];
    let norm = (x[0].norm2() + x[1].norm2()).sqrt();
    KMatrix::from_fn(ring, 1, 2, |_, j| x[j].scale(&(1.0 / norm)).cast())
}

/// The seeded `u` used by the family generator in each mode: Cayley rows in
/// exact mode, Gram–Schmidt rows in floating mode, and the octonionic unit
/// row for `H_3(O)`.
pub fn seeded_isometry_with<T: Scalar, R: Rng + ?Sized>(
    ring: Ring,
    m: usize,
    n: usize,
    rng: &mut R,
) -> Result<KMatrix<T>> {
    if ring == Ring::Octonion {
        if (m, n) != (1, 2) {
            return Err(Error::Construction("over O only m = 1, n = 2 fits in H_3(O)".into()));
        }
        return Ok(random_octonion_row_with(rng));
    }
    if T::EXACT {
        rational_isometry_with(ring, m, n, rng)
    } else {
        random_isometry_with(ring, m, n, rng)
    }
}

/// The pair in `H_3(O)` built from the row `u = (u1, u2)`,
/// `|u1|² + |u2|² = 1`.
pub fn octonion_example<T: Scalar>(
    u1: Hypercomplex<T>,
    u2: Hypercomplex<T>,
    s: T,
) -> Result<(Projection<T>, Projection<T>)> {
    let ring = Ring::Octonion;
    if u1.ring() != ring || u2.ring() != ring {
        return Err(Error::Construction("octonionic entries required".into()));
    }
    let u = KMatrix::new(ring, 1, 2, vec![u1, u2])?;
    build_pair(&ConstructionSpec::new(ring, s, u))
}

/// A pair `(p, q)` in `H_{m+n+k}(K)` with `q = q_o + r`, where `(p, q_o)`
/// is the isoclinic pair of `spec` and `r` is a rank-`k` projection
/// orthogonal to both, all conjugated by `w` when given.
#[derive(Clone, Debug)]
pub struct CompositeInstance<T> {
    pub p: Projection<T>,
    pub q: Projection<T>,
    pub q_o: Projection<T>,
    pub r: Projection<T>,
}

pub fn composite_pair<T: Scalar>(
    spec: &ConstructionSpec<T>,
    extra: usize,
    w: Option<&KMatrix<T>>,
) -> Result<CompositeInstance<T>> {
    if spec.w.is_some() {
        return Err(Error::Construction("pass the conjugator to composite_pair instead".into()));
    }
    if extra == 0 {
        return Err(Error::Construction("the orthogonal block needs rank ≥ 1".into()));
    }
    let (p, qo) = build_pair(spec)?;
    let ring = spec.ring;
    let k = spec.m + spec.n;
    let pad = |x: &Projection<T>| -> Result<KMatrix<T>> {
        KMatrix::block_diagonal(ring, &[x.element().matrix(), &KMatrix::zeros(ring, extra, extra)])
    };
    let r = KMatrix::from_fn(ring, k + extra, k + extra, |i, j| {
        if i == j && i >= k {
            Hypercomplex::one(ring)
        } else {
            Hypercomplex::zero(ring)
        }
    });
    let p = pad(&p)?;
    let qo = pad(&qo)?;
    let q = qo.add(&r)?;
    let finish = |x: KMatrix<T>| -> Result<Projection<T>> {
        let e = JordanElement::from_matrix(x)?;
        match w {
            Some(w) => Projection::new(e.conjugate_by(std::slice::from_ref(w))?),
            None => Projection::new(e),
        }
    };
    Ok(CompositeInstance { p: finish(p)?, q: finish(q)?, q_o: finish(qo)?, r: finish(r)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;
    use crate::transition::transition_probability;

    #[test]
    fn isometries_are_isometric() {
        for ring in [Ring::Real, Ring::Complex, Ring::Quaternion] {
            let u: KMatrix<f64> = random_isometry(ring, 2, 3, 7).unwrap();
            let d = u.mul(&u.adjoint()).unwrap().sub(&KMatrix::identity(ring, 2)).unwrap();
            assert!(d.frobenius2().sqrt() < 1e-10);
            let mut rng = rng_from_seed(3);
            let w: KMatrix<Rational> = rational_unitary_with(ring, 3, &mut rng).unwrap();
            let d = w.adjoint().mul(&w).unwrap();
            assert_eq!(d, KMatrix::identity(ring, 3));
        }
    }

    #[test]
    fn same_seed_same_matrix() {
        let a: KMatrix<f64> = random_isometry(Ring::Quaternion, 2, 2, 11).unwrap();
        let b: KMatrix<f64> = random_isometry(Ring::Quaternion, 2, 2, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn scalar_family_is_the_2x2_pair() {
        let u = KMatrix::diagonal(Ring::Real, &[Rational::from_ratio(1, 1)]);
        let (p, q) = build_pair(&ConstructionSpec::new(Ring::Real, Rational::from_ratio(1, 2), u)).unwrap();
        let h = Rational::from_ratio(1, 2);
        assert_eq!(q.element().matrix().get(0, 1).re(), &h);
        assert_eq!(transition_probability(&p, &q).unwrap().s, Some(h));
    }

    #[test]
    fn rejects_bad_specs() {
        let u = KMatrix::diagonal(Ring::Real, &[0.5]);
        assert!(build_pair(&ConstructionSpec::new(Ring::Real, 0.5, u)).is_err());
        let u = KMatrix::<f64>::zeros(Ring::Real, 2, 1);
        assert!(build_pair(&ConstructionSpec::new(Ring::Real, 0.5, u)).is_err());
        let u = KMatrix::diagonal(Ring::Real, &[Rational::from_ratio(1, 1)]);
        assert!(matches!(
            build_pair(&ConstructionSpec::new(Ring::Real, Rational::from_ratio(1, 3), u)),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn octonion_pair_is_exact() {
        let o = |k: usize, c: Rational| Hypercomplex::unit(Ring::Octonion, k).scale(&c);
        let (p, q) = octonion_example(o(1, Rational::from_ratio(3, 5)), o(4, Rational::from_ratio(4, 5)), Rational::from_ratio(1, 2)).unwrap();
        assert_eq!(transition_probability(&p, &q).unwrap().s, Some(Rational::from_ratio(1, 2)));
        assert_eq!(transition_probability(&q, &p).unwrap().s, Some(Rational::from_ratio(1, 2)));
    }

    #[test]
    fn seeded_rows_are_isometries() {
        let mut rng = rng_from_seed(11);
        for ring in Ring::ALL {
            let (m, n) = if ring == Ring::Octonion { (1, 2) } else { (2, 3) };
            let u = seeded_isometry_with::<Rational, _>(ring, m, n, &mut rng).unwrap();
            let s = Rational::from_ratio(9, 25);
            let (p, q) = build_pair(&ConstructionSpec::new(ring, s.clone(), u)).unwrap();
            assert_eq!(crate::transition::transition_probability(&p, &q).unwrap().s, Some(s));
            let u = seeded_isometry_with::<f64, _>(ring, m, n, &mut rng).unwrap();
            assert!(build_pair(&ConstructionSpec::new(ring, 0.3, u)).is_ok());
        }
    }
}
