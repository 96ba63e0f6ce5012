//! Random samplers for tests and demonstrations. All take a caller-supplied RNG.

use num_complex::Complex64;
use rand::Rng;

use crate::algebra::Quaternion;
use crate::matrix::{c, CMatrix};
use crate::rep::{pauli_triad, TracelessPair};
use crate::transform::{o_from_u, Rotor, SpinorMap};

/// Smallest |det| accepted for sampled matrices.
pub const MIN_DET: f64 = 0.1;

pub fn quaternion<R: Rng + ?Sized>(rng: &mut R) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    )
}

/// Uniform in the closed unit disc.
pub fn complex_in_disc<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    loop {
        let z = c(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0));
        if z.norm_sqr() <= 1.0 {
            return z;
        }
    }
}

pub fn unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [0; 3].map(|_| rng.gen_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 0.1 && n <= 1.0 {
            return v.map(|x| x / n);
        }
    }
}

/// Traceless pair with unit-disc entries, `Tr(AB) = 0` enforced by projecting out the
/// `A` component of `B`, and both determinants at least [`MIN_DET`] in modulus.
pub fn traceless_pair<R: Rng + ?Sized>(rng: &mut R) -> TracelessPair {
    loop {
        let ea = [0; 3].map(|_| complex_in_disc(rng));
        let eb = [0; 3].map(|_| complex_in_disc(rng));
        let raw = TracelessPair::from_entries(ea, eb);
        let aa = (&raw.a * &raw.a).trace();
        if aa.norm() < MIN_DET || raw.a.det().norm() < MIN_DET {
            continue;
        }
        let ab = (&raw.a * &raw.b).trace();
        let b = &raw.b - &raw.a.scale(ab / aa);
        if b.det().norm() < MIN_DET {
            continue;
        }
        return TracelessPair { a: raw.a, b };
    }
}

/// Uniform on SU(2) via a uniformly random unit quaternion.
pub fn su2<R: Rng + ?Sized>(rng: &mut R) -> SpinorMap {
    let v = loop {
        let v: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n > 0.1 && n <= 1.0 {
            break v.map(|x| x / n);
        }
    };
    let q = pauli_triad();
    let u = &CMatrix::identity(2).scale_re(v[0]) + &q.combine_real(&[v[1], v[2], v[3]]);
    SpinorMap::new(u).expect("unit quaternion matrix is unimodular")
}

/// Random SL(2,C) element: disc-valued entries plus identity, rescaled to det 1.
pub fn sl2c<R: Rng + ?Sized>(rng: &mut R) -> SpinorMap {
    loop {
        let e = [0; 4].map(|_| complex_in_disc(rng));
        let m = CMatrix::m2(c(1.0, 0.0) + e[0], e[1], e[2], c(1.0, 0.0) + e[3]);
        if m.det().norm() < MIN_DET {
            continue;
        }
        return SpinorMap::normalized(m).expect("determinant checked");
    }
}

pub fn real_rotor<R: Rng + ?Sized>(rng: &mut R) -> Rotor {
    o_from_u(&su2(rng))
}

/// Complex orthogonal rotor, the image of a random SL(2,C) map.
pub fn complex_rotor<R: Rng + ?Sized>(rng: &mut R) -> Rotor {
    o_from_u(&sl2c(rng))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transform::orthogonality_deviation;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_respect_constraints() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = traceless_pair(&mut rng);
            assert!(p.validate().is_ok());
            assert!(p.a.det().norm() >= MIN_DET && p.b.det().norm() >= MIN_DET);
            let u = sl2c(&mut rng);
            assert!((u.matrix().det() - c(1.0, 0.0)).norm() < 1e-12);
            let (o, d) = orthogonality_deviation(complex_rotor(&mut rng).matrix());
            assert!(o < 1e-10 && d < 1e-10);
            let r = real_rotor(&mut rng);
            assert!(r.matrix().max_imag() < 1e-14);
        }
    }

    #[test]
    fn seeded_is_reproducible() {
        let a = quaternion(&mut ChaCha8Rng::seed_from_u64(3));
        let b = quaternion(&mut ChaCha8Rng::seed_from_u64(3));
        assert_eq!(a, b);
    }
}
