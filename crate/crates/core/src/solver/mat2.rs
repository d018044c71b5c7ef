//! Closed-form kernels for 2x2 Hermitian matrices.
//!
//! Every PSD block in the conic programs is 2x2, so eigenvalues,
//! determinants, inverses and boundary step lengths all have closed forms.

/// Hermitian 2x2 matrix [[a, cr + i*ci], [cr - i*ci, d]].
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Herm2 {
    pub a: f64,
    pub d: f64,
    pub cr: f64,
    pub ci: f64,
}

impl Herm2 {
    pub const ZERO: Herm2 = Herm2 {
        a: 0.0,
        d: 0.0,
        cr: 0.0,
        ci: 0.0,
    };

    pub fn identity(scale: f64) -> Self {
        Herm2 {
            a: scale,
            d: scale,
            cr: 0.0,
            ci: 0.0,
        }
    }

    /// I*w + x*sigma_x + y*sigma_y + z*sigma_z.
    pub fn from_pauli(w: f64, x: f64, y: f64, z: f64) -> Self {
        // sigma_y = [[0, -i], [i, 0]], so its (0,1) entry is -i.
        Herm2 {
            a: w + z,
            d: w - z,
            cr: x,
            ci: -y,
        }
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - (self.cr * self.cr + self.ci * self.ci)
    }

    /// Real inner product Tr[A B] of two Hermitian matrices.
    pub fn inner(&self, other: &Herm2) -> f64 {
        self.a * other.a + self.d * other.d + 2.0 * (self.cr * other.cr + self.ci * other.ci)
    }

    pub fn eigenvalues(&self) -> (f64, f64) {
        let mean = 0.5 * (self.a + self.d);
        let rad =
            (0.25 * (self.a - self.d) * (self.a - self.d) + self.cr * self.cr + self.ci * self.ci)
                .sqrt();
        (mean - rad, mean + rad)
    }

    pub fn min_eig(&self) -> f64 {
        self.eigenvalues().0
    }

    pub fn max_eig(&self) -> f64 {
        self.eigenvalues().1
    }

    pub fn inverse(&self) -> Herm2 {
        let det = self.det();
        Herm2 {
            a: self.d / det,
            d: self.a / det,
            cr: -self.cr / det,
            ci: -self.ci / det,
        }
    }

    pub fn scaled(&self, s: f64) -> Herm2 {
        Herm2 {
            a: self.a * s,
            d: self.d * s,
            cr: self.cr * s,
            ci: self.ci * s,
        }
    }

    pub fn add(&self, other: &Herm2) -> Herm2 {
        Herm2 {
            a: self.a + other.a,
            d: self.d + other.d,
            cr: self.cr + other.cr,
            ci: self.ci + other.ci,
        }
    }

    pub fn sub(&self, other: &Herm2) -> Herm2 {
        Herm2 {
            a: self.a - other.a,
            d: self.d - other.d,
            cr: self.cr - other.cr,
            ci: self.ci - other.ci,
        }
    }

    pub fn axpy(&mut self, s: f64, other: &Herm2) {
        self.a += s * other.a;
        self.d += s * other.d;
        self.cr += s * other.cr;
        self.ci += s * other.ci;
    }

    pub fn norm_inf(&self) -> f64 {
        self.a
            .abs()
            .max(self.d.abs())
            .max(self.cr.abs())
            .max(self.ci.abs())
    }

    /// Principal square root of a PSD matrix. Eigenvalues are clamped at
    /// zero to absorb roundoff from iterates sitting near the cone boundary.
    pub fn sqrt_psd(&self) -> Herm2 {
        let det = self.det().max(0.0);
        let s = det.sqrt();
        let t = (self.trace() + 2.0 * s).max(0.0).sqrt();
        if t <= 0.0 {
            return Herm2::ZERO;
        }
        Herm2 {
            a: (self.a + s) / t,
            d: (self.d + s) / t,
            cr: self.cr / t,
            ci: self.ci / t,
        }
    }

    /// Largest step `alpha` such that X + alpha*D stays PSD, for X strictly
    /// positive definite. Returns `f64::INFINITY` when unbounded.
    ///
    /// Found as the smallest positive root of det(X + alpha*D), a quadratic
    /// with q(0) = det X > 0.
    pub fn max_step(&self, dir: &Herm2) -> f64 {
        let c = self.det();
        let b = self.trace() * dir.trace() - self.inner(dir);
        let a = dir.det();
        smallest_positive_root(a, b, c)
    }
}

/// Smallest positive root of a*t^2 + b*t + c = 0 with c > 0, or infinity.
fn smallest_positive_root(a: f64, b: f64, c: f64) -> f64 {
    let tiny = 1e-300;
    if a.abs() < tiny * (b.abs() + 1.0) {
        if b < 0.0 {
            return -c / b;
        }
        return f64::INFINITY;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return f64::INFINITY;
    }
    let sq = disc.sqrt();
    let q = -0.5 * (b + b.signum() * sq);
    let mut best = f64::INFINITY;
    for r in [q / a, if q.abs() > tiny { c / q } else { f64::INFINITY }] {
        if r > 0.0 && r < best {
            best = r;
        }
    }
    best
}

/// General complex 2x2 matrix, used for intermediate products. Entries are
/// row-major (re, im) pairs.
#[derive(Debug, Clone, Copy, Default)]
pub struct CMat2 {
    pub e: [(f64, f64); 4],
}

#[inline]
fn cmul(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 * y.0 - x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

#[inline]
fn cadd(x: (f64, f64), y: (f64, f64)) -> (f64, f64) {
    (x.0 + y.0, x.1 + y.1)
}

impl CMat2 {
    pub fn from_herm(h: &Herm2) -> Self {
        CMat2 {
            e: [(h.a, 0.0), (h.cr, h.ci), (h.cr, -h.ci), (h.d, 0.0)],
        }
    }

    pub fn mul(&self, other: &CMat2) -> CMat2 {
        let a = &self.e;
        let b = &other.e;
        CMat2 {
            e: [
                cadd(cmul(a[0], b[0]), cmul(a[1], b[2])),
                cadd(cmul(a[0], b[1]), cmul(a[1], b[3])),
                cadd(cmul(a[2], b[0]), cmul(a[3], b[2])),
                cadd(cmul(a[2], b[1]), cmul(a[3], b[3])),
            ],
        }
    }

    /// Hermitian part (M + M^dagger)/2.
    pub fn herm_part(&self) -> Herm2 {
        Herm2 {
            a: self.e[0].0,
            d: self.e[3].0,
            cr: 0.5 * (self.e[1].0 + self.e[2].0),
            ci: 0.5 * (self.e[1].1 - self.e[2].1),
        }
    }

    /// Re Tr[H M] for Hermitian H.
    pub fn inner_herm(&self, h: &Herm2) -> f64 {
        h.a * self.e[0].0
            + h.d * self.e[3].0
            + h.cr * (self.e[1].0 + self.e[2].0)
            + h.ci * (self.e[2].1 - self.e[1].1)
    }
}

/// Product of three Hermitian matrices as a general complex matrix.
pub fn triple(x: &Herm2, m: &Herm2, z: &Herm2) -> CMat2 {
    CMat2::from_herm(x)
        .mul(&CMat2::from_herm(m))
        .mul(&CMat2::from_herm(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn eigen_inverse_consistency() {
        let h = Herm2 {
            a: 2.0,
            d: 1.0,
            cr: 0.3,
            ci: -0.2,
        };
        let (lo, hi) = h.eigenvalues();
        assert_abs_diff_eq!(lo * hi, h.det(), epsilon = 1e-12);
        assert_abs_diff_eq!(lo + hi, h.trace(), epsilon = 1e-12);
        let inv = h.inverse();
        let prod = CMat2::from_herm(&h).mul(&CMat2::from_herm(&inv));
        assert_abs_diff_eq!(prod.e[0].0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(prod.e[3].0, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(prod.e[1].0, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(prod.e[1].1, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn sqrt_squares_back() {
        let h = Herm2 {
            a: 1.5,
            d: 0.7,
            cr: 0.2,
            ci: 0.1,
        };
        assert!(h.min_eig() > 0.0);
        let r = h.sqrt_psd();
        let sq = CMat2::from_herm(&r).mul(&CMat2::from_herm(&r));
        assert_abs_diff_eq!(sq.e[0].0, h.a, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.e[3].0, h.d, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.e[1].0, h.cr, epsilon = 1e-12);
        assert_abs_diff_eq!(sq.e[1].1, h.ci, epsilon = 1e-12);
    }

    #[test]
    fn max_step_hits_boundary() {
        let x = Herm2::identity(1.0);
        let d = Herm2 {
            a: -2.0,
            d: -0.5,
            cr: 0.0,
            ci: 0.0,
        };
        let t = x.max_step(&d);
        assert_abs_diff_eq!(t, 0.5, epsilon = 1e-12);
        let shifted = x.add(&d.scaled(t));
        assert_abs_diff_eq!(shifted.min_eig(), 0.0, epsilon = 1e-12);

        let up = Herm2::identity(1.0);
        assert_eq!(x.max_step(&up), f64::INFINITY);
    }

    #[test]
    fn pauli_roundtrip() {
        let h = Herm2::from_pauli(0.5, 0.25, -0.1, 0.3);
        assert_abs_diff_eq!(h.trace(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(h.a - h.d, 0.6, epsilon = 1e-15);
        assert_abs_diff_eq!(h.cr, 0.25, epsilon = 1e-15);
        assert_abs_diff_eq!(h.ci, 0.1, epsilon = 1e-15);
    }
}
