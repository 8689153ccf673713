//! Closed forms for rigid `2q`-regular families, whose two sides of the line
//! decouple into independent one-sided arch systems.

use std::f64::consts::PI;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step
        acc *= n - i;
        acc = exact_div(&acc, &BigUint::from(i + 1));
    }
    acc
}

fn exact_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "inexact division {a} / {b}");
    q
}

/// Fuss-Catalan number `C(qN, N) / ((q - 1)N + 1)`: one-sided rigid arch
/// systems on `2N` vertices.
pub fn fuss_catalan(q: u32, n: u64) -> BigUint {
    assert!(q >= 2, "q must be at least 2");
    let q = u64::from(q);
    exact_div(&binomial(q * n, n), &BigUint::from((q - 1) * n + 1))
}

/// `z_N` of the rigid `2q`-regular family.
pub fn rigid_z(q: u32, n: u64) -> BigUint {
    let c = fuss_catalan(q, n);
    &c * &c
}

/// `k_N = y_N / z_N` for the rigid 4-regular family.
pub fn rigid4_k(n: u64) -> BigRational {
    assert!(n >= 1, "N must be at least 1");
    let two = BigRational::from_integer(2.into());
    let ratio = if n.is_multiple_of(2) {
        let m = n / 2;
        let num = binomial(2 * m, m).pow(2) * 2u32;
        let den = exact_div(&binomial(4 * m, 2 * m), &BigUint::from(2 * m + 1));
        big_ratio(num, den)
    } else {
        let m = n.div_ceil(2);
        let num = binomial(2 * m, m) * binomial(2 * m - 2, m - 1) * 2u32;
        let den = exact_div(&binomial(4 * m - 2, 2 * m - 1), &BigUint::from(2 * m));
        big_ratio(num, den)
    };
    ratio - two
}

fn big_ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(num.into(), den.into())
}

/// `g_N` for the rigid 4-regular family: configurations weighted by the
/// number of arches over the middle of the line.
pub fn rigid4_g(n: u64) -> BigUint {
    assert!(n >= 1, "N must be at least 1");
    let c = fuss_catalan(2, n);
    if n.is_multiple_of(2) {
        let m = n / 2;
        binomial(2 * m, m).pow(2) - c
    } else {
        // g = k c / 2
        let g = rigid4_k(n) * BigRational::from_integer(c.into()) / BigRational::from_integer(2.into());
        assert!(g.is_integer(), "non-integer g_{n}");
        g.to_integer().to_biguint().expect("g is non-negative")
    }
}

/// Explicit sum over the middle height `p` whose value must equal
/// `rigid4_g(2M)`.
pub fn g_sum_check(m: u64) -> BigUint {
    assert!(m >= 1, "M must be at least 1");
    (0..=m)
        .map(|p| {
            let a = exact_div(&(binomial(2 * m, m + p) * (2 * p + 1)), &BigUint::from(m + p + 1));
            &a * &a * (2 * p)
        })
        .sum()
}

/// The same sum without the `2p` weight, which counts all configurations.
pub fn middle_height_total(m: u64) -> BigUint {
    (0..=m)
        .map(|p| {
            let a = exact_div(&(binomial(2 * m, m + p) * (2 * p + 1)), &BigUint::from(m + p + 1));
            &a * &a
        })
        .sum()
}

/// Large-`N` behavior `z_N ~ varkappa mu^(2N) N^(gamma - 2)` of a rigid family.
#[derive(Debug, Clone, PartialEq)]
pub struct RigidAsymptotics {
    pub q: u32,
    /// `q^q / (q-1)^(q-1)`, exactly.
    pub mu: BigRational,
    pub varkappa: f64,
    pub gamma: i32,
}

impl RigidAsymptotics {
    pub fn mu_f64(&self) -> f64 {
        self.mu.to_f64().expect("finite")
    }
}

pub fn rigid_asymptotics(q: u32) -> RigidAsymptotics {
    assert!(q >= 2, "q must be at least 2");
    let num = BigUint::from(q).pow(q);
    let den = BigUint::from(q - 1).pow(q - 1);
    let qm1 = f64::from(q - 1);
    RigidAsymptotics {
        q,
        mu: big_ratio(num, den),
        varkappa: f64::from(q) / (2.0 * PI * qm1 * qm1 * qm1),
        gamma: -1,
    }
}
