//! Double-double (~31 significant digits) arithmetic for one job: evaluating
//! the reflection combination I_{-ν}(x) - I_ν(x) without losing the answer.
//!
//! The difference is of size exp(-x) while each term is of size exp(+x), so
//! plain f64 forfeits 2x/ln(10) digits — at x = 20 that is more than all of
//! them. Everything feeding the subtraction (series terms, the endpoint
//! constants (x/2)^(±ν)/Γ(1±ν)) is therefore carried in unevaluated
//! hi + lo pairs. All transcendental constants are derived at runtime from
//! rational series, so no hand-typed low words can silently be wrong.

use std::sync::OnceLock;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn from(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    #[inline]
    fn renorm(hi: f64, lo: f64) -> Dd {
        let (s, e) = quick_two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn add(self, other: Dd) -> Dd {
        let (s1, s2) = two_sum(self.hi, other.hi);
        let (t1, t2) = two_sum(self.lo, other.lo);
        let (s1, s2) = quick_two_sum(s1, s2 + t1);
        Dd::renorm(s1, s2 + t2)
    }

    #[inline]
    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    #[inline]
    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    #[inline]
    pub fn mul(self, other: Dd) -> Dd {
        let (p1, p2) = two_prod(self.hi, other.hi);
        let p2 = p2 + self.hi * other.lo + self.lo * other.hi;
        Dd::renorm(p1, p2)
    }

    #[inline]
    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r = r.sub(other.mul_f64(q2));
        let q3 = r.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd::renorm(s, e + q3)
    }

    #[inline]
    pub fn mul_f64(self, x: f64) -> Dd {
        let (p1, p2) = two_prod(self.hi, x);
        Dd::renorm(p1, p2 + self.lo * x)
    }

    #[inline]
    pub fn div_f64(self, x: f64) -> Dd {
        self.div(Dd::from(x))
    }

    #[inline]
    pub fn abs(self) -> Dd {
        if self.hi < 0.0 {
            self.neg()
        } else {
            self
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    /// Natural logarithm via binary reduction plus the atanh series
    /// ln m = 2 Σ u^(2k+1)/(2k+1), u = (m-1)/(m+1), |u| ≤ 1/3.
    pub fn ln(self) -> Dd {
        assert!(self.hi > 0.0);
        let e = self.hi.log2().round();
        let scale = (-e) as i32;
        let m = Dd::renorm(libm_ldexp(self.hi, scale), libm_ldexp(self.lo, scale));
        let u = m.sub(Dd::ONE).div(m.add(Dd::ONE));
        let u2 = u.mul(u);
        let mut term = u;
        let mut sum = u;
        let mut k = 1usize;
        loop {
            term = term.mul(u2);
            let inc = term.div_f64((2 * k + 1) as f64);
            sum = sum.add(inc);
            if inc.hi.abs() < 1e-36 * sum.hi.abs().max(1e-300) || k > 80 {
                break;
            }
            k += 1;
        }
        sum.mul_f64(2.0).add(ln2_dd().mul_f64(e))
    }

    /// exp with reduction by ln 2 and a Taylor tail.
    pub fn exp(self) -> Dd {
        let n = (self.hi / std::f64::consts::LN_2).round();
        let r = self.sub(ln2_dd().mul_f64(n));
        let mut term = Dd::ONE;
        let mut sum = Dd::ONE;
        for k in 1..60 {
            term = term.mul(r).div_f64(k as f64);
            sum = sum.add(term);
            if term.hi.abs() < 1e-36 * sum.hi.abs() {
                break;
            }
        }
        let s = n as i32;
        Dd::renorm(libm_ldexp(sum.hi, s), libm_ldexp(sum.lo, s))
    }

    pub fn powf(self, y: Dd) -> Dd {
        self.ln().mul(y).exp()
    }
}

#[inline]
fn libm_ldexp(x: f64, e: i32) -> f64 {
    // Two-step scaling keeps intermediate powers representable.
    let half = e / 2;
    x * (half as f64).exp2() * ((e - half) as f64).exp2()
}

fn atanh_recip(n: u32) -> Dd {
    // atanh(1/n) = Σ n^(-(2k+1)) / (2k+1), exact rational arguments.
    let inv = Dd::ONE.div_f64(n as f64);
    let inv2 = inv.mul(inv);
    let mut term = inv;
    let mut sum = inv;
    let mut k = 1usize;
    loop {
        term = term.mul(inv2);
        let inc = term.div_f64((2 * k + 1) as f64);
        sum = sum.add(inc);
        if inc.hi.abs() < 1e-38 * sum.hi || k > 200 {
            break;
        }
        k += 1;
    }
    sum
}

fn ln2_dd() -> Dd {
    static LN2: OnceLock<Dd> = OnceLock::new();
    // ln 2 = 2 atanh(1/3)
    *LN2.get_or_init(|| atanh_recip(3).mul_f64(2.0))
}

pub(crate) fn pi_dd() -> Dd {
    static PI: OnceLock<Dd> = OnceLock::new();
    // Machin: π = 16 atan(1/5) - 4 atan(1/239); atan(1/n) by alternating series.
    *PI.get_or_init(|| {
        let atan_recip = |n: f64| {
            let inv = Dd::ONE.div_f64(n);
            let inv2 = inv.mul(inv);
            let mut term = inv;
            let mut sum = inv;
            let mut k = 1usize;
            loop {
                term = term.mul(inv2);
                let inc = term.div_f64((2 * k + 1) as f64);
                sum = if k % 2 == 1 { sum.sub(inc) } else { sum.add(inc) };
                if inc.hi.abs() < 1e-38 * sum.hi.abs() || k > 300 {
                    break;
                }
                k += 1;
            }
            sum
        };
        atan_recip(5.0).mul_f64(16.0).sub(atan_recip(239.0).mul_f64(4.0))
    })
}

fn ln_2pi_dd() -> Dd {
    static L2PI: OnceLock<Dd> = OnceLock::new();
    *L2PI.get_or_init(|| pi_dd().mul_f64(2.0).ln())
}

// Bernoulli numbers B_2 .. B_24 as exact rationals for the Stirling tail.
const BERNOULLI: [(f64, f64); 12] = [
    (1.0, 6.0),
    (-1.0, 30.0),
    (1.0, 42.0),
    (-1.0, 30.0),
    (5.0, 66.0),
    (-691.0, 2730.0),
    (7.0, 6.0),
    (-3617.0, 510.0),
    (43867.0, 798.0),
    (-174611.0, 330.0),
    (854513.0, 138.0),
    (-236364091.0, 2730.0),
];

/// ln Γ(z) in double-double for z > 0, by shifting to w = z + m ≥ 40 and the
/// Stirling series with exact-rational Bernoulli coefficients.
pub(crate) fn ln_gamma_dd(z: Dd) -> Dd {
    assert!(z.hi > 0.0);
    let mut shift_log = Dd::ZERO;
    let mut w = z;
    while w.hi < 40.0 {
        shift_log = shift_log.add(w.ln());
        w = w.add(Dd::ONE);
    }
    // (w - 1/2) ln w - w + ln(2π)/2 + Σ B_2k / (2k (2k-1) w^(2k-1))
    let lnw = w.ln();
    let mut acc = w
        .sub(Dd::from(0.5))
        .mul(lnw)
        .sub(w)
        .add(ln_2pi_dd().mul_f64(0.5));
    let w2 = w.mul(w);
    let mut wpow = w; // w^(2k-1)
    for (k, (num, den)) in BERNOULLI.iter().enumerate() {
        let kk = (k + 1) as f64;
        let coeff = Dd::from(*num).div_f64(*den).div_f64(2.0 * kk * (2.0 * kk - 1.0));
        acc = acc.add(coeff.div(wpow));
        wpow = wpow.mul(w2);
    }
    acc.sub(shift_log)
}

/// I_{-ν}(x) - I_ν(x) for non-integer ν, summed entirely in double-double.
///
/// Both series are accumulated with term recurrences that only involve
/// rational operations on exactly-representable inputs; the endpoint
/// constants (x/2)^(±ν)/Γ(1±ν) come from the dd exp/ln/lnΓ above.
pub(crate) fn bessel_i_reflection_difference(nu: f64, x: f64) -> f64 {
    let half_x = Dd::from(x).div_f64(2.0);
    let q = half_x.mul(half_x); // (x/2)^2
    let lead = |order: f64| -> Dd {
        // (x/2)^order / Γ(order + 1)
        let p = half_x.powf(Dd::from(order));
        let lg = ln_gamma_dd(shifted_gamma_arg(order));
        p.div(gamma_from_ln(order, lg))
    };

    let mut sum = Dd::ZERO;
    for &s in &[-1.0f64, 1.0] {
        let order = s * nu;
        let mut term = lead(order);
        let mut partial = term;
        for k in 0..700 {
            let kk = (k + 1) as f64;
            // kk + order must be formed in dd: a single f64 rounding here is
            // amplified by exp(2x) in the final difference.
            let denom = Dd::from(kk).add(Dd::from(order));
            term = term.mul(q).div_f64(kk).div(denom);
            partial = partial.add(term);
            if term.abs().hi < 1e-34 * partial.abs().hi.max(1e-300) {
                break;
            }
        }
        sum = if s < 0.0 { sum.add(partial) } else { sum.sub(partial) };
    }
    sum.to_f64()
}

// Γ(order + 1) handling negative non-integer orders through the reflection
// Γ(y) Γ(1-y) = π / sin(πy), keeping everything in dd. The shift order + 1
// is itself formed in dd: rounding it in f64 costs one ulp on the Γ
// argument, which the exp(2x) cancellation then amplifies into the result.
fn shifted_gamma_arg(order: f64) -> Dd {
    if order > -1.0 {
        Dd::from(order).add(Dd::ONE)
    } else {
        // argument for ln Γ of the reflected positive value
        Dd::from(-order)
    }
}

fn gamma_from_ln(order: f64, lg: Dd) -> Dd {
    if order > -1.0 {
        lg.exp()
    } else {
        // Γ(order+1) = π / (sin(π(order+1)) Γ(-order))
        let y = Dd::from(order).add(Dd::ONE);
        pi_dd().div(sin_dd(pi_dd().mul(y)).mul(lg.exp()))
    }
}

fn sin_dd(x: Dd) -> Dd {
    // Reduce into (-π, π] coarsely; adequate for the small arguments used here.
    let two_pi = pi_dd().mul_f64(2.0);
    let n = (x.hi / two_pi.hi).round();
    let r = x.sub(two_pi.mul_f64(n));
    let r2 = r.mul(r);
    let mut term = r;
    let mut sum = r;
    for k in 1..40 {
        let kk = (2 * k) as f64;
        term = term.mul(r2).div_f64(kk * (kk + 1.0)).neg();
        sum = sum.add(term);
        if term.abs().hi < 1e-36 * sum.abs().hi.max(1e-300) {
            break;
        }
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_identities() {
        let a = Dd::from(1.0).div_f64(3.0);
        let b = a.mul_f64(3.0);
        assert!((b.sub(Dd::ONE)).to_f64().abs() < 1e-31);
    }

    #[test]
    fn constants_match_f64() {
        assert!((pi_dd().hi - std::f64::consts::PI).abs() < 1e-15);
        assert!(pi_dd().lo.abs() < 1e-15);
        assert!((ln2_dd().hi - std::f64::consts::LN_2).abs() < 1e-16);
    }

    #[test]
    fn exp_ln_roundtrip() {
        for v in [0.3, 1.7, 10.0, 0.011] {
            let x = Dd::from(v);
            let r = x.ln().exp().sub(x);
            assert!(r.to_f64().abs() < 1e-29 * v, "v={v}: resid {}", r.to_f64());
        }
    }

    #[test]
    fn ln_gamma_dd_values() {
        // Γ(1) = Γ(2) = 1
        assert!(ln_gamma_dd(Dd::from(1.0)).to_f64().abs() < 1e-29);
        assert!(ln_gamma_dd(Dd::from(2.0)).to_f64().abs() < 1e-29);
        // Γ(1/2) = √π
        let lg = ln_gamma_dd(Dd::from(0.5));
        let target = pi_dd().ln().mul_f64(0.5);
        assert!(lg.sub(target).to_f64().abs() < 1e-29);
        // Γ(5) = 24
        let g5 = ln_gamma_dd(Dd::from(5.0)).exp();
        assert!(g5.sub(Dd::from(24.0)).to_f64().abs() < 1e-27);
    }

    #[test]
    fn reflection_difference_small_x_matches_f64() {
        // At x = 1 the subtraction is benign, so plain f64 series agree.
        let nu = 0.3;
        let x = 1.0;
        let i = |order: f64| {
            let mut term = (x / 2.0f64).powf(order) / crate::specfun::gamma(order + 1.0);
            let mut sum = term;
            for k in 0..200 {
                let kk = (k + 1) as f64;
                term *= (x * x / 4.0) / (kk * (kk + order));
                sum += term;
            }
            sum
        };
        let expect = i(-nu) - i(nu);
        let got = bessel_i_reflection_difference(nu, x);
        assert!((got - expect).abs() < 1e-13 * expect.abs());
    }
}
