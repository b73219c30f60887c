//! Deterministic compensated summation and double-double arithmetic.

use crate::C64;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Neumaier's improved Kahan summation on real and imaginary parts.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: C64,
    comp: C64,
}

#[inline]
fn neumaier_step(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: C64) {
        neumaier_step(&mut self.sum.re, &mut self.comp.re, x.re);
        neumaier_step(&mut self.sum.im, &mut self.comp.im, x.im);
    }

    pub fn value(&self) -> C64 {
        self.sum + self.comp
    }
}

/// Compensated sum of `terms` in the given order.
pub fn compensated_sum<I: IntoIterator<Item = C64>>(terms: I) -> C64 {
    let mut acc = NeumaierSum::new();
    for t in terms {
        acc.add(t);
    }
    acc.value()
}

/// Unevaluated sum hi + lo with |lo| ≤ ulp(hi)/2, roughly 32 significant digits.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
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

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        DoubleDouble { hi: x, lo: 0.0 }
    }

    /// Exact sum of two doubles.
    pub fn from_sum(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, b);
        DoubleDouble { hi, lo }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn recip(self) -> Self {
        DoubleDouble::ONE / self
    }

    /// Multiply by 2^k exactly.
    pub fn ldexp(self, k: i32) -> Self {
        let f = 2f64.powi(k);
        DoubleDouble { hi: self.hi * f, lo: self.lo * f }
    }

    /// e^a; intended for |a| ≲ 700.
    pub fn exp(self) -> Self {
        let k = (self.hi / LN2.hi).round();
        let r = (self - LN2 * DoubleDouble::from_f64(k)).ldexp(-10);
        // Taylor series of e^r, |r| < 4e-4
        let mut term = DoubleDouble::ONE;
        let mut sum = DoubleDouble::ONE;
        for i in 1..=12 {
            term = term * r / DoubleDouble::from_f64(i as f64);
            sum = sum + term;
        }
        for _ in 0..10 {
            sum = sum * sum;
        }
        sum.ldexp(k as i32)
    }

    /// ln x for x > 0 via one Newton step on the double-precision logarithm.
    pub fn ln(x: f64) -> Self {
        let y = DoubleDouble::from_f64(x.ln());
        y + DoubleDouble::from_f64(x) * (-y).exp() - DoubleDouble::ONE
    }
}

pub const LN2: DoubleDouble = DoubleDouble { hi: std::f64::consts::LN_2, lo: 2.319046813846299558e-17 };
pub const TWO_PI: DoubleDouble = DoubleDouble { hi: std::f64::consts::TAU, lo: 2.449293598294706414e-16 };

/// x^{−s} for real x > 0 with the phase t·ln x reduced modulo 2π in
/// double-double, so large |Im s| does not cost phase accuracy.
pub fn pow_neg(x: f64, s: C64) -> C64 {
    if s.im == 0.0 {
        return C64::new(x.powf(-s.re), 0.0);
    }
    let l = DoubleDouble::ln(x);
    let theta = l * DoubleDouble::from_f64(-s.im);
    let k = (theta.hi / TWO_PI.hi).round();
    let reduced = (theta - TWO_PI * DoubleDouble::from_f64(k)).to_f64();
    let mag = (-s.re * l.to_f64()).exp();
    let (sn, cs) = reduced.sin_cos();
    C64::new(mag * cs, mag * sn)
}

impl Neg for DoubleDouble {
    type Output = Self;
    fn neg(self) -> Self {
        DoubleDouble { hi: -self.hi, lo: -self.lo }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let (s, e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (p, e) = two_prod(self.hi, o.hi);
        let e = e + (self.hi * o.lo + self.lo * o.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let q1 = self.hi / o.hi;
        let r = self - o * DoubleDouble::from_f64(q1);
        let q2 = r.hi / o.hi;
        let r = r - o * DoubleDouble::from_f64(q2);
        let q3 = r.hi / o.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo } + DoubleDouble::from_f64(q3)
    }
}

/// Complex number with double-double components.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdComplex {
    pub re: DoubleDouble,
    pub im: DoubleDouble,
}

impl DdComplex {
    pub const ZERO: DdComplex = DdComplex { re: DoubleDouble::ZERO, im: DoubleDouble::ZERO };

    pub fn new(re: DoubleDouble, im: DoubleDouble) -> Self {
        DdComplex { re, im }
    }

    pub fn from_c64(z: C64) -> Self {
        DdComplex::new(DoubleDouble::from_f64(z.re), DoubleDouble::from_f64(z.im))
    }

    pub fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn norm_f64(self) -> f64 {
        self.re.to_f64().hypot(self.im.to_f64())
    }

    pub fn scale(self, r: DoubleDouble) -> Self {
        DdComplex::new(self.re * r, self.im * r)
    }

    pub fn recip(self) -> Self {
        let d = self.re * self.re + self.im * self.im;
        DdComplex::new(self.re / d, -(self.im / d))
    }
}

impl Add for DdComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        DdComplex::new(self.re + o.re, self.im + o.im)
    }
}

impl Mul for DdComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        DdComplex::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }
}
