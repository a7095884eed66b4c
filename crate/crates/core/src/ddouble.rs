//! Minimal double-double arithmetic (about 32 significant digits) for the
//! alternating hypergeometric sum, whose terms can exceed the result by
//! many orders of magnitude.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct DD {
    hi: f64,
    lo: f64,
}

fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

impl DD {
    pub const ZERO: DD = DD { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let r = self - DD::from_f64(q1) * DD::from_f64(b);
        let q2 = r.hi / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo }
    }
}

impl Add for DD {
    type Output = DD;
    fn add(self, rhs: DD) -> DD {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DD { hi, lo }
    }
}

impl Neg for DD {
    type Output = DD;
    fn neg(self) -> DD {
        DD {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for DD {
    type Output = DD;
    fn sub(self, rhs: DD) -> DD {
        self + (-rhs)
    }
}

impl Mul for DD {
    type Output = DD;
    fn mul(self, rhs: DD) -> DD {
        let p = self.hi * rhs.hi;
        let e = self.hi.mul_add(rhs.hi, -p) + (self.hi * rhs.lo + self.lo * rhs.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DD { hi, lo }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct Cdd {
    pub re: DD,
    pub im: DD,
}

impl Cdd {
    pub const ZERO: Cdd = Cdd {
        re: DD::ZERO,
        im: DD::ZERO,
    };

    pub fn from_c64(z: Complex64) -> Self {
        Self {
            re: DD::from_f64(z.re),
            im: DD::from_f64(z.im),
        }
    }

    pub fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(self, k: DD) -> Self {
        Self {
            re: self.re * k,
            im: self.im * k,
        }
    }

    pub fn div_f64(self, b: f64) -> Self {
        Self {
            re: self.re.div_f64(b),
            im: self.im.div_f64(b),
        }
    }

    pub fn add_f64(self, b: f64) -> Self {
        Self {
            re: self.re + DD::from_f64(b),
            im: self.im,
        }
    }
}

impl Add for Cdd {
    type Output = Cdd;
    fn add(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re + rhs.re,
            im: self.im + rhs.im,
        }
    }
}

impl Mul for Cdd {
    type Output = Cdd;
    fn mul(self, rhs: Cdd) -> Cdd {
        Cdd {
            re: self.re * rhs.re - self.im * rhs.im,
            im: self.re * rhs.im + self.im * rhs.re,
        }
    }
}
