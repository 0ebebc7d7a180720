//! Shared test oracles.
#![allow(dead_code)]

use astro_float::{BigFloat, RoundingMode};
use prandtl_modes::Complex64;

const PREC: usize = 320;
const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone)]
struct Big {
    re: BigFloat,
    im: BigFloat,
}

impl Big {
    fn from(z: Complex64) -> Self {
        Big { re: BigFloat::from_f64(z.re, PREC), im: BigFloat::from_f64(z.im, PREC) }
    }

    fn add(&self, o: &Big) -> Big {
        Big { re: self.re.add(&o.re, PREC, RM), im: self.im.add(&o.im, PREC, RM) }
    }

    fn sub(&self, o: &Big) -> Big {
        Big { re: self.re.sub(&o.re, PREC, RM), im: self.im.sub(&o.im, PREC, RM) }
    }

    fn mul(&self, o: &Big) -> Big {
        let re = self.re.mul(&o.re, PREC, RM).sub(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.re.mul(&o.im, PREC, RM).add(&self.im.mul(&o.re, PREC, RM), PREC, RM);
        Big { re, im }
    }

    fn div(&self, o: &Big) -> Big {
        let den = o.re.mul(&o.re, PREC, RM).add(&o.im.mul(&o.im, PREC, RM), PREC, RM);
        let re = self.re.mul(&o.re, PREC, RM).add(&self.im.mul(&o.im, PREC, RM), PREC, RM);
        let im = self.im.mul(&o.re, PREC, RM).sub(&self.re.mul(&o.im, PREC, RM), PREC, RM);
        Big { re: re.div(&den, PREC, RM), im: im.div(&den, PREC, RM) }
    }

    fn to_c64(&self) -> Complex64 {
        let f = |x: &BigFloat| if x.is_zero() { 0.0 } else { x.to_string().parse::<f64>().expect("decimal") };
        Complex64::new(f(&self.re), f(&self.im))
    }
}

fn taylor_terms(a: &Big, c: &Big, zeta: &Big, n: usize) -> Big {
    let mut term = Big::from(Complex64::new(1.0, 0.0));
    let mut sum = term.clone();
    for k in 0..n {
        let kk = Big::from(Complex64::new(k as f64, 0.0));
        let k1 = Big::from(Complex64::new((k + 1) as f64, 0.0));
        term = term.mul(&a.add(&kk)).div(&c.add(&kk)).mul(zeta).div(&k1);
        sum = sum.add(&term);
    }
    sum
}

/// Kummer's `M` by its Taylor series in 320-bit arithmetic, doubling the
/// term count until two successive sums agree to about 1e-30.
pub fn kummer_reference(a: Complex64, c: Complex64, zeta: Complex64) -> Complex64 {
    let (a, c, z) = (Big::from(a), Big::from(c), Big::from(zeta));
    let mut n = 32;
    let mut prev = taylor_terms(&a, &c, &z, n);
    loop {
        n *= 2;
        let next = taylor_terms(&a, &c, &z, n);
        let d = next.sub(&prev).to_c64().norm();
        let s = next.to_c64().norm();
        if d <= 1e-30 * s.max(1e-300) || n >= 4096 {
            return next.to_c64();
        }
        prev = next;
    }
}
