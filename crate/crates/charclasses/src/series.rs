use exactla::Rational;
use num_traits::{One, Zero};

/// Power series in one variable known modulo `t^order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Rational>,
}

impl Series {
    pub fn new(mut coeffs: Vec<Rational>, order: usize) -> Self {
        coeffs.resize(order, Rational::zero());
        Series { coeffs }
    }

    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        Series { coeffs: (0..order).map(f).collect() }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series::from_fn(order, |k| (0..=k).map(|i| &self.coeffs[i] * &other.coeffs[k - i]).sum())
    }

    /// `None` if the divisor has zero constant term.
    pub fn div(&self, other: &Series) -> Option<Series> {
        if other.coeff(0).is_zero() {
            return None;
        }
        let order = self.order().min(other.order());
        let mut q: Vec<Rational> = Vec::with_capacity(order);
        for k in 0..order {
            let mut c = self.coeffs[k].clone();
            for i in 0..k {
                c -= &q[i] * &other.coeffs[k - i];
            }
            q.push(c / &other.coeffs[0]);
        }
        Some(Series { coeffs: q })
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer(schurstab::partition::factorial(n))
}

fn half_pow(n: usize) -> Rational {
    Rational::new(1.into(), num_traits::pow(exactla::BigInt::from(2), n))
}

/// `cosh(t/2)`.
pub fn cosh_half(order: usize) -> Series {
    Series::from_fn(order, |k| if k % 2 == 0 { half_pow(k) / factorial(k) } else { Rational::zero() })
}

/// `sinh(t/2)`.
pub fn sinh_half(order: usize) -> Series {
    Series::from_fn(order, |k| if k % 2 == 1 { half_pow(k) / factorial(k) } else { Rational::zero() })
}

/// `tanh(t/2)`.
pub fn tanh_half(order: usize) -> Series {
    sinh_half(order).div(&cosh_half(order)).expect("cosh has constant term 1")
}

/// `f(t) = t / tanh(t/2)`, computed as `cosh(t/2) / (sinh(t/2)/t)`.
pub fn f_series(order: usize) -> Series {
    let s = sinh_half(order + 1);
    let sinh_over_t = Series::from_fn(order, |k| s.coeff(k + 1));
    cosh_half(order).div(&sinh_over_t).expect("sinh(t/2)/t has constant term 1/2")
}

/// `t` itself, for identity checks.
pub fn t(order: usize) -> Series {
    Series::from_fn(order, |k| if k == 1 { Rational::one() } else { Rational::zero() })
}
