use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::vector::{Vec2, Vec3};
use crate::Scalar;

/// Highest derivative order a [`Jet`] carries.
pub const MAX_ORDER: usize = 4;

const BINOM: [[u32; MAX_ORDER + 1]; MAX_ORDER + 1] = [
    [1, 0, 0, 0, 0],
    [1, 1, 0, 0, 0],
    [1, 2, 1, 0, 0],
    [1, 3, 3, 1, 0],
    [1, 4, 6, 4, 1],
];

#[inline]
fn binom<S: Scalar>(k: usize, i: usize) -> S {
    S::from_u32(BINOM[k][i]).unwrap()
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_ORDER {
        return Err(Error::OrderOutOfRange { order, max: MAX_ORDER });
    }
    Ok(())
}

/// Values `g(t₀), g'(t₀), …, g⁽ᵒʳᵈᵉʳ⁾(t₀)` of a scalar function.
///
/// Coefficients are raw derivatives, not Taylor coefficients, so `d(k)` is
/// directly `dᵏg/dtᵏ`. Slots above `order` are kept at zero.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Jet<S> {
    order: usize,
    d: [S; MAX_ORDER + 1],
}

/// Planar vector-valued jet, `(x(t), y(t))`.
pub type Jet2<S> = Vec2<Jet<S>>;
/// Spatial vector-valued jet.
pub type Jet3<S> = Vec3<Jet<S>>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum JetFn<S> {
    Sin,
    Cos,
    Sqrt,
    PowConst(S),
}

impl<S: Scalar> Jet<S> {
    fn zeros(order: usize) -> Self {
        Jet { order, d: [S::zero(); MAX_ORDER + 1] }
    }

    pub fn constant(c: S, order: usize) -> Result<Self> {
        check_order(order)?;
        let mut j = Self::zeros(order);
        j.d[0] = c;
        Ok(j)
    }

    /// The identity function `t ↦ t` at `t0`.
    pub fn variable(t0: S, order: usize) -> Result<Self> {
        let mut j = Self::constant(t0, order)?;
        if order >= 1 {
            j.d[1] = S::one();
        }
        Ok(j)
    }

    pub fn from_derivatives(d: &[S]) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::InvalidParameters("empty derivative list".into()));
        }
        let order = d.len() - 1;
        check_order(order)?;
        let mut j = Self::zeros(order);
        j.d[..d.len()].copy_from_slice(d);
        Ok(j)
    }

    /// Constant with the same order as `self`.
    pub fn lift_const(&self, c: S) -> Self {
        let mut j = Self::zeros(self.order);
        j.d[0] = c;
        j
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn derivatives(&self) -> &[S] {
        &self.d[..=self.order]
    }

    #[inline]
    pub fn value(&self) -> S {
        self.d[0]
    }

    /// `k`-th derivative. Panics if `k > order`.
    #[inline]
    pub fn d(&self, k: usize) -> S {
        self.derivatives()[k]
    }

    /// Jet of `g'`, one order lower.
    pub fn derivative(&self) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::OrderOutOfRange { order: 0, max: MAX_ORDER });
        }
        let mut j = Self::zeros(self.order - 1);
        j.d[..self.order].copy_from_slice(&self.d[1..=self.order]);
        Ok(j)
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order {
            return Err(Error::OrderOutOfRange { order, max: self.order });
        }
        let mut j = Self::zeros(order);
        j.d[..=order].copy_from_slice(&self.d[..=order]);
        Ok(j)
    }

    pub fn scale(&self, k: S) -> Self {
        let mut j = *self;
        for c in &mut j.d[..=self.order] {
            *c = *c * k;
        }
        j
    }

    pub fn offset(&self, k: S) -> Self {
        let mut j = *self;
        j.d[0] = j.d[0] + k;
        j
    }

    fn same_order(&self, o: &Self) -> Result<()> {
        if self.order != o.order {
            return Err(Error::OrderMismatch { left: self.order, right: o.order });
        }
        Ok(())
    }

    pub fn arith(&self, op: ArithOp, o: &Self) -> Result<Self> {
        self.same_order(o)?;
        Ok(match op {
            ArithOp::Add => self.zip(o, |a, b| a + b),
            ArithOp::Sub => self.zip(o, |a, b| a - b),
            ArithOp::Mul => self.mul_unchecked(o),
            ArithOp::Div => return self.div_unchecked(o),
        })
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        self.arith(ArithOp::Div, o)
    }

    pub fn recip(&self) -> Result<Self> {
        self.lift_const(S::one()).div_unchecked(self)
    }

    fn zip(&self, o: &Self, f: impl Fn(S, S) -> S) -> Self {
        let mut j = Self::zeros(self.order);
        for k in 0..=self.order {
            j.d[k] = f(self.d[k], o.d[k]);
        }
        j
    }

    fn mul_unchecked(&self, o: &Self) -> Self {
        let mut j = Self::zeros(self.order);
        for k in 0..=self.order {
            let mut acc = S::zero();
            for i in 0..=k {
                acc = acc + binom::<S>(k, i) * self.d[i] * o.d[k - i];
            }
            j.d[k] = acc;
        }
        j
    }

    // q·g = f, solved for q order by order.
    fn div_unchecked(&self, g: &Self) -> Result<Self> {
        let g0 = g.d[0];
        if g0 == S::zero() {
            return Err(Error::DivisionByZero);
        }
        let mut q = Self::zeros(self.order);
        for k in 0..=self.order {
            let mut acc = self.d[k];
            for i in 0..k {
                acc = acc - binom::<S>(k, i) * q.d[i] * g.d[k - i];
            }
            q.d[k] = acc / g0;
        }
        Ok(q)
    }

    pub fn sqrt(&self) -> Result<Self> {
        let g0 = self.d[0];
        if !(g0 > S::zero()) {
            return Err(Error::Domain { op: "sqrt", value: g0.as_f64() });
        }
        let mut s = Self::zeros(self.order);
        s.d[0] = g0.sqrt();
        let two_s0 = s.d[0] + s.d[0];
        for k in 1..=self.order {
            let mut acc = self.d[k];
            for i in 1..k {
                acc = acc - binom::<S>(k, i) * s.d[i] * s.d[k - i];
            }
            s.d[k] = acc / two_s0;
        }
        Ok(s)
    }

    /// `(sin u, cos u)` using `s' = c·u'` and `c' = −s·u'`.
    pub fn sin_cos(&self) -> (Self, Self) {
        let mut s = Self::zeros(self.order);
        let mut c = Self::zeros(self.order);
        let (s0, c0) = self.d[0].sin_cos();
        s.d[0] = s0;
        c.d[0] = c0;
        for k in 1..=self.order {
            let mut ds = S::zero();
            let mut dc = S::zero();
            for i in 0..k {
                let w = binom::<S>(k - 1, i) * self.d[k - i];
                ds = ds + w * c.d[i];
                dc = dc - w * s.d[i];
            }
            s.d[k] = ds;
            c.d[k] = dc;
        }
        (s, c)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.powi(-n)?.recip();
        }
        let mut acc = self.lift_const(S::one());
        let mut base = *self;
        let mut e = n as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// `u^p` for a constant real exponent. Integer exponents go through
    /// [`powi`](Self::powi); otherwise the value part must be positive.
    pub fn powf(&self, p: S) -> Result<Self> {
        if p.fract() == S::zero() && p.abs() <= S::lit(i32::MAX as f64) {
            return self.powi(p.to_i32().unwrap());
        }
        let u0 = self.d[0];
        if !(u0 > S::zero()) {
            return Err(Error::Domain { op: "pow", value: u0.as_f64() });
        }
        // u·y' = p·y·u'
        let mut y = Self::zeros(self.order);
        y.d[0] = u0.powf(p);
        for k in 1..=self.order {
            let mut acc = S::zero();
            for i in 0..k {
                acc = acc + p * binom::<S>(k - 1, i) * y.d[i] * self.d[k - i];
            }
            for i in 1..k {
                acc = acc - binom::<S>(k - 1, i) * self.d[i] * y.d[k - i];
            }
            y.d[k] = acc / u0;
        }
        Ok(y)
    }

    pub fn apply(&self, f: JetFn<S>) -> Result<Self> {
        match f {
            JetFn::Sin => Ok(self.sin()),
            JetFn::Cos => Ok(self.cos()),
            JetFn::Sqrt => self.sqrt(),
            JetFn::PowConst(p) => self.powf(p),
        }
    }

    /// True if every coefficient is finite.
    pub fn is_finite(&self) -> bool {
        self.derivatives().iter().all(|c| c.is_finite())
    }
}

impl<S: Scalar> Add for Jet<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.order, o.order, "jet order mismatch");
        self.zip(&o, |a, b| a + b)
    }
}

impl<S: Scalar> Sub for Jet<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        assert_eq!(self.order, o.order, "jet order mismatch");
        self.zip(&o, |a, b| a - b)
    }
}

impl<S: Scalar> Mul for Jet<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.order, o.order, "jet order mismatch");
        self.mul_unchecked(&o)
    }
}

impl<S: Scalar> Neg for Jet<S> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-S::one())
    }
}

impl<S: Scalar> Vec2<Jet<S>> {
    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn value(&self) -> Vec2<S> {
        self.nth(0)
    }

    pub fn nth(&self, k: usize) -> Vec2<S> {
        Vec2::new(self.x.d(k), self.y.d(k))
    }

    pub fn derivative(&self) -> Result<Self> {
        Ok(Vec2::new(self.x.derivative()?, self.y.derivative()?))
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Ok(Vec2::new(self.x.truncate(order)?, self.y.truncate(order)?))
    }
}

impl<S: Scalar> Vec3<Jet<S>> {
    pub fn order(&self) -> usize {
        self.x.order()
    }

    pub fn value(&self) -> Vec3<S> {
        self.nth(0)
    }

    pub fn nth(&self, k: usize) -> Vec3<S> {
        Vec3::new(self.x.d(k), self.y.d(k), self.z.d(k))
    }

    pub fn derivative(&self) -> Result<Self> {
        Ok(Vec3::new(self.x.derivative()?, self.y.derivative()?, self.z.derivative()?))
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        Ok(Vec3::new(
            self.x.truncate(order)?,
            self.y.truncate(order)?,
            self.z.truncate(order)?,
        ))
    }
}
