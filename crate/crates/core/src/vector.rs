//! Small fixed-size vectors, generic over any ring-like element so they carry
//! both plain scalars and [`Jet`](crate::Jet)s.

use std::ops::{Add, Mul, Neg, Sub};

use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2<T> {
    pub x: T,
    pub y: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T> Vec2<T> {
    pub const fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Vec2<U> {
        Vec2::new(f(self.x), f(self.y))
    }
}

impl<T> Vec3<T> {
    pub const fn new(x: T, y: T, z: T) -> Self {
        Self { x, y, z }
    }

    pub fn map<U>(self, mut f: impl FnMut(T) -> U) -> Vec3<U> {
        Vec3::new(f(self.x), f(self.y), f(self.z))
    }
}

impl<T> Vec2<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y
    }

    /// Complex structure: counterclockwise rotation by a right angle.
    pub fn j(self) -> Self {
        Vec2::new(-self.y, self.x)
    }

    pub fn scale(self, k: T) -> Self {
        Vec2::new(self.x * k, self.y * k)
    }

    /// The plane vector embedded in space with the given third component.
    pub fn lift(self, z: T) -> Vec3<T> {
        Vec3::new(self.x, self.y, z)
    }
}

impl<T> Vec3<T>
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T> + Neg<Output = T>,
{
    pub fn dot(self, o: Self) -> T {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Self) -> Self {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn scale(self, k: T) -> Self {
        Vec3::new(self.x * k, self.y * k, self.z * k)
    }

    /// Scalar triple product `⟨self × b, c⟩`.
    pub fn triple(self, b: Self, c: Self) -> T {
        self.cross(b).dot(c)
    }

    pub fn xy(self) -> Vec2<T> {
        Vec2::new(self.x, self.y)
    }
}

impl<S: Scalar> Vec2<S> {
    pub fn norm(self) -> S {
        self.x.hypot(self.y)
    }

    pub fn to_array(self) -> [S; 2] {
        [self.x, self.y]
    }
}

impl<S: Scalar> Vec3<S> {
    pub fn norm(self) -> S {
        self.dot(self).sqrt()
    }

    pub fn to_array(self) -> [S; 3] {
        [self.x, self.y, self.z]
    }

    pub fn max_abs(self) -> S {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }
}

macro_rules! impl_binop {
    ($ty:ident, $tr:ident, $f:ident, $($c:ident),+) => {
        impl<T: $tr<Output = T>> $tr for $ty<T> {
            type Output = Self;
            fn $f(self, o: Self) -> Self {
                $ty { $($c: self.$c.$f(o.$c)),+ }
            }
        }
    };
}

impl_binop!(Vec2, Add, add, x, y);
impl_binop!(Vec2, Sub, sub, x, y);
impl_binop!(Vec3, Add, add, x, y, z);
impl_binop!(Vec3, Sub, sub, x, y, z);

impl<T: Neg<Output = T>> Neg for Vec2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec2::new(-self.x, -self.y)
    }
}

impl<T: Neg<Output = T>> Neg for Vec3<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}
