//! Closed-form reduced density matrices and partial-transpose spectra.
//!
//! Each matrix element is one function of the field `h`, so ρ(−h) partners
//! are the same function at the reversed field. Z comes from the closed-form
//! partition function, never from the numeric spectrum.

use crate::analytic_spectrum::partition_function_closed;
use crate::eigensolve::{eig2_closed, eig3_trig};
use crate::error::{Error, Result};
use crate::negativity::PairLabel;
use crate::spin_algebra::{ModelParams, SymMatrix};
use crate::thermal::{ReducedDensityMatrix, BETA_MAX};

/// Field-independent Boltzmann factors shared by every element.
struct Ctx {
    b: f64,
    j: f64,
    j1: f64,
    pre: f64,
    a_: f64,
    b_: f64,
    c_: f64,
    d_: f64,
    e_: f64,
    f_: f64,
}

impl Ctx {
    fn new(p: &ModelParams, beta: f64) -> Self {
        let (j, j1) = (p.j, p.j1);
        let e = |x: f64| (-beta * x).exp();
        let z = partition_function_closed(p, beta);
        Ctx {
            b: beta,
            j,
            j1,
            pre: (0.25 * beta * j1).exp() / z,
            a_: e(j - 0.5 * j1),
            b_: e(j + 2.5 * j1),
            c_: e(-0.5 * j + j1),
            d_: e(-2.0 * j + 0.5 * j1),
            e_: e(j - 2.5 * j1),
            f_: e(-0.5 * j - j1),
        }
    }

    /// exp(−βx).
    fn e(&self, x: f64) -> f64 {
        (-self.b * x).exp()
    }

    /// exp(kβh).
    fn x(&self, k: f64, h: f64) -> f64 {
        (k * self.b * h).exp()
    }

    fn ch(&self, h: f64) -> f64 {
        (0.5 * self.b * h).cosh()
    }

    fn sh(&self, h: f64) -> f64 {
        (0.5 * self.b * h).sinh()
    }

    fn cosh(&self, x: f64) -> f64 {
        (self.b * x).cosh()
    }

    fn sinh(&self, x: f64) -> f64 {
        (self.b * x).sinh()
    }

    /// 5e(−J/2−2J₁)(u·cosh(3β(J−J₁)/2) + v·sinh(3β(J−J₁)/2)).
    fn mixed_tail(&self, u: f64, v: f64) -> f64 {
        let w = 1.5 * (self.j - self.j1);
        5.0 * self.e(-0.5 * self.j - 2.0 * self.j1) * (u * self.cosh(w) + v * self.sinh(w))
    }
}

// S₁|S₂, basis |S₁ᶻ,S₂ᶻ⟩.

fn b_rho11(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc) = (c.a_, c.b_, c.c_);
    let (j, j1) = (c.j, c.j1);
    let w = 0.75 * (j - j1);
    c.pre / 45.0
        * (c.ch(h) * c.x(2.5, h) * 54.0 * b
            + c.ch(h) * c.x(1.5, h) * (30.0 * a + 9.0 * b + 75.0 * cc)
            + c.sh(h) * c.x(2.5, h) * 36.0 * b
            + c.sh(h) * c.x(1.5, h) * (3.0 * b + 45.0 * cc)
            + 5.0 * c.e(-1.25 * j - 0.25 * j1) * c.x(1.0, h) * (5.0 * c.cosh(w) + 3.0 * c.sinh(w))
            - c.e(j - 1.5 * j1) * c.x(1.0, h) * (13.0 * c.cosh(j1) - 17.0 * c.sinh(j1)))
}

fn b_rho22(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    c.pre / 90.0
        * (c.ch(h) * c.x(1.5, h) * (45.0 * a + 42.0 * b + 50.0 * cc)
            + c.ch(h) * c.x(0.5, h) * (30.0 * d + 20.0 * a + 21.0 * b + 27.0 * e + 50.0 * cc + 60.0 * f)
            + c.sh(h) * c.x(1.5, h) * (15.0 * a + 18.0 * b + 10.0 * cc)
            + c.sh(h) * c.x(0.5, h) * (10.0 * d + 10.0 * a + 3.0 * b + 25.0 * e + 10.0 * f)
            + c.mixed_tail(3.0, 1.0))
}

fn b_rho33(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, e, f) = (c.a_, c.b_, c.c_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 90.0
        * (ch * ch * (55.0 * a + 21.0 * b + 59.0 * e + 50.0 * cc + 110.0 * f)
            + sh * sh * (5.0 * a + 3.0 * b - 23.0 * e + 10.0 * cc + 70.0 * f)
            + c.mixed_tail(7.0, -3.0)
            + 10.0 * c.e(-2.0 * c.j) * (3.0 * c.cosh(0.5 * c.j1) - c.sinh(0.5 * c.j1)))
}

fn b_rho55(c: &Ctx, h: f64) -> f64 {
    let (b, cc, d, e, f) = (c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    c.pre / 45.0
        * (ch * ch * (15.0 * d + 42.0 * b + 18.0 * e + 50.0 * cc + 30.0 * f)
            + sh * sh * (5.0 * d + 6.0 * b + 14.0 * e + 10.0 * cc - 10.0 * f)
            + 5.0 * c.e(j - 2.0 * j1) * (3.0 * c.cosh(1.5 * j1) - c.sinh(1.5 * j1))
            + 10.0 * c.e(-0.5 * j - 2.0 * j1) * c.cosh(1.5 * (j - j1)))
}

fn b_rho24(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, e, f) = (c.a_, c.b_, c.c_, c.e_, c.f_);
    let (j, j1) = (c.j, c.j1);
    c.pre / 90.0
        * (c.ch(h) * c.x(1.5, h) * 42.0 * b - 35.0 * c.cosh(h) * c.x(1.0, h) * a
            + c.ch(h) * c.x(0.5, h) * (21.0 * b - 23.0 * e + 50.0 * cc - 50.0 * f)
            + c.sh(h) * c.x(1.5, h) * 18.0 * b
            - 25.0 * c.sinh(h) * c.x(1.0, h) * a
            + c.sh(h) * c.x(0.5, h) * (3.0 * b - 25.0 * e + 10.0 * cc - 10.0 * f)
            + 5.0 * c.e(-2.0 * j) * (c.cosh(0.5 * j1) - 5.0 * c.sinh(0.5 * j1))
            - 10.0 * c.e(-0.5 * j - 1.5 * j1) * c.cosh(0.5 * (3.0 * j - 4.0 * j1)))
}

fn b_rho35(c: &Ctx, h: f64) -> f64 {
    let (b, cc, e, f) = (c.b_, c.c_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    c.pre / 45.0
        * (ch * ch * (21.0 * b - 16.0 * e + 25.0 * cc - 25.0 * f) + sh * sh * (3.0 * b - 8.0 * e + 5.0 * cc - 5.0 * f)
            - 10.0 * c.sinh(0.5 * j1) * c.e(-2.0 * j)
            - 5.0 * c.e(j - 2.0 * j1) * (c.cosh(1.5 * j1) + 3.0 * c.sinh(1.5 * j1)))
}

fn b_rho37(c: &Ctx, h: f64) -> f64 {
    let (a, b, e) = (c.a_, c.b_, c.e_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    c.pre / 30.0
        * (ch * ch * (-15.0 * a + 7.0 * b)
            + sh * sh * (-5.0 * a + b + 12.0 * e)
            + 2.0 * c.e(j - 3.0 * j1) * (4.0 * c.cosh(0.5 * j1) + c.sinh(0.5 * j1)))
}

fn rdm_s1s2(c: &Ctx, h: f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(9);
    m.set(0, 0, b_rho11(c, h));
    m.set(8, 8, b_rho11(c, -h));
    m.set(1, 1, b_rho22(c, h));
    m.set(3, 3, b_rho22(c, h));
    m.set(5, 5, b_rho22(c, -h));
    m.set(7, 7, b_rho22(c, -h));
    m.set(2, 2, b_rho33(c, h));
    m.set(6, 6, b_rho33(c, h));
    m.set(4, 4, b_rho55(c, h));
    m.set(1, 3, b_rho24(c, h));
    m.set(5, 7, b_rho24(c, -h));
    m.set(2, 4, b_rho35(c, h));
    m.set(4, 6, b_rho35(c, h));
    m.set(2, 6, b_rho37(c, h));
    m
}

// μ₁|μ₂, basis |μ₁ᶻ,μ₂ᶻ⟩.

fn c_rho11(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 90.0
        * (ch * c.x(2.5, h) * 150.0 * b
            + 15.0 * ch * c.x(1.5, h) * (5.0 * a + 8.0 * cc)
            + 5.0 * ch * c.x(0.5, h) * (4.0 * d + 5.0 * a + 9.0 * b + 7.0 * e + 25.0 * f)
            + 5.0 * ch * c.x(-0.5, h) * (10.0 * d + 3.0 * b + e + 16.0 * cc + 7.0 * f)
            + sh * c.x(2.5, h) * 30.0 * b
            + sh * c.x(1.5, h) * 45.0 * a
            + sh * c.x(0.5, h) * (5.0 * a + 27.0 * b + 33.0 * e + 75.0 * f)
            + sh * c.x(-0.5, h) * (-30.0 * d + 3.0 * b - 3.0 * e + 20.0 * cc + 15.0 * f)
            + 2.0 * c.mixed_tail(3.0, 1.0))
}

fn c_rho22(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 90.0
        * (3.0 * ch * c.cosh(1.5 * h) * (20.0 * a + 18.0 * b + 55.0 * cc)
            + ch * ch * (65.0 * d + 65.0 * a + 51.0 * b + 95.0 * e + 85.0 * cc + 110.0 * f)
            + 3.0 * sh * c.sinh(1.5 * h) * (2.0 * b + 25.0 * cc)
            + sh * sh * (15.0 * d - 5.0 * a - 3.0 * b + 9.0 * e + 5.0 * cc + 30.0 * f)
            + 2.0 * c.mixed_tail(6.0, -1.0))
}

fn c_rho23(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, e, f) = (c.a_, c.b_, c.c_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    c.pre / 90.0
        * (10.0 * ch * c.cosh(1.5 * h) * (-5.0 * a + 6.0 * b)
            + ch * ch * (25.0 * a + 45.0 * b - 55.0 * e - 50.0 * cc + 50.0 * f)
            - 10.0 * sh * c.sinh(1.5 * h) * a
            + sh * sh * (15.0 * a - 9.0 * b - 41.0 * e - 10.0 * cc + 10.0 * f)
            - c.mixed_tail(7.0, -5.0)
            + 10.0 * c.e(-0.5 * j - 1.5 * j1) * c.cosh(0.5 * (3.0 * j - 4.0 * j1)))
}

fn rdm_mu1mu2(c: &Ctx, h: f64) -> SymMatrix {
    let mut m = SymMatrix::zeros(4);
    m.set(0, 0, c_rho11(c, h));
    m.set(3, 3, c_rho11(c, -h));
    m.set(1, 1, c_rho22(c, h));
    m.set(2, 2, c_rho22(c, h));
    m.set(1, 2, c_rho23(c, h));
    m
}

// μ₁|S₁, basis |μ₁ᶻ,S₁ᶻ⟩.

fn d_rho11(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, e, f) = (c.a_, c.b_, c.c_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    c.pre / 20.0
        * (ch * c.x(2.5, h) * 30.0 * b
            + 5.0 * ch * c.x(1.5, h) * (3.0 * a + 5.0 * cc)
            + 5.0 * ch * c.x(0.5, h) * (2.0 * a + b + 3.0 * e + 4.0 * f)
            + sh * c.x(2.5, h) * 10.0 * b
            + 5.0 * sh * c.x(1.5, h) * (a + 3.0 * cc)
            + sh * c.x(0.5, h) * (3.0 * b - 3.0 * e + 10.0 * f)
            - 10.0 * c.e(0.25 * j - 2.25 * j1) * c.sinh(0.25 * (3.0 * j - 5.0 * j1)))
}

fn d_rho22(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 60.0
        * (ch * c.x(1.5, h) * (30.0 * a + 44.0 * b + 65.0 * cc)
            + ch * c.x(0.5, h) * (30.0 * d - 20.0 * a + 17.0 * e + 30.0 * f)
            + ch * c.x(-0.5, h) * (40.0 * a + 26.0 * b + 13.0 * e + 35.0 * cc + 30.0 * f)
            + sh * c.x(1.5, h) * (10.0 * a - 4.0 * b - 25.0 * cc)
            + sh * c.x(0.5, h) * (10.0 * d + 15.0 * e)
            + sh * c.x(-0.5, h) * (10.0 * b - 11.0 * e + 25.0 * cc)
            + 4.0 * c.mixed_tail(1.0, 0.0))
}

fn d_rho44(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 60.0
        * (ch * c.x(1.5, h) * (20.0 * a + 22.0 * b + 85.0 * cc)
            + ch * c.x(0.5, h) * (60.0 * d - 15.0 * a + 14.0 * e + 30.0 * f)
            + ch * c.x(-0.5, h) * (20.0 * a + 13.0 * b + e + 40.0 * cc + 45.0 * f)
            - sh * c.x(1.5, h) * (2.0 * b + 5.0 * cc)
            + sh * c.x(0.5, h) * (20.0 * d - 5.0 * a + 2.0 * e)
            + sh * c.x(-0.5, h) * (5.0 * b - 11.0 * e + 20.0 * cc - 15.0 * f)
            + c.mixed_tail(5.0, 3.0))
}

fn d_rho24(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    2f64.sqrt() * c.pre / 60.0
        * (ch * c.x(1.5, h) * (20.0 * a + 22.0 * b - 30.0 * cc)
            + ch * c.x(0.5, h) * (-15.0 * a - 30.0 * d + 14.0 * e + 20.0 * cc)
            + ch * c.x(-0.5, h) * (20.0 * a + 13.0 * b + e - 15.0 * cc - 30.0 * f)
            - 2.0 * sh * c.x(1.5, h) * (b + 5.0 * cc)
            + sh * c.x(0.5, h) * (-5.0 * a - 10.0 * d + 2.0 * e)
            + sh * c.x(-0.5, h) * (5.0 * b - 11.0 * e - 5.0 * cc)
            + 2.0 * c.mixed_tail(1.0, 0.0)
            - 30.0 * c.e(-1.25 * j - 0.75 * j1) * c.sinh(0.25 * (3.0 * j - j1)))
}

// μ₁|S₂, basis |μ₁ᶻ,S₂ᶻ⟩.

fn e_rho11(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 180.0
        * (ch * c.x(2.5, h) * 270.0 * b
            + 5.0 * ch * c.x(1.5, h) * (23.0 * a + 49.0 * cc)
            + 5.0 * ch * c.x(0.5, h) * (16.0 * d + 2.0 * a + 9.0 * b + 7.0 * e + 16.0 * cc + 31.0 * f)
            + sh * c.x(2.5, h) * 90.0 * b
            + 5.0 * sh * c.x(1.5, h) * (23.0 * cc + 13.0 * a)
            + 3.0 * sh * c.x(0.5, h) * (9.0 * b + 11.0 * e + 25.0 * f)
            + c.mixed_tail(9.0, 7.0))
}

fn e_rho22(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 180.0
        * (3.0 * ch * c.x(1.5, h) * (30.0 * a + 44.0 * b + 45.0 * cc)
            + 2.0 * ch * c.x(0.5, h) * (15.0 * d + 30.0 * a + 36.0 * e + 65.0 * f)
            + ch * c.x(-0.5, h) * (60.0 * d + 78.0 * b + 18.0 * e + 165.0 * cc + 50.0 * f)
            + 3.0 * sh * c.x(1.5, h) * (10.0 * a - 4.0 * b - 5.0 * cc)
            + 2.0 * sh * c.x(0.5, h) * (5.0 * d + 32.0 * e)
            + sh * c.x(-0.5, h) * (-20.0 * d + 30.0 * b - 14.0 * e + 15.0 * cc)
            + 12.0 * c.mixed_tail(1.0, 0.0))
}

fn e_rho44(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, d, e, f) = (c.a_, c.b_, c.c_, c.d_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    c.pre / 180.0
        * (3.0 * ch * c.x(1.5, h) * (30.0 * a + 22.0 * b + 65.0 * cc)
            + ch * c.x(0.5, h) * (100.0 * d + 109.0 * e + 86.0 * f)
            + ch * c.x(-0.5, h) * (85.0 * a + 39.0 * b + 36.0 * e + 80.0 * cc + 119.0 * f)
            - 3.0 * sh * c.x(1.5, h) * (10.0 * a + 2.0 * b - 15.0 * cc)
            - sh * c.x(0.5, h) * (-60.0 * d + 21.0 * e - 44.0 * f)
            - sh * c.x(-0.5, h) * (-25.0 * a - 15.0 * b - 20.0 * cc + 61.0 * f)
            + c.mixed_tail(15.0, -7.0))
}

fn e_rho24(c: &Ctx, h: f64) -> f64 {
    let (a, b, cc, e, f) = (c.a_, c.b_, c.c_, c.e_, c.f_);
    let (ch, sh) = (c.ch(h), c.sh(h));
    let (j, j1) = (c.j, c.j1);
    let w = 0.5 * (3.0 * j - 4.0 * j1);
    2f64.sqrt() * c.pre / 180.0
        * (ch * c.x(1.5, h) * 66.0 * b - 25.0 * c.cosh(h) * c.x(1.0, h) * a - 39.0 * ch * c.x(0.5, h) * e
            + ch * c.x(-0.5, h) * (39.0 * b - 16.0 * e + 25.0 * cc - 25.0 * f)
            - 6.0 * sh * c.x(1.5, h) * b
            - 35.0 * c.sinh(h) * c.x(1.0, h) * a
            - 33.0 * sh * c.x(0.5, h) * e
            + sh * c.x(-0.5, h) * (15.0 * b + 8.0 * e - 5.0 * cc + 5.0 * f)
            + c.mixed_tail(3.0, 1.0)
            - 20.0 * c.e(-0.5 * j - 1.5 * j1) * (2.0 * c.cosh(w) - c.sinh(w)))
}

/// Shared 6×6 pattern of the two μ–S pairs.
fn rdm_mu_s(
    c: &Ctx,
    h: f64,
    r11: fn(&Ctx, f64) -> f64,
    r22: fn(&Ctx, f64) -> f64,
    r44: fn(&Ctx, f64) -> f64,
    r24: fn(&Ctx, f64) -> f64,
) -> SymMatrix {
    let mut m = SymMatrix::zeros(6);
    m.set(0, 0, r11(c, h));
    m.set(5, 5, r11(c, -h));
    m.set(1, 1, r22(c, h));
    m.set(4, 4, r22(c, -h));
    m.set(3, 3, r44(c, h));
    m.set(2, 2, r44(c, -h));
    m.set(1, 3, r24(c, h));
    m.set(2, 4, r24(c, -h));
    m
}

fn check_beta(beta: f64) -> Result<()> {
    if (0.0..=BETA_MAX).contains(&beta) {
        Ok(())
    } else {
        Err(Error::BetaOutOfRange(beta))
    }
}

/// Reduced density matrix of `pair` in the Gibbs state, from the closed forms.
pub fn rdm_closed(pair: PairLabel, p: &ModelParams, beta: f64) -> Result<ReducedDensityMatrix> {
    p.validate()?;
    check_beta(beta)?;
    let c = Ctx::new(p, beta);
    let h = p.h;
    let matrix = match pair {
        PairLabel::S1S2 => rdm_s1s2(&c, h),
        PairLabel::Mu1Mu2 => rdm_mu1mu2(&c, h),
        PairLabel::Mu1S1 => rdm_mu_s(&c, h, d_rho11, d_rho22, d_rho44, d_rho24),
        PairLabel::Mu1S2 => rdm_mu_s(&c, h, e_rho11, e_rho22, e_rho44, e_rho24),
    };
    Ok(ReducedDensityMatrix { pair, matrix })
}

fn push2(out: &mut Vec<f64>, x: f64, y: f64, uv: f64) -> Result<()> {
    let (lo, hi) = eig2_closed(x, y, uv)?;
    out.push(lo);
    out.push(hi);
    Ok(())
}

/// Eigenvalues of the partial transpose over the first subsystem, ascending.
///
/// Diagonal pass-throughs, 2×2 blocks by [`eig2_closed`] and, for S₁|S₂,
/// the 3×3 block by [`eig3_trig`].
pub fn pt_spectrum_closed(pair: PairLabel, p: &ModelParams, beta: f64) -> Result<Vec<f64>> {
    let m = rdm_closed(pair, p, beta)?.matrix;
    let r = |i: usize, j: usize| m[(i, j)];
    let mut out = Vec::with_capacity(9);
    match pair {
        PairLabel::S1S2 => {
            out.push(r(2, 2));
            out.push(r(6, 6));
            push2(&mut out, r(1, 1), r(5, 5), r(2, 4) * r(4, 2))?;
            push2(&mut out, r(3, 3), r(7, 7), r(4, 6) * r(6, 4))?;
            let block = [[r(0, 0), r(1, 3), r(2, 6)], [r(3, 1), r(4, 4), r(5, 7)], [r(6, 2), r(7, 5), r(8, 8)]];
            out.extend(eig3_trig(&block));
        }
        PairLabel::Mu1Mu2 => {
            out.push(r(2, 2));
            out.push(r(1, 1));
            push2(&mut out, r(0, 0), r(3, 3), r(1, 2) * r(2, 1))?;
        }
        PairLabel::Mu1S1 | PairLabel::Mu1S2 => {
            out.push(r(2, 2));
            out.push(r(3, 3));
            push2(&mut out, r(0, 0), r(4, 4), r(1, 3) * r(3, 1))?;
            push2(&mut out, r(1, 1), r(5, 5), r(2, 4) * r(4, 2))?;
        }
    }
    out.sort_by(f64::total_cmp);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigensolve::eigvalsh;
    use crate::negativity::{negativity_from_spectrum, partial_transpose, Path, Side};
    use crate::thermal::{gibbs_state, partial_trace};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pinned_points() -> Vec<(ModelParams, f64)> {
        let mut rng = ChaCha8Rng::seed_from_u64(0x7e7a);
        (0..50)
            .map(|_| {
                let p = ModelParams::new(1.0, rng.gen_range(0.0..3.0), rng.gen_range(0.0..4.0)).unwrap();
                (p, 1.0 / rng.gen_range(0.02..5.0))
            })
            .collect()
    }

    /// Element-by-element comparison with the numeric partial trace.
    fn transcription(pair: PairLabel) {
        for (p, beta) in pinned_points() {
            let num = partial_trace(&gibbs_state(&p, beta).unwrap(), pair).matrix;
            let closed = rdm_closed(pair, &p, beta).unwrap().matrix;
            let n = num.n();
            for r in 0..n {
                for c in r..n {
                    let d = (num[(r, c)] - closed[(r, c)]).abs();
                    assert!(d < 1e-10, "{pair} element ({}, {}) off by {d:e} at {p:?}, beta {beta}", r + 1, c + 1);
                }
            }
        }
    }

    #[test]
    fn transcription_s1s2() {
        transcription(PairLabel::S1S2);
    }

    #[test]
    fn transcription_mu1mu2() {
        transcription(PairLabel::Mu1Mu2);
    }

    #[test]
    fn transcription_mu1s1() {
        transcription(PairLabel::Mu1S1);
    }

    #[test]
    fn transcription_mu1s2() {
        transcription(PairLabel::Mu1S2);
    }

    #[test]
    fn pt_spectra_match_numeric() {
        for (p, beta) in pinned_points() {
            for pair in PairLabel::ALL {
                let closed = pt_spectrum_closed(pair, &p, beta).unwrap();
                let rho = partial_trace(&gibbs_state(&p, beta).unwrap(), pair);
                let num = eigvalsh(&partial_transpose(&rho, Side::First)).unwrap();
                for (a, b) in closed.iter().zip(&num) {
                    assert!((a - b).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn high_temperature_limit() {
        let p = ModelParams::new(1.0, 0.8, 1.3).unwrap();
        for pair in PairLabel::ALL {
            let (da, db) = pair.dims();
            let m = rdm_closed(pair, &p, 1e-9).unwrap().matrix;
            assert!(m.max_abs_diff(&SymMatrix::identity(da * db).scaled(1.0 / (da * db) as f64)) < 1e-8);
            for l in pt_spectrum_closed(pair, &p, 1e-9).unwrap() {
                assert!((l - 1.0 / (da * db) as f64).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn traces_are_one() {
        for (p, beta) in pinned_points() {
            for pair in PairLabel::ALL {
                assert!((rdm_closed(pair, &p, beta).unwrap().matrix.trace() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mirrored_relations() {
        // ρ(−h) partners read two ways: as the mirrored element function and
        // as the spin-flipped entry of the matrix at −h.
        let p = ModelParams::new(1.0, 1.1, 0.9).unwrap();
        let beta = 1.7;
        for pair in PairLabel::ALL {
            let up = rdm_closed(pair, &p, beta).unwrap().matrix;
            let down = rdm_closed(pair, &p.with_h(-p.h), beta).unwrap().matrix;
            let n = up.n();
            for r in 0..n {
                for c in 0..n {
                    assert!((up[(r, c)] - down[(n - 1 - r, n - 1 - c)]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn weak_limit_cold_mu1s1() {
        let p = ModelParams::new(1.0, 0.5, 0.2).unwrap();
        let spec = pt_spectrum_closed(PairLabel::Mu1S1, &p, 50.0).unwrap();
        let n = negativity_from_spectrum(PairLabel::Mu1S1, &spec, Path::ClosedForm).value;
        assert!((n - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_out_of_range_beta() {
        let p = ModelParams::new(1.0, 0.5, 0.2).unwrap();
        assert!(rdm_closed(PairLabel::S1S2, &p, -1.0).is_err());
        assert!(rdm_closed(PairLabel::S1S2, &p, f64::NAN).is_err());
        assert!(rdm_closed(PairLabel::S1S2, &p, 2.0 * BETA_MAX).is_err());
    }
}
