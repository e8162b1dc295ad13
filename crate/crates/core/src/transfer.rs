//! The transfer map (sum over all orientations) fused with the invariant
//! `g(L) = (-1)^{com L} a^{fr L}` of framed oriented links.
//!
//! For a vertically framed diagram the framing number of an orientation is
//! its writhe, so `gτ(D) = (-1)^{com} Σ_o a^{writhe(D, o)}`. The formal sum
//! of oriented links is never built.

use crate::diagram::{Diagram, DiagramError, OrientationMask, Smoothing};
use crate::kauffman::{Engine, KauffmanError};
use crate::laurent::{LaurentA, LaurentAZ};
use crate::lmt::{Claim, VerificationReport};

/// Component count and framing number of a framed oriented link.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrientedFramedValue {
    pub com: usize,
    pub fr: i32,
}

impl OrientedFramedValue {
    /// The monomial `(-1)^com a^fr`.
    pub fn g_value(&self) -> LaurentA {
        let sign = if self.com.is_multiple_of(2) { 1 } else { -1 };
        LaurentA::term(self.fr, sign)
    }
}

/// All `2^com` orientations, in binary-counter order.
pub fn orientations(d: &Diagram) -> impl Iterator<Item = OrientationMask> {
    OrientationMask::all(d.component_count())
}

/// `gτ(d)`, summing `g` over every orientation of `d`.
pub fn g_tau(d: &Diagram) -> LaurentA {
    let com = d.component_count();
    // Each term has sign (-1)^com, so nothing cancels and no coefficient
    // exceeds 2^com.
    let mut by_writhe = std::collections::BTreeMap::<i32, i64>::new();
    for o in orientations(d) {
        *by_writhe.entry(d.writhe(&o)).or_default() += 1;
    }
    let sign = if com.is_multiple_of(2) { 1 } else { -1 };
    LaurentA::from_terms(by_writhe.into_iter().map(|(w, n)| (w, sign * n)))
        .expect("at most 2^63 orientations")
}

/// `gτ(L+) + gτ(L-) = (-a - a^-1)(gτ(L0) + gτ(L∞))` at crossing `x`.
pub fn check_lemma3a(d: &Diagram, x: usize) -> Result<VerificationReport, DiagramError> {
    let lhs = g_tau(d) + g_tau(&d.switch(x)?);
    let rhs = LaurentA::z_value() * (g_tau(&d.smooth(x, Smoothing::A)?) + g_tau(&d.smooth(x, Smoothing::B)?));
    Ok(VerificationReport::compare(Claim::Lemma3a { crossing: x }, &lhs, &rhs))
}

/// `gτ(d) = -2 · Λ(d)(a, -a - a^-1)`.
///
/// The factor is `-2`, not `-2a`: only `-2` matches the unknot, where
/// `gτ = -2` and `Λ = 1`.
pub fn check_lemma3b(engine: &mut Engine, d: &Diagram) -> Result<VerificationReport, KauffmanError> {
    let lhs = g_tau(d);
    let rhs = engine.lambda(d)?.checked_mul(&LaurentAZ::constant(-2))?.substitute_z()?;
    Ok(VerificationReport::compare(Claim::Lemma3b, &lhs, &rhs))
}
