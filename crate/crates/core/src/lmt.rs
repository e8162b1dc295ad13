//! The sublink generating function of linking numbers, and the checks that
//! tie it to the Kauffman polynomial at `z = -a - a^-1`:
//!
//! ```text
//! F_L(a, -a - a^-1) = (-1)^{com - 1} / 2 · Σ_{S ⊆ L} a^{-4 lk(S, L - S)}
//! ```

use std::fmt;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, OrientationMask, SublinkMask};
use crate::kauffman::{Engine, KauffmanError};
use crate::laurent::{ArithmeticError, LaurentA};
use crate::transfer;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LmtError {
    #[error("odd sublink sum `{0}`: sublinks and complements must pair up")]
    OddSublinkSum(String),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Kauffman(#[from] KauffmanError),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
}

/// Sign convention for linking numbers on the right-hand side.
///
/// `Mirrored` negates every linking number; it exists so the verifier can be
/// shown to reject a wrong convention.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Convention {
    #[default]
    Standard,
    Mirrored,
}

/// Which identity a report checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Claim {
    Theorem5,
    Lemma3a { crossing: usize },
    Lemma3b,
    Lemma4 { orientation: OrientationMask, sublink: SublinkMask },
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Claim::Theorem5 => f.write_str("theorem5"),
            Claim::Lemma3a { crossing } => write!(f, "lemma3a@{crossing}"),
            Claim::Lemma3b => f.write_str("lemma3b"),
            Claim::Lemma4 { orientation, sublink } => write!(f, "lemma4@o={orientation},s={sublink}"),
        }
    }
}

/// Outcome of one identity check, with both sides in canonical text form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub subject: String,
    pub claim: Claim,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

impl VerificationReport {
    pub fn compare<T: PartialEq + fmt::Display>(claim: Claim, lhs: &T, rhs: &T) -> Self {
        Self {
            subject: String::new(),
            claim,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass: lhs == rhs,
        }
    }

    pub fn with_subject(mut self, subject: impl Into<String>) -> Self {
        self.subject = subject.into();
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{status} {} {}: {} = {}", self.subject, self.claim, self.lhs, self.rhs)
    }
}

/// `(-1)^{com-1}/2 · Σ_S a^{-4 lk(S, L-S)}` over all sublinks, `∅` included.
pub fn lmt_rhs(d: &Diagram, o: &OrientationMask) -> Result<LaurentA, LmtError> {
    lmt_rhs_with(d, o, Convention::Standard)
}

pub fn lmt_rhs_with(d: &Diagram, o: &OrientationMask, convention: Convention) -> Result<LaurentA, LmtError> {
    let com = d.component_count();
    let mut sum = LaurentA::zero();
    for s in SublinkMask::all(com) {
        let mut lk = d.linking_number(o, &s)?;
        if convention == Convention::Mirrored {
            lk = -lk;
        }
        let exp = i32::try_from(-4 * lk).map_err(|_| ArithmeticError::Overflow)?;
        sum = sum.checked_add(&LaurentA::term(exp, 1))?;
    }
    if com.is_multiple_of(2) {
        sum = sum.checked_neg()?;
    }
    sum.divide_scalar_exact(2).map_err(|_| LmtError::OddSublinkSum(sum.to_string()))
}

/// Reversing the components of `s` changes the writhe by `-4 lk(s, L - s)`.
pub fn check_lemma4(d: &Diagram, o: &OrientationMask, s: &SublinkMask) -> Result<VerificationReport, DiagramError> {
    let lhs = d.writhe(&o.flip(s)) as i64 - d.writhe(o) as i64;
    let rhs = -4 * d.linking_number(o, s)?;
    Ok(VerificationReport::compare(Claim::Lemma4 { orientation: *o, sublink: *s }, &lhs, &rhs))
}

/// The skein engine's specialization against the sublink sum.
pub fn verify_theorem5(engine: &mut Engine, d: &Diagram, o: &OrientationMask) -> Result<VerificationReport, LmtError> {
    verify_theorem5_with(engine, d, o, Convention::Standard)
}

pub fn verify_theorem5_with(
    engine: &mut Engine,
    d: &Diagram,
    o: &OrientationMask,
    convention: Convention,
) -> Result<VerificationReport, LmtError> {
    let lhs = engine.specialized_f(d, o)?;
    let rhs = lmt_rhs_with(d, o, convention)?;
    Ok(VerificationReport::compare(Claim::Theorem5, &lhs, &rhs))
}

/// Every check for one diagram: the main identity, `gτ = -2Λ`, the
/// transfer skein relation at each crossing, and the writhe change at each
/// sublink. Reports come out in that order.
pub fn verify_all(engine: &mut Engine, d: &Diagram, o: &OrientationMask) -> Result<Vec<VerificationReport>, LmtError> {
    verify_all_with(engine, d, o, Convention::Standard)
}

pub fn verify_all_with(
    engine: &mut Engine,
    d: &Diagram,
    o: &OrientationMask,
    convention: Convention,
) -> Result<Vec<VerificationReport>, LmtError> {
    let mut reports = vec![
        verify_theorem5_with(engine, d, o, convention)?,
        transfer::check_lemma3b(engine, d)?,
    ];
    for x in 0..d.crossing_count() {
        reports.push(transfer::check_lemma3a(d, x)?);
    }
    for s in SublinkMask::all(d.component_count()) {
        reports.push(check_lemma4(d, o, &s)?);
    }
    Ok(reports)
}
