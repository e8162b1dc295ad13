//! The regular-isotopy Kauffman polynomial `Λ(D)(a, z)` by skein recursion.
//!
//! `Λ` is 1 on the crossing-free circle, gains a factor
//! `δ = (a + a^-1) z^-1 - 1` per extra split circle, and satisfies
//!
//! ```text
//! Λ(D) + Λ(switch(D, x)) = z · (Λ(smooth_A(D, x)) + Λ(smooth_B(D, x)))
//! ```
//!
//! at every crossing `x`. The engine walks the components in a fixed order
//! from fixed basepoints. A crossing first met as an under-pass is a
//! *defect*; with no defects the diagram is descending, i.e. a stack of
//! unknotted, unlinked circles, and `Λ = a^{self writhe} · δ^{com - 1}`.
//! Otherwise the relation is applied at the first defect: switching it
//! removes one defect without changing the crossing count, and both
//! smoothings remove a crossing, so the recursion terminates.

use std::collections::HashMap;

use thiserror::Error;

use crate::diagram::{Diagram, DiagramError, OrientationMask, Smoothing};
use crate::laurent::{ArithmeticError, LaurentA, LaurentAZ};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KauffmanError {
    #[error("the Kauffman polynomial of the empty diagram is undefined")]
    EmptyDiagram,
    #[error("invalid traversal: {0}")]
    InvalidTraversal(String),
    #[error(transparent)]
    Arithmetic(#[from] ArithmeticError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A diagram together with the traversal that classifies its crossings.
#[derive(Debug, Clone)]
pub struct SkeinTask {
    pub diagram: Diagram,
    /// Order in which the closed strands are walked.
    pub component_order: Vec<usize>,
    /// Starting edge of each closed strand, indexed by component.
    pub basepoints: Vec<u32>,
    pub memo_key: String,
}

impl SkeinTask {
    /// Strands in index order, each from its smallest edge.
    pub fn new(diagram: Diagram) -> Self {
        let component_order = (0..diagram.strands().len()).collect();
        let basepoints = diagram.strands().iter().map(|s| s[0]).collect();
        let memo_key = diagram.canonical_code();
        Self { diagram, component_order, basepoints, memo_key }
    }

    pub fn with_traversal(
        diagram: Diagram,
        component_order: Vec<usize>,
        basepoints: Vec<u32>,
    ) -> Result<Self, KauffmanError> {
        let n = diagram.strands().len();
        let mut sorted = component_order.clone();
        sorted.sort_unstable();
        if sorted != (0..n).collect::<Vec<_>>() {
            return Err(KauffmanError::InvalidTraversal(format!(
                "{component_order:?} is not a permutation of the {n} strands"
            )));
        }
        if basepoints.len() != n {
            return Err(KauffmanError::InvalidTraversal(format!(
                "expected {n} basepoints, found {}",
                basepoints.len()
            )));
        }
        for (i, &b) in basepoints.iter().enumerate() {
            if !diagram.strands()[i].contains(&b) {
                return Err(KauffmanError::InvalidTraversal(format!(
                    "edge {b} is not on strand {i}"
                )));
            }
        }
        let memo_key = diagram.canonical_code();
        Ok(Self { diagram, component_order, basepoints, memo_key })
    }

    /// Defective crossings, in the order the traversal first meets them.
    pub fn defects(&self) -> Vec<usize> {
        let d = &self.diagram;
        let mut seen = vec![false; d.crossing_count()];
        let mut defects = Vec::new();
        for &comp in &self.component_order {
            let start = self.basepoints[comp];
            let mut e = start;
            loop {
                let (c, slot) = d.head(e);
                if !seen[c] {
                    seen[c] = true;
                    if slot == 0 {
                        defects.push(c);
                    }
                }
                e = d.next_edge(e);
                if e == start {
                    break;
                }
            }
        }
        defects
    }

    fn switched(&self, x: usize) -> Result<Self, KauffmanError> {
        let diagram = self.diagram.switch(x)?;
        let memo_key = diagram.canonical_code();
        Ok(Self {
            diagram,
            component_order: self.component_order.clone(),
            basepoints: self.basepoints.clone(),
            memo_key,
        })
    }
}

/// Evaluates `Λ` with an optional memo table keyed by canonical code.
#[derive(Debug, Default)]
pub struct Engine {
    memo: Option<HashMap<String, LaurentAZ>>,
    record_base_cases: bool,
    base_cases: Vec<Diagram>,
}

impl Engine {
    /// An engine with memoization enabled.
    pub fn new() -> Self {
        Self { memo: Some(HashMap::new()), ..Self::default() }
    }

    pub fn without_memo() -> Self {
        Self::default()
    }

    /// Memoization is on unless `LMT_NO_MEMO=1`.
    pub fn from_env() -> Self {
        match std::env::var("LMT_NO_MEMO") {
            Ok(v) if v == "1" => Self::without_memo(),
            _ => Self::new(),
        }
    }

    pub fn memo_enabled(&self) -> bool {
        self.memo.is_some()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.as_ref().map_or(0, HashMap::len)
    }

    /// Keeps every descending diagram reached by the recursion, for
    /// inspection with [`Engine::base_cases`].
    pub fn record_base_cases(&mut self, on: bool) {
        self.record_base_cases = on;
    }

    pub fn base_cases(&self) -> &[Diagram] {
        &self.base_cases
    }

    pub fn lambda(&mut self, d: &Diagram) -> Result<LaurentAZ, KauffmanError> {
        self.lambda_task(&SkeinTask::new(d.clone()))
    }

    pub fn lambda_task(&mut self, task: &SkeinTask) -> Result<LaurentAZ, KauffmanError> {
        let d = &task.diagram;
        if d.component_count() == 0 {
            return Err(KauffmanError::EmptyDiagram);
        }
        if let Some(hit) = self.memo.as_ref().and_then(|m| m.get(&task.memo_key)) {
            return Ok(hit.clone());
        }

        let value = match task.defects().first() {
            None => {
                if self.record_base_cases {
                    self.base_cases.push(d.clone());
                }
                let circles = LaurentAZ::delta().checked_pow(d.component_count() as u32 - 1)?;
                circles.checked_mul(&LaurentAZ::a_pow(d.self_writhe()))?
            }
            Some(&x) => {
                let switched = self.lambda_task(&task.switched(x)?)?;
                let a = self.lambda(&d.smooth(x, Smoothing::A)?)?;
                let b = self.lambda(&d.smooth(x, Smoothing::B)?)?;
                let smoothed = a.checked_add(&b)?.checked_mul(&LaurentAZ::z())?;
                smoothed.checked_sub(&switched)?
            }
        };

        if let Some(memo) = self.memo.as_mut() {
            memo.insert(task.memo_key.clone(), value.clone());
        }
        Ok(value)
    }

    /// `a^{-writhe(d, o)} · Λ(d)`: the polynomial of the 0-framed oriented link.
    pub fn f_oriented(&mut self, d: &Diagram, o: &OrientationMask) -> Result<LaurentAZ, KauffmanError> {
        Ok(self.lambda(d)?.checked_mul(&LaurentAZ::a_pow(-d.writhe(o)))?)
    }

    /// `F(a, -a - a^-1)` of the oriented link.
    pub fn specialized_f(&mut self, d: &Diagram, o: &OrientationMask) -> Result<LaurentA, KauffmanError> {
        Ok(self.f_oriented(d, o)?.substitute_z()?)
    }
}

/// `Λ(d)` with a fresh memoizing engine.
pub fn lambda_poly(d: &Diagram) -> Result<LaurentAZ, KauffmanError> {
    Engine::new().lambda(d)
}

/// The Kauffman polynomial of the link with the diagram's vertical framing;
/// the same polynomial as [`lambda_poly`].
pub fn f_framed(d: &Diagram) -> Result<LaurentAZ, KauffmanError> {
    lambda_poly(d)
}

pub fn f_oriented(d: &Diagram, o: &OrientationMask) -> Result<LaurentAZ, KauffmanError> {
    Engine::new().f_oriented(d, o)
}

pub fn specialized_f(d: &Diagram, o: &OrientationMask) -> Result<LaurentA, KauffmanError> {
    Engine::new().specialized_f(d, o)
}
