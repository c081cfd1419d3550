use std::collections::BTreeMap;

use num::{BigInt, One};

use super::poly::{MultiPoly, Q};
use super::{RationalFunction, Symbol};
use crate::error::{Error, Result};

/// The mesh step of one axis: a spacing symbol or a fixed rational number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Spacing(Symbol),
    Fixed(Q),
}

impl Step {
    pub fn as_poly(&self) -> MultiPoly {
        match self {
            Step::Spacing(s) => MultiPoly::var(*s),
            Step::Fixed(c) => MultiPoly::constant(c.clone()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axis {
    pub var: Symbol,
    pub step: Step,
}

/// An orthogonal uniform grid: independent variables paired with mesh steps,
/// plus the grading weights of the spacing symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    axes: Vec<Axis>,
    weights: BTreeMap<Symbol, u32>,
}

impl Grid {
    pub fn new(axes: Vec<Axis>) -> Self {
        let mut weights = BTreeMap::new();
        for a in &axes {
            if let Step::Spacing(s) = a.step {
                weights.insert(s, 1);
            }
        }
        Grid { axes, weights }
    }

    /// Convenience constructor: every axis gets its own spacing symbol.
    pub fn with_spacings(pairs: &[(&str, &str)]) -> Self {
        Grid::new(
            pairs
                .iter()
                .map(|(x, h)| Axis {
                    var: Symbol::new(x),
                    step: Step::Spacing(Symbol::new(h)),
                })
                .collect(),
        )
    }

    /// A grid whose axes all have unit step.
    pub fn unit(axes: &[&str]) -> Self {
        Grid::new(
            axes.iter()
                .map(|x| Axis {
                    var: Symbol::new(x),
                    step: Step::Fixed(Q::one()),
                })
                .collect(),
        )
    }

    pub fn set_weight(&mut self, spacing: Symbol, weight: u32) {
        assert!(weight > 0, "spacing weights are positive");
        self.weights.insert(spacing, weight);
    }

    pub fn weights(&self) -> &BTreeMap<Symbol, u32> {
        &self.weights
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axis_index(&self, var: Symbol) -> Option<usize> {
        self.axes.iter().position(|a| a.var == var)
    }

    pub fn is_independent(&self, s: Symbol) -> bool {
        self.axis_index(s).is_some()
    }

    pub fn is_spacing(&self, s: Symbol) -> bool {
        self.weights.contains_key(&s)
    }

    /// Substitutes `axis -> axis + amount * step(axis)`.
    pub fn shift(&self, a: &RationalFunction, axis: Symbol, amount: i64) -> Result<RationalFunction> {
        let i = self
            .axis_index(axis)
            .ok_or_else(|| Error::NotAnAxis(axis.name().to_string()))?;
        Ok(self.shift_axis(a, i, amount))
    }

    pub fn shift_axis(&self, a: &RationalFunction, i: usize, amount: i64) -> RationalFunction {
        let axis = &self.axes[i];
        if amount == 0 || !a.contains(axis.var) {
            return a.clone();
        }
        let value = &MultiPoly::var(axis.var) + &axis.step.as_poly().scale(&Q::from_integer(BigInt::from(amount)));
        a.substitute(axis.var, &value)
    }

    /// Applies the shift multi-index `shift` (one entry per axis).
    pub fn shift_all<T: Copy + Into<i64>>(&self, a: &RationalFunction, shift: &[T]) -> RationalFunction {
        let mut out = None;
        for (i, &k) in shift.iter().enumerate() {
            let k: i64 = k.into();
            if k != 0 && a.contains(self.axes[i].var) {
                let cur = out.as_ref().unwrap_or(a);
                out = Some(self.shift_axis(cur, i, k));
            }
        }
        out.unwrap_or_else(|| a.clone())
    }
}
