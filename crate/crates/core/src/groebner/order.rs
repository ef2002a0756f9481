use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::ring::Monomial;

/// Monomial order family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderKind {
    /// Degree first (larger is bigger), ties by lex.
    GlobalDegLex,
    /// Pure lex with x_1 > x_2 > ...
    GlobalLex,
    /// Degree first with *smaller* degree bigger, ties by lex; 1 is the
    /// largest monomial.
    LocalAntiDegLex,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TermOrder {
    pub kind: OrderKind,
    /// Positive integer weights replacing the standard grading.
    pub weights: Option<Vec<u64>>,
}

impl TermOrder {
    pub fn deg_lex() -> Self {
        TermOrder {
            kind: OrderKind::GlobalDegLex,
            weights: None,
        }
    }

    pub fn lex() -> Self {
        TermOrder {
            kind: OrderKind::GlobalLex,
            weights: None,
        }
    }

    pub fn local() -> Self {
        TermOrder {
            kind: OrderKind::LocalAntiDegLex,
            weights: None,
        }
    }

    pub fn with_weights(mut self, w: Vec<u64>) -> Self {
        assert!(w.iter().all(|&x| x > 0), "weights must be positive");
        self.weights = Some(w);
        self
    }

    pub fn is_local(&self) -> bool {
        self.kind == OrderKind::LocalAntiDegLex
    }

    pub fn degree(&self, m: &Monomial) -> u64 {
        match &self.weights {
            None => m.degree() as u64,
            Some(w) => m
                .exponents()
                .iter()
                .zip(w)
                .map(|(&e, &wi)| e as u64 * wi)
                .sum(),
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let lex = || a.exponents().cmp(b.exponents());
        match self.kind {
            OrderKind::GlobalLex => lex(),
            OrderKind::GlobalDegLex => self.degree(a).cmp(&self.degree(b)).then_with(lex),
            OrderKind::LocalAntiDegLex => self.degree(b).cmp(&self.degree(a)).then_with(lex),
        }
    }
}
