//! Finite-window partial injections, used as a brute-force referee for the
//! symbolic composition laws.
//!
//! A window of bound `N` records a partial injection on `{0,…,N}`. Images
//! may exceed `N`; only composition and converse truncate to the window.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::ToPrimitive;

use crate::arith::ArithElement;
use crate::error::{Error, Result};
use crate::numtheory::Natural;

pub const DEFAULT_WINDOW: u64 = 2000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePartialInjection {
    window: u64,
    graph: BTreeMap<u64, Natural>,
}

impl FinitePartialInjection {
    pub fn empty(window: u64) -> Self {
        FinitePartialInjection {
            window,
            graph: BTreeMap::new(),
        }
    }

    pub fn identity(window: u64) -> Self {
        FinitePartialInjection {
            window,
            graph: (0..=window).map(|n| (n, Natural::from(n))).collect(),
        }
    }

    /// Builds a window from explicit pairs, rejecting non-injective graphs
    /// and domain points beyond the bound.
    pub fn from_pairs<I>(window: u64, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, Natural)>,
    {
        let mut graph = BTreeMap::new();
        let mut seen: HashMap<Natural, u64> = HashMap::new();
        for (n, v) in pairs {
            if n > window {
                return Err(Error::Malformed(format!(
                    "domain point {n} lies outside window {window}"
                )));
            }
            if let Some(&m) = seen.get(&v) {
                if m != n {
                    return Err(Error::NotInjective(m, n));
                }
            }
            seen.insert(v.clone(), n);
            graph.insert(n, v);
        }
        Ok(FinitePartialInjection { window, graph })
    }

    pub fn from_arith(e: &ArithElement, window: u64) -> Self {
        let graph = (0..=window)
            .filter_map(|n| e.apply(&Natural::from(n)).map(|v| (n, v)))
            .collect();
        FinitePartialInjection { window, graph }
    }

    pub fn window(&self) -> u64 {
        self.window
    }

    pub fn get(&self, n: u64) -> Option<&Natural> {
        self.graph.get(&n)
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &Natural)> {
        self.graph.iter().map(|(n, v)| (*n, v))
    }

    /// `self ∘ rhs`; a point survives only if its intermediate value lies in
    /// the window.
    pub fn compose(&self, rhs: &FinitePartialInjection) -> Result<Self> {
        if self.window != rhs.window {
            return Err(Error::WindowMismatch(self.window, rhs.window));
        }
        let graph = rhs
            .graph
            .iter()
            .filter_map(|(n, mid)| {
                let mid = mid.to_u64().filter(|m| *m <= self.window)?;
                self.graph.get(&mid).map(|v| (*n, v.clone()))
            })
            .collect();
        Ok(FinitePartialInjection {
            window: self.window,
            graph,
        })
    }

    /// Relational converse, keeping only pairs whose image is in the window.
    pub fn dagger(&self) -> Self {
        let graph = self
            .graph
            .iter()
            .filter_map(|(n, v)| {
                v.to_u64()
                    .filter(|v| *v <= self.window)
                    .map(|v| (v, Natural::from(*n)))
            })
            .collect();
        FinitePartialInjection {
            window: self.window,
            graph,
        }
    }

    /// Whether the graph is strictly increasing on its domain.
    pub fn is_monotone(&self) -> bool {
        self.graph
            .values()
            .zip(self.graph.values().skip(1))
            .all(|(x, y)| x < y)
    }

    pub fn is_injective(&self) -> bool {
        let mut images: Vec<&Natural> = self.graph.values().collect();
        images.sort();
        images.windows(2).all(|w| w[0] != w[1])
    }

    /// Drops every domain point rejected by `keep`.
    pub fn restrict<F: FnMut(u64) -> bool>(&self, mut keep: F) -> Self {
        FinitePartialInjection {
            window: self.window,
            graph: self
                .graph
                .iter()
                .filter(|(n, _)| keep(**n))
                .map(|(n, v)| (*n, v.clone()))
                .collect(),
        }
    }

    /// Domain points whose image leaves the window. Composites through these
    /// points are invisible to [`compose`](Self::compose).
    pub fn escaping_points(&self) -> impl Iterator<Item = u64> + '_ {
        self.graph
            .iter()
            .filter(|(_, v)| v.to_u64().is_none_or(|v| v > self.window))
            .map(|(n, _)| *n)
    }
}

impl fmt::Display for FinitePartialInjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (n, v)) in self.graph.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{n}↦{v}")?;
        }
        write!(f, "}}")
    }
}

/// Outcome of [`check_compose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionCheck {
    pub window: u64,
    pub margin: u64,
    /// Core points actually compared.
    pub compared: u64,
    pub first_disagreement: Option<u64>,
}

impl CompositionCheck {
    pub fn agrees(&self) -> bool {
        self.first_disagreement.is_none()
    }
}

/// Compares the symbolic product `f∘g` with the window composite of `f` and
/// `g`, on a core of margin `2·(largest modulus)`.
///
/// Points whose intermediate value `g(n)` leaves the window are invisible to
/// the window composite and are skipped; the margin alone cannot exclude them
/// because `g` may scale by its image modulus.
pub fn check_compose(f: &ArithElement, g: &ArithElement, window: u64) -> Result<CompositionCheck> {
    let largest = [f.domain(), f.image(), g.domain(), g.image()]
        .into_iter()
        .flatten()
        .map(|c| c.modulus())
        .max()
        .map_or(1, |m| m.to_u64().unwrap_or(u64::MAX));
    let margin = largest.saturating_mul(2);
    let inner = FinitePartialInjection::from_arith(g, window);
    let oracle = FinitePartialInjection::from_arith(f, window).compose(&inner)?;
    let hidden: std::collections::HashSet<u64> = inner.escaping_points().collect();
    let symbolic = FinitePartialInjection::from_arith(&f.compose(g), window).restrict(|n| !hidden.contains(&n));
    let first_disagreement = first_disagreement(&symbolic, &oracle, margin)?;
    let core = window - margin;
    let compared = (0..=core).filter(|n| !hidden.contains(n)).count() as u64;
    Ok(CompositionCheck {
        window,
        margin,
        compared,
        first_disagreement,
    })
}

/// Compares two windows on the core `{0,…,N−margin}`.
///
/// A core point is skipped when either side sends it beyond the core;
/// otherwise both sides must agree, including on undefinedness.
pub fn agree_on_core(
    f: &FinitePartialInjection,
    g: &FinitePartialInjection,
    margin: u64,
) -> Result<bool> {
    if f.window != g.window {
        return Err(Error::WindowMismatch(f.window, g.window));
    }
    Ok(first_disagreement(f, g, margin)?.is_none())
}

/// The first core point on which [`agree_on_core`] fails, if any.
pub fn first_disagreement(
    f: &FinitePartialInjection,
    g: &FinitePartialInjection,
    margin: u64,
) -> Result<Option<u64>> {
    if margin >= f.window {
        return Err(Error::MarginTooLarge {
            margin,
            window: f.window,
        });
    }
    let core = f.window - margin;
    let beyond = |v: Option<&Natural>| v.is_some_and(|v| v.to_u64().is_none_or(|v| v > core));
    for n in 0..=core {
        let (x, y) = (f.get(n), g.get(n));
        if beyond(x) || beyond(y) {
            continue;
        }
        if x != y {
            return Ok(Some(n));
        }
    }
    Ok(None)
}
