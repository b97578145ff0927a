use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{Crossing, EdgeId, PlanarDiagram, Port};
use crate::error::{Error, Result};
use crate::tangle::{ContinuedFraction, TangleExpr};

/// Diagrams above this many crossings are refused at construction.
const MAX_CROSSINGS: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Closure {
    /// Join NW to NE and SW to SE.
    #[serde(rename = "N")]
    Numerator,
    /// Join NW to SW and NE to SE.
    #[serde(rename = "D")]
    Denominator,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Axis {
    Horizontal,
    Vertical,
}

/// Mutable construction state: crossings plus the edges currently at the four
/// boundary positions. Edges are never renumbered while building.
struct Builder {
    crossings: Vec<Crossing>,
    ports: [EdgeId; 4],
    next: EdgeId,
    free_loops: usize,
}

impl Builder {
    fn zero() -> Self {
        Self {
            crossings: Vec::new(),
            ports: [1, 1, 2, 2],
            next: 3,
            free_loops: 0,
        }
    }

    fn infinity() -> Self {
        Self {
            crossings: Vec::new(),
            ports: [1, 2, 1, 2],
            next: 3,
            free_loops: 0,
        }
    }

    fn from_diagram(d: &PlanarDiagram) -> Result<Self> {
        let ports = d.endpoints.ok_or(Error::NotATangle)?;
        Ok(Self {
            crossings: d.crossings.clone(),
            ports,
            next: d.max_edge() + 1,
            free_loops: d.free_loops,
        })
    }

    fn fresh(&mut self) -> EdgeId {
        self.next += 1;
        self.next - 1
    }

    /// Half-twist of the NE and SE ends: `T + [±1]`.
    fn twist_right(&mut self, positive: bool) {
        let (a, b) = (self.ports[Port::NE.index()], self.ports[Port::SE.index()]);
        let (c, d) = (self.fresh(), self.fresh());
        self.crossings.push(Crossing::local(positive, a, c, b, d));
        self.ports[Port::NE.index()] = c;
        self.ports[Port::SE.index()] = d;
    }

    /// Half-twist of the SW and SE ends: `T * [±1]`.
    fn twist_bottom(&mut self, positive: bool) {
        let (a, b) = (self.ports[Port::SW.index()], self.ports[Port::SE.index()]);
        let (c, d) = (self.fresh(), self.fresh());
        self.crossings.push(Crossing::local(positive, a, b, c, d));
        self.ports[Port::SW.index()] = c;
        self.ports[Port::SE.index()] = d;
    }

    fn rename(&mut self, from: EdgeId, to: EdgeId) {
        for c in &mut self.crossings {
            for s in &mut c.slots {
                if *s == from {
                    *s = to;
                }
            }
        }
        for p in &mut self.ports {
            if *p == from {
                *p = to;
            }
        }
    }

    /// Joins the free ends at two ports with an arc outside the tangle.
    /// Returns the surviving edge id, or `None` when the join closed a
    /// crossingless loop.
    fn join(&mut self, x: Port, y: Port) -> Option<EdgeId> {
        let (a, b) = (self.ports[x.index()], self.ports[y.index()]);
        if a == b {
            self.free_loops += 1;
            None
        } else {
            self.rename(b, a);
            Some(a)
        }
    }

    /// Places `other` next to this tangle with fresh edge ids; returns the
    /// other tangle's ports.
    fn absorb(&mut self, other: &PlanarDiagram) -> Result<[EdgeId; 4]> {
        let ports = other.endpoints.ok_or(Error::NotATangle)?;
        let off = self.next - 1;
        self.crossings
            .extend(other.crossings.iter().map(|c| Crossing {
                slots: c.slots.map(|e| e + off),
            }));
        self.free_loops += other.free_loops;
        self.next += other.max_edge();
        Ok(ports.map(|e| e + off))
    }

    /// Joins two edge ids coming from different tangles; identical ids mean
    /// the join closes a loop.
    fn glue(&mut self, a: EdgeId, b: EdgeId, extra: &mut [EdgeId; 4]) {
        if a == b {
            self.free_loops += 1;
            return;
        }
        self.rename(b, a);
        for p in extra.iter_mut() {
            if *p == b {
                *p = a;
            }
        }
    }

    fn check_size(&self) -> Result<()> {
        if self.crossings.len() > MAX_CROSSINGS {
            return Err(Error::TermTooLarge {
                value: self.crossings.len().to_string(),
            });
        }
        Ok(())
    }

    fn finish(self) -> PlanarDiagram {
        PlanarDiagram::raw(self.crossings, Some(self.ports), self.free_loops)
    }
}

fn twist_count(n: &BigInt) -> Result<usize> {
    n.abs()
        .to_usize()
        .filter(|&k| k <= MAX_CROSSINGS)
        .ok_or_else(|| Error::TermTooLarge {
            value: n.to_string(),
        })
}

/// Standard-form diagram of `[[a1], ..., [an]]`: starting from `[0]` (odd `n`)
/// or `[inf]` (even `n`), terms are applied from `an` back to `a1`, odd
/// positions as twists on the right and even positions as twists at the
/// bottom. The result is alternating when the terms share a sign and has
/// `sum |a_i|` crossings.
pub fn build_standard(cf: &ContinuedFraction) -> Result<PlanarDiagram> {
    Ok(build_standard_traced(cf)?.diagram)
}

/// One construction step; step `k` created crossing `k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Twist {
    pub right: bool,
    pub positive: bool,
}

pub(crate) struct Traced {
    pub diagram: PlanarDiagram,
    /// The two starting arcs: top then bottom for `[0]`, left then right for
    /// `[inf]`, in the final numbering.
    pub seeds: [EdgeId; 2],
    pub steps: Vec<Twist>,
}

pub(crate) fn build_standard_traced(cf: &ContinuedFraction) -> Result<Traced> {
    let terms = cf.terms();
    let from_zero = terms.len() % 2 == 1;
    let mut b = if from_zero {
        Builder::zero()
    } else {
        Builder::infinity()
    };
    let mut steps = Vec::new();
    for (i, a) in terms.iter().enumerate().rev() {
        let k = twist_count(a)?;
        let positive = a.is_positive();
        for _ in 0..k {
            if i % 2 == 0 {
                b.twist_right(positive);
            } else {
                b.twist_bottom(positive);
            }
            steps.push(Twist {
                right: i % 2 == 0,
                positive,
            });
        }
        b.check_size()?;
    }
    let (diagram, map) =
        PlanarDiagram::unnormalized(b.crossings, Some(b.ports), b.free_loops).normalized_with_map();
    Ok(Traced {
        diagram,
        seeds: [map[&1], map[&2]],
        steps,
    })
}

/// Diagram of an algebraic tangle expression, built by the diagram operations.
pub fn from_expr(t: &TangleExpr) -> Result<PlanarDiagram> {
    match t {
        TangleExpr::Int(n) => {
            let mut b = Builder::zero();
            for _ in 0..twist_count(n)? {
                b.twist_right(n.is_positive());
            }
            Ok(b.finish())
        }
        TangleExpr::Infinity => Ok(Builder::infinity().finish()),
        TangleExpr::Mirror(t) => Ok(from_expr(t)?.mirror()),
        TangleExpr::Invert(t) => from_expr(t)?.invert(),
        TangleExpr::Rotate(t) => from_expr(t)?.rotate(),
        TangleExpr::Sum(t, s) => from_expr(t)?.sum(&from_expr(s)?),
        TangleExpr::Product(t, s) => from_expr(t)?.product(&from_expr(s)?),
    }
}

impl PlanarDiagram {
    /// The tangle `[0]`.
    pub fn zero_tangle() -> Self {
        Builder::zero().finish()
    }

    /// The tangle `[inf]`.
    pub fn infinity_tangle() -> Self {
        Builder::infinity().finish()
    }

    /// `T + [±1]`.
    pub fn twist_right(&self, positive: bool) -> Result<Self> {
        let mut b = Builder::from_diagram(self)?;
        b.twist_right(positive);
        Ok(b.finish())
    }

    /// `T * [±1]`.
    pub fn twist_bottom(&self, positive: bool) -> Result<Self> {
        let mut b = Builder::from_diagram(self)?;
        b.twist_bottom(positive);
        Ok(b.finish())
    }

    /// `T + S`: `S` placed to the right, NE/SE of `T` joined to NW/SW of `S`.
    pub fn sum(&self, other: &Self) -> Result<Self> {
        let mut b = Builder::from_diagram(self)?;
        let mut s = b.absorb(other)?;
        let (ne, se) = (b.ports[Port::NE.index()], b.ports[Port::SE.index()]);
        b.glue(ne, s[Port::NW.index()], &mut s);
        b.glue(se, s[Port::SW.index()], &mut s);
        b.ports[Port::NE.index()] = s[Port::NE.index()];
        b.ports[Port::SE.index()] = s[Port::SE.index()];
        b.check_size()?;
        Ok(b.finish())
    }

    /// `T * S`: `S` placed below, SW/SE of `T` joined to NW/NE of `S`.
    pub fn product(&self, other: &Self) -> Result<Self> {
        let mut b = Builder::from_diagram(self)?;
        let mut s = b.absorb(other)?;
        let (sw, se) = (b.ports[Port::SW.index()], b.ports[Port::SE.index()]);
        b.glue(sw, s[Port::NW.index()], &mut s);
        b.glue(se, s[Port::NE.index()], &mut s);
        b.ports[Port::SW.index()] = s[Port::SW.index()];
        b.ports[Port::SE.index()] = s[Port::SE.index()];
        b.check_size()?;
        Ok(b.finish())
    }

    /// `T^r`: counterclockwise quarter turn in the plane.
    pub fn rotate(&self) -> Result<Self> {
        let [nw, ne, sw, se] = self.endpoints.ok_or(Error::NotATangle)?;
        Ok(Self::raw(
            self.crossings.clone(),
            Some([ne, se, nw, sw]),
            self.free_loops,
        ))
    }

    /// `1/T`, drawn as the rotated mirror image.
    pub fn invert(&self) -> Result<Self> {
        self.mirror().rotate()
    }

    /// Half-turn about the horizontal (`hflip`) or vertical (`vflip`) axis
    /// lying in the plane of the diagram.
    pub fn flip(&self, axis: Axis) -> Result<Self> {
        let [nw, ne, sw, se] = self.endpoints.ok_or(Error::NotATangle)?;
        let ports = match axis {
            Axis::Horizontal => [sw, se, nw, ne],
            Axis::Vertical => [ne, nw, se, sw],
        };
        Ok(Self::raw(
            self.crossings.iter().map(|c| c.flipped()).collect(),
            Some(ports),
            self.free_loops,
        ))
    }

    pub fn close(&self, which: Closure) -> Result<Self> {
        let mut b = Builder::from_diagram(self)?;
        match which {
            Closure::Numerator => {
                b.join(Port::NW, Port::NE);
                b.join(Port::SW, Port::SE);
            }
            Closure::Denominator => {
                b.join(Port::NW, Port::SW);
                b.join(Port::NE, Port::SE);
            }
        }
        Ok(Self::raw(b.crossings, None, b.free_loops))
    }

    /// `N(T)`.
    pub fn numerator(&self) -> Result<Self> {
        self.close(Closure::Numerator)
    }

    /// `D(T)`.
    pub fn denominator(&self) -> Result<Self> {
        self.close(Closure::Denominator)
    }
}
