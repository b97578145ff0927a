use serde::Serialize;

use super::{PlanarDiagram, Port};
use crate::error::{Error, Result};

/// Smoothing of one crossing. `L` is the `A`-smoothing: it joins slots 0-1
/// and 2-3. `R` is the `A^-1`-smoothing and joins slots 0-3 and 1-2.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Smoothing {
    L,
    R,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct State(Vec<Smoothing>);

impl State {
    pub fn new(choices: Vec<Smoothing>) -> Self {
        Self(choices)
    }

    pub fn uniform(n: usize, s: Smoothing) -> Self {
        Self(vec![s; n])
    }

    /// Bit `i` set means crossing `i` takes `R`.
    pub fn from_bits(n: usize, bits: u64) -> Self {
        Self(
            (0..n)
                .map(|i| {
                    if bits >> i & 1 == 1 {
                        Smoothing::R
                    } else {
                        Smoothing::L
                    }
                })
                .collect(),
        )
    }

    pub fn choices(&self) -> &[Smoothing] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `#L - #R`, the power of `A` this state contributes.
    pub fn a_exponent(&self) -> i64 {
        self.0
            .iter()
            .map(|s| if *s == Smoothing::L { 1 } else { -1 })
            .sum()
    }
}

/// Residual arcs of a smoothed tangle diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Residual {
    Zero,
    Infinity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct StateOutcome {
    /// Closed loops, not counting the arcs that end on the boundary.
    pub loops: usize,
    /// `None` for closed diagrams.
    pub residual: Option<Residual>,
}

#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<u32>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            rank: vec![0; n],
        }
    }

    pub fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
        self.rank.fill(0);
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let gp = self.parent[self.parent[x] as usize];
            self.parent[x] = gp;
            x = gp as usize;
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb as u32,
            std::cmp::Ordering::Greater => self.parent[rb] = ra as u32,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra as u32;
                self.rank[ra] += 1;
            }
        }
        true
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

impl PlanarDiagram {
    pub fn apply_state(&self, state: &State) -> Result<StateOutcome> {
        if state.len() != self.crossing_count() {
            return Err(Error::StateLength {
                expected: self.crossing_count(),
                got: state.len(),
            });
        }
        let mut uf = UnionFind::new(self.max_edge() as usize + 1);
        Ok(self.smooth_with(&mut uf, |i| state.0[i]))
    }

    /// Smooths every crossing and counts loops using a caller-provided
    /// union-find sized for `max_edge + 1` ids. `uf` is reset first.
    pub(crate) fn smooth_with(
        &self,
        uf: &mut UnionFind,
        choice: impl Fn(usize) -> Smoothing,
    ) -> StateOutcome {
        uf.reset();
        let mut merges = 0;
        for (i, c) in self.crossings.iter().enumerate() {
            let [a, b, cc, d] = c.slots.map(|e| e as usize);
            let joined = match choice(i) {
                Smoothing::L => [uf.union(a, b), uf.union(cc, d)],
                Smoothing::R => [uf.union(a, d), uf.union(b, cc)],
            };
            merges += joined.iter().filter(|&&j| j).count();
        }
        // Slot 0 of the union-find is unused; edges are 1..=max_edge.
        let components = self.max_edge() as usize - merges;
        match self.endpoints {
            None => StateOutcome {
                loops: components + self.free_loops,
                residual: None,
            },
            Some(ep) => {
                let at = |p: Port| ep[p.index()] as usize;
                let residual = if uf.same(at(Port::NW), at(Port::NE)) {
                    Residual::Zero
                } else {
                    debug_assert!(uf.same(at(Port::NW), at(Port::SW)), "non-planar state");
                    Residual::Infinity
                };
                // The two boundary arcs are components but not loops.
                StateOutcome {
                    loops: components - 2 + self.free_loops,
                    residual: Some(residual),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_standard;

    #[test]
    fn union_find_basics() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(1, 2));
        assert!(uf.union(3, 4));
        assert!(!uf.union(2, 1));
        assert!(uf.same(1, 2) && !uf.same(2, 3));
        uf.reset();
        assert!(!uf.same(1, 2));
    }

    #[test]
    fn one_crossing_residuals() {
        let one = build_standard(&"[1]".parse().unwrap()).unwrap();
        let l = one.apply_state(&State::uniform(1, Smoothing::L)).unwrap();
        assert_eq!(
            l,
            StateOutcome {
                loops: 0,
                residual: Some(Residual::Zero)
            }
        );
        let r = one.apply_state(&State::uniform(1, Smoothing::R)).unwrap();
        assert_eq!(r.residual, Some(Residual::Infinity));
    }

    #[test]
    fn crossingless_closed_diagrams() {
        let empty = State::new(vec![]);
        assert_eq!(
            PlanarDiagram::unknot().apply_state(&empty).unwrap().loops,
            1
        );
        assert_eq!(
            PlanarDiagram::unlink(3).apply_state(&empty).unwrap().loops,
            3
        );
    }

    #[test]
    fn trefoil_uniform_states() {
        let k = build_standard(&"[3]".parse().unwrap())
            .unwrap()
            .numerator()
            .unwrap();
        // All-A on a positive alternating diagram gives the most loops.
        let a = k
            .apply_state(&State::uniform(3, Smoothing::L))
            .unwrap()
            .loops;
        let b = k
            .apply_state(&State::uniform(3, Smoothing::R))
            .unwrap()
            .loops;
        assert_eq!((a, b), (2, 3));
    }

    #[test]
    fn state_length_is_checked() {
        let k = build_standard(&"[3]".parse().unwrap()).unwrap();
        assert!(matches!(
            k.apply_state(&State::uniform(2, Smoothing::L)),
            Err(Error::StateLength {
                expected: 3,
                got: 2
            })
        ));
    }
}
