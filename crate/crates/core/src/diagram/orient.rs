use super::{Closure, EdgeId, End, PlanarDiagram, Port};
use crate::error::{Error, Result};

/// One traced component of a closed diagram, as the edges met in order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strand {
    pub edges: Vec<EdgeId>,
}

/// Direction of travel through every crossing: the slot where the
/// under-strand enters (0 or 2) and where the over-strand enters (1 or 3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    under_in: Vec<u8>,
    over_in: Vec<u8>,
}

impl Orientation {
    pub fn crossing_count(&self) -> usize {
        self.under_in.len()
    }

    /// `+1` when the over-strand enters one slot clockwise of the entering
    /// under-strand.
    pub fn sign(&self, crossing: usize) -> i64 {
        if self.over_in[crossing] == (self.under_in[crossing] + 3) % 4 {
            1
        } else {
            -1
        }
    }

    pub fn writhe(&self) -> i64 {
        (0..self.crossing_count()).map(|i| self.sign(i)).sum()
    }
}

const UNSET: u8 = u8::MAX;

struct Tracer<'a> {
    d: &'a PlanarDiagram,
    ends: Vec<[End; 2]>,
    visited: Vec<bool>,
    under_in: Vec<u8>,
    over_in: Vec<u8>,
    strands: Vec<Strand>,
}

impl<'a> Tracer<'a> {
    fn new(d: &'a PlanarDiagram) -> Self {
        let n = d.crossing_count();
        Self {
            d,
            ends: d.edge_ends(),
            visited: vec![false; d.max_edge() as usize],
            under_in: vec![UNSET; n],
            over_in: vec![UNSET; n],
            strands: Vec::new(),
        }
    }

    fn other_end(&self, edge: EdgeId, from: End) -> End {
        let [x, y] = self.ends[edge as usize - 1];
        if x == from {
            y
        } else {
            x
        }
    }

    /// Follows a component starting on `edge` towards `head`. `partner`
    /// says which port a boundary arc continues into.
    fn trace(&mut self, mut edge: EdgeId, mut head: End, partner: impl Fn(Port) -> Port) {
        let mut strand = Vec::new();
        while !self.visited[edge as usize - 1] {
            self.visited[edge as usize - 1] = true;
            strand.push(edge);
            let leave = match head {
                End::Slot { crossing, slot } => {
                    if slot % 2 == 0 {
                        self.under_in[crossing] = slot as u8;
                    } else {
                        self.over_in[crossing] = slot as u8;
                    }
                    End::Slot {
                        crossing,
                        slot: (slot + 2) % 4,
                    }
                }
                End::Port(p) => End::Port(partner(p)),
            };
            edge = match leave {
                End::Slot { crossing, slot } => self.d.crossings[crossing].slots[slot],
                End::Port(p) => self.d.endpoints.expect("port implies tangle")[p.index()],
            };
            head = self.other_end(edge, leave);
        }
        self.strands.push(Strand { edges: strand });
    }

    /// Orients whatever is left, lowest edge first, towards its second end.
    fn finish_rest(&mut self) {
        for e in 1..=self.d.max_edge() {
            if !self.visited[e as usize - 1] {
                let head = self.ends[e as usize - 1][1];
                self.trace(e, head, |p| p);
            }
        }
    }

    fn orientation(self) -> (Orientation, Vec<Strand>) {
        debug_assert!(self
            .under_in
            .iter()
            .chain(&self.over_in)
            .all(|&s| s != UNSET));
        (
            Orientation {
                under_in: self.under_in,
                over_in: self.over_in,
            },
            self.strands,
        )
    }
}

fn partner(which: Closure) -> impl Fn(Port) -> Port {
    move |p| match (which, p) {
        (Closure::Numerator, Port::NW) => Port::NE,
        (Closure::Numerator, Port::NE) => Port::NW,
        (Closure::Numerator, Port::SW) => Port::SE,
        (Closure::Numerator, Port::SE) => Port::SW,
        (Closure::Denominator, Port::NW) => Port::SW,
        (Closure::Denominator, Port::SW) => Port::NW,
        (Closure::Denominator, Port::NE) => Port::SE,
        (Closure::Denominator, Port::SE) => Port::NE,
    }
}

impl PlanarDiagram {
    /// Components of a closed diagram, traced edge by edge. Crossingless
    /// loops are not listed.
    pub fn strands(&self) -> Result<Vec<Strand>> {
        if self.is_tangle() {
            return Err(Error::NotClosed);
        }
        let mut t = Tracer::new(self);
        t.finish_rest();
        Ok(t.orientation().1)
    }

    pub fn component_count(&self) -> Result<usize> {
        Ok(self.strands()?.len() + self.free_loops)
    }

    /// Orientation of a closed diagram: each component runs from its lowest
    /// numbered edge towards that edge's later end.
    pub fn default_orientation(&self) -> Result<Orientation> {
        if self.is_tangle() {
            return Err(Error::NotClosed);
        }
        let mut t = Tracer::new(self);
        t.finish_rest();
        Ok(t.orientation().0)
    }

    /// Closes a tangle and orients the result: the strand at NW runs down
    /// into the tangle (so the one at NE runs up out of it), then the strand
    /// at SW, if still free, runs up into the tangle. Closed loops inside
    /// the tangle follow the default rule.
    pub fn close_oriented(&self, which: Closure) -> Result<(PlanarDiagram, Orientation)> {
        let ep = self.endpoints.ok_or(Error::NotATangle)?;
        let closed = self.close(which)?;
        let mut t = Tracer::new(self);
        for seed in [Port::NW, Port::SW] {
            let e = ep[seed.index()];
            if !t.visited[e as usize - 1] {
                let head = t.other_end(e, End::Port(seed));
                t.trace(e, head, partner(which));
            }
        }
        t.finish_rest();
        Ok((closed, t.orientation().0))
    }

    pub fn writhe(&self, o: &Orientation) -> Result<i64> {
        if self.is_tangle() {
            return Err(Error::NotClosed);
        }
        if o.crossing_count() != self.crossing_count() {
            return Err(Error::OrientationMismatch(format!(
                "{} crossings oriented, diagram has {}",
                o.crossing_count(),
                self.crossing_count()
            )));
        }
        Ok(o.writhe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::build_standard;

    fn closure(s: &str, which: Closure) -> (PlanarDiagram, Orientation) {
        build_standard(&s.parse().unwrap())
            .unwrap()
            .close_oriented(which)
            .unwrap()
    }

    #[test]
    fn curl_signs() {
        for pos in [true, false] {
            let c = PlanarDiagram::curl(pos);
            let o = c.default_orientation().unwrap();
            assert_eq!(c.writhe(&o).unwrap(), if pos { 1 } else { -1 });
        }
    }

    #[test]
    fn trefoil_is_right_handed() {
        let (k, o) = closure("[3]", Closure::Numerator);
        assert_eq!(k.writhe(&o).unwrap(), 3);
        assert_eq!(k.component_count().unwrap(), 1);
        // Writhe of a knot does not depend on the orientation.
        assert_eq!(k.writhe(&k.default_orientation().unwrap()).unwrap(), 3);
    }

    #[test]
    fn component_counts() {
        assert_eq!(PlanarDiagram::unknot().component_count().unwrap(), 1);
        assert_eq!(
            closure("[0]", Closure::Numerator)
                .0
                .component_count()
                .unwrap(),
            2
        );
        assert_eq!(
            closure("[2]", Closure::Numerator)
                .0
                .component_count()
                .unwrap(),
            2
        );
        assert_eq!(
            closure("[2,1,2]", Closure::Numerator)
                .0
                .component_count()
                .unwrap(),
            2
        );
        assert_eq!(
            closure("[2,2]", Closure::Numerator)
                .0
                .component_count()
                .unwrap(),
            1
        );
    }

    #[test]
    fn hopf_link_writhe_depends_on_orientation_rule() {
        let (k, o) = closure("[2]", Closure::Numerator);
        assert_eq!(k.writhe(&o).unwrap().abs(), 2);
    }

    #[test]
    fn crossingless_unknot_has_zero_writhe() {
        let u = PlanarDiagram::unknot();
        assert_eq!(u.writhe(&u.default_orientation().unwrap()).unwrap(), 0);
    }

    #[test]
    fn writhe_is_additive_over_split_unions() {
        let (k, _) = closure("[3]", Closure::Numerator);
        let c = PlanarDiagram::curl(false);
        let mut crossings = k.crossings().to_vec();
        let off = k.max_edge();
        crossings.extend(c.crossings().iter().map(|x| super::super::Crossing {
            slots: x.slots.map(|e| e + off),
        }));
        let u = PlanarDiagram::from_parts(crossings, None, 0).unwrap();
        assert_eq!(u.writhe(&u.default_orientation().unwrap()).unwrap(), 3 - 1);
        assert_eq!(u.component_count().unwrap(), 2);
    }
}
