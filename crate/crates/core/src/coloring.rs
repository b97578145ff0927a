//! Integral colorings: at every crossing the two under-arcs `x`, `z` and the
//! over-arc `y` satisfy `x + z = 2y`.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::diagram::{build_standard_traced, EdgeId, PlanarDiagram, Port, Twist, UnionFind};
use crate::error::{Error, Result};
use crate::serde_util::{big, big_vec};
use crate::tangle::{ContinuedFraction, Fraction};

/// Boundary colors `[[NW, NE], [SW, SE]] = [[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ColorMatrix {
    #[serde(serialize_with = "big")]
    pub a: BigInt,
    #[serde(serialize_with = "big")]
    pub b: BigInt,
    #[serde(serialize_with = "big")]
    pub c: BigInt,
    #[serde(serialize_with = "big")]
    pub d: BigInt,
}

impl ColorMatrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    /// `a + d = b + c`.
    pub fn diagonal_sum_holds(&self) -> bool {
        &self.a + &self.d == &self.b + &self.c
    }

    /// `f = (b - a) / (b - d)`.
    pub fn fraction(&self) -> Result<Fraction> {
        Fraction::new(&self.b - &self.a, &self.b - &self.d).map_err(|_| Error::DegenerateColoring)
    }
}

pub fn coloring_fraction(m: &ColorMatrix) -> Result<Fraction> {
    m.fraction()
}

/// A standard-form rational tangle with the coloring grown from its two
/// starting arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredTangle {
    pub cf: ContinuedFraction,
    pub diagram: PlanarDiagram,
    /// Color of each edge, indexed by `edge - 1`.
    pub colors: Vec<BigInt>,
    pub matrix: ColorMatrix,
}

impl ColoredTangle {
    pub fn color(&self, e: EdgeId) -> &BigInt {
        &self.colors[e as usize - 1]
    }

    /// Checks `x + z = 2y` at every crossing and that both over-edges agree.
    pub fn is_valid(&self) -> bool {
        coloring_is_valid(&self.diagram, &self.colors, None)
    }

    /// Colors of the arcs (edges joined through over-passes) as a multiset.
    pub fn arc_colors(&self) -> Vec<BigInt> {
        arcs(&self.diagram, None)
            .into_iter()
            .map(|arc| self.color(arc[0]).clone())
            .collect()
    }
}

fn coloring_is_valid(d: &PlanarDiagram, colors: &[BigInt], modulus: Option<&BigInt>) -> bool {
    let zero = |x: BigInt| match modulus {
        Some(m) if !m.is_zero() => x.mod_floor(m).is_zero(),
        _ => x.is_zero(),
    };
    d.crossings().iter().all(|c| {
        let col = |s: usize| &colors[c.slots[s] as usize - 1];
        zero(col(1) - col(3)) && zero(col(0) + col(2) - col(1) * 2)
    })
}

/// Edges grouped into arcs: over-edges at a crossing are one arc, and the
/// optional closure joins `NW`-`NE` and `SW`-`SE`.
fn arcs(d: &PlanarDiagram, closure: Option<[(Port, Port); 2]>) -> Vec<Vec<EdgeId>> {
    let n = d.max_edge() as usize;
    let mut uf = UnionFind::new(n + 1);
    for c in d.crossings() {
        uf.union(c.slots[1] as usize, c.slots[3] as usize);
    }
    if let (Some(pairs), Some(ep)) = (closure, d.endpoints()) {
        for (x, y) in pairs {
            uf.union(ep[x.index()] as usize, ep[y.index()] as usize);
        }
    }
    let mut groups: HashMap<usize, Vec<EdgeId>> = HashMap::new();
    for e in 1..=n {
        groups.entry(uf.find(e)).or_default().push(e as EdgeId);
    }
    let mut out: Vec<Vec<EdgeId>> = groups.into_values().collect();
    out.sort();
    out
}

/// Colors the standard-form tangle of `cf` as it is twisted together. The
/// starting arcs get `start.0` and `start.1`: top then bottom when the
/// construction starts from `[0]`, left then right from `[inf]`. With
/// `(0, 1)` the fraction of `[1]` is `+1`.
pub fn color_standard(cf: &ContinuedFraction, start: (BigInt, BigInt)) -> Result<ColoredTangle> {
    let traced = build_standard_traced(cf)?;
    let d = traced.diagram;
    let mut colors: Vec<Option<BigInt>> = vec![None; d.max_edge() as usize];
    let [s0, s1] = traced.seeds;
    colors[s0 as usize - 1] = Some(start.0.clone());
    colors[s1 as usize - 1] = Some(start.1.clone());
    let get = |colors: &[Option<BigInt>], e: EdgeId| -> BigInt {
        colors[e as usize - 1]
            .clone()
            .expect("twists only read colored edges")
    };
    for (k, Twist { right, positive }) in traced.steps.iter().copied().enumerate() {
        let slots = d.crossings()[k].slots;
        // Undo the local slot layout.
        let [nw, ne, sw, se] = if positive {
            let [sw, se, ne, nw] = slots;
            [nw, ne, sw, se]
        } else {
            let [nw, sw, se, ne] = slots;
            [nw, ne, sw, se]
        };
        // Old edges carry colors; the over-strand keeps its color and the
        // under-strand's new end gets twice it minus the old end.
        let (new_a, va, new_b, vb) = match (right, positive) {
            (true, true) => {
                let (x, y) = (get(&colors, nw), get(&colors, sw));
                (ne, &x * 2 - &y, se, x)
            }
            (true, false) => {
                let (x, y) = (get(&colors, nw), get(&colors, sw));
                (ne, y.clone(), se, &y * 2 - &x)
            }
            (false, true) => {
                let (x, y) = (get(&colors, nw), get(&colors, ne));
                (sw, &x * 2 - &y, se, x)
            }
            (false, false) => {
                let (x, y) = (get(&colors, nw), get(&colors, ne));
                (sw, y.clone(), se, &y * 2 - &x)
            }
        };
        colors[new_a as usize - 1] = Some(va);
        colors[new_b as usize - 1] = Some(vb);
    }
    let colors: Vec<BigInt> = colors
        .into_iter()
        .map(|c| c.expect("every edge is reached from the starting arcs"))
        .collect();
    let ep = d.endpoints().expect("standard form is a tangle");
    let at = |p: Port| colors[ep[p.index()] as usize - 1].clone();
    let matrix = ColorMatrix {
        a: at(Port::NW),
        b: at(Port::NE),
        c: at(Port::SW),
        d: at(Port::SE),
    };
    Ok(ColoredTangle {
        cf: cf.clone(),
        diagram: d,
        colors,
        matrix,
    })
}

/// Colors with the default starting colors `(0, 1)`.
pub fn color_standard_default(cf: &ContinuedFraction) -> Result<ColoredTangle> {
    color_standard(cf, (BigInt::zero(), BigInt::one()))
}

/// Coloring of the numerator closure of a standard-form tangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureColoring {
    /// Colors live in `Z/modulus`; 0 means the integers.
    #[serde(serialize_with = "big")]
    pub modulus: BigInt,
    /// Every crossing relation and arc identification holds mod `modulus`.
    pub valid: bool,
    /// Modulus 0 or 1: the coloring carries no information.
    pub trivial: bool,
    /// Distinct arcs carry distinct colors mod `modulus`.
    pub all_distinct: bool,
    /// One color per arc of the closed diagram, reduced mod `modulus`.
    #[serde(serialize_with = "big_vec")]
    pub arc_colors: Vec<BigInt>,
}

/// Pushes the tangle coloring through the numerator closure: the closing
/// arcs force `a = b` and `c = d`, so colors live modulo the gcd of those
/// two differences.
pub fn color_closure_mod(cf: &ContinuedFraction) -> Result<ClosureColoring> {
    let t = color_standard_default(cf)?;
    let m = &t.matrix;
    let modulus = (&m.b - &m.a).gcd(&(&m.d - &m.c));
    let reduce = |x: &BigInt| {
        if modulus.is_zero() {
            x.clone()
        } else {
            x.mod_floor(&modulus)
        }
    };
    let groups = arcs(
        &t.diagram,
        Some([(Port::NW, Port::NE), (Port::SW, Port::SE)]),
    );
    let mut valid = coloring_is_valid(&t.diagram, &t.colors, Some(&modulus));
    let mut arc_colors = Vec::with_capacity(groups.len());
    for g in &groups {
        let c0 = reduce(t.color(g[0]));
        valid &= g.iter().all(|&e| reduce(t.color(e)) == c0);
        arc_colors.push(c0);
    }
    let mut sorted = arc_colors.clone();
    sorted.sort();
    sorted.dedup();
    Ok(ClosureColoring {
        trivial: modulus <= BigInt::one(),
        all_distinct: sorted.len() == arc_colors.len(),
        modulus,
        valid,
        arc_colors,
    })
}

/// Colors an arbitrary tangle diagram by solving the crossing relations over
/// the rationals. The solutions always include the constants; the tangle is
/// colorable when they form exactly a plane, and the matrix is taken from an
/// integral non-constant solution.
pub fn color_diagram(d: &PlanarDiagram) -> Result<ColorMatrix> {
    let ep = d.endpoints().ok_or(Error::NotATangle)?;
    let groups = arcs(d, None);
    let mut arc_of = vec![0usize; d.max_edge() as usize + 1];
    for (i, g) in groups.iter().enumerate() {
        for &e in g {
            arc_of[e as usize] = i;
        }
    }
    let n = groups.len();
    let rows: Vec<Vec<BigRational>> = d
        .crossings()
        .iter()
        .map(|c| {
            let mut r = vec![BigRational::zero(); n];
            let idx = |s: usize| arc_of[c.slots[s] as usize];
            r[idx(0)] += BigRational::one();
            r[idx(2)] += BigRational::one();
            r[idx(1)] -= BigRational::from_integer(2.into());
            r
        })
        .collect();
    let kernel = kernel_basis(rows, n);
    if kernel.len() != 2 {
        return Err(Error::NotColorable);
    }
    // Pick a kernel vector that is not constant.
    let v = kernel
        .into_iter()
        .find(|v| v.iter().any(|x| x != &v[0]))
        .ok_or(Error::NotColorable)?;
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let at = |p: Port| ints[arc_of[ep[p.index()] as usize]].clone();
    let m = ColorMatrix {
        a: at(Port::NW),
        b: at(Port::NE),
        c: at(Port::SW),
        d: at(Port::SE),
    };
    if (&m.b - &m.a).is_zero() && (&m.b - &m.d).is_zero() {
        return Err(Error::DegenerateColoring);
    }
    Ok(m)
}

/// Null space of a rational matrix with `n` columns, one vector per free
/// column.
fn kernel_basis(mut rows: Vec<Vec<BigRational>>, n: usize) -> Vec<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= p * &f;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![BigRational::zero(); n];
            v[free] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -rows[i][free].clone();
            }
            v
        })
        .collect()
}

/// `|p|` of a reduced fraction as seen by the closure coloring.
pub fn closure_modulus(m: &ColorMatrix) -> BigInt {
    (&m.b - &m.a).gcd(&(&m.d - &m.c)).abs()
}
