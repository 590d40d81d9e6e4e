//! Log-terminality tests for plane curve germs.
//!
//! [`klt_bound`] is the closed-form sufficient bound for the coefficient of
//! a curve through a cyclic quotient point.  [`newton_klt`] decides whether
//! `(A^2, c' * (f = 0))` is klt at the origin by inspecting the Newton
//! polygon of `f`, after the change of variable accounting for a degree-`n`
//! cyclic cover in the second coordinate; when the polygon is degenerate it
//! improves the singularity by explicit coordinate changes and repeats.

use std::collections::BTreeMap;
use std::str::FromStr;

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::factorize;
use crate::{rint, Error, Rat, Result};

/// A polynomial germ `f(x, y)` with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl Germ {
    pub fn new(terms: impl IntoIterator<Item = ((u32, u32), Rat)>) -> Self {
        let mut g = Germ {
            terms: BTreeMap::new(),
        };
        for (k, c) in terms {
            g.add_term(k, c);
        }
        g
    }

    /// Build from `(coeff, x-exponent, y-exponent)` triples.
    pub fn from_ints(terms: &[(i64, u32, u32)]) -> Self {
        Self::new(terms.iter().map(|&(c, i, j)| ((i, j), rint(c))))
    }

    fn add_term(&mut self, key: (u32, u32), c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<(u32, u32)> {
        self.terms.keys().copied().collect()
    }

    pub fn coeff(&self, key: (u32, u32)) -> Rat {
        self.terms.get(&key).cloned().unwrap_or_else(Rat::zero)
    }

    /// `y^j -> y^(n j)`: the effect of the cyclic cover substitution.
    pub fn stretch_y(&self, n: u32) -> Germ {
        Germ::new(self.terms.iter().map(|(&(i, j), c)| ((i, j * n), c.clone())))
    }

    /// `x -> x + s y^u`.
    pub fn shift_x(&self, s: &Rat, u: u32) -> Germ {
        let mut out = Germ {
            terms: BTreeMap::new(),
        };
        for (&(i, j), c) in &self.terms {
            for k in 0..=i {
                let binom = num::integer::binomial(BigInt::from(i), BigInt::from(k));
                let coeff = c * Rat::from(binom) * pow_rat(s, i - k);
                out.add_term((k, j + u * (i - k)), coeff);
            }
        }
        out
    }

    /// `y -> y + s x^v`.
    pub fn shift_y(&self, s: &Rat, v: u32) -> Germ {
        let mut out = Germ {
            terms: BTreeMap::new(),
        };
        for (&(i, j), c) in &self.terms {
            for k in 0..=j {
                let binom = num::integer::binomial(BigInt::from(j), BigInt::from(k));
                let coeff = c * Rat::from(binom) * pow_rat(s, j - k);
                out.add_term((i + v * (j - k), k), coeff);
            }
        }
        out
    }
}

impl std::fmt::Display for Germ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "*x^{i}")?;
            }
            if j > 0 {
                write!(f, "*y^{j}")?;
            }
        }
        Ok(())
    }
}

fn pow_rat(s: &Rat, e: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..e {
        out *= s;
    }
    out
}

/// Sufficient klt bound at a point where the curve `C` meets a divisor `D`
/// with local intersection number `local`, with multiplicity `mult` and a
/// degree-`n` cover: `min(1/local + 1/(n * mult), 1/mult)`.
pub fn klt_bound(local: &Rat, mult: &Rat, n: u64) -> Result<Rat> {
    if !local.is_positive() || !mult.is_positive() || n == 0 {
        return Err(Error::InvalidInput(
            "klt_bound expects positive intersection, multiplicity and cover degree".into(),
        ));
    }
    let a = local.recip() + (mult * rint(n as i64)).recip();
    let b = mult.recip();
    Ok(a.min(b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KltOutcome {
    /// The pair is klt at the origin.
    Klt,
    /// The polygon tests did not certify klt-ness.
    NotDetermined,
}

#[derive(Clone, Debug, Serialize)]
pub struct KltAnalysis {
    pub outcome: KltOutcome,
    /// Human-readable log of the polygon inspection and coordinate changes.
    pub trace: Vec<String>,
}

/// A lower edge `u i + v j = w` of the Newton polygon, `u, v > 0` coprime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Edge {
    u: u32,
    v: u32,
    w: u64,
}

fn lower_edges(support: &[(u32, u32)]) -> Vec<Edge> {
    let mut edges: Vec<Edge> = Vec::new();
    for (a, &(i1, j1)) in support.iter().enumerate() {
        for &(i2, j2) in &support[a + 1..] {
            let (p, q) = if i1 < i2 { ((i1, j1), (i2, j2)) } else { ((i2, j2), (i1, j1)) };
            if p.0 == q.0 || p.1 <= q.1 {
                continue; // not a strictly descending segment
            }
            let mut u = p.1 - q.1;
            let mut v = q.0 - p.0;
            let g = u.gcd(&v);
            u /= g;
            v /= g;
            let w = u as u64 * p.0 as u64 + v as u64 * p.1 as u64;
            let edge = Edge { u, v, w };
            if edges.contains(&edge) {
                continue;
            }
            if support
                .iter()
                .all(|&(i, j)| u as u64 * i as u64 + v as u64 * j as u64 >= w)
            {
                edges.push(edge);
            }
        }
    }
    edges
}

/// Coefficients of the one-variable polynomial carried by an edge, indexed
/// by lattice steps `(v, -u)` from the point of smallest `i`.
fn edge_polynomial(f: &Germ, e: Edge) -> Vec<Rat> {
    let on_edge: Vec<(u32, u32)> = f
        .support()
        .into_iter()
        .filter(|&(i, j)| e.u as u64 * i as u64 + e.v as u64 * j as u64 == e.w)
        .collect();
    let i0 = on_edge.iter().map(|&(i, _)| i).min().expect("nonempty edge");
    let tmax = on_edge.iter().map(|&(i, _)| (i - i0) / e.v).max().unwrap();
    let mut q = vec![Rat::zero(); tmax as usize + 1];
    for (i, j) in on_edge {
        q[((i - i0) / e.v) as usize] = f.coeff((i, j));
    }
    q
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs
}

/// Nonzero rational roots of `q` with their multiplicities.
fn rational_roots(q: &[Rat]) -> Vec<(Rat, u32)> {
    assert!(!q[0].is_zero(), "edge polynomial has nonzero constant term");
    let lcm = q
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q.iter().map(|c| (c * Rat::from(lcm.clone())).to_integer()).collect();
    let lead = ints.last().expect("nonempty polynomial").abs();
    let tail = ints[0].abs();
    let mut roots = Vec::new();
    for p in divisors(&tail) {
        for qd in divisors(&lead) {
            for sign in [1i64, -1] {
                let cand = Rat::new(&p * BigInt::from(sign), qd.clone());
                if roots.iter().any(|(r, _)| *r == cand) {
                    continue;
                }
                let mult = root_multiplicity(q, &cand);
                if mult > 0 {
                    roots.push((cand, mult));
                }
            }
        }
    }
    roots
}

fn root_multiplicity(q: &[Rat], s: &Rat) -> u32 {
    let mut cur = q.to_vec();
    let mut mult = 0;
    loop {
        let value = cur
            .iter()
            .rev()
            .fold(Rat::zero(), |acc, c| acc * s + c);
        if !value.is_zero() {
            return mult;
        }
        // Synthetic division by (t - s); the remainder is the value, zero.
        let nd = cur.len() - 1;
        let mut quot = vec![Rat::zero(); nd];
        for k in (1..=nd).rev() {
            quot[k - 1] = if k == nd {
                cur[nd].clone()
            } else {
                &cur[k] + &quot[k] * s
            };
        }
        cur = quot;
        mult += 1;
        if cur.is_empty() {
            return mult;
        }
    }
}

/// Decide klt-ness of the pair with coefficient `c / m` after the `y -> y^n`
/// cover substitution, tracing every polygon step.  Returns the distinct
/// axis-support error when the (possibly transformed) germ is supported on
/// a single coordinate axis and no positive test applies.
pub fn newton_klt(f: &Germ, c: &Rat, m: u64, n: u64) -> Result<KltAnalysis> {
    if f.is_zero() {
        return Err(Error::InvalidInput("the germ is identically zero".into()));
    }
    if !c.is_positive() || m == 0 || n == 0 {
        return Err(Error::InvalidInput(
            "coefficient, multiplicity and cover degree must be positive".into(),
        ));
    }
    let c_eff = c / rint(m as i64);
    if c_eff >= Rat::one() {
        // A pair with coefficient >= 1 along a curve through the point is
        // never klt there; nothing to test.
        return Ok(KltAnalysis {
            outcome: KltOutcome::NotDetermined,
            trace: vec![format!("effective coefficient {c_eff} >= 1")],
        });
    }
    let bound = c_eff.recip();
    let mut trace = vec![format!(
        "effective coefficient {c_eff}, polygon test threshold {bound}"
    )];
    let mut g = f.stretch_y(n as u32);
    if n > 1 {
        trace.push(format!("cover substitution y -> y^{n}: f = {g}"));
    }

    let cap = g.support().iter().map(|&(_, j)| j).max().unwrap_or(0) as usize + 2;
    for _ in 0..cap {
        let support = g.support();
        let mut changed = false;
        for e in lower_edges(&support) {
            let q = edge_polynomial(&g, e);
            let roots = rational_roots(&q);
            let threshold = Rat::new(BigInt::from(e.w), BigInt::from(e.u as u64 + e.v as u64));
            let mut qualifying = roots
                .into_iter()
                .filter(|(_, mult)| Rat::from(BigInt::from(*mult)) > threshold);
            let Some((s0, mult)) = qualifying.next() else {
                continue;
            };
            assert!(
                qualifying.next().is_none(),
                "at most one root can exceed the edge threshold"
            );
            // A root of multiplicity > w/(u+v) forces min(u, v) = 1.
            assert!(e.u == 1 || e.v == 1, "high-multiplicity edge must touch an axis");
            trace.push(format!(
                "edge {}i + {}j = {}: root {s0} of multiplicity {mult} exceeds {threshold}",
                e.u, e.v, e.w
            ));
            if e.v == 1 {
                g = g.shift_x(&s0, e.u);
                trace.push(format!("change x -> x + ({s0}) y^{}: f = {g}", e.u));
            } else {
                let s = s0.recip();
                g = g.shift_y(&s, e.v);
                trace.push(format!("change y -> y + ({s}) x^{}: f = {g}", e.v));
            }
            changed = true;
            break;
        }
        if changed {
            continue;
        }

        // No improving change: apply the positive polygon tests.
        let support = g.support();
        // Main case: a segment of the support crosses the diagonal below
        // the threshold.
        let mut best: Option<Rat> = None;
        let diag = |p: (u32, u32)| rint(p.0 as i64) - rint(p.1 as i64);
        for (a, &p) in support.iter().enumerate() {
            for &q in &support[a..] {
                let dp = diag(p);
                let dq = diag(q);
                let gamma = if dp.is_zero() {
                    rint(p.0 as i64)
                } else if dq.is_zero() {
                    rint(q.0 as i64)
                } else if dp.is_positive() != dq.is_positive() {
                    // Intersection of the segment with the diagonal.
                    let lam = -&dp / (&dq - &dp);
                    rint(p.0 as i64) + lam * (rint(q.0 as i64) - rint(p.0 as i64))
                } else {
                    continue;
                };
                if best.as_ref().is_none_or(|b| gamma < *b) {
                    best = Some(gamma);
                }
            }
        }
        if let Some(gamma) = best {
            if gamma < bound {
                trace.push(format!("main case: diagonal point {gamma} < {bound}; klt"));
                return Ok(KltAnalysis {
                    outcome: KltOutcome::Klt,
                    trace,
                });
            }
            trace.push(format!("main case fails: smallest diagonal point {gamma} >= {bound}"));
        }
        // Degenerate case: one vertex with both exponents below the
        // threshold.
        if let Some(&(i, j)) = support
            .iter()
            .find(|&&(i, j)| rint(i as i64) < bound && rint(j as i64) < bound)
        {
            trace.push(format!(
                "degenerate case: vertex ({i}, {j}) with both exponents < {bound}; klt"
            ));
            return Ok(KltAnalysis {
                outcome: KltOutcome::Klt,
                trace,
            });
        }
        let on_one_axis =
            support.iter().all(|&(i, _)| i == 0) || support.iter().all(|&(_, j)| j == 0);
        if on_one_axis {
            return Err(Error::AxisSupport(format!("{g}")));
        }
        trace.push("no polygon test applies".to_string());
        return Ok(KltAnalysis {
            outcome: KltOutcome::NotDetermined,
            trace,
        });
    }
    trace.push("iteration cap reached".to_string());
    Ok(KltAnalysis {
        outcome: KltOutcome::NotDetermined,
        trace,
    })
}

/// CLI input format for the polygon test.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KltNewtonSpec {
    /// Terms of the germ.
    pub terms: Vec<TermSpec>,
    /// Coefficient of the germ, as a rational string like "5/6".
    pub c: String,
    #[serde(default = "default_one")]
    pub m: u64,
    #[serde(default = "default_one")]
    pub n: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermSpec {
    pub c: String,
    pub x: u32,
    pub y: u32,
}

fn default_one() -> u64 {
    1
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl KltNewtonSpec {
    pub fn run(&self) -> Result<KltAnalysis> {
        let mut terms = Vec::new();
        for t in &self.terms {
            terms.push(((t.x, t.y), parse_rat(&t.c)?));
        }
        newton_klt(&Germ::new(terms), &parse_rat(&self.c)?, self.m, self.n)
    }
}

/// CLI input format for the closed-form bound.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KltBoundSpec {
    pub local: String,
    pub mult: String,
    pub n: u64,
}

impl KltBoundSpec {
    pub fn run(&self) -> Result<Rat> {
        klt_bound(&parse_rat(&self.local)?, &parse_rat(&self.mult)?, self.n)
    }
}
