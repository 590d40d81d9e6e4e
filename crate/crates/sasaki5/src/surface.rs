//! Rational surfaces with cyclic quotient singularities.
//!
//! A [`SurfaceModel`] carries a chosen basis of the Weil class group, the
//! exact rational intersection pairing on that basis (when encoded), the
//! canonical class, the singular points with the restriction map to their
//! local class groups, and a curated list of extremal curve classes used
//! for ampleness tests.
//!
//! Points of weighted blow-ups are assumed general: smooth points of the
//! base, pairwise distinct.  An exceptional curve over a weight-`m` point
//! has self-intersection `-1/m` and generates the `Z/m` local class group
//! of the new singular point.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::{subgroup_type, FiniteAbelianGroup};
use crate::{rat, rint, Error, Rat, Result};

/// A Q-divisor class written in the surface's chosen basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Div(pub Vec<Rat>);

impl Div {
    pub fn from_ints(coords: &[i64]) -> Self {
        Div(coords.iter().map(|&c| rint(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Div(vec![Rat::zero(); dim])
    }

    pub fn scale(&self, s: &Rat) -> Div {
        Div(self.0.iter().map(|c| c * s).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Coordinates as integers, or `None` if any coordinate has a
    /// denominator.
    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl Add for &Div {
    type Output = Div;
    fn add(self, other: &Div) -> Div {
        assert_eq!(self.0.len(), other.0.len());
        Div(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Div {
    type Output = Div;
    fn sub(self, other: &Div) -> Div {
        assert_eq!(self.0.len(), other.0.len());
        Div(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Div {
    type Output = Div;
    fn neg(self) -> Div {
        Div(self.0.iter().map(|c| -c).collect())
    }
}

// Display needs the basis names, so the standalone form just prints the
// coordinate vector; `SurfaceModel::describe_class` gives the named form.
impl fmt::Display for Div {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A cyclic quotient singular point with local class group `Z/order`.
/// `restriction[i]` is the image of the `i`-th basis class in `Z/order`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularPoint {
    pub order: u64,
    pub restriction: Vec<u64>,
}

/// A named extremal curve class used as an ampleness certificate.
#[derive(Clone, Debug)]
pub struct NamedClass {
    pub name: String,
    pub class: Div,
}

/// Degree and singularity of the family base underneath a chain of
/// weighted blow-ups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaseInfo {
    pub degree: u64,
    pub singular: bool,
}

#[derive(Clone, Debug)]
pub struct SurfaceModel {
    pub name: String,
    /// Names of the chosen Weil class group generators.
    pub basis: Vec<String>,
    /// Order of each basis class: 0 for a free generator, n >= 2 for a
    /// torsion generator of order n.
    pub class_orders: Vec<u64>,
    /// Intersection matrix on the basis; `None` when the lattice data of a
    /// catalog surface has not been encoded.  Torsion generators pair to
    /// zero with everything.
    pub pairing: Option<Vec<Vec<Rat>>>,
    /// Canonical class in basis coordinates.
    pub canonical: Vec<Rat>,
    pub singularities: Vec<SingularPoint>,
    /// The divisibility invariant of -K when the surface belongs to the
    /// weighted blow-up family over the five degree-d bases; `None`
    /// otherwise.
    pub degree: Option<u64>,
    /// Cumulative blow-up weights over the underlying family base.
    pub blowup_weights: Vec<u64>,
    /// Family base data, when the surface arises by weighted blow-ups from
    /// one of the five degree bases.
    pub base_info: Option<BaseInfo>,
    /// Curve classes tested by the ampleness check.
    pub curve_cone: Vec<NamedClass>,
}

/// Outcome of the log Del Pezzo test for a pair `(S, Delta)`.
#[derive(Clone, Debug, Serialize)]
pub enum Ampleness {
    Ample,
    /// `-(K + Delta)` pairs non-positively with the named curve class.
    Violation {
        curve: String,
        #[serde(serialize_with = "crate::serde_str::ser")]
        value: Rat,
    },
}

impl Ampleness {
    pub fn is_ample(&self) -> bool {
        matches!(self, Ampleness::Ample)
    }
}

impl SurfaceModel {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn check_dim(&self, d: &Div) -> Result<()> {
        if d.0.len() == self.dim() {
            Ok(())
        } else {
            Err(Error::BasisMismatch {
                expected: self.dim(),
                got: d.0.len(),
            })
        }
    }

    /// The class `sum coords[i] * basis[i]`.
    pub fn class(&self, coords: &[i64]) -> Result<Div> {
        let d = Div::from_ints(coords);
        self.check_dim(&d)?;
        Ok(d)
    }

    pub fn basis_class(&self, name: &str) -> Result<Div> {
        let i = self
            .basis
            .iter()
            .position(|b| b == name)
            .ok_or_else(|| Error::InvalidInput(format!("no basis class named {name}")))?;
        let mut d = Div::zero(self.dim());
        d.0[i] = Rat::one();
        Ok(d)
    }

    pub fn canonical_class(&self) -> Div {
        Div(self.canonical.clone())
    }

    pub fn intersect(&self, a: &Div, b: &Div) -> Result<Rat> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let pairing = self.pairing.as_ref().ok_or_else(|| {
            Error::DataNotEncoded(format!("intersection pairing of {}", self.name))
        })?;
        let mut acc = Rat::zero();
        for (i, ai) in a.0.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.0.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                acc += ai * bj * &pairing[i][j];
            }
        }
        Ok(acc)
    }

    /// Arithmetic genus from adjunction: `g = 1 + (D^2 + D.K) / 2`.
    /// Errors when the result is not an integer (the class is not
    /// represented by a curve avoiding the singular set).
    pub fn genus(&self, d: &Div) -> Result<BigInt> {
        let k = self.canonical_class();
        let g = (self.intersect(d, d)? + self.intersect(d, &k)?) / rint(2) + Rat::one();
        if g.is_integer() {
            Ok(g.to_integer())
        } else {
            Err(Error::NonIntegralGenus(self.describe_class(d)))
        }
    }

    pub fn k_squared(&self) -> Result<Rat> {
        let k = self.canonical_class();
        self.intersect(&k, &k)
    }

    /// Is `(S, Delta)` a log Del Pezzo pair, i.e. is `-(K + Delta)` ample?
    /// Positivity is tested against the curated curve cone and the
    /// self-intersection.
    pub fn is_log_del_pezzo(&self, delta: &Div) -> Result<Ampleness> {
        self.check_dim(delta)?;
        let a = &(-&self.canonical_class()) - delta;
        for c in &self.curve_cone {
            let v = self.intersect(&a, &c.class)?;
            if !v.is_positive() {
                return Ok(Ampleness::Violation {
                    curve: c.name.clone(),
                    value: v,
                });
            }
        }
        let sq = self.intersect(&a, &a)?;
        if !sq.is_positive() {
            return Ok(Ampleness::Violation {
                curve: "self-intersection".to_string(),
                value: sq,
            });
        }
        Ok(Ampleness::Ample)
    }

    /// Image of an integral class in the local class group `Z/order` of the
    /// `j`-th singular point.
    pub fn restriction_at(&self, j: usize, class: &Div) -> Result<u64> {
        self.check_dim(class)?;
        let pt = &self.singularities[j];
        let coords = class
            .integer_coords()
            .ok_or_else(|| Error::InvalidInput("restriction needs an integral class".into()))?;
        let n = BigInt::from(pt.order);
        let mut acc = BigInt::zero();
        for (c, &r) in coords.iter().zip(&pt.restriction) {
            acc += c * BigInt::from(r);
        }
        let r = ((acc % &n) + &n) % &n;
        Ok((&r).try_into().expect("reduced residue fits in u64"))
    }

    /// The quotient of the Weil class group by the subgroup of Cartier
    /// classes, computed as the image of the restriction map to the sum of
    /// the local class groups.
    pub fn weil_mod_pic(&self) -> FiniteAbelianGroup {
        let orders: Vec<u64> = self.singularities.iter().map(|p| p.order).collect();
        if orders.is_empty() {
            return FiniteAbelianGroup::trivial();
        }
        let generators: Vec<Vec<u64>> = (0..self.dim())
            .map(|i| {
                self.singularities
                    .iter()
                    .map(|p| p.restriction[i])
                    .collect()
            })
            .collect();
        subgroup_type(&orders, &generators)
    }

    pub fn describe_class(&self, d: &Div) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (c, name) in d.0.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                parts.push(name.clone());
            } else {
                parts.push(format!("{c}*{name}"));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

fn free_basis(names: &[&str]) -> (Vec<String>, Vec<u64>) {
    (
        names.iter().map(|s| s.to_string()).collect(),
        vec![0; names.len()],
    )
}

/// The projective plane: basis `H`, `H^2 = 1`, `K = -3H`.
pub fn p2() -> SurfaceModel {
    let (basis, class_orders) = free_basis(&["H"]);
    SurfaceModel {
        name: "P2".to_string(),
        basis,
        class_orders,
        pairing: Some(vec![vec![rint(1)]]),
        canonical: vec![rint(-3)],
        singularities: vec![],
        degree: Some(3),
        blowup_weights: vec![],
        base_info: Some(BaseInfo { degree: 3, singular: false }),
        curve_cone: vec![NamedClass {
            name: "H".to_string(),
            class: Div::from_ints(&[1]),
        }],
    }
}

/// The quadric `P1 x P1`: basis the two rulings `E`, `F`.
pub fn p1xp1() -> SurfaceModel {
    let (basis, class_orders) = free_basis(&["E", "F"]);
    SurfaceModel {
        name: "P1xP1".to_string(),
        basis,
        class_orders,
        pairing: Some(vec![vec![rint(0), rint(1)], vec![rint(1), rint(0)]]),
        canonical: vec![rint(-2), rint(-2)],
        singularities: vec![],
        degree: Some(2),
        blowup_weights: vec![],
        base_info: Some(BaseInfo { degree: 2, singular: false }),
        curve_cone: vec![
            NamedClass {
                name: "E".to_string(),
                class: Div::from_ints(&[1, 0]),
            },
            NamedClass {
                name: "F".to_string(),
                class: Div::from_ints(&[0, 1]),
            },
        ],
    }
}

/// The Hirzebruch surface `F_n`: basis the negative section `E`
/// (`E^2 = -n`) and a fiber `F`, `K = -2E - (n+2)F`.
pub fn hirzebruch(n: u64) -> SurfaceModel {
    let (basis, class_orders) = free_basis(&["E", "F"]);
    SurfaceModel {
        name: format!("F{n}"),
        basis,
        class_orders,
        pairing: Some(vec![
            vec![rint(-(n as i64)), rint(1)],
            vec![rint(1), rint(0)],
        ]),
        canonical: vec![rint(-2), rint(-(n as i64 + 2))],
        singularities: vec![],
        degree: None,
        blowup_weights: vec![],
        base_info: None,
        curve_cone: vec![
            NamedClass {
                name: "E".to_string(),
                class: Div::from_ints(&[1, 0]),
            },
            NamedClass {
                name: "F".to_string(),
                class: Div::from_ints(&[0, 1]),
            },
        ],
    }
}

/// The weighted projective plane `P(a,b,c)`: rank one Weil class group
/// generated by `H` with `H^2 = 1/(abc)`, `K = -(a+b+c)H`, one cyclic
/// quotient point of order `w` for each weight `w > 1` (weights are
/// assumed pairwise coprime).  The class `H` restricts to a generator of
/// every local class group.
pub fn weighted_p2(a: u64, b: u64, c: u64) -> Result<SurfaceModel> {
    let w = [a, b, c];
    if w.iter().any(|&x| x == 0) {
        return Err(Error::InvalidInput("weights must be positive".into()));
    }
    for i in 0..3 {
        for j in i + 1..3 {
            if w[i].gcd(&w[j]) != 1 {
                return Err(Error::InvalidInput(format!(
                    "weights {} and {} are not coprime",
                    w[i], w[j]
                )));
            }
        }
    }
    let (basis, class_orders) = free_basis(&["H"]);
    let degree = match (a, b, c) {
        (1, 1, 1) => Some(3),
        (1, 1, 2) => Some(4),
        (1, 2, 3) => Some(6),
        _ => None,
    };
    Ok(SurfaceModel {
        name: format!("P({a},{b},{c})"),
        basis,
        class_orders,
        pairing: Some(vec![vec![Rat::new(
            BigInt::one(),
            BigInt::from(a * b * c),
        )]]),
        canonical: vec![rint(-((a + b + c) as i64))],
        singularities: w
            .iter()
            .filter(|&&x| x > 1)
            .map(|&x| SingularPoint {
                order: x,
                restriction: vec![1],
            })
            .collect(),
        degree,
        blowup_weights: vec![],
        base_info: degree.map(|d| BaseInfo {
            degree: d,
            singular: w.iter().any(|&x| x > 1),
        }),
        curve_cone: vec![NamedClass {
            name: "H".to_string(),
            class: Div::from_ints(&[1]),
        }],
    })
}

/// The degree five log Del Pezzo surface with one `Z/5` point:
/// `H^2 = 1/5`, `K = -5H`.
pub fn s5() -> SurfaceModel {
    let (basis, class_orders) = free_basis(&["H"]);
    SurfaceModel {
        name: "S5".to_string(),
        basis,
        class_orders,
        pairing: Some(vec![vec![rat(1, 5)]]),
        canonical: vec![rint(-5)],
        singularities: vec![SingularPoint {
            order: 5,
            restriction: vec![1],
        }],
        degree: Some(5),
        blowup_weights: vec![],
        base_info: Some(BaseInfo { degree: 5, singular: true }),
        curve_cone: vec![NamedClass {
            name: "H".to_string(),
            class: Div::from_ints(&[1]),
        }],
    }
}

/// Weighted blow-up of `base` at general smooth points with the given
/// weights.  Each weight `m` adds an exceptional class `E_i` with
/// `E_i^2 = -1/m`, orthogonal to everything else; the canonical class
/// becomes `pi^* K + sum m_i E_i`; each weight `m > 1` adds a `Z/m` point
/// whose local class group is generated by the restriction of `E_i`.
pub fn blow_up(base: &SurfaceModel, weights: &[u64]) -> Result<SurfaceModel> {
    if weights.iter().any(|&m| m == 0) {
        return Err(Error::InvalidInput("blow-up weights must be positive".into()));
    }
    let n0 = base.dim();
    let k = weights.len();
    let dim = n0 + k;

    let mut basis = base.basis.clone();
    let mut class_orders = base.class_orders.clone();
    for i in 0..k {
        basis.push(format!("E{}", i + 1));
        class_orders.push(0);
    }

    let pairing = base.pairing.as_ref().map(|p| {
        let mut m = vec![vec![Rat::zero(); dim]; dim];
        for i in 0..n0 {
            for j in 0..n0 {
                m[i][j] = p[i][j].clone();
            }
        }
        for (i, &w) in weights.iter().enumerate() {
            m[n0 + i][n0 + i] = Rat::new(BigInt::from(-1), BigInt::from(w));
        }
        m
    });

    let mut canonical: Vec<Rat> = base.canonical.clone();
    canonical.extend(weights.iter().map(|&m| rint(m as i64)));

    let mut singularities: Vec<SingularPoint> = base
        .singularities
        .iter()
        .map(|p| {
            let mut r = p.restriction.clone();
            r.resize(dim, 0);
            SingularPoint {
                order: p.order,
                restriction: r,
            }
        })
        .collect();
    for (i, &m) in weights.iter().enumerate() {
        if m > 1 {
            let mut r = vec![0; dim];
            r[n0 + i] = 1;
            singularities.push(SingularPoint {
                order: m,
                restriction: r,
            });
        }
    }

    let degree = base.degree.map(|dt| {
        weights.iter().fold(dt, |acc, &m| acc.gcd(&m))
    });

    let mut curve_cone: Vec<NamedClass> = base
        .curve_cone
        .iter()
        .map(|c| {
            let mut class = c.class.0.clone();
            class.resize(dim, Rat::zero());
            NamedClass {
                name: format!("pi*{}", c.name),
                class: Div(class),
            }
        })
        .collect();
    for i in 0..k {
        let mut class = vec![Rat::zero(); dim];
        class[n0 + i] = Rat::one();
        curve_cone.push(NamedClass {
            name: format!("E{}", i + 1),
            class: Div(class),
        });
    }

    let mut blowup_weights = base.blowup_weights.clone();
    blowup_weights.extend_from_slice(weights);

    let wnames: Vec<String> = weights.iter().map(u64::to_string).collect();
    Ok(SurfaceModel {
        name: format!("B[{}]({})", wnames.join(","), base.name),
        basis,
        class_orders,
        pairing,
        canonical,
        singularities,
        degree,
        blowup_weights,
        base_info: base.base_info,
        curve_cone,
    })
}

/// Serializable description of a surface, the input format of the CLI.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SurfaceSpec {
    P2,
    P1xP1,
    Hirzebruch { n: u64 },
    WeightedP2 { weights: [u64; 3] },
    S5,
    BlowUp { base: Box<SurfaceSpec>, weights: Vec<u64> },
    /// A surface from the built-in catalog, looked up by name.
    Catalog { name: String },
}

impl SurfaceSpec {
    pub fn build(&self) -> Result<SurfaceModel> {
        match self {
            SurfaceSpec::P2 => Ok(p2()),
            SurfaceSpec::P1xP1 => Ok(p1xp1()),
            SurfaceSpec::Hirzebruch { n } => Ok(hirzebruch(*n)),
            SurfaceSpec::WeightedP2 { weights: [a, b, c] } => weighted_p2(*a, *b, *c),
            SurfaceSpec::S5 => Ok(s5()),
            SurfaceSpec::BlowUp { base, weights } => blow_up(&base.build()?, weights),
            SurfaceSpec::Catalog { name } => crate::catalog::surface_by_name(name),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hirzebruch_intersections() {
        let f4 = hirzebruch(4);
        let d = f4.class(&[2, 8]).unwrap();
        let ef = f4.class(&[1, 1]).unwrap();
        assert_eq!(f4.intersect(&d, &ef).unwrap(), rint(2));

        let f3 = hirzebruch(3);
        let delta = Div(vec![rat(2, 5), rat(1, 5)]);
        let e = f3.basis_class("E").unwrap();
        assert_eq!(f3.intersect(&delta, &e).unwrap(), rint(-1));

        let f5 = hirzebruch(5);
        let delta = Div(vec![rat(2, 3), rat(1, 3)]);
        let e = f5.basis_class("E").unwrap();
        assert_eq!(f5.intersect(&delta, &e).unwrap(), rint(-3));
    }

    #[test]
    fn genus_examples() {
        let f3 = hirzebruch(3);
        assert_eq!(f3.genus(&f3.class(&[2, 6]).unwrap()).unwrap(), BigInt::from(2));
        let f2 = hirzebruch(2);
        assert_eq!(f2.genus(&f2.class(&[2, 5]).unwrap()).unwrap(), BigInt::from(2));
        let f5 = hirzebruch(5);
        assert_eq!(f5.genus(&f5.class(&[2, 10]).unwrap()).unwrap(), BigInt::from(4));
        let p = p2();
        assert_eq!(p.genus(&p.class(&[3]).unwrap()).unwrap(), BigInt::from(1));
    }

    #[test]
    fn weighted_plane_invariants() {
        let s = weighted_p2(1, 1, 3).unwrap();
        let h = s.basis_class("H").unwrap();
        assert_eq!(s.intersect(&h, &h).unwrap(), rat(1, 3));
        assert_eq!(s.canonical_class(), Div(vec![rint(-5)]));
        assert_eq!(s.genus(&s.class(&[6]).unwrap()).unwrap(), BigInt::from(2));

        let s = weighted_p2(1, 1, 5).unwrap();
        assert_eq!(s.genus(&s.class(&[10]).unwrap()).unwrap(), BigInt::from(4));

        assert!(weighted_p2(2, 4, 1).is_err());
    }

    #[test]
    fn log_del_pezzo_checks() {
        assert!(p2().is_log_del_pezzo(&Div::zero(1)).unwrap().is_ample());
        assert!(p1xp1().is_log_del_pezzo(&Div::zero(2)).unwrap().is_ample());
        assert!(hirzebruch(1)
            .is_log_del_pezzo(&Div::zero(2))
            .unwrap()
            .is_ample());
        // -K on F3 pairs negatively with the negative section.
        match hirzebruch(3).is_log_del_pezzo(&Div::zero(2)).unwrap() {
            Ampleness::Violation { curve, value } => {
                assert_eq!(curve, "E");
                assert_eq!(value, rint(-1));
            }
            Ampleness::Ample => panic!("F3 is not del Pezzo"),
        }
    }

    #[test]
    fn blow_up_invariants() {
        // One weight-2 point on P1xP1: K^2 = 8 - 2.
        let s = blow_up(&p1xp1(), &[2]).unwrap();
        assert_eq!(s.k_squared().unwrap(), rint(6));
        assert_eq!(s.degree, Some(2));
        assert_eq!(s.singularities.len(), 1);
        assert_eq!(s.weil_mod_pic().to_string(), "Z/2");

        // Nine ordinary points on P2 kill ampleness by self-intersection.
        let s = blow_up(&p2(), &[1; 9]).unwrap();
        match s.is_log_del_pezzo(&Div::zero(s.dim())).unwrap() {
            Ampleness::Violation { curve, .. } => assert_eq!(curve, "self-intersection"),
            Ampleness::Ample => panic!("9-point blow-up is not del Pezzo"),
        }

        // Degree drops to gcd(weights, degree of the base).
        let s = blow_up(&p2(), &[3, 3]).unwrap();
        assert_eq!(s.degree, Some(3));
        let s = blow_up(&p1xp1(), &[2, 1]).unwrap();
        assert_eq!(s.degree, Some(1));
    }

    #[test]
    fn restriction_map() {
        let s = blow_up(&p2(), &[3]).unwrap();
        let e = s.basis_class("E1").unwrap();
        assert_eq!(s.restriction_at(0, &e).unwrap(), 1);
        let h = s.basis_class("H").unwrap();
        assert_eq!(s.restriction_at(0, &h).unwrap(), 0);
        let c = s.class(&[0, -1]).unwrap();
        assert_eq!(s.restriction_at(0, &c).unwrap(), 2);
    }
}
