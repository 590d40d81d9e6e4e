//! Seifert circle bundles over surface models.
//!
//! A bundle is described by an integral background class `B` and a list of
//! branch divisors `(m_i, b_i, D_i)` with `0 < b_i < m_i`, `gcd(b_i, m_i) = 1`;
//! its Chern class is `B + sum (b_i / m_i) D_i`.  Branch divisors are
//! assumed to be smooth curves in general position, avoiding the singular
//! points of the base surface.

use num::{BigInt, Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::abelian::FiniteAbelianGroup;
use crate::surface::{Div, SurfaceModel, SurfaceSpec};
use crate::{rint, Error, Rat, Result};

#[derive(Clone, Debug)]
pub struct BranchDivisor {
    /// Orbifold multiplicity along the divisor, `>= 2`.
    pub m: u64,
    /// Local Seifert invariant, `0 < b < m`, coprime to `m`.
    pub b: u64,
    /// Class of the divisor in the surface basis.
    pub class: Div,
}

#[derive(Clone, Debug)]
pub struct SeifertData {
    pub surface: SurfaceModel,
    /// Integral background class.
    pub b: Div,
    pub branches: Vec<BranchDivisor>,
}

/// Smoothness of the total space, with a certificate on failure.
#[derive(Clone, Debug, Serialize)]
pub struct Smoothness {
    pub smooth: bool,
    /// `(point index, local order, gcd of the restriction with the order)`
    /// for the first singular point whose local class group is not
    /// generated by the bundle class.
    pub failure: Option<(usize, u64, u64)>,
}

/// Result of the pre-SE test (the structural normal form of bundles that
/// can carry a Sasaki-Einstein metric).
#[derive(Clone, Debug, Serialize)]
pub struct PreSe {
    pub pre_se: bool,
    /// The proportionality factor in `d * B = r * (-K)`, when it exists.
    #[serde(serialize_with = "crate::serde_str::ser_opt")]
    pub r: Option<BigInt>,
    pub reason: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TorsH2 {
    pub group: FiniteAbelianGroup,
    /// Set when the branch formula was applied without confirming the
    /// vanishing of `H_1` (surface outside the degree family).
    pub branch_formula_only: bool,
}

/// The two-sided term and exactness flags of the `H^3` sequence
/// `0 -> sum (Z/m_i)^(2 g_i) + Z^(s-1) -> H^3(Y) -> ...`.
#[derive(Clone, Debug, Serialize)]
pub struct H3Sequence {
    pub right_term: FiniteAbelianGroup,
    /// The sequence is exact on the left iff the branch multiplicities and
    /// the local orders of the surface are pairwise coprime.
    pub left_exact: bool,
    /// The sequence splits iff additionally the order of `H_1` of the
    /// smooth locus is coprime to the product of the multiplicities.
    pub split: bool,
}

impl SeifertData {
    pub fn new(surface: SurfaceModel, b: Div, branches: Vec<BranchDivisor>) -> Result<Self> {
        if b.0.len() != surface.basis.len() {
            return Err(Error::BasisMismatch {
                expected: surface.basis.len(),
                got: b.0.len(),
            });
        }
        if b.integer_coords().is_none() {
            return Err(Error::InvalidInput(
                "background class must be integral".into(),
            ));
        }
        for br in &branches {
            if br.m < 2 {
                return Err(Error::InvalidInput(format!(
                    "branch multiplicity {} must be at least 2",
                    br.m
                )));
            }
            if br.b == 0 || br.b >= br.m || br.b.gcd(&br.m) != 1 {
                return Err(Error::InvalidInput(format!(
                    "local invariant {}/{} must be reduced and in (0, 1)",
                    br.b, br.m
                )));
            }
            if br.class.0.len() != surface.basis.len() {
                return Err(Error::BasisMismatch {
                    expected: surface.basis.len(),
                    got: br.class.0.len(),
                });
            }
        }
        Ok(SeifertData {
            surface,
            b,
            branches,
        })
    }

    /// `c_1 = B + sum (b_i / m_i) D_i`.
    pub fn chern_class(&self) -> Div {
        let mut c = self.b.clone();
        for br in &self.branches {
            let t = Rat::new(BigInt::from(br.b), BigInt::from(br.m));
            c = &c + &br.class.scale(&t);
        }
        c
    }

    /// The total space is smooth iff the bundle class generates the local
    /// class group of every singular point of the base.
    pub fn is_smooth(&self) -> Result<Smoothness> {
        for (j, pt) in self.surface.singularities.iter().enumerate() {
            let r = self.surface.restriction_at(j, &self.b)?;
            let g = r.gcd(&pt.order);
            if g != 1 {
                return Ok(Smoothness {
                    smooth: false,
                    failure: Some((j, pt.order, g)),
                });
            }
        }
        Ok(Smoothness {
            smooth: true,
            failure: None,
        })
    }

    /// Structural test on `B` alone: the surface must lie in the degree
    /// family, every blow-up weight must equal the degree `d`, `B` must be
    /// an integer multiple of `-K / d`, and when the underlying base of
    /// the family is singular the multiplier must be prime to its degree
    /// (which must equal `d`).
    pub fn is_pre_se(&self) -> Result<PreSe> {
        let s = &self.surface;
        let d = s
            .degree
            .ok_or_else(|| Error::OutsideFamily(s.name.clone()))?;
        let base = s
            .base_info
            .ok_or_else(|| Error::OutsideFamily(s.name.clone()))?;
        let fail = |reason: &str| PreSe {
            pre_se: false,
            r: None,
            reason: Some(reason.to_string()),
        };
        if s.blowup_weights.iter().any(|&m| m != d) {
            return Ok(fail("a blow-up weight differs from the degree"));
        }
        // B = r * (-K) / d for a nonzero integer r.
        let c = (-&s.canonical_class()).scale(&Rat::new(BigInt::one(), BigInt::from(d)));
        let Some(i) = c.0.iter().position(|x| !x.is_zero()) else {
            return Ok(fail("the anticanonical class vanishes"));
        };
        let r = &self.b.0[i] / &c.0[i];
        if !r.is_integer() || r.is_zero() || self.b != c.scale(&r) {
            return Ok(fail("B is not a nonzero integer multiple of -K/d"));
        }
        let r = r.to_integer();
        if base.singular {
            let dt = BigInt::from(base.degree);
            if r.abs().gcd(&dt) != BigInt::one() {
                return Ok(fail(
                    "the multiplier is not prime to the degree of the singular base",
                ));
            }
            if d != base.degree {
                return Ok(fail("blow-up of a singular base must preserve the degree"));
            }
        }
        Ok(PreSe {
            pre_se: true,
            r: Some(r),
            reason: None,
        })
    }

    /// Does `H_1(Y, Z/m)` vanish?  For bundles in the degree family this
    /// holds iff `m` is prime to the degree.
    pub fn h1_vanishes(&self, m: u64) -> Result<bool> {
        let d = self
            .surface
            .degree
            .ok_or_else(|| Error::OutsideFamily(self.surface.name.clone()))?;
        Ok(m.gcd(&d) == 1)
    }

    /// Genera of the branch divisors, from adjunction on the base.
    pub fn branch_genera(&self) -> Result<Vec<BigInt>> {
        self.branches
            .iter()
            .map(|br| self.surface.genus(&br.class))
            .collect()
    }

    /// Torsion of `H_2` of the total space: `sum (Z/m_i)^(2 g_i)` over the
    /// branch divisors. The `branch_formula_only` flag is set when the
    /// surface is outside the degree family, so the vanishing of `H_1`
    /// backing the formula is not confirmed.
    pub fn tors_h2(&self) -> Result<TorsH2> {
        let genera = self.branch_genera()?;
        let mut group = FiniteAbelianGroup::trivial();
        for (br, g) in self.branches.iter().zip(&genera) {
            if g.is_negative() {
                return Err(Error::InvalidInput(format!(
                    "branch divisor of negative genus {g}"
                )));
            }
            let g: usize = g.try_into().expect("genus fits in usize");
            group = group.direct_sum(&FiniteAbelianGroup::cyclic_power(br.m, 2 * g));
        }
        Ok(TorsH2 {
            group,
            branch_formula_only: self.surface.degree.is_none(),
        })
    }

    /// The right-hand term and exactness flags of the `H^3` sequence.
    pub fn h3_sequence(&self) -> Result<H3Sequence> {
        let genera = self.branch_genera()?;
        let s = self.branches.len();
        let mut right = FiniteAbelianGroup::free(s.saturating_sub(1));
        for (br, g) in self.branches.iter().zip(&genera) {
            let g: usize = g.try_into().map_err(|_| {
                Error::InvalidInput("branch divisor of negative genus".into())
            })?;
            right = right.direct_sum(&FiniteAbelianGroup::cyclic_power(br.m, 2 * g));
        }
        let mut orders: Vec<u64> = self.branches.iter().map(|br| br.m).collect();
        orders.extend(self.surface.singularities.iter().map(|p| p.order));
        let mut left_exact = true;
        for i in 0..orders.len() {
            for j in i + 1..orders.len() {
                if orders[i].gcd(&orders[j]) != 1 {
                    left_exact = false;
                }
            }
        }
        let h1_order = self.surface.weil_mod_pic().torsion_order();
        let prod: BigInt = self.branches.iter().map(|br| BigInt::from(br.m)).product();
        let split = left_exact && h1_order.gcd(&prod) == BigInt::one();
        Ok(H3Sequence {
            right_term: right,
            left_exact,
            split,
        })
    }
}

/// Sufficient numerical criterion for the existence of an orbifold
/// Kahler-Einstein metric on a degree-`k2` log Del Pezzo blown up at `n`
/// general points: `n > (2/3) k2`.
pub fn ke_exists(k_squared: &Rat, n_points: u64) -> bool {
    rint(n_points as i64) > k_squared * crate::rat(2, 3)
}

/// Serializable description of a Seifert bundle, the CLI input format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SeifertSpec {
    pub surface: SurfaceSpec,
    /// Integer coordinates of the background class.
    pub b: Vec<i64>,
    #[serde(default)]
    pub branches: Vec<BranchSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BranchSpec {
    pub m: u64,
    pub b: u64,
    pub class: Vec<i64>,
}

impl SeifertSpec {
    pub fn build(&self) -> Result<SeifertData> {
        let surface = self.surface.build()?;
        let b = surface.class(&self.b)?;
        let branches = self
            .branches
            .iter()
            .map(|br| {
                Ok(BranchDivisor {
                    m: br.m,
                    b: br.b,
                    class: surface.class(&br.class)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SeifertData::new(surface, b, branches)
    }
}
