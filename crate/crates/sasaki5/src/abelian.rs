//! Exact integer linear algebra and finite abelian groups.
//!
//! The two workhorses are [`smith_normal_form`], which diagonalizes an
//! integer matrix by unimodular row and column operations, and
//! [`FiniteAbelianGroup`], a finite abelian group kept in invariant-factor
//! form.  On top of these sit [`cokernel`] / [`kernel`] and the torsion
//! shape classifier [`classify_torsion_shape`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num::bigint::Sign;
use num::{BigInt, Integer, One, Signed, Zero};

/// Dense integer matrix, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from rows of `i64` entries.  Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows
                .iter()
                .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
                .collect(),
        }
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = q * &self[(b, j)];
            self[(a, j)] -= t;
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let t = q * &self[(i, b)];
            self[(i, a)] -= t;
        }
    }

    /// row[a] += row[b]
    fn row_add(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            let t = self[(b, j)].clone();
            self[(a, j)] += t;
        }
    }

    fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let t = -self[(a, j)].clone();
            self[(a, j)] = t;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Result of a Smith normal form computation: `u * m * v = d` with `u`, `v`
/// unimodular and `d` diagonal with `d[0] | d[1] | ...`, all entries >= 0.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smith normal form by pivoting on the smallest nonzero entry.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut v = IntMatrix::identity(m.cols);
    let bound = m.rows.min(m.cols);
    let mut rank = bound;

    't_loop: for t in 0..bound {
        loop {
            // Pivot: smallest nonzero absolute value in the trailing block.
            let mut pivot: Option<(usize, usize)> = None;
            for i in t..d.rows {
                for j in t..d.cols {
                    if d[(i, j)].is_zero() {
                        continue;
                    }
                    match pivot {
                        Some((pi, pj)) if d[(pi, pj)].abs() <= d[(i, j)].abs() => {}
                        _ => pivot = Some((i, j)),
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                rank = t;
                break 't_loop;
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..d.rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = &d[(i, t)] / &d[(t, t)];
                d.row_sub(i, t, &q);
                u.row_sub(i, t, &q);
                if !d[(i, t)].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..d.cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = &d[(t, j)] / &d[(t, t)];
                d.col_sub(j, t, &q);
                v.col_sub(j, t, &q);
                if !d[(t, j)].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // Remainders are smaller than the pivot; re-pick and repeat.
                continue;
            }
            // Pivot must divide the trailing block for the divisor chain.
            let mut chained = true;
            'div: for i in t + 1..d.rows {
                for j in t + 1..d.cols {
                    if !(&d[(i, j)] % &d[(t, t)]).is_zero() {
                        d.row_add(t, i);
                        u.row_add(t, i);
                        chained = false;
                        break 'div;
                    }
                }
            }
            if chained {
                break;
            }
        }
    }

    for t in 0..rank {
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v, rank }
}

/// Cokernel of `m` acting on row vectors: `Z^cols / rowspace(m)`.
pub fn cokernel(m: &IntMatrix) -> FiniteAbelianGroup {
    let s = smith_normal_form(m);
    let torsion: Vec<BigInt> = s
        .diagonal()
        .into_iter()
        .filter(|d| *d > BigInt::one())
        .collect();
    FiniteAbelianGroup {
        free_rank: m.cols - s.rank,
        torsion,
    }
}

/// Basis of the integer kernel `{ x in Z^cols : m x = 0 }`, as column vectors.
pub fn kernel(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let s = smith_normal_form(m);
    (s.rank..m.cols).map(|j| s.v.column(j)).collect()
}

/// Finite abelian group (possibly with a free part) in invariant-factor
/// form: `Z^free_rank + Z/d1 + Z/d2 + ...` with `d1 | d2 | ...`, all `di >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FiniteAbelianGroup {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::serde_str::ser_vec")]
    pub torsion: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn free(rank: usize) -> Self {
        FiniteAbelianGroup {
            free_rank: rank,
            torsion: vec![],
        }
    }

    /// `(Z/m)^k`, dropping the factor when `m <= 1`.
    pub fn cyclic_power(m: u64, k: usize) -> Self {
        if m <= 1 {
            return Self::trivial();
        }
        FiniteAbelianGroup {
            free_rank: 0,
            torsion: vec![BigInt::from(m); k],
        }
    }

    /// Build from an arbitrary list of cyclic orders (factors of 0 mean a
    /// free `Z` summand, factors of 1 are dropped), renormalizing to
    /// invariant factors.
    pub fn from_orders(orders: &[BigInt]) -> Self {
        let mut free_rank = 0;
        let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
        for n in orders {
            if n.is_zero() {
                free_rank += 1;
                continue;
            }
            for (p, e) in factorize(&n.abs()) {
                primary.entry(p).or_default().push(e);
            }
        }
        Self::from_primary(free_rank, primary)
    }

    /// Assemble invariant factors from prime-power exponent multisets.
    fn from_primary(free_rank: usize, mut primary: BTreeMap<BigInt, Vec<u32>>) -> Self {
        let width = primary.values().map(Vec::len).max().unwrap_or(0);
        for exps in primary.values_mut() {
            exps.sort_unstable_by(|a, b| b.cmp(a)); // descending
        }
        // Slot 0 collects the largest prime power of every prime, so the
        // factors come out ascending after the final reverse.
        let mut factors = vec![BigInt::one(); width];
        for (p, exps) in &primary {
            for (slot, &e) in exps.iter().enumerate() {
                factors[slot] *= p.pow(e);
            }
        }
        factors.reverse();
        FiniteAbelianGroup {
            free_rank,
            torsion: factors.into_iter().filter(|d| *d > BigInt::one()).collect(),
        }
    }

    pub fn direct_sum(&self, other: &FiniteAbelianGroup) -> FiniteAbelianGroup {
        let mut orders: Vec<BigInt> = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        let mut g = Self::from_orders(&orders);
        g.free_rank = self.free_rank + other.free_rank;
        g
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().product()
    }

    /// Order of the group; `None` when the free rank is positive.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }

    /// Exponents of the `p`-primary part, as a partition in descending order.
    pub fn p_part(&self, p: &BigInt) -> Vec<u32> {
        let mut part: Vec<u32> = self
            .torsion
            .iter()
            .map(|d| multiplicity(d, p))
            .filter(|&e| e > 0)
            .collect();
        part.sort_unstable_by(|a, b| b.cmp(a));
        part
    }

    /// Primes dividing the torsion order.
    pub fn torsion_primes(&self) -> Vec<BigInt> {
        let mut ps: Vec<BigInt> = self
            .torsion
            .iter()
            .flat_map(|d| factorize(d).into_iter().map(|(p, _)| p))
            .collect();
        ps.sort();
        ps.dedup();
        ps
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        // Group equal invariant factors: Z/3 + Z/3 prints as (Z/3)^2.
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            let d = &self.torsion[i];
            if j - i == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{}", j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn multiplicity(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut e = 0;
    while (&n % p).is_zero() && !n.is_zero() {
        n /= p;
        e += 1;
    }
    e
}

/// Trial-division factorization; fine for the group orders handled here.
pub fn factorize(n: &BigInt) -> BTreeMap<BigInt, u32> {
    let mut out = BTreeMap::new();
    let mut n = n.clone();
    assert!(n.sign() == Sign::Plus, "factorize expects a positive integer");
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        let mut e = 0;
        while (&n % &p).is_zero() {
            n /= &p;
            e += 1;
        }
        if e > 0 {
            out.insert(p.clone(), e);
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.insert(n, 1);
    }
    out
}

/// Isomorphism type of the subgroup of `⊕ Z/ambient_orders[j]` generated by
/// the given vectors, via closure and element-order counting.
pub fn subgroup_type(ambient_orders: &[u64], generators: &[Vec<u64>]) -> FiniteAbelianGroup {
    let n = ambient_orders.len();
    let mut elems: HashSet<Vec<u64>> = HashSet::new();
    elems.insert(vec![0; n]);
    for g in generators {
        assert_eq!(g.len(), n, "generator length mismatch");
        let g: Vec<u64> = g
            .iter()
            .zip(ambient_orders)
            .map(|(&x, &m)| x % m)
            .collect();
        // The closure of a subgroup S and one extra generator g is the
        // union of the cosets S + k*g.
        let ord = order_in_ambient(&g, ambient_orders);
        let base: Vec<Vec<u64>> = elems.iter().cloned().collect();
        for k in 1..ord {
            for e in &base {
                let shifted: Vec<u64> = e
                    .iter()
                    .zip(&g)
                    .zip(ambient_orders)
                    .map(|((&a, &b), &m)| (a + (b * k) % m) % m)
                    .collect();
                elems.insert(shifted);
            }
        }
    }
    type_of_elements(&elems, ambient_orders)
}

fn order_in_ambient(g: &[u64], ambient: &[u64]) -> u64 {
    g.iter()
        .zip(ambient)
        .map(|(&x, &m)| if x == 0 { 1 } else { m / m.gcd(&x) })
        .fold(1u64, |acc, o| acc.lcm(&o))
}

/// Recover the isomorphism type of a finite set of elements that is known
/// to be a subgroup, by counting solutions of `p^k x = 0`.
fn type_of_elements(elems: &HashSet<Vec<u64>>, ambient: &[u64]) -> FiniteAbelianGroup {
    let n = BigInt::from(elems.len());
    let mut primary: BTreeMap<BigInt, Vec<u32>> = BTreeMap::new();
    for (p, total) in factorize(&n) {
        let pu: u64 = (&p).try_into().expect("prime fits in u64");
        // killed[k] = #{x : p^k x = 0}; its p-adic valuation is the
        // conjugate-partition partial sum.
        let mut prev_val = 0u32;
        let mut conj: Vec<u32> = Vec::new();
        let mut pk: u64 = 1;
        for _ in 1..=total {
            pk *= pu;
            let killed = elems
                .iter()
                .filter(|x| {
                    x.iter()
                        .zip(ambient)
                        .all(|(&a, &m)| (a as u128 * pk as u128) % m as u128 == 0)
                })
                .count();
            let val = multiplicity(&BigInt::from(killed), &p);
            conj.push(val - prev_val);
            prev_val = val;
            if val == total {
                break;
            }
        }
        // conj[k-1] = #{i : lambda_i >= k}; transpose back to lambda.
        let mut lambda: Vec<u32> = Vec::new();
        let rows = conj[0] as usize;
        for i in 0..rows {
            lambda.push(conj.iter().filter(|&&c| c as usize > i).count() as u32);
        }
        primary.insert(p, lambda);
    }
    FiniteAbelianGroup::from_primary(0, primary)
}

/// One admissible decomposition `0 -> subgroup -> G -> quotient -> 0`
/// witnessing that `G` occurs as the torsion of `H_2` of a smooth positive
/// Sasakian 5-manifold.
#[derive(Clone, Debug, serde::Serialize)]
pub struct ShapeWitness {
    pub subgroup: FiniteAbelianGroup,
    pub quotient: FiniteAbelianGroup,
}

/// Outcome of the torsion-shape classifier: all decompositions, not just
/// one, so near-uniqueness (the only ambiguity sits in the 6-torsion
/// part) is observable rather than assumed.
#[derive(Clone, Debug, serde::Serialize)]
pub struct TorsionShape {
    pub admissible: bool,
    /// Every valid decomposition, in subgroup-shape order.
    pub witnesses: Vec<ShapeWitness>,
}

impl TorsionShape {
    /// The first decomposition, when one exists.
    pub fn witness(&self) -> Option<&ShapeWitness> {
        self.witnesses.first()
    }
}

/// Decide whether the finite group `g` has a subgroup `H` of one of the
/// shapes `(Z/m)^2`, `(Z/5)^4`, `(Z/4)^4`, `(Z/3)^(2n)` with `n <= 4`, or
/// `(Z/2)^(2n)`, such that `g/H` is cyclic `Z/q`, or `Z/(q/2) + Z/2` when
/// `4 | q`, or `Z/(q/3) + Z/3` when `9 | q`.
///
/// Existence of a subgroup of type `mu` with quotient of type `nu` inside a
/// `p`-group of type `lambda` is equivalent to the Littlewood-Richardson
/// coefficient `c^lambda_{mu,nu}` being nonzero, checked prime by prime.
pub fn classify_torsion_shape(g: &FiniteAbelianGroup) -> TorsionShape {
    assert_eq!(g.free_rank, 0, "classify_torsion_shape expects a finite group");
    let n = g.torsion_order();

    let mut subgroups: Vec<FiniteAbelianGroup> = Vec::new();
    // (Z/m)^2 for every m with m^2 | n (m = 1 gives the trivial subgroup).
    let mut m = BigInt::one();
    while &m * &m <= n {
        if (&n % (&m * &m)).is_zero() {
            subgroups.push(FiniteAbelianGroup {
                free_rank: 0,
                torsion: if m > BigInt::one() {
                    vec![m.clone(); 2]
                } else {
                    vec![]
                },
            });
        }
        m += 1;
    }
    let mut push_power = |p: u64, k: usize| {
        let h = FiniteAbelianGroup::cyclic_power(p, k);
        if (&n % h.torsion_order()).is_zero() {
            subgroups.push(h);
        }
    };
    push_power(5, 4);
    push_power(4, 4);
    for k in 1..=4 {
        push_power(3, 2 * k);
    }
    let two = BigInt::from(2);
    let mut k = 1;
    while (&n % two.pow(2 * k)).is_zero() {
        push_power(2, 2 * k as usize);
        k += 1;
    }

    let mut witnesses: Vec<ShapeWitness> = Vec::new();
    for h in &subgroups {
        let q: BigInt = &n / h.torsion_order();
        let mut quotients = vec![FiniteAbelianGroup::from_orders(&[q.clone()])];
        if (&q % BigInt::from(4)).is_zero() {
            quotients.push(FiniteAbelianGroup::from_orders(&[&q / 2, two.clone()]));
        }
        if (&q % BigInt::from(9)).is_zero() {
            quotients.push(FiniteAbelianGroup::from_orders(&[&q / 3, BigInt::from(3)]));
        }
        for quot in quotients {
            let duplicate = witnesses
                .iter()
                .any(|w: &ShapeWitness| &w.subgroup == h && w.quotient == quot);
            if !duplicate && extension_exists(g, h, &quot) {
                witnesses.push(ShapeWitness {
                    subgroup: h.clone(),
                    quotient: quot,
                });
            }
        }
    }
    TorsionShape {
        admissible: !witnesses.is_empty(),
        witnesses,
    }
}

/// Does `g` contain a subgroup isomorphic to `h` with quotient isomorphic
/// to `q`?  Decided prime by prime via Littlewood-Richardson coefficients.
pub fn extension_exists(
    g: &FiniteAbelianGroup,
    h: &FiniteAbelianGroup,
    q: &FiniteAbelianGroup,
) -> bool {
    if h.torsion_order() * q.torsion_order() != g.torsion_order() {
        return false;
    }
    g.torsion_primes().iter().all(|p| {
        let lambda = g.p_part(p);
        let mu = h.p_part(p);
        let nu = q.p_part(p);
        lr_coefficient_nonzero(&lambda, &mu, &nu)
    })
}

/// Does `g` contain a subgroup isomorphic to `h` (no condition on the
/// quotient)?  Equivalent to containment of conjugate partitions at every
/// prime.
pub fn has_subgroup(g: &FiniteAbelianGroup, h: &FiniteAbelianGroup) -> bool {
    h.torsion_primes().iter().all(|p| {
        let lc = conjugate(&g.p_part(p));
        let mc = conjugate(&h.p_part(p));
        mc.len() <= lc.len() && mc.iter().zip(&lc).all(|(a, b)| a <= b)
    })
}

fn conjugate(lambda: &[u32]) -> Vec<u32> {
    let rows = lambda.first().copied().unwrap_or(0) as usize;
    (0..rows)
        .map(|i| lambda.iter().filter(|&&x| x as usize > i).count() as u32)
        .collect()
}

/// Is the Littlewood-Richardson coefficient `c^lambda_{mu,nu}` nonzero?
/// Searches for one semistandard filling of the skew shape `lambda/mu` with
/// content `nu` whose reverse reading word is a lattice word.
pub fn lr_coefficient_nonzero(lambda: &[u32], mu: &[u32], nu: &[u32]) -> bool {
    let size = |p: &[u32]| p.iter().map(|&x| x as u64).sum::<u64>();
    if size(mu) + size(nu) != size(lambda) {
        return false;
    }
    if mu.len() > lambda.len() || mu.iter().zip(lambda).any(|(a, b)| a > b) {
        return false;
    }
    if nu.is_empty() {
        return true;
    }
    // Cells in reverse reading order: rows top to bottom, right to left.
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for (r, &lr) in lambda.iter().enumerate() {
        let mr = mu.get(r).copied().unwrap_or(0);
        for c in (mr..lr).rev() {
            cells.push((r, c as usize));
        }
    }
    let mut fill: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    let mut counts = vec![0u32; nu.len()];
    fill_lr(&cells, 0, &mut fill, &mut counts, nu)
}

fn fill_lr(
    cells: &[(usize, usize)],
    idx: usize,
    fill: &mut BTreeMap<(usize, usize), u32>,
    counts: &mut [u32],
    nu: &[u32],
) -> bool {
    if idx == cells.len() {
        return true;
    }
    let (r, c) = cells[idx];
    for v in 1..=nu.len() as u32 {
        let vi = (v - 1) as usize;
        if counts[vi] >= nu[vi] {
            continue;
        }
        // Lattice word: placing v needs a surplus of v-1 seen so far.
        if v > 1 && counts[vi - 1] <= counts[vi] {
            continue;
        }
        // Rows weakly increase left to right.
        if let Some(&right) = fill.get(&(r, c + 1)) {
            if v > right {
                continue;
            }
        }
        // Columns strictly increase top to bottom.
        if r > 0 {
            if let Some(&above) = fill.get(&(r - 1, c)) {
                if v <= above {
                    continue;
                }
            }
        }
        fill.insert((r, c), v);
        counts[vi] += 1;
        if fill_lr(cells, idx + 1, fill, counts, nu) {
            return true;
        }
        counts[vi] -= 1;
        fill.remove(&(r, c));
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn check_snf(m: &IntMatrix) -> Smith {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "u*m*v != d");
        for i in 0..s.d.rows {
            for j in 0..s.d.cols {
                if i != j {
                    assert!(s.d[(i, j)].is_zero(), "off-diagonal entry");
                }
            }
        }
        let diag = s.diagonal();
        for w in diag.windows(2) {
            assert!((&w[1] % &w[0]).is_zero(), "divisor chain broken");
        }
        assert!(diag.iter().all(|d| !d.is_negative()));
        s
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let s = check_snf(&m);
        assert_eq!(s.diagonal(), vec![big(1), big(6)]);
    }

    #[test]
    fn snf_identity_and_zero() {
        let s = check_snf(&IntMatrix::identity(4));
        assert_eq!(s.diagonal(), vec![big(1); 4]);
        let s = check_snf(&IntMatrix::zero(3, 5));
        assert_eq!(s.rank, 0);
    }

    #[test]
    fn snf_rectangular() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, 4, 16]]);
        let s = check_snf(&m);
        assert_eq!(s.diagonal(), vec![big(2), big(2), big(156)]);
    }

    #[test]
    fn cokernel_examples() {
        // Z^2 / <(2,0),(0,3)> = Z/6 in invariant-factor form.
        let m = IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]]);
        let g = cokernel(&m);
        assert_eq!(g, FiniteAbelianGroup::from_orders(&[big(6)]));

        // One relation in Z^3 leaves Z^2.
        let m = IntMatrix::from_rows(&[vec![1, 2, 3]]);
        let g = cokernel(&m);
        assert_eq!(g.free_rank, 2);
        assert!(g.torsion.is_empty());

        // Z^2 / <(2,1),(1,2)> = Z/3.
        let m = IntMatrix::from_rows(&[vec![2, 1], vec![1, 2]]);
        assert_eq!(cokernel(&m).to_string(), "Z/3");
    }

    #[test]
    fn kernel_example() {
        let m = IntMatrix::from_rows(&[vec![1, 2, 3], vec![4, 5, 6]]);
        let ker = kernel(&m);
        assert_eq!(ker.len(), 1);
        let k = &ker[0];
        for i in 0..m.rows {
            let dot: BigInt = (0..3).map(|j| &m[(i, j)] * &k[j]).sum();
            assert!(dot.is_zero());
        }
        assert!(!k.iter().all(BigInt::is_zero));
    }

    #[test]
    fn invariant_factors_from_orders() {
        let g = FiniteAbelianGroup::from_orders(&[big(4), big(6), big(10)]);
        assert_eq!(g.torsion, vec![big(2), big(2), big(60)]);
        assert_eq!(g.to_string(), "(Z/2)^2 + Z/60");
        let g = FiniteAbelianGroup::from_orders(&[big(0), big(1), big(5)]);
        assert_eq!(g.to_string(), "Z + Z/5");
    }

    #[test]
    fn subgroup_type_examples() {
        // <(1,1)> in Z/2 + Z/4 is cyclic of order 4.
        let g = subgroup_type(&[2, 4], &[vec![1, 1]]);
        assert_eq!(g.to_string(), "Z/4");
        // <(1,0),(0,2)> in Z/2 + Z/4 is Z/2 + Z/2.
        let g = subgroup_type(&[2, 4], &[vec![1, 0], vec![0, 2]]);
        assert_eq!(g.to_string(), "(Z/2)^2");
        // Full group.
        let g = subgroup_type(&[2, 4, 3], &[vec![1, 0, 0], vec![0, 1, 1]]);
        assert_eq!(g, FiniteAbelianGroup::from_orders(&[big(2), big(12)]));
    }

    #[test]
    fn lr_basics() {
        // c^(2,1)_{(1,1),(1)} = 1.
        assert!(lr_coefficient_nonzero(&[2, 1], &[1, 1], &[1]));
        // c^(2)_{(1,1),()} = 0: wrong size.
        assert!(!lr_coefficient_nonzero(&[2], &[1, 1], &[]));
        // Z/p^2 has no subgroup of type (Z/p)^2.
        assert!(!lr_coefficient_nonzero(&[2], &[1, 1], &[0]));
        // (Z/p)^2 contains Z/p with quotient Z/p.
        assert!(lr_coefficient_nonzero(&[1, 1], &[1], &[1]));
        // Z/p^2 contains Z/p with quotient Z/p.
        assert!(lr_coefficient_nonzero(&[2], &[1], &[1]));
    }

    #[test]
    fn classify_examples() {
        // (Z/5)^4 is itself an allowed subgroup with trivial quotient.
        let g = FiniteAbelianGroup::cyclic_power(5, 4);
        assert!(classify_torsion_shape(&g).admissible);

        // Z/2 + Z/4: subgroup (Z/2)^2 with quotient Z/2.
        let g = FiniteAbelianGroup::from_orders(&[big(2), big(4)]);
        let r = classify_torsion_shape(&g);
        assert!(r.admissible);

        // (Z/6)^4 has no admissible decomposition.
        let g = FiniteAbelianGroup::cyclic_power(6, 4);
        assert!(!classify_torsion_shape(&g).admissible);

        // Cyclic groups are always admissible (trivial subgroup).
        for n in 1..=20 {
            let g = FiniteAbelianGroup::from_orders(&[big(n)]);
            assert!(classify_torsion_shape(&g).admissible, "cyclic {n}");
        }

        // (Z/7)^3 = subgroup (Z/7)^2 with quotient Z/7.
        let g = FiniteAbelianGroup::cyclic_power(7, 3);
        let r = classify_torsion_shape(&g);
        assert!(r.admissible);
        let w = r.witness().unwrap();
        assert_eq!(w.subgroup.to_string(), "(Z/7)^2");
        assert_eq!(w.quotient.to_string(), "Z/7");

        // All decompositions are reported; the ambiguity of the remark
        // shows up in 6-torsion: (Z/6)^2 decomposes in three ways.
        let g = FiniteAbelianGroup::cyclic_power(6, 2);
        let subs: Vec<String> = classify_torsion_shape(&g)
            .witnesses
            .iter()
            .map(|w| w.subgroup.to_string())
            .collect();
        assert!(subs.contains(&"(Z/6)^2".to_string()));
        assert!(subs.contains(&"(Z/2)^2".to_string()));
        assert!(subs.contains(&"(Z/3)^2".to_string()));
    }

    #[test]
    fn has_subgroup_examples() {
        let g = FiniteAbelianGroup::from_orders(&[big(2), big(4)]);
        assert!(has_subgroup(&g, &FiniteAbelianGroup::cyclic_power(2, 2)));
        assert!(!has_subgroup(&g, &FiniteAbelianGroup::cyclic_power(2, 3)));
        assert!(has_subgroup(&g, &FiniteAbelianGroup::from_orders(&[big(4)])));
        assert!(!has_subgroup(&g, &FiniteAbelianGroup::from_orders(&[big(8)])));
    }
}
