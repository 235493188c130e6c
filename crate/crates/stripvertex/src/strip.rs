//! The toric strip geometry: gluing sums over edge partitions, per-class
//! coefficient extraction, normalization by the closed-string amplitude, and
//! the disconnected-to-connected conversion.
//!
//! Edge classes are required to be linearly independent, so a target class
//! fixes the size of every edge partition and each coefficient is a finite
//! sum over exactly prod_i p(c_i) partition tuples.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{enumerate, hooks, Partition};
use crate::qalgebra::{HalfLaurent, Phased, QRational};
use crate::schur::{vertex_amplitude, Convention};

/// Multiplicities of the compact edge classes; the exponent of the formal
/// Q-variable. Effective classes have non-negative coordinates.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    fn check_effective(&self) -> Result<()> {
        for (index, &value) in self.0.iter().enumerate() {
            if value < 0 {
                return Err(Error::NegativeClassCoordinate { index, value });
            }
        }
        Ok(())
    }

    /// Componentwise difference, None if any coordinate would go negative.
    fn checked_sub(&self, rhs: &CurveClass) -> Option<CurveClass> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&rhs.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(CurveClass(out))
    }

    /// All classes in the box [0, bound] in lexicographic order.
    pub fn box_range(bound: &CurveClass) -> Vec<CurveClass> {
        let mut out = vec![CurveClass(Vec::new())];
        for &b in &bound.0 {
            let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
            for prefix in &out {
                for v in 0..=b.max(0) {
                    let mut p = prefix.0.clone();
                    p.push(v);
                    next.push(CurveClass(p));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// One compact edge of the strip: the normal-bundle degree in the surface and
/// the curve class in the declared H2 basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripEdge {
    pub normal_degree: i64,
    pub class: Vec<i64>,
}

/// Description of a strip geometry: the brane edge, the chain of compact
/// edges, and the linear map from (winding, edge multiplicities) to surface
/// class coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StripGeometry {
    pub brane_edge_degree: i64,
    pub brane_class: Vec<i64>,
    pub edges: Vec<StripEdge>,
    /// Rows are surface-class coordinates, columns are (winding, c_1..c_k).
    pub class_map: Vec<Vec<i64>>,
    pub h2_basis: Vec<String>,
    /// Pairing row computing the first-boundary intersection number from
    /// surface coordinates; required for the log and BPS pipelines.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d1_pairing: Option<Vec<i64>>,
    /// Pairing row for the second boundary component.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d2_pairing: Option<Vec<i64>>,
}

/// Integer matrix rank via fraction-free elimination.
#[allow(clippy::needless_range_loop)]
fn rank(matrix: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let a = m[rank][col].clone();
                let b = m[r][col].clone();
                for c in 0..cols {
                    let v = &m[r][c] * &a - &m[rank][c] * &b;
                    m[r][c] = v;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

impl StripGeometry {
    /// Validates dimensions, edge-class independence, and class-map rank.
    pub fn validate(&self) -> Result<()> {
        let dim = self.brane_class.len();
        if dim == 0 {
            return Err(Error::InvalidGeometry("empty H2 basis".into()));
        }
        if !self.h2_basis.is_empty() && self.h2_basis.len() != dim {
            return Err(Error::InvalidGeometry(
                "h2_basis labels do not match the class dimension".into(),
            ));
        }
        for (i, e) in self.edges.iter().enumerate() {
            if e.class.len() != dim {
                return Err(Error::InvalidGeometry(format!(
                    "edge {i} class has dimension {}, expected {dim}",
                    e.class.len()
                )));
            }
        }
        let k = self.edges.len();
        if k > 0 {
            let rows: Vec<Vec<i64>> = self.edges.iter().map(|e| e.class.clone()).collect();
            if rank(&rows) != k {
                return Err(Error::InvalidGeometry(
                    "edge classes are linearly dependent".into(),
                ));
            }
        }
        let cols = 1 + k;
        if self.class_map.is_empty() {
            return Err(Error::InvalidGeometry("empty class map".into()));
        }
        for (i, row) in self.class_map.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::InvalidGeometry(format!(
                    "class_map row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
        }
        // Column rank must be full so surface classes determine windings.
        let transposed: Vec<Vec<i64>> = (0..cols)
            .map(|c| self.class_map.iter().map(|row| row[c]).collect())
            .collect();
        if rank(&transposed) != cols {
            return Err(Error::InvalidGeometry(
                "class_map does not have full column rank".into(),
            ));
        }
        for (name, pairing) in [
            ("d1_pairing", &self.d1_pairing),
            ("d2_pairing", &self.d2_pairing),
        ] {
            if let Some(p) = pairing {
                if p.len() != self.class_map.len() {
                    return Err(Error::InvalidGeometry(format!(
                        "{name} has {} entries, expected {}",
                        p.len(),
                        self.class_map.len()
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn surface_dim(&self) -> usize {
        self.class_map.len()
    }

    /// Parses and validates a geometry description in the published JSON
    /// schema.
    pub fn from_json(text: &str) -> Result<Self> {
        let g: StripGeometry =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        g.validate()?;
        Ok(g)
    }

    /// The built-in geometry registry. `dp3-0-2` is the strip of the
    /// two-boundary del Pezzo example, with normal-bundle degrees read off
    /// the fan and the class map fixed by the acceptance oracle.
    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "dp3-0-2" => Some(StripGeometry {
                brane_edge_degree: -1,
                brane_class: vec![1, 0, -1, -1],
                edges: vec![
                    StripEdge {
                        normal_degree: -1,
                        class: vec![0, 0, 0, 1],
                    },
                    StripEdge {
                        normal_degree: -2,
                        class: vec![0, 0, 1, -1],
                    },
                    StripEdge {
                        normal_degree: -1,
                        class: vec![1, -1, -1, 0],
                    },
                ],
                class_map: vec![
                    vec![0, 1, 0, 0],
                    vec![1, 0, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 1, -1, 1],
                ],
                h2_basis: vec!["H".into(), "E1".into(), "E2".into(), "E3".into()],
                d1_pairing: Some(vec![0, 1, 0, 0]),
                d2_pairing: Some(vec![0, 0, 1, 1]),
            }),
            _ => None,
        }
    }

    /// Surface-class coordinates of (winding, c).
    pub fn apply_class_map(&self, winding: i64, c: &CurveClass) -> Result<Vec<i64>> {
        if c.dim() != self.num_edges() {
            return Err(Error::ClassDimensionMismatch {
                expected: self.num_edges(),
                got: c.dim(),
            });
        }
        let mut x = Vec::with_capacity(1 + c.dim());
        x.push(winding);
        x.extend_from_slice(&c.0);
        Ok(self
            .class_map
            .iter()
            .map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Inverts the class map on a surface class. Returns None when the class
    /// is not an integral combination (winding, c) or has no solution.
    #[allow(clippy::needless_range_loop)]
    pub fn invert_class_map(&self, surface: &[i64]) -> Option<(i64, CurveClass)> {
        if surface.len() != self.class_map.len() {
            return None;
        }
        let cols = 1 + self.num_edges();
        // Rational Gaussian elimination on [class_map | surface].
        let mut m: Vec<Vec<BigRational>> = self
            .class_map
            .iter()
            .zip(surface)
            .map(|(row, &d)| {
                row.iter()
                    .map(|&x| BigRational::from(BigInt::from(x)))
                    .chain(std::iter::once(BigRational::from(BigInt::from(d))))
                    .collect()
            })
            .collect();
        let rows = m.len();
        let mut pivot_rows = Vec::new();
        let mut r = 0;
        for col in 0..cols {
            let Some(p) = (r..rows).find(|&i| !m[i][col].is_zero()) else {
                return None; // full column rank guaranteed by validate()
            };
            m.swap(r, p);
            let inv = m[r][col].clone();
            for c in col..=cols {
                m[r][c] = &m[r][c] / &inv;
            }
            for i in 0..rows {
                if i != r && !m[i][col].is_zero() {
                    let f = m[i][col].clone();
                    for c in col..=cols {
                        let v = &m[i][c] - &f * &m[r][c];
                        m[i][c] = v;
                    }
                }
            }
            pivot_rows.push(r);
            r += 1;
        }
        // Consistency: zero rows must have zero rhs.
        for i in r..rows {
            if !m[i][cols].is_zero() {
                return None;
            }
        }
        let mut x = Vec::with_capacity(cols);
        for (col, &pr) in pivot_rows.iter().enumerate() {
            let v = &m[pr][cols];
            if !v.is_integer() {
                return None;
            }
            let _ = col;
            x.push(v.to_integer());
        }
        let winding = i64::try_from(&x[0]).ok()?;
        let c: Option<Vec<i64>> = x[1..].iter().map(|v| i64::try_from(v).ok()).collect();
        Some((winding, CurveClass(c?)))
    }

    fn edge_degree(&self, i: usize) -> i64 {
        if i == 0 {
            self.brane_edge_degree
        } else {
            self.edges[i - 1].normal_degree
        }
    }
}

/// (-1)^{deg |mu|} q^{sign (deg+1) kappa(mu) / 2} for one edge.
fn edge_factor(degree: i64, mu: &Partition, convention: Convention) -> QRational {
    let exp = convention.kappa_sign() * (degree + 1) * mu.kappa();
    let negative = (degree * mu.size() as i64).rem_euclid(2) == 1;
    let coeff = if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    QRational::from(HalfLaurent::monomial(exp, coeff))
}

/// Evaluation context bundling a geometry with a convention and memoized
/// amplitude tables. All caches are synchronized; the tuple sums themselves
/// are pure, so any parallel schedule yields the identical canonical result.
pub struct StripContext<'g> {
    pub geometry: &'g StripGeometry,
    pub convention: Convention,
    open_cache: Mutex<HashMap<(Partition, CurveClass), QRational>>,
    inverse_cache: Mutex<HashMap<CurveClass, QRational>>,
}

impl<'g> StripContext<'g> {
    pub fn new(geometry: &'g StripGeometry, convention: Convention) -> Self {
        Self {
            geometry,
            convention,
            open_cache: Mutex::new(HashMap::new()),
            inverse_cache: Mutex::new(HashMap::new()),
        }
    }

    /// The coefficient of Q^c in the disconnected amplitude with outgoing
    /// partition mu, together with the number of partition tuples visited.
    pub fn open_coefficient_counted(
        &self,
        mu: &Partition,
        c: &CurveClass,
    ) -> Result<(QRational, u64)> {
        c.check_effective()?;
        if c.dim() != self.geometry.num_edges() {
            return Err(Error::ClassDimensionMismatch {
                expected: self.geometry.num_edges(),
                got: c.dim(),
            });
        }
        let per_edge: Vec<Vec<Partition>> = c.0.iter().map(|&ci| enumerate(ci as u32)).collect();
        let k = per_edge.len();
        let empty = Partition::empty();
        let mut visited = 0u64;
        let mut total = QRational::zero();
        let mut index = vec![0usize; k];
        loop {
            visited += 1;
            // chain = (mu_0 = mu, mu_1, ..., mu_k), with mu_{k+1} = empty.
            let mut term = edge_factor(self.geometry.edge_degree(0), mu, self.convention);
            let mut prev = mu;
            for i in 0..k {
                let cur = &per_edge[i][index[i]];
                term = &term * &edge_factor(self.geometry.edge_degree(i + 1), cur, self.convention);
                term = &term * &vertex_amplitude(cur, prev, self.convention);
                prev = cur;
            }
            term = &term * &vertex_amplitude(&empty, prev, self.convention);
            total = &total + &term;

            // advance the multi-index
            let mut pos = k;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                index[pos] += 1;
                if index[pos] < per_edge[pos].len() {
                    break;
                }
                index[pos] = 0;
                if pos == 0 {
                    pos = usize::MAX;
                    break;
                }
            }
            if k == 0 || pos == usize::MAX {
                break;
            }
        }
        self.open_cache
            .lock()
            .unwrap()
            .insert((mu.clone(), c.clone()), total.clone());
        Ok((total, visited))
    }

    pub fn open_coefficient(&self, mu: &Partition, c: &CurveClass) -> Result<QRational> {
        if let Some(v) = self
            .open_cache
            .lock()
            .unwrap()
            .get(&(mu.clone(), c.clone()))
        {
            return Ok(v.clone());
        }
        Ok(self.open_coefficient_counted(mu, c)?.0)
    }

    /// Coefficient of Q^c in the closed-string amplitude (empty boundary).
    pub fn closed_coefficient(&self, c: &CurveClass) -> Result<QRational> {
        self.open_coefficient(&Partition::empty(), c)
    }

    /// Coefficient of Q^c in the reciprocal of the closed-string amplitude.
    /// Always defined: the constant coefficient of the amplitude is 1.
    pub fn inverse_closed_coefficient(&self, c: &CurveClass) -> Result<QRational> {
        c.check_effective()?;
        if let Some(v) = self.inverse_cache.lock().unwrap().get(c) {
            return Ok(v.clone());
        }
        let value = if c.is_zero() {
            QRational::one()
        } else {
            // I[c] = -sum_{0 < u <= c} W[u] I[c-u]
            let mut acc = QRational::zero();
            for u in CurveClass::box_range(c) {
                if u.is_zero() {
                    continue;
                }
                let rest = c.checked_sub(&u).expect("u <= c by construction");
                let w = self.closed_coefficient(&u)?;
                if w.is_zero() {
                    continue;
                }
                acc = &acc + &(&w * &self.inverse_closed_coefficient(&rest)?);
            }
            -&acc
        };
        self.inverse_cache
            .lock()
            .unwrap()
            .insert(c.clone(), value.clone());
        Ok(value)
    }

    /// The coefficient of Q^c in the connected single-boundary generating
    /// series: -i sum_{k=0}^{w-1} ((-1)^k / w) W_{(w-k,1^k)} / W_empty,
    /// returned as a phase plus a real rational function.
    pub fn connected_open_series(&self, winding: i64, c: &CurveClass) -> Result<Phased> {
        let shapes = hooks(winding)?;
        c.check_effective()?;
        let mut sum = QRational::zero();
        for (k, shape) in shapes.iter().enumerate() {
            let mut conv = QRational::zero();
            for a in CurveClass::box_range(c) {
                let rest = c.checked_sub(&a).expect("a <= c");
                let w = self.open_coefficient(shape, &a)?;
                if w.is_zero() {
                    continue;
                }
                conv = &conv + &(&w * &self.inverse_closed_coefficient(&rest)?);
            }
            if k % 2 == 1 {
                conv = -&conv;
            }
            sum = &sum + &conv;
        }
        let scale = BigRational::new(BigInt::one(), BigInt::from(winding));
        Ok(Phased::new(3, sum.mul_rational(&scale)))
    }
}

/// Free-function form of the per-class amplitude coefficient.
pub fn open_amplitude_coefficient(
    geometry: &StripGeometry,
    mu: &Partition,
    c: &CurveClass,
    convention: Convention,
) -> Result<QRational> {
    StripContext::new(geometry, convention).open_coefficient(mu, c)
}

/// Free-function form of the closed-string coefficient.
pub fn closed_string_coefficient(
    geometry: &StripGeometry,
    c: &CurveClass,
    convention: Convention,
) -> Result<QRational> {
    StripContext::new(geometry, convention).closed_coefficient(c)
}

/// Coefficients of 1/W_empty for every class in the box [0, bound].
pub fn invert_w_empty(
    geometry: &StripGeometry,
    bound: &CurveClass,
    convention: Convention,
) -> Result<BTreeMap<CurveClass, QRational>> {
    let ctx = StripContext::new(geometry, convention);
    let mut out = BTreeMap::new();
    for c in CurveClass::box_range(bound) {
        let v = ctx.inverse_closed_coefficient(&c)?;
        out.insert(c, v);
    }
    Ok(out)
}

/// Free-function form of the connected series coefficient.
pub fn connected_open_series(
    geometry: &StripGeometry,
    winding: i64,
    c: &CurveClass,
    convention: Convention,
) -> Result<Phased> {
    StripContext::new(geometry, convention).connected_open_series(winding, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::h_spec;

    fn dp3() -> StripGeometry {
        StripGeometry::preset("dp3-0-2").unwrap()
    }

    fn single_edge() -> StripGeometry {
        StripGeometry {
            brane_edge_degree: -1,
            brane_class: vec![1, 0],
            edges: vec![StripEdge {
                normal_degree: -1,
                class: vec![0, 1],
            }],
            class_map: vec![vec![1, 0], vec![0, 1]],
            h2_basis: vec!["B".into(), "F".into()],
            d1_pairing: None,
            d2_pairing: None,
        }
    }

    #[test]
    fn preset_validates() {
        dp3().validate().unwrap();
        single_edge().validate().unwrap();
    }

    #[test]
    fn dependent_edges_rejected() {
        let mut g = single_edge();
        g.edges.push(StripEdge {
            normal_degree: -1,
            class: vec![0, 2],
        });
        g.class_map = vec![vec![1, 0, 0], vec![0, 1, 2]];
        assert!(matches!(g.validate(), Err(Error::InvalidGeometry(_))));
    }

    #[test]
    fn zero_class_normalization() {
        let g = dp3();
        let ctx = StripContext::new(&g, Convention::Plus);
        let zero = CurveClass::zero(3);
        assert!(ctx.closed_coefficient(&zero).unwrap().is_one());
        assert!(ctx.inverse_closed_coefficient(&zero).unwrap().is_one());
        let (v, visited) = ctx
            .open_coefficient_counted(&Partition::empty(), &zero)
            .unwrap();
        assert!(v.is_one());
        assert_eq!(visited, 1);
    }

    #[test]
    fn tuple_count_is_product_of_partition_numbers() {
        // The enumeration visits exactly prod_i p(c_i) tuples for every
        // coefficient request on the preset, for total degree up to 6.
        let g = dp3();
        let ctx = StripContext::new(&g, Convention::default());
        let partition_numbers = [1u64, 1, 2, 3, 5, 7, 11];
        let mu = Partition::new(vec![1]);
        for c in CurveClass::box_range(&CurveClass(vec![6, 6, 6])) {
            if c.total() > 6 {
                continue;
            }
            let expected: u64 =
                c.0.iter()
                    .map(|&ci| partition_numbers[ci as usize])
                    .product();
            let (_, visited) = ctx.open_coefficient_counted(&mu, &c).unwrap();
            assert_eq!(visited, expected, "class {c}");
        }
    }

    #[test]
    fn single_edge_unit_class_by_hand() {
        // mu = empty, c = (1): the only tuple is mu_1 = (1); with both
        // degrees -1 the factor is (-1) * W(mu_1, empty) * W(empty, mu_1)
        // and no q^kappa powers.
        let g = single_edge();
        let ctx = StripContext::new(&g, Convention::Plus);
        let v = ctx.closed_coefficient(&CurveClass(vec![1])).unwrap();
        let one_box = Partition::new(vec![1]);
        let expect = -&(&vertex_amplitude(&one_box, &Partition::empty(), Convention::Plus)
            * &vertex_amplitude(&Partition::empty(), &one_box, Convention::Plus));
        assert_eq!(v, expect);
    }

    #[test]
    fn edge_factor_sanity() {
        // degree -1 edges carry no q-power at all.
        let mu = Partition::new(vec![3, 1]);
        let f = edge_factor(-1, &mu, Convention::Plus);
        assert_eq!(f, QRational::from_integer(1));
        let f2 = edge_factor(-2, &mu, Convention::Plus);
        assert_eq!(f2.numerator().num_terms(), 1);
    }

    #[test]
    fn inverse_is_convolution_inverse() {
        let g = dp3();
        let ctx = StripContext::new(&g, Convention::Plus);
        let bound = CurveClass(vec![1, 1, 1]);
        for c in CurveClass::box_range(&bound) {
            let mut acc = QRational::zero();
            for u in CurveClass::box_range(&c) {
                let rest = c.checked_sub(&u).unwrap();
                let w = ctx.closed_coefficient(&u).unwrap();
                acc = &acc + &(&w * &ctx.inverse_closed_coefficient(&rest).unwrap());
            }
            if c.is_zero() {
                assert!(acc.is_one());
            } else {
                assert!(acc.is_zero(), "delta failed at {c}");
            }
        }
    }

    #[test]
    fn first_order_inverse_identity() {
        let g = dp3();
        let ctx = StripContext::new(&g, Convention::Plus);
        let e1 = CurveClass(vec![1, 0, 0]);
        assert_eq!(
            ctx.inverse_closed_coefficient(&e1).unwrap(),
            -&ctx.closed_coefficient(&e1).unwrap()
        );
        // second order: I[(1,1,0)] picks up both ordered splittings,
        // -W[(1,1,0)] + 2 W[(1,0,0)] W[(0,1,0)]
        let c = CurveClass(vec![1, 1, 0]);
        let a = CurveClass(vec![1, 0, 0]);
        let b = CurveClass(vec![0, 1, 0]);
        let cross = &ctx.closed_coefficient(&a).unwrap() * &ctx.closed_coefficient(&b).unwrap();
        let expect = &(-&ctx.closed_coefficient(&c).unwrap()) + &cross.mul_integer(2);
        assert_eq!(ctx.inverse_closed_coefficient(&c).unwrap(), expect);
    }

    #[test]
    fn disk_series_of_bare_vertex() {
        // Geometry with no compact edges: the winding-1 connected series at
        // the zero class is -i * (-1)^{|mu|} h_1-type amplitude.
        let g = StripGeometry {
            brane_edge_degree: -1,
            brane_class: vec![1],
            edges: vec![],
            class_map: vec![vec![1]],
            h2_basis: vec!["pt".into()],
            d1_pairing: None,
            d2_pairing: None,
        };
        g.validate().unwrap();
        let ctx = StripContext::new(&g, Convention::Plus);
        let v = ctx.connected_open_series(1, &CurveClass(vec![])).unwrap();
        // W_{(1)} = (-1) * W(empty, (1)) = -q^{-kappa/2}... with kappa = 0:
        // -s_{(1)^t}(rho) = -h_1; so -i * (-h_1) = i h_1, normalized phase 1.
        assert_eq!(v.i_power, 1);
        assert_eq!(v.value, h_spec(1, Convention::Plus));
        assert!(ctx.connected_open_series(0, &CurveClass(vec![])).is_err());
    }

    #[test]
    fn hook_sum_structure_for_winding_two() {
        // hooks(2) has exactly two terms with signs (+,-) and prefactor 1/2.
        let g = single_edge();
        let ctx = StripContext::new(&g, Convention::Plus);
        let c = CurveClass(vec![0]);
        let direct = ctx.connected_open_series(2, &c).unwrap();
        let w20 = ctx.open_coefficient(&Partition::new(vec![2]), &c).unwrap();
        let w11 = ctx
            .open_coefficient(&Partition::new(vec![1, 1]), &c)
            .unwrap();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let expect = Phased::new(3, (&w20 - &w11).mul_rational(&half));
        assert_eq!(direct, expect);
    }

    #[test]
    fn class_map_round_trip() {
        let g = dp3();
        let c = CurveClass(vec![1, 1, 0]);
        let d = g.apply_class_map(1, &c).unwrap();
        assert_eq!(d, vec![1, 1, 1, 0]);
        let (w, back) = g.invert_class_map(&d).unwrap();
        assert_eq!(w, 1);
        assert_eq!(back, c);
        // non-integral solution
        assert!(g.invert_class_map(&[1, 1, 1, 1]).is_some());
    }

    #[test]
    fn geometry_json_round_trip() {
        let g = dp3();
        let text = serde_json::to_string_pretty(&g).unwrap();
        let back = StripGeometry::from_json(&text).unwrap();
        assert_eq!(g, back);
        assert!(StripGeometry::from_json("{\"oops\":1}").is_err());
    }
}
