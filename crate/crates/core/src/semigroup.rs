//! Finite magmas presented by a roster and a multiplication table, with the
//! structural checks used throughout: associativity, idempotents, regularity,
//! right reductivity and verification of explicit (anti-)homomorphisms.

use std::collections::{HashMap, HashSet};
use std::fmt::Display;
use std::hash::Hash;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::foundation::{enumerate_sing, GroundSet, Transformation};

/// Largest table on which the cubic associativity check runs.
pub const ASSOCIATIVITY_MAX_ORDER: usize = 1024;

/// Roster plus row-major product table of indices into the roster.
#[derive(Debug, Clone)]
pub struct CayleyTable<T> {
    roster: Vec<T>,
    index: HashMap<T, u32>,
    table: Vec<u32>,
}

impl<T> CayleyTable<T>
where
    T: Clone + Eq + Hash + Send + Sync,
{
    /// Tabulate `product` over `roster`. Rows are computed in parallel.
    /// Fails with a closure violation if some product leaves the roster.
    pub fn from_product<F>(roster: Vec<T>, product: F) -> Result<Self>
    where
        F: Fn(&T, &T) -> T + Sync,
        T: Display,
    {
        let index = Self::index_roster(&roster)?;
        let rows: Vec<Result<Vec<u32>>> = roster
            .par_iter()
            .map(|x| {
                roster
                    .iter()
                    .map(|y| {
                        let z = product(x, y);
                        index
                            .get(&z)
                            .copied()
                            .ok_or_else(|| Error::ClosureViolation(format!("{x} * {y} = {z} is outside the roster")))
                    })
                    .collect()
            })
            .collect();
        let mut table = Vec::with_capacity(roster.len() * roster.len());
        for row in rows {
            table.extend(row?);
        }
        Ok(CayleyTable { roster, index, table })
    }

    /// Build from an explicit table of roster indices.
    pub fn from_parts(roster: Vec<T>, rows: Vec<Vec<usize>>) -> Result<Self> {
        let index = Self::index_roster(&roster)?;
        let n = roster.len();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::MalformedTable(format!(
                "table shape does not match {n} roster entries"
            )));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry ({i},{j}) = {v} is not a roster index"
                    )));
                }
                table.push(v as u32);
            }
        }
        Ok(CayleyTable { roster, index, table })
    }

    fn index_roster(roster: &[T]) -> Result<HashMap<T, u32>> {
        if roster.len() > u32::MAX as usize {
            return Err(Error::MalformedTable("roster too large".into()));
        }
        let mut index = HashMap::with_capacity(roster.len());
        for (i, x) in roster.iter().enumerate() {
            if index.insert(x.clone(), i as u32).is_some() {
                return Err(Error::MalformedTable(format!("duplicate roster entry at index {i}")));
            }
        }
        Ok(index)
    }
}

impl<T> CayleyTable<T> {
    pub fn order(&self) -> usize {
        self.roster.len()
    }

    pub fn roster(&self) -> &[T] {
        &self.roster
    }

    pub fn element(&self, i: usize) -> &T {
        &self.roster[i]
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.table[i * self.roster.len() + j] as usize
    }

    pub fn row(&self, i: usize) -> &[u32] {
        let n = self.roster.len();
        &self.table[i * n..(i + 1) * n]
    }
}

impl<T: Sync> CayleyTable<T> {
    /// `(xy)z = x(yz)` for all triples. Refuses tables above
    /// [`ASSOCIATIVITY_MAX_ORDER`].
    pub fn check_associative(&self) -> Result<bool> {
        let n = self.order();
        if n > ASSOCIATIVITY_MAX_ORDER {
            return Err(Error::SizeGuard {
                what: "associativity check (table order)",
                n,
                max: ASSOCIATIVITY_MAX_ORDER,
            });
        }
        Ok((0..n).into_par_iter().all(|x| {
            (0..n).all(|y| {
                let xy = self.product(x, y);
                (0..n).all(|z| self.product(xy, z) == self.product(x, self.product(y, z)))
            })
        }))
    }

    /// Indices `e` with `ee = e`.
    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.order()).filter(|&e| self.product(e, e) == e).collect()
    }

    /// Every `a` has some `x` with `axa = a`.
    pub fn is_regular(&self) -> bool {
        let n = self.order();
        (0..n)
            .into_par_iter()
            .all(|a| (0..n).any(|x| self.product(self.product(a, x), a) == a))
    }

    /// The right regular representation `a ↦ (s ↦ sa)` is injective, i.e. the
    /// table's columns are pairwise distinct.
    pub fn is_right_reductive(&self) -> bool {
        let n = self.order();
        let columns: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map(|a| (0..n).map(|s| self.product(s, a) as u32).collect())
            .collect();
        let mut seen = HashSet::with_capacity(n);
        columns.into_iter().all(|c| seen.insert(c))
    }
}

impl<T: Eq + Hash> CayleyTable<T> {
    pub fn index_of(&self, x: &T) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    /// Product of two roster elements.
    pub fn multiply(&self, x: &T, y: &T) -> Option<&T> {
        let (i, j) = (self.index_of(x)?, self.index_of(y)?);
        Some(&self.roster[self.product(i, j)])
    }
}

#[derive(Serialize)]
struct JsonTable {
    roster: Vec<String>,
    table: Vec<Vec<u32>>,
}

impl<T: Display> CayleyTable<T> {
    pub fn labels(&self) -> Vec<String> {
        self.roster.iter().map(|x| x.to_string()).collect()
    }

    /// CSV with a header row `*,label,...` followed by one row per element.
    pub fn to_csv(&self) -> Result<String> {
        let io = |e: csv::Error| Error::MalformedTable(e.to_string());
        let mut w = csv::Writer::from_writer(Vec::new());
        let labels = self.labels();
        w.write_record(std::iter::once("*").chain(labels.iter().map(String::as_str)))
            .map_err(io)?;
        for (i, label) in labels.iter().enumerate() {
            let row = self.row(i).iter().map(|&k| labels[k as usize].as_str());
            w.write_record(std::iter::once(label.as_str()).chain(row)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::MalformedTable(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("labels are UTF-8"))
    }

    /// `{"roster": [labels], "table": [[indices]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.order();
        let doc = JsonTable {
            roster: self.labels(),
            table: (0..n).map(|i| self.row(i).to_vec()).collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }
}

/// `Sing(X)` under composition, in lexicographic roster order.
pub fn sing_table(ground: GroundSet) -> Result<CayleyTable<Transformation>> {
    CayleyTable::from_product(enumerate_sing(ground), |a, b| a.then(b))
}

fn image_indices<S, T, F>(t1: &CayleyTable<S>, t2: &CayleyTable<T>, map: F) -> Result<Vec<usize>>
where
    S: Display,
    T: Eq + Hash,
    F: Fn(&S) -> T,
{
    t1.roster
        .iter()
        .map(|x| t2.index_of(&map(x)).ok_or_else(|| Error::NonTotalMap(x.to_string())))
        .collect()
}

fn preserves<S, T>(t1: &CayleyTable<S>, t2: &CayleyTable<T>, img: &[usize], anti: bool) -> bool
where
    S: Sync,
    T: Sync,
{
    let n = t1.order();
    (0..n).into_par_iter().all(|x| {
        (0..n).all(|y| {
            let lhs = img[t1.product(x, y)];
            let rhs = if anti {
                t2.product(img[y], img[x])
            } else {
                t2.product(img[x], img[y])
            };
            lhs == rhs
        })
    })
}

fn bijective(img: &[usize], target_order: usize) -> bool {
    img.len() == target_order && img.iter().collect::<HashSet<_>>().len() == target_order
}

/// `map(xy) = map(x) map(y)` for all pairs. Errors if some image is missing
/// from the target roster.
pub fn verify_hom<S, T, F>(t1: &CayleyTable<S>, t2: &CayleyTable<T>, map: F) -> Result<bool>
where
    S: Display + Sync,
    T: Eq + Hash + Sync,
    F: Fn(&S) -> T,
{
    let img = image_indices(t1, t2, map)?;
    Ok(preserves(t1, t2, &img, false))
}

/// A bijective homomorphism.
pub fn verify_iso<S, T, F>(t1: &CayleyTable<S>, t2: &CayleyTable<T>, map: F) -> Result<bool>
where
    S: Display + Sync,
    T: Eq + Hash + Sync,
    F: Fn(&S) -> T,
{
    let img = image_indices(t1, t2, map)?;
    Ok(bijective(&img, t2.order()) && preserves(t1, t2, &img, false))
}

/// A bijection with `map(xy) = map(y) map(x)`.
pub fn verify_anti_iso<S, T, F>(t1: &CayleyTable<S>, t2: &CayleyTable<T>, map: F) -> Result<bool>
where
    S: Display + Sync,
    T: Eq + Hash + Sync,
    F: Fn(&S) -> T,
{
    let img = image_indices(t1, t2, map)?;
    Ok(bijective(&img, t2.order()) && preserves(t1, t2, &img, true))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sing(n: usize) -> CayleyTable<Transformation> {
        sing_table(GroundSet::new(n).unwrap()).unwrap()
    }

    fn left_zero() -> CayleyTable<&'static str> {
        CayleyTable::from_parts(vec!["x", "y"], vec![vec![0, 0], vec![1, 1]]).unwrap()
    }

    /// `a != b` implies some `s` with `sa != sb`.
    fn separated_pairwise<T>(t: &CayleyTable<T>) -> bool {
        let n = t.order();
        (0..n).all(|a| (a + 1..n).all(|b| (0..n).any(|s| t.product(s, a) != t.product(s, b))))
    }

    #[test]
    fn sing3_structure() {
        let t = sing(3);
        assert_eq!(t.order(), 21);
        assert!(t.check_associative().unwrap());
        assert!(t.is_regular());
        assert!(t.is_right_reductive());
        let brute = t.roster().iter().filter(|a| a.is_idempotent()).count();
        assert_eq!(t.idempotents().len(), brute);
        assert_eq!(brute, 9);
    }

    #[test]
    fn left_zero_is_regular_but_not_right_reductive() {
        let t = left_zero();
        assert!(t.check_associative().unwrap());
        assert!(t.is_regular());
        assert!(!t.is_right_reductive());
        assert!(!separated_pairwise(&t));
    }

    #[test]
    fn corrupted_entry_breaks_associativity() {
        let t = sing(3);
        let mut rows: Vec<Vec<usize>> = (0..t.order())
            .map(|i| t.row(i).iter().map(|&v| v as usize).collect())
            .collect();
        rows[3][5] = (rows[3][5] + 1) % t.order();
        let bad = CayleyTable::from_parts(t.roster().to_vec(), rows).unwrap();
        assert!(!bad.check_associative().unwrap());
    }

    #[test]
    fn malformed_tables_are_rejected() {
        assert!(matches!(
            CayleyTable::from_parts(vec!["x"], vec![vec![1]]),
            Err(Error::MalformedTable(_))
        ));
        assert!(CayleyTable::from_parts(vec!["x", "y"], vec![vec![0]]).is_err());
        assert!(CayleyTable::from_parts(vec!["x", "x"], vec![vec![0, 0], vec![0, 0]]).is_err());
    }

    #[test]
    fn closure_violation_is_reported() {
        let roster = vec![1u32, 2];
        let r = CayleyTable::from_product(roster, |a, b| a + b);
        assert!(matches!(r, Err(Error::ClosureViolation(_))));
    }

    #[test]
    fn right_reductive_agrees_with_pairwise_oracle() {
        for t in [sing(2), sing(3), sing(4)] {
            assert_eq!(t.is_right_reductive(), separated_pairwise(&t));
        }
        let lz = left_zero();
        assert_eq!(lz.is_right_reductive(), separated_pairwise(&lz));
    }

    #[test]
    fn identity_map_is_an_isomorphism() {
        let t = sing(3);
        assert!(verify_iso(&t, &t, |a| *a).unwrap());
        assert!(verify_hom(&t, &t, |a| *a).unwrap());
        assert!(!verify_anti_iso(&t, &t, |a| *a).unwrap());
    }

    #[test]
    fn non_total_map_is_an_error() {
        let t = sing(3);
        let r = verify_hom(&t, &t, |_| Transformation::parse("1,2,3").unwrap());
        assert!(matches!(r, Err(Error::NonTotalMap(_))));
    }

    #[test]
    fn exports() {
        let t = sing(2);
        assert_eq!(
            t.to_csv().unwrap(),
            "*,\"1,1\",\"2,2\"\n\"1,1\",\"1,1\",\"2,2\"\n\"2,2\",\"1,1\",\"2,2\"\n"
        );
        let j = t.to_json();
        assert_eq!(j["roster"], serde_json::json!(["1,1", "2,2"]));
        assert_eq!(j["table"], serde_json::json!([[0, 1], [0, 1]]));
        assert_eq!(t.multiply(&t.roster()[0], &t.roster()[1]), Some(&t.roster()[1]));
    }
}
