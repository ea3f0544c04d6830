//! The rational Burnside ring of a subgroup `H` of a lattice's group.
//!
//! Elements are stored in the basis of transitive sets `[H/K]`, one per
//! `H`-conjugacy class of subgroups of `H`. Multiplication goes through the
//! table of marks, which diagonalizes the ring over `Q`.

mod maps;
mod split;

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::group::{left_transversal, SubgroupLattice};
use crate::qmod::QMap;
use crate::rational::{q, Q};
use crate::report::{Check, Report};

pub use maps::{conjugation_matrix, induction_matrix, restriction_matrix};
pub use split::{module_to_sheaf, PointSplit};

/// Marks `|(H/K_i)^{L_j}|`, rows and columns indexed by `H`-classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableOfMarks {
    entries: Vec<Vec<u64>>,
}

impl TableOfMarks {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    fn to_qmap(&self) -> QMap {
        let n = self.size();
        let mut m = QMap::zero(n, n);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                m[(i, j)] = Q::from_integer(v.into());
            }
        }
        m
    }
}

/// A rational combination of the transitive sets `[H/K]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideElement {
    top: usize,
    coeffs: Vec<Q>,
}

impl BurnsideElement {
    /// Lattice index of the group `H` this element lives over.
    pub fn top(&self) -> usize {
        self.top
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, class: usize) -> &Q {
        &self.coeffs[class]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
}

/// Values of a mark function, one per `H`-class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkFunction {
    pub values: Vec<Q>,
}

/// `A_Q(H)` for `H` a subgroup of the lattice group.
pub struct BurnsideRing {
    lattice: Arc<SubgroupLattice>,
    top: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<Option<usize>>,
    marks: TableOfMarks,
    marks_t: QMap,
    marks_t_inv: QMap,
}

impl fmt::Debug for BurnsideRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BurnsideRing")
            .field("top", &self.top)
            .field("classes", &self.classes)
            .finish()
    }
}

impl BurnsideRing {
    /// Burnside ring of the lattice's whole group.
    pub fn of_group(lattice: Arc<SubgroupLattice>) -> Self {
        let top = lattice.top();
        Self::new(lattice, top)
    }

    pub fn new(lattice: Arc<SubgroupLattice>, top: usize) -> Self {
        let h = lattice.subgroup(top).clone();
        let mut class_of = vec![None; lattice.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        // subsets are ascending, so the first unseen member of an orbit is its minimum
        for &k in lattice.subsets(top) {
            if class_of[k].is_some() {
                continue;
            }
            let c = classes.len();
            let mut orbit: Vec<usize> = h
                .members()
                .iter()
                .map(|&x| lattice.conjugate(x, k))
                .collect();
            orbit.sort_unstable();
            orbit.dedup();
            for &o in &orbit {
                class_of[o] = Some(c);
            }
            classes.push(orbit);
        }
        let g = lattice.group().clone();
        let entries: Vec<Vec<u64>> = classes
            .iter()
            .map(|ci| {
                let k = ci[0];
                let ks = lattice.subgroup(k);
                let t = left_transversal(&g, ks, &h);
                classes
                    .iter()
                    .map(|cj| {
                        let l = cj[0];
                        // gK is fixed by L iff g^-1 L g <= K
                        t.iter()
                            .filter(|&&x| lattice.leq(lattice.conjugate(g.inv(x), l), k))
                            .count() as u64
                    })
                    .collect()
            })
            .collect();
        let marks = TableOfMarks { entries };
        let marks_t = marks.to_qmap().transpose();
        let marks_t_inv = marks_t.inverse().expect("table of marks is invertible");
        BurnsideRing {
            lattice,
            top,
            classes,
            class_of,
            marks,
            marks_t,
            marks_t_inv,
        }
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    /// `H`-conjugacy classes of subgroups of `H`, as lattice indices.
    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_rep(&self, c: usize) -> usize {
        self.classes[c][0]
    }

    /// Class of a subgroup of `H`, `None` if it is not contained in `H`.
    pub fn class_of(&self, k: usize) -> Option<usize> {
        self.class_of[k]
    }

    pub fn table_of_marks(&self) -> &TableOfMarks {
        &self.marks
    }

    pub fn zero(&self) -> BurnsideElement {
        BurnsideElement {
            top: self.top,
            coeffs: vec![Q::zero(); self.rank()],
        }
    }

    /// `[H/K_c]`.
    pub fn basis(&self, c: usize) -> BurnsideElement {
        let mut x = self.zero();
        x.coeffs[c] = Q::one();
        x
    }

    /// `[H/K]` for a subgroup `K <= H` given by lattice index.
    pub fn transitive(&self, k: usize) -> Result<BurnsideElement> {
        let c = self.class_of[k].ok_or(Error::NotComparable {
            lower: k,
            upper: self.top,
        })?;
        Ok(self.basis(c))
    }

    /// `[H/H]`, the unit.
    pub fn one(&self) -> BurnsideElement {
        self.basis(self.class_of[self.top].expect("top is its own class"))
    }

    pub fn from_coeffs(&self, coeffs: Vec<Q>) -> Result<BurnsideElement> {
        if coeffs.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} coefficients for rank {}",
                coeffs.len(),
                self.rank()
            )));
        }
        Ok(BurnsideElement {
            top: self.top,
            coeffs,
        })
    }

    fn check(&self, x: &BurnsideElement) {
        assert!(
            x.top == self.top && x.coeffs.len() == self.rank(),
            "Burnside element from another ring"
        );
    }

    pub fn add(&self, x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
        self.check(x);
        self.check(y);
        let coeffs = x.coeffs.iter().zip(&y.coeffs).map(|(a, b)| a + b).collect();
        BurnsideElement {
            top: self.top,
            coeffs,
        }
    }

    pub fn sub(&self, x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
        self.add(x, &self.scale(y, &q(-1)))
    }

    pub fn scale(&self, x: &BurnsideElement, s: &Q) -> BurnsideElement {
        self.check(x);
        BurnsideElement {
            top: self.top,
            coeffs: x.coeffs.iter().map(|a| a * s).collect(),
        }
    }

    pub fn mark_of(&self, x: &BurnsideElement) -> MarkFunction {
        self.check(x);
        MarkFunction {
            values: self.marks_t.apply(&x.coeffs),
        }
    }

    pub fn from_marks(&self, f: &MarkFunction) -> Result<BurnsideElement> {
        if f.values.len() != self.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} marks for rank {}",
                f.values.len(),
                self.rank()
            )));
        }
        Ok(BurnsideElement {
            top: self.top,
            coeffs: self.marks_t_inv.apply(&f.values),
        })
    }

    pub fn mul(&self, x: &BurnsideElement, y: &BurnsideElement) -> BurnsideElement {
        let fx = self.mark_of(x);
        let fy = self.mark_of(y);
        let values = fx
            .values
            .iter()
            .zip(&fy.values)
            .map(|(a, b)| a * b)
            .collect();
        self.from_marks(&MarkFunction { values })
            .expect("same rank")
    }

    /// Characteristic function of a set of classes.
    pub fn characteristic(&self, support: &[usize]) -> BurnsideElement {
        let mut values = vec![Q::zero(); self.rank()];
        for &c in support {
            values[c] = Q::one();
        }
        self.from_marks(&MarkFunction { values })
            .expect("same rank")
    }

    /// Characteristic function of the `H`-saturation of a set of subgroups.
    pub fn characteristic_of_subgroups(
        &self,
        subgroups: impl IntoIterator<Item = usize>,
    ) -> BurnsideElement {
        let mut support: Vec<usize> = subgroups
            .into_iter()
            .filter_map(|k| self.class_of[k])
            .collect();
        support.sort_unstable();
        support.dedup();
        self.characteristic(&support)
    }

    /// Classes of `H` meeting `O_H(N, J) = {L <= H : NL = J}`.
    pub fn basic_support(&self, n: usize, j: usize) -> Vec<usize> {
        let lat = &self.lattice;
        let mut support: Vec<usize> = lat
            .subsets(j)
            .iter()
            .copied()
            .filter(|&l| lat.join(n, l) == j)
            .filter_map(|l| self.class_of[l])
            .collect();
        support.sort_unstable();
        support.dedup();
        support
    }

    /// `e^H_{(N,J)}` as the characteristic function of `O_H(N,J)/H`.
    ///
    /// Defined whenever `N <= J <= H`; no normality is needed.
    pub fn idempotent_char(&self, n: usize, j: usize) -> Result<BurnsideElement> {
        let lat = &self.lattice;
        if !lat.leq(n, j) {
            return Err(Error::NotComparable { lower: n, upper: j });
        }
        if !lat.leq(j, self.top) {
            return Err(Error::NotComparable {
                lower: j,
                upper: self.top,
            });
        }
        Ok(self.characteristic(&self.basic_support(n, j)))
    }

    /// `e^H_{(N,J)}` from the Möbius-weighted sum over subgroups
    /// `N <= X <= J` of `|X| / |N_H(J)| * mu(X, J) * [H/X]`.
    ///
    /// Requires `N` normal in `H` and `N <= J <= H`.
    pub fn idempotent_formula(&self, n: usize, j: usize) -> Result<BurnsideElement> {
        let lat = &self.lattice;
        if !lat.leq(j, self.top) {
            return Err(Error::NotComparable {
                lower: j,
                upper: self.top,
            });
        }
        if !lat.leq(n, j) {
            return Err(Error::NotComparable { lower: n, upper: j });
        }
        if !lat.is_normal_in(n, self.top) {
            return Err(Error::NotNormal {
                sub: n,
                ambient: self.top,
            });
        }
        let norm = lat.order_of(lat.normalizer_in(j, self.top));
        let mut coeffs = vec![Q::zero(); self.rank()];
        for &x in lat.supersets(n) {
            if !lat.leq(x, j) {
                continue;
            }
            let mu = lat.moebius(x, j)?;
            if mu == 0 {
                continue;
            }
            let c = self.class_of[x].expect("X <= H");
            coeffs[c] += Q::new((lat.order_of(x) as i64 * mu).into(), (norm as i64).into());
        }
        Ok(BurnsideElement {
            top: self.top,
            coeffs,
        })
    }

    /// `e^H_{(N,NK)}` for `N` normal in `H` and any `K <= H`.
    pub fn idempotent(&self, n: usize, k: usize) -> Result<BurnsideElement> {
        let nk = self.lattice.join(n, k);
        self.idempotent_formula(n, nk)
    }

    /// Distinct `H`-classes of subgroups `J` with `N <= J <= H`, as reps.
    pub fn classes_over(&self, n: usize) -> Vec<usize> {
        let lat = &self.lattice;
        let mut reps: Vec<usize> = lat
            .supersets(n)
            .iter()
            .copied()
            .filter(|&j| lat.leq(j, self.top))
            .map(|j| {
                // a conjugate over N with the smallest index; N is normal so every conjugate contains it
                let c = self.class_of[j].expect("J <= H");
                self.classes[c][0]
            })
            .collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R, range: i64) -> BurnsideElement {
        let coeffs = (0..self.rank())
            .map(|_| {
                Q::new(
                    rng.gen_range(-range..=range).into(),
                    rng.gen_range(1..=3i64).into(),
                )
            })
            .collect();
        BurnsideElement {
            top: self.top,
            coeffs,
        }
    }

    /// Checks the idempotent family `e^H_{(N,J)}` over the classes of `J >= N`.
    pub fn idempotent_suite_check(&self, n: usize) -> Result<Report> {
        let lat = &self.lattice;
        let mut report = Report::new("idempotent_suite");
        let js = self.classes_over(n);
        let mut es = Vec::with_capacity(js.len());
        for &j in &js {
            let e = self.idempotent_formula(n, j)?;
            let label = format!("J={}", lat.subgroup(j));
            report.push(Check::from_bool(
                "idempotent_square",
                "idempotent formula",
                self.mul(&e, &e) == e,
                &label,
            ));
            report.push(Check::from_bool(
                "idempotent_matches_support",
                "idempotent formula",
                e == self.idempotent_char(n, j)?,
                &label,
            ));
            let norm = lat.normalizer_in(j, self.top);
            let stable = lat.subgroup(norm).members().iter().all(|&a| {
                lat.supersets(n)
                    .iter()
                    .filter(|&&x| lat.leq(x, j))
                    .all(|&x| {
                        let y = lat.conjugate(a, x);
                        lat.moebius(x, j).ok() == lat.moebius(y, j).ok()
                            && lat.order_of(x) == lat.order_of(y)
                    })
            });
            report.push(Check::from_bool(
                "coefficients_conjugation_invariant",
                "idempotent coefficients",
                stable,
                &label,
            ));
            es.push(e);
        }
        for a in 0..es.len() {
            for b in a + 1..es.len() {
                let zero = self.mul(&es[a], &es[b]).is_zero();
                let label = format!("J={} J'={}", lat.subgroup(js[a]), lat.subgroup(js[b]));
                report.push(Check::from_bool(
                    "idempotents_orthogonal",
                    "idempotent formula",
                    zero,
                    &label,
                ));
            }
        }
        let total = es.iter().fold(self.zero(), |acc, e| self.add(&acc, e));
        report.push(Check::from_bool(
            "partition_of_unity",
            "idempotent formula",
            total == self.one(),
            "sum of idempotents",
        ));
        Ok(report)
    }

    /// Matrix of multiplication by `x` on `A_Q(H)` in the `[H/K]` basis.
    pub fn multiplication_matrix(&self, x: &BurnsideElement) -> QMap {
        let cols: Vec<Vec<Q>> = (0..self.rank())
            .map(|c| self.mul(x, &self.basis(c)).coeffs)
            .collect();
        QMap::from_columns(self.rank(), &cols)
    }

    pub fn format(&self, x: &BurnsideElement) -> String {
        let terms: Vec<String> = x
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                format!(
                    "{}*[H/{}]",
                    crate::rational::to_string(c),
                    self.lattice.subgroup(self.class_rep(i))
                )
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests;
