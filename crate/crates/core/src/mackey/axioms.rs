use rayon::prelude::*;

use super::MackeyFunctor;
use crate::group::double_coset_reps;
use crate::qmod::QMap;
use crate::report::{Check, Report};

const MAX_WITNESSES: usize = 10;

/// Outcome of one axiom family: tuples tested and the failing ones.
struct Family {
    name: &'static str,
    statement: &'static str,
    tested: usize,
    failures: Vec<String>,
}

impl Family {
    fn push_into(self, report: &mut Report) {
        if self.failures.is_empty() {
            report.push(Check::pass(
                self.name,
                self.statement,
                format!("{} tuples", self.tested),
            ));
            return;
        }
        let n = self.failures.len();
        for w in self.failures.into_iter().take(MAX_WITNESSES) {
            report.push(Check::fail(self.name, self.statement, w));
        }
        if n > MAX_WITNESSES {
            report.push(Check::fail(
                self.name,
                self.statement,
                format!("{} further failures of {}", n - MAX_WITNESSES, self.tested),
            ));
        }
    }
}

/// Runs `f` on every item in parallel and gathers failures in item order.
fn family<I, F>(name: &'static str, statement: &'static str, items: Vec<I>, f: F) -> Family
where
    I: Send + Sync,
    F: Fn(&I) -> (usize, Vec<String>) + Send + Sync,
{
    let parts: Vec<(usize, Vec<String>)> = items.par_iter().map(&f).collect();
    let tested = parts.iter().map(|p| p.0).sum();
    let failures = parts.into_iter().flat_map(|p| p.1).collect();
    Family {
        name,
        statement,
        tested,
        failures,
    }
}

fn eq(a: &QMap, b: &QMap) -> bool {
    a == b
}

/// Verifies every axiom family as exact matrix identities over all valid
/// subgroup tuples and group elements of the deepest level.
pub fn check_axioms(m: &MackeyFunctor) -> Report {
    let lat = m.lattice().clone();
    let g = m.tower().level(m.depth()).clone();
    let n = lat.len();
    let s = |h: usize| lat.subgroup(h).to_string();
    let hs: Vec<usize> = (0..n).collect();
    let elems: Vec<u32> = g.elements().collect();
    let mut report = Report::new("check_axioms")
        .with_input("functor", m.name())
        .with_input("tower", m.tower().label())
        .with_input("depth", m.depth().to_string());

    family(
        "unitality",
        "restriction, induction and self-conjugation are trivial",
        hs.clone(),
        |&h| {
            let id = QMap::identity(m.dim(h));
            let mut fails = Vec::new();
            if !m.res(h, h).unwrap().is_identity() {
                fails.push(format!("R^H_H != id at H={}", s(h)));
            }
            if !m.ind(h, h).unwrap().is_identity() {
                fails.push(format!("I^H_H != id at H={}", s(h)));
            }
            for &x in lat.subgroup(h).members() {
                if !eq(m.conj(x, h), &id) {
                    fails.push(format!("C_h != id at H={} h={x}", s(h)));
                }
            }
            (2 + lat.subgroup(h).order(), fails)
        },
    )
    .push_into(&mut report);

    family(
        "transitivity",
        "restriction and induction compose along chains",
        hs.clone(),
        |&h| {
            let mut fails = Vec::new();
            let mut tested = 0;
            for &k in lat.subsets(h) {
                for &l in lat.subsets(k) {
                    tested += 2;
                    let ind = m.ind(h, k).unwrap().compose(m.ind(k, l).unwrap()).unwrap();
                    if !eq(&ind, m.ind(h, l).unwrap()) {
                        fails.push(format!(
                            "I^H_L != I^H_K I^K_L at H={} K={} L={}",
                            s(h),
                            s(k),
                            s(l)
                        ));
                    }
                    let res = m.res(k, l).unwrap().compose(m.res(h, k).unwrap()).unwrap();
                    if !eq(&res, m.res(h, l).unwrap()) {
                        fails.push(format!(
                            "R^H_L != R^K_L R^H_K at H={} K={} L={}",
                            s(h),
                            s(k),
                            s(l)
                        ));
                    }
                }
            }
            (tested, fails)
        },
    )
    .push_into(&mut report);

    // the generators suffice for the cocycle rule; small groups get every pair
    let right: Vec<u32> = if g.order() <= 32 {
        elems.clone()
    } else {
        g.generators().to_vec()
    };
    family(
        "associativity",
        "conjugation is an action",
        elems.clone(),
        |&x| {
            let mut fails = Vec::new();
            for &y in &right {
                let xy = g.mul(x, y);
                for h in 0..n {
                    let lhs = m
                        .conj(x, lat.conjugate(y, h))
                        .compose(m.conj(y, h))
                        .unwrap();
                    if !eq(&lhs, m.conj(xy, h)) {
                        fails.push(format!("C_gh != C_g C_h at g={x} h={y} H={}", s(h)));
                    }
                }
            }
            (right.len() * n, fails)
        },
    )
    .push_into(&mut report);

    family(
        "equivariance",
        "restriction and induction commute with conjugation",
        elems.clone(),
        |&x| {
            let mut fails = Vec::new();
            let mut tested = 0;
            for h in 0..n {
                let xh = lat.conjugate(x, h);
                for &k in lat.subsets(h) {
                    let xk = lat.conjugate(x, k);
                    tested += 2;
                    let lhs = m.res(xh, xk).unwrap().compose(m.conj(x, h)).unwrap();
                    let rhs = m.conj(x, k).compose(m.res(h, k).unwrap()).unwrap();
                    if lhs != rhs {
                        fails.push(format!("R C_g != C_g R at g={x} H={} K={}", s(h), s(k)));
                    }
                    let lhs = m.ind(xh, xk).unwrap().compose(m.conj(x, k)).unwrap();
                    let rhs = m.conj(x, h).compose(m.ind(h, k).unwrap()).unwrap();
                    if lhs != rhs {
                        fails.push(format!("I C_g != C_g I at g={x} H={} K={}", s(h), s(k)));
                    }
                }
            }
            (tested, fails)
        },
    )
    .push_into(&mut report);

    family("mackey_formula", "double coset formula", hs, |&h| {
        let mut fails = Vec::new();
        let mut tested = 0;
        let hsub = lat.subgroup(h);
        for &k in lat.subsets(h) {
            for &l in lat.subsets(h) {
                tested += 1;
                let lhs = m.res(h, k).unwrap().compose(m.ind(h, l).unwrap()).unwrap();
                let mut rhs = QMap::zero(m.dim(k), m.dim(l));
                for x in double_coset_reps(&g, lat.subgroup(k), lat.subgroup(l), hsub) {
                    let xi = g.inv(x);
                    let a = lat.intersect(l, lat.conjugate(xi, k));
                    let b = lat.conjugate(x, a);
                    let term = m
                        .ind(k, b)
                        .unwrap()
                        .compose(m.conj(x, a))
                        .unwrap()
                        .compose(m.res(l, a).unwrap())
                        .unwrap();
                    rhs.add_assign(&term);
                }
                if lhs != rhs {
                    fails.push(format!(
                        "R^H_K I^H_L != sum at H={} K={} L={}",
                        s(h),
                        s(k),
                        s(l)
                    ));
                }
            }
        }
        (tested, fails)
    })
    .push_into(&mut report);

    report
}
