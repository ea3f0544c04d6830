use super::BurnsideRing;
use crate::group::double_coset_reps;
use crate::qmod::QMap;
use crate::rational::Q;

/// Restriction `A_Q(H) -> A_Q(K)`: the `K`-orbits of `H/X` are indexed by
/// double cosets `K g X` with stabilizer `K ∩ gXg^-1`.
pub fn restriction_matrix(big: &BurnsideRing, small: &BurnsideRing) -> QMap {
    let lat = big.lattice();
    let g = lat.group();
    let (h, k) = (big.top(), small.top());
    assert!(lat.leq(k, h), "restriction to a non-subgroup");
    let mut m = QMap::zero(small.rank(), big.rank());
    for c in 0..big.rank() {
        let x = big.class_rep(c);
        for t in double_coset_reps(g, lat.subgroup(k), lat.subgroup(x), lat.subgroup(h)) {
            let stab = lat.intersect(k, lat.conjugate(t, x));
            let row = small.class_of(stab).expect("stabilizer lies in K");
            m[(row, c)] += Q::from_integer(1.into());
        }
    }
    m
}

/// Induction `A_Q(K) -> A_Q(H)`, `[K/Y] -> [H/Y]`.
pub fn induction_matrix(small: &BurnsideRing, big: &BurnsideRing) -> QMap {
    let mut m = QMap::zero(big.rank(), small.rank());
    for c in 0..small.rank() {
        let row = big.class_of(small.class_rep(c)).expect("K <= H");
        m[(row, c)] = Q::from_integer(1.into());
    }
    m
}

/// Conjugation `A_Q(H) -> A_Q(gHg^-1)`, `[H/X] -> [gHg^-1/gXg^-1]`.
pub fn conjugation_matrix(g: u32, from: &BurnsideRing, to: &BurnsideRing) -> QMap {
    let lat = from.lattice();
    assert_eq!(
        lat.conjugate(g, from.top()),
        to.top(),
        "target is not the conjugate"
    );
    let mut m = QMap::zero(to.rank(), from.rank());
    for c in 0..from.rank() {
        let row = to
            .class_of(lat.conjugate(g, from.class_rep(c)))
            .expect("conjugate lies in target");
        m[(row, c)] = Q::from_integer(1.into());
    }
    m
}
