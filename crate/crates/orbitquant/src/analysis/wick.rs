use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra_core::{RationalFunction, Ring, Q};
use crate::enveloping::{Engine, Mono, PbwElement};
use crate::error::{Error, Result};
use crate::lie_structure::{OrbitSpec, TypeAOrdering};
use crate::twist::build_twist;

#[derive(Debug, Clone, Serialize)]
pub struct WickReport {
    pub pass: bool,
    pub n: usize,
    pub r: String,
    pub max_grade: usize,
    pub terms_compared: usize,
}

/// Generator of `to` with the same matrix as generator `g` of `from`.
fn same_matrix(from: &Engine, to: &Engine, g: u8) -> Result<u8> {
    let m = &from.generator(g).matrix;
    to.generators()
        .iter()
        .position(|x| &x.matrix == m)
        .map(|i| i as u8)
        .ok_or_else(|| Error::Mismatch(format!("no generator with the matrix of {}", from.generator(g).name)))
}

fn transport(from: &Engine, to: &Engine, m: &[u8]) -> Result<PbwElement> {
    let word = m.iter().map(|&g| same_matrix(from, to, g)).collect::<Result<Vec<_>>>()?;
    Ok(to.normal_order(&word))
}

/// The twist of the standard ordering at r equals the twist of the opposite ordering
/// at −r with its tensor legs swapped, compared term by term in one PBW basis.
pub fn wick_rotation_check(n: usize, r: &Q, max_grade: usize) -> Result<WickReport> {
    let std = build_twist(&OrbitSpec::type_a(n, r.clone(), TypeAOrdering::Standard)?, max_grade)?;
    let opp = build_twist(&OrbitSpec::type_a(n, -r.clone(), TypeAOrdering::Opposite)?, max_grade)?;
    let (es, eo) = (&std.engine, &opp.engine);
    let mut swapped: BTreeMap<(Mono, Mono), RationalFunction> = BTreeMap::new();
    for ((a, b), c) in &opp.reduced {
        let left = transport(eo, es, b)?;
        let right = transport(eo, es, a)?;
        for (l, cl) in left.terms.iter() {
            for (rm, cr) in right.terms.iter() {
                let add = c.scaled(&cl.times(cr));
                let e = swapped.entry((l.clone(), rm.clone())).or_insert_with(RationalFunction::zero);
                *e = e.plus(&add);
            }
        }
    }
    swapped.retain(|_, c| !c.is_zero());
    if swapped != std.reduced {
        let witness = std
            .reduced
            .iter()
            .find(|(k, v)| swapped.get(*k) != Some(*v))
            .map(|((a, b), _)| format!("{:?} ⊗ {:?}", std.gen_names(a), std.gen_names(b)))
            .or_else(|| swapped.keys().find(|k| !std.reduced.contains_key(*k)).map(|(a, b)| format!("{:?} ⊗ {:?}", std.gen_names(a), std.gen_names(b))))
            .unwrap_or_default();
        return Err(Error::Mismatch(format!("Wick rotation differs at {witness}")));
    }
    Ok(WickReport {
        pass: true,
        n,
        r: crate::algebra_core::rational_to_string(r),
        max_grade,
        terms_compared: std.reduced.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn grade_zero_is_trivial() {
        assert_eq!(wick_rotation_check(1, &Q::one(), 0).unwrap().terms_compared, 1);
    }

    #[test]
    fn rank_one() {
        assert!(wick_rotation_check(1, &Q::one(), 5).unwrap().pass);
    }
}
