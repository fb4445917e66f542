//! Per-index evaluation of the twelve principles on an explicit amst.

use amst_core::principles::{check, run_form, PrincipleId};
use amst_core::semantics::compact_in;
use amst_core::space::FiniteDomain;
use amst_core::{FiniteSpace, FiniteView, Reading};

/// The eight semantic principles followed by the four syntactic ones on
/// the induced structure.
pub const NODES: [PrincipleId; 12] = {
    use PrincipleId::*;
    [GecqSat, SecqSat, SpecqSat, PfecqSat, GecqFinsat, SecqFinsat, SpecqFinsat, PfecqFinsat, Gecq, Secq, Specq, Pfecq]
};

pub fn node(p: PrincipleId) -> usize {
    NODES.iter().position(|&q| q == p).expect("every principle is a node")
}

pub fn space_at(models: u32, n: u32, index: u64) -> FiniteSpace {
    FiniteSpace::from_view(FiniteView::from_index(models, n, index))
}

/// One bit per entry of [`NODES`]. Finite carriers make every verdict exact.
pub fn node_bits(s: &FiniteSpace) -> u16 {
    let v = s.view();
    let full = v.full();
    let mut bits = 0u16;
    for (i, &p) in NODES.iter().enumerate() {
        let holds = match p.mode() {
            Some(_) => check(s, p, None).is_verified(),
            None => run_form(&FiniteDomain::new(v.sentences()), p.form(), |g| v.closure(*g) == full, None).is_verified(),
        };
        bits |= (holds as u16) << i;
    }
    bits
}

pub fn holds(bits: u16, p: PrincipleId) -> bool {
    bits >> node(p) & 1 == 1
}

pub fn compact(s: &FiniteSpace, reading: Reading) -> bool {
    compact_in(s, reading).is_verified()
}

#[cfg(test)]
mod tests {
    use super::*;
    use amst_core::logstr::{syntactic, ExplicitLogicalStructure};
    use amst_core::principles::profile;
    use amst_core::Amst;

    #[test]
    fn bits_agree_with_profile_and_logstr() {
        for idx in (0..65536u64).step_by(97) {
            let s = space_at(2, 3, idx);
            let bits = node_bits(&s);
            let p = profile(&Amst::from_index(2, 3, idx).unwrap(), None).unwrap();
            for q in PrincipleId::SEMANTIC {
                assert_eq!(holds(bits, q), p.holds(q), "{idx} {q}");
            }
            let induced = ExplicitLogicalStructure::induced(s.view()).unwrap();
            for q in PrincipleId::SYNTACTIC {
                assert_eq!(holds(bits, q), syntactic(&induced, q.form()).is_verified(), "{idx} {q}");
            }
        }
    }
}
