//! Small explicit logical structures `(L, ⊢)`, their explosion principles,
//! and the canonical amst built from one.

use crate::amst::Amst;
use crate::error::AmstError;
use crate::principles::{run_form, Form, PrincipleId, WitnessMap};
use crate::space::FiniteDomain;
use crate::verdict::BoundedVerdict;
use crate::view::FiniteView;

/// Largest carrier for an explicit consequence table.
pub const MAX_LOGSTR_SENTENCES: u32 = 10;

/// `⊢` as a bit table; bit `mask * n + a` is `mask ⊢ a`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExplicitLogicalStructure {
    n: u32,
    bits: Vec<u64>,
}

impl ExplicitLogicalStructure {
    pub fn from_fn(n: u32, f: impl Fn(u64, u32) -> bool) -> Result<Self, AmstError> {
        if n == 0 || n > MAX_LOGSTR_SENTENCES {
            return Err(AmstError::TooLarge(format!("logical structure over {n} sentences")));
        }
        let total = (n as usize) << n;
        let mut bits = vec![0u64; total.div_ceil(64)];
        for mask in 0..1u64 << n {
            for a in 0..n {
                if f(mask, a) {
                    let p = (mask as usize) * n as usize + a as usize;
                    bits[p / 64] |= 1 << (p % 64);
                }
            }
        }
        Ok(ExplicitLogicalStructure { n, bits })
    }

    /// The structure whose table is the binary expansion of `index`.
    pub fn from_index(n: u32, index: u64) -> Result<Self, AmstError> {
        let total = (n as u64) << n;
        if total > 64 {
            return Err(AmstError::TooLarge(format!("{total} table bits")));
        }
        Self::from_fn(n, |mask, a| index >> (mask * n as u64 + a as u64) & 1 == 1)
    }

    /// Number of table bits, so `2^table_bits` structures exist.
    pub fn table_bits(n: u32) -> u32 {
        n << n
    }

    /// `⊢_M` for the amst behind a finite view.
    pub fn induced(view: &FiniteView) -> Result<Self, AmstError> {
        Self::from_fn(view.sentences(), |mask, a| view.entails(mask, a))
    }

    pub fn sentences(&self) -> u32 {
        self.n
    }

    pub fn entails(&self, mask: u64, a: u32) -> bool {
        let p = mask as usize * self.n as usize + a as usize;
        self.bits[p / 64] >> (p % 64) & 1 == 1
    }

    /// `Γ ⊢ γ` for every γ.
    pub fn explosive(&self, mask: u64) -> bool {
        (0..self.n).all(|a| self.entails(mask, a))
    }

    /// Checks gECQ, sECQ, spECQ or pfECQ with explosiveness in place of
    /// unsatisfiability.
    pub fn principle(&self, p: PrincipleId, rec: Option<&mut WitnessMap>) -> BoundedVerdict {
        assert!(p.mode().is_none(), "{p} is not a syntactic principle");
        run_form(&FiniteDomain::new(self.n), p.form(), |g| self.explosive(*g), rec)
    }
}

pub fn syntactic_gecq(s: &ExplicitLogicalStructure) -> BoundedVerdict {
    s.principle(PrincipleId::Gecq, None)
}

pub fn syntactic_secq(s: &ExplicitLogicalStructure) -> BoundedVerdict {
    s.principle(PrincipleId::Secq, None)
}

pub fn syntactic_specq(s: &ExplicitLogicalStructure) -> BoundedVerdict {
    s.principle(PrincipleId::Specq, None)
}

pub fn syntactic_pfecq(s: &ExplicitLogicalStructure) -> BoundedVerdict {
    s.principle(PrincipleId::Pfecq, None)
}

pub fn syntactic(s: &ExplicitLogicalStructure, form: Form) -> BoundedVerdict {
    s.principle(PrincipleId::syntactic(form), None)
}

/// Models are the sentences themselves and `α ⊨ Γ` iff `Γ ⊬ α`.
pub fn canonical_amst(s: &ExplicitLogicalStructure) -> Result<Amst, AmstError> {
    Amst::explicit_from_fn(s.n, s.n, |m, mask| !s.entails(mask, m))
}
