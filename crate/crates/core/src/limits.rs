/// Order caps for the exhaustive procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest group that may be constructed or compared for isomorphism.
    pub group_order: usize,
    /// Normal-subgroup enumeration, spectra and axiom verification.
    pub enumeration: usize,
    /// Enumeration of all subgroups stable under the adjoint action.
    pub stable_enumeration: usize,
    /// Brute-force direct factorization oracle.
    pub oracle: usize,
    /// Ideal enumeration for rings of the form Z/m.
    pub modular_ring: usize,
    /// Ideal enumeration for rings given by explicit tables.
    pub table_ring: usize,
}

pub const ENV_MAX_ORDER: &str = "SPECDEC_MAX_ORDER";

impl Default for Limits {
    fn default() -> Self {
        Limits {
            group_order: 512,
            enumeration: 128,
            stable_enumeration: 32,
            oracle: 64,
            modular_ring: 64,
            table_ring: 24,
        }
    }
}

impl Limits {
    /// Defaults, with the enumeration cap taken from `SPECDEC_MAX_ORDER` when set.
    pub fn from_env() -> Self {
        let mut limits = Limits::default();
        if let Some(cap) = std::env::var(ENV_MAX_ORDER)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
        {
            limits.enumeration = cap;
        }
        limits
    }

    pub fn with_enumeration(mut self, cap: usize) -> Self {
        self.enumeration = cap;
        self
    }

    pub(crate) fn check(order: usize, cap: usize) -> crate::Result<()> {
        if order > cap {
            Err(crate::Error::OrderCapExceeded { order, cap })
        } else {
            Ok(())
        }
    }
}
