//! Polynomial families that decide coalescing cospectrality.
//!
//! Gluing a rooted graph `G` onto every vertex of `B ⊆ V(H)` gives
//!
//! ```text
//! p(x) = sum_k  p_{G,r}^(|B|-k) * (p_G - x p_{G,r})^k * f_{H,B,k}(x)
//! ```
//!
//! where `f_{H,B,k}` sums the deleted-submatrix polynomials `p_{H,S}` over the
//! `k`-subsets `S` of `B`. Two pairs stay cospectral for every rooted `G`
//! exactly when their families agree for every `k`.

mod family;
mod formula;
mod twoset;

pub use family::{
    coalescing_cospectral, family, family_cached, DeletionCache, FamilyTable, MASK_LIMIT,
};
pub use formula::{coalesced_char_poly_formula, rooted_factors, schwenk_single, star_factors};
pub use twoset::{
    double_coalesce, two_set_family, two_set_family_cached, twostep_check, DoubleProbe,
    ProbeConfig, TwoSetTable, TwoStepReport,
};
