//! Product-set dynamics in groups: powers, varying products, Folner and
//! regularity ratios, containment of finite sets in powers, shell inclusions.

pub mod claims;
pub mod containment;
pub mod product;

pub use claims::{ClaimCheck, ClaimContext, ShellClaim};
pub use containment::generating_containment;
pub use product::{
    certify_factors, folner_ratios, product_powers, regularity_constant, set_product,
    varying_products, ProductOptions, ProductSequence, SEMIGROUP_HORIZON,
};
