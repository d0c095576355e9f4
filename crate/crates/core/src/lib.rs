//! Counting elliptic curves over `F_q(t)` by discriminant height in
//! characteristic 2 and 3.
//!
//! * [`motivic_ring`]: classes in `Z[L]` and their point counts.
//! * [`height_moduli_classes`]: classes of height moduli spaces, zeta series.
//! * [`counting_formulas`]: exact closed forms for bounded-height counts.
//! * [`galois_field`], [`p1_sections`]: small fields and binary forms.
//! * [`weierstrass_oracle`]: Weierstrass models, coordinate changes, censuses.
//! * [`verify`]: the cross-layer grid behind `ellcount verify`.

pub mod counting_formulas;
pub mod galois_field;
pub mod height_moduli_classes;
pub mod motivic_ring;
pub mod p1_sections;
pub mod verify;
pub mod weierstrass_oracle;
