//! Entropy expressions, axiom instances and certificate checking.

mod axiom;
mod certificate;
mod chains;
mod expr;
mod shannon;

pub use axiom::{expand_axiom, Axiom, AxiomError, Direction, Justification};
pub use certificate::{
    check_certificate, expand_step, parse_certificate, serialize_certificate, Certificate, CertificateError, Step,
    Target, Verdict,
};
pub use chains::{gen_certificate_bipartite, gen_certificate_hu, gen_certificate_n1, ChainError};
pub use expr::{format_var_set, parse_var_set, EntropyExpr, InfoVar, VarSet};
pub use shannon::{verify_shannon_type, verify_shannon_type_flipped, ShannonError};
