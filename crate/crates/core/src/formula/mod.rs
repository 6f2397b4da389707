//! Formulas of the ordered-group language enriched by congruences, `psi`
//! and `R_φ`: parsing, printing, bounded evaluation and rewriting.

pub mod ast;
pub mod audit;
pub mod eval;
pub mod parse;
pub mod prefix;
pub mod print;
pub mod rphi;
pub mod translate;

pub use ast::{Atom, BoundGroup, Congruence, Formula, RPhiSpec, Term};
pub use audit::{closure_audit, AuditVerdict};
pub use eval::{eval_atom, evaluate, evaluate_with, search_domain, Env, EvalOutcome, Verdict};
pub use parse::{parse_formula, parse_term};
pub use prefix::{classify, Prefix, Quant};
pub use print::print_formula;
pub use rphi::{decide as decide_rphi, neg_rphi_localize, neg_rphi_normalize};
pub use translate::{
    eval_ring_formula, eval_val_formula, translate_to_ring, RingAtom, RingFormula, RingTerm,
    SeriesTerm, ValAtom, ValFormula,
};
