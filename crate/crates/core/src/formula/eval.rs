//! Three-valued evaluation over finite search fragments.
//!
//! Atoms are decided exactly. `∃` is `True` only on an explicit witness and
//! `∀` is `False` only on an explicit counterexample; everything else that
//! depends on an exhausted search is `Unknown`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::ast::{Atom, Formula};
use super::rphi;
use crate::error::{Error, Result};
use crate::exec::Executor;
use crate::oag::{congruent, fragment, psi, Construction, FragmentConfig, GroupElement};

pub type Env = BTreeMap<String, GroupElement>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    True,
    False,
    Unknown(String),
}

impl Verdict {
    pub fn is_conclusive(&self) -> bool {
        !matches!(self, Verdict::Unknown(_))
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown(_) => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::True => f.write_str("True"),
            Verdict::False => f.write_str("False"),
            Verdict::Unknown(why) => write!(f, "Unknown ({why})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum K3 {
    T,
    F,
    U,
}

impl K3 {
    fn of(b: bool) -> K3 {
        if b {
            K3::T
        } else {
            K3::F
        }
    }

    fn not(self) -> K3 {
        match self {
            K3::T => K3::F,
            K3::F => K3::T,
            K3::U => K3::U,
        }
    }

    fn and(self, o: K3) -> K3 {
        match (self, o) {
            (K3::F, _) | (_, K3::F) => K3::F,
            (K3::T, K3::T) => K3::T,
            _ => K3::U,
        }
    }

    fn or(self, o: K3) -> K3 {
        self.not().and(o.not()).not()
    }
}

/// Verdict plus the witness or counterexample of an outermost quantifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvalOutcome {
    pub verdict: Verdict,
    pub witness: Option<(String, GroupElement)>,
    pub domain_size: usize,
}

struct Ctx<'a> {
    construction: Construction,
    domain: &'a [GroupElement],
}

pub fn evaluate(
    construction: Construction,
    f: &Formula,
    env: &Env,
    cfg: &FragmentConfig,
) -> Result<EvalOutcome> {
    evaluate_with(construction, f, env, cfg, Executor::default())
}

/// The search domain of a formula: the fragment generated by the
/// environment values and the formula's constants.
pub fn search_domain(
    construction: Construction,
    f: &Formula,
    env: &Env,
    cfg: &FragmentConfig,
) -> Result<Vec<GroupElement>> {
    let mut params: Vec<GroupElement> = Vec::new();
    for v in env.values().cloned().chain(f.constants()) {
        construction.check(v.construction())?;
        if !params.contains(&v) {
            params.push(v);
        }
    }
    fragment(construction, &params, cfg)
}

pub fn evaluate_with(
    construction: Construction,
    f: &Formula,
    env: &Env,
    cfg: &FragmentConfig,
    exec: Executor,
) -> Result<EvalOutcome> {
    if let Some(v) = f.free_vars().into_iter().find(|v| !env.contains_key(v)) {
        return Err(Error::UnboundVariable(v));
    }
    let domain = if f.has_quantifier() {
        search_domain(construction, f, env, cfg)?
    } else {
        for v in env.values().chain(&f.constants()) {
            construction.check(v.construction())?;
        }
        Vec::new()
    };
    let ctx = Ctx {
        construction,
        domain: &domain,
    };
    let unknown = || {
        Verdict::Unknown(format!(
            "search exhausted {} fragment elements (coefficient bound {}, cap {})",
            domain.len(),
            cfg.coeff_bound,
            cfg.size_cap
        ))
    };
    let outcome = |verdict, witness| EvalOutcome {
        verdict,
        witness,
        domain_size: domain.len(),
    };
    match f {
        Formula::Exists(v, body) | Formula::Forall(v, body) => {
            let want = if matches!(f, Formula::Exists(..)) { K3::T } else { K3::F };
            let hit = exec.find_first(&domain, |x| {
                let mut local = env.clone();
                local.insert(v.clone(), x.clone());
                match ctx.eval(body, &mut local) {
                    Ok(k) if k == want => Some(Ok(x.clone())),
                    Ok(_) => None,
                    Err(e) => Some(Err(e)),
                }
            });
            Ok(match hit.transpose()? {
                Some(x) => outcome(
                    if want == K3::T { Verdict::True } else { Verdict::False },
                    Some((v.clone(), x)),
                ),
                None => outcome(unknown(), None),
            })
        }
        _ => {
            let mut local = env.clone();
            Ok(match ctx.eval(f, &mut local)? {
                K3::T => outcome(Verdict::True, None),
                K3::F => outcome(Verdict::False, None),
                K3::U => outcome(unknown(), None),
            })
        }
    }
}

/// Exact truth of an atom under a complete environment.
pub fn eval_atom(construction: Construction, a: &Atom, env: &Env) -> Result<bool> {
    let val = |t: &super::ast::Term| t.eval(construction, env);
    match a {
        Atom::Lt(s, t) => Ok(val(s)?.try_cmp(&val(t)?)?.is_lt()),
        Atom::Eq(s, t) => Ok(val(s)? == val(t)?),
        Atom::Cong(n, s, t) => congruent(*n, &val(s)?, &val(t)?),
        Atom::Psi(n, s, t) => psi(*n, &val(s)?, &val(t)?),
        Atom::RPhi(spec) => rphi::decide(construction, spec, env),
    }
}

impl Ctx<'_> {
    fn eval(&self, f: &Formula, env: &mut Env) -> Result<K3> {
        Ok(match f {
            Formula::True => K3::T,
            Formula::False => K3::F,
            Formula::Atom(a) => K3::of(eval_atom(self.construction, a, env)?),
            Formula::Not(g) => self.eval(g, env)?.not(),
            Formula::And(a, b) => {
                let l = self.eval(a, env)?;
                if l == K3::F {
                    K3::F
                } else {
                    l.and(self.eval(b, env)?)
                }
            }
            Formula::Or(a, b) => {
                let l = self.eval(a, env)?;
                if l == K3::T {
                    K3::T
                } else {
                    l.or(self.eval(b, env)?)
                }
            }
            Formula::Implies(a, b) => {
                let l = self.eval(a, env)?.not();
                if l == K3::T {
                    K3::T
                } else {
                    l.or(self.eval(b, env)?)
                }
            }
            Formula::Exists(v, body) => self.quantify(v, body, env, K3::T)?,
            Formula::Forall(v, body) => self.quantify(v, body, env, K3::F)?,
        })
    }

    fn quantify(&self, v: &str, body: &Formula, env: &mut Env, decisive: K3) -> Result<K3> {
        let saved = env.remove(v);
        let mut result = K3::U;
        for x in self.domain {
            env.insert(v.to_string(), x.clone());
            if self.eval(body, env)? == decisive {
                result = decisive;
                break;
            }
        }
        match saved {
            Some(old) => env.insert(v.to_string(), old),
            None => env.remove(v),
        };
        Ok(result)
    }
}
