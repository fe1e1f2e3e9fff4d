//! Streams a proof through a [`Configuration`] and reports the verdict.

use std::io::BufRead;

use crate::derivation::RuleError;
use crate::formats::{parse_opb, Command, Located, OutputKind, ParseError, ParsedInstance, ProofParser, RawImage, RawWitness};
use crate::pb::{Image, Lit, Substitution, VarTable};
use crate::safety::{self, SafetyViolation};
use crate::state::{Claim, Configuration, Mode, Stats, TraceEvent};

/// Verification settings.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub mode: Mode,
    /// Record one line per accepted command with the ids it touched.
    pub trace: bool,
    /// Run the exhaustive safety check after every command when the
    /// vocabulary has at most this many variables.
    pub safety_oracle: Option<usize>,
}

/// The outcome of an accepted proof.
#[derive(Clone, Debug)]
pub struct Report {
    pub claim: Claim,
    pub stats: Stats,
    pub trace: Vec<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum VerifyError {
    #[error("instance: {0}")]
    Instance(ParseError),
    #[error("proof: {0}")]
    Proof(ParseError),
    #[error("line {line}: {message}")]
    Rejected { line: usize, message: String },
    #[error("line {line}: safety oracle: {violation}")]
    Unsafe { line: usize, violation: SafetyViolation },
    #[error("safety oracle supports at most {limit} variables, the session has {vars}")]
    OracleRefused { vars: usize, limit: usize },
}

impl VerifyError {
    /// Rejections exit with 1, malformed input with 2.
    pub fn exit_code(&self) -> i32 {
        match self {
            VerifyError::Rejected { .. } | VerifyError::Unsafe { .. } => 1,
            VerifyError::Instance(_) | VerifyError::Proof(_) | VerifyError::OracleRefused { .. } => 2,
        }
    }

    /// The proof line a rejection points at.
    pub fn line(&self) -> Option<usize> {
        match self {
            VerifyError::Rejected { line, .. } | VerifyError::Unsafe { line, .. } => Some(*line),
            VerifyError::Proof(e) => Some(e.line),
            _ => None,
        }
    }
}

/// Hard limit for the oracle regardless of what the caller asks for.
pub const ORACLE_CEILING: usize = 20;

fn reject(line: usize) -> impl Fn(RuleError) -> VerifyError {
    move |e| VerifyError::Rejected { line: e.line.unwrap_or(line), message: e.message }
}

fn resolve_witness(raw: &RawWitness, vars: &VarTable) -> Result<Substitution, String> {
    let lookup = |name: &str| vars.lookup(name).ok_or_else(|| format!("witness mentions unknown variable {name}"));
    let mut w = Substitution::identity();
    for (name, image) in raw {
        let var = lookup(name)?;
        if w.get(var).is_some() {
            return Err(format!("witness maps {name} twice"));
        }
        let image = match image {
            RawImage::Const(b) => Image::Const(*b),
            RawImage::Lit(text) => match text.strip_prefix('~') {
                Some(rest) => Image::Lit(Lit::neg(lookup(rest)?)),
                None => Image::Lit(Lit::pos(lookup(text)?)),
            },
        };
        w.insert(var, image);
    }
    Ok(w)
}

struct Session<'a> {
    cfg: Configuration,
    opts: &'a Options,
    declared: usize,
    loaded: bool,
    concluded: Option<Claim>,
    trace: Vec<String>,
}

impl Session<'_> {
    fn apply(&mut self, line: usize, cmd: Command) -> Result<(), VerifyError> {
        let err = reject(line);
        let witness = |raw: &RawWitness, vars: &VarTable| {
            resolve_witness(raw, vars).map_err(|message| VerifyError::Rejected { line, message })
        };
        let fail = |message: String| VerifyError::Rejected { line, message };
        if let Command::LoadFormula(m) = cmd {
            if self.loaded {
                return Err(fail("the formula is already loaded".into()));
            }
            if m != self.declared {
                return Err(fail(format!("f {m} does not match the {} constraints of the instance", self.declared)));
            }
            self.loaded = true;
            return Ok(());
        }
        if !self.loaded {
            return Err(fail(format!("`{}` before `f`", cmd.name())));
        }
        if self.concluded.is_some() && cmd != Command::End {
            return Err(fail(format!("`{}` after the conclusion", cmd.name())));
        }
        match cmd {
            Command::LoadFormula(_) => unreachable!(),
            Command::Pol(tokens) => self.cfg.pol(&tokens).map(drop).map_err(err)?,
            Command::Rup(c) => self.cfg.rup(c).map(drop).map_err(err)?,
            Command::Red { constraint, witness: raw, subproofs } => {
                let w = witness(&raw, &self.cfg.vars)?;
                self.cfg.redundance(constraint, &w, subproofs.as_deref()).map(drop).map_err(err)?
            }
            Command::Dom { constraint, witness: raw, subproofs } => {
                let w = witness(&raw, &self.cfg.vars)?;
                self.cfg.dominance(constraint, &w, subproofs.as_deref()).map(drop).map_err(err)?
            }
            Command::DelDerived(ids) => self.cfg.delete_derived(&ids).map_err(err)?,
            Command::DelCore(ids) => self.cfg.delete_core_unchecked(&ids).map_err(err)?,
            Command::DelCoreChecked { id, witness: raw, subproofs } => {
                let w = witness(&raw, &self.cfg.vars)?;
                self.cfg.delete_core_checked(id, &w, subproofs.as_deref()).map_err(err)?
            }
            Command::CoreTransfer(ids) => self.cfg.transfer(&ids).map_err(err)?,
            Command::Sol(lits) => self.cfg.sol(&lits).map(drop).map_err(err)?,
            Command::PreOrder { order, proof, aux, fresh } => {
                if !aux.is_empty() {
                    return Err(fail("auxiliary order variables are not supported".into()));
                }
                if !proof.transitivity.is_empty() && fresh != order.arity {
                    return Err(fail(format!(
                        "transitivity declares {fresh} fresh variables for an order of arity {}",
                        order.arity
                    )));
                }
                self.cfg.define_preorder(order, &proof).map_err(err)?
            }
            Command::LoadOrder(name, vars) => self.cfg.load_order(name.as_deref(), vars).map_err(err)?,
            Command::Output(OutputKind::None) => {}
            Command::Output(OutputKind::Equisatisfiable(ids)) => self.cfg.check_core_ids(&ids).map_err(err)?,
            Command::Conclusion(claim) => {
                self.cfg.conclude(&claim).map_err(err)?;
                self.concluded = Some(claim);
            }
            Command::End => {
                if self.concluded.is_none() {
                    return Err(fail("the proof ends without a conclusion".into()));
                }
            }
        }
        Ok(())
    }

    fn record(&mut self, line: usize, name: &str) {
        let events = self.cfg.take_trace();
        let mut text = format!("{line} {name}");
        for ev in events {
            match ev {
                TraceEvent::Added(id, role, _) => text.push_str(&format!(" +{id}:{}", role.label())),
                TraceEvent::Moved(id, role) => text.push_str(&format!(" >{id}:{}", role.label())),
                TraceEvent::Removed(id) => text.push_str(&format!(" -{id}")),
            }
        }
        self.trace.push(text);
    }

    fn oracle(&self, line: usize) -> Result<(), VerifyError> {
        let Some(limit) = self.opts.safety_oracle else { return Ok(()) };
        let vars = self.cfg.vars.len();
        if vars > limit.min(ORACLE_CEILING) {
            return Err(VerifyError::OracleRefused { vars, limit: limit.min(ORACLE_CEILING) });
        }
        safety::check(&self.cfg).map_err(|violation| VerifyError::Unsafe { line, violation })
    }
}

/// Verifies a proof against an already parsed instance.
pub fn verify(instance: ParsedInstance, proof: impl BufRead, opts: &Options) -> Result<Report, VerifyError> {
    let declared = instance.constraint_lines;
    let mut cfg = Configuration::new(instance.vars, instance.constraints, instance.objective, opts.mode);
    if opts.trace {
        cfg.enable_trace();
    }
    let mut session = Session { cfg, opts, declared, loaded: false, concluded: None, trace: Vec::new() };
    session.oracle(0)?;
    let mut parser = ProofParser::new(proof);
    loop {
        let next = parser.next_command(&mut session.cfg.vars).map_err(VerifyError::Proof)?;
        let Some(Located { line, item }) = next else { break };
        let name = item.name();
        let is_formula = matches!(item, Command::LoadFormula(_));
        session.apply(line, item)?;
        if opts.trace {
            if is_formula {
                let n = session.cfg.core().count();
                session.trace.push(format!("{line} f +1..{n}:core"));
            } else {
                session.record(line, name);
            }
        }
        session.oracle(line)?;
    }
    let claim = session.concluded.unwrap_or(Claim::None);
    Ok(Report { claim, stats: session.cfg.stats.clone(), trace: session.trace })
}

/// Parses both texts and verifies.
pub fn verify_str(opb: &str, proof: &str, opts: &Options) -> Result<Report, VerifyError> {
    let instance = parse_opb(opb).map_err(VerifyError::Instance)?;
    verify(instance, proof.as_bytes(), opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    const OPB: &str = "* #variable= 2 #constraint= 2\n1 x 1 y >= 1 ;\n1 ~x 1 y >= 1 ;\n";

    fn run(proof: &str, mode: Mode) -> Result<Report, VerifyError> {
        let opts = Options { mode, trace: true, safety_oracle: Some(8) };
        verify_str(OPB, proof, &opts)
    }

    #[test]
    fn accepts_a_small_refutation_chain() {
        let proof = "pseudo-Boolean proof version 2.0\nf 2\npol 1 2 + s\nrup 1 y >= 1 ;\nconclusion NONE\nend pseudo-Boolean proof\n";
        let report = run(proof, Mode::Checked).unwrap();
        assert_eq!(report.claim, Claim::None);
        assert_eq!(report.trace, vec!["2 f +1..2:core", "3 pol +3:derived", "4 rup +4:derived", "5 conclusion", "6 end"]);
        assert_eq!(report.stats.created, 2);
    }

    #[test]
    fn rejections_point_at_lines() {
        let wrong_f = run("pseudo-Boolean proof version 2.0\nf 3\n", Mode::Checked).unwrap_err();
        assert_eq!(wrong_f.line(), Some(2));
        let before_f = run("pseudo-Boolean proof version 2.0\nrup 1 y >= 1 ;\n", Mode::Checked).unwrap_err();
        assert_eq!((before_f.line(), before_f.exit_code()), (Some(2), 1));
        let bad_rup = "pseudo-Boolean proof version 2.0\nf 2\n* comment\nrup 1 x >= 1 ;\nconclusion NONE\nend pseudo-Boolean proof\n";
        assert_eq!(run(bad_rup, Mode::Checked).unwrap_err().line(), Some(4));
        let unknown = "pseudo-Boolean proof version 2.0\nf 2\nred 1 y >= 1 ; y -> 1 q -> 0\nconclusion NONE\nend pseudo-Boolean proof\n";
        let e = run(unknown, Mode::Checked).unwrap_err();
        assert!(e.to_string().contains("unknown variable q"), "{e}");
        let no_conclusion = "pseudo-Boolean proof version 2.0\nf 2\nend pseudo-Boolean proof\n";
        assert_eq!(run(no_conclusion, Mode::Checked).unwrap_err().line(), Some(3));
    }

    #[test]
    fn oracle_refuses_large_vocabularies() {
        let opts = Options { safety_oracle: Some(1), ..Options::default() };
        let e = verify_str(OPB, "pseudo-Boolean proof version 2.0\n", &opts).unwrap_err();
        assert!(matches!(e, VerifyError::OracleRefused { vars: 2, limit: 1 }));
        assert_eq!(e.exit_code(), 2);
    }
}
