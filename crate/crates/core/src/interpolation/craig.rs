use crate::cover::sigma_encoding;
use crate::error::{Error, Result};
use crate::formula::{Formula, Signature};
use crate::kripke::{find_countermodel, Logic};
use crate::prop::prop_craig_interpolant;
use crate::translation::{rt_frame_with, rt_logic_with, tr_frame, tr_logic};

use super::cip::{cip_witness, reduce_logic};

/// Validates the implication and the interpolation property, returning
/// the reduced logic and the shared signature.
fn prepare(l: &Logic, f: &Formula, g: &Formula) -> Result<(Logic, Signature)> {
    if let Some(a) = f.signature().iter().chain(&g.signature()).find(|a| !a.is_base()) {
        return Err(Error::UnexpectedAtom(a.to_string()));
    }
    if let Some(m) = find_countermodel(l, &f.implies(g))? {
        return Err(Error::NotInLogic {
            countermodel: Box::new(m),
        });
    }
    if cip_witness(l)?.is_some() {
        return Err(Error::NoCip(l.name().to_string()));
    }
    let shared = f.signature().intersection(&g.signature()).cloned().collect();
    Ok((reduce_logic(l)?, shared))
}

/// Craig interpolant for `f → g` in `l`, one frame at a time: each frame's
/// translated implication is interpolated propositionally, translated back,
/// and the results are joined.
pub fn modal_craig_interpolant(l: &Logic, f: &Formula, g: &Formula) -> Result<Formula> {
    let (l, shared) = prepare(l, f, g)?;
    let enc = sigma_encoding(&l, &shared)?;
    let mut parts = Vec::new();
    for (fi, fr) in l.frames().iter().enumerate() {
        let a = tr_frame(fr, fr.root_id(), f)?;
        let b = tr_frame(fr, fr.root_id(), g)?;
        let xi = prop_craig_interpolant(&a, &b)?;
        parts.push(rt_frame_with(&enc, &l, fi, &xi)?);
    }
    Ok(Formula::disj(parts))
}

/// Craig interpolant through a single propositional call on the
/// logic-level translations.
pub fn modal_craig_interpolant_single(l: &Logic, f: &Formula, g: &Formula) -> Result<Formula> {
    let (l, shared) = prepare(l, f, g)?;
    let enc = sigma_encoding(&l, &shared)?;
    let xi = prop_craig_interpolant(&tr_logic(&l, f)?, &tr_logic(&l, g)?)?;
    rt_logic_with(&enc, &l, &xi)
}
