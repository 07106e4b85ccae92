//! Vanishing order of a polynomial along a diagonal `x_v = x_w (v, w ∈ I)`.

use std::collections::HashMap;

use crate::{Coeff, PolyError, Polynomial, Result};

fn check_subset<C: Coeff>(p: &Polynomial<C>, vars: &[usize]) -> Result<()> {
    if p.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if vars.len() < 2 {
        return Err(PolyError::BadSubset("need at least two variables".into()));
    }
    let mut seen = vec![false; p.context().len()];
    for &v in vars {
        if v >= seen.len() || seen[v] {
            return Err(PolyError::BadSubset(format!("bad or repeated index {v}")));
        }
        seen[v] = true;
    }
    Ok(())
}

fn binomial(n: u16, k: u16) -> u128 {
    let k = k.min(n - k) as u128;
    let n = n as u128;
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

/// Calls `f` with every vector `parts` where `parts[i] <= caps[i]` and the
/// parts sum to `total`.
fn compositions(caps: &[u16], total: u32, parts: &mut Vec<u16>, f: &mut impl FnMut(&[u16])) {
    let i = parts.len();
    if i == caps.len() {
        if total == 0 {
            f(parts);
        }
        return;
    }
    let rest: u32 = caps[i + 1..].iter().map(|&c| c as u32).sum();
    let lo = total.saturating_sub(rest);
    let hi = total.min(caps[i] as u32);
    for k in lo..=hi {
        parts.push(k as u16);
        compositions(caps, total - k, parts, f);
        parts.pop();
    }
}

/// Multiplicity of `p` along `Δ_I`: substitute `x_v → y + u_v` for `v ∈ I`
/// and return the least total `u`-degree that survives cancellation.
///
/// Works for any polynomial; the expansion is generated one `u`-degree at a
/// time so only the lowest surviving layer is ever built.
pub fn diagonal_multiplicity<C: Coeff>(p: &Polynomial<C>, vars: &[usize]) -> Result<u32> {
    check_subset(p, vars)?;
    let max_degree = p.total_degree().unwrap_or(0);
    for k in 0..=max_degree {
        // Key: exponents of the untouched variables, then y, then the u_v.
        let mut layer: HashMap<Vec<u16>, C> = HashMap::new();
        for (m, c) in p.terms() {
            let exps = m.exponents();
            let caps: Vec<u16> = vars.iter().map(|&v| exps[v]).collect();
            let total: u32 = caps.iter().map(|&e| e as u32).sum();
            if total < k {
                continue;
            }
            let mut base = exps.to_vec();
            for &v in vars {
                base[v] = 0;
            }
            base.push((total - k) as u16);
            compositions(
                &caps,
                k,
                &mut Vec::with_capacity(caps.len()),
                &mut |parts| {
                    let mut weight = 1u128;
                    for (&cap, &part) in caps.iter().zip(parts) {
                        weight *= binomial(cap, part);
                    }
                    let mut key = base.clone();
                    key.extend_from_slice(parts);
                    let w =
                        C::from_u128(weight).expect("binomial weight fits the coefficient ring");
                    let entry = layer.entry(key).or_insert_with(C::zero);
                    let old = std::mem::replace(entry, C::zero());
                    *entry = old + c.clone() * w;
                },
            );
        }
        if layer.values().any(|c| !c.is_zero()) {
            return Ok(k);
        }
    }
    unreachable!("a nonzero polynomial has a nonzero top layer")
}

/// Fast multiplicity for translation-invariant polynomials
/// (`p(x + c·1) = p(x)`, see [`Polynomial::is_translation_invariant`]).
///
/// Translating by `-x_q` for a pivot `q ∈ I` turns `x_v - x_q` into plain
/// coordinates, so the order is the least degree in `I∖{q}` among the terms
/// of `p` free of `x_q`. Invariance is the caller's responsibility; it is
/// too costly to re-check per subset on large inputs.
pub fn diagonal_multiplicity_shifted<C: Coeff>(p: &Polynomial<C>, vars: &[usize]) -> Result<u32> {
    check_subset(p, vars)?;
    let pivot = vars[0];
    p.terms()
        .iter()
        .filter(|(m, _)| m.exponents()[pivot] == 0)
        .map(|(m, _)| {
            vars[1..]
                .iter()
                .map(|&v| m.exponents()[v] as u32)
                .sum::<u32>()
        })
        .min()
        .ok_or(PolyError::BadSubset(
            "polynomial is not translation invariant".into(),
        ))
}
