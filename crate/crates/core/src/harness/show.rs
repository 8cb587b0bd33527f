use std::fmt::Write as _;

use super::checks::{theta_hex_polynomial, theta_z_polynomial};
use crate::error::{Error, Result};
use crate::fppoly::{factor_pattern, reduce_poly, FpPoly};
use crate::hyperpoly::{truncated_poly, TruncFamily};
use crate::modforms::{basis_coordinates, constructor, weight_indices};
use crate::qseries::{theta_h, theta_z};

/// Identifiers accepted by [`cmd_show`].
pub const EXAMPLE_IDS: [&str; 3] = ["k52", "p107", "w0-4-mod103"];

fn paren(f: &FpPoly) -> String {
    format!("({})", f.display_in("j"))
}

fn series_line(out: &mut String, coeffs: &[crate::exact_arith::Rat], upto: usize) {
    for (e, c) in coeffs.iter().take(upto + 1).enumerate() {
        let _ = writeln!(out, "  q^{e}: {c}");
    }
}

/// `C_52 theta_Z` and its polynomial modulo 103.
fn k52() -> Result<String> {
    let (p, k) = (103u64, 52i64);
    let w = weight_indices(k)?;
    let f = theta_z(w.dim() + 6);
    let coords = basis_coordinates(&f, k)?;
    let c = constructor(&f, k, 7)?;
    let (_, poly) = theta_z_polynomial(p)?;
    let red = reduce_poly(&poly, p)?;
    let mut out = String::new();
    let _ = writeln!(out, "k = {k}: n = {}, a = {}, b = {}", w.n, w.a, w.b);
    let coords: Vec<String> = coords.coords.iter().map(|c| c.to_string()).collect();
    let _ = writeln!(out, "basis coordinates: ({})", coords.join(", "));
    let _ = writeln!(out, "C_{k} theta_Z =");
    series_line(&mut out, c.coeffs(), 6);
    let _ = writeln!(out, "P(j) = {}", poly);
    let _ = writeln!(out, "P(j) mod {p} = {}", red.display_in("j"));
    let roots: Vec<String> = red.roots_brute().iter().map(|r| r.to_string()).collect();
    let _ = writeln!(out, "roots mod {p}: {{{}}}", roots.join(", "));
    Ok(out)
}

/// `C_108 theta_H`, its polynomial and the factorization modulo 107.
fn p107() -> Result<String> {
    let (p, k) = (107u64, 108i64);
    let w = weight_indices(k)?;
    let c = constructor(&theta_h(w.dim() + 10), k, 11)?;
    let (_, poly) = theta_hex_polynomial(p)?;
    let red = reduce_poly(&poly, p)?;
    let mut out = String::new();
    let _ = writeln!(out, "k = {k}: n = {}, a = {}, b = {}", w.n, w.a, w.b);
    let _ = writeln!(out, "C_{k} theta_H =");
    series_line(&mut out, c.coeffs(), 10);
    let _ = writeln!(out, "P(j) = {}", poly);
    let _ = writeln!(out, "P(j) mod {p} = {}", red.display_in("j"));
    let factors = red
        .factors_over_fp2()?
        .ok_or(Error::NotSquarefree)?
        .iter()
        .map(paren)
        .collect::<Vec<_>>()
        .join("");
    let _ = writeln!(out, "factorization mod {p}: {factors}");
    let _ = writeln!(out, "pattern: {}", factor_pattern(&red)?);
    Ok(out)
}

/// The truncated family `W0` at `n = 4`, exactly and modulo 103.
fn w0_4() -> Result<String> {
    let p = 103u64;
    let w = truncated_poly(TruncFamily::W0, 4);
    let red = reduce_poly(&w, p)?;
    let (_, poly) = theta_z_polynomial(p)?;
    let same = reduce_poly(&poly, p)? == red;
    let mut out = String::new();
    let _ = writeln!(out, "W0_4(j) = {w}");
    let _ = writeln!(out, "W0_4(j) mod {p} = {}", red.display_in("j"));
    let _ = writeln!(out, "equals P[C_52 theta_Z] mod {p}: {same}");
    Ok(out)
}

/// Human-readable worked example.
pub fn cmd_show(id: &str) -> Result<String> {
    match id {
        "k52" => k52(),
        "p107" => p107(),
        "w0-4-mod103" => w0_4(),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_render() {
        let s = cmd_show("k52").unwrap();
        assert!(s.contains("(27800506386, -776608440, 2887488, -3118, 1)"), "{s}");
        assert!(s.contains("q^5: 95037348924"));
        assert!(s.contains("roots mod 103: {58, 89, 93, 97}"));
        let s = cmd_show("w0-4-mod103").unwrap();
        assert!(s.contains("j^4 - 28j^3 - 17112j^2 - 16085280j - 18044467104"), "{s}");
        assert!(s.contains("true"));
        assert!(matches!(cmd_show("nope"), Err(Error::UnknownExample(_))));
    }
}
