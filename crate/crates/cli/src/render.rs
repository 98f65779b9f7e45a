//! Text and JSON rendering of computed payloads.

use std::fmt::Write as _;

use feynman_gw_core::{Coeff, DegreeSeries, Mode, QuasimodularFit};

use crate::Format;

pub fn to_json_line<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("payload types serialize");
    s.push('\n');
    s
}

fn exponent(mode: Mode, d: u64, raw: bool) -> u64 {
    if raw {
        d
    } else {
        mode.rendered_exponent(d)
    }
}

/// One `q^e: c` line per collapsed degree, or one `q1^e1 q3^e3: c` line per
/// branch type. Hurwitz exponents are doubled unless `raw`.
pub fn series_text<C: Coeff>(s: &DegreeSeries<C>, collapsed: bool, raw: bool) -> String {
    let mut out = String::new();
    if collapsed {
        for (&d, c) in &s.collapsed {
            let _ = writeln!(out, "q^{}: {c}", exponent(s.mode, d, raw));
        }
    } else {
        for (a, c) in &s.multivariate {
            let monomial: Vec<String> = a
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| format!("q{}^{}", k + 1, exponent(s.mode, e as u64, raw)))
                .collect();
            let _ = writeln!(out, "{}: {c}", monomial.join(" "));
        }
    }
    out
}

pub fn series<C: Coeff>(s: &DegreeSeries<C>, format: Format, collapsed: bool, raw: bool) -> String {
    match format {
        Format::Json => to_json_line(&s.to_json()),
        Format::Text => series_text(s, collapsed, raw),
    }
}

fn monomial_name(&(a, b, c): &(u32, u32, u32)) -> String {
    let mut parts = Vec::new();
    for (name, e) in [("E2", a), ("E4", b), ("E6", c)] {
        match e {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

pub fn fit(f: &QuasimodularFit, format: Format) -> String {
    match format {
        Format::Json => to_json_line(&f.to_json()),
        Format::Text => {
            let mut out = format!(
                "weight: {}\nresidual_ok: {}\nverified_through: {}\n",
                f.weight, f.residual_ok, f.verified_through
            );
            for (m, l) in f.basis.iter().zip(&f.coefficients) {
                let _ = writeln!(out, "{}: {l}", monomial_name(m));
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use feynman_gw_core::{collapse_to_univariate, Integer};

    #[test]
    fn text_series() {
        let mut s = DegreeSeries::new(Mode::Hurwitz);
        s.insert(vec![0, 0, 2], Integer::from(4));
        s.insert(vec![1, 1, 0], Integer::from(3));
        let s = collapse_to_univariate(&s);
        assert_eq!(series_text(&s, false, false), "q3^4: 4\nq1^2 q2^2: 3\n");
        assert_eq!(series_text(&s, false, true), "q3^2: 4\nq1^1 q2^1: 3\n");
        assert_eq!(series_text(&s, true, false), "q^4: 7\n");
        assert_eq!(series_text(&s, true, true), "q^2: 7\n");
    }

    #[test]
    fn monomials() {
        assert_eq!(monomial_name(&(0, 0, 1)), "E6");
        assert_eq!(monomial_name(&(1, 1, 0)), "E2*E4");
        assert_eq!(monomial_name(&(3, 0, 0)), "E2^3");
    }
}
