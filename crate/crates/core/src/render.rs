//! ASCII figure of a Galois orbit: the conjugate paths `η_{α_i}([0, ∞))`,
//! the points where they merge, and the retraction `τ(α)` on the rational tree.

use std::fmt::Write;

use crate::bt_tree::GaloisOrbitReport;
use crate::valued_field::AbsValue;

fn level(p: u64, r: AbsValue) -> String {
    format!("|.| = {}", r.display_with(p))
}

/// Draws the orbit bottom-up: leaves at radius 0, branch points at each
/// distinct conjugate distance, then `τ(α) = η₀(r′)`.
pub fn render_orbit(rep: &GaloisOrbitReport) -> String {
    let p = rep.p;
    let mut distinct: Vec<(AbsValue, usize)> = Vec::new();
    for d in &rep.conjugate_distances {
        match distinct.last_mut() {
            Some((v, m)) if v == d => *m += 1,
            _ => distinct.push((*d, 1)),
        }
    }
    let width = rep
        .conjugate_distances
        .iter()
        .chain([&rep.r_prime])
        .map(|r| level(p, *r).len())
        .max()
        .unwrap_or(0);
    let pad = |s: String| format!("{s:<width$}");
    let blank = " ".repeat(width);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "Galois orbit of alpha, root of {} over Q_{p} (e = {})",
        rep.defining_poly, rep.e
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "{}  *  eta(0; {})   tau(alpha), on the rational tree",
        pad(level(p, rep.r_prime)),
        rep.r_prime.display_with(p)
    );
    match &rep.fixed_segment {
        Some(seg) => {
            let _ = writeln!(out, "{blank}  #");
            let _ = writeln!(
                out,
                "{blank}  #  Galois-fixed, off the tree: eta(alpha; [{}, {}))",
                seg.from_exp.display_with(p),
                seg.to_exp.display_with(p)
            );
            let _ = writeln!(out, "{blank}  #");
        }
        None => {
            let _ = writeln!(
                out,
                "{blank}  |  paths meet on the tree: no fixed points outside"
            );
        }
    }
    let mut remaining = rep.e;
    for (k, (d, m)) in distinct.iter().enumerate() {
        let marker = if k == 0 { "o" } else { "+" };
        let note = if k == 0 {
            format!("meet of all {} conjugate paths", rep.e)
        } else {
            format!("{} conjugates branch off above", remaining)
        };
        if k > 0 {
            let _ = writeln!(out, "{blank}  |");
        }
        let _ = writeln!(
            out,
            "{}  {marker}  eta(alpha; {})   {note}",
            pad(level(p, *d)),
            d.display_with(p)
        );
        remaining -= m;
        if remaining == 0 {
            remaining = 1;
        }
    }
    let fan: String = (0..rep.e).map(|_| "/ ").collect();
    let leaves: Vec<String> = (1..=rep.e).map(|i| format!("alpha_{i}")).collect();
    let _ = writeln!(out, "{blank}  {}", fan.trim_end());
    let _ = writeln!(
        out,
        "{}  {}",
        pad(level(p, AbsValue::ZERO)),
        leaves.join(" ")
    );
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "r  = {}   r' = {}",
        rep.r.display_with(p),
        rep.r_prime.display_with(p)
    );
    let _ = writeln!(out, "Q(U) mod p = {}", rep.q_reduction);
    let _ = writeln!(
        out,
        "(a) {}  (b) {}  (c) {}  (d) {}",
        rep.cond_paths_outside, rep.cond_open_ball, rep.cond_q_roots, rep.cond_e_vanishes
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bt_tree::galois_fixed_report;
    use crate::poly::QPoly;

    #[test]
    fn sqrt2_figure() {
        let rep = galois_fixed_report(2, &QPoly::parse("T^2-2", &["T"]).unwrap()).unwrap();
        let fig = render_orbit(&rep);
        assert!(fig.contains("eta(0; 2^{-1/2})"));
        assert!(fig.contains("eta(alpha; 2^{-3/2})"));
        assert!(fig.contains("[2^{-3/2}, 2^{-1/2})"));
        assert!(fig.contains("alpha_1 alpha_2"));
    }

    #[test]
    fn tame_figure() {
        let rep = galois_fixed_report(3, &QPoly::parse("T^2-3", &["T"]).unwrap()).unwrap();
        let fig = render_orbit(&rep);
        assert!(fig.contains("paths meet on the tree"));
        assert!(!fig.contains('#'));
    }
}
