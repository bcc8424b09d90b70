//! Detection of first-order right factors.

use num_traits::Zero;

use crate::constructions::nullspace;
use crate::exact::{rat, rational_roots, Poly, PowerSeries, Rat};
use crate::operator::{Point, ThetaOperator};

pub const DEFAULT_SEARCH_BOUND: usize = 24;

/// Squarefree part of `Σ_i [θ^order]P_i · z^i` with the factors of `z` removed.
fn leading_singularity(d: &ThetaOperator) -> Poly {
    let lead = Poly::new(d.terms().iter().map(|p| p.coeff(d.order())).collect());
    let g = lead.gcd(&lead.derivative());
    let mut sq = lead.div_exact(&g).unwrap_or(lead);
    while sq.degree().unwrap_or(0) > 0 && sq.coeff(0).is_zero() {
        sq = sq.div_exact(&Poly::x()).expect("x divides");
    }
    sq
}

fn conjugate(d: &ThetaOperator, alpha: &Rat) -> Vec<Poly> {
    d.terms().iter().map(|p| p.shift(alpha)).collect()
}

/// Degrees `deg p` compatible with the exponents at infinity, or `0..=bound`
/// when infinity is irregular.
fn candidate_degrees(d: &ThetaOperator, alpha: &Rat, m: usize, delta_deg: usize, bound: usize) -> Vec<usize> {
    let inf = d.local_exponents(&Point::Infinity);
    if !inf.is_regular_singular() {
        return (0..=bound).collect();
    }
    let base = rat((m * delta_deg) as i64) - alpha;
    let mut out: Vec<usize> = inf
        .rational()
        .iter()
        .filter_map(|lam| {
            let deg = &base - lam;
            (deg.is_integer() && deg >= rat(0)).then(|| deg.to_integer())
        })
        .filter_map(|deg| usize::try_from(deg).ok())
        .filter(|&deg| deg <= bound)
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether `Σ z^i P_i(θ)` kills some `p/Δ^m` with `deg p <= deg`.
///
/// `D(p/Δ^m)` has numerator degree at most `deg + k + order·deg Δ` over
/// `Δ^{m+order}`, and `Δ(0) != 0`, so vanishing of that many series
/// coefficients makes the identity exact.
fn solvable(terms: &[Poly], order: usize, delta: &Poly, m: usize, deg: usize) -> bool {
    let k = terms.len() - 1;
    let rows_needed = deg + k + order * delta.degree().unwrap_or(0) + 1;
    let inv = match PowerSeries::from_poly(delta, rows_needed).pow(m as u32).recip() {
        Ok(s) => s,
        Err(_) => return false,
    };
    let rows: Vec<Vec<Rat>> = (0..rows_needed)
        .map(|n| {
            (0..=deg)
                .map(|j| {
                    let mut acc = Rat::zero();
                    for (i, p) in terms.iter().enumerate() {
                        if n >= i + j {
                            let s = inv.coeff(n - i - j);
                            if !s.is_zero() {
                                acc += p.eval_i64((n - i) as i64) * s;
                            }
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect();
    !nullspace(rows, deg + 1).is_empty()
}

/// True if `D` has a solution `z^α p(z)/Δ(z)^m`, `α` a rational exponent at
/// 0, `Δ` the squarefree leading-singularity polynomial, `m <= order` and
/// `deg p <= search_bound`. Such a solution spans the kernel of a
/// first-order right factor.
pub fn has_first_order_right_factor(d: &ThetaOperator, search_bound: usize) -> bool {
    let delta = leading_singularity(d);
    let delta_deg = delta.degree().unwrap_or(0);
    let roots = rational_roots(&d.indicial(&Point::zero()));
    for (alpha, _) in &roots.roots {
        let terms = conjugate(d, alpha);
        for m in 0..=d.order() {
            let Some(&deg) = candidate_degrees(d, alpha, m, delta_deg, search_bound).last() else {
                continue;
            };
            if solvable(&terms, d.order(), &delta, m, deg) {
                return true;
            }
        }
    }
    false
}
