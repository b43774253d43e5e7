//! Random smooth expressions, total on all of `ℝⁿ`, for stress scenarios.

use groupcalc_core::Expr;
use rand::Rng;

/// Random expression in `(coord 0 0)`, …, `(coord 0 (dim-1))` built from
/// sums, products and bounded-argument primitives.
pub fn smooth_expr<R: Rng>(rng: &mut R, dim: usize, depth: usize) -> Expr {
    if depth == 0 || rng.gen_bool(0.2) {
        return if rng.gen_bool(0.75) {
            Expr::coord(0, rng.gen_range(0..dim))
        } else {
            Expr::constant(f64::from(rng.gen_range(-8i32..=8)) / 4.0)
        };
    }
    let sub = |rng: &mut R| smooth_expr(rng, dim, depth - 1);
    match rng.gen_range(0..8) {
        0 => sub(rng) + sub(rng),
        1 => sub(rng) - sub(rng),
        2 | 3 => sub(rng) * sub(rng),
        4 => sub(rng).sin(),
        5 => sub(rng).cos(),
        6 => sub(rng).sin().exp(),
        _ => {
            let a = sub(rng);
            (Expr::constant(1.0) + a.clone() * a).log()
        }
    }
}

/// Random chart `g: ℝ³ → ℝ` that depends on `x₂`, so the Heisenberg defect
/// is generically non-zero.
pub fn heisenberg_chart<R: Rng>(rng: &mut R) -> Expr {
    let g = smooth_expr(rng, 3, 3);
    g + smooth_expr(rng, 3, 2) * Expr::coord(0, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use groupcalc_core::{GroupSpec, GroupFunction, GroupElement};
    use rand::SeedableRng;

    #[test]
    fn expressions_are_total_and_valid() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let g = heisenberg_chart(&mut rng);
            let f = GroupFunction::new(vec![GroupSpec::Translation(3)], vec![g]).unwrap();
            let v = f.eval(&[GroupElement::translation(&[1.5, -2.0, 0.5])]).unwrap();
            assert!(v[0].is_finite());
        }
    }
}
