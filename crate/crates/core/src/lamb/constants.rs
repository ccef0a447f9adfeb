use serde::{Deserialize, Serialize};

use super::{classical_lamb, solve_lamb, LambParams};
use crate::error::Result;
use crate::statements::registry::{self, Exponents, Side, StatementId};

/// A named scalar coefficient.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NamedCoeff {
    pub name: String,
    pub value: f64,
}

/// Scalar coefficients of one statement at given parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantSet {
    /// The Lamb constant used (0 in the limiting cases).
    pub c: f64,
    /// `(1 − ν²m²)/4`.
    pub hardy_coeff: f64,
    /// Coefficient of the `x^{m−2}` (or `δ^{m−2}`) remainder term, before
    /// inradius scaling; 0 when the statement has none.
    pub remainder_coeff: f64,
    pub lhs_coeffs: Vec<NamedCoeff>,
    pub rhs_coeffs: Vec<NamedCoeff>,
}

impl ConstantSet {
    /// Remainder coefficient divided by the leading right-hand coefficient,
    /// i.e. the constant of the inequality normalized so that the first
    /// right-hand term has coefficient 1.
    pub fn normalized_remainder(&self) -> f64 {
        match self.rhs_coeffs.first() {
            Some(lead) if lead.value != 0.0 => self.remainder_coeff / lead.value,
            _ => f64::NAN,
        }
    }
}

/// Lamb constant appropriate for `id` at resolved parameters.
pub(crate) fn constant_for(id: StatementId, params: &LambParams) -> Result<f64> {
    if !registry::needs_lamb_constant(id) {
        return Ok(0.0);
    }
    let root = match id {
        StatementId::COR2 | StatementId::AW1 => classical_lamb(params.nu, params.m)?,
        _ => solve_lamb(params)?,
    };
    Ok(root.c)
}

/// Every scalar coefficient of `stmt` at `params`.
pub fn statement_constants(params: &LambParams, stmt: StatementId, extra: &Exponents) -> Result<ConstantSet> {
    let res = registry::resolve(stmt, params, extra)?;
    let c = constant_for(stmt, &res.params)?;
    let terms = registry::layout(stmt, &res, c);
    let remainder_coeff = terms
        .iter()
        .find(|t| t.side == Side::Lhs && t.f_power > 0.0 && t.d_power == 0.0 && t.dist_power != 2.0)
        .map(|t| t.base)
        .unwrap_or(0.0);
    let pick = |side: Side| {
        terms
            .iter()
            .filter(|t| t.side == side)
            .map(|t| NamedCoeff { name: t.name.clone(), value: t.base })
            .collect::<Vec<_>>()
    };
    Ok(ConstantSet {
        c,
        hardy_coeff: res.params.hardy_coeff(),
        remainder_coeff,
        lhs_coeffs: pick(Side::Lhs),
        rhs_coeffs: pick(Side::Rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bessel::{first_zero_of_derivative, Order};

    #[test]
    fn first_segment_example_constant() {
        let cs = statement_constants(&LambParams::new(1.0, 1.0, 0.5), StatementId::T1A, &Exponents::default())
            .unwrap();
        assert_eq!(cs.hardy_coeff, 0.0);
        let jp1 = first_zero_of_derivative(Order::new(1.0).unwrap()).unwrap().value;
        assert!((cs.normalized_remainder() - jp1 * jp1 / 3.0).abs() < 1e-6);
        let ex = statement_constants(&LambParams::new(1.0, 1.0, 0.5), StatementId::EX1S, &Exponents::default())
            .unwrap();
        assert!((ex.lhs_coeffs[0].value - jp1 * jp1 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn hardy_coefficient_vanishes_at_critical_nu() {
        for &m in &[0.5, 1.0, 2.0] {
            let cs = statement_constants(&LambParams::new(1.0 / m, m, 0.0), StatementId::L3B, &Exponents::default())
                .unwrap();
            assert!(cs.hardy_coeff.abs() < 1e-15);
        }
    }

    #[test]
    fn lemma_rhs_coefficients() {
        let cs = statement_constants(&LambParams::new(0.5, 1.0, 0.0), StatementId::L3A, &Exponents::default())
            .unwrap();
        assert_eq!(cs.rhs_coeffs[0].value, 0.75);
        assert_eq!(cs.rhs_coeffs[1].value, 0.0);
    }

    #[test]
    fn invalid_params_named() {
        let err = statement_constants(&LambParams::new(0.5, 1.0, 0.0), StatementId::COR3, &Exponents::default())
            .unwrap_err();
        assert!(err.to_string().contains("m > 1"));
    }

    #[test]
    fn limiting_branch_constants() {
        let cs = statement_constants(
            &LambParams::new(0.25, 2.0, 0.0),
            StatementId::COR4B,
            &Exponents::new(Some(2.0), None),
        )
        .unwrap();
        assert_eq!(cs.c, 0.0);
        assert_eq!(cs.remainder_coeff, 2.0);
    }
}
