use serde::{Deserialize, Serialize};

use crate::algebra::{cartan_t, GroupElem};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CartanReport {
    /// Distinct Cartan parameters in increasing order.
    pub ts: Vec<f64>,
    pub gaps: Vec<f64>,
    pub max_gap: f64,
    /// Indices `i` where `t_{i+1} − t_i > ln 2 + ln(s_{i+1}/s_i) + tol`.
    pub violations: Vec<usize>,
    pub tolerance: f64,
}

/// Sorted Cartan parameters `t_g` with consecutive gaps, each checked against
/// `ln 2 + ln(s_{n+1}/s_n)` where `s = cosh t`.
pub fn cartan_syndetic(elems: &[GroupElem], tolerance: f64) -> Result<CartanReport> {
    if elems.len() < 2 {
        return Err(Error::InvalidInput("need at least two elements".into()));
    }
    let mut st = elems
        .iter()
        .map(|g| match g {
            GroupElem::Sl2(m) => cartan_t(m),
            other => Err(Error::VariantMismatch(format!(
                "Cartan projection needs SL2 input, got {}",
                other.kind()
            ))),
        })
        .collect::<Result<Vec<(f64, f64)>>>()?;
    st.sort_by(|a, b| a.1.total_cmp(&b.1));
    st.dedup_by(|b, a| (b.1 - a.1).abs() <= 1e-12);
    let mut gaps = Vec::with_capacity(st.len().saturating_sub(1));
    let mut violations = Vec::new();
    for (i, w) in st.windows(2).enumerate() {
        let gap = w[1].1 - w[0].1;
        let bound = std::f64::consts::LN_2 + (w[1].0 / w[0].0).ln();
        if gap > bound + tolerance {
            violations.push(i);
        }
        gaps.push(gap);
    }
    Ok(CartanReport {
        ts: st.iter().map(|x| x.1).collect(),
        max_gap: gaps.iter().copied().fold(0.0, f64::max),
        gaps,
        violations,
        tolerance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Sl2;

    #[test]
    fn diagonal_grid_has_unit_gaps() {
        let e: Vec<GroupElem> = (0..=10).map(|t| GroupElem::Sl2(Sl2::diagonal(t as f64))).collect();
        let r = cartan_syndetic(&e, 1e-9).unwrap();
        assert_eq!(r.gaps.len(), 10);
        for g in &r.gaps {
            assert!((g - 1.0).abs() < 1e-9);
        }
        assert!(r.violations.is_empty());
    }

    #[test]
    fn repeated_element_has_no_gaps() {
        let g = GroupElem::Sl2(Sl2::diagonal(2.0));
        let r = cartan_syndetic(&[g.clone(), g], 1e-9).unwrap();
        assert!(r.gaps.is_empty());
    }

    #[test]
    fn rejects_other_groups() {
        let g = GroupElem::scalar(crate::cutproject::int_elem(1));
        assert!(cartan_syndetic(&[g.clone(), g], 1e-9).is_err());
    }
}
