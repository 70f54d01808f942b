//! CP2 membership: `o(xy) <= max(o(x), o(y))` for all `x, y`.

use std::fmt;

use crate::group::{Elem, FiniteGroup};
use crate::omega::{omega_filtration, OmegaFiltration};
use crate::NotPGroup;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cp2Method {
    Pairwise,
    OmegaCriterion,
}

/// A pair violating the CP2 inequality.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cp2Witness {
    pub x: Elem,
    pub y: Elem,
    pub order_x: u64,
    pub order_y: u64,
    pub order_xy: u64,
}

impl fmt::Display for Cp2Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "x={} y={} o(x)={} o(y)={} o(xy)={}",
            self.x, self.y, self.order_x, self.order_y, self.order_xy
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cp2Report {
    pub is_cp2: bool,
    pub method: Cp2Method,
    /// Present iff the pairwise test failed.
    pub witness: Option<Cp2Witness>,
    /// Present iff the Ω-criterion failed.
    pub failing_level: Option<u32>,
}

/// Scans ordered pairs `(x, y)` lexicographically and stops at the first
/// violation. Works for any finite group.
pub fn is_cp2_pairwise(g: &FiniteGroup) -> Cp2Report {
    let orders = g.element_orders();
    let witness = g.elements().find_map(|x| {
        g.elements().find_map(|y| {
            let xy = g.mul(x, y);
            (orders[xy] > orders[x].max(orders[y])).then(|| Cp2Witness {
                x,
                y,
                order_x: orders[x],
                order_y: orders[y],
                order_xy: orders[xy],
            })
        })
    });
    Cp2Report {
        is_cp2: witness.is_none(),
        method: Cp2Method::Pairwise,
        witness,
        failing_level: None,
    }
}

/// A p-group is CP2 iff every Ω-set `{x : x^(p^i) = 1}` is already a subgroup.
pub fn is_cp2_omega(g: &FiniteGroup) -> Result<Cp2Report, NotPGroup> {
    Ok(cp2_from_filtration(&omega_filtration(g)?))
}

pub fn cp2_from_filtration(f: &OmegaFiltration) -> Cp2Report {
    let failing_level = f.first_open_level();
    Cp2Report {
        is_cp2: failing_level.is_none(),
        method: Cp2Method::OmegaCriterion,
        witness: None,
        failing_level,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{build_group, parse_group_expr, BuildOptions};

    fn build(s: &str) -> FiniteGroup {
        build_group(&parse_group_expr(s).unwrap(), BuildOptions::default()).unwrap()
    }

    #[test]
    fn pairwise_examples() {
        assert!(is_cp2_pairwise(&build("Q8")).is_cp2);
        assert!(is_cp2_pairwise(&build("C2")).is_cp2);
        let d8 = is_cp2_pairwise(&build("D8"));
        assert!(!d8.is_cp2);
        // s * (s r) = r
        assert_eq!(
            d8.witness,
            Some(Cp2Witness {
                x: 4,
                y: 5,
                order_x: 2,
                order_y: 2,
                order_xy: 4
            })
        );
    }

    #[test]
    fn pairwise_handles_non_p_groups() {
        // S3 = D6: two reflections multiply to a rotation of order 3
        let r = is_cp2_pairwise(&build("D6"));
        assert!(!r.is_cp2);
        // C6: o(2) * o(3) elements combine to order 6
        assert!(!is_cp2_pairwise(&build("C6")).is_cp2);
    }

    #[test]
    fn omega_examples() {
        let q8 = is_cp2_omega(&build("Q8")).unwrap();
        assert!(q8.is_cp2);
        assert_eq!(q8.failing_level, None);
        let f = omega_filtration(&build("Q8")).unwrap();
        assert_eq!(f.set_sizes(), vec![1, 2, 8]);

        let d16 = is_cp2_omega(&build("D16")).unwrap();
        assert!(!d16.is_cp2);
        assert_eq!(d16.failing_level, Some(1));

        assert!(is_cp2_omega(&build("C9*C3")).unwrap().is_cp2);
        assert!(is_cp2_omega(&build("C6")).is_err());
    }
}
