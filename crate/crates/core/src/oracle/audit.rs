use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::moment::walk_weight;
use super::spec::{format_rational, MomentSpec};
use crate::catalan::{bound_3_7, ClassBoundInput, HeightTable};
use crate::error::{Error, Result};
use crate::walks::{class_size, diagram_params, label_steps, max_exit_degree, DiagramParams, EvenWalks};

/// Largest `s` the audit accepts.
pub const AUDIT_S_CAP: usize = 4;
/// Largest `n` the audit accepts.
pub const AUDIT_N_CAP: u32 = 7;

/// One class of walks sharing Dyck height, maximal exit degree and census.
#[derive(Clone, Debug, Serialize)]
pub struct AuditRow {
    pub u: usize,
    #[serde(rename = "D")]
    pub d: usize,
    pub params: DiagramParams,
    pub walks: usize,
    pub vertices: usize,
    /// Exact `Σ Π_a Π_b` over the trajectories of the class.
    pub weight: String,
    pub weight_f64: f64,
    pub bound: f64,
    pub within_bound: bool,
    /// `Π_{k<|V|} (1 - k/n)`.
    pub falling_ratio: f64,
    /// `exp(-(s-σ)²/2n)`.
    pub gaussian_factor: f64,
    pub falling_within: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AuditReport {
    pub s: usize,
    pub n: u32,
    pub rho: String,
    pub k0: usize,
    pub u_hat_sq: f64,
    pub v2_hat: f64,
    pub rows: Vec<AuditRow>,
    /// Sum of all class weights, equal to `M_2s`.
    pub total: String,
    /// Share of `M_2s` carried by tree-type classes.
    pub tree_share: f64,
}

impl AuditReport {
    pub fn violations(&self) -> impl Iterator<Item = &AuditRow> {
        self.rows.iter().filter(|r| !r.within_bound || !r.falling_within)
    }

    pub fn all_within(&self) -> bool {
        self.violations().next().is_none()
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Groups all even walks of half-length `s` by `(θ*, D, S)` and compares each
/// class's exact weight with the closed-form bound.
pub fn class_weight_audit(spec: &MomentSpec, k0: usize) -> Result<AuditReport> {
    spec.validate()?;
    let (s, n) = (spec.s, spec.n);
    if s == 0 || s > AUDIT_S_CAP || n > AUDIT_N_CAP {
        return Err(Error::Guardrail {
            what: format!("audit needs 1 <= s <= {AUDIT_S_CAP} and n <= {AUDIT_N_CAP}"),
            estimate: format!("{} trajectories", (n as f64).powi(2 * s as i32)),
        });
    }
    let v2 = spec.v(2)?.clone();
    let u_sq = match &spec.truncation {
        Some(u) => u * u,
        None => {
            return Err(Error::Config(
                "the audit needs a bound U_n on the entries (set truncation)".into(),
            ))
        }
    };
    let u_hat_sq = to_f64(&(u_sq / &v2));
    let v2_hat = to_f64(&v2);
    let heights = HeightTable::new(s);

    struct Acc {
        walks: usize,
        vertices: usize,
        weight: BigRational,
        sigma: usize,
    }
    let mut classes: BTreeMap<(usize, usize, DiagramParams), Acc> = BTreeMap::new();
    for w in EvenWalks::new(s)? {
        let params = diagram_params(&w, k0)?;
        let u = label_steps(&w).max_height();
        let (_, d) = max_exit_degree(&w);
        let size = class_size(&w, n as u64);
        let weight = if size.is_zero() {
            BigRational::zero()
        } else {
            walk_weight(&w, spec)? * BigRational::from_integer(size)
        };
        let acc = classes.entry((u, d, params.clone())).or_insert(Acc {
            walks: 0,
            vertices: w.vertex_count(),
            weight: BigRational::zero(),
            sigma: params.sigma,
        });
        acc.walks += 1;
        acc.weight += weight;
    }

    let rho = to_f64(&spec.rho);
    let nf = n as f64;
    let mut total = BigRational::zero();
    let mut tree = BigRational::zero();
    let mut rows = Vec::new();
    for ((u, d, params), acc) in classes {
        total += &acc.weight;
        if params.is_tree_type() {
            tree += &acc.weight;
        }
        if acc.weight.is_zero() {
            continue;
        }
        let input = ClassBoundInput {
            u,
            d,
            n: nf,
            rho,
            u_hat_sq,
            v2_hat,
        };
        let bound = bound_3_7(&params, &input, &heights);
        let weight_f64 = to_f64(&acc.weight);
        let falling_ratio = (0..acc.vertices).map(|k| 1.0 - k as f64 / nf).product::<f64>();
        let gap = (s - acc.sigma) as f64;
        let gaussian_factor = (-gap * gap / (2.0 * nf)).exp();
        rows.push(AuditRow {
            u,
            d,
            walks: acc.walks,
            vertices: acc.vertices,
            weight: format_rational(&acc.weight),
            weight_f64,
            bound,
            within_bound: weight_f64 <= bound * (1.0 + 1e-12),
            falling_ratio,
            gaussian_factor,
            falling_within: falling_ratio <= gaussian_factor * (1.0 + 1e-12),
            params,
        });
    }
    let tree_share = if total.is_zero() {
        0.0
    } else {
        to_f64(&(&tree / &total))
    };
    Ok(AuditReport {
        s,
        n,
        rho: format_rational(&spec.rho),
        k0,
        u_hat_sq,
        v2_hat,
        rows,
        total: format_rational(&total),
        tree_share,
    })
}

/// `weight / n`: the class weight per choice of starting vertex.
pub fn per_start_vertex(weight: &BigRational, n: u32) -> BigRational {
    weight / BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::spec::OracleLaw;

    fn q(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn single_class_at_s1() {
        let spec = MomentSpec::with_law(5, q(2, 1), 1, OracleLaw::Rademacher).unwrap();
        let r = class_weight_audit(&spec, 4).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.total, "1");
        let w = super::super::spec::parse_rational(&r.rows[0].weight).unwrap();
        assert_eq!(per_start_vertex(&w, 5), q(1, 5));
        assert!(r.all_within());
    }

    #[test]
    fn total_is_the_moment() {
        let spec = MomentSpec::with_law(6, q(6, 1), 3, OracleLaw::Rademacher).unwrap();
        let r = class_weight_audit(&spec, 4).unwrap();
        assert_eq!(r.total, "505/2304");
        assert!(r.tree_share > 0.5 && r.tree_share < 0.8);
    }

    #[test]
    fn unbounded_law_needs_truncation() {
        let spec = MomentSpec::with_law(4, q(2, 1), 2, OracleLaw::Gaussian).unwrap();
        assert!(matches!(class_weight_audit(&spec, 4), Err(Error::Config(_))));
    }
}
