use super::trace::{p1_order, p2_order, NodeKind, Trace, TraceNode};
use crate::localalg::MembershipCertificate;
use crate::polyring::{jacobian_det, Rational};
use num_traits::{Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NodeReport {
    pub id: usize,
    pub kind: NodeKind,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Outcome of re-checking every node of a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceReport {
    pub ok: bool,
    pub nodes: Vec<NodeReport>,
    pub failures: Vec<usize>,
    /// Number of P1 and P2 steps.
    pub steps: usize,
    pub p1_steps: usize,
    pub p2_steps: usize,
    pub max_root_order: u32,
    /// Order of the first unit multiplier, if any.
    pub unit_order: Option<String>,
    pub final_order: Option<String>,
}

/// Re-execute each node's defining identity against the recorded outputs
/// and orders of its inputs, so a corrupted node is reported by itself.
pub fn verify_trace(trace: &Trace) -> TraceReport {
    let nodes: Vec<NodeReport> = trace
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, n)| {
            let error = check_node(trace, i, n).err();
            NodeReport {
                id: i,
                kind: n.kind,
                ok: error.is_none(),
                error,
            }
        })
        .collect();
    let failures: Vec<usize> = nodes.iter().filter(|r| !r.ok).map(|r| r.id).collect();
    let count = |k| trace.nodes().iter().filter(|n| n.kind == k).count();
    let (p1_steps, p2_steps) = (count(NodeKind::P1), count(NodeKind::P2));
    TraceReport {
        ok: failures.is_empty(),
        failures,
        nodes,
        steps: p1_steps + p2_steps,
        p1_steps,
        p2_steps,
        max_root_order: trace.nodes().iter().filter_map(|n| n.r).max().unwrap_or(0),
        unit_order: trace.unit().map(|m| m.order.to_string()),
        final_order: trace.nodes().last().map(|n| n.order.to_string()),
    }
}

fn check_node(trace: &Trace, i: usize, n: &TraceNode) -> Result<(), String> {
    if n.id.0 != i {
        return Err(format!("id {} at position {i}", n.id.0));
    }
    let nvars = n.output.nvars();
    let mut inputs = Vec::with_capacity(n.inputs.len());
    for id in &n.inputs {
        if id.0 >= i {
            return Err(format!("input {id} does not precede the node"));
        }
        let m = &trace.nodes()[id.0];
        if m.output.nvars() != nvars {
            return Err(format!("input {id} lives in {} variables", m.output.nvars()));
        }
        inputs.push(m);
    }
    if !n.order.is_positive() {
        return Err(format!("order {} is not positive", n.order));
    }
    let extra = |what: &str| Err(format!("{what} is not allowed on a {:?} node", n.kind));
    match n.kind {
        NodeKind::Pre | NodeKind::Axiom => {
            if !n.inputs.is_empty() {
                return extra("inputs");
            }
            if n.vars.is_some() || n.r.is_some() || n.certificate.is_some() {
                return extra("a payload");
            }
            if n.kind == NodeKind::Pre {
                if !n.output.constant_term().is_zero() {
                    return Err("pre-multiplier does not vanish at the origin".into());
                }
                if n.order != super::trace::half() {
                    return Err(format!("pre-multiplier order {} is not 1/2", n.order));
                }
            }
        }
        NodeKind::P1 => {
            if n.r.is_some() || n.certificate.is_some() {
                return extra("a root payload");
            }
            let vars = n.vars.as_ref().ok_or("P1 node without variables")?;
            let all: Vec<usize> = (0..nvars).collect();
            if *vars != all || inputs.len() != nvars {
                return Err(format!("P1 needs {nvars} inputs in all {nvars} variables"));
            }
            let polys: Vec<_> = inputs.iter().map(|m| m.output.clone()).collect();
            let j = jacobian_det(&polys, vars).map_err(|e| e.to_string())?;
            if j != n.output {
                return Err("output is not the Jacobian determinant of the inputs".into());
            }
            let want = p1_order(inputs.iter().map(|m| &m.order));
            if n.order != want {
                return Err(format!("order {} but the inputs give {want}", n.order));
            }
        }
        NodeKind::P2 => {
            if n.vars.is_some() {
                return extra("a variable set");
            }
            if inputs.is_empty() {
                return Err("P2 node without inputs".into());
            }
            if let Some(m) = inputs.iter().find(|m| m.kind == NodeKind::Pre) {
                return Err(format!("input {} is a pre-multiplier", m.id));
            }
            let r = n.r.ok_or("P2 node without root order")?;
            if r == 0 {
                return Err("root order 0".into());
            }
            let c = n.certificate.as_ref().ok_or("P2 node without certificate")?;
            let cert = MembershipCertificate {
                unit: c.unit.clone(),
                cofactors: c.cofactors.clone(),
                target: n.output.pow(r),
                generators: inputs.iter().map(|m| m.output.clone()).collect(),
            };
            if cert.unit.nvars() != nvars || cert.cofactors.iter().any(|a| a.nvars() != nvars) {
                return Err("certificate lives in the wrong ring".into());
            }
            if cert.unit.constant_term().is_zero() {
                return Err("certificate unit vanishes at the origin".into());
            }
            match cert.residual() {
                Ok(res) if res.is_zero() => {}
                Ok(_) => return Err("certificate identity fails".into()),
                Err(e) => return Err(e.to_string()),
            }
            let want: Rational = p2_order(inputs.iter().map(|m| &m.order), r).expect("nonempty");
            if n.order != want {
                return Err(format!("order {} but the inputs give {want}", n.order));
            }
        }
    }
    Ok(())
}
