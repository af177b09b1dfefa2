use crate::error::{Error, Result};
use crate::localalg::{radical_membership_power_with, tuple_multiplicity_with, Caps, MembershipCertificate};
use crate::polyring::{jacobian_det, rational_string, Poly, RandomSource, Rational};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Index of a node in its trace.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NodeId(pub usize);

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NodeKind {
    /// Element of the pre-multiplier set, order 1/2.
    Pre,
    /// A multiplier taken as given with a stated order.
    Axiom,
    /// Jacobian determinant of n multipliers or pre-multipliers.
    P1,
    /// Root of an ideal of multipliers.
    P2,
}

/// Unit and cofactors of a P2 step: `unit·output^r = Σ cofactors_i·input_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeCertificate {
    pub unit: Poly,
    pub cofactors: Vec<Poly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceNode {
    pub id: NodeId,
    pub kind: NodeKind,
    pub inputs: Vec<NodeId>,
    /// Variables differentiated by a P1 step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vars: Option<Vec<usize>>,
    /// Root order of a P2 step.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<NodeCertificate>,
    pub output: Poly,
    #[serde(with = "rational_string")]
    pub order: Rational,
}

/// A multiplier together with the node that derived it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiplier {
    pub poly: Poly,
    pub order: Rational,
    pub node: NodeId,
}

/// Append-only derivation of multipliers from pre-multipliers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Trace {
    nodes: Vec<TraceNode>,
}

pub(crate) fn half() -> Rational {
    Rational::new(1.into(), 2.into())
}

/// `min(1/2, min orders) / 2`
pub fn p1_order<'a>(orders: impl IntoIterator<Item = &'a Rational>) -> Rational {
    let m = orders.into_iter().fold(half(), |a, b| if *b < a { b.clone() } else { a });
    m / Rational::from_integer(2.into())
}

/// `min orders / r`
pub fn p2_order<'a>(orders: impl IntoIterator<Item = &'a Rational>, r: u32) -> Option<Rational> {
    let m = orders.into_iter().min()?.clone();
    Some(m / Rational::from_integer(r.into()))
}

impl Trace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_nodes(nodes: Vec<TraceNode>) -> Self {
        Trace { nodes }
    }

    pub fn nodes(&self) -> &[TraceNode] {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> &mut [TraceNode] {
        &mut self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, id: NodeId) -> Option<&TraceNode> {
        self.nodes.get(id.0)
    }

    pub fn multiplier(&self, id: NodeId) -> Option<Multiplier> {
        self.node(id).map(|n| Multiplier {
            poly: n.output.clone(),
            order: n.order.clone(),
            node: id,
        })
    }

    /// Pre-multiplier set, in registration order.
    pub fn premultipliers(&self) -> Vec<Multiplier> {
        self.nodes
            .iter()
            .filter(|n| n.kind == NodeKind::Pre)
            .filter_map(|n| self.multiplier(n.id))
            .collect()
    }

    /// First node whose output is a unit.
    pub fn unit(&self) -> Option<Multiplier> {
        self.nodes
            .iter()
            .find(|n| n.output.is_unit() && n.kind != NodeKind::Pre)
            .and_then(|n| self.multiplier(n.id))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse {
            pos: e.column(),
            msg: e.to_string(),
        })
    }

    fn push(&mut self, mut node: TraceNode) -> Multiplier {
        let id = NodeId(self.nodes.len());
        node.id = id;
        let m = Multiplier {
            poly: node.output.clone(),
            order: node.order.clone(),
            node: id,
        };
        self.nodes.push(node);
        m
    }

    fn check_owned(&self, m: &Multiplier) -> Result<&TraceNode> {
        let n = self
            .node(m.node)
            .ok_or_else(|| Error::domain("trace", format!("unknown node {}", m.node)))?;
        if n.output != m.poly || n.order != m.order {
            return Err(Error::domain("trace", format!("multiplier does not match node {}", m.node)));
        }
        Ok(n)
    }

    /// Add a germ vanishing at the origin to the pre-multiplier set.
    pub fn register_premultiplier(&mut self, p: &Poly) -> Result<Multiplier> {
        if !p.constant_term().is_zero() {
            return Err(Error::domain(
                "register_premultiplier",
                format!("{p} does not vanish at the origin"),
            ));
        }
        Ok(self.push(TraceNode {
            id: NodeId(0),
            kind: NodeKind::Pre,
            inputs: Vec::new(),
            vars: None,
            r: None,
            certificate: None,
            output: p.clone(),
            order: half(),
        }))
    }

    /// Take `p` as a multiplier of the given positive order.
    pub fn register_axiom(&mut self, p: &Poly, order: Rational) -> Result<Multiplier> {
        if !order.is_positive() {
            return Err(Error::domain("register_axiom", format!("order {order} is not positive")));
        }
        Ok(self.push(TraceNode {
            id: NodeId(0),
            kind: NodeKind::Axiom,
            inputs: Vec::new(),
            vars: None,
            r: None,
            certificate: None,
            output: p.clone(),
            order,
        }))
    }

    /// P1: the Jacobian determinant of `n` inputs in `n` variables.
    pub fn apply_p1(&mut self, ms: &[Multiplier]) -> Result<Multiplier> {
        let n = ms.first().ok_or(Error::Empty("apply_p1 inputs"))?.poly.nvars();
        if ms.len() != n {
            return Err(Error::Count {
                expected: n,
                got: ms.len(),
            });
        }
        for m in ms {
            self.check_owned(m)?;
        }
        let polys: Vec<Poly> = ms.iter().map(|m| m.poly.clone()).collect();
        let vars: Vec<usize> = (0..n).collect();
        let output = jacobian_det(&polys, &vars)?;
        Ok(self.push(TraceNode {
            id: NodeId(0),
            kind: NodeKind::P1,
            inputs: ms.iter().map(|m| m.node).collect(),
            vars: Some(vars),
            r: None,
            certificate: None,
            output,
            order: p1_order(ms.iter().map(|m| &m.order)),
        }))
    }

    /// P2 with the minimal root order: searches `r ≤ n·mult(ms)`.
    pub fn apply_p2(&mut self, g: &Poly, ms: &[Multiplier], rng: &mut RandomSource, caps: &Caps) -> Result<Multiplier> {
        let first = ms.first().ok_or(Error::Empty("apply_p2 inputs"))?;
        let n = first.poly.nvars();
        self.check_p2_inputs(ms)?;
        let polys: Vec<Poly> = ms.iter().map(|m| m.poly.clone()).collect();
        let mu = tuple_multiplicity_with(&polys, n, rng, caps)?.value;
        let Some(mu) = mu.finite() else {
            return Err(Error::domain("apply_p2", "inputs have infinite multiplicity, so the root search is unbounded"));
        };
        match radical_membership_power_with(g, &polys, mu, caps)? {
            Some(root) => self.apply_p2_certified(g, ms, root.r, &root.certificate),
            None => Err(Error::domain(
                "apply_p2",
                format!(
                    "{g} is not in the radical: its power {} is not in the ideal",
                    crate::localalg::exponent_bound(n, mu)
                ),
            )),
        }
    }

    /// P2 with a given root order and certificate, re-verified before
    /// recording. The certificate generators must be the input polys.
    pub fn apply_p2_certified(
        &mut self,
        g: &Poly,
        ms: &[Multiplier],
        r: u32,
        cert: &MembershipCertificate,
    ) -> Result<Multiplier> {
        self.check_p2_inputs(ms)?;
        if r == 0 {
            return Err(Error::domain("apply_p2", "root order must be positive"));
        }
        let gens_match = cert.generators.len() == ms.len() && cert.generators.iter().zip(ms).all(|(a, m)| *a == m.poly);
        if !gens_match || cert.target != g.pow(r) || !cert.verify() {
            return Err(Error::verification("apply_p2", format!("certificate for {g} with r = {r} does not verify")));
        }
        let order = p2_order(ms.iter().map(|m| &m.order), r).expect("inputs are nonempty");
        Ok(self.push(TraceNode {
            id: NodeId(0),
            kind: NodeKind::P2,
            inputs: ms.iter().map(|m| m.node).collect(),
            vars: None,
            r: Some(r),
            certificate: Some(NodeCertificate {
                unit: cert.unit.clone(),
                cofactors: cert.cofactors.clone(),
            }),
            output: g.clone(),
            order,
        }))
    }

    fn check_p2_inputs(&self, ms: &[Multiplier]) -> Result<()> {
        if ms.is_empty() {
            return Err(Error::Empty("apply_p2 inputs"));
        }
        for m in ms {
            if self.check_owned(m)?.kind == NodeKind::Pre {
                return Err(Error::domain(
                    "apply_p2",
                    format!("input {} is a pre-multiplier; P2 takes multipliers", m.node),
                ));
            }
        }
        Ok(())
    }
}

/// The unit `1` used when a trace ends in a unit multiplier.
pub fn is_unit_value(p: &Poly) -> bool {
    p.is_unit() && p.constant_term() == Rational::one()
}
