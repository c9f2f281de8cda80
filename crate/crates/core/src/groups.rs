//! Names of the algebraic groups that appear in the automorphism tables.

use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConnectedGroup {
    Trivial,
    /// `GL_2(C)`
    GL2,
    PGL2,
    /// `(G_m)^2`
    Torus2,
    /// `G_a x G_m`
    GaGm,
    /// `(G_a)^2 ⋊ G_m`
    Ga2SemiGm,
    /// Borel subgroup of `PGL_3(C)`
    BorelPGL3,
    Ga,
    Gm,
}

impl ConnectedGroup {
    pub fn dim(self) -> usize {
        match self {
            Self::Trivial => 0,
            Self::Ga | Self::Gm => 1,
            Self::Torus2 | Self::GaGm => 2,
            Self::PGL2 | Self::Ga2SemiGm => 3,
            Self::GL2 => 4,
            Self::BorelPGL3 => 5,
        }
    }
}

impl fmt::Display for ConnectedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Trivial => "1",
            Self::GL2 => "GL2(C)",
            Self::PGL2 => "PGL2(C)",
            Self::Torus2 => "(Gm)^2",
            Self::GaGm => "Ga x Gm",
            Self::Ga2SemiGm => "(Ga)^2 ⋊ Gm",
            Self::BorelPGL3 => "B(PGL3(C))",
            Self::Ga => "Ga",
            Self::Gm => "Gm",
        })
    }
}

/// Group of components, always cyclic here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ComponentGroup {
    Trivial,
    Z2,
    Z6,
}

impl ComponentGroup {
    pub fn order(self) -> usize {
        match self {
            Self::Trivial => 1,
            Self::Z2 => 2,
            Self::Z6 => 6,
        }
    }
}

/// `identity_component ⋊ component_group`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub identity_component: ConnectedGroup,
    pub component_group: ComponentGroup,
}

impl GroupDescriptor {
    pub const fn new(identity_component: ConnectedGroup, component_group: ComponentGroup) -> Self {
        Self {
            identity_component,
            component_group,
        }
    }

    pub fn dim(&self) -> usize {
        self.identity_component.dim()
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let id = self.identity_component.to_string();
        let id = if id.contains(' ') { format!("({id})") } else { id };
        match self.component_group {
            ComponentGroup::Trivial => write!(f, "{id}"),
            ComponentGroup::Z2 => write!(f, "{id} ⋊ Z/2"),
            ComponentGroup::Z6 => write!(f, "{id} ⋊ Z/6"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parenthesizes_compound_components() {
        let g = GroupDescriptor::new(ConnectedGroup::GaGm, ComponentGroup::Z2);
        assert_eq!(g.to_string(), "(Ga x Gm) ⋊ Z/2");
        let g = GroupDescriptor::new(ConnectedGroup::GL2, ComponentGroup::Z2);
        assert_eq!(g.to_string(), "GL2(C) ⋊ Z/2");
        assert_eq!(g.dim(), 4);
    }
}
