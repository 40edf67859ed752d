//! Structured validation reports.
//!
//! Validators never return a bare boolean: each failed basis instance is
//! recorded with the axiom it breaks and the basis indices involved.

use std::fmt;

/// A named axiom that a validator checks on basis instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    // commutative algebras
    Commutativity,
    Associativity,
    Unit,
    // A-modules
    ModuleUnit,
    ModuleAssociativity,
    // derivations of A
    DerivationLeibniz,
    // Lie-Rinehart algebras
    Antisymmetry,
    Jacobi,
    AnchorDerivation,
    AnchorLie,
    AnchorALinear,
    Leibniz,
    // morphisms
    MorphismALinear,
    MorphismBracket,
    MorphismAnchor,
    // left / right modules
    LieModule,
    LeftALinear,
    LeftLeibniz,
    RightLieModule,
    RightMixed,
    // actions
    ActionLeibniz,
    ActionLie,
    ActionDerivation,
    ActionALinear,
    ActionAnchor,
    // compatibility of mutual actions
    CompatAnchorLeft,
    CompatAnchorRight,
    CompatLeft,
    CompatRight,
    // crossed modules
    CrossedLieMap,
    CrossedEquivariance,
    CrossedPeiffer,
    CrossedALinear,
    CrossedAnchor,
    // derivation pairs
    PairLieDerivation,
    PairALinear,
    PairAnchor,
    // pairings
    PairingAnchor,
    PairingLeft,
    PairingRight,
    PairingBracket,
    // central extensions
    Centrality,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        use Axiom::*;
        match self {
            Commutativity => "comm.commutativity",
            Associativity => "comm.associativity",
            Unit => "comm.unit",
            ModuleUnit => "module.unit",
            ModuleAssociativity => "module.associativity",
            DerivationLeibniz => "derivation.leibniz",
            Antisymmetry => "lr.antisymmetry",
            Jacobi => "lr.jacobi",
            AnchorDerivation => "lr.anchor_derivation",
            AnchorLie => "lr.anchor_lie",
            AnchorALinear => "lr.anchor_a_linear",
            Leibniz => "lr.leibniz",
            MorphismALinear => "morphism.a_linear",
            MorphismBracket => "morphism.bracket",
            MorphismAnchor => "morphism.anchor",
            LieModule => "left_module.lie",
            LeftALinear => "left_module.a_linear",
            LeftLeibniz => "left_module.leibniz",
            RightLieModule => "right_module.lie",
            RightMixed => "right_module.mixed",
            ActionLeibniz => "action.leibniz",
            ActionLie => "action.lie",
            ActionDerivation => "action.derivation",
            ActionALinear => "action.a_linear",
            ActionAnchor => "action.anchor",
            CompatAnchorLeft => "compatible.anchor_left",
            CompatAnchorRight => "compatible.anchor_right",
            CompatLeft => "compatible.left",
            CompatRight => "compatible.right",
            CrossedLieMap => "crossed.lie_map",
            CrossedEquivariance => "crossed.equivariance",
            CrossedPeiffer => "crossed.peiffer",
            CrossedALinear => "crossed.a_linear",
            CrossedAnchor => "crossed.anchor",
            PairLieDerivation => "derivation_pair.lie",
            PairALinear => "derivation_pair.a_linear",
            PairAnchor => "derivation_pair.anchor",
            PairingAnchor => "pairing.anchor",
            PairingLeft => "pairing.left",
            PairingRight => "pairing.right",
            PairingBracket => "pairing.bracket",
            Centrality => "central.kernel_in_center",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed basis instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at {:?}", self.axiom, self.indices)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, indices: &[usize]) {
        self.violations.push(Violation {
            axiom,
            indices: indices.to_vec(),
        });
    }

    /// Records a violation when `ok` is false.
    pub fn check(&mut self, ok: bool, axiom: Axiom, indices: &[usize]) {
        if !ok {
            self.push(axiom, indices);
        }
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    /// Distinct axioms that failed, in declaration order.
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut a: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        a.sort();
        a.dedup();
        a
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_valid() {
            return f.write_str("valid");
        }
        let shown: Vec<String> = self.violations.iter().take(8).map(|v| v.to_string()).collect();
        write!(f, "{} violation(s): {}", self.violations.len(), shown.join("; "))?;
        if self.violations.len() > 8 {
            f.write_str("; ...")?;
        }
        Ok(())
    }
}
