use std::fmt;
use std::str::FromStr;

use serde::Serialize;

/// Shapes of randomly generated instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Shape {
    Ring,
    RingWithIdeal,
    Map,
    ComposablePair,
    QuotientSquare,
    FlatFamily,
    SurjectionTriangle,
}

macro_rules! statements {
    ($($id:ident => $shape:ident, $claim:literal, $check:literal;)*) => {
        /// The checkable statements. Identifiers are stable and used on the
        /// command line and in reports.
        #[allow(non_camel_case_types)]
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum StatementId {
            $($id,)*
        }

        impl StatementId {
            pub const ALL: &'static [StatementId] = &[$(StatementId::$id,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(StatementId::$id => stringify!($id),)*
                }
            }

            /// The instance shape the campaign generates for this statement.
            pub fn shape(self) -> Shape {
                match self {
                    $(StatementId::$id => Shape::$shape,)*
                }
            }

            /// The mathematical claim.
            pub fn claim(self) -> &'static str {
                match self {
                    $(StatementId::$id => $claim,)*
                }
            }

            /// What is computed to test the claim.
            pub fn check_semantics(self) -> &'static str {
                match self {
                    $(StatementId::$id => $check,)*
                }
            }
        }
    };
}

statements! {
    Lem_br_lem0 => Map,
        "If J ⊇ IB and φ(x_1..x_r) is part of a minimal basis of J for x_i ∈ I, then x_1..x_r is part of a minimal basis of I.",
        "For every subset S of the generators of a random I and a random J ⊇ IB: rank of φ(S) in J/nJ equal to |S| implies rank of S in I/mI equal to |S| (jet ranks, stable values only).";
    Lem_br_lem1 => Map,
        "0 ≤ δ_A(I) − δ_B^φ(I) ≤ rd(φ).",
        "Both inequalities for a random I, a random I ⊆ m² and I = m.";
    Lem_br_lem1_1 => Map,
        "δ_A(I) = edim(A) − edim(A/I) and δ_B^φ(I) = edim(B) − edim(B/IB).",
        "Both equalities for a random I, a random I ⊆ m² and I = m.";
    Cor_br_cor4 => RingWithIdeal,
        "For I ⊆ J: δ_A(J) = δ_A(I) + δ_{A/I}(J/I).",
        "The equality for random I ⊆ J, and rd(π_J) = rd(π_{J/I}) + rd(π_I) through the triangle A → A/I → A/J.";
    Cor_br_cor5 => RingWithIdeal,
        "If a_1..a_r ∈ I are part of a minimal basis of m, then δ_A(I) = r + δ_{A/(a)}(I/(a)).",
        "Picks a maximal set of generators of I with independent classes in m/m² and checks the equality.";
    Prop_br_lem2 => Map,
        "rd(φ) = δ_A(m) − δ_B^φ(m) = edim(A) + edim(B/mB) − edim(B); if φ is flat, rd(φ) = ε₂(A) + ε₂(B/mB) − ε₂(B).",
        "All three expressions for rd; the ε₂ identity when a flatness witness exists and all ε₂ values are stable.";
    Cor_br_cor1 => Map,
        "If mB = n then rd(φ) = edim(A) − edim(B).",
        "The equality when edim(B/mB) = 0; other instances pass vacuously.";
    Lem_br_lem3 => Map,
        "δ_B^φ(I) is the maximal length of a sequence in I extending to part of a minimal basis of n.",
        "Exhaustive search over subsets of the generators of I for images independent in n/n², compared with δ_B(IB).";
    Lem_br_lem4 => Map,
        "If some minimal basis of m extends to part of a minimal basis of n, then every one does.",
        "Images of the standard basis and of up to 25 randomly changed bases of m/m²: independence in n/n² is all-or-nothing.";
    Thm_br_th1 => Map,
        "Equivalent: φ basically regular; δ_A(I) = δ_B^φ(I) for all I; rd(φ) = 0; edim(B) = edim(A) + edim(B/mB).",
        "All four conditions agree, with (1) tested on sampled bases and (2) on sampled ideals including m.";
    Cor_weak_implies_basic => FlatFamily,
        "A weakly regular map is basically regular.",
        "is_weakly_regular = true implies rd = 0.";
    Cor_brw_cor3 => FlatFamily,
        "For flat φ, equivalent: basically regular with ε₂(A) = ε₂(B); basically regular with cdim(A) = cdim(B); weakly regular.",
        "All decidable conditions agree on flatness-witnessed maps; at least two must be decidable.";
    Cor_br_cor2 => RingWithIdeal,
        "rd(π_I) = edim(A) − edim(A/I) = δ_A(I); π_I basically regular ⇔ edim(A) = edim(A/I) ⇔ I ⊆ m²; rd(π_m) = edim(A).",
        "The identities for random I, J ⊇ I, m and m².";
    Cor_br_cor3 => Map,
        "rd(π_I) ≥ rd(π_{IB}); φ basically regular ⇔ equality for every I.",
        "The inequality on sampled ideals, and the equivalence with I = m among them.";
    Rmk_square_sum => QuotientSquare,
        "The defect of an oriented square is the sum of the defects of its two triangles, oriented oppositely.",
        "square_rd against the two triangles through the diagonal, in both orientations.";
    Thm_rs_thm1 => QuotientSquare,
        "For a clockwise square S: rd(S) = rd((A/I) ⊗_A S) = rd(K ⊗_A S) = rd(ψ_{mB}) − rd(ψ'_{mC}).",
        "The chain for a random I, on quotient squares and on squares built from composable pairs.";
    Cor_rs_cor1 => QuotientSquare,
        "The square (φ, π_{IB}, π_I, φ_I) is basically regular, so rd(φ_I) = rd(φ) − (rd(π_I) − rd(π_{IB})) ≤ rd(φ).",
        "square_rd = 0, the equality and the inequality; φ basically regular implies φ_I basically regular.";
    Cor_rs_cor2 => ComposablePair,
        "For a square S, equivalent: S basically regular; S_I basically regular for all I; S_m basically regular; rd(ψ_{mB}) = rd(ψ'_{mC}).",
        "All conditions agree on the square (φ, ψ, id, ψ∘φ), with sampled ideals for (2).";
    Cor_rs_cor3 => ComposablePair,
        "For a clockwise triangle T: rd(T) = rd((A/I) ⊗_A T) = rd(K ⊗_A T) = rd(ψ_{mB}).",
        "The chain for a random I.";
    Cor_rs_cor4 => ComposablePair,
        "rd(ψ∘φ) = rd(φ) + rd(ψ) − rd(ψ_{mB}) = rd(φ) + rd(π_{mB}) − rd(π_{mC}), so rd(φ) ≤ rd(ψ∘φ) ≤ rd(φ) + rd(ψ).",
        "Both equalities and both inequalities.";
    Cor_rs_cor5 => SurjectionTriangle,
        "If φ is surjective then rd(ψ∘φ) = rd(φ) + rd(ψ).",
        "Additivity and triangle_rd = 0 for surjections followed by random maps.";
    Cor_rs_cor6 => ComposablePair,
        "ψ∘φ basically regular ⇔ φ basically regular and rd(ψ) = rd(ψ_{mB}) ⇔ φ basically regular and rd(π_{mB}) = rd(π_{mC}); ψ basically regular ⇔ ψ_{mB} basically regular and rd(ψ∘φ) = rd(φ); φ, ψ basically regular ⇒ ψ∘φ basically regular, with the converse when φ is surjective.",
        "All four parts; the converse is checked when mB = n, which is what its argument uses.";
    Prop_rs_prop1 => Map,
        "For IB ⊆ J, the triangle (φ_I, π_{J/IB}) has defect rd(π_{(J+mB)/mB}), giving a formula for rd(φ_{I,J}).",
        "The triangle defect and both expressions for rd(φ_{I,J}).";
    Cor_rs_cor7 => Map,
        "If I ⊆ m², J ⊆ n² and IB ⊆ J, then rd(φ_{I,J}) = rd(φ).",
        "The equality for random such I and J.";
    Cor_rs_cor8 => Map,
        "If I ⊆ m² then rd(φ_I) = rd(φ); if J ⊆ n² then rd(π_J ∘ φ) = rd(φ).",
        "Both equalities.";
    Cor_rs_cor9 => Map,
        "If φ is basically regular, so are φ_{I,J}, φ_I and π_J ∘ φ for I ⊆ m², J ⊆ n², IB ⊆ J.",
        "rd = 0 for the three maps when rd(φ) = 0; other instances pass vacuously.";
    Prop_rs_cor10 => Map,
        "If φ is basically regular: when mB ≠ n and I ⊆ m², φ_{I,n²} is basically regular with non-regular closed fiber; when A is not artinian, π_{n²} ∘ φ is basically regular and not flat.",
        "Basic regularity, non-regularity of the fiber and the dimension obstruction to flatness.";
    Cor_rs_cor11 => Ring,
        "If A is not artinian then π_{m²}: A → A/m² is basically regular and not flat.",
        "rd(π_{m²}) = 0 and flatness_status reports a dimension witness; skipped when dim(A) is undecidable.";
    Thm_bwr_thm1 => FlatFamily,
        "Equivalent: φ basically regular and B regular; A and B/mB regular with dim(B) = dim(A) + dim(B/mB); φ weakly regular and A regular.",
        "All decidable conditions agree; at least two must be decidable.";
    Thm_br_th1_eps2 => FlatFamily,
        "For flat φ: rd(φ) = 0 ⇔ ε₂(B) = ε₂(A) + ε₂(B/mB).",
        "rd(φ) = ε₂(A) + ε₂(B/mB) − ε₂(B) on flatness-witnessed maps when all three ε₂ values are stable.";
}

impl StatementId {
    pub fn explain(self) -> String {
        format!(
            "{}\n  claim: {}\n  instances: {}\n  check: {}\n",
            self.name(),
            self.claim(),
            self.shape().name(),
            self.check_semantics()
        )
    }
}

impl Shape {
    pub fn name(self) -> &'static str {
        match self {
            Shape::Ring => "ring",
            Shape::RingWithIdeal => "ring-with-ideal",
            Shape::Map => "map",
            Shape::ComposablePair => "composable-pair",
            Shape::QuotientSquare => "quotient-square",
            Shape::FlatFamily => "flat-family",
            Shape::SurjectionTriangle => "surjection-triangle",
        }
    }
}

impl fmt::Display for StatementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatementId {
    type Err = String;

    /// Accepts the identifier in any case, with `_`, `-` or `:` separators.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm = |t: &str| t.to_ascii_lowercase().replace(['-', ':', '.'], "_");
        let wanted = norm(s);
        StatementId::ALL
            .iter()
            .copied()
            .find(|id| norm(id.name()) == wanted)
            .ok_or_else(|| format!("unknown statement `{s}`"))
    }
}

impl Serialize for StatementId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}
