#pragma once

// The bounded witness language L = L1 u L2 u L3 u L4 over a1..a9: the Parikh
// correspondence psi, the arithmetic membership predicates and unambiguous
// linear grammars for each component and for the union.

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "unamb/exponent_vector.hpp"
#include "unamb/grammar.hpp"

namespace unamb {

inline constexpr std::size_t kWitnessDimension = 9;

enum class ComponentId : int { L1 = 1, L2 = 2, L3 = 3, L4 = 4 };

inline constexpr std::array<ComponentId, 4> kComponents = {ComponentId::L1, ComponentId::L2,
                                                           ComponentId::L3, ComponentId::L4};

inline int index_of(ComponentId t) { return static_cast<int>(t); }
/// Throws std::invalid_argument outside 1..4.
ComponentId component_from_index(int index);
/// "L1" .. "L4"
std::string component_name(ComponentId t);

/// One defining comparison of a component, coordinates 1-based:
/// strict ? i_left > i_right : i_left <= i_right.
struct Comparison {
    int left;
    int right;
    bool strict;

    bool holds(const ExponentVector& point) const;
    /// e.g. "i1 <= i9"
    std::string describe() const;
};

/// The three comparisons defining L_t, outermost pair first.
const std::array<Comparison, 3>& comparisons(ComponentId t);

/// The terminal a_j, j in 1..9.
std::string letter(int j);

/// Parikh image of a word in a1* a2* ... a9*. Throws FormatError for a token
/// other than a1..a9 or for letters out of order.
ExponentVector psi(const Word& word);
/// a1^i1 ... a9^i9. Throws DimensionError unless the point has dimension 9.
Word psi_inverse(const ExponentVector& point);
/// True iff word is in a1* ... a9* with every token one of a1..a9.
bool is_sorted_word(const Word& word);

/// Throws DimensionError unless the point has dimension 9.
bool member_component(const ExponentVector& point, ComponentId t);
bool member_L(const ExponentVector& point);
/// The comparisons of L_t that the point violates.
std::vector<Comparison> failed_comparisons(const ExponentVector& point, ComponentId t);

/// Unambiguous linear grammar for L_t. Component 1 uses the classic
/// grammar with nonterminals S_1, A_{1,9}, A_9, ... ; the others use S_t,
/// X_{p,q} for a nested comparison, Y_p for a strict surplus and F_j for a
/// pumped letter.
Grammar build_component_grammar(ComponentId t);

/// S -> S_1 | S_2 | S_3 | S_4 over the four component grammars, with each
/// non-start nonterminal N of component t renamed to N^t.
Grammar build_union_grammar();

}  // namespace unamb
