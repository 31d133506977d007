#pragma once

// Counterexample search against a claimed representation of N^9 \ psi(L) as
// a finite union of light linear sets.
//
// The engine pivots on v = (M, 3M, 2M, 2M, M, 2M, 2M, M, M), where M exceeds
// every coordinate in the union. v is never in psi(L). If no set covers v, v
// is the counterexample. Otherwise the covering set S_v is walked from v to a
// point of psi(L) by moving single coefficients:
//
//   CLAIM_1_8  a basis vector with beta_1 != beta_8 pushes v into psi(L4);
//   CLAIM_3_4  a basis vector with beta_3 != beta_4 pushes v into psi(L3);
//   u          drop every vector with beta_3 = beta_4 > 0, so u_3 = u_4 < M;
//   CLAIM_2_6  vectors nonzero at both 2 and 6 that add >= M to u_2 are
//              dropped, landing in psi(L1);
//   FINAL_W    drop vectors with beta_2 > 0, beta_6 = 0 and add M+1 copies of
//              the (1,8) vector, landing in psi(L2).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "unamb/semilinear.hpp"
#include "unamb/witness.hpp"

namespace unamb {

/// M >= 1, strictly above every coordinate of every shift and basis vector.
class BoundM {
public:
    /// Throws std::invalid_argument unless value >= 1.
    explicit BoundM(std::int64_t value);
    std::int64_t value() const noexcept { return value_; }
    friend bool operator==(const BoundM&, const BoundM&) = default;

private:
    std::int64_t value_;
};

enum class RefutationKind { Uncovered, Overcovered };

enum class RefutationStep { NoCover, Claim18, Claim34, Claim26, FinalW };

std::string to_string(RefutationKind kind);
/// NO_COVER, CLAIM_1_8, CLAIM_3_4, CLAIM_2_6, FINAL_W
std::string to_string(RefutationStep step);

/// Everything needed to replay the arithmetic. Basis indices refer to the
/// normalized covering set stored in `covering_set`.
struct RefutationTrace {
    BoundM m{1};
    ExponentVector v;
    RefutationStep fired_step = RefutationStep::NoCover;

    std::optional<MembershipWitness> witness;  // positive coefficients only; zeros removed
    LinearSet covering_set;                    // normalized S_v restricted to `witness`
    std::vector<std::size_t> basis_origin;     // index of each kept vector in the normalized input set

    std::optional<std::size_t> adjusted_index;  // CLAIM_1_8 and CLAIM_3_4
    std::int64_t delta = 0;
    std::optional<std::size_t> beta_18_index;

    std::vector<std::size_t> removed_for_u;      // beta_3 = beta_4 > 0
    std::optional<ExponentVector> u;
    std::int64_t contribution_2_6 = 0;           // sum c_i * beta_i2 over beta_i2 > 0, beta_i6 > 0
    std::vector<std::size_t> removed_for_final;  // CLAIM_2_6 or FINAL_W removals

    std::vector<std::int64_t> final_coefficients;  // aligned with covering_set.basis
};

struct RefutationResult {
    RefutationKind kind = RefutationKind::Uncovered;
    ExponentVector point;
    std::optional<std::size_t> set_index;  // 0-based, present iff Overcovered
    std::optional<ComponentId> component;  // which psi(L_t) the point lies in
    RefutationTrace trace;
};

/// 1 + the largest coordinate of any shift or basis vector; 1 for an empty
/// union. Throws NotLightError.
BoundM compute_M(const SemilinearUnion& u);

/// (M, 3M, 2M, 2M, M, 2M, 2M, M, M). Throws OverflowError.
ExponentVector witness_point(BoundM m);

/// Throws DimensionError unless the union lives in N^9 (an empty union of
/// unspecified dimension 0 is accepted), NotLightError for a non-light set,
/// and InternalInconsistency if an internal invariant fails.
RefutationResult refute(const SemilinearUnion& u);

/// Re-checks the result using only membership in the union and in psi(L).
bool verify_result(const SemilinearUnion& u, const RefutationResult& result);

/// First line of the CLI report, e.g.
/// `OVERCOVERED (5 0 0 0 2 4 0 5 2) step=FINAL_W in=psi(L2)`.
std::string format_result_line(const RefutationResult& result);
/// Multi-line replayable trace.
std::string format_trace(const RefutationResult& result);

}  // namespace unamb
