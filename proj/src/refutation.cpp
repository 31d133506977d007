#include "unamb/refutation.hpp"

#include <sstream>
#include <stdexcept>

#include "unamb/errors.hpp"

namespace unamb {

BoundM::BoundM(std::int64_t value) : value_(value) {
    if (value < 1) throw std::invalid_argument("M must be at least 1");
}

std::string to_string(RefutationKind kind) {
    return kind == RefutationKind::Uncovered ? "UNCOVERED" : "OVERCOVERED";
}

std::string to_string(RefutationStep step) {
    switch (step) {
        case RefutationStep::NoCover: return "NO_COVER";
        case RefutationStep::Claim18: return "CLAIM_1_8";
        case RefutationStep::Claim34: return "CLAIM_3_4";
        case RefutationStep::Claim26: return "CLAIM_2_6";
        case RefutationStep::FinalW: return "FINAL_W";
    }
    return "?";
}

namespace {

void require_light(const SemilinearUnion& u) {
    for (std::size_t s = 0; s < u.sets.size(); ++s) {
        for (const auto& b : u.sets[s].basis) {
            if (b.nonzero_count() > 2) {
                throw NotLightError("set " + std::to_string(s + 1) + " has basis vector " +
                                    format_point(b) + " with " + std::to_string(b.nonzero_count()) +
                                    " nonzero coordinates");
            }
        }
    }
}

void expect(bool condition, const std::string& what) {
    if (!condition) throw InternalInconsistency("refutation invariant violated: " + what);
}

// Coordinates are 1-based in the comments above; these helpers keep the code
// readable against them.
std::int64_t coord(const ExponentVector& v, std::size_t j) { return v.at1(j); }

}  // namespace

BoundM compute_M(const SemilinearUnion& u) {
    require_light(u);
    std::int64_t largest = 0;
    for (const auto& set : u.sets) {
        largest = std::max(largest, set.shift.max_coordinate());
        for (const auto& b : set.basis) largest = std::max(largest, b.max_coordinate());
    }
    return BoundM(checked_add(largest, 1));
}

ExponentVector witness_point(BoundM m) {
    const std::int64_t one = m.value();
    const std::int64_t two = checked_mul(2, one);
    const std::int64_t three = checked_mul(3, one);
    return ExponentVector{one, three, two, two, one, two, two, one, one};
}

RefutationResult refute(const SemilinearUnion& input) {
    if (input.dimension != kWitnessDimension && !(input.dimension == 0 && input.sets.empty())) {
        throw DimensionError("refutation needs a union in dimension 9, got " +
                             std::to_string(input.dimension));
    }
    input.check_dimensions();
    require_light(input);
    SemilinearUnion u = normalize(input);
    u.dimension = kWitnessDimension;

    RefutationResult result;
    RefutationTrace& trace = result.trace;
    trace.m = compute_M(u);
    const std::int64_t M = trace.m.value();
    trace.v = witness_point(trace.m);
    const ExponentVector& v = trace.v;
    expect(!member_L(v), "v lies in psi(L)");

    const auto cover = member_union(u, v);
    if (!cover) {
        result.kind = RefutationKind::Uncovered;
        result.point = v;
        trace.fired_step = RefutationStep::NoCover;
        return result;
    }

    // Keep only the basis vectors used with a positive coefficient.
    const LinearSet& full_set = u.sets[cover->set_index];
    LinearSet& set = trace.covering_set;
    set.shift = full_set.shift;
    std::vector<std::int64_t> c;
    for (std::size_t i = 0; i < full_set.basis.size(); ++i) {
        if (cover->coefficients[i] > 0) {
            set.basis.push_back(full_set.basis[i]);
            trace.basis_origin.push_back(i);
            c.push_back(cover->coefficients[i]);
        }
    }
    trace.witness = MembershipWitness{cover->set_index, c};
    expect(evaluate(set, c) == v, "membership witness does not reproduce v");
    const auto& beta = set.basis;

    auto finish = [&](RefutationStep step, std::vector<std::int64_t> coefficients,
                      ComponentId expected) {
        ExponentVector point = evaluate(set, coefficients);
        expect(member_component(point, expected),
               to_string(step) + " point " + format_point(point) + " is not in psi(" +
                   component_name(expected) + ")");
        expect(member_union(u, point).has_value(), to_string(step) + " point left the union");
        trace.fired_step = step;
        trace.final_coefficients = std::move(coefficients);
        result.kind = RefutationKind::Overcovered;
        result.point = std::move(point);
        result.set_index = cover->set_index;
        result.component = expected;
        return result;
    };

    // A vector with unequal 1st and 8th coordinates moves v into psi(L4).
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 1) != coord(beta[i], 8)) {
            trace.adjusted_index = i;
            trace.delta = coord(beta[i], 1) > coord(beta[i], 8) ? 1 : -1;
            auto moved = c;
            moved[i] += trace.delta;
            return finish(RefutationStep::Claim18, std::move(moved), ComponentId::L4);
        }
    }
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 1) > 0) {
            trace.beta_18_index = i;
            break;
        }
    }
    expect(trace.beta_18_index.has_value(), "no basis vector with beta_1 = beta_8 > 0");
    {
        const auto& b18 = beta[*trace.beta_18_index];
        for (std::size_t j = 1; j <= kWitnessDimension; ++j) {
            expect(j == 1 || j == 8 || coord(b18, j) == 0, "beta^{1,8} has another nonzero coordinate");
        }
    }

    // A vector with unequal 3rd and 4th coordinates moves v into psi(L3).
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 3) != coord(beta[i], 4)) {
            trace.adjusted_index = i;
            trace.delta = coord(beta[i], 3) > coord(beta[i], 4) ? 1 : -1;
            auto moved = c;
            moved[i] += trace.delta;
            return finish(RefutationStep::Claim34, std::move(moved), ComponentId::L3);
        }
    }

    auto cu = c;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 3) > 0) {
            cu[i] = 0;
            trace.removed_for_u.push_back(i);
        }
    }
    trace.u = evaluate(set, cu);
    const ExponentVector& u_point = *trace.u;
    expect(coord(u_point, 3) == coord(u_point, 4) && coord(u_point, 3) < M,
           "u does not have u_3 = u_4 < M");
    for (std::size_t j = 1; j <= kWitnessDimension; ++j) {
        expect(j == 3 || j == 4 || coord(u_point, j) == coord(v, j),
               "u differs from v outside coordinates 3 and 4");
    }

    // Vectors nonzero at both 2 and 6 must add less than M to u_2.
    std::vector<std::size_t> two_six;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 2) > 0 && coord(beta[i], 6) > 0) {
            two_six.push_back(i);
            trace.contribution_2_6 =
                checked_add(trace.contribution_2_6, checked_mul(cu[i], coord(beta[i], 2)));
        }
    }
    if (trace.contribution_2_6 >= M) {
        auto moved = cu;
        for (auto i : two_six) {
            if (moved[i] == 0) continue;
            moved[i] = 0;
            trace.removed_for_final.push_back(i);
        }
        return finish(RefutationStep::Claim26, std::move(moved), ComponentId::L1);
    }

    auto cw = cu;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        if (coord(beta[i], 2) > 0 && coord(beta[i], 6) == 0 && cw[i] != 0) {
            cw[i] = 0;
            trace.removed_for_final.push_back(i);
        }
    }
    cw[*trace.beta_18_index] = checked_add(cw[*trace.beta_18_index], checked_add(M, 1));
    const ExponentVector w = evaluate(set, cw);
    expect(coord(w, 1) > coord(w, 9), "w_1 > w_9 fails");
    expect(coord(w, 2) <= coord(w, 6), "w_2 <= w_6 fails");
    expect(coord(w, 3) == coord(w, 4), "w_3 = w_4 fails");
    return finish(RefutationStep::FinalW, std::move(cw), ComponentId::L2);
}

bool verify_result(const SemilinearUnion& u, const RefutationResult& result) {
    try {
        if (result.point.dimension() != kWitnessDimension) return false;
        SemilinearUnion target = u;
        if (target.dimension == 0 && target.sets.empty()) target.dimension = kWitnessDimension;
        const bool in_union = member_union(target, result.point).has_value();
        const bool in_L = member_L(result.point);
        if (result.kind == RefutationKind::Uncovered) {
            return !result.set_index && !in_union && !in_L;
        }
        if (!result.set_index || *result.set_index >= target.sets.size()) return false;
        return in_L && in_union && member(target.sets[*result.set_index], result.point).has_value();
    } catch (const std::exception&) {
        return false;
    }
}

std::string format_result_line(const RefutationResult& result) {
    std::string line = to_string(result.kind) + " " + format_point(result.point) +
                       " step=" + to_string(result.trace.fired_step);
    if (result.component) line += " in=psi(" + component_name(*result.component) + ")";
    return line;
}

namespace {

template <typename T>
std::string bracketed(const std::vector<T>& values, std::int64_t offset = 0) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ' ';
        os << static_cast<std::int64_t>(values[i]) + offset;
    }
    os << ']';
    return os.str();
}

}  // namespace

std::string format_trace(const RefutationResult& result) {
    const RefutationTrace& t = result.trace;
    std::ostringstream os;
    os << "M: " << t.m.value() << '\n';
    os << "v: " << format_point(t.v) << '\n';
    if (!t.witness) {
        os << "covering set: none\n";
    } else {
        os << "covering set: " << t.witness->set_index + 1 << '\n';
        os << "basis kept: " << bracketed(t.basis_origin, 1) << '\n';
        os << "coefficients: " << bracketed(t.witness->coefficients) << '\n';
        if (t.beta_18_index) os << "beta_18: " << *t.beta_18_index + 1 << '\n';
        if (t.adjusted_index) {
            os << "adjusted: " << *t.adjusted_index + 1 << " delta=" << (t.delta > 0 ? "+1" : "-1")
               << '\n';
        }
        if (t.u) {
            os << "removed for u: " << bracketed(t.removed_for_u, 1) << '\n';
            os << "u: " << format_point(*t.u) << '\n';
            os << "contribution_2_6: " << t.contribution_2_6 << '\n';
            os << "removed: " << bracketed(t.removed_for_final, 1) << '\n';
        }
        os << "final coefficients: " << bracketed(t.final_coefficients) << '\n';
    }
    os << "step: " << to_string(t.fired_step) << '\n';
    os << "point: " << format_point(result.point) << '\n';
    if (t.witness) {
        os << "# covering set, positive part (basis numbered as above)\n";
        os << format_linear_set(t.covering_set);
    }
    return os.str();
}

}  // namespace unamb
