#pragma once

// E1 pages built from critical submanifolds, the lacunary collapse test,
// and the Gysin sequence of a free involution.

#include <cstdint>
#include <string>
#include <vector>

#include "floer/graded_complex.hpp"

namespace floer {

struct BottLevel {
    /// Filtration index; differentials run from higher to lower levels.
    std::int64_t level = 0;
    Rational offset{0};
    /// Homology dims of the critical submanifold, degree 0 upward.
    std::vector<std::size_t> dims;
};

using E1Page = GradedDims;

E1Page e1_page(const std::vector<BottLevel>& levels);

struct CollapseResult {
    bool collapsed = false;
    /// E1 dims, which are the homology when collapsed.
    GradedDims homology;
    /// First grading-compatible differential when not collapsed.
    std::string refusal;
};

CollapseResult lacunary_collapse(const std::vector<BottLevel>& levels,
                                 const Rational& differential_degree = Rational(-1));

struct GysinReport {
    bool exact = true;
    std::vector<std::string> failures;
    HomologyResult h_invariant;
    HomologyResult h_total;
    /// H(C') -> H(C), H(C) -> H(C') and the degree -1 connecting map.
    GradedLinearMap inclusion;
    GradedLinearMap transfer;
    GradedLinearMap q;
};

/// Throws PreconditionError when the involution fixes a generator.
GysinReport gysin_check(const GradedComplex& c, const Involution& inv);

/// Homology of the invariant subcomplex of a free involution.
HomologyResult quotient_homology_via_invariants(const GradedComplex& c, const Involution& inv);

} // namespace floer
