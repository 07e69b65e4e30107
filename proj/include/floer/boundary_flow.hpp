#pragma once

// Morse data on a manifold with boundary: interior (o), boundary-stable (s)
// and boundary-unstable (u) critical points with the eight trajectory
// counts, and the three complexes built from them.

#include <array>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "floer/gf2.hpp"
#include "floer/graded_complex.hpp"
#include "floer/grading.hpp"
#include "floer/report.hpp"

namespace floer {

enum class PointKind { interior, stable, unstable };

char kind_code(PointKind k);
/// Accepts 'o', 's', 'u'.
PointKind kind_from_code(char c);

struct CriticalPoint {
    std::string id;
    PointKind kind = PointKind::interior;
    /// For unstable points this counts the normal direction too; inside the
    /// bar complex they sit one lower.
    Rational grading;
};

/// Mod-2 counts as the set of (source id, target id) pairs counted once.
using CountOperator = std::set<std::pair<std::string, std::string>>;

struct FlowOperators {
    CountOperator d_oo, d_os, d_uo, d_us;
    CountOperator bd_ss, bd_uu, bd_us, bd_su;

    static constexpr std::array<std::string_view, 8> names = {
        "d_oo", "d_os", "d_uo", "d_us", "bd_ss", "bd_uu", "bd_us", "bd_su"};

    CountOperator& get(std::string_view name);
    const CountOperator& get(std::string_view name) const;
};

/// Counts on a cobordism between two flow data sets, plus the degree of the
/// resulting maps. m_* and bm_ss, bm_uu shift the stored grading by
/// `degree`; bm_su by degree + 1 and bm_us by degree - 1.
struct CrossOperators {
    CountOperator m_oo, m_os, m_uo, m_us;
    CountOperator bm_ss, bm_su, bm_us, bm_uu;
    Rational degree{0};

    static constexpr std::array<std::string_view, 8> names = {
        "m_oo", "m_os", "m_uo", "m_us", "bm_ss", "bm_su", "bm_us", "bm_uu"};

    CountOperator& get(std::string_view name);
    const CountOperator& get(std::string_view name) const;
};

struct BoundaryFlowData {
    std::string name;
    GradingScheme scheme;
    std::vector<CriticalPoint> points;
    FlowOperators ops;
    /// Optional cap with the U class, a degree -2 self-map.
    std::optional<CrossOperators> u_cap;
    std::int64_t b1 = 0;

    const CriticalPoint& point(const std::string& id) const;
};

/// Operator matrices in the o/s/u bases (points of each kind in file order).
struct FlowBlocks {
    std::vector<std::size_t> o, s, u;
    BitMatrix d_oo, d_os, d_uo, d_us;
    BitMatrix bd_ss, bd_uu, bd_us, bd_su;
};

/// Throws PreconditionError for unknown ids or kind mismatches.
FlowBlocks flow_blocks(const BoundaryFlowData& d);

/// Cross-operator matrices; rows index dst points, columns src points.
struct CrossBlocks {
    BitMatrix m_oo, m_os, m_uo, m_us;
    BitMatrix bm_ss, bm_su, bm_us, bm_uu;
};

CrossBlocks cross_blocks(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                         const CrossOperators& x);

/// 2x2 block matrix [[a, b], [c, d]].
BitMatrix block2x2(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c,
                   const BitMatrix& d);

/// Names of the identities checked by validate_flow, in order.
extern const std::array<std::string_view, 8> kFlowIdentities;

/// Degree typing, id hygiene, the eight identities among the counts,
/// d^2 = 0 for all three complexes, and, when present, the chain-map
/// property of the U-cap.
Report validate_flow(const BoundaryFlowData& d);

/// The three complexes. With `check` set they throw VerificationError
/// naming the first failed identity.
GradedComplex assemble_to(const BoundaryFlowData& d, bool check = true);
GradedComplex assemble_from(const BoundaryFlowData& d, bool check = true);
GradedComplex assemble_bar(const BoundaryFlowData& d, bool check = true);

enum class Flavor { to, from, bar };
Flavor flavor_from_name(std::string_view name);
std::string_view flavor_name(Flavor f);
GradedComplex assemble(const BoundaryFlowData& d, Flavor f, bool check = true);

/// i: bar -> to, j: to -> from, p: from -> bar with their homology data.
struct Triangle {
    GradedComplex to, from, bar;
    ChainMap i, j, p;
    HomologyResult h_to, h_from, h_bar;
    GradedLinearMap i_star, j_star, p_star;
    /// Exactness at the to, from and bar terms, in that order.
    std::array<ExactnessReport, 3> exactness;

    bool exact() const;
};

/// Throws VerificationError when a map is not a chain map or the sequence
/// is not exact.
Triangle triangle_maps(const BoundaryFlowData& d);

/// Reverses the flow: s and u swap, every count is transposed, gradings go
/// to -1 - b1 - g.
BoundaryFlowData dualize_flow(const BoundaryFlowData& d);

} // namespace floer
