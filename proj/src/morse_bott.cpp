#include "floer/morse_bott.hpp"

#include <algorithm>

#include "floer/errors.hpp"

namespace floer {

E1Page e1_page(const std::vector<BottLevel>& levels)
{
    E1Page page;
    for (const auto& l : levels)
        for (std::size_t k = 0; k < l.dims.size(); ++k)
            if (l.dims[k] > 0)
                page[l.offset + static_cast<std::int64_t>(k)] += l.dims[k];
    return page;
}

namespace {

std::size_t dim_at(const BottLevel& l, const Rational& g)
{
    const Rational k = g - l.offset;
    if (k.denominator() != 1 || k.numerator() < 0 ||
        k.numerator() >= static_cast<std::int64_t>(l.dims.size()))
        return 0;
    return l.dims[static_cast<std::size_t>(k.numerator())];
}

} // namespace

CollapseResult lacunary_collapse(const std::vector<BottLevel>& levels,
                                 const Rational& differential_degree)
{
    std::vector<BottLevel> sorted = levels;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const BottLevel& a, const BottLevel& b) { return a.level > b.level; });

    CollapseResult result;
    result.homology = e1_page(levels);
    for (const auto& high : sorted) {
        for (std::size_t k = 0; k < high.dims.size(); ++k) {
            if (high.dims[k] == 0)
                continue;
            const Rational g = high.offset + static_cast<std::int64_t>(k);
            const Rational target = g + differential_degree;
            for (const auto& low : sorted) {
                if (low.level >= high.level || dim_at(low, target) == 0)
                    continue;
                result.refusal = "possible differential from level " + std::to_string(high.level) +
                                 " degree " + to_string(g) + " to level " +
                                 std::to_string(low.level) + " degree " + to_string(target);
                return result;
            }
        }
    }
    result.collapsed = true;
    return result;
}

GysinReport gysin_check(const GradedComplex& c, const Involution& inv)
{
    if (!inv.is_free())
        throw PreconditionError("involution has a fixed generator");
    const InvariantSubcomplex sub = invariant_subcomplex(c, inv);
    const GradedComplex& cp = sub.complex;

    GysinReport report;
    report.h_invariant = homology(cp);
    report.h_total = homology(c);

    const ChainMap inclusion{cp, c, sub.inclusion, 0};
    const ChainMap transfer{c, cp, sub.transfer, 0};
    if (!(sub.transfer * sub.inclusion).is_zero()) {
        report.exact = false;
        report.failures.push_back("transfer after inclusion is nonzero");
    }
    report.inclusion = induced_map(inclusion, report.h_invariant, report.h_total);
    report.transfer = induced_map(transfer, report.h_total, report.h_invariant);

    GradedLinearMap& q = report.q;
    q.scheme = cp.scheme;
    q.degree = cp.degree;
    q.source = report.h_invariant.dims();
    q.target = report.h_invariant.dims();
    for (const auto& piece : report.h_invariant.pieces) {
        const Rational g = piece.grading;
        const Rational below = cp.scheme.normalize(g + cp.degree);
        const auto rows = cp.indices_at(g);
        const auto cols = c.indices_at(g);
        const BitMatrix local = sub.transfer.submatrix(rows, cols);
        BitMatrix block(report.h_invariant.dim_at(below), piece.dim());
        for (std::size_t k = 0; k < piece.dim(); ++k) {
            const BitVector z = report.h_invariant.representative(g, k);
            BitVector z_local(rows.size());
            for (std::size_t r = 0; r < rows.size(); ++r)
                if (z.test(rows[r]))
                    z_local.set(r);
            const Membership lift = image_membership(local, z_local);
            if (!lift.member)
                throw VerificationError("invariant cycle has no preimage under the transfer",
                                        "transfer onto invariants");
            BitVector y(c.size());
            for (auto j : lift.witness->support())
                y.set(cols[j]);
            const Membership down = image_membership(sub.inclusion, c.differential * y);
            if (!down.member)
                throw VerificationError("boundary of a lift is not invariant", "invariant boundary");
            if (block.rows() == 0)
                continue;
            for (auto r : report.h_invariant.coordinates(below, *down.witness).support())
                block.set(r, k);
        }
        q.blocks[g] = std::move(block);
    }

    const std::vector<GradedLinearMap> seq = {report.inclusion, report.transfer, q,
                                              report.inclusion};
    const char* terms[] = {"H(C)", "H(C') after transfer", "H(C') after Q"};
    for (std::size_t k = 0; k < 3; ++k) {
        const ExactnessReport e = check_exact(seq, k + 1);
        for (const auto& f : e.failures)
            report.failures.push_back(std::string(terms[k]) + ": " + f);
        report.exact = report.exact && e.exact;
    }
    return report;
}

HomologyResult quotient_homology_via_invariants(const GradedComplex& c, const Involution& inv)
{
    if (!inv.is_free())
        throw PreconditionError("involution has a fixed generator");
    return homology(invariant_subcomplex(c, inv).complex);
}

} // namespace floer
