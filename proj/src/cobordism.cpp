#include "floer/cobordism.hpp"

#include "floer/errors.hpp"

namespace floer {

Report check_cross_degrees(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                           const CrossOperators& x)
{
    Report report;
    if (src.scheme.kind != dst.scheme.kind || src.scheme.modulus != dst.scheme.modulus) {
        report.fail("source and target use different grading schemes");
        return report;
    }
    try {
        cross_blocks(src, dst, x);
    } catch (const PreconditionError& e) {
        report.fail(e.what());
        return report;
    }
    for (auto name : CrossOperators::names) {
        Rational shift = x.degree;
        if (name == "bm_su")
            shift += 1;
        else if (name == "bm_us")
            shift -= 1;
        for (const auto& [a, b] : x.get(name)) {
            const auto& p = src.point(a);
            const auto& q = dst.point(b);
            if (!dst.scheme.same(q.grading, p.grading + shift))
                report.fail("degree violation in " + std::string(name) + ": " + a + " (" +
                            to_string(p.grading) + ") -> " + b + " (" + to_string(q.grading) +
                            "), expected shift " + to_string(shift));
        }
    }
    return report;
}

CobordismMaps assemble_cobordism_maps_unchecked(const BoundaryFlowData& src,
                                                const BoundaryFlowData& dst,
                                                const CrossOperators& x)
{
    const FlowBlocks a = flow_blocks(src);
    const FlowBlocks b = flow_blocks(dst);
    const CrossBlocks m = cross_blocks(src, dst, x);

    CobordismMaps out;
    out.to = {assemble_to(src, false), assemble_to(dst, false),
              block2x2(m.m_oo, m.m_uo * a.bd_su + b.d_uo * m.bm_su, m.m_os,
                       m.bm_ss + m.m_us * a.bd_su + b.d_us * m.bm_su),
              x.degree};
    out.from = {assemble_from(src, false), assemble_from(dst, false),
                block2x2(m.m_oo, m.m_uo, m.bm_su * a.d_os + b.bd_su * m.m_os,
                         m.bm_uu + m.bm_su * a.d_us + b.bd_su * m.m_us),
                x.degree};
    out.bar = {assemble_bar(src, false), assemble_bar(dst, false),
               block2x2(m.bm_ss, m.bm_us, m.bm_su, m.bm_uu), x.degree};
    return out;
}

Report verify_cobordism_maps(const CobordismMaps& maps)
{
    Report report;
    report.merge(validate(maps.to), "to: ");
    report.merge(validate(maps.from), "from: ");
    report.merge(validate(maps.bar), "bar: ");
    return report;
}

CobordismMaps assemble_cobordism_maps(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                                      const CrossOperators& x)
{
    const Report degrees = check_cross_degrees(src, dst, x);
    if (!degrees.passed())
        throw VerificationError(degrees.failures.front(), "cross degree");
    CobordismMaps maps = assemble_cobordism_maps_unchecked(src, dst, x);
    const Report chain = verify_cobordism_maps(maps);
    if (!chain.passed()) {
        const auto& first = chain.failures.front();
        throw VerificationError(first, first.substr(0, first.find(':')) + " chain map");
    }
    return maps;
}

CobordismMaps compose_maps(const CobordismMaps& first, const CobordismMaps& second)
{
    return {compose(second.to, first.to), compose(second.from, first.from),
            compose(second.bar, first.bar)};
}

CrossOperators identity_cross(const BoundaryFlowData& d)
{
    CrossOperators x;
    for (const auto& p : d.points) {
        switch (p.kind) {
        case PointKind::interior:
            x.m_oo.emplace(p.id, p.id);
            break;
        case PointKind::stable:
            x.bm_ss.emplace(p.id, p.id);
            break;
        case PointKind::unstable:
            x.bm_uu.emplace(p.id, p.id);
            break;
        }
    }
    return x;
}

TopologyNumbers compose(const TopologyNumbers& first, const TopologyNumbers& second)
{
    if (first.b1_out != second.b1_in)
        throw PreconditionError("cannot glue: outgoing b1 " + std::to_string(first.b1_out) +
                                " differs from incoming b1 " + std::to_string(second.b1_in));
    return {first.c1_sq + second.c1_sq, first.chi + second.chi, first.sigma + second.sigma,
            first.b1_in, second.b1_out};
}

std::int64_t iota(const TopologyNumbers& t)
{
    const std::int64_t sum = t.chi + t.sigma + t.b1_in - t.b1_out;
    if (sum % 2 != 0)
        throw PreconditionError("chi + sigma + b1_in - b1_out = " + std::to_string(sum) +
                                " is odd");
    return sum / 2;
}

Rational cobordism_map_degree(const TopologyNumbers& t)
{
    return t.c1_sq / 4 - iota(t) - Rational(t.sigma, 4);
}

Rational absolute_grading(std::int64_t gr_z, const TopologyNumbers& t)
{
    return Rational(-gr_z) + cobordism_map_degree(t);
}

Rational closed_dimension(const Rational& c1_sq, std::int64_t chi, std::int64_t sigma)
{
    return (c1_sq - 2 * chi - 3 * sigma) / 4;
}

} // namespace floer
