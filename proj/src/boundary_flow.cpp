#include "floer/boundary_flow.hpp"

#include <map>

#include "floer/cobordism.hpp"
#include "floer/errors.hpp"

namespace floer {

char kind_code(PointKind k)
{
    switch (k) {
    case PointKind::interior:
        return 'o';
    case PointKind::stable:
        return 's';
    case PointKind::unstable:
        return 'u';
    }
    return '?';
}

PointKind kind_from_code(char c)
{
    switch (c) {
    case 'o':
        return PointKind::interior;
    case 's':
        return PointKind::stable;
    case 'u':
        return PointKind::unstable;
    default:
        throw PreconditionError(std::string("unknown critical point kind '") + c + "'");
    }
}

namespace {

struct Issue {
    std::string identity;
    std::string message;
};

} // namespace

CountOperator& FlowOperators::get(std::string_view name)
{
    CountOperator* all[] = {&d_oo, &d_os, &d_uo, &d_us, &bd_ss, &bd_uu, &bd_us, &bd_su};
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name)
            return *all[k];
    throw PreconditionError("unknown flow operator '" + std::string(name) + "'");
}

const CountOperator& FlowOperators::get(std::string_view name) const
{
    return const_cast<FlowOperators*>(this)->get(name);
}

CountOperator& CrossOperators::get(std::string_view name)
{
    CountOperator* all[] = {&m_oo, &m_os, &m_uo, &m_us, &bm_ss, &bm_su, &bm_us, &bm_uu};
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name)
            return *all[k];
    throw PreconditionError("unknown cross operator '" + std::string(name) + "'");
}

const CountOperator& CrossOperators::get(std::string_view name) const
{
    return const_cast<CrossOperators*>(this)->get(name);
}

const CriticalPoint& BoundaryFlowData::point(const std::string& id) const
{
    for (const auto& p : points)
        if (p.id == id)
            return p;
    throw PreconditionError("unknown critical point '" + id + "'");
}

// ---------------------------------------------------------------- blocks

namespace {

struct Slot {
    PointKind kind;
    std::size_t local;
};

std::map<std::string, Slot> slots(const BoundaryFlowData& d)
{
    std::map<std::string, Slot> out;
    std::size_t counts[3] = {0, 0, 0};
    for (const auto& p : d.points) {
        auto& n = counts[static_cast<int>(p.kind)];
        if (!out.emplace(p.id, Slot{p.kind, n}).second)
            throw PreconditionError("duplicate critical point id '" + p.id + "'");
        ++n;
    }
    return out;
}

std::size_t count_kind(const BoundaryFlowData& d, PointKind k)
{
    std::size_t n = 0;
    for (const auto& p : d.points)
        n += p.kind == k;
    return n;
}

const Slot& resolve(const std::map<std::string, Slot>& table, const std::string& id,
                    PointKind expected, std::string_view op, const char* role)
{
    auto it = table.find(id);
    if (it == table.end())
        throw PreconditionError(std::string(op) + ": unknown " + role + " point '" + id + "'");
    if (it->second.kind != expected)
        throw PreconditionError(std::string(op) + ": " + role + " point '" + id + "' has kind '" +
                                kind_code(it->second.kind) + "', expected '" +
                                kind_code(expected) + "'");
    return it->second;
}

BitMatrix count_matrix(const CountOperator& op, std::string_view name,
                       const std::map<std::string, Slot>& from_table, std::size_t from_count,
                       PointKind from, const std::map<std::string, Slot>& to_table,
                       std::size_t to_count, PointKind to)
{
    BitMatrix m(to_count, from_count);
    for (const auto& [src, dst] : op) {
        const auto& a = resolve(from_table, src, from, name, "source");
        const auto& b = resolve(to_table, dst, to, name, "target");
        m.flip(b.local, a.local);
    }
    return m;
}

std::vector<std::size_t> indices_of(const BoundaryFlowData& d, PointKind k)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < d.points.size(); ++i)
        if (d.points[i].kind == k)
            out.push_back(i);
    return out;
}

constexpr PointKind O = PointKind::interior;
constexpr PointKind S = PointKind::stable;
constexpr PointKind U = PointKind::unstable;

struct OpShape {
    std::string_view name;
    PointKind from, to;
    int drop;
};

constexpr OpShape kFlowShapes[] = {
    {"d_oo", O, O, 1},  {"d_os", O, S, 1},  {"d_uo", U, O, 1},  {"d_us", U, S, 1},
    {"bd_ss", S, S, 1}, {"bd_uu", U, U, 1}, {"bd_us", U, S, 2}, {"bd_su", S, U, 0},
};

} // namespace

FlowBlocks flow_blocks(const BoundaryFlowData& d)
{
    const auto table = slots(d);
    const std::size_t n[3] = {count_kind(d, O), count_kind(d, S), count_kind(d, U)};
    auto make = [&](const OpShape& shape) {
        return count_matrix(d.ops.get(shape.name), shape.name, table,
                            n[static_cast<int>(shape.from)], shape.from, table,
                            n[static_cast<int>(shape.to)], shape.to);
    };
    FlowBlocks b;
    b.o = indices_of(d, O);
    b.s = indices_of(d, S);
    b.u = indices_of(d, U);
    b.d_oo = make(kFlowShapes[0]);
    b.d_os = make(kFlowShapes[1]);
    b.d_uo = make(kFlowShapes[2]);
    b.d_us = make(kFlowShapes[3]);
    b.bd_ss = make(kFlowShapes[4]);
    b.bd_uu = make(kFlowShapes[5]);
    b.bd_us = make(kFlowShapes[6]);
    b.bd_su = make(kFlowShapes[7]);
    return b;
}

CrossBlocks cross_blocks(const BoundaryFlowData& src, const BoundaryFlowData& dst,
                         const CrossOperators& x)
{
    const auto from_table = slots(src);
    const auto to_table = slots(dst);
    const std::size_t ns[3] = {count_kind(src, O), count_kind(src, S), count_kind(src, U)};
    const std::size_t nd[3] = {count_kind(dst, O), count_kind(dst, S), count_kind(dst, U)};
    auto make = [&](std::string_view name, PointKind from, PointKind to) {
        return count_matrix(x.get(name), name, from_table, ns[static_cast<int>(from)], from,
                            to_table, nd[static_cast<int>(to)], to);
    };
    CrossBlocks b;
    b.m_oo = make("m_oo", O, O);
    b.m_os = make("m_os", O, S);
    b.m_uo = make("m_uo", U, O);
    b.m_us = make("m_us", U, S);
    b.bm_ss = make("bm_ss", S, S);
    b.bm_su = make("bm_su", S, U);
    b.bm_us = make("bm_us", U, S);
    b.bm_uu = make("bm_uu", U, U);
    return b;
}

BitMatrix block2x2(const BitMatrix& a, const BitMatrix& b, const BitMatrix& c,
                   const BitMatrix& d)
{
    if (a.rows() != b.rows() || c.rows() != d.rows() || a.cols() != c.cols() ||
        b.cols() != d.cols())
        throw DimensionError("block shapes do not fit together");
    BitMatrix m(a.rows() + c.rows(), a.cols() + b.cols());
    auto put = [&m](const BitMatrix& block, std::size_t r0, std::size_t c0) {
        for (auto [i, j] : block.nonzeros())
            m.set(r0 + i, c0 + j);
    };
    put(a, 0, 0);
    put(b, 0, a.cols());
    put(c, a.rows(), 0);
    put(d, a.rows(), a.cols());
    return m;
}

// ---------------------------------------------------------------- validation

const std::array<std::string_view, 8> kFlowIdentities = {
    "osuo", "o->s", "u->o", "u->s", "bar s->s", "bar s->u", "bar u->s", "bar u->u"};

namespace {

std::vector<Issue> count_issues(const BoundaryFlowData& d)
{
    std::vector<Issue> issues;
    try {
        d.scheme.check();
        for (const auto& p : d.points)
            d.scheme.check_value(p.grading);
    } catch (const PreconditionError& e) {
        issues.push_back({"grading", e.what()});
        return issues;
    }
    if (d.b1 < 0)
        issues.push_back({"b1", "first Betti number must be nonnegative"});

    FlowBlocks b;
    try {
        b = flow_blocks(d);
    } catch (const PreconditionError& e) {
        issues.push_back({"ids", e.what()});
        return issues;
    }

    for (const auto& shape : kFlowShapes) {
        for (const auto& [src, dst] : d.ops.get(shape.name)) {
            const auto& a = d.point(src);
            const auto& z = d.point(dst);
            if (!d.scheme.same(z.grading, a.grading - shape.drop))
                issues.push_back({"degree " + std::string(shape.name),
                                  "degree violation in " + std::string(shape.name) + ": " + src +
                                      " (" + to_string(a.grading) + ") -> " + dst + " (" +
                                      to_string(z.grading) + "), expected drop " +
                                      std::to_string(shape.drop)});
        }
    }

    const BitMatrix identities[8] = {
        b.d_oo * b.d_oo + b.d_uo * b.bd_su * b.d_os,
        b.d_os * b.d_oo + b.bd_ss * b.d_os + b.d_us * b.bd_su * b.d_os,
        b.d_oo * b.d_uo + b.d_uo * b.bd_uu + b.d_uo * b.bd_su * b.d_us,
        b.d_os * b.d_uo + b.bd_ss * b.d_us + b.d_us * b.bd_uu + b.bd_us +
            b.d_us * b.bd_su * b.d_us,
        b.bd_ss * b.bd_ss + b.bd_us * b.bd_su,
        b.bd_su * b.bd_ss + b.bd_uu * b.bd_su,
        b.bd_ss * b.bd_us + b.bd_us * b.bd_uu,
        b.bd_su * b.bd_us + b.bd_uu * b.bd_uu,
    };
    const std::vector<std::size_t>* sources[8] = {&b.o, &b.o, &b.u, &b.u,
                                                  &b.s, &b.s, &b.u, &b.u};
    const std::vector<std::size_t>* targets[8] = {&b.o, &b.s, &b.o, &b.s,
                                                  &b.s, &b.u, &b.s, &b.u};
    for (std::size_t k = 0; k < 8; ++k) {
        for (auto [i, j] : identities[k].nonzeros())
            issues.push_back({std::string(kFlowIdentities[k]),
                              "identity " + std::string(kFlowIdentities[k]) + " fails: " +
                                  d.points[(*sources[k])[j]].id + " -> " +
                                  d.points[(*targets[k])[i]].id});
    }
    return issues;
}

GradedComplex build(const BoundaryFlowData& d, Flavor f)
{
    const FlowBlocks b = flow_blocks(d);
    GradedComplex c;
    c.scheme = d.scheme;
    auto add = [&](const std::vector<std::size_t>& ids, int shift) {
        for (auto k : ids)
            c.generators.push_back(
                {d.points[k].id, d.scheme.normalize(d.points[k].grading + shift)});
    };
    switch (f) {
    case Flavor::to:
        add(b.o, 0);
        add(b.s, 0);
        c.differential = block2x2(b.d_oo, b.d_uo * b.bd_su, b.d_os, b.bd_ss + b.d_us * b.bd_su);
        break;
    case Flavor::from:
        add(b.o, 0);
        add(b.u, 0);
        c.differential = block2x2(b.d_oo, b.d_uo, b.bd_su * b.d_os, b.bd_uu + b.bd_su * b.d_us);
        break;
    case Flavor::bar:
        add(b.s, 0);
        add(b.u, -1);
        c.differential = block2x2(b.bd_ss, b.bd_us, b.bd_su, b.bd_uu);
        break;
    }
    return c;
}

void require_valid(const BoundaryFlowData& d)
{
    const auto issues = count_issues(d);
    if (!issues.empty())
        throw VerificationError(d.name + ": " + issues.front().message, issues.front().identity);
}

} // namespace

Report validate_flow(const BoundaryFlowData& d)
{
    Report report;
    const auto issues = count_issues(d);
    for (const auto& issue : issues)
        report.fail(issue.message);
    if (!report.passed())
        return report;

    for (Flavor f : {Flavor::to, Flavor::from, Flavor::bar})
        report.merge(validate(build(d, f)), std::string(flavor_name(f)) + ": ");

    if (d.u_cap) {
        Report cap;
        try {
            cap.merge(check_cross_degrees(d, d, *d.u_cap));
            if (cap.passed())
                cap.merge(verify_cobordism_maps(assemble_cobordism_maps_unchecked(d, d, *d.u_cap)));
        } catch (const Error& e) {
            cap.fail(e.what());
        }
        report.merge(cap, "u_cap: ");
    }
    return report;
}

GradedComplex assemble(const BoundaryFlowData& d, Flavor f, bool check)
{
    if (check)
        require_valid(d);
    return build(d, f);
}

GradedComplex assemble_to(const BoundaryFlowData& d, bool check)
{
    return assemble(d, Flavor::to, check);
}

GradedComplex assemble_from(const BoundaryFlowData& d, bool check)
{
    return assemble(d, Flavor::from, check);
}

GradedComplex assemble_bar(const BoundaryFlowData& d, bool check)
{
    return assemble(d, Flavor::bar, check);
}

Flavor flavor_from_name(std::string_view name)
{
    if (name == "to")
        return Flavor::to;
    if (name == "from")
        return Flavor::from;
    if (name == "bar")
        return Flavor::bar;
    throw PreconditionError("unknown flavor '" + std::string(name) + "' (expected to|from|bar)");
}

std::string_view flavor_name(Flavor f)
{
    switch (f) {
    case Flavor::to:
        return "to";
    case Flavor::from:
        return "from";
    case Flavor::bar:
        return "bar";
    }
    return "?";
}

// ---------------------------------------------------------------- triangle

bool Triangle::exact() const
{
    for (const auto& e : exactness)
        if (!e.exact)
            return false;
    return true;
}

Triangle triangle_maps(const BoundaryFlowData& d)
{
    require_valid(d);
    const FlowBlocks b = flow_blocks(d);
    const std::size_t no = b.o.size(), ns = b.s.size(), nu = b.u.size();

    Triangle t;
    t.to = build(d, Flavor::to);
    t.from = build(d, Flavor::from);
    t.bar = build(d, Flavor::bar);

    t.i = {t.bar, t.to,
           block2x2(BitMatrix::zero(no, ns), b.d_uo, BitMatrix::identity(ns), b.d_us), 0};
    t.j = {t.to, t.from,
           block2x2(BitMatrix::identity(no), BitMatrix::zero(no, ns), BitMatrix::zero(nu, no),
                    b.bd_su),
           0};
    t.p = {t.from, t.bar,
           block2x2(b.d_os, b.d_us, BitMatrix::zero(nu, no), BitMatrix::identity(nu)), -1};

    const std::pair<const ChainMap*, const char*> maps[] = {{&t.i, "i"}, {&t.j, "j"}, {&t.p, "p"}};
    for (auto [map, label] : maps) {
        const Report r = validate(*map);
        if (!r.passed())
            throw VerificationError(d.name + ": " + label + ": " + r.failures.front(),
                                    std::string(label) + " is a chain map");
    }

    t.h_to = homology(t.to);
    t.h_from = homology(t.from);
    t.h_bar = homology(t.bar);
    t.i_star = induced_map(t.i, t.h_bar, t.h_to);
    t.j_star = induced_map(t.j, t.h_to, t.h_from);
    t.p_star = induced_map(t.p, t.h_from, t.h_bar);

    const std::vector<GradedLinearMap> seq = {t.i_star, t.j_star, t.p_star, t.i_star};
    const char* terms[] = {"to", "from", "bar"};
    for (std::size_t k = 0; k < 3; ++k) {
        t.exactness[k] = check_exact(seq, k + 1);
        if (!t.exactness[k].exact)
            throw VerificationError(d.name + ": not exact at the " + terms[k] + " term: " +
                                        t.exactness[k].failures.front(),
                                    std::string("exact at ") + terms[k]);
    }
    return t;
}

// ---------------------------------------------------------------- duality

namespace {

CountOperator transposed(const CountOperator& op)
{
    CountOperator out;
    for (const auto& [a, b] : op)
        out.emplace(b, a);
    return out;
}

std::string toggle_dual_name(const std::string& name)
{
    static const std::string suffix = "-dual";
    if (name.size() >= suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name + suffix;
}

} // namespace

BoundaryFlowData dualize_flow(const BoundaryFlowData& d)
{
    BoundaryFlowData out;
    out.name = toggle_dual_name(d.name);
    out.scheme = d.scheme;
    out.b1 = d.b1;
    for (const auto& p : d.points) {
        PointKind kind = p.kind;
        if (kind == PointKind::stable)
            kind = PointKind::unstable;
        else if (kind == PointKind::unstable)
            kind = PointKind::stable;
        out.points.push_back({p.id, kind, d.scheme.normalize(Rational(-1 - d.b1) - p.grading)});
    }
    out.ops.d_oo = transposed(d.ops.d_oo);
    out.ops.d_uo = transposed(d.ops.d_os);
    out.ops.d_os = transposed(d.ops.d_uo);
    out.ops.d_us = transposed(d.ops.d_us);
    out.ops.bd_ss = transposed(d.ops.bd_uu);
    out.ops.bd_uu = transposed(d.ops.bd_ss);
    out.ops.bd_us = transposed(d.ops.bd_us);
    out.ops.bd_su = transposed(d.ops.bd_su);
    if (d.u_cap) {
        const auto& x = *d.u_cap;
        CrossOperators y;
        y.degree = x.degree;
        y.m_oo = transposed(x.m_oo);
        y.m_uo = transposed(x.m_os);
        y.m_os = transposed(x.m_uo);
        y.m_us = transposed(x.m_us);
        y.bm_ss = transposed(x.bm_uu);
        y.bm_uu = transposed(x.bm_ss);
        y.bm_su = transposed(x.bm_su);
        y.bm_us = transposed(x.bm_us);
        out.u_cap = std::move(y);
    }

    const auto issues = count_issues(out);
    for (const auto& issue : issues)
        if (issue.identity.rfind("degree", 0) == 0)
            throw VerificationError("dual of " + d.name + ": " + issue.message, issue.identity);
    return out;
}

} // namespace floer
