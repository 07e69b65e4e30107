// Acceptance run: one pass/fail line per criterion. Exit status is the
// number of failed criteria.

#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "cli.hpp"
#include "floer/boundary_flow.hpp"
#include "floer/cobordism.hpp"
#include "floer/errors.hpp"
#include "floer/finite_models.hpp"
#include "floer/io.hpp"
#include "floer/module_structure.hpp"
#include "floer/morse_bott.hpp"
#include "floer/spectral_flow.hpp"
#include "support.hpp"

using namespace floer;

namespace {

/// Collects named checks; a criterion passes when every check holds.
class Log {
public:
    void check(bool ok, const std::string& what)
    {
        lines_ << (ok ? "ok    " : "FAIL  ") << what << '\n';
        passed_ = passed_ && ok;
    }
    bool passed() const { return passed_; }
    std::string text() const { return lines_.str(); }

private:
    std::ostringstream lines_;
    bool passed_ = true;
};

struct Criterion {
    int number;
    std::string title;
    std::function<void(Log&)> run;
};

std::vector<BoundaryFlowData> datasets()
{
    std::vector<BoundaryFlowData> out;
    for (const auto& entry : std::filesystem::directory_iterator(test::data_path("flows")))
        out.push_back(flow_from_json(
            test::load_json("flows/" + entry.path().filename().string())));
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.name < b.name; });
    out.push_back(gen_interval());
    out.push_back(gen_hemisphere());
    out.push_back(gen_disk4());
    out.push_back(gen_blowup_model({{-2.0, -1.0, 1.0, 3.0}}));
    out.push_back(gen_blowup_model({{-0.5, 0.25, 4.0}}, 2));
    for (std::size_t n = 1; n <= 6; ++n)
        out.push_back(gen_s3_tower(n, n));
    return out;
}

GradedDims dims_of(const BoundaryFlowData& d, Flavor f)
{
    return homology(assemble(d, f)).dims();
}

std::string show(const GradedDims& dims) { return describe(dims); }

GradedDims reflect(const GradedDims& dims, std::int64_t b1)
{
    GradedDims out;
    for (const auto& [g, n] : dims)
        out[Rational(-1 - b1) - g] = n;
    return out;
}

GradedDims projective(std::size_t n)
{
    GradedDims out;
    for (std::size_t k = 0; k <= n; ++k)
        out[Rational(static_cast<std::int64_t>(k))] = 1;
    return out;
}

void validator_suite(Log& log)
{
    for (const auto& d : datasets()) {
        const Report r = validate_flow(d);
        log.check(r.passed(), "validates: " + d.name);
    }
    for (const auto& entry : std::filesystem::directory_iterator(test::data_path("mutations"))) {
        const auto name = entry.path().filename().string();
        const Report r = validate_flow(flow_from_json(test::load_json("mutations/" + name)));
        log.check(!r.passed(), "mutation rejected: " + name);
    }
}

void singular_oracles(Log& log)
{
    const auto interval = gen_interval();
    log.check(dims_of(interval, Flavor::to) == test::dims({{0, 1}}), "interval to = 1@0");
    log.check(dims_of(interval, Flavor::from) == test::dims({{1, 1}}), "interval from = 1@1");
    log.check(dims_of(interval, Flavor::bar) == test::dims({{0, 2}}), "interval bar = 2@0");
    for (const auto& d : {gen_hemisphere(), gen_disk4()}) {
        log.check(dims_of(d, Flavor::to) == test::dims({{0, 1}}), d.name + " to = 1@0");
        log.check(dims_of(d, Flavor::from) == test::dims({{2, 1}}), d.name + " from = 1@2");
        log.check(dims_of(d, Flavor::bar) == test::dims({{0, 1}, {1, 1}}),
                  d.name + " bar = 1@0 + 1@1");
    }
}

void exact_triangle(Log& log)
{
    for (const auto& d : datasets()) {
        const Triangle t = triangle_maps(d);
        log.check(t.exact(), "triangle exact: " + d.name);
    }
}

void s3_reproduction(Log& log)
{
    for (std::size_t n = 1; n <= 6; ++n) {
        const auto d = gen_s3_tower(n, n);
        const std::string tag = "N=" + std::to_string(n) + ": ";
        GradedDims to, from;
        for (std::size_t k = 0; k < n; ++k) {
            to[Rational(2 * static_cast<std::int64_t>(k))] = 1;
            from[Rational(-1 - 2 * static_cast<std::int64_t>(k))] = 1;
        }
        log.check(dims_of(d, Flavor::to) == to, tag + "to tower " + show(to));
        log.check(dims_of(d, Flavor::from) == from, tag + "from tower top at -1");
        GradedDims both = to;
        for (const auto& [g, k] : from)
            both[g - 1] = k;
        log.check(dims_of(d, Flavor::bar) == both, tag + "bar = to + from shifted by -1");

        const auto cap = assemble_cobordism_maps(d, d, *d.u_cap);
        const auto s0 = cap.bar.source.index_of("s0");
        const auto u0 = cap.bar.target.index_of("u0");
        log.check(cap.bar.matrix.get(u0, s0), tag + "U sends s0 to the bridge u0");
        const UModule m = build_umodule(d);
        log.check(verify_u_tower(m).passed(), tag + "U shifts rungs by -2");
        log.check(froyshov(m) == 0, tag + "h = 0");
    }
}

void duality(Log& log)
{
    for (const auto& d : datasets()) {
        const auto dual = dualize_flow(d);
        log.check(dims_of(dual, Flavor::to) == reflect(dims_of(d, Flavor::from), d.b1) &&
                      dims_of(dual, Flavor::from) == reflect(dims_of(d, Flavor::to), d.b1),
                  "to/from exchanged: " + d.name);
        log.check(flow_to_json(dualize_flow(dual)).dump() == flow_to_json(d).dump(),
                  "double dual is the identity: " + d.name);
    }
}

HermitianPath sampled(double a, double b, std::size_t n,
                      const std::function<Eigen::MatrixXcd(double)>& f)
{
    HermitianPath p;
    for (std::size_t k = 0; k <= n; ++k) {
        const double t = a + (b - a) * static_cast<double>(k) / static_cast<double>(n);
        p.t.push_back(t);
        p.samples.push_back(f(t));
    }
    return p;
}

void spectral(Log& log)
{
    using Eigen::MatrixXcd;
    const auto diag = sampled(-1, 1, 4, [](double t) {
        MatrixXcd m(1, 1);
        m(0, 0) = t;
        return m;
    });
    log.check(spectral_flow(diag).flow == 1, "diag(t) on [-1,1] has flow 1");
    const auto constant = sampled(-1, 1, 4, [](double) {
        MatrixXcd m = MatrixXcd::Zero(2, 2);
        m(0, 0) = 1;
        m(1, 1) = -2;
        return m;
    });
    log.check(spectral_flow(constant).flow == 0, "constant invertible path has flow 0");
    const auto avoided = sampled(-1, 1, 8, [](double t) {
        MatrixXcd m(2, 2);
        m << t, 0.1, 0.1, -t;
        return m;
    });
    log.check(spectral_flow(avoided).flow == 0, "avoided crossing has flow 0");

    std::mt19937_64 rng(1201);
    int zero_loops = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto base = test::random_invertible(rng, 1 + trial % 4);
        zero_loops += loop_flow_check(test::random_path(rng, base, base, 2 + trial % 4)).flow == 0;
    }
    log.check(zero_loops == 100, std::to_string(zero_loops) + "/100 random loops have flow 0");

    int additive = 0;
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index n = 1 + trial % 3;
        const auto a = test::random_invertible(rng, n);
        const auto b = test::random_invertible(rng, n);
        const auto c = test::random_invertible(rng, n);
        const auto p1 = test::random_path(rng, a, b, 1 + trial % 3);
        const auto p2 = test::random_path(rng, b, c, 1 + trial % 2);
        additive += spectral_flow(concatenate(p1, p2)).flow ==
                    spectral_flow(p1).flow + spectral_flow(p2).flow;
    }
    log.check(additive == 50, std::to_string(additive) + "/50 concatenations are additive");
}

void grading_formulas(Log& log)
{
    std::mt19937_64 rng(1202);
    std::uniform_int_distribution<std::int64_t> small(-12, 12);
    auto random_numbers = [&](std::int64_t b1_in) {
        TopologyNumbers t;
        t.c1_sq = Rational(small(rng), 1 + static_cast<std::int64_t>(rng() % 4));
        t.b1_in = b1_in;
        t.b1_out = static_cast<std::int64_t>(rng() % 3);
        t.sigma = small(rng);
        t.chi = small(rng);
        if ((t.chi + t.sigma + t.b1_in - t.b1_out) % 2 != 0)
            ++t.chi;
        return t;
    };
    int additive = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const auto t1 = random_numbers(static_cast<std::int64_t>(rng() % 3));
        const auto t2 = random_numbers(t1.b1_out);
        additive += iota(compose(t1, t2)) == iota(t1) + iota(t2);
    }
    log.check(additive == 100, std::to_string(additive) + "/100 compositions add iota");
    log.check(closed_dimension(Rational(0), 2, 0) == -1, "closed dimension of S4 = -1");
    log.check(closed_dimension(Rational(0), 24, -16) == 0, "closed dimension of K3 = 0");
    log.check(closed_dimension(Rational(9), 3, 1) == 0, "closed dimension of CP2 = 0");
    const TopologyNumbers e8{Rational(0), 8, -8, 0, 0};
    log.check(cobordism_map_degree(e8) == 2, "degree of the b2 = 8 definite fixture = 2");
    log.check(cobordism_map_degree(e8) == Rational(8 - 0, 4), "degree = (b2 - c1^2)/4");
}

void rho_checks(Log& log)
{
    const auto minus_one = form_from_json(test::load_json("forms/minus_one.json"));
    log.check(rho(minus_one).rho == 0, "rho(<-1>) = 0");
    for (std::size_t n = 1; n <= 8; ++n) {
        QuadraticForm q;
        q.entries.assign(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            q.entries[i][i] = -1;
        log.check(rho(q).rho == 0, "rho(-I" + std::to_string(n) + ") = 0");
    }
    const auto e8 = rho(form_from_json(test::load_json("forms/minus_e8.json"))).rho;
    log.check(e8 == 1, "rho(-E8) = 1");
    const Rational h_s3 = froyshov(build_umodule(gen_s3_tower(3, 3)));
    log.check(check_froyshov_inequality(h_s3, Rational(-1), e8) &&
                  !check_froyshov_inequality(h_s3, Rational(0), e8),
              "h(S3) = 0 >= h + 1 forces h <= -1 for the -E8-bounded fixture");
}

void pin2_layer(Log& log)
{
    log.check(lacunary_collapse(gen_pin2_s3(3)).collapsed, "Pin(2) E1 page collapses");
    const auto t = r_tower_decompose(pin2_s3_rmodule(3));
    log.check(t.a == 0 && t.b == 1 && t.c == 2, "tower bottoms (0,1,2)");
    const auto terms = correction_terms(t.a, t.b, t.c);
    const CorrectionTerms zero{Rational(0), Rational(0), Rational(0)};
    log.check(terms == zero, "correction terms (0,0,0)");
    const CorrectionTerms sample{Rational(2), Rational(1), Rational(0)};
    log.check(duality_terms(duality_terms(sample)) == sample && duality_terms(terms) == terms,
              "duality of terms is an involution");
    log.check(rokhlin_lift_check(terms, 0), "Rokhlin lift with bit 0");
    const auto verdict = order_two_argument(0, 0);
    log.check(verdict.consistent && verdict.rokhlin == 0, "order-two argument gives Rokhlin 0");
}

void morse_bott(Log& log)
{
    const std::vector<BottLevel> cp2 = {{0, Rational(0), {1, 0, 1}}, {1, Rational(4), {1}}};
    const auto r = lacunary_collapse(cp2);
    log.check(r.collapsed && r.homology == test::dims({{0, 1}, {2, 1}, {4, 1}}),
              "CP2 collapses to F@{0,2,4}");
    const auto file = lacunary_collapse(levels_from_json(test::load_json("bott/cp2.json")));
    log.check(file.collapsed && file.homology == r.homology, "CP2 level file agrees");

    const auto s2 = complex_from_json(test::load_json("complexes/s2_antipodal.json"));
    log.check(quotient_homology_via_invariants(s2.complex, *s2.involution).dims() ==
                  test::dims({{0, 1}, {1, 1}, {2, 1}}),
              "S2 antipodal invariants (1,1,1)");
    log.check(gysin_check(s2.complex, *s2.involution).exact, "Gysin exact: s2_antipodal.json");
    for (std::size_t n = 0; n <= 4; ++n) {
        const auto c = antipodal_sphere(n);
        const auto inv = antipodal_involution(n);
        const auto g = gysin_check(c, inv);
        log.check(g.exact && g.h_invariant.dims() == projective(n),
                  "Gysin exact: antipodal S" + std::to_string(n));
    }
}

void cobordism_algebra(Log& log)
{
    for (const auto& d : datasets()) {
        const auto maps = assemble_cobordism_maps(d, d, identity_cross(d));
        bool identity = true;
        for (const ChainMap* f : {&maps.to, &maps.from, &maps.bar}) {
            const auto induced = induced_map(*f);
            for (const auto& [g, n] : homology(f->source).dims())
                identity = identity && induced.block(g) == BitMatrix::identity(n);
        }
        log.check(identity, "identity counts induce the identity: " + d.name);
    }

    const auto d = gen_s3_tower(4, 4);
    const auto u = assemble_cobordism_maps(d, d, *d.u_cap);
    const auto u2 = compose_maps(u, u);
    const auto once = induced_map(u.to);
    const auto twice = induced_map(u2.to);
    bool squared = u2.to.degree == -4 && twice.total_rank() == 2;
    for (const auto& [g, n] : twice.source)
        squared = squared && twice.block(g) == once.block(g - 2) * once.block(g);
    log.check(squared, "U-cap after U-cap is the U^2 shift on the (4,4) tower");

    std::mt19937_64 rng(1203);
    const std::vector<BoundaryFlowData> pool = {gen_disk4(), gen_interval(), gen_s3_tower(2, 2),
                                                gen_hemisphere()};
    int consistent = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const auto& src = pool[rng() % pool.size()];
        const auto& dst = pool[rng() % pool.size()];
        CrossOperators x;
        x.degree = Rational(static_cast<std::int64_t>(rng() % 5) - 2);
        for (auto name : CrossOperators::names)
            for (const auto& a : src.points)
                for (const auto& b : dst.points)
                    if (kind_code(a.kind) == name[name.size() - 2] &&
                        kind_code(b.kind) == name.back() && rng() % 3 == 0)
                        x.get(name).emplace(a.id, b.id);
        try {
            consistent += verify_cobordism_maps(assemble_cobordism_maps(src, dst, x)).passed();
        } catch (const VerificationError&) {
            ++consistent;
        }
    }
    log.check(consistent == 200,
              std::to_string(consistent) + "/200 random cross counts verify or abort");
}

const std::vector<Criterion>& criteria()
{
    static const std::vector<Criterion> list = {
        {1, "validator suite", validator_suite},
        {2, "singular homology oracles", singular_oracles},
        {3, "exact triangle", exact_triangle},
        {4, "S3 towers", s3_reproduction},
        {5, "duality", duality},
        {6, "spectral flow", spectral},
        {7, "grading formulas", grading_formulas},
        {8, "rho", rho_checks},
        {9, "Pin(2) layer", pin2_layer},
        {10, "Morse-Bott oracles", morse_bott},
        {11, "cobordism algebra", cobordism_algebra},
    };
    return list;
}

struct Outcome {
    bool passed;
    std::string detail;
};

Outcome evaluate(const Criterion& c)
{
    Log log;
    try {
        c.run(log);
    } catch (const std::exception& e) {
        log.check(false, std::string("exception: ") + e.what());
    }
    return {log.passed(), log.text()};
}

/// Reports of the CLI on every shipped input, concatenated.
std::string cli_transcript()
{
    std::vector<std::vector<std::string>> commands;
    for (const char* flow : {"interval", "hemisphere", "disk4", "hermitian", "s3_tower",
                             "boundary_obstructed"}) {
        const std::string path = test::data_path(std::string("flows/") + flow + ".json");
        commands.push_back({"validate", path});
        commands.push_back({"triangle", path});
        commands.push_back({"dual", path});
    }
    commands.push_back({"froyshov", test::data_path("flows/s3_tower.json")});
    commands.push_back({"rho", test::data_path("forms/minus_e8.json")});
    commands.push_back({"correction-terms", test::data_path("rmodules/pin2_s3.json")});
    commands.push_back({"spectral-flow", test::data_path("paths/avoided_crossing.json")});
    commands.push_back({"bott", "gysin", test::data_path("complexes/s2_antipodal.json")});
    commands.push_back({"model", "pin2-s3", "--levels", "3"});
    std::ostringstream all;
    for (const auto& args : commands) {
        std::istringstream in;
        std::ostringstream out, err;
        const int code = cli::dispatch(args, in, out, err);
        all << code << '\n' << out.str() << err.str();
    }
    return all.str();
}

} // namespace

int main(int argc, char** argv)
{
    const bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    int failed = 0;
    std::ostringstream first_run;
    auto report = [&](int number, const std::string& title, const Outcome& o) {
        std::cout << "criterion " << (number < 10 ? " " : "") << number << ": "
                  << (o.passed ? "pass" : "FAIL") << "  " << title << '\n';
        if (!o.passed || verbose) {
            std::istringstream lines(o.detail);
            for (std::string line; std::getline(lines, line);)
                if (verbose || line.rfind("FAIL", 0) == 0)
                    std::cout << "    " << line << '\n';
        }
        failed += !o.passed;
    };

    for (const auto& c : criteria()) {
        const Outcome o = evaluate(c);
        first_run << c.number << (o.passed ? " pass\n" : " fail\n") << o.detail;
        report(c.number, c.title, o);
    }

    std::ostringstream second_run;
    for (const auto& c : criteria()) {
        const Outcome o = evaluate(c);
        second_run << c.number << (o.passed ? " pass\n" : " fail\n") << o.detail;
    }
    const std::string cli_a = cli_transcript();
    const std::string cli_b = cli_transcript();
    Log determinism;
    determinism.check(first_run.str() == second_run.str(),
                      "suite reports identical (" + std::to_string(first_run.str().size()) +
                          " bytes)");
    determinism.check(cli_a == cli_b,
                      "CLI reports identical (" + std::to_string(cli_a.size()) + " bytes)");
    report(12, "determinism", {determinism.passed(), determinism.text()});

    std::cout << (12 - failed) << "/12 criteria passed\n";
    return failed;
}
