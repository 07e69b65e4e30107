#include <doctest.h>

#include <random>

#include "floer/errors.hpp"
#include "floer/finite_models.hpp"
#include "floer/morse_bott.hpp"
#include "support.hpp"

using floer::BitMatrix;
using floer::BottLevel;
using floer::GradedComplex;
using floer::Involution;
using floer::Rational;

namespace {

std::vector<BottLevel> cp2_levels()
{
    return {{0, Rational(0), {1, 0, 1}}, {1, Rational(4), {1}}};
}

/// Cellular CP^2: one cell in each even degree up to 4.
GradedComplex cellular_cp2()
{
    GradedComplex c;
    for (std::int64_t g : {0, 2, 4})
        c.generators.push_back({"e" + std::to_string(g), Rational(g)});
    c.differential = BitMatrix(3, 3);
    return c;
}

/// Two copies of the acyclic complex a -> b, swapped by the involution.
std::pair<GradedComplex, Involution> doubled_acyclic()
{
    GradedComplex c;
    c.generators = {{"a", Rational(1)}, {"b", Rational(0)}, {"a'", Rational(1)}, {"b'", Rational(0)}};
    c.differential = BitMatrix(4, 4);
    c.differential.set(1, 0);
    c.differential.set(3, 2);
    return {c, Involution{{2, 3, 0, 1}}};
}

std::int64_t euler(const floer::GradedDims& dims)
{
    std::int64_t chi = 0;
    for (const auto& [g, n] : dims)
        chi += (g.numerator() % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(n);
    return chi;
}

} // namespace

TEST_CASE("E1 page examples")
{
    CHECK(floer::e1_page(cp2_levels()) == test::dims({{0, 1}, {2, 1}, {4, 1}}));
    CHECK(floer::e1_page({{0, Rational(3), {1}}}) == test::dims({{3, 1}}));
    CHECK(floer::e1_page(floer::gen_pin2_s3(2)) ==
          test::dims({{0, 1}, {1, 1}, {2, 1}, {4, 1}, {5, 1}, {6, 1}}));
    CHECK(floer::e1_page({}).empty());
}

TEST_CASE("E1 page sums the level dimensions")
{
    std::mt19937_64 rng(81);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<BottLevel> levels;
        std::size_t total = 0;
        std::int64_t chi = 0;
        for (std::size_t k = 0; k < 1 + rng() % 5; ++k) {
            BottLevel l{static_cast<std::int64_t>(k), Rational(static_cast<std::int64_t>(rng() % 9) - 4), {}};
            for (std::size_t d = 0; d < 1 + rng() % 4; ++d) {
                l.dims.push_back(rng() % 3);
                total += l.dims.back();
                const auto g = l.offset.numerator() + static_cast<std::int64_t>(d);
                chi += (g % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(l.dims.back());
            }
            levels.push_back(l);
        }
        const auto page = floer::e1_page(levels);
        std::size_t sum = 0;
        for (const auto& [g, n] : page)
            sum += n;
        CHECK(sum == total);
        CHECK(euler(page) == chi);
    }
}

TEST_CASE("lacunary collapse")
{
    const auto cp2 = floer::lacunary_collapse(cp2_levels());
    CHECK(cp2.collapsed);
    CHECK(cp2.homology == test::dims({{0, 1}, {2, 1}, {4, 1}}));
    CHECK(cp2.homology == floer::homology(cellular_cp2()).dims());

    const auto file = floer::lacunary_collapse(floer::levels_from_json(test::load_json("bott/cp2.json")));
    CHECK(file.collapsed);
    CHECK(file.homology == cp2.homology);

    for (std::size_t n = 1; n <= 4; ++n)
        CHECK(floer::lacunary_collapse(floer::gen_pin2_s3(n)).collapsed);

    const auto adjacent = floer::lacunary_collapse({{0, Rational(0), {1}}, {1, Rational(1), {1}}});
    CHECK_FALSE(adjacent.collapsed);
    CHECK(adjacent.refusal.find("level 1") != std::string::npos);

    // The same two points are harmless when the upper one sits lower.
    CHECK(floer::lacunary_collapse({{1, Rational(0), {1}}, {0, Rational(1), {1}}}).collapsed);
}

TEST_CASE("projective levels collapse onto the cellular answer")
{
    const auto levels = floer::projective_bott_levels({2, 1});
    const auto r = floer::lacunary_collapse(levels);
    CHECK(r.collapsed);
    CHECK(r.homology == floer::homology(cellular_cp2()).dims());
}

TEST_CASE("Gysin sequence of the antipodal 2-sphere")
{
    const auto c = floer::antipodal_sphere(2);
    const auto report = floer::gysin_check(c, floer::antipodal_involution(2));
    CHECK(report.exact);
    CHECK(report.failures.empty());
    CHECK(report.h_invariant.dims() == test::dims({{0, 1}, {1, 1}, {2, 1}}));
    CHECK(report.h_total.dims() == test::dims({{0, 1}, {2, 1}}));
    CHECK(report.q.rank_at(Rational(1)) == 1);
    CHECK(report.q.rank_at(Rational(2)) == 1);
}

TEST_CASE("Gysin sequence on small fixtures")
{
    const auto s0 = floer::gysin_check(floer::antipodal_sphere(0), floer::antipodal_involution(0));
    CHECK(s0.exact);
    CHECK(s0.h_invariant.dims() == test::dims({{0, 1}}));

    const auto [c, inv] = doubled_acyclic();
    const auto acyclic = floer::gysin_check(c, inv);
    CHECK(acyclic.exact);
    CHECK(acyclic.h_invariant.dims().empty());
    CHECK(acyclic.h_total.dims().empty());

    CHECK_THROWS_AS(floer::gysin_check(c, Involution{{0, 3, 2, 1}}), floer::PreconditionError);
    CHECK_THROWS_AS(floer::quotient_homology_via_invariants(c, Involution{{0, 1, 2, 3}}),
                    floer::PreconditionError);
}

TEST_CASE("Gysin passes on every antipodal sphere")
{
    for (std::size_t n = 0; n <= 6; ++n) {
        const auto c = floer::antipodal_sphere(n);
        const auto inv = floer::antipodal_involution(n);
        const auto report = floer::gysin_check(c, inv);
        CHECK(report.exact);
        const auto sub = floer::invariant_subcomplex(c, inv);
        CHECK((sub.transfer * sub.inclusion).is_zero());
        floer::GradedDims projective;
        for (std::size_t k = 0; k <= n; ++k)
            projective[Rational(static_cast<std::int64_t>(k))] = 1;
        CHECK(floer::quotient_homology_via_invariants(c, inv).dims() == projective);
    }
}

TEST_CASE("quotient homology from a file")
{
    const auto file = floer::complex_from_json(test::load_json("complexes/s2_antipodal.json"));
    REQUIRE(file.involution.has_value());
    CHECK(floer::quotient_homology_via_invariants(file.complex, *file.involution).dims() ==
          test::dims({{0, 1}, {1, 1}, {2, 1}}));
    CHECK(floer::quotient_homology_via_invariants(floer::antipodal_sphere(1),
                                                  floer::antipodal_involution(1))
              .dims() == test::dims({{0, 1}, {1, 1}}));
}
