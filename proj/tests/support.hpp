#pragma once

// Shared fixtures and brute-force oracles for the test suites. The oracles
// enumerate vectors instead of eliminating, so they share no code path with
// the library routines they check.

#include <cstdint>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

#include "floer/gf2.hpp"
#include "floer/graded_complex.hpp"
#include "floer/io.hpp"
#include "floer/spectral_flow.hpp"

namespace test {

inline std::string data_path(const std::string& relative)
{
    return std::string(FLOER_DATA_DIR) + "/" + relative;
}

inline floer::Json load_json(const std::string& relative)
{
    std::ifstream in(data_path(relative));
    std::stringstream text;
    text << in.rdbuf();
    return floer::parse_json(text.str());
}

inline floer::BitMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols,
                                      double density = 0.5,
                                      floer::BitMatrix::Layout layout =
                                          floer::BitMatrix::Layout::automatic)
{
    std::bernoulli_distribution bit(density);
    floer::BitMatrix m(rows, cols, layout);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            if (bit(rng))
                m.set(i, j);
    return m;
}

/// Rank as log2 of the size of the column span, grown by enumeration.
inline std::size_t brute_rank(const floer::BitMatrix& m)
{
    std::set<std::string> span{floer::BitVector(m.rows()).to_string()};
    std::size_t r = 0;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        const floer::BitVector c = m.column(j);
        if (span.count(c.to_string()))
            continue;
        std::set<std::string> grown = span;
        for (const auto& s : span) {
            floer::BitVector v(m.rows());
            for (std::size_t k = 0; k < s.size(); ++k)
                v.set(k, s[k] == '1');
            grown.insert((v ^ c).to_string());
        }
        span = std::move(grown);
        ++r;
    }
    return r;
}

/// Kernel dimension by counting every x with m x = 0.
inline std::size_t brute_nullity(const floer::BitMatrix& m)
{
    std::size_t zeros = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m.cols()); ++mask) {
        floer::BitVector x(m.cols());
        for (std::size_t k = 0; k < m.cols(); ++k)
            x.set(k, (mask >> k) & 1U);
        zeros += (m * x).none();
    }
    std::size_t d = 0;
    while ((std::size_t{1} << d) < zeros)
        ++d;
    return d;
}

/// Homology dims from enumerated cycles and enumerated boundaries.
inline floer::GradedDims brute_homology(const floer::GradedComplex& c)
{
    floer::GradedDims out;
    for (const auto& g : c.gradings()) {
        const auto here = c.indices_at(g);
        const auto below = c.indices_at(g + c.degree);
        const auto above = c.indices_at(g - c.degree);
        const std::size_t cycles =
            below.empty() ? here.size() : brute_nullity(c.differential.submatrix(below, here));
        const std::size_t boundaries =
            above.empty() ? 0 : brute_rank(c.differential.submatrix(here, above));
        if (cycles > boundaries)
            out[g] = cycles - boundaries;
    }
    return out;
}

inline floer::GradedDims dims(std::initializer_list<std::pair<std::int64_t, std::size_t>> entries)
{
    floer::GradedDims out;
    for (const auto& [g, n] : entries)
        out[floer::Rational(g)] = n;
    return out;
}

inline Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, Eigen::Index n)
{
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            a(i, j) = {g(rng), g(rng)};
    Eigen::MatrixXcd h = 0.5 * (a + a.adjoint());
    return h;
}

/// Random Hermitian matrix with every eigenvalue at least 0.05 away from 0.
inline Eigen::MatrixXcd random_invertible(std::mt19937_64& rng, Eigen::Index n)
{
    for (;;) {
        Eigen::MatrixXcd h = random_hermitian(rng, n);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().cwiseAbs().minCoeff() > 0.05)
            return h;
    }
}

inline std::int64_t negative_count(const Eigen::MatrixXcd& a)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
    std::int64_t n = 0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
        n += es.eigenvalues()(k) < 0;
    return n;
}

/// Path from `from` to `to` through `interior` random Hermitian samples at
/// integer times.
inline floer::HermitianPath random_path(std::mt19937_64& rng, const Eigen::MatrixXcd& from,
                                        const Eigen::MatrixXcd& to, std::size_t interior)
{
    floer::HermitianPath p;
    p.t.push_back(0.0);
    p.samples.push_back(from);
    for (std::size_t k = 1; k <= interior; ++k) {
        p.t.push_back(static_cast<double>(k));
        p.samples.push_back(random_hermitian(rng, from.rows()));
    }
    p.t.push_back(static_cast<double>(interior + 1));
    p.samples.push_back(to);
    return p;
}

} // namespace test
