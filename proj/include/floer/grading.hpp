#pragma once

#include <cstdint>
#include <string>

#include "floer/rational.hpp"

namespace floer {

enum class GradingKind { integer, rational, modular };

/// How the gradings of one complex are read: plain integers, rationals with
/// a shared denominator, or residues modulo an even d.
struct GradingScheme {
    GradingKind kind = GradingKind::integer;
    /// Even modulus >= 2 for the modular kind, 0 otherwise.
    std::int64_t modulus = 0;
    /// Every grading times this is an integer (1 for integer gradings).
    std::int64_t denominator = 1;

    static GradingScheme integers() { return {}; }
    static GradingScheme rationals(std::int64_t denominator);
    static GradingScheme modular(std::int64_t d);

    /// Throws PreconditionError when the scheme itself is malformed.
    void check() const;
    /// Throws PreconditionError when `value` is not admissible.
    void check_value(const Rational& value) const;
    /// Canonical representative: residues land in [0, d).
    Rational normalize(const Rational& value) const;
    bool same(const Rational& a, const Rational& b) const { return normalize(a) == normalize(b); }

    /// "Z", "Q/4", "Z/8".
    std::string describe() const;

    bool operator==(const GradingScheme&) const = default;
};

} // namespace floer
