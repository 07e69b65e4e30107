#include "floer/grading.hpp"

#include <charconv>
#include <stdexcept>

#include "floer/errors.hpp"

namespace floer {

std::string to_string(const Rational& r)
{
    if (r.denominator() == 1)
        return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole)
{
    std::int64_t value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && text.front() == '+')
        ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || first == last)
        throw std::invalid_argument("not a rational number: '" + std::string(whole) + "'");
    return value;
}

} // namespace

Rational parse_rational(std::string_view text)
{
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return Rational(parse_int(text, text));
    const auto den = parse_int(text.substr(slash + 1), text);
    if (den == 0)
        throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    return Rational(parse_int(text.substr(0, slash), text), den);
}

std::int64_t floor(const Rational& r)
{
    const auto n = r.numerator();
    const auto d = r.denominator();
    auto q = n / d;
    if (n % d != 0 && n < 0)
        --q;
    return q;
}

GradingScheme GradingScheme::rationals(std::int64_t denominator)
{
    GradingScheme s;
    s.kind = GradingKind::rational;
    s.denominator = denominator;
    s.check();
    return s;
}

GradingScheme GradingScheme::modular(std::int64_t d)
{
    GradingScheme s;
    s.kind = GradingKind::modular;
    s.modulus = d;
    s.check();
    return s;
}

void GradingScheme::check() const
{
    switch (kind) {
    case GradingKind::integer:
        if (denominator != 1 || modulus != 0)
            throw PreconditionError("integer grading takes no modulus or denominator");
        break;
    case GradingKind::rational:
        if (denominator < 1)
            throw PreconditionError("rational grading needs a positive denominator, got " +
                                    std::to_string(denominator));
        if (modulus != 0)
            throw PreconditionError("rational grading takes no modulus");
        break;
    case GradingKind::modular:
        if (modulus < 2 || modulus % 2 != 0)
            throw PreconditionError("modular grading needs an even modulus >= 2, got " +
                                    std::to_string(modulus));
        if (denominator != 1)
            throw PreconditionError("modular grading takes no denominator");
        break;
    }
}

void GradingScheme::check_value(const Rational& value) const
{
    if ((value * denominator).denominator() != 1)
        throw PreconditionError("grading " + to_string(value) + " is not a multiple of 1/" +
                                std::to_string(denominator));
}

Rational GradingScheme::normalize(const Rational& value) const
{
    if (kind != GradingKind::modular)
        return value;
    const auto n = value.numerator();
    if (value.denominator() != 1)
        throw PreconditionError("modular grading " + to_string(value) + " is not an integer");
    return Rational(((n % modulus) + modulus) % modulus);
}

std::string GradingScheme::describe() const
{
    switch (kind) {
    case GradingKind::integer:
        return "Z";
    case GradingKind::rational:
        return "Q/" + std::to_string(denominator);
    case GradingKind::modular:
        return "Z/" + std::to_string(modulus);
    }
    return {};
}

} // namespace floer
