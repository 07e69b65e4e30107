#pragma once

// JSON formats for every input and output of the command-line tool.
// Syntax errors raise ParseError with a line and column; structural errors
// raise SchemaError with a JSON pointer to the offending value.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "floer/boundary_flow.hpp"
#include "floer/graded_complex.hpp"
#include "floer/module_structure.hpp"
#include "floer/morse_bott.hpp"
#include "floer/spectral_flow.hpp"

namespace floer {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

Json parse_json(std::string_view text);

/// Integers stay integers, other rationals become "p/q" strings.
OrderedJson grading_to_json(const Rational& g);

BoundaryFlowData flow_from_json(const Json& j);
OrderedJson flow_to_json(const BoundaryFlowData& d);

struct ComplexFile {
    GradedComplex complex;
    std::optional<Involution> involution;
};

ComplexFile complex_from_json(const Json& j);
OrderedJson complex_to_json(const GradedComplex& c, const Involution* inv = nullptr);

QuadraticForm form_from_json(const Json& j);
HermitianPath path_from_json(const Json& j);

std::vector<BottLevel> levels_from_json(const Json& j);
OrderedJson levels_to_json(const std::vector<BottLevel>& levels);

UModule umodule_from_json(const Json& j);
OrderedJson umodule_to_json(const UModule& m);

RModule rmodule_from_json(const Json& j);
OrderedJson rmodule_to_json(const RModule& m);

} // namespace floer
