#pragma once

#include <string>

#include <json.hpp>

#include "courant/algebroid.hpp"
#include "courant/cochain.hpp"
#include "courant/dorfman.hpp"

namespace courant {

using Json = nlohmann::ordered_json;

// Readers throw ParseError on malformed documents and DomainError when the
// data are well formed but violate a precondition.  Indices in documents are
// 1-based; scalars are strings (or integers) in x1..xn.
Json read_json_file(const std::string& path);

AlgebroidPtr algebroid_from_json(const Json& doc);
Json algebroid_to_json(const CourantAlgebroid& e);

PredualPtr predual_from_json(const Json& doc, AlgebroidPtr e);
Json predual_to_json(const PredualBundle& b);

ConnectionTable connection_from_json(const Json& doc, const PredualBundle& b);
Json connection_to_json(const DorfmanConnection& nabla);

// { "n", "v"?, "symbols": { "a,b": [v scalars] } }, omitted entries zero;
// v defaults to n.
Christoffel christoffel_from_json(const Json& doc, int num_variables);

// { "frame": [[r scalars] x r/2] }
std::vector<Section> dirac_from_json(const Json& doc, const CourantAlgebroid& e);

// Expression tree { "op": "d" | "mul" | "ie" | "if" | "le" | "lf" | "scalar" |
// "section", ... }: "arg" or "args" for operands, "section" or "function"
// for the operator data, "value" for leaves.
Cochain cochain_from_json(const Json& doc, const AlgebroidPtr& e);

Json report_to_json(const Report& report);

}  // namespace courant
