// JSON documents and CSV export.
//
// Inputs are {"n": N, "values": [[re, im], ...]}. Output documents print
// every floating point number with 17 significant digits, so reading them
// back reproduces the doubles exactly.
#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>

#include <json.hpp>

#include "eqw/core.hpp"
#include "eqw/prony.hpp"

namespace eqw::io {

using Json = nlohmann::ordered_json;

struct ValuesDocument {
  int n;
  ComplexVector values;
};

/// Throws InvalidArgument on malformed documents.
ValuesDocument parse_values(const std::string& text);
ValuesDocument read_values(const std::filesystem::path& path);

Json to_json(Complex z);
Json to_json(std::span<const Complex> zs);
Json to_json(const Frequency& f);  // [re, im] or the string "-inf"
Json values_document(std::span<const Complex> values, int n);

Complex complex_from_json(const Json& j);
ComplexVector complex_list_from_json(const Json& j);
Frequency frequency_from_json(const Json& j);

/// Serializes with two-space indentation and %.17g numbers.
std::string dump(const Json& j);

/// Columns k, re, im, abs with a header line.
void write_nodes_csv(std::ostream& out, std::span<const Complex> nodes);

std::string format_double(double x);

}  // namespace eqw::io
