#include "eqw/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

namespace eqw::io {

std::string format_double(double x) {
  if (!std::isfinite(x)) {
    if (std::isnan(x)) return "null";
    return x > 0 ? "1e999" : "-1e999";
  }
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s(buf);
  // Keep integral values recognisable as floating point.
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

namespace {

void emit(const Json& j, std::string& out, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        emit(it.value(), out, indent + 1);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Arrays of scalars, such as [re, im] pairs, stay on one line.
      bool flat = true;
      for (const Json& e : j) flat = flat && e.is_primitive();
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i > 0) out += ", ";
          emit(j[i], out, indent + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i > 0) out += ",\n";
        out += inner;
        emit(j[i], out, indent + 1);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  emit(j, out, 0);
  out += "\n";
  return out;
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(std::span<const Complex> zs) {
  Json out = Json::array();
  for (const Complex& z : zs) out.push_back(to_json(z));
  return out;
}

Json to_json(const Frequency& f) {
  if (f.is_neg_infinity()) return "-inf";
  return to_json(f.value());
}

Json values_document(std::span<const Complex> values, int n) {
  Json doc;
  doc["n"] = n;
  doc["values"] = to_json(values);
  return doc;
}

Complex complex_from_json(const Json& j) {
  if (j.is_number()) return Complex{j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    fail(ErrorKind::InvalidArgument, "complex numbers must be [re, im] pairs");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

ComplexVector complex_list_from_json(const Json& j) {
  if (!j.is_array()) fail(ErrorKind::InvalidArgument, "expected a list of [re, im] pairs");
  ComplexVector out;
  out.reserve(j.size());
  for (const Json& e : j) out.push_back(complex_from_json(e));
  return out;
}

Frequency frequency_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "-inf") return Frequency::neg_infinity();
  return Frequency(complex_from_json(j));
}

ValuesDocument parse_values(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("values"))
    fail(ErrorKind::InvalidArgument, "document needs a \"values\" list");
  ValuesDocument out;
  out.values = complex_list_from_json(doc["values"]);
  if (doc.contains("n")) {
    if (!doc["n"].is_number_integer()) fail(ErrorKind::InvalidArgument, "\"n\" must be an integer");
    out.n = doc["n"].get<int>();
  } else {
    out.n = static_cast<int>(out.values.size()) - 1;
  }
  if (out.n < 1) fail(ErrorKind::InvalidArgument, "\"n\" must be at least 1");
  return out;
}

ValuesDocument read_values(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidArgument, "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_values(buffer.str());
}

void write_nodes_csv(std::ostream& out, std::span<const Complex> nodes) {
  out << "k,re,im,abs\n";
  for (std::size_t k = 0; k < nodes.size(); ++k)
    out << k + 1 << ',' << format_double(nodes[k].real()) << ',' << format_double(nodes[k].imag()) << ','
        << format_double(std::abs(nodes[k])) << '\n';
}

}  // namespace eqw::io
