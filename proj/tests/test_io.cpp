#include <doctest.h>

#include <cstring>
#include <random>
#include <sstream>

#include "eqw/io.hpp"
#include "eqw/prony.hpp"

using namespace eqw;

TEST_CASE("17 digits reproduce every double") {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> bits;
  int tested = 0;
  while (tested < 5000) {
    const std::uint64_t b = bits(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    ++tested;
    CHECK(std::strtod(io::format_double(x).c_str(), nullptr) == x);
  }
  CHECK(io::format_double(2.0) == "2.0");
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(io::format_double(std::nan("")) == "null");
}

TEST_CASE("values documents round trip") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  ComplexVector values;
  for (int k = 0; k < 30; ++k) values.emplace_back(g(rng) * 1e-5, g(rng) * 1e7);
  const std::string text = io::dump(io::values_document(values, 29));
  const io::ValuesDocument doc = io::parse_values(text);
  CHECK(doc.n == 29);
  CHECK(doc.values == values);
  CHECK(io::dump(io::values_document(doc.values, doc.n)) == text);
}

TEST_CASE("interpolant fields round trip") {
  const ExpInterpolant H = solve_equal_weight_prony(SampleTable({1.0, 0.5, 0.5}));
  io::Json j;
  j["mu"] = io::to_json(H.mu());
  j["bases"] = io::to_json(H.bases().values());
  io::Json freqs = io::Json::array();
  for (const Frequency& f : H.frequencies()) freqs.push_back(io::to_json(f));
  j["frequencies"] = freqs;
  const io::Json back = io::Json::parse(io::dump(j));
  CHECK(io::complex_from_json(back["mu"]) == H.mu());
  CHECK(io::complex_list_from_json(back["bases"]) ==
        ComplexVector(H.bases().values().begin(), H.bases().values().end()));
  CHECK(back["frequencies"][0] == "-inf");
  for (std::size_t k = 0; k < H.frequencies().size(); ++k)
    CHECK(io::frequency_from_json(back["frequencies"][k]) == H.frequencies()[k]);
}

TEST_CASE("malformed documents") {
  CHECK_THROWS_AS(io::parse_values("{"), Error);
  CHECK_THROWS_AS(io::parse_values("[1, 2]"), Error);
  CHECK_THROWS_AS(io::parse_values(R"({"n": 1, "values": [[1, 2, 3], [0, 0]]})"), Error);
  CHECK_THROWS_AS(io::parse_values(R"({"n": 1.5, "values": [[1, 0], [0, 0]]})"), Error);
  CHECK_THROWS_AS(io::parse_values(R"({"values": [[1, 0]]})"), Error);
  CHECK_THROWS_AS(io::read_values("/nonexistent/table.json"), Error);
  const io::ValuesDocument plain = io::parse_values(R"({"values": [1, [2, -1], 3.5]})");
  CHECK(plain.n == 2);
  CHECK(plain.values[1] == Complex(2.0, -1.0));
  CHECK(plain.values[2] == Complex(3.5, 0.0));
}

TEST_CASE("nodes as CSV") {
  std::ostringstream out;
  io::write_nodes_csv(out, ComplexVector{{3.0, 4.0}, {-1.0, 0.0}});
  CHECK(out.str() == "k,re,im,abs\n1,3.0,4.0,5.0\n2,-1.0,0.0,1.0\n");
}
