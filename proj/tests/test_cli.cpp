#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>
#include <unistd.h>

#include "eqw/cli.hpp"
#include "eqw/io.hpp"

using namespace eqw;
namespace fs = std::filesystem;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("eqw_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() {
    std::error_code ec;
    fs::remove_all(dir, ec);
  }
  fs::path write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p;
  }
};

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_spec(const cli::JobSpec& spec) {
  std::ostringstream out, err;
  const int code = cli::run(spec, out, err);
  return {code, out.str(), err.str()};
}

cli::JobSpec job(cli::Command c, std::map<std::string, std::string> params = {}) {
  return cli::JobSpec{c, std::move(params), std::nullopt, std::nullopt, std::nullopt};
}

// Runs the installed executable; returns its exit status and stdout.
Outcome run_binary(const std::string& args) {
  const std::string cmd = std::string(EQW_CLI_PATH) + " " + args + " 2>/dev/null";
  std::string out;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
  const int status = ::pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out, ""};
}

}  // namespace

TEST_CASE("command table") {
  CHECK(cli::command_names().size() == 8);
  for (const std::string_view name : cli::command_names()) {
    const auto c = cli::parse_command(name);
    REQUIRE(c.has_value());
    CHECK(cli::to_string(*c) == name);
  }
  CHECK_FALSE(cli::parse_command("nope").has_value());
}

TEST_CASE("prony on a constant table") {
  Scratch s;
  cli::JobSpec spec = job(cli::Command::Prony);
  spec.input_path = s.write("t.json", R"({"n": 4, "values": [[3, 0], [3, 0], [3, 0], [3, 0], [3, 0]]})");
  const Outcome r = run_spec(spec);
  REQUIRE(r.code == 0);
  const io::Json doc = io::Json::parse(r.out);
  CHECK(io::complex_from_json(doc["mu"]) == Complex(3.0));
  for (const auto& f : doc["frequencies"]) CHECK(std::abs(io::complex_from_json(f)) < 1e-12);
  CHECK(doc["interpolation_error"].get<double>() < 1e-12);
}

TEST_CASE("prony on a grid with CSV export") {
  Scratch s;
  cli::JobSpec spec = job(cli::Command::Prony, {{"grid", "0 1"}});
  spec.input_path = s.write("t.json", R"({"n": 4, "values": [1, 2, 3, 4, 5]})");
  spec.output_path = s.dir / "out.json";
  spec.csv_path = s.dir / "nodes.csv";
  REQUIRE(run_spec(spec).code == 0);
  std::ifstream in(*spec.output_path);
  const io::Json doc = io::Json::parse(in);
  CHECK(doc["interpolation_error"].get<double>() < 1e-10);
  CHECK(doc["grid"][1].get<double>() == 1.0);
  std::ifstream csv(*spec.csv_path);
  std::string header;
  std::getline(csv, header);
  CHECK(header == "k,re,im,abs");
  int rows = 0;
  for (std::string line; std::getline(csv, line);) ++rows;
  CHECK(rows == 4);
}

TEST_CASE("cheb-nodes for n = 2") {
  const Outcome r = run_spec(job(cli::Command::ChebNodes, {{"n", "2"}, {"variant", "standard"}}));
  REQUIRE(r.code == 0);
  const io::Json doc = io::Json::parse(r.out);
  CHECK(std::abs(io::complex_from_json(doc["nodes"][1]).real() - 0.5773502691896258) < 2.3e-16);
  CHECK(std::abs(io::complex_from_json(doc["nodes"][0]).real() + 0.5773502691896258) < 2.3e-16);
  CHECK(doc["all_real"] == true);
  CHECK(r.out.find("0.57735026918962") != std::string::npos);
}

TEST_CASE("eps for n = 2") {
  const Outcome r = run_spec(job(cli::Command::Eps, {{"n", "2"}}));
  REQUIRE(r.code == 0);
  const io::Json doc = io::Json::parse(r.out);
  CHECK(std::abs(doc["epsilon_exact"].get<double>() - 0.43016) < 1e-5);
  CHECK(std::abs(doc["epsilon_closed"].get<double>() - (2.0597 - 1.0)) < 1e-4);
}

TEST_CASE("other commands produce documents") {
  Scratch s;
  cli::JobSpec pade = job(cli::Command::Pade, {{"n", "2"}});
  pade.input_path = s.write("f.json", R"({"values": [1, 0, -0.5, 0, 0.041666666666666664]})");
  const Outcome p = run_spec(pade);
  REQUIRE(p.code == 0);
  const io::Json pd = io::Json::parse(p.out);
  CHECK(std::abs(io::complex_from_json(pd["mu"]) - 1.0) < 1e-12);

  const Outcome q = run_spec(job(cli::Command::Quadrature, {{"n", "4"}, {"kernel", "monomial:4"}}));
  REQUIRE(q.code == 0);
  CHECK(std::abs(io::complex_from_json(io::Json::parse(q.out)["integral"]) - 0.4) < 1e-12);

  const Outcome d = run_spec(job(cli::Command::DiffFormula, {{"t", "10"}, {"n", "5"}}));
  REQUIRE(d.code == 0);
  const io::Json dd = io::Json::parse(d.out);
  CHECK(dd["max_abs_node"].get<double>() <= dd["node_bound"].get<double>());

  cli::JobSpec cl = job(cli::Command::PronyClassical);
  cl.input_path = s.write("s.json", R"({"values": [3, 6.5, 18.25, 54.125]})");
  const Outcome c = run_spec(cl);
  REQUIRE(c.code == 0);
  CHECK(io::Json::parse(c.out)["status"] == "solved");
}

TEST_CASE("exit codes") {
  Scratch s;
  CHECK(run_spec(job(cli::Command::DiffFormula, {{"n", "5"}})).code == cli::kExitInput);
  CHECK(run_spec(job(cli::Command::Eps, {{"n", "two"}})).code == cli::kExitInput);
  CHECK(run_spec(job(cli::Command::Eps, {{"n", "2"}, {"seed", "1"}})).code == cli::kExitInput);
  CHECK(run_spec(job(cli::Command::ChebNodes, {{"n", "61"}})).code == cli::kExitInput);
  CHECK(run_spec(job(cli::Command::ChebNodes, {{"n", "3"}, {"variant", "odd"}})).code == cli::kExitInput);
  CHECK(run_spec(job(cli::Command::Prony)).code == cli::kExitInput);

  cli::JobSpec cl = job(cli::Command::PronyClassical);
  cl.input_path = s.write("s.json", R"({"values": [1, 2, 3, 4]})");
  const Outcome u = run_spec(cl);
  CHECK(u.code == cli::kExitNumerical);
  CHECK(u.err.find("RepeatedRoots") != std::string::npos);
  cl.input_path = s.write("c.json", R"({"values": [1, 1, 1, 1, 1, 1]})");
  const Outcome dd = run_spec(cl);
  CHECK(dd.code == cli::kExitNumerical);
  CHECK(dd.err.find("DegreeDeficient") != std::string::npos);

  cli::JobSpec bad = job(cli::Command::Prony);
  bad.input_path = s.write("z.json", R"({"values": [0, 1, 2]})");
  CHECK(run_spec(bad).code == cli::kExitInput);
}

TEST_CASE("precision cap override warns") {
  ::setenv("EQW_MAX_N", "70", 1);
  const Outcome r = run_spec(job(cli::Command::Eps, {{"n", "65"}}));
  CHECK(r.code == 0);
  CHECK(r.err.find("warning") != std::string::npos);
  ::setenv("EQW_MAX_N", "zero", 1);
  CHECK(run_spec(job(cli::Command::Eps, {{"n", "5"}})).code == cli::kExitInput);
  ::unsetenv("EQW_MAX_N");
  CHECK(run_spec(job(cli::Command::Eps, {{"n", "5"}})).err.empty());
}

TEST_CASE("executable") {
  const Outcome a = run_binary("verify-bounds --n 8 --trials 200 --seed 42");
  const Outcome b = run_binary("verify-bounds --n 8 --trials 200 --seed 42");
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(io::Json::parse(a.out)["violations"] == 0);
  const Outcome c = run_binary("cheb-nodes --n 2 --variant standard");
  CHECK(c.code == 0);
  CHECK(io::Json::parse(c.out)["nodes"].size() == 2);
  CHECK(run_binary("eps --n 1").code == cli::kExitInput);
  CHECK(run_binary("no-such-command").code == cli::kExitInput);
  CHECK(run_binary("eps --bogus 3").code == cli::kExitInput);
  CHECK(run_binary("--help").code == 0);
  CHECK(run_binary("pade --help").code == 0);
}
