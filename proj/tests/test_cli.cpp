#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "belyi/function_spec.hpp"
#include "belyi/maps.hpp"
#include "belyi/render.hpp"
#include "test_support.hpp"

using namespace belyi;
using namespace belyi::testing;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("belyi_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write(const std::string& name, const std::string& content) {
  const fs::path p = workdir() / name;
  std::ofstream(p) << content;
  return p;
}

Run cli(const std::string& args) {
  const fs::path out = workdir() / "stdout.txt", err = workdir() / "stderr.txt";
  const std::string cmd = std::string(BELYI_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

int count(const std::string& s, const std::string& needle) {
  int n = 0;
  for (std::size_t k = s.find(needle); k != std::string::npos; k = s.find(needle, k + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("function spec parsing") {
  const FunctionSpec s = parse_function_spec(R"({"num": [[0, 0], [1, 0]], "den": [[1, 0], [0, 0.5]], "label": "f"})");
  CHECK(s.num.size() == 2);
  CHECK(s.den[1] == cplx{0.0, 0.5});
  CHECK(s.label == "f");
  CHECK(parse_function_spec(R"({"num": [[1, 0]]})").den == std::vector<cplx>{1.0});
  CHECK(coefficient_distance(to_ratfunc(parse_function_spec(R"({"builtin": "chebyshev:4"})")), chebyshev(4)) < 1e-14);

  CHECK_THROWS_AS(parse_function_spec(R"({"num": [[1, 0]], "den": [[0, 0]]})"), SpecError);
  CHECK_THROWS_AS(parse_function_spec(R"({"num": [[1, 0]], "den": []})"), SpecError);
  CHECK_THROWS_AS(parse_function_spec(R"({"num": [[1, 0]")"), SpecError);
  CHECK_THROWS_AS(parse_function_spec(R"({"num": [[1, 0, 2]]})"), SpecError);
  CHECK_THROWS_AS(parse_function_spec(R"([1, 2])"), SpecError);
  CHECK_THROWS_AS(parse_function_spec(R"({"builtin": "chebyshev:x"})"), SpecError);
  CHECK_THROWS_AS(builtin_spec("nope:2"), SpecError);
  CHECK_THROWS_AS(builtin_spec("chebyshev:2:3"), SpecError);
}

TEST_CASE("builtins") {
  CHECK(coefficient_distance(to_ratfunc(builtin_spec("chebyshev:3:-1")), chebyshev(3, -1)) < 1e-14);
  CHECK(coefficient_distance(to_ratfunc(builtin_spec("circle:2")), circle_belyi(2)) < 1e-14);
  CHECK(to_ratfunc(builtin_spec("power:3")).degree() == 3);
  const RatFunc t = to_ratfunc(builtin_spec("twisted-circle:2"));
  CHECK(t.degree() == 4);
  CHECK(is_belyi(t));
  CHECK(classify(trace_support(t)) == DessinClass::Circle);
  for (const std::string& name : builtin_corpus()) CHECK(is_belyi(to_ratfunc(builtin_spec(name))));
}

TEST_CASE("spec round trip") {
  for (int k = 0; k < 50; ++k) {
    const RatFunc f = random_ratfunc(1 + k % 5, k % 2 == 0);
    const RatFunc g = to_ratfunc(parse_function_spec(serialize(to_spec(f, "x"))));
    CHECK(coefficient_distance(f, g) < 1e-12);
  }
}

TEST_CASE("SVG drawing") {
  std::ostringstream a, b;
  write_svg(a, trace_support(chebyshev(2)));
  write_svg(b, trace_support(chebyshev(2)));
  CHECK(a.str() == b.str());
  CHECK(a.str().rfind("<?xml", 0) == 0);
  CHECK(count(a.str(), "<circle") == 3);
  CHECK(count(a.str(), "fill=\"white\" stroke") == 1);
  CHECK(count(a.str(), "<path") == 2);

  std::ostringstream c;
  RenderOptions o;
  o.sphere = true;
  write_svg(c, trace_support(circle_belyi(2)), o);
  CHECK(count(c.str(), "<path") >= 4);
  CHECK(c.str().find("class=\"inset\"") != std::string::npos);
}

TEST_CASE("cli trace") {
  const fs::path csv = workdir() / "t2.csv", svg = workdir() / "t2.svg";
  Run r = cli("trace -b chebyshev:2 --csv " + csv.string() + " --svg " + svg.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("edges=2\n") != std::string::npos);
  CHECK(r.out.find("class=Segment\n") != std::string::npos);
  CHECK(slurp(csv).rfind("edge_index,chart,x,y\n", 0) == 0);
  CHECK(count(slurp(svg), "<circle") == 3);

  r = cli("trace -b circle:2 --svg " + svg.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("edges=4\n") != std::string::npos);
  CHECK(count(slurp(svg), "<path") == 4);

  r = cli("trace " + write("zero_den.json", R"({"num": [[1, 0]], "den": [[0, 0]]})").string());
  CHECK(r.code == 1);
  CHECK(r.out.empty());
  CHECK_FALSE(r.err.empty());

  CHECK(cli("trace " + write("broken.json", "{\"num\": [").string()).code == 1);
  r = cli("trace -b power:2");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
  CHECK(cli("trace -b chebyshev:2 --tol -1").code == 3);
  CHECK(cli("trace").code == 1);
  CHECK(cli("bogus").code == 1);
}

TEST_CASE("cli intersect") {
  const fs::path z = write("z.json", R"({"num": [[0, 0], [1, 0]]})");
  const fs::path z15 = write("z15.json", R"({"num": [[-1.5, 0], [1, 0]]})");
  const fs::path z2 = write("2z.json", R"({"num": [[0, 0], [2, 0]]})");
  const fs::path csv = workdir() / "points.csv";
  Run r = cli("intersect " + z.string() + " " + z15.string() + " --csv " + csv.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("count=2\n") != std::string::npos);
  CHECK(r.out.find("bound_sharp=2\n") != std::string::npos);
  CHECK(slurp(csv).find("0.750000,0.661438") != std::string::npos);

  r = cli("intersect -b power:2 -b power:4");
  CHECK(r.code == 4);
  CHECK(r.out.find("degenerate=true\n") != std::string::npos);

  r = cli("intersect " + z.string() + " " + z2.string());
  CHECK(r.code == 0);
  CHECK(r.out.find("count=0\n") != std::string::npos);

  CHECK(cli("intersect " + write("const.json", R"({"num": [[2, 0]]})").string() + " " + z.string()).code == 1);
}

TEST_CASE("cli verify") {
  Run r = cli("verify -b chebyshev:2 -b chebyshev:3");
  CHECK(r.code == 0);
  CHECK(r.out.find("verdict=Consistent\n") != std::string::npos);
  r = cli("verify -b chebyshev:2 -b circle:1");
  CHECK(r.code == 6);
  CHECK(r.out.find("verdict=Inconclusive\n") != std::string::npos);
  r = cli("verify -b circle:1 -b twisted-circle:2");
  CHECK(r.code == 0);
  CHECK(r.out.find("class2=Circle\n") != std::string::npos);
  r = cli("verify -b chebyshev:2 -b power:3");
  CHECK(r.code == 2);
  CHECK(r.out.empty());
}

TEST_CASE("cli certify") {
  Run r = cli("certify -b chebyshev:2 -b chebyshev:3 --maxdeg 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("exceptional=-0.866025403784,0\n") != std::string::npos);
  CHECK(r.out.find("exceptional=0.866025403784,0\n") != std::string::npos);
  r = cli("certify -b power:2 -b power:4 --maxdeg 3");
  CHECK(r.code == 7);
  CHECK(r.out.empty());
  r = cli("certify -b power:2 -b power:3 --maxdeg 1");
  CHECK(r.code == 0);
  CHECK(r.out.find("exceptional=0,0\n") != std::string::npos);
}
