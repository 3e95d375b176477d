#include <CLI11.hpp>

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "belyi/certify.hpp"
#include "belyi/function_spec.hpp"
#include "belyi/lemniscate.hpp"
#include "belyi/render.hpp"

using namespace belyi;

namespace {

enum Exit : int {
  kOk = 0,
  kParse = 1,
  kNotBelyi = 2,
  kStall = 3,
  kDegenerate = 4,
  kViolation = 5,
  kInconclusive = 6,
  kNotFound = 7,
};

struct Inputs {
  std::vector<std::string> files;
  std::vector<std::string> builtins;

  void attach(CLI::App* cmd, const char* what) {
    cmd->add_option("files", files, std::string("JSON function spec files (") + what + ")");
    cmd->add_option("-b,--builtin", builtins, "Builtin function, e.g. chebyshev:4, circle:2:-1, power:3, twisted-circle:2");
  }

  std::vector<RatFunc> load(std::size_t n) const {
    if (files.size() + builtins.size() != n)
      throw SpecError("expected " + std::to_string(n) + " function(s), got " + std::to_string(files.size() + builtins.size()));
    std::vector<RatFunc> out;
    for (const std::string& path : files) {
      std::ifstream in(path);
      if (!in) throw SpecError("cannot read " + path);
      std::ostringstream text;
      text << in.rdbuf();
      out.push_back(to_ratfunc(parse_function_spec(text.str())));
    }
    for (const std::string& b : builtins) out.push_back(to_ratfunc(builtin_spec(b)));
    return out;
  }
};

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::string fmt(cplx z) {
  auto clean = [](double v) { return std::abs(v) < 5e-13 ? 0.0 : v; };
  std::ostringstream os;
  os << std::setprecision(12) << clean(z.real()) << ',' << clean(z.imag());
  return os.str();
}

void print_matrix(std::ostream& os, const char* name, const ComplexBivar& r) {
  os << name << " rows=u^0..u^" << r.deg_x() << " cols=v^0..v^" << r.deg_y() << '\n';
  for (int i = 0; i <= r.deg_x(); ++i) {
    for (int j = 0; j <= r.deg_y(); ++j) os << (j ? " " : "  ") << '(' << fmt(r.coeff(i, j)) << ')';
    os << '\n';
  }
}

struct TraceArgs {
  Inputs in;
  TraceOptions opts;
  std::string csv, svg;
  bool sphere = false;
};

int run_trace(const TraceArgs& a) {
  const RatFunc beta = a.in.load(1)[0];
  const DessinGraph g = trace_support(beta, a.opts);
  std::ostringstream report;
  int white = 0;
  for (const Vertex& v : g.vertices) white += v.color == Color::White;
  report << "degree=" << beta.degree() << '\n'
         << "edges=" << g.edges.size() << '\n'
         << "vertices=" << g.vertices.size() << '\n'
         << "white=" << white << '\n'
         << "black=" << g.vertices.size() - static_cast<std::size_t>(white) << '\n'
         << "class=" << to_string(classify(g)) << '\n';
  if (!a.csv.empty()) {
    std::ostringstream os;
    write_polyline_csv(os, g);
    write_file(a.csv, os.str());
  }
  if (!a.svg.empty()) {
    std::ostringstream os;
    RenderOptions ro;
    ro.sphere = a.sphere;
    write_svg(os, g, ro);
    write_file(a.svg, os.str());
  }
  std::cout << report.str();
  return kOk;
}

struct IntersectArgs {
  Inputs in;
  std::string csv;
};

int run_intersect(const IntersectArgs& a) {
  const std::vector<RatFunc> f = a.in.load(2);
  const IntersectionReport r = intersect(f[0], f[1]);
  std::ostringstream report;
  report << "count=" << (r.count ? std::to_string(*r.count) : "infinite") << '\n'
         << "bound_quadratic=" << r.bound_quadratic << '\n'
         << "bound_sharp=" << r.bound_sharp << '\n'
         << "degenerate=" << (r.degenerate ? "true" : "false") << '\n';
  if (!r.degenerate) {
    const BoundCheck b = check_bounds(r);
    report << "within_sharp=" << (b.within_sharp ? "true" : "false") << '\n';
  }
  for (cplx z : r.points) report << "point=" << fmt(z) << '\n';
  if (!a.csv.empty()) {
    std::ostringstream os;
    os << "index,x,y\n" << std::fixed << std::setprecision(6);
    for (std::size_t k = 0; k < r.points.size(); ++k) os << k << ',' << r.points[k].real() << ',' << r.points[k].imag() << '\n';
    write_file(a.csv, os.str());
  }
  std::cout << report.str();
  return r.degenerate ? kDegenerate : kOk;
}

struct VerifyArgs {
  Inputs in;
  TraceOptions opts;
};

int run_verify(const VerifyArgs& a) {
  const std::vector<RatFunc> f = a.in.load(2);
  const ClassificationReport r = verify_classification(f[0], f[1], a.opts);
  std::cout << to_key_values(r);
  switch (r.verdict) {
    case Verdict::Consistent: return kOk;
    case Verdict::Violation: return kViolation;
    case Verdict::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct CertifyArgs {
  Inputs in;
  int maxdeg = 0;
};

int run_certify(const CertifyArgs& a) {
  const std::vector<RatFunc> f = a.in.load(2);
  const int maxdeg = a.maxdeg > 0 ? a.maxdeg : f[0].degree() + f[1].degree();
  const std::optional<GenerationCertificate> c = find_generation_certificate(f[0], f[1], maxdeg);
  if (!c) {
    std::cerr << "no certificate of total degree <= " << maxdeg << " (inconclusive)\n";
    return kNotFound;
  }
  std::ostringstream report;
  report << "degree_bound=" << c->degree_bound << '\n' << "residual=" << c->residual << '\n';
  print_matrix(report, "R1", c->r1);
  print_matrix(report, "R2", c->r2);
  for (const SpherePoint& p : exceptional_set(*c, f[0], f[1]))
    report << "exceptional=" << (p.is_infinite() ? std::string("inf") : fmt(p.value())) << '\n';
  std::cout << report.str();
  return kOk;
}

void add_trace_flags(CLI::App* cmd, TraceOptions& o) {
  cmd->add_option("--step", o.step, "Continuation step")->capture_default_str();
  cmd->add_option("--tol", o.tol, "Corrector tolerance on |beta(z) - t|")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Belyi functions, dessin supports and rational lemniscates"};
  app.require_subcommand(1);

  TraceArgs ta;
  CLI::App* trace = app.add_subcommand("trace", "Trace the dessin of one Belyi function");
  ta.in.attach(trace, "one");
  add_trace_flags(trace, ta.opts);
  trace->add_option("--csv", ta.csv, "Write polylines as CSV (edge_index,chart,x,y)");
  trace->add_option("--svg", ta.svg, "Write an SVG drawing");
  trace->add_flag("--sphere", ta.sphere, "Add an inset with the chart at infinity to the SVG");

  IntersectArgs ia;
  CLI::App* inter = app.add_subcommand("intersect", "Intersect the lemniscates |f1| = 1 and |f2| = 1");
  ia.in.attach(inter, "two");
  inter->add_option("--csv", ia.csv, "Write intersection points as CSV (index,x,y)");

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Check the segment/circle classification on a pair of Belyi functions");
  va.in.attach(verify, "two");
  add_trace_flags(verify, va.opts);

  CertifyArgs ca;
  CLI::App* cert = app.add_subcommand("certify", "Search for R1, R2 with z = R1(f1, f2) / R2(f1, f2)");
  ca.in.attach(cert, "two");
  cert->add_option("--maxdeg", ca.maxdeg, "Largest total degree tried (0: deg f1 + deg f2)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kParse;
  }

  try {
    if (*trace) return run_trace(ta);
    if (*inter) return run_intersect(ia);
    if (*verify) return run_verify(va);
    if (*cert) return run_certify(ca);
  } catch (const NotBelyi& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNotBelyi;
  } catch (const TraceStall& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStall;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
  return kParse;
}
