#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/bivar_poly.hpp"
#include "belyi/dessin.hpp"
#include "belyi/rat_func.hpp"

namespace belyi {

/// z = R1(b1(z), b2(z)) / R2(b1(z), b2(z)); u stands for b1 and v for b2.
struct GenerationCertificate {
  ComplexBivar r1;
  ComplexBivar r2;
  int degree_bound;  // total degree of R1 and R2
  double residual;  // max chordal |z - R1/R2| over fresh probes
};

/// R1/R2 at (u, v) on the sphere.
SpherePoint certificate_value(const GenerationCertificate& cert, cplx u, cplx v);

/// Searches total degrees 1..maxdeg for R1, R2 with z R2(b1, b2) = R1(b1, b2).
///
/// The identity is imposed at 4m+4 probes (m monomials per polynomial) drawn
/// from the annulus 0.5 <= |z| <= 2, at least 1e-2 away from poles, and the
/// homogeneous system is solved by SVD with row and column equilibration.
/// Singular values below 1e-10 of the largest span the null space; relation
/// vectors with R2(b1, b2) = 0 also live there, so the combination making
/// R2(b1, b2) largest on the probes is taken. The largest coefficient is
/// scaled to 1, entries below 1e-11 of it are dropped, and the result is
/// kept only if its residual on 4 d max(deg) fresh probes is below 1e-8.
///
/// An empty result is inconclusive, not a proof that no certificate exists.
std::optional<GenerationCertificate> find_generation_certificate(const RatFunc& b1, const RatFunc& b2, int maxdeg);

/// Zeros of R2(b1(z), b2(z)) on the sphere, distinct.
/// Throws std::domain_error when the composite vanishes identically.
std::vector<SpherePoint> exceptional_set(const GenerationCertificate& cert, const RatFunc& b1, const RatFunc& b2);

/// The lemniscates share a component beyond the real line: b1^-1(R) and
/// b2^-1(R) meet in infinitely many non-real points.
class DecompositionCase : public std::domain_error {
 public:
  DecompositionCase() : std::domain_error("preimage intersection is infinite off ℝ̂ — decomposition case") {}
};

/// Non-real finite points of b1^-1(R u inf) and b2^-1(R u inf), sorted.
///
/// Conjugates both functions to circle maps by the Cayley transform, removes
/// the shared unit circle, intersects what is left and maps back. The point i
/// (which the Cayley transform sends to infinity) is checked directly.
/// Throws std::invalid_argument unless both have real coefficients, and
/// DecompositionCase when the remaining curves still share a component.
std::vector<cplx> offline_intersection_points(const RatFunc& b1, const RatFunc& b2);

struct SharedCriticalPoint {
  SpherePoint point;
  bool trivial;  // infinity shared by two polynomials
};

/// Critical points of b1 and b2 within chordal 1e-7 of each other.
std::vector<SharedCriticalPoint> common_critical_points(const RatFunc& b1, const RatFunc& b2);

struct CommonFactorResult {
  bool ok = false;
  std::optional<RatFunc> inner1;
  std::optional<RatFunc> inner2;
  double residual1 = 0.0;  // coefficient distance of inner o W to b
  double residual2 = 0.0;
};

/// Solves for inner functions with bi = inner_i o W as a linear system in
/// their coefficients. Throws std::invalid_argument unless deg W >= 2 divides
/// both degrees.
CommonFactorResult verify_common_factor(const RatFunc& b1, const RatFunc& b2, const RatFunc& w);

enum class FieldCondition { Certified, CoprimeDegrees, Unknown };
enum class Verdict { Consistent, Violation, Inconclusive };

std::string to_string(FieldCondition f);
std::string to_string(Verdict v);

struct ClassificationReport {
  bool supports_equal = false;
  double support_distance = 0.0;
  FieldCondition field_condition = FieldCondition::Unknown;
  std::optional<int> certificate_degree;
  DessinClass class1 = DessinClass::Other;
  DessinClass class2 = DessinClass::Other;
  int max_valency = 0;  // over the vertices of both dessins
  Verdict verdict = Verdict::Inconclusive;
};

/// For two Belyi functions: do equal supports and C(b1, b2) = C(z) force both
/// dessins to be segments or both circles?
///
/// Traces both supports and settles the field condition concurrently. The
/// field condition holds by coprime degrees, or by a certificate of total
/// degree at most deg b1 + deg b2, and is Unknown otherwise. The verdict is
/// Inconclusive when the supports differ or the field condition is Unknown,
/// Violation when the classes are not {Segment, Segment} or {Circle, Circle},
/// and Consistent otherwise. Throws NotBelyi or TraceStall.
ClassificationReport verify_classification(const RatFunc& b1, const RatFunc& b2, const TraceOptions& opts = {});

/// "key=value" lines.
std::string to_key_values(const ClassificationReport& r);

}  // namespace belyi
