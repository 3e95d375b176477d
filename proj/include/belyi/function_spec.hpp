#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "belyi/rat_func.hpp"

namespace belyi {

/// A rational function as exchanged on disk: coefficient lists in ascending
/// powers, each coefficient a [re, im] pair.
struct FunctionSpec {
  std::vector<cplx> num;
  std::vector<cplx> den;
  std::string label;
};

class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Accepts {"num": [[re, im], ...], "den": [...], "label": "..."} or
/// {"builtin": "<name>"}; den defaults to [[1, 0]]. Throws SpecError.
FunctionSpec parse_function_spec(const std::string& json_text);

std::string serialize(const FunctionSpec& spec);

/// Named functions:
///   chebyshev:n[:sign]   sign * T_n
///   circle:n[:sign]      sign * (z^n + z^-n) / 2
///   power:n              z^n
///   twisted-circle:n     circle:n moved by a circle Moebius map and a
///                        rotation so that it shares no critical point with circle:1
/// Throws SpecError for an unknown name.
FunctionSpec builtin_spec(const std::string& name);

/// The Belyi builtins used as the default test corpus.
std::vector<std::string> builtin_corpus();

/// Throws SpecError when den is empty or zero.
RatFunc to_ratfunc(const FunctionSpec& spec);

FunctionSpec to_spec(const RatFunc& f, std::string label = {});

}  // namespace belyi
