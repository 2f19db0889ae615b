#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "twostep/errors.hpp"
#include "twostep/homogeneous_space.hpp"

namespace twostep {

enum ExitCode : int {
  kExitPass = 0,
  kExitCheckFailed = 1,
  kExitBadInput = 2,
  kExitNumerical = 3,
};

int exit_code_for(const Error& error);

// A preset string ("hopf:n=1,lambda=2") or the path of a space spec file.
HomogeneousSpace resolve_space(const std::string& text, std::optional<double> lambda_override, double tol_alg);

// "1,0,-2.5" -> vector.
std::vector<double> parse_reals(const std::string& text);

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twostep
