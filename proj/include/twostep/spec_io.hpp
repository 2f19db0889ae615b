#pragma once

#include <string>

#include "twostep/homogeneous_space.hpp"

namespace twostep {

// Algebra file: { "ambient_dim": n, "basis": [ [[re,im], ...], ... ], "form": "neg_killing"|"neg_trace" }.
// Each basis matrix is an n x n array of [re, im] pairs, row-major.
AlgebraPtr algebra_from_json_text(const std::string& text, double tol_alg = 1e-9);

// Space file: { "algebra": <algebra object or "su:n=3" / "u:n=2">, "k_basis": [...],
//               "split": [[...], ...], "lambdas": [...], "name": "..." }.
// Coefficient vectors are real d-vectors over the algebra basis.
HomogeneousSpace space_from_json_text(const std::string& text, double tol_alg = 1e-9);

HomogeneousSpace load_space_file(const std::string& path, double tol_alg = 1e-9);

// Named algebras accepted by the "algebra" field: "su:n=<int>" and "u:n=<int>",
// with an optional ",form=neg_killing|neg_trace".
AlgebraPtr named_algebra(const std::string& text, double tol_alg = 1e-9);

}  // namespace twostep
