// Symmetry classification of x'' + f(x) x'^2 + g(x) = 0.
//
// The equation maps to y'' + F(y) = 0 (see transform.hpp); the Lie point
// symmetry algebra of the canonical equation has dimension 1, 2, 3 or 8, and
// which case holds is decided by a chain of identity tests on G = M g:
//
//   G == 0 or constant, or dG/dy constant    ->  F linear,   sl(3,R), dim 8
//   K = F F''/F'^2 constant == 1             ->  F = exp(gamma y),   dim 2
//   K constant != 1, n = 1/(1-K) != -3       ->  F = (alpha+beta y)^n, dim 2
//   K constant, n = -3                       ->  F = s (y+c)^-3, sl(2,R), dim 3
//   u = -5 F''/F''' affine with du/dy = 1,
//     F - u F' - u^2 F''/3 == 0              ->  F = alpha (y+c) + beta (y+c)^-3
//                                                (Ermakov-Pinney), sl(2,R), dim 3
//   otherwise                                ->  generic, dim 1 (time translation)
//
// Every identity is decided by the layered oracle in decide.hpp; the verdict
// grade records whether any step needed numeric sampling.
#pragma once

#include "lienard/generators.hpp"

namespace lienard {

enum class SymmetryCase { Generic, PowerLaw, Exponential, InverseCube, ErmakovPinney, Linear };
enum class LinearSubtype { Zero, ConstantForce, Homogeneous, Affine };

struct TraceStep {
    std::string check;
    std::string verdict;
};

struct ClassifyConfig {
    DomainInterval domain;
    int samples = 64;
    double tol_constancy = 1e-9;
    bool numeric_only = false;  // skip symbolic routes; finite differences + sampling
};

struct SymmetryReport {
    SymmetryCase symmetry_case = SymmetryCase::Generic;
    std::optional<LinearSubtype> linear_subtype;
    std::string algebra;  // "A1", "A2", "A3,8 = sl(2,R)", "sl(3,R)"
    int dimension = 1;
    bool conclusive = false;
    Grade grade = Grade::Symbolic;
    std::map<std::string, ParamValue> parameters;
    std::string canonical_force;  // reconstructed F(y), empty when unavailable
    std::vector<Generator> generators;
    std::string generator_note;
    std::vector<TraceStep> trace;
    TransformData transform;
};

const char* case_name(SymmetryCase c);
const char* subtype_name(LinearSubtype s);

// Certified generator set for a decided case (always starts with d/dt).
// `note` receives completeness remarks, e.g. for the dim-8 linear algebra.
std::vector<Generator> catalogue_generators(SymmetryCase c, std::optional<LinearSubtype> sub,
                                            const std::map<std::string, ParamValue>& params,
                                            std::string& note);

SymmetryReport classify(const Expr& f, const Expr& g, const ClassifyConfig& cfg);

}  // namespace lienard
