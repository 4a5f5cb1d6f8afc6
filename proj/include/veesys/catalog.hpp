#pragma once

#include <optional>
#include <string>
#include <vector>

#include "veesys/system.hpp"

namespace veesys {

/// A one-parameter approach to a degenerate parameter value:
/// `parameter` := `value`, where `value` is an expression in the path
/// variable `eps` (and possibly other parameters), degenerate at eps = 0.
struct DegenerationPath {
  std::string parameter;
  std::string value;
  std::string note;
};

struct BuiltinFamily {
  std::string name;
  std::string description;
  CovectorSystem system;
  std::vector<DegenerationPath> degenerations;
};

/// Positive roots with radicand 1. kind is 'A', 'B', 'D' or 'G'; rank 1..8
/// (D needs rank >= 2, G only rank 2). A_n is written in n coordinates of
/// the sum-zero hyperplane (x_{n+1} = -x_1 - ... - x_n).
CovectorSystem root_system(char kind, int rank);

/// e1 +- e2 +- e3 and three axis covectors with radicands
/// 2(t+s-1), 2(s-t+1)/t, 2(t-s+1)/s.
CovectorSystem d21lambda();

/// Thirteen covectors in 3D depending on t.
CovectorSystem g12();

/// Basis covectors e_1..e_n with radicand 1.
CovectorSystem orthonormal(int n);

/// {e1, e2, e3, e1+e2+e3}: spans, but fails the vee condition.
CovectorSystem nonvee3();

/// Known names: A1..A8, B1..B8, D2..D8, G2, ortho1..ortho8, d21lambda, g12, nonvee3.
std::optional<BuiltinFamily> find_builtin(const std::string& name);

/// One representative per kind (root systems listed once with their rank range).
std::vector<BuiltinFamily> list_builtins();

}  // namespace veesys
