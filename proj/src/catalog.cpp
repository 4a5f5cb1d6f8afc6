#include "veesys/catalog.hpp"

#include <cctype>

#include "veesys/error.hpp"
#include "veesys/parser.hpp"

namespace veesys {

namespace {

VectorQ unit(std::size_t n, std::size_t i) {
  VectorQ v(n, Rational(0));
  v[i] = 1;
  return v;
}

VectorQ vec(std::initializer_list<int> xs) {
  VectorQ v;
  for (int x : xs) v.emplace_back(x);
  return v;
}

std::string axis_label(std::size_t i) { return "e" + std::to_string(i + 1); }

std::string combo_label(std::size_t i, int sign, std::size_t j) {
  return axis_label(i) + (sign > 0 ? "+" : "-") + axis_label(j);
}

void add(CovectorSystem& s, std::string label, const ParamFunction& r, VectorQ dir) {
  s.covectors.push_back({std::move(label), r, std::move(dir)});
}

ParamFunction expr(const std::string& text, const std::vector<std::string>& params) {
  return parse_scalar(text, params);
}

}  // namespace

CovectorSystem root_system(char kind, int rank) {
  kind = static_cast<char>(std::toupper(static_cast<unsigned char>(kind)));
  if (rank < 1 || rank > 8) throw InputError("root system rank must lie in 1..8");
  const std::size_t n = static_cast<std::size_t>(rank);
  CovectorSystem s;
  s.dimension = n;
  const ParamFunction one(Rational(1));
  switch (kind) {
    case 'A':
      // e_i - e_j for i < j <= n+1, restricted to the sum-zero hyperplane.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          VectorQ v = unit(n, i);
          v[j] = -1;
          add(s, combo_label(i, -1, j), one, v);
        }
      for (std::size_t i = 0; i < n; ++i) {
        VectorQ v(n, Rational(1));
        v[i] = 2;
        add(s, axis_label(i) + "-e" + std::to_string(n + 1), one, v);
      }
      break;
    case 'B':
      for (std::size_t i = 0; i < n; ++i) add(s, axis_label(i), one, unit(n, i));
      [[fallthrough]];
    case 'D':
      if (kind == 'D' && rank < 2) throw InputError("D_n requires rank >= 2");
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          VectorQ p = unit(n, i), m = unit(n, i);
          p[j] = 1;
          m[j] = -1;
          add(s, combo_label(i, -1, j), one, m);
          add(s, combo_label(i, +1, j), one, p);
        }
      break;
    case 'G':
      if (rank != 2) throw InputError("G_2 is the only supported G-type root system");
      // Sum-zero plane of R^3 in coordinates (x1, x2), x3 = -x1 - x2.
      add(s, "e1-e2", one, vec({1, -1}));
      add(s, "e1-e3", one, vec({2, 1}));
      add(s, "e2-e3", one, vec({1, 2}));
      add(s, "2e1-e2-e3", one, vec({3, 0}));
      add(s, "2e2-e1-e3", one, vec({0, 3}));
      add(s, "e1+e2-2e3", one, vec({3, 3}));
      break;
    default:
      throw InputError(std::string("unsupported root system type '") + kind + "'");
  }
  return s;
}

CovectorSystem d21lambda() {
  CovectorSystem s;
  s.dimension = 3;
  s.parameters = {"t", "s"};
  const ParamFunction one(Rational(1));
  add(s, "e1+e2+e3", one, vec({1, 1, 1}));
  add(s, "e1+e2-e3", one, vec({1, 1, -1}));
  add(s, "e1-e2+e3", one, vec({1, -1, 1}));
  add(s, "e1-e2-e3", one, vec({1, -1, -1}));
  add(s, "e1", expr("2*(t+s-1)", s.parameters), vec({1, 0, 0}));
  add(s, "e2", expr("2*(s-t+1)/t", s.parameters), vec({0, 1, 0}));
  add(s, "e3", expr("2*(t-s+1)/s", s.parameters), vec({0, 0, 1}));
  return s;
}

CovectorSystem g12() {
  CovectorSystem s;
  s.dimension = 3;
  s.parameters = {"t"};
  const auto a = expr("2*t+1", s.parameters);
  const auto b = expr("(2*t-1)/3", s.parameters);
  const ParamFunction one(Rational(1));
  add(s, "e1", a, vec({1, 0, 0}));
  add(s, "e2", a, vec({0, 1, 0}));
  add(s, "e1+e2", a, vec({1, 1, 0}));
  add(s, "e1-e2", b, vec({1, -1, 0}));
  add(s, "2e1+e2", b, vec({2, 1, 0}));
  add(s, "e1+2e2", b, vec({1, 2, 0}));
  add(s, "e3", expr("3/t", s.parameters), vec({0, 0, 1}));
  add(s, "e1+e3", one, vec({1, 0, 1}));
  add(s, "e1-e3", one, vec({1, 0, -1}));
  add(s, "e2+e3", one, vec({0, 1, 1}));
  add(s, "e2-e3", one, vec({0, 1, -1}));
  add(s, "e1+e2+e3", one, vec({1, 1, 1}));
  add(s, "e1+e2-e3", one, vec({1, 1, -1}));
  return s;
}

CovectorSystem orthonormal(int n) {
  if (n < 1 || n > 8) throw InputError("orthonormal dimension must lie in 1..8");
  CovectorSystem s;
  s.dimension = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i < s.dimension; ++i) add(s, axis_label(i), Rational(1), unit(s.dimension, i));
  return s;
}

CovectorSystem nonvee3() {
  CovectorSystem s;
  s.dimension = 3;
  const ParamFunction one(Rational(1));
  add(s, "e1", one, vec({1, 0, 0}));
  add(s, "e2", one, vec({0, 1, 0}));
  add(s, "e3", one, vec({0, 0, 1}));
  add(s, "e1+e2+e3", one, vec({1, 1, 1}));
  return s;
}

namespace {

std::optional<int> rank_suffix(const std::string& name, std::size_t prefix) {
  if (name.size() <= prefix) return std::nullopt;
  int r = 0;
  for (std::size_t i = prefix; i < name.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(name[i]))) return std::nullopt;
    r = r * 10 + (name[i] - '0');
    if (r > 99) return std::nullopt;
  }
  return r;
}

BuiltinFamily d21_family() {
  return {"d21lambda",
          "exceptional generalized root system D(2,1,lambda), parameters t, s; degenerate on t+s+1 = 0",
          d21lambda(),
          {{"s", "-t-1+eps", "t+s+1 = eps"}}};
}

BuiltinFamily g12_family() {
  return {"g12",
          "generalized root system G(1,2), parameter t; degenerate at t = -1/2",
          g12(),
          {{"t", "-1/2+eps/8", "4(2t+1) = eps"}}};
}

}  // namespace

std::optional<BuiltinFamily> find_builtin(const std::string& name) {
  if (name == "d21lambda") return d21_family();
  if (name == "g12") return g12_family();
  if (name == "nonvee3") return BuiltinFamily{name, "e1, e2, e3, e1+e2+e3: not a vee-system", nonvee3(), {}};
  if (name.rfind("ortho", 0) == 0) {
    auto r = rank_suffix(name, 5);
    if (!r || *r < 1 || *r > 8) return std::nullopt;
    return BuiltinFamily{name, "orthonormal basis covectors", orthonormal(*r), {}};
  }
  if (name.size() >= 2 && std::string("ABDG").find(name[0]) != std::string::npos) {
    auto r = rank_suffix(name, 1);
    if (!r) return std::nullopt;
    try {
      return BuiltinFamily{name, std::string("positive roots of ") + name, root_system(name[0], *r), {}};
    } catch (const InputError&) {
      return std::nullopt;
    }
  }
  return std::nullopt;
}

std::vector<BuiltinFamily> list_builtins() {
  std::vector<BuiltinFamily> out;
  out.push_back({"A1..A8", "positive roots of A_n", root_system('A', 2), {}});
  out.push_back({"B1..B8", "positive roots of B_n", root_system('B', 2), {}});
  out.push_back({"D2..D8", "positive roots of D_n", root_system('D', 3), {}});
  out.push_back({"G2", "positive roots of G_2", root_system('G', 2), {}});
  out.push_back({"ortho1..ortho8", "orthonormal basis covectors", orthonormal(2), {}});
  out.push_back(*find_builtin("nonvee3"));
  out.push_back(d21_family());
  out.push_back(g12_family());
  return out;
}

}  // namespace veesys
