#pragma once

#include <string>

namespace nsaxi {

/// Coefficients of the quadratic forcing P_c(x) = c1(1-x) + c2(1+x) + c3(1-x^2).
struct Params {
  double c1 = 0.0;
  double c2 = 0.0;
  double c3 = 0.0;

  friend bool operator==(const Params&, const Params&) = default;
};

enum class Pole { South, North };  // x = -1, x = +1

/// Limits a solution may take at the poles. tau1 <= 2 <= tau2 at the south,
/// tau1p <= -2 <= tau2p at the north.
struct EndpointConstants {
  double tau1 = 0.0;
  double tau2 = 0.0;
  double tau1p = 0.0;
  double tau2p = 0.0;
};

/// Result of admitting user input: c1 or c2 a hair below -1 is pulled back to -1.
struct Admitted {
  Params params;
  bool clamped = false;
};

struct Stratum {
  enum class Kind { Interior, Boundary, OutsideI };
  Kind kind = Kind::OutsideI;
  int k = 0;  // 1..4: which of c1, c2 sit on -1
  int l = 0;  // 1 interior, 2 upper extremal, 3 lower extremal

  static Stratum interior(int k, int l) { return {Kind::Interior, k, l}; }
  static Stratum boundary() { return {Kind::Boundary, 0, 0}; }
  static Stratum outside() { return {Kind::OutsideI, 0, 0}; }

  bool inside() const { return kind != Kind::OutsideI; }
  std::string name() const;
  static Stratum parse(const std::string& name);

  friend bool operator==(const Stratum&, const Stratum&) = default;
};

struct SolutionIndex {
  Params params;
  double gamma = 0.0;
  Stratum stratum;
  bool clamped = false;
};

struct ClassifyTolerances {
  double membership_rel = 1e-12;  // |c3 - c3_bar| <= rel * max(1, |c3_bar|) counts as boundary
  double gamma_rel = 1e-9;        // |gamma - gamma_pm| <= rel * max(1, |gamma_pm|) counts as extremal
};

inline constexpr double kClampWindow = 1e-14;

/// Clamps c1, c2 in [-1 - kClampWindow, -1) to -1; throws Domain below that.
Admitted admit(const Params& c);

double c3_bar(double c1, double c2);
EndpointConstants tau_constants(double c1, double c2);
double p_c(double x, const Params& c);
double p_c_prime(double x, const Params& c);
/// sup over [-1,1] of |P_c|.
double p_c_sup(const Params& c);

/// (c1, c2, c3) -> (c2, c1, c3); pairs with x -> -x, U -> -U.
inline Params reflect(const Params& c) { return {c.c2, c.c1, c.c3}; }

/// The unique solution at c3 = c3_bar(c1, c2):
/// (1 + sqrt(1+c1))(1-x) - (1 + sqrt(1+c2))(1+x).
double boundary_solution(double c1, double c2, double x);
double boundary_solution_prime(double c1, double c2);

/// True when c lies in J up to the membership tolerance (after clamping).
bool in_j(const Params& c, const ClassifyTolerances& tol = {});
bool on_boundary(const Params& c, const ClassifyTolerances& tol = {});

/// Stratum from the already-computed extremal values gamma_minus <= gamma_plus.
/// c must be admitted and strictly above the boundary surface.
Stratum interior_stratum(const Params& c, double gamma, double gamma_minus, double gamma_plus,
                         const ClassifyTolerances& tol = {});

/// True when |a - b| is within rel * max(1, |b|).
bool within_rel(double a, double b, double rel);

}  // namespace nsaxi
