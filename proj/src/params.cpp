#include "nsaxi/params.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "nsaxi/error.hpp"

namespace nsaxi {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::DegenerateBranch: return "degenerate branch";
    case ErrorKind::Divergence: return "series divergence";
    case ErrorKind::OutOfRadius: return "out of radius";
    case ErrorKind::Escape: return "escape";
    case ErrorKind::Stiffness: return "step underflow";
    case ErrorKind::AmbiguousMatch: return "ambiguous endpoint match";
    case ErrorKind::Unclassifiable: return "unclassifiable";
    case ErrorKind::PoleProximity: return "pole proximity";
    case ErrorKind::Precondition: return "precondition violated";
    case ErrorKind::Config: return "config error";
  }
  return "error";
}

namespace {

double admit_one(double v, const char* name, bool& clamped) {
  if (std::isnan(v)) throw Error(ErrorKind::Domain, std::string(name) + " is NaN");
  if (v >= -1.0) return v;
  if (v >= -1.0 - kClampWindow) {
    clamped = true;
    return -1.0;
  }
  throw Error(ErrorKind::Domain, std::string(name) + " < -1");
}

}  // namespace

Admitted admit(const Params& c) {
  Admitted a;
  a.params.c1 = admit_one(c.c1, "c1", a.clamped);
  a.params.c2 = admit_one(c.c2, "c2", a.clamped);
  if (std::isnan(c.c3)) throw Error(ErrorKind::Domain, "c3 is NaN");
  a.params.c3 = c.c3;
  return a;
}

double c3_bar(double c1, double c2) {
  bool clamped = false;
  c1 = admit_one(c1, "c1", clamped);
  c2 = admit_one(c2, "c2", clamped);
  const double s = std::sqrt(1.0 + c1) + std::sqrt(1.0 + c2);
  return -0.5 * s * (s + 2.0);
}

EndpointConstants tau_constants(double c1, double c2) {
  bool clamped = false;
  c1 = admit_one(c1, "c1", clamped);
  c2 = admit_one(c2, "c2", clamped);
  const double r1 = 2.0 * std::sqrt(1.0 + c1);
  const double r2 = 2.0 * std::sqrt(1.0 + c2);
  return {2.0 - r1, 2.0 + r1, -2.0 - r2, -2.0 + r2};
}

double p_c(double x, const Params& c) {
  return c.c1 * (1.0 - x) + c.c2 * (1.0 + x) + c.c3 * (1.0 - x) * (1.0 + x);
}

double p_c_prime(double x, const Params& c) { return -c.c1 + c.c2 - 2.0 * c.c3 * x; }

double p_c_sup(const Params& c) {
  double m = std::max(std::abs(2.0 * c.c1), std::abs(2.0 * c.c2));
  // interior vertex of the parabola
  if (c.c3 != 0.0) {
    const double xv = (c.c2 - c.c1) / (2.0 * c.c3);
    if (xv > -1.0 && xv < 1.0) m = std::max(m, std::abs(p_c(xv, c)));
  }
  return m;
}

double boundary_solution(double c1, double c2, double x) {
  return (1.0 + std::sqrt(1.0 + c1)) * (1.0 - x) - (1.0 + std::sqrt(1.0 + c2)) * (1.0 + x);
}

double boundary_solution_prime(double c1, double c2) {
  return -(1.0 + std::sqrt(1.0 + c1)) - (1.0 + std::sqrt(1.0 + c2));
}

bool within_rel(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(1.0, std::abs(b));
}

bool in_j(const Params& c, const ClassifyTolerances& tol) {
  if (std::isnan(c.c1) || std::isnan(c.c2) || std::isnan(c.c3)) return false;
  if (c.c1 < -1.0 - kClampWindow || c.c2 < -1.0 - kClampWindow) return false;
  const double bar = c3_bar(c.c1, c.c2);
  return c.c3 >= bar || within_rel(c.c3, bar, tol.membership_rel);
}

bool on_boundary(const Params& c, const ClassifyTolerances& tol) {
  if (!in_j(c, tol)) return false;
  return within_rel(c.c3, c3_bar(c.c1, c.c2), tol.membership_rel);
}

Stratum interior_stratum(const Params& c, double gamma, double gamma_minus, double gamma_plus,
                         const ClassifyTolerances& tol) {
  const bool s_deg = c.c1 == -1.0;
  const bool n_deg = c.c2 == -1.0;
  const int k = s_deg ? (n_deg ? 4 : 2) : (n_deg ? 3 : 1);
  if (within_rel(gamma, gamma_plus, tol.gamma_rel)) return Stratum::interior(k, 2);
  if (within_rel(gamma, gamma_minus, tol.gamma_rel)) return Stratum::interior(k, 3);
  if (gamma > gamma_minus && gamma < gamma_plus) return Stratum::interior(k, 1);
  return Stratum::outside();
}

std::string Stratum::name() const {
  switch (kind) {
    case Kind::Interior: return "I_{" + std::to_string(k) + "," + std::to_string(l) + "}";
    case Kind::Boundary: return "Boundary";
    case Kind::OutsideI: return "OutsideI";
  }
  return "OutsideI";
}

Stratum Stratum::parse(const std::string& name) {
  if (name == "Boundary") return boundary();
  if (name == "OutsideI") return outside();
  static const std::regex re(R"(I_\{?([1-4]),([1-3])\}?)");
  std::smatch m;
  if (!std::regex_match(name, m, re)) throw Error(ErrorKind::Domain, "bad stratum name: " + name);
  return interior(std::stoi(m[1]), std::stoi(m[2]));
}

}  // namespace nsaxi
