#include "rsfade/problem.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rsfade/error.hpp"

namespace rsfade {
namespace {

constexpr double kPi = std::numbers::pi;

// Phi with the gamma-function constants hoisted out of the per-node loop.
class PhiKernel {
 public:
  explicit PhiKernel(FractionalOrder gamma)
      : g_(gamma.value()),
        c2_(1.0 / std::tgamma(3.0 - g_)),
        c3_(6.0 / std::tgamma(4.0 - g_)),
        c4_(12.0 / std::tgamma(5.0 - g_)) {}

  double operator()(double z) const {
    const double w = 1.0 - z;
    return (std::pow(z, 2.0 - g_) + std::pow(w, 2.0 - g_)) * c2_ -
           (std::pow(z, 3.0 - g_) + std::pow(w, 3.0 - g_)) * c3_ +
           (std::pow(z, 4.0 - g_) + std::pow(w, 4.0 - g_)) * c4_;
  }

 private:
  double g_;
  double c2_;
  double c3_;
  double c4_;
};

class PsiKernel {
 public:
  explicit PsiKernel(FractionalOrder gamma)
      : g_(gamma.value()),
        c1_(kPi / std::tgamma(2.0 - g_)),
        c2_(2.0 / std::tgamma(3.0 - g_)) {}

  double operator()(double z) const {
    const double w = kPi - z;
    return (std::pow(z, 1.0 - g_) + std::pow(w, 1.0 - g_)) * c1_ -
           (std::pow(z, 2.0 - g_) + std::pow(w, 2.0 - g_)) * c2_;
  }

 private:
  double g_;
  double c1_;
  double c2_;
};

double cos_half_pi(double gamma) { return std::cos(0.5 * kPi * gamma); }

double quartic_bump(double z) { return z * z * (1.0 - z) * (1.0 - z); }
double pi_parabola(double z) { return z * (kPi - z); }

ProblemSpec with_parameters(std::string name, const ProblemParameters& p, Rectangle domain,
                            double t_end) {
  ProblemSpec spec;
  spec.name = std::move(name);
  spec.alpha = FractionalOrder(p.alpha);
  spec.beta = FractionalOrder(p.beta);
  spec.mu = FractionalOrder(p.mu);
  spec.nu = FractionalOrder(p.nu);
  spec.d_alpha = p.d_alpha;
  spec.c_beta = p.c_beta;
  spec.d_mu = p.d_mu;
  spec.c_nu = p.c_nu;
  spec.domain = domain;
  spec.t_end = t_end;
  return spec;
}

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

}  // namespace

void ProblemSpec::validate() const {
  auto fail = [this](const std::string& what) {
    throw Error(ErrorKind::ProblemSpec, "problem '" + name + "': " + what);
  };
  if (!alpha.is_dispersive() || !mu.is_dispersive()) {
    fail("alpha and mu must lie in (1, 2]");
  }
  if (beta.is_dispersive() || nu.is_dispersive()) {
    fail("beta and nu must lie in (0, 1)");
  }
  if (!(d_alpha > 0.0) || !(d_mu > 0.0)) fail("d_alpha and d_mu must be positive");
  if (!(c_beta >= 0.0) || !(c_nu >= 0.0)) fail("c_beta and c_nu must be non-negative");
  if (!(domain.width() > 0.0) || !(domain.height() > 0.0)) fail("empty domain");
  if (!(t_end > 0.0) || !std::isfinite(t_end)) fail("t_end must be positive");
  if (!initial || !source) fail("initial data and source are required");
  if (exact) {
    constexpr int kSamples = 9;
    const double scale = std::max(1.0, std::abs(exact(0.5 * (domain.x_lo + domain.x_hi),
                                                      0.5 * (domain.y_lo + domain.y_hi),
                                                      0.5 * t_end)));
    for (const double t : {0.0, 0.37 * t_end, t_end}) {
      for (int k = 0; k <= kSamples; ++k) {
        const double sx = domain.x_lo + domain.width() * k / kSamples;
        const double sy = domain.y_lo + domain.height() * k / kSamples;
        const std::array<double, 4> edge{exact(domain.x_lo, sy, t), exact(domain.x_hi, sy, t),
                                         exact(sx, domain.y_lo, t), exact(sx, domain.y_hi, t)};
        for (const double v : edge) {
          if (std::abs(v) > 1e-12 * scale) fail("exact solution does not vanish on the boundary");
        }
      }
    }
  }
}

double riesz_scale(double gamma) {
  if (gamma == 1.0) {
    throw Error(ErrorKind::ScalePole, "Riesz scale 1/(2 cos(pi gamma/2)) is singular at gamma = 1");
  }
  return 1.0 / (2.0 * cos_half_pi(FractionalOrder(gamma).value()));
}

double phi(FractionalOrder gamma, double z) {
  if (!(z >= 0.0 && z <= 1.0)) {
    throw Error(ErrorKind::Domain, "Phi is defined for z in [0, 1]");
  }
  return PhiKernel(gamma)(z);
}

double psi(FractionalOrder gamma, double z) {
  const bool open = gamma.is_dispersive();
  const bool inside = open ? (z > 0.0 && z < kPi) : (z >= 0.0 && z <= kPi);
  if (!inside) {
    throw Error(ErrorKind::Domain, open ? "Psi needs z in (0, pi) for gamma > 1"
                                        : "Psi is defined for z in [0, pi]");
  }
  return PsiKernel(gamma)(z);
}

double riesz_derivative_poly1(double gamma, double x) {
  const double kappa = riesz_scale(gamma);
  return -2.0 * kappa * phi(FractionalOrder(gamma), x);
}

double riesz_derivative_poly2(double gamma, double x) {
  const double kappa = riesz_scale(gamma);
  return -kappa * psi(FractionalOrder(gamma), x);
}

ProblemParameters example1_parameters() { return {1.8, 0.9, 1.6, 0.7, 0.25, 0.05, 0.25, 0.05}; }
ProblemParameters example2_parameters() { return {1.8, 0.7, 1.6, 0.5, 0.25, 0.05, 0.25, 0.05}; }

ProblemSpec example1(const ProblemParameters& p, double t_end) {
  auto spec = with_parameters("example1", p, Rectangle{0.0, 1.0, 0.0, 1.0}, t_end);
  // Each term is a coefficient times Phi over cos(pi gamma / 2).
  const PhiKernel phi_alpha(spec.alpha), phi_beta(spec.beta), phi_mu(spec.mu), phi_nu(spec.nu);
  const double wa = p.d_alpha / cos_half_pi(p.alpha);
  const double wb = p.c_beta / cos_half_pi(p.beta);
  const double wm = p.d_mu / cos_half_pi(p.mu);
  const double wn = p.c_nu / cos_half_pi(p.nu);
  spec.initial = [](double, double) { return 0.0; };
  spec.exact = [](double x, double y, double t) {
    return quartic_bump(x) * quartic_bump(y) * std::sin(kPi * t);
  };
  spec.source = [=](double x, double y, double t) {
    const double bx = quartic_bump(x);
    const double by = quartic_bump(y);
    const double fractional = by * (wa * phi_alpha(x) + wb * phi_beta(x)) +
                              bx * (wm * phi_mu(y) + wn * phi_nu(y));
    return std::sin(kPi * t) * fractional + kPi * bx * by * std::cos(kPi * t);
  };
  return spec;
}

ProblemSpec example1() { return example1(example1_parameters(), kPi); }

ProblemSpec example2(const ProblemParameters& p, double t_end) {
  auto spec = with_parameters("example2", p, Rectangle{0.0, kPi, 0.0, kPi}, t_end);
  const PsiKernel psi_alpha(spec.alpha), psi_beta(spec.beta), psi_mu(spec.mu), psi_nu(spec.nu);
  const double wa = p.d_alpha / (2.0 * cos_half_pi(p.alpha));
  const double wb = p.c_beta / (2.0 * cos_half_pi(p.beta));
  const double wm = p.d_mu / (2.0 * cos_half_pi(p.mu));
  const double wn = p.c_nu / (2.0 * cos_half_pi(p.nu));
  spec.initial = [](double x, double y) { return pi_parabola(x) * pi_parabola(y); };
  spec.exact = [](double x, double y, double t) {
    return pi_parabola(x) * pi_parabola(y) * std::exp(-t);
  };
  spec.source = [=](double x, double y, double t) {
    const double px = pi_parabola(x);
    const double py = pi_parabola(y);
    const double fractional = py * (wa * psi_alpha(x) + wb * psi_beta(x)) +
                              px * (wm * psi_mu(y) + wn * psi_nu(y));
    return std::exp(-t) * (fractional - px * py);
  };
  return spec;
}

ProblemSpec example2() { return example2(example2_parameters(), 2.0); }

ProblemSpec zero_problem(const ProblemParameters& p, Rectangle domain, double t_end) {
  auto spec = with_parameters("zero", p, domain, t_end);
  spec.initial = [](double, double) { return 0.0; };
  spec.source = [](double, double, double) { return 0.0; };
  spec.exact = [](double, double, double) { return 0.0; };
  return spec;
}

std::vector<std::string> catalog_names() { return {"example1", "example2", "zero"}; }

ProblemSpec make_problem(std::string_view name) {
  if (name == "example1") return example1();
  if (name == "example2") return example2();
  if (name == "zero") return zero_problem(example1_parameters(), Rectangle{}, 1.0);
  throw Error(ErrorKind::UnknownProblem, "unknown problem '" + std::string(name) + "'");
}

ProblemSpec parse_problem_config(std::string_view json_text) {
  using nlohmann::json;
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, "problem config line " +
                                      std::to_string(line_of_offset(json_text, e.byte)) + ": " +
                                      e.what());
  }
  if (!doc.is_object()) {
    throw Error(ErrorKind::Parse, "problem config line 1: top level must be an object");
  }
  static const std::array<std::string_view, 12> kKeys{
      "solution", "name", "alpha", "beta", "mu", "nu", "d_alpha", "c_beta", "d_mu", "c_nu",
      "t_end", "domain"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(kKeys.begin(), kKeys.end(), key) == kKeys.end()) {
      const auto at = json_text.find('"' + key + '"');
      throw Error(ErrorKind::Parse,
                  "problem config line " +
                      std::to_string(at == std::string_view::npos ? 0 : line_of_offset(json_text, at)) +
                      ": unknown key '" + key + "'");
    }
  }
  if (!doc.contains("solution") || !doc["solution"].is_string()) {
    throw Error(ErrorKind::Parse, "problem config: \"solution\" must name a catalog entry");
  }
  const auto solution = doc["solution"].get<std::string>();

  auto number = [&](const char* key, double fallback) {
    if (!doc.contains(key)) return fallback;
    if (!doc[key].is_number()) {
      throw Error(ErrorKind::Parse, std::string("problem config: \"") + key + "\" must be a number");
    }
    return doc[key].get<double>();
  };

  ProblemParameters base = solution == "example2" ? example2_parameters() : example1_parameters();
  ProblemParameters p{
      number("alpha", base.alpha),   number("beta", base.beta),   number("mu", base.mu),
      number("nu", base.nu),         number("d_alpha", base.d_alpha),
      number("c_beta", base.c_beta), number("d_mu", base.d_mu),   number("c_nu", base.c_nu),
  };

  std::optional<Rectangle> domain;
  if (doc.contains("domain")) {
    const auto& d = doc["domain"];
    if (!d.is_array() || d.size() != 4 ||
        !std::all_of(d.begin(), d.end(), [](const json& v) { return v.is_number(); })) {
      throw Error(ErrorKind::Parse, "problem config: \"domain\" must be [x_lo, x_hi, y_lo, y_hi]");
    }
    domain = Rectangle{d[0].get<double>(), d[1].get<double>(), d[2].get<double>(),
                       d[3].get<double>()};
  }

  ProblemSpec spec;
  try {
    if (solution == "example1") {
      if (domain && *domain != Rectangle{0.0, 1.0, 0.0, 1.0}) {
        throw Error(ErrorKind::ProblemSpec, "example1 solution is fixed to the unit square");
      }
      spec = example1(p, number("t_end", kPi));
    } else if (solution == "example2") {
      if (domain && *domain != Rectangle{0.0, kPi, 0.0, kPi}) {
        throw Error(ErrorKind::ProblemSpec, "example2 solution is fixed to [0, pi]^2");
      }
      spec = example2(p, number("t_end", 2.0));
    } else if (solution == "zero") {
      spec = zero_problem(p, domain.value_or(Rectangle{}), number("t_end", 1.0));
    } else {
      throw Error(ErrorKind::UnknownProblem, "unknown catalog solution '" + solution + "'");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OrderDomain) {
      throw Error(ErrorKind::ProblemSpec, e.what());
    }
    throw;
  }
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) {
      throw Error(ErrorKind::Parse, "problem config: \"name\" must be a string");
    }
    spec.name = doc["name"].get<std::string>();
  }
  spec.validate();
  return spec;
}

ProblemSpec load_problem_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error(ErrorKind::Io, "cannot read problem config " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_problem_config(text.str());
}

}  // namespace rsfade
