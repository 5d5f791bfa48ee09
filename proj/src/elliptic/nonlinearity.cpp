#include "bcwp/elliptic/nonlinearity.hpp"

#include "bcwp/errors.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

namespace bcwp::elliptic {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

struct Monomial {
  double c;
  double e;
};

// Terms of E(u) = lambda u^{p-1} - S_F u^{q-1} with like exponents merged and zero coefficients dropped.
std::vector<Monomial> envelope_terms(const PdeProblem& pb) {
  std::vector<Monomial> t;
  if (pb.lambda != 0.0) t.push_back({pb.lambda, pb.p - 1.0});
  if (pb.S_F != 0.0) {
    if (!t.empty() && t[0].e == pb.q - 1.0) t[0].c -= pb.S_F;
    else t.push_back({-pb.S_F, pb.q - 1.0});
  }
  std::erase_if(t, [](const Monomial& m) { return m.c == 0.0; });
  return t;
}

double evaluate(const std::vector<Monomial>& terms, double u) {
  double v = 0.0;
  for (const auto& m : terms) v += m.c * std::pow(u, m.e);
  return v;
}

// Limit of the sum of monomials as u -> 0 (at_zero) or u -> inf; the dominant exponent decides.
double limit(const std::vector<Monomial>& terms, bool at_zero) {
  if (terms.empty()) return 0.0;
  const Monomial* dom = &terms[0];
  for (const auto& m : terms)
    if (at_zero ? m.e < dom->e : m.e > dom->e) dom = &m;
  const bool blows_up = at_zero ? dom->e < 0.0 : dom->e > 0.0;
  if (blows_up) return dom->c > 0 ? inf : -inf;
  if (dom->e == 0.0) return dom->c;
  return 0.0;
}

// Interior extremum of sign * E on a log grid, refined in log u.
EnvelopeExtremum extremum(const PdeProblem& pb, double sign) {
  const auto terms = envelope_terms(pb);
  auto g = [&](double x) { return sign * evaluate(terms, std::exp(x)); };
  const double lo = std::log(1e-12), hi = std::log(1e12);
  constexpr int n = 10000;
  const double dx = (hi - lo) / (n - 1);
  int best = 0;
  double best_value = inf;
  for (int i = 0; i < n; ++i) {
    const double v = g(lo + i * dx);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  double best_x = lo + best * dx;
  if (best > 0 && best < n - 1) {
    const auto r = boost::math::tools::brent_find_minima(g, best_x - dx, best_x + dx, 52);
    if (r.second < best_value) {
      best_x = r.first;
      best_value = r.second;
    }
  }
  const double end_value = std::min(sign * limit(terms, true), sign * limit(terms, false));
  EnvelopeExtremum out;
  const bool constant = terms.empty() || (terms.size() == 1 && terms[0].e == 0.0);
  if (constant) {
    out.value = terms.empty() ? 0.0 : terms[0].c;
    out.attained = true;
    out.at = 1.0;
    return out;
  }
  // E is a sum of at most two powers, so it has at most one interior critical point: an
  // interior value strictly below both end limits is the attained extremum, otherwise the
  // extremum is an end limit that E never reaches
  const double slack = 1e-12 * std::max(1.0, std::abs(best_value));
  if (best_value < end_value - slack) {
    out.value = sign * best_value;
    out.attained = true;
    out.at = std::exp(best_x);
  } else {
    out.value = sign * end_value;
    out.attained = false;
  }
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

Nonlinearity nonlinearity_analysis(double lambda, double S_F, double p, double q, double S_B_min) {
  Nonlinearity out;
  out.lambda = lambda;
  out.S_F = S_F;
  out.p = p;
  out.q = q;
  out.S_B_min = S_B_min;
  auto f = [&](double t) { return lambda * std::pow(t, p) - (S_F != 0.0 ? S_F * std::pow(t, q) : 0.0); };

  if (lambda < 0.0 && S_F < 0.0 && p != q) {
    const double g = std::pow(S_F / lambda, 1.0 / (p - q));
    const double scale = std::abs(lambda) * std::pow(g, p) + std::abs(S_F) * std::pow(g, q);
    if (!(g > 0.0) || std::abs(f(g)) > 1e-12 * scale) throw Error("nonlinearity_analysis: gamma fails f(gamma) = 0");
    out.gamma = g;
  }

  // largest positive zero of f(t) - S_B_min t: find a point beyond which it is negative, then scan down
  auto h = [&](double t) { return f(t) - S_B_min * t; };
  double top = 1.0;
  while (top < 1e12 && !(h(top) < 0.0)) top *= 2.0;
  if (h(top) < 0.0) {
    constexpr int n = 4000;
    const double lt = std::log(top), lb = std::log(1e-12);
    double prev = top;
    for (int i = 1; i < n; ++i) {
      const double t = std::exp(lt + (lb - lt) * i / (n - 1));
      const double v = h(t);
      if (v == 0.0) {
        out.gamma_tilde = t;
        break;
      }
      if (v > 0.0) {
        boost::math::tools::eps_tolerance<double> tol(50);
        std::uintmax_t iters = 200;
        const auto r = boost::math::tools::toms748_solve(h, t, prev, v, h(prev), tol, iters);
        out.gamma_tilde = 0.5 * (r.first + r.second);
        break;
      }
      prev = t;
    }
  }

  // f(t)/t = lambda t^{p-1} - S_F t^{q-1}, term by term
  const bool t1_flat = lambda == 0.0 || p == 1.0;
  const bool t1_strict = (lambda < 0.0 && p > 1.0) || (lambda > 0.0 && p < 1.0);
  const bool t2_flat = S_F == 0.0 || q == 1.0;
  const bool t2_strict = (S_F < 0.0 && q < 1.0) || (S_F > 0.0 && q > 1.0);
  out.quotient_decreasing = (t1_flat || t1_strict) && (t2_flat || t2_strict) && (t1_strict || t2_strict);
  if (out.quotient_decreasing) {
    out.quotient_reason = "both terms of f(t)/t are nonincreasing and one is strictly decreasing";
  } else if (!(t1_flat || t1_strict)) {
    out.quotient_reason = "lambda t^(p-1) increases";
  } else if (!(t2_flat || t2_strict)) {
    out.quotient_reason = "-S_F t^(q-1) increases";
  } else {
    out.quotient_reason = "f(t)/t is constant";
  }
  return out;
}

Nonlinearity nonlinearity_analysis(const PdeProblem& problem) {
  return nonlinearity_analysis(problem.lambda, problem.S_F, problem.p, problem.q, problem.S_B.min());
}

EnvelopeExtremum envelope_inf(const PdeProblem& problem) { return extremum(problem, 1.0); }

EnvelopeExtremum envelope_sup(const PdeProblem& problem) { return extremum(problem, -1.0); }

std::optional<NonexistenceCertificate> nonexistence_check(const PdeProblem& problem, double margin) {
  const double smax = problem.S_B.max();
  const double smin = problem.S_B.min();
  const EnvelopeExtremum lo = envelope_inf(problem);
  if (smax <= lo.value - margin || (!lo.attained && smax <= lo.value)) {
    return NonexistenceCertificate{"envelope-max",
                                   "max S_B = " + num(smax) + " <= inf_u f(u)/u = " + num(lo.value) +
                                       (lo.attained ? "" : " (not attained)"),
                                   smax, lo.value};
  }
  const EnvelopeExtremum hi = envelope_sup(problem);
  if (smin >= hi.value + margin || (!hi.attained && smin >= hi.value)) {
    return NonexistenceCertificate{"envelope-min",
                                   "min S_B = " + num(smin) + " >= sup_u f(u)/u = " + num(hi.value) +
                                       (hi.attained ? "" : " (not attained)"),
                                   smin, hi.value};
  }
  return std::nullopt;
}

std::optional<NonexistenceCertificate> eigen_sign_check(const PdeProblem& problem, double lambda1,
                                                        double zero_tolerance) {
  // terms linear in u move into the operator and shift its principal eigenvalue
  double linear = 0.0;
  double lam = problem.lambda, sf = problem.S_F;
  if (problem.p == 1.0) {
    linear += lam;
    lam = 0.0;
  }
  if (problem.q == 1.0 && sf != 0.0) {
    linear -= sf;
    sf = 0.0;
  }
  const double mu1 = lambda1 - linear;
  const double tol = zero_tolerance * std::max(1.0, std::abs(lambda1));
  const bool positive = lam >= 0.0 && sf <= 0.0 && (lam != 0.0 || sf != 0.0);
  const bool negative = lam < 0.0 && sf == 0.0;
  const bool zero = lam == 0.0 && sf == 0.0;
  const std::string shifted = linear == 0.0 ? "lambda1" : "lambda1 - (linear part) ";
  if (positive && mu1 <= tol)
    return NonexistenceCertificate{"eigen-sign",
                                   shifted + " = " + num(mu1) + " <= 0 while the nonlinearity is positive", mu1, 0.0};
  if (negative && mu1 >= -tol)
    return NonexistenceCertificate{"eigen-sign",
                                   shifted + " = " + num(mu1) + " >= 0 while the nonlinearity is negative", mu1, 0.0};
  if (zero && std::abs(mu1) > tol)
    return NonexistenceCertificate{"eigen-sign", shifted + " = " + num(mu1) + " != 0 for a linear equation", mu1,
                                   0.0};
  return std::nullopt;
}

}  // namespace bcwp::elliptic
