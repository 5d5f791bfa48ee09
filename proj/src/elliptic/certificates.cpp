#include "bcwp/elliptic/solver.hpp"

#include "bcwp/errors.hpp"

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace bcwp::elliptic {

namespace {

std::vector<double> log_grid(double lo, double hi, int per_decade) {
  const int n = std::max(2, static_cast<int>(std::ceil(std::log10(hi / lo) * per_decade)) + 1);
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = lo * std::pow(hi / lo, static_cast<double>(i) / (n - 1));
  return out;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(10);
  os << x;
  return os.str();
}

// max over points of L(v) - f(v), relative to max(1, |f(v)|_inf); <= 0 for a subsolution
double sub_excess(const PdeProblem& pb, const EllipticOperator& op, const ScalarField& v) {
  const ScalarField fv = pb.f(v);
  return (op.apply(v) - fv).max() / std::max(1.0, fv.max_abs());
}

// max over points of f(v) - L(v), relative; <= 0 for a supersolution
double super_excess(const PdeProblem& pb, const EllipticOperator& op, const ScalarField& v) {
  const ScalarField fv = pb.f(v);
  return (fv - op.apply(v)).max() / std::max(1.0, fv.max_abs());
}

// Round-off allowance in the discrete inequality checks.
constexpr double check_tolerance = 1e-12;

std::optional<Certificate> bracket(const PdeProblem& pb, const CertificateOptions& opt, std::string& why) {
  const double smax = pb.S_B.max(), smin = pb.S_B.min();
  auto E = [&](double a) { return pb.f(a) / a; };
  std::vector<double> subs, supers;
  for (double a : log_grid(opt.bracket_lo, opt.bracket_hi, opt.points_per_decade)) {
    const double e = E(a);
    if (e >= smax) subs.push_back(a);
    if (e <= smin) supers.push_back(a);
  }
  // the envelope extrema catch tangencies the grid steps over
  const EnvelopeExtremum hi = envelope_sup(pb);
  if (hi.attained && E(hi.at) >= smax) subs.push_back(hi.at);
  const EnvelopeExtremum lo = envelope_inf(pb);
  if (lo.attained && E(lo.at) <= smin) supers.push_back(lo.at);
  std::sort(subs.begin(), subs.end());
  std::sort(supers.begin(), supers.end());
  for (double a1 : supers) {
    const auto it = std::upper_bound(subs.begin(), subs.end(), a1);
    if (it == subs.begin()) continue;
    const double a0 = *(it - 1);
    Certificate c;
    c.kind = CertificateKind::bracket;
    c.a0 = a0;
    c.a1 = a1;
    c.sub = ScalarField(pb.grid_ptr(), a0);
    c.super = ScalarField(pb.grid_ptr(), a1);
    c.construction = "constants a0 = " + num(a0) + ", a1 = " + num(a1) + " with f(a0)/a0 >= max S_B and f(a1)/a1 <= min S_B";
    return c;
  }
  why = subs.empty() ? "no constant subsolution in the scanned range"
                     : (supers.empty() ? "no constant supersolution in the scanned range"
                                       : "constant sub- and supersolutions are in the wrong order");
  return std::nullopt;
}

std::optional<Certificate> eigen_pair(const PdeProblem& pb, const EigenResult& eig, const CertificateOptions& opt,
                                      std::string& why) {
  if (!(eig.lambda1 > 0.0)) {
    why = "lambda1 <= 0, so there is no positive e with L e = 1";
    return std::nullopt;
  }
  const EllipticOperator op(pb);
  const ScalarField e = unit_response(op);

  // supersolution M e: first admissible M on the grid, else a refined minimum of the excess
  std::optional<double> M;
  double best_M = opt.M_lo, best_excess = INFINITY;
  for (double m : log_grid(opt.M_lo, opt.M_hi, opt.points_per_decade)) {
    const double x = super_excess(pb, op, m * e);
    if (x <= check_tolerance) {
      M = m;
      break;
    }
    if (x < best_excess) {
      best_excess = x;
      best_M = m;
    }
  }
  if (!M) {
    const double step = std::log(10.0) / opt.points_per_decade;
    auto g = [&](double x) { return super_excess(pb, op, std::exp(x) * e); };
    const double c = std::log(best_M);
    const auto r = boost::math::tools::brent_find_minima(g, c - step, c + step, 52);
    if (r.second <= check_tolerance) M = std::exp(r.first);
  }
  if (!M) {
    why = "no M in [" + num(opt.M_lo) + ", " + num(opt.M_hi) + "] makes M e a supersolution";
    return std::nullopt;
  }
  if (opt.M_factor != 1.0 && super_excess(pb, op, *M * opt.M_factor * e) <= check_tolerance) *M *= opt.M_factor;
  const ScalarField super = *M * e;

  // subsolution epsilon u1 below M e
  for (double eps : [&] {
         auto g = log_grid(opt.eps_lo, opt.eps_hi, opt.points_per_decade);
         std::reverse(g.begin(), g.end());
         return g;
       }()) {
    const double scaled = eps * opt.eps_factor;
    const ScalarField sub = scaled * eig.u1;
    if (sub_excess(pb, op, sub) > check_tolerance) continue;
    if ((sub - super).max() > 0.0) continue;
    Certificate c;
    c.kind = CertificateKind::sub_super;
    c.epsilon = scaled;
    c.M = *M;
    c.sub = sub;
    c.super = super;
    c.construction = "sub = " + num(scaled) + " u1, super = " + num(*M) + " e with L e = 1";
    return c;
  }
  why = "no epsilon in [" + num(opt.eps_lo) + ", " + num(opt.eps_hi) + "] makes epsilon u1 a subsolution below M e";
  return std::nullopt;
}

}  // namespace

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::bracket: return "bracket";
    case CertificateKind::sub_super: return "sub-super";
    case CertificateKind::variational: return "variational";
    case CertificateKind::linear: return "linear";
    case CertificateKind::newton: return "newton-empirical";
  }
  return "unknown";
}

double certificate_violation(const PdeProblem& problem, const Certificate& c) {
  if (!c.has_order_interval()) return 0.0;
  const EllipticOperator op(problem);
  const double order = std::max(0.0, (c.sub - c.super).max());
  return std::max({0.0, sub_excess(problem, op, c.sub), super_excess(problem, op, c.super), order});
}

double choose_nu(const PdeProblem& problem, double lo, double hi) {
  double min_fp = std::min(problem.f_prime(lo), problem.f_prime(hi));
  if (hi > lo)
    for (double t : log_grid(lo, hi, 400)) min_fp = std::min(min_fp, problem.f_prime(t));
  // 5% head room because the minimum of f' is sampled
  double nu = std::max(0.0, -problem.S_B.min()) + 1.05 * std::max(0.0, -min_fp);
  if ((problem.S_B + nu).max_abs() == 0.0) nu += 1.0;
  return nu;
}

std::optional<Certificate> construct_sub_super(const PdeProblem& problem, const EigenResult& eig,
                                               const CertificateOptions& options, std::string* why) {
  problem.validate();
  std::string reasons;
  std::optional<Certificate> c;
  if (options.allow_bracket) {
    std::string r;
    c = bracket(problem, options, r);
    if (!c) reasons += "bracket: " + r;
  }
  if (!c && options.allow_eigen) {
    std::string r;
    c = eigen_pair(problem, eig, options, r);
    if (!c) reasons += std::string(reasons.empty() ? "" : "; ") + "eigen: " + r;
  }
  if (!c) {
    if (why) *why = reasons;
    return std::nullopt;
  }
  c->nu = choose_nu(problem, c->sub.min(), c->super.max());
  const double v = certificate_violation(problem, *c);
  if (v > check_tolerance) throw CertificateViolation("construct_sub_super: constructed pair violates its inequalities by " + num(v));
  return c;
}

ScalarField scale_solution(const ScalarField& u0, double lambda0, double lambda, double p) {
  return scale_factor(lambda0, lambda, p) * u0;
}

double scale_factor(double lambda0, double lambda, double p) {
  if (p == 1.0) throw ConfigError("scale_solution: p = 1 has no scaling");
  if (lambda0 == 0.0 || lambda == 0.0 || (lambda0 > 0) != (lambda > 0))
    throw ConfigError("scale_solution: lambda and lambda0 must share a nonzero sign");
  return std::pow(lambda / lambda0, 1.0 / (1.0 - p));
}

}  // namespace bcwp::elliptic
