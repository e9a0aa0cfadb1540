#include "pompeiu/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>
#include <random>
#include <stdexcept>
#include <thread>
#include <unordered_map>

namespace pompeiu {

namespace {

// Neumaier compensated sum.
class Accumulator {
 public:
  void add(double x) {
    double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      c_ += (sum_ - t) + x;
    } else {
      c_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + c_; }

 private:
  double sum_ = 0.0;
  double c_ = 0.0;
};

const GaussRule& cached_rule(int order) {
  thread_local std::unordered_map<int, GaussRule> cache;
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, gauss_legendre_rule(order)).first;
  return it->second;
}

class Integrator {
 public:
  Integrator(const Integrand& f, const QuadratureConfig& cfg)
      : f_(f), cfg_(cfg), rule_(cached_rule(cfg.order)) {}

  Integral run(double u, double v, std::span<const double> breakpoints) {
    std::vector<double> cuts{u};
    for (double b : breakpoints) {
      if (b > u && b < v) cuts.push_back(b);
    }
    std::sort(cuts.begin() + 1, cuts.end());
    cuts.push_back(v);
    total_ = v - u;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      if (cuts[i + 1] > cuts[i]) piece(cuts[i], cuts[i + 1]);
    }
    Integral out;
    out.value = value_.value();
    out.error = error_;
    out.converged = converged_;
    out.evaluations = evaluations_;
    out.peak = peak_;
    return out;
  }

 private:
  double eval(double x) {
    double y = f_(x);
    ++evaluations_;
    peak_ = std::max(peak_, std::abs(y));
    return y;
  }

  double gauss(double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double acc = 0.0;
    for (std::size_t k = 0; k < rule_.nodes.size(); ++k) {
      acc += rule_.weights[k] * eval(mid + half * rule_.nodes[k]);
    }
    return half * acc;
  }

  static double simpson(double a, double fa, double fm, double b, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  }

  double local_tol(double a, double b, double estimate) const {
    return std::max(cfg_.abs_tol * (b - a) / total_, cfg_.rel_tol * std::abs(estimate));
  }

  void piece(double a, double b) {
    const auto panels = static_cast<std::size_t>(
        std::max(1.0, std::ceil(cfg_.panels_per_unit * (b - a))));
    const double h = (b - a) / static_cast<double>(panels);
    for (std::size_t i = 0; i < panels; ++i) {
      double lo = a + h * static_cast<double>(i);
      double hi = (i + 1 == panels) ? b : a + h * static_cast<double>(i + 1);
      if (cfg_.rule == QuadratureRule::gauss_legendre) {
        gauss_panel(lo, hi, gauss(lo, hi), 0);
      } else {
        double m = 0.5 * (lo + hi);
        double flo = eval(lo);
        double fm = eval(m);
        double fhi = eval(hi);
        simpson_panel(lo, flo, m, fm, hi, fhi, simpson(lo, flo, fm, hi, fhi), 0);
      }
    }
  }

  void gauss_panel(double a, double b, double whole, int depth) {
    double m = 0.5 * (a + b);
    double left = gauss(a, m);
    double right = gauss(m, b);
    double refined = left + right;
    double diff = std::abs(refined - whole);
    if (diff <= local_tol(a, b, refined) || !split_allowed(depth, a, b)) {
      if (diff > local_tol(a, b, refined)) converged_ = false;
      value_.add(refined);
      error_ += diff;
      return;
    }
    gauss_panel(a, m, left, depth + 1);
    gauss_panel(m, b, right, depth + 1);
  }

  void simpson_panel(double a, double fa, double m, double fm, double b, double fb,
                     double whole, int depth) {
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = eval(lm);
    double frm = eval(rm);
    double left = simpson(a, fa, flm, m, fm);
    double right = simpson(m, fm, frm, b, fb);
    double diff = left + right - whole;
    if (std::abs(diff) <= 15.0 * local_tol(a, b, left + right) || !split_allowed(depth, a, b)) {
      if (std::abs(diff) > 15.0 * local_tol(a, b, left + right)) converged_ = false;
      value_.add(left + right + diff / 15.0);
      error_ += std::abs(diff) / 15.0;
      return;
    }
    simpson_panel(a, fa, lm, flm, m, fm, left, depth + 1);
    simpson_panel(m, fm, rm, frm, b, fb, right, depth + 1);
  }

  bool split_allowed(int depth, double a, double b) {
    if (depth >= 60 || subdivisions_ >= cfg_.max_subdivisions) return false;
    double m = 0.5 * (a + b);
    if (!(m > a && m < b)) return false;
    ++subdivisions_;
    return true;
  }

  const Integrand& f_;
  const QuadratureConfig& cfg_;
  const GaussRule& rule_;
  Accumulator value_;
  double error_ = 0.0;
  double total_ = 1.0;
  double peak_ = 0.0;
  bool converged_ = true;
  std::size_t evaluations_ = 0;
  int subdivisions_ = 0;
};

}  // namespace

void QuadratureConfig::validate() const {
  if (order < 1 || order > 64) throw std::invalid_argument("quadrature order must be in [1, 64]");
  if (!(panels_per_unit > 0.0)) throw std::invalid_argument("panels_per_unit must be positive");
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("quadrature tolerances must be positive");
  }
  if (max_subdivisions < 0) throw std::invalid_argument("max_subdivisions must be >= 0");
}

GaussRule gauss_legendre_rule(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    long double z = std::cos(std::numbers::pi_v<long double> * (i + 0.75L) / (order + 0.5L));
    long double dp = 0.0L;
    for (int iter = 0; iter < 100; ++iter) {
      long double p1 = 1.0L;
      long double p2 = 0.0L;
      for (int j = 1; j <= order; ++j) {
        long double p3 = p2;
        p2 = p1;
        p1 = ((2.0L * j - 1.0L) * z * p2 - (j - 1.0L) * p3) / j;
      }
      dp = order * (z * p1 - p2) / (z * z - 1.0L);
      long double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-19L) break;
    }
    long double w = 2.0L / ((1.0L - z * z) * dp * dp);
    rule.nodes[i] = static_cast<double>(-z);
    rule.nodes[order - 1 - i] = static_cast<double>(z);
    rule.weights[i] = rule.weights[order - 1 - i] = static_cast<double>(w);
  }
  return rule;
}

Integral integrate(const Integrand& f, double u, double v, const QuadratureConfig& cfg,
                   std::span<const double> breakpoints) {
  if (!(u <= v)) throw std::invalid_argument("integrate needs u <= v");
  cfg.validate();
  if (u == v) return Integral{};
  return Integrator(f, cfg).run(u, v, breakpoints);
}

Integral integrate(const Function& f, double u, double v, const QuadratureConfig& cfg) {
  if (!(u <= v)) throw std::invalid_argument("integrate needs u <= v");
  std::vector<double> cuts = f.breakpoints(u, v);
  Integrand g = [&f](double x) { return f(x); };
  return integrate(g, u, v, cfg, cuts);
}

Integral integrate_over_image(const Function& f, const IntervalSet& set, const Isometry& sigma,
                              const QuadratureConfig& cfg) {
  Integral total;
  Accumulator acc;
  for (const Segment& s : apply_isometry(set, sigma)) {
    Integral part = integrate(f, s.lo, s.hi, cfg);
    acc.add(part.value);
    total.error += part.error;
    total.converged = total.converged && part.converged;
    total.evaluations += part.evaluations;
    total.peak = std::max(total.peak, part.peak);
  }
  total.value = acc.value();
  return total;
}

std::string_view to_string(IsometryFamily family) {
  return family == IsometryFamily::full ? "full" : "translations";
}

std::vector<Isometry> sample_isometries(const Sampler& sampler, IsometryFamily family) {
  std::vector<Isometry> out;
  if (const auto* grid = std::get_if<GridSampler>(&sampler)) {
    if (grid->count < 2) throw std::invalid_argument("grid sampler needs at least 2 points");
    for (int i = 0; i < grid->count; ++i) {
      double t = grid->t0 + (grid->t1 - grid->t0) * i / (grid->count - 1);
      out.push_back({t, false});
      if (family == IsometryFamily::full) out.push_back({t, true});
    }
    return out;
  }
  const auto& random = std::get<RandomSampler>(sampler);
  if (random.count < 2) throw std::invalid_argument("random sampler needs at least 2 draws");
  std::mt19937_64 rng(random.seed);
  for (int i = 0; i < random.count; ++i) {
    double unit = static_cast<double>(rng() >> 11) * 0x1p-53;
    bool reflect = (rng() >> 63) != 0;
    out.push_back({random.t_min + (random.t_max - random.t_min) * unit,
                   family == IsometryFamily::full && reflect});
  }
  return out;
}

InvarianceReport verify_invariance(const Function& f, const IntervalSet& set,
                                   IsometryFamily family, const Sampler& sampler,
                                   const QuadratureConfig& cfg, unsigned threads,
                                   std::size_t witness_count) {
  cfg.validate();
  const std::vector<Isometry> sigmas = sample_isometries(sampler, family);
  const std::size_t n = sigmas.size();
  std::vector<InvarianceSample> rows(n);
  std::vector<double> peaks(n, 0.0);

  if (threads == 0) threads = std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  std::vector<std::exception_ptr> failures(threads);
  auto work = [&](unsigned w) {
    try {
      for (std::size_t i = w; i < n; i += threads) {
        Integral r = integrate_over_image(f, set, sigmas[i], cfg);
        rows[i] = {sigmas[i], r.value, r.error, r.converged};
        peaks[i] = r.peak;
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (threads <= 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
  }
  for (const auto& e : failures) {
    if (e) std::rethrow_exception(e);
  }

  InvarianceReport report;
  report.family = family;
  report.samples = n;
  report.measure = set.measure().to_double();
  Accumulator mean;
  for (std::size_t i = 0; i < n; ++i) {
    mean.add(rows[i].integral);
    report.sup_abs_f = std::max(report.sup_abs_f, peaks[i]);
    report.quadrature_converged = report.quadrature_converged && rows[i].converged;
    report.max_quadrature_error = std::max(report.max_quadrature_error, rows[i].error);
  }
  report.c_estimate = mean.value() / static_cast<double>(n);
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  auto deviation = [&](std::size_t i) { return std::abs(rows[i].integral - report.c_estimate); };
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return deviation(a) > deviation(b); });
  report.max_abs_deviation = deviation(order.front());
  double scale = report.sup_abs_f * report.measure;
  report.relative_deviation = scale > 0.0 ? report.max_abs_deviation / scale
                                          : report.max_abs_deviation;
  for (std::size_t k = 0; k < std::min(witness_count, n); ++k) {
    report.witnesses.push_back(rows[order[k]]);
  }
  report.rows = std::move(rows);
  return report;
}

double signed_window_integral(const Function& f, std::span<const WindowBlock> pattern, double x,
                              const QuadratureConfig& cfg) {
  Accumulator acc;
  double cursor = x;
  for (const WindowBlock& block : pattern) {
    if (!(block.length > 0.0)) throw std::invalid_argument("window blocks need positive length");
    if (block.sign != 0) {
      acc.add(block.sign * integrate(f, cursor, cursor + block.length, cfg).value);
    }
    cursor += block.length;
  }
  return acc.value();
}

}  // namespace pompeiu
