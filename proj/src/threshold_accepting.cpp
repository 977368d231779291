#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include "discrepancy/error.hpp"
#include "discrepancy/linf_approx.hpp"
#include "discrepancy/local.hpp"
#include "search_space.hpp"

namespace disc {

double polynomial_sample(double lo, double hi, std::size_t d, double s) {
  const double e = static_cast<double>(d);
  const double lo_d = std::pow(lo, e);
  const double hi_d = std::pow(hi, e);
  const double r = std::pow((hi_d - lo_d) * s + lo_d, 1.0 / e);
  return std::clamp(r, lo, hi);
}

namespace {

void check_config(const TAConfig& cfg) {
  if (cfg.iterations == 0) throw InvalidArgument("iteration count must be positive");
  if (cfg.mc == 0) throw InvalidArgument("mc must be at least 1");
}

struct Tracker {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<double> y;
  BoxKind kind = BoxKind::open;

  void offer(double v, const std::vector<double>& corner, BoxKind k) {
    if (v > value) {
      value = v;
      y = corner;
      kind = k;
    }
  }
};

BoundResult to_result(const PointSet& x, Tracker best, const char* method, const TAConfig& cfg) {
  Corner witness(std::move(best.y));
  const double lower = local_value(witness.values(), best.kind, x);
  BoundResult out{lower, 1.0, std::move(witness), best.kind, method};
  out.seed = cfg.seed;
  out.iterations = cfg.iterations;
  return out;
}

}  // namespace

BoundResult ta_basic(const PointSet& x, const TAConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  const detail::GridSpace space(x);
  const std::size_t mc = std::min(cfg.mc, x.dim());
  const std::size_t k = cfg.k ? cfg.k : std::max<std::size_t>(1, x.size() / 8);
  auto score = [&](const std::vector<std::size_t>& idx) { return detail::star_score(x, space.corner(idx)); };

  const std::size_t segment = detail::isqrt_ceil(cfg.iterations);
  const std::size_t segments = (cfg.iterations + segment - 1) / segment;
  std::vector<double> changes;
  for (std::size_t s = 0; s < segment; ++s) {
    auto a = space.random_point(rng);
    const double fa = score(a).value;
    space.neighbor(a, mc, k, rng);
    changes.push_back(std::fabs(score(a).value - fa));
  }
  const auto thresholds = detail::threshold_schedule(std::move(changes), segments);

  Tracker best;
  auto y = space.random_point(rng);
  detail::Scored fy = score(y);
  best.offer(fy.value, space.corner(y), fy.kind);
  for (std::size_t it = 0; it < cfg.iterations; ++it) {
    auto z = y;
    space.neighbor(z, mc, k, rng);
    const detail::Scored fz = score(z);
    if (fz.value - fy.value >= thresholds[it / segment]) {
      y = std::move(z);
      fy = fz;
      best.offer(fy.value, space.corner(y), fy.kind);
    }
  }
  return to_result(x, std::move(best), "ta-basic", cfg);
}

namespace {

// One phase of the improved search, optimizing the local value of `kind`.
// Every rounded candidate of either kind is offered to `best`.
class Phase {
 public:
  Phase(const PointSet& x, const detail::GridSpace& space, std::size_t mc, BoxKind kind, Rng& rng, Tracker& best)
      : x_(x), space_(space), mc_(mc), kind_(kind), rng_(rng), best_(best) {
    const std::size_t d = x.dim();
    axis_.resize(d);
    reach_.resize(d);
    for (std::size_t j = 0; j < d; ++j) {
      const auto& aug = space.view().axes[j].augmented;
      if (aug.front() != 0.0) axis_[j].push_back(0.0);
      axis_[j].insert(axis_[j].end(), aug.begin(), aug.end());
      reach_[j] = (aug.size() + 1) / 2;
    }
  }

  void run(std::size_t iterations) {
    const std::size_t segment = detail::isqrt_ceil(iterations);
    const std::size_t segments = (iterations + segment - 1) / segment;
    std::vector<double> changes;
    for (std::size_t s = 0; s < segment; ++s) {
      const auto a = start();
      const double fa = value(a);
      const auto b = step(a, 0.0);
      changes.push_back(std::fabs(b.second - fa));
    }
    const auto thresholds = detail::threshold_schedule(std::move(changes), segments);

    std::vector<double> y = start();
    double fy = value(y);
    best_.offer(fy, y, kind_);
    for (std::size_t it = 0; it < iterations; ++it) {
      const double progress = static_cast<double>(it) / static_cast<double>(iterations);
      auto [z, fz] = step(y, progress);
      if (fz - fy >= thresholds[it / segment]) {
        y = std::move(z);
        fy = fz;
      }
    }
  }

 private:
  std::vector<double> round(const std::vector<double>& y) {
    const Corner c(y);
    const Corner r = kind_ == BoxKind::closed ? snap_down(c, x_) : snap_up(c, x_, rng_);
    return {r.values().begin(), r.values().end()};
  }

  std::vector<double> start() { return round(space_.corner(space_.random_point(rng_))); }

  double value(const std::vector<double>& y) const { return local_value(y, kind_, x_); }

  // Samples a continuous neighbour, rounds it both ways, records both, and
  // returns the rounding that belongs to this phase.
  std::pair<std::vector<double>, double> step(const std::vector<double>& y, double progress) {
    std::vector<double> z = y;
    for (std::size_t j : detail::GridSpace::pick_coordinates(x_.dim(), mc_, rng_)) {
      const auto& axis = axis_[j];
      const auto pos = static_cast<std::size_t>(std::lower_bound(axis.begin(), axis.end(), y[j]) - axis.begin());
      const auto k = std::max<std::size_t>(
          1, static_cast<std::size_t>(std::ceil(static_cast<double>(reach_[j]) * (1.0 - progress))));
      const double lo = axis[pos >= k ? pos - k : 0];
      const double hi = axis[std::min(pos + k, axis.size() - 1)];
      z[j] = polynomial_sample(lo, hi, x_.dim(), uniform01(rng_));
    }
    const Corner zc(z);
    const Corner down = snap_down(zc, x_);
    const Corner up = snap_up(zc, x_, rng_);
    const double f_down = local_value(down.values(), BoxKind::closed, x_);
    const double f_up = local_value(up.values(), BoxKind::open, x_);
    std::vector<double> vd(down.values().begin(), down.values().end());
    std::vector<double> vu(up.values().begin(), up.values().end());
    best_.offer(f_down, vd, BoxKind::closed);
    best_.offer(f_up, vu, BoxKind::open);
    if (kind_ == BoxKind::closed) return {std::move(vd), f_down};
    return {std::move(vu), f_up};
  }

  const PointSet& x_;
  const detail::GridSpace& space_;
  std::size_t mc_;
  BoxKind kind_;
  Rng& rng_;
  Tracker& best_;
  std::vector<std::vector<double>> axis_;  // {0} u augmented grid
  std::vector<std::size_t> reach_;         // initial neighbourhood radius
};

}  // namespace

BoundResult ta_improved(const PointSet& x, const TAConfig& cfg) {
  check_config(cfg);
  Rng rng(cfg.seed);
  const detail::GridSpace space(x);
  const std::size_t mc = std::min(cfg.mc, x.dim());
  Tracker best;
  const std::size_t first = std::max<std::size_t>(1, cfg.iterations / 2);
  const std::size_t second = std::max<std::size_t>(1, cfg.iterations - cfg.iterations / 2);
  Phase(x, space, mc, BoxKind::closed, rng, best).run(first);
  Phase(x, space, mc, BoxKind::open, rng, best).run(second);
  return to_result(x, std::move(best), "ta-improved", cfg);
}

BoundResult ta_restarts(const PointSet& x, const TAConfig& cfg, std::size_t restarts, TAVariant variant) {
  if (restarts == 0) throw InvalidArgument("need at least one restart");
  std::vector<std::optional<BoundResult>> runs(restarts);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < restarts; ++r) {
    TAConfig c = cfg;
    c.seed = cfg.seed + r;
    runs[r] = variant == TAVariant::basic ? ta_basic(x, c) : ta_improved(x, c);
  }
  std::size_t pick = 0;
  for (std::size_t r = 1; r < restarts; ++r) {
    if (runs[r]->lower > runs[pick]->lower) pick = r;
  }
  BoundResult out = std::move(*runs[pick]);
  out.seed = cfg.seed;
  return out;
}

}  // namespace disc
