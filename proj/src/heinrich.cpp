#include <algorithm>
#include <cmath>

#include "discrepancy/error.hpp"
#include "discrepancy/l2.hpp"
#include "select.hpp"

namespace disc {

void HeinrichArray::validate() const {
  if (coords.size() != weights.size() * dim) throw InvalidArgument("array coordinates and weights disagree");
  for (double c : coords) {
    if (!(c >= 0.0 && c <= 1.0)) throw InvalidArgument("array coordinate outside [0,1]");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) throw InvalidArgument("array weights must be finite");
  }
}

namespace {

// Accumulation happens in extended precision: the pair sum is typically
// several orders of magnitude larger than the discrepancy it feeds.
using Acc = long double;

struct Entry {
  std::size_t idx;
  double w;
};

struct Context {
  const HeinrichArray& a;
  const HeinrichArray& b;
  bool parallel;

  double y(const Entry& e, std::size_t k) const { return a.coords[e.idx * a.dim + k]; }
  double z(const Entry& e, std::size_t k) const { return b.coords[e.idx * b.dim + k]; }
};

constexpr std::size_t kTaskCutoff = 4096;
constexpr int kTaskDepth = 6;

Acc direct(const Context& ctx, const std::vector<Entry>& a, const std::vector<Entry>& b, std::size_t d) {
  Acc total = 0;
  for (const Entry& ea : a) {
    Acc row = 0;
    for (const Entry& eb : b) {
      double p = 1.0;
      for (std::size_t k = 0; k < d; ++k) p *= std::min(ctx.y(ea, k), ctx.z(eb, k));
      row += static_cast<Acc>(eb.w) * p;
    }
    total += static_cast<Acc>(ea.w) * row;
  }
  return total;
}

Acc weight_sum(const std::vector<Entry>& v) {
  Acc s = 0;
  for (const Entry& e : v) s += e.w;
  return s;
}

// sum_i v_i ( sum_{z_j <= y_i} w_j z_j + y_i sum_{z_j > y_i} w_j ) after sorting.
Acc one_dimensional(const Context& ctx, std::vector<Entry> a, std::vector<Entry> b) {
  std::sort(a.begin(), a.end(), [&](const Entry& l, const Entry& r) {
    const double yl = ctx.y(l, 0), yr = ctx.y(r, 0);
    return yl < yr || (yl == yr && l.idx < r.idx);
  });
  std::sort(b.begin(), b.end(), [&](const Entry& l, const Entry& r) {
    const double zl = ctx.z(l, 0), zr = ctx.z(r, 0);
    return zl < zr || (zl == zr && l.idx < r.idx);
  });
  const Acc w_total = weight_sum(b);
  Acc below_wz = 0;
  Acc below_w = 0;
  Acc total = 0;
  std::size_t j = 0;
  for (const Entry& ea : a) {
    const double y = ctx.y(ea, 0);
    while (j < b.size() && ctx.z(b[j], 0) <= y) {
      below_wz += static_cast<Acc>(b[j].w) * ctx.z(b[j], 0);
      below_w += b[j].w;
      ++j;
    }
    total += static_cast<Acc>(ea.w) * (below_wz + static_cast<Acc>(y) * (w_total - below_w));
  }
  return total;
}

Acc recurse(const Context& ctx, std::vector<Entry> a, std::vector<Entry> b, std::size_t d, int depth) {
  if (a.empty() || b.empty()) return 0;
  if (d == 0) return weight_sum(a) * weight_sum(b);
  if (a.size() == 1 || b.size() == 1) return direct(ctx, a, b, d);
  if (d == 1) return one_dimensional(ctx, std::move(a), std::move(b));

  const std::size_t axis = d - 1;
  const std::size_t half = a.size() / 2;
  detail::select_kth(a.begin(), a.end(), half, [&](const Entry& l, const Entry& r) {
    const double yl = ctx.y(l, axis), yr = ctx.y(r, axis);
    return yl < yr || (yl == yr && l.idx < r.idx);
  });
  double mu = 0.0;
  for (std::size_t i = 0; i < half; ++i) mu = std::max(mu, ctx.y(a[i], axis));

  std::vector<Entry> a_left(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(half));
  std::vector<Entry> a_right(a.begin() + static_cast<std::ptrdiff_t>(half), a.end());
  std::vector<Entry> b_left, b_right;
  for (const Entry& e : b) (ctx.z(e, axis) <= mu ? b_left : b_right).push_back(e);
  a.clear();
  a.shrink_to_fit();
  b.clear();
  b.shrink_to_fit();

  std::vector<Entry> a_left_scaled = a_left;
  for (Entry& e : a_left_scaled) e.w *= ctx.y(e, axis);
  std::vector<Entry> b_left_scaled = b_left;
  for (Entry& e : b_left_scaled) e.w *= ctx.z(e, axis);

  Acc r1 = 0, r2 = 0, r3 = 0, r4 = 0;
  const bool spawn = ctx.parallel && depth < kTaskDepth && a_left.size() + a_right.size() + b_left.size() + b_right.size() > kTaskCutoff;
  if (spawn) {
#pragma omp task shared(r1, a_left, b_left)
    r1 = recurse(ctx, a_left, b_left, d, depth + 1);
#pragma omp task shared(r2, a_right, b_right)
    r2 = recurse(ctx, a_right, b_right, d, depth + 1);
#pragma omp task shared(r3, a_left_scaled, b_right)
    r3 = recurse(ctx, a_left_scaled, b_right, d - 1, depth + 1);
#pragma omp task shared(r4, a_right, b_left_scaled)
    r4 = recurse(ctx, a_right, b_left_scaled, d - 1, depth + 1);
#pragma omp taskwait
  } else {
    r1 = recurse(ctx, std::move(a_left), b_left, d, depth + 1);
    r3 = recurse(ctx, std::move(a_left_scaled), b_right, d - 1, depth + 1);
    r2 = recurse(ctx, a_right, std::move(b_right), d, depth + 1);
    r4 = recurse(ctx, std::move(a_right), std::move(b_left_scaled), d - 1, depth + 1);
  }
  return ((r1 + r2) + r3) + r4;
}

double run(const HeinrichArray& a, const HeinrichArray& b, long d, bool parallel) {
  if (d < 0) throw InvalidArgument("dimension parameter must be nonnegative");
  a.validate();
  b.validate();
  const auto du = static_cast<std::size_t>(d);
  if (du > a.dim || du > b.dim) throw InvalidArgument("dimension parameter exceeds array dimension");

  std::vector<Entry> ea(a.size()), eb(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) ea[i] = {i, a.weights[i]};
  for (std::size_t i = 0; i < b.size(); ++i) eb[i] = {i, b.weights[i]};
  const Context ctx{a, b, parallel};
  Acc result = 0;
  if (parallel) {
#pragma omp parallel
#pragma omp single
    result = recurse(ctx, std::move(ea), std::move(eb), du, 0);
  } else {
    result = recurse(ctx, std::move(ea), std::move(eb), du, 0);
  }
  return static_cast<double>(result);
}

}  // namespace

double heinrich_D(const HeinrichArray& a, const HeinrichArray& b, long d) { return run(a, b, d, true); }

double serial::heinrich_D(const HeinrichArray& a, const HeinrichArray& b, long d) { return run(a, b, d, false); }

}  // namespace disc
