// Divide-and-conquer exact star discrepancy.
//
// Work in rank space: on axis j the grid is g_j[0..n_j] (the distinct
// coordinates followed by 1), a point has rank r_j in [0, n_j), and a
// threshold s_j in [0, n_j] selects the open corner g_j[s_j] or the closed
// corner g_j[s_j - 1]. Both boxes then contain exactly the points with
// r_j < s_j on every axis, so ties need no special treatment.
//
// A region fixes a threshold range [lo_j, hi_j] on the first L axes. A point
// can be counted somewhere in it iff r_j < hi_j on those axes, and it is
// internal on axis j iff lo_j <= r_j < hi_j. Axis L is cut so that no point is
// internal on two axes and each piece adds at most ceil(sqrt(n)) internal
// points. In a fully cut cell the count separates by axis, and a small
// dynamic program over per-axis counts finds the best corner.

#include <algorithm>
#include <cmath>
#include <limits>

#include "discrepancy/linf_exact.hpp"
#include "discrepancy/local.hpp"

namespace disc {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> s;
  BoxKind kind = BoxKind::open;

  void offer(double v, const std::vector<std::size_t>& thresholds, BoxKind k) {
    if (v > value) {
      value = v;
      s = thresholds;
      kind = k;
    }
  }
  void merge(const Candidate& other) {
    if (other.value > value) *this = other;
  }
};

struct Member {
  std::size_t point;
  std::size_t internal;  // axis on which the point is internal, or kNone
};

class Dem {
 public:
  explicit Dem(const PointSet& x) : d_(x.dim()), n_(x.size()), view_(grid_view(x)) {
    k_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(n_))));
    sizes_.resize(d_);
    for (std::size_t j = 0; j < d_; ++j) sizes_[j] = view_.axes[j].values.size();
  }

  Candidate run(bool parallel) {
    std::vector<Member> all(n_);
    for (std::size_t i = 0; i < n_; ++i) all[i] = {i, kNone};
    std::vector<std::size_t> lo(d_, 0), hi(sizes_);
    if (!parallel) {
      Candidate best;
      region(0, lo, hi, all, best);
      return best;
    }
    // Top-level pieces run as independent tasks and are merged in order.
    const auto pieces = cut(0, all);
    std::vector<Candidate> results(pieces.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t c = 0; c < pieces.size(); ++c) {
      std::vector<std::size_t> clo(d_, 0), chi(sizes_);
      clo[0] = pieces[c].first;
      chi[0] = pieces[c].second;
      region(1, clo, chi, child_members(0, clo[0], chi[0], all), results[c]);
    }
    Candidate best;
    for (const auto& r : results) best.merge(r);
    return best;
  }

  std::size_t r(std::size_t i, std::size_t j) const { return view_.axes[j].rank[i]; }
  double grid(std::size_t j, std::size_t s) const { return view_.axes[j].augmented[s]; }

 private:
  // Threshold pieces [lo, hi] partitioning [0, n_axis].
  std::vector<std::pair<std::size_t, std::size_t>> cut(std::size_t axis, const std::vector<Member>& members) const {
    const std::size_t m = sizes_[axis];
    std::vector<std::size_t> count(m, 0);
    std::vector<bool> forced(m, false);
    for (const Member& mb : members) {
      const std::size_t rk = r(mb.point, axis);
      if (mb.internal == kNone) {
        ++count[rk];
      } else {
        forced[rk] = true;
      }
    }
    std::vector<std::pair<std::size_t, std::size_t>> pieces;
    std::size_t lo = 0;
    std::size_t inside = 0;
    for (std::size_t rk = 0; rk < m; ++rk) {
      if (forced[rk] || inside + count[rk] > k_) {
        pieces.emplace_back(lo, rk);
        lo = rk + 1;
        inside = 0;
      } else {
        inside += count[rk];
      }
    }
    pieces.emplace_back(lo, m);
    return pieces;
  }

  std::vector<Member> child_members(std::size_t axis, std::size_t lo, std::size_t hi,
                                    const std::vector<Member>& members) const {
    std::vector<Member> out;
    for (const Member& mb : members) {
      const std::size_t rk = r(mb.point, axis);
      if (rk >= hi) continue;
      out.push_back({mb.point, rk >= lo ? axis : mb.internal});
    }
    return out;
  }

  void region(std::size_t level, std::vector<std::size_t>& lo, std::vector<std::size_t>& hi,
              const std::vector<Member>& members, Candidate& best) const {
    if (members.empty()) {
      // Nothing can be counted: the largest corner is the only candidate.
      std::vector<std::size_t> s(d_);
      double v = 1.0;
      for (std::size_t j = 0; j < d_; ++j) {
        s[j] = hi[j];
        v *= grid(j, s[j]);
      }
      best.offer(v, s, BoxKind::open);
      return;
    }
    if (level == d_) {
      cell(lo, hi, members, best);
      return;
    }
    for (const auto& [plo, phi] : cut(level, members)) {
      lo[level] = plo;
      hi[level] = phi;
      region(level + 1, lo, hi, child_members(level, plo, phi, members), best);
    }
    lo[level] = 0;
    hi[level] = sizes_[level];
  }

  void cell(const std::vector<std::size_t>& lo, const std::vector<std::size_t>& hi, const std::vector<Member>& members,
            Candidate& best) const {
    std::size_t base = 0;
    std::vector<std::vector<std::size_t>> ranks(d_);
    for (const Member& mb : members) {
      if (mb.internal == kNone) {
        ++base;
      } else {
        ranks[mb.internal].push_back(r(mb.point, mb.internal));
      }
    }

    // Per axis and per number c of counted internal points: the largest
    // threshold (open box) and the smallest threshold (closed box) that count
    // exactly c, or kNone.
    std::vector<std::vector<std::size_t>> up(d_), down(d_);
    std::size_t total = 0;
    for (std::size_t j = 0; j < d_; ++j) {
      auto& rk = ranks[j];
      std::sort(rk.begin(), rk.end());
      const std::size_t m = rk.size();
      total += m;
      up[j].assign(m + 1, kNone);
      down[j].assign(m + 1, kNone);
      for (std::size_t c = 0; c <= m; ++c) {
        const std::size_t lower = c == 0 ? lo[j] : std::max(lo[j], rk[c - 1] + 1);
        const std::size_t upper = c == m ? hi[j] : std::min(hi[j], rk[c]);
        if (lower > upper) continue;
        up[j][c] = upper;
        if (std::max<std::size_t>(lower, 1) <= upper) down[j][c] = std::max<std::size_t>(lower, 1);
      }
    }

    // Max-product and min-product over axes with back-pointers.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<std::vector<double>> qmax(d_ + 1), pmin(d_ + 1);
    std::vector<std::vector<std::size_t>> qarg(d_ + 1), parg(d_ + 1);
    qmax[0].assign(1, 1.0);
    pmin[0].assign(1, 1.0);
    std::size_t reach = 0;
    for (std::size_t j = 0; j < d_; ++j) {
      const std::size_t m = ranks[j].size();
      const std::size_t next = reach + m;
      qmax[j + 1].assign(next + 1, -1.0);
      pmin[j + 1].assign(next + 1, inf);
      qarg[j + 1].assign(next + 1, kNone);
      parg[j + 1].assign(next + 1, kNone);
      for (std::size_t c = 0; c <= reach; ++c) {
        for (std::size_t cj = 0; cj <= m; ++cj) {
          if (up[j][cj] != kNone && qmax[j][c] >= 0.0) {
            const double v = qmax[j][c] * grid(j, up[j][cj]);
            if (v > qmax[j + 1][c + cj]) {
              qmax[j + 1][c + cj] = v;
              qarg[j + 1][c + cj] = cj;
            }
          }
          if (down[j][cj] != kNone && pmin[j][c] < inf) {
            const double v = pmin[j][c] * grid(j, down[j][cj] - 1);
            if (v < pmin[j + 1][c + cj]) {
              pmin[j + 1][c + cj] = v;
              parg[j + 1][c + cj] = cj;
            }
          }
        }
      }
      reach = next;
    }

    const double nd = static_cast<double>(n_);
    std::vector<std::size_t> s(d_);
    for (std::size_t c = 0; c <= total; ++c) {
      const double frac = static_cast<double>(base + c) / nd;
      if (qmax[d_][c] >= 0.0) {
        const double v = qmax[d_][c] - frac;
        if (v > best.value) {
          trace(qarg, up, c, s);
          best.offer(v, s, BoxKind::open);
        }
      }
      if (pmin[d_][c] < inf) {
        const double v = frac - pmin[d_][c];
        if (v > best.value) {
          trace(parg, down, c, s);
          best.offer(v, s, BoxKind::closed);
        }
      }
    }
  }

  void trace(const std::vector<std::vector<std::size_t>>& arg, const std::vector<std::vector<std::size_t>>& choice,
             std::size_t c, std::vector<std::size_t>& s) const {
    for (std::size_t j = d_; j-- > 0;) {
      const std::size_t cj = arg[j + 1][c];
      s[j] = choice[j][cj];
      c -= cj;
    }
  }

  std::size_t d_;
  std::size_t n_;
  GridView view_;
  std::size_t k_;
  std::vector<std::size_t> sizes_;
};

StarResult dem(const PointSet& x, bool parallel) {
  Dem algo(x);
  const Candidate best = algo.run(parallel);
  std::vector<double> y(x.dim());
  for (std::size_t j = 0; j < x.dim(); ++j) {
    y[j] = best.kind == BoxKind::open ? algo.grid(j, best.s[j]) : algo.grid(j, best.s[j] - 1);
  }
  Corner c(std::move(y));
  const double v = local_value(c.values(), best.kind, x);
  return {v, std::move(c), best.kind, "dem"};
}

}  // namespace

StarResult star_dem(const PointSet& x) { return dem(x, true); }

StarResult serial::star_dem(const PointSet& x) { return dem(x, false); }

}  // namespace disc
