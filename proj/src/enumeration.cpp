#include <cmath>
#include <limits>

#include "discrepancy/error.hpp"
#include "discrepancy/kernels.hpp"

namespace disc::kernels {

namespace {

void validate(const SlabProblem& p) {
  const std::size_t d = p.dim();
  if (d == 0) throw InvalidArgument("slab problem needs at least one axis");
  if (p.vol_open.size() != d || p.vol_closed.size() != d) throw InvalidArgument("volume tables disagree with axes");
  for (std::size_t j = 0; j < d; ++j) {
    if (p.sizes[j] == 0) throw InvalidArgument("empty axis");
    if (p.vol_open[j].size() != p.sizes[j] || p.vol_closed[j].size() != p.sizes[j]) {
      throw InvalidArgument("volume table length disagrees with axis size");
    }
  }
  if (p.open_act.size() != p.points() * d) throw InvalidArgument("open activation table has wrong length");
  if (!p.closed_act.empty() && p.closed_act.size() != p.points() * d) {
    throw InvalidArgument("closed activation table has wrong length");
  }
  if (!(p.normalizer != 0.0) || !std::isfinite(p.normalizer)) throw InvalidArgument("bad normalizer");
}

double product(const std::vector<std::vector<double>>& vol, const std::vector<std::size_t>& k) {
  double v = 1.0;
  for (std::size_t j = 0; j < k.size(); ++j) v *= vol[j][k[j]];
  return v;
}

struct Candidate {
  double value = -std::numeric_limits<double>::infinity();
  std::vector<std::size_t> index;
  BoxKind kind = BoxKind::open;
  bool found = false;
};

// Candidates are offered in lexicographic order, open before closed, so a
// strict comparison keeps the earliest of equal values.
void offer(Candidate& best, double value, const std::vector<std::size_t>& k, BoxKind kind) {
  if (!best.found || value > best.value) {
    best.value = value;
    best.index = k;
    best.kind = kind;
    best.found = true;
  }
}

void evaluate(const SlabProblem& p, const std::vector<std::size_t>& k, double m_open, double m_closed,
              Candidate& best) {
  const double vo = product(p.vol_open, k);
  if (std::isfinite(vo)) {
    double v = vo - m_open / p.normalizer;
    if (p.absolute) v = std::fabs(v);
    offer(best, v, k, BoxKind::open);
  }
  const double vc = product(p.vol_closed, k);
  if (std::isfinite(vc)) {
    double v = m_closed / p.normalizer - vc;
    if (p.absolute) v = std::fabs(v);
    offer(best, v, k, BoxKind::closed);
  }
}

SlabResult finish(Candidate best) {
  if (!best.found) throw InvalidArgument("no admissible corner");
  return {best.value, std::move(best.index), best.kind};
}

}  // namespace

std::size_t SlabProblem::corner_count() const {
  std::size_t total = 1;
  for (std::size_t s : sizes) {
    if (s != 0 && total > std::numeric_limits<std::size_t>::max() / s) return std::numeric_limits<std::size_t>::max();
    total *= s;
  }
  return total;
}

SlabResult slab_maximum(const SlabProblem& p) {
  validate(p);
  const std::size_t d = p.dim();
  const std::size_t n = p.points();
  const std::vector<std::size_t>& closed_act = p.closed_act.empty() ? p.open_act : p.closed_act;
  const bool shared = p.closed_act.empty();

  // Row-major layout of the trailing axes.
  std::vector<std::size_t> stride(d, 1);
  std::size_t cells = 1;
  for (std::size_t j = d; j-- > 1;) {
    stride[j] = cells;
    cells *= p.sizes[j];
  }

  auto cell_of = [&](const std::vector<std::size_t>& act, std::size_t i, std::size_t& flat) {
    flat = 0;
    for (std::size_t j = 1; j < d; ++j) {
      const std::size_t a = act[i * d + j];
      if (a >= p.sizes[j]) return false;
      flat += a * stride[j];
    }
    return true;
  };

  auto prefix = [&](std::vector<double>& h) {
    for (std::size_t j = 1; j < d; ++j) {
      for (std::size_t f = 0; f < cells; ++f) {
        if ((f / stride[j]) % p.sizes[j] > 0) h[f] += h[f - stride[j]];
      }
    }
  };

  const std::size_t slabs = p.sizes[0];
  std::vector<Candidate> per_slab(slabs);

#pragma omp parallel
  {
    std::vector<double> h_open(cells), h_closed(shared ? 0 : cells);
    std::vector<std::size_t> k(d);
#pragma omp for schedule(dynamic)
    for (std::size_t k0 = 0; k0 < slabs; ++k0) {
      std::fill(h_open.begin(), h_open.end(), 0.0);
      std::fill(h_closed.begin(), h_closed.end(), 0.0);
      std::size_t flat = 0;
      for (std::size_t i = 0; i < n; ++i) {
        if (p.open_act[i * d] <= k0 && cell_of(p.open_act, i, flat)) h_open[flat] += p.weights[i];
        if (!shared && closed_act[i * d] <= k0 && cell_of(closed_act, i, flat)) h_closed[flat] += p.weights[i];
      }
      prefix(h_open);
      if (!shared) prefix(h_closed);
      const std::vector<double>& hc = shared ? h_open : h_closed;

      k[0] = k0;
      std::fill(k.begin() + 1, k.end(), 0);
      for (std::size_t f = 0; f < cells; ++f) {
        evaluate(p, k, h_open[f], hc[f], per_slab[k0]);
        for (std::size_t j = d; j-- > 1;) {
          if (++k[j] < p.sizes[j]) break;
          k[j] = 0;
        }
      }
    }
  }

  Candidate best;
  for (const auto& c : per_slab) {
    if (c.found && (!best.found || c.value > best.value)) best = c;
  }
  return finish(std::move(best));
}

namespace serial {

SlabResult slab_maximum(const SlabProblem& p) {
  validate(p);
  const std::size_t d = p.dim();
  const std::size_t n = p.points();
  const std::vector<std::size_t>& closed_act = p.closed_act.empty() ? p.open_act : p.closed_act;
  const std::size_t total = p.corner_count();

  auto counted = [&](const std::vector<std::size_t>& act, std::size_t i, const std::vector<std::size_t>& k) {
    for (std::size_t j = 0; j < d; ++j) {
      if (act[i * d + j] > k[j]) return false;
    }
    return true;
  };

  Candidate best;
  std::vector<std::size_t> k(d, 0);
  for (std::size_t flat = 0; flat < total; ++flat) {
    double m_open = 0.0;
    double m_closed = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (counted(p.open_act, i, k)) m_open += p.weights[i];
      if (counted(closed_act, i, k)) m_closed += p.weights[i];
    }
    evaluate(p, k, m_open, m_closed, best);
    for (std::size_t j = d; j-- > 0;) {
      if (++k[j] < p.sizes[j]) break;
      k[j] = 0;
    }
  }
  return finish(std::move(best));
}

}  // namespace serial

}  // namespace disc::kernels
