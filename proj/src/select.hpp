#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>

namespace disc::detail {

template <class It, class Less>
void insertion_sort(It first, It last, Less less) {
  for (It i = first; i != last; ++i) {
    for (It j = i; j != first && less(*j, *std::prev(j)); --j) std::iter_swap(j, std::prev(j));
  }
}

/// Deterministic linear-time selection (median of medians). Afterwards the
/// element at first + k is the one a full sort would put there, everything
/// before it compares not greater and everything after not less. Keys must be
/// distinct under `less`.
template <class It, class Less>
void select_kth(It first, It last, std::size_t k, Less less) {
  while (true) {
    const auto n = static_cast<std::size_t>(last - first);
    if (n <= 10) {
      insertion_sort(first, last, less);
      return;
    }
    // Gather the group medians at the front.
    std::size_t groups = 0;
    for (std::size_t g = 0; g < n; g += 5) {
      const It gf = first + static_cast<std::ptrdiff_t>(g);
      const It gl = first + static_cast<std::ptrdiff_t>(std::min(g + 5, n));
      insertion_sort(gf, gl, less);
      std::iter_swap(first + static_cast<std::ptrdiff_t>(groups), gf + (gl - gf) / 2);
      ++groups;
    }
    const It medians_end = first + static_cast<std::ptrdiff_t>(groups);
    select_kth(first, medians_end, groups / 2, less);
    const It pivot_slot = first + static_cast<std::ptrdiff_t>(groups / 2);

    // Lomuto partition around the pivot parked at the back.
    std::iter_swap(pivot_slot, last - 1);
    It store = first;
    for (It i = first; i != last - 1; ++i) {
      if (less(*i, *(last - 1))) std::iter_swap(i, store++);
    }
    std::iter_swap(store, last - 1);
    const auto p = static_cast<std::size_t>(store - first);
    if (k == p) return;
    if (k < p) {
      last = store;
    } else {
      k -= p + 1;
      first = store + 1;
    }
  }
}

}  // namespace disc::detail
