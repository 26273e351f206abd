#include <algorithm>

#include "thop/aco.hpp"

namespace thop {

namespace {

using Path = std::vector<CityId>;

class PathSearch {
 public:
  PathSearch(const Instance& inst, Path& path) : inst_(inst), r_(path) {}

  std::int64_t d(CityId a, CityId b) const { return inst_.dist(a, b); }

  // First-improvement 2-opt over all segment reversals r[i+1..j].
  bool two_opt_pass() {
    bool improved = false;
    const std::size_t len = r_.size();
    for (std::size_t i = 0; i + 3 < len; ++i) {
      for (std::size_t j = i + 2; j + 1 < len; ++j) {
        const std::int64_t delta = d(r_[i], r_[j]) + d(r_[i + 1], r_[j + 1]) -
                                   d(r_[i], r_[i + 1]) - d(r_[j], r_[j + 1]);
        if (delta < 0) {
          std::reverse(r_.begin() + i + 1, r_.begin() + j + 1);
          improved = true;
        }
      }
    }
    return improved;
  }

  // Moves one interior city between two other consecutive cities.
  bool insertion_pass() {
    bool improved = false;
    for (std::size_t i = 1; i + 1 < r_.size(); ++i) {
      const CityId x = r_[i];
      const std::int64_t removal =
          d(r_[i - 1], r_[i + 1]) - d(r_[i - 1], x) - d(x, r_[i + 1]);
      for (std::size_t j = 0; j + 1 < r_.size(); ++j) {
        if (j == i - 1 || j == i) continue;
        const std::int64_t delta =
            removal + d(r_[j], x) + d(x, r_[j + 1]) - d(r_[j], r_[j + 1]);
        if (delta < 0) {
          r_.erase(r_.begin() + i);
          const std::size_t at = j < i ? j + 1 : j;
          r_.insert(r_.begin() + at, x);
          improved = true;
          break;
        }
      }
    }
    return improved;
  }

  // Segment reversal / exchange moves over three removed edges
  // (r[i],r[i+1]), (r[j],r[j+1]), (r[k],r[k+1]). One of the new edges must
  // join r[i] to one of its nearest route neighbours.
  bool three_opt_pass(std::size_t neighbours) {
    const std::size_t len = r_.size();
    if (len < 4) return false;
    std::vector<std::size_t> pos(inst_.num_cities(), 0);
    for (std::size_t p = 0; p < len; ++p) pos[r_[p]] = p;

    std::vector<CityId> near;
    for (std::size_t i = 0; i + 2 < len; ++i) {
      near.assign(r_.begin(), r_.end());
      const CityId a = r_[i];
      std::erase(near, a);
      const std::size_t keep = std::min(neighbours, near.size());
      std::partial_sort(near.begin(), near.begin() + keep, near.end(),
                        [&](CityId x, CityId y) {
                          const auto dx = d(a, x), dy = d(a, y);
                          return dx != dy ? dx < dy : x < y;
                        });
      near.resize(keep);

      for (CityId x : near) {
        const std::size_t px = pos[x];
        if (px <= i + 1) continue;
        // x plays c: r[j] with j = px.
        if (px + 1 < len && try_moves(i, px, /*k_from=*/px + 1, len)) return true;
        // x plays d: r[j+1] with j = px - 1.
        if (px >= i + 2 && px + 1 < len && try_moves(i, px - 1, px, len)) return true;
        // x plays e: r[k] with k = px.
        if (px + 1 < len) {
          for (std::size_t j = i + 1; j < px; ++j) {
            if (apply_best_of(i, j, px)) return true;
          }
        }
      }
    }
    return false;
  }

 private:
  bool try_moves(std::size_t i, std::size_t j, std::size_t k_from,
                 std::size_t len) {
    if (j <= i || j + 1 >= len) return false;
    for (std::size_t k = std::max(k_from, j + 1); k + 1 < len; ++k) {
      if (apply_best_of(i, j, k)) return true;
    }
    return false;
  }

  // Evaluates the six non-identity reconnections for (i, j, k) and applies
  // the first improving one.
  bool apply_best_of(std::size_t i, std::size_t j, std::size_t k) {
    const CityId a = r_[i], b = r_[i + 1], c = r_[j], dd = r_[j + 1],
                 e = r_[k], f = r_[k + 1];
    const std::int64_t base = d(a, b) + d(c, dd) + d(e, f);
    struct Move {
      std::int64_t cost;
      bool swap;
      bool rev1;
      bool rev2;
    };
    const Move moves[] = {
        {d(a, c) + d(b, dd) + d(e, f), false, true, false},
        {d(a, b) + d(c, e) + d(dd, f), false, false, true},
        {d(a, c) + d(b, e) + d(dd, f), false, true, true},
        {d(a, dd) + d(e, b) + d(c, f), true, false, false},
        {d(a, e) + d(dd, b) + d(c, f), true, false, true},
        {d(a, dd) + d(e, c) + d(b, f), true, true, false},
    };
    for (const Move& mv : moves) {
      if (mv.cost < base) {
        apply(i, j, k, mv.swap, mv.rev1, mv.rev2);
        return true;
      }
    }
    return false;
  }

  void apply(std::size_t i, std::size_t j, std::size_t k, bool swap, bool rev1,
             bool rev2) {
    Path s1(r_.begin() + i + 1, r_.begin() + j + 1);
    Path s2(r_.begin() + j + 1, r_.begin() + k + 1);
    if (rev1) std::reverse(s1.begin(), s1.end());
    if (rev2) std::reverse(s2.begin(), s2.end());
    auto out = r_.begin() + i + 1;
    if (swap) {
      out = std::copy(s2.begin(), s2.end(), out);
      std::copy(s1.begin(), s1.end(), out);
    } else {
      out = std::copy(s1.begin(), s1.end(), out);
      std::copy(s2.begin(), s2.end(), out);
    }
  }

  const Instance& inst_;
  Path& r_;
};

}  // namespace

Route local_search(const Instance& inst, const Route& route, LocalSearch kind) {
  Route out = route;
  if (kind == LocalSearch::none || out.size() < 4) return out;
  PathSearch search(inst, out.cities);
  switch (kind) {
    case LocalSearch::two_opt:
      while (search.two_opt_pass()) {
      }
      break;
    case LocalSearch::two_half_opt:
      while (search.two_opt_pass() | search.insertion_pass()) {
      }
      break;
    case LocalSearch::three_opt:
      while (search.two_opt_pass() | search.three_opt_pass(20)) {
      }
      break;
    case LocalSearch::none:
      break;
  }
  return out;
}

}  // namespace thop
