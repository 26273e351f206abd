#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace thop {

// Cities and items are 0-based inside the library. Files, solution text and
// exported models use the 1-based numbering of the benchmark suite.
using CityId = std::size_t;
using ItemId = std::size_t;

struct Point {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Point&) const = default;
};

struct Item {
  ItemId id = 0;
  std::int64_t profit = 0;
  std::int64_t weight = 0;
  CityId city = 0;

  bool operator==(const Item&) const = default;
};

enum class KnapsackType { unc, usw, bsc };

std::string_view to_string(KnapsackType type);

// Benchmark identifier XXX_YY_ZZZ_WW_TT, e.g. eil51_10_bsc_01_03 or the
// OP-mode form eil51_01_unc_inf_02.
struct InstanceId {
  std::string tsp_base;
  int items_per_city = 0;
  KnapsackType knapsack_type = KnapsackType::unc;
  std::string knapsack_size;  // "01", "05", "10" or "inf"
  std::string time_class;     // "01", "02", "03"

  // Accepts a bare id or a path; a trailing ".thop" extension is dropped.
  static std::optional<InstanceId> parse(std::string_view name);

  std::string str() const;
  // Tuning group XXX_YY_ZZZ.
  std::string group() const;
  bool op_mode() const { return knapsack_size == "inf"; }

  bool operator==(const InstanceId&) const = default;
};

// An immutable ThOP instance. City 0 is the start and city n-1 the end; the
// distance matrix is CEIL_2D (ceiling of the Euclidean distance).
class Instance {
 public:
  Instance(std::string name, std::vector<Point> coords, std::vector<Item> items,
           std::int64_t capacity, double max_time, double min_speed,
           double max_speed,
           std::vector<std::pair<std::string, std::string>> extra_header = {});

  const std::string& name() const { return name_; }
  std::size_t num_cities() const { return coords_.size(); }
  std::size_t num_items() const { return items_.size(); }
  CityId start() const { return 0; }
  CityId end() const { return coords_.size() - 1; }

  const std::vector<Point>& coords() const { return coords_; }
  const std::vector<Item>& items() const { return items_; }
  const Item& item(ItemId k) const { return items_[k]; }
  const std::vector<ItemId>& items_at(CityId city) const {
    return items_at_city_[city];
  }

  std::int64_t capacity() const { return capacity_; }
  double max_time() const { return max_time_; }
  double min_speed() const { return min_speed_; }
  double max_speed() const { return max_speed_; }
  // Speed decay per unit of carried weight.
  double nu() const { return nu_; }

  std::int64_t total_weight() const { return total_weight_; }
  std::int64_t total_profit() const { return total_profit_; }

  // Unchecked lookup for hot loops.
  std::int64_t dist(CityId i, CityId j) const {
    return dist_[i * coords_.size() + j];
  }

  // False when a sampled triple violated the triangle inequality; route
  // pruning is disabled for such instances.
  bool triangle_inequality() const { return triangle_ok_; }

  const std::vector<std::pair<std::string, std::string>>& extra_header()
      const {
    return extra_header_;
  }

  bool operator==(const Instance& other) const;

 private:
  std::string name_;
  std::vector<Point> coords_;
  std::vector<Item> items_;
  std::vector<std::vector<ItemId>> items_at_city_;
  std::int64_t capacity_;
  double max_time_;
  double min_speed_;
  double max_speed_;
  double nu_;
  std::int64_t total_weight_ = 0;
  std::int64_t total_profit_ = 0;
  std::vector<std::int64_t> dist_;
  bool triangle_ok_ = true;
  std::vector<std::pair<std::string, std::string>> extra_header_;
};

// Checked distance lookup; throws for i == j or out-of-range indices.
std::int64_t distance(const Instance& inst, CityId i, CityId j);

// CEIL_2D rule.
std::int64_t ceil_2d(const Point& a, const Point& b);

Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);
// Canonical writer; parse_instance(write_instance(x)) == x.
std::string write_instance(const Instance& inst);

// Orienteering reduction: constant unit speed and a knapsack that holds
// every item (W = total weight + 1). Idempotent.
Instance to_op_instance(const Instance& inst);

// Exhaustive check for n <= 300, otherwise `samples` random triples.
bool check_triangle_inequality(const Instance& inst,
                               std::size_t samples = 100000,
                               std::uint64_t seed = 0x7468'6f70ULL);

}  // namespace thop
