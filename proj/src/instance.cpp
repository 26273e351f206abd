#include "thop/instance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thop/error.hpp"
#include "thop/random.hpp"
#include "text_util.hpp"

namespace thop {

namespace {

constexpr std::string_view kName = "PROBLEM NAME";
constexpr std::string_view kDimension = "DIMENSION";
constexpr std::string_view kItems = "NUMBER OF ITEMS";
constexpr std::string_view kCapacity = "CAPACITY OF KNAPSACK";
constexpr std::string_view kMaxTime = "MAX TIME";
constexpr std::string_view kMinSpeed = "MIN SPEED";
constexpr std::string_view kMaxSpeed = "MAX SPEED";

void validate(const std::vector<Point>& coords, const std::vector<Item>& items,
              std::int64_t capacity, double max_time, double min_speed,
              double max_speed) {
  auto fail = [](const std::string& msg) {
    throw Error(ErrorKind::invalid_argument, msg);
  };
  if (coords.size() < 2) fail("an instance needs at least 2 cities");
  if (capacity <= 0) fail("knapsack capacity must be positive");
  if (!(max_time > 0.0)) fail("max time must be positive");
  if (!(min_speed > 0.0)) fail("min speed must be positive");
  if (max_speed < min_speed) fail("max speed must be >= min speed");
  for (std::size_t k = 0; k < items.size(); ++k) {
    const Item& it = items[k];
    if (it.id != k) fail("item ids must be 0..m-1 in order");
    if (it.profit < 0) fail("item " + std::to_string(k + 1) + ": negative profit");
    if (it.weight <= 0) {
      fail("item " + std::to_string(k + 1) + ": weight must be positive");
    }
    if (it.city == 0 || it.city + 1 >= coords.size()) {
      fail("item " + std::to_string(k + 1) + ": item at depot city or out of range");
    }
  }
}

}  // namespace

std::string_view to_string(KnapsackType type) {
  switch (type) {
    case KnapsackType::unc: return "unc";
    case KnapsackType::usw: return "usw";
    case KnapsackType::bsc: return "bsc";
  }
  return "unc";
}

std::optional<InstanceId> InstanceId::parse(std::string_view name) {
  std::string stem = std::filesystem::path(std::string(name)).filename().string();
  if (stem.size() > 5 && stem.ends_with(".thop")) stem.resize(stem.size() - 5);

  std::vector<std::string> parts;
  std::size_t begin = 0;
  for (std::size_t pos; (pos = stem.find('_', begin)) != std::string::npos;
       begin = pos + 1) {
    parts.push_back(stem.substr(begin, pos - begin));
  }
  parts.push_back(stem.substr(begin));
  if (parts.size() < 5) return std::nullopt;

  // The TSP base is everything before the last four fields.
  InstanceId id;
  const std::size_t base_parts = parts.size() - 4;
  for (std::size_t i = 0; i < base_parts; ++i) {
    if (i) id.tsp_base += '_';
    id.tsp_base += parts[i];
  }
  const std::string& ipc = parts[base_parts];
  const std::string& type = parts[base_parts + 1];
  id.knapsack_size = parts[base_parts + 2];
  id.time_class = parts[base_parts + 3];

  if (id.tsp_base.empty() || ipc.size() != 2) return std::nullopt;
  auto [ptr, ec] = std::from_chars(ipc.data(), ipc.data() + ipc.size(),
                                   id.items_per_city);
  if (ec != std::errc{} || ptr != ipc.data() + ipc.size()) return std::nullopt;
  if (type == "unc") {
    id.knapsack_type = KnapsackType::unc;
  } else if (type == "usw") {
    id.knapsack_type = KnapsackType::usw;
  } else if (type == "bsc") {
    id.knapsack_type = KnapsackType::bsc;
  } else {
    return std::nullopt;
  }
  if (id.knapsack_size.empty() || id.time_class.empty()) return std::nullopt;
  return id;
}

std::string InstanceId::group() const {
  std::ostringstream out;
  out << tsp_base << '_' << (items_per_city < 10 ? "0" : "") << items_per_city
      << '_' << to_string(knapsack_type);
  return out.str();
}

std::string InstanceId::str() const {
  return group() + "_" + knapsack_size + "_" + time_class;
}

Instance::Instance(std::string name, std::vector<Point> coords,
                   std::vector<Item> items, std::int64_t capacity,
                   double max_time, double min_speed, double max_speed,
                   std::vector<std::pair<std::string, std::string>> extra_header)
    : name_(std::move(name)),
      coords_(std::move(coords)),
      items_(std::move(items)),
      capacity_(capacity),
      max_time_(max_time),
      min_speed_(min_speed),
      max_speed_(max_speed),
      nu_(0.0),
      extra_header_(std::move(extra_header)) {
  validate(coords_, items_, capacity_, max_time_, min_speed_, max_speed_);
  nu_ = (max_speed_ - min_speed_) / static_cast<double>(capacity_);

  const std::size_t n = coords_.size();
  items_at_city_.resize(n);
  for (const Item& it : items_) {
    items_at_city_[it.city].push_back(it.id);
    total_weight_ += it.weight;
    total_profit_ += it.profit;
  }

  dist_.resize(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t d = ceil_2d(coords_[i], coords_[j]);
      dist_[i * n + j] = d;
      dist_[j * n + i] = d;
    }
  }
  triangle_ok_ = check_triangle_inequality(*this);
}

bool Instance::operator==(const Instance& other) const {
  return name_ == other.name_ && coords_ == other.coords_ &&
         items_ == other.items_ && capacity_ == other.capacity_ &&
         max_time_ == other.max_time_ && min_speed_ == other.min_speed_ &&
         max_speed_ == other.max_speed_ && extra_header_ == other.extra_header_;
}

std::int64_t ceil_2d(const Point& a, const Point& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return static_cast<std::int64_t>(std::ceil(std::sqrt(dx * dx + dy * dy)));
}

std::int64_t distance(const Instance& inst, CityId i, CityId j) {
  const std::size_t n = inst.num_cities();
  if (i >= n || j >= n) {
    throw Error(ErrorKind::invalid_argument, "city index out of range");
  }
  if (i == j) {
    throw Error(ErrorKind::invalid_argument, "distance of a city to itself");
  }
  return inst.dist(i, j);
}

bool check_triangle_inequality(const Instance& inst, std::size_t samples,
                               std::uint64_t seed) {
  const std::size_t n = inst.num_cities();
  if (n <= 300) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const std::int64_t dij = inst.dist(i, j);
        for (std::size_t k = 0; k < n; ++k) {
          if (dij > inst.dist(i, k) + inst.dist(k, j)) return false;
        }
      }
    }
    return true;
  }
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const auto i = uniform_index(rng, n);
    const auto j = uniform_index(rng, n);
    const auto k = uniform_index(rng, n);
    if (inst.dist(i, j) > inst.dist(i, k) + inst.dist(k, j)) return false;
  }
  return true;
}

Instance parse_instance(std::string_view text) {
  enum class Section { header, coords, items };
  Section section = Section::header;

  std::string name;
  std::optional<std::size_t> dimension;
  std::optional<std::size_t> item_count;
  std::optional<std::int64_t> capacity;
  std::optional<double> max_time, min_speed, max_speed;
  std::vector<std::pair<std::string, std::string>> extra;

  std::vector<std::optional<Point>> coords;
  std::vector<std::optional<Item>> items;
  std::size_t coords_seen = 0, items_seen = 0;
  std::size_t coords_line = 0, items_line = 0;

  auto require_header = [&](std::size_t line_no) {
    if (!dimension) throw ParseError(line_no, "missing header key DIMENSION");
    if (!item_count) throw ParseError(line_no, "missing header key NUMBER OF ITEMS");
    if (!capacity) throw ParseError(line_no, "missing header key CAPACITY OF KNAPSACK");
    if (!max_time) throw ParseError(line_no, "missing header key MAX TIME");
    if (!min_speed) throw ParseError(line_no, "missing header key MIN SPEED");
    if (!max_speed) throw ParseError(line_no, "missing header key MAX SPEED");
  };

  std::size_t line_no = 0;
  for (std::string_view raw : detail::split_lines(text)) {
    ++line_no;
    const std::string_view line = detail::trim(raw);
    if (line.empty()) continue;

    if (line.starts_with("NODE_COORD_SECTION")) {
      require_header(line_no);
      if (*dimension < 2) throw ParseError(line_no, "DIMENSION must be at least 2");
      coords.assign(*dimension, std::nullopt);
      items.assign(*item_count, std::nullopt);
      section = Section::coords;
      coords_line = line_no;
      continue;
    }
    if (line.starts_with("ITEMS SECTION")) {
      if (section != Section::coords) {
        throw ParseError(line_no, "ITEMS SECTION before NODE_COORD_SECTION");
      }
      section = Section::items;
      items_line = line_no;
      continue;
    }

    if (section == Section::header) {
      const auto colon = line.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "malformed header line (expected KEY: VALUE)");
      }
      const std::string key(detail::trim(line.substr(0, colon)));
      const std::string_view value = detail::trim(line.substr(colon + 1));
      auto number = [&](auto& slot, std::string_view what) {
        using T = typename std::remove_reference_t<decltype(slot)>::value_type;
        T v{};
        if (!detail::parse_number(value, v)) {
          throw ParseError(line_no, "malformed " + std::string(what) + " value");
        }
        slot = v;
      };
      if (key == kName) {
        name = std::string(value);
      } else if (key == kDimension) {
        number(dimension, kDimension);
      } else if (key == kItems) {
        number(item_count, kItems);
      } else if (key == kCapacity) {
        number(capacity, kCapacity);
      } else if (key == kMaxTime) {
        number(max_time, kMaxTime);
      } else if (key == kMinSpeed) {
        number(min_speed, kMinSpeed);
      } else if (key == kMaxSpeed) {
        number(max_speed, kMaxSpeed);
      } else {
        extra.emplace_back(key, std::string(value));
      }
      continue;
    }

    const auto fields = detail::split_ws(line);
    if (section == Section::coords) {
      std::size_t index = 0;
      Point p;
      if (fields.size() != 3 || !detail::parse_number(fields[0], index) ||
          !detail::parse_number(fields[1], p.x) ||
          !detail::parse_number(fields[2], p.y)) {
        throw ParseError(line_no, "malformed coordinate line (expected: index x y)");
      }
      if (index < 1 || index > coords.size()) {
        throw ParseError(line_no, "city index " + std::to_string(index) +
                                      " outside 1..DIMENSION");
      }
      if (coords[index - 1]) {
        throw ParseError(line_no, "duplicate city index " + std::to_string(index));
      }
      coords[index - 1] = p;
      ++coords_seen;
      continue;
    }

    std::size_t index = 0, city = 0;
    std::int64_t profit = 0, weight = 0;
    if (fields.size() != 4 || !detail::parse_number(fields[0], index) ||
        !detail::parse_number(fields[1], profit) ||
        !detail::parse_number(fields[2], weight) ||
        !detail::parse_number(fields[3], city)) {
      throw ParseError(line_no,
                       "malformed item line (expected: index profit weight city)");
    }
    if (index < 1 || index > items.size()) {
      throw ParseError(line_no, "item index " + std::to_string(index) +
                                    " outside 1..NUMBER OF ITEMS");
    }
    if (items[index - 1]) {
      throw ParseError(line_no, "duplicate item index " + std::to_string(index));
    }
    if (city == 1 || city == coords.size()) {
      throw ParseError(line_no, "item at depot city " + std::to_string(city));
    }
    if (city < 1 || city > coords.size()) {
      throw ParseError(line_no, "item city " + std::to_string(city) + " out of range");
    }
    if (weight <= 0) throw ParseError(line_no, "item weight must be positive");
    if (profit < 0) throw ParseError(line_no, "item profit must be non-negative");
    items[index - 1] = Item{index - 1, profit, weight, city - 1};
    ++items_seen;
  }

  if (section == Section::header) {
    require_header(line_no);
    throw ParseError(line_no, "missing NODE_COORD_SECTION");
  }
  if (coords_seen != coords.size()) {
    throw ParseError(coords_line, "dimension mismatch: DIMENSION is " +
                                      std::to_string(coords.size()) + " but " +
                                      std::to_string(coords_seen) +
                                      " coordinates were given");
  }
  if (section != Section::items && !items.empty()) {
    throw ParseError(line_no, "missing ITEMS SECTION");
  }
  if (items_seen != items.size()) {
    throw ParseError(items_line, "item count mismatch: NUMBER OF ITEMS is " +
                                     std::to_string(items.size()) + " but " +
                                     std::to_string(items_seen) +
                                     " items were given");
  }

  std::vector<Point> points;
  points.reserve(coords.size());
  for (const auto& p : coords) points.push_back(*p);
  std::vector<Item> item_list;
  item_list.reserve(items.size());
  for (const auto& it : items) item_list.push_back(*it);

  try {
    return Instance(std::move(name), std::move(points), std::move(item_list),
                    *capacity, *max_time, *min_speed, *max_speed,
                    std::move(extra));
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(0, e.what());
  }
}

Instance load_instance(const std::string& path) {
  return parse_instance(detail::read_file(path));
}

std::string write_instance(const Instance& inst) {
  std::ostringstream out;
  out << kName << ": " << inst.name() << '\n';
  for (const auto& [key, value] : inst.extra_header()) {
    out << key << ": " << value << '\n';
  }
  out << kDimension << ": " << inst.num_cities() << '\n';
  out << kItems << ": " << inst.num_items() << '\n';
  out << kCapacity << ": " << inst.capacity() << '\n';
  out << kMaxTime << ": " << detail::format_double(inst.max_time()) << '\n';
  out << kMinSpeed << ": " << detail::format_double(inst.min_speed()) << '\n';
  out << kMaxSpeed << ": " << detail::format_double(inst.max_speed()) << '\n';
  out << "NODE_COORD_SECTION (INDEX, X, Y):\n";
  for (std::size_t i = 0; i < inst.num_cities(); ++i) {
    const Point& p = inst.coords()[i];
    out << (i + 1) << '\t' << detail::format_double(p.x) << '\t'
        << detail::format_double(p.y) << '\n';
  }
  out << "ITEMS SECTION (INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):\n";
  for (const Item& it : inst.items()) {
    out << (it.id + 1) << '\t' << it.profit << '\t' << it.weight << '\t'
        << (it.city + 1) << '\n';
  }
  return out.str();
}

Instance to_op_instance(const Instance& inst) {
  return Instance(inst.name(), inst.coords(), inst.items(),
                  inst.total_weight() + 1, inst.max_time(), 1.0, 1.0,
                  inst.extra_header());
}

}  // namespace thop
