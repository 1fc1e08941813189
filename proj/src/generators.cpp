#include "genmech/generators.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

namespace genmech {

namespace {

class UnionFind {
public:
  explicit UnionFind(std::size_t n) : parent_(n), size_(n, 1) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size_[a] < size_[b]) std::swap(a, b);
    parent_[b] = a;
    size_[a] += size_[b];
  }

private:
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> size_;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s, std::string_view whole) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
    throw std::invalid_argument("malformed complex literal '" + std::string(whole) + "'");
  return value;
}

// Coefficient of 'i': "" and "+" mean 1, "-" means -1.
double parse_imag_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, whole);
}

} // namespace

Complex parse_complex(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  if (s.back() != 'i' && s.back() != 'I') return {parse_real(s, text), 0.0};

  const std::string_view body = s.substr(0, s.size() - 1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag_coefficient(body, text)};
  return {parse_real(body.substr(0, split), text),
          parse_imag_coefficient(body.substr(split), text)};
}

Palette::Palette(std::vector<Complex> values, Tolerance tol) : values_(std::move(values)) {
  if (values_.empty()) throw std::invalid_argument("palette is empty");
  for (std::size_t a = 0; a < values_.size(); ++a) {
    if (!std::isfinite(values_[a].real()) || !std::isfinite(values_[a].imag()))
      throw std::invalid_argument("palette value is not finite");
    for (std::size_t b = a + 1; b < values_.size(); ++b)
      if (std::abs(values_[a] - values_[b]) <= 3.0 * tol.eps_eq)
        throw std::invalid_argument("palette values " + std::to_string(a) + " and " +
                                    std::to_string(b) + " are not separated by 3*eps_eq");
  }
}

Palette Palette::parse(std::string_view text, Tolerance tol) {
  std::vector<Complex> values;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    values.push_back(parse_complex(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return Palette(std::move(values), tol);
}

PairClassPartition pair_class_partition(const Bijection& S, const Bijection& T) {
  if (S.size() != T.size()) throw std::invalid_argument("pair_class_partition: size mismatch");
  if (!S.is_permutation() || !T.is_permutation())
    throw std::invalid_argument("pair_class_partition: S and T must be permutations");
  const std::size_t n = S.size();
  UnionFind uf(n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      uf.unite(a * n + b, S(a) * n + S(b));
      uf.unite(T(a) * n + T(b), b * n + a);
    }
  }

  PairClassPartition part;
  part.n = n;
  part.class_of.assign(n * n, 0);
  std::vector<std::size_t> id_of_root(n * n, n * n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t root = uf.find(a * n + b);
      if (id_of_root[root] == n * n) {
        id_of_root[root] = part.representatives.size();
        part.representatives.emplace_back(a, b);
      }
      part.class_of[a * n + b] = id_of_root[root];
    }
  }
  return part;
}

PreOverlapTable preoverlap_from_classes(const PairClassPartition& part,
                                        std::span<const Complex> class_values) {
  if (class_values.size() != part.class_count())
    throw std::invalid_argument("preoverlap_from_classes: one value per class required");
  PreOverlapTable p = PreOverlapTable::square(part.n);
  for (std::size_t a = 0; a < part.n; ++a)
    for (std::size_t b = 0; b < part.n; ++b) p(a, b) = class_values[part.class_of[a * part.n + b]];
  return p;
}

PreOverlapTable compatible_preoverlap(const Bijection& S, const Bijection& T,
                                      const Palette& palette, std::uint64_t seed) {
  const PairClassPartition part = pair_class_partition(S, T);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
  std::vector<Complex> values(part.class_count());
  for (auto& v : values) v = palette.values()[pick(rng)];
  return preoverlap_from_classes(part, values);
}

std::string_view to_string(OverlapMode mode) {
  return mode == OverlapMode::Induced ? "induced" : "free";
}

OverlapMode parse_overlap_mode(std::string_view text) {
  if (text == "induced") return OverlapMode::Induced;
  if (text == "free") return OverlapMode::FreeSymmetric;
  throw std::invalid_argument("unknown overlap mode '" + std::string(text) + "'");
}

OverlapTable induced_overlap(const PreOverlapTable& pre) {
  OverlapTable o(pre.rows(), pre.cols());
  for (std::size_t a = 0; a < pre.rows(); ++a)
    for (std::size_t b = 0; b < pre.cols(); ++b)
      o(a, b) = std::abs(pre(a, b)) * std::abs(pre.at(b, a));
  return o;
}

OverlapTable free_symmetric_overlap(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  OverlapTable o = OverlapTable::square(n);
  for (std::size_t a = 0; a < n; ++a) {
    o(a, a) = 1.0;
    for (std::size_t b = a + 1; b < n; ++b) o(a, b) = o(b, a) = unit(rng);
  }
  return o;
}

Bijection random_permutation(std::size_t n, std::mt19937_64& rng) {
  std::vector<StateId> image(n);
  std::iota(image.begin(), image.end(), StateId{0});
  std::shuffle(image.begin(), image.end(), rng);
  return Bijection(std::move(image));
}

Bijection random_involution(std::size_t n, std::mt19937_64& rng) {
  const Bijection order = random_permutation(n, rng);
  std::uniform_int_distribution<std::size_t> swaps(0, n / 2);
  const std::size_t k = swaps(rng);
  std::vector<StateId> image(n);
  std::iota(image.begin(), image.end(), StateId{0});
  for (std::size_t j = 0; j < k; ++j) {
    const StateId a = order(2 * j);
    const StateId b = order(2 * j + 1);
    image[a] = b;
    image[b] = a;
  }
  return Bijection(std::move(image));
}

std::pair<Bijection, Bijection> tri_pair(std::size_t n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("tri_pair: n must be >= 1");
  std::mt19937_64 rng(seed);
  const Bijection A = random_involution(n, rng);
  Bijection T = random_permutation(n, rng);
  Bijection S = T.after(A);
  return {std::move(S), std::move(T)};
}

std::pair<Bijection, Bijection> violating_pair(std::size_t n, std::uint64_t seed) {
  if (n < 3)
    throw ImpossibleOrder("violating_pair: every permutation of " + std::to_string(n) +
                          " states is an involution; need n >= 3");
  std::mt19937_64 rng(seed);
  Bijection A = random_permutation(n, rng);
  while (A.is_involution()) A = random_permutation(n, rng);
  Bijection T = random_permutation(n, rng);
  Bijection S = T.after(A);
  return {std::move(S), std::move(T)};
}

GeneralSystem make_system(Bijection S, Bijection T, const Palette& palette, OverlapMode overlap,
                          std::uint64_t seed, Tolerance tol) {
  GeneralSystem sys;
  sys.n = S.size();
  sys.tol = tol;
  sys.pre_overlap = compatible_preoverlap(S, T, palette, seed);
  sys.overlap = overlap == OverlapMode::Induced ? induced_overlap(sys.pre_overlap)
                                                : free_symmetric_overlap(sys.n, derive_seed(seed, 1));
  sys.dynamics = std::move(S);
  sys.time_reversal = std::move(T);
  return sys;
}

std::vector<Bijection> all_permutations(std::size_t n) {
  std::vector<StateId> image(n);
  std::iota(image.begin(), image.end(), StateId{0});
  std::vector<Bijection> out;
  do {
    out.emplace_back(image);
  } while (std::next_permutation(image.begin(), image.end()));
  return out;
}

ExhaustiveSystems::ExhaustiveSystems(std::size_t n, Palette palette, OverlapMode overlap,
                                     std::size_t cap, Tolerance tol)
    : n_(n), palette_(std::move(palette)), overlap_(overlap), tol_(tol) {
  if (n > kMaxStates)
    throw SizeGuard("exhaustive enumeration is limited to n <= " + std::to_string(kMaxStates));
  const std::vector<Bijection> perms = all_permutations(n);
  double projected = 0.0;
  for (const auto& S : perms) {
    for (const auto& T : perms) {
      pairs_.emplace_back(S, T);
      partitions_.push_back(pair_class_partition(S, T));
      projected += std::pow(static_cast<double>(palette_.size()),
                            static_cast<double>(partitions_.back().class_count()));
    }
  }
  if (projected > static_cast<double>(cap))
    throw SizeGuard("exhaustive enumeration would produce " + std::to_string(projected) +
                    " systems, above the cap of " + std::to_string(cap));

  offsets_.reserve(pairs_.size() + 1);
  for (const auto& part : partitions_) {
    offsets_.push_back(total_);
    std::size_t count = 1;
    for (std::size_t c = 0; c < part.class_count(); ++c) count *= palette_.size();
    total_ += count;
  }
  offsets_.push_back(total_);
}

GeneralSystem ExhaustiveSystems::at(std::size_t index) const {
  if (index >= total_) throw std::out_of_range("ExhaustiveSystems::at");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  const std::size_t k = static_cast<std::size_t>(it - offsets_.begin()) - 1;
  std::size_t local = index - offsets_[k];

  const PairClassPartition& part = partitions_[k];
  std::vector<Complex> values(part.class_count());
  for (auto& v : values) {
    v = palette_.values()[local % palette_.size()];
    local /= palette_.size();
  }

  GeneralSystem sys;
  sys.n = n_;
  sys.tol = tol_;
  sys.dynamics = pairs_[k].first;
  sys.time_reversal = pairs_[k].second;
  sys.pre_overlap = preoverlap_from_classes(part, values);
  sys.overlap = overlap_ == OverlapMode::Induced ? induced_overlap(sys.pre_overlap)
                                                 : free_symmetric_overlap(n_, derive_seed(index, 1));
  return sys;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer over the combined value
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

SystemSource exhaustive_source(std::shared_ptr<const ExhaustiveSystems> systems) {
  const std::size_t count = systems->size();
  return {count, [systems = std::move(systems)](std::size_t k) { return systems->at(k); }};
}

namespace {

std::size_t draw_size(std::size_t lo, std::size_t hi, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace

SystemSource random_tri_source(std::size_t count, std::size_t max_n, Palette palette,
                               OverlapMode overlap, std::uint64_t seed, Tolerance tol) {
  if (max_n < 1) throw std::invalid_argument("random_tri_source: max_n must be >= 1");
  return {count, [=](std::size_t k) {
            const std::uint64_t item = derive_seed(seed, k);
            const std::size_t n = draw_size(std::min<std::size_t>(2, max_n), max_n, item);
            auto [S, T] = tri_pair(n, derive_seed(item, 2));
            return make_system(std::move(S), std::move(T), palette, overlap, derive_seed(item, 3),
                               tol);
          }};
}

SystemSource random_violating_source(std::size_t count, std::size_t max_n, Palette palette,
                                     OverlapMode overlap, std::uint64_t seed, Tolerance tol) {
  if (max_n < 3)
    throw ImpossibleOrder("violating systems need n >= 3, got max n = " + std::to_string(max_n));
  return {count, [=](std::size_t k) {
            const std::uint64_t item = derive_seed(seed, k);
            const std::size_t n = draw_size(3, max_n, item);
            auto [S, T] = violating_pair(n, derive_seed(item, 2));
            return make_system(std::move(S), std::move(T), palette, overlap, derive_seed(item, 3),
                               tol);
          }};
}

} // namespace genmech
