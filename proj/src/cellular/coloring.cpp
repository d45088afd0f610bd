#include "walkdist/cellular/coloring.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <memory>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace walkdist::cellular {

namespace {

using Key = std::vector<std::uint32_t>;

struct KeyHash {
  std::size_t operator()(const Key& key) const noexcept {
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ key.size();
    for (auto x : key) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xff51afd7ed558ccdull;
    }
    return static_cast<std::size_t>(h ^ (h >> 33));
  }
};

// Distinct keys seen by one worker, in order of first sight.
struct LocalDictionary {
  std::unordered_map<Key, std::uint32_t, KeyHash> ids;
  std::vector<const Key*> keys;

  std::uint32_t intern(const Key& key) {
    auto [it, inserted] = ids.try_emplace(key, static_cast<std::uint32_t>(keys.size()));
    if (inserted) keys.push_back(&it->first);
    return it->second;
  }
};

// Computes the refinement key of every pair in rows [row] of one colouring.
class RowKeyer {
 public:
  RowKeyer(const PairColoring& c, const std::vector<std::uint32_t>& transposed)
      : c_(c), t_(transposed), counts_(c.palette, 0) {}

  // Fills ids[u*N + v] with local ids from `dict` for every v.
  void row(std::size_t u, LocalDictionary& dict, std::vector<std::uint32_t>& ids) {
    const std::size_t n = c_.points;
    by_color_.clear();
    for (std::size_t w = 0; w < n; ++w) by_color_.emplace_back(c_.at(u, w), static_cast<std::uint32_t>(w));
    std::sort(by_color_.begin(), by_color_.end());

    for (std::size_t v = 0; v < n; ++v) {
      key_.clear();
      key_.push_back(c_.at(u, v));
      const std::uint32_t* col = t_.data() + v * n;  // col[w] = c(w, v)
      std::size_t i = 0;
      while (i < by_color_.size()) {
        const std::uint32_t a = by_color_[i].first;
        touched_.clear();
        for (; i < by_color_.size() && by_color_[i].first == a; ++i) {
          const std::uint32_t b = col[by_color_[i].second];
          if (counts_[b]++ == 0) touched_.push_back(b);
        }
        std::sort(touched_.begin(), touched_.end());
        for (auto b : touched_) {
          key_.push_back(a);
          key_.push_back(b);
          key_.push_back(counts_[b]);
          counts_[b] = 0;
        }
      }
      ids[u * n + v] = dict.intern(key_);
    }
  }

 private:
  const PairColoring& c_;
  const std::vector<std::uint32_t>& t_;
  std::vector<std::uint32_t> counts_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> by_color_;
  std::vector<std::uint32_t> touched_;
  Key key_;
};

std::vector<std::uint32_t> transpose(const PairColoring& c) {
  std::vector<std::uint32_t> t(c.colors.size());
  const std::size_t n = c.points;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v) t[v * n + u] = c.colors[u * n + v];
  return t;
}

}  // namespace

std::size_t PairColoring::used_colors() const {
  std::vector<char> seen(palette, 0);
  std::size_t used = 0;
  for (auto c : colors)
    if (!seen[c]) {
      seen[c] = 1;
      ++used;
    }
  return used;
}

std::vector<std::size_t> PairColoring::histogram() const {
  std::vector<std::size_t> h(palette, 0);
  for (auto c : colors) ++h[c];
  return h;
}

InitialColoring initial_colorings_with_keys(std::span<const std::vector<IntMatrix>> seed_sets) {
  const std::size_t seed_count = seed_sets.empty() ? 0 : seed_sets[0].size();
  for (const auto& seeds : seed_sets) {
    if (seeds.size() != seed_count) throw ArgumentError("seed lists differ in length");
    if (seeds.empty()) throw ArgumentError("point count unknown: pass at least one seed matrix");
    for (const auto& s : seeds)
      if (s.size() != seeds[0].size()) throw ArgumentError("seed matrices differ in dimension");
  }

  // Provisional ids in order of first sight, then canonical ranks by key order.
  std::map<std::vector<std::int64_t>, std::uint32_t> dictionary;
  InitialColoring out;
  out.colorings.resize(seed_sets.size());
  std::vector<std::int64_t> key;
  for (std::size_t g = 0; g < seed_sets.size(); ++g) {
    const auto& seeds = seed_sets[g];
    const std::size_t n = seeds[0].size();
    auto& pc = out.colorings[g];
    pc.points = n;
    pc.colors.assign(n * n, 0);
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        key.clear();
        key.push_back(u == v ? 0 : 1);
        for (const auto& s : seeds) {
          key.push_back(s(u, v));
          key.push_back(s(v, u));
        }
        auto it = dictionary.try_emplace(key, static_cast<std::uint32_t>(dictionary.size())).first;
        pc.colors[u * n + v] = it->second;
      }
  }
  std::vector<std::uint32_t> rank(dictionary.size());
  std::uint32_t next = 0;
  for (const auto& [k, provisional] : dictionary) {
    rank[provisional] = next++;
    out.keys.push_back(k);
  }
  for (auto& pc : out.colorings) {
    pc.palette = next;
    for (auto& c : pc.colors) c = rank[c];
  }
  return out;
}

std::vector<PairColoring> initial_colorings(std::span<const std::vector<IntMatrix>> seed_sets) {
  return initial_colorings_with_keys(seed_sets).colorings;
}

PairColoring initial_coloring(std::span<const IntMatrix> seeds) {
  std::vector<std::vector<IntMatrix>> sets{std::vector<IntMatrix>(seeds.begin(), seeds.end())};
  return initial_colorings(sets).front();
}

std::vector<PairColoring> refine_step_jointly(std::span<const PairColoring> colorings,
                                              const RefineOptions& options) {
  const unsigned workers = thread_count(options.threads);

  // Work items are (colouring, row); every worker owns one dictionary per colouring.
  std::vector<std::size_t> row_offset{0};
  for (const auto& c : colorings) row_offset.push_back(row_offset.back() + c.points);
  const std::size_t total_rows = row_offset.back();

  std::vector<std::vector<std::uint32_t>> transposed;
  for (const auto& c : colorings) transposed.push_back(transpose(c));

  std::vector<std::vector<LocalDictionary>> dicts(workers, std::vector<LocalDictionary>(colorings.size()));
  std::vector<std::vector<std::uint32_t>> ids(colorings.size());
  for (std::size_t g = 0; g < colorings.size(); ++g) ids[g].assign(colorings[g].colors.size(), 0);
  std::vector<std::uint32_t> row_worker(total_rows, 0);

  std::atomic<std::size_t> next_row{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto work = [&](unsigned worker) {
    try {
      std::vector<std::unique_ptr<RowKeyer>> keyers(colorings.size());
      while (true) {
        const std::size_t r = next_row.fetch_add(1);
        if (r >= total_rows) break;
        if (r % 16 == 0) options.deadline.check();
        const std::size_t g =
            static_cast<std::size_t>(std::upper_bound(row_offset.begin(), row_offset.end(), r) -
                                     row_offset.begin()) - 1;
        if (!keyers[g]) keyers[g] = std::make_unique<RowKeyer>(colorings[g], transposed[g]);
        keyers[g]->row(r - row_offset[g], dicts[worker][g], ids[g]);
        row_worker[r] = worker;
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
      next_row.store(total_rows);
    }
  };

  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  // Canonical ids: rank of each distinct key in lexicographic order.
  std::vector<const Key*> all;
  for (auto& per_worker : dicts)
    for (auto& d : per_worker) all.insert(all.end(), d.keys.begin(), d.keys.end());
  std::sort(all.begin(), all.end(), [](const Key* a, const Key* b) { return *a < *b; });
  all.erase(std::unique(all.begin(), all.end(), [](const Key* a, const Key* b) { return *a == *b; }),
            all.end());
  auto rank_of = [&all](const Key& key) {
    auto it = std::lower_bound(all.begin(), all.end(), &key,
                               [](const Key* a, const Key* b) { return *a < *b; });
    return static_cast<std::uint32_t>(it - all.begin());
  };

  std::vector<PairColoring> out(colorings.size());
  for (std::size_t g = 0; g < colorings.size(); ++g) {
    std::vector<std::vector<std::uint32_t>> remap(workers);
    for (unsigned w = 0; w < workers; ++w) {
      const auto& keys = dicts[w][g].keys;
      remap[w].resize(keys.size());
      for (std::size_t i = 0; i < keys.size(); ++i) remap[w][i] = rank_of(*keys[i]);
    }
    auto& pc = out[g];
    pc.points = colorings[g].points;
    pc.palette = static_cast<std::uint32_t>(all.size());
    pc.colors.resize(ids[g].size());
    const std::size_t n = pc.points;
    for (std::size_t u = 0; u < n; ++u) {
      const auto& map = remap[row_worker[row_offset[g] + u]];
      for (std::size_t v = 0; v < n; ++v) pc.colors[u * n + v] = map[ids[g][u * n + v]];
    }
  }
  return out;
}

PairColoring refine_step(const PairColoring& coloring, const RefineOptions& options) {
  return refine_step_jointly(std::span<const PairColoring>(&coloring, 1), options).front();
}

StabilizeResult stabilize_jointly(std::vector<PairColoring> colorings, const RefineOptions& options,
                                  bool stop_on_divergence) {
  StabilizeResult result;
  auto agree = [](const std::vector<PairColoring>& cs) {
    for (std::size_t i = 1; i < cs.size(); ++i)
      if (cs[i].points != cs[0].points || cs[i].histogram() != cs[0].histogram()) return false;
    return true;
  };
  std::vector<std::size_t> used;
  for (const auto& c : colorings) used.push_back(c.used_colors());
  result.histograms_agree = agree(colorings);
  while (!(stop_on_divergence && !result.histograms_agree)) {
    options.deadline.check();
    auto next = refine_step_jointly(colorings, options);
    ++result.rounds;
    bool changed = false;
    for (std::size_t g = 0; g < next.size(); ++g) {
      const std::size_t u = next[g].used_colors();
      changed = changed || u != used[g];
      used[g] = u;
    }
    colorings = std::move(next);
    result.histograms_agree = result.histograms_agree && agree(colorings);
    if (!changed) break;
  }
  result.colorings = std::move(colorings);
  return result;
}

PairColoring stabilize(PairColoring coloring, const RefineOptions& options) {
  std::vector<PairColoring> one;
  one.push_back(std::move(coloring));
  return std::move(stabilize_jointly(std::move(one), options, false).colorings.front());
}

}  // namespace walkdist::cellular
