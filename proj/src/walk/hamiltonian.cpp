#include "walkdist/walk/hamiltonian.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>

#include "walkdist/cellular/extension.hpp"

namespace walkdist::walk {

const char* to_string(Space s) {
  switch (s) {
    case Space::full: return "full";
    case Space::symmetric: return "symmetric";
    case Space::antisymmetric: return "antisymmetric";
  }
  return "unknown";
}

namespace {

std::string format_double(double x) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, std::string_view what) {
  double value = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size() || !std::isfinite(value))
    throw ArgumentError("invalid number '" + std::string(text) + "' in " + std::string(what));
  return value;
}

std::vector<std::vector<std::size_t>> all_permutations(int k) {
  std::vector<std::size_t> p(static_cast<std::size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

std::vector<std::size_t> histogram_of(const std::vector<std::size_t>& tuple, std::size_t n) {
  std::vector<std::size_t> counts(n, 0);
  for (auto v : tuple) ++counts[v];
  std::vector<std::size_t> h;
  for (auto c : counts)
    if (c) h.push_back(c);
  std::sort(h.rbegin(), h.rend());
  return h;
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

Eigen::MatrixXd adjacency_matrix(const graph::Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.order());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (auto [u, v] : g.edges()) {
    a(static_cast<Eigen::Index>(u), static_cast<Eigen::Index>(v)) = 1.0;
    a(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) = 1.0;
  }
  return a;
}

}  // namespace

std::string Interaction::describe() const {
  switch (kind) {
    case Kind::none: return "none";
    case Kind::hubbard: return "hubbard:" + format_double(u);
    case Kind::onsite: {
      std::string s = "onsite:";
      for (std::size_t i = 0; i < onsite.size(); ++i) s += (i ? "," : "") + format_double(onsite[i]);
      return s;
    }
  }
  return "unknown";
}

Interaction parse_interaction(std::string_view text) {
  if (text == "none") return Interaction::none();
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ArgumentError("interaction must be none, hubbard:U or onsite:U1,...");
  const auto kind = text.substr(0, colon);
  auto rest = text.substr(colon + 1);
  if (kind == "hubbard") return Interaction::hubbard(parse_double(rest, "hubbard interaction"));
  if (kind == "onsite") {
    std::vector<double> energies;
    while (true) {
      const auto comma = rest.find(',');
      energies.push_back(parse_double(rest.substr(0, comma), "onsite interaction"));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return Interaction::onsite_list(std::move(energies));
  }
  throw ArgumentError("unknown interaction kind '" + std::string(kind) + "'");
}

OccupationClasses occupation_classes(std::size_t n, int k, std::size_t cap) {
  const std::size_t dim = require_within_cap(n, k, cap, "occupation classes refused");
  const cellular::TupleSpace space(n, k);
  std::vector<std::vector<std::size_t>> hist(dim);
  std::map<std::vector<std::size_t>, std::uint32_t, std::greater<>> ids;
  for (std::size_t x = 0; x < dim; ++x) {
    hist[x] = histogram_of(space.decode(x), n);
    ids.emplace(hist[x], 0);
  }
  OccupationClasses out;
  out.n = n;
  out.k = k;
  for (auto& [h, id] : ids) {
    id = static_cast<std::uint32_t>(out.classes.size());
    out.classes.push_back({h, {}});
  }
  out.assignment.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    const auto id = ids.at(hist[x]);
    out.assignment[x] = id;
    out.classes[id].members.push_back(x);
  }
  return out;
}

cellular::BitMatrix occupation_projector(const OccupationClasses& classes, std::size_t id) {
  if (id >= classes.classes.size()) throw ArgumentError("occupation class index out of range");
  cellular::BitMatrix r(classes.assignment.size());
  for (auto x : classes.classes[id].members) r.set(x, x);
  return r;
}

std::vector<double> class_energies(const OccupationClasses& classes, const Interaction& interaction) {
  const std::size_t count = classes.classes.size();
  switch (interaction.kind) {
    case Interaction::Kind::none: return std::vector<double>(count, 0.0);
    case Interaction::Kind::hubbard: {
      std::vector<double> e;
      for (const auto& c : classes.classes) {
        std::size_t pairs = 0;
        for (auto m : c.histogram) pairs += m * (m - 1);
        e.push_back(interaction.u / 2.0 * static_cast<double>(pairs));
      }
      return e;
    }
    case Interaction::Kind::onsite:
      if (interaction.onsite.size() != count)
        throw ArgumentError("onsite interaction lists " + std::to_string(interaction.onsite.size()) +
                            " energies but there are " + std::to_string(count) + " occupation classes");
      return interaction.onsite;
  }
  return {};
}

Hamiltonian hamiltonian_single(const graph::Graph& g) {
  Hamiltonian h;
  h.matrix = adjacency_matrix(g);
  return h;
}

Hamiltonian hamiltonian_2boson(const graph::Graph& g, double u) {
  const auto n = static_cast<Eigen::Index>(g.order());
  const Eigen::MatrixXd a = adjacency_matrix(g);
  const Eigen::Index dim = n * n;
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(dim, dim);  // A (x) I + I (x) A
  Eigen::MatrixXd swap = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      swap(j * n + i, i * n + j) = 1.0;
      for (Eigen::Index p = 0; p < n; ++p) {
        sum(i * n + j, p * n + j) += a(i, p);
        sum(i * n + j, i * n + p) += a(j, p);
      }
    }
  for (Eigen::Index i = 0; i < n; ++i) r(i * n + i, i * n + i) = 1.0;
  const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(dim, dim);
  Hamiltonian h;
  h.particles = 2;
  h.interaction = Interaction::hubbard(u);
  h.energies = {u, 0.0};
  h.matrix = -0.5 * (identity + swap) * sum + u * r;
  return h;
}

std::vector<std::vector<std::size_t>> symmetric_states(std::size_t n, int k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> t(static_cast<std::size_t>(k), 0);
  while (true) {
    out.push_back(t);
    // Next non-decreasing tuple in lexicographic order.
    int i = k - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == n - 1) --i;
    if (i < 0) break;
    const auto v = t[static_cast<std::size_t>(i)] + 1;
    for (auto j = static_cast<std::size_t>(i); j < t.size(); ++j) t[j] = v;
  }
  return out;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > SIZE_MAX) return SIZE_MAX;
  }
  return static_cast<std::size_t>(r);
}

namespace {

// Orbit size k! / prod c_v! of a multiset.
double orbit_size(const std::vector<std::size_t>& multiset) {
  double size = factorial(static_cast<int>(multiset.size()));
  std::size_t run = 1;
  for (std::size_t i = 1; i <= multiset.size(); ++i) {
    if (i < multiset.size() && multiset[i] == multiset[i - 1]) {
      ++run;
    } else {
      size /= factorial(static_cast<int>(run));
      run = 1;
    }
  }
  return size;
}

Hamiltonian kboson_symmetric(const graph::Graph& g, int k, const Interaction& interaction, std::size_t cap) {
  const std::size_t n = g.order();
  const std::size_t dim = binomial(n + static_cast<std::size_t>(k) - 1, static_cast<std::size_t>(k));
  if (dim > cap) throw RefusedError(dim, cap, "symmetric-space Hamiltonian refused");
  const auto states = symmetric_states(n, k);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t s = 0; s < states.size(); ++s) index.emplace(states[s], s);

  // Class energies depend only on the histogram, so no n^k enumeration is needed.
  std::map<std::vector<std::size_t>, std::uint32_t, std::greater<>> class_ids;
  std::vector<std::vector<std::size_t>> hists(dim);
  for (std::size_t s = 0; s < dim; ++s) {
    hists[s] = histogram_of(states[s], n);
    class_ids.emplace(hists[s], 0);
  }
  OccupationClasses classes;
  classes.n = n;
  classes.k = k;
  for (auto& [h, id] : class_ids) {
    id = static_cast<std::uint32_t>(classes.classes.size());
    classes.classes.push_back({h, {}});
  }
  const auto energies = class_energies(classes, interaction);

  // counts(s, s') = number of pairs (x, y) in the two orbits with A^{(+)k}(x, y) = 1.
  std::vector<double> orbit(dim);
  for (std::size_t s = 0; s < dim; ++s) orbit[s] = orbit_size(states[s]);
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s) {
    auto y = states[s];
    for (std::size_t i = 0; i < y.size(); ++i) {
      const auto saved = y[i];
      for (std::size_t w = 0; w < n; ++w) {
        if (!g.adjacent(saved, w)) continue;
        y[i] = w;
        auto sorted = y;
        std::sort(sorted.begin(), sorted.end());
        counts(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(index.at(sorted))) += orbit[s];
        y[i] = saved;
      }
    }
  }
  Hamiltonian h;
  h.space = Space::symmetric;
  h.particles = k;
  h.interaction = interaction;
  h.energies = energies;
  h.matrix.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t s = 0; s < dim; ++s)
    for (std::size_t t = s; t < dim; ++t) {
      const double c = counts(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
      const double value = c == 0.0 ? 0.0 : -c / std::sqrt(orbit[s] * orbit[t]);
      h.matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t)) = value;
      h.matrix(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) = value;
    }
  for (std::size_t s = 0; s < dim; ++s)
    h.matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s)) += energies[class_ids.at(hists[s])];
  return h;
}

}  // namespace

Hamiltonian hamiltonian_kboson(const graph::Graph& g, int k, const Interaction& interaction, Space space,
                               std::size_t cap) {
  if (k < 1) throw ArgumentError("particle count must be at least 1");
  if (space == Space::symmetric) return kboson_symmetric(g, k, interaction, cap);
  if (space != Space::full) throw ArgumentError("bosonic Hamiltonians live on the full or symmetric space");
  const std::size_t n = g.order();
  const std::size_t dim = require_within_cap(n, k, cap, "k-boson Hamiltonian refused");
  const auto classes = occupation_classes(n, k, cap);
  const auto energies = class_energies(classes, interaction);
  const cellular::TupleSpace tuples(n, k);
  const auto perms = all_permutations(k);

  // Integer counts sum_pi (P_pi A^{(+)k})(z, y), exactly symmetric, then scaled once.
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  std::vector<std::size_t> z(static_cast<std::size_t>(k));
  for (std::size_t y = 0; y < dim; ++y) {
    auto x = tuples.decode(y);
    for (std::size_t i = 0; i < x.size(); ++i) {
      const auto saved = x[i];
      for (std::size_t w = 0; w < n; ++w) {
        if (!g.adjacent(saved, w)) continue;
        x[i] = w;
        for (const auto& p : perms) {
          for (std::size_t j = 0; j < z.size(); ++j) z[j] = x[p[j]];
          counts(static_cast<Eigen::Index>(tuples.encode(z)), static_cast<Eigen::Index>(y)) += 1.0;
        }
        x[i] = saved;
      }
    }
  }
  Hamiltonian h;
  h.particles = k;
  h.interaction = interaction;
  h.energies = energies;
  h.matrix = counts * (-1.0 / factorial(k));
  for (std::size_t x = 0; x < dim; ++x)
    h.matrix(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)) += energies[classes.assignment[x]];
  return h;
}

Hamiltonian hamiltonian_2fermion(const graph::Graph& g) {
  const std::size_t n = g.order();
  if (n < 2) throw ArgumentError("two fermions need at least two vertices");
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) basis.emplace_back(i, j);
  // M = -A^{(+)2} on the tensor space.
  auto m = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) -> int {
    return -((g.adjacent(a, c) && b == d ? 1 : 0) + (a == c && g.adjacent(b, d) ? 1 : 0));
  };
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Hamiltonian h;
  h.space = Space::antisymmetric;
  h.particles = 2;
  h.matrix = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index s = 0; s < dim; ++s)
    for (Eigen::Index t = 0; t < dim; ++t) {
      const auto [a, b] = basis[static_cast<std::size_t>(s)];
      const auto [c, d] = basis[static_cast<std::size_t>(t)];
      // 1/2 [M(ab,cd) - M(ab,dc) - M(ba,cd) + M(ba,dc)], integer by the swap symmetry of M.
      h.matrix(s, t) = (m(a, b, c, d) - m(a, b, d, c) - m(b, a, c, d) + m(b, a, d, c)) / 2;
    }
  return h;
}

Eigen::MatrixXd symmetric_embedding(std::size_t n, int k) {
  const cellular::TupleSpace tuples(n, k);
  const auto states = symmetric_states(n, k);
  const auto perms = all_permutations(k);
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tuples.size()),
                                            static_cast<Eigen::Index>(states.size()));
  std::vector<std::size_t> z(static_cast<std::size_t>(k));
  for (std::size_t s = 0; s < states.size(); ++s) {
    const double norm = 1.0 / std::sqrt(orbit_size(states[s]));
    for (const auto& p : perms) {
      for (std::size_t j = 0; j < z.size(); ++j) z[j] = states[s][p[j]];
      e(static_cast<Eigen::Index>(tuples.encode(z)), static_cast<Eigen::Index>(s)) = norm;
    }
  }
  return e;
}

}  // namespace walkdist::walk
