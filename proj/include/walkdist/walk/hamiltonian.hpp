#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "walkdist/cellular/bit_matrix.hpp"
#include "walkdist/common.hpp"
#include "walkdist/graph/graph.hpp"

namespace walkdist::walk {

/// full: V^k tensor basis; symmetric: orthonormal symmetrised states, one per
/// multiset of k vertices; antisymmetric: (|ij> - |ji>)/sqrt(2) for i < j.
enum class Space { full, symmetric, antisymmetric };

const char* to_string(Space s);

struct Interaction {
  enum class Kind { none, hubbard, onsite };
  Kind kind = Kind::none;
  double u = 0.0;              // hubbard strength
  std::vector<double> onsite;  // one energy per occupation class

  static Interaction none() { return {}; }
  static Interaction hubbard(double u) { return {Kind::hubbard, u, {}}; }
  static Interaction onsite_list(std::vector<double> energies) { return {Kind::onsite, 0.0, std::move(energies)}; }

  /// "none", "hubbard:U" or "onsite:U1,U2,..."; round-trips through parse_interaction.
  std::string describe() const;
};

Interaction parse_interaction(std::string_view text);

struct OccupationClass {
  std::vector<std::size_t> histogram;  // nonzero per-vertex counts, non-increasing
  std::vector<std::size_t> members;    // tuple indices, increasing
};

/// Partition of V^k by the multiset of per-vertex particle counts. Classes are
/// ordered by histogram, lexicographically descending: (k) first.
struct OccupationClasses {
  std::size_t n = 0;
  int k = 0;
  std::vector<OccupationClass> classes;
  std::vector<std::uint32_t> assignment;  // tuple index -> class id
};

OccupationClasses occupation_classes(std::size_t n, int k, std::size_t cap = kDefaultSizeCap);

/// Diagonal 0-1 matrix of class `id` (the matrix R_i).
cellular::BitMatrix occupation_projector(const OccupationClasses& classes, std::size_t id);

/// U_i for every class. hubbard(U) gives (U/2) sum_v c_v (c_v - 1).
std::vector<double> class_energies(const OccupationClasses& classes, const Interaction& interaction);

struct Hamiltonian {
  Space space = Space::full;
  int particles = 1;
  Interaction interaction;
  std::vector<double> energies;  // per occupation class, empty when not applicable
  Eigen::MatrixXd matrix;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(matrix.rows()); }
};

/// H = A.
Hamiltonian hamiltonian_single(const graph::Graph& g);

/// -1/2 (I + S) A^{(+)2} + U R on the n^2 tensor space, built term by term.
Hamiltonian hamiltonian_2boson(const graph::Graph& g, double u);

/// -(1/k!) (sum of the k! coordinate permutations) A^{(+)k} + sum_i U_i R_i.
/// `space` is full or symmetric; the symmetric build is the compression onto
/// the symmetrised basis. The size cap applies to the chosen dimension.
Hamiltonian hamiltonian_kboson(const graph::Graph& g, int k, const Interaction& interaction,
                               Space space = Space::full, std::size_t cap = kDefaultSizeCap);

/// -A^{(+)2} compressed onto the antisymmetric space.
Hamiltonian hamiltonian_2fermion(const graph::Graph& g);

/// Multisets of k vertices as non-decreasing tuples, in lexicographic order.
std::vector<std::vector<std::size_t>> symmetric_states(std::size_t n, int k);

/// n^k x C(n+k-1,k) isometry whose columns are the symmetrised states.
Eigen::MatrixXd symmetric_embedding(std::size_t n, int k);

/// Binomial coefficient, saturating.
std::size_t binomial(std::size_t n, std::size_t k);

}  // namespace walkdist::walk
