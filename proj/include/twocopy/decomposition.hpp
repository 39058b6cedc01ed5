#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "twocopy/exact_linalg.hpp"
#include "twocopy/representation.hpp"

namespace twocopy {

// The eight coarse invariant sectors of the Pauli-pair space, classified by
// identity slots, swap symmetry, and commutation of the pair.
enum class Sector { id, right, left, diag, sym_comm, sym_anti, asym_comm, asym_anti };

const char* sector_name(Sector s);  // "id","r","l","d","[S]","{S}","[A]","{A}"

// An unordered pair {lo, hi} of distinct non-identity Paulis, lo < hi.
// Every such pair belongs to exactly one block: the tau with
// lo.hi proportional to tau (commuting) or i lo.hi proportional to tau
// (anticommuting). sgn resolves the product sign:
//   commuting:      lo . tau = sgn * hi
//   anticommuting:  i lo . tau = sgn * hi
struct PairInfo {
  PauliIndex lo = 0, hi = 0;
  PauliIndex block = 0;
  bool commuting = false;
  int sgn = 1;
  int pos = 0;  // position within its block list
};

// Pair bookkeeping for one qubit count: pair <-> block-local coordinates.
// Vectors over a sym block are coefficients of s_{ij} = e_ij + e_ji; over an
// antisym block of a_{ij} = e_ij - e_ji (both unnormalized).
class PairTable {
 public:
  explicit PairTable(int qubits);

  int q, d, d2;
  std::vector<PairInfo> pairs;

  int pair_id(PauliIndex i, PauliIndex j) const;  // -1 when no such pair
  const std::vector<int>& comm_block(PauliIndex tau) const { return comm_[tau]; }
  const std::vector<int>& anti_block(PauliIndex tau) const { return anti_[tau]; }
  int comm_block_size() const { return d2 / 4 - 1; }
  int anti_block_size() const { return d2 / 4; }

 private:
  std::vector<std::vector<int>> comm_, anti_;
  std::vector<int> id_;
};

struct SubspaceBlock {
  int block = 0;               // tau for pair sectors, 0 otherwise
  std::vector<IVec> basis;     // integer vectors over block-local coordinates
  RatMatrix projector;
  // projector scaled to integers for fast exact checks: num / den entrywise
  std::vector<Int> proj_num;   // flattened n*n
  Int proj_den = 1;
};

struct Subspace {
  std::string label;
  Sector sector = Sector::id;
  int dim = 0;
  int expected_dim = 0;
  int min_q = 1;  // validity threshold: nonempty iff q >= min_q
  std::vector<SubspaceBlock> blocks;
  bool empty() const { return dim == 0; }
};

// Image of a block-local vector under the two-copy action: same sector,
// possibly a different block.
struct LocalImage {
  int block = 0;
  IVec vec;
};

LocalImage apply_sector_action(const PairTable& table, const SignedPermutation& perm,
                               Sector sector, int block, const IVec& vec);

// The commutant operator of the diagonal sector: T[sigma][tau] = 1 iff
// {sigma, tau} = 0, a symmetric 0/1 matrix on the d^2-1 diagonal coordinates.
RatMatrix operator_T(int qubits);

// The commutant operator of one anticommuting block, in the canonical block
// basis b_p = S_{lo(p), i lo(p).tau}. Entries +/-2, trace d^2/2, A^2 = d^2.
RatMatrix operator_A(int qubits, PauliIndex tau);

struct DecompositionReport;

class Decomposition {
 public:
  explicit Decomposition(int qubits);

  int qubits() const { return q_; }
  int pair_dim() const { return table_.d2 * table_.d2; }
  const PairTable& table() const { return table_; }

  static const std::array<const char*, 14>& labels();
  const std::vector<Subspace>& subspaces() const { return subspaces_; }
  const Subspace& subspace(std::string_view label) const;

  // Adjoint family member for tau, as a +/-1 integer vector over the
  // commuting (kind [adj]) or anticommuting (kind {adj}) block of tau.
  IVec adjoint_vector(PauliIndex tau, bool anti) const;

  // Literal Theta image of the block basis vector of the commuting pair p,
  // over the anticommuting block of the same tau (entries +/-2).
  const IVec& theta_image(int pair_id) const;
  // Theta applied to a vector over a commuting block in raw a-coordinates.
  IVec apply_theta(PauliIndex tau, const IVec& raw) const;

  // Equivalence classes of the constituents (member labels), in report order.
  std::vector<std::vector<std::string>> equivalence_classes() const;
  long long multiplicity_sum_squares() const;

  DecompositionReport report() const;

  // Fault-injection hook for the negative-control suite: adds 1 to one basis
  // coordinate and rebuilds the affected projector.
  void corrupt_basis_entry(std::string_view label, size_t block_pos, size_t vec,
                           size_t coord);

 private:
  void build();
  void finalize_subspace(Subspace& s);

  int q_;
  PairTable table_;
  std::vector<Subspace> subspaces_;
  std::vector<IVec> theta_images_;  // indexed by commuting pair id
};

struct SubspaceSummary {
  std::string label;
  std::string sector;
  int dim = 0;
  int expected_dim = 0;
  std::string q_validity;
  std::string projector_checksum;  // FNV-1a over the canonical serialization
};

struct DecompositionReport {
  int q = 1;
  int total_dim = 0;
  int nonzero_count = 0;
  long long multiplicity_sum_squares = 0;
  std::vector<SubspaceSummary> entries;
  std::vector<std::vector<std::string>> classes;
};

DecompositionReport full_decomposition(int qubits);

nlohmann::ordered_json report_to_json(const DecompositionReport& rep);
std::string report_to_text(const DecompositionReport& rep);
std::string report_to_csv(const DecompositionReport& rep);

// Sector spanning vectors in full pair coordinates (d^4), pairwise orthogonal
// unnormalized integers.
std::vector<IVec> sector_basis(Sector sector, int qubits);

// Basis export: full pair coordinates, line-oriented text and JSON; both
// round-trip exactly.
RatMatrix basis_in_pair_coordinates(const Decomposition& dec, const Subspace& s);
std::string export_basis_text(const Decomposition& dec, const Subspace& s);
std::string export_basis_json(const Decomposition& dec, const Subspace& s);

struct ParsedBasis {
  std::string label;
  int q = 1;
  RatMatrix columns;  // d^4 x dim
};
ParsedBasis parse_basis_text(const std::string& text);
ParsedBasis parse_basis_json(const std::string& text);

}  // namespace twocopy
