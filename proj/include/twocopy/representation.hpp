#pragma once

#include <cstdint>
#include <vector>

#include "twocopy/clifford.hpp"
#include "twocopy/rational.hpp"

namespace twocopy {

// A signed permutation matrix: column i has a single entry sign[i] in row
// target[i]. The representation matrices of the Clifford action in the Pauli
// and Pauli-pair bases all take this form.
struct SignedPermutation {
  std::vector<uint32_t> target;
  std::vector<int8_t> sign;

  size_t size() const { return target.size(); }
  static SignedPermutation identity(size_t n);
  // (this . other)(i) = this(other(i)).
  SignedPermutation after(const SignedPermutation& other) const;
  SignedPermutation inverse() const;
  bool is_identity() const;
  bool operator==(const SignedPermutation& o) const {
    return target == o.target && sign == o.sign;
  }
};

// The conjugation action on the Hermitian Pauli basis: size d^2, index 0
// (identity) always maps to itself with sign +1.
SignedPermutation one_copy(const CliffordTableau& c);

// The action on the Pauli-pair basis, derived lazily from one_copy: pair
// index i*d^2+j maps to (target[i], target[j]) with sign sign[i]*sign[j].
class TwoCopyAction {
 public:
  explicit TwoCopyAction(SignedPermutation base) : base_(std::move(base)) {}

  size_t pair_dim() const { return base_.size() * base_.size(); }
  const SignedPermutation& base() const { return base_; }

  struct Entry {
    uint32_t target;
    int sign;
  };
  Entry apply(uint32_t pair_index) const;

  long long trace() const;              // equals character_one(base)^2
  SignedPermutation materialize() const;  // d^4 entries; intended for small q

 private:
  SignedPermutation base_;
};

long long character_one(const SignedPermutation& p);
long long character_two(const SignedPermutation& p);
// Number of non-identity basis elements fixed up to a sign.
long long diagonal_character(const SignedPermutation& p);

enum class CharacterKind { two_copy, diagonal };

// (1/|C_q/U(1)|) sum over the full enumeration of chi(C)^2, exact.
// Refuses q >= 3 (use char_inner_monte_carlo).
Rat char_inner_exact(int qubits, CharacterKind kind);

// Exact integer accumulator for Monte-Carlo character moments.
struct CharacterAccumulator {
  long long samples = 0;
  Int sum = 0;
  Int sum_sq = 0;

  void add(long long value);
  void merge(const CharacterAccumulator& o);
  Rat mean() const;
  Rat variance_of_mean() const;  // unbiased, exact rational
};

struct MonteCarloEstimate {
  Rat estimate;
  Rat variance_of_mean;
  long long samples = 0;
  double stderr_approx() const;
};

// Sample mean of chi_phi(C)^4 over exactly uniform Cliffords; deterministic
// given the seed and independent of the thread count (fixed stream layout).
MonteCarloEstimate char_inner_monte_carlo(int qubits, long long samples,
                                          uint64_t seed, int threads = 1);

}  // namespace twocopy
