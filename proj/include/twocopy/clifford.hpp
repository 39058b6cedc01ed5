#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "twocopy/pauli.hpp"

namespace twocopy {

// Deterministic random source. mt19937_64 has a fully specified algorithm, and
// every draw below is built from raw 64-bit outputs only, so identical seeds
// produce identical streams on every platform.
class Rng {
 public:
  explicit Rng(uint64_t seed) : eng_(seed) {}

  uint64_t bits() { return eng_(); }
  int bit() { return static_cast<int>(eng_() >> 63); }

  uint64_t below(uint64_t n) {
    // Rejection from a masked draw; unbiased.
    if (n <= 1) return 0;
    uint64_t mask = ~uint64_t{0} >> std::countl_zero(n - 1);
    for (;;) {
      uint64_t v = eng_() & mask;
      if (v < n) return v;
    }
  }

  // Stream derivation for parallel workers: splitmix64 of (master, stream).
  static uint64_t derive(uint64_t master, uint64_t stream);

 private:
  std::mt19937_64 eng_;
};

// A Clifford element modulo global phase: the signed Pauli images of the
// generators X_0..X_{q-1}, Z_0..Z_{q-1}. Equality of tableaux is equality in
// C_q / U(1).
struct CliffordTableau {
  int qubits = 1;
  std::vector<SignedPauli> images;  // size 2*qubits

  const SignedPauli& image_x(int j) const { return images[j]; }
  const SignedPauli& image_z(int j) const { return images[qubits + j]; }
  bool operator==(const CliffordTableau& o) const {
    return qubits == o.qubits && images == o.images;
  }
};

enum class Gate { H, S, CNOT };

struct GeneratorWord {
  struct Item {
    Gate gate;
    int a = 0;   // target qubit (H, S) or control (CNOT)
    int b = 0;   // CNOT target
  };
  std::vector<Item> items;
};

CliffordTableau identity_tableau(int qubits);
CliffordTableau from_generator(Gate gate, int a, int b, int qubits);
CliffordTableau from_word(const GeneratorWord& word, int qubits);

// compose(a, b) is the element "a after b": conjugation first by b, then by a.
CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b);
CliffordTableau inverse(const CliffordTableau& a);

SignedPauli conjugate(const CliffordTableau& c, const SignedPauli& p);

// Image pairs preserve all commutation relations of the generators.
bool satisfies_symplectic_condition(const CliffordTableau& c);

// |C_q / U(1)| = 2^(q^2 + 2q) * prod_{j=1..q} (4^j - 1).
uint64_t clifford_group_order(int qubits);

// The canonical generator list: H by qubit, S by qubit, CNOT by (control,
// target) lexicographically.
std::vector<CliffordTableau> standard_generators(int qubits);

// Exhaustive BFS closure over {H, S, CNOT} in canonical generator order.
// Every element of C_q/U(1) exactly once; refuses q >= 3.
std::vector<CliffordTableau> enumerate_group(int qubits);

// Exactly uniform over C_q/U(1): uniform symplectic matrix via hyperbolic-pair
// rejection sampling plus 2q independent sign bits.
CliffordTableau sample_uniform(int qubits, Rng& rng);

inline CliffordTableau sample_uniform(int qubits, uint64_t seed) {
  Rng rng(seed);
  return sample_uniform(qubits, rng);
}

// True iff C tau C^dagger = +/- tau. Vacuously true for tau = identity.
bool stabilizes(const CliffordTableau& c, PauliIndex tau);

// Fixture text format, one generator image per line: "X0 -> +ZI".
std::string to_text(const CliffordTableau& c);
CliffordTableau parse_tableau(const std::string& text);

}  // namespace twocopy
