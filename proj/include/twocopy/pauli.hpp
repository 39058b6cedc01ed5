#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace twocopy {

// Index into the lexicographic (x_bits, z_bits) ordering of the Hermitian
// Pauli basis on q qubits: index = (x << q) | z, so index 0 is the identity.
using PauliIndex = uint32_t;

// A Pauli group element stored as i^phase * P(x, z), where
// P(x, z) = i^{x.z} X^x Z^z is the Hermitian canonical word. Qubit 0 lives in
// bit (q-1) so that the packed integers sort like the printed Pauli string.
// Elements of the normalized Hermitian basis carry phase 0 (+) or 2 (-);
// general products may carry any phase mod 4.
struct PauliOp {
  uint32_t x = 0;
  uint32_t z = 0;
  uint8_t phase = 0;  // exponent of i, mod 4
  int qubits = 1;

  bool is_identity_word() const { return x == 0 && z == 0; }
  bool same_word(const PauliOp& o) const {
    return qubits == o.qubits && x == o.x && z == o.z;
  }
  bool operator==(const PauliOp& o) const {
    return same_word(o) && phase == o.phase;
  }
};

// A Hermitian basis element together with a sign, the shape every conjugation
// result takes: C sigma C^dagger = sign * pauli.
struct SignedPauli {
  PauliOp pauli;  // canonical Hermitian form, phase == 0
  int sign = 1;   // +1 or -1

  bool operator==(const SignedPauli& o) const {
    return sign == o.sign && pauli.same_word(o.pauli);
  }
};

PauliOp pauli_from_index(PauliIndex index, int qubits);
PauliIndex pauli_index(const PauliOp& p);

// Exact matrix product ab, including the phase. Bit parts are XORs.
PauliOp pauli_product(const PauliOp& a, const PauliOp& b);

// 0 iff [a,b] = 0, 1 iff {a,b} = 0; x_a.z_b + z_a.x_b mod 2.
int symplectic_inner(const PauliOp& a, const PauliOp& b);

// For a, b in the Hermitian basis: the normalized product sigma.tau when the
// inputs commute, and i sigma.tau when they anticommute. Either way the
// result is a signed Hermitian basis element.
SignedPauli normalized_product(const PauliOp& a, const PauliOp& b);

// The parameterized subsets of the Pauli basis attached to tau:
//   anticommutant        N_tau  = { sigma != id : {sigma,tau} = 0 }
//   commutant            C_tau  = { sigma != id, sigma != tau : [sigma,tau] = 0 }
//   closed commutant     C^_tau = { sigma (id allowed) : [sigma,tau] = 0 }
enum class PauliSet { anticommutant, commutant, closed_commutant };

std::vector<PauliIndex> neighbor_set(PauliIndex tau, PauliSet kind, int qubits);

size_t intersection_size(PauliSet kind1, PauliIndex tau1, PauliSet kind2,
                         PauliIndex tau2, int qubits);

// "XZ", "YI", ... qubit 0 first. SignedPauli adds a +/- prefix.
std::string pauli_word(const PauliOp& p);
std::string to_string(const SignedPauli& p);
SignedPauli parse_signed_pauli(const std::string& text);

}  // namespace twocopy
