#include "twocopy/pauli.hpp"

#include <bit>
#include <stdexcept>

namespace twocopy {

namespace {

void require_same_q(const PauliOp& a, const PauliOp& b) {
  if (a.qubits != b.qubits) {
    throw std::invalid_argument("pauli qubit count mismatch: " +
                                std::to_string(a.qubits) + " vs " +
                                std::to_string(b.qubits));
  }
}

int pop(uint32_t v) { return std::popcount(v); }

}  // namespace

PauliOp pauli_from_index(PauliIndex index, int qubits) {
  const uint32_t mask = (1u << qubits) - 1;
  if (index >= (1u << (2 * qubits))) {
    throw std::out_of_range("pauli index out of range");
  }
  return PauliOp{static_cast<uint32_t>(index >> qubits), index & mask, 0,
                 qubits};
}

PauliIndex pauli_index(const PauliOp& p) {
  return (p.x << p.qubits) | p.z;
}

PauliOp pauli_product(const PauliOp& a, const PauliOp& b) {
  require_same_q(a, b);
  PauliOp r;
  r.qubits = a.qubits;
  r.x = a.x ^ b.x;
  r.z = a.z ^ b.z;
  // i^pa P(xa,za) * i^pb P(xb,zb) = i^p P(xa^xb, za^zb) with
  // p = pa + pb + xa.za + xb.zb - x3.z3 + 2 za.xb  (mod 4).
  int p = a.phase + b.phase + pop(a.x & a.z) + pop(b.x & b.z) -
          pop(r.x & r.z) + 2 * pop(a.z & b.x);
  r.phase = static_cast<uint8_t>(((p % 4) + 4) % 4);
  return r;
}

int symplectic_inner(const PauliOp& a, const PauliOp& b) {
  require_same_q(a, b);
  return (pop(a.x & b.z) ^ pop(a.z & b.x)) & 1;
}

SignedPauli normalized_product(const PauliOp& a, const PauliOp& b) {
  const int anti = symplectic_inner(a, b);
  PauliOp prod = pauli_product(a, b);
  // Commuting: sigma.tau is already Hermitian. Anticommuting: multiply by i
  // to land back in the Hermitian basis.
  const int ph = (prod.phase + anti) % 4;
  if (ph != 0 && ph != 2) {
    throw std::logic_error("normalized_product: inputs not Hermitian basis elements");
  }
  prod.phase = 0;
  return SignedPauli{prod, ph == 0 ? 1 : -1};
}

std::vector<PauliIndex> neighbor_set(PauliIndex tau, PauliSet kind, int qubits) {
  const PauliOp t = pauli_from_index(tau, qubits);
  const uint32_t d2 = 1u << (2 * qubits);
  std::vector<PauliIndex> out;
  for (PauliIndex i = 0; i < d2; ++i) {
    const PauliOp s = pauli_from_index(i, qubits);
    const int anti = symplectic_inner(s, t);
    switch (kind) {
      case PauliSet::anticommutant:
        if (i != 0 && anti == 1) out.push_back(i);
        break;
      case PauliSet::commutant:
        if (i != 0 && i != tau && anti == 0) out.push_back(i);
        break;
      case PauliSet::closed_commutant:
        if (anti == 0) out.push_back(i);
        break;
    }
  }
  return out;
}

size_t intersection_size(PauliSet kind1, PauliIndex tau1, PauliSet kind2,
                         PauliIndex tau2, int qubits) {
  const auto s1 = neighbor_set(tau1, kind1, qubits);
  const auto s2 = neighbor_set(tau2, kind2, qubits);
  size_t count = 0;
  size_t j = 0;
  for (PauliIndex v : s1) {
    while (j < s2.size() && s2[j] < v) ++j;
    if (j < s2.size() && s2[j] == v) ++count;
  }
  return count;
}

std::string pauli_word(const PauliOp& p) {
  static const char letters[4] = {'I', 'Z', 'X', 'Y'};
  std::string s;
  for (int j = 0; j < p.qubits; ++j) {
    const int b = p.qubits - 1 - j;
    const int xb = (p.x >> b) & 1;
    const int zb = (p.z >> b) & 1;
    s += letters[2 * xb + zb];
  }
  return s;
}

std::string to_string(const SignedPauli& p) {
  return (p.sign > 0 ? "+" : "-") + pauli_word(p.pauli);
}

SignedPauli parse_signed_pauli(const std::string& text) {
  if (text.size() < 2) throw std::invalid_argument("bad pauli string: " + text);
  size_t pos = 0;
  int sign = 1;
  if (text[0] == '+' || text[0] == '-') {
    sign = text[0] == '+' ? 1 : -1;
    pos = 1;
  }
  PauliOp p;
  p.qubits = static_cast<int>(text.size() - pos);
  p.x = p.z = 0;
  for (int j = 0; j < p.qubits; ++j) {
    const int b = p.qubits - 1 - j;
    switch (text[pos + j]) {
      case 'I': break;
      case 'Z': p.z |= 1u << b; break;
      case 'X': p.x |= 1u << b; break;
      case 'Y': p.x |= 1u << b; p.z |= 1u << b; break;
      default:
        throw std::invalid_argument("bad pauli letter in: " + text);
    }
  }
  return SignedPauli{p, sign};
}

}  // namespace twocopy
