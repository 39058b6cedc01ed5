#include "twocopy/clifford.hpp"

#include <bit>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace twocopy {

namespace {

uint32_t qubit_bit(int j, int qubits) { return 1u << (qubits - 1 - j); }

void require_qubit(int j, int qubits) {
  if (j < 0 || j >= qubits) {
    throw std::out_of_range("qubit index " + std::to_string(j) + " out of range for q=" +
                            std::to_string(qubits));
  }
}

// Packs a tableau into a 64-bit key; enough room for q <= 4.
uint64_t pack_key(const CliffordTableau& t) {
  const int w = 2 * t.qubits + 1;
  uint64_t key = 0;
  for (const SignedPauli& p : t.images) {
    uint64_t v = (static_cast<uint64_t>(p.pauli.x) << (t.qubits + 1)) |
                 (static_cast<uint64_t>(p.pauli.z) << 1) | (p.sign < 0 ? 1 : 0);
    key = (key << w) | v;
  }
  return key;
}

}  // namespace

uint64_t Rng::derive(uint64_t master, uint64_t stream) {
  uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

CliffordTableau identity_tableau(int qubits) {
  CliffordTableau t;
  t.qubits = qubits;
  t.images.resize(2 * qubits);
  for (int j = 0; j < qubits; ++j) {
    t.images[j] = SignedPauli{PauliOp{qubit_bit(j, qubits), 0, 0, qubits}, 1};
    t.images[qubits + j] = SignedPauli{PauliOp{0, qubit_bit(j, qubits), 0, qubits}, 1};
  }
  return t;
}

CliffordTableau from_generator(Gate gate, int a, int b, int qubits) {
  CliffordTableau t = identity_tableau(qubits);
  require_qubit(a, qubits);
  const uint32_t ba = qubit_bit(a, qubits);
  switch (gate) {
    case Gate::H:
      // X_a -> Z_a, Z_a -> X_a
      t.images[a] = SignedPauli{PauliOp{0, ba, 0, qubits}, 1};
      t.images[qubits + a] = SignedPauli{PauliOp{ba, 0, 0, qubits}, 1};
      break;
    case Gate::S:
      // X_a -> Y_a, Z_a -> Z_a
      t.images[a] = SignedPauli{PauliOp{ba, ba, 0, qubits}, 1};
      break;
    case Gate::CNOT: {
      require_qubit(b, qubits);
      if (a == b) throw std::invalid_argument("CNOT control equals target");
      const uint32_t bb = qubit_bit(b, qubits);
      // X_c -> X_c X_t, Z_t -> Z_c Z_t
      t.images[a] = SignedPauli{PauliOp{ba | bb, 0, 0, qubits}, 1};
      t.images[qubits + b] = SignedPauli{PauliOp{0, ba | bb, 0, qubits}, 1};
      break;
    }
  }
  return t;
}

CliffordTableau from_word(const GeneratorWord& word, int qubits) {
  CliffordTableau t = identity_tableau(qubits);
  for (const auto& item : word.items) {
    t = compose(from_generator(item.gate, item.a, item.b, qubits), t);
  }
  return t;
}

SignedPauli conjugate(const CliffordTableau& c, const SignedPauli& p) {
  if (c.qubits != p.pauli.qubits) {
    throw std::invalid_argument("conjugate: qubit count mismatch");
  }
  const int q = c.qubits;
  // C P(x,z) C+ = i^{x.z} * prod_j (C X_j C+)^{x_j} * prod_j (C Z_j C+)^{z_j}
  PauliOp acc{0, 0, 0, q};
  for (int j = 0; j < q; ++j) {
    if (p.pauli.x & qubit_bit(j, q)) {
      const SignedPauli& img = c.images[j];
      acc = pauli_product(acc, img.pauli);
      if (img.sign < 0) acc.phase = (acc.phase + 2) % 4;
    }
  }
  for (int j = 0; j < q; ++j) {
    if (p.pauli.z & qubit_bit(j, q)) {
      const SignedPauli& img = c.images[q + j];
      acc = pauli_product(acc, img.pauli);
      if (img.sign < 0) acc.phase = (acc.phase + 2) % 4;
    }
  }
  const int xz = std::popcount(p.pauli.x & p.pauli.z);
  const int total = (xz + acc.phase) % 4;
  if (total != 0 && total != 2) {
    throw std::logic_error("conjugate: non-Hermitian result");
  }
  acc.phase = 0;
  return SignedPauli{acc, (total == 0 ? 1 : -1) * p.sign};
}

CliffordTableau compose(const CliffordTableau& a, const CliffordTableau& b) {
  if (a.qubits != b.qubits) throw std::invalid_argument("compose: qubit count mismatch");
  CliffordTableau t;
  t.qubits = a.qubits;
  t.images.reserve(b.images.size());
  for (const SignedPauli& img : b.images) t.images.push_back(conjugate(a, img));
  return t;
}

CliffordTableau inverse(const CliffordTableau& a) {
  const int q = a.qubits;
  const int n = 2 * q;
  // Symplectic bit matrix M: column k = (x|z) bits of image of generator k.
  // Row i < q is the x bit of qubit i; row q+i the z bit.
  std::vector<uint32_t> colbits(n, 0);
  for (int k = 0; k < n; ++k) {
    const PauliOp& p = a.images[k].pauli;
    for (int i = 0; i < q; ++i) {
      if (p.x & qubit_bit(i, q)) colbits[k] |= 1u << i;
      if (p.z & qubit_bit(i, q)) colbits[k] |= 1u << (q + i);
    }
  }
  auto m_entry = [&](int row, int col) -> int { return (colbits[col] >> row) & 1; };
  auto swap_half = [&](int i) { return i < q ? i + q : i - q; };

  CliffordTableau inv;
  inv.qubits = q;
  inv.images.resize(n);
  for (int k = 0; k < n; ++k) {
    // M^{-1} = J M^T J for symplectic M.
    PauliOp p{0, 0, 0, q};
    for (int i = 0; i < n; ++i) {
      if (m_entry(swap_half(k), swap_half(i)) == 0) continue;
      if (i < q) {
        p.x |= qubit_bit(i, q);
      } else {
        p.z |= qubit_bit(i - q, q);
      }
    }
    SignedPauli candidate{p, 1};
    SignedPauli round_trip = conjugate(a, candidate);
    const PauliOp expected = k < q ? PauliOp{qubit_bit(k, q), 0, 0, q}
                                   : PauliOp{0, qubit_bit(k - q, q), 0, q};
    if (!round_trip.pauli.same_word(expected)) {
      throw std::logic_error("inverse: symplectic inversion failed");
    }
    candidate.sign = round_trip.sign;
    inv.images[k] = candidate;
  }
  return inv;
}

bool satisfies_symplectic_condition(const CliffordTableau& c) {
  const int q = c.qubits;
  const int n = 2 * q;
  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      const int expected = (k == j + q) ? 1 : 0;
      if (symplectic_inner(c.images[j].pauli, c.images[k].pauli) != expected) return false;
    }
  }
  return true;
}

uint64_t clifford_group_order(int qubits) {
  if (qubits < 1 || qubits > 4) {
    throw std::invalid_argument("clifford_group_order: supported for 1 <= q <= 4");
  }
  uint64_t order = uint64_t{1} << (qubits * qubits + 2 * qubits);
  uint64_t pow4 = 1;
  for (int j = 1; j <= qubits; ++j) {
    pow4 *= 4;
    order *= pow4 - 1;
  }
  return order;
}

std::vector<CliffordTableau> standard_generators(int qubits) {
  std::vector<CliffordTableau> gens;
  for (int j = 0; j < qubits; ++j) gens.push_back(from_generator(Gate::H, j, 0, qubits));
  for (int j = 0; j < qubits; ++j) gens.push_back(from_generator(Gate::S, j, 0, qubits));
  for (int c = 0; c < qubits; ++c) {
    for (int t = 0; t < qubits; ++t) {
      if (c != t) gens.push_back(from_generator(Gate::CNOT, c, t, qubits));
    }
  }
  return gens;
}

std::vector<CliffordTableau> enumerate_group(int qubits) {
  if (qubits < 1 || qubits > 2) {
    throw std::invalid_argument(
        "enumerate_group: only q <= 2 is enumerable at desk scale; use sample_uniform");
  }
  const std::vector<CliffordTableau> gens = standard_generators(qubits);

  std::vector<CliffordTableau> out;
  std::unordered_set<uint64_t> seen;
  out.push_back(identity_tableau(qubits));
  seen.insert(pack_key(out[0]));
  size_t head = 0;
  while (head < out.size()) {
    const CliffordTableau current = out[head++];
    for (const CliffordTableau& g : gens) {
      CliffordTableau next = compose(g, current);
      if (seen.insert(pack_key(next)).second) out.push_back(std::move(next));
    }
  }
  return out;
}

CliffordTableau sample_uniform(int qubits, Rng& rng) {
  const int q = qubits;
  if (q < 1 || q > 16) throw std::invalid_argument("sample_uniform: q out of range");
  const int n = 2 * q;
  const uint64_t mask = (n == 64) ? ~uint64_t{0} : ((uint64_t{1} << n) - 1);
  // Bit layout of a vector v: low q bits = x, high q bits = z (internal only).
  auto symp = [&](uint64_t u, uint64_t v) -> int {
    const uint64_t xu = u & ((uint64_t{1} << q) - 1), zu = u >> q;
    const uint64_t xv = v & ((uint64_t{1} << q) - 1), zv = v >> q;
    return static_cast<int>((std::popcount(xu & zv) ^ std::popcount(zu & xv)) & 1);
  };

  std::vector<uint64_t> va(q), vb(q);
  for (int k = 0; k < q; ++k) {
    auto project = [&](uint64_t v) {
      // Remove components along earlier hyperbolic pairs; lands uniformly in
      // the symplectic complement.
      for (int i = 0; i < k; ++i) {
        if (symp(v, vb[i])) v ^= va[i];
        if (symp(v, va[i])) v ^= vb[i];
      }
      return v;
    };
    uint64_t a;
    do {
      a = project(rng.bits() & mask);
    } while (a == 0);
    uint64_t b;
    do {
      b = project(rng.bits() & mask);
    } while (symp(a, b) == 0);
    va[k] = a;
    vb[k] = b;
  }

  CliffordTableau t;
  t.qubits = q;
  t.images.resize(n);
  for (int k = 0; k < q; ++k) {
    const uint32_t xa = static_cast<uint32_t>(va[k] & ((1u << q) - 1));
    const uint32_t za = static_cast<uint32_t>(va[k] >> q);
    const uint32_t xb = static_cast<uint32_t>(vb[k] & ((1u << q) - 1));
    const uint32_t zb = static_cast<uint32_t>(vb[k] >> q);
    t.images[k] = SignedPauli{PauliOp{xa, za, 0, q}, rng.bit() ? -1 : 1};
    t.images[q + k] = SignedPauli{PauliOp{xb, zb, 0, q}, rng.bit() ? -1 : 1};
  }
  return t;
}

bool stabilizes(const CliffordTableau& c, PauliIndex tau) {
  const PauliOp t = pauli_from_index(tau, c.qubits);
  return conjugate(c, SignedPauli{t, 1}).pauli.same_word(t);
}

std::string to_text(const CliffordTableau& c) {
  std::ostringstream os;
  for (int j = 0; j < c.qubits; ++j) {
    os << "X" << j << " -> " << to_string(c.images[j]) << "\n";
  }
  for (int j = 0; j < c.qubits; ++j) {
    os << "Z" << j << " -> " << to_string(c.images[c.qubits + j]) << "\n";
  }
  return os.str();
}

CliffordTableau parse_tableau(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<std::string, SignedPauli>> entries;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto arrow = line.find(" -> ");
    if (arrow == std::string::npos) throw std::invalid_argument("tableau line missing '->': " + line);
    entries.emplace_back(line.substr(0, arrow), parse_signed_pauli(line.substr(arrow + 4)));
  }
  if (entries.empty() || entries.size() % 2 != 0) {
    throw std::invalid_argument("tableau text must contain 2q image lines");
  }
  const int q = static_cast<int>(entries.size() / 2);
  CliffordTableau t;
  t.qubits = q;
  t.images.resize(2 * q);
  for (const auto& [label, image] : entries) {
    if (label.size() < 2 || (label[0] != 'X' && label[0] != 'Z')) {
      throw std::invalid_argument("bad generator label: " + label);
    }
    const int j = std::stoi(label.substr(1));
    if (j < 0 || j >= q) throw std::invalid_argument("generator qubit out of range: " + label);
    if (image.pauli.qubits != q) throw std::invalid_argument("image width mismatch: " + label);
    t.images[(label[0] == 'X' ? 0 : q) + j] = image;
  }
  return t;
}

}  // namespace twocopy
