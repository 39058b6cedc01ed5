#include "twocopy/decomposition.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace twocopy {

using ojson = nlohmann::ordered_json;

const char* sector_name(Sector s) {
  switch (s) {
    case Sector::id: return "id";
    case Sector::right: return "r";
    case Sector::left: return "l";
    case Sector::diag: return "d";
    case Sector::sym_comm: return "[S]";
    case Sector::sym_anti: return "{S}";
    case Sector::asym_comm: return "[A]";
    case Sector::asym_anti: return "{A}";
  }
  return "?";
}

PairTable::PairTable(int qubits) : q(qubits), d(1 << qubits), d2(1 << (2 * qubits)) {
  comm_.resize(d2);
  anti_.resize(d2);
  id_.assign(static_cast<size_t>(d2) * d2, -1);
  for (PauliIndex i = 1; i < static_cast<PauliIndex>(d2); ++i) {
    const PauliOp pi = pauli_from_index(i, q);
    for (PauliIndex j = i + 1; j < static_cast<PauliIndex>(d2); ++j) {
      const PauliOp pj = pauli_from_index(j, q);
      PairInfo info;
      info.lo = i;
      info.hi = j;
      info.commuting = symplectic_inner(pi, pj) == 0;
      // Block membership: the product (with an i when anticommuting) is
      // proportional to a unique non-identity tau; equivalently
      // lo . tau = sgn * hi resp. i lo . tau = sgn * hi.
      const SignedPauli prod = normalized_product(pi, pj);
      info.block = pauli_index(prod.pauli);
      const PauliOp tau = prod.pauli;
      const SignedPauli conv = normalized_product(pi, tau);
      if (pauli_index(conv.pauli) != j) throw std::logic_error("pair table: block inconsistency");
      info.sgn = conv.sign;
      auto& list = info.commuting ? comm_[info.block] : anti_[info.block];
      info.pos = static_cast<int>(list.size());
      id_[static_cast<size_t>(i) * d2 + j] = static_cast<int>(pairs.size());
      list.push_back(static_cast<int>(pairs.size()));
      pairs.push_back(info);
    }
  }
  for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
    if (static_cast<int>(comm_[tau].size()) != comm_block_size() ||
        static_cast<int>(anti_[tau].size()) != anti_block_size()) {
      throw std::logic_error("pair table: unexpected block size");
    }
  }
}

int PairTable::pair_id(PauliIndex i, PauliIndex j) const {
  if (i == j || i == 0 || j == 0) return -1;
  if (i > j) std::swap(i, j);
  return id_[static_cast<size_t>(i) * d2 + j];
}

LocalImage apply_sector_action(const PairTable& table, const SignedPermutation& perm,
                               Sector sector, int block, const IVec& vec) {
  const int d2 = table.d2;
  LocalImage out;
  switch (sector) {
    case Sector::id:
      out.block = 0;
      out.vec = vec;
      return out;
    case Sector::right:
    case Sector::left:
    case Sector::diag: {
      out.block = 0;
      out.vec.assign(d2 - 1, Int(0));
      for (size_t c = 0; c < vec.size(); ++c) {
        if (vec[c] == 0) continue;
        const uint32_t src = static_cast<uint32_t>(c + 1);
        const uint32_t dst = perm.target[src];
        const int s = sector == Sector::diag ? 1 : perm.sign[src];
        out.vec[dst - 1] += s * vec[c];
      }
      return out;
    }
    default: {
      const bool sym = sector == Sector::sym_comm || sector == Sector::sym_anti;
      const bool comm = sector == Sector::sym_comm || sector == Sector::asym_comm;
      const auto& list = comm ? table.comm_block(block) : table.anti_block(block);
      out.block = -1;
      for (size_t c = 0; c < vec.size(); ++c) {
        if (vec[c] == 0) continue;
        const PairInfo& p = table.pairs[list[c]];
        const uint32_t ti = perm.target[p.lo], tj = perm.target[p.hi];
        int s = perm.sign[p.lo] * perm.sign[p.hi];
        uint32_t lo = ti, hi = tj;
        if (lo > hi) {
          std::swap(lo, hi);
          if (!sym) s = -s;
        }
        const int pid = table.pair_id(lo, hi);
        const PairInfo& tp = table.pairs[pid];
        if (out.block == -1) {
          out.block = static_cast<int>(tp.block);
          const auto& tlist = comm ? table.comm_block(out.block) : table.anti_block(out.block);
          out.vec.assign(tlist.size(), Int(0));
        } else if (out.block != static_cast<int>(tp.block)) {
          throw std::logic_error("sector action: image left its block");
        }
        out.vec[tp.pos] += s * vec[c];
      }
      if (out.block == -1) {  // zero vector: block unchanged by convention
        out.block = block;
        out.vec.assign(vec.size(), Int(0));
      }
      return out;
    }
  }
}

RatMatrix operator_T(int qubits) {
  const int d2 = 1 << (2 * qubits);
  RatMatrix t(d2 - 1, d2 - 1);
  for (int r = 1; r < d2; ++r) {
    const PauliOp pr = pauli_from_index(r, qubits);
    for (int c = 1; c < d2; ++c) {
      t.at(r - 1, c - 1) = symplectic_inner(pr, pauli_from_index(c, qubits));
    }
  }
  return t;
}

RatMatrix operator_A(int qubits, PauliIndex tau) {
  if (tau == 0) throw std::invalid_argument("operator_A: block undefined for the identity");
  const PairTable table(qubits);
  const auto& list = table.anti_block(tau);
  const PauliOp t = pauli_from_index(tau, qubits);
  const int n = static_cast<int>(list.size());
  RatMatrix m(n, n);
  for (int col = 0; col < n; ++col) {
    const PauliOp sigma = pauli_from_index(table.pairs[list[col]].lo, qubits);
    for (PauliIndex sh = 1; sh < static_cast<PauliIndex>(table.d2); ++sh) {
      const PauliOp psh = pauli_from_index(sh, qubits);
      if (symplectic_inner(psh, t) != 1) continue;
      const int outer = symplectic_inner(psh, sigma) == 0 ? 1 : -1;
      const SignedPauli nu = normalized_product(psh, t);  // i sh . tau
      const int pid = table.pair_id(std::min(sh, pauli_index(nu.pauli)),
                                    std::max(sh, pauli_index(nu.pauli)));
      const PairInfo& tp = table.pairs[pid];
      // S_{sh, i sh.tau} = +b_row when sh is the low member, -b_row otherwise
      const int inner = (sh == tp.lo) ? 1 : -1;
      m.at(tp.pos, col) += outer * inner;
    }
  }
  return m;
}

namespace {

// Block operator of a commuting block in the canonical basis
// b_p = S_{lo(p), lo(p).tau}: the theta-conjugate of the (q-1)-qubit diagonal
// operator. Entry (r, c) = symplectic inner of any members of the two pairs.
RatMatrix comm_block_operator(const PairTable& table, PauliIndex tau) {
  const auto& list = table.comm_block(tau);
  const int n = static_cast<int>(list.size());
  RatMatrix m(n, n);
  for (int r = 0; r < n; ++r) {
    const PauliOp pr = pauli_from_index(table.pairs[list[r]].lo, table.q);
    for (int c = 0; c < n; ++c) {
      m.at(r, c) = symplectic_inner(pr, pauli_from_index(table.pairs[list[c]].lo, table.q));
    }
  }
  return m;
}

RatMatrix shifted(const RatMatrix& m, const Rat& shift) {
  RatMatrix out = m;
  for (size_t i = 0; i < m.rows(); ++i) out.at(i, i) += shift;
  return out;
}

// kernel coefficients are over the b-basis; raw coordinates differ by the
// per-pair product sign.
std::vector<IVec> to_raw(const PairTable& table, const std::vector<int>& list,
                         std::vector<IVec> kernel_vecs) {
  for (IVec& v : kernel_vecs) {
    for (size_t c = 0; c < v.size(); ++c) {
      if (table.pairs[list[c]].sgn < 0) v[c] = -v[c];
    }
  }
  return kernel_vecs;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

const std::array<const char*, 14>& Decomposition::labels() {
  static const std::array<const char*, 14> kLabels = {
      "id", "r", "l", "d0", "d1", "d2", "[adj]", "[1]", "[2]",
      "{adj}", "{1}", "{2}", "[A]", "{adj}^perp"};
  return kLabels;
}

Decomposition::Decomposition(int qubits) : q_(qubits), table_(qubits) {
  if (qubits < 1 || qubits > 3) {
    throw std::invalid_argument("Decomposition: supported for q in {1,2,3}");
  }
  build();
}

void Decomposition::finalize_subspace(Subspace& s) {
  s.dim = 0;
  for (auto it = s.blocks.begin(); it != s.blocks.end();) {
    if (it->basis.empty()) {
      it = s.blocks.erase(it);
    } else {
      s.dim += static_cast<int>(it->basis.size());
      ++it;
    }
  }
  for (SubspaceBlock& b : s.blocks) {
    b.projector = projector_from_int_basis(b.basis);
    const size_t n = b.projector.rows();
    b.proj_den = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const Int den = denominator(b.projector.at(i, j));
        b.proj_den = b.proj_den / gcd(b.proj_den, den) * den;
      }
    b.proj_num.resize(n * n);
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        const Rat& v = b.projector.at(i, j);
        b.proj_num[i * n + j] = numerator(v) * (b.proj_den / denominator(v));
      }
  }
}

void Decomposition::build() {
  const int d = table_.d, d2 = table_.d2;
  const int nd = d2 - 1;

  std::map<std::string, Subspace> built;
  auto start = [&](const char* label, Sector sector, int expected, int min_q) {
    Subspace s;
    s.label = label;
    s.sector = sector;
    s.expected_dim = q_ >= min_q ? expected : 0;
    s.min_q = min_q;
    return s;
  };

  // Per-block dimensions of the pair-sector constituents.
  const int f_plus = d * (d + 2) / 8;   // (d/4)(d/2+1)
  const int f_minus = d * (d - 2) / 8;  // (d/4)(d/2-1)

  {  // trivial pair
    Subspace s = start("id", Sector::id, 1, 1);
    s.blocks.push_back(SubspaceBlock{0, {IVec{Int(1)}}, {}, {}, 1});
    built["id"] = std::move(s);
  }
  for (const char* lbl : {"r", "l"}) {
    Subspace s = start(lbl, lbl[0] == 'r' ? Sector::right : Sector::left, nd, 1);
    SubspaceBlock blk;
    blk.block = 0;
    for (int c = 0; c < nd; ++c) {
      IVec v(nd, Int(0));
      v[c] = 1;
      blk.basis.push_back(std::move(v));
    }
    s.blocks.push_back(std::move(blk));
    built[lbl] = std::move(s);
  }
  {
    Subspace s = start("d0", Sector::diag, 1, 1);
    s.blocks.push_back(SubspaceBlock{0, {IVec(nd, Int(1))}, {}, {}, 1});
    built["d0"] = std::move(s);
  }
  {
    const RatMatrix t = operator_T(q_);
    Subspace s1 = start("d1", Sector::diag, d * (d + 1) / 2 - 1, 1);
    s1.blocks.push_back(SubspaceBlock{0, kernel(shifted(t, Rat(d, 2))), {}, {}, 1});
    built["d1"] = std::move(s1);
    Subspace s2 = start("d2", Sector::diag, d * (d - 1) / 2 - 1, 2);
    s2.blocks.push_back(SubspaceBlock{0, kernel(shifted(t, Rat(-d, 2))), {}, {}, 1});
    built["d2"] = std::move(s2);
  }

  // Commuting pair sectors (empty at q = 1).
  Subspace adj_c = start("[adj]", Sector::sym_comm, q_ >= 2 ? nd : 0, 2);
  Subspace c1 = start("[1]", Sector::sym_comm, nd * (f_plus - 1), 2);
  Subspace c2 = start("[2]", Sector::sym_comm, nd * (f_minus - 1), 3);
  Subspace asym = start("[A]", Sector::asym_comm, q_ >= 2 ? nd * (d2 / 4 - 1) : 0, 2);
  Subspace perp = start("{adj}^perp", Sector::asym_anti, q_ >= 2 ? nd * (d2 / 4 - 1) : 0, 2);
  theta_images_.assign(table_.pairs.size(), IVec{});
  if (table_.comm_block_size() > 0) {
    for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
      const auto& list = table_.comm_block(tau);
      const RatMatrix tb = comm_block_operator(table_, tau);

      SubspaceBlock badj;
      badj.block = static_cast<int>(tau);
      badj.basis.push_back(adjoint_vector(tau, false));
      adj_c.blocks.push_back(std::move(badj));

      SubspaceBlock b1;
      b1.block = static_cast<int>(tau);
      b1.basis = to_raw(table_, list, kernel(shifted(tb, Rat(d, 4))));
      c1.blocks.push_back(std::move(b1));

      SubspaceBlock b2;
      b2.block = static_cast<int>(tau);
      b2.basis = to_raw(table_, list, kernel(shifted(tb, Rat(-d, 4))));
      c2.blocks.push_back(std::move(b2));

      SubspaceBlock ba;
      ba.block = static_cast<int>(tau);
      for (size_t c = 0; c < list.size(); ++c) {
        IVec v(list.size(), Int(0));
        v[c] = 1;
        ba.basis.push_back(std::move(v));
      }
      asym.blocks.push_back(std::move(ba));

      // Theta images: from the [A] block basis into the {A} block of tau.
      const PauliOp pt = pauli_from_index(tau, q_);
      SubspaceBlock bp;
      bp.block = static_cast<int>(tau);
      for (int pid : list) {
        const PauliOp sigma = pauli_from_index(table_.pairs[pid].lo, q_);
        IVec img(table_.anti_block_size(), Int(0));
        for (PauliIndex sh = 1; sh < static_cast<PauliIndex>(d2); ++sh) {
          const PauliOp psh = pauli_from_index(sh, q_);
          if (symplectic_inner(psh, pt) != 1) continue;
          const int outer = symplectic_inner(psh, sigma) == 0 ? 1 : -1;
          const SignedPauli nu = normalized_product(psh, pt);
          const PauliIndex nui = pauli_index(nu.pauli);
          const int orient = sh < nui ? 1 : -1;
          const PairInfo& tp = table_.pairs[table_.pair_id(std::min(sh, nui), std::max(sh, nui))];
          img[tp.pos] += outer * nu.sign * orient;
        }
        theta_images_[pid] = img;
        ivec_normalize(img);
        // keep the literal orientation: normalize flips to a positive leading
        // entry, which is fine for a basis
        bp.basis.push_back(std::move(img));
      }
      perp.blocks.push_back(std::move(bp));
    }
  }
  built["[adj]"] = std::move(adj_c);
  built["[1]"] = std::move(c1);
  built["[2]"] = std::move(c2);
  built["[A]"] = std::move(asym);
  built["{adj}^perp"] = std::move(perp);

  // Anticommuting pair sectors.
  Subspace adj_a = start("{adj}", Sector::asym_anti, nd, 1);
  Subspace a1 = start("{1}", Sector::sym_anti, nd * f_plus, 1);
  Subspace a2 = start("{2}", Sector::sym_anti, nd * f_minus, 2);
  for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
    const auto& list = table_.anti_block(tau);
    const RatMatrix ab = operator_A(q_, tau);

    SubspaceBlock badj;
    badj.block = static_cast<int>(tau);
    badj.basis.push_back(adjoint_vector(tau, true));
    adj_a.blocks.push_back(std::move(badj));

    SubspaceBlock b1;
    b1.block = static_cast<int>(tau);
    b1.basis = to_raw(table_, list, kernel(shifted(ab, Rat(-d))));
    a1.blocks.push_back(std::move(b1));

    SubspaceBlock b2;
    b2.block = static_cast<int>(tau);
    b2.basis = to_raw(table_, list, kernel(shifted(ab, Rat(d))));
    a2.blocks.push_back(std::move(b2));
  }
  built["{adj}"] = std::move(adj_a);
  built["{1}"] = std::move(a1);
  built["{2}"] = std::move(a2);

  subspaces_.clear();
  for (const char* lbl : labels()) {
    Subspace s = std::move(built.at(lbl));
    finalize_subspace(s);
    if (s.dim != s.expected_dim) {
      throw std::logic_error("decomposition: subspace " + s.label + " has dimension " +
                             std::to_string(s.dim) + ", expected " +
                             std::to_string(s.expected_dim));
    }
    subspaces_.push_back(std::move(s));
  }
}

const Subspace& Decomposition::subspace(std::string_view label) const {
  for (const Subspace& s : subspaces_) {
    if (s.label == label) return s;
  }
  throw std::invalid_argument("unknown subspace label: " + std::string(label));
}

IVec Decomposition::adjoint_vector(PauliIndex tau, bool anti) const {
  if (tau == 0 || tau >= static_cast<PauliIndex>(table_.d2)) {
    throw std::invalid_argument("adjoint_vector: tau must be a non-identity Pauli index");
  }
  const auto& list = anti ? table_.anti_block(tau) : table_.comm_block(tau);
  IVec v(list.size());
  for (size_t c = 0; c < list.size(); ++c) v[c] = table_.pairs[list[c]].sgn;
  return v;
}

const IVec& Decomposition::theta_image(int pair_id) const {
  const IVec& v = theta_images_.at(pair_id);
  if (v.empty()) throw std::invalid_argument("theta_image: not a commuting pair");
  return v;
}

IVec Decomposition::apply_theta(PauliIndex tau, const IVec& raw) const {
  const auto& list = table_.comm_block(tau);
  if (raw.size() != list.size()) throw std::invalid_argument("apply_theta: size mismatch");
  IVec out(table_.anti_block_size(), Int(0));
  for (size_t c = 0; c < raw.size(); ++c) {
    if (raw[c] == 0) continue;
    const PairInfo& p = table_.pairs[list[c]];
    const IVec& img = theta_images_[list[c]];
    const Int coeff = p.sgn < 0 ? Int(-raw[c]) : raw[c];
    for (size_t k = 0; k < out.size(); ++k) out[k] += coeff * img[k];
  }
  return out;
}

std::vector<std::vector<std::string>> Decomposition::equivalence_classes() const {
  std::vector<std::vector<std::string>> classes;
  classes.push_back({"id", "d0"});
  if (q_ == 1) {
    classes.push_back({"r", "l", "{adj}"});
  } else {
    classes.push_back({"r", "l", "[adj]", "{adj}"});
    classes.push_back({"[A]", "{adj}^perp"});
  }
  for (const char* lbl : {"d1", "d2", "[1]", "[2]", "{1}", "{2}"}) {
    if (!subspace(lbl).empty()) classes.push_back({lbl});
  }
  return classes;
}

long long Decomposition::multiplicity_sum_squares() const {
  long long total = 0;
  for (const auto& cls : equivalence_classes()) {
    const long long n = static_cast<long long>(cls.size());
    total += n * n;
  }
  return total;
}

void Decomposition::corrupt_basis_entry(std::string_view label, size_t block_pos,
                                        size_t vec, size_t coord) {
  for (Subspace& s : subspaces_) {
    if (s.label != label) continue;
    SubspaceBlock& b = s.blocks.at(block_pos);
    b.basis.at(vec).at(coord) += 1;
    Subspace rebuilt = s;
    finalize_subspace(rebuilt);  // recompute projectors from the corrupted basis
    s = std::move(rebuilt);
    return;
  }
  throw std::invalid_argument("corrupt_basis_entry: unknown label");
}

DecompositionReport Decomposition::report() const {
  DecompositionReport rep;
  rep.q = q_;
  rep.total_dim = 0;
  rep.nonzero_count = 0;
  rep.multiplicity_sum_squares = multiplicity_sum_squares();
  for (const Subspace& s : subspaces_) {
    SubspaceSummary e;
    e.label = s.label;
    e.sector = sector_name(s.sector);
    e.dim = s.dim;
    e.expected_dim = s.expected_dim;
    e.q_validity = "q>=" + std::to_string(s.min_q);
    std::string blob;
    for (const SubspaceBlock& b : s.blocks) {
      blob += "b" + std::to_string(b.block) + ":";
      for (size_t i = 0; i < b.projector.rows(); ++i)
        for (size_t j = 0; j < b.projector.cols(); ++j)
          blob += rat_to_string(b.projector.at(i, j)) + ";";
    }
    std::ostringstream os;
    os << std::hex << fnv1a(blob);
    e.projector_checksum = os.str();
    rep.total_dim += s.dim;
    if (s.dim > 0) ++rep.nonzero_count;
    rep.entries.push_back(std::move(e));
  }
  rep.classes = equivalence_classes();
  return rep;
}

DecompositionReport full_decomposition(int qubits) {
  return Decomposition(qubits).report();
}

ojson report_to_json(const DecompositionReport& rep) {
  ojson j;
  j["schema"] = 1;
  j["q"] = rep.q;
  j["total_dim"] = rep.total_dim;
  j["nonzero_subspaces"] = rep.nonzero_count;
  j["multiplicity_sum_squares"] = rep.multiplicity_sum_squares;
  ojson arr = ojson::array();
  for (const SubspaceSummary& e : rep.entries) {
    arr.push_back({{"label", e.label},
                   {"sector", e.sector},
                   {"dim", e.dim},
                   {"q_validity", e.q_validity},
                   {"projector_checksum", e.projector_checksum}});
  }
  j["subspaces"] = std::move(arr);
  ojson classes = ojson::array();
  for (const auto& cls : rep.classes) classes.push_back(cls);
  j["equivalence_classes"] = std::move(classes);
  return j;
}

std::string report_to_text(const DecompositionReport& rep) {
  std::ostringstream os;
  os << "two-copy decomposition  q=" << rep.q << "  (pair space dimension "
     << rep.total_dim << ")\n";
  os << "label        sector  dim   validity  projector\n";
  for (const SubspaceSummary& e : rep.entries) {
    os << "  ";
    os.width(11);
    os << std::left << e.label;
    os.width(7);
    os << std::left << e.sector;
    os.width(6);
    os << std::left << e.dim;
    os.width(10);
    os << std::left << e.q_validity;
    os << e.projector_checksum << "\n";
  }
  os << "nonzero subspaces: " << rep.nonzero_count << "\n";
  os << "equivalence classes (sum of squared multiplicities = "
     << rep.multiplicity_sum_squares << "):\n";
  for (const auto& cls : rep.classes) {
    os << "  {";
    for (size_t i = 0; i < cls.size(); ++i) os << (i ? ", " : " ") << cls[i];
    os << " }\n";
  }
  return os.str();
}

std::string report_to_csv(const DecompositionReport& rep) {
  std::ostringstream os;
  os << "label,sector,dim,q_validity,projector_checksum\n";
  for (const SubspaceSummary& e : rep.entries) {
    os << e.label << "," << e.sector << "," << e.dim << "," << e.q_validity << ","
       << e.projector_checksum << "\n";
  }
  return os.str();
}

std::vector<IVec> sector_basis(Sector sector, int qubits) {
  const PairTable table(qubits);
  const int d2 = table.d2;
  const size_t full = static_cast<size_t>(d2) * d2;
  std::vector<IVec> out;
  auto fullvec = [&]() { return IVec(full, Int(0)); };
  switch (sector) {
    case Sector::id: {
      IVec v = fullvec();
      v[0] = 1;
      out.push_back(std::move(v));
      break;
    }
    case Sector::right:
      for (int t = 1; t < d2; ++t) {
        IVec v = fullvec();
        v[t] = 1;
        out.push_back(std::move(v));
      }
      break;
    case Sector::left:
      for (int t = 1; t < d2; ++t) {
        IVec v = fullvec();
        v[static_cast<size_t>(t) * d2] = 1;
        out.push_back(std::move(v));
      }
      break;
    case Sector::diag:
      for (int t = 1; t < d2; ++t) {
        IVec v = fullvec();
        v[static_cast<size_t>(t) * d2 + t] = 1;
        out.push_back(std::move(v));
      }
      break;
    default: {
      const bool sym = sector == Sector::sym_comm || sector == Sector::sym_anti;
      const bool comm = sector == Sector::sym_comm || sector == Sector::asym_comm;
      for (int tau = 1; tau < d2; ++tau) {
        const auto& list = comm ? table.comm_block(tau) : table.anti_block(tau);
        for (int pid : list) {
          const PairInfo& p = table.pairs[pid];
          IVec v = fullvec();
          v[static_cast<size_t>(p.lo) * d2 + p.hi] = 1;
          v[static_cast<size_t>(p.hi) * d2 + p.lo] = sym ? 1 : -1;
          out.push_back(std::move(v));
        }
      }
      break;
    }
  }
  return out;
}

RatMatrix basis_in_pair_coordinates(const Decomposition& dec, const Subspace& s) {
  const PairTable& table = dec.table();
  const int d2 = table.d2;
  const size_t full = static_cast<size_t>(d2) * d2;
  std::vector<RatVector> cols;
  for (const SubspaceBlock& blk : s.blocks) {
    const bool sym = s.sector == Sector::sym_comm || s.sector == Sector::sym_anti;
    const bool comm = s.sector == Sector::sym_comm || s.sector == Sector::asym_comm;
    for (const IVec& v : blk.basis) {
      RatVector col(full, Rat(0));
      switch (s.sector) {
        case Sector::id:
          col[0] = Rat(v[0]);
          break;
        case Sector::right:
          for (size_t c = 0; c < v.size(); ++c) col[c + 1] = Rat(v[c]);
          break;
        case Sector::left:
          for (size_t c = 0; c < v.size(); ++c) col[(c + 1) * d2] = Rat(v[c]);
          break;
        case Sector::diag:
          for (size_t c = 0; c < v.size(); ++c) col[(c + 1) * d2 + (c + 1)] = Rat(v[c]);
          break;
        default: {
          const auto& list = comm ? table.comm_block(blk.block) : table.anti_block(blk.block);
          for (size_t c = 0; c < v.size(); ++c) {
            if (v[c] == 0) continue;
            const PairInfo& p = table.pairs[list[c]];
            col[static_cast<size_t>(p.lo) * d2 + p.hi] += Rat(v[c]);
            col[static_cast<size_t>(p.hi) * d2 + p.lo] += sym ? Rat(v[c]) : Rat(-v[c]);
          }
          break;
        }
      }
      cols.push_back(std::move(col));
    }
  }
  if (cols.empty()) return RatMatrix(full, 0);
  return RatMatrix::from_columns(cols);
}

std::string export_basis_text(const Decomposition& dec, const Subspace& s) {
  const RatMatrix m = basis_in_pair_coordinates(dec, s);
  std::ostringstream os;
  os << "subspace " << s.label << " q " << dec.qubits() << " ambient " << m.rows()
     << " dim " << m.cols() << "\n";
  for (size_t c = 0; c < m.cols(); ++c) {
    os << "vec";
    for (size_t r = 0; r < m.rows(); ++r) {
      if (m.at(r, c) == 0) continue;
      os << " " << r << ":" << numerator(m.at(r, c)).str() << "/"
         << denominator(m.at(r, c)).str();
    }
    os << "\n";
  }
  return os.str();
}

std::string export_basis_json(const Decomposition& dec, const Subspace& s) {
  const RatMatrix m = basis_in_pair_coordinates(dec, s);
  ojson j;
  j["schema"] = 1;
  j["kind"] = "basis";
  j["subspace"] = s.label;
  j["q"] = dec.qubits();
  j["ambient"] = m.rows();
  j["dim"] = m.cols();
  ojson vecs = ojson::array();
  for (size_t c = 0; c < m.cols(); ++c) {
    ojson vec = ojson::array();
    for (size_t r = 0; r < m.rows(); ++r) {
      if (m.at(r, c) == 0) continue;
      vec.push_back(ojson::array({r, numerator(m.at(r, c)).str() + "/" +
                                         denominator(m.at(r, c)).str()}));
    }
    vecs.push_back(std::move(vec));
  }
  j["vectors"] = std::move(vecs);
  return j.dump(2) + "\n";
}

ParsedBasis parse_basis_text(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  ParsedBasis out;
  size_t ambient = 0, dim = 0;
  if (!(is >> word) || word != "subspace") throw std::invalid_argument("basis text: bad header");
  is >> out.label;
  is >> word;  // "q"
  is >> out.q;
  is >> word;  // "ambient"
  is >> ambient;
  is >> word;  // "dim"
  is >> dim;
  std::string line;
  std::getline(is, line);
  std::vector<RatVector> cols;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    ls >> word;
    if (word != "vec") throw std::invalid_argument("basis text: bad vector line");
    RatVector col(ambient, Rat(0));
    std::string entry;
    while (ls >> entry) {
      const auto colon = entry.find(':');
      if (colon == std::string::npos) throw std::invalid_argument("basis text: bad entry " + entry);
      const size_t idx = std::stoull(entry.substr(0, colon));
      col.at(idx) = parse_rational(entry.substr(colon + 1));
    }
    cols.push_back(std::move(col));
  }
  if (cols.size() != dim) throw std::invalid_argument("basis text: dim mismatch");
  out.columns = cols.empty() ? RatMatrix(ambient, 0) : RatMatrix::from_columns(cols);
  return out;
}

ParsedBasis parse_basis_json(const std::string& text) {
  const ojson j = ojson::parse(text);
  ParsedBasis out;
  out.label = j.at("subspace").get<std::string>();
  out.q = j.at("q").get<int>();
  const size_t ambient = j.at("ambient").get<size_t>();
  std::vector<RatVector> cols;
  for (const auto& vec : j.at("vectors")) {
    RatVector col(ambient, Rat(0));
    for (const auto& entry : vec) {
      col.at(entry.at(0).get<size_t>()) = parse_rational(entry.at(1).get<std::string>());
    }
    cols.push_back(std::move(col));
  }
  if (cols.size() != j.at("dim").get<size_t>()) {
    throw std::invalid_argument("basis json: dim mismatch");
  }
  out.columns = cols.empty() ? RatMatrix(ambient, 0) : RatMatrix::from_columns(cols);
  return out;
}

}  // namespace twocopy
