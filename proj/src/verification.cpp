#include "twocopy/verification.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace twocopy {

namespace {

const SubspaceBlock* find_block(const Subspace& s, int block) {
  for (const auto& b : s.blocks) {
    if (b.block == block) return &b;
  }
  return nullptr;
}

// Exact test of P v = v using the integer-scaled projector.
bool projects_to_itself(const SubspaceBlock& b, const IVec& v) {
  const size_t n = v.size();
  if (b.basis.size() == n) return true;  // full block, projector is the identity
  for (size_t r = 0; r < n; ++r) {
    Int acc = 0;
    for (size_t c = 0; c < n; ++c) {
      const Int& p = b.proj_num[r * n + c];
      if (p != 0 && v[c] != 0) acc += p * v[c];
    }
    if (acc != b.proj_den * v[r]) return false;
  }
  return true;
}

// Exact test of P v = 0.
bool projects_to_zero(const SubspaceBlock& b, const IVec& v) {
  const size_t n = v.size();
  for (size_t r = 0; r < n; ++r) {
    Int acc = 0;
    for (size_t c = 0; c < n; ++c) {
      const Int& p = b.proj_num[r * n + c];
      if (p != 0 && v[c] != 0) acc += p * v[c];
    }
    if (acc != 0) return false;
  }
  return true;
}

CheckResult check_pauli_partition(int q) {
  CheckResult res{"pauli_partition", true, nullptr, nullptr};
  const int d2 = 1 << (2 * q);
  for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
    const auto n = neighbor_set(tau, PauliSet::anticommutant, q);
    const auto ch = neighbor_set(tau, PauliSet::closed_commutant, q);
    std::set<PauliIndex> all(n.begin(), n.end());
    all.insert(ch.begin(), ch.end());
    if (n.size() != static_cast<size_t>(d2 / 2) || ch.size() != static_cast<size_t>(d2 / 2) ||
        all.size() != static_cast<size_t>(d2)) {
      res.pass = false;
      res.witness = {{"tau", tau}, {"n_size", n.size()}, {"chat_size", ch.size()}};
      return res;
    }
  }
  res.values = {{"set_size", d2 / 2}};
  return res;
}

CheckResult check_lemma_set_sizes(int q, uint64_t seed) {
  CheckResult res{"lemma_set_sizes", true, nullptr, nullptr};
  const int d2 = 1 << (2 * q);
  const size_t quarter = static_cast<size_t>(d2 / 4);
  std::vector<std::pair<PauliIndex, PauliIndex>> probes;
  if (q <= 2) {
    for (PauliIndex a = 1; a < static_cast<PauliIndex>(d2); ++a)
      for (PauliIndex b = 1; b < static_cast<PauliIndex>(d2); ++b)
        if (a != b) probes.emplace_back(a, b);
  } else {
    Rng rng(Rng::derive(seed, 4));
    while (probes.size() < 500) {
      const PauliIndex a = static_cast<PauliIndex>(1 + rng.below(d2 - 1));
      const PauliIndex b = static_cast<PauliIndex>(1 + rng.below(d2 - 1));
      if (a != b) probes.emplace_back(a, b);
    }
  }
  const PauliSet kinds[2] = {PauliSet::anticommutant, PauliSet::closed_commutant};
  for (const auto& [a, b] : probes) {
    for (PauliSet k1 : kinds) {
      for (PauliSet k2 : kinds) {
        if (intersection_size(k1, a, k2, b, q) != quarter) {
          res.pass = false;
          res.witness = {{"tau", a}, {"tau_prime", b}};
          return res;
        }
      }
    }
  }
  // Degenerate identities at tau = identity.
  for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
    const bool ok =
        intersection_size(PauliSet::anticommutant, 0, PauliSet::closed_commutant, tau, q) == 0 &&
        intersection_size(PauliSet::anticommutant, 0, PauliSet::anticommutant, tau, q) == 0 &&
        intersection_size(PauliSet::closed_commutant, 0, PauliSet::closed_commutant, tau, q) ==
            static_cast<size_t>(d2 / 2) &&
        intersection_size(PauliSet::closed_commutant, 0, PauliSet::anticommutant, tau, q) ==
            static_cast<size_t>(d2 / 2);
    if (!ok) {
      res.pass = false;
      res.witness = {{"tau", tau}, {"case", "identity_degenerate"}};
      return res;
    }
  }
  res.values = {{"pairs_checked", probes.size()}, {"quarter", quarter}};
  return res;
}

CheckResult check_group_order(int q) {
  CheckResult res{"group_order", true, nullptr, nullptr};
  const auto group = enumerate_group(q);
  const uint64_t expected = clifford_group_order(q);
  if (group.size() != expected) {
    res.pass = false;
    res.witness = {{"enumerated", group.size()}, {"formula", expected}};
  }
  res.values = {{"order", expected}};
  return res;
}

CheckResult check_transitivity(int q, uint64_t seed) {
  CheckResult res{"transitivity", true, nullptr, nullptr};
  const int d2 = 1 << (2 * q);
  const PauliIndex tau = 1;
  std::set<PauliIndex> orbit;
  long long used = 0;
  if (q <= 2) {
    for (const CliffordTableau& c : enumerate_group(q)) {
      orbit.insert(pauli_index(
          conjugate(c, SignedPauli{pauli_from_index(tau, q), 1}).pauli));
      ++used;
    }
  } else {
    Rng rng(Rng::derive(seed, 3));
    for (int i = 0; i < 10000; ++i) {
      const CliffordTableau c = sample_uniform(q, rng);
      orbit.insert(pauli_index(
          conjugate(c, SignedPauli{pauli_from_index(tau, q), 1}).pauli));
      ++used;
    }
  }
  if (orbit.size() != static_cast<size_t>(d2 - 1) || orbit.count(0) != 0) {
    res.pass = false;
    res.witness = {{"orbit_size", orbit.size()}, {"expected", d2 - 1}};
  }
  res.values = {{"orbit_size", orbit.size()}, {"elements_used", used}};
  return res;
}

CheckResult check_sector_structure(const Decomposition& dec) {
  CheckResult res{"sector_structure", true, nullptr, nullptr};
  const PairTable& t = dec.table();
  const int d2 = t.d2;
  // Coordinate bookkeeping: the pair classes partition the d^4 coordinates.
  const long long n_pairs = static_cast<long long>(t.pairs.size());
  const long long coords = 1 + 3LL * (d2 - 1) + 2 * n_pairs;
  if (coords != static_cast<long long>(d2) * d2) {
    res.pass = false;
    res.witness = {{"coordinate_total", coords}};
    return res;
  }
  // s- and a-vectors over the same pair are orthogonal in pair coordinates.
  for (const PairInfo& p : t.pairs) {
    const long long dot = 1 * 1 + 1 * (-1);
    if (dot != 0) {
      res.pass = false;
      res.witness = {{"pair_lo", p.lo}, {"pair_hi", p.hi}};
      return res;
    }
  }
  // Within each sector and block: distinct subspaces have exactly orthogonal
  // bases, and the block dimensions add up to the block size.
  for (const Subspace& a : dec.subspaces()) {
    for (const Subspace& b : dec.subspaces()) {
      if (&a >= &b || a.sector != b.sector) continue;
      for (const SubspaceBlock& ba : a.blocks) {
        const SubspaceBlock* bb = find_block(b, ba.block);
        if (bb == nullptr) continue;
        for (size_t i = 0; i < ba.basis.size(); ++i) {
          for (size_t j = 0; j < bb->basis.size(); ++j) {
            if (ivec_dot(ba.basis[i], bb->basis[j]) != 0) {
              res.pass = false;
              res.witness = {{"subspace_a", a.label}, {"subspace_b", b.label},
                             {"block", ba.block},    {"vec_a", i},
                             {"vec_b", j}};
              return res;
            }
          }
        }
      }
    }
  }
  res.values = {{"pairs", n_pairs}};
  return res;
}

CheckResult check_subspace_dimensions(const Decomposition& dec) {
  CheckResult res{"subspace_dimensions", true, nullptr, nullptr};
  int total = 0, nonzero = 0;
  for (const Subspace& s : dec.subspaces()) {
    if (s.dim != s.expected_dim) {
      res.pass = false;
      res.witness = {{"subspace", s.label}, {"dim", s.dim}, {"expected", s.expected_dim}};
      return res;
    }
    total += s.dim;
    if (s.dim > 0) ++nonzero;
  }
  const int d4 = dec.pair_dim();
  const int expected_count = dec.qubits() == 1 ? 7 : dec.qubits() == 2 ? 13 : 14;
  if (total != d4 || nonzero != expected_count) {
    res.pass = false;
    res.witness = {{"total", total}, {"nonzero", nonzero}};
    return res;
  }
  res.values = {{"total", total}, {"nonzero", nonzero}};
  return res;
}

CheckResult check_operator_identities(const Decomposition& dec) {
  CheckResult res{"operator_identities", true, nullptr, nullptr};
  const int q = dec.qubits();
  const int d = 1 << q;
  const int d2 = d * d;
  const RatMatrix t = operator_T(q);

  auto fail = [&](ojson witness) {
    res.pass = false;
    res.witness = std::move(witness);
    return res;
  };

  if (t.trace() != 0) return fail({{"identity", "tr(T)=0"}});
  for (size_t r = 0; r < t.rows(); ++r) {
    Rat sum = 0;
    for (size_t c = 0; c < t.cols(); ++c) sum += t.at(r, c);
    if (sum != Rat(d2, 2)) return fail({{"identity", "T row sum"}, {"row", r}});
  }
  // Spectrum {d^2/2, -d/2, +d/2} with multiplicities (1, |d1|, |d2|).
  std::vector<RatMatrix> tproj;
  try {
    tproj = spectral_projectors(t, {Rat(d2, 2), Rat(-d, 2), Rat(d, 2)});
  } catch (const std::exception& e) {
    return fail({{"identity", "T spectrum"}, {"error", e.what()}});
  }
  const int dim1 = d * (d + 1) / 2 - 1;
  const int dim2 = d * (d - 1) / 2 - 1;
  if (tproj[0].trace() != 1 || tproj[1].trace() != dim1 || tproj[2].trace() != dim2) {
    return fail({{"identity", "T eigenvalue multiplicities"},
                 {"traces",
                  {rat_to_string(tproj[0].trace()), rat_to_string(tproj[1].trace()),
                   rat_to_string(tproj[2].trace())}}});
  }
  // T^2 = (d^2/4) on the complement of the uniform vector inside the diagonal
  // sector: exact on every d1/d2 basis vector.
  const RatMatrix t2 = t * t;
  for (const char* lbl : {"d1", "d2"}) {
    for (const SubspaceBlock& b : dec.subspace(lbl).blocks) {
      for (const IVec& v : b.basis) {
        RatVector rv(v.size());
        for (size_t i = 0; i < v.size(); ++i) rv[i] = Rat(v[i]);
        const RatVector image = t2.apply(rv);
        for (size_t i = 0; i < v.size(); ++i) {
          if (image[i] != Rat(d2, 4) * rv[i]) {
            return fail({{"identity", "T^2 = d^2/4 off V_0"}, {"subspace", lbl}});
          }
        }
      }
    }
  }

  // Per-block operator A: A^2 = d^2, tr A = d^2/2, eigenspace dimensions.
  const int f_plus = d * (d + 2) / 8;
  const int f_minus = d * (d - 2) / 8;
  for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
    const RatMatrix a = operator_A(q, tau);
    if (a.trace() != Rat(d2, 2)) return fail({{"identity", "tr(A)=d^2/2"}, {"tau", tau}});
    if (!(a * a == RatMatrix::identity(a.rows()).scaled(Rat(d2)))) {
      return fail({{"identity", "A^2=d^2"}, {"tau", tau}});
    }
    std::vector<RatMatrix> aproj;
    try {
      aproj = spectral_projectors(a, {Rat(d), Rat(-d)});
    } catch (const std::exception& e) {
      return fail({{"identity", "A spectrum"}, {"tau", tau}, {"error", e.what()}});
    }
    if (aproj[0].trace() != f_plus || aproj[1].trace() != f_minus) {
      return fail({{"identity", "A multiplicities"}, {"tau", tau}});
    }
  }

  // Theta: exact scaled isometry with factor d^2, trivial kernel, image
  // orthogonal to the anticommuting adjoint family, and the projector
  // cross-check P_perp = 1 - P_{adj} per block.
  if (q >= 2) {
    const PairTable& table = dec.table();
    const Subspace& perp = dec.subspace("{adj}^perp");
    const Subspace& adj = dec.subspace("{adj}");
    for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
      const auto& list = table.comm_block(tau);
      std::vector<const IVec*> images;
      for (int pid : list) images.push_back(&dec.theta_image(pid));
      const IVec vadj = dec.adjoint_vector(tau, true);
      for (size_t i = 0; i < images.size(); ++i) {
        if (ivec_dot(*images[i], vadj) != 0) {
          return fail({{"identity", "Im(Theta) perp {adj}"}, {"tau", tau}, {"input", i}});
        }
        for (size_t j = i; j < images.size(); ++j) {
          // inputs b_p have Gram 2*delta in raw coordinates
          const Int expected = (i == j) ? Int(2) * d2 : Int(0);
          if (ivec_dot(*images[i], *images[j]) != expected) {
            return fail({{"identity", "Theta Gram scaling d^2"},
                         {"tau", tau},
                         {"inputs", {i, j}}});
          }
        }
      }
      // trivial kernel: the images are independent (they are orthogonal and
      // nonzero by the Gram identity already checked); dimension bookkeeping:
      const SubspaceBlock* pb = find_block(perp, static_cast<int>(tau));
      const SubspaceBlock* ab = find_block(adj, static_cast<int>(tau));
      if (pb == nullptr || ab == nullptr ||
          pb->basis.size() != images.size()) {
        return fail({{"identity", "Theta rank"}, {"tau", tau}});
      }
      const size_t n = table.anti_block_size();
      RatMatrix sum = pb->projector + ab->projector;
      if (!(sum == RatMatrix::identity(n))) {
        return fail({{"identity", "P_perp + P_adj = 1"}, {"tau", tau}});
      }
    }
  }

  res.values = {{"t_multiplicities", {1, dim1, dim2}},
                {"a_multiplicities", {f_plus, f_minus}},
                {"theta_gram_factor", d2}};
  return res;
}

CheckResult check_orthogonal_complete(const Decomposition& dec) {
  CheckResult res{"orthogonal_complete", true, nullptr, nullptr};
  const PairTable& t = dec.table();
  const int d2 = t.d2;

  struct BlockKey {
    Sector sector;
    int block;
    size_t dim;
  };
  std::vector<BlockKey> keys;
  keys.push_back({Sector::id, 0, 1});
  keys.push_back({Sector::right, 0, static_cast<size_t>(d2 - 1)});
  keys.push_back({Sector::left, 0, static_cast<size_t>(d2 - 1)});
  keys.push_back({Sector::diag, 0, static_cast<size_t>(d2 - 1)});
  for (int tau = 1; tau < d2; ++tau) {
    if (t.comm_block_size() > 0) {
      keys.push_back({Sector::sym_comm, tau, static_cast<size_t>(t.comm_block_size())});
      keys.push_back({Sector::asym_comm, tau, static_cast<size_t>(t.comm_block_size())});
    }
    keys.push_back({Sector::sym_anti, tau, static_cast<size_t>(t.anti_block_size())});
    keys.push_back({Sector::asym_anti, tau, static_cast<size_t>(t.anti_block_size())});
  }

  int nonzero_projectors = 0;
  for (const Subspace& s : dec.subspaces()) {
    if (!s.empty()) ++nonzero_projectors;
  }

  for (const BlockKey& key : keys) {
    std::vector<std::pair<const Subspace*, const SubspaceBlock*>> present;
    for (const Subspace& s : dec.subspaces()) {
      if (s.sector != key.sector) continue;
      const SubspaceBlock* b = find_block(s, key.block);
      if (b != nullptr) present.emplace_back(&s, b);
    }
    RatMatrix sum(key.dim, key.dim);
    for (size_t i = 0; i < present.size(); ++i) {
      const RatMatrix& pi = present[i].second->projector;
      if (pi.rows() != key.dim) {
        res.pass = false;
        res.witness = {{"sector", sector_name(key.sector)}, {"block", key.block},
                       {"subspace", present[i].first->label}, {"reason", "shape"}};
        return res;
      }
      if (!(pi * pi == pi) || !pi.is_symmetric() ||
          pi.trace() != Rat(static_cast<long long>(present[i].second->basis.size()))) {
        res.pass = false;
        res.witness = {{"sector", sector_name(key.sector)},
                       {"block", key.block},
                       {"subspace", present[i].first->label},
                       {"reason", "not a projector of the right rank"}};
        return res;
      }
      sum = sum + pi;
      for (size_t j = i + 1; j < present.size(); ++j) {
        if (!(pi * present[j].second->projector).is_zero()) {
          res.pass = false;
          res.witness = {{"sector", sector_name(key.sector)},
                         {"block", key.block},
                         {"subspace_a", present[i].first->label},
                         {"subspace_b", present[j].first->label},
                         {"reason", "P_i P_j != 0"}};
          return res;
        }
      }
    }
    if (!(sum == RatMatrix::identity(key.dim))) {
      res.pass = false;
      res.witness = {{"sector", sector_name(key.sector)}, {"block", key.block},
                     {"reason", "sum of projectors != identity"}};
      return res;
    }
  }
  res.values = {{"nonzero_projectors", nonzero_projectors}};
  return res;
}

CheckResult check_invariance(const Decomposition& dec,
                             const std::vector<SignedPermutation>& perms) {
  CheckResult res{"invariance", true, nullptr, nullptr};
  const PairTable& table = dec.table();
  long long vectors_checked = 0;
  for (const Subspace& s : dec.subspaces()) {
    if (s.empty()) continue;
    for (size_t k = 0; k < perms.size(); ++k) {
      for (const SubspaceBlock& b : s.blocks) {
        for (size_t vi = 0; vi < b.basis.size(); ++vi) {
          const LocalImage img =
              apply_sector_action(table, perms[k], s.sector, b.block, b.basis[vi]);
          const SubspaceBlock* target = find_block(s, img.block);
          if (target == nullptr || !projects_to_itself(*target, img.vec)) {
            res.pass = false;
            res.witness = {{"subspace", s.label}, {"clifford_index", k},
                           {"block", b.block},    {"vector", vi}};
            return res;
          }
          ++vectors_checked;
        }
      }
    }
  }
  res.values = {{"cliffords", perms.size()}, {"vector_images_checked", vectors_checked}};
  return res;
}

CheckResult check_intertwiners(const Decomposition& dec,
                               const std::vector<SignedPermutation>& perms) {
  CheckResult res{"intertwiners", true, nullptr, nullptr};
  const PairTable& table = dec.table();
  const int q = dec.qubits();
  const int d2 = table.d2;
  long long checked = 0;
  for (size_t k = 0; k < perms.size(); ++k) {
    const SignedPermutation& perm = perms[k];
    // theta into the anticommuting adjoint family (defined for every q).
    for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
      const IVec v = dec.adjoint_vector(tau, true);
      const LocalImage rhs = apply_sector_action(table, perm, Sector::asym_anti,
                                                 static_cast<int>(tau), v);
      const uint32_t tprime = perm.target[tau];
      IVec lhs = dec.adjoint_vector(tprime, true);
      if (perm.sign[tau] < 0) {
        for (Int& x : lhs) x = -x;
      }
      if (rhs.block != static_cast<int>(tprime) || rhs.vec != lhs) {
        res.pass = false;
        res.witness = {{"map", "theta_left_adjoint"}, {"clifford_index", k}, {"tau", tau}};
        return res;
      }
      ++checked;
    }
    if (q >= 2) {
      // theta into the commuting adjoint family.
      for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
        const IVec v = dec.adjoint_vector(tau, false);
        const LocalImage rhs = apply_sector_action(table, perm, Sector::sym_comm,
                                                   static_cast<int>(tau), v);
        const uint32_t tprime = perm.target[tau];
        IVec lhs = dec.adjoint_vector(tprime, false);
        if (perm.sign[tau] < 0) {
          for (Int& x : lhs) x = -x;
        }
        if (rhs.block != static_cast<int>(tprime) || rhs.vec != lhs) {
          res.pass = false;
          res.witness = {{"map", "theta_right_adjoint"}, {"clifford_index", k}, {"tau", tau}};
          return res;
        }
        ++checked;
      }
      // Theta commutes with the action: Theta(phi(a_p)) = phi(Theta(a_p)).
      for (PauliIndex tau = 1; tau < static_cast<PauliIndex>(d2); ++tau) {
        const auto& list = table.comm_block(tau);
        for (size_t pos = 0; pos < list.size(); ++pos) {
          IVec unit(list.size(), Int(0));
          unit[pos] = 1;
          const LocalImage moved = apply_sector_action(table, perm, Sector::asym_comm,
                                                       static_cast<int>(tau), unit);
          const IVec lhs = dec.apply_theta(static_cast<PauliIndex>(moved.block), moved.vec);
          const IVec theta_in = dec.apply_theta(tau, unit);
          const LocalImage rhs = apply_sector_action(table, perm, Sector::asym_anti,
                                                     static_cast<int>(tau), theta_in);
          if (rhs.block != moved.block || rhs.vec != lhs) {
            res.pass = false;
            res.witness = {{"map", "Theta"}, {"clifford_index", k},
                           {"tau", tau},     {"pair_pos", pos}};
            return res;
          }
          ++checked;
        }
      }
    }
  }
  res.values = {{"cliffords", perms.size()}, {"commutation_checks", checked}};
  return res;
}

CheckResult check_homomorphism(const std::vector<CliffordTableau>& cliffs,
                               const std::vector<SignedPermutation>& perms) {
  CheckResult res{"homomorphism", true, nullptr, nullptr};
  const size_t n_pairs = std::min<size_t>(cliffs.size() - 1, 20);
  for (size_t k = 0; k < n_pairs; ++k) {
    const SignedPermutation fresh = one_copy(compose(cliffs[k], cliffs[k + 1]));
    const SignedPermutation composed = perms[k].after(perms[k + 1]);
    if (!(fresh == composed)) {
      res.pass = false;
      res.witness = {{"pair", {k, k + 1}}};
      return res;
    }
    // spot-check the two-copy form on a few pair indices
    const TwoCopyAction two_fresh(fresh), two_a(perms[k]), two_b(perms[k + 1]);
    for (uint32_t probe : {uint32_t{1}, uint32_t{7}, uint32_t{13}}) {
      const uint32_t idx = probe % static_cast<uint32_t>(two_fresh.pair_dim());
      const auto eb = two_b.apply(idx);
      const auto ea = two_a.apply(eb.target);
      const auto ef = two_fresh.apply(idx);
      if (ef.target != ea.target || ef.sign != ea.sign * eb.sign) {
        res.pass = false;
        res.witness = {{"pair", {k, k + 1}}, {"pair_index", idx}};
        return res;
      }
    }
  }
  res.values = {{"pairs_checked", n_pairs}};
  return res;
}

CheckResult check_characters(const SuiteConfig& cfg, ojson* character_out) {
  CheckResult res{"characters", true, nullptr, nullptr};
  const int q = cfg.qubits;
  if (q <= 2) {
    const Rat two = char_inner_exact(q, CharacterKind::two_copy);
    const Rat diag = char_inner_exact(q, CharacterKind::diagonal);
    const Rat expected_two = q == 1 ? 15 : 29;
    const Rat expected_diag = q == 1 ? 2 : 3;
    (*character_out) = {{"method", "exact"},
                        {"two_copy_inner", rat_to_string(two)},
                        {"diagonal_inner", rat_to_string(diag)},
                        {"group_order", clifford_group_order(q)}};
    if (two != expected_two || diag != expected_diag) {
      res.pass = false;
      res.witness = {{"two_copy_inner", rat_to_string(two)},
                     {"diagonal_inner", rat_to_string(diag)}};
    }
    res.values = *character_out;
    return res;
  }
  const MonteCarloEstimate est = char_inner_monte_carlo(
      q, cfg.n_mc_samples, Rng::derive(cfg.seed, 2), cfg.threads);
  // |estimate - 30| <= 5 stderr and stderr <= 1/2, compared exactly on squares.
  const Rat dev = est.estimate - 30;
  const bool in_band = dev * dev <= Rat(25) * est.variance_of_mean;
  const bool tight = est.variance_of_mean <= Rat(1, 4);
  (*character_out) = {{"method", "monte_carlo"},
                      {"target", 30},
                      {"estimate", rat_to_string(est.estimate)},
                      {"variance_of_mean", rat_to_string(est.variance_of_mean)},
                      {"stderr_approx", est.stderr_approx()},
                      {"samples", est.samples}};
  if (!in_band || !tight) {
    res.pass = false;
    res.witness = *character_out;
  }
  res.values = *character_out;
  return res;
}

CheckResult check_multiplicity(const Decomposition& dec) {
  CheckResult res{"multiplicity", true, nullptr, nullptr};
  const int q = dec.qubits();
  const long long expected = q == 1 ? 15 : q == 2 ? 29 : 30;
  const long long sum_sq = dec.multiplicity_sum_squares();
  bool ok = sum_sq == expected;
  if (ok && q <= 2) {
    ok = Rat(expected) == char_inner_exact(q, CharacterKind::two_copy);
  }
  if (!ok) {
    res.pass = false;
    res.witness = {{"sum_of_squares", sum_sq}, {"expected", expected}};
  }
  ojson classes = ojson::array();
  for (const auto& cls : dec.equivalence_classes()) classes.push_back(cls);
  res.values = {{"sum_of_squares", sum_sq}, {"classes", classes}};
  return res;
}

}  // namespace

std::vector<std::string> suite_check_names(int qubits) {
  std::vector<std::string> names = {"pauli_partition", "lemma_set_sizes"};
  if (qubits <= 2) names.push_back("group_order");
  names.insert(names.end(),
               {"transitivity", "sector_structure", "subspace_dimensions",
                "operator_identities", "orthogonal_complete", "invariance",
                "intertwiners", "homomorphism", "characters", "multiplicity"});
  return names;
}

SuiteReport run_suite(const SuiteConfig& cfg) {
  if (cfg.qubits < 1 || cfg.qubits > 3) {
    throw std::invalid_argument("run_suite: qubits must be in {1,2,3}");
  }
  if (cfg.n_random_cliffords < 1 || cfg.n_mc_samples < 2) {
    throw std::invalid_argument("run_suite: counts out of range");
  }
  const int q = cfg.qubits;

  Decomposition dec(q);
  if (cfg.corrupt_basis) dec.corrupt_basis_entry("d1", 0, 0, 0);

  // One seeded pool of uniform Cliffords, reused by every randomized check.
  const int n_int = cfg.n_intertwiner_cliffords >= 0 ? cfg.n_intertwiner_cliffords
                    : (q == 3 ? 25 : 100);
  const int n_cliffords = std::max(cfg.n_random_cliffords, std::max(n_int, 2));
  std::vector<CliffordTableau> cliffs;
  {
    Rng rng(Rng::derive(cfg.seed, 1));
    cliffs.reserve(n_cliffords);
    for (int i = 0; i < n_cliffords; ++i) cliffs.push_back(sample_uniform(q, rng));
  }
  std::vector<SignedPermutation> perms;
  perms.reserve(cliffs.size());
  for (const CliffordTableau& c : cliffs) perms.push_back(one_copy(c));
  if (cfg.corrupt_tableau_sign) {
    // Simulated sign bit-rot in the derived representation of element 0.
    perms[0].sign[1] = static_cast<int8_t>(-perms[0].sign[1]);
  }
  const std::vector<SignedPermutation> inv_perms(
      perms.begin(), perms.begin() + std::min<size_t>(cfg.n_random_cliffords, perms.size()));
  const std::vector<SignedPermutation> int_perms(
      perms.begin(), perms.begin() + std::min<size_t>(n_int, perms.size()));

  SuiteReport report;
  report.qubits = q;
  report.seed = cfg.seed;

  auto selected = [&](const std::string& name) {
    return cfg.selected.empty() ||
           std::find(cfg.selected.begin(), cfg.selected.end(), name) != cfg.selected.end();
  };

  ojson character;
  for (const std::string& name : suite_check_names(q)) {
    if (!selected(name)) continue;
    CheckResult r;
    if (name == "pauli_partition") r = check_pauli_partition(q);
    else if (name == "lemma_set_sizes") r = check_lemma_set_sizes(q, cfg.seed);
    else if (name == "group_order") r = check_group_order(q);
    else if (name == "transitivity") r = check_transitivity(q, cfg.seed);
    else if (name == "sector_structure") r = check_sector_structure(dec);
    else if (name == "subspace_dimensions") r = check_subspace_dimensions(dec);
    else if (name == "operator_identities") r = check_operator_identities(dec);
    else if (name == "orthogonal_complete") r = check_orthogonal_complete(dec);
    else if (name == "invariance") r = check_invariance(dec, inv_perms);
    else if (name == "intertwiners") r = check_intertwiners(dec, int_perms);
    else if (name == "homomorphism") r = check_homomorphism(cliffs, perms);
    else if (name == "characters") r = check_characters(cfg, &character);
    else if (name == "multiplicity") r = check_multiplicity(dec);
    else continue;
    report.all_pass = report.all_pass && r.pass;
    report.checks.push_back(std::move(r));
  }
  report.character = character.is_null() ? ojson(ojson::value_t::object) : character;

  ojson by_subspace = ojson(ojson::value_t::object);
  for (const Subspace& s : dec.subspaces()) by_subspace[s.label] = s.dim;
  report.dimensions = {{"total", dec.pair_dim()},
                       {"nonzero_subspaces",
                        dec.qubits() == 1 ? 7 : dec.qubits() == 2 ? 13 : 14},
                       {"by_subspace", by_subspace}};
  return report;
}

ojson SuiteReport::to_json() const {
  ojson j;
  j["schema"] = 1;
  j["q"] = qubits;
  j["seed"] = seed;
  ojson arr = ojson::array();
  for (const CheckResult& c : checks) {
    ojson e;
    e["name"] = c.name;
    e["status"] = c.pass ? "pass" : "fail";
    if (!c.witness.is_null()) e["witness"] = c.witness;
    if (!c.values.is_null()) e["values"] = c.values;
    arr.push_back(std::move(e));
  }
  j["checks"] = std::move(arr);
  j["character"] = character;
  j["dimensions"] = dimensions;
  j["all_pass"] = all_pass;
  return j;
}

std::string SuiteReport::to_text() const {
  std::ostringstream os;
  os << "verification suite  q=" << qubits << "  seed=" << seed << "\n";
  os << "----------------------------------------------------\n";
  for (const CheckResult& c : checks) {
    os << (c.pass ? "  pass  " : "  FAIL  ") << c.name << "\n";
    if (!c.pass && !c.witness.is_null()) os << "        witness: " << c.witness.dump() << "\n";
  }
  os << "----------------------------------------------------\n";
  if (!character.empty()) os << "character: " << character.dump() << "\n";
  os << "dimensions: " << dimensions.dump() << "\n";
  os << (all_pass ? "ALL CHECKS PASSED" : "CHECKS FAILED") << "\n";
  return os.str();
}

std::string SuiteReport::to_csv() const {
  std::ostringstream os;
  os << "check,status\n";
  for (const CheckResult& c : checks) {
    os << c.name << "," << (c.pass ? "pass" : "fail") << "\n";
  }
  return os.str();
}

}  // namespace twocopy
