#include "twocopy/representation.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace twocopy {

SignedPermutation SignedPermutation::identity(size_t n) {
  SignedPermutation p;
  p.target.resize(n);
  p.sign.assign(n, 1);
  for (size_t i = 0; i < n; ++i) p.target[i] = static_cast<uint32_t>(i);
  return p;
}

SignedPermutation SignedPermutation::after(const SignedPermutation& other) const {
  if (size() != other.size()) throw std::invalid_argument("permutation size mismatch");
  SignedPermutation p;
  p.target.resize(size());
  p.sign.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    const uint32_t mid = other.target[i];
    p.target[i] = target[mid];
    p.sign[i] = static_cast<int8_t>(other.sign[i] * sign[mid]);
  }
  return p;
}

SignedPermutation SignedPermutation::inverse() const {
  SignedPermutation p;
  p.target.resize(size());
  p.sign.resize(size());
  for (size_t i = 0; i < size(); ++i) {
    p.target[target[i]] = static_cast<uint32_t>(i);
    p.sign[target[i]] = sign[i];
  }
  return p;
}

bool SignedPermutation::is_identity() const {
  for (size_t i = 0; i < size(); ++i) {
    if (target[i] != i || sign[i] != 1) return false;
  }
  return true;
}

SignedPermutation one_copy(const CliffordTableau& c) {
  const uint32_t d2 = 1u << (2 * c.qubits);
  SignedPermutation p;
  p.target.resize(d2);
  p.sign.resize(d2);
  for (uint32_t i = 0; i < d2; ++i) {
    const SignedPauli img = conjugate(c, SignedPauli{pauli_from_index(i, c.qubits), 1});
    p.target[i] = pauli_index(img.pauli);
    p.sign[i] = static_cast<int8_t>(img.sign);
  }
  return p;
}

TwoCopyAction::Entry TwoCopyAction::apply(uint32_t pair_index) const {
  const uint32_t d2 = static_cast<uint32_t>(base_.size());
  const uint32_t i = pair_index / d2, j = pair_index % d2;
  return Entry{base_.target[i] * d2 + base_.target[j], base_.sign[i] * base_.sign[j]};
}

long long TwoCopyAction::trace() const {
  const long long chi = character_one(base_);
  return chi * chi;
}

SignedPermutation TwoCopyAction::materialize() const {
  const uint32_t d2 = static_cast<uint32_t>(base_.size());
  SignedPermutation p;
  p.target.resize(size_t{d2} * d2);
  p.sign.resize(size_t{d2} * d2);
  for (uint32_t k = 0; k < d2 * d2; ++k) {
    const Entry e = apply(k);
    p.target[k] = e.target;
    p.sign[k] = static_cast<int8_t>(e.sign);
  }
  return p;
}

long long character_one(const SignedPermutation& p) {
  long long chi = 0;
  for (size_t i = 0; i < p.size(); ++i) {
    if (p.target[i] == i) chi += p.sign[i];
  }
  return chi;
}

long long character_two(const SignedPermutation& p) {
  const long long chi = character_one(p);
  return chi * chi;
}

long long diagonal_character(const SignedPermutation& p) {
  long long fixed = 0;
  for (size_t i = 1; i < p.size(); ++i) {
    if (p.target[i] == i) ++fixed;
  }
  return fixed;
}

Rat char_inner_exact(int qubits, CharacterKind kind) {
  if (qubits < 1 || qubits > 2) {
    throw std::invalid_argument(
        "char_inner_exact: exact enumeration supported for q <= 2 only; "
        "use char_inner_monte_carlo");
  }
  const std::vector<CliffordTableau> group = enumerate_group(qubits);
  Int total = 0;
  for (const CliffordTableau& c : group) {
    const SignedPermutation p = one_copy(c);
    const long long chi =
        kind == CharacterKind::two_copy ? character_two(p) : diagonal_character(p);
    total += Int(chi) * chi;
  }
  return Rat(total, Int(group.size()));
}

void CharacterAccumulator::add(long long value) {
  ++samples;
  sum += value;
  sum_sq += Int(value) * value;
}

void CharacterAccumulator::merge(const CharacterAccumulator& o) {
  samples += o.samples;
  sum += o.sum;
  sum_sq += o.sum_sq;
}

Rat CharacterAccumulator::mean() const {
  if (samples == 0) throw std::logic_error("empty accumulator");
  return Rat(sum, Int(samples));
}

Rat CharacterAccumulator::variance_of_mean() const {
  if (samples < 2) throw std::logic_error("variance needs >= 2 samples");
  const Int n(samples);
  // (n*sum_sq - sum^2) / (n^2 (n-1))
  return Rat(n * sum_sq - sum * sum, n * n * (n - 1));
}

double MonteCarloEstimate::stderr_approx() const {
  return std::sqrt(static_cast<double>(variance_of_mean));
}

MonteCarloEstimate char_inner_monte_carlo(int qubits, long long samples,
                                          uint64_t seed, int threads) {
  if (samples < 2) throw std::invalid_argument("char_inner_monte_carlo: need >= 2 samples");
  if (threads <= 0) {
    threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads <= 0) threads = 1;
  }

  // Fixed logical stream layout: results do not depend on the thread count.
  constexpr long long kStreams = 64;
  const long long chunk = (samples + kStreams - 1) / kStreams;
  std::vector<CharacterAccumulator> per_stream(kStreams);

  auto run_stream = [&](long long s) {
    const long long lo = s * chunk;
    const long long hi = std::min(samples, (s + 1) * chunk);
    if (lo >= hi) return;
    Rng rng(Rng::derive(seed, static_cast<uint64_t>(s)));
    CharacterAccumulator acc;
    for (long long i = lo; i < hi; ++i) {
      const CliffordTableau c = sample_uniform(qubits, rng);
      const long long chi = character_one(one_copy(c));
      const long long chi2 = chi * chi;
      acc.add(chi2 * chi2);
    }
    per_stream[s] = std::move(acc);
  };

  if (threads == 1) {
    for (long long s = 0; s < kStreams; ++s) run_stream(s);
  } else {
    std::atomic<long long> next{0};
    std::vector<std::thread> pool;
    const int nworkers = static_cast<int>(std::min<long long>(threads, kStreams));
    pool.reserve(nworkers);
    for (int w = 0; w < nworkers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const long long s = next.fetch_add(1);
          if (s >= kStreams) return;
          run_stream(s);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  CharacterAccumulator total;
  for (const auto& acc : per_stream) total.merge(acc);
  MonteCarloEstimate est;
  est.estimate = total.mean();
  est.variance_of_mean = total.variance_of_mean();
  est.samples = total.samples;
  return est;
}

}  // namespace twocopy
