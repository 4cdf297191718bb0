#pragma once

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <string>
#include <thread>
#include <vector>

#include "rankcrypt/attacks.hpp"
#include "rankcrypt/liga.hpp"
#include "rankcrypt/params.hpp"
#include "rankcrypt/ramesses.hpp"
#include "rankcrypt/rng.hpp"

namespace rankcrypt {

/// One plant-and-recover attack run.
struct TrialOutcome {
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  bool success = false;
  std::size_t retries = 0;
  double elapsed_ms = 0;
  std::string failed_step;  // empty on success
};

/// Runs fn(i) for i in [0, count) on up to `jobs` threads; results stay in
/// index order.
template <class Result>
std::vector<Result> run_indexed(std::size_t count, std::size_t jobs, const std::function<Result(std::size_t)>& fn) {
  std::vector<Result> out(count);
  jobs = std::clamp<std::size_t>(jobs, 1, std::max<std::size_t>(count, 1));
  if (jobs == 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::vector<std::exception_ptr> errors(count);
  std::vector<std::thread> pool;
  for (std::size_t j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      for (std::size_t i = j; i < count; i += jobs) {
        try {
          out[i] = fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace detail {
template <class Attack>
TrialOutcome timed_trial(std::size_t trial, std::uint64_t seed, Attack&& attack) {
  TrialOutcome out{trial, seed, false, 0, 0, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    attack(out);
  } catch (const AttackFailure& e) {
    out.failed_step = e.step();
  } catch (const DecodingFailure&) {
    out.failed_step = "decode";
  }
  out.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}
}  // namespace detail

/// Fresh keys and plaintext from `seed`, then the attack; success means the
/// planted plaintext came back. Elapsed time covers the attack only.
inline TrialOutcome ramesses_attack_trial(const Ramesses& scheme, std::size_t trial, std::uint64_t seed,
                                          bool force = false) {
  Rng rng(seed);
  const auto keys = scheme.keygen(rng);
  const auto pt = scheme.random_plaintext(rng);
  const auto y = scheme.encrypt(keys.public_key, pt, rng);
  return detail::timed_trial(trial, seed, [&](TrialOutcome& out) {
    const auto rep = attack_ramesses(scheme, keys.public_key, y, force);
    out.success = rep.plaintext == pt;
    if (!out.success) out.failed_step = "mismatch";
  });
}

inline TrialOutcome liga_attack_trial(const Liga& scheme, std::size_t trial, std::uint64_t seed, bool force = false) {
  Rng rng(seed);
  const auto keys = scheme.keygen(rng);
  const auto msg = scheme.random_plaintext(rng);
  const auto c = scheme.encrypt(keys.public_key, msg, rng);
  return detail::timed_trial(trial, seed, [&](TrialOutcome& out) {
    const auto rep = attack_liga(scheme, keys.public_key, c, rng, force);
    out.retries = rep.retries;
    out.success = rep.plaintext == msg;
    if (!out.success) out.failed_step = "mismatch";
  });
}

inline Ramesses make_ramesses(const RamessesParams& p) {
  p.validate();
  return Ramesses(BinaryField::with_default_modulus(static_cast<int>(p.m)), p);
}

inline Liga make_liga(const LigaParams& p) {
  p.validate();
  return Liga(TowerField::with_default_modulus(BinaryField::with_default_modulus(static_cast<int>(p.m)),
                                               static_cast<int>(p.u)),
              p);
}

/// `trials` attack runs on a named set with seeds trial_seed(base, i).
inline std::vector<TrialOutcome> run_attack_trials(const NamedParams& set, std::size_t trials, std::uint64_t base,
                                                   std::size_t jobs, bool force = false) {
  if (set.scheme() == Scheme::ramesses) {
    const Ramesses scheme = make_ramesses(std::get<RamessesParams>(set.params));
    return run_indexed<TrialOutcome>(trials, jobs, [&](std::size_t i) {
      return ramesses_attack_trial(scheme, i, trial_seed(base, i), force);
    });
  }
  const Liga scheme = make_liga(std::get<LigaParams>(set.params));
  return run_indexed<TrialOutcome>(trials, jobs, [&](std::size_t i) {
    return liga_attack_trial(scheme, i, trial_seed(base, i), force);
  });
}

}  // namespace rankcrypt
