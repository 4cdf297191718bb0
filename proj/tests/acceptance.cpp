// Acceptance run: one PASS/FAIL line per criterion. Thresholds are fixed
// here; the exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "support.hpp"

using namespace rankcrypt;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

const RamessesParams& ramesses_set(const char* name) { return std::get<RamessesParams>(find_params(name)->params); }
const LigaParams& liga_set(const char* name) { return std::get<LigaParams>(find_params(name)->params); }

// Feasibility values of the named sets.
Verdict ac1() {
  const std::pair<const char*, std::size_t> rows[] = {{"ramesses-64", 54},  {"ramesses-80", 68}, {"ramesses-96", 82},
                                                      {"ramesses-164-pke", 150}, {"liga-128", 79}, {"liga-192", 103},
                                                      {"liga-256", 127}};
  std::string got;
  bool ok = true;
  for (const auto& [name, lhs] : rows) {
    const auto row = audit(*find_params(name));
    ok = ok && row.lhs == lhs && row.broken;
    got += std::to_string(row.lhs) + (row.broken ? "b " : "u ");
  }
  return {ok, "lhs " + got};
}

Verdict ac2() {
  const std::pair<const char*, std::size_t> rows[] = {{"liga-128", 6}, {"liga-192", 8}, {"liga-256", 10}};
  bool ok = true;
  std::string got;
  for (const auto& [name, t] : rows) {
    const auto tp = liga_set(name).t_pub();
    ok = ok && tp == t;
    got += std::to_string(tp) + " ";
  }
  return {ok, "t_pub " + got};
}

Verdict ac3() {
  const auto f = BinaryField::with_default_modulus(24);
  const GabidulinCode code(f, power_basis(f), 8);
  Rng rng(3003);
  std::size_t good = 0, total = 0;
  for (std::size_t t = 0; t <= 8; ++t)
    for (int i = 0; i < 200; ++i, ++total) {
      const auto msg = rctest::random_message(f, 8, rng);
      const auto e = sample_error(f, 24, t, rng);
      const auto y = add(code.encode(msg), e);
      try {
        const auto l = code.decode_left(y), r = code.decode_right(y);
        good += l.message == msg && r.message == msg && l.error == e && r.error == e && l.codeword == r.codeword;
      } catch (const DecodingFailure&) {
      }
    }
  return {good == total, std::to_string(good) + "/" + std::to_string(total) + " exact and agreeing"};
}

Verdict ac4() {
  const auto f = BinaryField::with_default_modulus(6);
  Rng rng(4004);
  const GabidulinCode code(f, sample_full_rank_vector(f, 6, rng), 2);
  int agree = 0;
  for (int i = 0; i < 50; ++i) {
    const auto y = add(code.encode(rctest::random_message(f, 2, rng)), sample_error(f, 6, rng() % 3, rng));
    const auto oracle = rctest::brute_force_nearest(code, y);
    try {
      agree += oracle && code.decode_left(y).message == *oracle && code.decode_right(y).message == *oracle;
    } catch (const DecodingFailure&) {
    }
  }
  return {agree == 50, std::to_string(agree) + "/50 agree with exhaustive search"};
}

Verdict ac5() {
  const auto f = BinaryField::with_default_modulus(12);
  Rng rng(5005);
  int failures = 0;
  for (int i = 0; i < 500; ++i) {
    const auto p = random_qpoly(f, 12, rng), q = random_qpoly(f, 12, rng);
    failures += adjoint(f, adjoint(f, p)) != p;
    failures += adjoint(f, compose_mod(f, p, q)) != compose_mod(f, adjoint(f, q), adjoint(f, p));
    failures += rank(f, p) != rank(f, adjoint(f, p));
    const auto a = random_qpoly(f, 1 + rng() % 20, rng);
    auto b = random_qpoly(f, 1 + rng() % 8, rng);
    if (b.is_zero()) b = QPoly::identity();
    const auto rd = right_divide(f, a, b);
    failures += compose(f, rd.quotient, b) + rd.remainder != a || rd.remainder.q_degree() >= b.q_degree();
    const auto ld = left_divide(f, a, b);
    failures += compose(f, b, ld.quotient) + ld.remainder != a || ld.remainder.q_degree() >= b.q_degree();
    const std::size_t r = rng() % 13;
    const auto e = from_matrix(f, sample_rank_matrix(12, 12, r, rng));
    const auto vl = left_annihilator(f, e), vr = right_annihilator(f, e);
    failures += !vl.is_monic() || vl.q_degree() != static_cast<int>(r) || !compose_mod(f, vl, e).is_zero();
    failures += !vr.is_monic() || vr.q_degree() != static_cast<int>(r) || !compose_mod(f, e, vr).is_zero();
  }
  return {failures == 0, std::to_string(failures) + " failures over 500 cases x 7 laws"};
}

Verdict ac6() {
  const auto f = BinaryField::with_default_modulus(32);
  const auto basis = std::make_shared<const EvaluationBasis>(f, power_basis(f));
  Rng rng(6006);
  int ok = 0;
  std::size_t lhs = 0;
  for (int i = 0; i < 100; ++i) {
    std::vector<QPoly> t{random_qpoly(f, 32, rng), random_qpoly(f, 32, rng)};
    const Supercode code(basis, 8, t, 4);
    lhs = std::max(lhs, code.feasibility_lhs_left());
    const auto inst = rctest::plant_supercode(*basis, 8, t, 4, rng);
    try {
      const auto res = code.decode_left(inst.received);
      ok += res.error == inst.error && res.corrected == inst.codeword;
    } catch (const DecodingFailure&) {
    }
  }
  return {ok >= 99, std::to_string(ok) + "/100 recovered (need 99), lhs " + std::to_string(lhs)};
}

Verdict ac7() {
  const auto ram = make_ramesses(ramesses_set("ramesses-64"));
  Rng rng(7007);
  int exact = 0, drops = 0, wrong = 0;
  for (int i = 0; i < 20; ++i) {
    const auto keys = ram.keygen(rng);
    const auto pt = ram.random_plaintext(rng);
    try {
      (ram.decrypt(keys.secret, ram.encrypt(keys.public_key, pt, rng)) == pt ? exact : wrong)++;
    } catch (const RankDrop&) {
      ++drops;
    } catch (const DecodingFailure&) {
      ++wrong;
    }
  }
  const auto liga = make_liga(liga_set("liga-128"));
  int liga_ok = 0;
  for (int i = 0; i < 20; ++i) {
    const auto keys = liga.keygen(rng);
    const auto msg = liga.random_plaintext(rng);
    try {
      liga_ok += liga.decrypt(keys, liga.encrypt(keys.public_key, msg, rng)) == msg;
    } catch (const DecodingFailure&) {
    }
  }
  return {wrong == 0 && liga_ok == 20, "ramesses-64 exact " + std::to_string(exact) + " rank-drop " +
                                           std::to_string(drops) + " wrong " + std::to_string(wrong) +
                                           "; liga-128 " + std::to_string(liga_ok) + "/20"};
}

Verdict ac8() {
  const auto rows = run_attack_trials(*find_params("ramesses-64"), 10, 8008, 1);
  int ok = 0;
  for (const auto& r : rows) ok += r.success;
  return {ok == 10, std::to_string(ok) + "/10 plaintext subspaces recovered"};
}

Verdict ac9() {
  const auto rows = run_attack_trials(*find_params("liga-128"), 10, 9009, 1);
  int ok = 0;
  std::size_t retries = 0;
  for (const auto& r : rows) {
    ok += r.success;
    retries += r.retries;
  }
  const bool s192 = run_attack_trials(*find_params("liga-192"), 1, 9109, 1)[0].success;
  const bool s256 = run_attack_trials(*find_params("liga-256"), 1, 9209, 1)[0].success;
  return {ok >= 9 && s192 && s256, "liga-128 " + std::to_string(ok) + "/10 (need 9), step-1 retries " +
                                       std::to_string(retries) + "; liga-192 " + (s192 ? "ok" : "FAILED") +
                                       "; liga-256 " + (s256 ? "ok" : "FAILED")};
}

Verdict ac10() {
  const auto tw = TowerField::with_default_modulus(BinaryField::with_default_modulus(4), 3);
  Rng rng(1010);
  const auto inst = rctest::PublicCodeInstance::sample(tw, 4, 1, 2, rng);
  int equal = 0, contains = 0;
  for (int i = 0; i < 500; ++i) {
    const auto d = inst.draw(rng);
    equal += d.equal;
    contains += d.contains;
  }
  const double bound = std::pow(1.0 - 1.0 / 16, 16.0 / 15);
  const double threshold = bound - 3 * std::sqrt(bound * (1 - bound) / 500);
  const double freq = equal / 500.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "C = C_pub in %.3f (threshold %.3f), containment %d/500", freq, threshold, contains);
  return {freq >= threshold && contains == 500, buf};
}

Verdict ac11() {
  const auto count = rctest::count_complements(4, 2);
  return {count == 16, std::to_string(count) + " complements (expect 16)"};
}

Verdict ac12() {
  const auto liga = make_liga(liga_set("liga-ci"));
  Rng rng(1212);
  const auto keys = liga.keygen(rng);
  int accepted = 0, rejected = 0;
  for (int i = 0; i < 100; ++i) {
    accepted += liga_distinguish(liga, keys.public_key, liga.encrypt(keys.public_key, liga.random_plaintext(rng), rng), rng);
    rejected += !liga_distinguish(liga, keys.public_key, rctest::random_message(liga.field(), liga.params().n, rng), rng);
  }
  return {accepted == 100 && rejected >= 95,
          "honest accepted " + std::to_string(accepted) + "/100, random rejected " + std::to_string(rejected) + "/100"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11}, {"AC12", ac12}};
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s %s (%.1fs)\n", name, v.pass ? "PASS" : "FAIL", v.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  return failed == 0 ? 0 : 1;
}
