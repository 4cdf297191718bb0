// rankcrypt: parameter audit, scheme operations and attacks from the shell.
//
// Exit codes: 0 success, 1 operational failure (decoding, attack, file
// contents), 2 usage error.

#include <CLI11.hpp>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <variant>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "rankcrypt/rankcrypt.hpp"

namespace rc = rankcrypt;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const rc::NamedParams& lookup(const std::string& name) {
  const auto* p = rc::find_params(name);
  if (!p) throw UsageError("unknown parameter set '" + name + "' (see `params list`)");
  return *p;
}

void check_scheme(const rc::NamedParams& set, const std::string& scheme) {
  if (scheme.empty()) return;
  const auto s = rc::parse_scheme(scheme);
  if (!s) throw UsageError("unknown scheme '" + scheme + "'");
  if (*s != set.scheme()) throw UsageError("set " + set.name + " belongs to " + std::string(rc::scheme_name(set.scheme())));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw rc::FormatError("cannot write " + path);
  out << text;
}

// Header fields that two artifacts of the same instance share.
void require_same_instance(const rc::ArtifactFile& a, const rc::ArtifactFile& b) {
  for (const char* key : {"scheme", "params", "modulus.mid", "modulus.top"}) {
    const bool ha = a.has(key), hb = b.has(key);
    if (ha != hb || (ha && a.get(key) != b.get(key)))
      throw UsageError(std::string("files disagree on '") + key + "'");
  }
}

void require_kind(const rc::ArtifactFile& a, const std::string& kind) {
  if (a.get("kind") != kind) throw UsageError("expected a " + kind + " file, got " + a.get("kind"));
}

// Optional --scheme/--params given next to files must agree with them.
void check_flags_against(const rc::ArtifactFile& a, const std::string& scheme, const std::string& params) {
  if (!scheme.empty() && scheme != a.get("scheme")) throw UsageError("--scheme does not match the input files");
  if (!params.empty()) {
    const auto& set = lookup(params);
    if (set.params != rc::get_scheme_params(a)) throw UsageError("--params does not match the input files");
  }
}

rc::ArtifactFile base_artifact(const std::string& kind, const std::string& set_name,
                               const std::variant<rc::RamessesParams, rc::LigaParams>& params,
                               const rc::BinaryField& f, const rc::TowerField* tower) {
  rc::ArtifactFile a;
  rc::put_scheme_header(a, kind, set_name, params);
  rc::put_moduli(a, f, tower);
  return a;
}

rc::ArtifactFile derived(const rc::ArtifactFile& from, const std::string& kind) {
  rc::ArtifactFile a;
  for (const auto& [k, v] : from.headers()) a.set(k, v);
  a.set("kind", kind);
  return a;
}

// ---- params ----

int cmd_params_list() {
  std::cout << "name                scheme    lhs   n     broken  params\n";
  for (const auto& p : rc::parameter_registry()) {
    const auto row = rc::audit(p);
    const std::string desc = p.scheme() == rc::Scheme::ramesses ? rc::describe(std::get<rc::RamessesParams>(p.params))
                                                                : rc::describe(std::get<rc::LigaParams>(p.params));
    std::printf("%-19s %-9s %-5zu %-5zu %-7s %s%s\n", p.name.c_str(), std::string(rc::scheme_name(p.scheme())).c_str(),
                row.lhs, row.n, row.broken ? "true" : "false", desc.c_str(), p.ci ? " (ci)" : "");
  }
  return 0;
}

int cmd_params_check(const std::string& name) {
  const auto& set = lookup(name);
  const auto row = rc::audit(set);
  std::cout << "lhs=" << row.lhs << " n=" << row.n << " broken=" << (row.broken ? "true" : "false") << "\n";
  try {
    std::visit([](const auto& p) { p.validate(); }, set.params);
  } catch (const rc::BadParameters& e) {
    std::cerr << "invalid: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

// ---- keygen / plaintext / encrypt / decrypt ----

int cmd_keygen(const std::string& scheme, const std::string& params, std::uint64_t seed, const std::string& pub_path,
               const std::string& sec_path) {
  const auto& set = lookup(params);
  check_scheme(set, scheme);
  rc::Rng rng(seed);
  if (set.scheme() == rc::Scheme::ramesses) {
    const auto s = rc::make_ramesses(std::get<rc::RamessesParams>(set.params));
    const auto keys = s.keygen(rng);
    auto pub = base_artifact("public-key", set.name, set.params, s.field(), nullptr);
    pub.put_poly("k_pub", s.field(), keys.public_key);
    auto sec = derived(pub, "secret-key");
    sec.put_poly("k_pub", s.field(), keys.public_key);
    sec.put_poly("k_sec", s.field(), keys.secret);
    pub.write(pub_path);
    sec.write(sec_path);
  } else {
    const auto s = rc::make_liga(std::get<rc::LigaParams>(set.params));
    const auto keys = s.keygen(rng);
    auto pub = base_artifact("public-key", set.name, set.params, s.field(), &s.tower());
    pub.put_mid("g", s.field(), keys.public_key.g);
    pub.put_top("k_pub", s.tower(), keys.public_key.k_pub);
    auto sec = derived(pub, "secret-key");
    sec.put_mid("g", s.field(), keys.public_key.g);
    sec.put_top("k_pub", s.tower(), keys.public_key.k_pub);
    sec.put_top("x", s.tower(), keys.secret.x);
    sec.put_top("z", s.tower(), keys.secret.z);
    sec.put_bits("p", keys.secret.p);
    pub.write(pub_path);
    sec.write(sec_path);
  }
  return 0;
}


rc::Ramesses ramesses_from(const rc::ArtifactFile& a) {
  return rc::Ramesses(rc::get_mid_field(a), std::get<rc::RamessesParams>(rc::get_scheme_params(a)));
}

rc::Liga liga_from(const rc::ArtifactFile& a) {
  return rc::Liga(rc::get_tower(a), std::get<rc::LigaParams>(rc::get_scheme_params(a)));
}

rc::LigaPublicKey liga_public(const rc::Liga& s, const rc::ArtifactFile& a) {
  rc::LigaPublicKey pk{a.get_mid("g", s.field()), a.get_top("k_pub", s.tower())};
  if (pk.g.size() != s.params().n || pk.k_pub.size() != s.params().n) throw rc::FormatError("public key has wrong length");
  return pk;
}

int cmd_plaintext(const std::string& scheme, const std::string& params, std::uint64_t seed, const std::string& out) {
  const auto& set = lookup(params);
  check_scheme(set, scheme);
  rc::Rng rng(seed);
  if (set.scheme() == rc::Scheme::ramesses) {
    const auto s = rc::make_ramesses(std::get<rc::RamessesParams>(set.params));
    auto a = base_artifact("plaintext", set.name, set.params, s.field(), nullptr);
    a.put_bits("plaintext", s.random_plaintext(rng));
    a.write(out);
  } else {
    const auto s = rc::make_liga(std::get<rc::LigaParams>(set.params));
    auto a = base_artifact("plaintext", set.name, set.params, s.field(), &s.tower());
    a.put_mid("plaintext", s.field(), s.random_plaintext(rng));
    a.write(out);
  }
  return 0;
}

int cmd_encrypt(const std::string& scheme, const std::string& params, std::uint64_t seed, const std::string& pub_path,
                const std::string& in, const std::string& out) {
  const auto pub = rc::ArtifactFile::read(pub_path);
  const auto pt = rc::ArtifactFile::read(in);
  require_kind(pub, "public-key");
  require_kind(pt, "plaintext");
  require_same_instance(pub, pt);
  check_flags_against(pub, scheme, params);
  rc::Rng rng(seed);
  auto ct = derived(pub, "ciphertext");
  if (pub.get("scheme") == "ramesses") {
    const auto s = ramesses_from(pub);
    const auto msg = pt.get_bits("plaintext");
    s.check_plaintext(msg);
    ct.put_poly("ciphertext", s.field(), s.encrypt(pub.get_poly("k_pub", s.field()), msg, rng));
  } else {
    const auto s = liga_from(pub);
    const auto msg = pt.get_mid("plaintext", s.field());
    s.check_plaintext(msg);
    ct.put_mid("ciphertext", s.field(), s.encrypt(liga_public(s, pub), msg, rng));
  }
  ct.write(out);
  return 0;
}

int cmd_decrypt(const std::string& scheme, const std::string& params, const std::string& sec_path,
                const std::string& in, const std::string& out) {
  const auto sec = rc::ArtifactFile::read(sec_path);
  const auto ct = rc::ArtifactFile::read(in);
  require_kind(sec, "secret-key");
  require_kind(ct, "ciphertext");
  require_same_instance(sec, ct);
  check_flags_against(sec, scheme, params);
  auto pt = derived(sec, "plaintext");
  if (sec.get("scheme") == "ramesses") {
    const auto s = ramesses_from(sec);
    pt.put_bits("plaintext", s.decrypt(sec.get_poly("k_sec", s.field()), ct.get_poly("ciphertext", s.field())));
  } else {
    const auto s = liga_from(sec);
    rc::LigaKeyPair keys{{sec.get_top("x", s.tower()), sec.get_top("z", s.tower()), sec.get_bits("p")},
                         liga_public(s, sec)};
    pt.put_mid("plaintext", s.field(), s.decrypt(keys, ct.get_mid("ciphertext", s.field())));
  }
  pt.write(out);
  return 0;
}

// ---- attack / bench ----

bool refuse_unbroken(const rc::FeasibilityRow& row, bool force) {
  if (row.broken || force) return false;
  std::cerr << "refused: feasibility needs lhs <= n but lhs=" << row.lhs << " n=" << row.n
            << "; pass --force to try anyway\n";
  return true;
}

int cmd_attack_files(const std::string& scheme, const std::string& params, std::uint64_t seed,
                     const std::string& pub_path, const std::string& ct_path, const std::string& out,
                     const std::string& csv, bool force) {
  const auto pub = rc::ArtifactFile::read(pub_path);
  const auto ct = rc::ArtifactFile::read(ct_path);
  require_kind(pub, "public-key");
  require_kind(ct, "ciphertext");
  require_same_instance(pub, ct);
  check_flags_against(pub, scheme, params);
  const auto p = rc::get_scheme_params(pub);
  const auto row = std::holds_alternative<rc::RamessesParams>(p) ? rc::audit_ramesses(std::get<rc::RamessesParams>(p))
                                                                 : rc::audit_liga(std::get<rc::LigaParams>(p));
  if (refuse_unbroken(row, force)) return 2;
  auto recovered = derived(pub, "plaintext");
  rc::TrialOutcome outcome{0, seed, false, 0, 0, {}};
  const auto start = std::chrono::steady_clock::now();
  try {
    if (pub.get("scheme") == "ramesses") {
      const auto s = ramesses_from(pub);
      const auto rep = rc::attack_ramesses(s, pub.get_poly("k_pub", s.field()), ct.get_poly("ciphertext", s.field()), force);
      recovered.put_bits("plaintext", rep.plaintext);
    } else {
      const auto s = liga_from(pub);
      rc::Rng rng(seed);
      const auto rep = rc::attack_liga(s, liga_public(s, pub), ct.get_mid("ciphertext", s.field()), rng, force);
      outcome.retries = rep.retries;
      recovered.put_mid("plaintext", s.field(), rep.plaintext);
    }
    outcome.success = true;
  } catch (const rc::AttackFailure& e) {
    outcome.failed_step = e.step();
    std::cerr << "attack failed in " << e.step() << ": " << e.what() << "\n";
  } catch (const rc::DecodingFailure& e) {
    outcome.failed_step = "decode";
    std::cerr << "attack failed: " << e.what() << "\n";
  }
  outcome.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  write_text(csv, rc::attack_csv({outcome}));
  if (!outcome.success) return 1;
  if (!out.empty()) recovered.write(out);
  return 0;
}

int cmd_attack_generated(const std::string& scheme, const std::string& params, std::uint64_t seed, std::size_t trials,
                         std::size_t jobs, const std::string& csv, bool force) {
  const auto& set = lookup(params);
  check_scheme(set, scheme);
  if (refuse_unbroken(rc::audit(set), force)) return 2;
  const auto rows = rc::run_attack_trials(set, trials, seed, jobs, force);
  write_text(csv, rc::attack_csv(rows));
  for (const auto& r : rows)
    if (!r.success) return 1;
  return 0;
}

int cmd_bench(const std::string& params, std::uint64_t seed, std::size_t trials, std::size_t jobs,
              const std::string& out) {
  std::vector<const rc::NamedParams*> sets;
  if (params == "ci-small") {
    for (const auto& p : rc::parameter_registry())
      if (p.ci) sets.push_back(&p);
  } else {
    sets.push_back(&lookup(params));
  }
  std::vector<rc::BenchRecord> records;
  for (const auto* set : sets)
    for (const auto& o : rc::run_attack_trials(*set, trials, seed, jobs, true)) records.push_back({set->name, o});
  write_text(out, rc::bench_csv(records));
  return 0;
}

// ---- selftest ----

bool suite_qpoly(std::uint64_t seed) {
  const auto f = rc::BinaryField::with_default_modulus(12);
  rc::Rng rng(seed);
  for (int i = 0; i < 100; ++i) {
    const auto p = rc::random_qpoly(f, 12, rng), q = rc::random_qpoly(f, 12, rng);
    if (rc::adjoint(f, rc::adjoint(f, p)) != p) return false;
    if (rc::adjoint(f, rc::compose_mod(f, p, q)) != rc::compose_mod(f, rc::adjoint(f, q), rc::adjoint(f, p)))
      return false;
    if (rc::rank(f, p) != rc::rank(f, rc::adjoint(f, p))) return false;
    const auto b = rc::random_qpoly(f, 5, rng);
    if (b.is_zero()) continue;
    const auto a = rc::compose(f, p, q);
    const auto rd = rc::right_divide(f, a, b);
    if (rc::compose(f, rd.quotient, b) + rd.remainder != a || rd.remainder.q_degree() >= b.q_degree()) return false;
    const auto v = rc::left_annihilator(f, p);
    if (!rc::compose_mod(f, v, p).is_zero() || v.q_degree() != static_cast<int>(rc::rank(f, p))) return false;
  }
  return true;
}

bool suite_decoders(std::uint64_t seed) {
  const auto f = rc::BinaryField::with_default_modulus(24);
  const rc::GabidulinCode code(f, rc::power_basis(f), 8);
  rc::Rng rng(seed);
  for (std::size_t t = 0; t <= 8; ++t)
    for (int i = 0; i < 4; ++i) {
      rc::MidVector msg(8);
      for (auto& x : msg) x = f.random(rng);
      const auto c = code.encode(msg);
      const auto e = rc::sample_error(f, 24, t, rng);
      const auto y = rc::add(c, e);
      const auto l = code.decode_left(y), r = code.decode_right(y);
      if (l.message != msg || r.message != msg || l.error != e || r.error != e) return false;
    }
  const auto ram = rc::make_ramesses(std::get<rc::RamessesParams>(lookup("ramesses-ci").params));
  for (int i = 0; i < 5; ++i) {
    const auto keys = ram.keygen(rng);
    const auto pt = ram.random_plaintext(rng);
    try {
      if (ram.decrypt(keys.secret, ram.encrypt(keys.public_key, pt, rng)) != pt) return false;
    } catch (const rc::RankDrop&) {
    }
  }
  const auto liga = rc::make_liga(std::get<rc::LigaParams>(lookup("liga-ci").params));
  for (int i = 0; i < 5; ++i) {
    const auto keys = liga.keygen(rng);
    const auto msg = liga.random_plaintext(rng);
    if (liga.decrypt(keys, liga.encrypt(keys.public_key, msg, rng)) != msg) return false;
  }
  return true;
}

bool suite_attacks(std::uint64_t seed) {
  for (const char* name : {"ramesses-ci", "liga-ci"})
    for (const auto& o : rc::run_attack_trials(lookup(name), 3, seed, 1))
      if (!o.success) return false;
  return true;
}

int cmd_selftest(std::uint64_t seed) {
  bool all = true;
  auto report = [&](const char* name, bool (*suite)(std::uint64_t)) {
    bool ok = false;
    try {
      ok = suite(seed);
    } catch (const std::exception& e) {
      std::cerr << name << ": " << e.what() << "\n";
    }
    std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    all = all && ok;
  };
  report("qpoly-laws", suite_qpoly);
  report("decoder-roundtrips", suite_decoders);
  report("attack-plant-recover", suite_attacks);
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rank-metric codes, the RAMESSES and LIGA schemes, and message-recovery attacks on them"};
  app.require_subcommand(1);

  std::string scheme, params, pub, sec, in, out, csv, ct;
  std::uint64_t seed = 1;
  std::size_t trials = 1, jobs = 1;
  bool force = false;

  auto* params_cmd = app.add_subcommand("params", "Parameter registry and feasibility audit");
  params_cmd->require_subcommand(1);
  auto* params_list = params_cmd->add_subcommand("list", "List named parameter sets");
  auto* params_check = params_cmd->add_subcommand("check", "Audit one named set");
  std::string check_name;
  params_check->add_option("set", check_name, "Parameter set name")->required();

  auto* keygen = app.add_subcommand("keygen", "Generate a key pair");
  keygen->add_option("--scheme", scheme, "ramesses or liga");
  keygen->add_option("--params", params, "Named parameter set")->required();
  keygen->add_option("--seed", seed, "RNG seed");
  keygen->add_option("--public", pub, "Public key output")->required();
  keygen->add_option("--secret", sec, "Secret key output")->required();

  auto* plaintext = app.add_subcommand("plaintext", "Sample a random plaintext");
  plaintext->add_option("--scheme", scheme, "ramesses or liga");
  plaintext->add_option("--params", params, "Named parameter set")->required();
  plaintext->add_option("--seed", seed, "RNG seed");
  plaintext->add_option("--out", out, "Plaintext output")->required();

  auto* encrypt = app.add_subcommand("encrypt", "Encrypt a plaintext file");
  encrypt->add_option("--scheme", scheme, "Expected scheme");
  encrypt->add_option("--params", params, "Expected parameter set");
  encrypt->add_option("--seed", seed, "RNG seed");
  encrypt->add_option("--public", pub, "Public key")->required();
  encrypt->add_option("--in", in, "Plaintext input")->required();
  encrypt->add_option("--out", out, "Ciphertext output")->required();

  auto* decrypt = app.add_subcommand("decrypt", "Decrypt a ciphertext file");
  decrypt->add_option("--scheme", scheme, "Expected scheme");
  decrypt->add_option("--params", params, "Expected parameter set");
  decrypt->add_option("--secret", sec, "Secret key")->required();
  decrypt->add_option("--in", in, "Ciphertext input")->required();
  decrypt->add_option("--out", out, "Plaintext output")->required();

  auto* attack = app.add_subcommand("attack", "Message recovery from public data");
  attack->add_option("--scheme", scheme, "ramesses or liga");
  attack->add_option("--params", params, "Named parameter set");
  attack->add_option("--seed", seed, "Base RNG seed; trial i uses seed + i");
  attack->add_option("--trials", trials, "Generated instances when no files are given")->check(CLI::PositiveNumber);
  attack->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  attack->add_option("--public", pub, "Public key file");
  attack->add_option("--ciphertext", ct, "Ciphertext file");
  attack->add_option("--out", out, "Recovered plaintext output (file mode)");
  attack->add_option("--csv", csv, "Report CSV (default stdout)");
  attack->add_flag("--force", force, "Attack even when the feasibility audit fails");

  auto* bench = app.add_subcommand("bench", "Time attack trials");
  bench->add_option("--params", params, "Named parameter set, or ci-small")->required();
  bench->add_option("--seed", seed, "Base RNG seed; trial i uses seed + i");
  bench->add_option("--trials", trials, "Trials per set")->check(CLI::PositiveNumber);
  bench->add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  bench->add_option("--out", out, "CSV output (default stdout)");

  auto* selftest = app.add_subcommand("selftest", "Property checks at reduced sizes");
  selftest->add_option("--seed", seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*params_list) return cmd_params_list();
    if (*params_check) return cmd_params_check(check_name);
    if (*keygen) return cmd_keygen(scheme, params, seed, pub, sec);
    if (*plaintext) return cmd_plaintext(scheme, params, seed, out);
    if (*encrypt) return cmd_encrypt(scheme, params, seed, pub, in, out);
    if (*decrypt) return cmd_decrypt(scheme, params, sec, in, out);
    if (*attack) {
      if (pub.empty() != ct.empty()) throw UsageError("--public and --ciphertext go together");
      if (!pub.empty()) return cmd_attack_files(scheme, params, seed, pub, ct, out, csv, force);
      if (params.empty()) throw UsageError("--params is required without input files");
      return cmd_attack_generated(scheme, params, seed, trials, jobs, csv, force);
    }
    if (*bench) return cmd_bench(params, seed, trials, jobs, out);
    if (*selftest) return cmd_selftest(seed);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rc::BadParameters& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rc::RankDrop& e) {
    std::cerr << "decryption failed: " << e.what() << "\n";
    return 1;
  } catch (const rc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
