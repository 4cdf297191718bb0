#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rankcrypt/attacks.hpp"
#include "rankcrypt/liga.hpp"
#include "rankcrypt/ramesses.hpp"

namespace rankcrypt {

enum class Scheme { ramesses, liga };

inline std::string_view scheme_name(Scheme s) { return s == Scheme::ramesses ? "ramesses" : "liga"; }

inline std::optional<Scheme> parse_scheme(std::string_view s) {
  if (s == "ramesses") return Scheme::ramesses;
  if (s == "liga") return Scheme::liga;
  return std::nullopt;
}

struct NamedParams {
  std::string name;
  std::variant<RamessesParams, LigaParams> params;
  bool ci = false;  // reduced set for fast tests

  Scheme scheme() const { return std::holds_alternative<RamessesParams>(params) ? Scheme::ramesses : Scheme::liga; }
};

inline const std::vector<NamedParams>& parameter_registry() {
  static const std::vector<NamedParams> sets = {
      {"ramesses-64", RamessesParams{64, 32, 19, 3, 5}},
      {"ramesses-80", RamessesParams{80, 40, 23, 3, 7}},
      {"ramesses-96", RamessesParams{96, 48, 27, 3, 9}},
      {"ramesses-164-pke", RamessesParams{164, 116, 27, 3, 9}},
      {"liga-128", LigaParams{2, 92, 92, 53, 27, 5, 2}},
      {"liga-192", LigaParams{2, 120, 120, 69, 35, 5, 2}},
      {"liga-256", LigaParams{2, 148, 148, 85, 43, 5, 2}},
      {"ramesses-ci", RamessesParams{32, 8, 9, 2, 4}, true},
      {"liga-ci", LigaParams{2, 40, 40, 15, 15, 3, 2}, true},
  };
  return sets;
}

inline const NamedParams* find_params(std::string_view name) {
  const auto& reg = parameter_registry();
  auto it = std::find_if(reg.begin(), reg.end(), [&](const NamedParams& p) { return p.name == name; });
  return it == reg.end() ? nullptr : &*it;
}

inline FeasibilityRow audit(const NamedParams& p) {
  return std::visit(
      [](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, RamessesParams>)
          return audit_ramesses(v);
        else
          return audit_liga(v);
      },
      p.params);
}

inline std::string describe(const RamessesParams& p) {
  return "m=" + std::to_string(p.m) + " k=" + std::to_string(p.k) + " w=" + std::to_string(p.w) +
         " l=" + std::to_string(p.l) + " t=" + std::to_string(p.t);
}

inline std::string describe(const LigaParams& p) {
  return "q=" + std::to_string(p.q) + " n=" + std::to_string(p.n) + " m=" + std::to_string(p.m) +
         " k=" + std::to_string(p.k) + " w=" + std::to_string(p.w) + " u=" + std::to_string(p.u) +
         " zeta=" + std::to_string(p.zeta);
}

}  // namespace rankcrypt
