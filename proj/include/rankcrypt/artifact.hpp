#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "rankcrypt/binary_field.hpp"
#include "rankcrypt/bitmatrix.hpp"
#include "rankcrypt/errors.hpp"
#include "rankcrypt/params.hpp"
#include "rankcrypt/qpoly.hpp"
#include "rankcrypt/tower.hpp"

namespace rankcrypt {

inline constexpr std::string_view kArtifactFormat = "rankcrypt/1";

/// Text artifact: `key: value` header lines followed by
/// `data.<name>: <type> <shape> <hex>` payload lines. Payloads are streams of
/// base-field digits, little-endian, eight to a byte.
class ArtifactFile {
 public:
  struct Payload {
    std::string type;  // mid, top, poly or bits
    std::string shape;  // element count, or rows x cols for bits
    std::vector<std::uint8_t> digits;
    friend bool operator==(const Payload&, const Payload&) = default;
  };

  void set(const std::string& key, std::string value) {
    for (auto& [k, v] : headers_)
      if (k == key) {
        v = std::move(value);
        return;
      }
    headers_.emplace_back(key, std::move(value));
  }
  bool has(const std::string& key) const { return find(key) != nullptr; }
  const std::string& get(const std::string& key) const {
    const auto* v = find(key);
    if (!v) throw FormatError("missing header '" + key + "'");
    return *v;
  }
  const std::vector<std::pair<std::string, std::string>>& headers() const { return headers_; }
  const std::map<std::string, Payload>& payloads() const { return payloads_; }

  void put_payload(const std::string& name, Payload p) {
    p.digits.resize((p.digits.size() + 7) / 8 * 8, 0);
    payloads_[name] = std::move(p);
  }
  const Payload& payload(const std::string& name, std::string_view type) const {
    auto it = payloads_.find(name);
    if (it == payloads_.end()) throw FormatError("missing payload '" + name + "'");
    if (it->second.type != type) throw FormatError("payload '" + name + "' is not of type " + std::string(type));
    return it->second;
  }

  void put_mid(const std::string& name, const BinaryField& f, std::span<const MidElement> v) {
    Payload p{"mid", std::to_string(v.size()), {}};
    for (const auto& x : v) append_digits(p.digits, f.to_digits(x));
    put_payload(name, std::move(p));
  }
  MidVector get_mid(const std::string& name, const BinaryField& f) const {
    const auto& p = payload(name, "mid");
    const std::size_t count = parse_count(p.shape);
    const auto m = static_cast<std::size_t>(f.degree());
    check_length(p, count * m);
    MidVector out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = f.from_digits(slice(p.digits, i * m, m));
    return out;
  }

  void put_top(const std::string& name, const TowerField& tw, std::span<const TopElement> v) {
    Payload p{"top", std::to_string(v.size()), {}};
    for (const auto& x : v) append_digits(p.digits, tw.to_digits(x));
    put_payload(name, std::move(p));
  }
  TopVector get_top(const std::string& name, const TowerField& tw) const {
    const auto& p = payload(name, "top");
    const std::size_t count = parse_count(p.shape);
    const std::size_t width = static_cast<std::size_t>(tw.mid().degree()) * tw.degree();
    check_length(p, count * width);
    TopVector out(count);
    for (std::size_t i = 0; i < count; ++i) out[i] = tw.from_digits(slice(p.digits, i * width, width));
    return out;
  }

  void put_poly(const std::string& name, const BinaryField& f, const QPoly& poly) {
    put_mid(name, f, poly.coeffs());
    payloads_.at(name).type = "poly";
  }
  QPoly get_poly(const std::string& name, const BinaryField& f) const {
    ArtifactFile tmp;
    auto p = payload(name, "poly");
    p.type = "mid";
    tmp.put_payload(name, std::move(p));
    return QPoly(tmp.get_mid(name, f));
  }

  void put_bits(const std::string& name, const BitMatrix& mat) {
    Payload p{"bits", std::to_string(mat.rows()) + "x" + std::to_string(mat.cols()), {}};
    for (std::size_t r = 0; r < mat.rows(); ++r)
      for (std::size_t c = 0; c < mat.cols(); ++c) p.digits.push_back(mat.get(r, c) ? 1 : 0);
    put_payload(name, std::move(p));
  }
  BitMatrix get_bits(const std::string& name) const {
    const auto& p = payload(name, "bits");
    const auto x = p.shape.find('x');
    if (x == std::string::npos) throw FormatError("bit matrix shape must be rows x cols");
    const std::size_t rows = parse_count(p.shape.substr(0, x)), cols = parse_count(p.shape.substr(x + 1));
    check_length(p, rows * cols);
    BitMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c)
        if (p.digits[r * cols + c]) out.set(r, c, true);
    return out;
  }

  std::string emit() const {
    std::ostringstream os;
    os << "format: " << kArtifactFormat << '\n';
    for (const auto& [k, v] : headers_) os << k << ": " << v << '\n';
    for (const auto& [name, p] : payloads_)
      os << "data." << name << ": " << p.type << ' ' << p.shape << ' ' << to_hex(p.digits) << '\n';
    return os.str();
  }

  static ArtifactFile parse(std::string_view text) {
    ArtifactFile out;
    std::istringstream is{std::string(text)};
    std::string line;
    bool saw_format = false;
    while (std::getline(is, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      const auto colon = line.find(": ");
      if (colon == std::string::npos) throw FormatError("malformed line: " + line);
      const std::string key = line.substr(0, colon), value = line.substr(colon + 2);
      if (!saw_format) {
        if (key != "format" || value != kArtifactFormat) throw FormatError("unsupported artifact format");
        saw_format = true;
        continue;
      }
      if (key.rfind("data.", 0) == 0) {
        std::istringstream fields(value);
        Payload p;
        std::string hex;
        if (!(fields >> p.type >> p.shape >> hex)) throw FormatError("malformed payload line: " + key);
        p.digits = from_hex(hex);
        out.payloads_[key.substr(5)] = std::move(p);
      } else {
        if (out.has(key)) throw FormatError("duplicate header '" + key + "'");
        out.headers_.emplace_back(key, value);
      }
    }
    if (!saw_format) throw FormatError("empty artifact");
    return out;
  }

  static ArtifactFile read(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }

  void write(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw FormatError("cannot write " + path);
    out << emit();
    if (!out) throw FormatError("write failed for " + path);
  }

  friend bool operator==(const ArtifactFile&, const ArtifactFile&) = default;

  static std::string to_hex(const std::vector<std::uint8_t>& digits) {
    if (digits.empty()) return "-";
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (std::size_t i = 0; i < digits.size(); i += 8) {
      unsigned byte = 0;
      for (std::size_t b = 0; b < 8 && i + b < digits.size(); ++b) byte |= (digits[i + b] & 1U) << b;
      out += kHex[byte >> 4];
      out += kHex[byte & 15];
    }
    return out;
  }
  static std::vector<std::uint8_t> from_hex(const std::string& hex) {
    if (hex == "-") return {};
    if (hex.size() % 2) throw FormatError("odd-length hex payload");
    auto nibble = [](char c) -> unsigned {
      if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
      if (c >= 'a' && c <= 'f') return static_cast<unsigned>(c - 'a' + 10);
      throw FormatError(std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> out;
    out.reserve(hex.size() * 4);
    for (std::size_t i = 0; i < hex.size(); i += 2) {
      const unsigned byte = nibble(hex[i]) << 4 | nibble(hex[i + 1]);
      for (unsigned b = 0; b < 8; ++b) out.push_back(static_cast<std::uint8_t>((byte >> b) & 1U));
    }
    return out;
  }

 private:
  const std::string* find(const std::string& key) const {
    for (const auto& [k, v] : headers_)
      if (k == key) return &v;
    return nullptr;
  }
  static void append_digits(std::vector<std::uint8_t>& out, const std::vector<std::uint8_t>& d) {
    out.insert(out.end(), d.begin(), d.end());
  }
  static std::vector<std::uint8_t> slice(const std::vector<std::uint8_t>& d, std::size_t from, std::size_t len) {
    return {d.begin() + static_cast<std::ptrdiff_t>(from), d.begin() + static_cast<std::ptrdiff_t>(from + len)};
  }
  static std::size_t parse_count(const std::string& s) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(s, &pos);
    } catch (const std::exception&) {
      throw FormatError("bad payload shape '" + s + "'");
    }
    if (pos != s.size()) throw FormatError("bad payload shape '" + s + "'");
    return static_cast<std::size_t>(v);
  }
  static void check_length(const Payload& p, std::size_t digits) {
    if (p.digits.size() != (digits + 7) / 8 * 8) throw FormatError("payload length mismatch");
  }

  std::vector<std::pair<std::string, std::string>> headers_;
  std::map<std::string, Payload> payloads_;
};

// Scheme-level header helpers.

inline std::string bits_hex(const std::vector<std::uint8_t>& digits) { return ArtifactFile::to_hex(digits); }

inline void put_scheme_header(ArtifactFile& a, std::string_view kind, const std::string& set_name,
                              const std::variant<RamessesParams, LigaParams>& params) {
  a.set("kind", std::string(kind));
  const bool ram = std::holds_alternative<RamessesParams>(params);
  a.set("scheme", ram ? "ramesses" : "liga");
  a.set("set", set_name);
  a.set("params", ram ? describe(std::get<RamessesParams>(params)) : describe(std::get<LigaParams>(params)));
}

inline std::variant<RamessesParams, LigaParams> get_scheme_params(const ArtifactFile& a) {
  std::map<std::string, std::size_t> kv;
  std::istringstream is(a.get("params"));
  std::string tok;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw FormatError("bad params token '" + tok + "'");
    try {
      kv[tok.substr(0, eq)] = std::stoul(tok.substr(eq + 1));
    } catch (const std::exception&) {
      throw FormatError("bad params token '" + tok + "'");
    }
  }
  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end()) throw FormatError(std::string("params lack '") + key + "'");
    return it->second;
  };
  const auto& scheme = a.get("scheme");
  if (scheme == "ramesses") return RamessesParams{need("m"), need("k"), need("w"), need("l"), need("t")};
  if (scheme == "liga") return LigaParams{need("q"), need("n"), need("m"), need("k"), need("w"), need("u"), need("zeta")};
  throw FormatError("unknown scheme '" + scheme + "'");
}

inline void put_moduli(ArtifactFile& a, const BinaryField& f, const TowerField* tower = nullptr) {
  a.set("modulus.mid", std::to_string(f.degree()) + " " + bits_hex(f.modulus()));
  if (tower) {
    std::vector<std::uint8_t> digits;
    for (const auto& c : tower->modulus()) {
      const auto d = f.to_digits(c);
      digits.insert(digits.end(), d.begin(), d.end());
    }
    a.set("modulus.top", std::to_string(tower->degree()) + " " + bits_hex(digits));
  }
}

namespace detail {
inline std::pair<std::size_t, std::vector<std::uint8_t>> split_modulus(const std::string& s) {
  std::istringstream is(s);
  std::size_t deg = 0;
  std::string hex;
  if (!(is >> deg >> hex)) throw FormatError("malformed modulus header");
  return {deg, ArtifactFile::from_hex(hex)};
}
}  // namespace detail

inline BinaryField get_mid_field(const ArtifactFile& a) {
  auto [m, digits] = detail::split_modulus(a.get("modulus.mid"));
  if (digits.size() < m + 1) throw FormatError("mid modulus too short");
  digits.resize(m + 1);
  try {
    return BinaryField(std::move(digits));
  } catch (const BadParameters& e) {
    throw FormatError(std::string("invalid mid modulus: ") + e.what());
  }
}

inline TowerField get_tower(const ArtifactFile& a) {
  BinaryField f = get_mid_field(a);
  auto [u, digits] = detail::split_modulus(a.get("modulus.top"));
  const auto m = static_cast<std::size_t>(f.degree());
  if (digits.size() < (u + 1) * m) throw FormatError("top modulus too short");
  std::vector<MidElement> coeffs;
  for (std::size_t i = 0; i <= u; ++i)
    coeffs.push_back(f.from_digits(std::span<const std::uint8_t>(digits).subspan(i * m, m)));
  try {
    return TowerField(std::move(f), std::move(coeffs));
  } catch (const BadParameters& e) {
    throw FormatError(std::string("invalid top modulus: ") + e.what());
  }
}

}  // namespace rankcrypt
