#pragma once

// Canonical text form of action automorphisms:
//   N=<word for N(U)>;PL=<word for N(P)>,<word for N(L)>;sigma=<cycles>;g=g0,g1,g2,g3
// or, when no parametrization is attached,
//   N=...;PL=...;nu=<28 comma-separated chord indices>

#include <charconv>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cubedance/action.hpp"

namespace cubedance {

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                     : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline int parse_int(std::string_view text, std::string_view what) {
  int value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw DecodeError("malformed " + std::string(what) + ": \"" + std::string(text) + "\"");
  }
  return value;
}

}  // namespace detail

inline std::string encode_generator_images(const Monoid& m, const MonoidAutomorphism& n) {
  return "N=" + m.word(n.image(Generator::kU)) + ";PL=" + m.word(n.image(Generator::kP)) + "," +
         m.word(n.image(Generator::kL));
}

inline std::string encode_aut(const Monoid& m, const ActionAutomorphism& a) {
  std::optional<ActionParameters> params = a.params;
  if (!params) params = derive_parameters(m, a.n, a.nu);
  std::string out = encode_generator_images(m, a.n);
  if (params) {
    out += ";sigma=" + params->sigma.to_cycle_notation() + ";g=";
    for (std::size_t i = 0; i < 4; ++i) {
      if (i) out += ',';
      out += std::to_string(params->offsets.g[i]);
    }
  } else {
    out += ";nu=";
    for (std::size_t i = 0; i < kChordCount; ++i) {
      if (i) out += ',';
      out += std::to_string(a.nu[i]);
    }
  }
  return out;
}

inline MonoidAutomorphism decode_generator_images(const Monoid& m, std::string_view u_word,
                                                  std::string_view pl_words) {
  const auto pl = detail::split(pl_words, ',');
  if (pl.size() != 2) throw DecodeError("PL expects two words, got \"" + std::string(pl_words) + "\"");
  std::array<Monoid::Index, 3> images{};
  const std::array<std::string_view, 3> words = {u_word, pl[0], pl[1]};
  for (std::size_t i = 0; i < 3; ++i) {
    if (words[i].empty()) throw DecodeError("empty generator image");
    try {
      images[i] = m.evaluate(words[i]);
    } catch (const std::invalid_argument& e) {
      throw DecodeError("malformed word \"" + std::string(words[i]) + "\": " + e.what());
    }
  }
  auto n = extend_generator_images(m, images);
  if (!n) throw DecodeError("generator images do not define a monoid automorphism");
  return std::move(*n);
}

inline ActionAutomorphism decode_aut(const Monoid& m, std::string_view text) {
  std::map<std::string, std::string, std::less<>> fields;
  for (std::string_view part : detail::split(text, ';')) {
    const auto eq = part.find('=');
    if (eq == std::string_view::npos) {
      throw DecodeError("malformed field \"" + std::string(part) + "\"");
    }
    const std::string key(part.substr(0, eq));
    if (key != "N" && key != "PL" && key != "sigma" && key != "g" && key != "nu") {
      throw DecodeError("unknown field \"" + key + "\"");
    }
    if (!fields.emplace(key, std::string(part.substr(eq + 1))).second) {
      throw DecodeError("duplicate field \"" + key + "\"");
    }
  }
  if (!fields.count("N") || !fields.count("PL")) throw DecodeError("missing N or PL field");

  MonoidAutomorphism n = decode_generator_images(m, fields["N"], fields["PL"]);

  if (fields.count("nu")) {
    if (fields.count("sigma") || fields.count("g")) {
      throw DecodeError("nu cannot be combined with sigma or g");
    }
    const auto entries = detail::split(fields["nu"], ',');
    if (entries.size() != kChordCount) throw DecodeError("nu expects 28 entries");
    ChordPermutation nu{};
    for (std::size_t i = 0; i < kChordCount; ++i) {
      const int v = detail::parse_int(entries[i], "nu entry");
      if (v < 0 || v >= static_cast<int>(kChordCount)) throw DecodeError("nu entry out of range");
      nu[i] = static_cast<std::uint8_t>(v);
    }
    if (!verify_action_automorphism(m, n, nu)) throw DecodeError("not an automorphism");
    auto params = derive_parameters(m, n, nu);
    return ActionAutomorphism{std::move(n), nu, std::move(params)};
  }

  if (!fields.count("sigma") || !fields.count("g")) throw DecodeError("missing sigma or g field");
  const auto sigma = AugPermutation::from_cycle_notation(fields["sigma"]);
  if (!sigma) throw DecodeError("malformed sigma \"" + fields["sigma"] + "\"");
  const auto gs = detail::split(fields["g"], ',');
  if (gs.size() != 4) throw DecodeError("g expects four offsets");
  TripleOffsets offsets;
  for (std::size_t i = 0; i < 4; ++i) {
    const int v = detail::parse_int(gs[i], "offset");
    if (v < 0 || v > 2) throw DecodeError("offset out of range: " + std::string(gs[i]));
    offsets.g[i] = static_cast<std::uint8_t>(v);
  }
  auto built = build_candidate(m, n, *sigma, offsets);
  if (auto* rejection = std::get_if<Rejection>(&built)) throw DecodeError(rejection->reason);
  return std::get<ActionAutomorphism>(std::move(built));
}

}  // namespace cubedance
