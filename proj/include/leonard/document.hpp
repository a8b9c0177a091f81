#ifndef LEONARD_DOCUMENT_HPP
#define LEONARD_DOCUMENT_HPP

// Text form of parameter arrays.
//
//   # comment
//   field: Q
//   d: 3
//   theta: -3/2 -1/2 1/2 3/2
//   theta_star: -3/2 -1/2 1/2 3/2
//   varphi: -3/2 -2 -3/2
//   phi: 3/2 2 3/2
//
// Several documents in one stream are separated by a line "---". The field
// line is optional (default Q); every other key is required, and unknown or
// repeated keys are errors.

#include <array>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "leonard/error.hpp"
#include "leonard/field.hpp"
#include "leonard/parray.hpp"

namespace leonard {

namespace detail {

struct RawDocument {
  std::size_t first_line = 0;
  std::optional<std::pair<std::string, std::size_t>> field;  // text, line
  std::optional<std::pair<std::string, std::size_t>> d;
  // theta, theta_star, varphi, phi: tokens with (line, column)
  std::array<std::optional<std::vector<std::tuple<std::string, std::size_t, std::size_t>>>, 4> seqs;
  bool empty = true;
};

inline constexpr std::array<std::string_view, 4> seq_keys = {"theta", "theta_star", "varphi", "phi"};

inline ParameterArray build_document(const RawDocument& raw, const std::optional<Field>& field_override) {
  Field f = Field::rationals();
  if (raw.field) {
    try {
      f = Field::parse(raw.field->first);
    } catch (const Error& e) {
      throw ParseError(e.what(), raw.field->second, 1);
    }
  }
  if (field_override) f = *field_override;
  if (!raw.d) throw ParseError("missing key 'd'", raw.first_line, 1);
  int d = 0;
  try {
    std::size_t used = 0;
    d = std::stoi(raw.d->first, &used);
    if (used != raw.d->first.size() || d < 1) throw std::invalid_argument("d");
  } catch (const std::logic_error&) {
    throw ParseError("d must be a positive integer", raw.d->second, 4);
  }
  std::array<std::vector<Scalar>, 4> vals;
  for (std::size_t k = 0; k < 4; ++k) {
    if (!raw.seqs[k]) throw ParseError("missing key '" + std::string(seq_keys[k]) + "'", raw.first_line, 1);
    std::size_t want = k < 2 ? static_cast<std::size_t>(d) + 1 : static_cast<std::size_t>(d);
    if (raw.seqs[k]->size() != want) {
      std::size_t line = raw.seqs[k]->empty() ? raw.first_line : std::get<1>(raw.seqs[k]->front());
      throw ParseError(std::string(seq_keys[k]) + " has " + std::to_string(raw.seqs[k]->size()) +
                           " entries, expected " + std::to_string(want),
                       line, 1);
    }
    for (const auto& [tok, line, col] : *raw.seqs[k]) {
      try {
        vals[k].push_back(f.parse_element(tok));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), line, col + (e.column() ? e.column() - 1 : 0));
      } catch (const Error& e) {
        throw ParseError(e.what(), line, col);
      }
    }
  }
  return ParameterArray(f, vals[0], vals[1], vals[2], vals[3]);
}

}  // namespace detail

/// Parses every document in `text`. `field_override`, when set, replaces
/// the declared field and the entries are read in it instead.
inline std::vector<ParameterArray> parse_documents(std::string_view text,
                                                   const std::optional<Field>& field_override = std::nullopt) {
  std::vector<ParameterArray> out;
  detail::RawDocument raw;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  auto flush = [&] {
    if (!raw.empty) out.push_back(detail::build_document(raw, field_override));
    raw = detail::RawDocument{};
  };
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    std::size_t hash = line.find('#');
    std::string_view body = line.substr(0, hash);
    std::size_t first = body.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      std::size_t last = body.find_last_not_of(" \t");
      std::string_view trimmed = body.substr(first, last - first + 1);
      if (trimmed == "---") {
        flush();
      } else {
        if (raw.empty) {
          raw.first_line = lineno;
          raw.empty = false;
        }
        std::size_t colon = trimmed.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected 'key: values'", lineno, first + 1);
        std::string key(trimmed.substr(0, colon));
        while (!key.empty() && (key.back() == ' ' || key.back() == '\t')) key.pop_back();
        std::size_t vstart = first + colon + 1;
        std::vector<std::tuple<std::string, std::size_t, std::size_t>> toks;
        std::size_t c = vstart;
        while (c < first + trimmed.size()) {
          while (c < body.size() && (body[c] == ' ' || body[c] == '\t')) ++c;
          if (c >= first + trimmed.size()) break;
          std::size_t e = c;
          while (e < body.size() && body[e] != ' ' && body[e] != '\t') ++e;
          toks.emplace_back(std::string(body.substr(c, e - c)), lineno, c + 1);
          c = e;
        }
        auto single = [&](std::optional<std::pair<std::string, std::size_t>>& slot) {
          if (slot) throw ParseError("repeated key '" + key + "'", lineno, first + 1);
          if (toks.size() != 1) throw ParseError("key '" + key + "' takes one value", lineno, vstart + 1);
          slot = std::make_pair(std::get<0>(toks.front()), lineno);
        };
        if (key == "field") {
          single(raw.field);
        } else if (key == "d") {
          single(raw.d);
        } else {
          bool known = false;
          for (std::size_t k = 0; k < 4; ++k) {
            if (key != detail::seq_keys[k]) continue;
            known = true;
            if (raw.seqs[k]) throw ParseError("repeated key '" + key + "'", lineno, first + 1);
            raw.seqs[k] = std::move(toks);
          }
          if (!known) throw ParseError("unknown key '" + key + "'", lineno, first + 1);
        }
      }
    }
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  flush();
  return out;
}

/// Exactly one document.
inline ParameterArray parse_document(std::string_view text, const std::optional<Field>& field_override = std::nullopt) {
  auto docs = parse_documents(text, field_override);
  if (docs.size() != 1) throw ParseError("expected one document, found " + std::to_string(docs.size()));
  return docs.front();
}

/// Canonical text; `comment` lines are emitted first, each prefixed "# ".
inline std::string print_document(const ParameterArray& pa, const std::vector<std::string>& comments = {}) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  os << "field: " << pa.field().name() << "\n";
  os << "d: " << pa.d() << "\n";
  auto seq = [&](std::string_view key, const std::vector<Scalar>& v) {
    os << key << ":";
    for (const Scalar& x : v) os << " " << x.to_string();
    os << "\n";
  };
  seq("theta", pa.thetas());
  seq("theta_star", pa.theta_stars());
  seq("varphi", pa.varphis());
  seq("phi", pa.phis());
  return os.str();
}

}  // namespace leonard

#endif  // LEONARD_DOCUMENT_HPP
