#pragma once

// Instance file formats. Both are line-oriented key/value documents with a
// versioned header; rationals are written as <num>/<den> so files round-trip
// bit-identically. Full grammar in the README.

#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "rebp/ck.hpp"
#include "rebp/error.hpp"
#include "rebp/model.hpp"

namespace rebp {

inline std::string file_rational(const Rational& r) {
  return num(r).str() + "/" + den(r).str();
}

namespace detail {

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline void check_header(const std::vector<std::string>& tok, const std::string& kind) {
  require(!tok.empty(), Errc::ParseError, "empty file");
  require(tok[0] == kind, Errc::ParseError,
          "expected '" + kind + "' header, found '" + tok[0] + "'");
  require(tok.size() == 2, Errc::ParseError, "header must be '" + kind + " <version>'");
  require(tok[1] == "1", Errc::VersionMismatch,
          "unsupported " + kind + " format version " + tok[1]);
}

// Reads all nonblank lines, tokenized.
inline std::vector<std::vector<std::string>> read_lines(std::istream& in) {
  std::vector<std::vector<std::string>> lines;
  std::string raw;
  while (std::getline(in, raw)) {
    auto tok = split_ws(raw);
    if (!tok.empty()) lines.push_back(std::move(tok));
  }
  return lines;
}

}  // namespace detail

inline void write_rebp(const RebpInstance& inst, std::ostream& out) {
  out << "rebp 1\n";
  out << "bins " << inst.bin_count << "\n";
  out << "capacity " << file_rational(inst.capacity) << "\n";
  out << "budget " << file_rational(inst.budget) << "\n";
  out << "rates";
  for (const auto& c : inst.rates) out << " " << file_rational(c);
  out << "\n";
  for (const auto& it : inst.items)
    out << "item " << file_rational(it.nominal) << " " << file_rational(it.deviation) << "\n";
}

inline RebpInstance read_rebp(std::istream& in) {
  auto lines = detail::read_lines(in);
  require(!lines.empty(), Errc::ParseError, "empty file");
  detail::check_header(lines[0], "rebp");
  RebpInstance inst;
  bool saw_bins = false, saw_capacity = false, saw_budget = false, saw_rates = false;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& tok = lines[k];
    const std::string& key = tok[0];
    if (key == "bins") {
      require(!saw_bins, Errc::ParseError, "duplicate key 'bins'");
      require(tok.size() == 2, Errc::ParseError, "'bins' takes one value");
      inst.bin_count = static_cast<int>(
          to_int64(rational_floor(parse_rational(tok[1])), Errc::ParseError, "bin count"));
      saw_bins = true;
    } else if (key == "capacity") {
      require(!saw_capacity, Errc::ParseError, "duplicate key 'capacity'");
      require(tok.size() == 2, Errc::ParseError, "'capacity' takes one value");
      inst.capacity = parse_rational(tok[1]);
      saw_capacity = true;
    } else if (key == "budget") {
      require(!saw_budget, Errc::ParseError, "duplicate key 'budget'");
      require(tok.size() == 2, Errc::ParseError, "'budget' takes one value");
      inst.budget = parse_rational(tok[1]);
      saw_budget = true;
    } else if (key == "rates") {
      require(!saw_rates, Errc::ParseError, "duplicate key 'rates'");
      for (std::size_t t = 1; t < tok.size(); ++t) inst.rates.push_back(parse_rational(tok[t]));
      saw_rates = true;
    } else if (key == "item") {
      require(tok.size() == 3, Errc::ParseError, "'item' takes nominal and deviation");
      inst.items.push_back({parse_rational(tok[1]), parse_rational(tok[2])});
    } else {
      fail(Errc::ParseError, "unknown key '" + key + "'");
    }
  }
  require(saw_bins && saw_capacity && saw_budget && saw_rates, Errc::ParseError,
          "missing one of: bins, capacity, budget, rates");
  require_valid(inst);
  return inst;
}

inline void write_ck(const CkInstance& inst, std::ostream& out) {
  out << "ck 1\n";
  out << "budget " << file_rational(inst.budget()) << "\n";
  for (const auto& it : inst.items())
    out << "item " << file_rational(it.gamma) << " " << file_rational(it.beta) << " "
        << file_rational(it.bound) << "\n";
}

inline CkInstance read_ck(std::istream& in) {
  auto lines = detail::read_lines(in);
  require(!lines.empty(), Errc::ParseError, "empty file");
  detail::check_header(lines[0], "ck");
  Rational budget;
  bool saw_budget = false;
  std::vector<CkItem> items;
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const auto& tok = lines[k];
    const std::string& key = tok[0];
    if (key == "budget") {
      require(!saw_budget, Errc::ParseError, "duplicate key 'budget'");
      require(tok.size() == 2, Errc::ParseError, "'budget' takes one value");
      budget = parse_rational(tok[1]);
      saw_budget = true;
    } else if (key == "item") {
      require(tok.size() == 4, Errc::ParseError, "'item' takes gamma, beta, bound");
      items.push_back({parse_rational(tok[1]), parse_rational(tok[2]), parse_rational(tok[3])});
    } else {
      fail(Errc::ParseError, "unknown key '" + key + "'");
    }
  }
  require(saw_budget, Errc::ParseError, "missing key 'budget'");
  return CkInstance::make(std::move(items), std::move(budget));
}

}  // namespace rebp
