// Copyright 2026 The fermicorr Authors
// SPDX-License-Identifier: Apache-2.0

#include <fermicorr/errors.hpp>
#include <fermicorr/integrals.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>

namespace fermicorr {

namespace {

std::size_t pair_index(int p, int q) noexcept {
  if (p < q) std::swap(p, q);
  return static_cast<std::size_t>(p) * (p + 1) / 2 + q;
}

constexpr double kDuplicateTol = 1e-10;

}  // namespace

IntegralTable::IntegralTable(int n_spatial, int n_electrons, int ms2)
    : n_spatial_(n_spatial), n_electrons_(n_electrons), ms2_(ms2) {
  if (n_spatial < 1) throw DomainError("n_spatial must be >= 1");
  if (n_electrons < 0 || n_electrons > 2 * n_spatial)
    throw DomainError("n_electrons must lie in [0, 2*n_spatial]");
  if (std::abs(ms2) > n_electrons || (n_electrons + ms2) % 2 != 0)
    throw DomainError("MS2 inconsistent with NELEC");
  if (n_up() > n_spatial || n_down() > n_spatial)
    throw DomainError("spin occupation exceeds n_spatial");
  h_ = Eigen::MatrixXd::Zero(n_spatial, n_spatial);
  eri_.assign(eri_size(n_spatial), 0.0);
}

void IntegralTable::set_h(int p, int q, double v) {
  h_(p, q) = v;
  h_(q, p) = v;
}

void IntegralTable::set_eri(int p, int q, int r, int s, double v) {
  eri_[eri_index(p, q, r, s)] = v;
}

std::size_t IntegralTable::eri_index(int p, int q, int r, int s) noexcept {
  return pair_index(static_cast<int>(pair_index(p, q)), static_cast<int>(pair_index(r, s)));
}

std::size_t IntegralTable::eri_size(int n_spatial) noexcept {
  const std::size_t npair = static_cast<std::size_t>(n_spatial) * (n_spatial + 1) / 2;
  return npair * (npair + 1) / 2;
}

// ---------------------------------------------------------------------------
// FCIDUMP reader

namespace {

bool parse_double(std::string token, double& out) {
  std::replace_if(token.begin(), token.end(), [](char c) { return c == 'D' || c == 'd'; }, 'E');
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0' && std::isfinite(out);
}

bool parse_int(const std::string& token, long& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtol(begin, &end, 10);
  return end != begin && *end == '\0';
}

std::string upper(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}

struct Header {
  std::map<std::string, std::vector<std::string>> values;
  int end_line = 0;
};

// Consumes lines up to and including the namelist terminator.
Header read_header(std::istream& in, int& line_no) {
  Header header;
  std::string line;
  std::string body;
  bool started = false;
  bool finished = false;
  while (!finished && std::getline(in, line)) {
    ++line_no;
    std::string text = line;
    if (!started) {
      const auto first = text.find_first_not_of(" \t\r");
      if (first == std::string::npos) continue;
      if (upper(text.substr(first, 4)) != "&FCI")
        throw ParseError("expected '&FCI' namelist header", line_no);
      text = text.substr(first + 4);
      started = true;
    }
    const std::string up = upper(text);
    auto term = up.find("&END");
    std::size_t cut = term;
    if (term == std::string::npos) {
      term = up.find('/');
      cut = term;
    }
    if (term != std::string::npos) {
      text = text.substr(0, cut);
      finished = true;
    }
    body += text;
    body += ' ';
  }
  if (!started) throw ParseError("missing '&FCI' namelist header", line_no);
  if (!finished) throw ParseError("unterminated namelist header (no '&END' or '/')", line_no);
  header.end_line = line_no;

  for (auto& c : body)
    if (c == ',' || c == '\t' || c == '\r') c = ' ';
  std::istringstream tokens(body);
  std::string token;
  std::string key;
  // "KEY=VALUE", "KEY= VALUE", "KEY =VALUE" and trailing list elements.
  std::vector<std::string> raw;
  while (tokens >> token) raw.push_back(token);
  for (std::size_t t = 0; t < raw.size(); ++t) {
    std::string tok = raw[t];
    const auto eq = tok.find('=');
    if (eq == std::string::npos) {
      if (t + 1 < raw.size() && raw[t + 1].front() == '=') {
        key = upper(tok);
        header.values[key];
        std::string rest = raw[++t].substr(1);
        if (!rest.empty()) header.values[key].push_back(rest);
        continue;
      }
      if (key.empty()) throw ParseError("namelist value '" + tok + "' without key", header.end_line);
      header.values[key].push_back(tok);
      continue;
    }
    key = upper(tok.substr(0, eq));
    if (key.empty()) throw ParseError("namelist entry '" + tok + "' without key", header.end_line);
    header.values[key];
    const std::string rest = tok.substr(eq + 1);
    if (!rest.empty()) header.values[key].push_back(rest);
  }
  return header;
}

int header_int(const Header& header, const std::string& key, std::optional<int> fallback) {
  const auto it = header.values.find(key);
  if (it == header.values.end() || it->second.empty()) {
    if (fallback) return *fallback;
    throw ParseError("namelist is missing " + key, header.end_line);
  }
  long v = 0;
  if (!parse_int(it->second.front(), v))
    throw ParseError("non-integer value for " + key + ": '" + it->second.front() + "'",
                     header.end_line);
  return static_cast<int>(v);
}

}  // namespace

IntegralTable parse_fcidump(std::istream& in, ParseReport* report) {
  int line_no = 0;
  const Header header = read_header(in, line_no);
  const int norb = header_int(header, "NORB", std::nullopt);
  const int nelec = header_int(header, "NELEC", std::nullopt);
  const int ms2 = header_int(header, "MS2", 0);

  IntegralTable table;
  try {
    table = IntegralTable(norb, nelec, ms2);
  } catch (const DomainError& e) {
    throw ParseError(std::string("invalid header: ") + e.what(), header.end_line);
  }

  std::vector<char> eri_seen(IntegralTable::eri_size(norb), 0);
  std::vector<char> h_seen(static_cast<std::size_t>(norb) * norb, 0);
  bool core_seen = false;
  auto conflict = [&](double old_value, double new_value, const std::string& what) {
    if (report && std::abs(old_value - new_value) > kDuplicateTol) {
      std::ostringstream msg;
      msg << "line " << line_no << ": " << what << " redefined (" << std::setprecision(17)
          << old_value << " -> " << new_value << ")";
      report->warnings.push_back(msg.str());
    }
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    std::string t;
    while (fields >> t) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok.size() != 5)
      throw ParseError("expected 'value i j k l', got " + std::to_string(tok.size()) + " fields",
                       line_no);
    double value = 0.0;
    if (!parse_double(tok[0], value)) throw ParseError("non-numeric value '" + tok[0] + "'", line_no);
    long idx[4];
    for (int a = 0; a < 4; ++a) {
      if (!parse_int(tok[a + 1], idx[a]))
        throw ParseError("non-integer index '" + tok[a + 1] + "'", line_no);
      if (idx[a] < 0 || idx[a] > norb)
        throw ParseError("index " + std::to_string(idx[a]) + " outside [0, " +
                             std::to_string(norb) + "]",
                         line_no);
    }
    const int i = static_cast<int>(idx[0]) - 1, j = static_cast<int>(idx[1]) - 1;
    const int k = static_cast<int>(idx[2]) - 1, l = static_cast<int>(idx[3]) - 1;
    const bool nz[4] = {idx[0] != 0, idx[1] != 0, idx[2] != 0, idx[3] != 0};

    if (nz[0] && nz[1] && nz[2] && nz[3]) {
      const auto c = IntegralTable::eri_index(i, j, k, l);
      if (eri_seen[c]) conflict(table.eri(i, j, k, l), value, "two-electron integral");
      eri_seen[c] = 1;
      table.set_eri(i, j, k, l, value);
    } else if (nz[0] && nz[1] && !nz[2] && !nz[3]) {
      const auto c = static_cast<std::size_t>(std::max(i, j)) * norb + std::min(i, j);
      if (h_seen[c]) conflict(table.h(i, j), value, "one-electron integral");
      h_seen[c] = 1;
      table.set_h(i, j, value);
    } else if (!nz[0] && !nz[1] && !nz[2] && !nz[3]) {
      if (core_seen) conflict(table.e_core(), value, "core energy");
      core_seen = true;
      table.set_e_core(value);
    } else if (nz[0] && !nz[1] && !nz[2] && !nz[3]) {
      // orbital energy record
    } else {
      throw ParseError("unsupported index pattern", line_no);
    }
  }
  return table;
}

IntegralTable parse_fcidump_file(const std::filesystem::path& path, ParseReport* report) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  try {
    return parse_fcidump(in, report);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), e.line());
  }
}

void write_fcidump(std::ostream& out, const IntegralTable& t) {
  const int n = t.n_spatial();
  out << " &FCI NORB=" << n << ",NELEC=" << t.n_electrons() << ",MS2=" << t.ms2() << ",\n";
  out << "  ORBSYM=";
  for (int p = 0; p < n; ++p) out << "1,";
  out << "\n  ISYM=1,\n &END\n";
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out << std::scientific << std::setprecision(17);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s <= r; ++s) {
          if (pair_index(r, s) > pair_index(p, q)) continue;
          const double v = t.eri(p, q, r, s);
          if (v != 0.0)
            out << std::setw(26) << v << ' ' << p + 1 << ' ' << q + 1 << ' ' << r + 1 << ' '
                << s + 1 << '\n';
        }
  for (int p = 0; p < n; ++p)
    for (int q = 0; q <= p; ++q)
      if (t.h(p, q) != 0.0)
        out << std::setw(26) << t.h(p, q) << ' ' << p + 1 << ' ' << q + 1 << " 0 0\n";
  out << std::setw(26) << t.e_core() << " 0 0 0 0\n";
  out.flags(old_flags);
  out.precision(old_prec);
}

// ---------------------------------------------------------------------------
// Model tables

IntegralTable model_table(ModelKind kind, int n_spatial, std::uint64_t seed,
                          const ModelParams& params) {
  if (n_spatial < 1) throw DomainError("n_spatial must be >= 1");
  const int nelec = params.n_electrons >= 0 ? params.n_electrons : n_spatial;
  const int ms2 = params.ms2 >= 0 ? params.ms2 : nelec % 2;
  IntegralTable t(n_spatial, nelec, ms2);
  switch (kind) {
    case ModelKind::diagonal:
      for (int p = 0; p < n_spatial; ++p) t.set_h(p, p, static_cast<double>(p));
      break;
    case ModelKind::hubbard_like:
      for (int p = 0; p + 1 < n_spatial; ++p) t.set_h(p, p + 1, -params.hopping);
      for (int p = 0; p < n_spatial; ++p) t.set_eri(p, p, p, p, params.onsite);
      break;
    case ModelKind::random_symmetric: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q <= p; ++q) t.set_h(p, q, dist(rng));
      for (int p = 0; p < n_spatial; ++p)
        for (int q = 0; q <= p; ++q)
          for (int r = 0; r <= p; ++r)
            for (int s = 0; s <= r; ++s)
              if (pair_index(r, s) <= pair_index(p, q)) t.set_eri(p, q, r, s, dist(rng));
      break;
    }
  }
  return t;
}

}  // namespace fermicorr
