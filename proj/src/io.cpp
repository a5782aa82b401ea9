#include "pgroup/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace pgroup {

namespace {

struct Line {
  int number;
  std::vector<std::string_view> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    Line line{number, {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
      std::size_t j = i;
      while (j < raw.size() && !std::isspace(static_cast<unsigned char>(raw[j]))) ++j;
      if (j > i) line.tokens.push_back(raw.substr(i, j - i));
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return lines;
}

long long to_int(std::string_view token, int line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw ParseError(line, "expected an integer, got '" + std::string(token) + "'");
  return value;
}

struct Parsed {
  int p;
  int dim_v;
  int dim_w;
  Mat pairs;
  bool has_cocycle = false;
  Mat lower;
};

Parsed parse_common(std::string_view text, bool allow_cocycle) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.empty()) throw ParseError(0, "empty input");
  const Line& header = lines.front();
  if (header.tokens.size() != 3) throw ParseError(header.number, "header must be 'p dimV dimW'");
  const long long p = to_int(header.tokens[0], header.number);
  const long long dim_v = to_int(header.tokens[1], header.number);
  const long long dim_w = to_int(header.tokens[2], header.number);
  if (p < 2 || p > 32767 || !is_prime(p)) throw ParseError(header.number, "p must be a prime");
  if (dim_v < 0 || dim_v > kMaxDim || dim_w < 0 || dim_w > kMaxDim)
    throw ParseError(header.number, "dimensions out of range");

  Parsed out{static_cast<int>(p), static_cast<int>(dim_v), static_cast<int>(dim_w),
             Mat::Zero(pair_count(static_cast<int>(dim_v)), dim_w), false,
             Mat::Zero(dim_v * dim_v, dim_w)};
  const PrimeField F(out.p);
  std::set<std::pair<int, int>> seen_pairs;
  std::set<std::pair<int, int>> seen_cocycle;
  bool in_cocycle = false;

  for (std::size_t k = 1; k < lines.size(); ++k) {
    const Line& line = lines[k];
    if (line.tokens.size() == 1 && line.tokens[0] == "cocycle") {
      if (!allow_cocycle) throw ParseError(line.number, "cocycle section not allowed in a form file");
      if (in_cocycle) throw ParseError(line.number, "duplicate cocycle section");
      in_cocycle = true;
      out.has_cocycle = true;
      continue;
    }
    if (line.tokens.size() != static_cast<std::size_t>(2 + out.dim_w))
      throw ParseError(line.number, "expected 'i j' followed by " + std::to_string(out.dim_w) + " entries");
    const long long i = to_int(line.tokens[0], line.number);
    const long long j = to_int(line.tokens[1], line.number);
    if (i < 0 || j < 0 || i >= out.dim_v || j >= out.dim_v) throw ParseError(line.number, "index out of range");
    Vec w(out.dim_w);
    for (int t = 0; t < out.dim_w; ++t) w(t) = F.reduce(to_int(line.tokens[2 + t], line.number));
    const auto key = std::make_pair(static_cast<int>(i), static_cast<int>(j));
    if (!in_cocycle) {
      if (i >= j) throw ParseError(line.number, "form pairs need i < j");
      if (!seen_pairs.insert(key).second) throw ParseError(line.number, "duplicate pair");
      out.pairs.row(pair_index(out.dim_v, key.first, key.second)) = w.transpose();
    } else {
      if (i < j) throw ParseError(line.number, "cocycle entries need i >= j");
      if (!seen_cocycle.insert(key).second) throw ParseError(line.number, "duplicate cocycle entry");
      out.lower.row(key.first * out.dim_v + key.second) = w.transpose();
    }
  }
  return out;
}

void write_rows(std::ostringstream& os, int i, int j, const Vec& w) {
  os << i << ' ' << j;
  for (int t = 0; t < w.size(); ++t) os << ' ' << w(t);
  os << '\n';
}

}  // namespace

std::string write_form(const AlternatingMap& B) {
  std::ostringstream os;
  os << B.field().p() << ' ' << B.dim_v() << ' ' << B.dim_w() << '\n';
  for (int i = 0; i < B.dim_v(); ++i)
    for (int j = i + 1; j < B.dim_v(); ++j) {
      const Vec w = B.value(i, j);
      if (!w.isZero()) write_rows(os, i, j, w);
    }
  return os.str();
}

AlternatingMap parse_form(std::string_view text) {
  Parsed parsed = parse_common(text, false);
  return AlternatingMap(PrimeField(parsed.p), parsed.dim_v, parsed.dim_w, parsed.pairs);
}

std::string write_group(const GroupModel& G) {
  std::string out = write_form(G.form());
  if (G.has_default_cocycle()) return out;
  std::ostringstream os;
  os << "cocycle\n";
  const int n = G.dim_v();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) {
      const Vec w = G.cocycle().row(i * n + j).transpose();
      if (!w.isZero()) write_rows(os, i, j, w);
    }
  return out + os.str();
}

GroupModel parse_group(std::string_view text) {
  Parsed parsed = parse_common(text, true);
  AlternatingMap form(PrimeField(parsed.p), parsed.dim_v, parsed.dim_w, parsed.pairs);
  if (!parsed.has_cocycle) return GroupModel(std::move(form));
  return GroupModel(std::move(form), parsed.lower);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::string format_matrix(const Mat& m) {
  std::ostringstream os;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) os << (c ? " " : "") << m(r, c);
    os << '\n';
  }
  return os.str();
}

}  // namespace pgroup
