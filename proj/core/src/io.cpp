#include "louvain/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include "louvain/errors.hpp"

namespace louvain {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

std::uint64_t parse_uint(std::string_view tok, std::size_t line) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError("expected an unsigned integer, got '" + std::string(tok) + "'", line);
  return v;
}

double parse_weight(std::string_view tok, std::size_t line) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size())
    throw ParseError("expected a number, got '" + std::string(tok) + "'", line);
  if (v < 0.0) throw ParseError("negative edge weight", line);
  return v;
}

EdgeList load_matrix_market(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) throw ParseError("empty file", 1);
  ++lineno;
  auto banner = split_ws(line);
  if (banner.size() < 4 || lower(banner[0]) != "%%matrixmarket" || lower(banner[1]) != "matrix")
    throw ParseError("missing %%MatrixMarket matrix banner", lineno);
  if (lower(banner[2]) != "coordinate")
    throw ParseError("only coordinate format is supported", lineno);
  const std::string field = lower(banner[3]);
  if (field != "real" && field != "integer" && field != "pattern")
    throw ParseError("unsupported field '" + field + "'", lineno);
  const std::string symmetry = banner.size() > 4 ? lower(banner[4]) : "general";
  if (symmetry != "general" && symmetry != "symmetric")
    throw ParseError("unsupported symmetry '" + symmetry + "'", lineno);

  // Size line, after any % comments.
  std::uint64_t rows = 0, cols = 0, entries = 0;
  for (;;) {
    if (!std::getline(in, line)) throw ParseError("missing size line", lineno);
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    if (tok.size() != 3) throw ParseError("size line must be 'rows cols entries'", lineno);
    rows = parse_uint(tok[0], lineno);
    cols = parse_uint(tok[1], lineno);
    entries = parse_uint(tok[2], lineno);
    break;
  }
  if (rows != cols) throw ParseError("adjacency matrix must be square", lineno);
  if (rows >= kInvalidVertex) throw ParseError("vertex count out of range", lineno);

  EdgeList el;
  el.num_vertices = static_cast<VertexId>(rows);
  el.triples.reserve(entries);
  std::uint64_t seen = 0;
  while (seen < entries) {
    if (!std::getline(in, line)) throw ParseError("unexpected end of file", lineno);
    ++lineno;
    if (!line.empty() && line[0] == '%') continue;
    auto tok = split_ws(line);
    if (tok.empty()) continue;
    const bool want_weight = field != "pattern";
    if (tok.size() < 2 || tok.size() > 3 || (!want_weight && tok.size() != 2))
      throw ParseError("entry must be 'row col" + std::string(want_weight ? " [value]'" : "'"), lineno);
    const std::uint64_t r = parse_uint(tok[0], lineno);
    const std::uint64_t c = parse_uint(tok[1], lineno);
    if (r < 1 || r > rows || c < 1 || c > cols)
      throw ParseError("entry id out of declared bounds", lineno);
    const double w = tok.size() == 3 ? parse_weight(tok[2], lineno) : 1.0;
    el.triples.push_back(
        {static_cast<VertexId>(r - 1), static_cast<VertexId>(c - 1), w});
    ++seen;
  }
  return el;
}

EdgeList load_tsv(std::istream& in) {
  EdgeList el;
  std::string line;
  std::size_t lineno = 0;
  VertexId max_id = 0;
  bool any = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = split_ws(line);
    if (tok.empty() || tok[0].front() == '#') continue;
    if (tok.size() < 2 || tok.size() > 3)
      throw ParseError("line must be 'src dst [weight]'", lineno);
    const std::uint64_t u = parse_uint(tok[0], lineno);
    const std::uint64_t v = parse_uint(tok[1], lineno);
    if (u >= kInvalidVertex || v >= kInvalidVertex)
      throw ParseError("vertex id out of range", lineno);
    const double w = tok.size() == 3 ? parse_weight(tok[2], lineno) : 1.0;
    el.triples.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), w});
    max_id = std::max({max_id, static_cast<VertexId>(u), static_cast<VertexId>(v)});
    any = true;
  }
  el.num_vertices = any ? max_id + 1 : 0;
  return el;
}

void write_weight(std::string& out, double w) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, w);  // shortest round-trip form
  out.append(buf, p);
}

}  // namespace

EdgeListFormat guess_format(const std::filesystem::path& path) {
  return lower(path.extension().string()) == ".mtx" ? EdgeListFormat::matrix_market
                                                    : EdgeListFormat::whitespace_tsv;
}

EdgeList load_edge_list(const std::filesystem::path& path, EdgeListFormat format) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return format == EdgeListFormat::matrix_market ? load_matrix_market(in) : load_tsv(in);
}

void save_matrix_market(const std::filesystem::path& path, const EdgeList& edges) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  std::string body = "%%MatrixMarket matrix coordinate real general\n";
  body += std::to_string(edges.num_vertices) + " " + std::to_string(edges.num_vertices) + " " +
          std::to_string(edges.triples.size()) + "\n";
  for (const EdgeTriple& t : edges.triples) {
    body += std::to_string(t.source + 1) + " " + std::to_string(t.target + 1) + " ";
    write_weight(body, t.weight);
    body += '\n';
  }
  out << body;
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

void save_whitespace_tsv(const std::filesystem::path& path, const EdgeList& edges) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  std::string body = "# vertices: " + std::to_string(edges.num_vertices) + "\n";
  for (const EdgeTriple& t : edges.triples) {
    body += std::to_string(t.source) + "\t" + std::to_string(t.target) + "\t";
    write_weight(body, t.weight);
    body += '\n';
  }
  out << body;
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

void save_membership_tsv(const std::filesystem::path& path,
                         const std::vector<CommunityId>& membership) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  std::string body;
  for (std::size_t v = 0; v < membership.size(); ++v)
    body += std::to_string(v) + "\t" + std::to_string(membership[v]) + "\n";
  out << body;
  if (!out) throw ParseError("write failed for '" + path.string() + "'");
}

}  // namespace louvain
