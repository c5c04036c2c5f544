#include "ndksvm/sparse_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace ndksvm {

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

struct RawLine {
  double label;
  std::vector<SparseEntry> entries;  // 0-based already
  std::size_t max_index_plus_1 = 0;
};

double parse_number(std::string_view tok, const std::string& path,
                    std::size_t line_no) {
  double out;
  // from_chars rejects an explicit plus, but "+1" labels are common.
  std::string_view body = tok;
  if (body.size() > 1 && body.front() == '+') body.remove_prefix(1);
  const char* first = body.data();
  const char* last = body.data() + body.size();
  auto [p, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || p != last)
    throw IoError(path + ":" + std::to_string(line_no) + ": bad number '" +
                  std::string(tok) + "'");
  return out;
}

RawLine parse_line(const std::string& line, const std::string& path,
                   std::size_t line_no) {
  RawLine out;
  std::istringstream ss(line);
  std::string tok;
  if (!(ss >> tok))
    throw IoError(path + ":" + std::to_string(line_no) + ": empty record");
  out.label = parse_number(tok, path, line_no);
  while (ss >> tok) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
      throw IoError(path + ":" + std::to_string(line_no) +
                    ": expected idx:val, got '" + tok + "'");
    unsigned long long idx = 0;
    {
      const char* first = tok.data();
      const char* last = tok.data() + colon;
      auto [p, ec] = std::from_chars(first, last, idx);
      if (ec != std::errc() || p != last || idx == 0)
        throw IoError(path + ":" + std::to_string(line_no) +
                      ": bad 1-based index '" + tok + "'");
    }
    const double val =
        parse_number(std::string_view(tok).substr(colon + 1), path, line_no);
    out.entries.push_back({static_cast<std::size_t>(idx - 1), val});
    out.max_index_plus_1 =
        std::max(out.max_index_plus_1, static_cast<std::size_t>(idx));
  }
  return out;
}

}  // namespace

SparseFile read_sparse_file(const std::string& path, std::size_t dim) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  std::vector<RawLine> raw;
  std::size_t max_dim = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    raw.push_back(parse_line(line, path, line_no));
    max_dim = std::max(max_dim, raw.back().max_index_plus_1);
  }

  SparseFile out;
  out.dim = dim == 0 ? max_dim : dim;
  if (dim != 0 && max_dim > dim)
    throw IoError(path + ": index " + std::to_string(max_dim) +
                  " exceeds dimension " + std::to_string(dim));
  out.labels.reserve(raw.size());
  out.vectors.reserve(raw.size());
  for (std::size_t r = 0; r < raw.size(); ++r) {
    out.labels.push_back(raw[r].label);
    try {
      out.vectors.emplace_back(out.dim, std::move(raw[r].entries));
    } catch (const Error& e) {
      throw IoError(path + ": record " + std::to_string(r + 1) + ": " +
                    e.what());
    }
  }
  return out;
}

void write_sparse_file(const std::string& path,
                       const std::vector<double>& labels,
                       const std::vector<SparseVector>& vectors) {
  if (labels.size() != vectors.size())
    throw Error("write_sparse_file: label/vector count mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    out << format_double(labels[i]);
    for (const SparseEntry& e : vectors[i].entries())
      out << ' ' << (e.index + 1) << ':' << format_double(e.value);
    out << '\n';
  }
  if (!out) throw IoError("write failed: " + path);
}

}  // namespace ndksvm
