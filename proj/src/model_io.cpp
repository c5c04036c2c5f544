#include "ndksvm/model_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ndksvm/sparse_io.hpp"

namespace ndksvm {

namespace {

constexpr int kFormatVersion = 1;

double parse_num(const std::string& tok, const std::string& where) {
  double out;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw IoError(where + ": bad number '" + tok + "'");
  return out;
}

std::string hex64(std::uint64_t v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::uint64_t parse_hex64(const std::string& tok, const std::string& where) {
  std::uint64_t out = 0;
  auto [p, ec] =
      std::from_chars(tok.data(), tok.data() + tok.size(), out, 16);
  if (ec != std::errc() || p != tok.data() + tok.size())
    throw IoError(where + ": bad hex value '" + tok + "'");
  return out;
}

void write_sv_line(std::ostream& out, double coeff, const SparseVector& sv) {
  out << "sv " << format_double(coeff);
  for (const SparseEntry& e : sv.entries())
    out << ' ' << (e.index + 1) << ':' << format_double(e.value);
  out << '\n';
}

std::map<std::string, std::string> section_kv(const std::vector<std::string>& lines,
                                              const std::string& where) {
  std::map<std::string, std::string> kv;
  for (const std::string& l : lines) {
    const std::size_t eq = l.find('=');
    if (eq == std::string::npos)
      throw IoError(where + ": expected key=value, got '" + l + "'");
    kv[l.substr(0, eq)] = l.substr(eq + 1);
  }
  return kv;
}

const std::string& kv_get(const std::map<std::string, std::string>& kv,
                          const std::string& key, const std::string& where) {
  auto it = kv.find(key);
  if (it == kv.end()) throw IoError(where + ": missing key " + key);
  return it->second;
}

std::vector<double> parse_num_list(const std::string& text,
                                   const std::string& where) {
  std::vector<double> out;
  std::istringstream ss(text);
  std::string tok;
  while (ss >> tok) out.push_back(parse_num(tok, where));
  return out;
}

SparseVector parse_sv_entries(std::istringstream& ss, std::size_t dim,
                              const std::string& where) {
  std::vector<SparseEntry> entries;
  std::string tok;
  while (ss >> tok) {
    const std::size_t colon = tok.find(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 >= tok.size())
      throw IoError(where + ": expected idx:val, got '" + tok + "'");
    unsigned long long idx = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + colon, idx);
    if (ec != std::errc() || p != tok.data() + colon || idx == 0)
      throw IoError(where + ": bad 1-based index in '" + tok + "'");
    entries.push_back(
        {static_cast<std::size_t>(idx - 1),
         parse_num(tok.substr(colon + 1), where)});
  }
  try {
    return SparseVector(dim, std::move(entries));
  } catch (const Error& e) {
    throw IoError(where + ": " + e.what());
  }
}

}  // namespace

void save_model(const std::string& path, const SvmModel& model,
                const NdkFastModel* fast, const ComplexPrimalModel* primal) {
  if (model.svs.size() != model.coeffs.size())
    throw Error("save_model: sv/coeff count mismatch");
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);

  out << "format=" << kFormatVersion << "\n";
  write_kernel_block(out, model.kernel);
  out << "dim=" << model.dim << "\n";
  out << "m=" << model.svs.size() << "\n";
  out << "b=" << format_double(model.bias) << "\n";
  for (std::size_t j = 0; j < model.svs.size(); ++j)
    write_sv_line(out, model.coeffs[j], model.svs[j]);

  if (fast) {
    out << "[section precomputed]\n";
    out << "S=" << format_double(fast->S) << "\n";
    out << "u=" << format_double(fast->u) << "\n";
    out << "c_prime=" << format_double(fast->c_prime) << "\n";
    out << "b=" << format_double(fast->bias) << "\n";
    out << "source=" << hex64(fast->source) << "\n";
    out << "z=";
    for (std::size_t i = 0; i < fast->z.size(); ++i) {
      if (i) out << ' ';
      out << format_double(fast->z[i]);
    }
    out << "\n[end]\n";
  }

  if (primal) {
    out << "[section complex_primal]\n";
    out << "b=" << format_double(primal->bias) << "\n";
    out << "source=" << hex64(primal->source) << "\n";
    out << "w=";
    for (std::size_t i = 0; i < primal->w.size(); ++i) {
      if (i) out << ' ';
      out << format_double(primal->w[i].real()) << ':'
          << format_double(primal->w[i].imag());
    }
    out << "\n[end]\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

LoadedModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);

  LoadedModel out;
  std::map<std::string, std::string> header;
  std::string line;
  std::size_t sv_seen = 0;
  bool header_done = false;
  std::size_t m = 0;

  auto finish_header = [&]() {
    if (header_done) return;
    const std::string where = path + " header";
    const int version =
        static_cast<int>(parse_num(kv_get(header, "format", where), where));
    if (version != kFormatVersion)
      throw IoError(path + ": unsupported format version " +
                    std::to_string(version));
    out.model.kernel = kernel_from_block(header);
    out.model.dim =
        static_cast<std::size_t>(parse_num(kv_get(header, "dim", where), where));
    m = static_cast<std::size_t>(parse_num(kv_get(header, "m", where), where));
    out.model.bias = parse_num(kv_get(header, "b", where), where);
    header_done = true;
  };

  // Section bodies, collected then parsed once [end] is seen.
  std::string section_name;
  std::vector<std::string> section_lines;
  bool in_section = false;

  auto handle_section = [&]() {
    const std::string where = path + " [" + section_name + "]";
    if (section_name == "precomputed") {
      std::vector<std::string> kv_lines;
      std::string z_text;
      for (const std::string& l : section_lines) {
        if (l.rfind("z=", 0) == 0)
          z_text = l.substr(2);
        else
          kv_lines.push_back(l);
      }
      const auto kv = section_kv(kv_lines, where);
      NdkFastModel fm;
      fm.params = out.model.kernel.ndk_params();
      fm.S = parse_num(kv_get(kv, "S", where), where);
      fm.u = parse_num(kv_get(kv, "u", where), where);
      fm.c_prime = parse_num(kv_get(kv, "c_prime", where), where);
      fm.bias = parse_num(kv_get(kv, "b", where), where);
      fm.source = parse_hex64(kv_get(kv, "source", where), where);
      fm.z = parse_num_list(z_text, where);
      fm.dim = out.model.dim;
      if (fm.z.size() != fm.dim)
        throw IoError(where + ": z length != dim");
      out.fast = std::move(fm);
    } else if (section_name == "complex_primal") {
      std::vector<std::string> kv_lines;
      std::string w_text;
      for (const std::string& l : section_lines) {
        if (l.rfind("w=", 0) == 0)
          w_text = l.substr(2);
        else
          kv_lines.push_back(l);
      }
      const auto kv = section_kv(kv_lines, where);
      ComplexPrimalModel pm;
      pm.params = out.model.kernel.ndk_params();
      pm.bias = parse_num(kv_get(kv, "b", where), where);
      pm.source = parse_hex64(kv_get(kv, "source", where), where);
      pm.dim = out.model.dim;
      std::vector<Complex> w;
      {
        std::istringstream ss(w_text);
        std::string tok;
        while (ss >> tok) {
          const std::size_t colon = tok.find(':');
          if (colon == std::string::npos)
            throw IoError(where + ": expected re:im, got '" + tok + "'");
          w.emplace_back(parse_num(tok.substr(0, colon), where),
                         parse_num(tok.substr(colon + 1), where));
        }
      }
      if (w.size() != 4 * pm.dim + 1)
        throw IoError(where + ": w length != 4*dim+1");
      pm.w = ComplexVector::from(std::move(w));
      pm.zero_fold = zero_input_fold(pm.w, pm.params, pm.dim);
      out.primal = std::move(pm);
    }
    // Anything else: a section this build does not know; dropped.
  };

  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    if (in_section) {
      if (line == "[end]") {
        handle_section();
        in_section = false;
        section_lines.clear();
      } else {
        section_lines.push_back(line);
      }
      continue;
    }

    if (line.rfind("[section ", 0) == 0 && line.back() == ']') {
      finish_header();
      if (sv_seen != m)
        throw IoError(path + ": expected " + std::to_string(m) +
                      " sv lines, found " + std::to_string(sv_seen));
      section_name = line.substr(9, line.size() - 10);
      in_section = true;
      continue;
    }

    if (line.rfind("sv ", 0) == 0) {
      finish_header();
      std::istringstream ss(line.substr(3));
      std::string coeff_tok;
      if (!(ss >> coeff_tok)) throw IoError(path + ": bad sv line");
      out.model.coeffs.push_back(parse_num(coeff_tok, path + " sv line"));
      out.model.svs.push_back(
          parse_sv_entries(ss, out.model.dim, path + " sv line"));
      ++sv_seen;
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw IoError(path + ": unexpected line '" + line + "'");
    if (header_done)
      throw IoError(path + ": stray key=value after sv lines: '" + line + "'");
    header[line.substr(0, eq)] = line.substr(eq + 1);
  }
  if (in_section) throw IoError(path + ": unterminated section");
  finish_header();
  if (sv_seen != m)
    throw IoError(path + ": expected " + std::to_string(m) +
                  " sv lines, found " + std::to_string(sv_seen));
  return out;
}

}  // namespace ndksvm
