#include "ndksvm/textfeat.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

namespace ndksvm {

namespace {

inline bool is_word_char(unsigned char ch) {
  return (ch >= '0' && ch <= '9') || (ch >= 'a' && ch <= 'z') ||
         (ch >= 'A' && ch <= 'Z');
}

inline char lower(unsigned char ch) {
  return (ch >= 'A' && ch <= 'Z') ? static_cast<char>(ch - 'A' + 'a')
                                  : static_cast<char>(ch);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    if (cur.size() >= 2) out.push_back(cur);
    cur.clear();
  };
  for (unsigned char ch : text) {
    if (is_word_char(ch))
      cur.push_back(lower(ch));
    else
      flush();
  }
  flush();
  return out;
}

Vocabulary build_vocabulary(const Corpus& corpus,
                            const std::set<std::string>& stopwords) {
  std::map<std::string, std::size_t> df;
  for (const Document& doc : corpus.docs) {
    std::set<std::string> seen;
    for (const std::string& tok : tokenize(doc.text)) {
      if (stopwords.count(tok)) continue;
      seen.insert(tok);
    }
    for (const std::string& t : seen) ++df[t];
  }

  Vocabulary v;
  v.n_docs = corpus.docs.size();
  v.term_by_index.reserve(df.size());
  v.doc_freq.reserve(df.size());
  for (const auto& [term, count] : df) {
    v.terms[term] = v.term_by_index.size();
    v.term_by_index.push_back(term);
    v.doc_freq.push_back(count);
  }
  return v;
}

std::size_t CategoryStats::n_tc(std::size_t cat, std::size_t term) const {
  if (cat >= joint.size()) throw Error("category index out of range");
  auto it = joint[cat].find(term);
  return it == joint[cat].end() ? 0 : it->second;
}

CategoryStats build_category_stats(const Corpus& corpus,
                                   const Vocabulary& vocab) {
  CategoryStats s;
  s.n_docs = corpus.docs.size();
  s.term_df = vocab.doc_freq;

  std::set<std::string> cats;
  for (const Document& doc : corpus.docs) {
    if (doc.categories.empty())
      throw Error("document '" + doc.id + "' has no category");
    for (const std::string& c : doc.categories) cats.insert(c);
  }
  for (const std::string& c : cats) {
    s.cat_index[c] = s.categories.size();
    s.categories.push_back(c);
  }
  s.docs_per_cat.assign(s.categories.size(), 0);
  s.joint.resize(s.categories.size());

  for (const Document& doc : corpus.docs) {
    std::set<std::size_t> term_set;
    for (const std::string& tok : tokenize(doc.text)) {
      auto it = vocab.terms.find(tok);
      if (it != vocab.terms.end()) term_set.insert(it->second);
    }
    for (const std::string& c : doc.categories) {
      const std::size_t ci = s.cat_index.at(c);
      ++s.docs_per_cat[ci];
      for (std::size_t t : term_set) ++s.joint[ci][t];
    }
  }
  return s;
}

double tfidf(std::size_t term_count, std::size_t doc_len,
             std::size_t doc_freq, std::size_t n_docs) {
  if (doc_len == 0) throw Error("tfidf: empty document");
  if (doc_freq == 0) throw Error("tfidf: zero document frequency");
  if (doc_freq > n_docs) throw Error("tfidf: doc_freq exceeds n_docs");
  const double tf =
      static_cast<double>(term_count) / static_cast<double>(doc_len);
  const double idf = std::log(static_cast<double>(n_docs) /
                              static_cast<double>(doc_freq));
  return tf * idf;
}

double gss(const CategoryStats& stats, std::size_t term_index,
           std::size_t cat_index) {
  if (stats.n_docs == 0) throw Error("gss: empty corpus");
  if (cat_index >= stats.categories.size())
    throw Error("gss: category index out of range");
  if (term_index >= stats.term_df.size())
    throw Error("gss: term index out of range");
  const double n = static_cast<double>(stats.n_docs);
  const double ntc = static_cast<double>(stats.n_tc(cat_index, term_index));
  const double nt = static_cast<double>(stats.term_df[term_index]);
  const double nc = static_cast<double>(stats.docs_per_cat[cat_index]);
  const double p_tc = ntc / n;
  const double p_t_nc = (nt - ntc) / n;
  const double p_nt_c = (nc - ntc) / n;
  const double p_nt_nc = (n - nt - nc + ntc) / n;
  return p_tc * p_nt_nc - p_t_nc * p_nt_c;
}

SparseVector featurize(const Document& doc, const Vocabulary& vocab,
                       const CategoryStats& stats, const std::string& category,
                       FeatureMode mode,
                       const std::set<std::string>& stopwords) {
  std::size_t cat_idx = 0;
  if (mode == FeatureMode::GeometricMean) {
    auto it = stats.cat_index.find(category);
    if (it == stats.cat_index.end())
      throw Error("featurize: unknown category '" + category + "'");
    cat_idx = it->second;
  }

  std::size_t doc_len = 0;
  std::map<std::size_t, std::size_t> counts;
  for (const std::string& tok : tokenize(doc.text)) {
    if (stopwords.count(tok)) continue;
    ++doc_len;
    auto it = vocab.terms.find(tok);
    if (it != vocab.terms.end()) ++counts[it->second];
  }

  std::vector<SparseEntry> entries;
  for (const auto& [term, count] : counts) {
    const double w_tfidf =
        tfidf(count, doc_len, vocab.doc_freq[term], vocab.n_docs);
    double w = w_tfidf;
    if (mode == FeatureMode::GeometricMean) {
      const double g = std::max(gss(stats, term, cat_idx), 0.0);
      w = std::sqrt(w_tfidf * g);
    }
    if (w != 0.0) entries.push_back({term, w});
  }

  long double nsq = 0.0L;
  for (const SparseEntry& e : entries)
    nsq += static_cast<long double>(e.value) * e.value;
  if (nsq > 0.0L) {
    const double inv = 1.0 / std::sqrt(static_cast<double>(nsq));
    for (SparseEntry& e : entries) e.value *= inv;
  }
  return SparseVector(vocab.size(), std::move(entries));
}

Corpus load_corpus(const std::string& dir, const std::string& labels_path) {
  std::ifstream labels(labels_path);
  if (!labels) throw IoError("cannot open labels file " + labels_path);

  Corpus corpus;
  std::set<std::string> seen_ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(labels, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where =
        labels_path + ":" + std::to_string(line_no);

    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos || tab == 0 || tab + 1 >= line.size())
      throw IoError(where + ": expected doc_id<TAB>categories");
    Document doc;
    doc.id = line.substr(0, tab);
    if (!seen_ids.insert(doc.id).second)
      throw IoError(where + ": duplicate doc id '" + doc.id + "'");

    std::stringstream cats(line.substr(tab + 1));
    std::string cat;
    std::set<std::string> doc_cats;
    while (std::getline(cats, cat, ',')) {
      if (cat.empty()) throw IoError(where + ": empty category name");
      if (!doc_cats.insert(cat).second)
        throw IoError(where + ": duplicate category '" + cat + "'");
      doc.categories.push_back(cat);
    }
    if (doc.categories.empty()) throw IoError(where + ": no categories");

    const std::string file = dir + "/" + doc.id;
    std::ifstream text(file, std::ios::binary);
    if (!text) throw IoError(where + ": cannot open document " + file);
    std::ostringstream buf;
    buf << text.rdbuf();
    doc.text = buf.str();
    corpus.docs.push_back(std::move(doc));
  }
  return corpus;
}

CorpusSplit split_corpus(const Corpus& corpus, double train_frac,
                         double val_frac, std::uint64_t seed) {
  if (!(train_frac > 0.0) || !(val_frac >= 0.0) ||
      train_frac + val_frac > 1.0 + 1e-12)
    throw Error("split_corpus: bad fractions");
  const std::size_t n = corpus.docs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  // In-place shuffle with explicit draws so the split does not depend on
  // a library's distribution implementation.
  std::mt19937_64 rng(seed);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  std::size_t n_train = static_cast<std::size_t>(
      std::llround(train_frac * static_cast<double>(n)));
  std::size_t n_val = static_cast<std::size_t>(
      std::llround(val_frac * static_cast<double>(n)));
  n_train = std::min(n_train, n);
  n_val = std::min(n_val, n - n_train);

  CorpusSplit out;
  for (std::size_t i = 0; i < n; ++i) {
    const Document& d = corpus.docs[order[i]];
    if (i < n_train)
      out.train.docs.push_back(d);
    else if (i < n_train + n_val)
      out.val.docs.push_back(d);
    else
      out.test.docs.push_back(d);
  }
  return out;
}

void save_vocabulary(const std::string& path, const Vocabulary& vocab) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path);
  for (std::size_t i = 0; i < vocab.size(); ++i)
    out << vocab.term_by_index[i] << '\t' << i << '\t' << vocab.doc_freq[i]
        << '\n';
  if (!out) throw IoError("write failed: " + path);
}

Vocabulary load_vocabulary(const std::string& path, std::size_t n_docs) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  Vocabulary v;
  v.n_docs = n_docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = path + ":" + std::to_string(line_no);
    std::istringstream ss(line);
    std::string term;
    std::size_t index, df;
    if (!(ss >> term >> index >> df))
      throw IoError(where + ": expected term<TAB>index<TAB>doc_freq");
    if (index != v.term_by_index.size())
      throw IoError(where + ": indices must be dense and ordered");
    if (df == 0) throw IoError(where + ": zero doc_freq");
    v.terms[term] = index;
    v.term_by_index.push_back(term);
    v.doc_freq.push_back(df);
  }
  return v;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    for (const std::string& tok : tokenize(line)) out.insert(tok);
  }
  return out;
}

}  // namespace ndksvm
