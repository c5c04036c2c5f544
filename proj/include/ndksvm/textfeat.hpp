#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ndksvm/sparse_vector.hpp"

namespace ndksvm {

struct Document {
  std::string id;
  std::string text;
  std::vector<std::string> categories;
};

struct Corpus {
  std::vector<Document> docs;
};

// Lowercased runs of ASCII alphanumerics; anything else separates tokens.
// Tokens shorter than two characters are dropped.
std::vector<std::string> tokenize(std::string_view text);

struct Vocabulary {
  std::map<std::string, std::size_t> terms;  // term -> dense index
  std::vector<std::string> term_by_index;
  std::vector<std::size_t> doc_freq;  // per index, >= 1
  std::size_t n_docs = 0;

  std::size_t size() const { return term_by_index.size(); }
};

// Terms from the given corpus only (callers pass the training split so
// evaluation vocabulary never leaks). Indices follow sorted term order.
Vocabulary build_vocabulary(const Corpus& corpus,
                            const std::set<std::string>& stopwords = {});

// Document-level term/category incidence counts for the same corpus the
// vocabulary came from.
struct CategoryStats {
  std::vector<std::string> categories;  // sorted unique
  std::map<std::string, std::size_t> cat_index;
  std::vector<std::size_t> docs_per_cat;
  std::vector<std::size_t> term_df;  // copy of vocabulary doc_freq
  std::vector<std::unordered_map<std::size_t, std::size_t>> joint;  // [cat][term]
  std::size_t n_docs = 0;

  std::size_t n_tc(std::size_t cat, std::size_t term) const;
};

CategoryStats build_category_stats(const Corpus& corpus,
                                   const Vocabulary& vocab);

// (term_count / doc_len) * ln(n_docs / doc_freq)
double tfidf(std::size_t term_count, std::size_t doc_len,
             std::size_t doc_freq, std::size_t n_docs);

// P(t,c)*P(!t,!c) - P(t,!c)*P(!t,c), probabilities over documents.
// Always within [-0.25, 0.25].
double gss(const CategoryStats& stats, std::size_t term_index,
           std::size_t cat_index);

enum class FeatureMode { TfidfOnly, GeometricMean };

// Weighted bag of in-vocabulary terms, L2-normalized. doc_len counts every
// surviving token, in-vocabulary or not. In GeometricMean mode the weight
// is sqrt(tfidf * max(gss, 0)) for the given category and zero-weight
// terms are omitted; the category must be known to the stats. TfidfOnly
// ignores the category.
SparseVector featurize(const Document& doc, const Vocabulary& vocab,
                       const CategoryStats& stats, const std::string& category,
                       FeatureMode mode,
                       const std::set<std::string>& stopwords = {});

// Directory of UTF-8 text files plus a labels file with lines
// `doc_id<TAB>cat[,cat...]`; doc_id is the file name inside the directory.
Corpus load_corpus(const std::string& dir, const std::string& labels_path);

struct CorpusSplit {
  Corpus train, val, test;
};

// Seeded shuffle, then contiguous cut at round(frac * n) boundaries.
CorpusSplit split_corpus(const Corpus& corpus, double train_frac,
                         double val_frac, std::uint64_t seed);

// `term<TAB>index<TAB>doc_freq` per line, ordered by index. The document
// count is not part of the format, so a reloaded vocabulary carries
// n_docs = 0 unless the caller supplies it.
void save_vocabulary(const std::string& path, const Vocabulary& vocab);
Vocabulary load_vocabulary(const std::string& path, std::size_t n_docs = 0);

std::set<std::string> load_stopwords(const std::string& path);

}  // namespace ndksvm
