#pragma once

#include "crisismon/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace crisismon {

class OutOfVocabulary : public ValidationError {
public:
  explicit OutOfVocabulary(const std::string& token) : ValidationError("token not in vocabulary: '" + token + "'") {}
};

/// Cosine similarity of two equally sized vectors. Throws ValidationError on a
/// dimension mismatch or a zero-norm argument.
template <typename DerivedA, typename DerivedB>
double cosine(const Eigen::MatrixBase<DerivedA>& u, const Eigen::MatrixBase<DerivedB>& v) {
  if (u.size() != v.size())
    throw ValidationError("cosine: dimension mismatch");
  const double nu = static_cast<double>(u.norm());
  const double nv = static_cast<double>(v.norm());
  if (nu == 0.0 || nv == 0.0)
    throw ValidationError("cosine: zero-norm vector");
  const double c = static_cast<double>(u.dot(v)) / (nu * nv);
  return std::clamp(c, -1.0, 1.0);
}

/// Token -> dense vector table. Rows with zero norm are kept but are never
/// returned as neighbors and cannot be queried.
template <typename Scalar>
class BasicEmbeddingTable {
public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  BasicEmbeddingTable(std::vector<std::string> vocab, Matrix vectors)
      : vocab_(std::move(vocab)), vectors_(std::move(vectors)) {
    if (vocab_.empty())
      throw ValidationError("embedding table: empty vocabulary");
    if (static_cast<Eigen::Index>(vocab_.size()) != vectors_.rows() || vectors_.cols() < 1)
      throw ValidationError("embedding table: vocabulary/vector shape mismatch");
    index_.reserve(vocab_.size());
    for (Eigen::Index i = 0; i < size(); ++i)
      if (!index_.emplace(vocab_[static_cast<std::size_t>(i)], i).second)
        throw ValidationError("embedding table: duplicate token '" + vocab_[static_cast<std::size_t>(i)] + "'");
    norms_ = vectors_.rowwise().norm();
    unit_ = vectors_;
    for (Eigen::Index i = 0; i < size(); ++i) {
      if (norms_(i) > Scalar(0))
        unit_.row(i) /= norms_(i);
      else
        unit_.row(i).setZero();
    }
  }

  Eigen::Index size() const noexcept { return vectors_.rows(); }
  Eigen::Index dim() const noexcept { return vectors_.cols(); }

  std::optional<Eigen::Index> find(std::string_view token) const {
    auto it = index_.find(std::string(token));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }
  bool contains(std::string_view token) const { return find(token).has_value(); }

  const std::string& token(Eigen::Index i) const { return vocab_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& vocabulary() const noexcept { return vocab_; }
  auto vector(Eigen::Index i) const { return vectors_.row(i); }
  bool usable(Eigen::Index i) const { return norms_(i) > Scalar(0); }

  const Matrix& vectors() const noexcept { return vectors_; }
  /// Rows scaled to unit length; zero rows for unusable entries.
  const Matrix& unit_vectors() const noexcept { return unit_; }

private:
  std::vector<std::string> vocab_;
  std::unordered_map<std::string, Eigen::Index> index_;
  Matrix vectors_;
  Matrix unit_;
  Vector norms_;
};

using EmbeddingTable = BasicEmbeddingTable<float>;

struct Neighbor {
  std::string token;
  double similarity = 0.0;

  bool operator==(const Neighbor&) const = default;
};

/// The k most cosine-similar tokens to `query`, excluding the query itself and
/// zero-norm rows, by similarity descending then token ascending.
template <typename Scalar>
std::vector<Neighbor> knn(const BasicEmbeddingTable<Scalar>& table, std::string_view query, std::size_t k) {
  auto q = table.find(query);
  if (!q)
    throw OutOfVocabulary(std::string(query));
  if (!table.usable(*q))
    throw ValidationError("knn: query '" + std::string(query) + "' has a zero vector");

  using Vector = typename BasicEmbeddingTable<Scalar>::Vector;
  const Vector scores = table.unit_vectors() * table.unit_vectors().row(*q).transpose();

  std::vector<Eigen::Index> candidates;
  candidates.reserve(static_cast<std::size_t>(table.size()));
  for (Eigen::Index i = 0; i < table.size(); ++i)
    if (i != *q && table.usable(i))
      candidates.push_back(i);

  auto better = [&](Eigen::Index a, Eigen::Index b) {
    if (scores(a) != scores(b))
      return scores(a) > scores(b);
    return table.token(a) < table.token(b);
  };
  const std::size_t n = std::min(k, candidates.size());
  std::partial_sort(candidates.begin(), candidates.begin() + static_cast<std::ptrdiff_t>(n), candidates.end(), better);

  std::vector<Neighbor> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto idx = candidates[i];
    out.push_back({table.token(idx), std::clamp(static_cast<double>(scores(idx)), -1.0, 1.0)});
  }
  return out;
}

struct EmbeddingLoadReport {
  std::size_t duplicates = 0;
  std::size_t zero_vectors = 0;
  std::vector<std::string> warnings;
};

/// Reads the word2vec/fastText text format: a "V D" header line, then V lines
/// of "token v1 ... vD". A repeated token keeps its last row (with a warning).
/// Arity or number errors raise ParseError naming the line.
template <typename Scalar = float>
BasicEmbeddingTable<Scalar> load_embeddings(std::istream& in, EmbeddingLoadReport* report = nullptr) {
  auto split = [](std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
        ++i;
      std::size_t start = i;
      while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
        ++i;
      if (i > start)
        fields.push_back(line.substr(start, i - start));
    }
    return fields;
  };
  auto parse_size = [](std::string_view s, std::size_t line_no) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
      throw ParseError("embeddings line " + std::to_string(line_no) + ": bad header field '" + std::string(s) + "'");
    return value;
  };

  EmbeddingLoadReport local;
  EmbeddingLoadReport& rep = report ? *report : local;
  std::string line;
  if (!std::getline(in, line))
    throw ParseError("embeddings line 1: missing 'V D' header");
  auto header = split(line);
  if (header.size() != 2)
    throw ParseError("embeddings line 1: header must be 'V D'");
  const std::size_t rows = parse_size(header[0], 1);
  const std::size_t dim = parse_size(header[1], 1);
  if (rows == 0 || dim == 0)
    throw ParseError("embeddings line 1: V and D must be positive");

  std::vector<std::string> vocab;
  std::unordered_map<std::string, std::size_t> seen;
  std::vector<Scalar> data;
  data.reserve(rows * dim);
  std::size_t line_no = 1;
  std::size_t read_rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto fields = split(line);
    if (fields.empty())
      continue;
    if (read_rows == rows)
      throw ParseError("embeddings line " + std::to_string(line_no) + ": more rows than the header's V=" +
                       std::to_string(rows));
    if (fields.size() != dim + 1)
      throw ParseError("embeddings line " + std::to_string(line_no) + ": expected " + std::to_string(dim) +
                       " components, got " + std::to_string(fields.size() - 1));
    ++read_rows;
    std::vector<Scalar> row(dim);
    bool zero = true;
    for (std::size_t j = 0; j < dim; ++j) {
      auto f = fields[j + 1];
      auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), row[j]);
      if (ec != std::errc{} || ptr != f.data() + f.size() || !std::isfinite(static_cast<double>(row[j])))
        throw ParseError("embeddings line " + std::to_string(line_no) + ": bad number '" + std::string(f) + "'");
      zero = zero && row[j] == Scalar(0);
    }
    std::string token(fields[0]);
    if (zero) {
      ++rep.zero_vectors;
      rep.warnings.push_back("line " + std::to_string(line_no) + ": zero vector for '" + token +
                             "' (unusable for queries)");
    }
    auto [it, inserted] = seen.emplace(token, vocab.size());
    if (inserted) {
      vocab.push_back(std::move(token));
      data.insert(data.end(), row.begin(), row.end());
    } else {
      ++rep.duplicates;
      rep.warnings.push_back("line " + std::to_string(line_no) + ": duplicate token '" + token + "', last row wins");
      std::copy(row.begin(), row.end(), data.begin() + static_cast<std::ptrdiff_t>(it->second * dim));
    }
  }
  if (in.bad())
    throw IoError("embeddings: read failure");
  if (read_rows != rows)
    throw ParseError("embeddings line " + std::to_string(line_no) + ": header promised " + std::to_string(rows) +
                     " rows, found " + std::to_string(read_rows));

  using Matrix = typename BasicEmbeddingTable<Scalar>::Matrix;
  Matrix vectors = Eigen::Map<const Matrix>(data.data(), static_cast<Eigen::Index>(vocab.size()),
                                            static_cast<Eigen::Index>(dim));
  return BasicEmbeddingTable<Scalar>(std::move(vocab), std::move(vectors));
}

template <typename Scalar = float>
BasicEmbeddingTable<Scalar> load_embeddings(const std::filesystem::path& path, EmbeddingLoadReport* report = nullptr) {
  std::ifstream in(path);
  if (!in)
    throw IoError(path.string() + ": cannot open embeddings file");
  return load_embeddings<Scalar>(in, report);
}

} // namespace crisismon
