#include "mec/matrix_io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace mec {

namespace {

// Whitespace-separated unsigned integer scanner over a whole file image.
class TokenScanner {
 public:
  explicit TokenScanner(std::string text) : text_(std::move(text)), pos_(0) {}

  bool next(std::uint64_t& out) {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr == begin) return false;
    pos_ = static_cast<std::size_t>(ptr - text_.data());
    return true;
  }

  bool next_word(std::string& out) {
    skip_ws();
    if (pos_ >= text_.size()) return false;
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    out = text_.substr(start, pos_ - start);
    return true;
  }

  // True if the header line has a fourth token before the newline.
  bool word_on_current_line() {
    std::size_t p = pos_;
    while (p < text_.size() && (text_[p] == ' ' || text_[p] == '\t' || text_[p] == '\r')) ++p;
    return p < text_.size() && text_[p] != '\n';
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  std::string text_;
  std::size_t pos_;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void append_u64(std::string& out, std::uint64_t v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

}  // namespace

MatrixFile read_matrix_file(const std::string& path) {
  TokenScanner sc(slurp(path));
  std::uint64_t m = 0, n = 0, p = 0;
  if (!sc.next(m) || !sc.next(n) || !sc.next(p)) throw IOError(path + ": malformed header");
  if (m == 0 || n == 0) throw IOError(path + ": dimensions must be positive");
  if (p < 2) throw IOError(path + ": modulus must be at least 2");

  MatrixFile out;
  out.modulus = p;
  if (sc.word_on_current_line()) {
    std::string tag;
    sc.next_word(tag);
    if (tag != "dense") throw IOError(path + ": unknown header tag '" + tag + "'");
    out.is_dense = true;
    Matrix M(m, n);
    for (std::size_t i = 0; i < m; ++i) {
      Fp* row = M.row(i);
      for (std::size_t j = 0; j < n; ++j) {
        std::uint64_t v;
        if (!sc.next(v)) throw IOError(path + ": truncated dense body");
        if (v >= p) throw IOError(path + ": entry not reduced mod p");
        row[j] = Fp{v};
      }
    }
    if (!sc.at_end()) throw IOError(path + ": trailing content after dense body");
    out.dense = std::move(M);
    return out;
  }

  std::vector<SparseEntry> entries;
  while (true) {
    std::uint64_t i, j, v;
    if (!sc.next(i) || !sc.next(j) || !sc.next(v)) throw IOError(path + ": truncated entry list");
    if (i == 0 && j == 0 && v == 0) break;
    if (i >= m || j >= n) throw IOError(path + ": entry coordinates out of range");
    if (v == 0 || v >= p) throw IOError(path + ": entry value outside [1, p)");
    entries.push_back({i, j, Fp{v}});
  }
  if (!sc.at_end()) throw IOError(path + ": trailing content after terminator");
  out.is_dense = false;
  out.sparse = SparseMatrix::from_entries(m, n, std::move(entries));
  return out;
}

void write_dense_file(const std::string& path, const Matrix& M, std::uint64_t p) {
  std::string buf;
  buf.reserve(M.rows() * M.cols() * 8 + 64);
  append_u64(buf, M.rows());
  buf += ' ';
  append_u64(buf, M.cols());
  buf += ' ';
  append_u64(buf, p);
  buf += " dense\n";
  for (std::size_t i = 0; i < M.rows(); ++i) {
    const Fp* row = M.row(i);
    for (std::size_t j = 0; j < M.cols(); ++j) {
      if (j) buf += ' ';
      append_u64(buf, row[j].v);
    }
    buf += '\n';
  }
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf || !(outf << buf)) throw IOError("cannot write " + path);
}

void write_sparse_file(const std::string& path, const SparseMatrix& M, std::uint64_t p) {
  std::string buf;
  buf.reserve(M.nnz() * 16 + 64);
  append_u64(buf, M.rows());
  buf += ' ';
  append_u64(buf, M.cols());
  buf += ' ';
  append_u64(buf, p);
  buf += '\n';
  for (const auto& e : M.entries()) {
    append_u64(buf, e.row);
    buf += ' ';
    append_u64(buf, e.col);
    buf += ' ';
    append_u64(buf, e.value.v);
    buf += '\n';
  }
  buf += "0 0 0\n";
  std::ofstream outf(path, std::ios::binary | std::ios::trunc);
  if (!outf || !(outf << buf)) throw IOError("cannot write " + path);
}

}  // namespace mec
